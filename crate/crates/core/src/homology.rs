//! Exact reduced integral homology: boundary matrices, Smith normal form,
//! Betti numbers and torsion.
//!
//! The Smith form is computed on a sparse matrix. Unit pivots are eliminated
//! first, choosing the shortest column and then the shortest row to limit
//! fill-in; whatever is left is reduced with smallest-magnitude pivots and
//! Euclidean remainders. All arithmetic is checked `i64`; an overflow is an
//! error, never a wrong answer.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::comb::CriticalCensus;
use crate::complexes::{independence_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graphs::delta;

/// Largest complex (in faces, counting ∅) accepted by [`reduced_homology`].
pub const DEFAULT_HOMOLOGY_CAP: usize = 300_000;

/// Sparse integer matrix in triplet form. Entries with equal positions add up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize) -> IntegerMatrix {
        IntegerMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn from_dense(data: &[Vec<i64>]) -> IntegerMatrix {
        let cols = data.first().map_or(0, Vec::len);
        let mut m = IntegerMatrix::new(data.len(), cols);
        for (r, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (c, &v) in row.iter().enumerate() {
                m.push(r, c, v);
            }
        }
        m
    }

    pub fn push(&mut self, row: usize, col: usize, value: i64) {
        assert!(
            row < self.rows && col < self.cols,
            "entry ({row}, {col}) out of bounds"
        );
        if value != 0 {
            self.entries.push((row, col, value));
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            d[r][c] += v;
        }
        d
    }

    /// `self · other`, dense; for small checks only.
    pub fn multiply(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let b = other.to_dense();
        let mut out = vec![vec![0i64; other.cols]; self.rows];
        for &(r, k, v) in &self.entries {
            for (c, &w) in b[k].iter().enumerate() {
                if w != 0 {
                    let p = v.checked_mul(w).ok_or(Error::Overflow("matrix product"))?;
                    out[r][c] = out[r][c]
                        .checked_add(p)
                        .ok_or(Error::Overflow("matrix product"))?;
                }
            }
        }
        let mut m = IntegerMatrix::new(self.rows, other.cols);
        for (r, row) in out.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.push(r, c, v);
            }
        }
        Ok(m)
    }

    pub fn is_zero(&self) -> bool {
        self.to_sparse_rows().iter().all(Vec::is_empty)
    }

    fn to_sparse_rows(&self) -> Vec<Vec<(u32, i64)>> {
        let mut rows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            rows[r].push((c as u32, v));
        }
        for row in &mut rows {
            row.sort_unstable_by_key(|e| e.0);
            row.dedup_by(|next, kept| {
                if next.0 == kept.0 {
                    kept.1 += next.1;
                    true
                } else {
                    false
                }
            });
            row.retain(|e| e.1 != 0);
        }
        rows
    }
}

/// Invariant factors `d_1 | d_2 | … | d_r`, all positive; `r` is the rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    pub rank: usize,
    pub invariant_factors: Vec<i64>,
}

impl SnfResult {
    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<i64> {
        self.invariant_factors
            .iter()
            .copied()
            .filter(|&f| f > 1)
            .collect()
    }
}

struct Sparse {
    rows: Vec<Vec<(u32, i64)>>,
    cols: Vec<HashSet<u32>>,
}

impl Sparse {
    fn new(m: &IntegerMatrix) -> Sparse {
        let rows = m.to_sparse_rows();
        let mut cols = vec![HashSet::new(); m.cols];
        for (r, row) in rows.iter().enumerate() {
            for &(c, _) in row {
                cols[c as usize].insert(r as u32);
            }
        }
        Sparse { rows, cols }
    }

    fn value(&self, r: u32, c: u32) -> i64 {
        let row = &self.rows[r as usize];
        row.binary_search_by_key(&c, |e| e.0)
            .map_or(0, |i| row[i].1)
    }

    /// row[t] -= q * row[s]; returns the columns whose support changed.
    fn sub_row(&mut self, t: u32, s: u32, q: i64, touched: &mut Vec<u32>) -> Result<()> {
        let overflow = || Error::Overflow("Smith normal form");
        let src = std::mem::take(&mut self.rows[s as usize]);
        let dst = std::mem::take(&mut self.rows[t as usize]);
        let mut out = Vec::with_capacity(dst.len() + src.len());
        let (mut i, mut j) = (0, 0);
        while i < dst.len() || j < src.len() {
            let take_dst = j == src.len() || (i < dst.len() && dst[i].0 < src[j].0);
            let take_src = i == dst.len() || (j < src.len() && src[j].0 < dst[i].0);
            if take_dst {
                out.push(dst[i]);
                i += 1;
            } else if take_src {
                let v = src[j]
                    .1
                    .checked_mul(q)
                    .and_then(i64::checked_neg)
                    .ok_or_else(overflow)?;
                out.push((src[j].0, v));
                self.cols[src[j].0 as usize].insert(t);
                touched.push(src[j].0);
                j += 1;
            } else {
                let v = src[j]
                    .1
                    .checked_mul(q)
                    .and_then(|p| dst[i].1.checked_sub(p))
                    .ok_or_else(overflow)?;
                if v == 0 {
                    self.cols[src[j].0 as usize].remove(&t);
                    touched.push(src[j].0);
                } else {
                    out.push((src[j].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.rows[s as usize] = src;
        self.rows[t as usize] = out;
        Ok(())
    }

    /// Removes row `r` and column `c` once they hold only the pivot.
    fn retire(&mut self, r: u32, c: u32, touched: &mut Vec<u32>) {
        for (cc, _) in std::mem::take(&mut self.rows[r as usize]) {
            self.cols[cc as usize].remove(&r);
            touched.push(cc);
        }
        debug_assert!(self.cols[c as usize].is_empty());
    }

    /// Clears column `c` below/above the unit at `(r, c)` and retires both.
    fn eliminate_unit(&mut self, r: u32, c: u32, touched: &mut Vec<u32>) -> Result<()> {
        let a = self.value(r, c);
        debug_assert!(a.abs() == 1);
        let others: Vec<u32> = self.cols[c as usize]
            .iter()
            .copied()
            .filter(|&x| x != r)
            .collect();
        for o in others {
            let q = self.value(o, c) * a;
            self.sub_row(o, r, q, touched)?;
        }
        self.retire(r, c, touched);
        Ok(())
    }

    /// General pivot at `(r, c)`: Euclidean reduction of its column and row
    /// until only the pivot is left. Returns the pivot's absolute value.
    fn eliminate_general(&mut self, mut r: u32, mut c: u32, touched: &mut Vec<u32>) -> Result<i64> {
        loop {
            let a = self.value(r, c);
            let others: Vec<u32> = self.cols[c as usize]
                .iter()
                .copied()
                .filter(|&x| x != r)
                .collect();
            for o in others {
                let q = Integer::div_floor(&self.value(o, c), &a);
                if q != 0 {
                    self.sub_row(o, r, q, touched)?;
                }
            }
            let col_best = self.cols[c as usize]
                .iter()
                .copied()
                .filter(|&x| x != r)
                .map(|x| (self.value(x, c).abs(), x))
                .min();
            if let Some((_, x)) = col_best {
                r = x;
                continue;
            }
            // Column c is zero outside the pivot, so column operations only touch row r.
            let mut kept = Vec::new();
            for &(cc, v) in &self.rows[r as usize] {
                if cc == c {
                    kept.push((cc, v));
                    continue;
                }
                let rem = v.mod_floor(&a);
                if rem != 0 {
                    kept.push((cc, rem));
                } else {
                    self.cols[cc as usize].remove(&r);
                    touched.push(cc);
                }
            }
            self.rows[r as usize] = kept;
            let row_best = self.rows[r as usize]
                .iter()
                .filter(|e| e.0 != c)
                .map(|&(cc, v)| (v.abs(), cc))
                .min();
            match row_best {
                None => {
                    self.retire(r, c, touched);
                    return Ok(a.abs());
                }
                Some((_, cc)) => c = cc,
            }
        }
    }
}

/// Smith normal form of an exact integer matrix.
pub fn smith_normal_form(m: &IntegerMatrix) -> Result<SnfResult> {
    let mut s = Sparse::new(m);
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = (0..s.cols.len())
        .filter(|&c| !s.cols[c].is_empty())
        .map(|c| Reverse((s.cols[c].len(), c as u32)))
        .collect();
    let mut units = 0usize;
    let mut touched = Vec::new();
    while let Some(Reverse((count, c))) = heap.pop() {
        if s.cols[c as usize].len() != count || count == 0 {
            continue;
        }
        let pivot = s.cols[c as usize]
            .iter()
            .copied()
            .filter(|&r| s.value(r, c).abs() == 1)
            .min_by_key(|&r| (s.rows[r as usize].len(), r));
        let Some(r) = pivot else { continue };
        s.eliminate_unit(r, c, &mut touched)?;
        units += 1;
        touched.sort_unstable();
        touched.dedup();
        for &cc in &touched {
            let len = s.cols[cc as usize].len();
            if len > 0 {
                heap.push(Reverse((len, cc)));
            }
        }
        touched.clear();
    }
    let mut diagonal = Vec::new();
    loop {
        let best = s
            .rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (v.abs(), r as u32, c)))
            .min();
        let Some((_, r, c)) = best else { break };
        let d = s.eliminate_general(r, c, &mut touched)?;
        touched.clear();
        if d == 1 {
            units += 1;
        } else {
            diagonal.push(d);
        }
    }
    let mut factors = vec![1i64; units];
    factors.extend(divisibility_chain(diagonal)?);
    Ok(SnfResult {
        rank: factors.len(),
        invariant_factors: factors,
    })
}

/// Turns a diagonal into the invariant-factor chain by gcd/lcm exchanges.
fn divisibility_chain(mut d: Vec<i64>) -> Result<Vec<i64>> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = (d[i] / g)
                .checked_mul(d[j])
                .ok_or(Error::Overflow("invariant factors"))?;
            d[i] = g;
            d[j] = l;
        }
    }
    Ok(d)
}

/// Rank over Z/p, by dense elimination. For cross-checks on small matrices.
pub fn rank_mod_p(m: &IntegerMatrix, p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(|v| v.rem_euclid(p)).collect())
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = mod_pow(a[rank][c], p - 2, p);
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % p;
                for (x, &y) in row.iter_mut().zip(&pivot).skip(c) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `[∂_0, ∂_1, …, ∂_top]` where ∂_d maps d-faces to (d-1)-faces; ∂_0 maps
/// every vertex to the empty face. The sign of a facet is `(-1)^i` for the
/// omitted position `i` in the fixed vertex order.
pub fn boundary_matrices(c: &SimplicialComplex) -> Vec<IntegerMatrix> {
    (0..=c.dimension())
        .map(|d| {
            let (lower, upper) = (c.faces_of_dim(d - 1), c.faces_of_dim(d));
            let mut m = IntegerMatrix::new(lower.len(), upper.len());
            for (j, tau) in upper.iter().enumerate() {
                for i in 0..tau.len() {
                    let row = c
                        .index_of(&tau.without_position(i))
                        .expect("complex is closed");
                    m.push(row, j, if i % 2 == 0 { 1 } else { -1 });
                }
            }
            m
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimHomology {
    pub d: i64,
    pub betti: u64,
    pub torsion: Vec<i64>,
}

/// Reduced homology per dimension `0..=dim`. Dimension -1 is left out; it is
/// nonzero only for the complex `{∅}`, flagged by `empty_face_only`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub dims: Vec<DimHomology>,
    pub euler: i64,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub empty_face_only: bool,
}

impl HomologyReport {
    pub fn betti(&self, d: i64) -> u64 {
        self.dims.iter().find(|x| x.d == d).map_or(0, |x| x.betti)
    }

    pub fn torsion(&self, d: i64) -> &[i64] {
        self.dims
            .iter()
            .find(|x| x.d == d)
            .map_or(&[], |x| &x.torsion)
    }

    pub fn has_torsion(&self) -> bool {
        self.dims.iter().any(|x| !x.torsion.is_empty())
    }

    /// Nonzero reduced Betti numbers as `(d, b̃_d)`.
    pub fn betti_profile(&self) -> Vec<(i64, u64)> {
        self.dims
            .iter()
            .filter(|x| x.betti > 0)
            .map(|x| (x.d, x.betti))
            .collect()
    }

    /// Σ (-1)^d b̃_d, including dimension -1.
    pub fn betti_euler(&self) -> i64 {
        let base = if self.empty_face_only { -1 } else { 0 };
        base + self
            .dims
            .iter()
            .map(|x| {
                if x.d % 2 == 0 {
                    x.betti as i64
                } else {
                    -(x.betti as i64)
                }
            })
            .sum::<i64>()
    }
}

/// Reduced homology with the default capacity of 300,000 faces.
pub fn reduced_homology(c: &SimplicialComplex) -> Result<HomologyReport> {
    reduced_homology_with_cap(c, DEFAULT_HOMOLOGY_CAP)
}

/// b̃_d = f_d − rank ∂_d − rank ∂_{d+1}; torsion in dimension d is the
/// invariant factors of ∂_{d+1} above one.
pub fn reduced_homology_with_cap(c: &SimplicialComplex, cap: usize) -> Result<HomologyReport> {
    if c.face_count() > cap {
        return Err(Error::Capacity {
            what: "faces for homology",
            limit: cap,
        });
    }
    let snfs: Vec<SnfResult> = boundary_matrices(c)
        .par_iter()
        .map(smith_normal_form)
        .collect::<Result<_>>()?;
    let rank = |d: i64| -> usize {
        usize::try_from(d)
            .ok()
            .and_then(|d| snfs.get(d))
            .map_or(0, |s| s.rank)
    };
    let dims = (0..=c.dimension())
        .map(|d| {
            let f = c.faces_of_dim(d).len();
            DimHomology {
                d,
                betti: (f - rank(d) - rank(d + 1)) as u64,
                torsion: snfs
                    .get(d as usize + 1)
                    .map(SnfResult::torsion)
                    .unwrap_or_default(),
            }
        })
        .collect();
    Ok(HomologyReport {
        dims,
        euler: c.reduced_euler(),
        empty_face_only: c.dimension() < 0,
    })
}

/// Weak Morse inequalities b̃_d ≤ C^d for every d, and equal alternating sums.
pub fn morse_inequality_check(census: &CriticalCensus, report: &HomologyReport) -> bool {
    morse_inequality_violations(census, report).is_empty()
}

/// The failed conditions of [`morse_inequality_check`], described.
pub fn morse_inequality_violations(
    census: &CriticalCensus,
    report: &HomologyReport,
) -> Vec<String> {
    let mut out: Vec<String> = report
        .dims
        .iter()
        .filter(|x| x.betti > census.get(x.d))
        .map(|x| {
            format!(
                "b̃_{} = {} exceeds {} critical cells",
                x.d,
                x.betti,
                census.get(x.d)
            )
        })
        .collect();
    if census.euler() != report.betti_euler() {
        out.push(format!(
            "alternating sums differ: cells {} vs homology {}",
            census.euler(),
            report.betti_euler()
        ));
    }
    out
}

/// One entry of [`torsion_scan`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum TorsionEntry {
    Computed {
        n: i64,
        torsion: Vec<(i64, Vec<i64>)>,
    },
    Skipped {
        n: i64,
        reason: String,
    },
}

/// Torsion in the homology of Ind(Δ^m_n) for each n; instances over `cap`
/// faces are skipped with the reason.
pub fn torsion_scan(
    m: u32,
    ns: impl IntoIterator<Item = i64>,
    cap: usize,
) -> Result<Vec<TorsionEntry>> {
    ns.into_iter()
        .map(|n| {
            let g = delta(m, n)?;
            let c = match independence_complex(&g, cap) {
                Ok(c) => c,
                Err(Error::Capacity { limit, .. }) => {
                    return Ok(TorsionEntry::Skipped {
                        n,
                        reason: format!("more than {limit} faces"),
                    })
                }
                Err(e) => return Err(e),
            };
            let r = reduced_homology_with_cap(&c, cap)?;
            Ok(TorsionEntry::Computed {
                n,
                torsion: r
                    .dims
                    .iter()
                    .filter(|x| !x.torsion.is_empty())
                    .map(|x| (x.d, x.torsion.clone()))
                    .collect(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{Face, DEFAULT_FACE_CAP};
    use crate::graphs::{cycle, Graph};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn simplex(k: u32) -> SimplicialComplex {
        independence_complex(&Graph::edgeless(k), DEFAULT_FACE_CAP).unwrap()
    }

    fn snf(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntegerMatrix::from_dense(rows))
            .unwrap()
            .invariant_factors
    }

    #[test]
    fn triangle_boundary() {
        let c = simplex(3);
        let b = boundary_matrices(&c);
        assert_eq!(b[2].to_dense(), vec![vec![1], vec![-1], vec![1]]);
        assert_eq!(c.faces_of_dim(1)[1], Face::new(vec![0, 2]));
        for d in 1..b.len() {
            assert!(b[d - 1].multiply(&b[d]).unwrap().is_zero());
        }
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            snf(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            vec![1, 1, 1]
        );
        assert_eq!(snf(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(snf(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(snf(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(
            snf(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]),
            vec![2, 2, 60]
        );
        assert_eq!(snf(&[vec![6, 10, 15]]), vec![1]);
    }

    #[test]
    fn c4_and_c6() {
        let c4 = independence_complex(&cycle(4).unwrap(), DEFAULT_FACE_CAP).unwrap();
        let b = boundary_matrices(&c4);
        assert_eq!(smith_normal_form(&b[1]).unwrap().rank, 2);
        let r = reduced_homology(&c4).unwrap();
        assert_eq!(r.betti_profile(), vec![(0, 1)]);
        let c6 = independence_complex(&cycle(6).unwrap(), DEFAULT_FACE_CAP).unwrap();
        let r = reduced_homology(&c6).unwrap();
        assert_eq!(r.betti_profile(), vec![(1, 2)]);
        assert!(!r.has_torsion());
        assert_eq!(r.betti_euler(), r.euler);
    }

    #[test]
    fn delta_2_2_is_a_two_sphere() {
        let c = independence_complex(&delta(2, 2).unwrap(), DEFAULT_FACE_CAP).unwrap();
        let r = reduced_homology(&c).unwrap();
        assert_eq!(r.betti_profile(), vec![(2, 1)]);
    }

    #[test]
    fn contractible_and_empty() {
        let r = reduced_homology(&simplex(4)).unwrap();
        assert!(r.betti_profile().is_empty());
        assert_eq!(r.euler, 0);
        let r = reduced_homology(&simplex(0)).unwrap();
        assert!(r.dims.is_empty() && r.empty_face_only);
        assert_eq!(r.betti_euler(), -1);
        assert!(matches!(
            reduced_homology_with_cap(&simplex(4), 10),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // Six-vertex triangulation of RP^2, built from its facets.
        let facets = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        let mut rows = [Vec::new(), Vec::new(), Vec::new()];
        let mut faces = std::collections::BTreeSet::new();
        for f in facets {
            for mask in 1u32..8 {
                let s: Vec<u32> = (0..3)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i as usize])
                    .collect();
                faces.insert(Face::new(s));
            }
        }
        for f in faces {
            rows[f.len() - 1].push(f);
        }
        for r in &mut rows {
            r.sort();
        }
        let index = |f: &Face| rows[f.len() - 1].binary_search(f).unwrap();
        let mut d2 = IntegerMatrix::new(rows[1].len(), rows[2].len());
        for (j, t) in rows[2].iter().enumerate() {
            for i in 0..3 {
                d2.push(
                    index(&t.without_position(i)),
                    j,
                    if i % 2 == 0 { 1 } else { -1 },
                );
            }
        }
        let s = smith_normal_form(&d2).unwrap();
        assert_eq!(s.torsion(), vec![2]);
        assert_eq!(s.rank, 10);
    }

    #[test]
    fn morse_check_examples() {
        let c = independence_complex(&delta(2, 1).unwrap(), DEFAULT_FACE_CAP).unwrap();
        let r = reduced_homology(&c).unwrap();
        assert_eq!(r.betti(1), 2);
        let mut census = CriticalCensus::new(2, 1);
        census.counts.insert(1, 2);
        assert!(morse_inequality_check(&census, &r));
        census.counts.insert(1, 0);
        assert!(!morse_inequality_check(&census, &r));
    }

    #[test]
    fn torsion_scan_small() {
        let scan = torsion_scan(2, 0..=3, DEFAULT_HOMOLOGY_CAP).unwrap();
        assert_eq!(scan.len(), 4);
        assert!(scan
            .iter()
            .all(|e| matches!(e, TorsionEntry::Computed { torsion, .. } if torsion.is_empty())));
        let skipped = torsion_scan(2, [3], 50).unwrap();
        assert!(matches!(skipped[0], TorsionEntry::Skipped { .. }));
        assert!(torsion_scan(2, [], 50).unwrap().is_empty());
    }

    /// Determinantal divisors of a matrix of at most 3 rows: d_k is the gcd
    /// of all k×k minors, and the factors are d_k / d_{k-1}.
    fn factors_by_minors(a: &[Vec<i64>]) -> Vec<i64> {
        fn det(m: &[Vec<i64>]) -> i64 {
            match m.len() {
                1 => m[0][0],
                2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
                _ => (0..m.len())
                    .map(|c| {
                        let minor: Vec<Vec<i64>> = m[1..]
                            .iter()
                            .map(|row| {
                                row.iter()
                                    .enumerate()
                                    .filter(|&(k, _)| k != c)
                                    .map(|(_, &v)| v)
                                    .collect()
                            })
                            .collect();
                        let s = if c % 2 == 0 { 1 } else { -1 };
                        s * m[0][c] * det(&minor)
                    })
                    .sum(),
            }
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            (0u32..1 << n)
                .filter(|s| s.count_ones() as usize == k)
                .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
                .collect()
        }
        let (r, c) = (a.len(), a[0].len());
        let mut prev = 1i64;
        let mut out = Vec::new();
        for k in 1..=r.min(c) {
            let mut g = 0i64;
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let sub: Vec<Vec<i64>> = rs
                        .iter()
                        .map(|&i| cs.iter().map(|&j| a[i][j]).collect())
                        .collect();
                    g = g.gcd(&det(&sub));
                }
            }
            if g == 0 {
                break;
            }
            out.push(g / prev);
            prev = g;
        }
        out
    }

    fn unimodular_mix(a: &[Vec<i64>], seed: u64) -> Vec<Vec<i64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = a.to_vec();
        let (r, c) = (m.len(), m[0].len());
        for _ in 0..8 {
            let q: i64 = rng.gen_range(-2..=2);
            if rng.gen_bool(0.5) && r > 1 {
                let (i, j) = (rng.gen_range(0..r), rng.gen_range(0..r));
                if i != j {
                    let src = m[j].clone();
                    for (x, y) in m[i].iter_mut().zip(&src) {
                        *x += q * y;
                    }
                }
            } else if c > 1 {
                let (i, j) = (rng.gen_range(0..c), rng.gen_range(0..c));
                if i != j {
                    for row in m.iter_mut() {
                        row[i] += q * row[j];
                    }
                }
            }
        }
        m
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=3, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
        })
    }

    proptest! {
        #[test]
        fn snf_matches_determinantal_divisors(a in small_matrix()) {
            prop_assert_eq!(snf(&a), factors_by_minors(&a));
        }

        #[test]
        fn snf_invariant_under_unimodular_operations(a in small_matrix(), seed in any::<u64>()) {
            let mixed = unimodular_mix(&a, seed);
            let f = snf(&a);
            prop_assert_eq!(&snf(&mixed), &f);
            for w in f.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }

        #[test]
        fn rank_agrees_with_mod_p(a in small_matrix()) {
            let m = IntegerMatrix::from_dense(&a);
            prop_assert_eq!(smith_normal_form(&m).unwrap().rank, rank_mod_p(&m, 1_000_003));
        }
    }
}
