//! Closed-form cell counts C^d_n for the comb complexes, for a fixed m.
//!
//! Rows n = 0..3 are seeded by hand; later rows come from
//! `C^d_n = C^{d-2}_{n-3} + C^{d-(m+1)}_{n-4} + C^{d-m}_{n-3}`, where any
//! term with a negative index is zero. The dimension-0 entries use the reduced
//! convention (the base point paired with ∅ is not counted).
//!
//! Everything here is exact; counts are arbitrary-precision.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::comb::CriticalCensus;
use crate::error::{invalid, Error, Result};

/// Dense table of C^d_n for one m. `rows[n][d]`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    m: u32,
    rows: Vec<Vec<BigUint>>,
}

/// The support bounds for row n: nonzero C^d_n (other than the base point)
/// only for `d_min ≤ d ≤ d_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionBounds {
    pub d_min: i64,
    pub d_max: i64,
}

/// Rows 0..=3 for the given m.
pub fn census_seed(m: u32) -> Result<CensusTable> {
    if m < 2 {
        return Err(invalid(format!("census needs m >= 2, got {m}")));
    }
    let m_ = m as usize;
    let mut rows = vec![Vec::new(); 4];
    let mut put = |n: usize, d: usize| {
        let row: &mut Vec<BigUint> = &mut rows[n];
        if row.len() <= d {
            row.resize(d + 1, BigUint::zero());
        }
        row[d] += 1u32;
    };
    // For m = 2 the coinciding entries add up: C^1_1 = 2 and C^2_3 = 2.
    put(0, 0);
    put(1, 1);
    put(1, m_ - 1);
    put(2, m_);
    put(3, 2);
    put(3, m_);
    Ok(CensusTable { m, rows })
}

/// Fills rows up to `n_max` with the recursion.
pub fn census_extend(mut table: CensusTable, n_max: usize) -> CensusTable {
    let m = table.m as usize;
    while table.rows.len() <= n_max {
        let n = table.rows.len() as i64;
        let r3 = table.rows[(n - 3) as usize].len();
        let r4 = table.rows[(n - 4) as usize].len();
        let len = (r3 + 2).max(r4 + m + 1).max(r3 + m);
        let mut row: Vec<BigUint> = (0..len as i64)
            .map(|d| {
                table.get(n - 3, d - 2)
                    + table.get(n - 4, d - (m as i64 + 1))
                    + table.get(n - 3, d - m as i64)
            })
            .collect();
        while row.last().is_some_and(Zero::is_zero) {
            row.pop();
        }
        table.rows.push(row);
    }
    table
}

impl CensusTable {
    /// Seeded and extended through `n_max`.
    pub fn new(m: u32, n_max: usize) -> Result<CensusTable> {
        Ok(census_extend(census_seed(m)?, n_max))
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// C^d_n; zero outside the table and for negative indices.
    pub fn get(&self, n: i64, d: i64) -> BigUint {
        self.get_ref(n, d).cloned().unwrap_or_default()
    }

    fn get_ref(&self, n: i64, d: i64) -> Option<&BigUint> {
        if n < 0 || d < 0 {
            return None;
        }
        self.rows.get(n as usize)?.get(d as usize)
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    /// Nonzero entries `(n, d, C^d_n)` in row-major order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.rows.iter().enumerate().flat_map(|(n, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(d, c)| (n, d, c))
        })
    }

    /// Row `n` as a census, for comparison with a matching tree.
    pub fn census_at(&self, n: usize) -> Result<CriticalCensus> {
        let mut out = CriticalCensus::new(self.m, n as i64);
        for (d, c) in self
            .rows
            .get(n)
            .ok_or_else(|| invalid(format!("row {n} not computed")))?
            .iter()
            .enumerate()
        {
            if !c.is_zero() {
                let c = c.to_u64().ok_or(Error::Overflow("census count"))?;
                out.counts.insert(d as i64, c);
            }
        }
        Ok(out)
    }

    /// CSV with header `m,n,d,count`, nonzero entries only.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["m", "n", "d", "count"])?;
        for (n, d, c) in self.nonzero() {
            w.write_record([
                self.m.to_string(),
                n.to_string(),
                d.to_string(),
                c.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// JSON `{m, rows: [{n, census: {d: count}}]}`. Counts that do not fit
    /// in a u64 are written as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .enumerate()
            .map(|(n, row)| {
                let census: serde_json::Map<String, serde_json::Value> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(d, c)| (d.to_string(), big_json(c)))
                    .collect();
                serde_json::json!({ "n": n, "census": census })
            })
            .collect();
        serde_json::json!({ "m": self.m, "rows": rows })
    }
}

fn big_json(c: &BigUint) -> serde_json::Value {
    match c.to_u64() {
        Some(v) => v.into(),
        None => c.to_string().into(),
    }
}

/// χ^m_n = Σ_d (-1)^d C^d_n.
pub fn euler_from_table(table: &CensusTable, n: usize) -> BigInt {
    table.rows[n]
        .iter()
        .enumerate()
        .map(|(d, c)| {
            let c = BigInt::from(c.clone());
            if d % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .sum()
}

/// χ^m_n = (1 + (-1)^m) χ^m_{n-3} + (-1)^{m+1} χ^m_{n-4}.
///
/// `history[i]` holds χ^m_i. For n < 4 the value comes from the seed rows.
pub fn euler_recursion(m: u32, n: i64, history: &[BigInt]) -> Result<BigInt> {
    if n < 0 {
        return Err(invalid(format!("euler recursion needs n >= 0, got {n}")));
    }
    if n < 4 {
        return Ok(euler_from_table(&census_seed(m)?, n as usize));
    }
    let at = |i: i64| {
        history
            .get(i as usize)
            .cloned()
            .ok_or(Error::MissingHistory(i))
    };
    let (h3, h4) = (at(n - 3)?, at(n - 4)?);
    Ok(if m.is_multiple_of(2) { 2 * h3 - h4 } else { h4 })
}

/// Odd-m values of χ^m_n by n mod 4, as produced by the seed rows.
pub const ODD_EULER_PERIOD: [i64; 4] = [1, 0, -1, 0];

/// χ^m_n without the table: for even m, a_n = a_{n-3} - a_{n-2} - a_{n-1}
/// from 1, -2, 1; for odd m, period 4.
pub fn euler_closed_form(m: u32, n: usize) -> Result<BigInt> {
    if m < 2 {
        return Err(invalid(format!("euler needs m >= 2, got {m}")));
    }
    if m % 2 == 1 {
        return Ok(ODD_EULER_PERIOD[n % 4].into());
    }
    let mut a: Vec<BigInt> = vec![1.into(), (-2).into(), 1.into()];
    while a.len() <= n {
        let k = a.len();
        let next = &a[k - 3] - &a[k - 2] - &a[k - 1];
        a.push(next);
    }
    Ok(a.swap_remove(n))
}

/// OEIS b-file lines `n a(n)` for χ^m_0..χ^m_{n_max}.
pub fn euler_bfile(m: u32, n_max: usize) -> Result<String> {
    let mut s = String::new();
    for n in 0..=n_max {
        s.push_str(&format!("{n} {}\n", euler_closed_form(m, n)?));
    }
    Ok(s)
}

/// The array T(j, k) = 2 T(j-1, k) + T(j-1, k-1) with T(0,0) = 1,
/// T(1,0) = 0, T(2,0) = 1 and T(j,k) = 0 if k < 0 or j < k.
#[derive(Clone, Debug)]
pub struct RiordanArray {
    rows: Vec<Vec<BigUint>>,
}

impl RiordanArray {
    pub fn new(j_max: usize) -> RiordanArray {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(j_max + 1);
        for j in 0..=j_max {
            let row = (0..=j)
                .map(|k| match (j, k) {
                    (0, 0) | (2, 0) => BigUint::from(1u32),
                    (1, 0) => BigUint::zero(),
                    _ => {
                        let prev = &rows[j - 1];
                        let same = prev.get(k).cloned().unwrap_or_default();
                        let left = if k > 0 {
                            prev[k - 1].clone()
                        } else {
                            BigUint::zero()
                        };
                        same * 2u32 + left
                    }
                })
                .collect();
            rows.push(row);
        }
        RiordanArray { rows }
    }

    pub fn get(&self, j: i64, k: i64) -> BigUint {
        if k < 0 || j < k {
            return BigUint::zero();
        }
        self.rows
            .get(j as usize)
            .and_then(|r| r.get(k as usize))
            .cloned()
            .expect("array too small for requested entry")
    }

    pub fn j_max(&self) -> usize {
        self.rows.len() - 1
    }
}

/// A single entry T(j, k).
pub fn riordan_t(j: i64, k: i64) -> BigUint {
    if k < 0 || j < k {
        return BigUint::zero();
    }
    RiordanArray::new(j as usize).get(j, k)
}

/// Outcome of [`riordan_identity_check`]; `failures` names each mismatch.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RiordanCheck {
    pub n_max: usize,
    /// C^d_n = T(n-d+2, 3d-2n) for all n ≤ n_max, 0 ≤ d ≤ n+2.
    pub forward: bool,
    /// C^d_n = 2 C^{d-2}_{n-3} + C^{d-3}_{n-4} for 4 ≤ n ≤ n_max.
    pub reduced: bool,
    /// T(j, k) = C^{2(j-2)+k}_{3(j-2)+k} wherever both indices are in range.
    pub inverse: bool,
    pub failures: Vec<String>,
}

impl RiordanCheck {
    pub fn holds(&self) -> bool {
        self.forward && self.reduced && self.inverse
    }
}

/// Checks the m = 2 table against the Riordan array in both directions and
/// against the reduced recursion.
pub fn riordan_identity_check(n_max: usize) -> RiordanCheck {
    let table = CensusTable::new(2, n_max).expect("m = 2 is valid");
    let t = RiordanArray::new(n_max + 2);
    let mut check = RiordanCheck {
        n_max,
        forward: true,
        reduced: true,
        inverse: true,
        failures: Vec::new(),
    };
    for n in 0..=n_max as i64 {
        for d in 0..=n + 2 {
            let (c, tv) = (table.get(n, d), t.get(n - d + 2, 3 * d - 2 * n));
            if c != tv {
                check.forward = false;
                check
                    .failures
                    .push(format!("forward n={n} d={d}: C={c} T={tv}"));
            }
            if n >= 4 {
                let r = table.get(n - 3, d - 2) * 2u32 + table.get(n - 4, d - 3);
                if c != r {
                    check.reduced = false;
                    check
                        .failures
                        .push(format!("reduced n={n} d={d}: C={c} recursion={r}"));
                }
            }
        }
    }
    for j in 0..=t.j_max() as i64 {
        for k in 0..=j {
            let (n, d) = (3 * (j - 2) + k, 2 * (j - 2) + k);
            if n < 0 || d < 0 || n > n_max as i64 {
                continue;
            }
            let (tv, c) = (t.get(j, k), table.get(n, d));
            if tv != c {
                check.inverse = false;
                check
                    .failures
                    .push(format!("inverse j={j} k={k}: T={tv} C^{d}_{n}={c}"));
            }
        }
    }
    check
}

/// `d_min = ⌊(2n+2)/3⌋` for n ≡ 0, 1 (mod 3), else `2⌊(n-1)/3⌋ + m`;
/// `d_max = ⌊(3n+2)/4⌋` for m = 2, else `n + 1 + (m-3)⌊(n+2)/3⌋`.
pub fn dimension_bounds(m: u32, n: i64) -> Result<DimensionBounds> {
    if m < 2 || n < 0 {
        return Err(invalid(format!(
            "bounds need m >= 2 and n >= 0, got m={m} n={n}"
        )));
    }
    let m = m as i64;
    let d_min = if n % 3 == 2 {
        2 * ((n - 1) / 3) + m
    } else {
        (2 * n + 2) / 3
    };
    let d_max = if m == 2 {
        (3 * n + 2) / 4
    } else {
        n + 1 + (m - 3) * ((n + 2) / 3)
    };
    Ok(DimensionBounds { d_min, d_max })
}

/// Predicted homology in the lowest dimension d_n = ⌊(2n+2)/3⌋, for m ≥ 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LowHomology {
    pub dimension: i64,
    pub rank: u32,
}

pub fn low_homology_prediction(m: u32, n: i64) -> Result<LowHomology> {
    if m < 4 {
        return Err(invalid(format!(
            "low-dimensional prediction needs m >= 4, got {m}"
        )));
    }
    if n < 0 {
        return Err(invalid(format!("n must be >= 0, got {n}")));
    }
    Ok(LowHomology {
        dimension: (2 * n + 2) / 3,
        rank: u32::from(n % 3 != 2),
    })
}

/// Result of [`observation_scan`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObservationScan {
    pub n_max: usize,
    /// One entry per n.
    pub rows: Vec<ScanRow>,
    /// The n where the excess inequality fails.
    pub exceptions: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub n: usize,
    pub delta: i64,
    pub holds: bool,
}

/// For m = 2 and each n ≤ n_max, tests C^δ_n > C^{δ-1}_n + C^{δ+1}_n at
/// δ = ⌊(9n+9)/13⌋. When it holds, the chain group in dimension δ is larger
/// than the ranks of both boundary maps can absorb, so H_δ has free part.
pub fn observation_scan(n_max: usize) -> ObservationScan {
    let table = CensusTable::new(2, n_max).expect("m = 2 is valid");
    let rows: Vec<ScanRow> = (0..=n_max)
        .map(|n| {
            let (n_, delta) = (n as i64, (9 * n as i64 + 9) / 13);
            let holds = table.get(n_, delta) > table.get(n_, delta - 1) + table.get(n_, delta + 1);
            ScanRow { n, delta, holds }
        })
        .collect();
    let exceptions = rows.iter().filter(|r| !r.holds).map(|r| r.n).collect();
    ObservationScan {
        n_max,
        rows,
        exceptions,
    }
}

/// Per-m tables, keyed by m.
pub fn tables(ms: &[u32], n_max: usize) -> Result<BTreeMap<u32, CensusTable>> {
    ms.iter()
        .map(|&m| Ok((m, CensusTable::new(m, n_max)?)))
        .collect()
}
