//! Independence and matching complexes, enumerated face by face.
//!
//! These are the brute-force substrate the rest of the crate is checked
//! against, so they are deliberately explicit: every face is stored.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{line_graph, Graph, GraphExport, VertexLabel};

/// Default guard on the number of faces an enumeration may produce.
pub const DEFAULT_FACE_CAP: usize = 5_000_000;

/// A face: a strictly increasing list of vertex ids of the ground graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(Vec<u32>);

impl Face {
    /// Sorts and deduplicates `vertices`.
    pub fn new(mut vertices: Vec<u32>) -> Face {
        vertices.sort_unstable();
        vertices.dedup();
        Face(vertices)
    }

    pub fn empty() -> Face {
        Face(Vec::new())
    }

    pub(crate) fn from_sorted(vertices: Vec<u32>) -> Face {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|σ| - 1`; the empty face has dimension -1.
    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// σ ∪ {v}.
    pub fn with(&self, v: u32) -> Face {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Face(out)
    }

    /// The face with the vertex at position `i` removed.
    pub fn without_position(&self, i: usize) -> Face {
        let mut out = self.0.clone();
        out.remove(i);
        Face(out)
    }

    pub fn labels(&self, g: &Graph) -> Vec<VertexLabel> {
        self.0.iter().map(|&v| g.label(v as usize)).collect()
    }

    /// Renders as `{a,s2,t1.3}` using the labels of `g`.
    pub fn display<'a>(&'a self, g: &'a Graph) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Face, &'a Graph);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{{")?;
                for (i, &v) in self.0 .0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", self.1.label(v as usize))?;
                }
                write!(f, "}}")
            }
        }
        D(self, g)
    }
}

/// Face counts `(f_{-1}, f_0, f_1, …)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// Number of faces of dimension `d` (zero outside the stored range).
    pub fn get(&self, d: i64) -> u64 {
        usize::try_from(d + 1)
            .ok()
            .and_then(|i| self.0.get(i).copied())
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// The independence complex of a ground graph, graded by face size.
///
/// `faces[k]` holds the faces with `k` vertices in lexicographic order, so
/// `faces[0]` is always `[∅]`.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    graph: Graph,
    faces: Vec<Vec<Face>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexExport {
    pub graph: GraphExport,
    pub f_vector: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<String>>>,
}

impl SimplicialComplex {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Largest face dimension; -1 when only the empty face exists.
    pub fn dimension(&self) -> i64 {
        self.faces.len() as i64 - 2
    }

    /// Faces of dimension `d`, lexicographically sorted.
    pub fn faces_of_dim(&self, d: i64) -> &[Face] {
        usize::try_from(d + 1)
            .ok()
            .and_then(|i| self.faces.get(i))
            .map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().flatten()
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// Position of `face` within [`Self::faces_of_dim`] of its dimension.
    pub fn index_of(&self, face: &Face) -> Option<usize> {
        self.faces_of_dim(face.dim()).binary_search(face).ok()
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.index_of(face).is_some()
    }

    pub fn f_vector(&self) -> FVector {
        f_vector(self)
    }

    pub fn reduced_euler(&self) -> i64 {
        reduced_euler(self)
    }

    pub fn export(&self, with_faces: bool) -> ComplexExport {
        ComplexExport {
            graph: self.graph.export(),
            f_vector: self.f_vector().0,
            faces: with_faces.then(|| {
                self.iter()
                    .map(|f| {
                        f.labels(&self.graph)
                            .iter()
                            .map(ToString::to_string)
                            .collect()
                    })
                    .collect()
            }),
        }
    }
}

/// Enumerates every independent set of `g` by depth-first search over the
/// vertex order, extending each set only by later non-neighbors.
///
/// Fails with [`Error::Capacity`] as soon as more than `face_cap` faces
/// would be produced.
pub fn independence_complex(g: &Graph, face_cap: usize) -> Result<SimplicialComplex> {
    let mut faces: Vec<Vec<Face>> = Vec::new();
    let mut count = 0usize;
    let all: Vec<u32> = (0..g.vertex_count() as u32).collect();
    let mut current = Vec::new();
    enumerate(g, &all, &mut current, &mut faces, &mut count, face_cap)?;
    Ok(SimplicialComplex {
        graph: g.clone(),
        faces,
    })
}

fn enumerate(
    g: &Graph,
    candidates: &[u32],
    current: &mut Vec<u32>,
    faces: &mut Vec<Vec<Face>>,
    count: &mut usize,
    cap: usize,
) -> Result<()> {
    *count += 1;
    if *count > cap {
        return Err(Error::Capacity {
            what: "faces",
            limit: cap,
        });
    }
    if faces.len() <= current.len() {
        faces.push(Vec::new());
    }
    faces[current.len()].push(Face::from_sorted(current.clone()));
    for (i, &v) in candidates.iter().enumerate() {
        let bits = g.adjacency_bits(v as usize);
        let next: Vec<u32> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&u| !bits.contains(u as usize))
            .collect();
        current.push(v);
        enumerate(g, &next, current, faces, count, cap)?;
        current.pop();
    }
    Ok(())
}

/// M(G) = Ind(L(G)).
pub fn matching_complex(g: &Graph, face_cap: usize) -> Result<SimplicialComplex> {
    independence_complex(&line_graph(g), face_cap)
}

/// The simplicial join `{σ ∪ τ}`. Its ground graph is the disjoint union of
/// the two ground graphs, so the vertex labels must not overlap.
pub fn join(c1: &SimplicialComplex, c2: &SimplicialComplex) -> Result<SimplicialComplex> {
    let graph = c1.graph.disjoint_union(&c2.graph)?;
    let remap = |c: &SimplicialComplex| -> Vec<u32> {
        c.graph
            .labels()
            .iter()
            .map(|&l| graph.index_of(l).expect("label present in union") as u32)
            .collect()
    };
    let (r1, r2) = (remap(c1), remap(c2));
    let total = c1.face_count().saturating_mul(c2.face_count());
    if total > DEFAULT_FACE_CAP {
        return Err(Error::Capacity {
            what: "faces",
            limit: DEFAULT_FACE_CAP,
        });
    }
    let mut faces: Vec<Vec<Face>> = vec![Vec::new(); c1.faces.len() + c2.faces.len() - 1];
    for s in c1.iter() {
        for t in c2.iter() {
            let mut v: Vec<u32> = s
                .vertices()
                .iter()
                .map(|&x| r1[x as usize])
                .chain(t.vertices().iter().map(|&x| r2[x as usize]))
                .collect();
            v.sort_unstable();
            faces[v.len()].push(Face::from_sorted(v));
        }
    }
    faces.iter_mut().for_each(|bucket| bucket.sort_unstable());
    while faces.last().is_some_and(Vec::is_empty) {
        faces.pop();
    }
    Ok(SimplicialComplex { graph, faces })
}

pub fn f_vector(c: &SimplicialComplex) -> FVector {
    FVector(c.faces.iter().map(|b| b.len() as u64).collect())
}

/// Σ_{d ≥ -1} (-1)^d f_d, counting the empty face.
pub fn reduced_euler(c: &SimplicialComplex) -> i64 {
    c.faces
        .iter()
        .enumerate()
        .map(|(k, b)| {
            if k % 2 == 0 {
                -(b.len() as i64)
            } else {
                b.len() as i64
            }
        })
        .sum()
}

/// Counts the independent sets of `g` without storing them.
pub fn count_independent_sets(g: &Graph) -> u128 {
    let mut memo = HashMap::new();
    let all = fixedbitset::FixedBitSet::with_capacity(g.vertex_count());
    let mut live = all.clone();
    live.insert_range(..);
    count_in(g, live, &mut memo)
}

pub(crate) fn count_in(
    g: &Graph,
    live: fixedbitset::FixedBitSet,
    memo: &mut HashMap<fixedbitset::FixedBitSet, u128>,
) -> u128 {
    if live.is_clear() {
        return 1;
    }
    if let Some(&c) = memo.get(&live) {
        return c;
    }
    let (best, deg) = live
        .ones()
        .map(|v| (v, g.adjacency_bits(v).intersection(&live).count()))
        .max_by_key(|&(v, d)| (d, std::cmp::Reverse(v)))
        .expect("nonempty");
    let result = if deg == 0 {
        1u128 << live.count_ones(..)
    } else {
        let mut without = live.clone();
        without.set(best, false);
        let mut closed = without.clone();
        closed.difference_with(g.adjacency_bits(best));
        count_in(g, without, memo) + count_in(g, closed, memo)
    };
    memo.insert(live, result);
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, delta, delta2_isomorphism, gamma, path, VertexLabel};

    const CAP: usize = DEFAULT_FACE_CAP;

    /// Every subset of the vertex set, kept when independent.
    fn brute_force_faces(g: &Graph) -> Vec<Face> {
        let n = g.vertex_count();
        assert!(n <= 20);
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let verts: Vec<u32> = (0..n as u32).filter(|&i| mask >> i & 1 == 1).collect();
            let independent = verts.iter().all(|&u| {
                verts
                    .iter()
                    .all(|&v| !g.are_adjacent(u as usize, v as usize))
            });
            if independent {
                out.push(Face::new(verts));
            }
        }
        out.sort();
        out
    }

    fn sorted_faces(c: &SimplicialComplex) -> Vec<Face> {
        let mut v: Vec<Face> = c.iter().cloned().collect();
        v.sort();
        v
    }

    #[test]
    fn cycle_f_vectors() {
        let c4 = independence_complex(&cycle(4).unwrap(), CAP).unwrap();
        assert_eq!(c4.f_vector().0, vec![1, 4, 2]);
        assert_eq!(
            c4.faces_of_dim(1),
            &[Face::new(vec![0, 2]), Face::new(vec![1, 3])]
        );
        let c6 = independence_complex(&cycle(6).unwrap(), CAP).unwrap();
        assert_eq!(c6.f_vector().0, vec![1, 6, 9, 2]);
        assert_eq!(c6.reduced_euler(), -2);
        assert_eq!(sorted_faces(&c6), brute_force_faces(c6.graph()));
    }

    #[test]
    fn single_vertex_and_full_simplex() {
        let k1 = independence_complex(&delta(2, -1).unwrap(), CAP).unwrap();
        assert_eq!(k1.f_vector().0, vec![1, 1]);
        let simplex = independence_complex(&Graph::edgeless(3), CAP).unwrap();
        assert_eq!(simplex.f_vector().0, vec![1, 3, 3, 1]);
        assert_eq!(simplex.reduced_euler(), 0);
    }

    #[test]
    fn matching_complex_small_graphs() {
        let m = matching_complex(&path(4).unwrap(), CAP).unwrap();
        assert_eq!(m.f_vector().0, vec![1, 3, 1]);
        let tri = matching_complex(&cycle(3).unwrap(), CAP).unwrap();
        assert_eq!(tri.f_vector().0, vec![1, 3]);
    }

    #[test]
    fn matching_complex_of_gamma_agrees_with_delta_under_isomorphism() {
        for n in 1..=3u32 {
            let grid = matching_complex(&gamma(n).unwrap(), CAP).unwrap();
            let comb = independence_complex(&delta(2, n as i64).unwrap(), CAP).unwrap();
            let map = delta2_isomorphism(n).unwrap();
            let mut image: Vec<Face> = comb
                .iter()
                .map(|f| {
                    Face::new(
                        f.labels(comb.graph())
                            .iter()
                            .map(|l| grid.graph().vertex(map[l]).unwrap() as u32)
                            .collect(),
                    )
                })
                .collect();
            image.sort();
            assert_eq!(image, sorted_faces(&grid), "n = {n}");
        }
    }

    #[test]
    fn delta_2_2_matches_brute_force() {
        let g = delta(2, 2).unwrap();
        let c = independence_complex(&g, CAP).unwrap();
        assert_eq!(sorted_faces(&c), brute_force_faces(&g));
        // Ind(D_2) = matchings of the 2x4 grid.
        assert_eq!(c.f_vector().total(), 71);
        assert_eq!(c.reduced_euler(), 1);
    }

    #[test]
    fn join_identities() {
        let s0 = independence_complex(&path(2).unwrap(), CAP).unwrap();
        let other = independence_complex(
            &path(2)
                .unwrap()
                .map_labels(|l| match l {
                    VertexLabel::Plain(i) => VertexLabel::Plain(i + 2),
                    l => l,
                })
                .unwrap(),
            CAP,
        )
        .unwrap();
        let square = join(&s0, &other).unwrap();
        assert_eq!(square.f_vector().0, vec![1, 4, 4]);
        let direct = independence_complex(square.graph(), CAP).unwrap();
        assert_eq!(sorted_faces(&square), sorted_faces(&direct));

        let point = independence_complex(&Graph::edgeless(0), CAP).unwrap();
        let same = join(&s0, &point).unwrap();
        assert_eq!(sorted_faces(&same), sorted_faces(&s0));

        assert!(matches!(join(&s0, &s0), Err(Error::OverlappingLabels(_))));
    }

    #[test]
    fn capacity_guard_trips() {
        let err = independence_complex(&path(20).unwrap(), 100).unwrap_err();
        assert!(matches!(err, Error::Capacity { limit: 100, .. }));
    }

    #[test]
    fn counting_agrees_with_enumeration() {
        for g in [cycle(7).unwrap(), delta(3, 2).unwrap(), gamma(2).unwrap()] {
            let c = independence_complex(&g, CAP).unwrap();
            assert_eq!(count_independent_sets(&g), c.face_count() as u128);
        }
    }

    #[test]
    fn faces_are_closed_and_independent() {
        let c = independence_complex(&delta(3, 2).unwrap(), CAP).unwrap();
        for f in c.iter() {
            for i in 0..f.len() {
                assert!(c.contains(&f.without_position(i)));
            }
            for &u in f.vertices() {
                for &v in f.vertices() {
                    assert!(!c.graph().are_adjacent(u as usize, v as usize));
                }
            }
        }
    }
}
