//! Labeled simple graphs and the families studied here: paths, cycles, 2×N
//! grids, extended stars Y^m_n, theta graphs Ŷ^m_n and combs Δ^m_n.
//!
//! Vertices carry structured labels. The derived order on [`VertexLabel`]
//! (`a < s1 < … < sn < b < t1.1 < t1.2 < … < t2.1 < …`) is the fixed total
//! order used for face enumeration and boundary orientation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Row code for the vertical rungs of a 2×N grid in [`VertexLabel::GridEdge`].
pub const RUNG: u32 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    /// The left end `a` of a theta or comb graph, or the center of a star.
    EndA,
    /// Spine vertex `k` of Δ^m_n, `1 ≤ k ≤ n`.
    Spine(u32),
    /// The right end `b` of a theta or comb graph.
    EndB,
    /// The `k`-th vertex away from `a` on tendril `j`.
    Tendril(u32, u32),
    /// Vertex `i` of a path, cycle or grid (grids number row-major from 1).
    Plain(u32),
    /// An edge of a 2×N grid seen as a line-graph vertex: `GridEdge(RUNG, c)`
    /// is the rung in column `c`, `GridEdge(r, c)` for `r ∈ {1, 2}` joins
    /// columns `c` and `c + 1` in row `r`.
    GridEdge(u32, u32),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VertexLabel::EndA => write!(f, "a"),
            VertexLabel::EndB => write!(f, "b"),
            VertexLabel::Spine(k) => write!(f, "s{k}"),
            VertexLabel::Tendril(j, k) => write!(f, "t{j}.{k}"),
            VertexLabel::Plain(i) => write!(f, "v{i}"),
            VertexLabel::GridEdge(kind, col) => write!(f, "ge{kind}.{col}"),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid(format!("malformed vertex label `{s}`"));
        let pair = |rest: &str| -> Result<(u32, u32)> {
            let (x, y) = rest.split_once('.').ok_or_else(bad)?;
            Ok((x.parse().map_err(|_| bad())?, y.parse().map_err(|_| bad())?))
        };
        match s {
            "a" => Ok(VertexLabel::EndA),
            "b" => Ok(VertexLabel::EndB),
            _ if s.starts_with("ge") => {
                let (kind, col) = pair(&s[2..])?;
                Ok(VertexLabel::GridEdge(kind, col))
            }
            _ if s.starts_with('s') => Ok(VertexLabel::Spine(s[1..].parse().map_err(|_| bad())?)),
            _ if s.starts_with('t') => {
                let (j, k) = pair(&s[1..])?;
                Ok(VertexLabel::Tendril(j, k))
            }
            _ if s.starts_with('v') => Ok(VertexLabel::Plain(s[1..].parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

/// The graph families accepted by [`build_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Cycle,
    Grid2,
    Star,
    Theta,
    Delta,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Grid2 => "grid2",
            Family::Star => "star",
            Family::Theta => "theta",
            Family::Delta => "delta",
        }
    }
}

/// A finite simple graph with uniquely labeled vertices.
///
/// Vertices are stored sorted by label; vertex ids used throughout the crate
/// are positions in that order. Immutable once built.
#[derive(Clone, Debug)]
pub struct Graph {
    family: String,
    params: Vec<i64>,
    labels: Vec<VertexLabel>,
    index: HashMap<VertexLabel, usize>,
    adj: Vec<Vec<usize>>,
    adj_bits: Vec<FixedBitSet>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

/// JSON form of a graph: `{family, params, vertices, edges}` with labels
/// rendered in the `a`/`b`/`s<k>`/`t<j>.<k>`/`v<i>`/`ge<kind>.<col>` grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub family: String,
    pub params: Vec<i64>,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl Graph {
    /// Builds a graph from explicit vertices and edges.
    ///
    /// Rejects duplicate labels, loops, repeated edges and edges that mention
    /// a vertex not in the list.
    pub fn new(
        family: impl Into<String>,
        params: Vec<i64>,
        vertices: impl IntoIterator<Item = VertexLabel>,
        edges: impl IntoIterator<Item = (VertexLabel, VertexLabel)>,
    ) -> Result<Graph> {
        let mut labels: Vec<VertexLabel> = vertices.into_iter().collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid(format!("duplicate vertex label {}", w[0])));
        }
        let index: HashMap<VertexLabel, usize> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut adj = vec![Vec::new(); labels.len()];
        for (u, v) in edges {
            let iu = *index
                .get(&u)
                .ok_or_else(|| Error::UnknownVertex(u.to_string()))?;
            let iv = *index
                .get(&v)
                .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
            if iu == iv {
                return Err(invalid(format!("loop at {u}")));
            }
            adj[iu].push(iv);
            adj[iv].push(iu);
        }
        for (i, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid(format!("repeated edge at {}", labels[i])));
            }
        }
        let n = labels.len();
        let adj_bits = adj
            .iter()
            .map(|list| {
                let mut bits = FixedBitSet::with_capacity(n);
                list.iter().for_each(|&j| bits.insert(j));
                bits
            })
            .collect();
        Ok(Graph {
            family: family.into(),
            params,
            labels,
            index,
            adj,
            adj_bits,
        })
    }

    /// `k` isolated vertices `v1..vk`; its independence complex is the full simplex.
    pub fn edgeless(k: u32) -> Graph {
        Graph::new(
            "edgeless",
            vec![k as i64],
            (1..=k).map(VertexLabel::Plain),
            [],
        )
        .expect("edgeless graph is valid")
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn params(&self) -> &[i64] {
        &self.params
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Labels in vertex-id order.
    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    pub fn index_of(&self, label: VertexLabel) -> Option<usize> {
        self.index.get(&label).copied()
    }

    pub fn vertex(&self, label: VertexLabel) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Sorted neighbor ids of vertex `v`.
    pub fn adjacent(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacency_bits(&self, v: usize) -> &FixedBitSet {
        &self.adj_bits[v]
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj_bits[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// The open neighborhood N(v) as labels.
    pub fn neighbors(&self, label: VertexLabel) -> Result<BTreeSet<VertexLabel>> {
        let v = self.vertex(label)?;
        Ok(self.adj[v].iter().map(|&u| self.labels[u]).collect())
    }

    /// Edges as id pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Returns a copy with every label passed through `f`.
    pub fn map_labels(&self, f: impl Fn(VertexLabel) -> VertexLabel) -> Result<Graph> {
        Graph::new(
            self.family.clone(),
            self.params.clone(),
            self.labels.iter().map(|&l| f(l)),
            self.edges()
                .map(|(u, v)| (f(self.labels[u]), f(self.labels[v]))),
        )
    }

    /// The disjoint union A ⊎ B. Labels of the two graphs must not overlap.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        if let Some(l) = other.labels.iter().find(|l| self.index.contains_key(l)) {
            return Err(Error::OverlappingLabels(l.to_string()));
        }
        let edges = self
            .edges()
            .map(|(u, v)| (self.labels[u], self.labels[v]))
            .chain(
                other
                    .edges()
                    .map(|(u, v)| (other.labels[u], other.labels[v])),
            )
            .collect::<Vec<_>>();
        Graph::new(
            format!("{}+{}", self.family, other.family),
            self.params.iter().chain(&other.params).copied().collect(),
            self.labels.iter().chain(&other.labels).copied(),
            edges,
        )
    }

    pub fn export(&self) -> GraphExport {
        GraphExport {
            family: self.family.clone(),
            params: self.params.clone(),
            vertices: self.labels.iter().map(ToString::to_string).collect(),
            edges: self
                .edges()
                .map(|(u, v)| [self.labels[u].to_string(), self.labels[v].to_string()])
                .collect(),
        }
    }
}

/// Builds a member of one of the named families.
///
/// Parameters: `path [n]`, `cycle [n]`, `grid2 [cols]`, `star [m, n]`,
/// `theta [m, n]`, `delta [m, n]`.
pub fn build_graph(family: Family, params: &[i64]) -> Result<Graph> {
    let want = match family {
        Family::Path | Family::Cycle | Family::Grid2 => 1,
        _ => 2,
    };
    if params.len() != want {
        return Err(invalid(format!(
            "{} takes {want} parameter(s), got {}",
            family.name(),
            params.len()
        )));
    }
    let p0 = params[0];
    match family {
        Family::Path => path(to_u32(p0, 1, "path n")?),
        Family::Cycle => cycle(to_u32(p0, 3, "cycle n")?),
        Family::Grid2 => grid2(to_u32(p0, 1, "grid2 columns")?),
        Family::Star => star(to_u32(p0, 1, "star m")?, to_u32(params[1], 1, "star n")?),
        Family::Theta => theta(to_u32(p0, 2, "theta m")?, to_u32(params[1], 1, "theta n")?),
        Family::Delta => delta(to_u32(p0, 2, "delta m")?, params[1]),
    }
}

fn to_u32(x: i64, min: i64, what: &str) -> Result<u32> {
    if x < min {
        return Err(invalid(format!("{what} must be at least {min}, got {x}")));
    }
    u32::try_from(x).map_err(|_| invalid(format!("{what} = {x} is too large")))
}

/// The path Pa_n on vertices `v1 – v2 – … – vn`.
pub fn path(n: u32) -> Result<Graph> {
    if n < 1 {
        return Err(invalid("path needs n >= 1"));
    }
    Graph::new(
        "path",
        vec![n as i64],
        (1..=n).map(VertexLabel::Plain),
        (1..n).map(|i| (VertexLabel::Plain(i), VertexLabel::Plain(i + 1))),
    )
}

/// The cycle C_n on vertices `v1 … vn`.
pub fn cycle(n: u32) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("cycle needs n >= 3"));
    }
    Graph::new(
        "cycle",
        vec![n as i64],
        (1..=n).map(VertexLabel::Plain),
        (1..=n).map(|i| (VertexLabel::Plain(i), VertexLabel::Plain(i % n + 1))),
    )
}

/// The 2×`cols` grid graph. Vertex `(r, c)` is `v{(r-1)*cols + c}`.
pub fn grid2(cols: u32) -> Result<Graph> {
    if cols < 1 {
        return Err(invalid("grid2 needs at least one column"));
    }
    let at = |r: u32, c: u32| VertexLabel::Plain((r - 1) * cols + c);
    let mut edges = Vec::new();
    for c in 1..=cols {
        edges.push((at(1, c), at(2, c)));
    }
    for r in 1..=2 {
        for c in 1..cols {
            edges.push((at(r, c), at(r, c + 1)));
        }
    }
    Graph::new(
        "grid2",
        vec![cols as i64],
        (1..=2 * cols).map(VertexLabel::Plain),
        edges,
    )
}

/// Γ_n, the 2 by n+2 grid.
pub fn gamma(n: u32) -> Result<Graph> {
    grid2(n + 2)
}

/// The extended star Y^m_n: center `a` with `m` tendrils of `n` edges.
pub fn star(m: u32, n: u32) -> Result<Graph> {
    if m < 1 || n < 1 {
        return Err(invalid("star needs m >= 1 and n >= 1"));
    }
    let mut vertices = vec![VertexLabel::EndA];
    let mut edges = Vec::new();
    for j in 1..=m {
        vertices.extend((1..=n).map(|k| VertexLabel::Tendril(j, k)));
        edges.push((VertexLabel::EndA, VertexLabel::Tendril(j, 1)));
        edges.extend((1..n).map(|k| (VertexLabel::Tendril(j, k), VertexLabel::Tendril(j, k + 1))));
    }
    Graph::new("star", vec![m as i64, n as i64], vertices, edges)
}

/// The theta graph Ŷ^m_n: `a` and `b` joined by `m` paths of `n + 1` edges.
pub fn theta(m: u32, n: u32) -> Result<Graph> {
    if m < 2 || n < 1 {
        return Err(invalid("theta needs m >= 2 and n >= 1"));
    }
    let (vertices, edges) = theta_parts(m, n);
    Graph::new("theta", vec![m as i64, n as i64], vertices, edges)
}

type Parts = (Vec<VertexLabel>, Vec<(VertexLabel, VertexLabel)>);

fn theta_parts(m: u32, n: u32) -> Parts {
    let mut vertices = vec![VertexLabel::EndA, VertexLabel::EndB];
    let mut edges = Vec::new();
    for j in 1..=m {
        vertices.extend((1..=n).map(|k| VertexLabel::Tendril(j, k)));
        edges.push((VertexLabel::EndA, VertexLabel::Tendril(j, 1)));
        edges.extend((1..n).map(|k| (VertexLabel::Tendril(j, k), VertexLabel::Tendril(j, k + 1))));
        edges.push((VertexLabel::Tendril(j, n), VertexLabel::EndB));
    }
    (vertices, edges)
}

/// The comb graph Δ^m_n: Ŷ^m_{n+1} plus spine vertices `1..n`, spine `k`
/// adjacent to `(j, k)` and `(j, k + 1)` for every `j`.
///
/// `n = 0` gives Ŷ^m_1 and `n = -1` gives the single vertex K_1 (labeled `a`).
pub fn delta(m: u32, n: i64) -> Result<Graph> {
    if m < 2 {
        return Err(invalid("delta needs m >= 2"));
    }
    if n < -1 {
        return Err(invalid(format!("delta needs n >= -1, got {n}")));
    }
    let params = vec![m as i64, n];
    if n == -1 {
        return Graph::new("delta", params, [VertexLabel::EndA], []);
    }
    let n = u32::try_from(n).map_err(|_| invalid("delta n too large"))?;
    let (mut vertices, mut edges) = theta_parts(m, n + 1);
    for k in 1..=n {
        vertices.push(VertexLabel::Spine(k));
        for j in 1..=m {
            edges.push((VertexLabel::Spine(k), VertexLabel::Tendril(j, k)));
            edges.push((VertexLabel::Spine(k), VertexLabel::Tendril(j, k + 1)));
        }
    }
    Graph::new("delta", params, vertices, edges)
}

/// The line graph L(G): one vertex per edge, adjacent when the edges share an
/// endpoint.
///
/// Edges of a 2×N grid get [`VertexLabel::GridEdge`] labels; for every other
/// graph the edges are numbered `v1, v2, …` in [`Graph::edges`] order.
pub fn line_graph(g: &Graph) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let grid_cols = (g.family() == "grid2").then(|| g.params()[0] as u32);
    let label_of = |idx: usize, (u, v): (usize, usize)| -> VertexLabel {
        match (grid_cols, g.label(u), g.label(v)) {
            (Some(cols), VertexLabel::Plain(x), VertexLabel::Plain(y)) => {
                let (rx, cx) = ((x - 1) / cols + 1, (x - 1) % cols + 1);
                let (ry, cy) = ((y - 1) / cols + 1, (y - 1) % cols + 1);
                if cx == cy {
                    VertexLabel::GridEdge(RUNG, cx)
                } else {
                    debug_assert_eq!(rx, ry);
                    VertexLabel::GridEdge(rx, cx.min(cy))
                }
            }
            _ => VertexLabel::Plain(idx as u32 + 1),
        }
    };
    let labels: Vec<VertexLabel> = edges
        .iter()
        .enumerate()
        .map(|(i, &e)| label_of(i, e))
        .collect();
    let mut incident = vec![Vec::new(); g.vertex_count()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut line_edges = Vec::new();
    for list in &incident {
        for (x, &e) in list.iter().enumerate() {
            for &f in &list[x + 1..] {
                line_edges.push((labels[e], labels[f]));
            }
        }
    }
    Graph::new(
        format!("line({})", g.family()),
        g.params().to_vec(),
        labels.iter().copied(),
        line_edges,
    )
    .expect("two edges of a simple graph share at most one endpoint")
}

/// The explicit isomorphism Δ^2_n → L(Γ_n), checked on every vertex pair
/// before it is returned.
///
/// `a` goes to the rung in column 1, spine `k` to the rung in column `k + 1`,
/// `b` to the rung in column `n + 2`, and tendril vertex `(j, k)` to the
/// `k`-th horizontal edge of row `j`.
pub fn delta2_isomorphism(n: u32) -> Result<BTreeMap<VertexLabel, VertexLabel>> {
    if n < 1 {
        return Err(invalid("delta2_isomorphism needs n >= 1"));
    }
    let source = delta(2, n as i64)?;
    let target = line_graph(&gamma(n)?);
    let map: BTreeMap<VertexLabel, VertexLabel> = source
        .labels()
        .iter()
        .map(|&l| {
            let image = match l {
                VertexLabel::EndA => VertexLabel::GridEdge(RUNG, 1),
                VertexLabel::Spine(k) => VertexLabel::GridEdge(RUNG, k + 1),
                VertexLabel::EndB => VertexLabel::GridEdge(RUNG, n + 2),
                VertexLabel::Tendril(j, k) => VertexLabel::GridEdge(j, k),
                other => other,
            };
            (l, image)
        })
        .collect();
    let images: BTreeSet<_> = map.values().copied().collect();
    if images.len() != source.vertex_count() || source.vertex_count() != target.vertex_count() {
        return Err(Error::Internal("delta2 map is not a bijection".into()));
    }
    let ids = source
        .labels()
        .iter()
        .map(|l| target.vertex(map[l]))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Internal(format!("delta2 map leaves the line graph: {e}")))?;
    for u in 0..source.vertex_count() {
        for v in u + 1..source.vertex_count() {
            if source.are_adjacent(u, v) != target.are_adjacent(ids[u], ids[v]) {
                return Err(Error::Internal(format!(
                    "delta2 map does not preserve the pair {}, {}",
                    source.label(u),
                    source.label(v)
                )));
            }
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use VertexLabel::*;

    fn is_path(g: &Graph) -> bool {
        let leaves = (0..g.vertex_count()).filter(|&v| g.degree(v) == 1).count();
        g.vertex_count() == 1
            || (g.edge_count() + 1 == g.vertex_count()
                && leaves == 2
                && (0..g.vertex_count()).all(|v| g.degree(v) <= 2))
    }

    fn is_cycle(g: &Graph) -> bool {
        g.edge_count() == g.vertex_count() && (0..g.vertex_count()).all(|v| g.degree(v) == 2)
    }

    #[test]
    fn small_members_match_their_named_shapes() {
        let y = build_graph(Family::Star, &[1, 4]).unwrap();
        assert_eq!(y.vertex_count(), 5);
        assert!(is_path(&y));

        let t = build_graph(Family::Theta, &[2, 2]).unwrap();
        assert_eq!(t.vertex_count(), 6);
        assert!(is_cycle(&t));

        let d = build_graph(Family::Delta, &[2, -1]).unwrap();
        assert_eq!(d.vertex_count(), 1);
        assert_eq!(d.edge_count(), 0);
    }

    #[test]
    fn delta_2_3_counts_agree_with_grid_line_graph() {
        let d = delta(2, 3).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count()), (13, 22));
        let l = line_graph(&grid2(5).unwrap());
        assert_eq!((l.vertex_count(), l.edge_count()), (13, 22));
    }

    #[test]
    fn delta_zero_is_theta_one() {
        let d = delta(3, 0).unwrap();
        let t = theta(3, 1).unwrap();
        assert_eq!(d, t);
    }

    #[test]
    fn line_graph_small_cases() {
        let l = line_graph(&path(4).unwrap());
        assert_eq!(l.vertex_count(), 3);
        assert!(is_path(&l));
        let tri = line_graph(&cycle(3).unwrap());
        assert_eq!((tri.vertex_count(), tri.edge_count()), (3, 3));
        assert!(is_cycle(&tri));
    }

    #[test]
    fn neighbors_in_delta_4_3() {
        let g = delta(4, 3).unwrap();
        let n = g.neighbors(Spine(2)).unwrap();
        let want: BTreeSet<_> = (1..=4)
            .flat_map(|j| [Tendril(j, 2), Tendril(j, 3)])
            .collect();
        assert_eq!(n, want);
        assert_eq!(n.len(), 8);
        let na = g.neighbors(EndA).unwrap();
        assert_eq!(na, (1..=4).map(|j| Tendril(j, 1)).collect());
    }

    #[test]
    fn neighbors_in_cycle_and_unknown_vertex() {
        let c = cycle(6).unwrap();
        assert_eq!(c.neighbors(Plain(1)).unwrap(), [Plain(2), Plain(6)].into());
        assert!(matches!(c.neighbors(EndA), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        assert!(build_graph(Family::Path, &[0]).is_err());
        assert!(build_graph(Family::Cycle, &[2]).is_err());
        assert!(build_graph(Family::Star, &[0, 3]).is_err());
        assert!(build_graph(Family::Star, &[2, 0]).is_err());
        assert!(build_graph(Family::Theta, &[1, 3]).is_err());
        assert!(build_graph(Family::Delta, &[2, -2]).is_err());
        assert!(build_graph(Family::Delta, &[1, 2]).is_err());
        assert!(build_graph(Family::Delta, &[2]).is_err());
    }

    #[test]
    fn delta2_isomorphism_small_n() {
        for n in 1..=6 {
            let map = delta2_isomorphism(n).unwrap();
            assert_eq!(map.len(), 3 * n as usize + 4);
            let d = delta(2, n as i64).unwrap();
            let l = line_graph(&gamma(n).unwrap());
            for k in 1..=n {
                let image = map[&Spine(k)];
                assert_eq!(l.degree(l.vertex(image).unwrap()), 4);
                assert_eq!(d.degree(d.vertex(Spine(k)).unwrap()), 4);
            }
        }
    }

    #[test]
    fn label_strings_round_trip() {
        for l in [
            EndA,
            EndB,
            Spine(3),
            Tendril(2, 11),
            Plain(7),
            GridEdge(0, 4),
        ] {
            assert_eq!(l.to_string().parse::<VertexLabel>().unwrap(), l);
        }
        assert_eq!(Tendril(2, 11).to_string(), "t2.11");
        assert_eq!(GridEdge(1, 3).to_string(), "ge1.3");
        assert!("x1".parse::<VertexLabel>().is_err());
        assert!("t1".parse::<VertexLabel>().is_err());
    }

    #[test]
    fn vertex_order_follows_label_order() {
        let g = delta(2, 2).unwrap();
        let want = [
            EndA,
            Spine(1),
            Spine(2),
            EndB,
            Tendril(1, 1),
            Tendril(1, 2),
            Tendril(1, 3),
            Tendril(2, 1),
            Tendril(2, 2),
            Tendril(2, 3),
        ];
        assert_eq!(g.labels(), want);
    }

    #[test]
    fn disjoint_union_rejects_overlap() {
        let p = path(2).unwrap();
        assert!(matches!(
            p.disjoint_union(&p),
            Err(Error::OverlappingLabels(_))
        ));
        let q = p
            .map_labels(|l| match l {
                Plain(i) => Plain(i + 2),
                other => other,
            })
            .unwrap();
        let u = p.disjoint_union(&q).unwrap();
        assert_eq!((u.vertex_count(), u.edge_count()), (4, 2));
    }

    #[test]
    fn export_uses_label_grammar() {
        let e = theta(2, 1).unwrap().export();
        assert_eq!(e.family, "theta");
        assert_eq!(e.params, vec![2, 1]);
        assert_eq!(e.vertices, ["a", "b", "t1.1", "t2.1"]);
        assert_eq!(e.edges.len(), 4);
        assert!(e.edges.contains(&["a".into(), "t1.1".into()]));
    }
}
