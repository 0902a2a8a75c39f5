//! Matching trees for independence complexes.
//!
//! A node Σ(A, B) stands for every independent set containing `A` and
//! avoiding `B`. Leaves are expanded one step at a time:
//!
//! - `Free(p)`: `p` has no neighbor outside `A ∪ B`; every σ in the node is
//!   paired with σ ∪ {p} and the node gets a single child labeled ∅.
//! - `Match { p, v }`: `v` is the only neighbor of `p` outside `A ∪ B`; the
//!   part Σ(A, B ∪ {v}) is paired along `p` and the node gets the single
//!   child Σ(A ∪ {v}, B ∪ N(v)).
//! - `Split(v)`: two children Σ(A, B ∪ {v}) and Σ(A ∪ {v}, B ∪ N(v)), no pairing.
//!
//! A leaf Σ(A, B) with nothing left to choose is the single face `A`, which
//! is critical. The engine never picks pivots itself; a [`Strategy`] does.
//! Pairings are only materialized on request by [`collect_pairing`], since
//! the tree is small and the pairing is as large as the complex.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::complexes::{count_in, Face, SimplicialComplex};
use crate::error::{invalid, Error, Result};
use crate::graphs::Graph;

pub type NodeId = usize;

/// Expansions allowed before [`run_strategy`] gives up.
pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Free(usize),
    Match { p: usize, v: usize },
    Split(usize),
}

impl Step {
    fn describe(self, g: &Graph) -> String {
        match self {
            Step::Free(p) => format!("free {}", g.label(p)),
            Step::Match { p, v } => format!("match {} via {}", g.label(v), g.label(p)),
            Step::Split(v) => format!("split {}", g.label(v)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SiteKind {
    Root,
    /// Unexpanded leaf that still has choices left.
    Open,
    FreeSite,
    MatchingSite,
    SplittingSite,
    /// The ∅-labeled child of a free site.
    EmptyLeaf,
    /// Leaf Σ(A, B) = {A}; `A` is a critical face.
    CriticalLeaf,
}

#[derive(Clone, Debug)]
pub struct SigmaNode {
    /// The forced set `A`.
    pub include: FixedBitSet,
    /// The forbidden set `B`.
    pub exclude: FixedBitSet,
    pub parent: Option<NodeId>,
    kind: SiteKind,
    step: Option<Step>,
}

impl SigmaNode {
    pub fn kind(&self) -> SiteKind {
        self.kind
    }

    /// The step this node was expanded with, if any.
    pub fn step(&self) -> Option<Step> {
        self.step
    }

    pub fn include_face(&self) -> Face {
        Face::new(self.include.ones().map(|v| v as u32).collect())
    }
}

/// How a tree edge was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeStep {
    Free { p: usize },
    Match { p: usize, v: usize },
    SplitExcluded { v: usize },
    SplitIncluded { v: usize },
}

#[derive(Clone, Debug)]
pub struct TreeEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub step: EdgeStep,
}

/// Chooses the next step at an open node. Must be a pure function of the
/// graph and the node's `(A, B)`.
pub trait Strategy {
    fn choose(&self, graph: &Graph, include: &FixedBitSet, exclude: &FixedBitSet) -> Option<Step>;
}

impl<F> Strategy for F
where
    F: Fn(&Graph, &FixedBitSet, &FixedBitSet) -> Option<Step>,
{
    fn choose(&self, graph: &Graph, include: &FixedBitSet, exclude: &FixedBitSet) -> Option<Step> {
        self(graph, include, exclude)
    }
}

/// A generic strategy for any graph: free the first isolated residual
/// vertex, else match along the first residual leaf, else split the first
/// residual vertex.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyStrategy;

impl Strategy for GreedyStrategy {
    fn choose(&self, graph: &Graph, include: &FixedBitSet, exclude: &FixedBitSet) -> Option<Step> {
        let residual = residual_set(graph, include, exclude);
        let mut leaf = None;
        for p in residual.ones() {
            let mut live = graph.adjacency_bits(p).intersection(&residual);
            match (live.next(), live.next()) {
                (None, _) => return Some(Step::Free(p)),
                (Some(v), None) if leaf.is_none() => leaf = Some(Step::Match { p, v }),
                _ => {}
            }
        }
        leaf.or_else(|| residual.ones().next().map(Step::Split))
    }
}

/// V \ (A ∪ N(A) ∪ B).
pub fn residual_set(graph: &Graph, include: &FixedBitSet, exclude: &FixedBitSet) -> FixedBitSet {
    let mut r = FixedBitSet::with_capacity(graph.vertex_count());
    r.insert_range(..);
    r.difference_with(include);
    r.difference_with(exclude);
    for a in include.ones() {
        r.difference_with(graph.adjacency_bits(a));
    }
    r
}

/// The vertices still available below `node`.
pub fn residual_vertices(graph: &Graph, node: &SigmaNode) -> FixedBitSet {
    residual_set(graph, &node.include, &node.exclude)
}

/// |Σ(A, B)|: the number of independent sets of the residual graph.
pub fn sigma_count(graph: &Graph, node: &SigmaNode) -> u128 {
    count_in(graph, residual_vertices(graph, node), &mut HashMap::new())
}

#[derive(Clone, Debug)]
pub struct MatchingTree {
    graph: Graph,
    nodes: Vec<SigmaNode>,
    edges: Vec<TreeEdge>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeExport {
    pub id: NodeId,
    #[serde(rename = "A")]
    pub include: Vec<String>,
    #[serde(rename = "B")]
    pub exclude: Vec<String>,
    pub kind: SiteKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeExport {
    pub from: NodeId,
    pub to: NodeId,
    pub step: String,
}

/// JSON form `{nodes, edges, critical}`.
#[derive(Clone, Debug, Serialize)]
pub struct TreeExport {
    pub nodes: Vec<NodeExport>,
    pub edges: Vec<EdgeExport>,
    pub critical: Vec<Vec<String>>,
}

impl MatchingTree {
    /// A tree consisting of the root Σ(∅, ∅).
    pub fn new(graph: Graph) -> MatchingTree {
        let n = graph.vertex_count();
        let root = SigmaNode {
            include: FixedBitSet::with_capacity(n),
            exclude: FixedBitSet::with_capacity(n),
            parent: None,
            kind: SiteKind::Root,
            step: None,
        };
        MatchingTree {
            graph,
            nodes: vec![root],
            edges: Vec::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn node(&self, id: NodeId) -> &SigmaNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[SigmaNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn children(&self, id: NodeId) -> impl Iterator<Item = &TreeEdge> {
        self.edges.iter().filter(move |e| e.from == id)
    }

    /// True when `id` still needs a step: a leaf with |Σ(A, B)| ≥ 2.
    pub fn is_open(&self, id: NodeId) -> bool {
        let node = &self.nodes[id];
        match node.kind {
            SiteKind::Open => true,
            SiteKind::Root => {
                node.step.is_none() && !residual_vertices(&self.graph, node).is_clear()
            }
            _ => false,
        }
    }

    /// True for leaves holding a single critical face, including a root
    /// that has nothing to expand.
    pub fn is_critical(&self, id: NodeId) -> bool {
        let node = &self.nodes[id];
        match node.kind {
            SiteKind::CriticalLeaf => true,
            SiteKind::Root => {
                node.step.is_none() && residual_vertices(&self.graph, node).is_clear()
            }
            _ => false,
        }
    }

    /// Applies one matching-tree step at the open leaf `id` and returns the
    /// new children. Preconditions are checked and reported by name.
    pub fn expand(&mut self, id: NodeId, step: Step) -> Result<Vec<NodeId>> {
        let illegal = |reason: &str| Error::IllegalStep {
            node: id,
            step: step.describe(&self.graph),
            reason: reason.to_string(),
        };
        if id >= self.nodes.len() {
            return Err(invalid(format!("no node {id}")));
        }
        if !self.is_open(id) {
            return Err(illegal("node is not an open leaf with |Σ(A,B)| >= 2"));
        }
        let n = self.graph.vertex_count();
        let node = &self.nodes[id];
        let residual = residual_vertices(&self.graph, node);
        let in_range = |v: usize| v < n;
        let children = match step {
            Step::Free(p) => {
                if !in_range(p) || !residual.contains(p) {
                    return Err(illegal("free vertex p must lie outside A ∪ B"));
                }
                if self
                    .graph
                    .adjacency_bits(p)
                    .intersection(&residual)
                    .next()
                    .is_some()
                {
                    return Err(illegal("free vertex needs N(p) \\ (A ∪ B) = ∅"));
                }
                let child = SigmaNode {
                    include: FixedBitSet::new(),
                    exclude: FixedBitSet::new(),
                    parent: Some(id),
                    kind: SiteKind::EmptyLeaf,
                    step: None,
                };
                vec![(child, EdgeStep::Free { p })]
            }
            Step::Match { p, v } => {
                if !in_range(p) || !in_range(v) || !residual.contains(p) {
                    return Err(illegal("matching needs p outside A ∪ B"));
                }
                if !self.graph.are_adjacent(p, v) {
                    return Err(illegal("matching vertex v must be a neighbor of p"));
                }
                let live: Vec<usize> = self
                    .graph
                    .adjacency_bits(p)
                    .intersection(&residual)
                    .collect();
                if live != [v] {
                    return Err(illegal("matching needs N(p) \\ (A ∪ B) = {v}"));
                }
                vec![(self.included_child(id, v), EdgeStep::Match { p, v })]
            }
            Step::Split(v) => {
                if !in_range(v) || !residual.contains(v) {
                    return Err(illegal("splitting vertex must lie outside A ∪ B"));
                }
                let mut excluded = node.exclude.clone();
                excluded.insert(v);
                let out = SigmaNode {
                    include: node.include.clone(),
                    exclude: excluded,
                    parent: Some(id),
                    kind: SiteKind::Open,
                    step: None,
                };
                vec![
                    (out, EdgeStep::SplitExcluded { v }),
                    (self.included_child(id, v), EdgeStep::SplitIncluded { v }),
                ]
            }
        };
        let node = &mut self.nodes[id];
        node.step = Some(step);
        if node.kind != SiteKind::Root {
            node.kind = match step {
                Step::Free(_) => SiteKind::FreeSite,
                Step::Match { .. } => SiteKind::MatchingSite,
                Step::Split(_) => SiteKind::SplittingSite,
            };
        }
        let mut ids = Vec::with_capacity(children.len());
        for (mut child, edge) in children {
            if child.kind == SiteKind::Open && residual_vertices(&self.graph, &child).is_clear() {
                child.kind = SiteKind::CriticalLeaf;
            }
            let cid = self.nodes.len();
            self.nodes.push(child);
            self.edges.push(TreeEdge {
                from: id,
                to: cid,
                step: edge,
            });
            ids.push(cid);
        }
        Ok(ids)
    }

    /// Σ(A ∪ {v}, B ∪ N(v)) below node `id`.
    fn included_child(&self, id: NodeId, v: usize) -> SigmaNode {
        let node = &self.nodes[id];
        let mut include = node.include.clone();
        include.insert(v);
        let mut exclude = node.exclude.clone();
        exclude.union_with(self.graph.adjacency_bits(v));
        SigmaNode {
            include,
            exclude,
            parent: Some(id),
            kind: SiteKind::Open,
            step: None,
        }
    }

    /// Leaves in id order.
    pub fn leaves(&self) -> impl Iterator<Item = NodeId> + '_ {
        let mut has_child = vec![false; self.nodes.len()];
        self.edges.iter().for_each(|e| has_child[e.from] = true);
        (0..self.nodes.len()).filter(move |&i| !has_child[i])
    }

    pub fn export(&self) -> TreeExport {
        let names = |bits: &FixedBitSet| -> Vec<String> {
            bits.ones()
                .map(|v| self.graph.label(v).to_string())
                .collect()
        };
        let step_name = |s: EdgeStep| -> String {
            let l = |v: usize| self.graph.label(v);
            match s {
                EdgeStep::Free { p } => format!("free {}", l(p)),
                EdgeStep::Match { p, v } => format!("match {} {}", l(p), l(v)),
                EdgeStep::SplitExcluded { v } => format!("split {} excluded", l(v)),
                EdgeStep::SplitIncluded { v } => format!("split {} kept", l(v)),
            }
        };
        TreeExport {
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, n)| NodeExport {
                    id,
                    include: names(&n.include),
                    exclude: names(&n.exclude),
                    kind: n.kind,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeExport {
                    from: e.from,
                    to: e.to,
                    step: step_name(e.step),
                })
                .collect(),
            critical: critical_cells(self)
                .iter()
                .map(|f| {
                    f.labels(&self.graph)
                        .iter()
                        .map(ToString::to_string)
                        .collect()
                })
                .collect(),
        }
    }
}

/// Grows a matching tree from the root, asking `strategy` for a step at
/// every open leaf until none remain.
pub fn run_strategy(graph: &Graph, strategy: &dyn Strategy) -> Result<MatchingTree> {
    run_strategy_with_budget(graph, strategy, DEFAULT_STEP_BUDGET)
}

pub fn run_strategy_with_budget(
    graph: &Graph,
    strategy: &dyn Strategy,
    budget: usize,
) -> Result<MatchingTree> {
    let mut tree = MatchingTree::new(graph.clone());
    let mut stack = vec![tree.root()];
    let mut steps = 0usize;
    while let Some(id) = stack.pop() {
        if !tree.is_open(id) {
            continue;
        }
        if steps == budget {
            return Err(Error::StepBudget(budget));
        }
        steps += 1;
        let node = tree.node(id);
        let step = strategy
            .choose(&tree.graph, &node.include, &node.exclude)
            .ok_or(Error::StrategyStalled(id))?;
        let children = tree.expand(id, step)?;
        stack.extend(children.into_iter().rev());
    }
    Ok(tree)
}

/// The critical faces: the `A` sets of critical leaves, in node order.
pub fn critical_cells(tree: &MatchingTree) -> Vec<Face> {
    (0..tree.nodes.len())
        .filter(|&i| tree.is_critical(i))
        .map(|i| tree.nodes[i].include_face())
        .collect()
}

/// A set of cover pairs `(σ, σ ∪ {p})` in a face poset, each face used at
/// most once.
#[derive(Clone, Debug, Default)]
pub struct FacePairing {
    pairs: Vec<(Face, Face)>,
    up: HashMap<Face, usize>,
    down: HashMap<Face, usize>,
}

impl FacePairing {
    /// Validates that every pair is a cover relation and no face repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Face, Face)>) -> Result<FacePairing> {
        let mut out = FacePairing::default();
        for (lower, upper) in pairs {
            out.push(lower, upper)?;
        }
        Ok(out)
    }

    fn push(&mut self, lower: Face, upper: Face) -> Result<()> {
        let is_cover =
            upper.len() == lower.len() + 1 && lower.vertices().iter().all(|&v| upper.contains(v));
        if !is_cover {
            return Err(invalid(format!(
                "{:?} -> {:?} is not a cover relation",
                lower.vertices(),
                upper.vertices()
            )));
        }
        for f in [&lower, &upper] {
            if self.up.contains_key(f) || self.down.contains_key(f) {
                return Err(Error::DoublePairing(format!("{:?}", f.vertices())));
            }
        }
        let i = self.pairs.len();
        self.up.insert(lower.clone(), i);
        self.down.insert(upper.clone(), i);
        self.pairs.push((lower, upper));
        Ok(())
    }

    pub fn pairs(&self) -> &[(Face, Face)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// u(σ), when σ is the lower face of a pair.
    pub fn upper_of(&self, lower: &Face) -> Option<&Face> {
        self.up.get(lower).map(|&i| &self.pairs[i].1)
    }

    /// d(τ), when τ is the upper face of a pair.
    pub fn lower_of(&self, upper: &Face) -> Option<&Face> {
        self.down.get(upper).map(|&i| &self.pairs[i].0)
    }

    pub fn is_paired(&self, face: &Face) -> bool {
        self.up.contains_key(face) || self.down.contains_key(face)
    }
}

/// Materializes the pairing recorded at the free and matching sites of a
/// completed tree. Fails if more than `face_cap` faces would be paired or if
/// a face is reached twice.
pub fn collect_pairing(tree: &MatchingTree, face_cap: usize) -> Result<FacePairing> {
    if let Some(open) = (0..tree.nodes.len()).find(|&i| tree.is_open(i)) {
        return Err(invalid(format!(
            "tree is not complete: node {open} is open"
        )));
    }
    let g = &tree.graph;
    let mut pairing = FacePairing::default();
    for node in &tree.nodes {
        let (p, blocked) = match node.step {
            Some(Step::Free(p)) => (p, None),
            Some(Step::Match { p, v }) => (p, Some(v)),
            _ => continue,
        };
        let mut free = residual_vertices(g, node);
        free.set(p, false);
        if let Some(v) = blocked {
            free.set(v, false);
        }
        let base: Vec<u32> = node.include.ones().map(|v| v as u32).collect();
        let mut current = Vec::new();
        let candidates: Vec<u32> = free.ones().map(|v| v as u32).collect();
        let mut emit = |extra: &[u32]| -> Result<()> {
            if 2 * (pairing.len() + 1) > face_cap {
                return Err(Error::Capacity {
                    what: "paired faces",
                    limit: face_cap,
                });
            }
            let lower = Face::new(base.iter().chain(extra).copied().collect());
            let upper = lower.with(p as u32);
            pairing.push(lower, upper)
        };
        for_each_independent(g, &candidates, &mut current, &mut emit)?;
    }
    Ok(pairing)
}

fn for_each_independent(
    g: &Graph,
    candidates: &[u32],
    current: &mut Vec<u32>,
    f: &mut dyn FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    f(current)?;
    for (i, &v) in candidates.iter().enumerate() {
        let bits = g.adjacency_bits(v as usize);
        let next: Vec<u32> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&u| !bits.contains(u as usize))
            .collect();
        current.push(v);
        for_each_independent(g, &next, current, f)?;
        current.pop();
    }
    Ok(())
}

/// Outcome of [`verify_acyclic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Acyclicity {
    pub acyclic: bool,
    /// On failure, the faces of one directed cycle in the modified Hasse
    /// diagram, in traversal order.
    pub witness: Option<Vec<Face>>,
}

impl fmt::Display for Acyclicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "acyclic"),
            Some(w) => write!(f, "cycle through {} faces", w.len()),
        }
    }
}

/// Checks that `pairing` is acyclic on the face poset of `complex`.
///
/// Cover relations are oriented downward, except matched ones which point
/// up; the pairing is acyclic iff this digraph has no directed cycle.
pub fn verify_acyclic(complex: &SimplicialComplex, pairing: &FacePairing) -> Result<Acyclicity> {
    let top = complex.dimension();
    let mut offsets = Vec::new();
    let mut total = 0usize;
    for d in -1..=top {
        offsets.push(total);
        total += complex.faces_of_dim(d).len();
    }
    let id_of = |f: &Face| -> Option<usize> {
        complex
            .index_of(f)
            .map(|i| offsets[(f.dim() + 1) as usize] + i)
    };
    for (lower, upper) in pairing.pairs() {
        if id_of(lower).is_none() || id_of(upper).is_none() {
            return Err(invalid("pairing uses a face outside the complex"));
        }
    }
    let mut faces: Vec<&Face> = Vec::with_capacity(total);
    let mut out: Vec<Vec<u32>> = Vec::with_capacity(total);
    for d in -1..=top {
        for tau in complex.faces_of_dim(d) {
            faces.push(tau);
            let mut edges = Vec::new();
            if let Some(up) = pairing.upper_of(tau) {
                edges.push(id_of(up).expect("checked") as u32);
            }
            let matched_lower = pairing.lower_of(tau);
            for i in 0..tau.len() {
                let sigma = tau.without_position(i);
                if matched_lower != Some(&sigma) {
                    edges.push(id_of(&sigma).expect("complex is closed under subsets") as u32);
                }
            }
            out.push(edges);
        }
    }
    let witness =
        find_cycle(&out).map(|cycle| cycle.into_iter().map(|i| faces[i].clone()).collect());
    Ok(Acyclicity {
        acyclic: witness.is_none(),
        witness,
    })
}

/// Iterative three-color DFS; returns the vertices of one directed cycle.
fn find_cycle(out: &[Vec<u32>]) -> Option<Vec<usize>> {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; out.len()];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for start in 0..out.len() {
        if color[start] != WHITE {
            continue;
        }
        color[start] = GRAY;
        stack.push((start, 0));
        while let Some(&mut (u, ref mut next)) = stack.last_mut() {
            if let Some(&w) = out[u].get(*next) {
                *next += 1;
                let w = w as usize;
                match color[w] {
                    WHITE => {
                        color[w] = GRAY;
                        stack.push((w, 0));
                    }
                    GRAY => {
                        let pos = stack.iter().position(|&(x, _)| x == w).expect("on stack");
                        return Some(stack[pos..].iter().map(|&(x, _)| x).collect());
                    }
                    _ => {}
                }
            } else {
                color[u] = BLACK;
                stack.pop();
            }
        }
    }
    None
}

/// Checks that the paired faces and the critical faces partition the
/// complex exactly. Returns a description of the first discrepancy.
pub fn check_partition(
    complex: &SimplicialComplex,
    pairing: &FacePairing,
    critical: &[Face],
) -> std::result::Result<(), String> {
    let mut seen: HashSet<&Face> = HashSet::with_capacity(complex.face_count());
    for (lower, upper) in pairing.pairs() {
        for f in [lower, upper] {
            if !complex.contains(f) {
                return Err(format!(
                    "paired face {:?} is not in the complex",
                    f.vertices()
                ));
            }
            if !seen.insert(f) {
                return Err(format!("face {:?} covered twice", f.vertices()));
            }
        }
    }
    for f in critical {
        if !complex.contains(f) {
            return Err(format!(
                "critical face {:?} is not in the complex",
                f.vertices()
            ));
        }
        if !seen.insert(f) {
            return Err(format!("critical face {:?} is also paired", f.vertices()));
        }
    }
    if seen.len() != complex.face_count() {
        return Err(format!(
            "{} faces covered, complex has {}",
            seen.len(),
            complex.face_count()
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{independence_complex, DEFAULT_FACE_CAP};
    use crate::graphs::{cycle, path, VertexLabel::*};

    fn set(g: &Graph, ids: &[u32]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(g.vertex_count());
        ids.iter().for_each(|&i| b.insert(i as usize - 1));
        b
    }

    fn node(g: &Graph, a: &[u32], b: &[u32]) -> SigmaNode {
        SigmaNode {
            include: set(g, a),
            exclude: set(g, b),
            parent: None,
            kind: SiteKind::Open,
            step: None,
        }
    }

    fn f(ids: &[u32]) -> Face {
        Face::new(ids.iter().map(|i| i - 1).collect())
    }

    #[test]
    fn residual_and_sigma_count_on_c4() {
        let g = cycle(4).unwrap();
        let root = node(&g, &[], &[]);
        assert_eq!(residual_vertices(&g, &root).count_ones(..), 4);
        assert_eq!(sigma_count(&g, &root), 7);
        let n = node(&g, &[1], &[2, 4]);
        assert_eq!(
            residual_vertices(&g, &n).ones().collect::<Vec<_>>(),
            vec![2]
        );
        assert_eq!(sigma_count(&g, &n), 2);
        let done = node(&g, &[1, 3], &[2, 4]);
        assert_eq!(sigma_count(&g, &done), 1);
    }

    #[test]
    fn split_then_free_on_c4() {
        let g = cycle(4).unwrap();
        let mut t = MatchingTree::new(g.clone());
        let kids = t.expand(0, Step::Split(0)).unwrap();
        assert_eq!(t.node(kids[0]).include_face(), Face::empty());
        assert_eq!(t.node(kids[0]).exclude, set(&g, &[1]));
        assert_eq!(t.node(kids[1]).include_face(), f(&[1]));
        assert_eq!(t.node(kids[1]).exclude, set(&g, &[2, 4]));
        t.expand(kids[1], Step::Free(2)).unwrap();
        assert_eq!(t.node(kids[1]).kind(), SiteKind::FreeSite);
        t.expand(kids[0], Step::Match { p: 1, v: 2 }).unwrap();
        let pairing = collect_pairing(&t, DEFAULT_FACE_CAP).unwrap();
        assert_eq!(pairing.upper_of(&f(&[1])), Some(&f(&[1, 3])));
        assert_eq!(pairing.len(), 3);
        assert_eq!(critical_cells(&t), vec![f(&[3])]);
        let c = independence_complex(&g, DEFAULT_FACE_CAP).unwrap();
        check_partition(&c, &pairing, &critical_cells(&t)).unwrap();
    }

    #[test]
    fn match_on_path_three() {
        let g = path(3).unwrap();
        let mut t = MatchingTree::new(g.clone());
        let kids = t.expand(0, Step::Match { p: 0, v: 1 }).unwrap();
        assert_eq!(kids.len(), 1);
        assert_eq!(t.node(kids[0]).include_face(), f(&[2]));
        assert_eq!(t.node(kids[0]).exclude, set(&g, &[1, 3]));
        assert_eq!(t.node(kids[0]).kind(), SiteKind::CriticalLeaf);
        let pairing = collect_pairing(&t, DEFAULT_FACE_CAP).unwrap();
        let mut pairs = pairing.pairs().to_vec();
        pairs.sort();
        assert_eq!(pairs, vec![(f(&[]), f(&[1])), (f(&[3]), f(&[1, 3]))]);
    }

    #[test]
    fn illegal_steps_are_named() {
        let g = cycle(4).unwrap();
        let mut t = MatchingTree::new(g.clone());
        let err = t.expand(0, Step::Free(0)).unwrap_err();
        assert!(err.to_string().contains("N(p) \\ (A ∪ B) = ∅"), "{err}");
        let err = t.expand(0, Step::Match { p: 0, v: 1 }).unwrap_err();
        assert!(err.to_string().contains("= {v}"), "{err}");
        let err = t.expand(0, Step::Match { p: 0, v: 2 }).unwrap_err();
        assert!(err.to_string().contains("neighbor of p"), "{err}");
        let kids = t.expand(0, Step::Split(0)).unwrap();
        let err = t.expand(kids[1], Step::Split(1)).unwrap_err();
        assert!(err.to_string().contains("outside A ∪ B"), "{err}");
        let err = t.expand(0, Step::Split(2)).unwrap_err();
        assert!(err.to_string().contains("open leaf"), "{err}");
    }

    #[test]
    fn single_vertex_is_collapsible() {
        let g = crate::graphs::delta(2, -1).unwrap();
        let t = run_strategy(&g, &GreedyStrategy).unwrap();
        assert!(critical_cells(&t).is_empty());
        let pairing = collect_pairing(&t, DEFAULT_FACE_CAP).unwrap();
        assert_eq!(pairing.pairs(), &[(Face::empty(), Face::new(vec![0]))]);
        assert_eq!(g.label(0), EndA);
    }

    #[test]
    fn empty_graph_has_critical_empty_face() {
        let g = Graph::edgeless(0);
        let t = run_strategy(&g, &GreedyStrategy).unwrap();
        assert_eq!(critical_cells(&t), vec![Face::empty()]);
    }

    #[test]
    fn empty_pairing_is_acyclic() {
        let c = independence_complex(&cycle(5).unwrap(), DEFAULT_FACE_CAP).unwrap();
        let r = verify_acyclic(&c, &FacePairing::default()).unwrap();
        assert!(r.acyclic);
        assert!(r.witness.is_none());
    }

    #[test]
    fn cyclic_pairing_on_the_square_is_detected() {
        // Ind of two disjoint edges {1,3}, {2,4} is the boundary of the square 1-2-3-4.
        let g = Graph::new(
            "custom",
            vec![],
            (1..=4).map(Plain),
            [(Plain(1), Plain(3)), (Plain(2), Plain(4))],
        )
        .unwrap();
        let c = independence_complex(&g, DEFAULT_FACE_CAP).unwrap();
        assert_eq!(c.f_vector().0, vec![1, 4, 4]);
        let pairing = FacePairing::from_pairs([
            (f(&[1]), f(&[1, 2])),
            (f(&[2]), f(&[2, 3])),
            (f(&[3]), f(&[3, 4])),
            (f(&[4]), f(&[1, 4])),
        ])
        .unwrap();
        let r = verify_acyclic(&c, &pairing).unwrap();
        assert!(!r.acyclic);
        let w = r.witness.unwrap();
        assert_eq!(w.len(), 8);
        assert_eq!(w.iter().filter(|f| f.len() == 2).count(), 4);
    }

    #[test]
    fn pairing_rejects_non_covers_and_repeats() {
        assert!(FacePairing::from_pairs([(f(&[]), f(&[1, 2]))]).is_err());
        let err =
            FacePairing::from_pairs([(f(&[1]), f(&[1, 2])), (f(&[2]), f(&[1, 2]))]).unwrap_err();
        assert!(matches!(err, Error::DoublePairing(_)));
    }

    #[test]
    fn stalled_strategy_and_budget() {
        let g = cycle(5).unwrap();
        let never = |_: &Graph, _: &FixedBitSet, _: &FixedBitSet| None;
        assert!(matches!(
            run_strategy(&g, &never),
            Err(Error::StrategyStalled(0))
        ));
        assert!(matches!(
            run_strategy_with_budget(&g, &GreedyStrategy, 1),
            Err(Error::StepBudget(1))
        ));
    }
}
