//! Pivot scripts for paths, extended stars, theta graphs and combs, and the
//! critical-cell census they produce.
//!
//! A script only looks at the node's live vertices (outside `A ∪ N(A) ∪ B`)
//! and at which of its own vertices went into `A`. Scripts name vertices by
//! label, so the same script value runs unchanged inside a larger graph as
//! long as the labels exist there.
//!
//! The comb schedule on Δ^m_n splits the spine vertices 1, 2, … in order.
//! Along the all-excluded branch the residual is the theta graph Ŷ^m_{n+1}.
//! At the tooth where spine `k` is kept, the residual falls apart into a star
//! Y^m_{k-1} around `a` and a smaller comb Δ^m_{n-k-1} starting at spine
//! `k + 1`; the star is consumed first, then the comb.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graphs::{Graph, VertexLabel};
use crate::morse::{critical_cells, residual_set, MatchingTree, Step, Strategy};

type Label = VertexLabel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyScript {
    /// Decide one vertex: free it if it has no live neighbor, match along
    /// its only live neighbor, otherwise split it.
    Vertex(Label),
    /// A path listed from a leaf; the first live vertex is decided next, as
    /// for [`StrategyScript::Vertex`].
    Path(Vec<Label>),
    /// A star: each tendril is listed from the center outward.
    Star {
        center: Label,
        tendrils: Vec<Vec<Label>>,
    },
    /// A theta graph: each path lists its inner vertices from `a` to `b`.
    Theta {
        a: Label,
        b: Label,
        paths: Vec<Vec<Label>>,
    },
    /// A comb: `tendrils[j]` lists the `spine.len() + 1` tendril vertices
    /// from `a` to `b`; spine vertex `k` sits between tendril positions `k`
    /// and `k + 1`.
    Comb {
        a: Label,
        spine: Vec<Label>,
        b: Label,
        tendrils: Vec<Vec<Label>>,
    },
    /// Runs the parts in order; a part is done once all its vertices are decided.
    Sequence(Vec<StrategyScript>),
}

impl Strategy for StrategyScript {
    fn choose(&self, graph: &Graph, include: &FixedBitSet, exclude: &FixedBitSet) -> Option<Step> {
        let ctx = Ctx {
            g: graph,
            live: residual_set(graph, include, exclude),
            include,
        };
        self.next_step(&ctx)
    }
}

struct Ctx<'a> {
    g: &'a Graph,
    live: FixedBitSet,
    include: &'a FixedBitSet,
}

impl Ctx<'_> {
    fn id(&self, l: Label) -> Option<usize> {
        self.g.index_of(l)
    }

    fn is_live(&self, l: Label) -> bool {
        self.id(l).is_some_and(|v| self.live.contains(v))
    }

    fn is_kept(&self, l: Label) -> bool {
        self.id(l).is_some_and(|v| self.include.contains(v))
    }

    /// Free, match or split `l` depending on its live neighbors.
    fn decide(&self, l: Label) -> Option<Step> {
        let p = self.id(l)?;
        let mut nbrs = self.g.adjacency_bits(p).intersection(&self.live);
        Some(match (nbrs.next(), nbrs.next()) {
            (None, _) => Step::Free(p),
            (Some(v), None) => Step::Match { p, v },
            _ => Step::Split(p),
        })
    }

    fn path<'l>(&self, mut order: impl Iterator<Item = &'l Label>) -> Option<Step> {
        order
            .find(|&&l| self.is_live(l))
            .and_then(|&l| self.decide(l))
    }

    fn star(&self, center: Label, tendrils: &[&[Label]]) -> Option<Step> {
        if self.is_live(center) {
            if tendrils.iter().all(|t| t.len() % 3 == 0) {
                // Contractible: eat each tendril from its leaf, then free the center.
                return tendrils
                    .iter()
                    .find_map(|t| self.path(t.iter().rev()))
                    .or_else(|| self.decide(center));
            }
            return self.decide_split(center);
        }
        let skip = usize::from(self.is_kept(center));
        tendrils
            .iter()
            .find_map(|t| self.path(t.iter().skip(skip).rev()))
    }

    fn decide_split(&self, l: Label) -> Option<Step> {
        self.id(l).map(Step::Split)
    }

    fn theta(&self, a: Label, b: Label, paths: &[&[Label]]) -> Option<Step> {
        if self.is_live(b) {
            return self.decide_split(b);
        }
        if self.is_kept(b) {
            let trimmed: Vec<&[Label]> = paths
                .iter()
                .map(|p| &p[..p.len().saturating_sub(1)])
                .collect();
            self.star(a, &trimmed)
        } else {
            self.star(a, paths)
        }
    }

    fn comb(&self, a: Label, spine: &[Label], b: Label, tendrils: &[&[Label]]) -> Option<Step> {
        for (i, &s) in spine.iter().enumerate() {
            if self.is_live(s) {
                return self.decide_split(s);
            }
            if self.is_kept(s) {
                // Tooth at spine k = i + 1: star Y^m_{k-1} around a, then the rest.
                let star: Vec<&[Label]> = tendrils.iter().map(|t| &t[..i]).collect();
                return self.star(a, &star).or_else(|| {
                    if i + 1 == spine.len() {
                        self.path(std::iter::once(&b))
                    } else {
                        let rest: Vec<&[Label]> = tendrils.iter().map(|t| &t[i + 2..]).collect();
                        self.comb(spine[i + 1], &spine[i + 2..], b, &rest)
                    }
                });
            }
        }
        self.theta(a, b, tendrils)
    }
}

fn slices(v: &[Vec<Label>]) -> Vec<&[Label]> {
    v.iter().map(Vec::as_slice).collect()
}

impl StrategyScript {
    fn next_step(&self, ctx: &Ctx<'_>) -> Option<Step> {
        match self {
            StrategyScript::Vertex(l) => ctx.path(std::iter::once(l)),
            StrategyScript::Path(order) => ctx.path(order.iter()),
            StrategyScript::Star { center, tendrils } => ctx.star(*center, &slices(tendrils)),
            StrategyScript::Theta { a, b, paths } => ctx.theta(*a, *b, &slices(paths)),
            StrategyScript::Comb {
                a,
                spine,
                b,
                tendrils,
            } => ctx.comb(*a, spine, *b, &slices(tendrils)),
            StrategyScript::Sequence(parts) => parts.iter().find_map(|p| p.next_step(ctx)),
        }
    }
}

fn tendrils(m: u32, ks: std::ops::RangeInclusive<u32>) -> Vec<Vec<Label>> {
    (1..=m)
        .map(|j| ks.clone().map(|k| Label::Tendril(j, k)).collect())
        .collect()
}

/// The path `v1 - … - vn`, consumed from `v1`.
pub fn path_strategy(n: u32) -> Result<StrategyScript> {
    if n < 1 {
        return Err(invalid("path needs n >= 1"));
    }
    Ok(StrategyScript::Path((1..=n).map(Label::Plain).collect()))
}

/// Y^m_n: a contractible tendril chain when `n ≡ 0 (mod 3)`, otherwise a
/// split at the center followed by path scripts.
pub fn star_strategy(m: u32, n: u32) -> Result<StrategyScript> {
    if m < 1 || n < 1 {
        return Err(invalid("star needs m >= 1 and n >= 1"));
    }
    Ok(StrategyScript::Star {
        center: Label::EndA,
        tendrils: tendrils(m, 1..=n),
    })
}

/// Ŷ^m_n: split at `b`, then the star script on Y^m_{n-1} or Y^m_n.
pub fn theta_strategy(m: u32, n: u32) -> Result<StrategyScript> {
    if m < 2 || n < 1 {
        return Err(invalid("theta needs m >= 2 and n >= 1"));
    }
    Ok(StrategyScript::Theta {
        a: Label::EndA,
        b: Label::EndB,
        paths: tendrils(m, 1..=n),
    })
}

/// Δ^m_n for `n >= -1`; `n = 0` runs as Ŷ^m_1 and `n = -1` frees the lone vertex.
pub fn comb_strategy(m: u32, n: i64) -> Result<StrategyScript> {
    if m < 2 {
        return Err(invalid("comb needs m >= 2"));
    }
    if n < -1 {
        return Err(invalid(format!("comb needs n >= -1, got {n}")));
    }
    if n == -1 {
        return Ok(StrategyScript::Vertex(Label::EndA));
    }
    let n = u32::try_from(n).map_err(|_| invalid("comb n too large"))?;
    Ok(StrategyScript::Comb {
        a: Label::EndA,
        spine: (1..=n).map(Label::Spine).collect(),
        b: Label::EndB,
        tendrils: tendrils(m, 1..=n + 1),
    })
}

/// Number of critical cells per dimension. The matched base point is not
/// counted, so the dimension-0 entry is already the reduced count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CriticalCensus {
    pub m: u32,
    pub n: i64,
    #[serde(rename = "census")]
    pub counts: BTreeMap<i64, u64>,
}

impl CriticalCensus {
    pub fn new(m: u32, n: i64) -> CriticalCensus {
        CriticalCensus {
            m,
            n,
            counts: BTreeMap::new(),
        }
    }

    pub fn get(&self, d: i64) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Σ (-1)^d C^d.
    pub fn euler(&self) -> i64 {
        self.counts
            .iter()
            .map(|(&d, &c)| {
                if d.rem_euclid(2) == 0 {
                    c as i64
                } else {
                    -(c as i64)
                }
            })
            .sum()
    }

    /// CSV rows `m,n,d,count` in increasing `d`.
    pub fn csv_rows(&self) -> Vec<[String; 4]> {
        self.counts
            .iter()
            .map(|(d, c)| {
                [
                    self.m.to_string(),
                    self.n.to_string(),
                    d.to_string(),
                    c.to_string(),
                ]
            })
            .collect()
    }

    fn add(&mut self, d: i64) {
        *self.counts.entry(d).or_insert(0) += 1;
    }
}

fn tree_params(tree: &MatchingTree) -> (u32, i64) {
    match *tree.graph().params() {
        [m, n] => (m as u32, n),
        [n] => (0, n),
        _ => (0, 0),
    }
}

/// Dimension histogram of the critical leaves of a completed tree.
///
/// `m` and `n` are taken from the graph's family parameters.
pub fn census_from_tree(tree: &MatchingTree) -> CriticalCensus {
    let (m, n) = tree_params(tree);
    let mut census = CriticalCensus::new(m, n);
    for face in critical_cells(tree) {
        census.add(face.dim());
    }
    census
}

/// Splits the census of a comb tree by tooth: the smallest spine index in the
/// critical face, or `None` for cells from the all-excluded spine branch.
pub fn tooth_breakdown(tree: &MatchingTree) -> BTreeMap<Option<u32>, CriticalCensus> {
    let (m, n) = tree_params(tree);
    let mut out: BTreeMap<Option<u32>, CriticalCensus> = BTreeMap::new();
    for face in critical_cells(tree) {
        let tooth = face.labels(tree.graph()).into_iter().find_map(|l| match l {
            Label::Spine(k) => Some(k),
            _ => None,
        });
        out.entry(tooth)
            .or_insert_with(|| CriticalCensus::new(m, n))
            .add(face.dim());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, delta, path, star, theta};
    use crate::morse::{run_strategy, GreedyStrategy};

    fn census_of(g: &Graph, s: &StrategyScript) -> BTreeMap<i64, u64> {
        census_from_tree(&run_strategy(g, s).unwrap()).counts
    }

    fn hist(pairs: &[(i64, u64)]) -> BTreeMap<i64, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn paths_follow_mod_three_pattern() {
        for k in 1..=4u32 {
            let g = path(3 * k).unwrap();
            assert_eq!(
                census_of(&g, &path_strategy(3 * k).unwrap()),
                hist(&[(k as i64 - 1, 1)])
            );
            let g = path(3 * k + 1).unwrap();
            assert!(census_of(&g, &path_strategy(3 * k + 1).unwrap()).is_empty());
            let g = path(3 * k + 2).unwrap();
            assert_eq!(
                census_of(&g, &path_strategy(3 * k + 2).unwrap()),
                hist(&[(k as i64, 1)])
            );
        }
        assert_eq!(
            census_of(&path(1).unwrap(), &path_strategy(1).unwrap()),
            hist(&[])
        );
        assert_eq!(
            census_of(&path(2).unwrap(), &path_strategy(2).unwrap()),
            hist(&[(0, 1)])
        );
    }

    #[test]
    fn star_examples() {
        assert!(census_of(&star(3, 3).unwrap(), &star_strategy(3, 3).unwrap()).is_empty());
        assert_eq!(
            census_of(&star(3, 4).unwrap(), &star_strategy(3, 4).unwrap()),
            hist(&[(3, 1)])
        );
        assert_eq!(
            census_of(&star(2, 2).unwrap(), &star_strategy(2, 2).unwrap()),
            hist(&[(1, 1)])
        );
    }

    #[test]
    fn theta_examples() {
        let c6 = census_of(&theta(2, 2).unwrap(), &theta_strategy(2, 2).unwrap());
        assert_eq!(c6, hist(&[(1, 2)]));
        assert_eq!(
            census_of(&theta(2, 1).unwrap(), &theta_strategy(2, 1).unwrap()),
            hist(&[(0, 1)])
        );
        assert_eq!(
            census_of(&theta(3, 3).unwrap(), &theta_strategy(3, 3).unwrap()),
            hist(&[(3, 1)])
        );
    }

    #[test]
    fn theta_script_on_plain_cycle_labels_stalls() {
        // Labels must exist in the graph; a cycle uses v1..vn.
        let g = cycle(6).unwrap();
        assert!(run_strategy(&g, &theta_strategy(2, 2).unwrap()).is_err());
    }

    #[test]
    fn comb_small_cases() {
        let run = |m, n| census_of(&delta(m, n).unwrap(), &comb_strategy(m, n).unwrap());
        assert_eq!(run(2, -1), hist(&[]));
        assert_eq!(run(2, 0), hist(&[(0, 1)]));
        assert_eq!(run(2, 1), hist(&[(1, 2)]));
        assert_eq!(run(2, 2), hist(&[(2, 1)]));
        assert_eq!(run(2, 3), hist(&[(2, 2)]));
        assert_eq!(run(2, 4), hist(&[(3, 5)]));
        assert_eq!(run(3, 3), hist(&[(2, 1), (3, 1)]));
        assert_eq!(run(4, 1), hist(&[(1, 1), (3, 1)]));
    }

    #[test]
    fn comb_tooth_breakdown_for_delta_2_4() {
        let tree = run_strategy(&delta(2, 4).unwrap(), &comb_strategy(2, 4).unwrap()).unwrap();
        let by_tooth: BTreeMap<Option<u32>, u64> = tooth_breakdown(&tree)
            .into_iter()
            .map(|(k, c)| (k, c.total()))
            .collect();
        assert_eq!(
            by_tooth,
            [(None, 2), (Some(2), 2), (Some(3), 1)]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn teeth_at_one_mod_three_and_last_spine_are_empty() {
        for n in 1..=7 {
            let tree = run_strategy(&delta(2, n).unwrap(), &comb_strategy(2, n).unwrap()).unwrap();
            for tooth in tooth_breakdown(&tree).keys().flatten() {
                assert_ne!(tooth % 3, 1, "n = {n}");
                assert_ne!(*tooth as i64, n, "n = {n}");
            }
        }
    }

    #[test]
    fn greedy_and_comb_agree_on_euler() {
        for n in 0..=4 {
            let g = delta(3, n).unwrap();
            let comb = census_from_tree(&run_strategy(&g, &comb_strategy(3, n).unwrap()).unwrap());
            let greedy = census_from_tree(&run_strategy(&g, &GreedyStrategy).unwrap());
            assert_eq!(comb.euler(), greedy.euler(), "n = {n}");
        }
    }

    #[test]
    fn census_helpers() {
        let mut c = CriticalCensus::new(2, 1);
        c.add(1);
        c.add(1);
        assert_eq!(c.get(1), 2);
        assert_eq!(c.get(0), 0);
        assert_eq!(c.euler(), -2);
        assert_eq!(c.csv_rows(), vec![["2", "1", "1", "2"].map(String::from)]);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"m":2,"n":1,"census":{"1":2}}"#);
    }

    #[test]
    fn constructors_reject_degenerate_parameters() {
        assert!(path_strategy(0).is_err());
        assert!(star_strategy(0, 2).is_err());
        assert!(theta_strategy(1, 2).is_err());
        assert!(comb_strategy(1, 2).is_err());
        assert!(comb_strategy(2, -2).is_err());
    }
}
