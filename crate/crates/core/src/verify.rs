//! The desk-scale cross-check suite behind `mg verify`.
//!
//! For one m and every n up to a bound it compares the comb-tree census with
//! the recursion table, checks that the tree's pairing partitions the face
//! poset and is acyclic, and holds exact homology against both censuses.
//! Table-only identities (Euler routes, support bounds, Riordan array, low
//! homology) are checked once per run. Each check reports pass, fail or skip.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::{
    dimension_bounds, euler_closed_form, euler_from_table, euler_recursion,
    low_homology_prediction, riordan_identity_check, CensusTable,
};
use crate::comb::{census_from_tree, comb_strategy};
use crate::complexes::{independence_complex, matching_complex};
use crate::error::{Error, Result};
use crate::graphs::{delta, delta2_isomorphism, gamma};
use crate::homology::{
    boundary_matrices, morse_inequality_violations, reduced_homology_with_cap, smith_normal_form,
    IntegerMatrix,
};
use crate::morse::{
    check_partition, collect_pairing, critical_cells, run_strategy, verify_acyclic,
};

/// The n for which Ind(Δ^2_n) is expected to be a wedge of spheres, hence torsion-free.
pub const WEDGE_NS: [i64; 9] = [0, 1, 2, 3, 4, 5, 7, 8, 11];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl CheckOutcome {
    fn new(
        name: impl Into<String>,
        failures: Vec<String>,
        ok_detail: impl Into<String>,
    ) -> CheckOutcome {
        let (status, detail) = if failures.is_empty() {
            (Status::Pass, ok_detail.into())
        } else {
            (Status::Fail, failures.join("; "))
        };
        CheckOutcome {
            name: name.into(),
            status,
            detail,
        }
    }

    fn skip(name: impl Into<String>, reason: impl Into<String>) -> CheckOutcome {
        CheckOutcome {
            name: name.into(),
            status: Status::Skip,
            detail: reason.into(),
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    pub failures: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub m: u32,
    pub n_max: i64,
    /// Largest face poset materialized for pairing and acyclicity checks.
    pub face_cap: usize,
    /// Largest complex handed to the homology computation.
    pub homology_cap: usize,
    /// Seed for the Smith-form stability check.
    pub seed: u64,
}

/// Runs every check for `cfg.m` and `0 ≤ n ≤ cfg.n_max`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let n_max = usize::try_from(cfg.n_max)
        .map_err(|_| Error::InvalidParameter("n_max must be >= 0".into()))?;
    let table = CensusTable::new(cfg.m, n_max.max(4))?;
    let per_n: Vec<Vec<CheckOutcome>> = (0..=cfg.n_max)
        .into_par_iter()
        .map(|n| instance_checks(cfg, &table, n))
        .collect::<Result<_>>()?;
    let mut checks: Vec<CheckOutcome> = per_n.into_iter().flatten().collect();
    checks.push(euler_check(cfg.m, n_max.max(40))?);
    checks.push(bounds_check(cfg.m, n_max.max(4))?);
    if cfg.m == 2 {
        checks.push(riordan_check(n_max.max(10)));
        checks.push(isomorphism_check(cfg.n_max, cfg.face_cap)?);
    }
    if cfg.m >= 4 {
        checks.push(low_homology_table_check(cfg.m, n_max.max(4))?);
    }
    checks.push(snf_stability_check(cfg)?);
    let failures: Vec<String> = checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.name.clone())
        .collect();
    Ok(SuiteReport {
        passed: failures.is_empty(),
        checks,
        failures,
    })
}

fn instance_checks(cfg: &SuiteConfig, table: &CensusTable, n: i64) -> Result<Vec<CheckOutcome>> {
    let m = cfg.m;
    let tag = |what: &str| format!("{what} m={m} n={n}");
    let g = delta(m, n)?;
    let tree = run_strategy(&g, &comb_strategy(m, n)?)?;
    let tree_census = census_from_tree(&tree);
    let table_census = table.census_at(n as usize)?;
    let mut out = vec![CheckOutcome::new(
        tag("oracle"),
        if tree_census.counts == table_census.counts {
            vec![]
        } else {
            vec![format!(
                "tree {:?} vs table {:?}",
                tree_census.counts, table_census.counts
            )]
        },
        format!("census {:?}", tree_census.counts),
    )];

    let complex = match independence_complex(&g, cfg.face_cap) {
        Ok(c) => c,
        Err(Error::Capacity { limit, .. }) => {
            out.push(CheckOutcome::skip(
                tag("pairing"),
                format!("more than {limit} faces"),
            ));
            out.push(CheckOutcome::skip(
                tag("homology"),
                format!("more than {limit} faces"),
            ));
            return Ok(out);
        }
        Err(e) => return Err(e),
    };

    let pairing = collect_pairing(&tree, cfg.face_cap)?;
    let critical = critical_cells(&tree);
    let mut problems = Vec::new();
    if let Err(e) = check_partition(&complex, &pairing, &critical) {
        problems.push(e);
    }
    let acyclic = verify_acyclic(&complex, &pairing)?;
    if !acyclic.acyclic {
        problems.push(format!("pairing is not acyclic: {acyclic}"));
    }
    if tree_census.euler() != complex.reduced_euler() {
        problems.push(format!(
            "critical alternating sum {} vs reduced Euler characteristic {}",
            tree_census.euler(),
            complex.reduced_euler()
        ));
    }
    out.push(CheckOutcome::new(
        tag("pairing"),
        problems,
        format!(
            "{} pairs, {} critical, acyclic",
            pairing.len(),
            critical.len()
        ),
    ));

    if complex.face_count() > cfg.homology_cap {
        out.push(CheckOutcome::skip(
            tag("homology"),
            format!(
                "{} faces over the homology cap of {}",
                complex.face_count(),
                cfg.homology_cap
            ),
        ));
        return Ok(out);
    }
    let report = reduced_homology_with_cap(&complex, cfg.homology_cap)?;
    let mut problems: Vec<String> = morse_inequality_violations(&tree_census, &report)
        .into_iter()
        .map(|p| format!("tree: {p}"))
        .chain(
            morse_inequality_violations(&table_census, &report)
                .into_iter()
                .map(|p| format!("table: {p}")),
        )
        .collect();
    if report.betti_euler() != report.euler {
        problems.push("Betti alternating sum differs from Euler characteristic".into());
    }
    if m == 2 && WEDGE_NS.contains(&n) && report.has_torsion() {
        problems.push(format!("unexpected torsion {:?}", report.dims));
    }
    if m >= 4 {
        let p = low_homology_prediction(m, n)?;
        if report.betti(p.dimension) != u64::from(p.rank) {
            problems.push(format!(
                "rank {} at dimension {}, predicted {}",
                report.betti(p.dimension),
                p.dimension,
                p.rank
            ));
        }
    }
    out.push(CheckOutcome::new(
        tag("homology"),
        problems,
        format!("betti {:?}", report.betti_profile()),
    ));
    Ok(out)
}

fn euler_check(m: u32, n_max: usize) -> Result<CheckOutcome> {
    let table = CensusTable::new(m, n_max)?;
    let history: Vec<_> = (0..=n_max).map(|n| euler_from_table(&table, n)).collect();
    let mut problems = Vec::new();
    for (n, chi) in history.iter().enumerate() {
        let rec = euler_recursion(m, n as i64, &history)?;
        let closed = euler_closed_form(m, n)?;
        if &rec != chi || &closed != chi {
            problems.push(format!(
                "n={n}: table {chi}, recursion {rec}, closed form {closed}"
            ));
        }
    }
    Ok(CheckOutcome::new(
        format!("euler m={m} n<={n_max}"),
        problems,
        "table, recursion and closed form agree",
    ))
}

fn bounds_check(m: u32, n_max: usize) -> Result<CheckOutcome> {
    let table = CensusTable::new(m, n_max)?;
    let mut problems = Vec::new();
    for n in 0..=n_max as i64 {
        let b = dimension_bounds(m, n)?;
        let support: Vec<i64> = (0..)
            .zip(table.row(n as usize))
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, _)| d)
            .collect();
        if let Some(d) = support.iter().find(|&&d| d < b.d_min || d > b.d_max) {
            problems.push(format!(
                "n={n}: C^{d} nonzero outside [{}, {}]",
                b.d_min, b.d_max
            ));
        }
        if n >= 4 && (table.get(n, b.d_min).is_zero() || table.get(n, b.d_max).is_zero()) {
            problems.push(format!(
                "n={n}: bound not attained ({}, {})",
                b.d_min, b.d_max
            ));
        }
    }
    Ok(CheckOutcome::new(
        format!("bounds m={m} n<={n_max}"),
        problems,
        "support within bounds, endpoints attained",
    ))
}

fn riordan_check(n_max: usize) -> CheckOutcome {
    let r = riordan_identity_check(n_max);
    CheckOutcome::new(
        format!("riordan n<={n_max}"),
        r.failures,
        "forward, reduced and inverse identities hold",
    )
}

fn low_homology_table_check(m: u32, n_max: usize) -> Result<CheckOutcome> {
    let table = CensusTable::new(m, n_max)?;
    let mut problems = Vec::new();
    for n in (0..=n_max as i64).filter(|n| n % 3 != 2) {
        let d = low_homology_prediction(m, n)?.dimension;
        let (c0, c1) = (table.get(n, d), table.get(n, d + 1));
        if c0.to_u64() != Some(1) || !c1.is_zero() {
            problems.push(format!("n={n}: C^{d} = {c0}, C^{} = {c1}", d + 1));
        }
    }
    Ok(CheckOutcome::new(
        format!("low-homology census m={m} n<={n_max}"),
        problems,
        "one cell at d_n and none at d_n + 1",
    ))
}

fn isomorphism_check(n_max: i64, face_cap: usize) -> Result<CheckOutcome> {
    let mut problems = Vec::new();
    for n in 1..=n_max.max(1) as u32 {
        delta2_isomorphism(n)?;
        let lhs = matching_complex(&gamma(n)?, face_cap);
        let rhs = independence_complex(&delta(2, n as i64)?, face_cap);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a.f_vector() != b.f_vector() => problems.push(format!(
                "n={n}: f-vectors {:?} vs {:?}",
                a.f_vector(),
                b.f_vector()
            )),
            (Ok(_), Ok(_))
            | (Err(Error::Capacity { .. }), _)
            | (_, Err(Error::Capacity { .. })) => {}
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
    Ok(CheckOutcome::new(
        format!("grid isomorphism n<={}", n_max.max(1)),
        problems,
        "Δ^2_n ≅ L(Γ_n) verified, f-vectors agree",
    ))
}

/// Smith form of ∂ matrices of Ind(Δ^m_1) before and after random
/// unimodular row and column operations.
fn snf_stability_check(cfg: &SuiteConfig) -> Result<CheckOutcome> {
    let c = independence_complex(&delta(cfg.m, 1)?, cfg.face_cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut problems = Vec::new();
    for (d, m) in boundary_matrices(&c).iter().enumerate() {
        let mixed = unimodular_mix(m, &mut rng, 24);
        let (a, b) = (smith_normal_form(m)?, smith_normal_form(&mixed)?);
        if a != b {
            problems.push(format!(
                "∂_{d}: {:?} vs {:?}",
                a.invariant_factors, b.invariant_factors
            ));
        }
    }
    Ok(CheckOutcome::new(
        format!("snf stability m={} seed={}", cfg.m, cfg.seed),
        problems,
        "invariant factors unchanged",
    ))
}

/// Applies `ops` random elementary operations `row_i += ±row_j` or
/// `col_i += ±col_j`.
pub fn unimodular_mix(m: &IntegerMatrix, rng: &mut impl Rng, ops: usize) -> IntegerMatrix {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows(), m.cols());
    for _ in 0..ops {
        let q = if rng.gen_bool(0.5) { 1 } else { -1 };
        if rng.gen_bool(0.5) && rows > 1 {
            let (i, j) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
            if i != j {
                let src = a[j].clone();
                for (x, y) in a[i].iter_mut().zip(&src) {
                    *x += q * y;
                }
            }
        } else if cols > 1 {
            let (i, j) = (rng.gen_range(0..cols), rng.gen_range(0..cols));
            if i != j {
                for row in a.iter_mut() {
                    row[i] += q * row[j];
                }
            }
        }
    }
    IntegerMatrix::from_dense(&a)
}
