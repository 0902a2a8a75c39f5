//! Smith normal form and reduced integral homology, compared against the
//! critical-cell counts.

use gridmorse::comb::{census_from_tree, comb_strategy};
use gridmorse::complexes::independence_complex;
use gridmorse::graphs::delta;
use gridmorse::homology::{morse_inequality_check, reduced_homology, smith_normal_form};
use gridmorse::morse::run_strategy;
use gridmorse::IntegerMatrix;

fn main() -> gridmorse::Result<()> {
    let a = IntegerMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&a)?;
    println!(
        "SNF: rank {}, invariant factors {:?}",
        snf.rank, snf.invariant_factors
    );

    for (m, n) in [(2, 3), (2, 5), (3, 3), (4, 3)] {
        let g = delta(m, n)?;
        let report = reduced_homology(&independence_complex(&g, 1 << 20)?)?;
        let census = census_from_tree(&run_strategy(&g, &comb_strategy(m, n)?)?);
        println!(
            "Ind(Δ^{m}_{n}): betti {:?}, torsion {}, cells {:?}, Morse bounds hold: {}",
            report.betti_profile(),
            report.has_torsion(),
            census.counts,
            morse_inequality_check(&census, &report)
        );
    }
    Ok(())
}
