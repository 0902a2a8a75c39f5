//! Runs the comb pivot script and compares its critical cells with the
//! census recursion.

use gridmorse::census::CensusTable;
use gridmorse::comb::{census_from_tree, comb_strategy, tooth_breakdown};
use gridmorse::graphs::delta;
use gridmorse::morse::run_strategy;

fn main() -> gridmorse::Result<()> {
    let m = 3;
    let table = CensusTable::new(m, 8)?;
    for n in 0..=8 {
        let tree = run_strategy(&delta(m, n)?, &comb_strategy(m, n)?)?;
        let from_tree = census_from_tree(&tree);
        let from_table = table.census_at(n as usize)?;
        let same = from_tree == from_table;
        println!(
            "Δ^{m}_{n}: {:?} {}",
            from_tree.counts,
            if same { "ok" } else { "MISMATCH" }
        );
    }

    let tree = run_strategy(&delta(2, 4)?, &comb_strategy(2, 4)?)?;
    println!("\nΔ^2_4 by first included tooth:");
    for (tooth, census) in tooth_breakdown(&tree) {
        let label = tooth.map_or("none".to_string(), |k| format!("c{k}"));
        println!("  {label:>4}: {:?}", census.counts);
    }

    let mut csv = Vec::new();
    CensusTable::new(2, 6)?.write_csv(&mut csv)?;
    print!("\n{}", String::from_utf8_lossy(&csv));
    Ok(())
}
