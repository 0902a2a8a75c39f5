//! Euler characteristics three ways, the Riordan array and the dimension
//! window of the critical cells.

use gridmorse::census::{
    dimension_bounds, euler_closed_form, euler_from_table, euler_recursion, riordan_identity_check,
    riordan_t, CensusTable,
};

fn main() -> gridmorse::Result<()> {
    for m in 2..=5 {
        let table = CensusTable::new(m, 15)?;
        let mut history = Vec::new();
        let mut line = Vec::new();
        for n in 0..=15 {
            let e = euler_recursion(m, n, &history)?;
            assert_eq!(e, euler_from_table(&table, n as usize));
            assert_eq!(e, euler_closed_form(m, n as usize)?);
            line.push(e.to_string());
            history.push(e);
        }
        println!("m={m}: χ̃ = {}", line.join(" "));
    }

    println!("\nT(j, k):");
    for j in 0..=6 {
        let row: Vec<String> = (0..=j).map(|k| riordan_t(j, k).to_string()).collect();
        println!("  {}", row.join(" "));
    }
    let check = riordan_identity_check(30);
    println!("identities up to n=30 hold: {}", check.holds());

    println!("\nm=4 dimension window:");
    let table = CensusTable::new(4, 10)?;
    for n in 0..=10 {
        let b = dimension_bounds(4, n)?;
        let seen: Vec<i64> = table
            .census_at(n as usize)?
            .counts
            .keys()
            .copied()
            .collect();
        println!("  n={n}: [{}, {}] cells in {:?}", b.d_min, b.d_max, seen);
    }
    Ok(())
}
