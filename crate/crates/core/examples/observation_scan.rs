//! Scans the m = 2 census for the n where the middle count fails to exceed
//! its neighbours at δ = ⌊(9n+9)/13⌋.

use gridmorse::census::observation_scan;

fn main() {
    let scan = observation_scan(120);
    for row in scan.rows.iter().filter(|r| r.n % 10 == 0) {
        println!("n={:>3} δ={:>3} holds={}", row.n, row.delta, row.holds);
    }
    println!("exceptions up to {}: {:?}", scan.n_max, scan.exceptions);
}
