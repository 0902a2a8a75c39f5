//! Grows a matching tree by hand on a 5-cycle, then lets a strategy finish
//! the job on a comb and checks the induced pairing.

use gridmorse::complexes::independence_complex;
use gridmorse::graphs::{cycle, delta};
use gridmorse::morse::{
    check_partition, collect_pairing, critical_cells, run_strategy, verify_acyclic, GreedyStrategy,
    MatchingTree, Step,
};

fn main() -> gridmorse::Result<()> {
    let g = cycle(5)?;
    let mut tree = MatchingTree::new(g.clone());
    let v1 = g.vertex("v1".parse()?)?;
    let kids = tree.expand(tree.root(), Step::Split(v1))?;
    println!("split v1 -> nodes {kids:?}");
    for id in kids {
        let node = tree.node(id);
        println!(
            "  node {id}: A = {}, {:?}",
            node.include_face().display(&g),
            node.kind()
        );
    }

    let g = delta(3, 2)?;
    let tree = run_strategy(&g, &GreedyStrategy)?;
    let complex = independence_complex(&g, 1 << 16)?;
    let pairing = collect_pairing(&tree, 1 << 16)?;
    let critical = critical_cells(&tree);
    println!(
        "\nΔ^3_2: {} faces, {} pairs, {} critical",
        complex.face_count(),
        pairing.len(),
        critical.len()
    );
    for f in &critical {
        println!("  critical {}", f.display(&g));
    }
    check_partition(&complex, &pairing, &critical)
        .expect("pairs and critical cells cover every face once");
    println!("acyclic: {}", verify_acyclic(&complex, &pairing)?.acyclic);
    Ok(())
}
