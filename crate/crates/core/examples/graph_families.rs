//! Builds each graph family and checks the line-graph identification of
//! the m = 2 comb with the grid.

use gridmorse::graphs::{cycle, delta, delta2_isomorphism, gamma, line_graph, path, star, theta};

fn main() -> gridmorse::Result<()> {
    for (name, g) in [
        ("path 5", path(5)?),
        ("cycle 6", cycle(6)?),
        ("star Y^3_2", star(3, 2)?),
        ("theta Ŷ^3_2", theta(3, 2)?),
        ("comb Δ^3_2", delta(3, 2)?),
    ] {
        println!(
            "{name:>12}: {} vertices, {} edges",
            g.vertex_count(),
            g.edge_count()
        );
    }

    let g = delta(2, 3)?;
    println!("\nΔ^2_3 edges:");
    for (u, v) in g.edges() {
        println!("  {} - {}", g.label(u), g.label(v));
    }

    let l = line_graph(&gamma(3)?);
    println!(
        "\nL(Γ_3): {} vertices, {} edges",
        l.vertex_count(),
        l.edge_count()
    );
    for (comb, grid_edge) in delta2_isomorphism(3)? {
        println!("  {comb} ↦ {grid_edge}");
    }
    Ok(())
}
