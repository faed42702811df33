//! Counts lattice points in the triangle bounded by y = pⁿ, y = τx and
//! y = pⁿ − (slope gap)·x, and recovers a^r(X_n) from that count.

use anum::delta::TowerParams;
use anum::lattice::{triangle_identity, triangle_lattice_count, Budget, TriangleSpec};

fn main() -> anum::Result<()> {
    let t = TowerParams::new(5, 4, 2)?;
    let budget = Budget::default();
    for n in 1..=4 {
        let spec = TriangleSpec::new(&t, n);
        let [a, b, c] = &spec.vertices;
        let points = triangle_lattice_count(&spec, &budget)?;
        let id = triangle_identity(&t, n, &budget)?;
        println!("n={n} vertices ({}, {}) ({}, {}) ({}, {})", a.0, a.1, b.0, b.1, c.0, c.1);
        println!(
            "    points {points}, minus top edge {}, plus correction {} = {} (direct count {})",
            id.top_edge, id.correction, id.from_triangle, id.a_number
        );
    }
    Ok(())
}
