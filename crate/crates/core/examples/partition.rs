//! Three-part partitions A, B, W with mu(A) = 1/2 minimising |E(A,B)| + K n^beta |W|.

use hypercube_iso::appendix::{ball_partition, separation_lower_bound_check};
use hypercube_iso::cube::Dimension;
use hypercube_iso::search::{min_partition_functional, Label};

fn main() -> hypercube_iso::error::Result<()> {
    for n in 1..=4 {
        let opt = min_partition_functional(Dimension::new(n)?, 0.53, 1.0)?;
        println!(
            "n={n}: min {:.4} (2^(n-1) = {}), cross edges {}, |W| = {}, A = {}",
            opt.min_value,
            1u32 << (n - 1),
            opt.cross_edges,
            opt.w_size,
            opt.witness.part(Label::A)
        );
    }
    // Ball partition: A is the Hamming ball of radius (n-1)/2, W is the next sphere.
    for n in [5, 7, 9] {
        let p = ball_partition(Dimension::new(n)?)?;
        let c = separation_lower_bound_check(&p, 0.53, 1.0)?;
        println!("ball partition n={n}: |E(A,B)| = {}, |W| = {}, margin {:.3}", c.cross_edges, c.w_size, c.margin);
    }
    Ok(())
}
