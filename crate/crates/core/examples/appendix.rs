//! Moments of the Hamming ball of radius n/2 decay for small beta, and ball partitions.

use hypercube_iso::appendix::{ball_partition_counts, ball_partition_ratios, decay_table};

fn main() -> hypercube_iso::error::Result<()> {
    let table = decay_table(0.4, 24)?;
    for row in &table.rows {
        println!("n={:>2}  |S| = {:>8}  E h^0.4 = {:.6}", row.n, row.sphere_size, row.value);
    }
    println!("decreasing from n = {:?}", table.decreasing_from);

    for n in [11, 17, 25] {
        let c = ball_partition_counts(n)?;
        println!("n={n}: |A| = {}, |W| = {}, mu(A) = 1/2: {}", c.a_size, c.w_size, c.half_measure);
    }
    for row in ball_partition_ratios(0.2, 1.0, 31)?.iter().step_by(4) {
        println!("beta=0.2 n={:>2}: functional / 2^(n-1) = {:.4}", row.n, row.ratio);
    }
    Ok(())
}
