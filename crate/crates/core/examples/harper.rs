//! Minimum edge boundary for every cardinality, next to the extremal initial segment.

use hypercube_iso::cube::{edge_boundary_size, Dimension};
use hypercube_iso::harper::{harper_set, harper_table};

fn main() -> hypercube_iso::error::Result<()> {
    let n = Dimension::new(4)?;
    println!("{:>3} {:>6} {:>8}  set", "m", "|dA|", "|dA|/2^n");
    for row in harper_table(n) {
        let set = harper_set(n, row.m)?;
        assert_eq!(edge_boundary_size(&set), row.numerator);
        println!("{:>3} {:>6} {:>8.4}  {}", row.m, row.numerator, row.value, set);
    }
    Ok(())
}
