//! Exhaustive and symmetry-reduced minimisation of E h^beta, with the on-disk cache.

use hypercube_iso::cache::{min_moment_cached, SearchCache};
use hypercube_iso::certificates::beta0;
use hypercube_iso::cube::{Dimension, Side};
use hypercube_iso::search::{min_moment, Method, SearchConfig};

fn main() -> hypercube_iso::error::Result<()> {
    let cfg = SearchConfig::default();
    let b0 = beta0();
    for n in 2..=4 {
        let dim = Dimension::new(n)?;
        for k in 0..=n {
            let m = 1u64 << (n - k);
            let r = min_moment(dim, m, b0, Side::OneSidedH, Method::Exhaustive, &cfg)?;
            println!(
                "n={n} m={m:>2}  min E h^b0 = {:.6}  (k^b0/2^k = {:.6})  {} minimisers, subcube: {}",
                r.min_value,
                (k as f64).powf(b0) / 2f64.powi(k as i32),
                r.witnesses.len(),
                r.witness_is_subcube
            );
        }
    }

    let r = min_moment(Dimension::new(5)?, 16, 0.53, Side::TwoSidedW, Method::SymmetryReduced, &cfg)?;
    println!("n=5 half measure, min E w^0.53 = {:.6} after {} canonicity tests", r.min_value, r.sets_examined);

    let dir = std::env::temp_dir().join("hypercube-iso-example-cache");
    let cache = SearchCache::in_dir(&dir);
    let (first, hit) = min_moment_cached(&cache, Dimension::new(4)?, 6, 0.5, Side::OneSidedH, Method::Exhaustive, &cfg)?;
    let (again, hit_again) =
        min_moment_cached(&cache, Dimension::new(4)?, 6, 0.5, Side::OneSidedH, Method::Exhaustive, &cfg)?;
    assert_eq!(first, again);
    println!("cache at {}: hits {hit} then {hit_again}", cache.path().display());
    Ok(())
}
