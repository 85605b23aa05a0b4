//! Grid certificates of the two-point inequality for the candidate bounds.

use hypercube_iso::certificates::{beta0, certify_grid, CandidateBound, Region};

fn main() -> hypercube_iso::error::Result<()> {
    let b0 = beta0();
    let runs = [
        (CandidateBound::log_quadratic_max(), b0, Region::FullTriangle),
        (CandidateBound::parse("optimal_quadratic", 0.5)?, 0.5, Region::LinearBranch),
        (CandidateBound::parse("optimal_quadratic", 0.5)?, 0.5, Region::PowerBranch),
        (CandidateBound::parse("half_cubic", 0.53)?, 0.53, Region::LinearBranch),
        (CandidateBound::parse("half_cubic", 0.53)?, 0.53, Region::PowerBranch),
        // Too large near t = 1/2: the grid finds the violation.
        (CandidateBound::Quadratic { c: 2.0 }, 0.5, Region::FullTriangle),
    ];
    for (bound, beta, region) in runs {
        let r = certify_grid(&bound, beta, 1024, region)?;
        println!(
            "{:<28} beta={beta:.4} {:<14} min margin {:+.3e} at ({:.4}, {:.4})  {}",
            bound.to_string(),
            region.to_string(),
            r.min_margin,
            r.argmin.0,
            r.argmin.1,
            if r.passed { "ok" } else { "VIOLATED" }
        );
    }
    Ok(())
}
