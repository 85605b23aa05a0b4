//! Heat semigroup identity, hypercontractive ratio and noise sensitivity.

use hypercube_iso::cube::Dimension;
use hypercube_iso::fourier::{check_semigroup_identity, noise_stability_suite, CorpusFunction};

fn main() -> hypercube_iso::error::Result<()> {
    let n = Dimension::new(5)?;
    for name in ["dictator", "majority", "parity", "half_cube:2"] {
        let f = name.parse::<CorpusFunction>()?.build(n)?;
        for t in [0.1, 0.5, 2.0] {
            let identity = check_semigroup_identity(&f, t)?;
            let r = noise_stability_suite(&f, 1.0, 2.0, t, Some(2))?;
            println!(
                "{name:<11} t={t:<4} identity err {identity:.1e}  hc ratio {:.4}  NS {:.4}  tail(d=2) {:.4}",
                r.hypercontractive_ratio,
                r.noise_sensitivity.as_ref().map(|s| s.value).unwrap_or(f64::NAN),
                r.tail_check.as_ref().map(|c| c.deviation_norm).unwrap_or(f64::NAN),
            );
        }
    }
    Ok(())
}
