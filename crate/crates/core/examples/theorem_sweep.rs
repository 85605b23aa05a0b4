//! Every subset of Q_n against the set-level inequalities.

use hypercube_iso::certificates::{beta0, sweep_theorem, Theorem};
use hypercube_iso::cube::Dimension;

fn main() -> hypercube_iso::error::Result<()> {
    let theorems = [
        Theorem::Classical,
        Theorem::Logarithmic,
        Theorem::LogarithmicPower { beta: 0.8 },
        Theorem::VertexBoundary,
        Theorem::Quadratic { beta: beta0() },
        Theorem::Cubic,
        Theorem::LargeMeasure,
        Theorem::TwoSidedHalf { beta: 0.53 },
    ];
    let n = Dimension::new(4)?;
    for t in theorems {
        let s = sweep_theorem(n, t)?;
        let tight = s.argmin.as_ref().map(|a| a.to_string()).unwrap_or_default();
        println!(
            "{:<28} sets {:>6}  min margin {:>12}  tightest {tight}",
            t.to_string(),
            s.sets_checked,
            s.min_margin.map(|m| format!("{m:.3e}")).unwrap_or("-".into())
        );
        assert!(s.passed);
    }
    Ok(())
}
