//! Spectra, level weights and gradient bounds for the function corpus.

use hypercube_iso::cube::Dimension;
use hypercube_iso::fourier::{fbound_ratio, spectral_stats, CorpusFunction};

fn main() -> hypercube_iso::error::Result<()> {
    let corpus = ["dictator", "parity", "majority", "tribes:2", "tribes:3", "half_cube", "hamming_ball:2"];
    for name in corpus {
        let which: CorpusFunction = name.parse()?;
        let n = if name.starts_with("tribes") { 6 } else { 5 };
        let f = which.build(Dimension::new(n)?)?;
        let s = spectral_stats(&f);
        let weights: Vec<String> = s.level_weights.iter().map(|w| format!("{w:.3}")).collect();
        // Defined for +-1 valued functions only.
        let ratio = match fbound_ratio(&f, 1.0) {
            Ok(r) => r.ratio.map(|r| format!("{r:.4}")).unwrap_or("-".into()),
            Err(_) => "-".into(),
        };
        println!("{name:<15} n={n} Var {:.4}  W {:.4}  levels [{}]  fbound {ratio}", s.variance, s.w, weights.join(" "));
    }
    Ok(())
}
