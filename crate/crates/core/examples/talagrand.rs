//! ||Df||_p exactly and by Monte Carlo for majority.

use hypercube_iso::cube::Dimension;
use hypercube_iso::fourier::{corpus, talagrand_df_norm, TalagrandMode};

fn main() -> hypercube_iso::error::Result<()> {
    for n in [3, 5, 7, 9, 11] {
        let f = corpus::majority(Dimension::new(n)?)?;
        let exact = talagrand_df_norm(&f, 1.0, TalagrandMode::Exact)?;
        let mc = talagrand_df_norm(&f, 1.0, TalagrandMode::MonteCarlo { samples: 20_000, seed: 7 })?;
        println!(
            "Maj{n:<2} exact {:.5}  sampled {:.5} +- {:.5}",
            exact.value, mc.value, mc.standard_error
        );
    }
    Ok(())
}
