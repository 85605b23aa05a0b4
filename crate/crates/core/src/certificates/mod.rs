//! Candidate bound functions, the two-point condition on grids, set-level
//! inequalities and exact checks of the polynomial facts behind them.

pub mod bounds;
pub mod constants;
pub mod grid;

pub use bounds::{eval_bound, CandidateBound};
pub use constants::{beta0, c_beta, gamma, reference_constants, ConstantsTable, CUBIC_BETA};
pub use grid::{certify_grid, sami_margin, Branch, CertificateReport, Region};
pub mod theorems;

pub use theorems::{sweep_theorem, verify_theorem_on_set, Theorem, TheoremSweep};
pub mod polynomials;

pub use polynomials::{proof_polynomials_report, PolynomialCheck, PolynomialReport};
