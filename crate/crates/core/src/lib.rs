pub mod bitmask;
pub mod appendix;
pub mod cache;
pub mod certificates;
pub mod cube;
pub mod error;
pub mod fourier;
pub mod harper;
pub mod numeric;
pub mod qsqrt2;
pub mod runner;
pub mod search;
pub mod symmetry;
