pub mod cli;
pub mod error;
pub mod exactla;
pub mod graphs;
pub mod normalcone;
pub mod spectra;
pub mod strictcompl;
pub mod vertices;

pub use error::Error;
