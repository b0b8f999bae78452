//! Two-particle spin and polarization density matrices built from
//! second-order correlation functions, for a free Fermi gas and for a
//! Hong-Ou-Mandel interferometer, under ideal and Gaussian ("fuzzy")
//! detectors — together with entanglement measures and independent
//! brute-force oracles for every closed form.

pub mod boson;
mod error;
pub mod fermi;
pub mod oracle;
pub mod qmat;
pub mod specfun;

pub use error::Error;
