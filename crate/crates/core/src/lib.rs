//! Exact computations for the rank-one lattice vertex operator algebra `V_L`
//! (`L = Z alpha`, `<alpha, alpha> = 2k`), its fixed-point subalgebra `V_L^+` under
//! the lift of `-1`, their twisted modules, explicit intertwining operators, Zhu
//! top-level actions and the fusion rules of `V_L^+`.

pub mod cli;
pub mod error;
pub mod fock;
pub mod fusion;
pub mod intertwiners;
pub mod label;
pub mod scalar;
pub mod twisted;
pub mod untwisted;
pub mod verify;
pub mod zhu;

pub use error::{Error, Result};
pub use label::{M1Label, ModuleLabel, Sign};
pub use scalar::{Scalar, Q};
