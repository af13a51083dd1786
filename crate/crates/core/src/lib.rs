//! Exact tools for the matrix Yang–Baxter-type equation AXA = XAX.
//!
//! Everything is computed over exact fields (Q, GF(p), quadratic
//! extensions of Q). The crate provides residual and structural checks,
//! explicit solution families, Sylvester-equation solving for block
//! coefficient matrices, Gröbner bases of the polynomial system, and a
//! brute-force enumeration oracle over small prime fields.

pub mod commutant;
pub mod error;
pub mod families;
pub mod field;
pub mod groebner;
pub mod io;
pub mod jordan;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod spectral;
pub mod sylvester;
pub mod ybe;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use jordan::{JordanBlock, JordanSpec};
pub use matrix::Matrix;
pub use poly::UniPoly;
