//! Constructive SU(2)/SU(3) representation theory in the Fock-Bargmann space:
//! Euler charts and Haar quadrature for the classical groups, Gel'fand
//! pattern combinatorics, exact Wigner 3j/Clebsch-Gordan symbols, the SU(3)
//! basis with its quantum numbers, SU(3) D-matrices, and invariant-polynomial
//! 3j symbols and isoscalar factors — all validated against independent exact
//! or numerical oracles.

pub mod exact;
pub mod gelfand;
pub mod linalg;
pub mod poly;

pub use exact::{Rational, RadicalScalar};
pub use linalg::CMatrix;
pub use poly::{BargmannPoly, ComplexPoly, ExactPoly, Monomial, VariableSpace};
