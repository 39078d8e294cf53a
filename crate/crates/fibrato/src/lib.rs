//! Exact computations with the structure data of genus-2 and genus-3
//! fibrations of algebraic surfaces: bundles on the projective line and on
//! elliptic curves, torsion cokernels, surface invariants, and the rank
//! stratification of the p_g = q = 1, K^2 = 3 moduli.

pub mod checks;
pub mod ellbundles;
pub mod exactalg;
pub mod genus2;
pub mod genus3;
pub mod moduli;
pub mod p1bundles;
pub mod parallel;
