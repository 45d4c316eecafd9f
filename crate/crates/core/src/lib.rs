//! Exact quantum Schubert calculus for flag varieties and Grassmannians of
//! classical type.
//!
//! - [`rootsystem`]: Cartan data for `A_n`, `B_n`, `C_n`, `D_n`.
//! - [`weyl`]: signed-permutation Weyl group elements and parabolic cosets.
//! - [`qhb`]: quantum products and Gromov-Witten invariants of `G/B`.
//! - [`qhp`]: Grassmannians `G/P` via the Peterson-Woodward lift.
//! - [`pieri`]: quantum Pieri rules for the tautological classes.
//! - [`shapes`]: pairs of strict partitions labelling type B/C Schubert classes.
//! - [`cli`]: the `qpieri` command surface.

pub mod cli;
pub mod coeff;
pub mod error;
pub mod qhb;
pub mod qhp;
pub mod pieri;
pub mod shapes;
pub mod rootsystem;
pub mod weyl;

pub use error::{Error, Result};
pub use rootsystem::{CurveDegree, LieType, Root, RootSystem};
pub use weyl::{ParabolicData, WeylElement};
pub use qhb::{QClass, QuantumEngine, Truncation};
pub use coeff::Coeff;
pub use qhp::{Grassmannian, GrassmannianDesc, PWLift, TClass};
