//! Numerical laboratory for time-frequency concentration experiments.
//!
//! The crate computes Wigner, tau-Wigner, ambiguity and Born-Jordan
//! distributions of discrete signals, evaluates `L^p` concentration
//! functionals on phase-space domains, approximates concentration optimizers
//! by projected gradient ascent, and drives the scripted experiments exposed
//! through the `phaselab` command line tool.

pub mod concentration;
pub mod error;
pub mod fft;
pub mod grid;
pub mod io;
pub mod numeric;
pub mod optimize;
pub mod phase_space;
pub mod scenario;
pub mod signal;

pub use error::{PhaseLabError, Result};
pub use grid::{Grid1D, PhasePoint};
pub use signal::Signal;
