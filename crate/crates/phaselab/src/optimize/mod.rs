//! Numerical approximation of concentration optimizers.

mod ascent;
mod families;
mod gradient;
mod localization;

pub use ascent::{maximize, AscentConfig, AscentReport, StepPolicy};
pub use families::{
    bj_linfty_family, linfty_optimizer, tau_linfty_family, BjFamilyReport, LinftyResult,
    TauFamilyReport,
};
pub use gradient::{gradient, objective_power};
pub use localization::{localization_baseline, LocalizationBaseline};
