//! Pressure, multifractal spectra and level-1 rate functions for observables
//! that only see the open/close pattern.

mod perron;
mod pressure;
mod rate;

pub use perron::{Matrix, Perron, PowerIteration};
pub use pressure::{
    default_c0, Gamma, PressureCurve, PressurePoint, SpectrumPoint, Thermo, U_MARGIN,
};
pub use rate::{
    linear_grid, rate_alpha_closed, rate_beta_closed, rate_closed_form_indicator, Branch,
    LevelRate, RateCurve, RateFunction, RatePoint, RateStatus,
};
