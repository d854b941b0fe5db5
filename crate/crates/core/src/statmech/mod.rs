//! Statistical mechanics of the log-dispersion gas: partition functions,
//! thermodynamics, thermal Green's functions, oscillator partition function
//! and multiplicative state counting.

mod factorize;
mod oscillator;
mod partition;

pub use factorize::{count_factorizations, DEFAULT_LIMIT as DEFAULT_FACTOR_LIMIT, count_factorizations_with_limit, FactorMode, FactorizationReport};
pub use oscillator::{log_oscillator_z, oscillator_period};
pub use partition::{
    grand_log_z, one_particle_z, thermal_green, thermodynamics, thermodynamics_with_fugacity, SumMethod,
    Statistics, ThermoState,
};
