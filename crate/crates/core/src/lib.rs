//! Fractional-order difference maps.
//!
//! This crate simulates the fractional-order discrete system
//!
//! ```text
//! x(t+1) = x(0) + sum_{j=0}^{t} k_{t-j} * (f(x(j)) - x(j)),
//! k_m = Gamma(m + alpha) / (Gamma(alpha) * Gamma(m + 1)),  0 < alpha <= 1,
//! ```
//!
//! computes the exact stability region of the two-periodic linear map
//! (f = a*x at even times, b*x at odd times) in the (a, b)-plane, and finds
//! and classifies asymptotic period-2 limit cycles of nonlinear maps.
//!
//! Modules:
//! * [`kernel`] — the memory weights k_m and their summation identities,
//! * [`maps`] — builtin map families and parsed expressions with exact
//!   derivatives,
//! * [`simulator`] — direct and even/odd-split iteration, orbit detection,
//! * [`region`] — boundary curves, the assembled stable region, membership,
//!   the characteristic function, and a simulation oracle,
//! * [`cycles`] — cycle conditions, closed forms, Newton solving, loci, and
//!   parameter windows.

pub mod cycles;
pub mod kernel;
pub mod maps;
pub mod region;
pub mod simulator;

pub use kernel::{FractionalOrder, KernelError, KernelTable};
pub use maps::{DualValue, MapSpec, Parity};
pub use region::StabilityRegion;
pub use simulator::{SplitTrajectory, Trajectory};

/// Formats a float with 17 significant digits, enough for a lossless
/// binary64 round-trip; used by every CSV writer so outputs are byte-stable.
pub fn write_f64(x: f64) -> String {
    format!("{x:.16e}")
}
