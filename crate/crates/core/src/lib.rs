//! Stability and Hopf bifurcation analysis of the Watt centrifugal governor.
//!
//! The dimensionless governor
//!
//! ```text
//! x' = y
//! y' = z² sin x cos x − sin x − ε y
//! z' = T(x) − β
//! ```
//!
//! has a single equilibrium `P₀ = (arccos β, 0, β^{-1/2})` for `β ∈ (0, 1)`. It is
//! asymptotically stable for `ε > ε_c` and loses stability through a Hopf
//! bifurcation at `ε = ε_c`; the sign of the first Lyapunov coefficient decides
//! whether the cycle born there is stable or unstable.

pub mod cli;
pub mod error;
pub mod hopf;
pub mod linalg3;
pub mod model;
pub mod sim;
pub mod stability;

pub use error::{Error, Result};
pub use hopf::{analyze, classify_region, HopfReport, Region};
pub use model::{Model, State, TorqueJet};
pub use sim::{detect_cycle, integrate, CycleEstimate, CycleSettings, TimeDirection, Trajectory};
pub use stability::{classify_dimensionless, epsilon_critical, Stability, Verdict};
