//! Experiment engine: complexity curves, exponent fits, reference oracles
//! and bound sweeps.

pub mod bounds;
pub mod curve;
pub mod fit;
pub mod oracle;

pub use bounds::{verify_bounds, BoundsCell, BoundsOptions, BoundsReport, CellStatus};
pub use curve::{run_curve, ComplexityCurve, CurveCell, CurveTemplate, Timing, CSV_HEADER};
pub use fit::{estimate_sum_exponent, fit_spt_exponent, SptFit};
pub use oracle::{brute_force_head, brute_force_spectrum, certified_box, split_at, BOX_LIMIT};
