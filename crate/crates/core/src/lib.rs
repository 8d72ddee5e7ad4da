//! Exact verification and synthesis of simultaneously stabilizing
//! controllers for finite sets of SISO plants.
//!
//! All certificates are decided in exact rational arithmetic. Floating point
//! appears only in interval pruning (with outward rounding) and in numeric
//! diagnostics.

pub mod algebra;
pub mod champagne;
pub mod error;
pub mod feedback;
pub mod numeric;
pub mod parallel;
pub mod problem;
pub mod proof;
pub mod stability;
pub mod synthesis;

pub use algebra::{Domain, Interval, IntervalPoly, Poly, Rational, TransferFunction};
pub use champagne::{
    bilinear_plant, example_catalog, gcp_plants, verdict, GcpInstance, PaperExample, Variant,
};
pub use error::{Error, Result};
pub use feedback::{
    closed_loop_char_poly, simultaneously_stabilizes, stabilizes, Certificate, PlantCertificate,
    PlantSet,
};
pub use problem::ProblemFile;
pub use proof::{
    construct_controller, extremal_series, to_continuous, ProofController, ProofSynthConfig,
    SeriesPoly,
};
pub use stability::{
    hurwitz_minors, interval_hurwitz, is_hurwitz, is_schur, is_unit, lemma3_sufficient,
    IntervalProof, StabilityStatus, StabilityVerdict, Witness,
};
pub use synthesis::{
    constant_controller_range, delta_threshold, exact_range_deg0, feasibility_search, properize,
    ControllerTemplate, ParamBox, RealSet, SearchConfig, SearchOutcome, SearchStatus,
    ThresholdBracket,
};
