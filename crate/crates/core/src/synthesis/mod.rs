//! Fixed-structure controller synthesis: branch-and-prune search, exact
//! constant-controller ranges, δ thresholds and properization.

mod properize;
mod range;
mod search;
mod template;
mod threshold;

pub use properize::{hurwitz_augment_exists, properize, Properized};
pub use range::{constant_controller_range, exact_range_deg0, Bound, RealSet, Segment};
pub use search::{feasibility_search, SearchOutcome, SearchStatus};
pub use template::{ControllerTemplate, ParamBox, SearchConfig, SplitStrategy};
pub use threshold::{delta_threshold, delta_threshold_in, Probe, ThresholdBracket};
