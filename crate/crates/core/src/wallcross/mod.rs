//! Machine checks of the wall-crossing identities between the quasimap side
//! (closed I-function formulas) and the stable-map side (graph sums).

mod identities;
mod point;
mod properties;
mod report;

pub use identities::{
    genus1_shift, genus1_shift_from, mirror_transform_j, verify_i0_lemma, verify_i_equals_j,
    verify_truncation_consistency, verify_v_s, Genus1Shift,
};
pub use point::{point_wallcross_check, point_wallcross_range};
pub use properties::{verify_property, Property};
pub use report::{Cell, Status, VerificationReport};
