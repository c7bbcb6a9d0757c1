//! Inter-layer message routing: schedules, the subgroup index table, Beneš
//! networks and a decoder that moves data only through them.

pub mod benes;
pub mod index;
pub mod perm;
pub mod physical;
pub mod route;
pub mod schedule;

pub use benes::{stage_count, switch_count, switch_count_formula, BenesNetwork};
pub use index::{build_index_matrix, derive_index_matrix, IndexMatrix};
pub use perm::VnuPermutation;
pub use physical::ShuffledDecoder;
pub use route::{
    route_schedule, unified_class1_via_benes, Fabric, RoutingReport, TransitionRoute, UnifiedRoute,
};
pub use schedule::{
    check_alignment, class1_static_wiring, class1_wrap_passes, schedule_class1, schedule_class2,
    Misalignment, SlotPlan,
};
