//! Chern-number relations on weighted arrangements, the Bogomolov-Gieseker quantity,
//! the exact weight-space solver, the pencil criterion and limit cusps.

mod bg;
mod curves_io;
mod cusp;
mod pencil;
pub mod simplex;
mod solve;
mod system;
mod verify;

pub use bg::{bg_doubles_as_singular, bg_value, double_point_convention_gap, uniform_bg_closed_form, BgReport};
pub use curves_io::{
    parse_curve_file, search_branch_kinds, BData, CurveFile, KindAssignment, PairCount, SurfaceData,
    MAX_KIND_ASSIGNMENTS,
};
pub use cusp::{classify_limit_cusp, CuspReport, LimitCuspReport, PropertyFailure};
pub use pencil::{pencil_criterion, PencilLineReport, PencilObstruction, PencilReport};
pub use solve::{solve_quadratic, solve_weights, BgZeroReport, QuadraticForm, Root, SolveOptions, WeightSolveReport};
pub use system::{Branch, BranchKind, CurveData, Mode, SingularPointData, SurfaceKind, WeightedSystem};
pub use verify::{alpha_of_point, verify_relations, CheckReport, Classification, ConstraintFlags, Named, PairResidual};
