//! Constant-residue logarithmic connections `d + sum A_i dl_i / l_i` on a `(1,1)` cone:
//! the residue conditions, their solution space, and exact flatness and torsion checks.

mod io;
mod poly;
mod residue;

pub use io::{
    parse_connection_file, sample_connection, small_rational, verify_connection_file, ConnectionFile,
    ConnectionSampleReport, ConnectionVerifyReport, LabeledFlatness, SampledSystem,
};
pub use poly::{BivariatePoly, MatrixPoly, VectorPoly};
pub use residue::{
    build_three_line, cone_alpha, mat_add, mat_mul, mat_scalar, mat_sub, mat_trace, mat_vec, mat_zero,
    normalize_three_line, solve_residues, verify_flat_torsion, FlatnessReport, Matrix2, OriginLine, ResidueSolution,
    ResidueSystem,
};
