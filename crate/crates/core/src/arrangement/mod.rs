//! Projective lines over a number field, their exact intersection lattice,
//! the double-point matrix and the combinatorial checks built on it.

mod checks;
mod geometry;
mod io;
mod lattice;

pub use checks::{b_matrix, hirzebruch_check, symmetric_check, BMatrix, HirzebruchReport, SymmetricReport};
pub use geometry::{are_proportional, intersect_lines, line_through, normalize_line, ProjLine, ProjPoint};
pub use io::{json_error, parse_arrangement, parse_weights, Arrangement, ArrangementFile};
pub use lattice::{build_lattice, IncidenceLattice, LatticePoint};

impl Arrangement {
    pub fn lattice(&self) -> crate::Result<IncidenceLattice> {
        build_lattice(&self.field, &self.lines)
    }
}
