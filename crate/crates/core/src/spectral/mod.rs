//! The exactly solvable superintegrable system: closed-form spectrum and
//! eigenfunctions, and an independent finite-volume eigensolver.

mod casimir;
mod hyp;
mod radial;
mod solver;

pub use casimir::{casimir_check, CasimirForm, CasimirReport};
pub use hyp::{hyp2f1, hyp2f1_expr, polynomial_coefficients};
pub use radial::{
    closed_form_energy, eigenfunction_closed, eigenfunction_expr, radial_operator, radial_residual, RadialResidual,
};
pub use solver::{
    rmax_sweep, solve_radial_numeric, Eigenvalue, GridInfo, RadialProblem, RmaxSweep, SpectrumResult, SweepRun,
};
