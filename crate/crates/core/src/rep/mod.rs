//! Truncated representations, exact positivity of univariate polynomials and the numerical hypothesis checks.
mod checks;
mod comm;
mod hypothesis;
mod resolvent;
mod sturm;
mod truncated;

pub use checks::{min_eig_check, weyl_relation_smoke, MinEigReport, RepReport, STABILIZATION};
pub use comm::{finite_rep_split_and_pi_rho, TorsionSplit};
pub use hypothesis::{
    edge_data, hypothesis_ii_check, torsion_spectral_check, EdgeData, Hyp2Outcome, TorsionReport, TorsionWhich,
    TORSION_POINTS, TORSION_QMAX,
};
pub use resolvent::{resolvent_integrability_check, ResolventReport, GRID_TOL, SCALAR_TOL};
pub use sturm::{count_real_roots, global_minimum, isolate_real_roots, sturm_positive, sturm_sequence, Positivity, Witness};
pub use truncated::{
    build_representation, difference_matrix, grid_points, hermitian_part, hermiticity_defect, min_eig, rep_evaluate,
    sorted_eigenvalues, CMatrix, RepKind, TruncatedRep,
};
