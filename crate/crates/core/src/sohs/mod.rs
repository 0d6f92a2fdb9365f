//! Sums of hermitian squares: Gram systems, a splitting solver, certificate extraction and search.
mod certify;
mod gram;
mod search;
mod solver;

pub use certify::{
    basis_coordinates, extract_and_verify, float_tolerance, gram_from_factors, ldl_hermitian, rationalize,
    verify_float_factors, verify_weighted, CertFactor, ExtractMode, GramCertificate,
};
pub use gram::{assemble_gram_system, graded_basis, Constraint, GramSystem};
pub use search::{
    candidate_words, certify_target, positivstellensatz_search, Attempt, PipelineResult, SearchMode, SearchOptions,
    SearchOutcome,
};
pub use solver::{
    hermitian_eigen, min_eigenvalue, sdp_feasible, sdp_feasible_with, Feasibility, GramMatrix, SolverOptions,
    DEFAULT_MAX_ITER, DEFAULT_TOL,
};
