//! Exact computation of Brieskorn-module bases, Gauss-Manin connections,
//! mixed-Hodge-compatible bases, Hodge-cycle criteria and Picard-Fuchs
//! equations for (weighted) strongly tame polynomials.
//!
//! The coefficient layer is generic over [`scalar::Field`]; the pipeline uses
//! the exact fields Q, Q(t) and Q(zeta_N) through the aliases below. All
//! values are immutable after construction and safe to share across threads.

// dense kernels index parallel arrays; the explicit loops mirror the algebra
#![allow(clippy::needless_range_loop)]

pub mod brieskorn;
pub mod cyclotomic;
pub mod error;
pub mod forms;
pub mod groebner;
pub mod hodge;
pub mod matrix;
pub mod milnor;
pub mod mpoly;
pub mod pf;
pub mod ratfunc;
pub mod rational;
pub mod scalar;
pub mod unipoly;
pub mod weights;

pub use brieskorn::{
    basis_change_matrix, nabla_eta_vec, nabla_k_op, nabla_power_eta, nabla_top, reduce_n_form,
    reduce_top_form, BasisTag, BrieskornElement, ConnectionData, EtaCoords, OmegaCoords,
    ReductionCertificate,
};
pub use cyclotomic::CycloElem;
pub use error::{Error, Result};
pub use forms::{
    euler_contraction, euler_form, exterior_derivative, wedge_with_df, FormN, FormTop,
};
pub use groebner::{groebner_basis, groebner_basis_with, ComputeControl, GroebnerBasis, NoControl};
pub use hodge::{
    compute_d_beta, compute_d_beta_symbolic, fermat_hodge_lattice, gs_basis, hodge_basis,
    hodge_cycle_criterion, hodge_dimensions, DBetaMap, DimensionTable, FermatProblem,
    HodgeCriterion, HodgeReport,
};
pub use milnor::{
    check_strong_tameness, minimal_polynomial_s, multiplication_matrix, separable_critical_values,
    MilnorData, TameInput,
};
pub use mpoly::{MPoly, Monomial};
pub use pf::{picard_fuchs, PFEquation};
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use unipoly::{cyclotomic_polynomial, unipoly_squarefree, UniPoly};
pub use weights::{MonomialOrder, Weights};

/// Polynomials over Q.
pub type QPoly = MPoly<Rational>;
/// Polynomials over Q(t).
pub type QtPoly = MPoly<RatFunc>;
/// Polynomials over a cyclotomic field.
pub type CycloPoly = MPoly<CycloElem>;
