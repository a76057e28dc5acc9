//! Exact arithmetic for graded commutative algebras `A` and the free
//! cocommutative coalgebra `SA` on them.
//!
//! The central object is the cumulant bijection `τ̃: SA → SA`, the unique
//! coalgebra automorphism lifting the multiplication `τ: SA → A`. From it the
//! crate derives:
//!
//! * conjugated Taylor coefficients of coalgebra maps and coderivations,
//!   which measure how far a linear map is from an algebra homomorphism or a
//!   derivation ([`cumulant`]);
//! * induced bijections on `SC` for a deformation retract `A ⇄ C`
//!   ([`transfer`]);
//! * classical moment-to-cumulant conversion as the special case of an
//!   expectation functional ([`probability`]).
//!
//! Everything is generic over a characteristic-zero [`Scalar`]; the
//! `Q*` aliases fix it to exact rationals.
//!
//! ```
//! use cumulant_core::{fixtures, CumulantContext, QSElement, Rational};
//!
//! let p = fixtures::truncated_polynomial::<Rational>(4);
//! let ctx = CumulantContext::new(&p, 2);
//! let one = Rational::from_integer(1.into());
//! let w = QSElement::from_factors(p.basis().clone(), 2, &[0, 1], one).unwrap();
//! // τ̃(x1∧x2) = x1∧x2 + x1·x2
//! assert_eq!(ctx.tau_tilde(&w).display(), "(1)·x3 + (1)·x1∧x2");
//! ```

pub mod algebra;
pub mod coalgebra;
pub mod cumulant;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod linsolve;
pub mod morphisms;
pub mod partition;
pub mod probability;
pub mod scalar;
pub mod transfer;

pub use algebra::{Algebra, Generator, GradedBasis, LinearMap, Vector};
pub use coalgebra::{
    canonical_monomials, canonical_monomials_up_to, coproduct, iterated_coproduct, koszul_sign,
    normalize_monomial, SElement, TensorPairSum, TensorSum, WedgeMonomial, DEFAULT_WEIGHT_CAP,
};
pub use cumulant::{
    compare_h3_closed_form, conjugate, conjugate_endo, derivation_defect, derivation_defects,
    homomorphism_defect, homomorphism_defects, tau, tau_element, tau_tilde, tau_tilde_inverse,
    tau_tilde_series, triangular_inverse, CumulantContext, Direction, H3Comparison, TauTilde,
};
pub use error::{Error, Result};
pub use morphisms::{
    bracket, check_coderivation, check_comorphism, compose, extend_coalgebra_map, extend_coderivation,
    taylor_extract, taylor_family, CoalgebraMap, Coderivation, LawReport, SMap, SMorphism, TaylorFamily,
    Witness,
};
pub use probability::{cumulants_from_moments, oracle_cumulants, MomentSequence};
pub use scalar::{format_rational, parse_rational, Rational, Scalar};
pub use transfer::{
    certify, induced_cumulant_bijection, solve_transfer, validate_retract, validate_transfer_input,
    Certification, InducedBijection, RetractData, TransferInput, TransferReport,
};

/// Largest weight cap accepted by front ends; Bell numbers grow quickly past it.
pub const MAX_WEIGHT_CAP: usize = 10;

pub type QVector = Vector<Rational>;
pub type QAlgebra = Algebra<Rational>;
pub type QLinearMap = LinearMap<Rational>;
pub type QSElement = SElement<Rational>;
pub type QMap = SMap<Rational>;
pub type QTaylorFamily = TaylorFamily<Rational>;
pub type QCumulantContext = CumulantContext<Rational>;
pub type QMomentSequence = MomentSequence<Rational>;
pub type QRetractData = RetractData<Rational>;
pub type QTransferInput = TransferInput<Rational>;
