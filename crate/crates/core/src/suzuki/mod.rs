//! The curve `Y^q − Y = X^{q0}(X^q − X)`: counts, L-polynomials, period,
//! automorphisms.

pub mod aut;
pub mod counts;
pub mod identities;
pub mod lpoly;
mod params;

pub use aut::{aut_compose, aut_group_audit, aut_inverse, on_curve, AuditReport, Automorphism, AutomorphismRepr};
pub use counts::{
    brute_force_count, brute_force_count_naive, classify, decomposition_count, mcguire_extend, point_count,
    within_hasse_weil, CountReport, Maximality, Method,
};
pub use identities::{beta_gamma, scalar_identity, verify_substitutions};
pub use lpoly::{
    jacobian_note, jacobian_order, l_polynomial, l_polynomial_ext, l_polynomial_factored, l_polynomial_shell,
    l_ratio_identity, period, serre_divisibility, x1_l_polynomial, FactoredL, JACOBIAN_P7_NOTE,
};
pub use params::CurveParams;
