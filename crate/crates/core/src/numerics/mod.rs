//! Floating-point oracle layer and the exact lattice-constant expansions it
//! is checked against.

pub mod elliptic;
pub mod floquet;
pub mod kseries;
pub mod ode;
pub mod quad;
pub mod theta;

pub use elliptic::{
    complete_integrals, elliptic_constants, elliptic_constants_from_k2, jacobi_elliptic_eval,
    nome_from_k2, weierstrass_p, EllipticConstants, JacobiElliptic,
};
pub use floquet::{
    contour_quadrature, contour_quadrature_with, eigenfunction_eval,
    floquet_exponent_from_integral, invert_large_energy, monodromy, monodromy_with,
    period_normalization, period_quadrature, stationary_points, ContourIntegrand,
    EigenfunctionReport, Family, PeriodTag, PotentialSpecNumeric, Terms, VSeries,
};
pub use kseries::{k_expansion_constants, KExpansion};
pub use ode::{MonodromyResult, OdeOptions};
pub use quad::{integrate_polyline, integrate_segment, QuadOptions, QuadResult};
pub use theta::{theta_constants, theta_functions, ThetaBundle, ThetaValues, THETA_TOL};
