//! Exact arithmetic for formal groups of elliptic curves and their modular
//! parametrizations: truncated-series identities between the formal
//! exponential, the Weierstrass functions, and eigenform-indexed sums, plus
//! the numeric side (periods, L-values, lattice recognition) needed to turn
//! those identities into exact special-value statements.

pub mod error;
pub mod ring;
pub mod poly;
pub mod series;
pub mod bivar;
pub mod curve;
pub mod formal;
pub mod modform;
pub mod logalg;
pub mod character;
pub mod cyclotomic;
pub mod lvalue;
pub mod periods;
pub mod recognize;
pub mod examples;
pub mod selfcheck;

pub use bivar::BiSeries;
pub use curve::{
    conductor_11_curve, derive_invariants, AffinePoint, CurveField, CurveModel, SeriesPoint,
    ShortCurve,
};
pub use character::{gauss_sum, DirichletCharacter, GaussSum};
pub use lvalue::{character_sum, eval_series, l1_rapid, l1_twisted, LValue, SeriesValue, TwistMode};
pub use recognize::{
    lattice_multiple, rational_reconstruct, recognize_point, GeneratorLine, LatticeMultiple,
    DEFAULT_DENOM_BOUND,
};
pub use periods::{
    carlson_rf, periods, short_cubic_roots, wp_numeric, CubicRoots, PeriodLattice, WpEvaluator,
};
pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic, QRho};
pub use error::{Error, Result};
pub use examples::{example_driver, ExampleId, ExampleReport, Intermediate};
pub use formal::{wp_series, FormalGroupData};
pub use logalg::{
    twisted_harmonic, verify_logalg1a, verify_main_a, verify_main_b, verify_main_b_at,
    verify_wp_identities, BetaPoly, IdentityReport, Verdict,
};
pub use modform::{
    eta_product_coeffs, hecke_expand, honda_group_law, load_coeffs, modular_xy, CoeffSource,
    NewformCoeffs, ParametrizationSeries,
};
pub use poly::{Poly, RatFunc, UPoly};
pub use ring::{rat, rat_int, Field, Rat, Ring, ToComplex};
pub use series::{TruncatedSeries, Var, INF_PREC};
