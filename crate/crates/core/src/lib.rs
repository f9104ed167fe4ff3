//! Exact computation of multigraded resolution regularity.
//!
//! The crate works over a standard `N^k`-graded polynomial ring (variables
//! split into `k` blocks) with coefficients in `Q` or a prime field, and
//! computes the resolution regularity of finitely generated `Z^k`-graded
//! modules along three independent routes:
//!
//! * a minimal free resolution built from Schreyer syzygies ([`resolution`]),
//! * Koszul homology of monomial modules, i.e. `Tor(M, k)` ([`koszul`]),
//! * `a`-invariants of colon quotients along a filter-regular block of
//!   variables ([`filter`]).
//!
//! [`asymptotics`] studies `n -> res-reg(I^n M)` and certifies the eventual
//! slope with reductions of `I`.

pub mod asymptotics;
pub mod error;
pub mod extint;
pub mod field;
pub mod filter;
pub mod groebner;
pub mod koszul;
pub mod linalg;
pub mod module;
pub mod monomial_ideal;
pub mod parse;
pub mod poly;
pub mod presentation;
pub mod resolution;
pub mod ring;
pub mod substitution;

pub use asymptotics::{
    asymptotic_report, detect_linear, find_reductions, power_module, resreg_sequence, verify_bounds, AsymptoticParams,
    AsymptoticReport, BoundChecks, LinearFit, ReductionCertificate,
};
pub use error::{AlgebraError, ComputeError};
pub use extint::ExtendedInt;
pub use field::{Coeff, FieldSpec};
pub use filter::{
    a_invariant, bfa, block_sequence, is_filter_regular, res_reg_via_colon, ColonRegularity, FilterRegularityReport,
    Verdict,
};
pub use groebner::{buchberger, normal_form, syzygies, GroebnerBasis, Submodule};
pub use koszul::koszul_tor_oracle;
pub use module::{FreeModuleSpec, ModuleElement, TermOrder};
pub use monomial_ideal::{AssociatedPrimes, MonomialIdeal, MonomialPrime};
pub use parse::parse_polynomial;
pub use poly::{Homogeneity, Polynomial};
pub use presentation::{present_subquotient, GeneratorStats, MonomialData, PresentedModule, Provenance};
pub use resolution::{res_reg, resolve, BettiTable, GradedMap, RegularityReport, Resolution, Route};
pub use ring::{Monomial, MultiDegree, RingSpec};
pub use substitution::{generic_coordinate_change, Substitution};
