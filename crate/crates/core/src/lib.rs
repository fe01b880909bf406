//! Flowing flags: nilradicals of type-A parabolic subalgebras, infinitesimal
//! T-duality of admissible triples, and the transport of generalized complex
//! structures between corresponding flag manifolds.
//!
//! Everything is generic over a [`Scalar`] coefficient field. The aliases at
//! the crate root fix it to exact rationals.
//!
//! ```
//! use flagflux::{dualize, parse_form, parse_malcev, QTriple};
//!
//! let n = parse_malcev("(0,0,-e^{12})").unwrap();
//! let h = parse_form("e^{123}", 3, Some(3)).unwrap();
//! let dual = dualize(&QTriple::new(n, vec![3], h).unwrap()).unwrap();
//! assert_eq!(dual.dual.algebra.to_string(), "(0,0,e^{12})");
//! assert_eq!(dual.dual.flux.to_string(), "-e^{123}");
//! ```

pub mod correspond;
pub mod error;
pub mod exterior;
pub mod gcs;
pub mod linalg;
pub mod nilradical;
pub mod notation;
pub mod rootsys;
pub mod scalar;
pub mod tduality;

pub use correspond::{
    correspond, dimension_obstruction_scan, graded_ideal, pretty_name, search_targets, selfdual_flux,
    three_summand_correspond, Correspondence, FlowingFlag, ObstructionScan, SelfDualReport, TargetCandidate,
    TargetSearch,
};
pub use error::{Error, Result};
pub use exterior::{Form, MalcevPresentation};
pub use gcs::{classify_block, integrability_necessary, make_block, phi_conjugate, BlockClass, BlockKind, GcsBlock, PhiMap};
pub use linalg::Matrix;
pub use nilradical::{jacobi_check, nilradical_presentation, JacobiReport, Nilradical, WeylConstants};
pub use notation::{parse_form, parse_malcev, parse_malcev_with_dim, print_malcev};
pub use rootsys::{
    build_root_system, complementary_positive_roots, isotropy_summands, three_summand_dims, FlagSpec,
    IsotropySummand, Root, RootSystem, Series,
};
pub use scalar::Scalar;
pub use tduality::{
    check_admissible, dualize, duality_certificate, iso_small, iso_small_with, triples_equivalent,
    AdmissibilityReport, AdmissibleTriple, CertificateReport, DualizationResult, Fingerprint, IsoOutcome,
    SignedPermutation,
};

pub type Rational = num_rational::BigRational;

pub type QForm = Form<Rational>;
pub type QMalcev = MalcevPresentation<Rational>;
pub type QTriple = AdmissibleTriple<Rational>;
pub type QDualization = DualizationResult<Rational>;
pub type QNilradical = Nilradical<Rational>;
pub type QFlowingFlag = FlowingFlag<Rational>;
pub type QBlock = GcsBlock<Rational>;
pub type QMatrix = Matrix<Rational>;

pub type F64Form = Form<f64>;
pub type F64Malcev = MalcevPresentation<f64>;
pub type F64Block = GcsBlock<f64>;
