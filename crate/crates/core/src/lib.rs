//! Exact leading terms of period integrals for isolated hypersurface
//! singularities via Newton polyhedra and graded Koszul–de Rham quotients.

pub mod certifier;
pub mod error;
pub mod exact;
pub mod forms;
pub mod grading;
pub mod mellin;
pub mod numeric;
pub mod polytope;
pub mod suspension;

pub use certifier::{certify, certify_auto, Certificate, CertifyOptions, GradedBasis, InvalidReason, Verdict};
pub use error::{Error, Result};
pub use exact::{Exponent, GaussianRational, Rational, SparsePolynomial};
pub use forms::{holomorphic_to_log, LeadingPair, LogForm};
pub use grading::{FaceContext, NondegeneracyReport};
pub use mellin::{estimate_leading_pole_mc, predict_pole_profile, McOptions, PoleFit, PoleProfile};
pub use polytope::{newton_number, Face, Facet, NewtonPolyhedron, OrderPair};
