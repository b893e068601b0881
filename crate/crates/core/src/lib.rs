//! Exact algebra for the hypersurface rings
//! `A = k[X_1..X_m, Y, Z, T] / (X_1^r_1 ... X_m^r_m Y - F)`: normal forms,
//! plane coordinate recognition, exponential maps, gradings, structural
//! criteria and certified coordinate systems for `X^r Y - F`.
//!
//! Coefficients are exact: rationals or a prime field `F_p`. Every positive
//! verdict carries a certificate that is re-checked by exact computation.

pub mod context;
pub mod criteria;
pub mod error;
pub mod expmap;
pub mod factor;
pub mod field;
pub mod graded;
pub mod ideal;
pub mod linalg;
pub mod parse;
pub mod plane;
pub mod poly;
pub mod quotient;
pub mod random;
pub mod theorem_b;
pub mod upoly;

pub use context::VarContext;
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use parse::parse_poly;
pub use plane::{coordinate_decide, word_to_auto, CoordinateCertificate, PlaneAuto, TameMove, TameWord};
pub use poly::{Monomial, Poly};
pub use quotient::{a_equal, AElem, AEndo, Presentation};
pub use theorem_b::{run_pipeline, PipelineOptions, TheoremBReport};
