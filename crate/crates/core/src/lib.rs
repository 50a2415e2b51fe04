//! Locally repairable codes with (r, t)-availability: finite fields,
//! resolvable designs, MDS and Gabidulin codes, the two constructions with
//! their structured decoders, and distance analysis.

pub mod analysis;
pub mod combinations;
pub mod designs;
pub mod gf;
pub mod linalg;
pub mod lrc;
pub mod mds;

pub use analysis::{AnalysisError, DistanceReport, SubcodeTrace};
pub use designs::{DesignError, MembershipMatrix, ResolvableDesign};
pub use gf::{FieldElement, FieldSpec, GaloisField, GfError};
pub use linalg::Matrix;
pub use lrc::{Codeword, DecodeOutcome, LrcCode, LrcError, LrcParams};
pub use mds::{GabidulinCode, GeneratorMatrix, MdsError};
