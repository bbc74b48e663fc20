//! Frame calculus and operator-orbit representability for finite complex
//! frames.

pub mod error;
pub mod frame;
pub mod linalg;
pub mod orbit;
pub mod sample;
pub mod structured;

pub use error::{Error, Result};
pub use frame::{cross_gram, Frame, FrameDiagnostics, IndexKind, IndexModel};
pub use linalg::{ComplexMatrix, Tolerance};
