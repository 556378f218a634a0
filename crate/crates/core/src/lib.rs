pub mod ad;
pub mod algebra;
pub mod error;
pub mod gr;
pub mod growth;
pub mod linalg;
pub mod localization;
pub mod par;
pub mod span;
pub mod tensor;

pub use error::{Error, Result};
