pub mod cli;
pub mod cover;
pub mod cubic;
pub mod elliptic;
pub mod error;
pub mod hermitian;
pub mod poly;
pub mod ruled;
pub mod tensor;

pub use error::{Error, Result};
