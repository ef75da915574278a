pub mod bivariate;
pub mod error;
pub mod exact;
pub mod forms;
pub mod identities;
pub mod json;
pub mod latex;
pub mod poly;
pub mod powersum;
pub mod quadratic;
pub mod search;

pub use error::{Error, Result};
