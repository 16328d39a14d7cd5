//! Exact arithmetic for Euclidean and ADC quadratic forms.
//!
//! The crate covers normed coefficient rings ([`rings`]), quadratic forms and
//! their structural predicates ([`forms`]), Euclidean steps and Euclideanity
//! ([`euclid`]), the descent that turns rational representations into
//! integral ones ([`descent`]), and local representability checks together
//! with their classical consequences ([`localglobal`]). The [`cli`] module
//! backs the `adcforms` binary.

pub mod cli;
pub mod descent;
pub mod error;
pub mod euclid;
pub mod forms;
pub mod limits;
pub mod localglobal;
pub mod rings;

pub use error::{Error, Result};
pub use forms::{AnyForm, QuadraticForm};
pub use limits::Limits;
