//! File formats, instance handling and the experiment harness around
//! [`totalmatch_core`].

pub mod config;
pub mod error;
pub mod experiments;
pub mod facets;
pub mod instances;
pub mod io;
pub mod table;

pub use error::{Error, Result};
