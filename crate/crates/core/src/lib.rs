//! Spectra of the bipartite graphs `D(k,q)` and the point graph of `D(5,q)`
//! through the representation theory of a 5-dimensional group over `F_q`.

pub mod chars;
pub mod error;
pub mod gf;
pub mod graphs;
pub mod matrix;
pub mod oracle;
pub mod reps;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{Fel, FieldSpec};
