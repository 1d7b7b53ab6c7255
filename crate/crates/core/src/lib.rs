//! Group character codes over `Z_l^m` and the convolutional codes obtained by
//! splitting their parity-check matrices into the coefficients of a polynomial
//! generator matrix.

pub mod charcode;
pub mod cli;
pub mod convo;
pub mod distance;
pub mod error;
pub mod gf;
pub mod matfq;
pub mod polymat;

pub use error::{Error, Result};
