//! Exact engine for framed tangles modulo the Kauffman bracket skein relation.
//!
//! Tangle words ([`tangle`]) are expanded through the skein relation
//! ([`skein`]) into Temperley-Lieb normal form ([`tl`]). Bilinear forms whose
//! asymmetry has trace `-A^2 - A^-2` give representations of the
//! Temperley-Lieb category ([`rep`]); [`forms`] classifies such forms over
//! the rationals and [`unitary`] checks when the crossing can be unitary.
//!
//! Composition is diagrammatic everywhere: `compose(f, g)` applies `f` first.

pub mod dsl;
pub mod formats;
pub mod forms;
pub mod library;
pub mod matrix;
pub mod relations;
pub mod rep;
pub mod ring;
pub mod skein;
pub mod tangle;
pub mod tl;
pub mod unitary;

pub use matrix::Matrix;
pub use ring::{GaussianRational, LaurentPoly, Ring, RingTag, RingValue};
