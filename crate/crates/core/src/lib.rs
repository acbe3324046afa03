//! Exact arithmetic in finite and affine Temperley–Lieb algebras of type A, the maps
//! between them, Jones traces, and reduction of affine traces to Markov elements.

pub mod algebra;
pub mod diagram;
pub mod error;
pub mod expr;
pub mod homs;
pub mod linalg;
pub mod markov;
pub mod random;
pub mod report;
pub mod suites;
pub mod trace;
pub mod ring;
pub mod words;

pub use algebra::{Basis, Element};
pub use error::{Error, Result};
pub use report::{Check, Report};
pub use ring::{Constant, RingElem};
pub use words::{enumerate_fc, Append, Heap, Letter, NotFc, System, AFFINE};
