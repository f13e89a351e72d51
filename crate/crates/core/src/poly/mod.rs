//! Exact polynomial machinery.

pub mod bifactor;
pub mod bipoly;
pub mod factor;
pub mod frac;
pub mod modp;
pub mod param;
pub mod roots;
pub mod solve;
pub mod tower;
pub mod upoly;

pub use bipoly::{BiPoly, Coord};
pub use frac::{Frac, RatFunc};
pub use roots::{isolate_real_roots, AlgebraicReal, RootInterval};
pub use upoly::{Field, GPoly, Poly, UPoly};
