//! Exact construction, classification, verification and specialization of
//! continued fraction expansions of truncated products ∏ᵢ₌₀ⁿ (1 + 1/fᵢ(x)),
//! where fᵢ is the i-th iterate of an integer polynomial f.

pub mod analysis;
pub mod cf;
pub mod cli;
pub mod error;
pub mod families;
pub mod polycore;
pub mod specialize;

pub use error::{Error, Result};
pub use polycore::{Poly, RatFunc, RatPoly};
