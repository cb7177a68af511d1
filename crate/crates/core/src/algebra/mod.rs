//! The scalar tower `F_q ⊂ A ⊂ K ⊂ K_∞` and friends.

pub mod bivar;
pub mod fq;
pub mod irreducible;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod residue;
pub mod ring;

pub use bivar::{BivarRat, PolyAT, Var};
pub use fq::Fq;
pub use irreducible::{enumerate_monic_irreducibles, factor, is_irreducible};
pub use laurent::Laurent;
pub use matrix::Mat;
pub use poly::{PolyA, NEG_INF};
pub use rat::RatK;
pub use residue::{FfCtx, FfElem, FqElem};
pub use ring::{Field, Ring, SignedTwist, Twist};
