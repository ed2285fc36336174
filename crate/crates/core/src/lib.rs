//! Exact computational algebra over polynomial, quotient and truncated rings:
//! elementary and symplectic matrix words, factorizations with verifiable
//! certificates, Hensel lifting, Milnor patching and unimodular-row orbits.

pub mod coeff;
pub mod elem;
pub mod error;
pub mod factor;
pub mod gen;
pub mod hensel;
pub mod hom;
pub mod loc;
pub mod mat;
pub mod parse;
pub mod patch;
pub mod poly;
pub mod pseudo;
pub mod ring;
pub mod scalar;
pub mod symplectic;
pub mod umrow;
pub mod univ;
pub mod wire;

pub use coeff::{Base, Coeff};
pub use elem::{whitehead_double, ElemGen, ElemWord};
pub use error::{Error, Result};
pub use hensel::TruncPair;
pub use hom::RingHom;
pub use loc::LocFraction;
pub use mat::Mat;
pub use patch::{MilnorSquare, PatchDatum};
pub use poly::{Monomial, MultiPoly};
pub use pseudo::PseudoCert;
pub use ring::{normal_form, RingElem, RingSpec};
pub use scalar::Scalar;
pub use symplectic::{SpGen, SpWord};
pub use umrow::UmRow;
pub use univ::UnivPoly;
