//! Fractions `n / d^k` over a declared integral domain with a fixed
//! denominator base `d`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::RingElem;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct LocFraction {
    num: RingElem,
    den: RingElem,
    k: u32,
}

impl LocFraction {
    pub fn new(num: RingElem, den: RingElem, k: u32) -> Result<LocFraction> {
        if !num.spec().is_domain() {
            return Err(Error::NotADomain);
        }
        if num.spec() != den.spec() && **num.spec() != **den.spec() {
            return Err(Error::SpecMismatch("numerator and denominator live in different rings".into()));
        }
        if den.is_zero() {
            return Err(Error::DenominatorMismatch("denominator base is zero".into()));
        }
        Ok(LocFraction { num, den, k })
    }

    /// `e / d^0`.
    pub fn from_elem(e: RingElem, den: &RingElem) -> Result<LocFraction> {
        LocFraction::new(e, den.clone(), 0)
    }

    pub fn num(&self) -> &RingElem {
        &self.num
    }

    pub fn den_base(&self) -> &RingElem {
        &self.den
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    fn same_den(&self, o: &LocFraction) -> Result<()> {
        if self.den == o.den {
            Ok(())
        } else {
            Err(Error::DenominatorMismatch(format!("{} vs {}", self.den, o.den)))
        }
    }

    /// Rewrites with denominator exponent `k >= self.k`.
    pub fn with_exponent(&self, k: u32) -> LocFraction {
        debug_assert!(k >= self.k);
        LocFraction {
            num: &self.num * &self.den.pow(k - self.k),
            den: self.den.clone(),
            k,
        }
    }

    pub fn frac_add(&self, o: &LocFraction) -> Result<LocFraction> {
        self.same_den(o)?;
        let k = self.k.max(o.k);
        let (a, b) = (self.with_exponent(k), o.with_exponent(k));
        Ok(LocFraction {
            num: &a.num + &b.num,
            den: self.den.clone(),
            k,
        })
    }

    pub fn frac_sub(&self, o: &LocFraction) -> Result<LocFraction> {
        self.frac_add(&o.frac_neg())
    }

    pub fn frac_neg(&self) -> LocFraction {
        LocFraction {
            num: -&self.num,
            den: self.den.clone(),
            k: self.k,
        }
    }

    pub fn frac_mul(&self, o: &LocFraction) -> Result<LocFraction> {
        self.same_den(o)?;
        Ok(LocFraction {
            num: &self.num * &o.num,
            den: self.den.clone(),
            k: self.k + o.k,
        })
    }

    /// Cross-multiplication equality.
    pub fn frac_eq(&self, o: &LocFraction) -> Result<bool> {
        self.same_den(o)?;
        let k = self.k.max(o.k);
        Ok(self.with_exponent(k).num == o.with_exponent(k).num)
    }

    /// The element itself when the fraction lies in the ring, by cancelling
    /// `d` from the numerator as far as exact division allows.
    pub fn as_elem(&self) -> Option<RingElem> {
        if self.k == 0 {
            return Some(self.num.clone());
        }
        let inv = self.den.is_unit().ok().flatten()?;
        Some(&self.num * &inv.pow(self.k))
    }

    /// Same fraction over the denominator base `d * cof`:
    /// `n / d^k = n * cof^k / (d * cof)^k`.
    pub fn rebase(&self, cof: &RingElem) -> Result<LocFraction> {
        LocFraction::new(&self.num * &cof.pow(self.k), &self.den * cof, self.k)
    }
}

impl PartialEq for LocFraction {
    fn eq(&self, o: &Self) -> bool {
        self.frac_eq(o).unwrap_or(false)
    }
}

impl fmt::Display for LocFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})^{}", self.num, self.den, self.k)
        }
    }
}

impl Scalar for LocFraction {
    fn zero_like(&self) -> Self {
        LocFraction {
            num: self.num.zero_like(),
            den: self.den.clone(),
            k: 0,
        }
    }

    fn one_like(&self) -> Self {
        LocFraction {
            num: self.num.one_like(),
            den: self.den.clone(),
            k: 0,
        }
    }

    fn add(&self, o: &Self) -> Self {
        self.frac_add(o).expect("fractions over different denominators")
    }

    fn sub(&self, o: &Self) -> Self {
        self.frac_sub(o).expect("fractions over different denominators")
    }

    fn mul(&self, o: &Self) -> Self {
        self.frac_mul(o).expect("fractions over different denominators")
    }

    fn neg(&self) -> Self {
        self.frac_neg()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}
