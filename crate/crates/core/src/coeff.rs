//! Base coefficient domains: the integers, the rationals and `Z/n`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient domain of a ring spec.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Integers,
    Rationals,
    /// `Z/n` with `n >= 1`. Values are stored as reduced representatives.
    ModN(u64),
}

/// A coefficient value. Which variant is valid is determined by the [`Base`]
/// it is used with; arithmetic always goes through the base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
}

impl Base {
    /// Parses `"Z"`, `"Q"` or `"Z/<n>"`.
    pub fn parse(s: &str) -> Result<Base> {
        let s = s.trim();
        match s {
            "Z" | "ZZ" => Ok(Base::Integers),
            "Q" | "QQ" => Ok(Base::Rationals),
            _ => {
                let n = s
                    .strip_prefix("Z/")
                    .or_else(|| s.strip_prefix("F"))
                    .ok_or_else(|| Error::Parse {
                        pos: 0,
                        msg: format!("unknown base ring `{s}`"),
                    })?;
                let n: u64 = n.trim().parse().map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("bad modulus in `{s}`"),
                })?;
                if n == 0 || n >= (1u64 << 62) {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("modulus out of range in `{s}`"),
                    });
                }
                Ok(Base::ModN(n))
            }
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Base::Integers => Coeff::Int(BigInt::zero()),
            Base::Rationals => Coeff::Rat(BigRational::zero()),
            Base::ModN(_) => Coeff::Mod(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            Base::Integers => Coeff::Int(v.clone()),
            Base::Rationals => Coeff::Rat(BigRational::from_integer(v.clone())),
            Base::ModN(n) => {
                let r = v.mod_floor(&BigInt::from(*n));
                Coeff::Mod(r.to_u64().expect("reduced residue fits"))
            }
        }
    }

    /// Builds `num/den`. Fails over `Z` when the quotient is not integral and
    /// over `Z/n` when `den` is not invertible.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        if den.is_zero() {
            return Err(Error::Parse {
                pos: 0,
                msg: "zero denominator".into(),
            });
        }
        match self {
            Base::Rationals => Ok(Coeff::Rat(BigRational::new(num.clone(), den.clone()))),
            Base::Integers => {
                let (q, r) = num.div_rem(den);
                if r.is_zero() {
                    Ok(Coeff::Int(q))
                } else {
                    Err(Error::Parse {
                        pos: 0,
                        msg: format!("{num}/{den} is not an integer"),
                    })
                }
            }
            Base::ModN(_) => {
                let d = self.from_bigint(den);
                let inv = self.inverse(&d).ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("{den} is not invertible in {self}"),
                })?;
                Ok(self.mul(&self.from_bigint(num), &inv))
            }
        }
    }

    pub fn is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Int(v) => v.is_zero(),
            Coeff::Rat(v) => v.is_zero(),
            Coeff::Mod(v) => *v == 0 || matches!(self, Base::ModN(1)),
        }
    }

    pub fn is_one(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Int(v) => v.is_one(),
            Coeff::Rat(v) => v.is_one(),
            Coeff::Mod(v) => *v == 1 % self.modulus().unwrap_or(2),
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Base::ModN(n) => Some(*n),
            _ => None,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x + y),
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (Coeff::Mod(x), Coeff::Mod(y)) => {
                let n = self.modulus().expect("Mod coefficient over non-modular base");
                Coeff::Mod(((*x as u128 + *y as u128) % n as u128) as u64)
            }
            _ => panic!("coefficient kinds do not match base {self}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Int(x) => Coeff::Int(-x),
            Coeff::Rat(x) => Coeff::Rat(-x),
            Coeff::Mod(x) => {
                let n = self.modulus().expect("Mod coefficient over non-modular base");
                Coeff::Mod(if *x == 0 { 0 } else { n - x })
            }
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (Coeff::Mod(x), Coeff::Mod(y)) => {
                let n = self.modulus().expect("Mod coefficient over non-modular base");
                Coeff::Mod(((*x as u128 * *y as u128) % n as u128) as u64)
            }
            _ => panic!("coefficient kinds do not match base {self}"),
        }
    }

    pub fn pow(&self, a: &Coeff, mut e: u64) -> Coeff {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, if the coefficient is a unit of the base.
    pub fn inverse(&self, a: &Coeff) -> Option<Coeff> {
        match a {
            Coeff::Int(x) => {
                if x.is_one() || (-x).is_one() {
                    Some(Coeff::Int(x.clone()))
                } else {
                    None
                }
            }
            Coeff::Rat(x) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Coeff::Rat(x.recip()))
                }
            }
            Coeff::Mod(x) => {
                let n = self.modulus().expect("Mod coefficient over non-modular base");
                let e = BigInt::from(*x).extended_gcd(&BigInt::from(n));
                if e.gcd.is_one() {
                    Some(self.from_bigint(&e.x))
                } else {
                    None
                }
            }
        }
    }

    pub fn is_unit(&self, a: &Coeff) -> bool {
        self.inverse(a).is_some()
    }

    /// True for `Z/n` coefficients that are nilpotent (divisible by the
    /// radical of `n`). Over the integers and rationals only zero is.
    pub fn is_nilpotent(&self, a: &Coeff) -> bool {
        match (self, a) {
            (Base::ModN(n), Coeff::Mod(x)) => *x % radical(*n) == 0,
            _ => self.is_zero(a),
        }
    }

    /// Nilpotency bound: every nilpotent `c` satisfies `c^k = 0` for this `k`.
    pub fn nilpotency_bound(&self) -> u32 {
        match self {
            Base::ModN(n) => factorize(*n).iter().map(|&(_, e)| e).max().unwrap_or(1),
            _ => 1,
        }
    }

    /// Whether the base is an integral domain.
    pub fn is_domain(&self) -> bool {
        match self {
            Base::Integers | Base::Rationals => true,
            Base::ModN(n) => is_prime(*n),
        }
    }

    /// Whether the base is a field.
    pub fn is_field(&self) -> bool {
        match self {
            Base::Integers => false,
            Base::Rationals => true,
            Base::ModN(n) => is_prime(*n),
        }
    }

    /// Maps a coefficient of `self` into `target`, if the canonical map exists.
    pub fn map_coeff(&self, c: &Coeff, target: &Base) -> Result<Coeff> {
        match (c, target) {
            (Coeff::Int(v), t) => Ok(t.from_bigint(v)),
            (Coeff::Rat(v), t) => t
                .from_fraction(v.numer(), v.denom())
                .map_err(|_| Error::BaseMismatch(format!("cannot map {v} into {t}"))),
            (Coeff::Mod(v), Base::ModN(m)) => {
                let n = self.modulus().unwrap_or(0);
                if n.is_multiple_of(*m) {
                    Ok(Coeff::Mod(v % m))
                } else {
                    Err(Error::BaseMismatch(format!("Z/{n} does not map to Z/{m}")))
                }
            }
            (Coeff::Mod(_), t) => Err(Error::BaseMismatch(format!("{self} does not map to {t}"))),
        }
    }

    /// Whether a ring map `self -> target` on coefficients exists.
    pub fn maps_to(&self, target: &Base) -> bool {
        match (self, target) {
            (Base::Integers, _) => true,
            (Base::Rationals, Base::Rationals) => true,
            (Base::Rationals, Base::ModN(1)) => true,
            (Base::Rationals, _) => false,
            (Base::ModN(n), Base::ModN(m)) => n % m == 0,
            (Base::ModN(_), _) => false,
        }
    }

    /// Sign used when printing: true when the coefficient should be printed
    /// with a leading minus.
    pub fn is_negative(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Int(v) => v.is_negative(),
            Coeff::Rat(v) => v.is_negative(),
            Coeff::Mod(_) => false,
        }
    }

    /// Integer representative, when one exists (not for non-integral rationals).
    pub fn to_bigint(&self, c: &Coeff) -> Option<BigInt> {
        match c {
            Coeff::Int(v) => Some(v.clone()),
            Coeff::Rat(v) => v.is_integer().then(|| v.to_integer()),
            Coeff::Mod(v) => Some(BigInt::from(*v)),
        }
    }

    /// Formats the absolute value of the coefficient.
    pub fn fmt_abs(&self, c: &Coeff) -> String {
        match c {
            Coeff::Int(v) => v.abs().to_string(),
            Coeff::Rat(v) => {
                let a = v.abs();
                if a.is_integer() {
                    a.to_integer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                }
            }
            Coeff::Mod(v) => v.to_string(),
        }
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Integers => write!(f, "Z"),
            Base::Rationals => write!(f, "Q"),
            Base::ModN(n) => write!(f, "Z/{n}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorization into `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn radical(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, _)| p).product::<u64>().max(1)
}
