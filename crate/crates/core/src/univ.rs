//! Dense univariate polynomials `sum a_i t^i` with coefficients in a ring spec.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::poly::MultiPoly;
use crate::ring::{RingElem, RingSpec};

#[derive(Clone, PartialEq)]
pub struct UnivPoly {
    spec: Arc<RingSpec>,
    t: String,
    coeffs: Vec<RingElem>,
}

impl fmt::Debug for UnivPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UnivPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.spec.adjoin(&[self.t.as_str()]).and_then(|s| self.to_elem(&s)) {
            Ok(e) => write!(f, "{e}"),
            Err(_) => write!(f, "{:?}", self.coeffs),
        }
    }
}

impl UnivPoly {
    /// Ascending coefficients; trailing zeros are dropped.
    pub fn new(spec: &Arc<RingSpec>, t: &str, mut coeffs: Vec<RingElem>) -> UnivPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivPoly {
            spec: spec.clone(),
            t: t.to_string(),
            coeffs,
        }
    }

    pub fn zero(spec: &Arc<RingSpec>, t: &str) -> UnivPoly {
        UnivPoly::new(spec, t, Vec::new())
    }

    pub fn constant(c: RingElem, t: &str) -> UnivPoly {
        let spec = c.spec().clone();
        UnivPoly::new(&spec, t, vec![c])
    }

    pub fn one(spec: &Arc<RingSpec>, t: &str) -> UnivPoly {
        UnivPoly::constant(RingElem::one(spec), t)
    }

    /// `c t^d`.
    pub fn monomial(c: RingElem, d: usize, t: &str) -> UnivPoly {
        let spec = c.spec().clone();
        let mut coeffs = vec![RingElem::zero(&spec); d];
        coeffs.push(c);
        UnivPoly::new(&spec, t, coeffs)
    }

    /// Parses coefficient strings, lowest degree first.
    pub fn parse_coeffs(spec: &Arc<RingSpec>, t: &str, coeffs: &[&str]) -> Result<UnivPoly> {
        let cs = coeffs
            .iter()
            .map(|s| RingElem::parse(spec, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(UnivPoly::new(spec, t, cs))
    }

    /// Parses an expression in `spec[t]`.
    pub fn parse(spec: &Arc<RingSpec>, t: &str, src: &str) -> Result<UnivPoly> {
        let st = spec.adjoin(&[t])?;
        UnivPoly::from_elem(&RingElem::parse(&st, src)?, spec, t)
    }

    /// Splits an element of `spec[t]` by powers of `t`.
    pub fn from_elem(e: &RingElem, spec: &Arc<RingSpec>, t: &str) -> Result<UnivPoly> {
        let es = e.spec();
        let ti = es.var_index(t)?;
        let map = spec
            .vars()
            .iter()
            .map(|v| es.var_index(v))
            .collect::<Result<Vec<_>>>()?;
        let mut buckets: Vec<Vec<(crate::poly::Monomial, crate::coeff::Coeff)>> = Vec::new();
        for (m, c) in e.poly().terms() {
            let d = m.0[ti] as usize;
            if (0..es.nvars()).any(|i| i != ti && m.0[i] > 0 && !map.contains(&i)) {
                return Err(Error::Input(format!("{e} involves variables outside {spec}[{t}]")));
            }
            if buckets.len() <= d {
                buckets.resize(d + 1, Vec::new());
            }
            let mono = crate::poly::Monomial(map.iter().map(|&i| m.0[i]).collect());
            buckets[d].push((mono, es.base().map_coeff(c, spec.base())?));
        }
        let coeffs = buckets
            .into_iter()
            .map(|terms| RingElem::from_poly(spec, &MultiPoly::from_terms(spec.base(), spec.nvars(), terms)))
            .collect::<Result<Vec<_>>>()?;
        Ok(UnivPoly::new(spec, t, coeffs))
    }

    /// `sum a_i t^i` as an element of `target`, which must contain `t` and
    /// the coefficient variables.
    pub fn to_elem(&self, target: &Arc<RingSpec>) -> Result<RingElem> {
        let tv = RingElem::var(target, &self.t)?;
        let mut acc = RingElem::zero(target);
        let mut pw = RingElem::one(target);
        for c in &self.coeffs {
            acc = &acc + &(&c.reinterpret(target)? * &pw);
            pw = &pw * &tv;
        }
        Ok(acc)
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn var(&self) -> &str {
        &self.t
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> RingElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RingElem::zero(&self.spec))
    }

    pub fn lead(&self) -> Option<&RingElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    fn with(&self, coeffs: Vec<RingElem>) -> UnivPoly {
        UnivPoly::new(&self.spec, &self.t, coeffs)
    }

    pub fn add(&self, o: &UnivPoly) -> UnivPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        self.with((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UnivPoly) -> UnivPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        self.with((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UnivPoly {
        self.with(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &RingElem) -> UnivPoly {
        self.with(self.coeffs.iter().map(|a| c * a).collect())
    }

    pub fn mul(&self, o: &UnivPoly) -> UnivPoly {
        if self.is_zero() || o.is_zero() {
            return UnivPoly::zero(&self.spec, &self.t);
        }
        let mut out = vec![RingElem::zero(&self.spec); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        self.with(out)
    }

    /// `t^k * self`.
    pub fn shift(&self, k: usize) -> UnivPoly {
        let mut coeffs = vec![RingElem::zero(&self.spec); k];
        coeffs.extend(self.coeffs.iter().cloned());
        self.with(coeffs)
    }

    /// Drops all terms of degree above `d`.
    pub fn truncate_degree(&self, d: usize) -> UnivPoly {
        self.with(self.coeffs.iter().take(d + 1).cloned().collect())
    }

    pub fn eval(&self, x: &RingElem) -> RingElem {
        let mut acc = RingElem::zero(&self.spec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UnivPoly {
        self.with(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &RingElem::from_i64(&self.spec, i as i64))
                .collect(),
        )
    }

    /// Division with remainder by a monic divisor.
    pub fn divrem_monic(&self, d: &UnivPoly) -> Result<(UnivPoly, UnivPoly)> {
        if !d.is_monic() {
            return Err(Error::Input(format!("divisor {d} is not monic")));
        }
        let n = d.degree().expect("monic is nonzero");
        let mut r = self.coeffs.clone();
        let mut q = vec![RingElem::zero(&self.spec); r.len().saturating_sub(n)];
        while r.len() > n {
            let k = r.len() - 1 - n;
            let c = r.pop().expect("nonempty");
            if !c.is_zero() {
                for (i, dc) in d.coeffs[..n].iter().enumerate() {
                    r[k + i] = &r[k + i] - &(&c * dc);
                }
                q[k] = c;
            }
        }
        Ok((self.with(q), self.with(r)))
    }

    /// Applies `f` to every coefficient, landing in `spec`.
    pub fn map_coeffs(&self, spec: &Arc<RingSpec>, f: impl Fn(&RingElem) -> Result<RingElem>) -> Result<UnivPoly> {
        Ok(UnivPoly::new(
            spec,
            &self.t,
            self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?,
        ))
    }

    /// Image modulo the truncation ideal.
    pub fn to_residue(&self) -> Result<UnivPoly> {
        let res = self.spec.residue()?;
        self.map_coeffs(&res, |c| c.to_residue())
    }

    /// Coefficient-wise representative lift from the residue ring.
    pub fn from_residue(p: &UnivPoly, spec: &Arc<RingSpec>) -> Result<UnivPoly> {
        p.map_coeffs(spec, |c| RingElem::from_residue(spec, c))
    }
}

/// Sylvester matrix for declared degrees `n >= deg f`, `m >= deg g`:
/// `m` shifted rows of `a_n .. a_0`, then `n` shifted rows of `b_m .. b_0`.
pub fn sylvester(f: &UnivPoly, n: usize, g: &UnivPoly, m: usize) -> Result<Mat<RingElem>> {
    if n + m == 0 {
        return Err(Error::DegreeZeroSum);
    }
    if f.degree().is_some_and(|d| d > n) || g.degree().is_some_and(|d| d > m) {
        return Err(Error::Input("declared degree is below the actual degree".into()));
    }
    let size = n + m;
    let mut s = Mat::zeros(size, &RingElem::one(f.spec()));
    for i in 0..m {
        for k in 0..=n {
            s.set(i, i + k, f.coeff(n - k));
        }
    }
    for i in 0..n {
        for k in 0..=m {
            s.set(m + i, i + k, g.coeff(m - k));
        }
    }
    Ok(s)
}

pub fn resultant(f: &UnivPoly, n: usize, g: &UnivPoly, m: usize) -> Result<RingElem> {
    Ok(sylvester(f, n, g, m)?.det())
}

/// Extended Euclid over a field of coefficients: `s a + t b = gcd`, gcd monic
/// (or zero when both inputs vanish).
pub fn ext_gcd(a: &UnivPoly, b: &UnivPoly) -> Result<(UnivPoly, UnivPoly, UnivPoly)> {
    let spec = a.spec().clone();
    let t = a.var().to_string();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UnivPoly::one(&spec, &t), UnivPoly::zero(&spec, &t));
    let (mut t0, mut t1) = (UnivPoly::zero(&spec, &t), UnivPoly::one(&spec, &t));
    while !r1.is_zero() {
        let lc = r1.lead().expect("nonzero").clone();
        let inv = lc
            .is_unit()?
            .ok_or_else(|| Error::UnsupportedSpec(format!("leading coefficient {lc} is not invertible")))?;
        let monic = r1.scale(&inv);
        let (q, r) = r0.divrem_monic(&monic)?;
        let q = q.scale(&inv);
        let s2 = s0.sub(&q.mul(&s1));
        let t2 = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if let Some(lc) = r0.lead().cloned() {
        let inv = lc
            .is_unit()?
            .ok_or_else(|| Error::UnsupportedSpec(format!("leading coefficient {lc} is not invertible")))?;
        r0 = r0.scale(&inv);
        s0 = s0.scale(&inv);
        t0 = t0.scale(&inv);
    }
    Ok((r0, s0, t0))
}
