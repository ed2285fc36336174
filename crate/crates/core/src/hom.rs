//! Ring homomorphisms given by assigning each source variable an element of
//! the target.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ring::{same_spec, RingElem, RingSpec};

/// Degree-`N` monomials in the truncated variables are enumerated up to this
/// many when checking that a truncation ideal maps to zero.
const NILPOTENCY_ENUM_CAP: usize = 2000;

#[derive(Clone, Debug)]
pub struct RingHom {
    source: Arc<RingSpec>,
    target: Arc<RingSpec>,
    images: Vec<RingElem>,
}

impl RingHom {
    /// Builds and checks a homomorphism from images of every source variable.
    pub fn new(source: &Arc<RingSpec>, target: &Arc<RingSpec>, images: Vec<RingElem>) -> Result<RingHom> {
        if images.len() != source.nvars() {
            return Err(Error::NotAHom(format!(
                "{} images for {} variables",
                images.len(),
                source.nvars()
            )));
        }
        if let Some(bad) = images.iter().find(|e| !same_spec(e.spec(), target)) {
            return Err(Error::SpecMismatch(format!("image {bad} is not in the target ring")));
        }
        if !source.base().maps_to(target.base()) {
            return Err(Error::NotAHom(format!(
                "no coefficient map {} -> {}",
                source.base(),
                target.base()
            )));
        }
        let h = RingHom {
            source: source.clone(),
            target: target.clone(),
            images,
        };
        h.check()?;
        Ok(h)
    }

    /// Assignment by variable name; unassigned variables go to the target
    /// variable of the same name.
    pub fn from_assignment(
        source: &Arc<RingSpec>,
        target: &Arc<RingSpec>,
        assignment: &[(&str, RingElem)],
    ) -> Result<RingHom> {
        for (n, _) in assignment {
            source.var_index(n)?;
        }
        let mut images = Vec::with_capacity(source.nvars());
        for v in source.vars() {
            match assignment.iter().find(|(n, _)| n == v) {
                Some((_, e)) => images.push(e.clone()),
                None => images.push(RingElem::var(target, v).map_err(|_| {
                    Error::NotAHom(format!("no image for variable `{v}`"))
                })?),
            }
        }
        RingHom::new(source, target, images)
    }

    /// Sends every variable to the target variable with the same name.
    pub fn by_names(source: &Arc<RingSpec>, target: &Arc<RingSpec>) -> Result<RingHom> {
        RingHom::from_assignment(source, target, &[])
    }

    pub fn source(&self) -> &Arc<RingSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingSpec> {
        &self.target
    }

    pub fn images(&self) -> &[RingElem] {
        &self.images
    }

    fn check(&self) -> Result<()> {
        let src = &self.source;
        for (r, text) in src.rules().iter().zip(src.rule_strings()) {
            let lead = MultiPoly::monomial(src.base(), r.lead.clone(), src.base().one());
            let d = self.eval(&lead)?.try_sub(&self.eval(&r.rhs)?)?;
            if !d.is_zero() {
                return Err(Error::NotAHom(format!("relation `{text}` maps to {d}")));
            }
        }
        if let Some(t) = src.truncation() {
            let imgs: Vec<&RingElem> = t.vars.iter().map(|&i| &self.images[i]).collect();
            if self.trunc_ideal_dies(&imgs, t.order) {
                return Ok(());
            }
            let mons = degree_monomials(imgs.len(), t.order, NILPOTENCY_ENUM_CAP).ok_or_else(|| {
                Error::NotAHom("cannot certify that the truncation ideal maps to zero".into())
            })?;
            for m in mons {
                let mut p = self.target_one();
                for (k, &e) in m.iter().enumerate() {
                    if e > 0 {
                        p = &p * &imgs[k].pow(e);
                    }
                }
                if !p.is_zero() {
                    return Err(Error::NotAHom(
                        "truncated variables do not map to nilpotents of compatible order".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Images all lie in a target truncation ideal of order at most `order`.
    fn trunc_ideal_dies(&self, imgs: &[&RingElem], order: u32) -> bool {
        match self.target.truncation() {
            Some(tt) => tt.order <= order && imgs.iter().all(|e| e.in_truncation_ideal()),
            None => imgs.iter().all(|e| e.is_zero()),
        }
    }

    fn target_one(&self) -> RingElem {
        RingElem::one(&self.target)
    }

    /// Evaluates an arbitrary (not necessarily reduced) source polynomial.
    pub fn eval(&self, p: &MultiPoly) -> Result<RingElem> {
        if p.nvars() != self.source.nvars() {
            return Err(Error::SpecMismatch("polynomial is not over the source ring".into()));
        }
        let sb = self.source.base();
        let tb = self.target.base();
        let mut powers: Vec<Vec<RingElem>> = vec![vec![self.target_one()]; self.images.len()];
        let mut acc = RingElem::zero(&self.target);
        for (m, c) in p.terms() {
            let mut t = RingElem::from_coeff(&self.target, sb.map_coeff(c, tb)?);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().expect("nonempty") * &self.images[i];
                    pw.push(next);
                }
                t = &t * &pw[e as usize];
                if t.is_zero() {
                    break;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn apply(&self, e: &RingElem) -> Result<RingElem> {
        if !same_spec(e.spec(), &self.source) {
            return Err(Error::SpecMismatch(format!(
                "{e} is in {}, hom source is {}",
                e.spec(),
                self.source
            )));
        }
        self.eval(e.poly())
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &RingHom) -> Result<RingHom> {
        let images = self
            .images
            .iter()
            .map(|e| other.apply(e))
            .collect::<Result<Vec<_>>>()?;
        RingHom::new(&self.source, &other.target, images)
    }
}

/// Exponent vectors of total degree `d` in `n` variables, if at most `cap`.
fn degree_monomials(n: usize, d: u32, cap: usize) -> Option<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, cap: usize) -> bool {
        if out.len() > cap {
            return false;
        }
        if k + 1 == cur.len() {
            cur[k] = left;
            out.push(cur.clone());
            return true;
        }
        for e in 0..=left {
            cur[k] = e;
            if !rec(k + 1, left - e, cur, out, cap) {
                return false;
            }
        }
        cur[k] = 0;
        true
    }
    if n == 0 {
        return Some(out);
    }
    (rec(0, d, &mut cur, &mut out, cap) && out.len() <= cap).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Base;

    #[test]
    fn integral_evaluation() {
        let z = RingSpec::polynomial(Base::Integers, &["x", "y", "z"]);
        let f2 = RingSpec::truncated(Base::ModN(2), &["a"], &["a"], 8).unwrap();
        let a = RingElem::var(&f2, "a").unwrap();
        let h = RingHom::new(&z, &f2, vec![a.clone(), RingElem::one(&f2), a]).unwrap();
        let e = RingElem::parse(&z, "1 + x*y*z").unwrap();
        assert_eq!(h.apply(&e).unwrap(), RingElem::parse(&f2, "1 + a^2").unwrap());
    }

    #[test]
    fn scaling_substitution() {
        let at = RingSpec::polynomial(Base::Integers, &["a", "t"]);
        let h = RingHom::from_assignment(&at, &at, &[("t", RingElem::parse(&at, "a*t").unwrap())]).unwrap();
        let t2 = RingElem::parse(&at, "t^2").unwrap();
        assert_eq!(h.apply(&t2).unwrap(), RingElem::parse(&at, "a^2*t^2").unwrap());
        let id = RingHom::by_names(&at, &at).unwrap();
        assert_eq!(id.apply(&t2).unwrap(), t2);
    }

    #[test]
    fn relations_must_map_to_zero() {
        let b = RingSpec::builder(Base::Rationals, &["a", "x", "y"])
            .relation("x*y - a^2")
            .build()
            .unwrap();
        let q = RingSpec::polynomial(Base::Rationals, &["s"]);
        let s = RingElem::var(&q, "s").unwrap();
        let ok = RingHom::new(&b, &q, vec![s.clone(), s.clone(), s.clone()]);
        assert!(ok.is_ok());
        let bad = RingHom::new(&b, &q, vec![s.clone(), s.clone(), RingElem::one(&q)]);
        assert!(matches!(bad, Err(Error::NotAHom(_))));
    }

    #[test]
    fn truncation_needs_nilpotent_images() {
        let src = RingSpec::truncated(Base::ModN(2), &["a"], &["a"], 4).unwrap();
        let poly = RingSpec::polynomial(Base::ModN(2), &["a"]);
        assert!(RingHom::by_names(&src, &poly).is_err());
        let deeper = RingSpec::truncated(Base::ModN(2), &["b"], &["b"], 8).unwrap();
        let b2 = RingElem::parse(&deeper, "b^2").unwrap();
        assert!(RingHom::new(&src, &deeper, vec![b2]).is_ok());
        let b = RingElem::parse(&deeper, "b").unwrap();
        assert!(RingHom::new(&src, &deeper, vec![b]).is_err());
    }
}
