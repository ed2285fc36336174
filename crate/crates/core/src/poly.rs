//! Sparse multivariate polynomials under graded-lex order.
//!
//! A [`MultiPoly`] does not know its coefficient domain; every operation takes
//! the [`Base`] explicitly. Ring specs wrap this with reduction.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use smallvec::SmallVec;

use crate::coeff::{Base, Coeff};

/// Exponent vector indexed by the ring's variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Monomial {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(o.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    /// Total degree in the given subset of variables.
    pub fn degree_in(&self, vars: &[usize]) -> u64 {
        vars.iter().map(|&i| self.0[i] as u64).sum()
    }

    /// Number of variables with a positive exponent.
    pub fn support_len(&self) -> usize {
        self.0.iter().filter(|&&e| e > 0).count()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Terms sorted strictly increasing in graded-lex order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Monomial, Coeff)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        MultiPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(base: &Base, nvars: usize, c: Coeff) -> MultiPoly {
        MultiPoly::monomial(base, Monomial::one(nvars), c)
    }

    pub fn monomial(base: &Base, m: Monomial, c: Coeff) -> MultiPoly {
        let nvars = m.nvars();
        if base.is_zero(&c) {
            MultiPoly::zero(nvars)
        } else {
            MultiPoly {
                nvars,
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(base: &Base, nvars: usize, i: usize) -> MultiPoly {
        MultiPoly::monomial(base, Monomial::var(nvars, i, 1), base.one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(base: &Base, nvars: usize, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> MultiPoly {
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            accumulate(base, &mut acc, m, c);
        }
        MultiPoly {
            nvars,
            terms: acc.into_iter().collect(),
        }
    }

    pub(crate) fn from_sorted_unchecked(nvars: usize, terms: Vec<(Monomial, Coeff)>) -> MultiPoly {
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading (largest) term.
    pub fn lead(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.last()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Coefficient of the constant monomial.
    pub fn constant_coeff(&self, base: &Base) -> Coeff {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => base.zero(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn coeff_of(&self, m: &Monomial) -> Option<&Coeff> {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn add(&self, base: &Base, o: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, o.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                Ordering::Less => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = base.add(ca, cb);
                    if !base.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().cloned());
        MultiPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn neg(&self, base: &Base) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), base.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, base: &Base, o: &MultiPoly) -> MultiPoly {
        self.add(base, &o.neg(base))
    }

    pub fn scale(&self, base: &Base, c: &Coeff) -> MultiPoly {
        MultiPoly::from_terms(
            base,
            self.nvars,
            self.terms.iter().map(|(m, d)| (m.clone(), base.mul(c, d))),
        )
    }

    pub fn mul_monomial(&self, base: &Base, m: &Monomial, c: &Coeff) -> MultiPoly {
        if base.is_zero(c) {
            return MultiPoly::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(t, d)| {
                let p = base.mul(c, d);
                (!base.is_zero(&p)).then(|| (t.mul(m), p))
            })
            .collect();
        // Multiplying by a monomial preserves graded-lex order.
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Plain polynomial product, no reduction.
    pub fn mul(&self, base: &Base, o: &MultiPoly) -> MultiPoly {
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                accumulate(base, &mut acc, ma.mul(mb), base.mul(ca, cb));
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms: acc.into_iter().collect(),
        }
    }

    /// Re-indexes variables: `map[i]` is the new index of old variable `i`.
    pub fn reindex(&self, base: &Base, new_nvars: usize, map: &[usize]) -> MultiPoly {
        MultiPoly::from_terms(
            base,
            new_nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = Monomial::one(new_nvars);
                for (i, &x) in m.0.iter().enumerate() {
                    e.0[map[i]] += x;
                }
                (e, c.clone())
            }),
        )
    }

    /// Maps every coefficient into another base.
    pub fn map_base(&self, from: &Base, to: &Base) -> crate::Result<MultiPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), from.map_coeff(c, to)?));
        }
        Ok(MultiPoly::from_terms(to, self.nvars, terms))
    }
}

pub(crate) fn accumulate(base: &Base, acc: &mut BTreeMap<Monomial, Coeff>, m: Monomial, c: Coeff) {
    if base.is_zero(&c) {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = base.add(o.get(), &c);
            if base.is_zero(&s) {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        // vars (a, x, y)
        let a2 = Monomial::from_exps(&[2, 0, 0]);
        let xy = Monomial::from_exps(&[0, 1, 1]);
        let x = Monomial::from_exps(&[0, 1, 0]);
        let a = Monomial::from_exps(&[1, 0, 0]);
        assert!(a2 > xy);
        assert!(xy > x);
        assert!(a > x);
        assert!(Monomial::one(3) < x);
    }

    #[test]
    fn add_cancels() {
        let b = Base::ModN(2);
        let x = MultiPoly::var(&b, 2, 0);
        assert!(x.add(&b, &x).is_zero());
        let y = MultiPoly::var(&b, 2, 1);
        let p = x.add(&b, &y);
        assert_eq!(p.len(), 2);
        assert!(p.terms()[0].0 < p.terms()[1].0);
    }

    #[test]
    fn product_char_two() {
        let b = Base::ModN(2);
        let one = MultiPoly::constant(&b, 1, b.one());
        let x = MultiPoly::var(&b, 1, 0);
        let p = one.add(&b, &x);
        // (1+x)^2 = 1 + x^2 over F2
        let sq = p.mul(&b, &p);
        assert_eq!(sq.len(), 2);
        assert_eq!(sq.lead().unwrap().0, Monomial::from_exps(&[2]));
    }
}
