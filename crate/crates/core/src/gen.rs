//! Seeded random instances for tests, the acceptance suite and benchmarks.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::{Base, Coeff};
use crate::elem::{ElemGen, ElemWord};
use crate::poly::{Monomial, MultiPoly};
use crate::ring::{RingElem, RingSpec};
use crate::symplectic::{SpGen, SpWord};
use crate::univ::UnivPoly;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over `Z/n`; small integers or fractions otherwise.
pub fn coeff<R: Rng>(rng: &mut R, base: &Base) -> Coeff {
    match base {
        Base::ModN(n) => base.from_i64(rng.gen_range(0..*n) as i64),
        Base::Integers => base.from_i64(rng.gen_range(-3..=3)),
        Base::Rationals => base
            .from_fraction(&BigInt::from(rng.gen_range(-3..=3)), &BigInt::from(rng.gen_range(1..=3)))
            .expect("nonzero denominator"),
    }
}

/// Up to `nterms` random terms in the variables `vars` (indices into the
/// spec), each of total degree at most `max_deg`.
pub fn elem_in<R: Rng>(rng: &mut R, spec: &Arc<RingSpec>, vars: &[usize], max_deg: u32, nterms: usize) -> RingElem {
    let n = spec.nvars();
    let base = spec.base();
    let mut terms = Vec::with_capacity(nterms);
    for _ in 0..nterms {
        let mut exps = vec![0u32; n];
        if !vars.is_empty() {
            let d = rng.gen_range(0..=max_deg);
            for _ in 0..d {
                exps[vars[rng.gen_range(0..vars.len())]] += 1;
            }
        }
        terms.push((Monomial::from_exps(&exps), coeff(rng, base)));
    }
    RingElem::from_poly(spec, &MultiPoly::from_terms(base, n, terms)).expect("normal form exists")
}

pub fn elem<R: Rng>(rng: &mut R, spec: &Arc<RingSpec>, max_deg: u32, nterms: usize) -> RingElem {
    let all: Vec<usize> = (0..spec.nvars()).collect();
    elem_in(rng, spec, &all, max_deg, nterms)
}

/// Random element of the ideal generated by `g`.
pub fn multiple_of<R: Rng>(rng: &mut R, g: &RingElem, max_deg: u32, nterms: usize) -> RingElem {
    g * &elem(rng, g.spec(), max_deg, nterms)
}

fn index_pair<R: Rng>(rng: &mut R, n: usize) -> (usize, usize) {
    let i = rng.gen_range(1..=n);
    let mut j = rng.gen_range(1..n);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Word of `len` generators with parameters from `param`.
pub fn elem_word_with<R: Rng>(
    rng: &mut R,
    r: usize,
    len: usize,
    mut param: impl FnMut(&mut R) -> RingElem,
) -> ElemWord<RingElem> {
    let gens = (0..len)
        .map(|_| {
            let (i, j) = index_pair(rng, r);
            ElemGen::new(i, j, param(rng))
        })
        .collect();
    ElemWord::new(r, gens).expect("indices in range")
}

pub fn elem_word<R: Rng>(rng: &mut R, spec: &Arc<RingSpec>, r: usize, len: usize, max_deg: u32) -> ElemWord<RingElem> {
    elem_word_with(rng, r, len, |rng| elem(rng, spec, max_deg, 2))
}

pub fn sp_word<R: Rng>(rng: &mut R, spec: &Arc<RingSpec>, r: usize, len: usize, max_deg: u32) -> SpWord<RingElem> {
    let gens = (0..len)
        .map(|_| {
            let (i, j) = index_pair(rng, 2 * r);
            SpGen::new(i, j, elem(rng, spec, max_deg, 2))
        })
        .collect();
    SpWord::new(r, gens).expect("indices in range")
}

/// Polynomial in `t` of exact degree `deg` when `monic`, at most `deg`
/// otherwise.
pub fn univ<R: Rng>(rng: &mut R, spec: &Arc<RingSpec>, t: &str, deg: usize, monic: bool, max_deg: u32) -> UnivPoly {
    let mut coeffs: Vec<RingElem> = (0..=deg).map(|_| elem(rng, spec, max_deg, 2)).collect();
    if monic {
        coeffs[deg] = RingElem::one(spec);
    }
    UnivPoly::new(spec, t, coeffs)
}
