//! Explicit factorization identities for 2x2 and r x r matrices.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::elem::{right_mul_elem, ElemGen, ElemWord};
use crate::error::{Error, Result};
use crate::loc::LocFraction;
use crate::mat::Mat;
use crate::pseudo::PseudoCert;
use crate::ring::{RingElem, RingSpec};
use crate::scalar::{from_bigint, Scalar};

/// Which elementary generator is conjugated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `gamma e21(s) gamma^-1`, parametrized by the second column `(b, d)`.
    Lower,
    /// `gamma e12(s) gamma^-1`, parametrized by the first column `(a, c)`.
    Upper,
}

/// Closed form of the conjugate of `e21(s)` (or `e12(s)`) by any `gamma`
/// in `SL_2` with the given column `(p, q)`.
pub fn conjugate_closed_form<E: Scalar>(p: &E, q: &E, s: &E, side: Side) -> Mat<E> {
    let one = p.one_like();
    let spq = s.mul(&p.mul(q));
    let (a, b, c, d) = match side {
        Side::Lower => (
            one.add(&spq),
            s.mul(&p.mul(p)).neg(),
            s.mul(&q.mul(q)),
            one.sub(&spq),
        ),
        Side::Upper => (
            one.sub(&spq),
            s.mul(&p.mul(p)),
            s.mul(&q.mul(q)).neg(),
            one.add(&spq),
        ),
    };
    Mat::new(2, vec![a, b, c, d]).expect("2x2")
}

/// `gamma e21(t g) gamma^-1` over `A[t]` in closed form, where `(b, d)` is
/// the second column of `gamma` (first column `(a, c)` for [`Side::Upper`]).
/// `b` and `d` are read in the ring of `g` by variable name.
pub fn suslin_conjugate(b: &RingElem, d: &RingElem, g: &RingElem, t: &str, side: Side) -> Result<Mat<RingElem>> {
    let spec = g.spec();
    let tv = RingElem::var(spec, t)?;
    let s = &tv * g;
    Ok(conjugate_closed_form(&b.coerce(spec)?, &d.coerce(spec)?, &s, side))
}

/// `[[1 + xyz, -x^2 z], [y^2 z, 1 - xyz]]`.
pub fn mennicke_core<E: Scalar>(x: &E, y: &E, z: &E) -> Mat<E> {
    conjugate_closed_form(x, y, z, Side::Lower)
}

/// One conjugated factor `sigma e(b) sigma^-1` of the regrouped product.
#[derive(Clone, Debug)]
pub struct Conjugated<E: Scalar = RingElem> {
    pub sigma: Mat<E>,
    pub gen: ElemGen<E>,
}

impl<E: Scalar> Conjugated<E> {
    pub fn to_mat(&self, sigma_inv: &Mat<E>) -> Mat<E> {
        let r = self.sigma.size();
        self.sigma
            .mul(&self.gen.to_mat(r))
            .and_then(|m| m.mul(sigma_inv))
            .expect("sizes agree")
    }
}

/// Conjugated factors with their `sigma_k^-1`, and the tail word.
pub type Regrouped<E> = (Vec<(Conjugated<E>, Mat<E>)>, ElemWord<E>);

/// Rewrites `e(c_1) ... e(c_m)` with `c_k = b_k + a_k` as
/// `prod_{k=m..1} sigma_k e(b_k) sigma_k^-1 * prod_{k=1..m} e(a_k)` where
/// `sigma_k = e(c_1) ... e(c_{k-1})`. Factors are returned in product order
/// (`k = m` first), each with `sigma_k^-1` precomputed by the word inverse.
pub fn regroup_word<E: Scalar>(
    w: &ElemWord<E>,
    split: &[(E, E)],
    one: &E,
) -> Result<Regrouped<E>> {
    if split.len() != w.len() {
        return Err(Error::SplitLengthMismatch {
            split: split.len(),
            word: w.len(),
        });
    }
    for (g, (b, a)) in w.gens.iter().zip(split) {
        if b.add(a) != g.z {
            return Err(Error::Input(format!("{b} + {a} does not equal {}", g.z)));
        }
    }
    let mut factors = Vec::with_capacity(w.len());
    let mut prefix = Mat::identity(w.r, one);
    let mut prefix_inv = Mat::identity(w.r, one);
    for (g, (b, _)) in w.gens.iter().zip(split) {
        factors.push((
            Conjugated {
                sigma: prefix.clone(),
                gen: ElemGen::new(g.i, g.j, b.clone()),
            },
            prefix_inv.clone(),
        ));
        right_mul_elem(&mut prefix, g);
        let mut next_inv = g.inverse().to_mat(w.r);
        next_inv = next_inv.mul(&prefix_inv)?;
        prefix_inv = next_inv;
    }
    factors.reverse();
    let tail = ElemWord {
        r: w.r,
        gens: w
            .gens
            .iter()
            .zip(split)
            .map(|(g, (_, a))| ElemGen::new(g.i, g.j, a.clone()))
            .collect(),
    };
    Ok((factors, tail))
}

/// Product of a regrouped factorization.
pub fn regroup_product<E: Scalar>(factors: &[(Conjugated<E>, Mat<E>)], tail: &ElemWord<E>, one: &E) -> Mat<E> {
    let mut m = Mat::identity(tail.r, one);
    for (c, inv) in factors {
        m = m.mul(&c.to_mat(inv)).expect("sizes agree");
    }
    m.mul(&tail.to_mat(one)).expect("sizes agree")
}

/// `u f + v g = 1`.
#[derive(Clone, Debug)]
pub struct ComaxWitness {
    pub f: RingElem,
    pub g: RingElem,
    pub u: RingElem,
    pub v: RingElem,
}

impl ComaxWitness {
    pub fn new(f: RingElem, g: RingElem, u: RingElem, v: RingElem) -> Result<ComaxWitness> {
        let s = &(&u * &f) + &(&v * &g);
        if !s.is_one() {
            return Err(Error::NotComaximal(format!("u*f + v*g = {s}")));
        }
        Ok(ComaxWitness { f, g, u, v })
    }

    pub fn fg(&self) -> RingElem {
        &self.f * &self.g
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `c = x + y` with `x = n_x g^margin / f^k` and `y` over `A_g` with
/// exponent `k`, where `c = n / (fg)^k`, `k >= 1`. Returns `(n_x, y)`.
///
/// Expands `1 = (uf + vg)^(2k - 1 + margin)`; the terms with `f`-degree
/// below `k` go to `x`, the rest to `y`.
fn split_with_margin(c: &LocFraction, w: &ComaxWitness, margin: u32) -> Result<(RingElem, LocFraction)> {
    let k = c.exponent();
    debug_assert!(k >= 1);
    let n_total = 2 * k - 1 + margin;
    let one = c.num().one_like();
    let mut nx = one.zero_like();
    let mut ny = one.zero_like();
    for i in 0..=n_total {
        let coef = from_bigint(&one, &binomial(n_total, i));
        let ui = w.u.pow(i);
        let vj = w.v.pow(n_total - i);
        if i < k {
            // u^i f^i v^(N-i) g^(N-i) / (f^k g^k) = u^i v^(N-i) g^(N-i-k-margin) g^margin / f^(k-i)
            let t = &(&coef * &ui) * &(&vj * &(&w.f.pow(i) * &w.g.pow(n_total - i - k - margin)));
            nx = &nx + &t;
        } else {
            let t = &(&coef * &ui) * &(&vj * &(&w.f.pow(i - k) * &w.g.pow(n_total - i)));
            ny = &ny + &t;
        }
    }
    let nx = c.num() * &nx;
    let y = LocFraction::new(c.num() * &ny, w.g.clone(), k)?;
    Ok((nx, y))
}

fn check_witness(w: &ComaxWitness) -> Result<()> {
    let s = &(&w.u * &w.f) + &(&w.v * &w.g);
    if s.is_one() {
        Ok(())
    } else {
        Err(Error::NotComaximal(format!("u*f + v*g = {s}")))
    }
}

fn check_fg(c: &LocFraction, w: &ComaxWitness) -> Result<()> {
    if *c.den_base() != w.fg() {
        return Err(Error::DenominatorMismatch(format!(
            "expected denominator base {}, got {}",
            w.fg(),
            c.den_base()
        )));
    }
    Ok(())
}

/// `c = x + y` with `x` over `A_f`, `y` over `A_g`, both of the same
/// exponent as `c = n / (fg)^k`.
pub fn partial_fractions(c: &LocFraction, w: &ComaxWitness) -> Result<(LocFraction, LocFraction)> {
    check_witness(w)?;
    check_fg(c, w)?;
    if c.exponent() == 0 {
        return Ok((
            LocFraction::new(c.num().clone(), w.f.clone(), 0)?,
            LocFraction::new(c.num().zero_like(), w.g.clone(), 0)?,
        ));
    }
    let (nx, y) = split_with_margin(c, w, 0)?;
    let x = LocFraction::new(nx, w.f.clone(), c.exponent())?;
    let back = x.rebase(&w.g)?.frac_add(&y.rebase(&w.f)?)?;
    if !back.frac_eq(c)? {
        return Err(Error::SelfCheck("partial fractions do not sum back".into()));
    }
    Ok((x, y))
}

/// Generator count bound for [`radical_reduce`].
pub fn radical_length_bound(r: usize) -> usize {
    r * r + 6 * r
}

/// Word for `diag(v, v^-1)` in positions `k, k+1` (1-based).
fn diag_pair_word(w: &mut ElemWord<RingElem>, k: usize, v: &RingElem, v_inv: &RingElem) {
    let one = v.one_like();
    w.push(k, k + 1, v.clone());
    w.push(k + 1, k, -v_inv);
    w.push(k, k + 1, v.clone());
    w.push(k, k + 1, -&one);
    w.push(k + 1, k, one.clone());
    w.push(k, k + 1, -&one);
}

/// Elementary word for `sigma` in `SL_r` of a truncated ring with
/// `sigma = Id` modulo the truncation ideal.
///
/// Column operations with the unit pivots clear every off-diagonal entry;
/// the remaining determinant-one diagonal is written as a product of
/// `diag(v_k, v_k^-1)` blocks with `v_k = u_1 ... u_k`.
pub fn radical_reduce(sigma: &Mat<RingElem>) -> Result<ElemWord<RingElem>> {
    let r = sigma.size();
    let spec = sigma.spec().clone();
    if spec.truncation().is_none() {
        return Err(Error::UnsupportedSpec(format!("{spec} has no truncation ideal")));
    }
    for i in 0..r {
        for j in 0..r {
            let e = sigma.get(i, j);
            let d = if i == j { e - &e.one_like() } else { e.clone() };
            if !d.in_truncation_ideal() {
                return Err(Error::NotCongruentToIdentity);
            }
        }
    }
    if !sigma.det().is_one() {
        return Err(Error::NotInvertible("determinant is not 1".into()));
    }
    let mut m = sigma.clone();
    let mut cols = ElemWord::empty(r);
    for i in 0..r {
        let p = m.get(i, i).clone();
        let p_inv = p.is_unit()?.ok_or_else(|| Error::DiagonalNotUnit(p.to_string()))?;
        for j in 0..r {
            if j == i || m.get(i, j).is_zero() {
                continue;
            }
            let g = ElemGen::new(i + 1, j + 1, -&(m.get(i, j) * &p_inv));
            right_mul_elem(&mut m, &g);
            cols.gens.push(g);
        }
    }
    let mut word = ElemWord::empty(r);
    let mut v = RingElem::one(&spec);
    for k in 0..r.saturating_sub(1) {
        v = &v * m.get(k, k);
        if v.is_one() {
            continue;
        }
        let v_inv = v.is_unit()?.ok_or_else(|| Error::DiagonalNotUnit(v.to_string()))?;
        diag_pair_word(&mut word, k + 1, &v, &v_inv);
    }
    let word = word.concat(&cols.inverse());
    if word.to_mat_in(&spec) != *sigma {
        return Err(Error::SelfCheck("column reduction does not remultiply".into()));
    }
    Ok(word)
}

/// Output of [`zariski_split_2`]: `image(cert) * word_to_mat(tail) = eps`.
#[derive(Clone, Debug)]
pub struct ZariskiSplit {
    pub cert: PseudoCert<LocFraction>,
    pub tail: ElemWord<LocFraction>,
}

fn over_fg(c: &LocFraction, w: &ComaxWitness) -> Result<LocFraction> {
    let fg = w.fg();
    if *c.den_base() == fg {
        Ok(c.clone())
    } else if *c.den_base() == w.f {
        c.rebase(&w.g)
    } else if *c.den_base() == w.g {
        c.rebase(&w.f)
    } else {
        Err(Error::DenominatorMismatch(format!(
            "parameter {c} is not over f, g or fg"
        )))
    }
}

fn frac_one(den: &RingElem) -> Result<LocFraction> {
    LocFraction::from_elem(den.one_like(), den)
}

/// Splits a 2x2 elementary word over `A_fg` into a pseudoelementary
/// matrix over `A_f` times an elementary matrix over `A_g`.
pub fn zariski_split_2(eps: &ElemWord<LocFraction>, w: &ComaxWitness) -> Result<ZariskiSplit> {
    check_witness(w)?;
    if eps.r != 2 {
        return Err(Error::SizeMismatch("Zariski splitting is implemented for r = 2".into()));
    }
    let spec = w.f.spec().clone();
    if !spec.is_domain() {
        return Err(Error::NotADomain);
    }
    let one_f = frac_one(&w.f)?;
    let one_fg = frac_one(&w.fg())?;

    if eps.gens.iter().all(|g| *g.z.den_base() == w.f || g.z.exponent() == 0) {
        let wf = eps.try_map(|z| {
            if *z.den_base() == w.f {
                Ok(z.clone())
            } else {
                LocFraction::new(z.num().clone(), w.f.clone(), 0)
            }
        })?;
        let split = ZariskiSplit {
            cert: PseudoCert::from_elem_word(&wf, &one_f)?,
            tail: ElemWord::empty(2),
        };
        check_zariski(eps, &split, w, &one_fg)?;
        return Ok(split);
    }

    let params: Vec<LocFraction> = eps
        .gens
        .iter()
        .map(|g| {
            let c = over_fg(&g.z, w)?;
            Ok(c.with_exponent(c.exponent().max(1)))
        })
        .collect::<Result<_>>()?;
    let word_fg = ElemWord {
        r: 2,
        gens: eps
            .gens
            .iter()
            .zip(&params)
            .map(|(g, c)| ElemGen::new(g.i, g.j, c.clone()))
            .collect(),
    };

    // Common denominator exponent of every prefix product and its inverse.
    let mut j = 0u32;
    let mut prefix = Mat::identity(2, &one_fg);
    for g in &word_fg.gens {
        right_mul_elem(&mut prefix, g);
        for e in prefix.entries() {
            j = j.max(e.exponent());
        }
    }
    let margin = 2 * j;

    let mut split = Vec::with_capacity(params.len());
    let mut xs = Vec::with_capacity(params.len());
    for c in &params {
        let (nx, y) = split_with_margin(c, w, margin)?;
        // nx g^margin / f^k = nx g^(margin + k) / (fg)^k
        let x = LocFraction::new(&nx * &w.g.pow(margin + c.exponent()), w.fg(), c.exponent())?;
        let y_fg = y.rebase(&w.f)?;
        split.push((x, y_fg));
        xs.push((nx, c.exponent(), y));
    }
    let (factors, _) = regroup_word(&word_fg, &split, &one_fg)?;

    let mut cert = PseudoCert::identity(&one_f);
    // factors are in product order k = m..1; xs is indexed by k - 1
    for (idx, (conj, _)) in factors.iter().enumerate() {
        let k = params.len() - 1 - idx;
        let (nx, ek, _) = &xs[k];
        if nx.is_zero() {
            continue;
        }
        let (p, q) = match (conj.gen.i, conj.gen.j) {
            (2, 1) => (conj.sigma.get(0, 1), conj.sigma.get(1, 1)),
            _ => (conj.sigma.get(0, 0), conj.sigma.get(1, 0)),
        };
        let pn = p.with_exponent(j).num().clone();
        let qn = q.with_exponent(j).num().clone();
        let z = LocFraction::new(nx.clone(), w.f.clone(), ek + 2 * j)?;
        let as_f = |e: RingElem| LocFraction::from_elem(e, &w.f);
        let factor = if (conj.gen.i, conj.gen.j) == (2, 1) {
            PseudoCert::mennicke(as_f(pn)?, as_f(qn)?, z)
        } else {
            PseudoCert::mennicke(as_f(pn)?, as_f(qn)?, z.frac_neg())
        };
        cert = cert.compose(&factor);
    }
    let tail = ElemWord {
        r: 2,
        gens: eps
            .gens
            .iter()
            .zip(&xs)
            .filter(|(_, (_, _, y))| !y.is_zero())
            .map(|(g, (_, _, y))| ElemGen::new(g.i, g.j, y.clone()))
            .collect(),
    };
    let out = ZariskiSplit { cert, tail };
    check_zariski(eps, &out, w, &one_fg)?;
    Ok(out)
}

/// `image(cert) * tail == eps` over `A_fg`.
pub fn zariski_product(split: &ZariskiSplit, w: &ComaxWitness) -> Result<Mat<LocFraction>> {
    let one_g = frac_one(&w.g)?;
    let left = split.cert.image().try_map(|e| e.rebase(&w.g))?;
    let right = split.tail.to_mat(&one_g).try_map(|e| e.rebase(&w.f))?;
    left.mul(&right)
}

fn check_zariski(eps: &ElemWord<LocFraction>, split: &ZariskiSplit, w: &ComaxWitness, one_fg: &LocFraction) -> Result<()> {
    let target = eps.try_map(|z| over_fg(z, w))?.to_mat(one_fg);
    if zariski_product(split, w)? != target {
        return Err(Error::SelfCheck("Zariski factors do not remultiply".into()));
    }
    Ok(())
}

/// Convenience: a fraction `num / den^k` parsed in `spec`.
pub fn parse_fraction(spec: &Arc<RingSpec>, num: &str, den: &str, k: u32) -> Result<LocFraction> {
    LocFraction::new(RingElem::parse(spec, num)?, RingElem::parse(spec, den)?, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Base;

    #[test]
    fn suslin_trivial_cases() {
        let at = RingSpec::polynomial(Base::Integers, &["g", "t"]);
        let g = RingElem::var(&at, "g").unwrap();
        let zero = RingElem::zero(&at);
        let one = RingElem::one(&at);
        let m = suslin_conjugate(&zero, &one, &g, "t", Side::Lower).unwrap();
        assert_eq!(m, ElemGen::new(2, 1, RingElem::parse(&at, "t*g").unwrap()).to_mat(2));
        let m = suslin_conjugate(&(-&one), &zero, &one, "t", Side::Lower).unwrap();
        assert_eq!(m, ElemGen::new(1, 2, RingElem::parse(&at, "-t").unwrap()).to_mat(2));
    }

    #[test]
    fn suslin_matches_direct_conjugation() {
        // gamma = [[1 + 2y, y], [2, 1]] has det 1.
        let at = RingSpec::polynomial(Base::Integers, &["y", "g", "t"]);
        let p = |s: &str| RingElem::parse(&at, s).unwrap();
        let gamma = Mat::parse(&at, &[vec!["1 + 2*y", "y"], vec!["2", "1"]]).unwrap();
        let gi = gamma.adjugate_inverse().unwrap();
        let s = p("t*g");
        for (side, gen, (a, b)) in [
            (Side::Lower, ElemGen::new(2, 1, s.clone()), ((0, 1), (1, 1))),
            (Side::Upper, ElemGen::new(1, 2, s.clone()), ((0, 0), (1, 0))),
        ] {
            let direct = gamma.mul(&gen.to_mat(2)).unwrap().mul(&gi).unwrap();
            let closed = suslin_conjugate(gamma.get(a.0, a.1), gamma.get(b.0, b.1), &p("g"), "t", side).unwrap();
            assert_eq!(direct, closed);
        }
    }

    #[test]
    fn mennicke_values() {
        let z = RingSpec::polynomial(Base::Integers, &["x", "y", "z"]);
        let v = |s: &str| RingElem::parse(&z, s).unwrap();
        assert!(mennicke_core(&v("x"), &v("y"), &v("0")).is_identity());
        assert_eq!(
            mennicke_core(&v("1"), &v("1"), &v("1")),
            Mat::parse(&z, &[vec!["2", "-1"], vec!["1", "0"]]).unwrap()
        );
        assert!(mennicke_core(&v("x"), &v("y"), &v("z")).det().is_one());
    }

    #[test]
    fn regroup_small_cases() {
        let r = RingSpec::polynomial(Base::ModN(2), &["x"]);
        let one = RingElem::one(&r);
        let p = |s: &str| RingElem::parse(&r, s).unwrap();
        let w = ElemWord::new(2, vec![ElemGen::new(1, 2, p("x + 1")), ElemGen::new(2, 1, p("x^2"))]).unwrap();
        let split = vec![(p("x"), p("1")), (p("x^2 + x"), p("x"))];
        let (factors, tail) = regroup_word(&w, &split, &one).unwrap();
        assert_eq!(regroup_product(&factors, &tail, &one), w.to_mat(&one));
        assert!(factors.last().unwrap().0.sigma.is_identity());
        let zero_split = vec![(p("0"), p("x + 1")), (p("0"), p("x^2"))];
        let (factors, tail) = regroup_word(&w, &zero_split, &one).unwrap();
        assert_eq!(tail, w);
        assert_eq!(regroup_product(&factors, &tail, &one), w.to_mat(&one));
        assert!(matches!(
            regroup_word(&w, &split[..1], &one),
            Err(Error::SplitLengthMismatch { split: 1, word: 2 })
        ));
    }

    #[test]
    fn partial_fractions_over_integers() {
        let z = RingSpec::polynomial(Base::Integers, &["s"]);
        let v = |s: &str| RingElem::parse(&z, s).unwrap();
        let w = ComaxWitness::new(v("2"), v("3"), v("-1"), v("1")).unwrap();
        let c = LocFraction::new(v("1"), v("6"), 1).unwrap();
        let (x, y) = partial_fractions(&c, &w).unwrap();
        assert!(x.frac_eq(&LocFraction::new(v("1"), v("2"), 1).unwrap()).unwrap());
        assert!(y.frac_eq(&LocFraction::new(v("-1"), v("3"), 1).unwrap()).unwrap());
        let c0 = LocFraction::new(v("s + 4"), v("6"), 0).unwrap();
        let (x, y) = partial_fractions(&c0, &w).unwrap();
        assert_eq!(x.num(), c0.num());
        assert!(y.num().is_zero());
        assert!(matches!(
            ComaxWitness::new(v("2"), v("4"), v("1"), v("0")),
            Err(Error::NotComaximal(_))
        ));
    }

    #[test]
    fn radical_reduce_examples() {
        let r = RingSpec::truncated(Base::ModN(2), &["x"], &["x"], 5).unwrap();
        assert!(radical_reduce(&Mat::identity_in(&r, 2)).unwrap().is_empty());
        let e = ElemGen::new(1, 2, RingElem::var(&r, "x").unwrap()).to_mat(2);
        assert_eq!(radical_reduce(&e).unwrap().len(), 1);
        let m = Mat::parse(&r, &[vec!["1 + x", "x"], vec!["x", "1 + x"]]).unwrap();
        let w = radical_reduce(&m).unwrap();
        assert_eq!(w.to_mat_in(&r), m);
        assert!(w.len() <= radical_length_bound(2));
        let bad = Mat::parse(&r, &[vec!["1", "1"], vec!["0", "1"]]).unwrap();
        assert_eq!(radical_reduce(&bad).unwrap_err(), Error::NotCongruentToIdentity);
    }

    #[test]
    fn zariski_already_local() {
        let z = RingSpec::polynomial(Base::Integers, &["s"]);
        let v = |s: &str| RingElem::parse(&z, s).unwrap();
        let w = ComaxWitness::new(v("2"), v("3"), v("-1"), v("1")).unwrap();
        let eps = ElemWord::new(2, vec![ElemGen::new(1, 2, LocFraction::new(v("s"), v("2"), 1).unwrap())]).unwrap();
        let out = zariski_split_2(&eps, &w).unwrap();
        assert!(out.tail.is_empty());
        assert_eq!(out.cert.vars().len(), 1);
    }

    #[test]
    fn zariski_sixth() {
        let z = RingSpec::polynomial(Base::Integers, &["s"]);
        let v = |s: &str| RingElem::parse(&z, s).unwrap();
        let w = ComaxWitness::new(v("2"), v("3"), v("-1"), v("1")).unwrap();
        let eps = ElemWord::new(2, vec![ElemGen::new(1, 2, LocFraction::new(v("1"), v("6"), 1).unwrap())]).unwrap();
        let out = zariski_split_2(&eps, &w).unwrap();
        let target = eps.to_mat(&LocFraction::from_elem(v("1"), &v("6")).unwrap());
        assert_eq!(zariski_product(&out, &w).unwrap(), target);
    }

    #[test]
    fn zariski_two_generators_over_f2s() {
        let r = RingSpec::polynomial(Base::ModN(2), &["s"]);
        let v = |s: &str| RingElem::parse(&r, s).unwrap();
        let w = ComaxWitness::new(v("s"), v("1 + s"), v("1"), v("1")).unwrap();
        let fg = w.fg();
        let eps = ElemWord::new(
            2,
            vec![
                ElemGen::new(1, 2, LocFraction::new(v("1 + s^2"), fg.clone(), 1).unwrap()),
                ElemGen::new(2, 1, LocFraction::new(v("s^3 + 1"), fg.clone(), 2).unwrap()),
            ],
        )
        .unwrap();
        let out = zariski_split_2(&eps, &w).unwrap();
        assert!(out.cert.sigma_prime().det().is_one());
        let target = eps.to_mat(&LocFraction::from_elem(v("1"), &fg).unwrap());
        assert_eq!(zariski_product(&out, &w).unwrap(), target);
    }
}
