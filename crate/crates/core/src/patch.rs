//! Milnor squares `A = P/(I J)`, `B = P/I`, `C = P/J`, `D = P/(I + J)`,
//! idempotents of patched modules, and the free patching lemma.
//!
//! Naming follows the square `A -> C -> D`, `A -> B -> D` with
//! `psi: B -> D` and `phi: C -> D`.

use std::sync::Arc;

use crate::elem::{whitehead_double, ElemWord};
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::mat::Mat;
use crate::parse::parse_terms;
use crate::poly::{Monomial, MultiPoly};
use crate::pseudo::PseudoCert;
use crate::ring::{oriented_rule, Rule, RingElem, RingSpec};

const TRACKED_STEP_LIMIT: usize = 1_000_000;

/// A rewrite rule of `D` with the `I`-component of `lead - rhs`:
/// `lead - rhs - i_part` lies in `J`.
#[derive(Clone, Debug)]
struct TrackedRule {
    rule: Rule,
    i_part: MultiPoly,
}

#[derive(Clone, Debug)]
pub struct MilnorSquare {
    ambient: Arc<RingSpec>,
    i_gens: Vec<String>,
    j_gens: Vec<String>,
    a: Arc<RingSpec>,
    b: Arc<RingSpec>,
    c: Arc<RingSpec>,
    d: Arc<RingSpec>,
    to_b: RingHom,
    to_c: RingHom,
    psi: RingHom,
    phi: RingHom,
    d_rules: Vec<TrackedRule>,
}

/// Generator with an optional preferred leading monomial (its first
/// written term) and its `I`-component.
struct Gen {
    poly: MultiPoly,
    hint: Option<Monomial>,
    i_part: MultiPoly,
}

fn parse_gen(p: &Arc<RingSpec>, src: &str) -> Result<(MultiPoly, Option<Monomial>)> {
    let terms = parse_terms(src, p.vars(), p.base())?;
    let hint = match terms.first().map(|t| t.terms()) {
        Some([(m, _)]) => Some(m.clone()),
        _ => None,
    };
    let poly = terms
        .iter()
        .fold(MultiPoly::zero(p.nvars()), |acc, t| acc.add(p.base(), t));
    Ok((p.reduce(&poly)?, hint))
}

/// Reduces `f` by the tracked rules, killing truncated monomials; returns the
/// remainder and the accumulated `I`-component of what was subtracted.
fn tracked_reduce(p: &Arc<RingSpec>, rules: &[TrackedRule], f: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
    let base = p.base();
    let nv = p.nvars();
    let trunc = p.truncation();
    let mut cur = f.clone();
    let mut acc = MultiPoly::zero(nv);
    let mut done = MultiPoly::zero(nv);
    for _ in 0..TRACKED_STEP_LIMIT {
        let Some((m, c)) = cur.terms().last().cloned() else {
            return Ok((done, acc));
        };
        let single = MultiPoly::monomial(base, m.clone(), c.clone());
        cur = cur.sub(base, &single);
        if trunc.is_some_and(|t| m.degree_in(&t.vars) >= t.order as u64) {
            continue;
        }
        match rules.iter().find(|r| r.rule.lead.divides(&m)) {
            Some(r) => {
                let q = r.rule.lead.quotient_of(&m);
                cur = cur.add(base, &r.rule.rhs.mul_monomial(base, &q, &c));
                acc = acc.add(base, &r.i_part.mul_monomial(base, &q, &c));
            }
            None => done = done.add(base, &single),
        }
    }
    Err(Error::NonTerminating(TRACKED_STEP_LIMIT))
}

/// Orients generators one at a time against the rules found so far.
fn complete(p: &Arc<RingSpec>, gens: Vec<Gen>) -> Result<(Arc<RingSpec>, Vec<TrackedRule>)> {
    let base = p.base();
    let mut rules: Vec<TrackedRule> = p
        .rules()
        .iter()
        .map(|r| TrackedRule {
            rule: r.clone(),
            i_part: MultiPoly::zero(p.nvars()),
        })
        .collect();
    let mut added = Vec::new();
    for g in gens {
        let (rem, acc) = tracked_reduce(p, &rules, &g.poly)?;
        if rem.is_zero() {
            continue;
        }
        let rule = oriented_rule(&rem, g.hint.as_ref(), base).ok_or_else(|| {
            Error::UnsupportedSpec(format!(
                "cannot orient {} into a rewrite rule",
                crate::parse::format_poly(&rem, p.vars(), base)
            ))
        })?;
        let kappa = base
            .inverse(rem.coeff_of(&rule.lead).expect("lead occurs"))
            .expect("unit lead");
        let i_part = g.i_part.sub(base, &acc).scale(base, &kappa);
        added.push(rule.clone());
        rules.push(TrackedRule { rule, i_part });
    }
    Ok((p.quotient_by::<&str>(&[], added)?, rules))
}

impl MilnorSquare {
    /// The square of quotients of `ambient` by `I` and `J`. The caller
    /// asserts `I ∩ J = I J`.
    pub fn from_ideals(ambient: &Arc<RingSpec>, i_gens: &[&str], j_gens: &[&str]) -> Result<MilnorSquare> {
        let base = ambient.base();
        let zero = MultiPoly::zero(ambient.nvars());
        let is = i_gens.iter().map(|s| parse_gen(ambient, s)).collect::<Result<Vec<_>>>()?;
        let js = j_gens.iter().map(|s| parse_gen(ambient, s)).collect::<Result<Vec<_>>>()?;
        let gen = |(poly, hint): &(MultiPoly, Option<Monomial>), i_part: MultiPoly| Gen {
            poly: poly.clone(),
            hint: hint.clone(),
            i_part,
        };
        let mut products = Vec::new();
        for (pi, hi) in &is {
            for (pj, hj) in &js {
                let hint = match (hi, hj) {
                    (Some(a), Some(b)) => Some(a.mul(b)),
                    _ => None,
                };
                products.push(Gen {
                    poly: ambient.reduce(&pi.mul(base, pj))?,
                    hint,
                    i_part: zero.clone(),
                });
            }
        }
        let (a, _) = complete(ambient, products)?;
        let (b, _) = complete(ambient, is.iter().map(|g| gen(g, zero.clone())).collect())?;
        let (c, _) = complete(ambient, js.iter().map(|g| gen(g, zero.clone())).collect())?;
        let d_gens = is
            .iter()
            .map(|g| gen(g, g.0.clone()))
            .chain(js.iter().map(|g| gen(g, zero.clone())))
            .collect();
        let (d, d_rules) = complete(ambient, d_gens)?;
        Ok(MilnorSquare {
            ambient: ambient.clone(),
            i_gens: i_gens.iter().map(|s| s.to_string()).collect(),
            j_gens: j_gens.iter().map(|s| s.to_string()).collect(),
            to_b: RingHom::by_names(&a, &b)?,
            to_c: RingHom::by_names(&a, &c)?,
            psi: RingHom::by_names(&b, &d)?,
            phi: RingHom::by_names(&c, &d)?,
            a,
            b,
            c,
            d,
            d_rules,
        })
    }

    /// `C0[x,y]/(xy)` over `C0[x]` and `C0[y]`, glued along `C0`.
    pub fn cross_square(c0: &Arc<RingSpec>) -> Result<MilnorSquare> {
        let p = c0.adjoin(&["x", "y"])?;
        MilnorSquare::from_ideals(&p, &["y"], &["x"])
    }

    /// `k[a,x,y,t]/(t^2 - t(xy - a^l))` over two copies of `k[a,x,y]`
    /// (`t -> 0` and `t -> xy - a^l`), glued along `k[a,x,y]/(xy - a^l)`.
    pub fn murthy_square(k: &Arc<RingSpec>, l: u32) -> Result<MilnorSquare> {
        if l < 2 {
            return Err(Error::Input("the exponent must be at least 2".into()));
        }
        let p = k.adjoin(&["a", "x", "y", "t"])?;
        MilnorSquare::from_ideals(&p, &["t"], &[&format!("t - (x*y - a^{l})")])
    }

    pub fn ambient(&self) -> &Arc<RingSpec> {
        &self.ambient
    }

    pub fn i_gens(&self) -> &[String] {
        &self.i_gens
    }

    pub fn j_gens(&self) -> &[String] {
        &self.j_gens
    }

    pub fn a(&self) -> &Arc<RingSpec> {
        &self.a
    }

    pub fn b(&self) -> &Arc<RingSpec> {
        &self.b
    }

    pub fn c(&self) -> &Arc<RingSpec> {
        &self.c
    }

    pub fn d(&self) -> &Arc<RingSpec> {
        &self.d
    }

    pub fn to_b(&self) -> &RingHom {
        &self.to_b
    }

    pub fn to_c(&self) -> &RingHom {
        &self.to_c
    }

    pub fn psi(&self) -> &RingHom {
        &self.psi
    }

    pub fn phi(&self) -> &RingHom {
        &self.phi
    }

    /// The element of `A` with images `b` and `c`, which must agree in `D`.
    pub fn glue(&self, b: &RingElem, c: &RingElem) -> Result<RingElem> {
        let base = self.ambient.base();
        let bp = b.reinterpret(&self.ambient)?;
        let cp = c.reinterpret(&self.ambient)?;
        let (rem, acc) = tracked_reduce(&self.ambient, &self.d_rules, &bp.poly().sub(base, cp.poly()))?;
        if !rem.is_zero() {
            return Err(Error::Input(format!("{b} and {c} differ in D")));
        }
        let a = RingElem::from_poly(&self.a, &bp.poly().sub(base, &acc))?;
        if self.to_b.apply(&a)? != *b || self.to_c.apply(&a)? != *c {
            return Err(Error::SelfCheck(format!("glued element {a} does not project to ({b}, {c})")));
        }
        Ok(a)
    }

    pub fn glue_mat(&self, b: &Mat<RingElem>, c: &Mat<RingElem>) -> Result<Mat<RingElem>> {
        if b.size() != c.size() {
            return Err(Error::SizeMismatch("glued matrices differ in size".into()));
        }
        let entries = b
            .entries()
            .iter()
            .zip(c.entries())
            .map(|(x, y)| self.glue(x, y))
            .collect::<Result<Vec<_>>>()?;
        Mat::new(b.size(), entries)
    }

    /// Representative lift along `psi`.
    pub fn lift_to_b(&self, z: &RingElem) -> Result<RingElem> {
        let l = z.reinterpret(&self.b)?;
        if self.psi.apply(&l)? != *z {
            return Err(Error::LiftFailure(format!("{z} has no representative preimage in B")));
        }
        Ok(l)
    }
}

/// Gluing matrix `sigma` over `D` of a rank-`r` patching datum.
#[derive(Clone, Debug)]
pub struct PatchDatum {
    pub square: Arc<MilnorSquare>,
    pub sigma: Mat<RingElem>,
}

impl PatchDatum {
    pub fn new(square: &Arc<MilnorSquare>, sigma: Mat<RingElem>) -> Result<PatchDatum> {
        sigma.check_spec(square.d())?;
        let det = sigma.det();
        if det.is_unit()?.is_none() {
            return Err(Error::NotInvertible(format!("determinant {det} is not a unit")));
        }
        Ok(PatchDatum {
            square: square.clone(),
            sigma,
        })
    }

    pub fn rank(&self) -> usize {
        self.sigma.size()
    }
}

/// Idempotent over `A` of the patched module, with the lifted Whitehead
/// word it came from.
#[derive(Clone, Debug)]
pub struct ProjIdem {
    pub p: Mat<RingElem>,
    pub word: ElemWord<RingElem>,
    pub omega: Mat<RingElem>,
    pub omega_inv: Mat<RingElem>,
}

fn standard_idem(spec: &Arc<RingSpec>, r: usize) -> Mat<RingElem> {
    let one = RingElem::one(spec);
    let zero = RingElem::zero(spec);
    let d: Vec<RingElem> = (0..2 * r).map(|i| if i < r { one.clone() } else { zero.clone() }).collect();
    Mat::diag(&d)
}

/// Chooses a preimage in `B` of an element of `D`.
pub type LiftFn<'a> = &'a dyn Fn(&RingElem) -> Result<RingElem>;

/// `p` with `B`-image `omega^-1 diag(I, 0) omega` and `C`-image `diag(I, 0)`,
/// `omega` a lift of the Whitehead word of `diag(sigma, sigma^-1)`.
pub fn build_idempotent(
    datum: &PatchDatum,
    lift: Option<LiftFn<'_>>,
) -> Result<ProjIdem> {
    let sq = &datum.square;
    let r = datum.rank();
    let w = whitehead_double(&datum.sigma)?;
    let word = w.try_map(|z| {
        let l = match lift {
            Some(f) => f(z).map_err(|e| Error::LiftFailure(e.to_string()))?,
            None => sq.lift_to_b(z)?,
        };
        if sq.psi().apply(&l)? != *z {
            return Err(Error::LiftFailure(format!("preimage of {z} does not project back")));
        }
        Ok(l)
    })?;
    let omega = word.to_mat_in(sq.b());
    let omega_inv = word.inverse().to_mat_in(sq.b());
    let pb = omega_inv.mul(&standard_idem(sq.b(), r))?.mul(&omega)?;
    let p = sq.glue_mat(&pb, &standard_idem(sq.c(), r))?;
    if p.mul(&p)? != p {
        return Err(Error::SelfCheck("patched idempotent is not idempotent".into()));
    }
    Ok(ProjIdem {
        p,
        word,
        omega,
        omega_inv,
    })
}

/// `diag(t, 1, .., 1)`.
fn det_corrector(t: &RingElem, r: usize) -> Mat<RingElem> {
    let mut m = Mat::identity(r, &t.one_like());
    m.set(0, 0, t.clone());
    m
}

/// Given trivializations with `psi(tau0) = phi(tau1) sigma`, returns
/// `(sigma1, sigma0)` of determinant one with `phi(sigma1) psi(sigma0) = sigma`.
pub fn free_patch_factor(
    datum: &PatchDatum,
    tau0: &Mat<RingElem>,
    tau1: &Mat<RingElem>,
) -> Result<(Mat<RingElem>, Mat<RingElem>)> {
    let sq = &datum.square;
    tau0.check_spec(sq.b())?;
    tau1.check_spec(sq.c())?;
    let r = datum.rank();
    if tau0.size() != r || tau1.size() != r {
        return Err(Error::SizeMismatch("trivializations must match the rank".into()));
    }
    if tau0.apply_hom(sq.psi())? != tau1.apply_hom(sq.phi())?.mul(&datum.sigma)? {
        return Err(Error::NotATrivialization);
    }
    let d0 = tau0.det();
    let d1 = tau1.det();
    let d0_inv = d0
        .is_unit()?
        .ok_or_else(|| Error::NotInvertible(format!("det(tau0) = {d0}")))?;
    let sigma0 = det_corrector(&d0_inv, r).mul(tau0)?;
    let sigma1 = tau1.adjugate_inverse()?.mul(&det_corrector(&d1, r))?;
    if !sigma0.det().is_one() || !sigma1.det().is_one() {
        return Err(Error::SelfCheck("normalized factors do not have determinant 1".into()));
    }
    if sigma1.apply_hom(sq.phi())?.mul(&sigma0.apply_hom(sq.psi())?)? != datum.sigma {
        return Err(Error::SelfCheck("phi(sigma1) psi(sigma0) != sigma".into()));
    }
    Ok((sigma1, sigma0))
}

/// Lifts a certificate for `sigma` along `psi`; returns `(tau0, tau1)` with
/// `tau1 = I`, showing the patched module is free.
pub fn pseudo_patch_free(datum: &PatchDatum, cert: &PseudoCert<RingElem>) -> Result<(Mat<RingElem>, Mat<RingElem>)> {
    let sq = &datum.square;
    if !cert.verify(&datum.sigma)? {
        return Err(Error::CertInvalid("certificate does not evaluate to sigma".into()));
    }
    let lifted = cert.lift_surjection(&RingElem::one(sq.b()), |z| sq.lift_to_b(z), |w| sq.psi().apply(w))?;
    let tau0 = lifted.image();
    if tau0.apply_hom(sq.psi())? != datum.sigma {
        return Err(Error::SelfCheck("lifted certificate does not project to sigma".into()));
    }
    Ok((tau0, Mat::identity_in(sq.c(), datum.rank())))
}

/// For `tau0` over `B` with `psi(tau0) = sigma`, an invertible `Q` over `A`
/// with `Q p Q^-1 = diag(I, 0)`; returns `(Q, Q^-1)`.
pub fn free_basis(datum: &PatchDatum, idem: &ProjIdem, tau0: &Mat<RingElem>) -> Result<(Mat<RingElem>, Mat<RingElem>)> {
    let sq = &datum.square;
    let r = datum.rank();
    let inv = tau0.adjugate_inverse()?;
    let qb = Mat::block_diag(&inv, tau0)?.mul(&idem.omega)?;
    let qb_inv = idem.omega_inv.mul(&Mat::block_diag(tau0, &inv)?)?;
    let id_c = Mat::identity_in(sq.c(), 2 * r);
    let q = sq.glue_mat(&qb, &id_c)?;
    let q_inv = sq.glue_mat(&qb_inv, &id_c)?;
    if !q.mul(&q_inv)?.is_identity() {
        return Err(Error::SelfCheck("glued basis change is not invertible".into()));
    }
    if q.mul(&idem.p)?.mul(&q_inv)? != standard_idem(sq.a(), r) {
        return Err(Error::SelfCheck("basis change does not diagonalize the idempotent".into()));
    }
    Ok((q, q_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Base;
    use crate::elem::ElemGen;

    fn f2() -> Arc<RingSpec> {
        RingSpec::polynomial(Base::ModN(2), &[] as &[&str])
    }

    #[test]
    fn cross_square_shape() {
        let sq = MilnorSquare::cross_square(&f2()).unwrap();
        assert!(RingElem::parse(sq.a(), "x*y").unwrap().is_zero());
        assert!(RingElem::parse(sq.b(), "y").unwrap().is_zero());
        assert!(!RingElem::parse(sq.b(), "x").unwrap().is_zero());
        assert!(RingElem::parse(sq.d(), "x + y").unwrap().is_zero());
        let b = RingElem::parse(sq.b(), "1 + x^2").unwrap();
        let c = RingElem::parse(sq.c(), "1 + y").unwrap();
        assert_eq!(sq.glue(&b, &c).unwrap(), RingElem::parse(sq.a(), "1 + x^2 + y").unwrap());
        assert!(sq.glue(&b, &RingElem::parse(sq.c(), "y").unwrap()).is_err());
    }

    #[test]
    fn murthy_square_shape() {
        let sq = MilnorSquare::murthy_square(&f2(), 2).unwrap();
        let t2 = RingElem::parse(sq.a(), "t^2").unwrap();
        assert_eq!(t2, RingElem::parse(sq.a(), "t*(x*y - a^2)").unwrap());
        assert!(RingElem::parse(sq.a(), "t*(t - (x*y - a^2))").unwrap().is_zero());
        let t = RingElem::parse(sq.a(), "t").unwrap();
        assert!(sq.psi().apply(&sq.to_b().apply(&t).unwrap()).unwrap().is_zero());
        assert!(sq.phi().apply(&sq.to_c().apply(&t).unwrap()).unwrap().is_zero());
        assert_eq!(sq.to_c().apply(&t).unwrap(), RingElem::parse(sq.c(), "x*y + a^2").unwrap());
        let b = RingElem::parse(sq.b(), "x^2*y + a").unwrap();
        let c = RingElem::parse(sq.c(), "x*a^2 + a").unwrap();
        let g = sq.glue(&b, &c).unwrap();
        assert_eq!(g, RingElem::parse(sq.a(), "x^2*y + a + x*t").unwrap());
    }

    #[test]
    fn identity_datum() {
        let sq = Arc::new(MilnorSquare::cross_square(&f2()).unwrap());
        let d = PatchDatum::new(&sq, Mat::identity_in(sq.d(), 2)).unwrap();
        let p = build_idempotent(&d, None).unwrap();
        assert_eq!(p.p, standard_idem(sq.a(), 2));
    }

    #[test]
    fn elementary_datum_on_murthy() {
        let k = f2();
        let sq = Arc::new(MilnorSquare::murthy_square(&k, 2).unwrap());
        let z = RingElem::parse(sq.d(), "x + a*y").unwrap();
        let sigma = ElemGen::new(1, 2, z.clone()).to_mat(2);
        let d = PatchDatum::new(&sq, sigma).unwrap();
        let idem = build_idempotent(&d, None).unwrap();
        assert_eq!(idem.p.mul(&idem.p).unwrap(), idem.p);
        assert!(idem.p.trace() == RingElem::from_i64(sq.a(), 2));
        let cert = PseudoCert::from_elem_word(&ElemWord::new(2, vec![ElemGen::new(1, 2, z)]).unwrap(), &RingElem::one(sq.d())).unwrap();
        let (tau0, tau1) = pseudo_patch_free(&d, &cert).unwrap();
        assert!(tau1.is_identity());
        free_basis(&d, &idem, &tau0).unwrap();
    }

    #[test]
    fn free_patch_factor_cases() {
        let sq = Arc::new(MilnorSquare::cross_square(&RingSpec::polynomial(Base::ModN(3), &["s"])).unwrap());
        let beta = Mat::parse(sq.b(), &[vec!["1", "x + s"], vec!["0", "1"]]).unwrap();
        let gamma = Mat::parse(sq.c(), &[vec!["1", "0"], vec!["y + 1", "1"]]).unwrap();
        let sigma = gamma.apply_hom(sq.phi()).unwrap().mul(&beta.apply_hom(sq.psi()).unwrap()).unwrap();
        let d = PatchDatum::new(&sq, sigma).unwrap();
        let (s1, s0) = free_patch_factor(&d, &beta, &gamma.adjugate_inverse().unwrap()).unwrap();
        assert_eq!(s1.apply_hom(sq.phi()).unwrap().mul(&s0.apply_hom(sq.psi()).unwrap()).unwrap(), d.sigma);
        let id = Mat::identity_in(sq.c(), 2);
        assert_eq!(free_patch_factor(&d, &beta, &id).unwrap_err(), Error::NotATrivialization);
    }
}
