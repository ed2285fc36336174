//! Henselian pairs in their truncated incarnation `(R, I)` with `I^N = 0`:
//! N-polynomial roots, Hensel factorization, monic-unit splitting, the unit
//! witness for the overring `A[x,y]/(xy - alpha)`, and Nisnevich builders.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::poly::{Monomial, MultiPoly};
use crate::ring::{Rule, RingElem, RingSpec};
use crate::univ::{ext_gcd, UnivPoly};

/// A truncated ring `R` with `I` the ideal of truncated variables.
#[derive(Clone, Debug)]
pub struct TruncPair {
    spec: Arc<RingSpec>,
    residue: Arc<RingSpec>,
    order: u32,
}

impl TruncPair {
    pub fn new(spec: &Arc<RingSpec>) -> Result<TruncPair> {
        let order = spec
            .truncation()
            .map(|t| t.order)
            .ok_or_else(|| Error::UnsupportedSpec(format!("{spec} has no truncation ideal")))?;
        Ok(TruncPair {
            spec: spec.clone(),
            residue: spec.residue()?,
            order,
        })
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn residue(&self) -> &Arc<RingSpec> {
        &self.residue
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `ceil(log2 N) + 1`, the bound on Newton steps and lifting rounds.
    pub fn round_bound(&self) -> usize {
        ceil_log2(self.order as u64) as usize + 1
    }

    pub fn in_ideal(&self, e: &RingElem) -> bool {
        e.in_truncation_ideal()
    }

    pub fn reduce(&self, p: &UnivPoly) -> Result<UnivPoly> {
        p.to_residue()
    }

    pub fn lift(&self, p: &UnivPoly) -> Result<UnivPoly> {
        UnivPoly::from_residue(p, &self.spec)
    }
}

fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// Data showing `f` is an N-polynomial.
#[derive(Clone, Debug)]
pub struct NPolyWitness {
    pub a0_in_ideal: bool,
    /// Inverse of `a_1` in `R/I`.
    pub a1_inv: RingElem,
}

pub fn npoly_witness(pair: &TruncPair, f: &UnivPoly) -> Result<NPolyWitness> {
    if !f.is_monic() {
        return Err(Error::NotNPolynomial(format!("{f} is not monic")));
    }
    let a0 = f.coeff(0);
    if !pair.in_ideal(&a0) {
        return Err(Error::NotNPolynomial(format!("constant term {a0} is not in I")));
    }
    let a1 = f.coeff(1);
    let a1_inv = a1
        .to_residue()?
        .is_unit()?
        .ok_or_else(|| Error::NotNPolynomial(format!("linear coefficient {a1} is not a unit modulo I")))?;
    Ok(NPolyWitness {
        a0_in_ideal: true,
        a1_inv,
    })
}

#[derive(Clone, Debug)]
pub struct NPolyRoot {
    pub root: RingElem,
    pub steps: usize,
}

/// Root in `I` of an N-polynomial by Newton iteration from `0`.
pub fn npoly_root(pair: &TruncPair, f: &UnivPoly) -> Result<NPolyRoot> {
    npoly_witness(pair, f)?;
    let df = f.derivative();
    let mut alpha = RingElem::zero(pair.spec());
    for steps in 0..=pair.round_bound() {
        let v = f.eval(&alpha);
        if v.is_zero() {
            return Ok(NPolyRoot { root: alpha, steps });
        }
        if steps == pair.round_bound() {
            break;
        }
        let d = df.eval(&alpha);
        let dinv = d
            .is_unit()?
            .ok_or_else(|| Error::SelfCheck(format!("f'({alpha}) = {d} is not a unit")))?;
        alpha = &alpha - &(&v * &dinv);
    }
    Err(Error::SelfCheck("Newton iteration did not converge within the round bound".into()))
}

#[derive(Clone, Debug)]
pub struct HenselLift {
    pub g: UnivPoly,
    pub h: UnivPoly,
    /// Lifted Bezout pair: `s g + t h = 1`.
    pub s: UnivPoly,
    pub t: UnivPoly,
    pub rounds: usize,
}

/// Lifts `f_bar = g_bar h_bar` to `f = g h` with `g` monic of degree
/// `deg g_bar`. Without an explicit Bezout pair, `R/I` must be a field.
pub fn hensel_factor(
    pair: &TruncPair,
    f: &UnivPoly,
    g_bar: &UnivPoly,
    h_bar: &UnivPoly,
    bezout: Option<(&UnivPoly, &UnivPoly)>,
) -> Result<HenselLift> {
    if !g_bar.is_monic() {
        return Err(Error::Input(format!("{g_bar} is not monic")));
    }
    let f_bar = pair.reduce(f)?;
    if g_bar.mul(h_bar) != f_bar {
        return Err(Error::FactorizationMismatch(format!("({g_bar})*({h_bar}) != {f_bar}")));
    }
    let (s_bar, t_bar) = match bezout {
        Some((s, t)) => {
            if s.mul(g_bar).add(&t.mul(h_bar)) != UnivPoly::one(pair.residue(), f.var()) {
                return Err(Error::NotComaximal("s*g + t*h != 1 modulo I".into()));
            }
            (s.clone(), t.clone())
        }
        None => {
            let (d, s, t) = ext_gcd(g_bar, h_bar)?;
            if d.degree() != Some(0) {
                return Err(Error::NotComaximal(format!("gcd({g_bar}, {h_bar}) = {d}")));
            }
            (s, t)
        }
    };
    let n = g_bar.degree().expect("monic");
    let m = f.degree().unwrap_or(0).saturating_sub(n);
    let mut g = pair.lift(g_bar)?;
    let mut h = pair.lift(h_bar)?;
    let mut s = pair.lift(&s_bar)?;
    let mut t = pair.lift(&t_bar)?;
    let mut rounds = 0;
    loop {
        let e = f.sub(&g.mul(&h));
        if e.is_zero() {
            break;
        }
        if rounds == pair.round_bound() {
            return Err(Error::SelfCheck("Hensel lifting did not converge within the round bound".into()));
        }
        let (q, r) = t.mul(&e).divrem_monic(&g)?;
        let g2 = g.add(&r);
        let h2 = h.add(&s.mul(&e)).add(&q.mul(&h)).truncate_degree(m);
        let one = UnivPoly::one(pair.spec(), f.var());
        let b = s.mul(&g2).add(&t.mul(&h2)).sub(&one);
        let corr = one.sub(&b);
        let s1 = s.mul(&corr);
        let t1 = t.mul(&corr);
        let (q1, t2) = t1.divrem_monic(&g2)?;
        s = s1.add(&q1.mul(&h2));
        t = t2;
        g = g2;
        h = h2;
        rounds += 1;
    }
    Ok(HenselLift { g, h, s, t, rounds })
}

/// `f = u g h` with `u` a unit, `g` monic of degree `deg f_bar` and
/// `h` in `1 + tI[t]`.
#[derive(Clone, Debug)]
pub struct MonicUnitSplit {
    pub u: RingElem,
    pub g: UnivPoly,
    pub h: UnivPoly,
}

pub fn monic_unit_split(pair: &TruncPair, f: &UnivPoly) -> Result<MonicUnitSplit> {
    let spec = pair.spec();
    let var = f.var();
    let f_bar = pair.reduce(f)?;
    let v = f_bar.lead().ok_or(Error::LeadingCoeffNotUnit)?.clone();
    let v_inv = v.is_unit()?.ok_or(Error::LeadingCoeffNotUnit)?;
    let n = f_bar.degree().expect("nonzero");
    let split = if f.degree() == Some(n) {
        let u = f.lead().expect("nonzero").clone();
        let ui = u.is_unit()?.ok_or(Error::LeadingCoeffNotUnit)?;
        MonicUnitSplit {
            g: f.scale(&ui),
            h: UnivPoly::one(spec, var),
            u,
        }
    } else if n == 0 {
        let u = f.coeff(0);
        let ui = u.is_unit()?.ok_or(Error::LeadingCoeffNotUnit)?;
        MonicUnitSplit {
            g: UnivPoly::one(spec, var),
            h: f.scale(&ui),
            u,
        }
    } else {
        let g_bar = f_bar.scale(&v_inv);
        let h_bar = UnivPoly::constant(v.clone(), var);
        let s_bar = UnivPoly::zero(pair.residue(), var);
        let t_bar = UnivPoly::constant(v_inv, var);
        let lift = hensel_factor(pair, f, &g_bar, &h_bar, Some((&s_bar, &t_bar)))?;
        let u = lift.h.coeff(0);
        let ui = u.is_unit()?.ok_or(Error::LeadingCoeffNotUnit)?;
        MonicUnitSplit {
            g: lift.g,
            h: lift.h.scale(&ui),
            u,
        }
    };
    if split.g.mul(&split.h).scale(&split.u) != *f {
        return Err(Error::SelfCheck(format!("u*g*h != {f}")));
    }
    Ok(split)
}

/// `h - 1` has zero constant term and all coefficients in `I`.
pub fn in_one_plus_t_ideal(pair: &TruncPair, h: &UnivPoly) -> bool {
    h.coeff(0).is_one() && h.coeffs().iter().skip(1).all(|c| pair.in_ideal(c))
}

/// The overring `B = A[x,y]/(xy - alpha)` of a truncated pair `(A, (alpha))`.
#[derive(Clone, Debug)]
pub struct Overring {
    pair: TruncPair,
    alpha: RingElem,
    x: String,
    y: String,
    /// `A[x,y]` without the relation.
    free: Arc<RingSpec>,
    b: Arc<RingSpec>,
}

impl Overring {
    pub fn new(pair: &TruncPair, alpha: &RingElem, x: &str, y: &str) -> Result<Overring> {
        if !pair.in_ideal(alpha) {
            return Err(Error::Input(format!("{alpha} is not in the truncation ideal")));
        }
        let free = pair.spec().adjoin(&[x, y])?;
        let b = free.quotient_by(&[format!("{x}*{y} -> {alpha}")], Vec::new())?;
        Ok(Overring {
            pair: pair.clone(),
            alpha: alpha.clone(),
            x: x.to_string(),
            y: y.to_string(),
            free,
            b,
        })
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.b
    }

    pub fn free_spec(&self) -> &Arc<RingSpec> {
        &self.free
    }

    pub fn alpha(&self) -> &RingElem {
        &self.alpha
    }

    fn var_b(&self, name: &str) -> RingElem {
        RingElem::var(&self.b, name).expect("overring variable")
    }

    /// Computes `p(x)`, `q(y)` with `1 + y q(y)` in the ideal generated by
    /// `1 + alpha g` of `B` localized at `1 + x p(x)`.
    pub fn unit_witness(&self, g: &RingElem) -> Result<OverringWitness> {
        let g = g.reinterpret(&self.b)?;
        let a = self.pair.spec();
        let xi = self.b.var_index(&self.x)?;
        let yi = self.b.var_index(&self.y)?;
        let n = g.poly().terms().iter().map(|(m, _)| m.0[yi]).max().unwrap_or(0);
        let x_b = self.var_b(&self.x);
        let y_b = self.var_b(&self.y);
        let alpha_b = self.alpha.reinterpret(&self.b)?;
        let one_b = RingElem::one(&self.b);
        let xn = x_b.pow(n);

        let h = UnivPoly::from_elem(&(&xn * &g), a, &self.x)
            .map_err(|e| Error::SelfCheck(format!("x^N g still involves {}: {e}", self.y)))?;
        let big_f = UnivPoly::monomial(RingElem::one(a), n as usize, &self.x).add(&h.scale(&self.alpha));
        let split = monic_unit_split(&self.pair, &big_f)?;
        let p = UnivPoly::new(a, &self.x, split.h.coeffs().iter().skip(1).cloned().collect());

        let k = n + 1;
        let x_free = RingElem::var(&self.free, &self.x)?;
        let g_free = g.reinterpret(&self.free)?;
        let sign = if (k + 1) % 2 == 0 { 1 } else { -1 };
        let g_prime = &(&x_free.pow(n) * &g_free.pow(k)) * &RingElem::from_i64(&self.free, sign);
        let f0_free = split.g.to_elem(&self.free)?;
        let (quotient, remainder) = divrem_in_var(&g_prime, self.free.var_index(&self.x)?, &f0_free)?;

        let yn_alpha = &y_b.pow(n) * &alpha_b;
        let w = &one_b + &(&yn_alpha * &remainder.reinterpret(&self.b)?);
        if w.poly().terms().iter().any(|(m, _)| m.0[xi] > 0) {
            return Err(Error::SelfCheck(format!("{w} still involves {}", self.x)));
        }
        let wy = UnivPoly::from_elem(&w, a, &self.y)?;
        if !wy.coeff(0).is_one() {
            return Err(Error::SelfCheck(format!("{w} is not of the form 1 + y q(y)")));
        }
        let q = UnivPoly::new(a, &self.y, wy.coeffs().iter().skip(1).cloned().collect());

        let c = &alpha_b * &g;
        let neg_c = -&c;
        let mut s_sum = RingElem::zero(&self.b);
        let mut pw = one_b.clone();
        for _ in 0..k {
            s_sum = &s_sum + &pw;
            pw = &pw * &neg_c;
        }
        let u_inv = split
            .u
            .is_unit()?
            .ok_or_else(|| Error::SelfCheck("split unit is not invertible".into()))?;
        let f1_b = split.h.to_elem(&self.b)?;
        let cofactor = &(&s_sum * &f1_b)
            - &(&(&yn_alpha * &quotient.reinterpret(&self.b)?) * &(&u_inv.reinterpret(&self.b)? * &xn));

        let wit = OverringWitness {
            n,
            k,
            g,
            h,
            split,
            p,
            g_prime,
            quotient,
            remainder,
            series: s_sum,
            q,
            cofactor,
        };
        let checks = self.verify(&wit)?;
        if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(Error::SelfCheck(format!("overring witness check `{name}` failed")));
        }
        Ok(wit)
    }

    /// Recomputes every identity of the witness by normal-form arithmetic.
    pub fn verify(&self, w: &OverringWitness) -> Result<Vec<(String, bool)>> {
        let x_b = self.var_b(&self.x);
        let y_b = self.var_b(&self.y);
        let alpha_b = self.alpha.reinterpret(&self.b)?;
        let one_b = RingElem::one(&self.b);
        let xn = x_b.pow(w.n);
        let unit = &one_b + &(&alpha_b * &w.g);
        let f0 = w.split.g.to_elem(&self.b)?;
        let f1 = w.split.h.to_elem(&self.b)?;
        let u = w.split.u.reinterpret(&self.b)?;
        let f1_expected = &UnivPoly::one(self.pair.spec(), &self.x).add(&w.p.shift(1));
        let yq = w.q.shift(1).add(&UnivPoly::one(self.pair.spec(), &self.y)).to_elem(&self.b)?;
        let yn_alpha = &y_b.pow(w.n) * &alpha_b;
        let neg_c = -&(&alpha_b * &w.g);
        let f0_free = w.split.g.to_elem(&self.free)?;
        let xi = self.free.var_index(&self.x)?;
        let rem_deg = w.remainder.poly().terms().iter().map(|(m, _)| m.0[xi]).max().unwrap_or(0);
        Ok(vec![
            ("x^N*(1+alpha*g) == u*f0*f1".into(), &xn * &unit == &(&u * &f0) * &f1),
            ("f0 monic of degree N".into(), w.split.g.is_monic() && w.split.g.degree() == Some(w.n as usize)),
            ("f1 == 1 + x*p(x), p in I[x]".into(), w.split.h == *f1_expected && in_one_plus_t_ideal(&self.pair, &w.split.h)),
            (
                "(1+alpha*g)*S == 1 + alpha*y^N*g'".into(),
                &unit * &w.series == &one_b + &(&yn_alpha * &w.g_prime.reinterpret(&self.b)?)
                    && &one_b - &neg_c.pow(w.k) == &unit * &w.series,
            ),
            ("g' == Q*f0 + R".into(), w.g_prime == &(&w.quotient * &f0_free) + &w.remainder),
            ("deg_x R < N".into(), w.remainder.is_zero() || rem_deg < w.n),
            ("1 + alpha*y^N*R == 1 + y*q(y)".into(), &one_b + &(&yn_alpha * &w.remainder.reinterpret(&self.b)?) == yq),
            ("f1*(1+y*q) == (1+alpha*g)*C".into(), &f1 * &yq == &unit * &w.cofactor),
        ])
    }
}

/// Trace of [`Overring::unit_witness`].
#[derive(Clone, Debug)]
pub struct OverringWitness {
    /// Largest power of `y` in `g`.
    pub n: u32,
    /// Exponent used to pass from `1 + alpha g` to `1 + alpha y^N g'`.
    pub k: u32,
    pub g: RingElem,
    /// `x^N g` in `A[x]`.
    pub h: UnivPoly,
    /// Split of `x^N + alpha h(x) = u f0 f1`.
    pub split: MonicUnitSplit,
    pub p: UnivPoly,
    /// `(-1)^(k+1) x^N g^k` in `A[x,y]`.
    pub g_prime: RingElem,
    pub quotient: RingElem,
    pub remainder: RingElem,
    /// `sum_{i<k} (-alpha g)^i`.
    pub series: RingElem,
    pub q: UnivPoly,
    /// `C` with `f1 (1 + y q) = (1 + alpha g) C` in `B`.
    pub cofactor: RingElem,
}

/// Division by `d`, monic of degree `n` in variable `var`, over the other
/// variables. Rewrite rules must not involve `var`.
pub fn divrem_in_var(p: &RingElem, var: usize, d: &RingElem) -> Result<(RingElem, RingElem)> {
    let spec = p.spec().clone();
    let base = spec.base().clone();
    let nv = spec.nvars();
    let deg = |e: &RingElem| e.poly().terms().iter().map(|(m, _)| m.0[var]).max();
    let n = deg(d).ok_or_else(|| Error::Input("division by zero".into()))?;
    let lead: MultiPoly = MultiPoly::from_terms(
        &base,
        nv,
        d.poly().terms().iter().filter(|(m, _)| m.0[var] == n).map(|(m, c)| {
            let mut m = m.clone();
            m.0[var] = 0;
            (m, c.clone())
        }),
    );
    if lead != MultiPoly::constant(&base, nv, base.one()) {
        return Err(Error::Input(format!("{d} is not monic in the division variable")));
    }
    let mut q = RingElem::zero(&spec);
    let mut r = p.clone();
    while let Some(top) = deg(&r).filter(|&t| t >= n) {
        let part = MultiPoly::from_terms(
            &base,
            nv,
            r.poly().terms().iter().filter(|(m, _)| m.0[var] == top).map(|(m, c)| {
                let mut m = m.clone();
                m.0[var] -= n;
                (m, c.clone())
            }),
        );
        let part = RingElem::from_poly(&spec, &part)?;
        q = &q + &part;
        let next = &r - &(&part * d);
        if deg(&next).is_some_and(|t| t >= top) && next.poly().terms().iter().any(|(m, _)| m.0[var] == top) {
            return Err(Error::SelfCheck("division did not lower the degree".into()));
        }
        r = next;
    }
    Ok((q, r))
}

/// Partial derivative with respect to variable `var` of a polynomial ring
/// whose rewrite rules do not involve `var`.
pub fn partial_derivative(e: &RingElem, var: usize) -> Result<RingElem> {
    let spec = e.spec();
    let base = spec.base();
    let terms = e.poly().terms().iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
        let k = m.0[var];
        let mut m = m.clone();
        m.0[var] -= 1;
        (m, base.mul(c, &base.from_i64(k as i64)))
    });
    RingElem::from_poly(spec, &MultiPoly::from_terms(base, spec.nvars(), terms))
}

/// Outcome of an attempted unit check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Etale {
    Yes,
    Unknown,
}

fn unit_status(e: &RingElem) -> Etale {
    match e.is_unit() {
        Ok(Some(_)) => Etale::Yes,
        _ => Etale::Unknown,
    }
}

/// `R -> (R[t]/f)_g` with `f` monic, `f(0)` in `I`, `f'(0)` a unit of `R`
/// and `g(0) = 1`. The target records `R[t]/f`; `g` is the inverted element.
#[derive(Clone, Debug)]
pub struct StandardNisnevich {
    pub target: Arc<RingSpec>,
    pub hom: RingHom,
    pub f: UnivPoly,
    pub g: UnivPoly,
    /// `f(t) - f(0) = t f_tilde(t)`.
    pub f_tilde: UnivPoly,
    /// Unit checks in `R[t]/f`; failure there is reported as unknown since
    /// `g` may still invert the element.
    pub derivative_unit: Etale,
    pub f_tilde_unit: Etale,
}

pub fn standard_nisnevich(pair: &TruncPair, f: &UnivPoly, g: &UnivPoly) -> Result<StandardNisnevich> {
    let spec = pair.spec();
    if !f.is_monic() || f.degree() == Some(0) {
        return Err(Error::Input(format!("{f} must be monic of positive degree")));
    }
    if !pair.in_ideal(&f.coeff(0)) {
        return Err(Error::Input(format!("f(0) = {} is not in I", f.coeff(0))));
    }
    if f.coeff(1).is_unit()?.is_none() {
        return Err(Error::Input(format!("f'(0) = {} is not a unit", f.coeff(1))));
    }
    if !g.coeff(0).is_one() {
        return Err(Error::Input("g(0) must be 1".into()));
    }
    let t = f.var();
    let adj = spec.adjoin(&[t])?;
    let ti = adj.var_index(t)?;
    let n = f.degree().expect("nonzero") as u32;
    let lower = f.truncate_degree(n as usize - 1).neg().to_elem(&adj)?;
    let rule = Rule {
        lead: Monomial::var(adj.nvars(), ti, n),
        rhs: lower.poly().clone(),
    };
    let target = adj.quotient_by::<&str>(&[], vec![rule])?;
    let hom = RingHom::by_names(spec, &target)?;
    let f_tilde = UnivPoly::new(spec, t, f.coeffs().iter().skip(1).cloned().collect());
    let derivative_unit = unit_status(&f.derivative().to_elem(&target)?);
    let f_tilde_unit = unit_status(&f_tilde.to_elem(&target)?);
    Ok(StandardNisnevich {
        target,
        hom,
        f: f.clone(),
        g: g.clone(),
        f_tilde,
        derivative_unit,
        f_tilde_unit,
    })
}

/// `R -> R_{1+a}` presented as `f = t - a`, `g = 1 + t`.
pub fn localization_one_plus(pair: &TruncPair, a: &RingElem, t: &str) -> Result<StandardNisnevich> {
    let spec = pair.spec();
    let f = UnivPoly::new(spec, t, vec![-a, RingElem::one(spec)]);
    let g = UnivPoly::new(spec, t, vec![RingElem::one(spec), RingElem::one(spec)]);
    standard_nisnevich(pair, &f, &g)
}

/// `R -> R[x_1..x_n]/(f_1..f_n)` with `f_j = x_j mod I`.
#[derive(Clone, Debug)]
pub struct BasicNisnevich {
    pub poly_spec: Arc<RingSpec>,
    pub fs: Vec<RingElem>,
    pub jacobian: RingElem,
    /// The quotient, when the relations orient into a confluent rewrite system.
    pub target: Option<Arc<RingSpec>>,
    pub jacobian_unit: Etale,
}

pub fn basic_nisnevich(pair: &TruncPair, names: &[&str], fs: &[&str]) -> Result<BasicNisnevich> {
    if names.len() != fs.len() {
        return Err(Error::SizeMismatch(format!("{} variables, {} relations", names.len(), fs.len())));
    }
    let ps = pair.spec().adjoin(names)?;
    let fs = fs.iter().map(|s| RingElem::parse(&ps, s)).collect::<Result<Vec<_>>>()?;
    let idx = names.iter().map(|n| ps.var_index(n)).collect::<Result<Vec<_>>>()?;
    for (f, name) in fs.iter().zip(names) {
        let diff = f - &RingElem::var(&ps, name)?;
        if !diff.in_truncation_ideal() {
            return Err(Error::Input(format!("{f} is not congruent to {name} modulo I")));
        }
    }
    let entries = idx
        .iter()
        .flat_map(|&i| fs.iter().map(move |f| partial_derivative(f, i)))
        .collect::<Result<Vec<_>>>()?;
    let jacobian = crate::mat::Mat::new(names.len(), entries)?.det();
    let rules: Option<Vec<Rule>> = fs.iter().map(|f| crate::ring::auto_rule(f.poly(), ps.base())).collect();
    let target = rules.and_then(|r| ps.quotient_by::<&str>(&[], r).ok());
    let jacobian_unit = match &target {
        Some(t) => jacobian.reinterpret(t).map_or(Etale::Unknown, |j| unit_status(&j)),
        None => Etale::Unknown,
    };
    Ok(BasicNisnevich {
        poly_spec: ps,
        fs,
        jacobian,
        target,
        jacobian_unit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Base;

    fn f2a4() -> TruncPair {
        TruncPair::new(&RingSpec::truncated(Base::ModN(2), &["a"], &["a"], 4).unwrap()).unwrap()
    }

    fn up(pair: &TruncPair, s: &str) -> UnivPoly {
        UnivPoly::parse(pair.spec(), "t", s).unwrap()
    }

    fn rp(pair: &TruncPair, s: &str) -> UnivPoly {
        UnivPoly::parse(pair.residue(), "t", s).unwrap()
    }

    #[test]
    fn newton_roots() {
        let p = f2a4();
        let r = npoly_root(&p, &up(&p, "t^2 + t + a")).unwrap();
        assert_eq!(r.root, RingElem::parse(p.spec(), "a + a^2").unwrap());
        assert!(r.steps <= p.round_bound());
        assert_eq!(npoly_root(&p, &up(&p, "t - a")).unwrap().root, RingElem::parse(p.spec(), "a").unwrap());
        assert!(npoly_root(&p, &up(&p, "t^2 - t")).unwrap().root.is_zero());
        assert!(matches!(npoly_root(&p, &up(&p, "t^2 + 1")), Err(Error::NotNPolynomial(_))));
        assert!(matches!(npoly_root(&p, &up(&p, "t^2 + a")), Err(Error::NotNPolynomial(_))));
    }

    #[test]
    fn hensel_examples() {
        let p = f2a4();
        let l = hensel_factor(&p, &up(&p, "t^2 + t + a"), &rp(&p, "t"), &rp(&p, "t + 1"), None).unwrap();
        assert_eq!(l.g, up(&p, "t + a + a^2"));
        assert_eq!(l.h, up(&p, "t + 1 + a + a^2"));
        assert!(l.rounds <= p.round_bound());
        let l = hensel_factor(&p, &up(&p, "t^2 + t"), &rp(&p, "t"), &rp(&p, "t + 1"), None).unwrap();
        assert_eq!((l.g, l.h, l.rounds), (up(&p, "t"), up(&p, "t + 1"), 0));
        assert!(matches!(
            hensel_factor(&p, &up(&p, "t^2 + 1"), &rp(&p, "t"), &rp(&p, "t + 1"), None),
            Err(Error::FactorizationMismatch(_))
        ));
        assert!(matches!(
            hensel_factor(&p, &up(&p, "t^2"), &rp(&p, "t"), &rp(&p, "t"), None),
            Err(Error::NotComaximal(_))
        ));
    }

    #[test]
    fn hensel_non_monic_tail() {
        let p = TruncPair::new(&RingSpec::truncated(Base::ModN(2), &["a"], &["a"], 3).unwrap()).unwrap();
        let f = up(&p, "a*t^3 + t^2 + t");
        let l = hensel_factor(&p, &f, &rp(&p, "t"), &rp(&p, "t + 1"), None).unwrap();
        assert_eq!(l.g.mul(&l.h), f);
        assert!(l.g.is_monic() && l.g.degree() == Some(1));
        assert_eq!(l.g.to_residue().unwrap(), rp(&p, "t"));
        assert_eq!(l.h.to_residue().unwrap(), rp(&p, "t + 1"));
    }

    #[test]
    fn monic_unit_split_branches() {
        let p = f2a4();
        for src in ["t + a*t^2", "1 + a*t", "t^2 + a*t + a", "1 + t + a*t^3", "a*t^3 + t^2 + t + 1"] {
            let f = up(&p, src);
            let s = monic_unit_split(&p, &f).unwrap();
            assert_eq!(s.g.mul(&s.h).scale(&s.u), f, "{src}");
            assert!(s.g.is_monic());
            assert_eq!(s.g.degree(), p.reduce(&f).unwrap().degree());
            assert!(in_one_plus_t_ideal(&p, &s.h), "{src}");
            assert!((&s.u - &RingElem::one(p.spec())).in_truncation_ideal());
        }
        let s = monic_unit_split(&p, &up(&p, "1 + a*t")).unwrap();
        assert!(s.u.is_one() && s.g.degree() == Some(0));
        assert_eq!(s.h, up(&p, "1 + a*t"));
        assert!(matches!(monic_unit_split(&p, &up(&p, "a*t")), Err(Error::LeadingCoeffNotUnit)));
    }

    #[test]
    fn overring_witnesses() {
        let p = f2a4();
        let a = RingElem::parse(p.spec(), "a").unwrap();
        let a2 = RingElem::parse(p.spec(), "a^2").unwrap();
        let o = Overring::new(&p, &a2, "x", "y").unwrap();
        let w = o.unit_witness(&RingElem::zero(o.spec())).unwrap();
        assert!(w.p.is_zero() && w.q.is_zero());
        let w = o.unit_witness(&RingElem::parse(o.spec(), "x").unwrap()).unwrap();
        assert!(o.verify(&w).unwrap().iter().all(|(_, ok)| *ok));
        let w = o.unit_witness(&RingElem::parse(o.spec(), "1 + a").unwrap()).unwrap();
        assert!(w.p.is_zero() && w.q.is_zero());

        let o = Overring::new(&p, &a, "x", "y").unwrap();
        let w = o.unit_witness(&RingElem::parse(o.spec(), "y").unwrap()).unwrap();
        assert_eq!(w.q, UnivPoly::parse(p.spec(), "y", "a^3*y^2").unwrap());
        for g in ["x + y", "y^2 + a*x", "1 + x*a + y^3", "x^2*a + y^2 + y"] {
            let g = RingElem::parse(o.spec(), g).unwrap();
            let w = o.unit_witness(&g).unwrap();
            assert!(o.verify(&w).unwrap().iter().all(|(_, ok)| *ok));
        }
    }

    #[test]
    fn overring_over_integers() {
        let p = TruncPair::new(&RingSpec::truncated(Base::Integers, &["a", "b"], &["a", "b"], 3).unwrap()).unwrap();
        let alpha = RingElem::parse(p.spec(), "a + 2*b").unwrap();
        let o = Overring::new(&p, &alpha, "x", "y").unwrap();
        for g in ["3*y^2 - x", "x*b + y - 1", "y^3"] {
            let g = RingElem::parse(o.spec(), g).unwrap();
            let w = o.unit_witness(&g).unwrap();
            assert!(o.verify(&w).unwrap().iter().all(|(_, ok)| *ok));
        }
    }

    #[test]
    fn nisnevich_builders() {
        let p = f2a4();
        let a = RingElem::parse(p.spec(), "a").unwrap();
        let loc = localization_one_plus(&p, &a, "t").unwrap();
        let t = RingElem::var(&loc.target, "t").unwrap();
        assert_eq!(t, loc.hom.apply(&a).unwrap());
        assert_eq!(loc.derivative_unit, Etale::Yes);
        let b = basic_nisnevich(&p, &["x"], &["x + a*x^2 + a"]).unwrap();
        assert!(b.jacobian.is_one());
        let b = basic_nisnevich(&p, &["x"], &["x + a*x^3 + a"]).unwrap();
        assert_eq!(b.jacobian, RingElem::parse(&b.poly_spec, "1 + a*x^2").unwrap());
        assert!(basic_nisnevich(&p, &["x"], &["x^2"]).is_err());
    }
}
