//! Ring specs: a base domain, named variables, a rewrite system and an
//! optional I-adic truncation. Elements are kept in normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use crate::coeff::{Base, Coeff};
use crate::error::{Error, Result};
use crate::parse::{format_poly, parse_expr, parse_terms};
use crate::poly::{accumulate, Monomial, MultiPoly};

/// Upper bound on single rewrite steps in one normal-form computation.
const REWRITE_STEP_LIMIT: usize = 5_000_000;
/// Truncation overlaps are enumerated only up to this many monomials.
const TRUNC_OVERLAP_CAP: usize = 4096;

/// Rewrite rule `lead -> rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lead: Monomial,
    pub rhs: MultiPoly,
}

/// The ideal `(vars)^order` is zero in the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub vars: Vec<usize>,
    pub order: u32,
}

pub struct RingSpec {
    base: Base,
    vars: Vec<String>,
    rules: Vec<Rule>,
    truncation: Option<Truncation>,
    confluent: bool,
    residue: OnceLock<Result<Arc<RingSpec>>>,
}

impl PartialEq for RingSpec {
    fn eq(&self, o: &Self) -> bool {
        self.base == o.base
            && self.vars == o.vars
            && self.rules == o.rules
            && self.truncation == o.truncation
    }
}

impl Eq for RingSpec {}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingSpec({self})")
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if !self.vars.is_empty() {
            write!(f, "[{}]", self.vars.join(","))?;
        }
        if !self.rules.is_empty() {
            let rs: Vec<String> = self
                .rules
                .iter()
                .map(|r| {
                    format!(
                        "{} -> {}",
                        crate::parse::format_monomial(&r.lead, &self.vars),
                        format_poly(&r.rhs, &self.vars, &self.base)
                    )
                })
                .collect();
            write!(f, "/({})", rs.join(", "))?;
        }
        if let Some(t) = &self.truncation {
            let vs: Vec<&str> = t.vars.iter().map(|&i| self.vars[i].as_str()).collect();
            write!(f, " mod ({})^{}", vs.join(","), t.order)?;
        }
        Ok(())
    }
}

/// Incremental construction of a [`RingSpec`].
#[derive(Clone, Debug)]
pub struct RingSpecBuilder {
    base: Base,
    vars: Vec<String>,
    relations: Vec<String>,
    rules: Vec<Rule>,
    truncation: Option<(Vec<String>, u32)>,
}

impl RingSpecBuilder {
    /// Adds a relation. Either `"lead -> rhs"`, or a polynomial whose first
    /// written term is the leading monomial (e.g. `"x*y - a^2"` gives `x*y -> a^2`).
    pub fn relation(mut self, rel: impl Into<String>) -> Self {
        self.relations.push(rel.into());
        self
    }

    pub fn rule(mut self, rule: Rule) -> Self {
        self.rules.push(rule);
        self
    }

    pub fn truncate<S: AsRef<str>>(mut self, vars: &[S], order: u32) -> Self {
        self.truncation = Some((vars.iter().map(|s| s.as_ref().to_string()).collect(), order));
        self
    }

    fn assemble(self) -> Result<RingSpec> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &self.vars {
            if !seen.insert(v) {
                return Err(Error::Input(format!("duplicate variable `{v}`")));
            }
        }
        let mut rules = self.rules;
        for rel in &self.relations {
            rules.push(parse_relation(rel, &self.vars, &self.base)?);
        }
        for r in &rules {
            validate_rule(r).map_err(|msg| Error::InvalidRelation {
                rel: format!(
                    "{} -> {}",
                    crate::parse::format_monomial(&r.lead, &self.vars),
                    format_poly(&r.rhs, &self.vars, &self.base)
                ),
                msg,
            })?;
        }
        let truncation = match self.truncation {
            None => None,
            Some((names, order)) => {
                if order == 0 {
                    return Err(Error::Input("truncation order must be >= 1".into()));
                }
                let mut idx = Vec::new();
                for n in &names {
                    let i = self
                        .vars
                        .iter()
                        .position(|v| v == n)
                        .ok_or_else(|| Error::UnknownVariable(n.clone()))?;
                    if !idx.contains(&i) {
                        idx.push(i);
                    }
                }
                idx.sort_unstable();
                Some(Truncation { vars: idx, order })
            }
        };
        Ok(RingSpec {
            base: self.base,
            vars: self.vars,
            rules,
            truncation,
            confluent: true,
            residue: OnceLock::new(),
        })
    }

    /// Builds the spec and runs the local-confluence check.
    pub fn build(self) -> Result<Arc<RingSpec>> {
        let spec = self.assemble()?;
        spec.check_confluence()?;
        Ok(Arc::new(spec))
    }

    /// Builds without failing on a confluence defect; normal forms over such
    /// a spec report [`Error::RelationNotConfluent`].
    pub fn build_unchecked(self) -> Result<Arc<RingSpec>> {
        let mut spec = self.assemble()?;
        spec.confluent = spec.check_confluence().is_ok();
        Ok(Arc::new(spec))
    }
}

fn parse_relation(rel: &str, vars: &[String], base: &Base) -> Result<Rule> {
    let bad = |msg: &str| Error::InvalidRelation {
        rel: rel.to_string(),
        msg: msg.to_string(),
    };
    if let Some((lhs, rhs)) = rel.split_once("->") {
        let l = parse_expr(lhs, vars, base)?;
        let r = parse_expr(rhs, vars, base)?;
        let (m, c) = match l.terms() {
            [(m, c)] => (m.clone(), c.clone()),
            _ => return Err(bad("left-hand side must be a single monomial")),
        };
        let inv = base
            .inverse(&c)
            .ok_or_else(|| bad("leading coefficient is not a unit"))?;
        return Ok(Rule {
            lead: m,
            rhs: r.scale(base, &inv),
        });
    }
    let terms = parse_terms(rel, vars, base)?;
    let full = terms
        .iter()
        .fold(MultiPoly::zero(vars.len()), |acc, t| acc.add(base, t));
    let first = match terms[0].terms() {
        [(m, _)] => m.clone(),
        _ => return Err(bad("first term must be a single monomial")),
    };
    rule_with_lead(&full, &first, base).ok_or_else(|| bad("first monomial does not cancel into a rule"))
}

/// Turns `p` into `lead -> rhs` with the given leading monomial.
pub(crate) fn rule_with_lead(p: &MultiPoly, lead: &Monomial, base: &Base) -> Option<Rule> {
    let c = p.coeff_of(lead)?;
    let inv = base.inverse(c)?;
    let rest = MultiPoly::from_terms(
        base,
        p.nvars(),
        p.terms()
            .iter()
            .filter(|(m, _)| m != lead)
            .map(|(m, d)| (m.clone(), base.neg(&base.mul(&inv, d)))),
    );
    Some(Rule {
        lead: lead.clone(),
        rhs: rest,
    })
}

/// Chooses a leading monomial for a derived relation: unit coefficient,
/// supported shape, dividing no other monomial. Products of distinct
/// variables are preferred, then the graded-lex largest.
pub(crate) fn auto_rule(p: &MultiPoly, base: &Base) -> Option<Rule> {
    let mut best: Option<&Monomial> = None;
    let key = |m: &Monomial| (m.0.iter().all(|&e| e <= 1), m.clone());
    for (m, c) in p.terms() {
        if m.is_one() || !base.is_unit(c) || !shape_ok(m) {
            continue;
        }
        if p.terms().iter().any(|(o, _)| o != m && m.divides(o)) {
            continue;
        }
        if best.is_none_or(|b| key(m) > key(b)) {
            best = Some(m);
        }
    }
    rule_with_lead(p, best?, base)
}

/// Orients `p` at `hint` when that is a valid leading monomial, otherwise
/// falls back to [`auto_rule`].
pub(crate) fn oriented_rule(p: &MultiPoly, hint: Option<&Monomial>, base: &Base) -> Option<Rule> {
    if let Some(h) = hint {
        let usable = p.coeff_of(h).is_some_and(|c| base.is_unit(c))
            && shape_ok(h)
            && !p.terms().iter().any(|(o, _)| o != h && h.divides(o));
        if usable {
            return rule_with_lead(p, h, base);
        }
    }
    auto_rule(p, base)
}

fn shape_ok(m: &Monomial) -> bool {
    !m.is_one() && (m.0.iter().all(|&e| e <= 1) || m.support_len() == 1)
}

fn validate_rule(r: &Rule) -> std::result::Result<(), String> {
    if !shape_ok(&r.lead) {
        return Err("leading monomial must be a product of distinct variables or a pure power".into());
    }
    if r.rhs.terms().iter().any(|(m, _)| r.lead.divides(m)) {
        return Err("leading monomial divides a monomial of the right-hand side".into());
    }
    Ok(())
}

impl RingSpec {
    pub fn builder<S: AsRef<str>>(base: Base, vars: &[S]) -> RingSpecBuilder {
        RingSpecBuilder {
            base,
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            relations: Vec::new(),
            rules: Vec::new(),
            truncation: None,
        }
    }

    /// Polynomial ring without relations.
    pub fn polynomial<S: AsRef<str>>(base: Base, vars: &[S]) -> Arc<RingSpec> {
        RingSpec::builder(base, vars)
            .build()
            .expect("polynomial ring spec is always valid")
    }

    /// `base[var]/(var)^order`.
    pub fn truncated<S: AsRef<str>>(base: Base, vars: &[S], trunc: &[S], order: u32) -> Result<Arc<RingSpec>> {
        RingSpec::builder(base, vars).truncate(trunc, order).build()
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn truncation(&self) -> Option<&Truncation> {
        self.truncation.as_ref()
    }

    pub fn is_confluent(&self) -> bool {
        self.confluent
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn is_truncated_var(&self, i: usize) -> bool {
        self.truncation.as_ref().is_some_and(|t| t.vars.contains(&i))
    }

    /// Rule text in the `"lead -> rhs"` form accepted by the builder.
    pub fn rule_strings(&self) -> Vec<String> {
        self.rules
            .iter()
            .map(|r| {
                format!(
                    "{} -> {}",
                    crate::parse::format_monomial(&r.lead, &self.vars),
                    format_poly(&r.rhs, &self.vars, &self.base)
                )
            })
            .collect()
    }

    /// Declared integral domain: domain base, no truncation, and either no
    /// relations or a single `x*y -> m` with `m != 0` free of `x` and `y`.
    pub fn is_domain(&self) -> bool {
        if !self.base.is_domain() || self.truncation.is_some() {
            return false;
        }
        match self.rules.as_slice() {
            [] => true,
            [r] => {
                let support: Vec<usize> = (0..self.nvars()).filter(|&i| r.lead.0[i] > 0).collect();
                support.len() == 2
                    && r.lead.degree() == 2
                    && !r.rhs.is_zero()
                    && r.rhs
                        .terms()
                        .iter()
                        .all(|(m, _)| support.iter().all(|&i| m.0[i] == 0))
            }
            _ => false,
        }
    }

    fn is_truncated_away(&self, m: &Monomial) -> bool {
        match &self.truncation {
            Some(t) => m.degree_in(&t.vars) >= t.order as u64,
            None => false,
        }
    }

    /// Reduces a polynomial to its normal form.
    pub fn reduce(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if !self.confluent {
            return Err(Error::RelationNotConfluent(self.to_string()));
        }
        self.reduce_raw(p)
    }

    fn reduce_raw(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.nvars() {
            return Err(Error::SpecMismatch(format!(
                "polynomial has {} variables, ring {} has {}",
                p.nvars(),
                self,
                self.nvars()
            )));
        }
        if self.rules.is_empty() && self.truncation.is_none() {
            return Ok(p.clone());
        }
        let base = &self.base;
        let mut pending: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in p.terms() {
            accumulate(base, &mut pending, m.clone(), c.clone());
        }
        let mut done: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        let mut steps = 0usize;
        while let Some((m, c)) = pending.pop_last() {
            steps += 1;
            if steps > REWRITE_STEP_LIMIT {
                return Err(Error::NonTerminating(REWRITE_STEP_LIMIT));
            }
            if self.is_truncated_away(&m) {
                continue;
            }
            match self.rules.iter().find(|r| r.lead.divides(&m)) {
                Some(r) => {
                    let q = r.lead.quotient_of(&m);
                    for (rm, rc) in r.rhs.terms() {
                        accumulate(base, &mut pending, rm.mul(&q), base.mul(&c, rc));
                    }
                }
                None => accumulate(base, &mut done, m, c),
            }
        }
        Ok(MultiPoly::from_sorted_unchecked(
            self.nvars(),
            done.into_iter().collect(),
        ))
    }

    fn check_confluence(&self) -> Result<()> {
        let base = &self.base;
        let n = self.nvars();
        let fail = |what: String| Err(Error::RelationNotConfluent(what));
        for (i, ri) in self.rules.iter().enumerate() {
            for rj in &self.rules[i + 1..] {
                let l = ri.lead.lcm(&rj.lead);
                let a = ri.rhs.mul_monomial(base, &ri.lead.quotient_of(&l), &base.one());
                let b = rj.rhs.mul_monomial(base, &rj.lead.quotient_of(&l), &base.one());
                let d = self.reduce_raw(&a.sub(base, &b))?;
                if !d.is_zero() {
                    return fail(format!(
                        "overlap at {} leaves {}",
                        crate::parse::format_monomial(&l, &self.vars),
                        format_poly(&d, &self.vars, base)
                    ));
                }
            }
        }
        if let Some(t) = &self.truncation {
            for r in &self.rules {
                let have = r.lead.degree_in(&t.vars);
                if have >= t.order as u64 {
                    if !self.reduce_raw(&r.rhs)?.is_zero() {
                        return fail("rule lead is truncated but its right-hand side is not".into());
                    }
                    continue;
                }
                let need = (t.order as u64 - have) as u32;
                let Some(ws) = monomials_of_degree(&t.vars, n, need, TRUNC_OVERLAP_CAP) else {
                    continue;
                };
                for w in ws {
                    let d = self.reduce_raw(&r.rhs.mul_monomial(base, &w, &base.one()))?;
                    if !d.is_zero() {
                        return fail(format!(
                            "rule for {} is incompatible with the truncation",
                            crate::parse::format_monomial(&r.lead, &self.vars)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The quotient by further relations over the same variables; the
    /// combined system is checked for confluence.
    pub fn quotient_by<S: AsRef<str>>(&self, relations: &[S], extra: Vec<Rule>) -> Result<Arc<RingSpec>> {
        let mut b = RingSpec::builder(self.base.clone(), &self.vars);
        for r in self.rules.iter().cloned().chain(extra) {
            b = b.rule(r);
        }
        for rel in relations {
            b = b.relation(rel.as_ref());
        }
        if let Some(t) = &self.truncation {
            let names: Vec<&str> = t.vars.iter().map(|&i| self.vars[i].as_str()).collect();
            b = b.truncate(&names, t.order);
        }
        b.build()
    }

    /// The same ring with extra polynomial variables appended.
    pub fn adjoin<S: AsRef<str>>(&self, names: &[S]) -> Result<Arc<RingSpec>> {
        let mut vars = self.vars.clone();
        for n in names {
            if vars.iter().any(|v| v == n.as_ref()) {
                return Err(Error::Input(format!("variable `{}` already present", n.as_ref())));
            }
            vars.push(n.as_ref().to_string());
        }
        let nv = vars.len();
        let map: Vec<usize> = (0..self.nvars()).collect();
        let rules = self
            .rules
            .iter()
            .map(|r| Rule {
                lead: extend_monomial(&r.lead, nv),
                rhs: r.rhs.reindex(&self.base, nv, &map),
            })
            .collect();
        Ok(Arc::new(RingSpec {
            base: self.base.clone(),
            vars,
            rules,
            truncation: self.truncation.clone(),
            confluent: self.confluent,
            residue: OnceLock::new(),
        }))
    }

    /// `R/I` where `I` is the truncation ideal: truncated variables are removed.
    pub fn residue(&self) -> Result<Arc<RingSpec>> {
        self.residue
            .get_or_init(|| self.build_residue())
            .clone()
    }

    fn build_residue(&self) -> Result<Arc<RingSpec>> {
        let t = self
            .truncation
            .as_ref()
            .ok_or_else(|| Error::UnsupportedSpec(format!("{self} has no truncation ideal")))?;
        let keep: Vec<usize> = (0..self.nvars()).filter(|i| !t.vars.contains(i)).collect();
        let names: Vec<&str> = keep.iter().map(|&i| self.vars[i].as_str()).collect();
        let mut b = RingSpec::builder(self.base.clone(), &names);
        for r in &self.rules {
            let rhs = self.kill_truncated(&r.rhs, &keep);
            if r.lead.degree_in(&t.vars) > 0 {
                if !rhs.is_zero() {
                    return Err(Error::UnsupportedSpec(
                        "a rule with a truncated variable in its lead has a non-nilpotent right-hand side".into(),
                    ));
                }
                continue;
            }
            b = b.rule(Rule {
                lead: Monomial(keep.iter().map(|&i| r.lead.0[i]).collect()),
                rhs,
            });
        }
        b.build()
    }

    fn kill_truncated(&self, p: &MultiPoly, keep: &[usize]) -> MultiPoly {
        let t = self.truncation.as_ref().expect("truncated spec");
        MultiPoly::from_terms(
            &self.base,
            keep.len(),
            p.terms()
                .iter()
                .filter(|(m, _)| m.degree_in(&t.vars) == 0)
                .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone())),
        )
    }
}

fn extend_monomial(m: &Monomial, nv: usize) -> Monomial {
    let mut e = m.clone();
    e.0.resize(nv, 0);
    e
}

/// All monomials of exact degree `d` in the given variables, if there are
/// at most `cap` of them.
fn monomials_of_degree(vars: &[usize], nvars: usize, d: u32, cap: usize) -> Option<Vec<Monomial>> {
    let mut out = Vec::new();
    let mut cur = Monomial::one(nvars);
    fn rec(vars: &[usize], k: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>, cap: usize) -> bool {
        if out.len() > cap {
            return false;
        }
        if k + 1 == vars.len() {
            cur.0[vars[k]] = left;
            out.push(cur.clone());
            cur.0[vars[k]] = 0;
            return true;
        }
        for e in 0..=left {
            cur.0[vars[k]] = e;
            if !rec(vars, k + 1, left - e, cur, out, cap) {
                return false;
            }
        }
        cur.0[vars[k]] = 0;
        true
    }
    if vars.is_empty() {
        return Some(out);
    }
    rec(vars, 0, d, &mut cur, &mut out, cap).then_some(out).filter(|o| o.len() <= cap)
}

/// Normal form of `p` in `spec`.
pub fn normal_form(spec: &Arc<RingSpec>, p: &MultiPoly) -> Result<RingElem> {
    Ok(RingElem {
        spec: spec.clone(),
        poly: spec.reduce(p)?,
    })
}

/// An element of a ring spec, always in normal form.
#[derive(Clone)]
pub struct RingElem {
    spec: Arc<RingSpec>,
    poly: MultiPoly,
}

impl PartialEq for RingElem {
    fn eq(&self, o: &Self) -> bool {
        self.poly == o.poly && same_spec(&self.spec, &o.spec)
    }
}

impl Eq for RingElem {}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(&self.poly, &self.spec.vars, &self.spec.base))
    }
}

pub fn same_spec(a: &Arc<RingSpec>, b: &Arc<RingSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl RingElem {
    pub fn zero(spec: &Arc<RingSpec>) -> RingElem {
        RingElem {
            spec: spec.clone(),
            poly: MultiPoly::zero(spec.nvars()),
        }
    }

    pub fn one(spec: &Arc<RingSpec>) -> RingElem {
        RingElem::from_i64(spec, 1)
    }

    pub fn from_i64(spec: &Arc<RingSpec>, v: i64) -> RingElem {
        RingElem::from_coeff(spec, spec.base.from_i64(v))
    }

    pub fn from_coeff(spec: &Arc<RingSpec>, c: Coeff) -> RingElem {
        let p = MultiPoly::constant(&spec.base, spec.nvars(), c);
        RingElem {
            spec: spec.clone(),
            poly: spec.reduce(&p).unwrap_or(p),
        }
    }

    pub fn var(spec: &Arc<RingSpec>, name: &str) -> Result<RingElem> {
        let i = spec.var_index(name)?;
        normal_form(spec, &MultiPoly::var(&spec.base, spec.nvars(), i))
    }

    /// Parses the expression grammar and normalizes.
    pub fn parse(spec: &Arc<RingSpec>, src: &str) -> Result<RingElem> {
        normal_form(spec, &parse_expr(src, &spec.vars, &spec.base)?)
    }

    pub fn from_poly(spec: &Arc<RingSpec>, p: &MultiPoly) -> Result<RingElem> {
        normal_form(spec, p)
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn base(&self) -> &Base {
        &self.spec.base
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.poly.is_constant()
            && self.poly.len() == 1
            && self.spec.base.is_one(&self.poly.terms()[0].1)
    }

    pub fn is_constant(&self) -> bool {
        self.poly.is_constant()
    }

    pub fn constant_coeff(&self) -> Coeff {
        self.poly.constant_coeff(&self.spec.base)
    }

    pub fn zero_like(&self) -> RingElem {
        RingElem::zero(&self.spec)
    }

    pub fn one_like(&self) -> RingElem {
        RingElem::one(&self.spec)
    }

    fn check_same(&self, o: &RingElem) -> Result<()> {
        if same_spec(&self.spec, &o.spec) {
            Ok(())
        } else {
            Err(Error::SpecMismatch(format!("{} vs {}", self.spec, o.spec)))
        }
    }

    pub fn try_add(&self, o: &RingElem) -> Result<RingElem> {
        self.check_same(o)?;
        Ok(RingElem {
            spec: self.spec.clone(),
            poly: self.poly.add(&self.spec.base, &o.poly),
        })
    }

    pub fn try_sub(&self, o: &RingElem) -> Result<RingElem> {
        self.check_same(o)?;
        Ok(RingElem {
            spec: self.spec.clone(),
            poly: self.poly.sub(&self.spec.base, &o.poly),
        })
    }

    pub fn try_mul(&self, o: &RingElem) -> Result<RingElem> {
        self.check_same(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(self.zero_like());
        }
        let base = &self.spec.base;
        let p = if self.poly.is_constant() {
            o.poly.scale(base, &self.poly.terms()[0].1)
        } else if o.poly.is_constant() {
            self.poly.scale(base, &o.poly.terms()[0].1)
        } else {
            self.poly.mul(base, &o.poly)
        };
        normal_form(&self.spec, &p)
    }

    pub fn scale(&self, c: &Coeff) -> RingElem {
        RingElem {
            spec: self.spec.clone(),
            poly: self.poly.scale(&self.spec.base, c),
        }
    }

    pub fn pow(&self, mut e: u32) -> RingElem {
        let mut acc = self.one_like();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Whether every monomial lies in the truncation ideal.
    pub fn in_truncation_ideal(&self) -> bool {
        match &self.spec.truncation {
            Some(t) => self.poly.terms().iter().all(|(m, _)| m.degree_in(&t.vars) > 0),
            None => self.is_zero(),
        }
    }

    /// Image in `R/I` (truncated variables set to zero).
    pub fn to_residue(&self) -> Result<RingElem> {
        let res = self.spec.residue()?;
        let t = self.spec.truncation.as_ref().expect("residue exists only for truncated specs");
        let keep: Vec<usize> = (0..self.spec.nvars()).filter(|i| !t.vars.contains(i)).collect();
        normal_form(&res, &self.spec.kill_truncated(&self.poly, &keep))
    }

    /// Lift of a residue element back to this (truncated) spec.
    pub fn from_residue(spec: &Arc<RingSpec>, e: &RingElem) -> Result<RingElem> {
        let res = spec.residue()?;
        if !same_spec(&res, &e.spec) {
            return Err(Error::SpecMismatch("element is not in the residue ring".into()));
        }
        let t = spec.truncation.as_ref().expect("truncated spec");
        let keep: Vec<usize> = (0..spec.nvars()).filter(|i| !t.vars.contains(i)).collect();
        normal_form(spec, &e.poly.reindex(&spec.base, spec.nvars(), &keep))
    }

    /// Multiplicative inverse if the element is a unit.
    ///
    /// Supported: constants in any ring, arbitrary elements of truncated
    /// rings whose residue is supported, and polynomial rings without
    /// relations over `Z`, `Q` or `Z/n`.
    pub fn is_unit(&self) -> Result<Option<RingElem>> {
        let base = &self.spec.base;
        if self.poly.is_constant() {
            let c = self.constant_coeff();
            return Ok(base.inverse(&c).map(|i| RingElem::from_coeff(&self.spec, i)));
        }
        if self.spec.truncation.is_some() {
            let r = self.to_residue()?;
            let Some(rinv) = r.is_unit()? else {
                return Ok(None);
            };
            let v0 = RingElem::from_residue(&self.spec, &rinv)?;
            let nil = &self.one_like() - &(self * &v0);
            let bound = self.nilpotency_bound();
            let inv = &v0 * &geometric_series(&nil, bound)?;
            return self.checked_inverse(inv).map(Some);
        }
        if !self.spec.rules.is_empty() {
            return Err(Error::UnsupportedSpec(format!(
                "unit test for non-constant elements of {}",
                self.spec
            )));
        }
        // Pure polynomial ring: a unit is a unit constant plus a nilpotent.
        let c = self.constant_coeff();
        let Some(cinv) = base.inverse(&c) else {
            return Ok(None);
        };
        let nilpotent_rest = self
            .poly
            .terms()
            .iter()
            .all(|(m, d)| m.is_one() || base.is_nilpotent(d));
        if !nilpotent_rest {
            return Ok(None);
        }
        let ci = RingElem::from_coeff(&self.spec, cinv);
        let nil = &self.one_like() - &(self * &ci);
        let inv = &ci * &geometric_series(&nil, base.nilpotency_bound() as u64 + 1)?;
        self.checked_inverse(inv).map(Some)
    }

    fn nilpotency_bound(&self) -> u64 {
        let t = self.spec.truncation.as_ref().map_or(1, |t| t.order as u64);
        t * self.spec.base.nilpotency_bound() as u64 + 1
    }

    fn checked_inverse(&self, inv: RingElem) -> Result<RingElem> {
        if (self * &inv).is_one() {
            Ok(inv)
        } else {
            Err(Error::SelfCheck(format!("inverse of {self} failed to verify")))
        }
    }

    /// Reads the normal-form polynomial in another spec, matching variables
    /// by name. No homomorphism check: this is the representative lift used
    /// for preimages along quotient maps.
    pub fn reinterpret(&self, target: &Arc<RingSpec>) -> Result<RingElem> {
        let map = self
            .spec
            .vars
            .iter()
            .map(|v| target.var_index(v))
            .collect::<Result<Vec<_>>>()?;
        let p = self.poly.map_base(&self.spec.base, &target.base)?;
        normal_form(target, &p.reindex(&target.base, target.nvars(), &map))
    }

    /// Maps the element into another spec with the same variable names.
    pub fn coerce(&self, target: &Arc<RingSpec>) -> Result<RingElem> {
        if same_spec(&self.spec, target) {
            return Ok(self.clone());
        }
        crate::hom::RingHom::by_names(&self.spec, target)?.apply(self)
    }
}

/// `sum_{i < bound} n^i`, stopping early once a power vanishes.
fn geometric_series(n: &RingElem, bound: u64) -> Result<RingElem> {
    let mut acc = n.one_like();
    let mut p = n.one_like();
    for _ in 0..bound {
        p = &p * n;
        if p.is_zero() {
            return Ok(acc);
        }
        acc = &acc + &p;
    }
    if p.is_zero() {
        Ok(acc)
    } else {
        Err(Error::UnsupportedSpec("element is not nilpotent within the expected bound".into()))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $m(self, o: &RingElem) -> RingElem {
                self.$f(o).expect("ring operation on mismatched specs")
            }
        }
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, o: RingElem) -> RingElem {
                (&self).$f(&o).expect("ring operation on mismatched specs")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            spec: self.spec.clone(),
            poly: self.poly.neg(&self.spec.base),
        }
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kaxy(base: Base, rel: &str) -> Arc<RingSpec> {
        RingSpec::builder(base, &["a", "x", "y"]).relation(rel).build().unwrap()
    }

    #[test]
    fn xy_rewrites_to_a_squared() {
        let r = kaxy(Base::Rationals, "x*y - a^2");
        let e = RingElem::parse(&r, "x*y").unwrap();
        assert_eq!(e, RingElem::parse(&r, "a^2").unwrap());
        let e = RingElem::parse(&r, "x^2*y^2").unwrap();
        assert_eq!(e.to_string(), "a^4");
    }

    #[test]
    fn truncation_kills_high_powers() {
        let r = RingSpec::truncated(Base::ModN(2), &["a"], &["a"], 4).unwrap();
        let e = RingElem::parse(&r, "a^5 + a^3").unwrap();
        assert_eq!(e.to_string(), "a^3");
    }

    #[test]
    fn normal_form_is_idempotent() {
        let r = kaxy(Base::Integers, "x*y - a^2");
        let e = RingElem::parse(&r, "(x + y + a)^4").unwrap();
        let again = normal_form(&r, e.poly()).unwrap();
        assert_eq!(e, again);
        assert!(e.poly().terms().iter().all(|(m, _)| !(m.0[1] > 0 && m.0[2] > 0)));
    }

    #[test]
    fn power_rule_with_larger_rhs() {
        let r = RingSpec::builder(Base::ModN(2), &["a", "x", "y", "t"])
            .relation("t^2 - t*(x*y - a^2)")
            .build()
            .unwrap();
        let t2 = RingElem::parse(&r, "t^2").unwrap();
        assert_eq!(t2, RingElem::parse(&r, "t*x*y - t*a^2").unwrap());
        let rel = RingElem::parse(&r, "t*(t - (x*y - a^2))").unwrap();
        assert!(rel.is_zero());
    }

    #[test]
    fn rejects_non_confluent_systems() {
        let b = RingSpec::builder(Base::Rationals, &["x", "y"])
            .relation("x*y -> x")
            .relation("x^2 -> y");
        assert!(matches!(b.clone().build(), Err(Error::RelationNotConfluent(_))));
        let spec = b.build_unchecked().unwrap();
        assert!(matches!(
            RingElem::parse(&spec, "x"),
            Err(Error::RelationNotConfluent(_))
        ));
    }

    #[test]
    fn rejects_bad_rule_shapes() {
        let r = RingSpec::builder(Base::Rationals, &["x", "y"]).relation("x^2*y - 1").build();
        assert!(matches!(r, Err(Error::InvalidRelation { .. })));
        let r = RingSpec::builder(Base::Rationals, &["x"]).relation("x -> x^2").build();
        assert!(matches!(r, Err(Error::InvalidRelation { .. })));
    }

    #[test]
    fn units_in_truncated_rings() {
        let r = RingSpec::truncated(Base::ModN(2), &["a"], &["a"], 4).unwrap();
        let u = RingElem::parse(&r, "1 + a").unwrap();
        let inv = u.is_unit().unwrap().unwrap();
        assert_eq!(inv, RingElem::parse(&r, "1 + a + a^2 + a^3").unwrap());
        assert!(RingElem::parse(&r, "a").unwrap().is_unit().unwrap().is_none());
        assert_eq!(RingElem::one(&r).is_unit().unwrap().unwrap(), RingElem::one(&r));
    }

    #[test]
    fn units_in_polynomial_rings() {
        let r = RingSpec::polynomial(Base::Rationals, &["x"]);
        assert!(RingElem::parse(&r, "x").unwrap().is_unit().unwrap().is_none());
        assert!(RingElem::parse(&r, "3").unwrap().is_unit().unwrap().is_some());
        let z4 = RingSpec::polynomial(Base::ModN(4), &["x"]);
        let e = RingElem::parse(&z4, "1 + 2*x").unwrap();
        let inv = e.is_unit().unwrap().unwrap();
        assert!((&e * &inv).is_one());
        assert!(RingElem::parse(&z4, "1 + x").unwrap().is_unit().unwrap().is_none());
        let q = kaxy(Base::Rationals, "x*y - a^2");
        assert!(matches!(
            RingElem::parse(&q, "1 + x").unwrap().is_unit(),
            Err(Error::UnsupportedSpec(_))
        ));
    }

    #[test]
    fn residue_of_overring() {
        let b = RingSpec::builder(Base::ModN(2), &["a", "x", "y"])
            .relation("x*y - a^2")
            .truncate(&["a"], 4)
            .build()
            .unwrap();
        let res = b.residue().unwrap();
        assert_eq!(res.vars(), &["x".to_string(), "y".to_string()]);
        let e = RingElem::parse(&b, "x*y + 1 + a*x").unwrap();
        assert!(e.to_residue().unwrap().is_one());
    }

    #[test]
    fn domain_declaration() {
        assert!(kaxy(Base::Integers, "x*y - a^2").is_domain());
        assert!(!kaxy(Base::ModN(4), "x*y - a^2").is_domain());
        assert!(!RingSpec::truncated(Base::ModN(2), &["a"], &["a"], 2).unwrap().is_domain());
    }
}
