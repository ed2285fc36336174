//! Unimodular rows, the elementary action on them, orbit tables over finite
//! rings, stable-range reduction over semilocal rings, and the Murthy row.

use std::sync::Arc;

use crate::coeff::{Base, Coeff};
use crate::elem::ElemWord;
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::mat::Mat;
use crate::poly::{Monomial, MultiPoly};
use crate::ring::{RingElem, RingSpec};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Enumeration budget: `MATPATCH_BUDGET` if set, else [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("MATPATCH_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// A row with a Bezout witness: `sum c_i a_i = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct UmRow {
    pub entries: Vec<RingElem>,
    pub witness: Vec<RingElem>,
}

impl UmRow {
    pub fn new(entries: Vec<RingElem>, witness: Vec<RingElem>) -> Result<UmRow> {
        let row = UmRow { entries, witness };
        if row.entries.is_empty() || row.entries.len() != row.witness.len() {
            return Err(Error::SizeMismatch("row and witness lengths differ".into()));
        }
        if !row.bezout_sum()?.is_one() {
            return Err(Error::NotComaximal(format!("witness sum is {}", row.bezout_sum()?)));
        }
        Ok(row)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        self.entries[0].spec()
    }

    pub fn bezout_sum(&self) -> Result<RingElem> {
        let mut acc = RingElem::zero(self.entries[0].spec());
        for (a, c) in self.entries.iter().zip(&self.witness) {
            acc = acc.try_add(&a.try_mul(c)?)?;
        }
        Ok(acc)
    }
}

/// `row * w`; the witness column moves by the inverse word.
pub fn apply_word(row: &UmRow, w: &ElemWord<RingElem>) -> Result<UmRow> {
    if w.r != row.len() {
        return Err(Error::SizeMismatch(format!("word of size {} on a row of length {}", w.r, row.len())));
    }
    let mut a = row.entries.clone();
    let mut c = row.witness.clone();
    for g in &w.gens {
        let (i, j) = (g.i - 1, g.j - 1);
        a[j] = a[j].try_add(&a[i].try_mul(&g.z)?)?;
        c[i] = c[i].try_sub(&g.z.try_mul(&c[j])?)?;
    }
    let out = UmRow {
        entries: a,
        witness: c,
    };
    if !out.bezout_sum()?.is_one() {
        return Err(Error::SelfCheck("transported witness lost the Bezout identity".into()));
    }
    Ok(out)
}

/// `M` is invertible with first row equal to `row`.
pub fn completion_check(row: &[RingElem], m: &Mat<RingElem>) -> bool {
    if m.size() != row.len() || m.rows()[0] != row {
        return false;
    }
    matches!(m.det().is_unit(), Ok(Some(_)))
}

/// The finite ring `(Z/n)[vars]/(rules)`, every variable bounded by a
/// pure-power rule or by the truncation. Elements are indexed by their
/// coefficient vectors on the standard monomials (ascending graded-lex,
/// the constant being the least significant digit).
#[derive(Clone, Debug)]
pub struct FiniteRingEnum {
    spec: Arc<RingSpec>,
    modulus: u64,
    monomials: Vec<Monomial>,
    size: u64,
}

impl FiniteRingEnum {
    pub fn new(spec: &Arc<RingSpec>) -> Result<FiniteRingEnum> {
        let modulus = match spec.base() {
            Base::ModN(n) => *n,
            b => return Err(Error::NotFinite(format!("coefficient base {b} is infinite"))),
        };
        if !spec.is_confluent() {
            return Err(Error::RelationNotConfluent(spec.to_string()));
        }
        let nv = spec.nvars();
        let trunc = spec.truncation();
        let mut bounds = Vec::with_capacity(nv);
        for i in 0..nv {
            let mut b = trunc.filter(|t| t.vars.contains(&i)).map(|t| t.order);
            for r in spec.rules() {
                if r.lead.support_len() == 1 && r.lead.0[i] > 0 {
                    b = Some(b.map_or(r.lead.0[i], |x| x.min(r.lead.0[i])));
                }
            }
            bounds.push(b.ok_or_else(|| Error::NotFinite(format!("variable `{}` is not bounded", spec.vars()[i])))?);
        }
        let mut monomials = Vec::new();
        let mut cur = vec![0u32; nv];
        loop {
            let m = Monomial::from_exps(&cur);
            let killed = trunc.is_some_and(|t| m.degree_in(&t.vars) >= t.order as u64);
            if !killed && !spec.rules().iter().any(|r| r.lead.divides(&m)) {
                monomials.push(m);
            }
            let mut k = 0;
            while k < nv {
                cur[k] += 1;
                if cur[k] < bounds[k] {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
            if k == nv {
                break;
            }
        }
        monomials.sort();
        let size = (modulus as u128)
            .checked_pow(monomials.len() as u32)
            .filter(|s| *s <= u64::MAX as u128)
            .ok_or_else(|| Error::NotFinite("ring is too large to index".into()))? as u64;
        Ok(FiniteRingEnum {
            spec: spec.clone(),
            modulus,
            monomials,
            size,
        })
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn element(&self, mut idx: u64) -> RingElem {
        let base = self.spec.base();
        let mut terms = Vec::new();
        for m in &self.monomials {
            let d = idx % self.modulus;
            idx /= self.modulus;
            if d != 0 {
                terms.push((m.clone(), Coeff::Mod(d)));
            }
        }
        RingElem::from_poly(&self.spec, &MultiPoly::from_terms(base, self.spec.nvars(), terms))
            .expect("standard monomials are normal forms")
    }

    pub fn index(&self, e: &RingElem) -> Result<u64> {
        if !crate::ring::same_spec(e.spec(), &self.spec) {
            return Err(Error::SpecMismatch("element is not in the enumerated ring".into()));
        }
        let mut idx = 0u64;
        for m in self.monomials.iter().rev() {
            let d = match e.poly().coeff_of(m) {
                Some(Coeff::Mod(d)) => *d,
                _ => 0,
            };
            idx = idx * self.modulus + d;
        }
        Ok(idx)
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElem> + '_ {
        (0..self.size).map(|i| self.element(i))
    }

    /// Monomials with coefficient one: they generate the additive group.
    fn additive_generators(&self) -> Vec<u64> {
        (0..self.monomials.len()).map(|k| self.modulus.pow(k as u32)).collect()
    }

    fn add_idx(&self, mut a: u64, mut b: u64) -> u64 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.monomials.len() {
            out += ((a % self.modulus + b % self.modulus) % self.modulus) * place;
            a /= self.modulus;
            b /= self.modulus;
            place *= self.modulus;
        }
        out
    }
}

/// Dense arithmetic tables and the maximal ideals of a finite ring.
struct Tables {
    n: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    /// Membership bitmaps of the maximal ideals.
    maximal: Vec<Vec<bool>>,
}

impl Tables {
    fn new(ring: &FiniteRingEnum) -> Tables {
        let n = ring.size() as usize;
        let elems: Vec<RingElem> = ring.elements().collect();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ring.add_idx(a as u64, b as u64) as u32;
                mul[a * n + b] = ring.index(&(&elems[a] * &elems[b])).expect("same ring") as u32;
            }
        }
        let mut t = Tables {
            n,
            add,
            mul,
            maximal: Vec::new(),
        };
        t.maximal = t.find_maximal();
        t
    }

    fn is_unit(&self, a: usize) -> bool {
        (0..self.n).any(|b| self.mul[a * self.n + b] == 1)
    }

    fn principal(&self, a: usize) -> Vec<bool> {
        let mut s = vec![false; self.n];
        for b in 0..self.n {
            s[self.mul[a * self.n + b] as usize] = true;
        }
        s
    }

    fn sum(&self, i: &[bool], j: &[bool]) -> Vec<bool> {
        let mut s = vec![false; self.n];
        for a in (0..self.n).filter(|&a| i[a]) {
            for b in (0..self.n).filter(|&b| j[b]) {
                s[self.add[a * self.n + b] as usize] = true;
            }
        }
        s
    }

    fn find_maximal(&self) -> Vec<Vec<bool>> {
        let units: Vec<bool> = (0..self.n).map(|a| self.is_unit(a)).collect();
        let mut found: Vec<Vec<bool>> = Vec::new();
        for a in 0..self.n {
            if units[a] || found.iter().any(|m| m[a]) {
                continue;
            }
            let mut ideal = self.principal(a);
            for b in 0..self.n {
                if ideal[b] || units[b] {
                    continue;
                }
                let bigger = self.sum(&ideal, &self.principal(b));
                if !(0..self.n).any(|x| bigger[x] && units[x]) {
                    ideal = bigger;
                }
            }
            found.push(ideal);
        }
        found
    }

    fn unimodular(&self, row: &[u32]) -> bool {
        self.maximal.iter().all(|m| row.iter().any(|&a| !m[a as usize]))
    }
}

/// How the BFS frontier is expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses rayon with the `parallel` feature, otherwise sequential.
    Parallel,
}

impl Default for Exec {
    fn default() -> Exec {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Orbit {
    /// Lexicographically least member.
    pub rep: Vec<RingElem>,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitTable {
    pub r: usize,
    pub ring: String,
    pub orbits: Vec<Orbit>,
    /// `|Um_r|`, counted independently of the orbit search.
    pub unimodular_rows: u64,
}

impl OrbitTable {
    pub fn sizes_sum(&self) -> u64 {
        self.orbits.iter().map(|o| o.size).sum()
    }
}

fn encode(row: &[u32], n: u64) -> u64 {
    row.iter().fold(0, |acc, &a| acc * n + a as u64)
}

fn decode(mut code: u64, n: u64, r: usize) -> Vec<u32> {
    let mut row = vec![0u32; r];
    for k in (0..r).rev() {
        row[k] = (code % n) as u32;
        code /= n;
    }
    row
}

/// Elementary orbits on `Um_r` by breadth-first closure.
pub fn orbit_enum(ring: &FiniteRingEnum, r: usize, budget: u64, exec: Exec) -> Result<OrbitTable> {
    if r == 0 {
        return Err(Error::Input("rows must have positive length".into()));
    }
    let n = ring.size();
    let rows = (n as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    let needed = rows.max(n as u128 * n as u128).min(u64::MAX as u128) as u64;
    if needed > budget {
        return Err(Error::BudgetExceeded { budget, needed });
    }
    let tables = Tables::new(ring);
    let total = rows as usize;
    let gens = ring.additive_generators();
    let moves: Vec<(usize, usize, u64)> = (0..r)
        .flat_map(|i| (0..r).filter(move |&j| j != i).map(move |j| (i, j)))
        .flat_map(|(i, j)| gens.iter().map(move |&z| (i, j, z)))
        .collect();
    let neighbours = |code: u64| -> Vec<u64> {
        let row = decode(code, n, r);
        moves
            .iter()
            .map(|&(i, j, z)| {
                let mut next = row.clone();
                let prod = tables.mul[row[i] as usize * tables.n + z as usize];
                next[j] = tables.add[row[j] as usize * tables.n + prod as usize];
                encode(&next, n)
            })
            .collect()
    };
    let mut visited = vec![false; total];
    let mut orbits = Vec::new();
    let mut unimodular_rows = 0;
    for start in 0..total as u64 {
        let row = decode(start, n, r);
        if !tables.unimodular(&row) {
            continue;
        }
        unimodular_rows += 1;
        if visited[start as usize] {
            continue;
        }
        visited[start as usize] = true;
        let mut size = 1u64;
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            let found = expand(&frontier, &neighbours, exec);
            let mut next = Vec::new();
            for c in found {
                if !visited[c as usize] {
                    visited[c as usize] = true;
                    next.push(c);
                }
            }
            size += next.len() as u64;
            frontier = next;
        }
        orbits.push(Orbit {
            rep: row.iter().map(|&a| ring.element(a as u64)).collect(),
            size,
        });
    }
    Ok(OrbitTable {
        r,
        ring: ring.spec().to_string(),
        orbits,
        unimodular_rows,
    })
}

fn expand(frontier: &[u64], neighbours: &(impl Fn(u64) -> Vec<u64> + Sync), exec: Exec) -> Vec<u64> {
    #[cfg(feature = "parallel")]
    if exec == Exec::Parallel {
        use rayon::prelude::*;
        return frontier.par_iter().flat_map_iter(|&c| neighbours(c)).collect();
    }
    let _ = exec;
    frontier.iter().flat_map(|&c| neighbours(c)).collect()
}

/// Surjections onto the residue fields at all maximal ideals.
#[derive(Clone, Debug)]
pub struct SemilocalPresentation {
    pub spec: Arc<RingSpec>,
    pub maps: Vec<RingHom>,
}

impl SemilocalPresentation {
    pub fn new(spec: &Arc<RingSpec>, maps: Vec<RingHom>) -> Result<SemilocalPresentation> {
        for m in &maps {
            if !crate::ring::same_spec(m.source(), spec) {
                return Err(Error::SpecMismatch("residue map has the wrong source".into()));
            }
            let t = m.target();
            let field = t.base().is_field() && t.nvars() == 0
                || FiniteRingEnum::new(t).is_ok_and(|f| {
                    let tb = Tables::new(&f);
                    tb.maximal.len() == 1 && (0..tb.n).filter(|&a| tb.maximal[0][a]).count() == 1
                });
            if !field {
                return Err(Error::Input(format!("{t} is not recognised as a field")));
            }
        }
        Ok(SemilocalPresentation {
            spec: spec.clone(),
            maps,
        })
    }

    /// Unit in the ring when decidable there, else nonzero in every residue field.
    pub fn is_unit(&self, e: &RingElem) -> Result<bool> {
        if let Ok(v) = e.is_unit() {
            return Ok(v.is_some());
        }
        for m in &self.maps {
            if m.apply(e)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Candidate coefficients: the whole ring when it is finite, otherwise
    /// small integer constants.
    pub fn search_set(&self) -> Vec<RingElem> {
        match FiniteRingEnum::new(&self.spec) {
            Ok(f) if f.size() <= 4096 => f.elements().collect(),
            _ => (0..8).map(|k| RingElem::from_i64(&self.spec, k)).collect(),
        }
    }
}

pub const SEMILOCAL_SEARCH_BUDGET: usize = 200_000;

/// A word moving the row to one with a unit entry: some column `k` gets
/// `sum_{j != k} c_j a_j` added, coefficient vectors tried in order of their
/// largest index into the search set, then lexicographically.
pub fn semilocal_reduce(row: &[RingElem], pres: &SemilocalPresentation) -> Result<ElemWord<RingElem>> {
    let r = row.len();
    if r < 2 {
        return Err(Error::Input("rows of length at least 2 are required".into()));
    }
    for a in row {
        if pres.is_unit(a)? {
            return Ok(ElemWord::empty(r));
        }
    }
    let set = pres.search_set();
    let s = set.len();
    let mut tried = 0usize;
    for radius in 1..s {
        for k in 0..r {
            let others: Vec<usize> = (0..r).filter(|&j| j != k).collect();
            let mut idx = vec![0usize; r - 1];
            loop {
                if idx.contains(&radius) {
                    tried += 1;
                    if tried > SEMILOCAL_SEARCH_BUDGET {
                        return Err(Error::NoWitnessFound);
                    }
                    let mut v = row[k].clone();
                    for (&j, &i) in others.iter().zip(&idx) {
                        v = &v + &(&row[j] * &set[i]);
                    }
                    if pres.is_unit(&v)? {
                        let mut w = ElemWord::empty(r);
                        for (&j, &i) in others.iter().zip(&idx) {
                            w.push_nonzero(j + 1, k + 1, set[i].clone());
                        }
                        return Ok(w);
                    }
                }
                let mut p = r - 2;
                loop {
                    idx[p] += 1;
                    if idx[p] <= radius {
                        break;
                    }
                    idx[p] = 0;
                    if p == 0 {
                        break;
                    }
                    p -= 1;
                }
                if idx.iter().all(|&i| i == 0) {
                    break;
                }
            }
        }
    }
    Err(Error::NoWitnessFound)
}

/// `F2[a,x1,y1,x2,y2]/(x1 y1 + x2 y2 - a^l)`.
pub fn murthy_spec(l: u32) -> Result<Arc<RingSpec>> {
    if l < 2 {
        return Err(Error::Input("the exponent must be at least 2".into()));
    }
    RingSpec::builder(Base::ModN(2), &["a", "x1", "y1", "x2", "y2"])
        .relation(format!("x1*y1 + x2*y2 - a^{l}"))
        .build()
}

/// `(1 + a, x1, x2)` with witness `(sum_{i<l} a^i, y1, y2)`.
pub fn murthy_row(l: u32) -> Result<UmRow> {
    let spec = murthy_spec(l)?;
    let v = |n: &str| RingElem::var(&spec, n).expect("murthy variable");
    let a = v("a");
    let one = RingElem::one(&spec);
    let geom = (0..l).fold(RingElem::zero(&spec), |acc, i| &acc + &a.pow(i));
    UmRow::new(vec![&one + &a, v("x1"), v("x2")], vec![geom, v("y1"), v("y2")])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;
    use crate::elem::ElemGen;

    fn zn(n: u64) -> Arc<RingSpec> {
        RingSpec::polynomial(Base::ModN(n), &[] as &[&str])
    }

    #[test]
    fn word_action_keeps_witness() {
        let r = zn(2);
        let one = RingElem::one(&r);
        let zero = RingElem::zero(&r);
        let row = UmRow::new(vec![one.clone(), zero.clone()], vec![one.clone(), zero.clone()]).unwrap();
        assert_eq!(apply_word(&row, &ElemWord::empty(2)).unwrap(), row);
        let w = ElemWord::new(2, vec![ElemGen::new(1, 2, one.clone())]).unwrap();
        let moved = apply_word(&row, &w).unwrap();
        assert_eq!(moved.entries, vec![one.clone(), one.clone()]);
        assert!(moved.bezout_sum().unwrap().is_one());
    }

    #[test]
    fn completion_examples() {
        let r = RingSpec::polynomial(Base::ModN(2), &["a"]);
        let row = vec![RingElem::parse(&r, "a").unwrap(), RingElem::parse(&r, "1 + a").unwrap()];
        let m = Mat::parse(&r, &[vec!["a", "1 + a"], vec!["1", "1"]]).unwrap();
        assert!(completion_check(&row, &m));
        let bad = Mat::parse(&r, &[vec!["1", "a"], vec!["0", "1"]]).unwrap();
        assert!(!completion_check(&row, &bad));
        let id = Mat::identity_in(&r, 2);
        assert!(completion_check(&id.rows()[0], &id));
    }

    #[test]
    fn finite_enumeration_is_exhaustive() {
        let r = RingSpec::truncated(Base::ModN(3), &["x"], &["x"], 2).unwrap();
        let f = FiniteRingEnum::new(&r).unwrap();
        assert_eq!(f.size(), 9);
        let all: BTreeSet<String> = f.elements().map(|e| e.to_string()).collect();
        assert_eq!(all.len(), 9);
        for i in 0..9 {
            assert_eq!(f.index(&f.element(i)).unwrap(), i);
        }
        let q = RingSpec::polynomial(Base::ModN(2), &["x"]);
        assert!(matches!(FiniteRingEnum::new(&q), Err(Error::NotFinite(_))));
    }

    #[test]
    fn small_orbit_tables() {
        let f2 = FiniteRingEnum::new(&zn(2)).unwrap();
        let t = orbit_enum(&f2, 2, DEFAULT_BUDGET, Exec::Sequential).unwrap();
        assert_eq!(t.orbits.len(), 1);
        assert_eq!(t.orbits[0].size, 3);
        let z4 = FiniteRingEnum::new(&zn(4)).unwrap();
        let t1 = orbit_enum(&z4, 1, DEFAULT_BUDGET, Exec::Sequential).unwrap();
        assert_eq!(t1.orbits.len(), 2);
        let t = orbit_enum(&z4, 3, DEFAULT_BUDGET, Exec::Parallel).unwrap();
        assert_eq!((t.orbits.len(), t.sizes_sum(), t.unimodular_rows), (1, 56, 56));
        assert!(matches!(
            orbit_enum(&z4, 3, 10, Exec::Sequential),
            Err(Error::BudgetExceeded { budget: 10, needed: 64 })
        ));
    }

    #[test]
    fn semilocal_examples() {
        let z6 = zn(6);
        let maps = [2u64, 3]
            .iter()
            .map(|&p| RingHom::new(&z6, &zn(p), Vec::new()).unwrap())
            .collect();
        let pres = SemilocalPresentation::new(&z6, maps).unwrap();
        let row = vec![RingElem::from_i64(&z6, 2), RingElem::from_i64(&z6, 3)];
        let w = semilocal_reduce(&row, &pres).unwrap();
        assert_eq!(w.gens, vec![ElemGen::new(2, 1, RingElem::one(&z6))]);

        let r = RingSpec::builder(Base::ModN(2), &["x"]).relation("x^2 - x").build().unwrap();
        let f2 = zn(2);
        let maps = ["0", "1"]
            .iter()
            .map(|v| RingHom::new(&r, &f2, vec![RingElem::parse(&f2, v).unwrap()]).unwrap())
            .collect();
        let pres = SemilocalPresentation::new(&r, maps).unwrap();
        let row = vec![RingElem::parse(&r, "x").unwrap(), RingElem::parse(&r, "1 - x").unwrap()];
        let w = semilocal_reduce(&row, &pres).unwrap();
        assert_eq!(w.len(), 1);
        let unit = vec![RingElem::one(&r), RingElem::parse(&r, "x").unwrap()];
        assert!(semilocal_reduce(&unit, &pres).unwrap().is_empty());
    }

    #[test]
    fn murthy_rows() {
        for l in 2..=4 {
            let row = murthy_row(l).unwrap();
            assert!(row.bezout_sum().unwrap().is_one());
        }
        assert!(murthy_row(1).is_err());
    }
}
