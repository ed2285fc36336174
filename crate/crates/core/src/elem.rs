//! Elementary generators `e_{ij}(z)`, words in them, and the Whitehead
//! factorization of `diag(s, s^-1)`.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::ring::RingElem;
use crate::scalar::Scalar;

/// `e_{ij}(z)`: identity plus `z` at row `i`, column `j` (1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct ElemGen<E: Scalar = RingElem> {
    pub i: usize,
    pub j: usize,
    pub z: E,
}

impl<E: Scalar> ElemGen<E> {
    pub fn new(i: usize, j: usize, z: E) -> ElemGen<E> {
        ElemGen { i, j, z }
    }

    pub fn inverse(&self) -> ElemGen<E> {
        ElemGen::new(self.i, self.j, self.z.neg())
    }

    pub fn to_mat(&self, r: usize) -> Mat<E> {
        let mut m = Mat::identity(r, &self.z.one_like());
        m.set(self.i - 1, self.j - 1, self.z.clone());
        m
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ElemWord<E: Scalar = RingElem> {
    pub r: usize,
    pub gens: Vec<ElemGen<E>>,
}

impl<E: Scalar> ElemWord<E> {
    pub fn new(r: usize, gens: Vec<ElemGen<E>>) -> Result<ElemWord<E>> {
        for g in &gens {
            if g.i == g.j || g.i == 0 || g.j == 0 || g.i > r || g.j > r {
                return Err(Error::SizeMismatch(format!(
                    "generator e_{{{},{}}} is invalid for r = {r}",
                    g.i, g.j
                )));
            }
        }
        Ok(ElemWord { r, gens })
    }

    pub fn empty(r: usize) -> ElemWord<E> {
        ElemWord { r, gens: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn push(&mut self, i: usize, j: usize, z: E) {
        debug_assert!(i != j && i >= 1 && j >= 1 && i <= self.r && j <= self.r);
        self.gens.push(ElemGen::new(i, j, z));
    }

    /// Pushes unless `z` is zero.
    pub fn push_nonzero(&mut self, i: usize, j: usize, z: E) {
        if !z.is_zero() {
            self.push(i, j, z);
        }
    }

    pub fn concat(&self, o: &ElemWord<E>) -> ElemWord<E> {
        let mut gens = self.gens.clone();
        gens.extend(o.gens.iter().cloned());
        ElemWord { r: self.r, gens }
    }

    pub fn inverse(&self) -> ElemWord<E> {
        ElemWord {
            r: self.r,
            gens: self.gens.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    pub fn map<F: Scalar>(&self, mut f: impl FnMut(&E) -> F) -> ElemWord<F> {
        ElemWord {
            r: self.r,
            gens: self.gens.iter().map(|g| ElemGen::new(g.i, g.j, f(&g.z))).collect(),
        }
    }

    pub fn try_map<F: Scalar>(&self, mut f: impl FnMut(&E) -> Result<F>) -> Result<ElemWord<F>> {
        Ok(ElemWord {
            r: self.r,
            gens: self
                .gens
                .iter()
                .map(|g| Ok(ElemGen::new(g.i, g.j, f(&g.z)?)))
                .collect::<Result<_>>()?,
        })
    }

    /// Left-to-right product; `one` fixes the ring for the empty word.
    pub fn to_mat(&self, one: &E) -> Mat<E> {
        let mut m = Mat::identity(self.r, one);
        for g in &self.gens {
            right_mul_elem(&mut m, g);
        }
        m
    }
}

impl ElemWord<RingElem> {
    pub fn to_mat_in(&self, spec: &std::sync::Arc<crate::ring::RingSpec>) -> Mat<RingElem> {
        self.to_mat(&RingElem::one(spec))
    }
}

/// `m <- m * e_{ij}(z)`: adds `z` times column `i` to column `j`.
pub fn right_mul_elem<E: Scalar>(m: &mut Mat<E>, g: &ElemGen<E>) {
    let (i, j) = (g.i - 1, g.j - 1);
    for row in 0..m.size() {
        let a = m.get(row, i);
        if a.is_zero() {
            continue;
        }
        let v = m.get(row, j).add(&a.mul(&g.z));
        m.set(row, j, v);
    }
}

/// `m <- e_{ij}(z) * m`: adds `z` times row `j` to row `i`.
pub fn left_mul_elem<E: Scalar>(g: &ElemGen<E>, m: &mut Mat<E>) {
    let (i, j) = (g.i - 1, g.j - 1);
    for col in 0..m.size() {
        let a = m.get(j, col);
        if a.is_zero() {
            continue;
        }
        let v = m.get(i, col).add(&g.z.mul(a));
        m.set(i, col, v);
    }
}

/// Generator count bound for [`whitehead_word`]: three triangular blocks
/// for `s` plus three for the rotation.
pub fn whitehead_length_bound(r: usize) -> usize {
    3 * r * r + 3 * r
}

/// Word for `[[I, m], [0, I]]` (upper) or `[[I, 0], [m, I]]` (lower) in size `2r`.
fn triangular<E: Scalar>(out: &mut ElemWord<E>, m: &Mat<E>, upper: bool) {
    let r = m.size();
    for i in 0..r {
        for j in 0..r {
            let z = m.get(i, j).clone();
            if upper {
                out.push_nonzero(i + 1, r + j + 1, z);
            } else {
                out.push_nonzero(r + i + 1, j + 1, z);
            }
        }
    }
}

/// Elementary word for `diag(s, s_inv)` given a two-sided inverse, via
/// `[[I,s],[0,I]] [[I,0],[-s_inv,I]] [[I,s],[0,I]] [[0,-I],[I,0]]` with the
/// rotation itself written as three triangular blocks.
pub fn whitehead_word<E: Scalar>(s: &Mat<E>, s_inv: &Mat<E>) -> Result<ElemWord<E>> {
    let r = s.size();
    if s_inv.size() != r {
        return Err(Error::SizeMismatch("inverse has a different size".into()));
    }
    let one = s.one();
    let id = Mat::identity(r, &one);
    let mut w = ElemWord::empty(2 * r);
    triangular(&mut w, s, true);
    triangular(&mut w, &s_inv.neg(), false);
    triangular(&mut w, s, true);
    triangular(&mut w, &id.neg(), true);
    triangular(&mut w, &id, false);
    triangular(&mut w, &id.neg(), true);
    Ok(w)
}

/// Elementary word whose product is `diag(s, s^-1)`.
pub fn whitehead_double(s: &Mat<RingElem>) -> Result<ElemWord<RingElem>> {
    let inv = s.adjugate_inverse()?;
    let w = whitehead_word(s, &inv)?;
    let expect = Mat::block_diag(s, &inv)?;
    if w.to_mat(&s.one()) != expect {
        return Err(Error::SelfCheck("Whitehead word does not remultiply".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Base;
    use crate::ring::RingSpec;

    #[test]
    fn empty_word_is_identity() {
        let r = RingSpec::polynomial(Base::Integers, &["x"]);
        assert!(ElemWord::<RingElem>::empty(2).to_mat_in(&r).is_identity());
    }

    #[test]
    fn parameters_add() {
        let r = RingSpec::polynomial(Base::Integers, &["z", "w"]);
        let z = RingElem::var(&r, "z").unwrap();
        let w = RingElem::var(&r, "w").unwrap();
        let word = ElemWord::new(2, vec![ElemGen::new(1, 2, z.clone()), ElemGen::new(1, 2, w.clone())]).unwrap();
        assert_eq!(word.to_mat_in(&r), ElemGen::new(1, 2, &z + &w).to_mat(2));
    }

    #[test]
    fn left_and_right_actions_agree_with_products() {
        let r = RingSpec::polynomial(Base::Integers, &["x"]);
        let m = Mat::parse(&r, &[vec!["1", "x", "2"], vec!["x", "3", "0"], vec!["1", "1", "x"]]).unwrap();
        let g = ElemGen::new(3, 1, RingElem::parse(&r, "x + 1").unwrap());
        let mut right = m.clone();
        right_mul_elem(&mut right, &g);
        assert_eq!(right, m.mul(&g.to_mat(3)).unwrap());
        let mut left = m.clone();
        left_mul_elem(&g, &mut left);
        assert_eq!(left, g.to_mat(3).mul(&m).unwrap());
    }

    #[test]
    fn whitehead_on_rotation() {
        let r = RingSpec::polynomial(Base::Integers, &["x"]);
        let s = Mat::parse(&r, &[vec!["0", "-1"], vec!["1", "0"]]).unwrap();
        let w = whitehead_double(&s).unwrap();
        assert!(w.len() <= whitehead_length_bound(2));
        let inv = s.adjugate_inverse().unwrap();
        assert_eq!(w.to_mat_in(&r), Mat::block_diag(&s, &inv).unwrap());
    }

    #[test]
    fn whitehead_on_truncated_units() {
        let r = RingSpec::truncated(Base::ModN(2), &["a"], &["a"], 4).unwrap();
        let u = RingElem::parse(&r, "1 + a").unwrap();
        let ui = u.is_unit().unwrap().unwrap();
        let s = Mat::diag(&[u, ui]);
        let w = whitehead_double(&s).unwrap();
        assert_eq!(w.to_mat_in(&r), Mat::block_diag(&s, &s.adjugate_inverse().unwrap()).unwrap());
    }

    #[test]
    fn whitehead_on_identity() {
        let r = RingSpec::polynomial(Base::ModN(2), &["x"]);
        let w = whitehead_double(&Mat::identity_in(&r, 2)).unwrap();
        assert!(w.to_mat_in(&r).is_identity());
    }
}
