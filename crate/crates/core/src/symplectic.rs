//! The standard alternating form `chi_r`, the generators `se_{ij}(z)` of the
//! elementary symplectic group, and hyperbolic Gram matrices.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::ring::RingElem;
use crate::scalar::Scalar;

/// Partner index: swaps `2k - 1` and `2k` (1-based).
pub fn partner(i: usize) -> usize {
    if i.is_multiple_of(2) {
        i - 1
    } else {
        i + 1
    }
}

/// `2r x 2r` block diagonal with blocks `[[0, 1], [-1, 0]]`.
pub fn chi<E: Scalar>(r: usize, one: &E) -> Mat<E> {
    let mut m = Mat::zeros(2 * r, one);
    for k in 0..r {
        m.set(2 * k, 2 * k + 1, one.clone());
        m.set(2 * k + 1, 2 * k, one.neg());
    }
    m
}

/// Symplectic generator `se_{ij}(z)`, indices 1-based in `1..=2r`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpGen<E: Scalar = RingElem> {
    pub i: usize,
    pub j: usize,
    pub z: E,
}

impl<E: Scalar> SpGen<E> {
    pub fn new(i: usize, j: usize, z: E) -> SpGen<E> {
        SpGen { i, j, z }
    }

    /// `I + z e_{ij}` when `i` is the partner of `j`, otherwise
    /// `I + z e_{ij} - (-1)^(i+j) z e_{p(j), p(i)}`. The second case is used
    /// for `i > j` as well; it is symplectic there too.
    pub fn to_mat(&self, r: usize) -> Mat<E> {
        let (i, j) = (self.i, self.j);
        let mut m = Mat::identity(2 * r, &self.z.one_like());
        m.set(i - 1, j - 1, self.z.clone());
        if i != partner(j) {
            let (pj, pi) = (partner(j) - 1, partner(i) - 1);
            let extra = if (i + j) % 2 == 0 { self.z.neg() } else { self.z.clone() };
            let v = m.get(pj, pi).add(&extra);
            m.set(pj, pi, v);
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpWord<E: Scalar = RingElem> {
    pub r: usize,
    pub gens: Vec<SpGen<E>>,
}

impl<E: Scalar> SpWord<E> {
    pub fn new(r: usize, gens: Vec<SpGen<E>>) -> Result<SpWord<E>> {
        for g in &gens {
            if g.i == g.j || g.i == 0 || g.j == 0 || g.i > 2 * r || g.j > 2 * r {
                return Err(Error::SizeMismatch(format!(
                    "generator se_{{{},{}}} is invalid for r = {r}",
                    g.i, g.j
                )));
            }
        }
        Ok(SpWord { r, gens })
    }

    pub fn to_mat(&self, one: &E) -> Mat<E> {
        let mut m = Mat::identity(2 * self.r, one);
        for g in &self.gens {
            m = m.mul(&g.to_mat(self.r)).expect("sizes agree");
        }
        m
    }
}

/// `m^t chi_r m == chi_r`.
pub fn is_symplectic<E: Scalar>(m: &Mat<E>, r: usize) -> Result<bool> {
    if m.size() != 2 * r {
        return Err(Error::SizeMismatch(format!("expected {0}x{0}, got {1}x{1}", 2 * r, m.size())));
    }
    let c = chi(r, &m.one());
    Ok(m.transpose().mul(&c)?.mul(m)? == c)
}

/// Gram matrix of `h((x, f), (y, g)) = f(y) - g(x)` on `R^n + (R^n)^*`,
/// basis: standard vectors, then their duals.
pub fn hyperbolic_form<E: Scalar>(n: usize, one: &E) -> Mat<E> {
    let mut m = Mat::zeros(2 * n, one);
    for k in 0..n {
        // h(e_k, e_k^*) = 0 - e_k^*(e_k) = -1; h(e_k^*, e_k) = e_k^*(e_k) - 0 = 1.
        m.set(k, n + k, one.neg());
        m.set(n + k, k, one.clone());
    }
    m
}

/// `m^t = -m` with zero diagonal.
pub fn is_alternating<E: Scalar>(m: &Mat<E>) -> bool {
    let r = m.size();
    (0..r).all(|i| m.get(i, i).is_zero() && (0..r).all(|j| m.get(j, i).add(m.get(i, j)).is_zero()))
}
