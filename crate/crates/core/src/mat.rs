//! Square matrices over a commutative ring with division-free determinants.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{same_spec, RingElem, RingSpec};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Mat<E: Scalar = RingElem> {
    r: usize,
    entries: Vec<E>,
}

impl<E: Scalar> fmt::Debug for Mat<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<E: Scalar> fmt::Display for Mat<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.r {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.r {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<E: Scalar> Mat<E> {
    /// Row-major entries; the count must be a perfect square.
    pub fn new(r: usize, entries: Vec<E>) -> Result<Mat<E>> {
        if r == 0 || entries.len() != r * r {
            return Err(Error::SizeMismatch(format!(
                "{} entries for a {r}x{r} matrix",
                entries.len()
            )));
        }
        Ok(Mat { r, entries })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Mat<E>> {
        let r = rows.len();
        if rows.iter().any(|row| row.len() != r) {
            return Err(Error::SizeMismatch("matrix is not square".into()));
        }
        Mat::new(r, rows.into_iter().flatten().collect())
    }

    pub fn identity(r: usize, one: &E) -> Mat<E> {
        let zero = one.zero_like();
        let entries = (0..r * r)
            .map(|k| if k / r == k % r { one.clone() } else { zero.clone() })
            .collect();
        Mat { r, entries }
    }

    pub fn zeros(r: usize, one: &E) -> Mat<E> {
        Mat {
            r,
            entries: vec![one.zero_like(); r * r],
        }
    }

    pub fn diag(d: &[E]) -> Mat<E> {
        let r = d.len();
        let mut m = Mat::zeros(r, &d[0]);
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn size(&self) -> usize {
        self.r
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    /// 0-based access.
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.r + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.entries[i * self.r + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.entries.chunks(self.r).map(|c| c.to_vec()).collect()
    }

    pub fn one(&self) -> E {
        self.entries[0].one_like()
    }

    pub fn map<F: Scalar>(&self, mut f: impl FnMut(&E) -> F) -> Mat<F> {
        Mat {
            r: self.r,
            entries: self.entries.iter().map(&mut f).collect(),
        }
    }

    pub fn try_map<F: Scalar>(&self, mut f: impl FnMut(&E) -> Result<F>) -> Result<Mat<F>> {
        Ok(Mat {
            r: self.r,
            entries: self.entries.iter().map(&mut f).collect::<Result<_>>()?,
        })
    }

    fn check_size(&self, o: &Mat<E>) -> Result<()> {
        if self.r == o.r {
            Ok(())
        } else {
            Err(Error::SizeMismatch(format!("{}x{0} vs {}x{1}", self.r, o.r)))
        }
    }

    pub fn mul(&self, o: &Mat<E>) -> Result<Mat<E>> {
        self.check_size(o)?;
        let r = self.r;
        let mut entries = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                let mut acc = self.get(i, 0).mul(o.get(0, j));
                for k in 1..r {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Mat { r, entries })
    }

    pub fn add(&self, o: &Mat<E>) -> Result<Mat<E>> {
        self.check_size(o)?;
        Ok(Mat {
            r: self.r,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, o: &Mat<E>) -> Result<Mat<E>> {
        self.check_size(o)?;
        Ok(Mat {
            r: self.r,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn neg(&self) -> Mat<E> {
        self.map(|e| e.neg())
    }

    pub fn scale(&self, c: &E) -> Mat<E> {
        self.map(|e| c.mul(e))
    }

    pub fn transpose(&self) -> Mat<E> {
        let r = self.r;
        Mat {
            r,
            entries: (0..r * r).map(|k| self.get(k % r, k / r).clone()).collect(),
        }
    }

    pub fn trace(&self) -> E {
        (1..self.r).fold(self.get(0, 0).clone(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.r).all(|i| {
            (0..self.r).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Block matrix `[[a, b], [c, d]]` from equal-size blocks.
    pub fn blocks(a: &Mat<E>, b: &Mat<E>, c: &Mat<E>, d: &Mat<E>) -> Result<Mat<E>> {
        a.check_size(b)?;
        a.check_size(c)?;
        a.check_size(d)?;
        let r = a.r;
        let n = 2 * r;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let blk = match (i < r, j < r) {
                    (true, true) => a,
                    (true, false) => b,
                    (false, true) => c,
                    (false, false) => d,
                };
                entries.push(blk.get(i % r, j % r).clone());
            }
        }
        Ok(Mat { r: n, entries })
    }

    /// `diag(a, b)` as a block matrix.
    pub fn block_diag(a: &Mat<E>, b: &Mat<E>) -> Result<Mat<E>> {
        let z = Mat::zeros(a.r, &a.one());
        Mat::blocks(a, &z, &z, b)
    }

    /// Determinant by expansion over column subsets: `O(r * 2^r)` ring
    /// operations, no division.
    pub fn det(&self) -> E {
        let r = self.r;
        let zero = self.entries[0].zero_like();
        let mut dp: Vec<Option<E>> = vec![None; 1 << r];
        dp[0] = Some(self.one());
        for mask in 0usize..(1 << r) {
            let Some(cur) = dp[mask].take() else {
                continue;
            };
            let row = mask.count_ones() as usize;
            if row == r {
                dp[mask] = Some(cur);
                continue;
            }
            if cur.is_zero() {
                continue;
            }
            for j in 0..r {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let a = self.get(row, j);
                if a.is_zero() {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let mut term = cur.mul(a);
                if above % 2 == 1 {
                    term = term.neg();
                }
                let slot = &mut dp[mask | (1 << j)];
                *slot = Some(match slot.take() {
                    Some(s) => s.add(&term),
                    None => term,
                });
            }
        }
        dp[(1 << r) - 1].take().unwrap_or(zero)
    }

    /// Matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Option<Mat<E>> {
        if self.r < 2 {
            return None;
        }
        let entries = (0..self.r)
            .filter(|&a| a != i)
            .flat_map(|a| (0..self.r).filter(move |&b| b != j).map(move |b| (a, b)))
            .map(|(a, b)| self.get(a, b).clone())
            .collect();
        Some(Mat {
            r: self.r - 1,
            entries,
        })
    }

    /// Classical adjugate: `m * adj(m) = det(m) * Id`.
    pub fn adjugate(&self) -> Mat<E> {
        let r = self.r;
        if r == 1 {
            return Mat::identity(1, &self.one());
        }
        let mut out = Mat::zeros(r, &self.one());
        for i in 0..r {
            for j in 0..r {
                let d = self.minor(i, j).expect("r >= 2").det();
                out.set(j, i, if (i + j) % 2 == 0 { d } else { d.neg() });
            }
        }
        out
    }
}

impl Mat<RingElem> {
    pub fn identity_in(spec: &Arc<RingSpec>, r: usize) -> Mat<RingElem> {
        Mat::identity(r, &RingElem::one(spec))
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        self.entries[0].spec()
    }

    /// Checks that all entries live in one ring.
    pub fn check_spec(&self, spec: &Arc<RingSpec>) -> Result<()> {
        if self.entries.iter().all(|e| same_spec(e.spec(), spec)) {
            Ok(())
        } else {
            Err(Error::SpecMismatch(format!("matrix entries are not all in {spec}")))
        }
    }

    /// Parses entries in the expression grammar.
    pub fn parse(spec: &Arc<RingSpec>, rows: &[Vec<&str>]) -> Result<Mat<RingElem>> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|s| RingElem::parse(spec, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Mat::from_rows(rows)
    }

    /// `det^-1 * adj` when the determinant is a unit.
    pub fn adjugate_inverse(&self) -> Result<Mat<RingElem>> {
        let d = self.det();
        let inv = d
            .is_unit()?
            .ok_or_else(|| Error::NotInvertible(format!("determinant {d} is not a unit")))?;
        let out = self.adjugate().scale(&inv);
        if !self.mul(&out)?.is_identity() {
            return Err(Error::SelfCheck("adjugate inverse failed to verify".into()));
        }
        Ok(out)
    }

    pub fn apply_hom(&self, h: &crate::hom::RingHom) -> Result<Mat<RingElem>> {
        self.try_map(|e| h.apply(e))
    }
}
