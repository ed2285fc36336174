//! Pseudoelementary certificates: a determinant-one matrix over `Z[T]`
//! together with an evaluation `T -> A`.

use std::sync::Arc;

use crate::coeff::{Base, Coeff};
use crate::elem::ElemWord;
use crate::error::{Error, Result};
use crate::hom::RingHom;
use crate::mat::Mat;
use crate::poly::MultiPoly;
use crate::ring::{RingElem, RingSpec};
use crate::scalar::{from_bigint, Scalar};

#[derive(Clone, Debug)]
pub struct PseudoCert<E: Scalar = RingElem> {
    vars: Vec<String>,
    spec: Arc<RingSpec>,
    sigma_prime: Mat<RingElem>,
    assign: Vec<E>,
    one: E,
}

/// Names `t1, ..., tn`.
pub fn fresh_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("t{i}")).collect()
}

/// `Z[names]`.
pub fn integral_spec(names: &[String]) -> Arc<RingSpec> {
    RingSpec::polynomial(Base::Integers, names)
}

/// Evaluates an integral polynomial at `vals`.
pub fn eval_integral<E: Scalar>(p: &MultiPoly, vals: &[E], one: &E) -> E {
    let mut acc = one.zero_like();
    for (m, c) in p.terms() {
        let Coeff::Int(n) = c else {
            unreachable!("integral polynomial with non-integer coefficient")
        };
        let mut t = from_bigint(one, n);
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                t = t.mul(&vals[i]);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

impl<E: Scalar> PseudoCert<E> {
    /// Checks `det(sigma_prime) = 1` over `Z[vars]`. `one` fixes the target
    /// ring when there are no variables.
    pub fn new(vars: Vec<String>, sigma_prime: Mat<RingElem>, assign: Vec<E>, one: E) -> Result<PseudoCert<E>> {
        if sigma_prime.size() != 2 {
            return Err(Error::SizeMismatch("certificates are 2x2".into()));
        }
        if vars.len() != assign.len() {
            return Err(Error::NotAHom(format!(
                "{} variables but {} assigned values",
                vars.len(),
                assign.len()
            )));
        }
        let spec = integral_spec(&vars);
        let sp = sigma_prime.try_map(|e| e.coerce(&spec))?;
        if !sp.det().is_one() {
            return Err(Error::CertInvalid(format!("det of {sp} is not 1")));
        }
        Ok(PseudoCert {
            vars,
            spec,
            sigma_prime: sp,
            assign,
            one,
        })
    }

    pub fn identity(one: &E) -> PseudoCert<E> {
        let spec = integral_spec(&[]);
        PseudoCert {
            vars: Vec::new(),
            sigma_prime: Mat::identity_in(&spec, 2),
            spec,
            assign: Vec::new(),
            one: one.clone(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn integral_spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn sigma_prime(&self) -> &Mat<RingElem> {
        &self.sigma_prime
    }

    pub fn assignment(&self) -> &[E] {
        &self.assign
    }

    pub fn one(&self) -> &E {
        &self.one
    }

    /// The certified matrix `phi(sigma')`.
    pub fn image(&self) -> Mat<E> {
        self.sigma_prime
            .map(|e| eval_integral(e.poly(), &self.assign, &self.one))
    }

    /// Re-checks the determinant and compares the image with `sigma`.
    pub fn verify(&self, sigma: &Mat<E>) -> Result<bool> {
        if sigma.size() != 2 {
            return Err(Error::SizeMismatch("certificates are 2x2".into()));
        }
        if !self.sigma_prime.det().is_one() {
            return Ok(false);
        }
        Ok(self.image() == *sigma)
    }

    /// Product certificate; variables are renamed `t1, ...` in order.
    pub fn compose(&self, o: &PseudoCert<E>) -> PseudoCert<E> {
        let n = self.vars.len();
        let vars = fresh_names(n + o.vars.len());
        let spec = integral_spec(&vars);
        let shift = |m: &Mat<RingElem>, off: usize| {
            let map: Vec<usize> = (0..m.spec().nvars()).map(|i| i + off).collect();
            m.map(|e| {
                RingElem::from_poly(&spec, &e.poly().reindex(&Base::Integers, vars.len(), &map))
                    .expect("polynomial ring")
            })
        };
        let sp = shift(&self.sigma_prime, 0)
            .mul(&shift(&o.sigma_prime, n))
            .expect("2x2");
        let mut assign = self.assign.clone();
        assign.extend(o.assign.iter().cloned());
        PseudoCert {
            vars,
            spec,
            sigma_prime: sp,
            assign,
            one: self.one.clone(),
        }
    }

    /// Certificate for the inverse: `sigma'` replaced by its adjugate.
    pub fn inverse(&self) -> PseudoCert<E> {
        PseudoCert {
            sigma_prime: self.sigma_prime.adjugate(),
            ..self.clone()
        }
    }

    /// One fresh variable per generator parameter.
    pub fn from_elem_word(w: &ElemWord<E>, one: &E) -> Result<PseudoCert<E>> {
        if w.r != 2 {
            return Err(Error::SizeMismatch("certificates are 2x2".into()));
        }
        let vars = fresh_names(w.len());
        let spec = integral_spec(&vars);
        let symbolic = ElemWord::new(
            2,
            w.gens
                .iter()
                .enumerate()
                .map(|(k, g)| crate::elem::ElemGen::new(g.i, g.j, RingElem::var(&spec, &vars[k]).expect("fresh var")))
                .collect(),
        )?;
        let sp = symbolic.to_mat_in(&spec);
        PseudoCert::new(vars, sp, w.gens.iter().map(|g| g.z.clone()).collect(), one.clone())
    }

    /// The universal matrix `[[1 + xyz, -x^2 z], [y^2 z, 1 - xyz]]` with
    /// `(x, y, z)` sent to the given values.
    pub fn mennicke(x: E, y: E, z: E) -> PseudoCert<E> {
        let vars = fresh_names(3);
        let spec = integral_spec(&vars);
        let v = |i: usize| RingElem::var(&spec, &vars[i]).expect("fresh var");
        let sp = crate::factor::mennicke_core(&v(0), &v(1), &v(2));
        let one = x.one_like();
        PseudoCert::new(vars, sp, vec![x, y, z], one).expect("Mennicke matrix has determinant 1")
    }

    /// Same integral matrix, assignment pushed through `f`.
    pub fn map_assign<F: Scalar>(&self, one: &F, mut f: impl FnMut(&E) -> Result<F>) -> Result<PseudoCert<F>> {
        Ok(PseudoCert {
            vars: self.vars.clone(),
            spec: self.spec.clone(),
            sigma_prime: self.sigma_prime.clone(),
            assign: self.assign.iter().map(&mut f).collect::<Result<_>>()?,
            one: one.clone(),
        })
    }

    /// Lifts the assignment along a surjection `project` using `preimage`,
    /// checking that each chosen preimage projects back.
    pub fn lift_surjection<F: Scalar>(
        &self,
        one: &F,
        preimage: impl Fn(&E) -> Result<F>,
        project: impl Fn(&F) -> Result<E>,
    ) -> Result<PseudoCert<F>> {
        self.map_assign(one, |a| {
            let l = preimage(a).map_err(|e| Error::LiftFailure(e.to_string()))?;
            if project(&l)? != *a {
                return Err(Error::LiftFailure(format!("preimage of {a} does not project back")));
            }
            Ok(l)
        })
    }
}

/// `tau(t)` over `A[t]` with `tau(1)` the certified matrix and `tau(0)`
/// the image of an integral matrix.
#[derive(Clone, Debug)]
pub struct Isotopy {
    pub base: Arc<RingSpec>,
    pub spec: Arc<RingSpec>,
    pub t: String,
    pub tau: Mat<RingElem>,
}

impl Isotopy {
    /// `tau(value)` for `value` in the base ring.
    pub fn at(&self, value: &RingElem) -> Result<Mat<RingElem>> {
        let h = RingHom::from_assignment(&self.spec, &self.base, &[(self.t.as_str(), value.clone())])?;
        self.tau.apply_hom(&h)
    }
}

fn fresh_var_name(spec: &RingSpec) -> String {
    let mut name = "t".to_string();
    while spec.vars().contains(&name) {
        name.push('_');
    }
    name
}

impl PseudoCert<RingElem> {
    /// Scales every certificate variable by a new variable `t`.
    pub fn isotopy(&self, target: &Arc<RingSpec>) -> Result<Isotopy> {
        let t = fresh_var_name(target);
        let spec = target.adjoin(&[t.as_str()])?;
        let tv = RingElem::var(&spec, &t)?;
        let scaled = self
            .assign
            .iter()
            .map(|a| Ok(&a.coerce(&spec)? * &tv))
            .collect::<Result<Vec<_>>>()?;
        let tau = self
            .sigma_prime
            .map(|e| eval_integral(e.poly(), &scaled, &RingElem::one(&spec)));
        if !tau.det().is_one() {
            return Err(Error::SelfCheck("isotopy determinant is not 1".into()));
        }
        Ok(Isotopy {
            base: target.clone(),
            spec,
            t,
            tau,
        })
    }
}
