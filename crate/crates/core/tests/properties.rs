//! Seeded property tests across modules.

use std::sync::Arc;

use matpatch_core::factor::{partial_fractions, suslin_conjugate, ComaxWitness, Side};
use matpatch_core::gen;
use matpatch_core::hensel::{Overring, TruncPair};
use matpatch_core::patch::{build_idempotent, MilnorSquare, PatchDatum};
use matpatch_core::umrow::{apply_word, murthy_spec, orbit_enum, semilocal_reduce, Exec, FiniteRingEnum, SemilocalPresentation, UmRow};
use matpatch_core::univ::{resultant, UnivPoly};
use matpatch_core::{whitehead_double, Base, LocFraction, Mat, PseudoCert, RingElem, RingHom, RingSpec};
use proptest::prelude::*;
use rand::Rng;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn point(p: u64) -> Arc<RingSpec> {
    RingSpec::polynomial(Base::ModN(p), &[] as &[&str])
}

fn random_mat(rng: &mut impl Rng, spec: &Arc<RingSpec>, r: usize) -> Mat<RingElem> {
    let entries = (0..r * r).map(|_| gen::elem(rng, spec, 2, 2)).collect();
    Mat::new(r, entries).unwrap()
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn parse_print_round_trip(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        for spec in [murthy_spec(2).unwrap(), RingSpec::polynomial(Base::Rationals, &["u", "v"])] {
            let e = gen::elem(&mut rng, &spec, 4, 4);
            let back = RingElem::parse(&spec, &e.to_string()).unwrap();
            prop_assert_eq!(back.to_string(), e.to_string());
            prop_assert_eq!(back, e);
        }
    }

    #[test]
    fn quotient_ring_axioms(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let trunc = RingSpec::truncated(Base::ModN(6), &["a", "b"], &["a", "b"], 3).unwrap();
        for spec in [murthy_spec(3).unwrap(), trunc] {
            let [a, b, c] = [0, 1, 2].map(|_| gen::elem(&mut rng, &spec, 3, 3));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }

    #[test]
    fn square_projections_are_homs(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let sq = MilnorSquare::murthy_square(&point(3), 2).unwrap();
        let [a, b] = [0, 1].map(|_| gen::elem(&mut rng, sq.a(), 2, 3));
        for h in [sq.to_b(), sq.to_c()] {
            prop_assert_eq!(h.apply(&(&a * &b)).unwrap(), &h.apply(&a).unwrap() * &h.apply(&b).unwrap());
            prop_assert_eq!(h.apply(&(&a + &b)).unwrap(), &h.apply(&a).unwrap() + &h.apply(&b).unwrap());
        }
        let (pb, pc) = (sq.to_b().apply(&a).unwrap(), sq.to_c().apply(&a).unwrap());
        prop_assert_eq!(sq.glue(&pb, &pc).unwrap(), a);
    }

    #[test]
    fn det_is_multiplicative(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let spec = RingSpec::polynomial(Base::ModN(6), &["x"]);
        let (m, n) = (random_mat(&mut rng, &spec, 3), random_mat(&mut rng, &spec, 3));
        prop_assert_eq!(m.mul(&n).unwrap().det(), &m.det() * &n.det());
        let adj = m.adjugate();
        prop_assert_eq!(m.mul(&adj).unwrap(), Mat::identity_in(&spec, 3).scale(&m.det()));
    }

    #[test]
    fn whitehead_over_polynomials(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let spec = RingSpec::polynomial(Base::Integers, &["x"]);
        let r = rng.gen_range(2..=3);
        let w = gen::elem_word(&mut rng, &spec, r, 4, 1);
        let s = w.to_mat_in(&spec);
        let word = whitehead_double(&s).unwrap();
        let expect = Mat::block_diag(&s, &w.inverse().to_mat_in(&spec)).unwrap();
        prop_assert_eq!(word.to_mat_in(&spec), expect);
    }

    #[test]
    fn suslin_both_sides(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let spec = RingSpec::polynomial(Base::Integers, &["a", "t"]);
        let gamma = gen::elem_word(&mut rng, &spec, 2, 3, 1).to_mat_in(&spec);
        let gamma_inv = gamma.adjugate_inverse().unwrap();
        let g = gen::elem(&mut rng, &spec, 2, 2);
        let t = RingElem::var(&spec, "t").unwrap();
        for (side, (i, j), col) in [(Side::Lower, (1, 0), 1), (Side::Upper, (0, 1), 0)] {
            let mut e = Mat::identity_in(&spec, 2);
            e.set(i, j, &t * &g);
            let direct = gamma.mul(&e).unwrap().mul(&gamma_inv).unwrap();
            let closed = suslin_conjugate(gamma.get(0, col), gamma.get(1, col), &g, "t", side).unwrap();
            prop_assert_eq!(closed, direct);
        }
    }

    #[test]
    fn resultant_is_multiplicative(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let spec = RingSpec::polynomial(Base::Integers, &["a"]);
        let n = rng.gen_range(1..=3);
        let (m1, m2) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let f = gen::univ(&mut rng, &spec, "t", n, true, 1);
        let g = gen::univ(&mut rng, &spec, "t", m1, false, 1);
        let h = gen::univ(&mut rng, &spec, "t", m2, false, 1);
        let lhs = resultant(&f, n, &g.mul(&h), m1 + m2).unwrap();
        let rhs = &resultant(&f, n, &g, m1).unwrap() * &resultant(&f, n, &h, m2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn overring_witness_verifies(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let spec = RingSpec::truncated(Base::ModN(3), &["a"], &["a"], 5).unwrap();
        let pair = TruncPair::new(&spec).unwrap();
        let alpha = RingElem::parse(&spec, "a").unwrap();
        let o = Overring::new(&pair, &alpha, "x", "y").unwrap();
        let g = gen::elem(&mut rng, o.spec(), 3, 3);
        let w = o.unit_witness(&g).unwrap();
        for (name, ok) in o.verify(&w).unwrap() {
            prop_assert!(ok, "check {} failed for g = {}", name, g);
        }
    }

    #[test]
    fn partial_fractions_sum_back(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let spec = RingSpec::polynomial(Base::Integers, &["x"]);
        let f = RingElem::parse(&spec, "x").unwrap();
        let g = RingElem::parse(&spec, "1 - x").unwrap();
        let w = ComaxWitness::new(f, g, RingElem::one(&spec), RingElem::one(&spec)).unwrap();
        let k = rng.gen_range(1..=3);
        let c = LocFraction::new(gen::elem(&mut rng, &spec, 3, 3), w.fg(), k).unwrap();
        let (x, y) = partial_fractions(&c, &w).unwrap();
        prop_assert!(x.rebase(&w.g).unwrap().frac_add(&y.rebase(&w.f).unwrap()).unwrap().frac_eq(&c).unwrap());
    }

    #[test]
    fn idempotents_over_f3(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let sq = Arc::new(MilnorSquare::murthy_square(&point(3), 3).unwrap());
        let r = rng.gen_range(1..=2);
        let sigma = gen::elem_word(&mut rng, sq.d(), r + 1, 2, 1).to_mat_in(sq.d());
        let idem = build_idempotent(&PatchDatum::new(&sq, sigma).unwrap(), None).unwrap();
        prop_assert_eq!(idem.p.mul(&idem.p).unwrap(), idem.p.clone());
        prop_assert_eq!(idem.p.trace(), RingElem::from_i64(sq.a(), r as i64 + 1));
    }

    #[test]
    fn idempotent_is_natural(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let f2 = point(2);
        let f2s = RingSpec::polynomial(Base::ModN(2), &["s"]);
        let big = Arc::new(MilnorSquare::cross_square(&f2s).unwrap());
        let small = Arc::new(MilnorSquare::cross_square(&f2).unwrap());
        let at_d = RingHom::from_assignment(big.d(), small.d(), &[("s", RingElem::zero(small.d()))]).unwrap();
        let at_a = RingHom::from_assignment(big.a(), small.a(), &[("s", RingElem::zero(small.a()))]).unwrap();
        let w = gen::elem_word(&mut rng, big.d(), 2, 3, 2);
        let sigma = w.to_mat_in(big.d());
        let p_big = build_idempotent(&PatchDatum::new(&big, sigma.clone()).unwrap(), None).unwrap().p;
        let sigma_small = sigma.apply_hom(&at_d).unwrap();
        let p_small = build_idempotent(&PatchDatum::new(&small, sigma_small).unwrap(), None).unwrap().p;
        prop_assert_eq!(p_big.apply_hom(&at_a).unwrap(), p_small);
    }

    #[test]
    fn certificate_algebra(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let spec = RingSpec::truncated(Base::ModN(5), &["x"], &["x"], 4).unwrap();
        let one = RingElem::one(&spec);
        let w1 = gen::elem_word(&mut rng, &spec, 2, 3, 2);
        let [x, y, z] = [0, 1, 2].map(|_| gen::elem(&mut rng, &spec, 2, 2));
        let c1 = PseudoCert::from_elem_word(&w1, &one).unwrap();
        let c2 = PseudoCert::mennicke(x, y, z);
        prop_assert_eq!(c1.image(), w1.to_mat_in(&spec));
        let prod = c1.image().mul(&c2.image()).unwrap();
        prop_assert!(c1.compose(&c2).verify(&prod).unwrap());
        prop_assert!(c2.inverse().image().mul(&c2.image()).unwrap().is_identity());

        let iso = c2.isotopy(&spec).unwrap();
        prop_assert_eq!(iso.at(&one).unwrap(), c2.image());
        prop_assert!(iso.at(&RingElem::zero(&spec)).unwrap().is_identity());

        let f5 = point(5);
        let to_f5 = RingHom::from_assignment(&spec, &f5, &[("x", RingElem::zero(&f5))]).unwrap();
        let down = c2.map_assign(&RingElem::one(&f5), |e| to_f5.apply(e)).unwrap();
        prop_assert_eq!(down.image(), c2.image().apply_hom(&to_f5).unwrap());
    }

    #[test]
    fn row_moves_keep_witness(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let l = rng.gen_range(2..=4);
        let row = matpatch_core::umrow::murthy_row(l).unwrap();
        let w = gen::elem_word(&mut rng, row.spec(), 3, 4, 1);
        let moved = apply_word(&row, &w).unwrap();
        prop_assert!(moved.bezout_sum().unwrap().is_one());
    }

    #[test]
    fn semilocal_rows_reach_a_unit(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let z30 = point(30);
        let maps = [2u64, 3, 5].iter().map(|&p| RingHom::new(&z30, &point(p), Vec::new()).unwrap()).collect();
        let pres = SemilocalPresentation::new(&z30, maps).unwrap();
        let r = rng.gen_range(2..=3);
        let row: Vec<RingElem> = loop {
            let row: Vec<RingElem> = (0..r).map(|_| gen::elem(&mut rng, &z30, 0, 1)).collect();
            let ring = FiniteRingEnum::new(&z30).unwrap();
            let witness = witness_for(&ring, &row);
            if let Some(wit) = witness {
                UmRow::new(row.clone(), wit).unwrap();
                break row;
            }
        };
        let word = semilocal_reduce(&row, &pres).unwrap();
        let mut m = Mat::identity_in(&z30, r);
        for g in &word.gens {
            m = m.mul(&g.to_mat(r)).unwrap();
        }
        let moved: Vec<RingElem> = (0..r)
            .map(|k| (0..r).fold(RingElem::zero(&z30), |acc, j| &acc + &(&row[j] * m.get(j, k))))
            .collect();
        prop_assert!(moved.iter().any(|e| pres.is_unit(e).unwrap()));
    }
}

/// Brute-force Bezout witness over a finite ring.
fn witness_for(ring: &FiniteRingEnum, row: &[RingElem]) -> Option<Vec<RingElem>> {
    let elems: Vec<RingElem> = ring.elements().collect();
    let one = RingElem::one(ring.spec());
    let mut idx = vec![0usize; row.len()];
    loop {
        let sum = row.iter().zip(&idx).fold(RingElem::zero(ring.spec()), |acc, (a, &i)| &acc + &(a * &elems[i]));
        if sum == one {
            return Some(idx.iter().map(|&i| elems[i].clone()).collect());
        }
        let mut p = 0;
        loop {
            if p == idx.len() {
                return None;
            }
            idx[p] += 1;
            if idx[p] < elems.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

#[test]
fn orbit_tables_match_unit_counts() {
    for n in 2..=12u64 {
        let ring = FiniteRingEnum::new(&point(n)).unwrap();
        let seq = orbit_enum(&ring, 2, 1_000_000, Exec::Sequential).unwrap();
        let par = orbit_enum(&ring, 2, 1_000_000, Exec::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.orbits.len(), 1, "Z/{n}");
        assert_eq!(seq.sizes_sum(), seq.unimodular_rows);
        // |Um_2(Z/n)| = n^2 prod_{p | n} (1 - 1/p^2)
        let mut expect = n * n;
        for p in 2..=n {
            if n % p == 0 && (2..p).all(|q| p % q != 0) {
                expect = expect / (p * p) * (p * p - 1);
            }
        }
        assert_eq!(seq.unimodular_rows, expect, "Z/{n}");
    }
}

#[test]
fn univ_parse_matches_coeffs() {
    let spec = RingSpec::polynomial(Base::ModN(7), &["a"]);
    let p = UnivPoly::parse(&spec, "t", "3*t^2 + a*t - 1").unwrap();
    assert_eq!(p, UnivPoly::parse_coeffs(&spec, "t", &["6", "a", "3"]).unwrap());
}
