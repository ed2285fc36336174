use std::sync::Arc;

use matpatch_core::elem::whitehead_length_bound;
use matpatch_core::factor::{
    partial_fractions, radical_length_bound, radical_reduce, regroup_product, regroup_word, suslin_conjugate,
    zariski_product, zariski_split_2, ComaxWitness, Side,
};
use matpatch_core::hensel::{hensel_factor, in_one_plus_t_ideal, monic_unit_split, npoly_root, Overring, TruncPair};
use matpatch_core::patch::{build_idempotent, free_patch_factor, pseudo_patch_free, MilnorSquare, PatchDatum};
use matpatch_core::umrow::{
    budget_from_env, completion_check, murthy_row, orbit_enum, semilocal_reduce, Exec, FiniteRingEnum,
    SemilocalPresentation, UmRow,
};
use matpatch_core::univ::{ext_gcd, resultant, UnivPoly};
use matpatch_core::wire::{elem_strings, CertJson, MatJson, SpecJson, SquareJson, UnivJson, WordJson};
use matpatch_core::{whitehead_double, ElemWord, LocFraction, Mat, PseudoCert, RingElem, RingHom, RingSpec};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::{doc, ring, CliError, CliResult, Report, RingDoc};

pub(crate) fn dispatch(cmd: &Command) -> CliResult<Report> {
    match cmd {
        Command::Ring(c) => ring_cmd(c),
        Command::Mat(c) => mat_cmd(c),
        Command::Factor(c) => factor_cmd(c),
        Command::Hensel(c) => hensel_cmd(c),
        Command::Patch(c) => patch_cmd(c),
        Command::Umrow(c) => umrow_cmd(c),
        Command::Pseudo(c) => pseudo_cmd(c),
    }
}

fn elem(spec: &Arc<RingSpec>, src: &str) -> CliResult<RingElem> {
    Ok(RingElem::parse(spec, src)?)
}

fn elems(spec: &Arc<RingSpec>, arg: &str) -> CliResult<Vec<RingElem>> {
    let v: Vec<String> = doc(arg)?;
    v.iter().map(|s| elem(spec, s)).collect()
}

fn matrix(spec: &Arc<RingSpec>, arg: &str) -> CliResult<Mat<RingElem>> {
    let m: MatJson = doc(arg)?;
    Ok(m.to_mat(spec)?)
}

fn word(spec: &Arc<RingSpec>, arg: &str) -> CliResult<ElemWord<RingElem>> {
    let w: WordJson = doc(arg)?;
    Ok(w.to_word(spec)?)
}

/// `{"t": .., "coeffs": [..]}` or an expression in `t`.
fn univ(spec: &Arc<RingSpec>, arg: &str) -> CliResult<UnivPoly> {
    if arg.trim_start().starts_with('{') || std::path::Path::new(arg).is_file() {
        let u: UnivJson = doc(arg)?;
        return Ok(u.to_poly(spec)?);
    }
    Ok(UnivPoly::parse(spec, "t", arg)?)
}

fn cert(spec: &Arc<RingSpec>, arg: &str) -> CliResult<PseudoCert<RingElem>> {
    let c: CertJson = doc(arg)?;
    Ok(c.to_cert(spec)?)
}

fn mat_json<E: matpatch_core::Scalar>(m: &Mat<E>) -> Value {
    serde_json::to_value(MatJson::from_mat(m)).expect("serializable")
}

fn word_json<E: matpatch_core::Scalar>(w: &ElemWord<E>) -> Value {
    serde_json::to_value(WordJson::from_word(w)).expect("serializable")
}

fn univ_json(p: &UnivPoly) -> Value {
    serde_json::to_value(UnivJson::from_poly(p)).expect("serializable")
}

fn cert_json<E: matpatch_core::Scalar>(c: &PseudoCert<E>) -> Value {
    serde_json::to_value(CertJson::from_cert(c)).expect("serializable")
}

fn spec_json(s: &RingSpec) -> Value {
    serde_json::to_value(SpecJson::from_spec(s)).expect("serializable")
}

fn ring_cmd(c: &RingCmd) -> CliResult<Report> {
    let RingCmd::Normalize { ring: r, expr } = c;
    let spec = ring(&r.ring)?;
    let e = elem(&spec, expr)?;
    let printed = e.to_string();
    let mut out = Report::new();
    out.set("normal_form", printed.clone());
    out.checks.add("reparse_fixed_point", elem(&spec, &printed)? == e);
    Ok(out)
}

fn mat_cmd(c: &MatCmd) -> CliResult<Report> {
    let mut out = Report::new();
    match c {
        MatCmd::Det { ring: r, matrix: m } => {
            let spec = ring(&r.ring)?;
            out.set("det", matrix(&spec, m)?.det().to_string());
        }
        MatCmd::Whitehead { ring: r, matrix: m } => {
            let spec = ring(&r.ring)?;
            let s = matrix(&spec, m)?;
            let w = whitehead_double(&s)?;
            let target = Mat::block_diag(&s, &s.adjugate_inverse()?)?;
            out.set("word", word_json(&w)).set("length", w.len());
            out.checks
                .add("remultiplies", w.to_mat_in(&spec) == target)
                .add("length_within_bound", w.len() <= whitehead_length_bound(s.size()));
        }
    }
    Ok(out)
}

fn comax(spec: &Arc<RingSpec>, c: &ComaxArgs) -> CliResult<ComaxWitness> {
    Ok(ComaxWitness::new(elem(spec, &c.f)?, elem(spec, &c.g)?, elem(spec, &c.u)?, elem(spec, &c.v)?)?)
}

fn frac_json(x: &LocFraction) -> Value {
    json!({"num": x.num().to_string(), "den": x.den_base().to_string(), "k": x.exponent()})
}

fn factor_cmd(c: &FactorCmd) -> CliResult<Report> {
    let mut out = Report::new();
    match c {
        FactorCmd::Suslin { ring: r, b, d, g, t, side } => {
            let spec = ring(&r.ring)?;
            let side = match side {
                SideArg::Lower => Side::Lower,
                SideArg::Upper => Side::Upper,
            };
            let m = suslin_conjugate(&elem(&spec, b)?, &elem(&spec, d)?, &elem(&spec, g)?, t, side)?;
            let at0 = RingHom::from_assignment(&spec, &spec, &[(t.as_str(), RingElem::zero(&spec))])?;
            out.set("matrix", mat_json(&m));
            out.checks.add("det_one", m.det().is_one()).add("identity_at_t_zero", m.apply_hom(&at0)?.is_identity());
        }
        FactorCmd::Regroup { ring: r, word: w, split } => {
            let spec = ring(&r.ring)?;
            let w = word(&spec, w)?;
            let pairs: Vec<(String, String)> = doc(split)?;
            let split = pairs
                .iter()
                .map(|(b, a)| Ok((elem(&spec, b)?, elem(&spec, a)?)))
                .collect::<CliResult<Vec<_>>>()?;
            let one = RingElem::one(&spec);
            let (factors, tail) = regroup_word(&w, &split, &one)?;
            let fs: Vec<Value> = factors
                .iter()
                .map(|(c, _)| {
                    json!({"sigma": mat_json(&c.sigma), "gen": {"i": c.gen.i, "j": c.gen.j, "z": c.gen.z.to_string()}})
                })
                .collect();
            out.set("factors", fs).set("tail", word_json(&tail));
            out.checks.add("remultiplies", regroup_product(&factors, &tail, &one) == w.to_mat(&one));
        }
        FactorCmd::Partfrac { ring: r, comax: cx, num, k } => {
            let spec = ring(&r.ring)?;
            let w = comax(&spec, cx)?;
            let c = LocFraction::new(elem(&spec, num)?, w.fg(), *k)?;
            let (x, y) = partial_fractions(&c, &w)?;
            let back = x.rebase(&w.g)?.frac_add(&y.rebase(&w.f)?)?;
            out.set("x", frac_json(&x)).set("y", frac_json(&y));
            out.checks.add("sums_back", back.frac_eq(&c)?);
        }
        FactorCmd::Reduce { ring: r, matrix: m } => {
            let spec = ring(&r.ring)?;
            let s = matrix(&spec, m)?;
            let w = radical_reduce(&s)?;
            let mut prefix = Mat::identity_in(&spec, s.size());
            let mut in_sl = true;
            for g in &w.gens {
                prefix = prefix.mul(&g.to_mat(s.size()))?;
                in_sl &= prefix.det().is_one();
            }
            out.set("word", word_json(&w)).set("length", w.len());
            out.checks
                .add("remultiplies", w.to_mat_in(&spec) == s)
                .add("prefixes_in_sl", in_sl)
                .add("length_within_bound", w.len() <= radical_length_bound(s.size()));
        }
        FactorCmd::Zsplit2 { ring: r, comax: cx, word: wd, k } => {
            let spec = ring(&r.ring)?;
            let w = comax(&spec, cx)?;
            let wj: WordJson = doc(wd)?;
            let fg = w.fg();
            let mut eps = ElemWord::empty(wj.r);
            for g in &wj.gens {
                eps.gens.push(matpatch_core::ElemGen::new(g.i, g.j, LocFraction::new(elem(&spec, &g.z)?, fg.clone(), *k)?));
            }
            let eps = ElemWord::new(eps.r, eps.gens)?;
            let split = zariski_split_2(&eps, &w)?;
            let one_fg = LocFraction::from_elem(RingElem::one(&spec), &fg)?;
            out.set("cert", cert_json(&split.cert)).set("tail", word_json(&split.tail));
            out.checks.add("remultiplies", zariski_product(&split, &w)? == eps.to_mat(&one_fg));
        }
    }
    Ok(out)
}

fn hensel_cmd(c: &HenselCmd) -> CliResult<Report> {
    let mut out = Report::new();
    match c {
        HenselCmd::Resultant { ring: r, f, g, n, m } => {
            let spec = ring(&r.ring)?;
            let (f, g) = (univ(&spec, f)?, univ(&spec, g)?);
            let n = n.unwrap_or(f.degree().unwrap_or(0));
            let m = m.unwrap_or(g.degree().unwrap_or(0));
            let res = resultant(&f, n, &g, m)?;
            out.set("resultant", res.to_string()).set("n", n).set("m", m);
            if spec.nvars() == 0 && spec.base().is_field() && f.degree() == Some(n) {
                let (gcd, _, _) = ext_gcd(&f, &g)?;
                out.set("gcd", univ_json(&gcd));
                out.checks.add("nonzero_iff_coprime", res.is_zero() != (gcd == UnivPoly::one(&spec, f.var())));
            }
        }
        HenselCmd::Root { ring: r, f } => {
            let spec = ring(&r.ring)?;
            let pair = TruncPair::new(&spec)?;
            let f = univ(&spec, f)?;
            let root = npoly_root(&pair, &f)?;
            out.set("root", root.root.to_string()).set("steps", root.steps);
            out.checks
                .add("f_of_root_zero", f.eval(&root.root).is_zero())
                .add("root_in_ideal", pair.in_ideal(&root.root));
        }
        HenselCmd::Lift { ring: r, f, g_bar, h_bar, s_bar, t_bar } => {
            let spec = ring(&r.ring)?;
            let pair = TruncPair::new(&spec)?;
            let res = pair.residue().clone();
            let f = univ(&spec, f)?;
            let (gb, hb) = (univ(&res, g_bar)?, univ(&res, h_bar)?);
            let bez = match (s_bar, t_bar) {
                (Some(s), Some(t)) => Some((univ(&res, s)?, univ(&res, t)?)),
                _ => None,
            };
            let lift = hensel_factor(&pair, &f, &gb, &hb, bez.as_ref().map(|(s, t)| (s, t)))?;
            out.set("g", univ_json(&lift.g))
                .set("h", univ_json(&lift.h))
                .set("s", univ_json(&lift.s))
                .set("t", univ_json(&lift.t))
                .set("rounds", lift.rounds);
            let bez_sum = lift.s.mul(&lift.g).add(&lift.t.mul(&lift.h));
            out.checks
                .add("product", lift.g.mul(&lift.h) == f)
                .add("g_monic", lift.g.is_monic())
                .add("g_reduces_to_g_bar", pair.reduce(&lift.g)? == gb)
                .add("bezout", bez_sum == UnivPoly::one(&spec, f.var()))
                .add("rounds_within_bound", lift.rounds <= pair.round_bound());
        }
        HenselCmd::Split { ring: r, f } => {
            let spec = ring(&r.ring)?;
            let pair = TruncPair::new(&spec)?;
            let f = univ(&spec, f)?;
            let s = monic_unit_split(&pair, &f)?;
            out.set("u", s.u.to_string()).set("g", univ_json(&s.g)).set("h", univ_json(&s.h));
            out.checks
                .add("product", s.g.mul(&s.h).scale(&s.u) == f)
                .add("u_unit", matches!(s.u.is_unit(), Ok(Some(_))))
                .add("g_monic", s.g.is_monic())
                .add("h_in_one_plus_t_ideal", in_one_plus_t_ideal(&pair, &s.h));
        }
        HenselCmd::OverringWitness { ring: r, alpha, g, x, y } => {
            let spec = ring(&r.ring)?;
            let pair = TruncPair::new(&spec)?;
            let o = Overring::new(&pair, &elem(&spec, alpha)?, x, y)?;
            let g = elem(o.spec(), g)?;
            let w = o.unit_witness(&g)?;
            out.set("ring", spec_json(o.spec()))
                .set("n", w.n)
                .set("k", w.k)
                .set("u", w.split.u.to_string())
                .set("f0", univ_json(&w.split.g))
                .set("f1", univ_json(&w.split.h))
                .set("p", univ_json(&w.p))
                .set("q", univ_json(&w.q))
                .set("cofactor", w.cofactor.to_string());
            for (name, ok) in o.verify(&w)? {
                out.checks.add(&name, ok);
            }
        }
    }
    Ok(out)
}

fn square(arg: &str) -> CliResult<Arc<MilnorSquare>> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Doc {
        ambient: RingDoc,
        i: Vec<String>,
        j: Vec<String>,
    }
    let d: Doc = doc(arg)?;
    let ambient = d.ambient.build()?;
    let sj = SquareJson {
        ambient: SpecJson::from_spec(&ambient),
        i: d.i,
        j: d.j,
    };
    Ok(Arc::new(sj.build()?))
}

fn patch_cmd(c: &PatchCmd) -> CliResult<Report> {
    let mut out = Report::new();
    match c {
        PatchCmd::Square { square: s } => {
            let sq = square(&s.square)?;
            out.set("a", spec_json(sq.a()))
                .set("b", spec_json(sq.b()))
                .set("c", spec_json(sq.c()))
                .set("d", spec_json(sq.d()));
        }
        PatchCmd::Idempotent { square: s, sigma } => {
            let sq = square(&s.square)?;
            let datum = PatchDatum::new(&sq, matrix(sq.d(), sigma)?)?;
            let idem = build_idempotent(&datum, None)?;
            let residue = idem.p.mul(&idem.p)?.sub(&idem.p)?;
            let r = datum.rank() as i64;
            out.set("p", mat_json(&idem.p))
                .set("residue", mat_json(&residue))
                .set("word_length", idem.word.len());
            out.checks
                .add("idempotent", residue.is_zero())
                .add("trace_is_rank", idem.p.trace() == RingElem::from_i64(sq.a(), r));
        }
        PatchCmd::Factorize { square: s, sigma, tau0, tau1, cert: c } => {
            let sq = square(&s.square)?;
            let datum = PatchDatum::new(&sq, matrix(sq.d(), sigma)?)?;
            let (t0, t1) = match (tau0, tau1, c) {
                (Some(a), Some(b), None) => (matrix(sq.b(), a)?, matrix(sq.c(), b)?),
                (None, None, Some(c)) => pseudo_patch_free(&datum, &cert(sq.d(), c)?)?,
                _ => return Err(CliError::Usage("give either --tau0 and --tau1, or --cert".into())),
            };
            let (s1, s0) = free_patch_factor(&datum, &t0, &t1)?;
            out.set("tau0", mat_json(&t0))
                .set("tau1", mat_json(&t1))
                .set("sigma0", mat_json(&s0))
                .set("sigma1", mat_json(&s1));
            out.checks
                .add("trivializes", t0.apply_hom(sq.psi())? == t1.apply_hom(sq.phi())?.mul(&datum.sigma)?)
                .add("det_one", s0.det().is_one() && s1.det().is_one())
                .add("product", s1.apply_hom(sq.phi())?.mul(&s0.apply_hom(sq.psi())?)? == datum.sigma);
        }
    }
    Ok(out)
}

fn umrow_cmd(c: &UmrowCmd) -> CliResult<Report> {
    let mut out = Report::new();
    match c {
        UmrowCmd::Orbits { ring: r, r: len, sequential } => {
            let spec = ring(&r.ring)?;
            let fin = FiniteRingEnum::new(&spec)?;
            let exec = if *sequential { Exec::Sequential } else { Exec::default() };
            let table = orbit_enum(&fin, *len, budget_from_env(), exec)?;
            let orbits: Vec<Value> = table
                .orbits
                .iter()
                .map(|o| json!({"rep": elem_strings(&o.rep), "size": o.size}))
                .collect();
            out.set("ring", table.ring.clone())
                .set("r", table.r)
                .set("orbits", orbits)
                .set("unimodular_rows", table.unimodular_rows);
            out.checks.add("sizes_sum", table.sizes_sum() == table.unimodular_rows);
        }
        UmrowCmd::Reduce { ring: r, row, maps } => {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct MapDoc {
                target: RingDoc,
                images: Vec<String>,
            }
            let spec = ring(&r.ring)?;
            let row = elems(&spec, row)?;
            let docs: Vec<MapDoc> = doc(maps)?;
            let mut homs = Vec::new();
            for d in docs {
                let t = d.target.build()?;
                let images = d.images.iter().map(|s| elem(&t, s)).collect::<CliResult<Vec<_>>>()?;
                homs.push(RingHom::new(&spec, &t, images)?);
            }
            let pres = SemilocalPresentation::new(&spec, homs)?;
            let w = semilocal_reduce(&row, &pres)?;
            let n = row.len();
            let m = w.to_mat_in(&spec);
            let moved: Vec<RingElem> = (0..n)
                .map(|k| (0..n).fold(RingElem::zero(&spec), |acc, j| &acc + &(&row[j] * m.get(j, k))))
                .collect();
            let mut reaches = false;
            for e in &moved {
                reaches |= pres.is_unit(e)?;
            }
            out.set("word", word_json(&w)).set("row", elem_strings(&moved));
            out.checks.add("reaches_unit", reaches);
        }
        UmrowCmd::Murthy { ell, verify } => {
            let row = murthy_row(*ell)?;
            let sum = row.bezout_sum()?;
            out.set("ring", spec_json(row.spec()))
                .set("row", elem_strings(&row.entries))
                .set("witness", elem_strings(&row.witness))
                .set("sum", sum.to_string());
            if *verify {
                out.checks.add("bezout_sum_one", sum.is_one());
            }
        }
        UmrowCmd::Check { ring: r, row, witness, completion } => {
            let spec = ring(&r.ring)?;
            let row = UmRow::new(elems(&spec, row)?, elems(&spec, witness)?)?;
            let sum = row.bezout_sum()?;
            out.set("sum", sum.to_string());
            out.checks.add("bezout_sum_one", sum.is_one());
            if let Some(m) = completion {
                out.checks.add("completion", completion_check(&row.entries, &matrix(&spec, m)?));
            }
        }
    }
    Ok(out)
}

fn pseudo_cmd(c: &PseudoCmd) -> CliResult<Report> {
    let mut out = Report::new();
    match c {
        PseudoCmd::Verify { ring: r, cert: c, matrix: m } => {
            let spec = ring(&r.ring)?;
            let ok = cert(&spec, c)?.verify(&matrix(&spec, m)?)?;
            out.set("valid", ok);
            out.checks.add("image_matches", ok);
        }
        PseudoCmd::Compose { ring: r, cert: c, with } => {
            let spec = ring(&r.ring)?;
            let (a, b) = (cert(&spec, c)?, cert(&spec, with)?);
            let ab = a.compose(&b);
            out.set("cert", cert_json(&ab));
            out.checks.add("image_is_product", ab.verify(&a.image().mul(&b.image())?)?);
        }
        PseudoCmd::Fromword { ring: r, word: w } => {
            let spec = ring(&r.ring)?;
            let w = word(&spec, w)?;
            let c = PseudoCert::from_elem_word(&w, &RingElem::one(&spec))?;
            out.set("cert", cert_json(&c));
            out.checks.add("image_matches_word", c.verify(&w.to_mat_in(&spec))?);
        }
        PseudoCmd::Lift { ring: r, target, cert: c } => {
            let source = ring(&r.ring)?;
            let target = ring(target)?;
            let down = RingHom::by_names(&source, &target)?;
            let c = cert(&target, c)?;
            let lifted = c.lift_surjection(&RingElem::one(&source), |z| z.reinterpret(&source), |w| down.apply(w))?;
            out.set("cert", cert_json(&lifted));
            out.checks.add("projects_back", lifted.image().apply_hom(&down)? == c.image());
        }
        PseudoCmd::Isotopy { ring: r, cert: c } => {
            let spec = ring(&r.ring)?;
            let c = cert(&spec, c)?;
            let iso = c.isotopy(&spec)?;
            let at0 = iso.at(&RingElem::zero(&spec))?;
            let integral = c.sigma_prime().try_map(|e| {
                let zeros = vec![RingElem::zero(&spec); c.vars().len()];
                let h = RingHom::new(c.integral_spec(), &spec, zeros)?;
                h.apply(e)
            })?;
            out.set("t", iso.t.clone()).set("tau", mat_json(&iso.tau)).set("tau0", mat_json(&at0));
            out.checks
                .add("tau1_is_image", iso.at(&RingElem::one(&spec))? == c.image())
                .add("tau0_integral", at0 == integral)
                .add("det_one", iso.tau.det().is_one());
        }
    }
    Ok(out)
}
