//! Acceptance criteria 1-10. Each criterion prints one PASS/FAIL line; the
//! test fails if any criterion does.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::Rng;

use common::{oracle_facets, LengthTable};
use subword_complex::batch::run_batch;
use subword_complex::braid::{Case, Condition, Side};
use subword_complex::coxeter::{CoxeterSystem, Word, DEFAULT_WORD_CAP};
use subword_complex::demo::{demo_a3_chain, demo_i2};
use subword_complex::poset::{build_rho, semilattice_check};
use subword_complex::sampling::{random_context, random_instance, rng};
use subword_complex::simplicial::{ComplexSummary, LabeledComplex, VertexLabel};
use subword_complex::subword::SubwordDescriptor;

const SEED: u64 = 20240601;

/// Every complex built by criteria 1-8, for the Dehn-Sommerville sweep.
#[derive(Default)]
struct Built {
    /// `(spherical by Demazure, h palindromic, gamma emitted)`.
    seen: Vec<(bool, Option<bool>, bool)>,
}

impl Built {
    fn summary(&mut self, s: &ComplexSummary) {
        let palindromic = s.h.as_ref().map(|h| h.iter().eq(h.iter().rev()));
        self.seen.push((s.spherical, palindromic, s.gamma.is_some()));
    }

    fn complex(&mut self, x: &LabeledComplex, spherical: bool) {
        self.summary(&x.summary(spherical));
    }
}

type Verdict = Result<String, String>;

fn run(n: u32, limit: Option<Duration>, built: &mut Built, body: impl FnOnce(&mut Built) -> Verdict) -> bool {
    let start = Instant::now();
    let verdict = body(built);
    let elapsed = start.elapsed();
    let verdict = match (verdict, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
        (v, _) => v,
    };
    match &verdict {
        Ok(detail) => println!("PASS criterion {n}: {detail} ({elapsed:.2?})"),
        Err(reason) => println!("FAIL criterion {n}: {reason} ({elapsed:.2?})"),
    }
    verdict.is_ok()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(p: usize) -> VertexLabel {
    VertexLabel::QPos(p)
}

fn criterion_1(built: &mut Built) -> Verdict {
    for m in 3..=7u32 {
        let d = demo_i2(m).map_err(|e| e.to_string())?;
        let r = &d.report;
        built.summary(&r.delta1);
        built.summary(&r.delta2);
        let big = i64::from(m) + 2;
        ensure(r.case == Case::LeftIsSubdivisionOfRight, || format!("m = {m}: case {}", r.case))?;
        ensure(r.delta2.f == [4, 4], || format!("m = {m}: f(delta2) = {:?}", r.delta2.f))?;
        ensure(r.delta1.f == [big, big], || format!("m = {m}: f(delta1) = {:?}", r.delta1.f))?;
        let w = r.witness.as_ref().ok_or_else(|| format!("m = {m}: no witness"))?;
        ensure(w.verified && w.literal, || format!("m = {m}: witness {w:?}"))?;
        ensure(d.gamma1_gain == Some(i64::from(m) - 2), || format!("m = {m}: gamma_1 gain {:?}", d.gamma1_gain))?;
    }
    Ok("I2(m), m = 3..7: case 2, squares become (m+2)-gons, literal witnesses, gamma_1 gain m-2".into())
}

fn criterion_2(built: &mut Built) -> Verdict {
    let d = demo_a3_chain().map_err(|e| e.to_string())?;
    let f: Vec<Vec<i64>> = d.rows.iter().map(|r| r.f.clone()).collect();
    let expected_f = [
        [6, 12, 8],
        [6, 12, 8],
        [7, 15, 10],
        [7, 15, 10],
        [7, 15, 10],
        [8, 18, 12],
        [9, 21, 14],
        [9, 21, 14],
    ];
    ensure(f == expected_f, || format!("f-vectors {f:?}"))?;
    // underlined letters of each row
    let expected_vertices: [&[usize]; 8] = [
        &[1, 2, 3, 4, 7, 9],
        &[1, 2, 3, 4, 6, 9],
        &[1, 2, 3, 4, 5, 6, 9],
        &[1, 2, 3, 4, 5, 8, 9],
        &[1, 2, 3, 4, 6, 8, 9],
        &[1, 2, 3, 4, 6, 7, 8, 9],
        &[1, 2, 3, 4, 5, 6, 7, 8, 9],
        &[1, 2, 3, 4, 5, 6, 7, 8, 9],
    ];
    for (row, want) in d.rows.iter().zip(expected_vertices) {
        ensure(row.vertices == want, || format!("{}: vertices {:?}", row.word, row.vertices))?;
    }
    ensure(d.gamma1 == [0, 0, 1, 1, 1, 2, 3, 3], || format!("gamma_1 {:?}", d.gamma1))?;
    for s in &d.steps {
        built.summary(&s.report.delta1);
        built.summary(&s.report.delta2);
        ensure(s.report.case != Case::Unsupported, || format!("{} -> {} unsupported", s.before, s.after))?;
        ensure(s.report.is_verified(), || format!("{} -> {} witness failed", s.before, s.after))?;
    }
    Ok(format!("A3 chain: 8 rows match, {} moves classified, gamma_1 (0,0,1,1,1,2,3,3)", d.steps.len()))
}

fn criterion_3(built: &mut Built) -> Verdict {
    let sys = CoxeterSystem::named("A2").map_err(|e| e.to_string())?;
    let d = SubwordDescriptor::new(&sys, &Word::parse("12121").unwrap(), sys.longest_element())
        .map_err(|e| e.to_string())?;
    let x = d.build().map_err(|e| e.to_string())?;
    let pentagon =
        LabeledComplex::from_facets([[q(1), q(2)], [q(2), q(3)], [q(3), q(4)], [q(4), q(5)], [q(5), q(1)]]).unwrap();
    let spherical = d.is_spherical().map_err(|e| e.to_string())?;
    built.complex(&x, spherical);
    ensure(x == pentagon, || format!("complex {x}"))?;
    ensure(spherical, || "not spherical".into())?;
    ensure(x.is_flag(), || "not flag".into())?;
    ensure(x.h_vector() == Some(vec![1, 3, 1]), || format!("h = {:?}", x.h_vector()))?;
    let g = x.gamma().map_err(|e| e.to_string())?;
    ensure(g.coeffs() == [1, 1], || format!("gamma = {g}"))?;
    Ok("pentagon boundary, spherical, flag, h = (1,3,1), gamma = (1,1)".into())
}

fn criterion_4(built: &mut Built) -> Verdict {
    let sys = CoxeterSystem::named("A2").map_err(|e| e.to_string())?;
    let d = SubwordDescriptor::new(&sys, &Word::parse("11221").unwrap(), sys.longest_element())
        .map_err(|e| e.to_string())?;
    let x = d.build().map_err(|e| e.to_string())?;
    built.complex(&x, d.is_spherical().map_err(|e| e.to_string())?);
    let square = LabeledComplex::from_facets([[q(1), q(3)], [q(3), q(2)], [q(2), q(4)], [q(4), q(1)]]).unwrap();
    ensure(x == square, || format!("complex {x}"))?;
    ensure(!x.contains_face(&[q(1), q(2)]) && !x.contains_face(&[q(3), q(4)]), || "missing non-face".into())?;
    ensure(!x.vertices().contains(&q(5)), || "position 5 is a vertex".into())?;
    Ok("square boundary, non-faces {1,2} and {3,4}, position 5 not a vertex".into())
}

fn groups(names: &[&str]) -> Vec<(String, CoxeterSystem)> {
    names.iter().map(|n| (n.to_string(), CoxeterSystem::named(n).unwrap())).collect()
}

fn criterion_5(built: &mut Built) -> Verdict {
    let gs = groups(&["A3", "B3", "H3"]);
    let mut r = rng(SEED);
    let (mut done, mut failures) = (0, Vec::new());
    while done < 200 {
        let (name, sys) = &gs[done % gs.len()];
        let ctx = random_context(&mut r, sys, 6).map_err(|e| e.to_string())?;
        let eligible = ctx.m() <= 3
            || (ctx.condition(Condition::A, 3).unwrap() && ctx.condition(Condition::B, 3).unwrap());
        if !eligible {
            continue;
        }
        done += 1;
        let p = ctx.polynomial_delta().map_err(|e| e.to_string())?;
        let (d1, d2) = ctx.build_sides().map_err(|e| e.to_string())?;
        let s1 = ctx.descriptor(Side::Left).unwrap().is_spherical().unwrap();
        let s2 = ctx.descriptor(Side::Right).unwrap().is_spherical().unwrap();
        built.complex(&d1, s1);
        built.complex(&d2, s2);
        if !p.holds || p.gamma.as_ref().is_some_and(|g| !g.holds) {
            failures.push(format!("{name} Q = {} Q' = {} {:?}", ctx.q(), ctx.q_prime(), ctx.generators()));
        }
    }
    ensure(failures.is_empty(), || format!("{} identity failures, first {}", failures.len(), failures[0]))?;
    Ok("200 eligible contexts in A3/B3/H3: H(delta2) - H(delta1) identity holds on all".into())
}

fn criterion_6(built: &mut Built) -> Verdict {
    let report = run_batch(&groups(&["A3", "B3", "H3"]), SEED, 200, 6, false, 4).map_err(|e| e.to_string())?;
    let checked = [
        "widetilde_iso",
        "widetilde_sense",
        "delta2iso",
        "delta1iso",
        "subdivident_union",
        "subdivident_chain",
        "a2b2",
        "monotonicity",
    ];
    let mut counts = Vec::new();
    for c in &report.checks {
        for (k, spherical) in c.spherical.iter().enumerate() {
            built.seen.push((*spherical, c.palindromic[k], c.gamma_emitted[k]));
        }
    }
    for name in checked {
        if let Some(n) = report.failures.get(name) {
            counts.push(format!("{name} fails on {n}"));
        }
    }
    let unsupported = report.cases.get("unsupported").copied().unwrap_or(0);
    let swapped = report.checks.iter().filter(|c| c.a2b2_swapped).count();
    ensure(counts.is_empty(), || {
        format!(
            "{} of 200 contexts ({unsupported} unsupported); A2B2 with F and G exchanged holds on {swapped}/200",
            counts.join(", ")
        )
    })?;
    Ok(format!("200 contexts ({unsupported} unsupported): all structural identities hold"))
}

fn criterion_7(built: &mut Built) -> Verdict {
    let gs = groups(&["A3", "B3", "H3", "I2:5"]);
    let tables: Vec<LengthTable> = gs.iter().map(|(_, s)| LengthTable::new(s)).collect();
    let mut r = rng(SEED + 7);
    for n in 0..100 {
        let k = n % gs.len();
        let (name, sys) = &gs[k];
        let (word, pi) = random_instance(&mut r, sys, 10).map_err(|e| e.to_string())?;
        let expected = oracle_facets(sys, &tables[k], word.letters(), &pi);
        let contains = sys.contains_reduced(&word, &pi).map_err(|e| e.to_string())?;
        ensure(contains == !expected.is_empty(), || format!("{name} {word}: contains_reduced {contains}"))?;
        let d = SubwordDescriptor::new(sys, &word, pi.clone()).map_err(|e| e.to_string())?;
        let x = d.build().map_err(|e| e.to_string())?;
        built.complex(&x, d.is_spherical().unwrap());
        let got: BTreeSet<Vec<usize>> = x
            .facets()
            .iter()
            .map(|f| f.iter().map(|v| if let VertexLabel::QPos(p) = v { *p } else { 0 }).collect())
            .collect();
        ensure(got == expected, || format!("{name} {word}: facets differ"))?;
    }
    let mut links = 0;
    while links < 100 {
        let (_, sys) = &gs[links % gs.len()];
        let (word, pi) = random_instance(&mut r, sys, 10).map_err(|e| e.to_string())?;
        let d = SubwordDescriptor::new(sys, &word, pi).map_err(|e| e.to_string())?;
        let facets = d.build().map_err(|e| e.to_string())?.facet_indices();
        if facets.is_empty() {
            continue;
        }
        let facet = &facets[r.gen_range(0..facets.len())];
        let x = d.build().unwrap();
        let positions: Vec<usize> = facet
            .iter()
            .filter(|_| r.gen_bool(0.5))
            .map(|&i| match &x.vertices()[i] {
                VertexLabel::QPos(p) => p - 1,
                _ => unreachable!(),
            })
            .collect();
        ensure(d.link_oracle_check(&positions).unwrap(), || format!("{word}: link of {positions:?}"))?;
        links += 1;
    }
    Ok("100 instances agree with the 2^|Q| oracle; 100 link checks pass".into())
}

fn criterion_8(built: &mut Built) -> Verdict {
    let gs = groups(&["A3", "B3", "H3"]);
    let mut r = rng(SEED + 8);
    let mut done = 0;
    while done < 100 {
        let (_, sys) = &gs[done % gs.len()];
        let (word, pi) = random_instance(&mut r, sys, 9).map_err(|e| e.to_string())?;
        let d = SubwordDescriptor::new(sys, &word, pi).map_err(|e| e.to_string())?;
        let x = d.build().map_err(|e| e.to_string())?;
        let edges = x.edges();
        if !x.is_flag() || edges.is_empty() {
            continue;
        }
        done += 1;
        let spherical = d.is_spherical().unwrap();
        built.complex(&x, spherical);
        let (s, t) = edges[r.gen_range(0..edges.len())].clone();
        let sub = x.edge_subdivide(&s, &t, VertexLabel::fresh("r")).map_err(|e| e.to_string())?;
        built.complex(&sub, spherical);
        let link = x.link(&[s.clone(), t.clone()]).unwrap();
        let expected = &x.h_poly() + &link.h_poly().times_alpha_t();
        ensure(sub.h_poly() == expected, || format!("{word}: H identity fails on {{{s},{t}}}"))?;
        ensure(sub.is_flag(), || format!("{word}: flagness lost on {{{s},{t}}}"))?;
    }
    Ok("100 edge subdivisions of flag complexes: H identity exact, flagness kept".into())
}

fn criterion_9(built: &mut Built) -> Verdict {
    let mut spherical = 0;
    for (sph, h, gamma) in &built.seen {
        if *sph {
            spherical += 1;
            ensure(*h == Some(true), || format!("spherical complex with palindromic = {h:?}"))?;
        } else {
            ensure(!gamma, || "gamma emitted for a non-spherical complex".into())?;
        }
    }
    Ok(format!(
        "{spherical} spherical complexes palindromic, {} non-spherical without gamma",
        built.seen.len() - spherical
    ))
}

fn criterion_10(_: &mut Built) -> Verdict {
    let sys = CoxeterSystem::named("A3").map_err(|e| e.to_string())?;
    let build = || -> Result<String, String> {
        let rho = build_rho(&sys, &Word::parse("123").unwrap(), &Word::empty(), &sys.longest_element(), DEFAULT_WORD_CAP)
            .map_err(|e| e.to_string())?;
        let lattice = if rho.antisymmetric { Some(semilattice_check(&rho).map_err(|e| e.to_string())?) } else { None };
        ensure(rho.elements.len() == 16, || format!("{} reduced words", rho.elements.len()))?;
        ensure(rho.unverified_moves == 0, || format!("{} unverified edge witnesses", rho.unverified_moves))?;
        ensure(rho.mirror_mismatches.is_empty(), || "mirror mismatches".into())?;
        let json = serde_json::to_string(&(&rho, &lattice)).map_err(|e| e.to_string())?;
        let verdict = match &lattice {
            Some(l) => format!("antisymmetric, meet {} join {}", l.meet, l.join),
            None => format!("not antisymmetric ({} violations)", rho.violations.len()),
        };
        Ok(format!("{json}\n{verdict}; {} classes, {} edges\n{}", rho.classes.len(), rho.edges.len(), rho.export_dot()))
    };
    let first = build()?;
    let second = build()?;
    ensure(first == second, || "two runs differ".into())?;
    let summary = first.lines().nth(1).unwrap_or_default().to_string();
    Ok(format!("16 reduced words, all edge witnesses verified, deterministic; {summary}"))
}

#[test]
fn acceptance() {
    let mut built = Built::default();
    let secs = Duration::from_secs;
    let results = [
        run(1, Some(secs(1)), &mut built, criterion_1),
        run(2, Some(secs(5)), &mut built, criterion_2),
        run(3, None, &mut built, criterion_3),
        run(4, None, &mut built, criterion_4),
        run(5, Some(secs(60)), &mut built, criterion_5),
        run(6, None, &mut built, criterion_6),
        run(7, None, &mut built, criterion_7),
        run(8, None, &mut built, criterion_8),
        run(9, None, &mut built, criterion_9),
        run(10, Some(secs(30)), &mut built, criterion_10),
    ];
    let failed: Vec<usize> = (0..10).filter(|&k| !results[k]).map(|k| k + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
