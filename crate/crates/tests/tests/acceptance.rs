//! Acceptance criteria 1–8, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`). `--allow-large` (or
//! `FRAMING_ALLOW_LARGE=1`) adds the n = 5 fiber-complex run to criterion 4.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use framing_tests::framing_binary;
use framing_core::anomaly::{anomaly, Target, ABELIAN_CS_WARNING};
use framing_core::catalog::{betti, betti_exterior, h_simple, h_so};
use framing_core::koszul::{build_e2, default_window, reduced_cohomology, unit_coeffs, Sector};
use framing_core::lie::{
    adjoint_module, build_dR, build_simple, build_so, ce_cohomology, ce_complex, trivial_module, vector_module,
    CeOptions, GradedLieData, ModuleData, SimpleType,
};
use framing_core::linalg::nullspace;
use framing_core::weil::{build_fiber, cross_check, default_fiber_window};
use framing_core::{Element, GradedDims};
use proptest::test_runner::{Config, TestRunner};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok_detail: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: ok_detail }
    } else {
        Outcome { pass: false, detail: failures.join("; ") }
    }
}

fn within(limit: Duration, elapsed: Duration, failures: &mut Vec<String>) {
    if elapsed > limit {
        failures.push(format!("took {elapsed:.2?}, limit {limit:?}"));
    }
}

fn framing(args: &[&str]) -> (String, Duration) {
    let bin = framing_binary();
    let start = Instant::now();
    let out = Command::new(bin).args(args).output().expect("run framing");
    let elapsed = start.elapsed();
    assert!(out.status.success(), "framing {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    (String::from_utf8(out.stdout).unwrap(), elapsed)
}

/// `(degree, dim, labels)` rows of `framing e3` text output.
fn e3_rows(text: &str) -> Vec<(i64, usize, Vec<String>)> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix("degree "))
        .map(|l| {
            let (d, rest) = l.split_once(": ").unwrap();
            let (k, labels) = rest.split_once("  ").unwrap_or((rest, ""));
            (d.parse().unwrap(), k.parse().unwrap(), labels.split(", ").map(str::to_string).collect())
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let (out, t) = framing(&["e3", "--dim", "3", "--coeffs", "trivial"]);
    let rows = e3_rows(&out);
    let mut failures = Vec::new();
    if rows != [(4, 1, vec!["p".to_string()])] {
        failures.push(format!("got {rows:?}"));
    }
    within(Duration::from_secs(1), t, &mut failures);
    outcome(failures, format!("one class p at degree 4 ({t:.2?})"))
}

fn criterion_2() -> Outcome {
    let (out, t) = framing(&["e3", "--dim", "4", "--coeffs", "trivial", "--representatives"]);
    let rows = e3_rows(&out);
    let mut failures = Vec::new();
    let expected_4 = (4, 2, vec!["p".to_string(), "p′".to_string()]);
    // p η′ − p′ η, printed in normal order; either overall sign is accepted
    let ok_7 = |r: &(i64, usize, Vec<String>)| {
        r.0 == 7 && r.1 == 1 && ["-η p′ + η′ p", "η p′ - η′ p"].contains(&r.2[0].as_str())
    };
    if rows.len() != 2 || rows[0] != expected_4 || !ok_7(&rows[1]) {
        failures.push(format!("got {rows:?}"));
    }
    within(Duration::from_secs(1), t, &mut failures);
    outcome(failures, format!("p, p′ at 4 and {} at 7 ({t:.2?})", rows.get(1).map_or("", |r| r.2[0].as_str())))
}

fn full_ce(g: &GradedLieData) -> GradedDims {
    ce_cohomology(g, None, &CeOptions::full(g)).unwrap().dims
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=6 {
        let g = build_so(n).unwrap();
        let brute = full_ce(&g);
        let closed = betti(&h_so(n).unwrap(), 0..=g.dim() as i64, false).unwrap();
        if brute != closed {
            failures.push(format!("so({n}): CE {brute} vs closed form {closed}"));
        }
    }
    for (t, r, name) in [(SimpleType::A, 1, "sl(2)"), (SimpleType::A, 2, "sl(3)"), (SimpleType::C, 2, "sp(4)")] {
        let g = build_simple(t, r).unwrap();
        let brute = full_ce(&g);
        let closed = betti_exterior(&h_simple(t, r).unwrap(), false).unwrap();
        if brute != closed {
            failures.push(format!("{name}: CE {brute} vs exponents {closed}"));
        }
    }
    // so(5) and sp(4) are isomorphic; their tables must agree
    if full_ce(&build_so(5).unwrap()) != full_ce(&build_simple(SimpleType::C, 2).unwrap()) {
        failures.push("so(5) and sp(4) tables differ".into());
    }
    let t = start.elapsed();
    within(Duration::from_secs(120), t, &mut failures);
    outcome(failures, format!("so(2..6), sl(2), sl(3), sp(4) exact ({t:.2?})"))
}

fn criterion_4(allow_large: bool) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let tables = [GradedDims::point(0), GradedDims::point(3), dims(&[(3, 1), (7, 1)])];
    for n in [3, 4] {
        for c in &tables {
            let r = cross_check(n, c, default_fiber_window(n, c), false).unwrap();
            if !r.matches() {
                failures.push(format!("n={n} C={c}: {:?}", r.mismatches));
            }
        }
    }
    let t = start.elapsed();
    within(Duration::from_secs(300), t, &mut failures);
    let mut detail = format!("n = 3, 4 × 3 tables match ({t:.2?})");
    if allow_large {
        let s = Instant::now();
        let c = GradedDims::point(0);
        let r = cross_check(5, &c, default_fiber_window(5, &c), true).unwrap();
        if !r.matches() {
            failures.push(format!("n=5: {:?}", r.mismatches));
        }
        within(Duration::from_secs(3600), s.elapsed(), &mut failures);
        detail += &format!("; n = 5 matches ({:.2?})", s.elapsed());
    } else {
        detail += "; n = 5 not run (pass --allow-large)";
    }
    outcome(failures, detail)
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut expect = |n: usize, target: Target, inner: bool, total: usize| {
        let r = anomaly(n, &target, inner, None).unwrap();
        checked += 1;
        if r.total != total {
            let mode = if inner { "inner" } else { "outer" };
            let cells: Vec<String> =
                r.cells.iter().filter(|c| c.dim > 0).map(|c| format!("({},{}) {}", c.i, c.j, c.labels.join(" + "))).collect();
            failures.push(format!("{target} n={n} {mode}: total {} ≠ {total} [{}]", r.total, cells.join(", ")));
        }
        r
    };
    for (t, r) in [(SimpleType::A, 1), (SimpleType::A, 2), (SimpleType::B, 2), (SimpleType::G, 2)] {
        expect(3, Target::ChernSimons(t, r), false, 0);
        expect(3, Target::ChernSimons(t, r), true, 1);
    }
    for (t, r) in [(SimpleType::A, 1), (SimpleType::A, 2), (SimpleType::C, 2), (SimpleType::B, 2)] {
        for n in [3, 5, 7, 9, 11] {
            expect(n, Target::Bf(t, r), false, 0);
        }
    }
    expect(6, Target::Bf(SimpleType::A, 1), false, 1);
    for n in [3, 7] {
        expect(n, Target::AbelianCs, false, 0);
        expect(n, Target::AbelianCs, true, 1);
    }
    let r5 = anomaly(5, &Target::AbelianCs, false, None).unwrap();
    if !r5.notes.iter().any(|n| n == ABELIAN_CS_WARNING) {
        failures.push("abelian_cs n=5: warning note missing".into());
    }
    outcome(failures, format!("{checked} group dimensions exact; abelian_cs n = 5 carries its warning"))
}

fn criterion_6() -> Outcome {
    let mut rng = seeded(0x5eed);
    let mut failures = Vec::new();
    let mut runs = 0;
    for _ in 0..20 {
        let c = random_coeffs(&mut rng, 0..=8);
        for n in 2..=6 {
            let w = default_window(n, &c);
            let h = reduced_cohomology(n, &labeled(&c), w).unwrap();
            runs += 1;
            if !h.is_zero() {
                failures.push(format!("n={n} C={c}: H(R̄) = {h}"));
            }
        }
    }
    outcome(failures, format!("H(R̄, d3) = 0 in {runs} runs (n = 2..6, 20 seeded tables)"))
}

fn sign(odd: bool) -> framing_core::Rational {
    q(if odd { -1 } else { 1 })
}

fn algebra_laws(failures: &mut Vec<String>) {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    let alg = test_algebra();
    let pair = (element(alg.clone()), element(alg.clone()), element(alg.clone()));
    let r = runner.run(&pair, |(a, b, c)| {
        let ab = a.multiply(&b).unwrap();
        let mut ba = Element::zero(a.algebra());
        for (da, pa) in homogeneous_parts(&a) {
            for (db, pb) in homogeneous_parts(&b) {
                ba = ba.add(&pb.multiply(&pa).unwrap().scale(&sign((da * db) % 2 != 0))).unwrap();
            }
        }
        proptest::prop_assert_eq!(ab.clone(), ba);
        proptest::prop_assert_eq!(ab.multiply(&c).unwrap(), a.multiply(&b.multiply(&c).unwrap()).unwrap());
        Ok(())
    });
    if let Err(e) = r {
        failures.push(format!("commutativity/associativity: {e}"));
    }
    for deg in -1..=2 {
        let mut runner = TestRunner::new(Config { cases: 1000 / 4, failure_persistence: None, ..Config::default() });
        let strat = (derivation(alg.clone(), deg), element(alg.clone()), element(alg.clone()));
        let r = runner.run(&strat, |(d, a, b)| {
            for (da, pa) in homogeneous_parts(&a) {
                let lhs = d.apply(&pa.multiply(&b).unwrap()).unwrap();
                let rhs = d
                    .apply(&pa)
                    .unwrap()
                    .multiply(&b)
                    .unwrap()
                    .add(&pa.multiply(&d.apply(&b).unwrap()).unwrap().scale(&sign((da * deg) % 2 != 0)))
                    .unwrap();
                proptest::prop_assert_eq!(lhs, rhs);
            }
            Ok(())
        });
        if let Err(e) = r {
            failures.push(format!("Leibniz (|D| = {deg}): {e}"));
        }
    }
}

/// Dimension of `V^g`: the common kernel of the action matrices.
fn invariants(m: &ModuleData) -> usize {
    let stacked = m.action.iter().skip(1).fold(m.action[0].clone(), |acc, a| acc.stack(a));
    nullspace(&stacked).len()
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    algebra_laws(&mut failures);

    let mut complexes = 0;
    let mut check = |name: String, c: framing_core::Complex| {
        complexes += 1;
        if !c.verify().unwrap() {
            failures.push(format!("d² ≠ 0 on {name}"));
        }
    };
    for n in 2..=5 {
        let g = build_so(n).unwrap();
        check(format!("CE(so({n}))"), ce_complex(&g, None, &CeOptions::full(&g)).unwrap());
        check(format!("CE(so({n}), vector)"), ce_complex(&g, Some(&vector_module(n).unwrap()), &CeOptions::full(&g)).unwrap());
    }
    for (t, r) in [(SimpleType::A, 1), (SimpleType::A, 2), (SimpleType::C, 2), (SimpleType::G, 2)] {
        let g = build_simple(t, r).unwrap();
        check(format!("CE({t}{r}, adjoint)"), ce_complex(&g, Some(&adjoint_module(&g)), &CeOptions::new(-1..=4)).unwrap());
    }
    let dr = build_dR(&build_so(3).unwrap()).unwrap();
    check("CE(so(3)_dR)".into(), ce_complex(&dr, None, &CeOptions::new(-1..=8)).unwrap());
    for n in 2..=6 {
        for sector in [Sector::Ideal, Sector::Reduced] {
            let page = build_e2(n, unit_coeffs(), 0..=n as i64 + 6).unwrap();
            check(format!("E2 page n = {n} {sector:?}"), page.complex(sector).unwrap());
        }
    }
    for n in [3, 4] {
        let c = GradedDims::point(0);
        check(format!("fiber n = {n}"), build_fiber(n, &c, default_fiber_window(n, &c), false).unwrap().complex);
    }

    let mut fails = Vec::new();
    for (name, g) in [
        ("so(3)", build_so(3).unwrap()),
        ("so(4)", build_so(4).unwrap()),
        ("sl(2)", build_simple(SimpleType::A, 1).unwrap()),
        ("sl(3)", build_simple(SimpleType::A, 2).unwrap()),
    ] {
        let h = full_ce(&g);
        let top = g.dim() as i64;
        if (0..=top).any(|k| h.get(k) != h.get(top - k)) {
            fails.push(format!("Poincaré duality fails for {name}: {h}"));
        }
        if h.euler_characteristic() != 0 {
            fails.push(format!("χ ≠ 0 for {name}"));
        }
    }
    let mut semisimple: Vec<(String, GradedLieData)> =
        (3..=8).map(|n| (format!("so({n})"), build_so(n).unwrap())).collect();
    for (t, r) in [
        (SimpleType::A, 1),
        (SimpleType::A, 2),
        (SimpleType::A, 3),
        (SimpleType::A, 4),
        (SimpleType::B, 2),
        (SimpleType::B, 3),
        (SimpleType::C, 2),
        (SimpleType::C, 3),
        (SimpleType::D, 4),
        (SimpleType::G, 2),
    ] {
        semisimple.push((format!("{t}{r}"), build_simple(t, r).unwrap()));
    }
    for (name, g) in &semisimple {
        assert!(g.dim() <= 28);
        let h = ce_cohomology(g, None, &CeOptions::new(0..=3)).unwrap().dims;
        if h.get(1) != 0 || h.get(2) != 0 {
            fails.push(format!("Whitehead fails for {name}: {h}"));
        }
    }
    for (name, g, m) in [
        ("(so(3), trivial)", build_so(3).unwrap(), trivial_module(&build_so(3).unwrap())),
        ("(so(3), adjoint)", build_so(3).unwrap(), adjoint_module(&build_so(3).unwrap())),
        ("(so(4), vector)", build_so(4).unwrap(), vector_module(4).unwrap()),
    ] {
        let with_v = ce_cohomology(&g, Some(&m), &CeOptions::full(&g)).unwrap().dims;
        let expected = full_ce(&g).iter().map(|(d, k)| (d, k * invariants(&m))).collect();
        if with_v != expected {
            fails.push(format!("invariant coefficients fail for {name}: {with_v} vs {expected}"));
        }
    }
    failures.extend(fails);
    outcome(
        failures,
        format!(
            "10³ cases per law, d² = 0 on {complexes} complexes, duality/χ, Whitehead on {} algebras, 3 invariant-coefficient cases ({:.2?})",
            semisimple.len(),
            start.elapsed()
        ),
    )
}

fn criterion_8() -> Outcome {
    let dr = build_dR(&build_so(3).unwrap()).unwrap();
    let mut failures = Vec::new();
    let mut tables = Vec::new();
    for cap in [2, 3] {
        let opts = CeOptions::new(-1..=8).reduced(true).word_cap(Some(cap));
        let h = ce_cohomology(&dr, None, &opts).unwrap().dims;
        if !h.is_zero() {
            failures.push(format!("cap {cap}: {h}"));
        }
        tables.push(h);
    }
    if tables[0] != tables[1].restricted(&(0..=1)) {
        failures.push("capped answers differ".into());
    }
    let uncapped = ce_cohomology(&dr, None, &CeOptions::new(-1..=8).reduced(true)).unwrap().dims;
    if !uncapped.is_zero() {
        failures.push(format!("uncapped: {uncapped}"));
    }
    outcome(failures, "reduced H(so(3)_dR) = 0 at caps 2, 3 and uncapped through degree 7".into())
}

fn main() {
    let allow_large =
        std::env::args().any(|a| a == "--allow-large") || std::env::var("FRAMING_ALLOW_LARGE").is_ok_and(|v| v == "1");
    // libtest flags such as --nocapture are accepted and ignored
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("n=3 trivial coefficients: E3 = ⟨p⟩ at degree 4", Box::new(criterion_1)),
        ("n=4 trivial coefficients: p, p′ and pη′ − p′η", Box::new(criterion_2)),
        ("catalog = brute-force CE", Box::new(criterion_3)),
        ("fiber oracle = E3 shifted by n", Box::new(move || criterion_4(allow_large))),
        ("preset group dimensions", Box::new(criterion_5)),
        ("H(R̄, d3) = 0", Box::new(criterion_6)),
        ("structural properties", Box::new(criterion_7)),
        ("g_dR acyclicity", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("criterion {} {} {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
