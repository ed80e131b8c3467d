//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero when a criterion fails that is not listed in `KNOWN_FAILURES`.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use shortres::exactla::PrimeField;
use shortres::invsys::{apolar_algebra, default_vars, random_cubic_with};
use shortres::laws::{
    search_pair_and_conca, verify_complete_intersection, verify_initial_form_pair, verify_koszul_socle_criterion,
    verify_periodic_resolution, verify_poincare_factorization, VerificationReport,
};
use shortres::polyspace::{parse_poly, random_form, var_list};
use shortres::quotient::{build_graded, build_local, parse_algebra_file, GradedAlgebra, LocalAlgebra};
use shortres::resolve::{minimal_resolution, residue_field, ModulePresentation};
use shortres::survey::{run_survey, sample_rng, SampleResult, SurveyConfig};
use shortres::zerodiv::{all_linear_forms, criterion_balanced, find_exact_pair, is_exact_pair, Budget};

/// Criteria expected to fail, with the reason printed alongside.
/// 3: `H_R(-t) P_M(t)` is a polynomial whose degree is not bounded by
/// `2 + max generator degree`; the measured products have nonzero
/// coefficients in the window.
const KNOWN_FAILURES: &[usize] = &[3];

const SURVEY_SEED: u64 = 7;
const N: usize = 6;
const J: usize = 10;

struct Line {
    id: usize,
    pass: bool,
    detail: String,
}

fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn graded_fixture(name: &str) -> GradedAlgebra {
    parse_algebra_file(&fixture(name)).unwrap().graded().unwrap()
}

fn graded(p: u32, vars: &[&str], rels: &[&str], cap: usize) -> GradedAlgebra {
    let f = PrimeField::new(p).unwrap();
    let v = var_list(vars);
    let rels: Vec<_> = rels.iter().map(|s| parse_poly(s, &v, f).unwrap()).collect();
    build_graded(f, v, &rels, cap).unwrap()
}

fn local(p: u32, vars: &[&str], rels: &[&str], trunc: usize) -> LocalAlgebra {
    let f = PrimeField::new(p).unwrap();
    let v = var_list(vars);
    let rels: Vec<_> = rels.iter().map(|s| parse_poly(s, &v, f).unwrap()).collect();
    build_local(f, v, &rels, trunc).unwrap()
}

fn ints(v: &Value) -> Vec<i64> {
    v.as_array()
        .map(|a| a.iter().filter_map(Value::as_i64).collect())
        .unwrap_or_default()
}

fn hilbert_shape(e: usize) -> Line {
    let mut counts = Vec::new();
    for e in [3, e] {
        let shape = vec![1, e, e, 1];
        let hits = (0..100)
            .filter(|&i| {
                let form = random_cubic_with(PrimeField::default(), default_vars(e), &mut sample_rng(SURVEY_SEED, i));
                apolar_algebra(&form, J).unwrap().hilbert_function() == shape
            })
            .count();
        counts.push((e, hits));
    }
    Line {
        id: 1,
        pass: counts.iter().all(|&(_, h)| h >= 90),
        detail: counts
            .iter()
            .map(|(e, h)| format!("e={e}: {h}/100 with H = 1+{e}t+{e}t^2+t^3"))
            .collect::<Vec<_>>()
            .join(", "),
    }
}

fn main_identity(survey: &[SampleResult]) -> Line {
    let expected: Vec<i64> = vec![1, 3, 6, 10, 15, 21, 28];
    let one: Vec<i64> = vec![1, 0, 0, 0, 0, 0, 0];
    let mut checked = 0;
    let mut bad = Vec::new();
    for s in survey.iter().filter(|s| s.record.ezd_found) {
        let rep = s.report("gorenstein-rationality").unwrap();
        let ok = rep.outcome.is_verified()
            && ints(&rep.payload["product_k"]) == one
            && ints(&rep.payload["poincare_k"]) == expected;
        checked += 1;
        if !ok {
            bad.push(s.record.index);
        }
    }
    Line {
        id: 2,
        pass: checked > 0 && bad.is_empty(),
        detail: format!(
            "H(-t)P_k = 1 through t^6 and P_k = 1,3,6,10,15,21,28 on {checked} samples with an EZD; mismatches {bad:?}"
        ),
    }
}

fn rationality_window(survey: &[SampleResult]) -> Line {
    let mut total = 0;
    let mut vanishing = 0;
    let mut example = None;
    for s in survey.iter().filter(|s| s.record.ezd_found) {
        let rep = s.report("gorenstein-rationality").unwrap();
        for m in rep.payload["modules"].as_array().unwrap() {
            if !m["module"].as_str().unwrap().starts_with("R/(") {
                continue;
            }
            total += 1;
            if m["window_vanishes"].as_bool().unwrap() {
                vanishing += 1;
            } else if example.is_none() {
                example = Some(format!(
                    "{} has H(-t)P_M = {:?}",
                    m["module"].as_str().unwrap(),
                    ints(&m["product"])
                ));
            }
        }
    }
    Line {
        id: 3,
        pass: total > 0 && vanishing == total,
        detail: format!(
            "window [3 + max generator degree, 6] vanishes for {vanishing}/{total} random cyclic modules{}",
            example.map(|e| format!("; e.g. {e}")).unwrap_or_default()
        ),
    }
}

fn convolution(survey: &[SampleResult]) -> Line {
    let r = graded_fixture("gorenstein_xy.alg");
    let f = *r.field();
    let x = parse_poly("x", r.vars(), f).unwrap();
    let y = parse_poly("y", r.vars(), f).unwrap();
    let rbar = r.quotient_by(&x).unwrap();
    let cyclic = random_form(f, rbar.vars().clone(), 2, &mut sample_rng(SURVEY_SEED, 0));
    let modules = [
        ("k", ModulePresentation::residue_field(f, rbar.vars())),
        ("R/aR", ModulePresentation::free(vec![0])),
        ("cyclic", ModulePresentation::cyclic(vec![cyclic])),
    ];
    // R/(a, y^2) over R has generators in degree 8 at i = 5; J = 12 keeps row 6 complete.
    let mut fixture_ok = true;
    for (name, m) in &modules {
        let rep = verify_poincare_factorization(&r, &x, &y, m, name, N, 12).unwrap();
        fixture_ok &= rep.outcome.is_verified();
    }
    let sampled: Vec<&SampleResult> = survey.iter().filter(|s| s.record.ezd_found).take(10).collect();
    let sample_reports: Vec<&VerificationReport> = sampled
        .iter()
        .flat_map(|s| s.reports_for("poincare-factorization"))
        .collect();
    let verified = sample_reports.iter().filter(|r| r.outcome.is_verified()).count();
    Line {
        id: 4,
        pass: fixture_ok && sampled.len() == 10 && sample_reports.len() == 30 && verified == 30,
        detail: format!(
            "fixture k[x,y]/(xy,x^3-y^3) with (x,y): {}; surveyed: {verified}/{} reports verified on {} samples",
            if fixture_ok {
                "verified for k, R/aR, cyclic"
            } else {
                "not verified"
            },
            sample_reports.len(),
            sampled.len()
        ),
    }
}

fn periodic(survey: &[SampleResult]) -> Line {
    let r = graded_fixture("gorenstein_xy.alg");
    let f = *r.field();
    let x = parse_poly("x", r.vars(), f).unwrap();
    let y = parse_poly("y", r.vars(), f).unwrap();
    let fixture_ok = verify_periodic_resolution(&r, &x, &y, N, J)
        .unwrap()
        .outcome
        .is_verified();
    let with_pair: Vec<&SampleResult> = survey.iter().filter(|s| s.record.ezd_found).collect();
    let verified = with_pair
        .iter()
        .filter(|s| s.report("periodic-resolution").is_some_and(|r| r.outcome.is_verified()))
        .count();
    Line {
        id: 5,
        pass: fixture_ok && verified == with_pair.len(),
        detail: format!(
            "homology of F(a,b,R) vanishes in 1..6 and beta(R/aR) is diagonal: {verified}/{} certified pairs, fixture {}",
            with_pair.len(),
            if fixture_ok { "verified" } else { "not verified" }
        ),
    }
}

fn exhaustive_equivalence() -> Line {
    let f3 = PrimeField::new(3).unwrap();
    // first sample with the Gorenstein shape and an exact pair, so both sides are exercised
    let generic = (0..)
        .map(|i| {
            apolar_algebra(
                &random_cubic_with(f3, default_vars(3), &mut sample_rng(SURVEY_SEED, i)),
                J,
            )
            .unwrap()
        })
        .filter(|r| r.hilbert_function() == vec![1, 3, 3, 1])
        .map(|r| r.to_local().unwrap())
        .find(|l| find_exact_pair(l, Budget::default(), 0).unwrap().certificate.is_some())
        .unwrap();
    let fermat = local(3, &["x", "y", "z"], &["x*y", "x*z", "y*z", "x^3 - y^3", "x^3 - z^3"], 3);
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, r) in [("generic", &generic), ("Fermat-type", &fermat)] {
        let forms: Vec<Vec<u32>> = all_linear_forms(r).iter().map(|c| r.linear_form(c)).collect();
        let (mut pairs, mut exact, mut discrepancies) = (0, 0, 0);
        for a in &forms {
            for b in &forms {
                let lhs = criterion_balanced(r, a, b).unwrap();
                let rhs = is_exact_pair(r, a, b).unwrap();
                pairs += 1;
                exact += usize::from(rhs);
                discrepancies += usize::from(lhs != rhs);
            }
        }
        pass &= discrepancies == 0 && pairs == 26 * 26;
        parts.push(format!(
            "{name}: {pairs} pairs, {exact} exact, {discrepancies} discrepancies"
        ));
    }
    Line {
        id: 6,
        pass,
        detail: parts.join("; "),
    }
}

fn initial_forms() -> Line {
    let file = parse_algebra_file(&fixture("inhomogeneous.alg")).unwrap();
    let l = file.local().unwrap();
    let cert = find_exact_pair(&l, Budget::default(), 0).unwrap().certificate;
    let Some(cert) = cert else {
        return Line {
            id: 7,
            pass: false,
            detail: "no certified pair on the fixture".into(),
        };
    };
    let rep = verify_initial_form_pair(&l, cert.a(), cert.b()).unwrap();
    let p = &rep.payload;
    Line {
        id: 7,
        pass: rep.outcome.is_verified() && p["initial_forms_exact_pair"] == Value::Bool(true),
        detail: format!(
            "pair ({}, {}): initial forms {} exact, filtration dims {}, H(gr/a*) = {} = H_R/(1+t) = {}",
            cert.a,
            cert.b,
            if p["initial_forms_exact_pair"] == Value::Bool(true) {
                "are"
            } else {
                "are not"
            },
            p["filtration_dims"],
            p["hilbert_gr_quotient"],
            p["hilbert_over_one_plus_t"]
        ),
    }
}

fn golod(survey: &[SampleResult]) -> Line {
    let tate: Vec<i64> = vec![1, 3, 5, 7, 9, 11, 13];
    let conca: Vec<&SampleResult> = survey.iter().filter(|s| s.record.conca_found).collect();
    let mut verified = 0;
    let mut failures = Vec::new();
    for s in &conca {
        match s.report("golod") {
            Some(rep)
                if rep.outcome.is_verified()
                    && ints(&rep.payload["poincare_q_k"]) == tate
                    && rep.payload["golod_series"] == rep.payload["poincare_r_k"] =>
            {
                verified += 1
            }
            _ => failures.push(s.record.index),
        }
    }
    Line {
        id: 8,
        pass: verified >= 5 && failures.is_empty(),
        detail: format!(
            "cover built and Golod formula exact through t^6 on {verified}/{} samples with a Conca generator; P^Q_k = (1+t)^3/(1-t^2)^2; failures {failures:?}",
            conca.len()
        ),
    }
}

fn koszul_socle(survey: &[SampleResult]) -> Line {
    let mut consistent = 0;
    let mut checked = 0;
    for s in survey.iter().filter(|s| s.record.ezd_found) {
        let rep = s.report("koszul-socle").unwrap();
        checked += 1;
        let predicted = rep.payload["predicted_koszul"].as_bool().unwrap();
        let clean = rep.payload["koszul"]["verdict"] == "clean_to";
        if !rep.outcome.is_refuted() && predicted == clean {
            consistent += 1;
        }
    }
    let r = graded_fixture("socle_two.alg");
    let searched = search_pair_and_conca(&r.to_local().unwrap(), Budget::default(), 0).unwrap();
    let rep = verify_koszul_socle_criterion(&r, &searched, N).unwrap();
    let refutation_side = rep.outcome.is_verified()
        && rep.payload["predicted_koszul"] == Value::Bool(false)
        && rep.payload["koszul"]["verdict"] == "off_diagonal";
    Line {
        id: 9,
        pass: checked > 0 && consistent == checked && refutation_side,
        detail: format!(
            "(e >= s+2) <=> clean table to i=6 on {consistent}/{checked} samples (Koszul side is evidence); \
             fixture e=3, s={}: off-diagonal at {}",
            rep.payload["socle_dimension"], rep.payload["koszul"]
        ),
    }
}

fn complete_intersections() -> Line {
    let quadrics = verify_complete_intersection(&graded(101, &["x", "y"], &["x^2", "y^2"], J), N, J).unwrap();
    let mixed = verify_complete_intersection(&graded(101, &["x", "y"], &["x^2", "y^3"], J), N, J).unwrap();
    let q = &quadrics.payload;
    let m = &mixed.payload;
    let quadrics_ok = quadrics.outcome.is_verified()
        && q["length"] == 4
        && q["minimal_multiplicity"] == Value::Bool(true)
        && ints(&q["hilbert"]) == [1, 2, 1]
        && ints(&q["poincare_k"]) == [1, 2, 3, 4, 5, 6, 7];
    let mixed_ok = mixed.outcome.is_verified()
        && m["minimal_multiplicity"] == Value::Bool(false)
        && m["koszul"]["verdict"] == "off_diagonal";
    Line {
        id: 10,
        pass: quadrics_ok && mixed_ok,
        detail: format!(
            "(x^2,y^2): length {}, P_k {:?}, (1-t^2)^2 P_k = {:?}; (x^2,y^3): minimal multiplicity {}, off-diagonal at {}, (1-t^2)^2 P_k = {:?}",
            q["length"],
            ints(&q["poincare_k"]),
            ints(&q["product_one_minus_t2"]),
            m["minimal_multiplicity"],
            m["koszul"],
            ints(&m["product_one_minus_t2"])
        ),
    }
}

fn determinism() -> Line {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_shortres"))
            .args(["survey", "--seed", "42", "--samples", "25"])
            .output()
            .expect("the binary runs")
    };
    let first = run();
    let second = run();
    let lines = first.stdout.iter().filter(|&&b| b == b'\n').count();
    Line {
        id: 11,
        pass: first.status.success() && lines == 25 && first.stdout == second.stdout,
        detail: format!(
            "two runs of `survey --seed 42 --samples 25`: {lines} lines, {}",
            if first.stdout == second.stdout {
                "byte-identical"
            } else {
                "different"
            }
        ),
    }
}

fn performance(suite: Duration) -> Line {
    let form = random_cubic_with(PrimeField::default(), default_vars(4), &mut sample_rng(SURVEY_SEED, 0));
    let r = apolar_algebra(&form, J).unwrap();
    let start = Instant::now();
    let b = minimal_resolution(&r, &residue_field(&r), N, J).unwrap();
    let single = start.elapsed();
    Line {
        id: 12,
        pass: suite < Duration::from_secs(300) && single < Duration::from_secs(10) && b.is_complete(N),
        detail: format!("suite {suite:.2?} (limit 5 min); e=4 resolution of k to (6,10) {single:.2?} (limit 10 s)"),
    }
}

fn main() {
    let start = Instant::now();
    let cfg = SurveyConfig {
        e: 3,
        samples: 100,
        seed: SURVEY_SEED,
        ..SurveyConfig::default()
    };
    let survey = run_survey(&cfg).expect("the survey runs");
    let mut lines = vec![
        hilbert_shape(4),
        main_identity(&survey),
        rationality_window(&survey),
        convolution(&survey),
        periodic(&survey),
        exhaustive_equivalence(),
        initial_forms(),
        golod(&survey),
        koszul_socle(&survey),
        complete_intersections(),
        determinism(),
    ];
    lines.push(performance(start.elapsed()));

    let mut unexpected = Vec::new();
    for line in &lines {
        let known = KNOWN_FAILURES.contains(&line.id);
        let tag = match (line.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("{tag} criterion {}: {}", line.id, line.detail);
        if !line.pass && !known {
            unexpected.push(line.id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
