use std::error::Error as StdError;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};
use shortres::exactla::PrimeField;
use shortres::laws::{
    self, construct_ci_cover, graded_hash, graded_pair, local_hash, search_pair_and_conca, Outcome, ReportInputs,
    Searched, VerificationReport,
};
use shortres::par::Execution;
use shortres::polyspace::{parse_poly, Poly};
use shortres::quotient::{parse_algebra_file, AlgebraFile, GradedAlgebra, LocalAlgebra};
use shortres::resolve::{minimal_resolution, present_module, ModulePresentation};
use shortres::survey::{run_survey, to_jsonl, SurveyConfig, SurveySummary};
use shortres::zerodiv::{find_exact_pair, Budget};

use crate::Law;

pub type CliResult<T> = Result<T, Box<dyn StdError>>;

/// What a successful run found.
#[derive(Debug, PartialEq, Eq)]
pub enum Ran {
    Clean,
    Refuted,
}

fn load(path: &Path) -> CliResult<AlgebraFile> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_algebra_file(&text).map_err(|e| format!("{}:{e}", path.display()).into())
}

fn graded(file: &AlgebraFile) -> CliResult<GradedAlgebra> {
    if file.local && !file.is_homogeneous() {
        return Err("this command needs homogeneous relations".into());
    }
    Ok(file.graded()?)
}

fn local(file: &AlgebraFile) -> CliResult<LocalAlgebra> {
    if file.local || !file.is_homogeneous() {
        return Ok(file.local()?);
    }
    Ok(file.graded()?.to_local()?)
}

/// Pretty JSON on standard output; a closed pipe is not an error.
fn print(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

pub fn parse_budget(s: &str) -> CliResult<Budget> {
    let mut parts = s.split(',').map(str::trim);
    let mut budget = Budget::default();
    if let Some(a) = parts.next() {
        budget.a_trials = a.parse().map_err(|_| format!("bad budget `{s}`"))?;
    }
    if let Some(b) = parts.next() {
        budget.b_candidates = b.parse().map_err(|_| format!("bad budget `{s}`"))?;
    }
    if parts.next().is_some() {
        return Err(format!("bad budget `{s}`").into());
    }
    Ok(budget)
}

/// `k`, `R`, `R/aR` (the free module over the quotient), or
/// `cyclic:f1;f2;...`.
fn parse_module(spec: &str, field: PrimeField, vars: &Arc<[String]>) -> CliResult<ModulePresentation> {
    match spec.trim() {
        "k" => Ok(ModulePresentation::residue_field(field, vars)),
        "R" | "R/aR" => Ok(ModulePresentation::free(vec![0])),
        other => {
            let Some(rels) = other.strip_prefix("cyclic:") else {
                return Err(format!("unknown module `{other}`; use k, R, R/aR or cyclic:f1;f2").into());
            };
            let polys = rels
                .split(';')
                .map(|f| parse_poly(f, vars, field))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ModulePresentation::cyclic(polys))
        }
    }
}

pub fn inspect(path: &Path) -> CliResult<Ran> {
    let file = load(path)?;
    let l = if !file.local && file.is_homogeneous() {
        let r = file.graded()?;
        if !r.is_artinian() {
            print(&json!({
                "kind": "graded",
                "artinian": false,
                "hilbert_to_cap": r.hilbert_function(),
                "cap": r.cap(),
            }));
            return Ok(Ran::Clean);
        }
        r.to_local()?
    } else {
        file.local()?
    };
    let h = l.hilbert();
    let socle = l.socle();
    let loewy = l.loewy_length();
    let mu: Vec<usize> = (1..loewy).map(|i| l.mu(&l.max_power(i))).collect();
    print(&json!({
        "kind": if file.local { "local" } else { "graded" },
        "artinian": true,
        "hilbert": l.hilbert_function(),
        "length": l.dim(),
        "balanced": h.is_balanced(),
        "gorenstein": l.is_gorenstein(),
        "socle_dimension": socle.lambda(),
        "socle": socle.basis().iter().map(|v| l.lift(v).to_text()).collect::<Vec<_>>(),
        "loewy_length": loewy,
        "mu_powers": mu,
    }));
    Ok(Ran::Clean)
}

pub fn betti(path: &Path, module: &str, n: usize, jcap: usize) -> CliResult<Ran> {
    let file = load(path)?;
    let r = graded(&file)?;
    let pres = parse_module(module, *r.field(), r.vars())?;
    let m = present_module(&r, &pres)?;
    let b = minimal_resolution(&r, &m, n, jcap)?;
    let warnings: Vec<String> = (0..=n)
        .filter(|&i| !b.is_complete(i))
        .map(|i| format!("row {i} may have syzygies beyond J = {jcap}"))
        .collect();
    let poincare = b.poincare().ok().and_then(|p| p.to_i64_vec());
    print(&json!({
        "algebra": graded_hash(&r),
        "module": module,
        "betti": b,
        "poincare": poincare,
        "warnings": warnings,
    }));
    eprint!("{b}");
    Ok(Ran::Clean)
}

pub fn ezd(path: &Path, budget: &str, seed: u64) -> CliResult<Ran> {
    let file = load(path)?;
    let l = local(&file)?;
    let hash = if !file.local && file.is_homogeneous() {
        graded_hash(&file.graded()?)
    } else {
        local_hash(&l)
    };
    let s = find_exact_pair(&l, parse_budget(budget)?, seed)?;
    print(&json!({
        "algebra": hash,
        "found": s.certificate.is_some(),
        "trials": s.trials,
        "seed": s.seed,
        "certificate": s.certificate,
    }));
    Ok(Ran::Clean)
}

pub struct VerifyArgs {
    pub a: Option<String>,
    pub b: Option<String>,
    pub c: Option<String>,
    pub modules: Vec<String>,
    pub n: usize,
    pub jcap: usize,
    pub seed: u64,
    pub budget: String,
}

fn law_name(law: Law) -> &'static str {
    match law {
        Law::PoincareFactorization => "poincare-factorization",
        Law::GradedFactorization => "graded-factorization",
        Law::InitialForms => "initial-forms",
        Law::Golod => "golod",
        Law::KoszulSocle => "koszul-socle",
        Law::GorensteinRationality => "gorenstein-rationality",
        Law::CompleteIntersection => "complete-intersection",
        Law::PeriodicResolution => "periodic-resolution",
    }
}

fn finish(rep: VerificationReport) -> CliResult<Ran> {
    print(&rep.to_json());
    Ok(if rep.outcome.is_refuted() {
        Ran::Refuted
    } else {
        Ran::Clean
    })
}

/// The pair from `--a/--b`, or from a search, as linear forms of `r`.
fn graded_pair_from(r: &GradedAlgebra, args: &VerifyArgs, searched: &Searched) -> CliResult<Option<(Poly, Poly)>> {
    match (&args.a, &args.b) {
        (Some(a), Some(b)) => Ok(Some((
            parse_poly(a, r.vars(), *r.field())?,
            parse_poly(b, r.vars(), *r.field())?,
        ))),
        (None, None) => match &searched.pair {
            Some(cert) => Ok(graded_pair(r, &r.to_local()?, cert)?),
            None => Ok(None),
        },
        _ => Err("give both --a and --b, or neither".into()),
    }
}

pub fn verify(law: Law, path: &Path, args: VerifyArgs) -> CliResult<Ran> {
    let file = load(path)?;
    let name = law_name(law);
    let budget = parse_budget(&args.budget)?;
    let (n, jcap) = (args.n, args.jcap);

    if law == Law::InitialForms {
        let l = local(&file)?;
        let (a, b) = match (&args.a, &args.b) {
            (Some(a), Some(b)) => (
                l.element(&parse_poly(a, l.vars(), *l.field())?)?,
                l.element(&parse_poly(b, l.vars(), *l.field())?)?,
            ),
            (None, None) => match find_exact_pair(&l, budget, args.seed)?.certificate {
                Some(c) => (c.a().to_vec(), c.b().to_vec()),
                None => {
                    let inputs = ReportInputs {
                        algebra: local_hash(&l),
                        elements: vec![],
                        caps: [4, l.trunc()],
                        seed: Some(args.seed),
                    };
                    return finish(
                        VerificationReport::new(name, inputs)
                            .inapplicable("no exact pair found within the search budget"),
                    );
                }
            },
            _ => return Err("give both --a and --b, or neither".into()),
        };
        return finish(laws::verify_initial_form_pair(&l, &a, &b)?);
    }

    let r = graded(&file)?;
    if law == Law::CompleteIntersection {
        return finish(laws::verify_complete_intersection(&r, n, jcap)?);
    }
    if !r.is_artinian() {
        return Err(format!("the algebra is not artinian within cap {}; raise `cap`", r.cap()).into());
    }
    let l = r.to_local()?;
    let searched = search_pair_and_conca(&l, budget, args.seed)?;
    let no_pair = |elements: Vec<String>| {
        VerificationReport::new(
            name,
            ReportInputs {
                algebra: graded_hash(&r),
                elements,
                caps: [n, jcap],
                seed: Some(args.seed),
            },
        )
        .inapplicable("no exact pair of linear forms found within the search budget")
    };
    match law {
        Law::KoszulSocle => finish(laws::verify_koszul_socle_criterion(&r, &searched, n)?),
        Law::GorensteinRationality => {
            let specs = if args.modules.is_empty() {
                vec!["k".to_string(), "R".to_string()]
            } else {
                args.modules.clone()
            };
            let mods = specs
                .iter()
                .map(|s| Ok((s.clone(), parse_module(s, *r.field(), r.vars())?)))
                .collect::<CliResult<Vec<_>>>()?;
            finish(laws::verify_gorenstein_rationality(&r, &searched, &mods, n, jcap)?)
        }
        Law::PoincareFactorization | Law::GradedFactorization | Law::PeriodicResolution | Law::Golod => {
            let Some((a, b)) = graded_pair_from(&r, &args, &searched)? else {
                return finish(no_pair(vec![]));
            };
            match law {
                Law::PeriodicResolution => finish(laws::verify_periodic_resolution(&r, &a, &b, n, jcap)?),
                Law::Golod => golod(&r, &l, &a, &b, &args, &searched),
                _ => {
                    let spec = args.modules.first().map_or("k", String::as_str);
                    let rbar = r.quotient_by(&a)?;
                    let m = parse_module(spec, *r.field(), rbar.vars())?;
                    let rep = if law == Law::PoincareFactorization {
                        laws::verify_poincare_factorization(&r, &a, &b, &m, spec, n, jcap)?
                    } else {
                        laws::verify_graded_poincare_factorization(&r, &a, &b, &m, spec, n, jcap)?
                    };
                    finish(rep)
                }
            }
        }
        Law::InitialForms | Law::CompleteIntersection => unreachable!("handled above"),
    }
}

fn golod(
    r: &GradedAlgebra,
    l: &LocalAlgebra,
    a: &Poly,
    b: &Poly,
    args: &VerifyArgs,
    searched: &Searched,
) -> CliResult<Ran> {
    let c = match &args.c {
        Some(c) => Some(parse_poly(c, r.vars(), *r.field())?),
        None => searched
            .conca
            .as_ref()
            .and_then(|s| s.c_vec.as_ref())
            .map(|v| laws::leading_part(&l.lift(v))),
    };
    let base = VerificationReport::new(
        "golod",
        ReportInputs {
            algebra: graded_hash(r),
            elements: vec![a.to_text(), b.to_text()],
            caps: [args.n, args.jcap],
            seed: Some(args.seed),
        },
    );
    let Some(c) = c else {
        return finish(
            base.inapplicable("no Conca generator found over the prime field (a field extension may be required)"),
        );
    };
    match construct_ci_cover(r, a, b, &c, args.jcap) {
        Ok(cover) => finish(laws::verify_golod(&cover, args.n, args.jcap)?),
        Err(shortres::Error::NotRegular(msg)) => {
            let mut rep = base;
            rep.outcome = Outcome::Refuted {
                witness: laws::Witness {
                    what: "regular_sequence".into(),
                    position: vec![],
                    expected: json!("H_Q = (1 - t^2)^2 / (1 - t)^e"),
                    found: json!(msg),
                },
            };
            finish(rep)
        }
        Err(e) => finish(base.inapplicable(e.to_string())),
    }
}

pub struct SurveyArgs {
    pub e: usize,
    pub p: u32,
    pub samples: usize,
    pub modules: usize,
    pub quick: bool,
    pub out: Option<PathBuf>,
    pub sequential: bool,
    pub n: usize,
    pub jcap: usize,
    pub seed: u64,
    pub budget: String,
}

pub fn survey(args: SurveyArgs) -> CliResult<Ran> {
    let cfg = SurveyConfig {
        e: args.e,
        field: PrimeField::new(args.p)?,
        samples: args.samples,
        seed: args.seed,
        budget: parse_budget(&args.budget)?,
        n: args.n,
        jcap: args.jcap,
        cyclic_modules: args.modules,
        all_laws: !args.quick,
        exec: if args.sequential {
            Execution::Sequential
        } else {
            Execution::Auto
        },
    };
    if cfg.e < 3 {
        eprintln!("note: e = {} is below 3; records are marked out of scope", cfg.e);
    }
    if cfg.e == 0 {
        return Err("e must be positive".into());
    }
    let results = run_survey(&cfg)?;
    let jsonl = to_jsonl(&results);
    match &args.out {
        Some(p) => fs::write(p, &jsonl).map_err(|e| format!("{}: {e}", p.display()))?,
        None => std::io::stdout().write_all(jsonl.as_bytes())?,
    }
    let summary = SurveySummary::of(&results);
    eprintln!("{summary}");
    Ok(if summary.any_refuted() {
        Ran::Refuted
    } else {
        Ran::Clean
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report() -> VerificationReport {
        VerificationReport::new(
            "koszul-socle",
            ReportInputs {
                algebra: "0".into(),
                elements: vec![],
                caps: [6, 10],
                seed: None,
            },
        )
    }

    #[test]
    fn refutations_map_to_their_own_status() {
        let mut rep = report();
        assert_eq!(finish(rep.clone()).unwrap(), Ran::Clean);
        rep.refute(laws::Witness {
            what: "product_k".into(),
            position: vec![2],
            expected: json!(0),
            found: json!(1),
        });
        assert_eq!(finish(rep).unwrap(), Ran::Refuted);
    }

    #[test]
    fn budgets() {
        assert_eq!(
            parse_budget("8").unwrap(),
            Budget {
                a_trials: 8,
                b_candidates: 16
            }
        );
        assert_eq!(
            parse_budget("8, 3").unwrap(),
            Budget {
                a_trials: 8,
                b_candidates: 3
            }
        );
        assert!(parse_budget("x").is_err());
    }

    #[test]
    fn module_specs() {
        let f = PrimeField::default();
        let vars: Arc<[String]> = vec!["x".to_string(), "y".to_string()].into();
        assert_eq!(parse_module("cyclic:x^2;y", f, &vars).unwrap().gen_degrees, vec![0]);
        assert!(parse_module("M", f, &vars).is_err());
    }
}
