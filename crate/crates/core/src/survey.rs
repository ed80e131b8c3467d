//! Seeded surveys over random Gorenstein algebras of socle degree 3: each
//! sample is the apolar algebra of a random cubic form, searched for exact
//! pairs and Conca generators and run through the verifiers.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Result;
use crate::exactla::PrimeField;
use crate::invsys::{apolar_algebra, default_vars, random_cubic_with};
use crate::laws::{
    construct_ci_cover, graded_pair, search_pair_and_conca, text_hash, verify_golod, verify_gorenstein_rationality,
    verify_graded_poincare_factorization, verify_koszul_socle_criterion, verify_periodic_resolution,
    verify_poincare_factorization, VerificationReport,
};
use crate::par::{self, Execution};
use crate::polyspace::random_form;
use crate::resolve::ModulePresentation;
use crate::zerodiv::Budget;

/// Survey parameters. Records depend only on these (not on `exec`).
#[derive(Clone, Debug)]
pub struct SurveyConfig {
    pub e: usize,
    pub field: PrimeField,
    pub samples: usize,
    pub seed: u64,
    pub budget: Budget,
    /// Homological cap `N`.
    pub n: usize,
    /// Internal-degree cap `J`.
    pub jcap: usize,
    /// Random cyclic modules `R/(f)`, `f` a random quadric, per sample.
    pub cyclic_modules: usize,
    /// Also run the factorization, periodic-resolution and Golod checks.
    pub all_laws: bool,
    pub exec: Execution,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig {
            e: 3,
            field: PrimeField::default(),
            samples: 100,
            seed: 0,
            budget: Budget::default(),
            n: 6,
            jcap: 10,
            cyclic_modules: 10,
            all_laws: true,
            exec: Execution::Auto,
        }
    }
}

/// One JSONL line.
#[derive(Clone, Debug, Serialize)]
pub struct SurveyRecord {
    pub seed: u64,
    pub index: usize,
    pub e: usize,
    pub p: u32,
    pub cubic: String,
    pub hilbert: Vec<usize>,
    /// `H = 1 + e t + e t² + t³`.
    pub gorenstein_shape: bool,
    /// `e ≥ 3`.
    pub in_scope: bool,
    pub ezd_found: bool,
    pub certificate_hash: Option<String>,
    pub pair: Option<[String; 2]>,
    pub conca_found: bool,
    pub conca: Option<String>,
    /// Law name to its outcome (`status` plus witness or reason).
    pub laws: Map<String, Value>,
}

/// A record with the full reports behind it and the time it took.
#[derive(Clone, Debug)]
pub struct SampleResult {
    pub record: SurveyRecord,
    pub reports: Vec<VerificationReport>,
    pub elapsed: Duration,
}

impl SampleResult {
    pub fn report(&self, law: &str) -> Option<&VerificationReport> {
        self.reports.iter().find(|r| r.law == law)
    }

    pub fn reports_for<'a>(&'a self, law: &'a str) -> impl Iterator<Item = &'a VerificationReport> + 'a {
        self.reports.iter().filter(move |r| r.law == law)
    }
}

/// The stream for sample `index`: ChaCha8 seeded with `seed`, stream
/// `index`, so samples are independent of execution order.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn outcome_entry(rep: &VerificationReport) -> Value {
    let mut v = serde_json::to_value(&rep.outcome).expect("outcomes serialize");
    if !rep.notes.is_empty() {
        v["notes"] = serde_json::to_value(&rep.notes).expect("notes serialize");
    }
    v
}

/// Runs one sample.
pub fn run_sample(cfg: &SurveyConfig, index: usize) -> Result<SampleResult> {
    let start = Instant::now();
    let mut rng = sample_rng(cfg.seed, index);
    let form = random_cubic_with(cfg.field, default_vars(cfg.e), &mut rng);
    let search_seed: u64 = rng.random();
    let r = apolar_algebra(&form, cfg.jcap)?;
    let e = r.nvars();
    let hilbert = r.hilbert_function();
    let mut record = SurveyRecord {
        seed: cfg.seed,
        index,
        e: cfg.e,
        p: cfg.field.p(),
        cubic: form.poly().to_text(),
        gorenstein_shape: e == cfg.e && hilbert == vec![1, e, e, 1],
        hilbert,
        in_scope: cfg.e >= 3,
        ezd_found: false,
        certificate_hash: None,
        pair: None,
        conca_found: false,
        conca: None,
        laws: Map::new(),
    };
    let mut reports = Vec::new();
    let l = r.to_local()?;
    let searched = search_pair_and_conca(&l, cfg.budget, search_seed)?;
    if let Some(cert) = &searched.pair {
        record.ezd_found = true;
        record.certificate_hash = Some(text_hash(&cert.to_json().to_string()));
        record.pair = Some([cert.a.clone(), cert.b.clone()]);
    }
    record.conca_found = searched.conca_found();
    record.conca = searched.conca.as_ref().and_then(|c| c.c.clone());

    let mut modules = vec![
        ("k".to_string(), ModulePresentation::residue_field(cfg.field, r.vars())),
        ("R".to_string(), ModulePresentation::free(vec![0])),
    ];
    for _ in 0..cfg.cyclic_modules {
        let f = random_form(cfg.field, r.vars().clone(), 2, &mut rng);
        modules.push((format!("R/({})", f.to_text()), ModulePresentation::cyclic(vec![f])));
    }
    reports.push(verify_koszul_socle_criterion(&r, &searched, cfg.n)?);
    reports.push(verify_gorenstein_rationality(&r, &searched, &modules, cfg.n, cfg.jcap)?);

    if cfg.all_laws {
        if let Some(cert) = &searched.pair {
            if let Some((a, b)) = graded_pair(&r, &l, cert)? {
                reports.push(verify_periodic_resolution(&r, &a, &b, cfg.n, cfg.jcap)?);
                let rbar = r.quotient_by(&a)?;
                let f = random_form(cfg.field, rbar.vars().clone(), 2, &mut rng);
                let over_quotient = [
                    (
                        "k".to_string(),
                        ModulePresentation::residue_field(cfg.field, rbar.vars()),
                    ),
                    ("R/aR".to_string(), ModulePresentation::free(vec![0])),
                    (format!("R/(a, {})", f.to_text()), ModulePresentation::cyclic(vec![f])),
                ];
                for (name, m) in &over_quotient {
                    reports.push(verify_poincare_factorization(&r, &a, &b, m, name, cfg.n, cfg.jcap)?);
                    reports.push(verify_graded_poincare_factorization(
                        &r, &a, &b, m, name, cfg.n, cfg.jcap,
                    )?);
                }
                if let Some(cv) = searched.conca.as_ref().and_then(|c| c.c_vec.as_ref()) {
                    let c = crate::laws::leading_part(&l.lift(cv).rename_to(r.vars())?);
                    match construct_ci_cover(&r, &a, &b, &c, cfg.jcap) {
                        Ok(cover) => reports.push(verify_golod(&cover, cfg.n, cfg.jcap)?),
                        Err(err) => {
                            let failure = serde_json::json!({ "status": "failed", "error": err.to_string() });
                            record.laws.insert("ci-cover".into(), failure);
                        }
                    }
                }
            }
        }
    }
    for rep in &reports {
        let key = match rep.inputs.elements.iter().find(|s| s.starts_with("M = ")) {
            Some(m) if !rep.law.starts_with("gorenstein") && rep.law != "periodic-resolution" => {
                format!("{}[{}]", rep.law, &m[4..])
            }
            _ => rep.law.clone(),
        };
        record.laws.insert(key, outcome_entry(rep));
    }
    Ok(SampleResult {
        record,
        reports,
        elapsed: start.elapsed(),
    })
}

/// Runs all samples; results are ordered by index whatever the execution
/// mode. `Execution::Sequential` also keeps the inner resolutions on one
/// thread.
pub fn run_survey(cfg: &SurveyConfig) -> Result<Vec<SampleResult>> {
    let indices: Vec<usize> = (0..cfg.samples).collect();
    let job = || par::map(cfg.exec, indices.clone(), |i| run_sample(cfg, i));
    #[cfg(feature = "parallel")]
    let results = if cfg.exec.is_parallel() {
        job()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .map_err(|e| crate::Error::Internal(e.to_string()))?
            .install(job)
    };
    #[cfg(not(feature = "parallel"))]
    let results = job();
    results.into_iter().collect()
}

/// Counts across a survey.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SurveySummary {
    pub samples: usize,
    pub gorenstein_shape: usize,
    pub ezd_found: usize,
    pub conca_found: usize,
    /// Law name to `[verified, refuted, inapplicable]`.
    pub laws: std::collections::BTreeMap<String, [usize; 3]>,
    pub total_time: Duration,
}

impl SurveySummary {
    pub fn of(results: &[SampleResult]) -> Self {
        let mut s = SurveySummary {
            samples: results.len(),
            ..Default::default()
        };
        for r in results {
            s.gorenstein_shape += usize::from(r.record.gorenstein_shape);
            s.ezd_found += usize::from(r.record.ezd_found);
            s.conca_found += usize::from(r.record.conca_found);
            s.total_time += r.elapsed;
            for rep in &r.reports {
                let slot = s.laws.entry(rep.law.clone()).or_default();
                let k = match rep.outcome.label() {
                    "verified_to_caps" => 0,
                    "refuted" => 1,
                    _ => 2,
                };
                slot[k] += 1;
            }
        }
        s
    }

    pub fn any_refuted(&self) -> bool {
        self.laws.values().any(|c| c[1] > 0)
    }
}

impl std::fmt::Display for SurveySummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pct = |k: usize| {
            if self.samples == 0 {
                0.0
            } else {
                100.0 * k as f64 / self.samples as f64
            }
        };
        writeln!(f, "samples: {}", self.samples)?;
        writeln!(
            f,
            "Gorenstein shape: {} ({:.1}%)",
            self.gorenstein_shape,
            pct(self.gorenstein_shape)
        )?;
        writeln!(
            f,
            "exact zero divisor found: {} ({:.1}%)",
            self.ezd_found,
            pct(self.ezd_found)
        )?;
        writeln!(
            f,
            "Conca generator found: {} ({:.1}%)",
            self.conca_found,
            pct(self.conca_found)
        )?;
        for (law, [v, r, i]) in &self.laws {
            writeln!(f, "{law}: verified {v}, refuted {r}, inapplicable {i}")?;
        }
        write!(f, "sample time (sum over samples): {:.2?}", self.total_time)
    }
}

/// Records as JSONL, one line per sample.
pub fn to_jsonl(results: &[SampleResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&serde_json::to_string(&r.record).expect("records serialize"));
        out.push('\n');
    }
    out
}
