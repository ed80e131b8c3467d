use std::sync::Arc;

use crate::error::Result;
use crate::polyspace::Poly;
use crate::quotient::GradedAlgebra;
use crate::resolve::{build_periodic_complex, minimal_resolution, present_module, BettiTable, ModulePresentation};

use super::report::witness;
use super::{graded_hash, linear_pair_gate, ReportInputs, VerificationReport};

fn rename_presentation(m: &ModulePresentation, vars: &Arc<[String]>) -> Result<ModulePresentation> {
    let relations = m
        .relations
        .iter()
        .map(|row| row.iter().map(|f| f.rename_to(vars)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(ModulePresentation {
        gen_degrees: m.gen_degrees.clone(),
        relations,
    })
}

struct Tables {
    over_r: BettiTable,
    over_quotient: BettiTable,
}

/// Betti tables of `M` over `R/aR` and over `R`; `Err` is an inapplicable
/// reason.
fn both_tables(
    r: &GradedAlgebra,
    a: &Poly,
    m: &ModulePresentation,
    n: usize,
    jcap: usize,
) -> Result<std::result::Result<Tables, String>> {
    let rbar = r.quotient_by(a)?;
    let m = rename_presentation(m, rbar.vars())?;
    let mbar = present_module(&rbar, &m)?;
    if mbar.is_zero() {
        return Ok(Err("the module is zero".into()));
    }
    let lifted = rename_presentation(&m, r.vars())?.restrict_along(a);
    let mr = present_module(r, &lifted)?;
    Ok(Ok(Tables {
        over_r: minimal_resolution(r, &mr, n, jcap)?,
        over_quotient: minimal_resolution(&rbar, &mbar, n, jcap)?,
    }))
}

fn inputs(r: &GradedAlgebra, a: &Poly, b: &Poly, label: &str, n: usize, jcap: usize) -> ReportInputs {
    ReportInputs {
        algebra: graded_hash(r),
        elements: vec![a.to_text(), b.to_text(), format!("M = {label}")],
        caps: [n, jcap],
        seed: None,
    }
}

/// Largest `n` such that rows `0..=n` of both tables are complete.
fn complete_prefix(t: &Tables, n: usize) -> Option<usize> {
    (0..=n)
        .take_while(|&i| t.over_r.is_complete(i) && t.over_quotient.is_complete(i))
        .last()
}

/// `β^R_n(M) = Σ_{i ≤ n} β^{R/aR}_i(M)` for `n ≤ N`, for an exact pair
/// `(a, b)` of linear forms and a module `M` over `R/aR` (given by a
/// presentation over `R/aR`, restricted to `R` along the quotient map).
pub fn verify_poincare_factorization(
    r: &GradedAlgebra,
    a: &Poly,
    b: &Poly,
    m: &ModulePresentation,
    label: &str,
    n: usize,
    jcap: usize,
) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("poincare-factorization", inputs(r, a, b, label, n, jcap));
    if let Err(why) = linear_pair_gate(r, a, b)? {
        return Ok(rep.inapplicable(why));
    }
    let t = match both_tables(r, a, m, n, jcap)? {
        Ok(t) => t,
        Err(why) => return Ok(rep.inapplicable(why)),
    };
    let reach = complete_prefix(&t, n);
    if let Some(top) = reach {
        let mut running = 0;
        for k in 0..=top {
            running += t.over_quotient.total(k);
            let lhs = t.over_r.total(k);
            if lhs != running {
                rep.refute(witness("betti_number", vec![k], running, lhs));
                break;
            }
        }
    }
    rep.put("betti_over_r", (0..=n).map(|k| t.over_r.total(k)).collect::<Vec<_>>());
    rep.put(
        "betti_over_quotient",
        (0..=n).map(|k| t.over_quotient.total(k)).collect::<Vec<_>>(),
    );
    rep.put("complete_over_r", t.over_r.completeness());
    rep.put("complete_over_quotient", t.over_quotient.completeness());
    if reach != Some(n) {
        rep.withhold(format!(
            "Betti rows beyond {} are incomplete within J = {jcap}",
            reach.map_or("-1".into(), |x| x.to_string())
        ));
    }
    Ok(rep)
}

/// Whether every entry in the complete rows lies on `j = i + shift`.
fn is_linear(b: &BettiTable, rows: usize, shift: usize) -> bool {
    b.entries()
        .filter(|&(i, _, _)| i <= rows)
        .all(|(i, j, _)| j == i + shift)
}

/// `β^R_{n,j}(M) = Σ_i β^{R/aR}_{i, j-n+i}(M)` for `n ≤ N`, `j ≤ J`, plus
/// the corollary that `M` has a linear resolution over `R` exactly when it
/// has one over `R/aR`.
pub fn verify_graded_poincare_factorization(
    r: &GradedAlgebra,
    a: &Poly,
    b: &Poly,
    m: &ModulePresentation,
    label: &str,
    n: usize,
    jcap: usize,
) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("graded-factorization", inputs(r, a, b, label, n, jcap));
    if let Err(why) = linear_pair_gate(r, a, b)? {
        return Ok(rep.inapplicable(why));
    }
    let t = match both_tables(r, a, m, n, jcap)? {
        Ok(t) => t,
        Err(why) => return Ok(rep.inapplicable(why)),
    };
    let reach = complete_prefix(&t, n);
    if let Some(top) = reach {
        'rows: for k in 0..=top {
            for j in 0..=jcap {
                let expected: usize = (0..=k)
                    .filter(|&i| j + i >= k)
                    .map(|i| t.over_quotient.get(i, j + i - k))
                    .sum();
                let found = t.over_r.get(k, j);
                if expected != found {
                    rep.refute(witness("graded_betti_number", vec![k, j], expected, found));
                    break 'rows;
                }
            }
        }
        let shift = (0..=jcap).find(|&j| t.over_quotient.get(0, j) > 0).unwrap_or(0);
        let lin_q = is_linear(&t.over_quotient, top, shift);
        let lin_r = is_linear(&t.over_r, top, shift);
        rep.put("linear_over_quotient", lin_q);
        rep.put("linear_over_r", lin_r);
        if lin_q != lin_r {
            let pos = t
                .over_r
                .first_off_diagonal(shift)
                .or_else(|| t.over_quotient.first_off_diagonal(shift))
                .map_or(vec![], |(i, j)| vec![i, j]);
            rep.refute(witness("linear_resolution", pos, lin_q, lin_r));
        }
    }
    rep.put("betti_over_r", &t.over_r);
    rep.put("betti_over_quotient", &t.over_quotient);
    if reach != Some(n) {
        rep.withhold(format!(
            "Betti rows beyond {} are incomplete within J = {jcap}",
            reach.map_or("-1".into(), |x| x.to_string())
        ));
    }
    Ok(rep)
}

/// For an exact pair of linear forms: the complex `··· → R -a-> R -b-> R
/// -a-> R` is acyclic in positions `1..=N`, and `R/aR` has the linear
/// resolution with `β_{i,i} = 1`.
pub fn verify_periodic_resolution(
    r: &GradedAlgebra,
    a: &Poly,
    b: &Poly,
    n: usize,
    jcap: usize,
) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("periodic-resolution", inputs(r, a, b, "R/aR", n, jcap));
    let l = match linear_pair_gate(r, a, b)? {
        Ok(l) => l,
        Err(why) => return Ok(rep.inapplicable(why)),
    };
    let av = l.element(&a.rename_to(l.vars())?)?;
    let bv = l.element(&b.rename_to(l.vars())?)?;
    let c = build_periodic_complex(&l, &av, &bv, n)?;
    let homology: Vec<usize> = (1..=n).map(|i| c.homology_dim(i, l.field())).collect();
    if let Some(i) = homology.iter().position(|&h| h != 0) {
        rep.refute(witness("homology", vec![i + 1], 0, homology[i]));
    }
    rep.put("homology", &homology);
    let m = present_module(r, &ModulePresentation::cyclic(vec![a.clone()]))?;
    let betti = minimal_resolution(r, &m, n, jcap)?;
    let reach = (0..=n).take_while(|&i| betti.is_complete(i)).last();
    if let Some(top) = reach {
        for i in 0..=top {
            for j in 0..=jcap {
                let expected = usize::from(i == j);
                let found = betti.get(i, j);
                if expected != found {
                    rep.refute(witness("graded_betti_number", vec![i, j], expected, found));
                }
            }
        }
    }
    rep.put("betti", &betti);
    if reach != Some(n) {
        rep.withhold(format!("Betti rows of R/aR are incomplete within J = {jcap}"));
    }
    Ok(rep)
}
