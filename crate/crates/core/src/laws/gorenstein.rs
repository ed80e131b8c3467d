use crate::error::Result;
use crate::quotient::GradedAlgebra;
use crate::resolve::{
    is_koszul_to, minimal_resolution, present_module, residue_field, KoszulVerdict, ModulePresentation,
};
use crate::series::{IntPoly, TruncSeries};

use super::report::witness;
use super::{complete_intersection_series, graded_hash, series_payload, ReportInputs, Searched, VerificationReport};

fn inputs(r: &GradedAlgebra, elements: Vec<String>, n: usize, seed: Option<u64>) -> ReportInputs {
    ReportInputs {
        algebra: graded_hash(r),
        elements,
        caps: [n, n + 4],
        seed,
    }
}

fn pair_elements(s: &Searched) -> Vec<String> {
    s.pair.as_ref().map_or(vec![], |c| vec![c.a.clone(), c.b.clone()])
}

/// Whether `H_R = 1 + e t + e t² + t³`.
fn cubic_shape(r: &GradedAlgebra) -> bool {
    let e = r.nvars();
    r.hilbert_function() == vec![1, e, e, 1]
}

/// For `H_R = 1 + e t + e t² + t³` with an exact zero divisor and socle
/// dimension `s`: `R` is Koszul exactly when `e ≥ s + 2`. An off-diagonal
/// `β_{i,j}(k)` is a definitive failure of Koszulness; a clean table up to
/// `N` is evidence only.
pub fn verify_koszul_socle_criterion(r: &GradedAlgebra, searched: &Searched, n: usize) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new(
        "koszul-socle",
        inputs(r, pair_elements(searched), n, Some(searched.seed)),
    );
    let e = r.nvars();
    rep.put("hilbert", r.hilbert_function());
    if !r.is_artinian() || !cubic_shape(r) {
        return Ok(rep.inapplicable("Hilbert function is not 1 + e t + e t^2 + t^3"));
    }
    if searched.pair.is_none() {
        return Ok(rep.inapplicable("no exact zero divisor found within the search budget"));
    }
    let l = r.to_local()?;
    let s = l.socle().lambda();
    let predicted = e >= s + 2;
    let quadratic = r.is_quadratic();
    let verdict = is_koszul_to(r, n)?;
    rep.put("e", e);
    rep.put("socle_dimension", s);
    rep.put("predicted_koszul", predicted);
    rep.put("quadratic", quadratic);
    rep.put("koszul", verdict);
    match verdict {
        KoszulVerdict::OffDiagonal { i, j } => {
            if predicted {
                rep.refute(witness("off_diagonal_betti", vec![i, j], "none", "nonzero"));
            } else if quadratic {
                rep.refute(witness(
                    "quadratic_with_exact_zero_divisor",
                    vec![i, j],
                    "none",
                    "nonzero",
                ));
            } else {
                rep.note("not Koszul: off-diagonal Betti number of k found");
            }
        }
        KoszulVerdict::CleanTo { n } => {
            if predicted {
                rep.note(format!(
                    "Koszul side is evidence only: no off-diagonal Betti number through i = {n}"
                ));
            } else {
                rep.refute(witness(
                    "no_off_diagonal_betti",
                    vec![e, s],
                    "off-diagonal entry within caps",
                    format!("clean to {n}"),
                ));
            }
        }
    }
    if verdict.is_clean() && searched.conca.is_some() && !searched.conca_found() {
        rep.note("no Conca generator over the prime field: extension possibly required");
    }
    Ok(rep)
}

/// `H_R(-t)` to order `n`.
fn hilbert_at_minus_t(r: &GradedAlgebra, n: usize) -> TruncSeries {
    TruncSeries::from_poly(&r.hilbert(), n).eval_neg_t()
}

/// For Gorenstein `R` with `m⁴ = 0`, `e ≥ 3` and an exact zero divisor:
/// `H_R = 1 + e t + e t² + t³` and `H_R(-t) P^R_k(t) = 1` (both refutable).
/// For each module `M` the product `H_R(-t) P^R_M(t)` is reported with
/// whether its coefficients vanish in `[3 + max generator degree, N]` and
/// from which degree on they vanish; since its degree is not bounded in
/// general, a nonzero coefficient there is recorded but does not refute.
pub fn verify_gorenstein_rationality(
    r: &GradedAlgebra,
    searched: &Searched,
    modules: &[(String, ModulePresentation)],
    n: usize,
    jcap: usize,
) -> Result<VerificationReport> {
    let mut elements = pair_elements(searched);
    elements.extend(modules.iter().map(|(name, _)| format!("M = {name}")));
    let mut rep = VerificationReport::new("gorenstein-rationality", inputs(r, elements, n, Some(searched.seed)));
    rep.inputs.caps = [n, jcap];
    let e = r.nvars();
    if !r.is_artinian() {
        return Ok(rep.inapplicable("the algebra is not artinian within its cap"));
    }
    let l = r.to_local()?;
    if !l.is_gorenstein() {
        return Ok(rep.inapplicable("the algebra is not Gorenstein"));
    }
    if l.loewy_length() > 4 {
        return Ok(rep.inapplicable("m^4 is not zero"));
    }
    if e < 3 {
        return Ok(rep.inapplicable(format!("μ(m) = {e} is below 3")));
    }
    if searched.pair.is_none() {
        return Ok(rep.inapplicable("no exact zero divisor found within the search budget"));
    }
    let h = r.hilbert_function();
    rep.put("hilbert", &h);
    let shape = [1, e, e, 1];
    if let Some(i) = (0..4.max(h.len())).find(|&i| h.get(i).copied().unwrap_or(0) != shape.get(i).copied().unwrap_or(0))
    {
        rep.refute(witness(
            "hilbert_function",
            vec![i],
            shape.get(i).copied().unwrap_or(0),
            h.get(i).copied().unwrap_or(0),
        ));
    }
    let hm = hilbert_at_minus_t(r, n);
    let mut incomplete = Vec::new();

    let bk = minimal_resolution(r, &residue_field(r), n, jcap)?;
    match bk.poincare_to(n) {
        Ok(pk) => {
            let prod = hm.mul_poly(&pk);
            rep.put("poincare_k", series_payload(&TruncSeries::from_poly(&pk, n)));
            rep.put("product_k", series_payload(&prod));
            let one = TruncSeries::from_poly(&IntPoly::one(), n);
            if let Some(i) = one.first_difference(&prod) {
                rep.refute(witness(
                    "product_k",
                    vec![i],
                    if i == 0 { 1 } else { 0 },
                    prod.coeff(i).map(|c| c.to_string()),
                ));
            }
        }
        Err(_) => incomplete.push("k".to_string()),
    }

    let mut per_module = Vec::new();
    let mut outside = Vec::new();
    for (name, pres) in modules {
        let m = present_module(r, pres)?;
        let start = 3 + pres.gen_degrees.iter().copied().max().unwrap_or(0);
        let b = minimal_resolution(r, &m, n, jcap)?;
        match b.poincare_to(n) {
            Ok(pm) => {
                let prod = hm.mul_poly(&pm);
                let ok = prod.window_polynomiality(start, n)?;
                if !ok {
                    outside.push(name.clone());
                }
                let vanishes_from = (0..=n + 1)
                    .rev()
                    .take_while(|&i| i == n + 1 || prod.coeff(i).is_some_and(|c| *c == 0.into()))
                    .last()
                    .unwrap_or(n + 1);
                per_module.push(serde_json::json!({
                    "module": name,
                    "window": [start, n],
                    "poincare": series_payload(&TruncSeries::from_poly(&pm, n)),
                    "product": series_payload(&prod),
                    "window_vanishes": ok,
                    "vanishes_from": vanishes_from,
                }));
            }
            Err(_) => incomplete.push(name.clone()),
        }
    }
    rep.put("modules", per_module);
    if !outside.is_empty() {
        rep.note(format!(
            "H_R(-t) P_M(t) has nonzero coefficients in [3 + max generator degree, {n}] for {} of {} modules; \
             membership in Z[t] carries no degree bound, so this is not a refutation",
            outside.len(),
            modules.len()
        ));
    }
    if !incomplete.is_empty() {
        rep.withhold(format!(
            "incomplete Betti rows within J = {jcap}: {}",
            incomplete.join(", ")
        ));
    }
    Ok(rep)
}

/// For `R = S/(f_1..f_c)` artinian with the `f_i` a regular sequence
/// (certified by `H_R = Π(1 - t^{d_i}) / (1 - t)^e`): `λ(R) ≥ 2^c`; minimal
/// multiplicity `λ(R) = 2^c`, Koszulness and `H_R = (1 + t)^e` agree; the
/// coefficients of `(1 - t²)^c P^R_k` vanish in `[e + 1, N]`, and those of
/// `(1 - t)^c P^R_k` in `[1, N]` under minimal multiplicity.
pub fn verify_complete_intersection(r: &GradedAlgebra, n: usize, jcap: usize) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("complete-intersection", inputs(r, vec![], n, None));
    rep.inputs.caps = [n, jcap];
    if !r.is_artinian() {
        return Ok(rep.inapplicable("the algebra is not artinian within its cap"));
    }
    let e = r.nvars();
    let degrees: Vec<usize> = r.generators().iter().filter_map(|g| g.homogeneous_degree()).collect();
    let c = degrees.len();
    let h = r.hilbert_function();
    let top = h.len() - 1;
    let ci = complete_intersection_series(e, &degrees, top + 1);
    let regular = (0..=top + 1).all(|d| ci.coeff(d) == Some(&h.get(d).copied().unwrap_or(0).into()));
    rep.put("relation_degrees", &degrees);
    rep.put("hilbert", &h);
    if !regular {
        return Ok(rep.inapplicable("the relations are not certified as a regular sequence by the Hilbert function"));
    }
    let length = r.to_local()?.dim();
    let bound = 1usize << c;
    let minimal_multiplicity = length == bound;
    let binomial = IntPoly::binomial_power(1, 1, e as u32).to_i64_vec().expect("small");
    let h_binomial = h.iter().map(|&x| x as i64).collect::<Vec<_>>() == binomial;
    let verdict = is_koszul_to(r, n)?;
    rep.put("length", length);
    rep.put("minimal_multiplicity", minimal_multiplicity);
    rep.put("hilbert_is_binomial", h_binomial);
    rep.put("koszul", verdict);
    if length < bound {
        rep.refute(witness("length_bound", vec![c], bound, length));
    }
    if minimal_multiplicity != h_binomial {
        rep.refute(witness(
            "multiplicity_vs_hilbert",
            vec![],
            minimal_multiplicity,
            h_binomial,
        ));
    }
    match verdict {
        KoszulVerdict::OffDiagonal { i, j } if minimal_multiplicity => {
            rep.refute(witness("off_diagonal_betti", vec![i, j], "none", "nonzero"));
        }
        KoszulVerdict::CleanTo { n } if !minimal_multiplicity => {
            rep.refute(witness("no_off_diagonal_betti", vec![n], "off-diagonal entry", "clean"));
        }
        KoszulVerdict::CleanTo { .. } => rep.note("Koszul side is evidence only"),
        _ => {}
    }

    let bk = minimal_resolution(r, &residue_field(r), n, jcap)?;
    match bk.poincare_to(n) {
        Ok(pk) => {
            let pk = TruncSeries::from_poly(&pk, n);
            rep.put("poincare_k", series_payload(&pk));
            let mut sq = IntPoly::one();
            let mut lin = IntPoly::one();
            for _ in 0..c {
                sq = sq.mul(&IntPoly::from_i64(&[1, 0, -1]));
                lin = lin.mul(&IntPoly::from_i64(&[1, -1]));
            }
            let prod = pk.mul_poly(&sq);
            rep.put("product_one_minus_t2", series_payload(&prod));
            if !prod.window_polynomiality(e + 1, n)? {
                let i = (e + 1..=n)
                    .find(|&i| prod.coeff(i).is_some_and(|x| *x != 0.into()))
                    .unwrap_or(e + 1);
                rep.refute(witness(
                    "window_one_minus_t2",
                    vec![i],
                    0,
                    prod.coeff(i).map(|x| x.to_string()),
                ));
            }
            if minimal_multiplicity {
                let prod = pk.mul_poly(&lin);
                rep.put("product_one_minus_t", series_payload(&prod));
                if !prod.window_polynomiality(1, n)? {
                    let i = (1..=n)
                        .find(|&i| prod.coeff(i).is_some_and(|x| *x != 0.into()))
                        .unwrap_or(1);
                    rep.refute(witness(
                        "window_one_minus_t",
                        vec![i],
                        0,
                        prod.coeff(i).map(|x| x.to_string()),
                    ));
                }
            }
        }
        Err(_) => rep.withhold(format!("Betti rows of k are incomplete within J = {jcap}")),
    }
    Ok(rep)
}
