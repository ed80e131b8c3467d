use crate::error::Result;
use crate::quotient::LocalAlgebra;
use crate::series::IntPoly;
use crate::zerodiv::is_exact_pair;

use super::report::witness;
use super::{local_hash, ReportInputs, VerificationReport};

fn trimmed(mut h: Vec<usize>) -> Vec<usize> {
    while h.len() > 1 && h.last() == Some(&0) {
        h.pop();
    }
    h
}

/// For an exact pair `(a, b)` outside `m²` in a local ring with `m⁴ = 0`
/// and balanced Hilbert series:
/// the initial forms `a*, b*` are an exact pair in `gr R`;
/// `m^i ∩ aR = a m^{i-1}` for `i = 1..=4`;
/// `H_{gr R / a* gr R} = H_{R/aR} = H_R / (1 + t)`.
pub fn verify_initial_form_pair(l: &LocalAlgebra, a: &[u32], b: &[u32]) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new(
        "initial-forms",
        ReportInputs {
            algebra: local_hash(l),
            elements: vec![l.lift(a).to_text(), l.lift(b).to_text()],
            caps: [4, l.trunc()],
            seed: None,
        },
    );
    if l.loewy_length() > 4 {
        return Ok(rep.inapplicable("m^4 is not zero"));
    }
    let h = l.hilbert();
    if !h.is_balanced() {
        return Ok(rep.inapplicable(format!("Hilbert series is not balanced (H(-1) = {})", h.eval(-1))));
    }
    if l.is_unit(a) || l.is_unit(b) || a.iter().all(|&x| x == 0) || b.iter().all(|&x| x == 0) {
        return Ok(rep.inapplicable("a and b must be nonzero nonunits"));
    }
    let m2 = l.max_power(2);
    for (name, v) in [("a", a), ("b", b)] {
        if m2.contains(v) {
            return Ok(rep.inapplicable(format!("{name} lies in m^2")));
        }
    }
    if !is_exact_pair(l, a, b)? {
        return Ok(rep.inapplicable("(a, b) is not an exact pair"));
    }

    let gr = l.associated_graded()?;
    let (_, astar) = l.initial_form(&gr, a)?;
    let (_, bstar) = l.initial_form(&gr, b)?;
    let grl = gr.to_local()?;
    let av = grl.element(&astar)?;
    let bv = grl.element(&bstar)?;
    let star_pair = is_exact_pair(&grl, &av, &bv)?;
    rep.put("initial_forms", [astar.to_text(), bstar.to_text()]);
    rep.put("initial_forms_exact_pair", star_pair);
    if !star_pair {
        rep.refute(witness("initial_forms_exact_pair", vec![], true, false));
    }

    let ar = l.principal(a);
    let mut filtration = Vec::new();
    for i in 1..=4 {
        let lhs = l.max_power(i).intersection(&ar).lambda();
        let rhs = l.times(a, &l.max_power(i - 1)).lambda();
        filtration.push([lhs, rhs]);
        if lhs != rhs {
            rep.refute(witness("filtration_intersection", vec![i], rhs, lhs));
        }
    }
    rep.put("filtration_dims", &filtration);

    let h_gr_quot = trimmed(gr.quotient_by(&astar)?.hilbert_function());
    let h_quot = trimmed(l.quotient_by(a)?.hilbert_function());
    let h_div = h
        .div_exact(&IntPoly::from_i64(&[1, 1]))
        .and_then(|q| q.to_i64_vec())
        .map(|v| trimmed(v.into_iter().map(|x| x as usize).collect()));
    rep.put("hilbert_gr_quotient", &h_gr_quot);
    rep.put("hilbert_quotient", &h_quot);
    rep.put("hilbert_over_one_plus_t", &h_div);
    if h_gr_quot != h_quot {
        rep.refute(witness("hilbert_gr_quotient", vec![], &h_quot, &h_gr_quot));
    }
    if h_div.as_ref() != Some(&h_quot) {
        rep.refute(witness("hilbert_quotient", vec![], &h_div, &h_quot));
    }
    Ok(rep)
}
