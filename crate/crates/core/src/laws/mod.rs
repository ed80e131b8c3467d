//! Executable checks of Poincaré-series and Betti-number identities over
//! concrete algebras. Each verifier returns a [`VerificationReport`] that is
//! either verified up to the stated caps, refuted with a witness, or
//! inapplicable with a reason.

mod cover;
mod factorization;
mod gorenstein;
mod initial;
mod report;

use serde::Serialize;

use crate::error::Result;
use crate::polyspace::Poly;
use crate::quotient::{GradedAlgebra, LocalAlgebra};
use crate::series::{IntPoly, TruncSeries};
use crate::zerodiv::{find_conca_generator, find_exact_pair, is_exact_pair, Budget, ConcaSearch, ExactPairCertificate};

pub use cover::{construct_ci_cover, verify_golod, CiCover, CoverCase};
pub use factorization::{
    verify_graded_poincare_factorization, verify_periodic_resolution, verify_poincare_factorization,
};
pub use gorenstein::{verify_complete_intersection, verify_gorenstein_rationality, verify_koszul_socle_criterion};
pub use initial::verify_initial_form_pair;
pub use report::{text_hash, Outcome, ReportInputs, VerificationReport, Witness};

/// Results of the exact-pair and Conca searches on one algebra, shared by
/// the verifiers that need them.
#[derive(Clone, Debug, Serialize)]
pub struct Searched {
    pub pair: Option<ExactPairCertificate>,
    pub conca: Option<ConcaSearch>,
    pub seed: u64,
}

impl Searched {
    pub fn conca_found(&self) -> bool {
        self.conca.as_ref().is_some_and(|c| c.c.is_some())
    }
}

/// Runs [`find_exact_pair`] and, when a pair is found, [`find_conca_generator`].
pub fn search_pair_and_conca(l: &LocalAlgebra, budget: Budget, seed: u64) -> Result<Searched> {
    let pair = find_exact_pair(l, budget, seed)?.certificate;
    let conca = match &pair {
        Some(cert) => Some(find_conca_generator(l, cert, budget, seed)?),
        None => None,
    };
    Ok(Searched { pair, conca, seed })
}

/// Hash of the canonical presentation of a graded algebra.
pub fn graded_hash(r: &GradedAlgebra) -> String {
    text_hash(&r.presentation_text())
}

/// Hash of a local presentation (relations as given, then the truncation).
pub fn local_hash(l: &LocalAlgebra) -> String {
    let rels: Vec<String> = l.relations().iter().map(Poly::to_text).collect();
    text_hash(&format!(
        "p = {}\nvars = {}\nrelations = {}\ntrunc = {}\nlocal = true\n",
        l.field().p(),
        l.vars().join(", "),
        rels.join(", "),
        l.trunc()
    ))
}

/// Lowest-degree homogeneous part.
pub fn leading_part(f: &Poly) -> Poly {
    match f.order() {
        Some(d) => f.homogeneous_part(d),
        None => f.clone(),
    }
}

/// Homogeneous linear representatives `(a, b)` of a certified pair in a
/// graded algebra, if both members have degree-one leading parts that are
/// again an exact pair.
pub fn graded_pair(r: &GradedAlgebra, l: &LocalAlgebra, cert: &ExactPairCertificate) -> Result<Option<(Poly, Poly)>> {
    let a = leading_part(&r.normal_form(&l.lift(cert.a()).rename_to(r.vars())?)?);
    let b = leading_part(&r.normal_form(&l.lift(cert.b()).rename_to(r.vars())?)?);
    if a.homogeneous_degree() != Some(1) || b.homogeneous_degree() != Some(1) {
        return Ok(None);
    }
    let (av, bv) = (l.element(&a.rename_to(l.vars())?)?, l.element(&b.rename_to(l.vars())?)?);
    Ok(is_exact_pair(l, &av, &bv)?.then_some((a, b)))
}

/// Checks that `(a, b)` is a pair of linear forms forming an exact pair.
/// `Err` carries the reason for an inapplicable verdict.
pub(crate) fn linear_pair_gate(
    r: &GradedAlgebra,
    a: &Poly,
    b: &Poly,
) -> Result<std::result::Result<LocalAlgebra, String>> {
    if !r.is_artinian() {
        return Ok(Err("the algebra is not artinian within its cap".into()));
    }
    for (name, f) in [("a", a), ("b", b)] {
        let f = r.normal_form(f)?;
        match f.homogeneous_degree() {
            Some(1) => {}
            Some(d) if d >= 2 => return Ok(Err(format!("{name} lies in m^2"))),
            _ => return Ok(Err(format!("{name} is not a nonzero linear form"))),
        }
    }
    let l = r.to_local()?;
    let av = l.element(&a.rename_to(l.vars())?)?;
    let bv = l.element(&b.rename_to(l.vars())?)?;
    if !is_exact_pair(&l, &av, &bv)? {
        return Ok(Err("(a, b) is not an exact pair".into()));
    }
    Ok(Ok(l))
}

/// `Π (1 - t^{d_i}) / (1 - t)^e`, to order `n`.
pub fn complete_intersection_series(e: usize, degrees: &[usize], n: usize) -> TruncSeries {
    let mut num = IntPoly::one();
    for &d in degrees {
        let mut c = vec![0i64; d + 1];
        c[0] = 1;
        c[d] = -1;
        num = num.mul(&IntPoly::from_i64(&c));
    }
    TruncSeries::from_poly(&IntPoly::binomial_power(1, -1, e as u32), n)
        .invert()
        .expect("constant term is one")
        .mul_poly(&num)
}

/// `(1 + t)^e (1 - t^2)^{-c}`, the Poincaré series of `k` over a complete
/// intersection of `c` quadrics in `e` variables.
pub fn tate_series(e: usize, c: usize, n: usize) -> TruncSeries {
    let mut den = IntPoly::one();
    for _ in 0..c {
        den = den.mul(&IntPoly::from_i64(&[1, 0, -1]));
    }
    TruncSeries::from_poly(&den, n)
        .invert()
        .expect("constant term is one")
        .mul_poly(&IntPoly::binomial_power(1, 1, e as u32))
}

/// Coefficients as `i64` for payloads (exact; overflow is a bug at these
/// sizes).
pub(crate) fn series_payload(s: &TruncSeries) -> Vec<i64> {
    s.to_i64_vec().expect("series coefficients fit in i64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tate_series_for_three_variables() {
        let s = tate_series(3, 2, 6);
        assert_eq!(s.to_i64_vec().unwrap(), vec![1, 3, 5, 7, 9, 11, 13]);
        let s = tate_series(2, 1, 5);
        assert_eq!(s.to_i64_vec().unwrap(), vec![1, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn complete_intersection_hilbert() {
        let s = complete_intersection_series(2, &[2, 3], 5);
        assert_eq!(s.to_i64_vec().unwrap(), vec![1, 2, 2, 1, 0, 0]);
    }
}
