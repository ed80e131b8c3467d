use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};
use crate::polyspace::Poly;
use crate::quotient::{build_graded, GradedAlgebra};
use crate::resolve::{minimal_resolution, present_module, residue_field, BettiTable, ModulePresentation};
use crate::series::{IntPoly, TruncSeries};
use crate::zerodiv::{criterion_balanced, is_conca_generator, is_exact_pair, Provenance};

use super::report::witness;
use super::{complete_intersection_series, graded_hash, series_payload, tate_series, ReportInputs, VerificationReport};

/// Which rank configuration of `a, b, c` in `m/m²` the cover came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverCase {
    /// `b` is a multiple of `a`: `v = z1`.
    Proportional,
    /// `a, b, c` independent: `v = z3` with `z3 ↦ b`.
    Independent,
    /// `c` in the span of `a, b`: `c` is replaced by `b` and `v = z2`.
    Dependent,
}

/// A complete intersection `Q = S'/(uv, w)` mapping onto `R`, with
/// `S' = k[z1, ..., ze]`, `z1 ↦ a` and `z2 ↦ c`.
#[derive(Clone, Debug)]
pub struct CiCover {
    pub case: CoverCase,
    /// Images of `z1..ze` as linear forms in the original variables.
    pub images: Vec<Poly>,
    /// `R` presented over `z1..ze`.
    pub r: GradedAlgebra,
    pub q: GradedAlgebra,
    pub u: Poly,
    pub v: Poly,
    pub w: Poly,
    /// Linear form with `c² = a·y` in `R`.
    pub y: Poly,
    /// The Conca generator actually used (`b` in the dependent case).
    pub c: Poly,
}

impl CiCover {
    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "case": self.case,
            "images": self.images.iter().map(Poly::to_text).collect::<Vec<_>>(),
            "u": self.u.to_text(),
            "v": self.v.to_text(),
            "w": self.w.to_text(),
            "y": self.y.to_text(),
            "c": self.c.to_text(),
            "cap": self.q.cap(),
        })
    }
}

fn linear_coords(r: &GradedAlgebra, f: &Poly, name: &str) -> Result<Vec<u32>> {
    let f = r.normal_form(f)?;
    if f.homogeneous_degree() != Some(1) {
        return Err(Error::Hypothesis(format!("{name} must be a nonzero linear form")));
    }
    r.coords(&f, 1)
}

fn rank(r: &GradedAlgebra, vs: &[&[u32]]) -> usize {
    Subspace::spanned_by(*r.field(), r.nvars(), vs.iter().copied()).dim()
}

/// `d ∈ R_1` with `c² = a·d`.
fn solve_square(r: &GradedAlgebra, a: &Poly, c: &Poly) -> Result<Vec<u32>> {
    let ma = r.mult_matrix(a, 1)?;
    let rhs = r.coords(&c.mul(c), 2)?;
    ma.solve(r.field(), &rhs).ok_or(Error::NoHomogeneousSolution)
}

/// Builds the cover `Q = S'/(uv, w) → R` for an exact pair `(a, b)` of
/// linear forms and a linear Conca generator `c` modulo `aR`.
///
/// New coordinates send `z1 ↦ a` and `z2 ↦ c`, completed to a basis of
/// `R_1` by the original variables in order. With `c² = a·d` and `y` the
/// linear form of `d`, `u = z1` and `w = z2² - y z1`; `v` depends on the
/// rank case. `Q` is built up to degree `cap` and `uv, w` is certified
/// regular by comparing `H_Q` with `(1 - t²)² / (1 - t)^e`.
pub fn construct_ci_cover(r: &GradedAlgebra, a: &Poly, b: &Poly, c: &Poly, cap: usize) -> Result<CiCover> {
    let field = *r.field();
    let e = r.nvars();
    if !r.is_artinian() {
        return Err(Error::NotArtinian(r.cap()));
    }
    if e < 2 {
        return Err(Error::Hypothesis("at least two variables are required".into()));
    }
    let l = r.to_local()?;
    let av = linear_coords(r, a, "a")?;
    let bv = linear_coords(r, b, "b")?;
    let mut cv = linear_coords(r, c, "c")?;
    let la = l.element(&r.normal_form(a)?)?;
    let lb = l.element(&r.normal_form(b)?)?;
    criterion_balanced(&l, &la, &lb)?;
    if !is_exact_pair(&l, &la, &lb)? {
        return Err(Error::Hypothesis("(a, b) is not an exact pair".into()));
    }
    let cert = crate::zerodiv::certify(
        &l,
        &la,
        &lb,
        Provenance {
            pass: "given".into(),
            seed: 0,
            trial: 0,
        },
    )?
    .expect("pair was just checked");

    let case = if rank(r, &[&av, &bv]) == 1 {
        CoverCase::Proportional
    } else if rank(r, &[&av, &bv, &cv]) == 3 {
        CoverCase::Independent
    } else {
        CoverCase::Dependent
    };
    let mut c_used = r.normal_form(c)?;
    if case == CoverCase::Dependent {
        // b takes over the role of c; the degenerate subcase d ∈ bR would
        // force b² = 0, hence b ∈ (0:b) = aR, which is the proportional case
        cv = bv.clone();
        c_used = r.normal_form(b)?;
        let d = solve_square(r, a, &c_used)?;
        if rank(r, &[&bv, &d]) <= 1 {
            return Err(Error::Hypothesis(
                "c^2 = a*d with d in bR, which would require b in aR".into(),
            ));
        }
    }
    let lc = l.element(&c_used)?;
    if !is_conca_generator(&l, &cert, &lc)?.holds() {
        return Err(Error::Hypothesis(format!(
            "{} is not a Conca generator modulo aR",
            c_used.to_text()
        )));
    }
    let d = solve_square(r, a, &c_used)?;

    // basis of R_1: a, c (then b in the independent case), then variables
    let mut span = Subspace::zero(field, e);
    let mut cols: Vec<Vec<u32>> = Vec::with_capacity(e);
    let mut firsts = vec![av.clone(), cv.clone()];
    if case == CoverCase::Independent {
        firsts.push(bv.clone());
    }
    for v in firsts {
        if !span.insert(&v) {
            return Err(Error::Internal("cover coordinates are dependent".into()));
        }
        cols.push(v);
    }
    for i in 0..e {
        let mut unit = vec![0u32; e];
        unit[i] = 1;
        if span.insert(&unit) {
            cols.push(unit);
        }
    }
    let t = Matrix::from_cols(e, &cols);
    let zvars: Arc<[String]> = (1..=e).map(|i| format!("z{i}")).collect();
    let z = |i: usize| Poly::var(field, zvars.clone(), i);
    let linear = |coef: &[u32]| -> Poly {
        (0..e).fold(Poly::zero(field, zvars.clone()), |acc, i| acc.add(&z(i).scale(coef[i])))
    };
    // x_j = Σ_i s_i z_i with T s = e_j
    let mut x_images = Vec::with_capacity(e);
    for j in 0..e {
        let mut unit = vec![0u32; e];
        unit[j] = 1;
        let s = t
            .solve(&field, &unit)
            .ok_or_else(|| Error::Internal("coordinate change is singular".into()))?;
        x_images.push(linear(&s));
    }
    let images: Vec<Poly> = cols.iter().map(|col| r.lift(1, col)).collect();
    let rels: Vec<Poly> = r.generators().iter().map(|g| g.substitute(&x_images)).collect();
    let r_new = build_graded(field, zvars.clone(), &rels, r.cap())?;
    let y = r.lift(1, &d).substitute(&x_images);

    let u = z(0);
    let v = match case {
        CoverCase::Proportional => z(0),
        CoverCase::Dependent => z(1),
        CoverCase::Independent => z(2),
    };
    let w = z(1).mul(&z(1)).sub(&y.mul(&z(0)));
    let uv = u.mul(&v);
    if !r_new.is_zero(&uv)? || !r_new.is_zero(&w)? {
        return Err(Error::Internal("uv or w does not vanish in R".into()));
    }
    let q = build_graded(field, zvars.clone(), &[uv, w.clone()], cap)?;
    let expected = complete_intersection_series(e, &[2, 2], cap);
    for deg in 0..=cap {
        if expected.coeff(deg) != Some(&q.dim(deg).into()) {
            return Err(Error::NotRegular(format!(
                "dim Q_{deg} = {} but a complete intersection of two quadrics has {}",
                q.dim(deg),
                expected.coeff(deg).map_or("?".into(), |x| x.to_string())
            )));
        }
    }
    Ok(CiCover {
        case,
        images,
        r: r_new,
        q,
        u,
        v,
        w,
        y,
        c: c_used,
    })
}

fn cyclic_over(target: &GradedAlgebra, rels: &[Poly]) -> Result<ModulePresentation> {
    Ok(ModulePresentation::cyclic(
        rels.iter()
            .map(|g| g.rename_to(target.vars()))
            .collect::<Result<Vec<_>>>()?,
    ))
}

fn compare(what: &str, expected: &TruncSeries, found: &Option<TruncSeries>, rep: &mut VerificationReport) {
    if let Some(found) = found {
        if let Some(i) = expected.first_difference(found) {
            let show = |s: &TruncSeries| s.coeff(i).map(|c| c.to_string());
            rep.refute(witness(what, vec![i], show(expected), show(found)));
        }
    }
}

fn complete_series(b: &BettiTable, n: usize) -> Option<TruncSeries> {
    b.poincare_to(n).ok().map(|p| TruncSeries::from_poly(&p, n))
}

/// Checks that `Q → R` from [`construct_ci_cover`] is Golod to order `N`:
/// `P^R_k = P^Q_k / (1 - t(P^Q_R - 1))`. Also compares `P^Q_k` from a
/// direct resolution with `(1 + t)^e (1 - t²)^{-2}`, `P^{Q/uQ}_k` with
/// `(1 + t)^{e-1} (1 - t²)^{-1}`, and `P^{Q/uQ}_{R/aR}` with `P^Q_R`.
pub fn verify_golod(cover: &CiCover, n: usize, jcap: usize) -> Result<VerificationReport> {
    let r = &cover.r;
    let q = &cover.q;
    let e = r.nvars();
    let mut rep = VerificationReport::new(
        "golod",
        ReportInputs {
            algebra: graded_hash(r),
            elements: vec![cover.u.to_text(), cover.v.to_text(), cover.w.to_text()],
            caps: [n, jcap],
            seed: None,
        },
    );
    rep.put("cover", cover.summary());
    if jcap > q.cap() {
        return Ok(rep.inapplicable(format!("Q is only known up to degree {}", q.cap())));
    }
    let mut missing = Vec::new();
    let mut series = |name: &str, b: &BettiTable, rep: &mut VerificationReport| {
        let s = complete_series(b, n);
        match &s {
            Some(s) => rep.put(name, series_payload(s)),
            None => missing.push(name.to_string()),
        }
        s
    };

    let p_r_k = series(
        "poincare_r_k",
        &minimal_resolution(r, &residue_field(r), n, jcap)?,
        &mut rep,
    );
    let p_q_k = series(
        "poincare_q_k",
        &minimal_resolution(q, &residue_field(q), n, jcap)?,
        &mut rep,
    );
    let m_r = present_module(q, &cyclic_over(q, r.generators())?)?;
    let p_q_r = series("poincare_q_r", &minimal_resolution(q, &m_r, n, jcap)?, &mut rep);

    let qbar = q.quotient_by(&cover.u)?;
    let rbar = r.quotient_by(&cover.u)?;
    let p_qbar_k = series(
        "poincare_qbar_k",
        &minimal_resolution(&qbar, &residue_field(&qbar), n, jcap)?,
        &mut rep,
    );
    let m_rbar = present_module(&qbar, &cyclic_over(&qbar, rbar.generators())?)?;
    let p_qbar_rbar = series(
        "poincare_qbar_rbar",
        &minimal_resolution(&qbar, &m_rbar, n, jcap)?,
        &mut rep,
    );

    let tate = tate_series(e, 2, n);
    let tate_bar = tate_series(e - 1, 1, n);
    rep.put("tate_q_k", series_payload(&tate));
    rep.put("tate_qbar_k", series_payload(&tate_bar));
    compare("tate_q_k", &tate, &p_q_k, &mut rep);
    compare("tate_qbar_k", &tate_bar, &p_qbar_k, &mut rep);
    if let Some(pqr) = &p_q_r {
        compare("poincare_qbar_rbar", pqr, &p_qbar_rbar, &mut rep);
    }
    if let (Some(pqk), Some(pqr)) = (&p_q_k, &p_q_r) {
        // 1 - t (P^Q_R - 1)
        let one = TruncSeries::from_poly(&IntPoly::one(), n);
        let den = one.sub(&pqr.sub(&one).shift(1));
        let golod = pqk.mul(&den.invert()?);
        rep.put("golod_series", series_payload(&golod));
        compare("golod_formula", &golod, &p_r_k, &mut rep);
    }
    if !missing.is_empty() {
        rep.withhold(format!(
            "incomplete Betti rows within J = {jcap}: {}",
            missing.join(", ")
        ));
    }
    Ok(rep)
}
