//! Exact zero divisors, exact pairs, and Conca generators in artinian local
//! algebras. Elements are coordinate vectors of a [`LocalAlgebra`].

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{axpy, is_zero_vec};
use crate::quotient::{Ideal, LocalAlgebra};

/// Search effort: `a_trials` random pencils of linear forms, and
/// `b_candidates` random elements of an annihilator per candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub a_trials: usize,
    pub b_candidates: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            a_trials: 64,
            b_candidates: 16,
        }
    }
}

/// Points scanned on one pencil.
const PENCIL_POINTS: usize = 512;

fn check_element(r: &LocalAlgebra, a: &[u32], name: &str) -> Result<()> {
    if is_zero_vec(a) {
        return Err(Error::ZeroOrUnit(format!("{name} is zero")));
    }
    if r.is_unit(a) {
        return Err(Error::ZeroOrUnit(format!("{name} is a unit")));
    }
    Ok(())
}

/// `(0:a) = bR` and `(0:b) = aR`.
pub fn is_exact_pair(r: &LocalAlgebra, a: &[u32], b: &[u32]) -> Result<bool> {
    check_element(r, a, "a")?;
    check_element(r, b, "b")?;
    Ok(exact_pair_unchecked(r, a, b))
}

fn exact_pair_unchecked(r: &LocalAlgebra, a: &[u32], b: &[u32]) -> bool {
    r.annihilator(a).same_as(&r.principal(b)) && r.annihilator(b).same_as(&r.principal(a))
}

fn in_square(r: &LocalAlgebra, a: &[u32]) -> bool {
    r.max_power(2).contains(a)
}

/// The numerical test for exact pairs over rings with `m⁴ = 0` and balanced
/// Hilbert series: `ab = 0`, `a m² = m³ = b m²` and
/// `μ(am) = μ(m) - 1 = μ(bm)`.
pub fn criterion_balanced(r: &LocalAlgebra, a: &[u32], b: &[u32]) -> Result<bool> {
    check_element(r, a, "a")?;
    check_element(r, b, "b")?;
    if r.loewy_length() > 4 {
        return Err(Error::Hypothesis("m^4 is not zero".into()));
    }
    let h = r.hilbert().eval(-1);
    if h != 0.into() {
        return Err(Error::Unbalanced(i64::try_from(h).unwrap_or(i64::MAX)));
    }
    if in_square(r, a) {
        return Err(Error::InSquare("a".into()));
    }
    if in_square(r, b) {
        return Err(Error::InSquare("b".into()));
    }
    Ok(balanced_conditions(r, a, b))
}

fn balanced_conditions(r: &LocalAlgebra, a: &[u32], b: &[u32]) -> bool {
    if !is_zero_vec(&r.mul(a, b)) {
        return false;
    }
    let m = r.maximal_ideal();
    let m2 = r.max_power(2);
    let m3 = r.max_power(3);
    if !r.times(a, &m2).same_as(&m3) || !r.times(b, &m2).same_as(&m3) {
        return false;
    }
    let e = r.mu(&m);
    e >= 1 && r.mu(&r.times(a, &m)) == e - 1 && r.mu(&r.times(b, &m)) == e - 1
}

/// A generator of `I` when `I` is principal.
fn principal_generator(r: &LocalAlgebra, i: &Ideal) -> Option<Vec<u32>> {
    if r.mu(i) != 1 {
        return None;
    }
    let mi = r.max_times(i);
    i.basis().iter().find(|v| !mi.contains(v)).cloned()
}

/// A complementary divisor of `a`, if `a` is an exact zero divisor: the
/// generator of `(0:a)` when it is principal and `(0:b) = aR`.
pub fn complementary_divisor(r: &LocalAlgebra, a: &[u32]) -> Option<Vec<u32>> {
    if is_zero_vec(a) || r.is_unit(a) {
        return None;
    }
    let b = principal_generator(r, &r.annihilator(a))?;
    r.annihilator(&b).same_as(&r.principal(a)).then_some(b)
}

/// Three verdicts about `a` in a Gorenstein ring with `m⁴ = 0` and
/// `μ(m) ≥ 3`, which are equivalent there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GorensteinVerdict {
    pub principal_annihilator: bool,
    pub exact_zero_divisor: bool,
    /// `a ∉ m²` and some `b ∈ m ∖ m²` has `ab = 0` and
    /// `μ(am) = e - 1 = μ(bm)`.
    pub pair_found: bool,
    #[serde(skip)]
    pub partner: Option<Vec<u32>>,
    /// `H_R(t) = 1 + et + et² + t³`, checked when any verdict is positive.
    pub hilbert_shape: Option<bool>,
}

impl GorensteinVerdict {
    pub fn agree(&self) -> bool {
        self.principal_annihilator == self.exact_zero_divisor && self.exact_zero_divisor == self.pair_found
    }
}

/// Evaluates the three conditions independently. The search for `b` in the
/// third uses a basis of `(0:a)` and `budget.b_candidates` seeded random elements of `(0:a)`; when
/// `p^{λ(0:a)}` is at most 4096 every element is tried.
pub fn criterion_gorenstein(r: &LocalAlgebra, a: &[u32], budget: Budget, seed: u64) -> Result<GorensteinVerdict> {
    if is_zero_vec(a) {
        return Err(Error::ZeroOrUnit("a is zero".into()));
    }
    if r.is_unit(a) {
        return Err(Error::ZeroOrUnit("a is a unit".into()));
    }
    if !r.is_gorenstein() {
        return Err(Error::Hypothesis("the ring is not Gorenstein".into()));
    }
    if r.loewy_length() > 4 {
        return Err(Error::Hypothesis("m^4 is not zero".into()));
    }
    let m = r.maximal_ideal();
    let e = r.mu(&m);
    if e < 3 {
        return Err(Error::Hypothesis(format!("μ(m) = {e} is below 3")));
    }
    let ann = r.annihilator(a);
    let principal_annihilator = r.mu(&ann) == 1;
    let exact_zero_divisor = complementary_divisor(r, a).is_some();

    let mut partner = None;
    if !in_square(r, a) && r.mu(&r.times(a, &m)) == e - 1 {
        let good = |b: &[u32]| {
            !is_zero_vec(b) && !in_square(r, b) && is_zero_vec(&r.mul(a, b)) && r.mu(&r.times(b, &m)) == e - 1
        };
        partner = candidates_in(r, &ann, budget.b_candidates, seed)
            .into_iter()
            .find(|b| good(b));
    }
    let pair_found = partner.is_some();
    let hilbert_shape = (principal_annihilator || exact_zero_divisor || pair_found).then(|| {
        let h = r.hilbert_function();
        let h: Vec<usize> = h.into_iter().take_while(|&x| x > 0).collect();
        h == vec![1, e, e, 1]
    });
    Ok(GorensteinVerdict {
        principal_annihilator,
        exact_zero_divisor,
        pair_found,
        partner,
        hilbert_shape,
    })
}

/// Elements of `i` to try: all of them when few, otherwise a basis and
/// seeded random combinations.
fn candidates_in(r: &LocalAlgebra, i: &Ideal, random: usize, seed: u64) -> Vec<Vec<u32>> {
    let f = r.field();
    let basis = i.basis();
    let p = f.p() as u64;
    let total = (p as f64).powi(basis.len() as i32);
    if total <= 4096.0 {
        let mut out = Vec::with_capacity(total as usize);
        let mut coeffs = vec![0u32; basis.len()];
        loop {
            let mut v = r.zero();
            for (c, b) in coeffs.iter().zip(basis) {
                if *c != 0 {
                    axpy(f, *c, b, &mut v);
                }
            }
            if !is_zero_vec(&v) {
                out.push(v);
            }
            // odometer
            let mut k = 0;
            loop {
                if k == coeffs.len() {
                    return out;
                }
                coeffs[k] += 1;
                if coeffs[k] as u64 == p {
                    coeffs[k] = 0;
                    k += 1;
                } else {
                    break;
                }
            }
        }
    }
    let mut out: Vec<Vec<u32>> = basis.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let mut v = r.zero();
        for b in basis {
            let c = rng.random_range(0..f.p());
            if c != 0 {
                axpy(f, c, b, &mut v);
            }
        }
        out.push(v);
    }
    out
}

/// Where in the search a certificate was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    /// `coordinate`, `pencil`, `exhaustive` or `given`.
    pub pass: String,
    pub seed: u64,
    /// Number of candidates `a` examined, including the successful one.
    pub trial: usize,
}

/// A verified exact pair with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactPairCertificate {
    pub a: String,
    pub b: String,
    pub annihilator_a: Vec<String>,
    pub annihilator_b: Vec<String>,
    pub ideal_a: Vec<String>,
    pub ideal_b: Vec<String>,
    /// `[λ(0:a), λ(0:b), λ(aR), λ(bR), λ(R)]`.
    pub lengths: [usize; 5],
    pub provenance: Provenance,
    #[serde(skip)]
    a_vec: Vec<u32>,
    #[serde(skip)]
    b_vec: Vec<u32>,
}

impl ExactPairCertificate {
    pub fn a(&self) -> &[u32] {
        &self.a_vec
    }

    pub fn b(&self) -> &[u32] {
        &self.b_vec
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificates serialize")
    }
}

/// Builds a certificate for `(a, b)` if it is an exact pair.
pub fn certify(r: &LocalAlgebra, a: &[u32], b: &[u32], provenance: Provenance) -> Result<Option<ExactPairCertificate>> {
    if !is_exact_pair(r, a, b)? {
        return Ok(None);
    }
    let texts = |i: &Ideal| i.basis().iter().map(|v| r.lift(v).to_text()).collect::<Vec<_>>();
    let (ann_a, ann_b) = (r.annihilator(a), r.annihilator(b));
    let (ia, ib) = (r.principal(a), r.principal(b));
    Ok(Some(ExactPairCertificate {
        a: r.lift(a).to_text(),
        b: r.lift(b).to_text(),
        annihilator_a: texts(&ann_a),
        annihilator_b: texts(&ann_b),
        ideal_a: texts(&ia),
        ideal_b: texts(&ib),
        lengths: [ann_a.lambda(), ann_b.lambda(), ia.lambda(), ib.lambda(), r.dim()],
        provenance,
        a_vec: a.to_vec(),
        b_vec: b.to_vec(),
    }))
}

/// Outcome of [`find_exact_pair`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSearch {
    pub certificate: Option<ExactPairCertificate>,
    pub trials: usize,
    pub seed: u64,
}

/// Every point of the projective line through two linear forms, or the
/// first `PENCIL_POINTS` of them.
fn pencil(r: &LocalAlgebra, u: &[u32], v: &[u32]) -> Vec<Vec<u32>> {
    let f = r.field();
    let n = (f.p() as usize + 1).min(PENCIL_POINTS);
    let mut out = Vec::with_capacity(n);
    out.push(v.to_vec());
    for t in 0..(n as u32 - 1) {
        let mut w = u.to_vec();
        axpy(f, t, v, &mut w);
        out.push(w);
    }
    out
}

fn random_linear_coeffs(r: &LocalAlgebra, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let p = r.field().p();
    loop {
        let c: Vec<u32> = (0..r.nvars()).map(|_| rng.random_range(0..p)).collect();
        if c.iter().any(|&x| x != 0) {
            return c;
        }
    }
}

/// Searches linear forms for an exact zero divisor: first the variables,
/// then `budget.a_trials` seeded random pencils (lines of linear forms),
/// scanning up to 512 points of each. Principality of `(0:a)` is decided
/// exactly by `μ((0:a)) = 1`; the partner is its generator.
pub fn find_exact_pair(r: &LocalAlgebra, budget: Budget, seed: u64) -> Result<PairSearch> {
    let mut trials = 0;
    let attempt = |a: &[u32], pass: &str, trials: usize| -> Result<Option<ExactPairCertificate>> {
        if is_zero_vec(a) || r.is_unit(a) {
            return Ok(None);
        }
        match complementary_divisor(r, a) {
            Some(b) => certify(
                r,
                a,
                &b,
                Provenance {
                    pass: pass.into(),
                    seed,
                    trial: trials,
                },
            ),
            None => Ok(None),
        }
    };
    for i in 0..r.nvars() {
        trials += 1;
        if let Some(c) = attempt(&r.var(i), "coordinate", trials)? {
            return Ok(PairSearch {
                certificate: Some(c),
                trials,
                seed,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget.a_trials {
        let u = r.linear_form(&random_linear_coeffs(r, &mut rng));
        let v = r.linear_form(&random_linear_coeffs(r, &mut rng));
        for a in pencil(r, &u, &v) {
            trials += 1;
            if let Some(c) = attempt(&a, "pencil", trials)? {
                return Ok(PairSearch {
                    certificate: Some(c),
                    trials,
                    seed,
                });
            }
        }
    }
    Ok(PairSearch {
        certificate: None,
        trials,
        seed,
    })
}

/// All nonzero linear forms up to scalars (one representative per point of
/// projective space, leading coefficient 1).
pub fn projective_linear_forms(r: &LocalAlgebra) -> Vec<Vec<u32>> {
    let e = r.nvars();
    let p = r.field().p();
    let mut out = Vec::new();
    for lead in 0..e {
        let free = e - lead - 1;
        let count = (p as usize).pow(free as u32);
        for mut idx in 0..count {
            let mut c = vec![0u32; e];
            c[lead] = 1;
            for slot in c.iter_mut().skip(lead + 1) {
                *slot = (idx % p as usize) as u32;
                idx /= p as usize;
            }
            out.push(c);
        }
    }
    out
}

/// All nonzero linear forms.
pub fn all_linear_forms(r: &LocalAlgebra) -> Vec<Vec<u32>> {
    let e = r.nvars() as u32;
    let p = r.field().p() as usize;
    (1..p.pow(e))
        .map(|mut idx| {
            (0..e)
                .map(|_| {
                    let c = (idx % p) as u32;
                    idx /= p;
                    c
                })
                .collect()
        })
        .collect()
}

/// Both forms of the Conca condition for `c` modulo `aR`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConcaCheck {
    /// `m² + aR = cm + aR`, `c ∉ aR`, `c² ∈ aR`.
    pub plain: bool,
    /// `m² ⊆ cm + am`, `c ∉ aR`, `c² ∈ am`.
    pub strengthened: bool,
}

impl ConcaCheck {
    pub fn holds(&self) -> bool {
        self.plain
    }

    pub fn consistent(&self) -> bool {
        self.plain == self.strengthened
    }
}

/// Checks whether `c` is a Conca generator modulo `aR` for the first
/// element of a certified pair.
pub fn is_conca_generator(r: &LocalAlgebra, cert: &ExactPairCertificate, c: &[u32]) -> Result<ConcaCheck> {
    if r.is_unit(c) {
        return Err(Error::ZeroOrUnit("c is a unit".into()));
    }
    let a = cert.a();
    let m = r.maximal_ideal();
    let m2 = r.max_power(2);
    let ar = r.principal(a);
    let am = r.times(a, &m);
    let cm = r.times(c, &m);
    let c2 = r.mul(c, c);
    let outside = !ar.contains(c);
    let plain = outside && m2.sum(&ar).same_as(&cm.sum(&ar)) && ar.contains(&c2);
    let strengthened = outside && m2.is_subset_of(&cm.sum(&am)) && am.contains(&c2);
    Ok(ConcaCheck { plain, strengthened })
}

/// Outcome of [`find_conca_generator`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConcaSearch {
    pub c: Option<String>,
    #[serde(skip)]
    pub c_vec: Option<Vec<u32>>,
    pub trials: usize,
}

/// Searches linear forms for a Conca generator modulo `aR`: variables
/// first, then seeded random pencils.
pub fn find_conca_generator(
    r: &LocalAlgebra,
    cert: &ExactPairCertificate,
    budget: Budget,
    seed: u64,
) -> Result<ConcaSearch> {
    let mut trials = 0;
    let found = |c: Vec<u32>, trials: usize| ConcaSearch {
        c: Some(r.lift(&c).to_text()),
        c_vec: Some(c),
        trials,
    };
    for i in 0..r.nvars() {
        trials += 1;
        let c = r.var(i);
        if is_conca_generator(r, cert, &c)?.holds() {
            return Ok(found(c, trials));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x63_6f6e_6361);
    for _ in 0..budget.a_trials {
        let u = r.linear_form(&random_linear_coeffs(r, &mut rng));
        let v = r.linear_form(&random_linear_coeffs(r, &mut rng));
        for c in pencil(r, &u, &v) {
            trials += 1;
            if !is_zero_vec(&c) && is_conca_generator(r, cert, &c)?.holds() {
                return Ok(found(c, trials));
            }
        }
    }
    Ok(ConcaSearch {
        c: None,
        c_vec: None,
        trials,
    })
}

/// Whether the members of a pair avoid `m²`, which is forced when
/// `μ(m³) + 2 ≤ e` (and `m⁴ = 0`, `e ≥ 3`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutsideSquareReport {
    pub applicable: bool,
    pub reason: Option<String>,
    pub a_outside: bool,
    pub b_outside: bool,
}

impl OutsideSquareReport {
    /// False only when the hypotheses hold and a member lies in `m²`.
    pub fn consistent(&self) -> bool {
        !self.applicable || (self.a_outside && self.b_outside)
    }
}

pub fn check_pair_outside_square(r: &LocalAlgebra, cert: &ExactPairCertificate) -> OutsideSquareReport {
    let e = r.mu(&r.maximal_ideal());
    let s = r.mu(&r.max_power(3));
    let reason = if r.loewy_length() > 4 {
        Some("m^4 is not zero".to_string())
    } else if e < 3 {
        Some(format!("μ(m) = {e} is below 3"))
    } else if s + 2 > e {
        Some(format!("μ(m^3) + 2 = {} exceeds μ(m) = {e}", s + 2))
    } else {
        None
    };
    OutsideSquareReport {
        applicable: reason.is_none(),
        reason,
        a_outside: !in_square(r, cert.a()),
        b_outside: !in_square(r, cert.b()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::polyspace::{parse_poly, var_list};
    use crate::quotient::build_local;

    fn local(p: u32, rels: &[&str], vars: &[&str], n: usize) -> LocalAlgebra {
        let f = PrimeField::new(p).unwrap();
        let v = var_list(vars);
        let rels: Vec<_> = rels.iter().map(|s| parse_poly(s, &v, f).unwrap()).collect();
        build_local(f, v, &rels, n).unwrap()
    }

    fn elem(r: &LocalAlgebra, s: &str) -> Vec<u32> {
        r.element(&parse_poly(s, r.vars(), *r.field()).unwrap()).unwrap()
    }

    #[test]
    fn basic_pair() {
        let r = local(101, &["x*y", "x^3 - y^3"], &["x", "y"], 3);
        let (x, y) = (elem(&r, "x"), elem(&r, "y"));
        assert!(is_exact_pair(&r, &x, &y).unwrap());
        assert!(is_exact_pair(&r, &y, &x).unwrap());
        assert!(criterion_balanced(&r, &x, &y).unwrap());
        assert!(!is_exact_pair(&r, &x, &x).unwrap());
    }

    #[test]
    fn zero_and_units_are_rejected() {
        let r = local(101, &["x*y", "x^3 - y^3"], &["x", "y"], 3);
        let x = elem(&r, "x");
        assert!(matches!(is_exact_pair(&r, &r.zero(), &x), Err(Error::ZeroOrUnit(_))));
        assert!(matches!(is_exact_pair(&r, &x, &r.one()), Err(Error::ZeroOrUnit(_))));
    }

    #[test]
    fn balanced_preconditions() {
        let r = local(101, &["x^2", "x*y", "y^2"], &["x", "y"], 3);
        let x = elem(&r, "x");
        assert!(matches!(criterion_balanced(&r, &x, &x), Err(Error::Unbalanced(-1))));
        let r = local(101, &["x*y", "x^3 - y^3"], &["x", "y"], 3);
        let (x, y2) = (elem(&r, "x"), elem(&r, "y^2"));
        assert!(matches!(criterion_balanced(&r, &x, &y2), Err(Error::InSquare(_))));
        let r = local(101, &["x^5"], &["x"], 5);
        let x = elem(&r, "x");
        assert!(matches!(criterion_balanced(&r, &x, &x), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn coordinate_pass_finds_pair() {
        let r = local(101, &["x*y", "x^3 - y^3"], &["x", "y"], 3);
        let s = find_exact_pair(&r, Budget::default(), 1).unwrap();
        let c = s.certificate.unwrap();
        assert_eq!((c.a.as_str(), c.b.as_str()), ("x", "y"));
        assert_eq!(c.provenance.pass, "coordinate");
        assert_eq!(c.lengths[2] + c.lengths[3], c.lengths[4]);
    }

    #[test]
    fn fermat_cubic_has_no_linear_exact_zero_divisor() {
        let r = local(3, &["x*y", "x*z", "y*z", "x^3 - y^3", "x^3 - z^3"], &["x", "y", "z"], 3);
        for c in all_linear_forms(&r) {
            let a = r.linear_form(&c);
            assert!(complementary_divisor(&r, &a).is_none());
            let v = criterion_gorenstein(&r, &a, Budget::default(), 0).unwrap();
            assert!(v.agree());
        }
        assert!(find_exact_pair(
            &r,
            Budget {
                a_trials: 4,
                b_candidates: 4
            },
            5
        )
        .unwrap()
        .certificate
        .is_none());
    }

    #[test]
    fn socle_element_is_not_exact() {
        let r = local(
            101,
            &["x*y", "x*z", "y*z", "x^3 - y^3", "x^3 - z^3"],
            &["x", "y", "z"],
            3,
        );
        let v = criterion_gorenstein(&r, &elem(&r, "x^3"), Budget::default(), 0).unwrap();
        assert!(!v.principal_annihilator && !v.exact_zero_divisor && !v.pair_found);
    }

    #[test]
    fn projective_enumeration_counts() {
        let r = local(3, &["x^2", "y^2", "z^2"], &["x", "y", "z"], 3);
        assert_eq!(projective_linear_forms(&r).len(), 13);
        assert_eq!(all_linear_forms(&r).len(), 26);
    }

    #[test]
    fn conca_checks_in_complete_intersection() {
        // k[x,y,z]/(x^2, y^2, z^2): (x, x) is a pair and y is a Conca
        // generator modulo xR
        let r = local(101, &["x^2", "y^2", "z^2"], &["x", "y", "z"], 3);
        let x = elem(&r, "x");
        let cert = certify(
            &r,
            &x,
            &x,
            Provenance {
                pass: "given".into(),
                seed: 0,
                trial: 0,
            },
        )
        .unwrap()
        .unwrap();
        let y = elem(&r, "y");
        let check = is_conca_generator(&r, &cert, &y).unwrap();
        assert!(check.plain && check.consistent());
        assert!(!is_conca_generator(&r, &cert, &x).unwrap().plain);
        let rep = check_pair_outside_square(&r, &cert);
        assert!(rep.consistent());
    }
}
