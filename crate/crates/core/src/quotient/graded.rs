use std::sync::Arc;

use super::local::{build_local, LocalAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField, Subspace};
use crate::polyspace::{coords, Monomial, MonomialTable, Poly};
use crate::series::IntPoly;

/// A standard graded algebra `R = S/I`, stored degree by degree up to a cap.
///
/// `R_d` has the basis of standard monomials: the monomials of `S_d` that
/// are not leading monomials of elements of `I_d`. Because leading
/// monomials of an ideal are closed under multiplication, every divisor of
/// a standard monomial is standard.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    field: PrimeField,
    vars: Arc<[String]>,
    cap: usize,
    table: Arc<MonomialTable>,
    generators: Vec<Poly>,
    ideal: Vec<Subspace>,
    basis: Vec<Vec<usize>>,
    position: Vec<Vec<Option<usize>>>,
    nf: Vec<Matrix>,
    actions: Vec<Vec<Matrix>>,
    factors: Vec<Vec<(usize, usize)>>,
    top: Option<usize>,
}

fn times_var(table: &MonomialTable, d: usize, v: &[u32], var: usize, out: &mut [u32]) {
    for (i, &c) in v.iter().enumerate() {
        if c != 0 {
            let m = table.basis(d)[i].mul_var(var);
            out[table.index_of(&m)] = c;
        }
    }
}

/// `S_1 * I_{d-1}` as a subspace of `S_d`.
fn lift_component(table: &MonomialTable, field: PrimeField, prev: &Subspace, d: usize) -> Subspace {
    let n = table.dim(d);
    if prev.is_full() {
        return Subspace::full(field, n);
    }
    let mut s = Subspace::zero(field, n);
    let mut buf = vec![0u32; n];
    for v in prev.basis() {
        for var in 0..table.nvars() {
            buf.iter_mut().for_each(|x| *x = 0);
            times_var(table, d - 1, v, var, &mut buf);
            s.insert(&buf);
            if s.is_full() {
                return s;
            }
        }
    }
    s
}

fn poly_from_coords(field: PrimeField, vars: &Arc<[String]>, table: &MonomialTable, d: usize, v: &[u32]) -> Poly {
    Poly::from_terms(
        field,
        vars.clone(),
        v.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (table.basis(d)[i].clone(), c)),
    )
}

fn check_vars(field: PrimeField, vars: &Arc<[String]>) -> Result<()> {
    if vars.is_empty() {
        return Err(Error::Hypothesis("at least one variable is required".into()));
    }
    for (i, v) in vars.iter().enumerate() {
        if !crate::polyspace::is_identifier(v) {
            return Err(Error::Hypothesis(format!("`{v}` is not a valid variable name")));
        }
        if vars[..i].contains(v) {
            return Err(Error::Hypothesis(format!("variable `{v}` is declared twice")));
        }
    }
    let _ = field;
    Ok(())
}

/// Builds `S/I` for homogeneous relations of degree at least 2, up to degree
/// `cap`.
pub fn build_graded(field: PrimeField, vars: Arc<[String]>, relations: &[Poly], cap: usize) -> Result<GradedAlgebra> {
    check_vars(field, &vars)?;
    let mut by_degree: Vec<Vec<&Poly>> = vec![Vec::new(); cap + 1];
    for r in relations {
        if *r.field() != field || r.vars() != &vars {
            return Err(Error::VariableMismatch(format!(
                "relation `{r}` is not over [{}]",
                vars.join(", ")
            )));
        }
        if r.is_zero() {
            continue;
        }
        if r.constant_term() != 0 {
            return Err(Error::UnitRelation(r.to_text()));
        }
        let Some(d) = r.homogeneous_degree() else {
            return Err(Error::Inhomogeneous(r.to_text()));
        };
        if d == 1 {
            return Err(Error::LinearRelation(r.to_text()));
        }
        if d > cap {
            return Err(Error::CapTooSmall { cap, needed: d });
        }
        by_degree[d].push(r);
    }
    let table = Arc::new(MonomialTable::new(vars.len(), cap));
    let mut ideal = Vec::with_capacity(cap + 1);
    let mut generators = Vec::new();
    for d in 0..=cap {
        let mut comp = if d == 0 {
            Subspace::zero(field, 1)
        } else {
            lift_component(&table, field, &ideal[d - 1], d)
        };
        for r in &by_degree[d] {
            if comp.insert(&coords(r, d, &table)) {
                generators.push((*r).clone());
            }
        }
        ideal.push(comp);
    }
    Ok(assemble(field, vars, table, ideal, generators))
}

/// Builds `S/I` from the graded pieces `I_0..I_cap` of an ideal, verifying
/// `S_1 I_d ⊆ I_{d+1}` and extracting minimal generators.
pub fn from_ideal_components(
    field: PrimeField,
    vars: Arc<[String]>,
    components: Vec<Subspace>,
) -> Result<GradedAlgebra> {
    check_vars(field, &vars)?;
    if components.is_empty() {
        return Err(Error::Hypothesis("no ideal components given".into()));
    }
    let cap = components.len() - 1;
    let table = Arc::new(MonomialTable::new(vars.len(), cap));
    for (d, c) in components.iter().enumerate() {
        if c.ambient() != table.dim(d) {
            return Err(Error::Internal(format!(
                "component {d} has the wrong ambient dimension"
            )));
        }
    }
    if components[0].dim() > 0 {
        return Err(Error::UnitRelation("1".into()));
    }
    if cap >= 1 && components[1].dim() > 0 {
        let p = poly_from_coords(field, &vars, &table, 1, &components[1].basis()[0]);
        return Err(Error::LinearRelation(p.to_text()));
    }
    let mut generators = Vec::new();
    for d in 1..=cap {
        let mut lower = lift_component(&table, field, &components[d - 1], d);
        if !lower.is_subspace_of(&components[d]) {
            return Err(Error::Internal(format!(
                "ideal components are not closed under multiplication in degree {d}"
            )));
        }
        for v in components[d].basis() {
            if lower.insert(v) {
                generators.push(poly_from_coords(field, &vars, &table, d, v));
            }
        }
    }
    Ok(assemble(field, vars, table, components, generators))
}

fn assemble(
    field: PrimeField,
    vars: Arc<[String]>,
    table: Arc<MonomialTable>,
    ideal: Vec<Subspace>,
    generators: Vec<Poly>,
) -> GradedAlgebra {
    let cap = ideal.len() - 1;
    let e = vars.len();
    let mut basis = Vec::with_capacity(cap + 1);
    let mut position = Vec::with_capacity(cap + 1);
    let mut nf = Vec::with_capacity(cap + 1);
    for (d, comp) in ideal.iter().enumerate() {
        let n = table.dim(d);
        let reduced = comp.rref_matrix();
        let mut is_pivot = vec![None; n];
        for r in 0..reduced.rows() {
            let pc = reduced
                .row(r)
                .iter()
                .position(|&x| x != 0)
                .expect("rref row is nonzero");
            is_pivot[pc] = Some(r);
        }
        let std: Vec<usize> = (0..n).filter(|&i| is_pivot[i].is_none()).collect();
        let mut pos = vec![None; n];
        for (k, &i) in std.iter().enumerate() {
            pos[i] = Some(k);
        }
        let mut m = Matrix::zeros(std.len(), n);
        for j in 0..n {
            match is_pivot[j] {
                None => m.set(pos[j].unwrap(), j, 1),
                Some(r) => {
                    for (k, &s) in std.iter().enumerate() {
                        let c = reduced.get(r, s);
                        if c != 0 {
                            m.set(k, j, field.neg(c));
                        }
                    }
                }
            }
        }
        basis.push(std);
        position.push(pos);
        nf.push(m);
    }
    let mut actions = vec![Vec::with_capacity(cap); e];
    for d in 0..cap {
        for (v, acts) in actions.iter_mut().enumerate() {
            let mut a = Matrix::zeros(basis[d + 1].len(), basis[d].len());
            for (k, &i) in basis[d].iter().enumerate() {
                let target = table.index_of(&table.basis(d)[i].mul_var(v));
                for r in 0..a.rows() {
                    a.set(r, k, nf[d + 1].get(r, target));
                }
            }
            acts.push(a);
        }
    }
    let mut factors = vec![Vec::new()];
    for d in 1..=cap {
        let f = basis[d]
            .iter()
            .map(|&i| {
                let m = &table.basis(d)[i];
                let v = m.first_var().expect("positive degree monomial");
                let mut exps = m.exponents().to_vec();
                exps[v] -= 1;
                let prev = table.index_of(&Monomial::from_exponents(exps));
                let k = position[d - 1][prev].expect("standard monomials are divisor closed");
                (v, k)
            })
            .collect();
        factors.push(f);
    }
    let top = basis.iter().position(Vec::is_empty).map(|d| d.saturating_sub(1));
    GradedAlgebra {
        field,
        vars,
        cap,
        table,
        generators,
        ideal,
        basis,
        position,
        nf,
        actions,
        factors,
        top,
    }
}

impl GradedAlgebra {
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    /// Number of algebra generators (equal to `μ(m)`; no linear relations).
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn monomials(&self) -> &MonomialTable {
        &self.table
    }

    /// Minimal homogeneous generators of the defining ideal.
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn ideal_component(&self, d: usize) -> &Subspace {
        &self.ideal[d]
    }

    /// Top nonzero degree, when some `R_d` vanishes within the cap.
    pub fn top_degree(&self) -> Option<usize> {
        self.top
    }

    pub fn is_artinian(&self) -> bool {
        self.top.is_some()
    }

    /// Whether `R_d` is known: within the cap, or anywhere once artinian.
    pub fn knows_degree(&self, d: usize) -> bool {
        d <= self.cap || self.top.is_some()
    }

    /// `dim R_d`; zero above the top degree of an artinian algebra.
    pub fn dim(&self, d: usize) -> usize {
        if d <= self.cap {
            self.basis[d].len()
        } else {
            assert!(self.top.is_some(), "degree {d} is beyond the cap {}", self.cap);
            0
        }
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        let end = self.top.unwrap_or(self.cap);
        (0..=end).map(|d| self.dim(d)).collect()
    }

    /// Hilbert series; for a non-artinian algebra this is the truncation at
    /// the cap and only a lower bound for the full series.
    pub fn hilbert(&self) -> IntPoly {
        IntPoly::from_usize(&self.hilbert_function())
    }

    /// Standard monomials of `R_d`.
    pub fn basis_monomials(&self, d: usize) -> Vec<Monomial> {
        if d > self.cap {
            return Vec::new();
        }
        self.basis[d].iter().map(|&i| self.table.basis(d)[i].clone()).collect()
    }

    /// Normal-form matrix `S_d -> R_d`.
    pub fn normal_form_matrix(&self, d: usize) -> &Matrix {
        &self.nf[d]
    }

    /// Multiplication by the `v`-th variable, `R_d -> R_{d+1}`.
    pub fn action(&self, v: usize, d: usize) -> Matrix {
        if d < self.cap {
            self.actions[v][d].clone()
        } else {
            Matrix::zeros(self.dim(d + 1), self.dim(d))
        }
    }

    pub(crate) fn action_ref(&self, v: usize, d: usize) -> Option<&Matrix> {
        self.actions.get(v).and_then(|a| a.get(d))
    }

    /// `(v, k)` with standard monomial `i` of degree `d` equal to
    /// `x_v` times standard monomial `k` of degree `d - 1`.
    pub(crate) fn factor(&self, d: usize, i: usize) -> (usize, usize) {
        self.factors[d][i]
    }

    /// Position in `R_d` of the monomial with index `s` in `S_d`, if standard.
    pub fn standard_position(&self, d: usize, s: usize) -> Option<usize> {
        self.position[d][s]
    }

    /// Coordinates in `R_d` of the degree-`d` part of `f`.
    pub fn coords(&self, f: &Poly, d: usize) -> Result<Vec<u32>> {
        if f.vars() != &self.vars || f.field() != &self.field {
            return Err(Error::VariableMismatch(format!(
                "`{f}` is not over [{}]",
                self.vars.join(", ")
            )));
        }
        if d > self.cap {
            if self.top.is_some() {
                return Ok(Vec::new());
            }
            return Err(Error::BeyondCap {
                cap: self.cap,
                needed: d,
            });
        }
        Ok(self.nf[d].mul_vec(&self.field, &coords(f, d, &self.table)))
    }

    /// Homogeneous element from coordinates in `R_d`.
    pub fn lift(&self, d: usize, v: &[u32]) -> Poly {
        Poly::from_terms(
            self.field,
            self.vars.clone(),
            v.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (self.table.basis(d)[self.basis[d][k]].clone(), c)),
        )
    }

    /// Normal form of `f`: the representative supported on standard
    /// monomials.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        let mut out = Poly::zero(self.field, self.vars.clone());
        let maxd = f.degree().unwrap_or(0);
        for d in 0..=maxd {
            if d > self.cap && self.top.is_some() {
                break;
            }
            let c = self.coords(f, d)?;
            out = out.add(&self.lift(d, &c));
        }
        Ok(out)
    }

    pub fn is_zero(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Matrix of multiplication by the homogeneous `a` from `R_d` to
    /// `R_{d + deg a}`.
    pub fn mult_matrix(&self, a: &Poly, d: usize) -> Result<Matrix> {
        let Some(d0) = a.homogeneous_degree() else {
            if a.is_zero() {
                return Ok(Matrix::zeros(self.dim(d), self.dim(d)));
            }
            return Err(Error::NotHomogeneous);
        };
        let target = d + d0;
        if d > self.cap && self.top.is_some() {
            return Ok(Matrix::zeros(0, 0));
        }
        if target > self.cap {
            if self.top.is_some() {
                return Ok(Matrix::zeros(0, self.dim(d)));
            }
            return Err(Error::BeyondCap {
                cap: self.cap,
                needed: target,
            });
        }
        let mut m = Matrix::zeros(self.dim(target), self.dim(d));
        for (k, &i) in self.basis[d].iter().enumerate() {
            let mono = &self.table.basis(d)[i];
            for (t, c) in a.terms() {
                let s = self.table.index_of(&t.mul(mono));
                for r in 0..m.rows() {
                    let x = self.nf[target].get(r, s);
                    if x != 0 {
                        m.set(r, k, self.field.add(m.get(r, k), self.field.mul(c, x)));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Whether every minimal generator of the ideal is a quadric.
    pub fn is_quadratic(&self) -> bool {
        self.generators.iter().all(|g| g.homogeneous_degree() == Some(2))
    }

    /// The same algebra viewed as a local ring (requires artinian).
    pub fn to_local(&self) -> Result<LocalAlgebra> {
        let top = self.top.ok_or(Error::NotArtinian(self.cap))?;
        build_local(self.field, self.vars.clone(), &self.generators, top.max(1))
    }

    /// The same algebra with a different degree cap.
    pub fn with_cap(&self, cap: usize) -> Result<GradedAlgebra> {
        build_graded(self.field, self.vars.clone(), &self.generators, cap)
    }

    /// `R/aR` for homogeneous `a`. A linear `a` is eliminated by solving for
    /// its first variable with nonzero coefficient, so the result is again
    /// presented with `μ(m)` generators.
    pub fn quotient_by(&self, a: &Poly) -> Result<GradedAlgebra> {
        let a = self.normal_form(a)?;
        if a.is_zero() {
            return Ok(self.clone());
        }
        if a.constant_term() != 0 {
            return Err(Error::Unit);
        }
        let d = a.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if d >= 2 {
            let mut rels = self.generators.clone();
            rels.push(a);
            return build_graded(self.field, self.vars.clone(), &rels, self.cap);
        }
        let e = self.nvars();
        let lin = coords(&a, 1, &self.table);
        let k = lin.iter().position(|&c| c != 0).expect("nonzero linear form");
        let inv = self.field.inv(lin[k]);
        let new_vars: Arc<[String]> = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, v)| v.clone())
            .collect();
        if new_vars.is_empty() {
            return Err(Error::Hypothesis(
                "quotient by the only variable leaves the field itself".into(),
            ));
        }
        let mut images = Vec::with_capacity(e);
        for i in 0..e {
            if i == k {
                let mut img = Poly::zero(self.field, new_vars.clone());
                for (j, &c) in lin.iter().enumerate() {
                    if j != k && c != 0 {
                        let jj = if j < k { j } else { j - 1 };
                        let coef = self.field.neg(self.field.mul(c, inv));
                        img = img.add(&Poly::var(self.field, new_vars.clone(), jj).scale(coef));
                    }
                }
                images.push(img);
            } else {
                let ii = if i < k { i } else { i - 1 };
                images.push(Poly::var(self.field, new_vars.clone(), ii));
            }
        }
        let rels: Vec<Poly> = self.generators.iter().map(|g| g.substitute(&images)).collect();
        build_graded(self.field, new_vars, &rels, self.cap)
    }

    /// Canonical text of the presentation; identical algebras give identical
    /// text.
    pub fn presentation_text(&self) -> String {
        let mut s = format!("p = {}\nvars = {}\n", self.field.p(), self.vars.join(", "));
        let mut rels = Vec::new();
        for d in 0..=self.cap {
            let reduced = self.ideal[d].rref_matrix();
            let lower = if d == 0 {
                Subspace::zero(self.field, 1)
            } else {
                lift_component(&self.table, self.field, &self.ideal[d - 1], d)
            };
            let mut acc = lower.clone();
            for r in 0..reduced.rows() {
                if acc.insert(reduced.row(r)) {
                    rels.push(poly_from_coords(self.field, &self.vars, &self.table, d, reduced.row(r)).to_text());
                }
            }
            if self.top.is_some_and(|t| d > t) && lower.is_full() {
                break;
            }
        }
        s.push_str(&format!("relations = {}\ncap = {}\n", rels.join(", "), self.cap));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyspace::{parse_poly, var_list};

    fn alg(p: u32, vars: &[&str], rels: &[&str], cap: usize) -> GradedAlgebra {
        let f = PrimeField::new(p).unwrap();
        let v = var_list(vars);
        let rels: Vec<Poly> = rels.iter().map(|r| parse_poly(r, &v, f).unwrap()).collect();
        build_graded(f, v, &rels, cap).unwrap()
    }

    #[test]
    fn hilbert_of_small_quotients() {
        let r = alg(5, &["x", "y"], &["x*y", "x^3 - y^3"], 6);
        assert_eq!(r.hilbert_function(), vec![1, 2, 2, 1]);
        assert_eq!(r.top_degree(), Some(3));
        let r = alg(101, &["x"], &["x^2"], 4);
        assert_eq!(r.hilbert_function(), vec![1, 1]);
    }

    #[test]
    fn rejects_bad_relations() {
        let f = PrimeField::default();
        let v = var_list(&["x", "y"]);
        let p = |s: &str| parse_poly(s, &v, f).unwrap();
        assert!(matches!(
            build_graded(f, v.clone(), &[p("x*y + y^3")], 5),
            Err(Error::Inhomogeneous(_))
        ));
        assert!(matches!(
            build_graded(f, v.clone(), &[p("x - y")], 5),
            Err(Error::LinearRelation(_))
        ));
        assert!(matches!(
            build_graded(f, v.clone(), &[p("x^4")], 3),
            Err(Error::CapTooSmall { cap: 3, needed: 4 })
        ));
    }

    #[test]
    fn non_artinian_keeps_growing() {
        let r = alg(101, &["x", "y"], &["x*y"], 5);
        assert!(!r.is_artinian());
        assert_eq!(r.hilbert_function(), vec![1, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn quotient_by_linear_form_re_presents() {
        let r = alg(101, &["x", "y"], &["x*y", "x^3 - y^3"], 6);
        let x = parse_poly("x", r.vars(), *r.field()).unwrap();
        let q = r.quotient_by(&x).unwrap();
        assert_eq!(q.vars().as_ref(), &["y".to_string()]);
        assert_eq!(q.hilbert_function(), vec![1, 1, 1]);
    }

    #[test]
    fn actions_commute() {
        let r = alg(7, &["x", "y", "z"], &["x*y", "x*z", "y*z", "x^3 - y^3", "x^3 - z^3"], 5);
        let f = *r.field();
        for d in 0..3 {
            for a in 0..3 {
                for b in 0..3 {
                    let ab = r.action(a, d + 1).mul(&f, &r.action(b, d));
                    let ba = r.action(b, d + 1).mul(&f, &r.action(a, d));
                    assert_eq!(ab, ba);
                }
            }
        }
        assert_eq!(r.hilbert_function(), vec![1, 3, 3, 1]);
    }
}
