use std::sync::Arc;

use super::graded::{from_ideal_components, GradedAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField, Subspace};
use crate::polyspace::{Monomial, MonomialTable, Poly};
use crate::series::IntPoly;

/// An artinian local algebra `(k[x]/m^{N+1}) / I` with possibly
/// inhomogeneous relations.
///
/// Coordinates of the truncated ring `T = k[x]/m^{N+1}` list monomials by
/// degree ascending, graded-lex descending within a degree. Row reduction
/// therefore picks lowest-order terms as leading terms, and the surviving
/// (standard) monomials form a basis of `R` closed under taking divisors.
#[derive(Clone, Debug)]
pub struct LocalAlgebra {
    field: PrimeField,
    vars: Arc<[String]>,
    trunc: usize,
    table: Arc<MonomialTable>,
    offsets: Vec<usize>,
    relations: Vec<Poly>,
    basis: Vec<usize>,
    nf: Matrix,
    var_mult: Vec<Matrix>,
    filtration: Vec<Subspace>,
}

/// An ideal of a [`LocalAlgebra`], stored as a subspace of its coordinates.
#[derive(Clone, Debug)]
pub struct Ideal {
    space: Subspace,
}

impl Ideal {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Length, which for an ideal of an algebra over `k` is its dimension.
    pub fn lambda(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.space.contains(v)
    }

    pub fn is_zero(&self) -> bool {
        self.space.dim() == 0
    }

    pub fn same_as(&self, other: &Ideal) -> bool {
        self.space.same_as(&other.space)
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.space.is_subspace_of(&other.space)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        Ideal {
            space: self.space.sum(&other.space),
        }
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal {
            space: self.space.intersection(&other.space),
        }
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        self.space.basis()
    }
}

pub fn build_local(field: PrimeField, vars: Arc<[String]>, relations: &[Poly], trunc: usize) -> Result<LocalAlgebra> {
    if vars.is_empty() {
        return Err(Error::Hypothesis("at least one variable is required".into()));
    }
    if trunc == 0 {
        return Err(Error::Hypothesis("truncation order must be at least 1".into()));
    }
    let table = Arc::new(MonomialTable::new(vars.len(), trunc));
    let mut offsets = vec![0];
    for d in 0..=trunc {
        offsets.push(offsets[d] + table.dim(d));
    }
    let tdim = offsets[trunc + 1];
    let index = |m: &Monomial| offsets[m.degree()] + table.index_of(m);
    let mut span = Subspace::zero(field, tdim);
    for r in relations {
        if *r.field() != field || r.vars() != &vars {
            return Err(Error::VariableMismatch(format!(
                "relation `{r}` is not over [{}]",
                vars.join(", ")
            )));
        }
        if r.constant_term() != 0 {
            return Err(Error::UnitRelation(r.to_text()));
        }
        let r = r.truncate(trunc);
        let Some(ord) = r.order() else { continue };
        for du in 0..=(trunc - ord) {
            for u in table.basis(du) {
                let mut v = vec![0u32; tdim];
                for (m, c) in r.terms() {
                    let prod = m.mul(u);
                    if prod.degree() <= trunc {
                        v[index(&prod)] = c;
                    }
                }
                span.insert(&v);
            }
        }
    }
    let reduced = span.rref_matrix();
    let mut pivot_row = vec![None; tdim];
    for r in 0..reduced.rows() {
        let pc = reduced.row(r).iter().position(|&x| x != 0).expect("nonzero row");
        pivot_row[pc] = Some(r);
    }
    let basis: Vec<usize> = (0..tdim).filter(|&i| pivot_row[i].is_none()).collect();
    let mut pos = vec![usize::MAX; tdim];
    for (k, &i) in basis.iter().enumerate() {
        pos[i] = k;
    }
    let mut nf = Matrix::zeros(basis.len(), tdim);
    for j in 0..tdim {
        match pivot_row[j] {
            None => nf.set(pos[j], j, 1),
            Some(r) => {
                for (k, &s) in basis.iter().enumerate() {
                    let c = reduced.get(r, s);
                    if c != 0 {
                        nf.set(k, j, field.neg(c));
                    }
                }
            }
        }
    }
    let monomial_at = |i: usize| -> Monomial {
        let d = offsets.partition_point(|&o| o <= i) - 1;
        table.basis(d)[i - offsets[d]].clone()
    };
    let mut var_mult = Vec::with_capacity(vars.len());
    for v in 0..vars.len() {
        let mut m = Matrix::zeros(basis.len(), basis.len());
        for (k, &i) in basis.iter().enumerate() {
            let prod = monomial_at(i).mul_var(v);
            if prod.degree() <= trunc {
                let t = index(&prod);
                for r in 0..basis.len() {
                    m.set(r, k, nf.get(r, t));
                }
            }
        }
        var_mult.push(m);
    }
    let mut filtration = Vec::with_capacity(trunc + 2);
    for i in 0..=trunc + 1 {
        let cols = (offsets[i.min(trunc + 1)]..tdim).map(|t| nf.col(t));
        filtration.push(Subspace::spanned_by(field, basis.len(), cols));
    }
    Ok(LocalAlgebra {
        field,
        vars,
        trunc,
        table,
        offsets,
        relations: relations.to_vec(),
        basis,
        nf,
        var_mult,
        filtration,
    })
}

impl LocalAlgebra {
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// The truncation order `N`: the algebra lives in `k[x]/m^{N+1}`.
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    /// `λ(R) = dim_k R`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn t_dim(&self) -> usize {
        self.offsets[self.trunc + 1]
    }

    fn monomial_at(&self, i: usize) -> Monomial {
        let d = self.offsets.partition_point(|&o| o <= i) - 1;
        self.table.basis(d)[i - self.offsets[d]].clone()
    }

    fn t_index(&self, m: &Monomial) -> usize {
        self.offsets[m.degree()] + self.table.index_of(m)
    }

    /// Standard monomials, in coordinate order.
    pub fn basis_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|&i| self.monomial_at(i)).collect()
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim()]
    }

    pub fn one(&self) -> Vec<u32> {
        let mut v = self.zero();
        if !v.is_empty() {
            v[0] = 1;
        }
        v
    }

    /// Coordinates of the class of `f`.
    pub fn element(&self, f: &Poly) -> Result<Vec<u32>> {
        if f.vars() != &self.vars || f.field() != &self.field {
            return Err(Error::VariableMismatch(format!(
                "`{f}` is not over [{}]",
                self.vars.join(", ")
            )));
        }
        let mut t = vec![0u32; self.t_dim()];
        for (m, c) in f.terms() {
            if m.degree() <= self.trunc {
                t[self.t_index(m)] = c;
            }
        }
        Ok(self.nf.mul_vec(&self.field, &t))
    }

    pub fn var(&self, i: usize) -> Vec<u32> {
        self.nf.col(self.t_index(&Monomial::var(self.nvars(), i)))
    }

    /// The linear combination `Σ c_i x_i`.
    pub fn linear_form(&self, c: &[u32]) -> Vec<u32> {
        let mut v = self.zero();
        for (i, &ci) in c.iter().enumerate() {
            if ci != 0 {
                crate::exactla::axpy(&self.field, ci, &self.var(i), &mut v);
            }
        }
        v
    }

    /// Representative polynomial supported on standard monomials.
    pub fn lift(&self, v: &[u32]) -> Poly {
        Poly::from_terms(
            self.field,
            self.vars.clone(),
            v.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (self.monomial_at(self.basis[k]), c)),
        )
    }

    pub fn is_unit(&self, a: &[u32]) -> bool {
        // monomial 1 is always the first standard monomial and NF of any
        // monomial of positive degree has no constant coordinate
        a.first().is_some_and(|&c| c != 0)
    }

    /// Multiplication by the `v`-th variable as a matrix.
    pub fn var_matrix(&self, v: usize) -> &Matrix {
        &self.var_mult[v]
    }

    /// Matrix of multiplication by `a`.
    pub fn mult_matrix(&self, a: &[u32]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        let terms: Vec<(Monomial, u32)> = a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (self.monomial_at(self.basis[k]), c))
            .collect();
        for j in 0..n {
            let mj = self.monomial_at(self.basis[j]);
            for (t, c) in &terms {
                let prod = t.mul(&mj);
                if prod.degree() > self.trunc {
                    continue;
                }
                let ti = self.t_index(&prod);
                for r in 0..n {
                    let x = self.nf.get(r, ti);
                    if x != 0 {
                        m.set(r, j, self.field.add(m.get(r, j), self.field.mul(*c, x)));
                    }
                }
            }
        }
        m
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.mult_matrix(a).mul_vec(&self.field, b)
    }

    fn closed(&self, s: Subspace) -> Ideal {
        debug_assert!(s
            .basis()
            .iter()
            .all(|v| self.var_mult.iter().all(|x| s.contains(&x.mul_vec(&self.field, v)))));
        Ideal { space: s }
    }

    /// The ideal generated by the given elements.
    pub fn ideal_of(&self, gens: &[Vec<u32>]) -> Ideal {
        let mut s = Subspace::zero(self.field, self.dim());
        for g in gens {
            let m = self.mult_matrix(g);
            for j in 0..self.dim() {
                s.insert(&m.col(j));
            }
        }
        self.closed(s)
    }

    /// `aR`.
    pub fn principal(&self, a: &[u32]) -> Ideal {
        let m = self.mult_matrix(a);
        let s = Subspace::spanned_by(self.field, self.dim(), (0..self.dim()).map(|j| m.col(j)));
        self.closed(s)
    }

    /// `a·I`.
    pub fn times(&self, a: &[u32], i: &Ideal) -> Ideal {
        let m = self.mult_matrix(a);
        let s = Subspace::spanned_by(
            self.field,
            self.dim(),
            i.basis().iter().map(|v| m.mul_vec(&self.field, v)),
        );
        self.closed(s)
    }

    /// `m·I`.
    pub fn max_times(&self, i: &Ideal) -> Ideal {
        let mut s = Subspace::zero(self.field, self.dim());
        for x in &self.var_mult {
            for v in i.basis() {
                s.insert(&x.mul_vec(&self.field, v));
            }
        }
        self.closed(s)
    }

    /// `m^i`, zero for `i > N`.
    pub fn max_power(&self, i: usize) -> Ideal {
        let i = i.min(self.trunc + 1);
        Ideal {
            space: self.filtration[i].clone(),
        }
    }

    pub fn maximal_ideal(&self) -> Ideal {
        self.max_power(1)
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal {
            space: Subspace::zero(self.field, self.dim()),
        }
    }

    /// `μ(I) = dim_k I/mI`.
    pub fn mu(&self, i: &Ideal) -> usize {
        i.lambda() - self.max_times(i).lambda()
    }

    /// `(0 :_R a)`.
    pub fn annihilator(&self, a: &[u32]) -> Ideal {
        let k = self.mult_matrix(a).kernel_basis(&self.field);
        let s = Subspace::from_matrix_rows(self.field, &k);
        self.closed(s)
    }

    /// `(0 :_R m)`.
    pub fn socle(&self) -> Ideal {
        let n = self.dim();
        let mut stacked = Matrix::zeros(0, n);
        for x in &self.var_mult {
            stacked = stacked.vstack(x);
        }
        let k = stacked.kernel_basis(&self.field);
        Ideal {
            space: Subspace::from_matrix_rows(self.field, &k),
        }
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle().lambda() == 1
    }

    /// Largest `i` with `r ∈ m^i`; `None` for `r = 0`.
    pub fn valuation(&self, r: &[u32]) -> Option<usize> {
        if r.iter().all(|&c| c == 0) {
            return None;
        }
        (0..=self.trunc).rev().find(|&i| self.filtration[i].contains(r))
    }

    /// Dimensions of `m^i/m^{i+1}` for `i = 0..N`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        (0..=self.trunc)
            .map(|i| self.filtration[i].dim() - self.filtration[i + 1].dim())
            .collect()
    }

    pub fn hilbert(&self) -> IntPoly {
        IntPoly::from_usize(&self.hilbert_function())
    }

    /// Smallest `n` with `m^n = 0`.
    pub fn loewy_length(&self) -> usize {
        (0..=self.trunc + 1)
            .find(|&i| self.filtration[i].dim() == 0)
            .unwrap_or(self.trunc + 1)
    }

    /// `R/aR`, presented by adjoining a lift of `a` to the relations.
    pub fn quotient_by(&self, a: &[u32]) -> Result<LocalAlgebra> {
        if self.is_unit(a) {
            return Err(Error::Unit);
        }
        let mut rels = self.relations.clone();
        let l = self.lift(a);
        if !l.is_zero() {
            rels.push(l);
        }
        build_local(self.field, self.vars.clone(), &rels, self.trunc)
    }

    /// `gr R = ⊕ m^i/m^{i+1}`, presented as `S/I*` with
    /// `I*_d = ker(S_d -> m^d/m^{d+1})`.
    pub fn associated_graded(&self) -> Result<GradedAlgebra> {
        let n = self.trunc;
        let mut comps = Vec::with_capacity(n + 2);
        for d in 0..=n {
            let mons = self.table.basis(d);
            let mut m = Matrix::zeros(self.dim(), mons.len());
            for (j, mono) in mons.iter().enumerate() {
                let col = self.filtration[d + 1].reduce(&self.nf.col(self.t_index(mono)));
                for (r, &x) in col.iter().enumerate() {
                    m.set(r, j, x);
                }
            }
            let k = m.kernel_basis(&self.field);
            comps.push(Subspace::from_matrix_rows(self.field, &k));
        }
        let top_dim = crate::polyspace::monomial_basis(self.nvars(), n + 1).len();
        comps.push(Subspace::full(self.field, top_dim));
        let gr = from_ideal_components(self.field, self.vars.clone(), comps)?;
        debug_assert_eq!(gr.hilbert_function(), {
            let mut h = self.hilbert_function();
            while h.last() == Some(&0) {
                h.pop();
            }
            h
        });
        Ok(gr)
    }

    /// Initial form of `r ≠ 0`: its valuation `v` and a degree-`v` form of
    /// `gr R` (in normal form) representing the class of `r` in
    /// `m^v/m^{v+1}`.
    pub fn initial_form(&self, gr: &GradedAlgebra, r: &[u32]) -> Result<(usize, Poly)> {
        let v = self.valuation(r).ok_or(Error::NoInitialForm)?;
        let mons = self.table.basis(v);
        let higher = self.filtration[v + 1].basis();
        let mut cols: Vec<Vec<u32>> = mons.iter().map(|m| self.nf.col(self.t_index(m))).collect();
        cols.extend(higher.iter().cloned());
        let a = Matrix::from_cols(self.dim(), &cols);
        let x = a
            .solve(&self.field, r)
            .ok_or_else(|| Error::Internal("element not in its filtration level".into()))?;
        let form = Poly::from_terms(
            self.field,
            self.vars.clone(),
            mons.iter().cloned().zip(x[..mons.len()].iter().copied()),
        );
        Ok((v, gr.normal_form(&form)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyspace::{parse_poly, var_list};

    fn local(p: u32, vars: &[&str], rels: &[&str], n: usize) -> LocalAlgebra {
        let f = PrimeField::new(p).unwrap();
        let v = var_list(vars);
        let rels: Vec<Poly> = rels.iter().map(|r| parse_poly(r, &v, f).unwrap()).collect();
        build_local(f, v, &rels, n).unwrap()
    }

    #[test]
    fn residue_field_from_linear_relation() {
        let l = local(101, &["x"], &["x"], 3);
        assert_eq!(l.dim(), 1);
        assert_eq!(l.hilbert_function(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn unit_relation_rejected() {
        let f = PrimeField::default();
        let v = var_list(&["x"]);
        let r = parse_poly("1 + x", &v, f).unwrap();
        assert!(matches!(build_local(f, v, &[r], 3), Err(Error::UnitRelation(_))));
    }

    #[test]
    fn filtration_is_multiplicative() {
        let l = local(5, &["x", "y"], &["x*y + y^3", "x^3 - y^3"], 3);
        let f = *l.field();
        for i in 0..=3 {
            for j in 0..=3 {
                let mi = l.max_power(i);
                let mj = l.max_power(j);
                let target = l.max_power(i + j);
                for a in mi.basis() {
                    let ma = l.mult_matrix(a);
                    for b in mj.basis() {
                        assert!(target.contains(&ma.mul_vec(&f, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn socle_of_square_zero() {
        let l = local(101, &["x", "y", "z"], &["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"], 3);
        assert_eq!(l.socle().lambda(), 3);
        assert!(l.socle().same_as(&l.maximal_ideal()));
        assert!(!l.is_gorenstein());
    }
}
