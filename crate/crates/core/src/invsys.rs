//! Macaulay inverse systems for cubic forms.
//!
//! `S` acts on forms by divided-power contraction: `x^α ∘ y^β = y^{β-α}`
//! when `α ≤ β` componentwise and zero otherwise. Unlike differentiation
//! this does not degenerate in characteristic 2 or 3.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField};
use crate::polyspace::{coords, monomial_basis, Monomial, MonomialTable, Poly};
use crate::quotient::{build_graded, GradedAlgebra};

/// A nonzero homogeneous cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicForm {
    form: Poly,
}

impl CubicForm {
    pub fn new(form: Poly) -> Result<Self> {
        if form.homogeneous_degree() != Some(3) {
            return Err(Error::Hypothesis(format!("`{form}` is not a nonzero cubic form")));
        }
        Ok(CubicForm { form })
    }

    pub fn poly(&self) -> &Poly {
        &self.form
    }

    pub fn nvars(&self) -> usize {
        self.form.nvars()
    }

    pub fn field(&self) -> &PrimeField {
        self.form.field()
    }
}

/// Conventional variable names: `x, y, z, w` up to four variables,
/// `x1..xe` beyond.
pub fn default_vars(e: usize) -> Arc<[String]> {
    const SMALL: [&str; 4] = ["x", "y", "z", "w"];
    if e <= 4 {
        SMALL[..e].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=e).map(|i| format!("x{i}")).collect()
    }
}

/// `m ∘ f`.
pub fn contract(m: &Monomial, f: &Poly) -> Poly {
    Poly::from_terms(
        *f.field(),
        f.vars().clone(),
        f.terms().filter_map(|(t, c)| t.div(m).map(|q| (q, c))),
    )
}

/// Matrix of `S_d -> (degree 3-d forms)`, `m ↦ m ∘ F`, in monomial bases.
pub fn catalecticant(f: &CubicForm, d: usize) -> Result<Matrix> {
    if d > 3 {
        return Err(Error::Hypothesis(format!("catalecticant degree {d} exceeds 3")));
    }
    let e = f.nvars();
    let table = MonomialTable::new(e, 3);
    let src = monomial_basis(e, d);
    let mut m = Matrix::zeros(table.dim(3 - d), src.len());
    for (j, mono) in src.iter().enumerate() {
        let c = coords(&contract(mono, &f.form), 3 - d, &table);
        for (r, x) in c.into_iter().enumerate() {
            m.set(r, j, x);
        }
    }
    Ok(m)
}

/// Whether some linear form annihilates `F` (rank of the first
/// catalecticant below `e`).
pub fn is_degenerate(f: &CubicForm) -> bool {
    catalecticant(f, 1)
        .map(|m| m.rank(f.field()) < f.nvars())
        .unwrap_or(true)
}

/// `S/Ann(F)` up to degree `cap` (at least 4).
///
/// `Ann(F)_d` is the kernel of the degree-`d` catalecticant for `d ≤ 3`
/// and all of `S_d` beyond. When `F` is degenerate the linear part of
/// `Ann(F)` is eliminated, so the result is presented on `rank cat_1`
/// variables.
pub fn apolar_algebra(f: &CubicForm, cap: usize) -> Result<GradedAlgebra> {
    if cap < 4 {
        return Err(Error::CapTooSmall { cap, needed: 4 });
    }
    let field = *f.field();
    let vars = f.form.vars().clone();
    let e = vars.len();
    let table = MonomialTable::new(e, 4);
    let kernel_polys = |d: usize| -> Result<Vec<Poly>> {
        let k = catalecticant(f, d)?.kernel_basis(&field);
        Ok((0..k.rows())
            .map(|r| {
                Poly::from_terms(
                    field,
                    vars.clone(),
                    table.basis(d).iter().cloned().zip(k.row(r).iter().copied()),
                )
            })
            .collect())
    };
    let linear = kernel_polys(1)?;
    let mut rels = kernel_polys(2)?;
    rels.extend(kernel_polys(3)?);
    rels.extend(
        table
            .basis(4)
            .iter()
            .map(|m| Poly::monomial(field, vars.clone(), m.clone(), 1)),
    );
    if linear.is_empty() {
        return build_graded(field, vars, &rels, cap);
    }
    // eliminate pivot variables of the reduced linear relations
    let lin = Matrix::from_rows(e, &linear.iter().map(|l| coords(l, 1, &table)).collect::<Vec<_>>());
    let (reduced, pivots) = lin.rref(&field);
    let keep: Vec<usize> = (0..e).filter(|i| !pivots.contains(i)).collect();
    let new_vars: Arc<[String]> = keep.iter().map(|&i| vars[i].clone()).collect();
    let mut images = Vec::with_capacity(e);
    for i in 0..e {
        if let Some(r) = pivots.iter().position(|&p| p == i) {
            let mut img = Poly::zero(field, new_vars.clone());
            for (k, &j) in keep.iter().enumerate() {
                let c = reduced.get(r, j);
                if c != 0 {
                    img = img.add(&Poly::var(field, new_vars.clone(), k).scale(field.neg(c)));
                }
            }
            images.push(img);
        } else {
            let k = keep.iter().position(|&j| j == i).unwrap();
            images.push(Poly::var(field, new_vars.clone(), k));
        }
    }
    let rels: Vec<Poly> = rels.iter().map(|r| r.substitute(&images)).collect();
    build_graded(field, new_vars, &rels, cap)
}

/// Random cubic with independent uniform coefficients drawn from `rng`,
/// redrawn while zero.
pub fn random_cubic_with<R: Rng>(field: PrimeField, vars: Arc<[String]>, rng: &mut R) -> CubicForm {
    let mons = monomial_basis(vars.len(), 3);
    loop {
        let terms: Vec<(Monomial, u32)> = mons
            .iter()
            .map(|m| (m.clone(), rng.random_range(0..field.p())))
            .collect();
        let f = Poly::from_terms(field, vars.clone(), terms);
        if !f.is_zero() {
            return CubicForm { form: f };
        }
    }
}

/// Random cubic in `e` variables determined by `seed`.
pub fn random_cubic(field: PrimeField, e: usize, seed: u64) -> CubicForm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_cubic_with(field, default_vars(e), &mut rng)
}
