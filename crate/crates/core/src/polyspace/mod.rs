//! Monomials and polynomials of the free ring `S = k[x_1..x_e]`.

mod monomial;
mod poly;

pub use monomial::{binomial, monomial_basis, Monomial, MonomialTable};
pub use poly::{is_identifier, parse_poly, var_list, Poly};

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField};

/// Matrix of multiplication by the homogeneous form `f` from `S_d` to
/// `S_{d + deg f}`, in the monomial bases of `table`.
pub fn mult_map(f: &Poly, d: usize, table: &MonomialTable) -> Result<Matrix> {
    let d0 = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d + d0 > table.cap() {
        return Err(Error::CapTooSmall {
            cap: table.cap(),
            needed: d + d0,
        });
    }
    let field = *f.field();
    let src = table.basis(d);
    let mut m = Matrix::zeros(table.dim(d + d0), src.len());
    for (j, mono) in src.iter().enumerate() {
        for (t, c) in f.terms() {
            let r = table.index_of(&t.mul(mono));
            m.set(r, j, field.add(m.get(r, j), c));
        }
    }
    Ok(m)
}

/// Form of degree `d` with independent uniform coefficients.
pub fn random_form<R: Rng>(field: PrimeField, vars: Arc<[String]>, d: usize, rng: &mut R) -> Poly {
    let terms: Vec<(Monomial, u32)> = monomial_basis(vars.len(), d)
        .into_iter()
        .map(|m| (m, rng.random_range(0..field.p())))
        .collect();
    Poly::from_terms(field, vars, terms)
}

/// Coordinates of the degree-`d` part of `f` in the monomial basis of `S_d`.
pub fn coords(f: &Poly, d: usize, table: &MonomialTable) -> Vec<u32> {
    let mut v = vec![0u32; table.dim(d)];
    for (m, c) in f.terms() {
        if m.degree() == d {
            v[table.index_of(m)] = c;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;

    #[test]
    fn multiplication_by_one_is_identity() {
        let f = PrimeField::default();
        let vars = var_list(&["x", "y"]);
        let t = MonomialTable::new(2, 4);
        let one = Poly::constant(f, vars, 1);
        assert_eq!(mult_map(&one, 2, &t).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn linear_form_columns() {
        let f = PrimeField::default();
        let vars = var_list(&["x", "y"]);
        let t = MonomialTable::new(2, 3);
        let l = parse_poly("x + y", &vars, f).unwrap();
        let m = mult_map(&l, 1, &t).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 2));
        // x * (x + y) = x^2 + x*y; basis of S_2 is x^2, x*y, y^2
        assert_eq!(m.col(0), vec![1, 1, 0]);
        assert_eq!(m.col(1), vec![0, 1, 1]);
    }

    #[test]
    fn single_variable_square() {
        let f = PrimeField::default();
        let vars = var_list(&["x"]);
        let t = MonomialTable::new(1, 2);
        let x = Poly::var(f, vars, 0);
        assert_eq!(mult_map(&x, 1, &t).unwrap(), Matrix::identity(1));
    }

    #[test]
    fn cap_is_enforced() {
        let f = PrimeField::default();
        let vars = var_list(&["x"]);
        let t = MonomialTable::new(1, 2);
        let x = Poly::var(f, vars, 0);
        assert!(matches!(mult_map(&x, 2, &t), Err(Error::CapTooSmall { .. })));
    }
}
