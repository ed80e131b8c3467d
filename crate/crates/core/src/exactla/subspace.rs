use super::{Matrix, PrimeField};

/// A linear subspace of `F_p^n` kept as a semi-echelon basis.
///
/// Each stored row is normalized to 1 at its pivot and vanishes at the
/// pivots of all rows inserted before it. Reducing a vector against the
/// rows in insertion order therefore yields a canonical remainder, and
/// insertion costs a single reduction.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let mut s = Subspace::zero(field, ambient);
        for i in 0..ambient {
            let mut v = vec![0; ambient];
            v[i] = 1;
            s.rows.push(v);
            s.pivots.push(i);
        }
        s
    }

    pub fn spanned_by<I, V>(field: PrimeField, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v.as_ref());
        }
        s
    }

    pub fn from_matrix_rows(field: PrimeField, m: &Matrix) -> Self {
        Subspace::spanned_by(field, m.cols(), (0..m.rows()).map(|r| m.row(r)))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after reduction against the basis; zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient, "vector has wrong length");
        let p = self.field.p() as u64;
        let budget = self.field.lazy_budget();
        let mut acc: Vec<u64> = v.iter().map(|&x| x as u64).collect();
        let mut pending = 0u64;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = acc[pc] % p;
            if f == 0 {
                acc[pc] = 0;
                continue;
            }
            let g = p - f;
            for (dst, &src) in acc[pc..].iter_mut().zip(&row[pc..]) {
                *dst += g * src as u64;
            }
            pending += 1;
            if pending == budget {
                acc.iter_mut().for_each(|x| *x %= p);
                pending = 0;
            }
        }
        acc.into_iter().map(|x| (x % p) as u32).collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        if self.dim() == self.ambient {
            return false;
        }
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(r[pc]);
        for x in r.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // v = sum a_i u_i = sum b_j w_j  <=>  [U; W]^T (a, -b) = 0
        let n = self.ambient;
        let k1 = self.dim();
        let k2 = other.dim();
        let mut m = Matrix::zeros(n, k1 + k2);
        for (i, u) in self.rows.iter().enumerate() {
            for (r, &x) in u.iter().enumerate() {
                m.set(r, i, x);
            }
        }
        for (j, w) in other.rows.iter().enumerate() {
            for (r, &x) in w.iter().enumerate() {
                m.set(r, k1 + j, x);
            }
        }
        let ker = m.kernel_basis(&self.field);
        let mut out = Subspace::zero(self.field, n);
        for r in 0..ker.rows() {
            let coeffs = &ker.row(r)[..k1];
            let mut v = vec![0u32; n];
            for (c, u) in coeffs.iter().zip(&self.rows) {
                if *c == 0 {
                    continue;
                }
                for (dst, &x) in v.iter_mut().zip(u) {
                    *dst = self.field.add(*dst, self.field.mul(*c, x));
                }
            }
            out.insert(&v);
        }
        out
    }

    /// Basis in reduced row echelon form (canonical for the subspace).
    pub fn rref_matrix(&self) -> Matrix {
        let m = Matrix::from_rows(self.ambient, &self.rows);
        let (r, piv) = m.rref(&self.field);
        Matrix::from_rows(self.ambient, &r.row_vecs()[..piv.len()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insertion_and_membership() {
        let f = PrimeField::new(5).unwrap();
        let mut s = Subspace::zero(f, 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 3, 1]));
        assert!(s.contains(&[2, 4, 0]));
        assert!(!s.contains(&[0, 0, 1]));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn intersection_dimension() {
        let f = PrimeField::new(7).unwrap();
        let a = Subspace::spanned_by(f, 3, [[1, 0, 0], [0, 1, 0]]);
        let b = Subspace::spanned_by(f, 3, [[0, 1, 0], [0, 0, 1]]);
        let c = a.intersection(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[0, 3, 0]));
        assert_eq!(a.sum(&b).dim(), 3);
    }
}
