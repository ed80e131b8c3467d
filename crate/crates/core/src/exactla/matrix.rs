use std::fmt;

use super::PrimeField;

/// Dense row-major matrix of residues modulo a prime.
///
/// The matrix does not carry its field; every arithmetic routine takes the
/// [`PrimeField`] explicitly so the same storage can be shared across
/// algebras built over the same prime.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` is explicit so that empty
    /// row lists still know their width.
    pub fn from_rows(cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged column");
            for (r, &v) in col.iter().enumerate() {
                m.data[r * m.cols + c] = v;
            }
        }
        m
    }

    /// Reduces arbitrary integer entries into the field.
    pub fn from_i64_rows(field: &PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let reduced: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(cols, &reduced)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn mul_vec(&self, field: &PrimeField, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        let p = field.p() as u64;
        let budget = field.lazy_budget();
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                let mut n = 0u64;
                for (a, b) in self.row(r).iter().zip(v) {
                    acc += *a as u64 * *b as u64;
                    n += 1;
                    if n == budget {
                        acc %= p;
                        n = 0;
                    }
                }
                (acc % p) as u32
            })
            .collect()
    }

    /// Accumulates `self * v` into `out` (lengths must match).
    pub fn mul_vec_add_into(&self, field: &PrimeField, v: &[u32], out: &mut [u32]) {
        let prod = self.mul_vec(field, v);
        for (o, x) in out.iter_mut().zip(prod) {
            *o = field.add(*o, x);
        }
    }

    pub fn mul(&self, field: &PrimeField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let p = field.p() as u64;
        let budget = field.lazy_budget();
        let mut out = Matrix::zeros(self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut n = 0u64;
            for (k, &a) in self.row(r).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (dst, &b) in acc.iter_mut().zip(other.row(k)) {
                    *dst += a as u64 * b as u64;
                }
                n += 1;
                if n == budget {
                    acc.iter_mut().for_each(|x| *x %= p);
                    n = 0;
                }
            }
            for (dst, x) in out.row_mut(r).iter_mut().zip(&acc) {
                *dst = (x % p) as u32;
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// Pivots are chosen leftmost-first and, within a column, from the first
    /// row carrying a nonzero entry, so the output is fully deterministic.
    pub fn rref(&self, field: &PrimeField) -> (Matrix, Vec<usize>) {
        let (rows, cols) = (self.rows, self.cols);
        let p = field.p() as u64;
        let budget = field.lazy_budget();
        let mut a: Vec<u64> = self.data.iter().map(|&v| v as u64).collect();
        let mut pivots = Vec::new();
        let mut pivot_row = vec![0u32; cols];
        let mut r = 0;
        let mut pending = 0u64;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let mut found = None;
            for i in r..rows {
                let v = a[i * cols + c] % p;
                a[i * cols + c] = v;
                if v != 0 {
                    found = Some(i);
                    break;
                }
            }
            let Some(i) = found else { continue };
            if i != r {
                for k in 0..cols {
                    a.swap(i * cols + k, r * cols + k);
                }
            }
            let inv = field.inv(a[r * cols + c] as u32) as u64;
            for k in 0..cols {
                let v = (a[r * cols + k] % p) * inv % p;
                a[r * cols + k] = v;
                pivot_row[k] = v as u32;
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = a[i * cols + c] % p;
                if f == 0 {
                    a[i * cols + c] = 0;
                    continue;
                }
                let g = p - f;
                let row = &mut a[i * cols..(i + 1) * cols];
                for (dst, &src) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *dst += g * src as u64;
                }
            }
            pending += 1;
            if pending == budget {
                a.iter_mut().for_each(|x| *x %= p);
                pending = 0;
            }
            pivots.push(c);
            r += 1;
        }
        let data = a.into_iter().map(|x| (x % p) as u32).collect();
        (Matrix { rows, cols, data }, pivots)
    }

    pub fn rank(&self, field: &PrimeField) -> usize {
        self.rref(field).1.len()
    }

    /// Basis of the right null space `{ v : self * v = 0 }`, one vector per
    /// row of the result, ordered by free column.
    pub fn kernel_basis(&self, field: &PrimeField) -> Matrix {
        let (reduced, pivots) = self.rref(field);
        kernel_from_rref(field, &reduced, &pivots)
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, field: &PrimeField, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (r, &br) in b.iter().enumerate() {
            aug.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            aug.set(r, self.cols, br);
        }
        let (reduced, pivots) = aug.rref(field);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = reduced.get(r, self.cols);
        }
        Some(x)
    }
}

fn kernel_from_rref(field: &PrimeField, reduced: &Matrix, pivots: &[usize]) -> Matrix {
    let cols = reduced.cols();
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut out = Matrix::zeros(free.len(), cols);
    for (k, &fc) in free.iter().enumerate() {
        let row = out.row_mut(k);
        row[fc] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            row[pc] = field.neg(reduced.get(r, fc));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_identity() {
        let id = Matrix::identity(3);
        let (r, piv) = id.rref(&f(101));
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1, 2]);
    }

    #[test]
    fn rref_duplicate_rows_f2() {
        let m = Matrix::from_rows(2, &[vec![1, 1], vec![1, 1]]);
        let (r, piv) = m.rref(&f(2));
        assert_eq!(r, Matrix::from_rows(2, &[vec![1, 1], vec![0, 0]]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn kernel_edge_cases() {
        let fld = f(7);
        assert_eq!(Matrix::zeros(2, 3).kernel_basis(&fld).rows(), 3);
        assert_eq!(Matrix::identity(4).kernel_basis(&fld).rows(), 0);
    }

    #[test]
    fn kernel_of_multiplication_by_x_in_dual_numbers() {
        // basis {1, x} of k[x]/(x^2); x*1 = x, x*x = 0
        let fld = f(3);
        let m = Matrix::from_cols(2, &[vec![0, 1], vec![0, 0]]);
        let k = m.kernel_basis(&fld);
        // brute force over F_3^2
        let mut brute = Vec::new();
        for a in 0..3u32 {
            for b in 0..3u32 {
                if m.mul_vec(&fld, &[a, b]).iter().all(|&v| v == 0) {
                    brute.push((a, b));
                }
            }
        }
        assert_eq!(brute, vec![(0, 0), (0, 1), (0, 2)]);
        assert_eq!(k, Matrix::from_rows(2, &[vec![0, 1]]));
    }

    #[test]
    fn solve_cases() {
        let fld = f(101);
        let id = Matrix::identity(3);
        assert_eq!(id.solve(&fld, &[4, 5, 6]), Some(vec![4, 5, 6]));
        assert_eq!(Matrix::zeros(2, 2).solve(&fld, &[1, 0]), None);
    }

    #[test]
    fn rank_examples() {
        let fld = f(101);
        assert_eq!(Matrix::identity(5).rank(&fld), 5);
        let ones = Matrix::from_rows(4, &vec![vec![1; 4]; 4]);
        assert_eq!(ones.rank(&fld), 1);
    }

    #[test]
    fn lazy_reduction_with_large_prime() {
        // p close to 2^31 exercises the frequent-reduction path
        let fld = f(2_147_483_647);
        let m = Matrix::from_rows(
            3,
            &[
                vec![2_147_483_646, 5, 7],
                vec![3, 2_147_483_640, 11],
                vec![13, 17, 2_147_483_600],
            ],
        );
        let (r, piv) = m.rref(&fld);
        assert_eq!(piv.len(), 3);
        assert_eq!(r, Matrix::identity(3));
    }
}
