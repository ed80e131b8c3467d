use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};
use crate::par::{self, Execution};
use crate::quotient::GradedAlgebra;
use num_bigint::BigInt;

use crate::series::{IntPoly, TruncSeries};

use super::betti::BettiTable;
use super::module::{FreeModule, GradedModule, GradedTarget};

/// A minimal free resolution truncated at homological degree `N` and
/// internal degree `J`.
#[derive(Clone, Debug)]
pub struct Resolution {
    betti: BettiTable,
    degrees: Vec<Vec<usize>>,
    images: Vec<Vec<Vec<u32>>>,
}

impl Resolution {
    pub fn betti(&self) -> &BettiTable {
        &self.betti
    }

    pub fn into_betti(self) -> BettiTable {
        self.betti
    }

    /// Degrees of the basis of `F_i` found within the caps.
    pub fn generator_degrees(&self, i: usize) -> &[usize] {
        &self.degrees[i]
    }

    /// Image of the `g`-th basis element of `F_i`: coordinates in `M` for
    /// `i = 0`, in `F_{i-1}` otherwise.
    pub fn image(&self, i: usize, g: usize) -> &[u32] {
        &self.images[i][g]
    }
}

/// How far the Betti numbers of the resolved module can be trusted beyond
/// the internal cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Bound {
    /// `R_d = 0` for `d > top`.
    Artinian(usize),
    /// Complete intersection of quadrics, by its Hilbert function; syzygies
    /// of a module of top degree `t` live in degrees `≤ i + t`.
    QuadricCi,
    Unknown,
}

/// Whether `r` has the Hilbert function of a complete intersection of its
/// quadric generators, up to the cap.
pub fn looks_like_quadric_ci(r: &GradedAlgebra) -> bool {
    if r.is_artinian() || !r.is_quadratic() {
        return false;
    }
    let c = r.generators().len();
    let e = r.nvars();
    if c > e {
        return false;
    }
    let mut num = IntPoly::one();
    for _ in 0..c {
        num = num.mul(&IntPoly::from_i64(&[1, 0, -1]));
    }
    let den = TruncSeries::from_poly(&IntPoly::binomial_power(1, -1, e as u32), r.cap())
        .invert()
        .expect("constant term is one");
    let h = den.mul_poly(&num);
    (0..=r.cap()).all(|d| h.coeff(d) == Some(&BigInt::from(r.dim(d))))
}

fn bound_for(r: &GradedAlgebra) -> Bound {
    match r.top_degree() {
        Some(t) => Bound::Artinian(t),
        None if looks_like_quadric_ci(r) => Bound::QuadricCi,
        None => Bound::Unknown,
    }
}

/// Betti table of `m` over `r` with caps `N`, `J`.
pub fn minimal_resolution(r: &GradedAlgebra, m: &GradedModule<'_>, n: usize, j: usize) -> Result<BettiTable> {
    Ok(resolve_module(r, m, n, j, Execution::Auto)?.betti)
}

/// The truncated resolution itself, with generator images.
pub fn resolve_module(
    r: &GradedAlgebra,
    m: &GradedModule<'_>,
    n: usize,
    jcap: usize,
    exec: Execution,
) -> Result<Resolution> {
    if !std::ptr::eq(r, m.algebra()) && r.presentation_text() != m.algebra().presentation_text() {
        return Err(Error::VariableMismatch("module lives over a different algebra".into()));
    }
    if !r.is_artinian() && jcap > r.cap() {
        return Err(Error::BeyondCap {
            cap: r.cap(),
            needed: jcap,
        });
    }
    let field = *r.field();
    let e = r.nvars();
    let bound = bound_for(r);

    // F_0: minimal generators of M
    let mut gens0 = Vec::new();
    let mut prev_basis: Vec<Vec<u32>> = Vec::new();
    for d in 0..=jcap {
        let dim = m.dim(d);
        let basis: Vec<Vec<u32>> = (0..dim)
            .map(|k| {
                let mut u = vec![0u32; dim];
                u[k] = 1;
                u
            })
            .collect();
        let mut s = Subspace::zero(field, dim);
        if d > 0 {
            'outer: for b in &prev_basis {
                for v in 0..e {
                    s.insert(&m.act(v, d - 1, b));
                    if s.dim() == dim {
                        break 'outer;
                    }
                }
            }
        }
        for b in &basis {
            if s.insert(b) {
                gens0.push((d, b.clone()));
            }
        }
        prev_basis = basis;
    }
    let maxpres = m.presentation_degrees().iter().copied().max().unwrap_or(0);
    let mut complete = vec![false; n + 1];
    complete[0] = m.is_finite_length() && m.top_degree().is_none_or(|t| t <= jcap) || maxpres <= jcap;

    let mut degrees = vec![gens0.iter().map(|(d, _)| *d).collect::<Vec<_>>()];
    let mut images = vec![gens0.into_iter().map(|(_, v)| v).collect::<Vec<_>>()];

    for i in 1..=n {
        let prev_degs = degrees[i - 1].clone();
        if prev_degs.is_empty() {
            for c in complete.iter_mut().skip(i) {
                *c = true;
            }
            degrees.extend(std::iter::repeat_n(Vec::new(), n + 1 - i));
            images.extend(std::iter::repeat_n(Vec::new(), n + 1 - i));
            break;
        }
        let src = FreeModule::new(r, prev_degs.clone(), jcap);
        let cols = if i == 1 {
            map_columns(r, &src, &images[0], m, jcap)
        } else {
            let tgt = FreeModule::new(r, degrees[i - 2].clone(), jcap);
            map_columns(r, &src, &images[i - 1], &tgt, jcap)
        };
        let target_dims: Vec<usize> = if i == 1 {
            (0..=jcap).map(|d| m.dim(d)).collect()
        } else {
            let tgt = FreeModule::new(r, degrees[i - 2].clone(), jcap);
            (0..=jcap).map(|d| tgt.dim(d)).collect()
        };
        let jobs: Vec<(usize, Vec<Vec<u32>>)> = cols.into_iter().enumerate().collect();
        let kernels: Vec<Vec<Vec<u32>>> = par::map(exec, jobs, |(d, c)| {
            if c.is_empty() {
                return Vec::new();
            }
            Matrix::from_cols(target_dims[d], &c).kernel_basis(&field).row_vecs()
        });
        let mut new_degs = Vec::new();
        let mut new_imgs = Vec::new();
        for d in 0..=jcap {
            let kd = &kernels[d];
            if kd.is_empty() {
                continue;
            }
            let mut s = Subspace::zero(field, src.dim(d));
            if d > 0 {
                'outer: for b in &kernels[d - 1] {
                    for v in 0..e {
                        s.insert(&src.act(v, d - 1, b));
                        if s.dim() == kd.len() {
                            break 'outer;
                        }
                    }
                }
            }
            for b in kd {
                if s.dim() == kd.len() {
                    break;
                }
                if s.insert(b) {
                    // minimality: no unit entries in the differential
                    for (g, &dg) in prev_degs.iter().enumerate() {
                        if dg == d && b[src.offset(d, g)] != 0 {
                            return Err(Error::Internal(format!(
                                "non-minimal syzygy in homological degree {i}, internal degree {d}"
                            )));
                        }
                    }
                    new_degs.push(d);
                    new_imgs.push(b.clone());
                }
            }
        }
        let dmax = prev_degs.iter().copied().max().unwrap_or(0);
        complete[i] = complete[i - 1]
            && match bound {
                Bound::Artinian(t) => dmax + t <= jcap,
                Bound::QuadricCi => m.top_degree().is_some_and(|t| i + t <= jcap) || m.is_zero(),
                Bound::Unknown => false,
            };
        degrees.push(new_degs);
        images.push(new_imgs);
    }
    let mut entries = BTreeMap::new();
    for (i, degs) in degrees.iter().enumerate() {
        for &d in degs {
            *entries.entry((i, d)).or_insert(0) += 1;
        }
    }
    Ok(Resolution {
        betti: BettiTable::new(n, jcap, entries, complete),
        degrees,
        images,
    })
}

/// Columns of the map `F -> T` sending the `g`-th basis element to
/// `images[g]`, degree by degree up to `jcap`.
fn map_columns(
    r: &GradedAlgebra,
    src: &FreeModule<'_>,
    images: &[Vec<u32>],
    tgt: &dyn GradedTarget,
    jcap: usize,
) -> Vec<Vec<Vec<u32>>> {
    let mut out: Vec<Vec<Vec<u32>>> = Vec::with_capacity(jcap + 1);
    for d in 0..=jcap {
        let mut cols = Vec::with_capacity(src.dim(d));
        for (g, &dg) in src.degs().iter().enumerate() {
            if d < dg {
                continue;
            }
            let k = d - dg;
            for s in 0..r.dim(k) {
                if k == 0 {
                    cols.push(images[g].clone());
                } else {
                    let (v, s0) = r.factor(k, s);
                    let prev = &out[d - 1][src.offset(d - 1, g) + s0];
                    cols.push(tgt.act(v, d - 1, prev));
                }
            }
        }
        out.push(cols);
    }
    out
}

/// Checks that consecutive differentials of `res` compose to zero and that
/// the augmentation is onto `M` up to the cap.
pub fn check_complex(r: &GradedAlgebra, m: &GradedModule<'_>, res: &Resolution) -> Result<()> {
    let field = *r.field();
    let jcap = res.betti.caps().1;
    let n = res.degrees.len() - 1;
    for i in 2..=n {
        if res.degrees[i].is_empty() {
            break;
        }
        let tgt = FreeModule::new(r, res.degrees[i - 2].clone(), jcap);
        let mid = FreeModule::new(r, res.degrees[i - 1].clone(), jcap);
        let cols = map_columns(r, &mid, &res.images[i - 1], &tgt, jcap);
        for (g, &d) in res.degrees[i].iter().enumerate() {
            let mut acc = vec![0u32; tgt.dim(d)];
            for (c, &x) in res.images[i][g].iter().enumerate() {
                if x != 0 {
                    crate::exactla::axpy(&field, x, &cols[d][c], &mut acc);
                }
            }
            if acc.iter().any(|&x| x != 0) {
                return Err(Error::NotAComplex(i));
            }
        }
    }
    if n >= 1 {
        let f0 = FreeModule::new(r, res.degrees[0].clone(), jcap);
        let cols = map_columns(r, &f0, &res.images[0], m, jcap);
        for (g, &d) in res.degrees.get(1).into_iter().flatten().enumerate() {
            let mut acc = vec![0u32; m.dim(d)];
            for (c, &x) in res.images[1][g].iter().enumerate() {
                if x != 0 {
                    crate::exactla::axpy(&field, x, &cols[d][c], &mut acc);
                }
            }
            if acc.iter().any(|&x| x != 0) {
                return Err(Error::NotAComplex(1));
            }
        }
        for (d, c) in cols.iter().enumerate() {
            let span = Subspace::spanned_by(field, m.dim(d), c.iter());
            if span.dim() != m.dim(d) {
                return Err(Error::Internal(format!("augmentation misses degree {d}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeField;
    use crate::polyspace::{parse_poly, var_list};
    use crate::quotient::build_graded;
    use crate::resolve::{present_module, residue_field, ModulePresentation};

    fn graded(rels: &[&str], vars: &[&str], cap: usize) -> GradedAlgebra {
        let f = PrimeField::default();
        let v = var_list(vars);
        let rels: Vec<_> = rels.iter().map(|s| parse_poly(s, &v, f).unwrap()).collect();
        build_graded(f, v, &rels, cap).unwrap()
    }

    #[test]
    fn dual_numbers_resolve_k_periodically() {
        let r = graded(&["x^2"], &["x"], 6);
        let k = residue_field(&r);
        let res = resolve_module(&r, &k, 6, 10, Execution::Auto).unwrap();
        check_complex(&r, &k, &res).unwrap();
        let b = res.betti();
        for i in 0..=6 {
            assert_eq!(b.get(i, i), 1);
            assert_eq!(b.total(i), 1);
            assert!(b.is_complete(i));
        }
    }

    #[test]
    fn quadric_ci_in_two_variables() {
        let r = graded(&["x^2", "y^2"], &["x", "y"], 6);
        let k = residue_field(&r);
        let b = minimal_resolution(&r, &k, 6, 10).unwrap();
        for i in 0..=6 {
            assert_eq!(b.get(i, i), i + 1);
            assert_eq!(b.total(i), i + 1);
        }
    }

    #[test]
    fn cyclic_module_of_exact_zero_divisor() {
        let r = graded(&["x*y", "x^3 - y^3"], &["x", "y"], 6);
        let x = parse_poly("x", r.vars(), *r.field()).unwrap();
        let m = present_module(&r, &ModulePresentation::cyclic(vec![x])).unwrap();
        assert_eq!(m.hilbert_function(), vec![1, 1, 1]);
        let res = resolve_module(&r, &m, 6, 10, Execution::Sequential).unwrap();
        check_complex(&r, &m, &res).unwrap();
        let b = res.betti();
        assert_eq!(b.entries().count(), 7);
        for i in 0..=6 {
            assert_eq!(b.get(i, i), 1);
        }
    }

    #[test]
    fn cubic_relation_shows_off_diagonal() {
        let r = graded(&["x*y", "x^3 - y^3"], &["x", "y"], 6);
        let k = residue_field(&r);
        let b = minimal_resolution(&r, &k, 3, 7).unwrap();
        assert_eq!(b.get(1, 1), 2);
        assert!(b.get(2, 3) > 0);
    }

    #[test]
    fn execution_modes_agree() {
        let r = graded(&["x^2", "x*y", "y^2 - x*z", "z^3"], &["x", "y", "z"], 6);
        let k = residue_field(&r);
        let a = resolve_module(&r, &k, 4, 8, Execution::Auto).unwrap();
        let s = resolve_module(&r, &k, 4, 8, Execution::Sequential).unwrap();
        assert_eq!(a.betti(), s.betti());
    }

    #[test]
    fn quadric_ci_over_positive_dimension() {
        // k[x,y,z]/(x*y, z^2) has dimension one
        let q = graded(&["x*y", "z^2"], &["x", "y", "z"], 8);
        assert!(looks_like_quadric_ci(&q));
        let k = residue_field(&q);
        let b = minimal_resolution(&q, &k, 4, 8).unwrap();
        assert!(b.completeness().iter().all(|&c| c));
        // (1+t)^3 / (1-t^2)^2
        assert_eq!(b.poincare().unwrap().to_i64_vec().unwrap(), vec![1, 3, 5, 7, 9]);
    }
}
