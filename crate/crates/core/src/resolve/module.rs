use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Matrix, PrimeField, Subspace};
use crate::polyspace::Poly;
use crate::quotient::GradedAlgebra;

/// Generators with degrees and relations (one polynomial per generator) of
/// a graded module; the module is the cokernel of the relation matrix.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    pub gen_degrees: Vec<usize>,
    pub relations: Vec<Vec<Poly>>,
}

impl ModulePresentation {
    /// Free module on generators of the given degrees.
    pub fn free(gen_degrees: Vec<usize>) -> Self {
        ModulePresentation {
            gen_degrees,
            relations: Vec::new(),
        }
    }

    /// The residue field `k = R/m` of an algebra on `vars`.
    pub fn residue_field(field: PrimeField, vars: &Arc<[String]>) -> Self {
        ModulePresentation {
            gen_degrees: vec![0],
            relations: (0..vars.len())
                .map(|i| vec![Poly::var(field, vars.clone(), i)])
                .collect(),
        }
    }

    /// `R/(f_1, ..., f_k)`.
    pub fn cyclic(relations: Vec<Poly>) -> Self {
        ModulePresentation {
            gen_degrees: vec![0],
            relations: relations.into_iter().map(|f| vec![f]).collect(),
        }
    }

    /// Adds `a·e_g` for every generator: a module over `R/aR` viewed over
    /// `R` along the quotient map.
    pub fn restrict_along(&self, a: &Poly) -> Self {
        let n = self.gen_degrees.len();
        let mut relations = self.relations.clone();
        for g in 0..n {
            let mut row = vec![Poly::zero(*a.field(), a.vars().clone()); n];
            row[g] = a.clone();
            relations.push(row);
        }
        ModulePresentation {
            gen_degrees: self.gen_degrees.clone(),
            relations,
        }
    }
}

/// Something a homogeneous map can land in: graded pieces with a linear
/// action of each algebra generator.
pub(crate) trait GradedTarget {
    fn dim(&self, j: usize) -> usize;
    fn act(&self, v: usize, j: usize, x: &[u32]) -> Vec<u32>;
}

/// A free module `⊕_g R(-d_g)` laid out degree by degree.
#[derive(Clone, Debug)]
pub(crate) struct FreeModule<'a> {
    algebra: &'a GradedAlgebra,
    degs: Vec<usize>,
    offsets: Vec<Vec<usize>>,
}

impl<'a> FreeModule<'a> {
    pub(crate) fn new(algebra: &'a GradedAlgebra, degs: Vec<usize>, cap: usize) -> Self {
        let offsets = (0..=cap)
            .map(|j| {
                let mut off = Vec::with_capacity(degs.len() + 1);
                let mut acc = 0;
                for &d in &degs {
                    off.push(acc);
                    if j >= d {
                        acc += algebra.dim(j - d);
                    }
                }
                off.push(acc);
                off
            })
            .collect();
        FreeModule { algebra, degs, offsets }
    }

    pub(crate) fn degs(&self) -> &[usize] {
        &self.degs
    }

    pub(crate) fn offset(&self, j: usize, g: usize) -> usize {
        self.offsets[j][g]
    }
}

impl GradedTarget for FreeModule<'_> {
    fn dim(&self, j: usize) -> usize {
        *self.offsets[j].last().unwrap()
    }

    fn act(&self, v: usize, j: usize, x: &[u32]) -> Vec<u32> {
        let field = self.algebra.field();
        let mut out = vec![0u32; self.dim(j + 1)];
        for (g, &d) in self.degs.iter().enumerate() {
            if j < d {
                continue;
            }
            let src = &x[self.offsets[j][g]..self.offsets[j][g + 1]];
            if src.is_empty() {
                continue;
            }
            let Some(a) = self.algebra.action_ref(v, j - d) else {
                continue;
            };
            let lo = self.offsets[j + 1][g];
            let hi = self.offsets[j + 1][g + 1];
            a.mul_vec_add_into(field, src, &mut out[lo..hi]);
        }
        out
    }
}

/// A finitely generated graded module, stored degree by degree.
#[derive(Clone, Debug)]
pub struct GradedModule<'a> {
    algebra: &'a GradedAlgebra,
    cap: usize,
    finite: bool,
    gen_degrees: Vec<usize>,
    dims: Vec<usize>,
    actions: Vec<Vec<Matrix>>,
}

impl<'a> GradedModule<'a> {
    pub fn algebra(&self) -> &'a GradedAlgebra {
        self.algebra
    }

    /// Highest degree stored.
    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Whether all components beyond the cap are known to vanish.
    pub fn is_finite_length(&self) -> bool {
        self.finite
    }

    /// Degrees of the presentation's generators.
    pub fn presentation_degrees(&self) -> &[usize] {
        &self.gen_degrees
    }

    pub fn dim(&self, j: usize) -> usize {
        if j <= self.cap {
            self.dims[j]
        } else {
            assert!(self.finite, "module component {j} is beyond the cap {}", self.cap);
            0
        }
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        let mut h = self.dims.clone();
        if self.finite {
            while h.last() == Some(&0) {
                h.pop();
            }
        }
        h
    }

    /// Top nonzero degree of a finite-length module.
    pub fn top_degree(&self) -> Option<usize> {
        if !self.finite {
            return None;
        }
        self.dims.iter().rposition(|&d| d > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.finite && self.dims.iter().all(|&d| d == 0)
    }

    /// Action of the `v`-th variable, `M_j -> M_{j+1}`.
    pub fn action(&self, v: usize, j: usize) -> Matrix {
        if j < self.cap {
            self.actions[v][j].clone()
        } else {
            Matrix::zeros(self.dim(j + 1), self.dim(j))
        }
    }
}

impl GradedTarget for GradedModule<'_> {
    fn dim(&self, j: usize) -> usize {
        GradedModule::dim(self, j)
    }

    fn act(&self, v: usize, j: usize, x: &[u32]) -> Vec<u32> {
        if j < self.cap {
            self.actions[v][j].mul_vec(self.algebra.field(), x)
        } else {
            vec![0; GradedModule::dim(self, j + 1)]
        }
    }
}

/// The module presented by `pres` over `r`, computed as the cokernel of the
/// relations degree by degree.
pub fn present_module<'a>(r: &'a GradedAlgebra, pres: &ModulePresentation) -> Result<GradedModule<'a>> {
    let field = *r.field();
    let ngen = pres.gen_degrees.len();
    let maxgen = pres.gen_degrees.iter().copied().max().unwrap_or(0);
    let (cap, finite) = match r.top_degree() {
        Some(t) => (maxgen + t, true),
        None => (r.cap(), false),
    };
    if maxgen > cap {
        return Err(Error::BeyondCap { cap, needed: maxgen });
    }
    // relation vectors by degree
    let mut rel_by_degree: Vec<Vec<Vec<Poly>>> = vec![Vec::new(); cap + 1];
    for (ri, rel) in pres.relations.iter().enumerate() {
        if rel.len() != ngen {
            return Err(Error::DegreeMismatch(format!(
                "relation {ri} has {} entries for {ngen} generators",
                rel.len()
            )));
        }
        let mut deg = None;
        let mut renamed = Vec::with_capacity(ngen);
        for (g, p) in rel.iter().enumerate() {
            let p = r.normal_form(&p.rename_to(r.vars())?)?;
            if !p.is_zero() {
                let d = p
                    .homogeneous_degree()
                    .ok_or_else(|| Error::DegreeMismatch(format!("entry `{p}` of relation {ri} is not homogeneous")))?
                    + pres.gen_degrees[g];
                match deg {
                    None => deg = Some(d),
                    Some(d0) if d0 != d => {
                        return Err(Error::DegreeMismatch(format!(
                            "relation {ri} mixes degrees {d0} and {d}"
                        )))
                    }
                    _ => {}
                }
            }
            renamed.push(p);
        }
        if let Some(d) = deg {
            if d <= cap {
                rel_by_degree[d].push(renamed);
            } else if !finite {
                return Err(Error::BeyondCap { cap, needed: d });
            }
        }
    }
    let free = FreeModule::new(r, pres.gen_degrees.clone(), cap);
    let mut sub: Vec<Subspace> = Vec::with_capacity(cap + 1);
    for j in 0..=cap {
        let n = free.dim(j);
        let mut s = Subspace::zero(field, n);
        if j > 0 {
            for v in sub[j - 1].basis() {
                for var in 0..r.nvars() {
                    s.insert(&free.act(var, j - 1, v));
                    if s.is_full() {
                        break;
                    }
                }
            }
        }
        for rel in &rel_by_degree[j] {
            let mut vec = vec![0u32; n];
            for (g, p) in rel.iter().enumerate() {
                let d = pres.gen_degrees[g];
                if p.is_zero() || j < d {
                    continue;
                }
                let c = r.coords(p, j - d)?;
                let off = free.offset(j, g);
                vec[off..off + c.len()].copy_from_slice(&c);
            }
            s.insert(&vec);
        }
        sub.push(s);
    }
    // standard complements and projections
    let mut proj = Vec::with_capacity(cap + 1);
    let mut std_pos = Vec::with_capacity(cap + 1);
    for s in &sub {
        let n = s.ambient();
        let reduced = s.rref_matrix();
        let mut pivot_row = vec![None; n];
        for row in 0..reduced.rows() {
            let pc = reduced.row(row).iter().position(|&x| x != 0).unwrap();
            pivot_row[pc] = Some(row);
        }
        let std: Vec<usize> = (0..n).filter(|&i| pivot_row[i].is_none()).collect();
        let mut p = Matrix::zeros(std.len(), n);
        for (k, &i) in std.iter().enumerate() {
            p.set(k, i, 1);
        }
        for (c, pr) in pivot_row.iter().enumerate() {
            if let Some(row) = *pr {
                for (k, &i) in std.iter().enumerate() {
                    let x = reduced.get(row, i);
                    if x != 0 {
                        p.set(k, c, field.neg(x));
                    }
                }
            }
        }
        proj.push(p);
        std_pos.push(std);
    }
    let dims: Vec<usize> = std_pos.iter().map(Vec::len).collect();
    // generated in degrees ≤ maxgen, so one vanishing component past the
    // generators kills everything above it
    let finite = finite || (maxgen..=cap).any(|d| dims[d] == 0);
    let mut actions = vec![Vec::with_capacity(cap); r.nvars()];
    for j in 0..cap {
        for (v, acts) in actions.iter_mut().enumerate() {
            let mut a = Matrix::zeros(dims[j + 1], dims[j]);
            for (k, &i) in std_pos[j].iter().enumerate() {
                let mut unit = vec![0u32; free.dim(j)];
                unit[i] = 1;
                let img = proj[j + 1].mul_vec(&field, &free.act(v, j, &unit));
                for (row, x) in img.into_iter().enumerate() {
                    a.set(row, k, x);
                }
            }
            acts.push(a);
        }
    }
    let m = GradedModule {
        algebra: r,
        cap,
        finite,
        gen_degrees: pres.gen_degrees.clone(),
        dims,
        actions,
    };
    m.check_actions()?;
    Ok(m)
}

/// `k` as a module over `r`.
pub fn residue_field(r: &GradedAlgebra) -> GradedModule<'_> {
    present_module(r, &ModulePresentation::residue_field(*r.field(), r.vars()))
        .expect("the residue field always has a valid presentation")
}

impl GradedModule<'_> {
    /// Actions commute and satisfy the quadratic relations of the algebra.
    fn check_actions(&self) -> Result<()> {
        let f = self.algebra.field();
        let e = self.algebra.nvars();
        let quadrics: Vec<&Poly> = self
            .algebra
            .generators()
            .iter()
            .filter(|g| g.homogeneous_degree() == Some(2))
            .collect();
        for j in 0..self.cap.saturating_sub(1) {
            for a in 0..e {
                for b in (a + 1)..e {
                    let ab = self.actions[a][j + 1].mul(f, &self.actions[b][j]);
                    let ba = self.actions[b][j + 1].mul(f, &self.actions[a][j]);
                    if ab != ba {
                        return Err(Error::Internal(format!("module actions do not commute in degree {j}")));
                    }
                }
            }
            for q in &quadrics {
                let mut acc = Matrix::zeros(self.dims[j + 2], self.dims[j]);
                for (m, c) in q.terms() {
                    let ex = m.exponents();
                    let vs: Vec<usize> = (0..e).flat_map(|i| std::iter::repeat_n(i, ex[i] as usize)).collect();
                    let prod = self.actions[vs[0]][j + 1].mul(f, &self.actions[vs[1]][j]);
                    for r in 0..acc.rows() {
                        for col in 0..acc.cols() {
                            let x = f.add(acc.get(r, col), f.mul(c, prod.get(r, col)));
                            acc.set(r, col, x);
                        }
                    }
                }
                if !acc.is_zero() {
                    return Err(Error::Internal(format!("module violates relation `{q}`")));
                }
            }
        }
        Ok(())
    }
}
