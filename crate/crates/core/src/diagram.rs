//! Vector-space valued functors on a finite poset: limits, colimits, Kan
//! extensions along order-preserving maps and natural transformations.
//!
//! A diagram stores one matrix per covering pair (i ⋖ j), a map D(i) → D(j).
//! Longer relations are composites along any chain of covers.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Quotient, Subspace};
use crate::matrix::Matrix;
use crate::poset::Poset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub field: Field,
    pub dims: Vec<usize>,
    pub maps: HashMap<(usize, usize), Matrix>,
}

impl Diagram {
    pub fn zero(field: Field, p: &Poset) -> Diagram {
        let maps = p.covers().iter().map(|&c| (c, Matrix::zeros(field, 0, 0))).collect();
        Diagram { field, dims: vec![0; p.len()], maps }
    }

    pub fn map(&self, i: usize, j: usize) -> &Matrix {
        &self.maps[&(i, j)]
    }

    /// D(i ≤ j) along the canonical chain.
    pub fn composite(&self, p: &Poset, i: usize, j: usize) -> Matrix {
        let chain = p.chain(i, j).expect("composite needs i ≤ j");
        let mut m = Matrix::identity(self.field, self.dims[i]);
        for w in chain.windows(2) {
            m = self.map(w[0], w[1]).mul(&m);
        }
        m
    }

    pub fn check_shapes(&self, p: &Poset) -> Result<()> {
        if self.dims.len() != p.len() {
            return Err(Error::IncompatibleShapes(format!("{} stalks for {} elements", self.dims.len(), p.len())));
        }
        for &(i, j) in p.covers() {
            let m = self.maps.get(&(i, j)).ok_or_else(|| {
                Error::IncompatibleShapes(format!("missing map on ({}, {})", p.name(i), p.name(j)))
            })?;
            if m.shape() != (self.dims[j], self.dims[i]) {
                return Err(Error::IncompatibleShapes(format!(
                    "map ({}, {}) is {}x{}, expected {}x{}",
                    p.name(i),
                    p.name(j),
                    m.rows(),
                    m.cols(),
                    self.dims[j],
                    self.dims[i]
                )));
            }
        }
        Ok(())
    }

    /// Pairs i < j on which two chains of covers give different composites.
    pub fn noncommuting(&self, p: &Poset) -> Vec<(usize, usize)> {
        let n = p.len();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !p.lt(i, j) || p.is_cover(i, j) {
                    continue;
                }
                let reference = self.composite(p, i, j);
                let ok = p
                    .up_covers(i)
                    .iter()
                    .filter(|&&c| p.leq(c, j))
                    .all(|&c| self.composite(p, c, j).mul(self.map(i, c)) == reference);
                if !ok {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    pub fn total_dim(&self, subset: &[usize]) -> usize {
        subset.iter().map(|&x| self.dims[x]).sum()
    }
}

fn offsets(d: &Diagram, elems: &[usize]) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(elems.len());
    let mut t = 0;
    for &x in elems {
        off.push(t);
        t += d.dims[x];
    }
    (off, t)
}

/// The limit of a diagram restricted to a subset, as a subspace of the product.
#[derive(Clone, Debug)]
pub struct Limit {
    pub elems: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
    pub space: Subspace,
    pos: HashMap<usize, usize>,
}

impl Limit {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.pos.get(&x).copied()
    }

    /// The projection lim → D(x) in limit coordinates.
    pub fn projection(&self, d: &Diagram, x: usize) -> Matrix {
        let k = self.pos[&x];
        self.space.basis.block(self.offsets[k], 0, d.dims[x], self.dim())
    }
}

/// The colimit of a diagram restricted to a subset, as a quotient of the sum.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub elems: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
    pub quotient: Quotient,
    pos: HashMap<usize, usize>,
}

impl Colimit {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.pos.get(&x).copied()
    }

    /// The canonical map D(x) → colim.
    pub fn injection(&self, d: &Diagram, x: usize) -> Matrix {
        let k = self.pos[&x];
        self.quotient.projection.block(0, self.offsets[k], self.dim(), d.dims[x])
    }
}

/// Relations are imposed on the covers of the induced subposet only.
pub fn limit(p: &Poset, d: &Diagram, subset: &[usize]) -> Limit {
    let elems: Vec<usize> = subset.to_vec();
    let (off, total) = offsets(d, &elems);
    let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let covers = p.induced_covers(&elems);
    let rows: usize = covers.iter().map(|&(_, b)| d.dims[b]).sum();
    let mut m = Matrix::zeros(d.field, rows, total);
    let mut r = 0;
    for &(a, b) in &covers {
        m.set_block(r, off[pos[&a]], &d.composite(p, a, b));
        m.set_block(r, off[pos[&b]], &Matrix::identity(d.field, d.dims[b]).neg());
        r += d.dims[b];
    }
    Limit { elems, offsets: off, total, space: Subspace::from_basis(m.kernel()), pos }
}

pub fn colimit(p: &Poset, d: &Diagram, subset: &[usize]) -> Colimit {
    let elems: Vec<usize> = subset.to_vec();
    let (off, total) = offsets(d, &elems);
    let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let covers = p.induced_covers(&elems);
    let cols: usize = covers.iter().map(|&(a, _)| d.dims[a]).sum();
    let mut m = Matrix::zeros(d.field, total, cols);
    let mut c = 0;
    for &(a, b) in &covers {
        m.set_block(off[pos[&b]], c, &d.composite(p, a, b));
        m.set_block(off[pos[&a]], c, &Matrix::identity(d.field, d.dims[a]).neg());
        c += d.dims[a];
    }
    Colimit { elems, offsets: off, total, quotient: Quotient::of_relations(&m), pos }
}

/// Coordinate selection ⊕_{small} → ⊕_{big} (as an inclusion) for nested subsets.
fn inclusion(d: &Diagram, small: &[usize], s_off: &[usize], s_total: usize, big_pos: &HashMap<usize, usize>, b_off: &[usize], b_total: usize) -> Matrix {
    let mut m = Matrix::zeros(d.field, b_total, s_total);
    for (k, &x) in small.iter().enumerate() {
        m.set_block(b_off[big_pos[&x]], s_off[k], &Matrix::identity(d.field, d.dims[x]));
    }
    m
}

/// Block-diagonal action of a family of components on the sum over `elems`.
fn act(field: Field, comps: &[Matrix], elems: &[usize]) -> Matrix {
    let blocks: Vec<&Matrix> = elems.iter().map(|&x| &comps[x]).collect();
    Matrix::block_diag(field, &blocks)
}

/// Right Kan extension along f: (Ran D)(y) = lim { D(x) | y ≤ f(x) }.
pub fn ran(src: &Poset, tgt: &Poset, f: &[usize], d: &Diagram) -> (Diagram, Vec<Limit>) {
    let lims: Vec<Limit> = (0..tgt.len())
        .map(|y| {
            let z: Vec<usize> = (0..src.len()).filter(|&x| tgt.leq(y, f[x])).collect();
            limit(src, d, &z)
        })
        .collect();
    let mut maps = HashMap::new();
    for &(y, y2) in tgt.covers() {
        let (a, b) = (&lims[y], &lims[y2]);
        let sel = inclusion(d, &b.elems, &b.offsets, b.total, &a.pos, &a.offsets, a.total).transpose();
        maps.insert((y, y2), b.space.coords(&sel.mul(&a.space.basis)));
    }
    let dims = lims.iter().map(Limit::dim).collect();
    (Diagram { field: d.field, dims, maps }, lims)
}

/// Left Kan extension along f: (Lan D)(y) = colim { D(x) | f(x) ≤ y }.
pub fn lan(src: &Poset, tgt: &Poset, f: &[usize], d: &Diagram) -> (Diagram, Vec<Colimit>) {
    let cols: Vec<Colimit> = (0..tgt.len())
        .map(|y| {
            let w: Vec<usize> = (0..src.len()).filter(|&x| tgt.leq(f[x], y)).collect();
            colimit(src, d, &w)
        })
        .collect();
    let mut maps = HashMap::new();
    for &(y, y2) in tgt.covers() {
        let (a, b) = (&cols[y], &cols[y2]);
        let inc = inclusion(d, &a.elems, &a.offsets, a.total, &b.pos, &b.offsets, b.total);
        maps.insert((y, y2), b.quotient.projection.mul(&inc).mul(&a.quotient.section));
    }
    let dims = cols.iter().map(Colimit::dim).collect();
    (Diagram { field: d.field, dims, maps }, cols)
}

/// The map lim D → lim D' induced by components α_x: D(x) → D'(x).
pub fn limit_map(field: Field, comps: &[Matrix], a: &Limit, b: &Limit) -> Matrix {
    debug_assert_eq!(a.elems, b.elems);
    b.space.coords(&act(field, comps, &a.elems).mul(&a.space.basis))
}

/// The map colim D → colim D' induced by components α_x.
pub fn colimit_map(field: Field, comps: &[Matrix], a: &Colimit, b: &Colimit) -> Matrix {
    debug_assert_eq!(a.elems, b.elems);
    b.quotient.projection.mul(&act(field, comps, &a.elems)).mul(&a.quotient.section)
}

/// Basis of the space of natural transformations D → E, each as per-element matrices.
pub fn natural_transformations(p: &Poset, d: &Diagram, e: &Diagram) -> Vec<Vec<Matrix>> {
    let n = p.len();
    let mut off = vec![0; n + 1];
    for x in 0..n {
        off[x + 1] = off[x] + e.dims[x] * d.dims[x];
    }
    let nvars = off[n];
    // variable for η_x[r][c] lives at off[x] + r * d.dims[x] + c
    let var = |x: usize, r: usize, c: usize| off[x] + r * d.dims[x] + c;
    let mut rows: Vec<Vec<(usize, crate::field::Scalar)>> = Vec::new();
    for &(i, j) in p.covers() {
        let (di, dj, ei, ej) = (d.dims[i], d.dims[j], e.dims[i], e.dims[j]);
        let dm = d.map(i, j);
        let em = e.map(i, j);
        // (E(i→j) η_i)[r][c] − (η_j D(i→j))[r][c] = 0 for r < ej, c < di
        for r in 0..ej {
            for c in 0..di {
                let mut row = Vec::new();
                for k in 0..ei {
                    let v = em.get(r, k);
                    if !v.is_zero() {
                        row.push((var(i, k, c), v.clone()));
                    }
                }
                for k in 0..dj {
                    let v = dm.get(k, c);
                    if !v.is_zero() {
                        row.push((var(j, r, k), -v));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let mut m = Matrix::zeros(d.field, rows.len(), nvars);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row {
            let cur = m.get(r, c).clone();
            m.set(r, c, cur + v);
        }
    }
    let ker = m.kernel();
    (0..ker.cols())
        .map(|b| {
            (0..n)
                .map(|x| Matrix::from_fn(d.field, e.dims[x], d.dims[x], |r, c| ker.get(var(x, r, c), b).clone()))
                .collect()
        })
        .collect()
}
