//! Chain complexes of finite-dimensional spaces, homology with witnesses,
//! mapping cones, long exact sequences and double complexes.
//!
//! Complexes are stored cohomologically: `d(n)` goes from degree n to n+1. A
//! homologically indexed complex C_k is stored in degree −k and the flag
//! `homological` only changes how degrees are read and printed.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Quotient, Subspace};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub field: Field,
    /// Lowest cohomological degree stored.
    pub lo: i64,
    pub dims: Vec<usize>,
    /// d[k]: degree lo+k → lo+k+1; one fewer than `dims`.
    pub d: Vec<Matrix>,
    pub homological: bool,
}

/// H at one degree: cycles modulo boundaries with representative cycles.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i64,
    pub cycles: Subspace,
    pub quotient: Quotient,
    /// Columns are cycles whose classes form a basis.
    pub witnesses: Matrix,
}

impl Homology {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Class coordinates of cycles (columns of `z`).
    pub fn class_of(&self, z: &Matrix) -> Matrix {
        self.quotient.projection.mul(&self.cycles.coords(z))
    }
}

impl ChainComplex {
    /// Cohomological data starting at degree `lo`.
    pub fn new(field: Field, lo: i64, dims: Vec<usize>, d: Vec<Matrix>) -> Result<ChainComplex> {
        let c = ChainComplex { field, lo, dims, d, homological: false };
        c.check()?;
        Ok(c)
    }

    /// From boundary maps ∂_k: C_k → C_{k−1}, with `dims[k] = dim C_k` for k ≥ 0
    /// and `boundaries[k-1] = ∂_k`.
    pub fn from_boundaries(field: Field, dims: Vec<usize>, boundaries: Vec<Matrix>) -> Result<ChainComplex> {
        let n = dims.len();
        if n == 0 {
            return Ok(ChainComplex { field, lo: 0, dims, d: Vec::new(), homological: true });
        }
        if boundaries.len() + 1 != n {
            return Err(Error::NotComplex("need one boundary map per positive degree".into()));
        }
        let dims_c: Vec<usize> = dims.into_iter().rev().collect();
        let d: Vec<Matrix> = boundaries.into_iter().rev().collect();
        let c = ChainComplex { field, lo: -(n as i64 - 1), dims: dims_c, d, homological: true };
        c.check()?;
        Ok(c)
    }

    pub fn zero(field: Field) -> ChainComplex {
        ChainComplex { field, lo: 0, dims: Vec::new(), d: Vec::new(), homological: false }
    }

    pub fn as_homological(mut self) -> ChainComplex {
        self.homological = true;
        self
    }

    fn check(&self) -> Result<()> {
        if self.dims.is_empty() {
            return if self.d.is_empty() { Ok(()) } else { Err(Error::NotComplex("differentials without spaces".into())) };
        }
        if self.d.len() + 1 != self.dims.len() {
            return Err(Error::NotComplex("need one differential between consecutive degrees".into()));
        }
        for (k, m) in self.d.iter().enumerate() {
            if m.shape() != (self.dims[k + 1], self.dims[k]) {
                return Err(Error::NotComplex(format!("differential out of degree {} has the wrong shape", self.lo + k as i64)));
            }
        }
        for k in 1..self.d.len() {
            if !self.d[k].mul(&self.d[k - 1]).is_zero() {
                return Err(Error::NotComplex(format!("d∘d ≠ 0 at degree {}", self.lo + k as i64 - 1)));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// Highest stored cohomological degree (lo − 1 when empty).
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    /// Cohomological degree of an index in this complex's own convention.
    fn cdeg(&self, n: i64) -> i64 {
        if self.homological {
            -n
        } else {
            n
        }
    }

    /// Dimension at cohomological degree n.
    pub fn dim_c(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    /// Dimension in the complex's own indexing.
    pub fn dim(&self, n: i64) -> usize {
        self.dim_c(self.cdeg(n))
    }

    /// Differential out of cohomological degree n.
    pub fn diff_c(&self, n: i64) -> Matrix {
        if n >= self.lo && n < self.hi() {
            self.d[(n - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.field, self.dim_c(n + 1), self.dim_c(n))
        }
    }

    /// Cohomology at cohomological degree n.
    pub fn homology_c(&self, n: i64) -> Homology {
        let out = self.diff_c(n);
        let inc = self.diff_c(n - 1);
        let cycles = Subspace::from_basis(out.kernel());
        let rel = cycles.coords(&inc);
        let quotient = Quotient::of_relations(&rel);
        let witnesses = cycles.basis.mul(&quotient.section);
        Homology { degree: n, cycles, quotient, witnesses }
    }

    /// Homology in the complex's own indexing (H_n if homological, H^n otherwise).
    pub fn homology(&self, n: i64) -> Homology {
        self.homology_c(self.cdeg(n))
    }

    pub fn betti_c(&self, n: i64) -> usize {
        let out = self.diff_c(n).rank();
        let inc = self.diff_c(n - 1).rank();
        self.dim_c(n) - out - inc
    }

    pub fn betti(&self, n: i64) -> usize {
        self.betti_c(self.cdeg(n))
    }

    /// (degree, dimension) for every stored degree, in the complex's own indexing, ascending.
    pub fn betti_numbers(&self) -> Vec<(i64, usize)> {
        let mut v: Vec<(i64, usize)> = (self.lo..=self.hi()).map(|n| (self.cdeg(n), self.betti_c(n))).collect();
        v.sort_unstable();
        v
    }

    pub fn is_acyclic(&self) -> bool {
        (self.lo..=self.hi()).all(|n| self.betti_c(n) == 0)
    }

    pub fn euler_chain(&self) -> i64 {
        (self.lo..=self.hi()).map(|n| sign(n) * self.dim_c(n) as i64).sum()
    }

    pub fn euler_homology(&self) -> i64 {
        (self.lo..=self.hi()).map(|n| sign(n) * self.betti_c(n) as i64).sum()
    }

    /// Re-index onto a degree range containing both the current one and [lo, hi].
    pub fn widen(&self, lo: i64, hi: i64) -> ChainComplex {
        let (lo, hi) = (lo.min(self.lo), hi.max(self.hi()));
        let dims: Vec<usize> = (lo..=hi).map(|n| self.dim_c(n)).collect();
        let d = (lo..hi).map(|n| self.diff_c(n)).collect();
        ChainComplex { field: self.field, lo, dims, d, homological: self.homological }
    }

    /// C[k]: (C[k])^n = C^{n+k}, differential negated when k is odd.
    pub fn shift(&self, k: i64) -> ChainComplex {
        let s = if k % 2 == 0 { self.field.one() } else { -self.field.one() };
        ChainComplex {
            field: self.field,
            lo: self.lo - k,
            dims: self.dims.clone(),
            d: self.d.iter().map(|m| m.scale(&s)).collect(),
            homological: self.homological,
        }
    }

    pub fn direct_sum(&self, o: &ChainComplex) -> ChainComplex {
        let lo = self.lo.min(o.lo);
        let hi = self.hi().max(o.hi());
        let dims = (lo..=hi).map(|n| self.dim_c(n) + o.dim_c(n)).collect();
        let d = (lo..hi).map(|n| Matrix::block_diag(self.field, &[&self.diff_c(n), &o.diff_c(n)])).collect();
        ChainComplex { field: self.field, lo, dims, d, homological: self.homological }
    }

    /// Transport along invertible maps g(n): C^n → C^n (new differential g d g⁻¹).
    pub fn conjugate(&self, g: &BTreeMap<i64, Matrix>) -> ChainComplex {
        let get = |n: i64| g.get(&n).cloned().unwrap_or_else(|| Matrix::identity(self.field, self.dim_c(n)));
        let d = (self.lo..self.hi())
            .map(|n| get(n + 1).mul(&self.diff_c(n)).mul(&get(n).inverse().expect("invertible change of basis")))
            .collect();
        ChainComplex { d, ..self.clone() }
    }
}

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A degree-preserving map of complexes; missing components are zero.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub comps: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, comps: BTreeMap<i64, Matrix>) -> Result<ChainMap> {
        let m = ChainMap { source, target, comps };
        for (&n, c) in &m.comps {
            if c.shape() != (m.target.dim_c(n), m.source.dim_c(n)) {
                return Err(Error::IncompatibleShapes(format!("chain map component in degree {n}")));
            }
        }
        if !m.commutes() {
            return Err(Error::NotCommuting("chain map does not commute with differentials".into()));
        }
        Ok(m)
    }

    /// Component at cohomological degree n.
    pub fn comp(&self, n: i64) -> Matrix {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.source.field, self.target.dim_c(n), self.source.dim_c(n)))
    }

    fn range(&self) -> (i64, i64) {
        (self.source.lo.min(self.target.lo), self.source.hi().max(self.target.hi()))
    }

    pub fn commutes(&self) -> bool {
        let (lo, hi) = self.range();
        (lo - 1..=hi).all(|n| self.target.diff_c(n).mul(&self.comp(n)) == self.comp(n + 1).mul(&self.source.diff_c(n)))
    }

    /// The induced map on cohomology at degree n, in witness coordinates.
    pub fn on_homology(&self, n: i64) -> Matrix {
        let hs = self.source.homology_c(n);
        let ht = self.target.homology_c(n);
        ht.class_of(&self.comp(n).mul(&hs.witnesses))
    }

    /// cone(f)^n = A^{n+1} ⊕ B^n with d(a, b) = (−d a, f a + d b).
    pub fn cone(&self) -> ChainComplex {
        let (a, b) = (&self.source, &self.target);
        let field = a.field;
        let (lo, hi) = (b.lo.min(a.lo - 1), b.hi().max(a.hi() - 1));
        let dims: Vec<usize> = (lo..=hi).map(|n| a.dim_c(n + 1) + b.dim_c(n)).collect();
        let d = (lo..hi)
            .map(|n| {
                let (a1, b0) = (a.dim_c(n + 1), b.dim_c(n));
                let (a2, b1) = (a.dim_c(n + 2), b.dim_c(n + 1));
                let mut m = Matrix::zeros(field, a2 + b1, a1 + b0);
                m.set_block(0, 0, &a.diff_c(n + 1).neg());
                m.set_block(a2, 0, &self.comp(n + 1));
                m.set_block(a2, a1, &b.diff_c(n));
                m
            })
            .collect();
        ChainComplex { field, lo, dims, d, homological: false }
    }

    pub fn is_quasi_isomorphism(&self) -> bool {
        self.cone().is_acyclic()
    }
}

/// A long exact sequence listed left to right with the maps between nodes.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    /// (label, degree, dimension): label is "A", "B" or "C".
    pub nodes: Vec<(char, i64, usize)>,
    pub maps: Vec<Matrix>,
}

impl LongExactSequence {
    /// Exactness at every node, with zero spaces beyond both ends.
    pub fn is_exact(&self) -> bool {
        let n = self.nodes.len();
        (0..n).all(|k| {
            let dim = self.nodes[k].2;
            let rin = if k == 0 { 0 } else { self.maps[k - 1].rank() };
            let rout = if k == n - 1 { 0 } else { self.maps[k].rank() };
            let composes = k == 0 || k == n - 1 || self.maps[k].mul(&self.maps[k - 1]).is_zero();
            composes && rin + rout == dim
        })
    }
}

/// The long exact cohomology sequence of 0 → A → B → C → 0.
pub fn les_from_ses(i: &ChainMap, q: &ChainMap) -> Result<LongExactSequence> {
    let (a, b, c) = (&i.source, &i.target, &q.target);
    if *b != q.source {
        return Err(Error::IncompatibleShapes("maps are not composable".into()));
    }
    if !i.commutes() || !q.commutes() {
        return Err(Error::NotCommuting("short exact sequence maps are not chain maps".into()));
    }
    let lo = a.lo.min(b.lo).min(c.lo);
    let hi = a.hi().max(b.hi()).max(c.hi());
    for n in lo..=hi {
        let (im, qm) = (i.comp(n), q.comp(n));
        if !qm.mul(&im).is_zero() || im.rank() != a.dim_c(n) || qm.rank() != c.dim_c(n) || im.rank() + c.dim_c(n) != b.dim_c(n) {
            return Err(Error::NotExact(format!("degree {n}")));
        }
    }
    let mut nodes = Vec::new();
    let mut maps = Vec::new();
    for n in lo..=hi {
        let (ha, hb, hc) = (a.homology_c(n), b.homology_c(n), c.homology_c(n));
        let ha1 = a.homology_c(n + 1);
        nodes.push(('A', n, ha.dim()));
        nodes.push(('B', n, hb.dim()));
        nodes.push(('C', n, hc.dim()));
        maps.push(i.on_homology(n));
        maps.push(q.on_homology(n));
        if n < hi {
            // lift, differentiate, pull back along i
            let lift = q.comp(n).solve(&hc.witnesses).ok_or_else(|| Error::NotExact(format!("degree {n}")))?;
            let db = b.diff_c(n).mul(&lift);
            let pre = i.comp(n + 1).solve(&db).ok_or_else(|| Error::NotExact(format!("degree {}", n + 1)))?;
            maps.push(ha1.class_of(&pre));
        }
    }
    let les = LongExactSequence { nodes, maps };
    if !les.is_exact() {
        return Err(Error::NotExact("long exact sequence".into()));
    }
    Ok(les)
}

/// K^{p,q} with dh: (p,q) → (p+1,q) and dv: (p,q) → (p,q+1) commuting.
/// Totalization twists the vertical differential by (−1)^p.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    pub field: Field,
    pub dims: BTreeMap<(i64, i64), usize>,
    pub dh: BTreeMap<(i64, i64), Matrix>,
    pub dv: BTreeMap<(i64, i64), Matrix>,
}

impl DoubleComplex {
    pub fn new(field: Field) -> DoubleComplex {
        DoubleComplex { field, dims: BTreeMap::new(), dh: BTreeMap::new(), dv: BTreeMap::new() }
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn h(&self, p: i64, q: i64) -> Matrix {
        self.dh.get(&(p, q)).cloned().unwrap_or_else(|| Matrix::zeros(self.field, self.dim(p + 1, q), self.dim(p, q)))
    }

    pub fn v(&self, p: i64, q: i64) -> Matrix {
        self.dv.get(&(p, q)).cloned().unwrap_or_else(|| Matrix::zeros(self.field, self.dim(p, q + 1), self.dim(p, q)))
    }

    fn check(&self) -> Result<()> {
        for (&(p, q), &n) in &self.dims {
            let (h, v) = (self.h(p, q), self.v(p, q));
            if h.cols() != n || v.cols() != n || h.rows() != self.dim(p + 1, q) || v.rows() != self.dim(p, q + 1) {
                return Err(Error::IncompatibleShapes(format!("differentials at ({p}, {q})")));
            }
            if !self.h(p + 1, q).mul(&h).is_zero() || !self.v(p, q + 1).mul(&v).is_zero() {
                return Err(Error::NotComplex(format!("row or column through ({p}, {q})")));
            }
            if self.v(p + 1, q).mul(&h) != self.h(p, q + 1).mul(&v) {
                return Err(Error::NotAnticommuting(format!("square at ({p}, {q})")));
            }
        }
        Ok(())
    }

    pub fn totalize(&self) -> Result<ChainComplex> {
        self.check()?;
        if self.dims.is_empty() {
            return Ok(ChainComplex::zero(self.field));
        }
        let degs: Vec<i64> = self.dims.keys().map(|&(p, q)| p + q).collect();
        let lo = *degs.iter().min().unwrap();
        let hi = *degs.iter().max().unwrap();
        let cells = |n: i64| -> Vec<(i64, i64)> { self.dims.keys().copied().filter(|&(p, q)| p + q == n).collect() };
        let offsets = |n: i64| -> (BTreeMap<(i64, i64), usize>, usize) {
            let mut o = BTreeMap::new();
            let mut t = 0;
            for pq in cells(n) {
                o.insert(pq, t);
                t += self.dim(pq.0, pq.1);
            }
            (o, t)
        };
        let mut dims = Vec::new();
        let mut d = Vec::new();
        for n in lo..=hi {
            let (src, s_total) = offsets(n);
            dims.push(s_total);
            if n == hi {
                break;
            }
            let (dst, t_total) = offsets(n + 1);
            let mut m = Matrix::zeros(self.field, t_total, s_total);
            for (&(p, q), &c0) in &src {
                if let Some(&r0) = dst.get(&(p + 1, q)) {
                    m.set_block(r0, c0, &self.h(p, q));
                }
                if let Some(&r0) = dst.get(&(p, q + 1)) {
                    let v = self.v(p, q);
                    m.set_block(r0, c0, &if p.rem_euclid(2) == 0 { v } else { v.neg() });
                }
            }
            d.push(m);
        }
        ChainComplex::new(self.field, lo, dims, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn acyclic_identity() {
        let c = ChainComplex::new(q(), 0, vec![1, 1], vec![Matrix::identity(q(), 1)]).unwrap();
        assert!(c.is_acyclic());
    }

    #[test]
    fn not_a_complex() {
        let one = Matrix::identity(q(), 1);
        assert!(matches!(ChainComplex::new(q(), 0, vec![1, 1, 1], vec![one.clone(), one]), Err(Error::NotComplex(_))));
    }

    #[test]
    fn homological_indexing() {
        // circle: two vertices, two edges
        let b1 = Matrix::from_i64(q(), &[&[-1, -1], &[1, 1]], 2);
        let c = ChainComplex::from_boundaries(q(), vec![2, 2], vec![b1]).unwrap();
        assert_eq!(c.betti(0), 1);
        assert_eq!(c.betti(1), 1);
        assert_eq!(c.homology(1).witnesses, Matrix::from_i64(q(), &[&[-1], &[1]], 1));
        assert_eq!(c.euler_chain(), c.euler_homology());
    }

    #[test]
    fn identity_ses() {
        let c = ChainComplex::new(q(), 0, vec![2, 2], vec![Matrix::from_i64(q(), &[&[1, 0], &[0, 0]], 2)]).unwrap();
        let z = ChainComplex::new(q(), 0, vec![0, 0], vec![Matrix::zeros(q(), 0, 0)]).unwrap();
        let id: BTreeMap<i64, Matrix> = [(0, Matrix::identity(q(), 2)), (1, Matrix::identity(q(), 2))].into();
        let i = ChainMap::new(c.clone(), c.clone(), id).unwrap();
        let p = ChainMap::new(c.clone(), z, BTreeMap::new()).unwrap();
        let les = les_from_ses(&i, &p).unwrap();
        assert!(les.is_exact());
        assert_eq!(les.nodes.len(), 6);
        assert!(i.is_quasi_isomorphism());
    }

    #[test]
    fn one_row_totalization() {
        let mut dc = DoubleComplex::new(q());
        dc.dims.insert((0, 0), 1);
        dc.dims.insert((1, 0), 2);
        dc.dh.insert((0, 0), Matrix::from_i64(q(), &[&[1], &[1]], 1));
        let t = dc.totalize().unwrap();
        assert_eq!(t.dims, vec![1, 2]);
        assert_eq!(t.d[0], dc.dh[&(0, 0)]);
    }

    #[test]
    fn square_must_commute() {
        let mut dc = DoubleComplex::new(q());
        for pq in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            dc.dims.insert(pq, 1);
        }
        let one = Matrix::identity(q(), 1);
        dc.dh.insert((0, 0), one.clone());
        dc.dh.insert((0, 1), one.clone());
        dc.dv.insert((0, 0), one.clone());
        dc.dv.insert((1, 0), one.neg());
        assert!(matches!(dc.totalize(), Err(Error::NotAnticommuting(_))));
        dc.dv.insert((1, 0), one);
        let t = dc.totalize().unwrap();
        assert!(t.is_acyclic());
    }
}
