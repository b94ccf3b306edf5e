//! Cell complexes: face posets with dimensions, compactness flags and signed incidences.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::Poset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
    pub compact: bool,
}

/// Cells are stored in (dimension, id) order; that order fixes every basis downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    poset: Poset,
    op: Poset,
    cells: Vec<Cell>,
    signs: HashMap<(usize, usize), i8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    CoverDimension { face: String, coface: String },
    Diamond { lower: String, upper: String, between: Vec<String> },
    Sign { lower: String, upper: String, via: (String, String) },
    CompactFlag { face: String, coface: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CoverDimension { face, coface } => {
                write!(f, "cover {face} < {coface} does not raise dimension by one")
            }
            Violation::Diamond { lower, upper, between } => {
                write!(f, "diamond {lower} < {upper} has {} intermediate cells [{}]", between.len(), between.join(", "))
            }
            Violation::Sign { lower, upper, via } => {
                write!(f, "diamond {lower} < {upper} via {} and {}: signs do not cancel", via.0, via.1)
            }
            Violation::CompactFlag { face, coface } => {
                write!(f, "{coface} has compact closure but its face {face} does not")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Incremental construction of a complex from named cells and signed covers.
#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    cells: Vec<Cell>,
    covers: Vec<(String, String, i8)>,
}

impl ComplexBuilder {
    pub fn new() -> ComplexBuilder {
        ComplexBuilder::default()
    }

    pub fn cell(mut self, id: &str, dim: usize) -> Self {
        self.cells.push(Cell { id: id.to_string(), dim, compact: true });
        self
    }

    /// A cell whose closure is not compact.
    pub fn open_cell(mut self, id: &str, dim: usize) -> Self {
        self.cells.push(Cell { id: id.to_string(), dim, compact: false });
        self
    }

    pub fn cover(mut self, face: &str, coface: &str, sign: i8) -> Self {
        self.covers.push((face.to_string(), coface.to_string(), sign));
        self
    }

    pub fn build(self) -> Result<CellComplex> {
        CellComplex::new(self.cells, self.covers)
    }
}

impl CellComplex {
    pub fn new(mut cells: Vec<Cell>, covers: Vec<(String, String, i8)>) -> Result<CellComplex> {
        cells.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
        let names: Vec<String> = cells.iter().map(|c| c.id.clone()).collect();
        let pairs: Vec<(String, String)> = covers.iter().map(|(a, b, _)| (a.clone(), b.clone())).collect();
        let poset = Poset::new(names, &pairs).map_err(|e| match e {
            Error::UnknownElement(x) => Error::UnknownCell(x),
            e => e,
        })?;
        let mut signs = HashMap::new();
        for (a, b, s) in covers {
            if s != 1 && s != -1 {
                return Err(Error::InvalidComplex(format!("sign of ({a}, {b}) must be +1 or -1")));
            }
            signs.insert((poset.index_of(&a)?, poset.index_of(&b)?), s);
        }
        let op = poset.opposite();
        Ok(CellComplex { poset, op, cells, signs })
    }

    pub fn builder() -> ComplexBuilder {
        ComplexBuilder::new()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// The opposite poset, on which cosheaves are covariant.
    pub fn op_poset(&self) -> &Poset {
        &self.op
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn id(&self, i: usize) -> &str {
        &self.cells[i].id
    }

    pub fn dim_of(&self, i: usize) -> usize {
        self.cells[i].dim
    }

    pub fn is_compact(&self, i: usize) -> bool {
        self.cells[i].compact
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.poset.index_of(id).map_err(|_| Error::UnknownCell(id.to_string()))
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    /// Cells of dimension k, in basis order.
    pub fn cells_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.cells[i].dim == k).collect()
    }

    /// The incidence number [σ:τ]; zero unless σ ⋖ τ.
    pub fn sign(&self, face: usize, coface: usize) -> i8 {
        self.signs.get(&(face, coface)).copied().unwrap_or(0)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        self.poset.covers()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn validate(&self) -> Report {
        let mut v = Vec::new();
        for &(a, b) in self.covers() {
            if self.dim_of(b) != self.dim_of(a) + 1 {
                v.push(Violation::CoverDimension { face: self.id(a).into(), coface: self.id(b).into() });
            }
            if self.is_compact(b) && !self.is_compact(a) {
                v.push(Violation::CompactFlag { face: self.id(a).into(), coface: self.id(b).into() });
            }
        }
        let n = self.len();
        for s in 0..n {
            for t in 0..n {
                if !self.leq(s, t) || self.dim_of(t) != self.dim_of(s) + 2 {
                    continue;
                }
                let mid: Vec<usize> = (0..n).filter(|&m| self.poset.lt(s, m) && self.poset.lt(m, t)).collect();
                if mid.len() != 2 {
                    v.push(Violation::Diamond {
                        lower: self.id(s).into(),
                        upper: self.id(t).into(),
                        between: mid.iter().map(|&m| self.id(m).to_string()).collect(),
                    });
                    continue;
                }
                let total: i32 = mid.iter().map(|&m| self.sign(s, m) as i32 * self.sign(m, t) as i32).sum();
                if total != 0 {
                    v.push(Violation::Sign {
                        lower: self.id(s).into(),
                        upper: self.id(t).into(),
                        via: (self.id(mid[0]).into(), self.id(mid[1]).into()),
                    });
                }
            }
        }
        Report { violations: v }
    }

    /// Subcomplex on the given cells (kept in basis order) with inherited data.
    /// Returns the complex and, for each new index, the old one.
    pub fn restrict(&self, keep: &[usize]) -> (CellComplex, Vec<usize>) {
        let mut keep: Vec<usize> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        let cells = keep.iter().map(|&i| self.cells[i].clone()).collect();
        let covers = self
            .covers()
            .iter()
            .filter(|(a, b)| set.contains(a) && set.contains(b))
            .map(|&(a, b)| (self.id(a).to_string(), self.id(b).to_string(), self.sign(a, b)))
            .collect();
        (CellComplex::new(cells, covers).expect("subcomplex of a valid complex"), keep)
    }

    /// Indices of the cells with compact closure.
    pub fn compact_part(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_compact(i)).collect()
    }

    /// The complex with every cell marked compact or not per `f`.
    pub fn with_compactness(&self, f: impl Fn(&Cell) -> bool) -> CellComplex {
        let mut c = self.clone();
        for cell in c.cells.iter_mut() {
            cell.compact = f(cell);
        }
        c
    }

    /// Vertex sets of every cell, when the complex is the face poset of a simplicial complex.
    pub fn vertex_sets(&self) -> Result<Vec<BTreeSet<usize>>> {
        let verts: Vec<BTreeSet<usize>> =
            (0..self.len()).map(|i| self.poset.closure(i).into_iter().filter(|&v| self.dim_of(v) == 0).collect()).collect();
        let mut seen = BTreeMap::new();
        for i in 0..self.len() {
            if verts[i].len() != self.dim_of(i) + 1 {
                return Err(Error::NotSimplicial(format!("{} has {} vertices", self.id(i), verts[i].len())));
            }
            if let Some(j) = seen.insert(verts[i].clone(), i) {
                return Err(Error::NotSimplicial(format!("{} and {} share a vertex set", self.id(j), self.id(i))));
            }
        }
        for i in 0..self.len() {
            let faces: BTreeSet<BTreeSet<usize>> = self.poset.down_covers(i).iter().map(|&f| verts[f].clone()).collect();
            let d = self.dim_of(i);
            if d > 0 {
                let expected: BTreeSet<BTreeSet<usize>> =
                    verts[i].iter().map(|v| verts[i].iter().copied().filter(|w| w != v).collect()).collect();
                if faces != expected {
                    return Err(Error::NotSimplicial(format!("faces of {} are not its codimension-one subsets", self.id(i))));
                }
            }
        }
        Ok(verts)
    }

    /// Reassigns signs by the alternating-position rule: deleting the vertex in
    /// position k (in `vertex_order`) gives incidence (-1)^k.
    pub fn simplicial_signs(&self, vertex_order: &[String]) -> Result<CellComplex> {
        let verts = self.vertex_sets()?;
        let rank: HashMap<usize, usize> = {
            let mut r = HashMap::new();
            for v in (0..self.len()).filter(|&i| self.dim_of(i) == 0) {
                let pos = vertex_order
                    .iter()
                    .position(|x| x == self.id(v))
                    .ok_or_else(|| Error::NotSimplicial(format!("vertex {} missing from the order", self.id(v))))?;
                r.insert(v, pos);
            }
            r
        };
        let mut c = self.clone();
        for &(a, b) in self.covers() {
            let mut vs: Vec<usize> = verts[b].iter().copied().collect();
            vs.sort_by_key(|v| rank[v]);
            let removed = *verts[b].difference(&verts[a]).next().unwrap();
            let k = vs.iter().position(|&v| v == removed).unwrap();
            c.signs.insert((a, b), if k % 2 == 0 { 1 } else { -1 });
        }
        Ok(c)
    }

    /// Face poset of the simplicial complex generated by `facets`, signed by the
    /// order in which vertices first appear. Cell ids concatenate vertex names.
    pub fn simplicial(facets: &[Vec<&str>]) -> Result<CellComplex> {
        let mut order: Vec<String> = Vec::new();
        for f in facets {
            for v in f {
                if !order.iter().any(|o| o == v) {
                    order.push(v.to_string());
                }
            }
        }
        let sep = if order.iter().all(|v| v.chars().count() == 1) { "" } else { "." };
        let mut simplices: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let mut idx: Vec<usize> = f.iter().map(|v| order.iter().position(|o| o == v).unwrap()).collect();
            idx.sort_unstable();
            idx.dedup();
            let n = idx.len();
            for mask in 1u64..(1 << n) {
                simplices.insert((0..n).filter(|b| mask >> b & 1 == 1).map(|b| idx[b]).collect());
            }
        }
        let name = |s: &Vec<usize>| s.iter().map(|&i| order[i].as_str()).collect::<Vec<_>>().join(sep);
        let cells = simplices.iter().map(|s| Cell { id: name(s), dim: s.len() - 1, compact: true }).collect();
        let mut covers = Vec::new();
        for s in &simplices {
            if s.len() < 2 {
                continue;
            }
            for k in 0..s.len() {
                let mut f = s.clone();
                f.remove(k);
                covers.push((name(&f), name(s), if k % 2 == 0 { 1 } else { -1 }));
            }
        }
        CellComplex::new(cells, covers)
    }

    /// The dual block complex of a compact n-manifold complex: σ* has dimension
    /// n − dim σ, the order is reversed and incidences are kept. Ids get a `*`.
    pub fn dual(&self) -> Result<CellComplex> {
        let n = self.dim();
        let star = |i: usize| format!("{}*", self.cells[i].id);
        let cells = (0..self.len()).map(|i| Cell { id: star(i), dim: n - self.cells[i].dim, compact: true }).collect();
        let covers = self.poset.covers().iter().map(|&(a, b)| (star(b), star(a), self.sign(a, b))).collect();
        CellComplex::new(cells, covers)
    }

    /// Compact path v0 - e0 - v1 - ... - v_n with edges oriented left to right.
    pub fn path(vertices: &[&str], edges: &[&str]) -> Result<CellComplex> {
        if vertices.len() != edges.len() + 1 {
            return Err(Error::InvalidComplex("a path needs one more vertex than edges".into()));
        }
        let mut b = CellComplex::builder();
        for v in vertices {
            b = b.cell(v, 0);
        }
        for (k, e) in edges.iter().enumerate() {
            b = b.cell(e, 1).cover(vertices[k], e, -1).cover(vertices[k + 1], e, 1);
        }
        b.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ComplexBuilder {
        CellComplex::builder()
            .cell("p", 0)
            .cell("q", 0)
            .cell("r", 0)
            .cell("s", 0)
            .cell("bot", 1)
            .cell("rgt", 1)
            .cell("top", 1)
            .cell("lft", 1)
            .cell("sq", 2)
            .cover("p", "bot", -1)
            .cover("q", "bot", 1)
            .cover("q", "rgt", -1)
            .cover("r", "rgt", 1)
            .cover("s", "top", -1)
            .cover("r", "top", 1)
            .cover("p", "lft", -1)
            .cover("s", "lft", 1)
            .cover("bot", "sq", 1)
            .cover("rgt", "sq", 1)
            .cover("top", "sq", -1)
    }

    #[test]
    fn interval_passes() {
        let c = CellComplex::builder().cell("x", 0).cell("y", 0).cell("a", 1).cover("x", "a", -1).cover("y", "a", 1).build().unwrap();
        assert!(c.validate().passed());
        assert_eq!(c.cells_of_dim(0), vec![0, 1]);
    }

    #[test]
    fn square_sign_flip_is_named() {
        let good = square().cover("lft", "sq", -1).build().unwrap();
        assert!(good.validate().passed());
        let bad = square().cover("lft", "sq", 1).build().unwrap();
        let r = bad.validate();
        assert_eq!(r.violations.len(), 2);
        assert!(r.violations.iter().all(|v| matches!(v, Violation::Sign { upper, .. } if upper == "sq")));
    }

    #[test]
    fn points_pass() {
        let c = CellComplex::builder().cell("u", 0).cell("v", 0).build().unwrap();
        assert!(c.validate().passed());
    }

    #[test]
    fn triangle_signs() {
        let t = CellComplex::simplicial(&[vec!["1", "2", "3"]]).unwrap();
        assert!(t.validate().passed());
        let s = |a: &str, b: &str| t.sign(t.index_of(a).unwrap(), t.index_of(b).unwrap());
        assert_eq!((s("12", "123"), s("13", "123"), s("23", "123")), (1, -1, 1));
        assert_eq!((s("1", "12"), s("2", "12")), (-1, 1));
        let order: Vec<String> = ["1", "2", "3"].iter().map(|s| s.to_string()).collect();
        assert_eq!(t.simplicial_signs(&order).unwrap(), t);
    }

    #[test]
    fn not_simplicial() {
        let c = CellComplex::path(&["x", "y"], &["a"]).unwrap();
        let sq = square().cover("lft", "sq", -1).build().unwrap();
        assert!(c.vertex_sets().is_ok());
        assert!(matches!(sq.vertex_sets(), Err(Error::NotSimplicial(_))));
    }
}
