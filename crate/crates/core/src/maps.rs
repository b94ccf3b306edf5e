//! Order-preserving and cellular maps between cell complexes, and barycentric subdivision.

use std::collections::HashMap;
use std::sync::Arc;

use crate::complex::{Cell, CellComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    pub source: Arc<CellComplex>,
    pub target: Arc<CellComplex>,
    pub assign: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    NotOrderPreserving { lower: String, upper: String },
    RaisesDimension { cell: String, image: String },
}

impl std::fmt::Display for MapViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MapViolation::NotOrderPreserving { lower, upper } => {
                write!(f, "{lower} <= {upper} but their images are not comparable that way")
            }
            MapViolation::RaisesDimension { cell, image } => write!(f, "{cell} maps to higher-dimensional {image}"),
        }
    }
}

impl PosetMap {
    /// `pairs` gives the image of every source cell by id.
    pub fn new(source: &Arc<CellComplex>, target: &Arc<CellComplex>, pairs: &[(&str, &str)]) -> Result<PosetMap> {
        let mut assign = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            assign[source.index_of(a)?] = target.index_of(b)?;
        }
        if let Some(i) = assign.iter().position(|&x| x == usize::MAX) {
            return Err(Error::InvalidMap(format!("no image given for {}", source.id(i))));
        }
        Ok(PosetMap { source: source.clone(), target: target.clone(), assign })
    }

    pub fn identity(c: &Arc<CellComplex>) -> PosetMap {
        PosetMap { source: c.clone(), target: c.clone(), assign: (0..c.len()).collect() }
    }

    /// The map to the one-point complex.
    pub fn to_point(c: &Arc<CellComplex>) -> PosetMap {
        let pt = Arc::new(CellComplex::builder().cell("pt", 0).build().expect("point"));
        PosetMap { source: c.clone(), target: pt, assign: vec![0; c.len()] }
    }

    pub fn violations(&self) -> Vec<MapViolation> {
        self.source
            .covers()
            .iter()
            .filter(|&&(a, b)| !self.target.leq(self.assign[a], self.assign[b]))
            .map(|&(a, b)| MapViolation::NotOrderPreserving {
                lower: self.source.id(a).into(),
                upper: self.source.id(b).into(),
            })
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn check(&self) -> Result<()> {
        match self.violations().first() {
            Some(v) => Err(Error::InvalidMap(v.to_string())),
            None => Ok(()),
        }
    }

    /// f⁻¹(y) in source index order.
    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.source.len()).filter(|&x| self.assign[x] == y).collect()
    }

    pub fn compose(&self, then: &PosetMap) -> Result<PosetMap> {
        if *self.target != *then.source {
            return Err(Error::InvalidMap("maps are not composable".into()));
        }
        let assign = self.assign.iter().map(|&y| then.assign[y]).collect();
        Ok(PosetMap { source: self.source.clone(), target: then.target.clone(), assign })
    }
}

/// A poset map between complexes with per-cell fiber-compactness flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularMap {
    pub map: PosetMap,
    pub fiber_compact: Vec<bool>,
}

impl CellularMap {
    /// All flags default to true.
    pub fn new(map: PosetMap) -> CellularMap {
        let n = map.source.len();
        CellularMap { map, fiber_compact: vec![true; n] }
    }

    pub fn with_open_fibers(mut self, cells: &[&str]) -> Result<CellularMap> {
        for c in cells {
            let i = self.map.source.index_of(c)?;
            self.fiber_compact[i] = false;
        }
        Ok(self)
    }

    pub fn violations(&self) -> Vec<MapViolation> {
        let m = &self.map;
        let mut v = m.violations();
        for x in 0..m.source.len() {
            let y = m.assign[x];
            if m.target.dim_of(y) > m.source.dim_of(x) {
                v.push(MapViolation::RaisesDimension { cell: m.source.id(x).into(), image: m.target.id(y).into() });
            }
        }
        v
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty() && self.fiber_compact.len() == self.map.source.len()
    }
}

/// Barycentric subdivision of the compact part of `c`: one cell per chain
/// σ₀ < … < σ_k of compact cells, named by joining ids with '<'. Signs follow
/// the alternating rule with barycentres ordered by (dimension, id). The
/// returned poset map sends a chain to its top cell.
pub fn barycentric_subdivision(c: &Arc<CellComplex>) -> Result<(Arc<CellComplex>, PosetMap)> {
    let p = c.poset();
    let compact = c.compact_part();
    let mut chains: Vec<Vec<usize>> = compact.iter().map(|&i| vec![i]).collect();
    let mut frontier = chains.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for ch in &frontier {
            let top = *ch.last().unwrap();
            for &i in &compact {
                if p.lt(top, i) {
                    let mut e = ch.clone();
                    e.push(i);
                    next.push(e);
                }
            }
        }
        chains.extend(next.iter().cloned());
        frontier = next;
    }
    let name = |ch: &[usize]| ch.iter().map(|&i| c.id(i)).collect::<Vec<_>>().join("<");
    let cells: Vec<Cell> = chains.iter().map(|ch| Cell { id: name(ch), dim: ch.len() - 1, compact: true }).collect();
    let mut covers = Vec::new();
    for ch in chains.iter().filter(|ch| ch.len() > 1) {
        for k in 0..ch.len() {
            let mut f = ch.clone();
            f.remove(k);
            covers.push((name(&f), name(ch), if k % 2 == 0 { 1 } else { -1 }));
        }
    }
    let sub = Arc::new(CellComplex::new(cells, covers)?);
    let top: HashMap<String, usize> = chains.iter().map(|ch| (name(ch), *ch.last().unwrap())).collect();
    let assign = (0..sub.len()).map(|i| top[sub.id(i)]).collect();
    Ok((sub.clone(), PosetMap { source: sub, target: c.clone(), assign }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_open() -> Arc<CellComplex> {
        Arc::new(CellComplex::builder().cell("x", 0).open_cell("a", 1).cover("x", "a", -1).build().unwrap())
    }

    fn half_open_square() -> Arc<CellComplex> {
        Arc::new(
            CellComplex::builder()
                .cell("x", 0)
                .open_cell("a", 1)
                .open_cell("b", 1)
                .open_cell("s", 2)
                .cover("x", "a", -1)
                .cover("x", "b", -1)
                .cover("a", "s", 1)
                .cover("b", "s", -1)
                .build()
                .unwrap(),
        )
    }

    #[test]
    fn poset_but_not_cellular() {
        let src = half_open();
        let tgt = half_open_square();
        let f = PosetMap::new(&src, &tgt, &[("x", "a"), ("a", "s")]).unwrap();
        assert!(f.is_valid());
        let g = CellularMap::new(f);
        assert!(!g.is_valid());
        assert_eq!(g.violations().len(), 2);
    }

    #[test]
    fn subdivision_of_interval() {
        let c = Arc::new(CellComplex::path(&["x", "y"], &["a"]).unwrap());
        let (s, m) = barycentric_subdivision(&c).unwrap();
        assert_eq!(s.len(), 5);
        assert!(s.validate().passed());
        assert!(m.is_valid());
        assert!(!CellularMap::new(m.clone()).is_valid());
        assert_eq!(m.fiber(c.index_of("a").unwrap()).len(), 3);
    }

    #[test]
    fn subdivision_twice() {
        let c = Arc::new(CellComplex::path(&["x", "y"], &["a"]).unwrap());
        let (s, _) = barycentric_subdivision(&c).unwrap();
        let (t, m) = barycentric_subdivision(&s).unwrap();
        assert_eq!(t.len(), 9);
        assert!(m.is_valid());
        let xa = t.index_of("x<x<a").unwrap();
        assert_eq!(s.id(m.assign[xa]), "x<a");
    }

    #[test]
    fn identity_is_valid() {
        let c = half_open_square();
        assert!(CellularMap::new(PosetMap::identity(&c)).is_valid());
        assert!(c.validate().passed());
    }
}
