//! Signed cochain complexes of sheaves, chain complexes of cosheaves, the four
//! (co)homology flavours, Čech homology of covers and Euler characteristics.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chain::{ChainComplex, ChainMap, Homology};
use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::sheaf::{CellCosheaf, CellSheaf, Morphism, Rep, Sheaf, Variance};

/// Offsets of each cell inside ⊕_{dim σ = k} F(σ), per dimension.
pub fn cell_offsets<K: Variance>(f: &Rep<K>) -> (Vec<usize>, Vec<usize>) {
    let c = &f.complex;
    let top = c.cells().iter().map(|x| x.dim + 1).max().unwrap_or(0);
    let mut totals = vec![0; top];
    let mut off = vec![0; c.len()];
    for i in 0..c.len() {
        let k = c.dim_of(i);
        off[i] = totals[k];
        totals[k] += f.dims[i];
    }
    (off, totals)
}

/// Coboundary δᵏ_c with block (τ, σ) = [σ:τ] ρ_{τ,σ}; degrees 0..=dim X.
pub fn cochain_complex_c(f: &CellSheaf) -> ChainComplex {
    let (off, totals) = cell_offsets(f);
    let field = f.field;
    if totals.is_empty() {
        return ChainComplex::zero(field);
    }
    let mut d: Vec<Matrix> = (0..totals.len() - 1).map(|k| Matrix::zeros(field, totals[k + 1], totals[k])).collect();
    let c = &f.complex;
    for &(s, t) in c.covers() {
        let k = c.dim_of(s);
        let m = f.map(s, t).scale(&field.int(c.sign(s, t) as i64));
        d[k].add_block(off[t], off[s], &m);
    }
    ChainComplex::new(field, 0, totals, d).expect("signed coboundary squares to zero on a valid complex")
}

/// Boundary ∂_k of a cosheaf with block (σ, τ) = [σ:τ] r_{σ,τ}; homological degrees 0..=dim X.
pub fn chain_complex_bm(f: &CellCosheaf) -> ChainComplex {
    let (off, totals) = cell_offsets(f);
    let field = f.field;
    if totals.is_empty() {
        return ChainComplex::zero(field).as_homological();
    }
    let mut b: Vec<Matrix> = (0..totals.len() - 1).map(|k| Matrix::zeros(field, totals[k], totals[k + 1])).collect();
    let c = &f.complex;
    for &(s, t) in c.covers() {
        let k = c.dim_of(s);
        let m = f.map(s, t).scale(&field.int(c.sign(s, t) as i64));
        b[k].add_block(off[s], off[t], &m);
    }
    ChainComplex::from_boundaries(field, totals, b).expect("signed boundary squares to zero on a valid complex")
}

/// The cochain map induced by a sheaf morphism, block diagonal over cells.
pub fn cochain_map(m: &Morphism<Sheaf>) -> ChainMap {
    let (a, b) = (cochain_complex_c(&m.source), cochain_complex_c(&m.target));
    let (so, st) = (cell_offsets(&m.source), cell_offsets(&m.target));
    let c = &m.source.complex;
    let mut comps = BTreeMap::new();
    for k in 0..st.1.len().max(so.1.len()) {
        let mut mat = Matrix::zeros(m.source.field, b.dim_c(k as i64), a.dim_c(k as i64));
        for x in c.cells_of_dim(k) {
            mat.set_block(st.0[x], so.0[x], &m.comps[x]);
        }
        comps.insert(k as i64, mat);
    }
    ChainMap { source: a, target: b, comps }
}

/// Restriction of an object to the cells with compact closure.
pub fn compact_restriction<K: Variance>(f: &Rep<K>) -> Rep<K> {
    f.restrict(&f.complex.compact_part())
}

/// Hᵏ_c(X; F).
pub fn cohomology_c(f: &CellSheaf, k: i64) -> Homology {
    cochain_complex_c(f).homology(k)
}

/// Ordinary Hᵏ(X; F): compactly supported cohomology of the compact part.
pub fn cohomology(f: &CellSheaf, k: i64) -> Homology {
    cochain_complex_c(&compact_restriction(f)).homology(k)
}

/// Borel–Moore H_k(X; F).
pub fn homology_bm(f: &CellCosheaf, k: i64) -> Homology {
    chain_complex_bm(f).homology(k)
}

/// Ordinary H_k(X; F) over the maximal compact subcomplex.
pub fn homology(f: &CellCosheaf, k: i64) -> Homology {
    chain_complex_bm(&compact_restriction(f)).homology(k)
}

/// Betti numbers in degrees 0..=dim X.
pub fn betti(c: &ChainComplex, top: usize) -> Vec<usize> {
    (0..=top as i64).map(|k| c.betti(k)).collect()
}

pub fn cohomology_c_dims(f: &CellSheaf) -> Vec<usize> {
    betti(&cochain_complex_c(f), f.complex.dim())
}

pub fn cohomology_dims(f: &CellSheaf) -> Vec<usize> {
    betti(&cochain_complex_c(&compact_restriction(f)), f.complex.dim())
}

pub fn homology_bm_dims(f: &CellCosheaf) -> Vec<usize> {
    betti(&chain_complex_bm(f), f.complex.dim())
}

pub fn homology_dims(f: &CellCosheaf) -> Vec<usize> {
    betti(&chain_complex_bm(&compact_restriction(f)), f.complex.dim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// Compact supports (sheaves) or Borel–Moore (cosheaves).
    Full,
    /// Ordinary: non-compact cells discarded.
    Ordinary,
}

/// The signed complex of a sheaf (compact supports) or cosheaf (Borel–Moore).
pub trait Assemble {
    fn assemble(&self) -> ChainComplex;
}

impl Assemble for CellSheaf {
    fn assemble(&self) -> ChainComplex {
        cochain_complex_c(self)
    }
}

impl Assemble for CellCosheaf {
    fn assemble(&self) -> ChainComplex {
        chain_complex_bm(self)
    }
}

/// Euler characteristic, computed from chains and checked against homology.
pub fn euler_characteristic<K: Variance>(f: &Rep<K>, flavor: Flavor) -> i64
where
    Rep<K>: Assemble,
{
    let c = match flavor {
        Flavor::Full => f.assemble(),
        Flavor::Ordinary => compact_restriction(f).assemble(),
    };
    let chi = c.euler_chain();
    assert_eq!(chi, c.euler_homology(), "rank-nullity");
    chi
}

/// A cover's nerve carrying a pre-cosheaf: values on intersections U_I with
/// extension maps to the faces U_{I∖k}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechData {
    pub values: CellCosheaf,
}

impl CechData {
    pub fn new(values: CellCosheaf) -> Result<CechData> {
        values.complex.vertex_sets()?;
        let bad = values.validate();
        if let Some((a, b)) = bad.first() {
            return Err(Error::InvalidSheaf(format!("extension maps do not commute on {a} < {b}")));
        }
        Ok(CechData { values })
    }

    pub fn nerve(&self) -> &Arc<CellComplex> {
        &self.values.complex
    }

    /// The Čech complex of a cover of X by open sets (up-sets), with value
    /// on U_I the free space on the connected components of the intersection.
    pub fn from_cover(x: &CellComplex, field: Field, cover: &[(&str, Vec<&str>)]) -> Result<CechData> {
        let sets: Vec<Vec<usize>> = cover
            .iter()
            .map(|(_, cells)| {
                let mut v = cells.iter().map(|c| x.index_of(c)).collect::<Result<Vec<_>>>()?;
                v.sort_unstable();
                v.dedup();
                Ok(v)
            })
            .collect::<Result<_>>()?;
        let n = sets.len();
        let mut simplices: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for mask in 1u64..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
            let inter: Vec<usize> = sets[idx[0]].iter().copied().filter(|c| idx.iter().all(|&i| sets[i].contains(c))).collect();
            if !inter.is_empty() {
                simplices.push((idx, inter));
            }
        }
        let facets: Vec<Vec<&str>> = simplices.iter().map(|(idx, _)| idx.iter().map(|&i| cover[i].0).collect()).collect();
        let nerve = Arc::new(CellComplex::simplicial(&facets)?);
        let comps: BTreeMap<Vec<usize>, Vec<Vec<usize>>> =
            simplices.iter().map(|(idx, inter)| (idx.clone(), x.poset().components(inter))).collect();
        let cell_of = |idx: &[usize]| -> usize {
            let names: Vec<&str> = idx.iter().map(|&i| cover[i].0).collect();
            let sep = if cover.iter().all(|(s, _)| s.chars().count() == 1) { "" } else { "." };
            nerve.index_of(&names.join(sep)).expect("nerve cell")
        };
        let mut dims = vec![0; nerve.len()];
        for (idx, cs) in &comps {
            dims[cell_of(idx)] = cs.len();
        }
        let mut maps = BTreeMap::new();
        for (idx, cs) in &comps {
            if idx.len() < 2 {
                continue;
            }
            for k in 0..idx.len() {
                let mut face = idx.clone();
                face.remove(k);
                let fc = &comps[&face];
                let m = Matrix::from_fn(field, fc.len(), cs.len(), |r, c| {
                    if fc[r].contains(&cs[c][0]) {
                        field.one()
                    } else {
                        field.zero()
                    }
                });
                maps.insert((cell_of(&face), cell_of(idx)), m);
            }
        }
        CechData::new(Rep::new(nerve, field, dims, maps)?)
    }

    pub fn complex(&self) -> ChainComplex {
        chain_complex_bm(&self.values)
    }

    /// Ȟ_p.
    pub fn homology(&self, p: i64) -> usize {
        self.complex().betti(p)
    }
}

pub fn cech_homology(d: &CechData, p: i64) -> usize {
    d.homology(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn open_interval() -> Arc<CellComplex> {
        Arc::new(
            CellComplex::builder()
                .cell("x", 0)
                .open_cell("a", 1)
                .open_cell("b", 1)
                .cover("x", "a", 1)
                .cover("x", "b", -1)
                .build()
                .unwrap(),
        )
    }

    #[test]
    fn open_interval_constant_sheaf() {
        let c = open_interval();
        let k = CellSheaf::constant(&c, q(), 1);
        let cc = cochain_complex_c(&k);
        assert_eq!(cc.d[0], Matrix::from_i64(q(), &[&[1], &[-1]], 1));
        assert_eq!(cohomology_c_dims(&k), vec![0, 1]);
    }

    #[test]
    fn two_simplex_constant() {
        let c = Arc::new(CellComplex::simplicial(&[vec!["1", "2", "3"]]).unwrap());
        let k = CellSheaf::constant(&c, q(), 1);
        assert_eq!(cohomology_dims(&k), vec![1, 0, 0]);
        assert_eq!(euler_characteristic(&k, Flavor::Ordinary), 1);
    }

    #[test]
    fn single_set_cover() {
        let x = CellComplex::path(&["x", "y"], &["a"]).unwrap();
        let all = vec!["x", "y", "a"];
        let d = CechData::from_cover(&x, q(), &[("U", all)]).unwrap();
        assert_eq!(d.homology(0), 1);
        assert_eq!(d.homology(1), 0);
    }
}
