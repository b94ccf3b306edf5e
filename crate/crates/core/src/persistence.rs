//! Persistence cosheaves of a map: derived pushforward of the constant cosheaf
//! and the splitting Hᵢ(Y) = H₀(X;Fᵢ) ⊕ H₁(X;Fᵢ₋₁) over a path.

use crate::complexes::CosheafComplex;
use crate::derived::projective_resolution;
use crate::error::{Error, Result};
use crate::functors::Push;
use crate::homology::homology_dims;
use crate::maps::PosetMap;
use crate::sheaf::CellCosheaf;

/// f_* applied termwise to the canonical projective resolution.
pub fn derived_pushforward(f: &PosetMap, g: &CellCosheaf) -> Result<CosheafComplex> {
    projective_resolution(g).complex.push(f, Push::Star)
}

/// The homology cosheaves Fᵢ = H_i(f_* P•), i = 0, 1, ….
pub fn persistence_cosheaves(f: &PosetMap, g: &CellCosheaf) -> Result<Vec<CellCosheaf>> {
    let c = derived_pushforward(f, g)?;
    Ok((0..=(-c.lo).max(0)).map(|i| c.homology_object(-i)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryRow {
    pub degree: usize,
    pub total: usize,
    /// H₀(X; Fᵢ)
    pub h0: usize,
    /// H₁(X; Fᵢ₋₁)
    pub h1: usize,
}

impl CorollaryRow {
    pub fn holds(&self) -> bool {
        self.total == self.h0 + self.h1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    pub rows: Vec<CorollaryRow>,
}

impl CorollaryReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(CorollaryRow::holds)
    }
}

/// Checks Hᵢ(Y;k) = H₀(X;Fᵢ) + H₁(X;Fᵢ₋₁) for the requested degrees.
pub fn check_persistence_corollary(f: &PosetMap, degrees: &[usize]) -> Result<CorollaryReport> {
    crate::barcode::path_order(&f.target)?;
    if f.source.compact_part().len() != f.source.len() || f.target.compact_part().len() != f.target.len() {
        return Err(Error::InvalidMap("source and target must be compact".into()));
    }
    let field = crate::field::Field::Rational;
    let k = CellCosheaf::constant(&f.source, field, 1);
    let total = homology_dims(&k);
    let fs = persistence_cosheaves(f, &k)?;
    let h = |i: usize, d: usize| fs.get(i).map(|c| homology_dims(c).get(d).copied().unwrap_or(0)).unwrap_or(0);
    let rows = degrees
        .iter()
        .map(|&i| CorollaryRow {
            degree: i,
            total: total.get(i).copied().unwrap_or(0),
            h0: h(i, 0),
            h1: if i == 0 { 0 } else { h(i - 1, 1) },
        })
        .collect();
    Ok(CorollaryReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::CellComplex;
    use crate::field::Field;
    use std::sync::Arc;

    #[test]
    fn identity_map_recovers_the_cosheaf() {
        let c = Arc::new(CellComplex::path(&["x", "y"], &["a"]).unwrap());
        let k = CellCosheaf::constant(&c, Field::Rational, 1);
        let fs = persistence_cosheaves(&PosetMap::identity(&c), &k).unwrap();
        assert_eq!(fs[0].dims, k.dims);
        assert!(fs[1..].iter().all(CellCosheaf::is_zero));
    }

    #[test]
    fn two_points_over_a_vertex() {
        let y = Arc::new(CellComplex::builder().cell("p", 0).cell("q", 0).build().unwrap());
        let x = Arc::new(CellComplex::builder().cell("v", 0).build().unwrap());
        let f = PosetMap::new(&y, &x, &[("p", "v"), ("q", "v")]).unwrap();
        let r = check_persistence_corollary(&f, &[0, 1]).unwrap();
        assert!(r.holds());
        assert_eq!(r.rows[0].total, 2);
    }
}
