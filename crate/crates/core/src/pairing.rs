//! The coend G ⊗_X F of a cosheaf with a sheaf.

use crate::chain::ChainComplex;
use crate::complexes::CosheafComplex;
use crate::error::{Error, Result};
use crate::linalg::Quotient;
use crate::matrix::Matrix;
use crate::sheaf::{CellCosheaf, CellSheaf, Cosheaf, Morphism};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoendResult {
    /// Offsets of G(w)⊗F(w) inside ⊕_w G(w)⊗F(w); pair basis is cosheaf index major.
    pub offsets: Vec<usize>,
    pub quotient: Quotient,
    /// G(w)⊗F(w) → G ⊗_X F.
    pub injections: Vec<Matrix>,
}

impl CoendResult {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

/// ⊕_w G(w)⊗F(w) modulo r(g)⊗f ~ g⊗ρ(f) for every cover σ ⋖ τ.
pub fn coend(g: &CellCosheaf, f: &CellSheaf) -> Result<CoendResult> {
    if *g.complex != *f.complex || g.field != f.field {
        return Err(Error::IncompatibleShapes("coend of objects on different complexes".into()));
    }
    let field = f.field;
    let c = &f.complex;
    let mut offsets = Vec::with_capacity(c.len());
    let mut total = 0;
    for w in 0..c.len() {
        offsets.push(total);
        total += g.dims[w] * f.dims[w];
    }
    let mut cols = Vec::new();
    for &(s, t) in c.covers() {
        let n = g.dims[t] * f.dims[s];
        if n == 0 {
            continue;
        }
        let mut rel = Matrix::zeros(field, total, n);
        rel.set_block(offsets[s], 0, &g.map(s, t).kron(&Matrix::identity(field, f.dims[s])));
        rel.add_block(offsets[t], 0, &Matrix::identity(field, g.dims[t]).kron(f.map(s, t)).neg());
        cols.push(rel);
    }
    let rel = Matrix::hstack(field, total, &cols.iter().collect::<Vec<_>>());
    let quotient = Quotient::of_relations(&rel);
    let injections = (0..c.len())
        .map(|w| quotient.projection.block(0, offsets[w], quotient.dim(), g.dims[w] * f.dims[w]))
        .collect();
    Ok(CoendResult { offsets, quotient, injections })
}

/// The map G ⊗_X F → G′ ⊗_X F induced by a cosheaf morphism.
pub fn coend_map(m: &Morphism<Cosheaf>, f: &CellSheaf, a: &CoendResult, b: &CoendResult) -> Matrix {
    let field = f.field;
    let blocks: Vec<Matrix> = m.comps.iter().enumerate().map(|(w, phi)| phi.kron(&Matrix::identity(field, f.dims[w]))).collect();
    let big = Matrix::block_diag(field, &blocks.iter().collect::<Vec<_>>());
    b.quotient.projection.mul(&big).mul(&a.quotient.section)
}

/// Termwise coend with induced differentials; degrees as in the cosheaf complex.
pub fn coend_complex(gc: &CosheafComplex, f: &CellSheaf) -> Result<ChainComplex> {
    let parts: Vec<CoendResult> = gc.terms.iter().map(|g| coend(g, f)).collect::<Result<_>>()?;
    let d = gc.diffs.iter().enumerate().map(|(k, m)| coend_map(m, f, &parts[k], &parts[k + 1])).collect();
    ChainComplex::new(f.field, gc.lo, parts.iter().map(CoendResult::dim).collect(), d)
}

/// dim ⊕_w G(w)⊗F(w) before relations, for brute-force checks.
pub fn coend_ambient(g: &CellCosheaf, f: &CellSheaf) -> usize {
    (0..f.len()).map(|w| g.dims[w] * f.dims[w]).sum()
}
