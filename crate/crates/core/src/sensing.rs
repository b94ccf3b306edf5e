//! Sensing sheaves on sensor nerves, evasion cosheaves and the sensing LES,
//! plus the barcode test for evasion paths over a time interval.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::barcode::{path_order, zigzag_decompose, Barcode};
use crate::chain::{les_from_ses, LongExactSequence};
use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::cochain_map;
use crate::linalg::Subspace;
use crate::matrix::Matrix;
use crate::sheaf::{CellCosheaf, CellSheaf, Morphism, Rep, Sheaf, Variance};

/// A simplicial nerve with a subspace S_v ⊂ (kⁿ)* at each vertex (columns of `spaces[v]`).
#[derive(Clone, Debug)]
pub struct SensorNerve {
    pub complex: Arc<CellComplex>,
    pub field: Field,
    pub n: usize,
    pub spaces: Vec<(String, Matrix)>,
    /// Vertices forced to the zero stalk.
    pub zeroed: BTreeSet<String>,
}

impl SensorNerve {
    pub fn new(complex: Arc<CellComplex>, field: Field, n: usize, spaces: Vec<(String, Matrix)>) -> Result<SensorNerve> {
        let vs = complex.vertex_sets()?;
        for (v, m) in &spaces {
            let i = complex.index_of(v)?;
            if vs[i].len() != 1 {
                return Err(Error::InvalidSheaf(format!("{v} is not a vertex")));
            }
            if m.rows() != n {
                return Err(Error::IncompatibleShapes(format!("sensor {v} lives in dimension {}, expected {n}", m.rows())));
            }
        }
        Ok(SensorNerve { complex, field, n, spaces, zeroed: BTreeSet::new() })
    }

    pub fn zero_vertex(mut self, v: &str) -> Self {
        self.zeroed.insert(v.to_string());
        self
    }
}

/// F(σ) = Σ_{v ∈ σ} S_v with inclusions, and ι: F ↪ (kⁿ)*_X.
pub fn sensing_sheaf(s: &SensorNerve) -> Result<(CellSheaf, Morphism<Sheaf>)> {
    let c = &s.complex;
    let field = s.field;
    let vs = c.vertex_sets()?;
    let gens = |v: usize| -> Matrix {
        let id = c.id(v);
        if s.zeroed.contains(id) {
            return Matrix::zeros(field, s.n, 0);
        }
        s.spaces.iter().find(|(x, _)| x == id).map(|(_, m)| m.clone()).unwrap_or_else(|| Matrix::zeros(field, s.n, 0))
    };
    let subs: Vec<Subspace> = (0..c.len())
        .map(|x| {
            let cols: Vec<Matrix> = vs[x].iter().map(|&v| gens(v)).collect();
            Subspace::span(&Matrix::hstack(field, s.n, &cols.iter().collect::<Vec<_>>()))
        })
        .collect();
    let maps = c.covers().iter().map(|&(a, b)| ((a, b), subs[b].coords(&subs[a].basis))).collect();
    let f = Rep::new(c.clone(), field, subs.iter().map(Subspace::dim).collect(), maps)?;
    let g = CellSheaf::constant(c, field, s.n);
    let iota = Morphism::new(f.clone(), g, subs.into_iter().map(|x| x.basis).collect())?;
    Ok((f, iota))
}

/// Ê = V(cok ι): annihilators of F(σ) with inclusions as extension maps.
pub fn evasion_cosheaf(iota: &Morphism<Sheaf>) -> Result<CellCosheaf> {
    if !iota.is_injective() {
        return Err(Error::NotInjective("sensing embedding".into()));
    }
    Ok(iota.cokernel().0.linear_dual())
}

#[derive(Clone, Debug)]
pub struct SensingLes {
    pub les: LongExactSequence,
    pub cokernel: CellSheaf,
    /// Ranks of the connecting maps Hⁱ(cok) → Hⁱ⁺¹(F).
    pub connecting_ranks: Vec<usize>,
}

impl SensingLes {
    pub fn lines(&self) -> Vec<String> {
        let label = |c: char| match c {
            'A' => "F",
            'B' => "k^n",
            _ => "cok",
        };
        self.les.nodes.iter().map(|&(c, n, d)| format!("H^{n}_c({}) = {d}", label(c))).collect()
    }
}

/// The LES of compactly supported cohomology of 0 → F → (kⁿ)*_X → cok ι → 0.
pub fn sensing_les(iota: &Morphism<Sheaf>) -> Result<SensingLes> {
    if !iota.is_injective() {
        return Err(Error::NotInjective("sensing embedding".into()));
    }
    let (cok, q) = iota.cokernel();
    let les = les_from_ses(&cochain_map(iota), &cochain_map(&q))?;
    let connecting_ranks = les.maps.iter().skip(2).step_by(3).map(Matrix::rank).collect();
    Ok(SensingLes { les, cokernel: cok, connecting_ranks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvasionVerdict {
    /// No bar spans the whole interval: no evasion path can exist.
    CertifiedNoPath,
    /// A full-length closed bar exists; this does not prove a path exists.
    LongBarPresentInconclusive,
}

#[derive(Clone, Debug)]
pub struct EvasionAnalysis {
    pub barcode: Barcode,
    pub verdict: EvasionVerdict,
}

/// Reads the verdict off the barcode of a (co)sheaf over a compact time interval.
pub fn evasion_path_analysis<K: Variance>(f: &Rep<K>) -> Result<EvasionAnalysis> {
    let order = path_order(&f.complex)?;
    let barcode = zigzag_decompose(f)?;
    let last = order.len() - 1;
    let long = barcode.bars.iter().any(|b| b.start == 0 && b.end == last && b.left_closed && b.right_closed);
    let verdict = if long { EvasionVerdict::LongBarPresentInconclusive } else { EvasionVerdict::CertifiedNoPath };
    Ok(EvasionAnalysis { barcode, verdict })
}
