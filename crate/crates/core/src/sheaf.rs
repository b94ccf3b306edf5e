//! Cellular sheaves and cosheaves, their morphisms, and the standard constructions.
//!
//! Both are stored on covering pairs (σ ⋖ τ) keyed as (face, coface). For a
//! sheaf the matrix is the restriction ρ_{τ,σ}: F(σ) → F(τ); for a cosheaf it
//! is the extension r_{σ,τ}: F(τ) → F(σ).

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::marker::PhantomData;
use std::sync::Arc;

use crate::complex::CellComplex;
use crate::diagram::{self, Diagram};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Quotient, Subspace};
use crate::matrix::Matrix;
use crate::poset::Poset;

pub trait Variance: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    const CO: bool;
    type Dual: Variance<Dual = Self>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sheaf;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cosheaf;

impl Variance for Sheaf {
    const CO: bool = false;
    type Dual = Cosheaf;
}

impl Variance for Cosheaf {
    const CO: bool = true;
    type Dual = Sheaf;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep<K: Variance> {
    pub complex: Arc<CellComplex>,
    pub field: Field,
    pub dims: Vec<usize>,
    pub maps: BTreeMap<(usize, usize), Matrix>,
    _k: PhantomData<K>,
}

pub type CellSheaf = Rep<Sheaf>;
pub type CellCosheaf = Rep<Cosheaf>;

/// Which elementary object to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// [σ]^W: a sheaf on the closure of σ.
    InjectiveSheaf,
    /// {σ}^W: a sheaf on the open star of σ.
    ProjectiveSheaf,
    /// [σ̂]^W: a cosheaf on the closure of σ.
    ProjectiveCosheaf,
    /// {σ̂}^W: a cosheaf on the open star of σ.
    InjectiveCosheaf,
}

impl<K: Variance> Rep<K> {
    pub fn new(complex: Arc<CellComplex>, field: Field, dims: Vec<usize>, maps: BTreeMap<(usize, usize), Matrix>) -> Result<Self> {
        let r = Rep { complex, field, dims, maps, _k: PhantomData };
        r.check_shapes()?;
        Ok(r)
    }

    fn raw(complex: Arc<CellComplex>, field: Field, dims: Vec<usize>, maps: BTreeMap<(usize, usize), Matrix>) -> Self {
        Rep { complex, field, dims, maps, _k: PhantomData }
    }

    pub fn builder(complex: &Arc<CellComplex>, field: Field) -> RepBuilder<K> {
        RepBuilder { complex: complex.clone(), field, dims: BTreeMap::new(), maps: BTreeMap::new(), _k: PhantomData }
    }

    /// Expected shape of the matrix on the cover (face, coface).
    pub fn shape_of(&self, face: usize, coface: usize) -> (usize, usize) {
        if K::CO {
            (self.dims[face], self.dims[coface])
        } else {
            (self.dims[coface], self.dims[face])
        }
    }

    fn check_shapes(&self) -> Result<()> {
        if self.dims.len() != self.complex.len() {
            return Err(Error::IncompatibleShapes(format!("{} stalks on {} cells", self.dims.len(), self.complex.len())));
        }
        for &(a, b) in self.complex.covers() {
            let m = self.maps.get(&(a, b)).ok_or_else(|| {
                Error::IncompatibleShapes(format!("no map on ({}, {})", self.complex.id(a), self.complex.id(b)))
            })?;
            if m.shape() != self.shape_of(a, b) {
                let (r, c) = self.shape_of(a, b);
                return Err(Error::IncompatibleShapes(format!(
                    "map on ({}, {}) is {}x{}, expected {r}x{c}",
                    self.complex.id(a),
                    self.complex.id(b),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if self.maps.len() != self.complex.covers().len() {
            return Err(Error::IncompatibleShapes("maps given on pairs that are not covers".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, face: usize, coface: usize) -> &Matrix {
        &self.maps[&(face, coface)]
    }

    /// The poset on which this object is a covariant functor.
    pub fn poset(&self) -> &Poset {
        if K::CO {
            self.complex.op_poset()
        } else {
            self.complex.poset()
        }
    }

    pub fn diagram(&self) -> Diagram {
        let maps = self
            .maps
            .iter()
            .map(|(&(a, b), m)| (if K::CO { (b, a) } else { (a, b) }, m.clone()))
            .collect();
        Diagram { field: self.field, dims: self.dims.clone(), maps }
    }

    pub fn from_diagram(complex: Arc<CellComplex>, d: &Diagram) -> Self {
        let maps = d.maps.iter().map(|(&(a, b), m)| (if K::CO { (b, a) } else { (a, b) }, m.clone())).collect();
        Rep::raw(complex, d.field, d.dims.clone(), maps)
    }

    /// The map between the stalks of σ ≤ τ: F(σ) → F(τ) for sheaves, F(τ) → F(σ) for cosheaves.
    pub fn composite(&self, face: usize, coface: usize) -> Matrix {
        let d = self.diagram();
        if K::CO {
            d.composite(self.poset(), coface, face)
        } else {
            d.composite(self.poset(), face, coface)
        }
    }

    /// Pairs (σ, τ) with σ < τ where two chains of covers disagree.
    pub fn validate(&self) -> Vec<(String, String)> {
        let d = self.diagram();
        d.noncommuting(self.poset())
            .into_iter()
            .map(|(i, j)| if K::CO { (j, i) } else { (i, j) })
            .map(|(i, j)| (self.complex.id(i).to_string(), self.complex.id(j).to_string()))
            .collect()
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// k^n on the cells in `support`, identities between supported cells, zero elsewhere.
    pub fn supported_on(complex: &Arc<CellComplex>, field: Field, support: &[usize], n: usize) -> Self {
        let mut inside = vec![false; complex.len()];
        for &s in support {
            inside[s] = true;
        }
        let dims: Vec<usize> = inside.iter().map(|&b| if b { n } else { 0 }).collect();
        let maps = complex
            .covers()
            .iter()
            .map(|&(a, b)| {
                let m = if inside[a] && inside[b] {
                    Matrix::identity(field, n)
                } else if K::CO {
                    Matrix::zeros(field, dims[a], dims[b])
                } else {
                    Matrix::zeros(field, dims[b], dims[a])
                };
                ((a, b), m)
            })
            .collect();
        Rep::raw(complex.clone(), field, dims, maps)
    }

    pub fn constant(complex: &Arc<CellComplex>, field: Field, n: usize) -> Self {
        let all: Vec<usize> = (0..complex.len()).collect();
        Rep::supported_on(complex, field, &all, n)
    }

    pub fn zero(complex: &Arc<CellComplex>, field: Field) -> Self {
        Rep::constant(complex, field, 0)
    }

    /// The stalk object: k^n at σ and zero elsewhere.
    pub fn skyscraper(complex: &Arc<CellComplex>, field: Field, sigma: usize, n: usize) -> Self {
        Rep::supported_on(complex, field, &[sigma], n)
    }

    /// Linear dual: same stalks, transposed matrices, variance flipped.
    pub fn linear_dual(&self) -> Rep<K::Dual> {
        let maps = self.maps.iter().map(|(&k, m)| (k, m.transpose())).collect();
        Rep::raw(self.complex.clone(), self.field, self.dims.clone(), maps)
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        if *self.complex != *o.complex {
            return Err(Error::IncompatibleShapes("direct sum over different complexes".into()));
        }
        let dims = self.dims.iter().zip(&o.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .map(|(k, m)| (*k, Matrix::block_diag(self.field, &[m, &o.maps[k]])))
            .collect();
        Ok(Rep::raw(self.complex.clone(), self.field, dims, maps))
    }

    pub fn direct_sum_all(complex: &Arc<CellComplex>, field: Field, parts: &[Self]) -> Self {
        parts.iter().fold(Rep::zero(complex, field), |acc, p| acc.direct_sum(p).expect("same complex"))
    }

    /// The object transported along invertible stalk maps g_x (new basis = g_x applied to old).
    pub fn conjugate(&self, g: &[Matrix]) -> Result<Self> {
        let inv: Vec<Matrix> = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::IncompatibleShapes("change of basis is not invertible".into())))
            .collect::<Result<_>>()?;
        let maps = self
            .maps
            .iter()
            .map(|(&(a, b), m)| {
                let (src, dst) = if K::CO { (b, a) } else { (a, b) };
                ((a, b), g[dst].mul(m).mul(&inv[src]))
            })
            .collect();
        Ok(Rep::raw(self.complex.clone(), self.field, self.dims.clone(), maps))
    }

    /// Restriction to a subcomplex given by cell indices (sorted, in basis order).
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let (sub, old) = self.complex.restrict(keep);
        let dims = old.iter().map(|&i| self.dims[i]).collect();
        let maps = sub.covers().iter().map(|&(a, b)| ((a, b), self.map(old[a], old[b]).clone())).collect();
        Rep::raw(Arc::new(sub), self.field, dims, maps)
    }

    /// Change of complex with the same cells (used when only flags differ).
    pub fn on_complex(&self, complex: Arc<CellComplex>) -> Self {
        Rep::raw(complex, self.field, self.dims.clone(), self.maps.clone())
    }

    /// Dimension of Hom(self, other) together with a basis of morphisms.
    pub fn hom_space(&self, other: &Self) -> Vec<Morphism<K>> {
        diagram::natural_transformations(self.poset(), &self.diagram(), &other.diagram())
            .into_iter()
            .map(|comps| Morphism { source: self.clone(), target: other.clone(), comps })
            .collect()
    }

    /// Checks that `witness[x]: ⊕_parts P(x) → F(x)` is an isomorphism of objects.
    pub fn is_decomposition(&self, parts: &[Self], witness: &[Matrix]) -> bool {
        if parts.iter().any(|p| *p.complex != *self.complex) || witness.len() != self.len() {
            return false;
        }
        let sum = Rep::direct_sum_all(&self.complex, self.field, parts);
        if witness.iter().enumerate().any(|(x, w)| w.shape() != (self.dims[x], sum.dims[x]) || w.inverse().is_none()) {
            return false;
        }
        Morphism { source: sum, target: self.clone(), comps: witness.to_vec() }.is_natural()
    }
}

/// Builder with zero defaults: unspecified stalks are 0 and unspecified maps are zero.
pub struct RepBuilder<K: Variance> {
    complex: Arc<CellComplex>,
    field: Field,
    dims: BTreeMap<String, usize>,
    maps: BTreeMap<(String, String), Matrix>,
    _k: PhantomData<K>,
}

impl<K: Variance> RepBuilder<K> {
    pub fn stalk(mut self, cell: &str, n: usize) -> Self {
        self.dims.insert(cell.to_string(), n);
        self
    }

    pub fn map(mut self, face: &str, coface: &str, m: Matrix) -> Self {
        self.maps.insert((face.to_string(), coface.to_string()), m);
        self
    }

    /// Integer-entry matrix given by rows.
    pub fn map_i(self, face: &str, coface: &str, rows: &[&[i64]]) -> Self {
        let f = self.field;
        let cols = rows.first().map_or(0, |r| r.len());
        self.map(face, coface, Matrix::from_i64(f, rows, cols))
    }

    /// Identity on a cover (both stalks must agree).
    pub fn id(self, face: &str, coface: &str) -> Self {
        let n = self.dims.get(face).copied().unwrap_or(0);
        let f = self.field;
        self.map(face, coface, Matrix::identity(f, n))
    }

    pub fn build(self) -> Result<Rep<K>> {
        let c = &self.complex;
        let mut dims = vec![0; c.len()];
        for (id, &n) in &self.dims {
            dims[c.index_of(id)?] = n;
        }
        let mut maps = BTreeMap::new();
        for ((a, b), m) in self.maps {
            let (i, j) = (c.index_of(&a)?, c.index_of(&b)?);
            if !c.poset().is_cover(i, j) {
                return Err(Error::IncompatibleShapes(format!("({a}, {b}) is not a cover")));
            }
            maps.insert((i, j), m);
        }
        for &(a, b) in c.covers() {
            maps.entry((a, b)).or_insert_with(|| {
                if K::CO {
                    Matrix::zeros(self.field, dims[a], dims[b])
                } else {
                    Matrix::zeros(self.field, dims[b], dims[a])
                }
            });
        }
        Rep::new(self.complex, self.field, dims, maps)
    }
}

pub fn elementary(kind: Elementary, complex: &Arc<CellComplex>, field: Field, sigma: usize, n: usize) -> Result<ElementaryObject> {
    if sigma >= complex.len() {
        return Err(Error::UnknownCell(sigma.to_string()));
    }
    let closure = complex.poset().closure(sigma);
    let star = complex.poset().open_star(sigma);
    Ok(match kind {
        Elementary::InjectiveSheaf => ElementaryObject::Sheaf(CellSheaf::supported_on(complex, field, &closure, n)),
        Elementary::ProjectiveSheaf => ElementaryObject::Sheaf(CellSheaf::supported_on(complex, field, &star, n)),
        Elementary::ProjectiveCosheaf => ElementaryObject::Cosheaf(CellCosheaf::supported_on(complex, field, &closure, n)),
        Elementary::InjectiveCosheaf => ElementaryObject::Cosheaf(CellCosheaf::supported_on(complex, field, &star, n)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryObject {
    Sheaf(CellSheaf),
    Cosheaf(CellCosheaf),
}

/// [σ]^n
pub fn injective_sheaf(complex: &Arc<CellComplex>, field: Field, sigma: usize, n: usize) -> CellSheaf {
    CellSheaf::supported_on(complex, field, &complex.poset().closure(sigma), n)
}

/// {σ}^n
pub fn projective_sheaf(complex: &Arc<CellComplex>, field: Field, sigma: usize, n: usize) -> CellSheaf {
    CellSheaf::supported_on(complex, field, &complex.poset().open_star(sigma), n)
}

/// [σ̂]^n
pub fn projective_cosheaf(complex: &Arc<CellComplex>, field: Field, sigma: usize, n: usize) -> CellCosheaf {
    CellCosheaf::supported_on(complex, field, &complex.poset().closure(sigma), n)
}

/// {σ̂}^n
pub fn injective_cosheaf(complex: &Arc<CellComplex>, field: Field, sigma: usize, n: usize) -> CellCosheaf {
    CellCosheaf::supported_on(complex, field, &complex.poset().open_star(sigma), n)
}

/// A natural transformation; `comps[x]` maps source(x) → target(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism<K: Variance> {
    pub source: Rep<K>,
    pub target: Rep<K>,
    pub comps: Vec<Matrix>,
}

pub type SheafMorphism = Morphism<Sheaf>;
pub type CosheafMorphism = Morphism<Cosheaf>;

impl<K: Variance> Morphism<K> {
    pub fn new(source: Rep<K>, target: Rep<K>, comps: Vec<Matrix>) -> Result<Self> {
        let m = Morphism { source, target, comps };
        if m.comps.len() != m.source.len()
            || m.comps.iter().enumerate().any(|(x, c)| c.shape() != (m.target.dims[x], m.source.dims[x]))
        {
            return Err(Error::IncompatibleShapes("morphism components".into()));
        }
        if !m.is_natural() {
            return Err(Error::NotCommuting("morphism is not natural".into()));
        }
        Ok(m)
    }

    pub fn identity(f: &Rep<K>) -> Self {
        let comps = f.dims.iter().map(|&n| Matrix::identity(f.field, n)).collect();
        Morphism { source: f.clone(), target: f.clone(), comps }
    }

    pub fn zero(s: &Rep<K>, t: &Rep<K>) -> Self {
        let comps = s.dims.iter().zip(&t.dims).map(|(&a, &b)| Matrix::zeros(s.field, b, a)).collect();
        Morphism { source: s.clone(), target: t.clone(), comps }
    }

    /// Naturality on every cover.
    pub fn is_natural(&self) -> bool {
        self.source.maps.keys().all(|&(a, b)| {
            let (src, dst) = if K::CO { (b, a) } else { (a, b) };
            self.target.map(a, b).mul(&self.comps[src]) == self.comps[dst].mul(self.source.map(a, b))
        })
    }

    pub fn compose(&self, after: &Morphism<K>) -> Morphism<K> {
        let comps = self.comps.iter().zip(&after.comps).map(|(f, g)| g.mul(f)).collect();
        Morphism { source: self.source.clone(), target: after.target.clone(), comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn add(&self, o: &Morphism<K>) -> Morphism<K> {
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn scale(&self, c: &crate::field::Scalar) -> Morphism<K> {
        let comps = self.comps.iter().map(|a| a.scale(c)).collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), comps }
    }

    /// Cellwise kernel with its inclusion into the source.
    pub fn kernel(&self) -> (Rep<K>, Morphism<K>) {
        let subs: Vec<Subspace> = self.comps.iter().map(|c| Subspace::from_basis(c.kernel())).collect();
        let f = &self.source;
        let maps = f
            .maps
            .iter()
            .map(|(&(a, b), m)| {
                let (src, dst) = if K::CO { (b, a) } else { (a, b) };
                ((a, b), subs[dst].coords(&m.mul(&subs[src].basis)))
            })
            .collect();
        let k = Rep::raw(f.complex.clone(), f.field, subs.iter().map(Subspace::dim).collect(), maps);
        let inc = Morphism { source: k.clone(), target: f.clone(), comps: subs.into_iter().map(|s| s.basis).collect() };
        (k, inc)
    }

    /// Cellwise cokernel with its projection from the target.
    pub fn cokernel(&self) -> (Rep<K>, Morphism<K>) {
        let qs: Vec<Quotient> = self.comps.iter().map(Quotient::of_relations).collect();
        let g = &self.target;
        let maps = g
            .maps
            .iter()
            .map(|(&(a, b), m)| {
                let (src, dst) = if K::CO { (b, a) } else { (a, b) };
                ((a, b), qs[dst].projection.mul(m).mul(&qs[src].section))
            })
            .collect();
        let c = Rep::raw(g.complex.clone(), g.field, qs.iter().map(Quotient::dim).collect(), maps);
        let proj = Morphism { source: g.clone(), target: c.clone(), comps: qs.into_iter().map(|q| q.projection).collect() };
        (c, proj)
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn linear_dual(&self) -> Morphism<K::Dual> {
        Morphism {
            source: self.target.linear_dual(),
            target: self.source.linear_dual(),
            comps: self.comps.iter().map(Matrix::transpose).collect(),
        }
    }
}
