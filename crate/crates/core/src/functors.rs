//! Pullback and the three pushforwards along maps of cell complexes, sections
//! over subsets, and adjunction checks.
//!
//! For sheaves f_* is the right Kan extension and f_† the left one. For
//! cosheaves (functors on the opposite poset) the roles swap: f_* is a colimit
//! and f_† a limit over the same index sets.

use crate::complex::CellComplex;
use crate::diagram::{self, Colimit, Diagram, Limit};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::maps::{CellularMap, PosetMap};
use crate::matrix::Matrix;
use crate::poset::Poset;
use crate::sheaf::{CellSheaf, Morphism, Rep, Variance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Push {
    /// f_*
    Star,
    /// f_†
    Dagger,
}

fn posets<'a, K: Variance>(f: &'a PosetMap) -> (&'a Poset, &'a Poset) {
    if K::CO {
        (f.source.op_poset(), f.target.op_poset())
    } else {
        (f.source.poset(), f.target.poset())
    }
}

fn same_complex(a: &CellComplex, b: &CellComplex) -> Result<()> {
    if a != b {
        return Err(Error::IncompatibleShapes("object lives on a different complex than the map".into()));
    }
    Ok(())
}

/// f*G(x) = G(f(x)).
pub fn pullback<K: Variance>(f: &PosetMap, g: &Rep<K>) -> Result<Rep<K>> {
    f.check()?;
    same_complex(&f.target, &g.complex)?;
    let dims = f.assign.iter().map(|&y| g.dims[y]).collect();
    let maps = f
        .source
        .covers()
        .iter()
        .map(|&(a, b)| ((a, b), g.composite(f.assign[a], f.assign[b])))
        .collect();
    Rep::new(f.source.clone(), g.field, dims, maps)
}

/// A pushed-forward object together with the (co)limit data of each stalk.
#[derive(Clone, Debug)]
pub struct Pushed<K: Variance> {
    pub rep: Rep<K>,
    pub ext: Extension,
}

#[derive(Clone, Debug)]
pub enum Extension {
    Right(Vec<Limit>),
    Left(Vec<Colimit>),
}

impl<K: Variance> Pushed<K> {
    /// Image of a morphism α: F → F′ where `self` and `to` push F and F′.
    pub fn induced(&self, comps: &[Matrix], to: &Pushed<K>) -> Morphism<K> {
        let field = self.rep.field;
        let comps = match (&self.ext, &to.ext) {
            (Extension::Right(a), Extension::Right(b)) => {
                a.iter().zip(b).map(|(la, lb)| diagram::limit_map(field, comps, la, lb)).collect()
            }
            (Extension::Left(a), Extension::Left(b)) => {
                a.iter().zip(b).map(|(ca, cb)| diagram::colimit_map(field, comps, ca, cb)).collect()
            }
            _ => panic!("mismatched pushforwards"),
        };
        Morphism { source: self.rep.clone(), target: to.rep.clone(), comps }
    }
}

/// Is the pushforward a right Kan extension on the underlying poset?
fn is_right<K: Variance>(which: Push) -> bool {
    (which == Push::Star) != K::CO
}

pub fn push<K: Variance>(f: &PosetMap, fr: &Rep<K>, which: Push) -> Result<Pushed<K>> {
    f.check()?;
    same_complex(&f.source, &fr.complex)?;
    let (src, tgt) = posets::<K>(f);
    let d = fr.diagram();
    let (out, ext) = if is_right::<K>(which) {
        let (o, l) = diagram::ran(src, tgt, &f.assign, &d);
        (o, Extension::Right(l))
    } else {
        let (o, c) = diagram::lan(src, tgt, &f.assign, &d);
        (o, Extension::Left(c))
    };
    Ok(Pushed { rep: Rep::from_diagram(f.target.clone(), &out), ext })
}

/// f_*
pub fn pushforward<K: Variance>(f: &PosetMap, fr: &Rep<K>) -> Result<Rep<K>> {
    Ok(push(f, fr, Push::Star)?.rep)
}

/// f_†
pub fn pushforward_open<K: Variance>(f: &PosetMap, fr: &Rep<K>) -> Result<Rep<K>> {
    Ok(push(f, fr, Push::Dagger)?.rep)
}

/// Applies a pushforward to a morphism.
pub fn push_morphism<K: Variance>(f: &PosetMap, m: &Morphism<K>, which: Push) -> Result<Morphism<K>> {
    let a = push(f, &m.source, which)?;
    let b = push(f, &m.target, which)?;
    Ok(a.induced(&m.comps, &b))
}

/// f_!F with the warnings raised by the zero fallback of its restriction maps.
#[derive(Clone, Debug)]
pub struct CompactPush {
    pub sheaf: CellSheaf,
    /// Compactly supported sections over each fibre, inside the product of stalks.
    pub sections: Vec<(Vec<usize>, Subspace)>,
    pub warnings: Vec<String>,
}

/// Sections over f⁻¹(τ) that vanish on cells whose fibre intersection is not compact.
fn compact_sections(f: &CellularMap, fr: &CellSheaf, d: &Diagram, tau: usize) -> (Vec<usize>, Subspace) {
    let fiber = f.map.fiber(tau);
    let lim = diagram::limit(fr.complex.poset(), d, &fiber);
    let open_rows: Vec<usize> = fiber
        .iter()
        .enumerate()
        .filter(|&(_, &x)| !f.fiber_compact[x])
        .flat_map(|(k, &x)| lim.offsets[k]..lim.offsets[k] + d.dims[x])
        .collect();
    let b = &lim.space.basis;
    let keep = b.select_rows(&open_rows).kernel();
    (fiber, Subspace::from_basis(b.mul(&keep)))
}

pub fn pushforward_compact(f: &CellularMap, fr: &CellSheaf) -> Result<CompactPush> {
    if !f.is_valid() {
        return Err(Error::InvalidMap(
            f.violations().first().map(|v| v.to_string()).unwrap_or_else(|| "fibre flags".into()),
        ));
    }
    same_complex(&f.map.source, &fr.complex)?;
    let field = fr.field;
    let d = fr.diagram();
    let tgt = &f.map.target;
    let sp = fr.complex.poset();
    let secs: Vec<(Vec<usize>, Subspace)> = (0..tgt.len()).map(|t| compact_sections(f, fr, &d, t)).collect();
    let offsets = |fiber: &[usize]| {
        let mut o = Vec::with_capacity(fiber.len());
        let mut t = 0;
        for &x in fiber {
            o.push(t);
            t += fr.dims[x];
        }
        o
    };
    let mut warnings = Vec::new();
    let mut maps = std::collections::BTreeMap::new();
    for &(tau, gamma) in tgt.covers() {
        let (zt, st) = &secs[tau];
        let (zg, sg) = &secs[gamma];
        let (ot, og) = (offsets(zt), offsets(zg));
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for (i, &sigma) in zg.iter().enumerate() {
            for (k, &lambda) in zt.iter().enumerate() {
                if !sp.leq(lambda, sigma) {
                    continue;
                }
                let n = fr.dims[sigma];
                lhs.push(sg.basis.block(og[i], 0, n, sg.dim()));
                let s_at = st.basis.block(ot[k], 0, fr.dims[lambda], st.dim());
                rhs.push(fr.composite(lambda, sigma).mul(&s_at));
            }
        }
        let rows: usize = lhs.iter().map(Matrix::rows).sum();
        let a = Matrix::vstack(field, sg.dim(), &lhs.iter().collect::<Vec<_>>());
        let b = Matrix::vstack(field, st.dim(), &rhs.iter().collect::<Vec<_>>());
        debug_assert_eq!(a.rows(), rows);
        let m = match a.solve(&b) {
            Some(x) => x,
            None => {
                warnings.push(format!(
                    "no matching section over {} for some section over {}; restriction set to zero",
                    tgt.id(gamma),
                    tgt.id(tau)
                ));
                Matrix::zeros(field, sg.dim(), st.dim())
            }
        };
        maps.insert((tau, gamma), m);
    }
    let dims = secs.iter().map(|(_, s)| s.dim()).collect();
    let sheaf = Rep::new(tgt.clone(), field, dims, maps)?;
    Ok(CompactPush { sheaf, sections: secs, warnings })
}

/// Γ(Z; F): a limit for sheaves, a colimit for cosheaves.
#[derive(Clone, Debug)]
pub enum SectionSpace {
    Sheaf(Limit),
    Cosheaf(Colimit),
}

impl SectionSpace {
    pub fn dim(&self) -> usize {
        match self {
            SectionSpace::Sheaf(l) => l.dim(),
            SectionSpace::Cosheaf(c) => c.dim(),
        }
    }
}

pub fn sections<K: Variance>(fr: &Rep<K>, subset: &[usize]) -> SectionSpace {
    let d = fr.diagram();
    if K::CO {
        SectionSpace::Cosheaf(diagram::colimit(fr.poset(), &d, subset))
    } else {
        SectionSpace::Sheaf(diagram::limit(fr.poset(), &d, subset))
    }
}

pub fn sections_named<K: Variance>(fr: &Rep<K>, subset: &[&str]) -> Result<SectionSpace> {
    let idx = subset.iter().map(|s| fr.complex.index_of(s)).collect::<Result<Vec<_>>>()?;
    Ok(sections(fr, &idx))
}

pub fn global_sections<K: Variance>(fr: &Rep<K>) -> SectionSpace {
    let all: Vec<usize> = (0..fr.len()).collect();
    sections(fr, &all)
}

/// Outcome of comparing the two hom spaces of an adjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionCheck {
    /// dim Hom on the side of the left adjoint's output or the pullback's input.
    pub left: usize,
    pub right: usize,
    /// The canonical comparison map between the two spaces is injective.
    pub injective: bool,
}

impl AdjunctionCheck {
    pub fn holds(&self) -> bool {
        self.left == self.right && self.injective
    }
}

fn independent(vectors: &[Vec<Matrix>], field: crate::field::Field) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let flat: Vec<Matrix> = vectors
        .iter()
        .map(|comps| {
            let entries: Vec<crate::field::Scalar> = comps
                .iter()
                .flat_map(|m| (0..m.rows()).flat_map(move |r| m.row(r).to_vec()))
                .collect();
            Matrix::column_vector(field, entries)
        })
        .collect();
    let rows = flat[0].rows();
    Matrix::hstack(field, rows, &flat.iter().collect::<Vec<_>>()).rank() == vectors.len()
}

/// Compares Hom(f*G, F) with Hom(G, R F) where R is the right adjoint of
/// pullback (f_* for sheaves, f_† for cosheaves). The comparison sends
/// ψ: G → RF to the composite of f*ψ with the counit.
pub fn check_right_adjunction<K: Variance>(f: &PosetMap, g: &Rep<K>, fr: &Rep<K>) -> Result<AdjunctionCheck> {
    let which = if K::CO { Push::Dagger } else { Push::Star };
    let pushed = push(f, fr, which)?;
    let lims = match &pushed.ext {
        Extension::Right(l) => l,
        Extension::Left(_) => unreachable!(),
    };
    let pulled = pullback(f, g)?;
    let left = pulled.hom_space(fr).len();
    let basis = g.hom_space(&pushed.rep);
    let d = fr.diagram();
    let images: Vec<Vec<Matrix>> = basis
        .iter()
        .map(|psi| {
            (0..fr.len())
                .map(|x| {
                    let y = f.assign[x];
                    lims[y].projection(&d, x).mul(&psi.comps[y])
                })
                .collect()
        })
        .collect();
    Ok(AdjunctionCheck { left, right: basis.len(), injective: independent(&images, fr.field) })
}

/// Compares Hom(L F, G) with Hom(F, f*G) where L is the left adjoint of
/// pullback (f_† for sheaves, f_* for cosheaves), via the unit.
pub fn check_left_adjunction<K: Variance>(f: &PosetMap, fr: &Rep<K>, g: &Rep<K>) -> Result<AdjunctionCheck> {
    let which = if K::CO { Push::Star } else { Push::Dagger };
    let pushed = push(f, fr, which)?;
    let cols = match &pushed.ext {
        Extension::Left(c) => c,
        Extension::Right(_) => unreachable!(),
    };
    let pulled = pullback(f, g)?;
    let right = fr.hom_space(&pulled).len();
    let basis = pushed.rep.hom_space(g);
    let d = fr.diagram();
    let images: Vec<Vec<Matrix>> = basis
        .iter()
        .map(|psi| {
            (0..fr.len())
                .map(|x| {
                    let y = f.assign[x];
                    psi.comps[y].mul(&cols[y].injection(&d, x))
                })
                .collect()
        })
        .collect();
    Ok(AdjunctionCheck { left: basis.len(), right, injective: independent(&images, fr.field) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::sheaf::CellSheaf;
    use std::sync::Arc;

    fn half_open() -> Arc<CellComplex> {
        Arc::new(CellComplex::builder().cell("x'", 0).open_cell("a'", 1).cover("x'", "a'", -1).build().unwrap())
    }

    fn sheaf(c: &Arc<CellComplex>) -> CellSheaf {
        CellSheaf::builder(c, Field::Rational).stalk("x'", 3).stalk("a'", 2).map_i("x'", "a'", &[&[1, 0, 1], &[0, 1, 1]]).build().unwrap()
    }

    #[test]
    fn projection_to_point() {
        let c = half_open();
        let fr = sheaf(&c);
        let p = PosetMap::to_point(&c);
        assert_eq!(pushforward(&p, &fr).unwrap().dims, vec![3]);
        assert_eq!(pushforward_open(&p, &fr).unwrap().dims, vec![2]);
        let pc = CellularMap::new(p).with_open_fibers(&["a'"]).unwrap();
        let out = pushforward_compact(&pc, &fr).unwrap();
        assert_eq!(out.sheaf.dims, vec![1]);
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn pullback_identity() {
        let c = half_open();
        let fr = sheaf(&c);
        assert_eq!(pullback(&PosetMap::identity(&c), &fr).unwrap(), fr);
    }

    #[test]
    fn adjunctions_on_projection() {
        let c = half_open();
        let fr = sheaf(&c);
        let p = PosetMap::to_point(&c);
        let g = CellSheaf::constant(&p.target, Field::Rational, 2);
        assert!(check_right_adjunction(&p, &g, &fr).unwrap().holds());
        assert!(check_left_adjunction(&p, &fr, &g).unwrap().holds());
        let cg = g.linear_dual();
        let cf = fr.linear_dual();
        assert!(check_right_adjunction(&p, &cg, &cf).unwrap().holds());
        assert!(check_left_adjunction(&p, &cf, &cg).unwrap().holds());
    }
}
