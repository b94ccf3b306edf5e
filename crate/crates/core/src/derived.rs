//! Resolutions by elementary injectives and projectives, derived functors of
//! the pushforward to a point, the equivalence P, Verdier duality and the
//! Poincaré duality check.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::chain::ChainComplex;
use crate::complex::CellComplex;
use crate::complexes::{CosheafComplex, RepComplex, RepComplexMap, SheafComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::functors::Push;
use crate::matrix::Matrix;
use crate::sheaf::{CellCosheaf, CellSheaf, Cosheaf, Morphism, Rep, Sheaf, Variance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolutionKind {
    /// 0 → F → I⁰ → I¹ → …
    Injective,
    /// … → P⁻¹ → P⁰ → F → 0
    Projective,
}

#[derive(Clone, Debug)]
pub struct Resolution<K: Variance> {
    pub kind: ResolutionKind,
    pub object: Rep<K>,
    pub complex: RepComplex<K>,
    /// F → I⁰ or P⁰ → F.
    pub augmentation: Morphism<K>,
    /// For canonical resolutions: (cell, multiplicity) of the elementary summands of each term.
    pub summands: Option<Vec<Vec<(usize, usize)>>>,
}

/// Cells y with y ≤ x in the poset on which K is covariant.
fn below<K: Variance>(c: &CellComplex, x: usize) -> Vec<usize> {
    if K::CO {
        c.poset().open_star(x)
    } else {
        c.poset().closure(x)
    }
}

fn above<K: Variance>(c: &CellComplex, x: usize) -> Vec<usize> {
    if K::CO {
        c.poset().closure(x)
    } else {
        c.poset().open_star(x)
    }
}

/// D(y → x) for y below x in the covariant order.
fn structure<K: Variance>(f: &Rep<K>, y: usize, x: usize) -> Matrix {
    if K::CO {
        f.composite(x, y)
    } else {
        f.composite(y, x)
    }
}

/// F ↪ ⊕_x E_x^{F(x)} where E_x is supported below x ([x] for sheaves, {x̂} for cosheaves).
pub fn injective_hull<K: Variance>(f: &Rep<K>) -> (Morphism<K>, Vec<(usize, usize)>) {
    let c = &f.complex;
    let parts: Vec<Rep<K>> = (0..c.len()).map(|x| Rep::supported_on(c, f.field, &below::<K>(c, x), f.dims[x])).collect();
    let hull = Rep::direct_sum_all(c, f.field, &parts);
    let comps = (0..c.len())
        .map(|y| {
            let blocks: Vec<Matrix> = (0..c.len())
                .filter(|&x| parts[x].dims[y] > 0)
                .map(|x| structure(f, y, x))
                .collect();
            Matrix::vstack(f.field, f.dims[y], &blocks.iter().collect::<Vec<_>>())
        })
        .collect();
    let summands = (0..c.len()).filter(|&x| f.dims[x] > 0).map(|x| (x, f.dims[x])).collect();
    (Morphism { source: f.clone(), target: hull, comps }, summands)
}

/// ⊕_x Q_x^{F(x)} ↠ F where Q_x is supported above x ({x} for sheaves, [x̂] for cosheaves).
pub fn projective_cover<K: Variance>(f: &Rep<K>) -> (Morphism<K>, Vec<(usize, usize)>) {
    let c = &f.complex;
    let parts: Vec<Rep<K>> = (0..c.len()).map(|x| Rep::supported_on(c, f.field, &above::<K>(c, x), f.dims[x])).collect();
    let cover = Rep::direct_sum_all(c, f.field, &parts);
    let comps = (0..c.len())
        .map(|y| {
            let blocks: Vec<Matrix> = (0..c.len())
                .filter(|&x| parts[x].dims[y] > 0)
                .map(|x| structure(f, x, y))
                .collect();
            Matrix::hstack(f.field, f.dims[y], &blocks.iter().collect::<Vec<_>>())
        })
        .collect();
    let summands = (0..c.len()).filter(|&x| f.dims[x] > 0).map(|x| (x, f.dims[x])).collect();
    (Morphism { source: cover, target: f.clone(), comps }, summands)
}

pub fn injective_resolution<K: Variance>(f: &Rep<K>) -> Resolution<K> {
    let (aug, s0) = injective_hull(f);
    let mut terms = vec![aug.target.clone()];
    let mut diffs: Vec<Morphism<K>> = Vec::new();
    let mut summands = vec![s0];
    let mut prev = aug.clone();
    loop {
        let (cok, proj) = prev.cokernel();
        if cok.is_zero() {
            break;
        }
        let (emb, s) = injective_hull(&cok);
        let d = proj.compose(&emb);
        terms.push(emb.target.clone());
        diffs.push(d);
        summands.push(s);
        prev = emb_after(&proj, &emb);
    }
    let complex = RepComplex { complex: f.complex.clone(), field: f.field, lo: 0, terms, diffs };
    Resolution { kind: ResolutionKind::Injective, object: f.clone(), complex, augmentation: aug, summands: Some(summands) }
}

/// The composite I → cok → I′ seen as the new map whose cokernel continues the resolution.
fn emb_after<K: Variance>(proj: &Morphism<K>, emb: &Morphism<K>) -> Morphism<K> {
    proj.compose(emb)
}

pub fn projective_resolution<K: Variance>(f: &Rep<K>) -> Resolution<K> {
    let (aug, s0) = projective_cover(f);
    let mut terms = vec![aug.source.clone()];
    let mut diffs: Vec<Morphism<K>> = Vec::new();
    let mut summands = vec![s0];
    let mut prev = aug.clone();
    loop {
        let (ker, inc) = prev.kernel();
        if ker.is_zero() {
            break;
        }
        let (cov, s) = projective_cover(&ker);
        let d = cov.compose(&inc);
        terms.insert(0, cov.source.clone());
        diffs.insert(0, d.clone());
        summands.insert(0, s);
        prev = d;
    }
    let lo = -(terms.len() as i64 - 1);
    let complex = RepComplex { complex: f.complex.clone(), field: f.field, lo, terms, diffs };
    Resolution { kind: ResolutionKind::Projective, object: f.clone(), complex, augmentation: aug, summands: Some(summands) }
}

pub fn injective_resolution_sheaf(f: &CellSheaf) -> Resolution<Sheaf> {
    injective_resolution(f)
}

pub fn projective_resolution_sheaf(f: &CellSheaf) -> Resolution<Sheaf> {
    projective_resolution(f)
}

pub fn projective_resolution_cosheaf(f: &CellCosheaf) -> Resolution<Cosheaf> {
    projective_resolution(f)
}

pub fn injective_resolution_cosheaf(f: &CellCosheaf) -> Resolution<Cosheaf> {
    injective_resolution(f)
}

impl<K: Variance> Resolution<K> {
    /// A user-supplied resolution; checked for augmented exactness.
    pub fn new(kind: ResolutionKind, object: Rep<K>, complex: RepComplex<K>, augmentation: Morphism<K>) -> Result<Resolution<K>> {
        let r = Resolution { kind, object, complex, augmentation, summands: None };
        if !r.is_exact() {
            return Err(Error::NotExact("augmented resolution".into()));
        }
        Ok(r)
    }

    pub fn len(&self) -> usize {
        self.complex.terms.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The augmented stalk complex at a cell.
    pub fn augmented_at(&self, x: usize) -> ChainComplex {
        let c = self.complex.stalk_complex(x);
        let a = &self.augmentation.comps[x];
        let f = self.object.dims[x];
        match self.kind {
            ResolutionKind::Injective => {
                let mut dims = vec![f];
                dims.extend(c.dims);
                let mut d = vec![a.clone()];
                d.extend(c.d);
                ChainComplex { field: c.field, lo: c.lo - 1, dims, d, homological: false }
            }
            ResolutionKind::Projective => {
                let mut dims = c.dims;
                dims.push(f);
                let mut d = c.d;
                d.push(a.clone());
                ChainComplex { field: c.field, lo: c.lo, dims, d, homological: false }
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        let ends = match self.kind {
            ResolutionKind::Injective => self.complex.lo == 0,
            ResolutionKind::Projective => self.complex.hi() == 0,
        };
        let aug_ok = match self.kind {
            ResolutionKind::Injective => self.augmentation.target == self.complex.term(0),
            ResolutionKind::Projective => self.augmentation.source == self.complex.term(0),
        };
        ends && aug_ok
            && self.augmentation.is_natural()
            && (0..self.object.len()).all(|x| {
                let c = self.augmented_at(x);
                c.is_valid() && c.is_acyclic()
            })
    }

    /// The global complex after pushing every term to a point.
    pub fn global(&self, which: Push) -> ChainComplex {
        self.complex.global(which)
    }
}

/// The four derived theories of the map to a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivedKind {
    /// Rp_* of a sheaf via injectives: sheaf cohomology.
    SheafCohomology,
    /// Lp_† of a sheaf via projectives: sheaf homology.
    SheafHomology,
    /// Lp_* of a cosheaf via projectives: cosheaf homology.
    CosheafHomology,
    /// R of the cosheaf limit via injectives: cosheaf cohomology.
    CosheafCohomology,
}

/// Dimensions of the derived groups in degrees 0, 1, … (H^i or H_i).
/// Padded to degrees 0..=`dim`.
pub fn graded(c: &ChainComplex, homological: bool, dim: usize) -> Vec<usize> {
    let top = if homological { -c.lo } else { c.hi() };
    (0..=top.max(dim as i64))
        .map(|i| if homological { c.betti_c(-i) } else { c.betti_c(i) })
        .collect()
}

pub fn sheaf_cohomology(f: &CellSheaf) -> Vec<usize> {
    graded(&injective_resolution(f).global(Push::Star), false, f.complex.dim())
}

pub fn sheaf_homology(f: &CellSheaf) -> Vec<usize> {
    graded(&projective_resolution(f).global(Push::Dagger), true, f.complex.dim())
}

pub fn cosheaf_homology(f: &CellCosheaf) -> Vec<usize> {
    graded(&projective_resolution(f).global(Push::Star), true, f.complex.dim())
}

pub fn cosheaf_cohomology(f: &CellCosheaf) -> Vec<usize> {
    graded(&injective_resolution(f).global(Push::Dagger), false, f.complex.dim())
}

/// Derived groups computed from a given resolution.
pub fn derived_from<K: Variance>(r: &Resolution<K>) -> Vec<usize> {
    match (r.kind, K::CO) {
        (ResolutionKind::Injective, false) => graded(&r.global(Push::Star), false, r.object.complex.dim()),
        (ResolutionKind::Projective, false) => graded(&r.global(Push::Dagger), true, r.object.complex.dim()),
        (ResolutionKind::Projective, true) => graded(&r.global(Push::Star), true, r.object.complex.dim()),
        (ResolutionKind::Injective, true) => graded(&r.global(Push::Dagger), false, r.object.complex.dim()),
    }
}

pub enum DerivedInput<'a> {
    Sheaf(&'a CellSheaf),
    Cosheaf(&'a CellCosheaf),
}

pub fn derived_functor(kind: DerivedKind, input: DerivedInput<'_>) -> Result<Vec<usize>> {
    match (kind, input) {
        (DerivedKind::SheafCohomology, DerivedInput::Sheaf(f)) => Ok(sheaf_cohomology(f)),
        (DerivedKind::SheafHomology, DerivedInput::Sheaf(f)) => Ok(sheaf_homology(f)),
        (DerivedKind::CosheafHomology, DerivedInput::Cosheaf(f)) => Ok(cosheaf_homology(f)),
        (DerivedKind::CosheafCohomology, DerivedInput::Cosheaf(f)) => Ok(cosheaf_cohomology(f)),
        _ => Err(Error::IncompatibleShapes("derived functor applied to the wrong kind of object".into())),
    }
}

/// Finds ψ: A → B with `post ∘ ψ = target` (post: B → C, target: A → C), if one exists.
pub fn factor_through<K: Variance>(a: &Rep<K>, post: &Morphism<K>, target: &Morphism<K>) -> Option<Morphism<K>> {
    let basis = a.hom_space(&post.source);
    let field = a.field;
    let flat = |m: &Morphism<K>| -> Matrix {
        let entries: Vec<crate::field::Scalar> =
            m.comps.iter().flat_map(|c| (0..c.rows()).flat_map(move |r| c.row(r).to_vec())).collect();
        Matrix::column_vector(field, entries)
    };
    let rhs = flat(target);
    if basis.is_empty() {
        return if target.is_zero() { Some(Morphism::zero(a, &post.source)) } else { None };
    }
    let cols: Vec<Matrix> = basis.iter().map(|phi| flat(&phi.compose(post))).collect();
    let sys = Matrix::hstack(field, rhs.rows(), &cols.iter().collect::<Vec<_>>());
    let coef = sys.solve(&rhs)?;
    let mut out = Morphism::zero(a, &post.source);
    for (i, phi) in basis.iter().enumerate() {
        let c = coef.get(i, 0);
        if !c.is_zero() {
            out = out.add(&phi.scale(c));
        }
    }
    Some(out)
}

/// Lifts the identity of the resolved object to a map between two projective
/// resolutions of it, degree by degree.
pub fn compare_projective<K: Variance>(p: &Resolution<K>, q: &Resolution<K>) -> Result<RepComplexMap<K>> {
    if p.kind != ResolutionKind::Projective || q.kind != ResolutionKind::Projective {
        return Err(Error::IncompatibleShapes("both resolutions must be projective".into()));
    }
    let mut comps = BTreeMap::new();
    let f0 = factor_through(&p.complex.term(0), &q.augmentation, &p.augmentation)
        .ok_or_else(|| Error::NotExact("no lift in degree 0".into()))?;
    comps.insert(0, f0);
    let mut n = -1;
    while n >= p.complex.lo {
        let prev = comps[&(n + 1)].clone();
        let want = p.complex.diff(n).compose(&prev);
        let fnn = factor_through(&p.complex.term(n), &q.complex.diff(n), &want)
            .ok_or_else(|| Error::NotExact(format!("no lift in degree {n}")))?;
        comps.insert(n, fnn);
        n -= 1;
    }
    Ok(RepComplexMap { source: p.complex.clone(), target: q.complex.clone(), comps })
}

/// The map of global complexes induced by a map of complexes.
pub fn global_map<K: Variance>(m: &RepComplexMap<K>, which: Push) -> crate::chain::ChainMap {
    let pt = crate::maps::PosetMap::to_point(&m.source.complex);
    let src = m.source.push(&pt, which).expect("point");
    let tgt = m.target.push(&pt, which).expect("point");
    let mut comps = BTreeMap::new();
    for (&n, c) in &m.comps {
        let a = crate::functors::push(&pt, &m.source.term(n), which).expect("point");
        let b = crate::functors::push(&pt, &m.target.term(n), which).expect("point");
        comps.insert(n, a.induced(&c.comps, &b).comps[0].clone());
    }
    crate::chain::ChainMap { source: src.stalk_complex(0), target: tgt.stalk_complex(0), comps }
}

/// P(F•): the totalization of ⊕_σ [σ̂]^{F^p(σ)} placed in degree p + dim σ.
/// Internal differentials are [σ:γ]ρ, twisted by (−1)^p.
pub fn equivalence_p(fc: &SheafComplex) -> CosheafComplex {
    let c = &fc.complex;
    let field = fc.field;
    let top = c.dim() as i64;
    let (lo, hi) = (fc.lo, fc.hi() + top);
    // summand list of total degree n: (p, σ)
    let summ = |n: i64| -> Vec<(i64, usize)> {
        let mut v = Vec::new();
        for p in fc.lo..=fc.hi() {
            for s in 0..c.len() {
                if p + c.dim_of(s) as i64 == n && fc.term(p).dims[s] > 0 {
                    v.push((p, s));
                }
            }
        }
        v
    };
    let mut terms = Vec::new();
    for n in lo..=hi {
        let parts: Vec<CellCosheaf> = summ(n)
            .into_iter()
            .map(|(p, s)| CellCosheaf::supported_on(c, field, &c.poset().closure(s), fc.term(p).dims[s]))
            .collect();
        terms.push(Rep::direct_sum_all(c, field, &parts));
    }
    let mut diffs = Vec::new();
    for n in lo..hi {
        let (src, dst) = (summ(n), summ(n + 1));
        let comps = (0..c.len())
            .map(|y| {
                let s_here: Vec<(i64, usize)> = src.iter().copied().filter(|&(_, s)| c.leq(y, s)).collect();
                let d_here: Vec<(i64, usize)> = dst.iter().copied().filter(|&(_, s)| c.leq(y, s)).collect();
                block_matrix(field, &d_here, &s_here, |&(p, s)| fc.term(p).dims[s], |&(q, g), &(p, s)| {
                    if q == p + 1 && g == s {
                        Some(fc.diff(p).comps[s].clone())
                    } else if q == p && c.poset().is_cover(s, g) {
                        let sgn = c.sign(s, g) as i64 * if p.rem_euclid(2) == 0 { 1 } else { -1 };
                        Some(fc.term(p).map(s, g).scale(&field.int(sgn)))
                    } else {
                        None
                    }
                })
            })
            .collect();
        let k = (n - lo) as usize;
        diffs.push(Morphism { source: terms[k].clone(), target: terms[k + 1].clone(), comps });
    }
    RepComplex { complex: c.clone(), field, lo, terms, diffs }
}

/// P̂(G•): ⊕_τ [τ]^{G^n(τ)} placed in degree n − dim τ, internal differentials [σ:τ]r twisted by (−1)^n.
pub fn equivalence_p_hat(gc: &CosheafComplex) -> SheafComplex {
    let c = &gc.complex;
    let field = gc.field;
    let top = c.dim() as i64;
    let (lo, hi) = (gc.lo - top, gc.hi());
    let summ = |m: i64| -> Vec<(i64, usize)> {
        let mut v = Vec::new();
        for n in gc.lo..=gc.hi() {
            for t in 0..c.len() {
                if n - c.dim_of(t) as i64 == m && gc.term(n).dims[t] > 0 {
                    v.push((n, t));
                }
            }
        }
        v
    };
    let mut terms = Vec::new();
    for m in lo..=hi {
        let parts: Vec<CellSheaf> = summ(m)
            .into_iter()
            .map(|(n, t)| CellSheaf::supported_on(c, field, &c.poset().closure(t), gc.term(n).dims[t]))
            .collect();
        terms.push(Rep::direct_sum_all(c, field, &parts));
    }
    let mut diffs = Vec::new();
    for m in lo..hi {
        let (src, dst) = (summ(m), summ(m + 1));
        let comps = (0..c.len())
            .map(|y| {
                let s_here: Vec<(i64, usize)> = src.iter().copied().filter(|&(_, t)| c.leq(y, t)).collect();
                let d_here: Vec<(i64, usize)> = dst.iter().copied().filter(|&(_, t)| c.leq(y, t)).collect();
                block_matrix(field, &d_here, &s_here, |&(n, t)| gc.term(n).dims[t], |&(n2, s), &(n, t)| {
                    if n2 == n + 1 && s == t {
                        Some(gc.diff(n).comps[t].clone())
                    } else if n2 == n && c.poset().is_cover(s, t) {
                        let sgn = c.sign(s, t) as i64 * if n.rem_euclid(2) == 0 { 1 } else { -1 };
                        Some(gc.term(n).map(s, t).scale(&field.int(sgn)))
                    } else {
                        None
                    }
                })
            })
            .collect();
        let k = (m - lo) as usize;
        diffs.push(Morphism { source: terms[k].clone(), target: terms[k + 1].clone(), comps });
    }
    RepComplex { complex: c.clone(), field, lo, terms, diffs }
}

fn block_matrix<T>(
    field: Field,
    rows: &[T],
    cols: &[T],
    size: impl Fn(&T) -> usize,
    entry: impl Fn(&T, &T) -> Option<Matrix>,
) -> Matrix {
    let r_total: usize = rows.iter().map(&size).sum();
    let c_total: usize = cols.iter().map(&size).sum();
    let mut m = Matrix::zeros(field, r_total, c_total);
    let mut r0 = 0;
    for r in rows {
        let mut c0 = 0;
        for c in cols {
            if let Some(b) = entry(r, c) {
                m.set_block(r0, c0, &b);
            }
            c0 += size(c);
        }
        r0 += size(r);
    }
    m
}

pub fn p_of_sheaf(f: &CellSheaf) -> CosheafComplex {
    equivalence_p(&RepComplex::single(f, 0))
}

/// P applied to a map of sheaf complexes.
pub fn equivalence_p_map(m: &RepComplexMap<Sheaf>) -> RepComplexMap<Cosheaf> {
    let (a, b) = (equivalence_p(&m.source), equivalence_p(&m.target));
    let c = &m.source.complex;
    let field = a.field;
    let summ = |fc: &SheafComplex, n: i64| -> Vec<(i64, usize)> {
        let mut v = Vec::new();
        for p in fc.lo..=fc.hi() {
            for s in 0..c.len() {
                if p + c.dim_of(s) as i64 == n && fc.term(p).dims[s] > 0 {
                    v.push((p, s));
                }
            }
        }
        v
    };
    let mut comps = BTreeMap::new();
    for n in a.lo.min(b.lo)..=a.hi().max(b.hi()) {
        let (src, dst) = (summ(&m.source, n), summ(&m.target, n));
        let per_cell = (0..c.len())
            .map(|y| {
                let s_here: Vec<(i64, usize)> = src.iter().copied().filter(|&(_, s)| c.leq(y, s)).collect();
                let d_here: Vec<(i64, usize)> = dst.iter().copied().filter(|&(_, s)| c.leq(y, s)).collect();
                let size_of = |&(p, s): &(i64, usize)| {
                    if src.contains(&(p, s)) && s_here.contains(&(p, s)) {
                        m.source.term(p).dims[s]
                    } else {
                        m.target.term(p).dims[s]
                    }
                };
                let r_total: usize = d_here.iter().map(|&(p, s)| m.target.term(p).dims[s]).sum();
                let c_total: usize = s_here.iter().map(|&(p, s)| m.source.term(p).dims[s]).sum();
                let _ = size_of;
                let mut mat = Matrix::zeros(field, r_total, c_total);
                let mut r0 = 0;
                for &(q, g) in &d_here {
                    let mut c0 = 0;
                    for &(p, s) in &s_here {
                        if p == q && s == g {
                            mat.set_block(r0, c0, &m.comp(p).comps[s]);
                        }
                        c0 += m.source.term(p).dims[s];
                    }
                    r0 += m.target.term(q).dims[g];
                }
                mat
            })
            .collect();
        comps.insert(n, Morphism { source: a.term(n), target: b.term(n), comps: per_cell });
    }
    RepComplexMap { source: a, target: b, comps }
}

/// Sign attached to the summand of F(σ) in the unit F → P̂P(F).
fn unit_sign(d: usize) -> i64 {
    if (d * d.saturating_sub(1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The unit map F → P̂P(F) in degree 0: F(y) → ⊕_{σ ≥ y} F(σ), v ↦ (±ρ_{σ,y} v).
pub fn unit_p_hat_p(f: &CellSheaf) -> RepComplexMap<Sheaf> {
    let pf = p_of_sheaf(f);
    let pp = equivalence_p_hat(&pf);
    let c = &f.complex;
    let field = f.field;
    let target0 = pp.term(0);
    // degree-0 summands of P̂P(F): (n, τ) with n = dim τ; the cosheaf P(F)^n at τ
    // is ⊕_{σ ≥ τ, dim σ = n} F(σ), which is F(τ) alone.
    let comps = (0..c.len())
        .map(|y| {
            let mut blocks = Vec::new();
            for t in 0..c.len() {
                if c.leq(y, t) && f.dims[t] > 0 {
                    let s = field.int(unit_sign(c.dim_of(t)));
                    blocks.push(f.composite(y, t).scale(&s));
                }
            }
            Matrix::vstack(field, f.dims[y], &blocks.iter().collect::<Vec<_>>())
        })
        .collect();
    let single = RepComplex::single(f, 0);
    let m = Morphism { source: f.clone(), target: target0, comps };
    RepComplexMap { source: single, target: pp, comps: [(0, m)].into() }
}

/// Verdier dual D(F) = V P(F).
pub fn verdier_dual(f: &CellSheaf) -> SheafComplex {
    p_of_sheaf(f).linear_dual()
}

pub fn verdier_dual_complex(fc: &SheafComplex) -> SheafComplex {
    equivalence_p(fc).linear_dual()
}

/// ω•: ω^{−i} = ⊕_{i-cells γ} [γ], differentials from signed incidences.
pub fn dualizing_complex(c: &Arc<CellComplex>, field: Field) -> SheafComplex {
    verdier_dual(&CellSheaf::constant(c, field, 1))
}

/// Data for Poincaré duality: a complex, its dual complex, and the cell
/// correspondence σ ↦ σ* (order reversing, dim σ* = n − dim σ).
#[derive(Clone, Debug)]
pub struct ManifoldData {
    pub complex: Arc<CellComplex>,
    pub dual: Arc<CellComplex>,
    pub pairing: Vec<usize>,
}

impl ManifoldData {
    pub fn new(complex: Arc<CellComplex>, dual: Arc<CellComplex>, pairs: &[(&str, &str)]) -> Result<ManifoldData> {
        let n = complex.dim();
        if complex.compact_part().len() != complex.len() {
            return Err(Error::NotManifoldData("complex is not compact".into()));
        }
        if dual.len() != complex.len() {
            return Err(Error::NotManifoldData("dual has a different number of cells".into()));
        }
        let mut pairing = vec![usize::MAX; complex.len()];
        for (a, b) in pairs {
            pairing[complex.index_of(a)?] = dual.index_of(b)?;
        }
        let mut seen = vec![false; dual.len()];
        for (i, &j) in pairing.iter().enumerate() {
            if j == usize::MAX || seen[j] {
                return Err(Error::NotManifoldData(format!("{} is not paired with a unique dual cell", complex.id(i))));
            }
            seen[j] = true;
            if dual.dim_of(j) + complex.dim_of(i) != n {
                return Err(Error::NotManifoldData(format!("{} and {} do not have complementary dimensions", complex.id(i), dual.id(j))));
            }
        }
        for a in 0..complex.len() {
            for b in 0..complex.len() {
                if complex.leq(a, b) != dual.leq(pairing[b], pairing[a]) {
                    return Err(Error::NotManifoldData(format!(
                        "pairing does not reverse the order on {} and {}",
                        complex.id(a),
                        complex.id(b)
                    )));
                }
            }
        }
        Ok(ManifoldData { complex, dual, pairing })
    }

    /// Pairs a compact complex with its dual block complex, σ ↦ σ*.
    pub fn from_complex(complex: &Arc<CellComplex>) -> Result<ManifoldData> {
        let dual = Arc::new(complex.dual()?);
        let names: Vec<(String, String)> = complex.cells().iter().map(|c| (c.id.clone(), format!("{}*", c.id))).collect();
        let pairs: Vec<(&str, &str)> = names.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        ManifoldData::new(complex.clone(), dual, &pairs)
    }

    /// F read as a cosheaf on the dual complex.
    pub fn dual_cosheaf(&self, f: &CellSheaf) -> CellCosheaf {
        let mut dims = vec![0; self.dual.len()];
        for (i, &j) in self.pairing.iter().enumerate() {
            dims[j] = f.dims[i];
        }
        let maps = f
            .maps
            .iter()
            .map(|(&(a, b), m)| ((self.pairing[b], self.pairing[a]), m.clone()))
            .collect();
        Rep::new(self.dual.clone(), f.field, dims, maps).expect("order-reversing pairing")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareReport {
    /// (i, dim Hⁱ(X;F), dim H_{n−i}(X;F) sheaf homology, dim H_{n−i}(X*;F) cosheaf homology on the dual)
    pub rows: Vec<(usize, usize, usize, usize)>,
}

impl PoincareReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|&(_, a, b, c)| a == b && b == c)
    }
}

pub fn poincare_check(m: &ManifoldData, f: &CellSheaf) -> Result<PoincareReport> {
    if *f.complex != *m.complex {
        return Err(Error::NotManifoldData("sheaf lives on another complex".into()));
    }
    let n = m.complex.dim();
    let coh = sheaf_cohomology(f);
    let hom = sheaf_homology(f);
    let dual = crate::homology::homology_dims(&m.dual_cosheaf(f));
    let at = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0);
    let rows = (0..=n).map(|i| (i, at(&coh, i), at(&hom, n - i), at(&dual, n - i))).collect();
    Ok(PoincareReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn interval() -> Arc<CellComplex> {
        Arc::new(CellComplex::path(&["x", "y"], &["a"]).unwrap())
    }

    #[test]
    fn stalk_sheaf_injective_resolution() {
        let c = interval();
        let a = c.index_of("a").unwrap();
        let s = CellSheaf::skyscraper(&c, q(), a, 1);
        let r = injective_resolution(&s);
        assert!(r.is_exact());
        assert_eq!(r.len(), 1);
        assert_eq!(r.summands.as_ref().unwrap()[1].len(), 2);
    }

    #[test]
    fn constant_cosheaf_resolutions() {
        let c = interval();
        let k = CellCosheaf::constant(&c, q(), 1);
        let canonical = projective_resolution(&k);
        assert!(canonical.is_exact());
        assert_eq!(canonical.len(), 1);
        let short = Resolution::new(ResolutionKind::Projective, k.clone(), RepComplex::single(&k, 0), Morphism::identity(&k)).unwrap();
        assert_eq!(derived_from(&short), derived_from(&canonical));
        let cmp = compare_projective(&canonical, &short).unwrap();
        assert!(cmp.commutes());
        assert!(global_map(&cmp, Push::Star).is_quasi_isomorphism());
    }

    #[test]
    fn cohomology_agrees_on_interval() {
        let c = interval();
        let k = CellSheaf::constant(&c, q(), 1);
        assert_eq!(sheaf_cohomology(&k), vec![1, 0]);
        assert_eq!(crate::homology::cohomology_dims(&k), vec![1, 0]);
    }

    #[test]
    fn unit_is_quasi_isomorphism() {
        let c = Arc::new(CellComplex::simplicial(&[vec!["1", "2", "3"]]).unwrap());
        let k = CellSheaf::constant(&c, q(), 1);
        let u = unit_p_hat_p(&k);
        assert!(u.commutes());
        assert!(u.is_quasi_isomorphism());
    }

    fn circle() -> Arc<CellComplex> {
        Arc::new(
            CellComplex::builder()
                .cell("x", 0)
                .cell("y", 0)
                .cell("a", 1)
                .cell("b", 1)
                .cover("x", "a", -1)
                .cover("y", "a", 1)
                .cover("y", "b", -1)
                .cover("x", "b", 1)
                .build()
                .unwrap(),
        )
    }

    #[test]
    fn poincare_on_circle() {
        let c = circle();
        let m = ManifoldData::from_complex(&c).unwrap();
        let k = CellSheaf::constant(&c, q(), 1);
        let r = poincare_check(&m, &k).unwrap();
        assert!(r.holds());
        assert_eq!(r.rows, vec![(0, 1, 1, 1), (1, 1, 1, 1)]);
        let twisted = CellSheaf::builder(&c, q())
            .stalk("x", 1)
            .stalk("y", 1)
            .stalk("a", 1)
            .stalk("b", 1)
            .id("x", "a")
            .id("y", "a")
            .id("y", "b")
            .map_i("x", "b", &[&[-1]])
            .build()
            .unwrap();
        let r = poincare_check(&m, &twisted).unwrap();
        assert!(r.holds());
        assert_eq!(r.rows, vec![(0, 0, 0, 0), (1, 0, 0, 0)]);
    }

    #[test]
    fn bad_pairing_rejected() {
        let c = circle();
        let d = Arc::new(c.dual().unwrap());
        let e = ManifoldData::new(c, d, &[("x", "a*"), ("y", "b*"), ("a", "x*"), ("b", "y*")]);
        assert!(matches!(e, Err(Error::NotManifoldData(_))));
    }
}
