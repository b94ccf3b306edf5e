//! Homotopy (co)limits over a finite poset by the bar construction, written
//! against raw stalk maps only. Used to check the resolution pipeline.

use std::collections::BTreeMap;

use cellsheaf::matrix::Matrix;
use cellsheaf::sheaf::{CellCosheaf, CellSheaf};
use cellsheaf::Field;

/// A functor on a finite poset: `arrows[(a, b)]` = F(a → b) for every a < b.
struct Functor {
    field: Field,
    dims: Vec<usize>,
    arrows: BTreeMap<(usize, usize), Matrix>,
}

fn chains(f: &Functor) -> Vec<Vec<Vec<usize>>> {
    let n = f.dims.len();
    let mut out = vec![(0..n).map(|i| vec![i]).collect::<Vec<_>>()];
    loop {
        let next: Vec<Vec<usize>> = out
            .last()
            .unwrap()
            .iter()
            .flat_map(|ch| {
                let top = *ch.last().unwrap();
                (0..n).filter(move |&b| f.arrows.contains_key(&(top, b))).map(move |b| {
                    let mut e = ch.clone();
                    e.push(b);
                    e
                })
            })
            .collect();
        if next.is_empty() {
            return out;
        }
        out.push(next);
    }
}

fn offsets(list: &[Vec<usize>], dim: impl Fn(&[usize]) -> usize) -> (Vec<usize>, usize) {
    let mut o = Vec::with_capacity(list.len());
    let mut t = 0;
    for ch in list {
        o.push(t);
        t += dim(ch);
    }
    (o, t)
}

/// maps[k] joins degrees k and k+1 in either direction; only ranks matter.
fn betti(sizes: &[usize], maps: &[Matrix]) -> Vec<usize> {
    let rank = |k: usize| maps.get(k).map_or(0, Matrix::rank);
    (0..sizes.len())
        .map(|k| sizes[k] - rank(k) - if k == 0 { 0 } else { rank(k - 1) })
        .collect()
}

/// H_n(hocolim F): C_n = ⊕_{p0<…<pn} F(p0), face 0 applies F(p0 → p1).
fn hocolim(f: &Functor) -> Vec<usize> {
    let cs = chains(f);
    let lay: Vec<(Vec<usize>, usize)> = cs.iter().map(|l| offsets(l, |ch| f.dims[ch[0]])).collect();
    let mut maps = Vec::new();
    for n in 1..cs.len() {
        let (so, st) = &lay[n];
        let (to, tt) = &lay[n - 1];
        let mut m = Matrix::zeros(f.field, *tt, *st);
        for (ci, ch) in cs[n].iter().enumerate() {
            for i in 0..ch.len() {
                let mut face = ch.clone();
                face.remove(i);
                let fi = cs[n - 1].iter().position(|c| *c == face).unwrap();
                let sign = f.field.int(if i % 2 == 0 { 1 } else { -1 });
                let block = if i == 0 {
                    f.arrows[&(ch[0], ch[1])].clone()
                } else {
                    Matrix::identity(f.field, f.dims[ch[0]])
                };
                m.add_block(to[fi], so[ci], &block.scale(&sign));
            }
        }
        maps.push(m);
    }
    let sizes: Vec<usize> = lay.iter().map(|x| x.1).collect();
    betti(&sizes, &maps)
}

/// H^n(holim F): C^n = ⊕_{p0<…<pn} F(pn), the last coface applies F(pn → pn+1).
fn holim(f: &Functor) -> Vec<usize> {
    let cs = chains(f);
    let lay: Vec<(Vec<usize>, usize)> = cs.iter().map(|l| offsets(l, |ch| f.dims[*ch.last().unwrap()])).collect();
    let mut maps = Vec::new();
    for n in 0..cs.len().saturating_sub(1) {
        let (so, st) = &lay[n];
        let (to, tt) = &lay[n + 1];
        let mut m = Matrix::zeros(f.field, *tt, *st);
        for (ci, ch) in cs[n + 1].iter().enumerate() {
            let last = ch.len() - 1;
            for i in 0..ch.len() {
                let mut face = ch.clone();
                face.remove(i);
                let fi = cs[n].iter().position(|c| *c == face).unwrap();
                let sign = f.field.int(if i % 2 == 0 { 1 } else { -1 });
                let block = if i == last {
                    f.arrows[&(ch[last - 1], ch[last])].clone()
                } else {
                    Matrix::identity(f.field, f.dims[ch[last]])
                };
                m.add_block(to[ci], so[fi], &block.scale(&sign));
            }
        }
        maps.push(m);
    }
    let sizes: Vec<usize> = lay.iter().map(|x| x.1).collect();
    betti(&sizes, &maps)
}

fn on_sheaf(f: &CellSheaf) -> Functor {
    let n = f.len();
    let arrows = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && f.complex.leq(a, b))
        .map(|(a, b)| ((a, b), f.composite(a, b)))
        .collect();
    Functor { field: f.field, dims: f.dims.clone(), arrows }
}

fn on_cosheaf(g: &CellCosheaf) -> Functor {
    let n = g.len();
    let arrows = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && g.complex.leq(b, a))
        .map(|(a, b)| ((a, b), g.composite(b, a)))
        .collect();
    Functor { field: g.field, dims: g.dims.clone(), arrows }
}

pub fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Lp_† F
pub fn sheaf_homology(f: &CellSheaf) -> Vec<usize> {
    trim(hocolim(&on_sheaf(f)))
}

/// Rp_* F
pub fn sheaf_cohomology(f: &CellSheaf) -> Vec<usize> {
    trim(holim(&on_sheaf(f)))
}

/// Lp_* G
pub fn cosheaf_homology(g: &CellCosheaf) -> Vec<usize> {
    trim(hocolim(&on_cosheaf(g)))
}

/// Rp_† G
pub fn cosheaf_cohomology(g: &CellCosheaf) -> Vec<usize> {
    trim(holim(&on_cosheaf(g)))
}
