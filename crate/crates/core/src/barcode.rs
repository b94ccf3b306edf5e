//! Interval decomposition of sheaves and cosheaves over path complexes.
//!
//! The path is swept from right to left. After each step the suffix carries an
//! interval basis: one vector per bar and cell, mapped to the next vector of
//! the same bar or to zero where the bar stops.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::sheaf::{Rep, Variance};

/// Cells of a path complex in left-to-right order.
pub fn path_order(c: &CellComplex) -> Result<Vec<usize>> {
    let n = c.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if c.dim() > 1 {
        return Err(Error::NotPathComplex("cells of dimension above one".into()));
    }
    let p = c.poset();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|i| p.up_covers(i).iter().chain(p.down_covers(i)).copied().collect()).collect();
    if nbrs.iter().any(|v| v.len() > 2) {
        return Err(Error::NotPathComplex("a cell has more than two neighbours".into()));
    }
    if c.covers().len() + 1 != n {
        return Err(Error::NotPathComplex("not a single path (disconnected or has a loop)".into()));
    }
    let ends: Vec<usize> = (0..n).filter(|&i| nbrs[i].len() <= 1).collect();
    if ends.is_empty() {
        return Err(Error::NotPathComplex("closed loop".into()));
    }
    let walk = |start: usize| {
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = nbrs[cur].iter().find(|&&x| x != prev) {
            order.push(next);
            prev = cur;
            cur = next;
        }
        order
    };
    let order = walk(ends[0]);
    if order.len() != n {
        return Err(Error::NotPathComplex("disconnected".into()));
    }
    // prefer the direction in which edges run from their −1 face to their +1 face
    let agreement: i64 = order
        .windows(2)
        .map(|w| {
            let (l, r) = (w[0], w[1]);
            if c.dim_of(l) == 0 {
                -(c.sign(l, r) as i64)
            } else {
                c.sign(r, l) as i64
            }
        })
        .sum();
    let mut order = order;
    if agreement < 0 || (agreement == 0 && c.id(order[n - 1]) < c.id(order[0])) {
        order.reverse();
    }
    Ok(order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bar {
    /// Positions along the path, inclusive.
    pub start: usize,
    pub end: usize,
    pub left: String,
    pub right: String,
    pub left_closed: bool,
    pub right_closed: bool,
    /// One column vector per cell of the span, in the stalk of that cell.
    pub vectors: Vec<Matrix>,
}

impl Bar {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn kind(&self) -> &'static str {
        match (self.left_closed, self.right_closed) {
            (true, true) => "cc",
            (true, false) => "co",
            (false, true) => "oc",
            (false, false) => "oo",
        }
    }

    pub fn spans(&self, pos: usize) -> bool {
        self.start <= pos && pos <= self.end
    }
}

impl fmt::Display for Bar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.left_closed { '[' } else { ']' };
        let r = if self.right_closed { ']' } else { '[' };
        write!(f, "{l}{}, {}{r}", self.left, self.right)
    }
}

#[derive(Clone, Debug)]
pub struct Barcode {
    pub order: Vec<usize>,
    pub bars: Vec<Bar>,
}

impl Barcode {
    /// Bars grouped by span with multiplicities, in output order.
    pub fn grouped(&self) -> Vec<(Bar, usize)> {
        let mut out: Vec<(Bar, usize)> = Vec::new();
        for b in &self.bars {
            match out.iter_mut().find(|(x, _)| x.start == b.start && x.end == b.end) {
                Some((_, m)) => *m += 1,
                None => out.push((b.clone(), 1)),
            }
        }
        out
    }

    /// One line per distinct bar: `[cellL, cellR] kind=cc mult=n`.
    pub fn lines(&self) -> Vec<String> {
        self.grouped()
            .into_iter()
            .map(|(b, m)| format!("[{}, {}] kind={} mult={m}", b.left, b.right, b.kind()))
            .collect()
    }

    pub fn kinds(&self) -> BTreeMap<&'static str, usize> {
        let mut m = BTreeMap::new();
        for b in &self.bars {
            *m.entry(b.kind()).or_insert(0) += 1;
        }
        m
    }

    /// Multiset of (start, end) spans.
    pub fn spans(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.bars.iter().map(|b| (b.start, b.end)).collect();
        v.sort_unstable();
        v
    }
}

/// (H₀, H₁) read from a barcode: closed bars and open bars.
pub fn barcode_homology(b: &Barcode) -> (usize, usize) {
    let k = b.kinds();
    (k.get("cc").copied().unwrap_or(0), k.get("oo").copied().unwrap_or(0))
}

/// Direction of the structure map between positions i and i+1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Arrow {
    Forward,
    Backward,
}

struct Work {
    start: usize,
    end: usize,
    /// vectors[j - start]
    vecs: Vec<Matrix>,
}

/// Ordering key for modifications: bars whose right end exits forward sort
/// first (by right end ascending), then bars reaching the last cell, then bars
/// exiting backward (by right end descending). Bar b may be added into bar p
/// when key(b) ≤ key(p).
fn key(b: &Work, arrows: &[Arrow], last: usize) -> (u8, i64) {
    if b.end == last {
        (1, 0)
    } else if arrows[b.end] == Arrow::Forward {
        (0, b.end as i64)
    } else {
        (2, -(b.end as i64))
    }
}

/// w_p ← w_p + c·w_b over p's span starting at `from` (w_b is zero beyond its end).
fn add_into(bars: &mut [Work], p: usize, b: usize, c: &crate::field::Scalar, from: usize) {
    let end = bars[p].end;
    for j in from..=end {
        if !bars[b].spans_pos(j) {
            continue;
        }
        let add = bars[b].vecs[j - bars[b].start].scale(c);
        let i = j - bars[p].start;
        bars[p].vecs[i] = bars[p].vecs[i].add(&add);
    }
}

impl Work {
    fn spans_pos(&self, j: usize) -> bool {
        self.start <= j && j <= self.end
    }
}

pub fn zigzag_decompose<K: Variance>(f: &Rep<K>) -> Result<Barcode> {
    let c = &f.complex;
    let order = path_order(c)?;
    let m = order.len();
    let field = f.field;
    if m == 0 {
        return Ok(Barcode { order, bars: Vec::new() });
    }
    let dims: Vec<usize> = order.iter().map(|&x| f.dims[x]).collect();
    // arrows[i] relates positions i and i+1; `maps[i]` is the matrix in its direction
    let mut arrows = Vec::with_capacity(m.saturating_sub(1));
    let mut maps = Vec::with_capacity(m.saturating_sub(1));
    for i in 0..m.saturating_sub(1) {
        let (a, b) = (order[i], order[i + 1]);
        let (face, coface) = if c.dim_of(a) == 0 { (a, b) } else { (b, a) };
        let mat = f.map(face, coface).clone();
        // sheaves map face → coface, cosheaves coface → face
        let goes_right = (face == a) != K::CO;
        arrows.push(if goes_right { Arrow::Forward } else { Arrow::Backward });
        maps.push(mat);
    }
    let last = m - 1;
    let mut bars: Vec<Work> = (0..dims[last])
        .map(|k| Work { start: last, end: last, vecs: vec![unit(field, dims[last], k)] })
        .collect();
    for pos in (0..last).rev() {
        let alive: Vec<usize> = (0..bars.len()).filter(|&b| bars[b].start == pos + 1).collect();
        let at = |bars: &Vec<Work>, b: usize| bars[b].vecs[0].clone();
        match arrows[pos] {
            Arrow::Forward => {
                let g = &maps[pos];
                // total order on alive bars extending the key
                let mut rank_order = alive.clone();
                rank_order.sort_by_key(|&b| (key(&bars[b], &arrows, last), b));
                let basis_mat = if alive.is_empty() {
                    Matrix::zeros(field, dims[pos + 1], 0)
                } else {
                    let cols: Vec<Matrix> = alive.iter().map(|&b| at(&bars, b)).collect();
                    Matrix::hstack(field, dims[pos + 1], &cols.iter().collect::<Vec<_>>())
                };
                // coordinates of the image of each basis vector of V_pos, rows indexed like `alive`
                let coords = basis_mat.solve(g).expect("bar vectors form a basis");
                let row_of: BTreeMap<usize, usize> = alive.iter().enumerate().map(|(r, &b)| (b, r)).collect();
                let mut cols: Vec<Matrix> = (0..dims[pos]).map(|j| coords.block(0, j, coords.rows(), 1)).collect();
                let mut src: Vec<Matrix> = (0..dims[pos]).map(|j| unit(field, dims[pos], j)).collect();
                let mut pivot_of: Vec<Option<usize>> = vec![None; dims[pos]];
                let mut taken: BTreeMap<usize, usize> = BTreeMap::new();
                for j in 0..dims[pos] {
                    loop {
                        let piv = rank_order.iter().rev().copied().find(|&b| !cols[j].get(row_of[&b], 0).is_zero());
                        let Some(p) = piv else { break };
                        match taken.get(&p) {
                            Some(&k) => {
                                let factor = cols[j].get(row_of[&p], 0).checked_div(cols[k].get(row_of[&p], 0)).unwrap();
                                cols[j] = cols[j].sub(&cols[k].scale(&factor));
                                src[j] = src[j].sub(&src[k].scale(&factor));
                            }
                            None => {
                                taken.insert(p, j);
                                pivot_of[j] = Some(p);
                                break;
                            }
                        }
                    }
                }
                // normalise pivots to 1 and rewrite pivot bars
                let mut new_bars = Vec::new();
                for j in 0..dims[pos] {
                    match pivot_of[j] {
                        Some(p) => {
                            let lead = cols[j].get(row_of[&p], 0).clone();
                            let inv = lead.inv().unwrap();
                            let u = cols[j].scale(&inv);
                            let v = src[j].scale(&inv);
                            // w_p ← Σ u_b w_b, done with the original families
                            let originals: Vec<Vec<Matrix>> = alive.iter().map(|&b| bars[b].vecs.clone()).collect();
                            let mut fam: Vec<Matrix> = bars[p].vecs.iter().map(|x| Matrix::zeros(field, x.rows(), 1)).collect();
                            for (r, &b) in alive.iter().enumerate() {
                                let coef = u.get(r, 0);
                                if coef.is_zero() {
                                    continue;
                                }
                                for (i, x) in fam.iter_mut().enumerate() {
                                    let jpos = bars[p].start + i;
                                    if bars[b].spans_pos(jpos) {
                                        *x = x.add(&originals[r][jpos - bars[b].start].scale(coef));
                                    }
                                }
                            }
                            let mut vecs = vec![v];
                            vecs.extend(fam);
                            new_bars.push((p, vecs));
                        }
                        None => {
                            bars.push(Work { start: pos, end: pos, vecs: vec![src[j].clone()] });
                        }
                    }
                }
                for (p, vecs) in new_bars {
                    bars[p].start = pos;
                    bars[p].vecs = vecs;
                }
            }
            Arrow::Backward => {
                let g = &maps[pos];
                let mut inc = alive.clone();
                inc.sort_by_key(|&b| (key(&bars[b], &arrows, last), b));
                let mut extended: Vec<usize> = Vec::new();
                let mut images: Vec<Matrix> = Vec::new();
                for &p in &inc {
                    let h = g.mul(&at(&bars, p));
                    let sol = if images.is_empty() {
                        if h.is_zero() {
                            Some(Matrix::zeros(field, 0, 1))
                        } else {
                            None
                        }
                    } else {
                        Matrix::hstack(field, dims[pos], &images.iter().collect::<Vec<_>>()).solve(&h)
                    };
                    match sol {
                        Some(coef) => {
                            for (k, &q) in extended.iter().enumerate() {
                                let c0 = coef.get(k, 0);
                                if !c0.is_zero() {
                                    add_into(&mut bars, p, q, &-c0.clone(), pos + 1);
                                }
                            }
                        }
                        None => {
                            extended.push(p);
                            images.push(h);
                        }
                    }
                }
                for (&p, h) in extended.iter().zip(&images) {
                    bars[p].start = pos;
                    bars[p].vecs.insert(0, h.clone());
                }
                // complete the images to a basis of V_pos
                let span = if images.is_empty() {
                    Matrix::zeros(field, dims[pos], 0)
                } else {
                    Matrix::hstack(field, dims[pos], &images.iter().collect::<Vec<_>>())
                };
                let mut cur = span;
                for k in 0..dims[pos] {
                    let e = unit(field, dims[pos], k);
                    let trial = Matrix::hstack(field, dims[pos], &[&cur, &e]);
                    if trial.rank() > cur.cols() {
                        cur = trial;
                        bars.push(Work { start: pos, end: pos, vecs: vec![e] });
                    }
                }
            }
        }
    }
    let mut out: Vec<Bar> = bars
        .into_iter()
        .map(|w| {
            let (l, r) = (order[w.start], order[w.end]);
            Bar {
                start: w.start,
                end: w.end,
                left: c.id(l).to_string(),
                right: c.id(r).to_string(),
                left_closed: c.dim_of(l) == 0,
                right_closed: c.dim_of(r) == 0,
                vectors: w.vecs,
            }
        })
        .collect();
    out.sort_by_key(|b| (std::cmp::Reverse(b.len()), b.start));
    let bc = Barcode { order, bars: out };
    if !verify(f, &bc) {
        return Err(Error::InvalidSheaf("interval basis failed reconstruction".into()));
    }
    Ok(bc)
}

fn unit(field: Field, n: usize, k: usize) -> Matrix {
    Matrix::from_fn(field, n, 1, |i, _| if i == k { field.one() } else { field.zero() })
}

/// The interval object k on the cells of a bar with identity maps inside.
pub fn bar_object<K: Variance>(complex: &Arc<CellComplex>, field: Field, order: &[usize], bar: &Bar) -> Rep<K> {
    let cells: Vec<usize> = order[bar.start..=bar.end].to_vec();
    Rep::supported_on(complex, field, &cells, 1)
}

/// Change-of-basis witnesses: at each cell, the bar vectors as columns in bar order.
pub fn witnesses<K: Variance>(f: &Rep<K>, b: &Barcode) -> Vec<Matrix> {
    let mut pos = vec![usize::MAX; f.len()];
    for (i, &x) in b.order.iter().enumerate() {
        pos[x] = i;
    }
    (0..f.len())
        .map(|x| {
            let cols: Vec<&Matrix> =
                b.bars.iter().filter(|bar| bar.spans(pos[x])).map(|bar| &bar.vectors[pos[x] - bar.start]).collect();
            Matrix::hstack(f.field, f.dims[x], &cols)
        })
        .collect()
}

/// Reconstruction: the direct sum of the bar objects is isomorphic to `f`
/// through the recorded vectors.
pub fn verify<K: Variance>(f: &Rep<K>, b: &Barcode) -> bool {
    let parts: Vec<Rep<K>> = b.bars.iter().map(|bar| bar_object(&f.complex, f.field, &b.order, bar)).collect();
    f.is_decomposition(&parts, &witnesses(f, b))
}
