use std::collections::BTreeSet;
use std::sync::Arc;

use cellsheaf::complex::{Cell, CellComplex};
use cellsheaf::maps::PosetMap;
use cellsheaf::netcode::CodedGraph;
use cellsheaf::matrix::Matrix;
use cellsheaf::sheaf::{injective_sheaf, projective_sheaf, CellCosheaf, CellSheaf, Morphism, Rep, Sheaf};
use cellsheaf::Field;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn matrix(r: &mut Rng8, field: Field, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| field.int(r.gen_range(-2..=2)))
}

pub fn invertible(r: &mut Rng8, field: Field, n: usize) -> Matrix {
    loop {
        let g = matrix(r, field, n, n);
        if g.inverse().is_some() {
            return g;
        }
    }
}

/// A simplicial complex on up to 5 vertices with at most `max_cells` cells.
/// With `open`, one vertex is sent to infinity: it is deleted and the
/// cells that contained it become non-compact.
pub fn complex(r: &mut Rng8, max_cells: usize, open: bool) -> Arc<CellComplex> {
    let names = ["p", "q", "r", "s", "t", "u"];
    loop {
        let nv = r.gen_range(2..=5);
        let mut facets: Vec<Vec<&str>> = Vec::new();
        for _ in 0..r.gen_range(1..=4) {
            let k = r.gen_range(1..=3.min(nv));
            let mut f: Vec<&str> = names[..nv].choose_multiple(r, k).copied().collect();
            f.sort_unstable();
            facets.push(f);
        }
        let full = CellComplex::simplicial(&facets).unwrap();
        let c = if !open {
            full
        } else {
            let vs = full.vertex_sets().unwrap();
            let verts = full.cells_of_dim(0);
            let at = verts[r.gen_range(0..verts.len())];
            let keep: BTreeSet<usize> = (0..full.len()).filter(|&i| i != at).collect();
            let cells: Vec<Cell> = keep
                .iter()
                .map(|&i| Cell { id: full.id(i).to_string(), dim: full.dim_of(i), compact: !vs[i].contains(&at) })
                .collect();
            let covers = full
                .covers()
                .iter()
                .filter(|(a, b)| keep.contains(a) && keep.contains(b))
                .map(|&(a, b)| (full.id(a).to_string(), full.id(b).to_string(), full.sign(a, b)))
                .collect();
            match CellComplex::new(cells, covers) {
                Ok(c) => c,
                Err(_) => continue,
            }
        };
        if !c.is_empty() && c.len() <= max_cells && c.validate().passed() {
            return Arc::new(c);
        }
    }
}

fn elementary_sum(r: &mut Rng8, c: &Arc<CellComplex>, field: Field, pieces: usize) -> CellSheaf {
    let parts: Vec<CellSheaf> = (0..pieces)
        .map(|_| {
            let s = r.gen_range(0..c.len());
            let n = r.gen_range(1..=2);
            match r.gen_range(0..3) {
                0 => injective_sheaf(c, field, s, n),
                1 => projective_sheaf(c, field, s, n),
                _ => CellSheaf::constant(c, field, 1),
            }
        })
        .collect();
    Rep::direct_sum_all(c, field, &parts)
}

fn random_morphism(r: &mut Rng8, a: &CellSheaf, b: &CellSheaf) -> Morphism<Sheaf> {
    let basis = a.hom_space(b);
    let mut m = Morphism::zero(a, b);
    for phi in &basis {
        let k = r.gen_range(-2..=2);
        if k != 0 {
            m = m.add(&phi.scale(&a.field.int(k)));
        }
    }
    m
}

/// Kernel or cokernel of a random map between sums of elementary and constant
/// sheaves, in a random stalk basis.
pub fn sheaf(r: &mut Rng8, c: &Arc<CellComplex>, field: Field) -> CellSheaf {
    let na = r.gen_range(1..=3);
    let a = elementary_sum(r, c, field, na);
    let nb = r.gen_range(1..=3);
    let b = elementary_sum(r, c, field, nb);
    let phi = random_morphism(r, &a, &b);
    let f = if r.gen_bool(0.5) { phi.kernel().0 } else { phi.cokernel().0 };
    let g: Vec<Matrix> = f.dims.iter().map(|&n| invertible(r, field, n)).collect();
    f.conjugate(&g).unwrap()
}

pub fn cosheaf(r: &mut Rng8, c: &Arc<CellComplex>, field: Field) -> CellCosheaf {
    sheaf(r, c, field).linear_dual()
}

/// The simplicial map induced by a random vertex map; None when some image
/// simplex is missing from the target.
pub fn poset_map(r: &mut Rng8, source: &Arc<CellComplex>, target: &Arc<CellComplex>) -> Option<PosetMap> {
    let sv = source.vertex_sets().ok()?;
    let tv = target.vertex_sets().ok()?;
    let tverts: Vec<usize> = (0..target.len()).filter(|&i| target.dim_of(i) == 0).collect();
    let svertex: Vec<usize> = (0..source.len()).filter(|&i| source.dim_of(i) == 0).collect();
    let img: Vec<usize> = svertex.iter().map(|_| tverts[r.gen_range(0..tverts.len())]).collect();
    let mut assign = Vec::with_capacity(source.len());
    for x in 0..source.len() {
        let set: BTreeSet<usize> = sv[x]
            .iter()
            .map(|v| img[svertex.iter().position(|w| w == v).unwrap()])
            .flat_map(|t| tv[t].iter().copied().collect::<Vec<_>>())
            .collect();
        assign.push((0..target.len()).find(|&t| tv[t] == set)?);
    }
    let pairs: Vec<(String, String)> =
        assign.iter().enumerate().map(|(x, &t)| (source.id(x).to_string(), target.id(t).to_string())).collect();
    let pairs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let f = PosetMap::new(source, target, &pairs).ok()?;
    f.is_valid().then_some(f)
}

/// A closed directed multigraph (forward edges plus backward decoding edges)
/// with unit capacities and partial permutation codings.
pub fn routing_graph(r: &mut Rng8, field: Field) -> CodedGraph {
    let n = r.gen_range(2..=5);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for _ in 0..r.gen_range(1..=7) {
        let a = r.gen_range(0..n);
        let b = r.gen_range(0..n);
        if a != b {
            edges.push((a, b));
        }
    }
    let mut g = CodedGraph::new(field);
    for v in &names {
        g = g.vertex(v);
    }
    for (k, &(a, b)) in edges.iter().enumerate() {
        g = g.edge(&format!("e{k}"), Some(&names[a]), Some(&names[b]), 1);
    }
    for (v, name) in names.iter().enumerate() {
        let ins = edges.iter().filter(|e| e.1 == v).count();
        let outs = edges.iter().filter(|e| e.0 == v).count();
        let mut rows: Vec<usize> = (0..outs).collect();
        rows.shuffle(r);
        let mut m = Matrix::zeros(field, outs, ins);
        for col in 0..ins {
            if let Some(&row) = rows.get(col) {
                if r.gen_bool(0.8) {
                    m.set(row, col, field.one());
                }
            }
        }
        g = g.code(name, m);
    }
    g
}
