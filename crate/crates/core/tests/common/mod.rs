#![allow(dead_code)]

pub mod fixtures;
pub mod oracle;
pub mod random;

use std::sync::Arc;

use cellsheaf::complex::CellComplex;
use cellsheaf::maps::PosetMap;

/// A 2-complex from vertices, edges (id, tail, head) and faces given as edge
/// cycles. Each face is oriented by walking its cycle.
pub fn surface(vertices: &[&str], edges: &[(&str, &str, &str)], faces: &[(&str, &[&str])]) -> CellComplex {
    let mut b = CellComplex::builder();
    for v in vertices {
        b = b.cell(v, 0);
    }
    for (e, t, h) in edges {
        b = b.cell(e, 1).cover(t, e, -1).cover(h, e, 1);
    }
    let ends = |e: &str| {
        let (_, t, h) = edges.iter().find(|x| x.0 == e).expect("edge");
        (*t, *h)
    };
    for (f, cycle) in faces {
        b = b.cell(f, 2);
        let (t0, h0) = ends(cycle[0]);
        let (t1, h1) = ends(cycle[1 % cycle.len()]);
        // start at the vertex shared by the first two edges
        let mut at = if h0 == t1 || h0 == h1 { h0 } else { t0 };
        b = b.cover(cycle[0], f, if at == h0 { 1 } else { -1 });
        for e in &cycle[1..] {
            let (t, h) = ends(e);
            let forward = at == t;
            b = b.cover(e, f, if forward { 1 } else { -1 });
            at = if forward { h } else { t };
        }
    }
    b.build().expect("surface")
}

pub fn path7() -> Arc<CellComplex> {
    Arc::new(CellComplex::path(&["x", "y", "z", "w"], &["a", "b", "c"]).unwrap())
}

/// Two-cell sphere over the path s – m – n with meridians e1, e2.
pub fn sphere_height() -> PosetMap {
    let y = Arc::new(surface(
        &["s", "n"],
        &[("e1", "s", "n"), ("e2", "s", "n")],
        &[("D1", &["e1", "e2"]), ("D2", &["e2", "e1"])],
    ));
    let x = Arc::new(CellComplex::path(&["y", "z"], &["a"]).unwrap());
    PosetMap::new(&y, &x, &[("s", "y"), ("n", "z"), ("e1", "a"), ("e2", "a"), ("D1", "a"), ("D2", "a")]).unwrap()
}

/// Upright torus: minimum p, saddle levels (figure eights at y and z), maximum r.
pub fn torus_height() -> PosetMap {
    let vertices = ["p", "q", "u1", "u2", "Q", "U1", "U2", "r"];
    let edges = [
        ("g1", "q", "u1"),
        ("g2", "u1", "q"),
        ("h1", "q", "u2"),
        ("h2", "u2", "q"),
        ("G1", "Q", "U1"),
        ("G2", "U1", "Q"),
        ("H1", "Q", "U2"),
        ("H2", "U2", "Q"),
        ("pq", "p", "q"),
        ("pq2", "p", "q"),
        ("pu1", "p", "u1"),
        ("pu2", "p", "u2"),
        ("sq", "q", "Q"),
        ("sq2", "q", "Q"),
        ("su1", "u1", "U1"),
        ("su2", "u2", "U2"),
        ("rq", "Q", "r"),
        ("rq2", "Q", "r"),
        ("ru1", "U1", "r"),
        ("ru2", "U2", "r"),
    ];
    let faces: [(&str, &[&str]); 12] = [
        ("T1", &["pq", "g1", "pu1"]),
        ("T2", &["pu1", "g2", "pq2"]),
        ("T3", &["pq2", "h1", "pu2"]),
        ("T4", &["pu2", "h2", "pq"]),
        ("S1", &["g1", "su1", "G1", "sq"]),
        ("S2", &["g2", "sq", "G2", "su1"]),
        ("S3", &["h1", "su2", "H1", "sq2"]),
        ("S4", &["h2", "sq2", "H2", "su2"]),
        ("R1", &["rq", "G1", "ru1"]),
        ("R2", &["ru1", "G2", "rq2"]),
        ("R3", &["rq2", "H1", "ru2"]),
        ("R4", &["ru2", "H2", "rq"]),
    ];
    let y = Arc::new(surface(&vertices, &edges, &faces));
    let x = path7();
    let mut pairs: Vec<(&str, &str)> = vec![("p", "x"), ("r", "w")];
    for v in ["q", "u1", "u2", "g1", "g2", "h1", "h2"] {
        pairs.push((v, "y"));
    }
    for v in ["Q", "U1", "U2", "G1", "G2", "H1", "H2"] {
        pairs.push((v, "z"));
    }
    for v in ["pq", "pq2", "pu1", "pu2", "T1", "T2", "T3", "T4"] {
        pairs.push((v, "a"));
    }
    for v in ["sq", "sq2", "su1", "su2", "S1", "S2", "S3", "S4"] {
        pairs.push((v, "b"));
    }
    for v in ["rq", "rq2", "ru1", "ru2", "R1", "R2", "R3", "R4"] {
        pairs.push((v, "c"));
    }
    PosetMap::new(&y, &x, &pairs).unwrap()
}
