use std::sync::Arc;

use cellsheaf::complex::CellComplex;
use cellsheaf::io::Document;
use cellsheaf::maps::{CellularMap, PosetMap};
use cellsheaf::matrix::Matrix;
use cellsheaf::netcode::CodedGraph;
use cellsheaf::sensing::SensorNerve;
use cellsheaf::sheaf::{CellCosheaf, CellSheaf};
use cellsheaf::Field;

use super::path7;

pub fn q() -> Field {
    Field::Rational
}

pub fn m(rows: &[&[i64]]) -> Matrix {
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_i64(q(), rows, cols)
}

fn arc(c: CellComplex) -> Arc<CellComplex> {
    Arc::new(c)
}

pub fn path3() -> Arc<CellComplex> {
    arc(CellComplex::path(&["x", "y"], &["a"]).unwrap())
}

// Čech nerves

pub fn cech_triangle() -> CellCosheaf {
    let c = arc(CellComplex::simplicial(&[vec!["x", "y", "z"]]).unwrap());
    CellCosheaf::constant(&c, q(), 1)
}

/// Two sets meeting in three components.
pub fn cech_two_sets() -> CellCosheaf {
    let c = arc(CellComplex::simplicial(&[vec!["U", "V"]]).unwrap());
    CellCosheaf::builder(&c, q())
        .stalk("U", 1)
        .stalk("V", 1)
        .stalk("UV", 3)
        .map_i("U", "UV", &[&[1, 1, 1]])
        .map_i("V", "UV", &[&[1, 1, 1]])
        .build()
        .unwrap()
}

// Functor table

/// [0,1) as x' < a' with a' open.
pub fn half_open() -> Arc<CellComplex> {
    arc(CellComplex::builder().cell("x'", 0).open_cell("a'", 1).cover("x'", "a'", -1).build().unwrap())
}

pub fn half_open_sheaf() -> CellSheaf {
    CellSheaf::builder(&half_open(), q()).stalk("x'", 2).stalk("a'", 1).map_i("x'", "a'", &[&[1, 0]]).build().unwrap()
}

pub fn to_point_map() -> CellularMap {
    let pt = arc(CellComplex::builder().cell("*", 0).build().unwrap());
    CellularMap::new(PosetMap::new(&half_open(), &pt, &[("x'", "*"), ("a'", "*")]).unwrap())
        .with_open_fibers(&["a'"])
        .unwrap()
}

pub fn into_interval_map() -> CellularMap {
    CellularMap::new(PosetMap::new(&half_open(), &path3(), &[("x'", "x"), ("a'", "a")]).unwrap())
}

/// x' < a' > y' < b' with b' missing its end at x'.
pub fn broken_circle() -> Arc<CellComplex> {
    arc(CellComplex::builder()
        .cell("x'", 0)
        .cell("y'", 0)
        .cell("a'", 1)
        .open_cell("b'", 1)
        .cover("x'", "a'", -1)
        .cover("y'", "a'", 1)
        .cover("y'", "b'", -1)
        .build()
        .unwrap())
}

pub fn circle() -> Arc<CellComplex> {
    arc(CellComplex::builder()
        .cell("x", 0)
        .cell("y", 0)
        .cell("a", 1)
        .cell("b", 1)
        .cover("x", "a", -1)
        .cover("y", "a", 1)
        .cover("y", "b", -1)
        .cover("x", "b", 1)
        .build()
        .unwrap())
}

pub fn broken_circle_sheaf() -> CellSheaf {
    CellSheaf::builder(&broken_circle(), q())
        .stalk("x'", 2)
        .stalk("y'", 1)
        .stalk("a'", 1)
        .stalk("b'", 1)
        .map_i("x'", "a'", &[&[1, 1]])
        .id("y'", "a'")
        .id("y'", "b'")
        .build()
        .unwrap()
}

pub fn to_circle_map() -> CellularMap {
    let pairs = [("x'", "x"), ("y'", "y"), ("a'", "a"), ("b'", "b")];
    CellularMap::new(PosetMap::new(&broken_circle(), &circle(), &pairs).unwrap())
}

// Intervals

pub fn open_interval() -> CellSheaf {
    let c = arc(CellComplex::builder()
        .cell("x", 0)
        .open_cell("a", 1)
        .open_cell("b", 1)
        .cover("x", "a", 1)
        .cover("x", "b", -1)
        .build()
        .unwrap());
    CellSheaf::constant(&c, q(), 1)
}

pub fn half_open_constant() -> CellSheaf {
    CellSheaf::constant(&half_open(), q(), 1)
}

// Barcodes over paths

pub fn sphere_f0() -> CellCosheaf {
    CellCosheaf::constant(&path3(), q(), 1)
}

pub fn sphere_f1() -> CellCosheaf {
    CellCosheaf::builder(&path3(), q()).stalk("a", 1).build().unwrap()
}

pub fn cone_f1() -> CellCosheaf {
    CellCosheaf::builder(&path3(), q()).stalk("a", 1).stalk("y", 1).id("y", "a").build().unwrap()
}

pub fn torus_f1() -> CellCosheaf {
    CellCosheaf::builder(&path7(), q())
        .stalk("a", 1)
        .stalk("y", 2)
        .stalk("b", 2)
        .stalk("z", 2)
        .stalk("c", 1)
        .map_i("y", "a", &[&[1], &[1]])
        .id("y", "b")
        .id("z", "b")
        .map_i("z", "c", &[&[1], &[1]])
        .build()
        .unwrap()
}

pub fn mobile_sensor() -> CellCosheaf {
    CellCosheaf::builder(&path7(), q())
        .stalk("x", 1)
        .stalk("a", 1)
        .stalk("y", 2)
        .stalk("b", 3)
        .stalk("z", 2)
        .stalk("c", 1)
        .stalk("w", 1)
        .id("x", "a")
        .map_i("y", "a", &[&[1], &[0]])
        .map_i("y", "b", &[&[1, 0, 0], &[0, 1, 1]])
        .map_i("z", "b", &[&[1, 1, 0], &[0, 0, 1]])
        .map_i("z", "c", &[&[0], &[1]])
        .id("w", "c")
        .build()
        .unwrap()
}

pub fn d4_sheaf() -> CellSheaf {
    CellSheaf::builder(&path7(), q())
        .stalk("x", 1)
        .stalk("a", 2)
        .stalk("y", 3)
        .stalk("b", 3)
        .stalk("z", 3)
        .stalk("c", 2)
        .stalk("w", 1)
        .map_i("x", "a", &[&[1], &[0]])
        .map_i("y", "a", &[&[1, 0, 0], &[0, 1, 1]])
        .id("y", "b")
        .id("z", "b")
        .map_i("z", "c", &[&[1, 1, 0], &[0, 0, 1]])
        .map_i("w", "c", &[&[0], &[1]])
        .build()
        .unwrap()
}

pub fn no_flow_sheaf() -> CellSheaf {
    CellSheaf::builder(&path7(), q())
        .stalk("x", 1)
        .stalk("a", 1)
        .stalk("y", 1)
        .stalk("b", 3)
        .stalk("z", 1)
        .stalk("c", 1)
        .stalk("w", 1)
        .id("x", "a")
        .id("y", "a")
        .map_i("y", "b", &[&[1], &[0], &[0]])
        .map_i("z", "b", &[&[0], &[0], &[1]])
        .id("z", "c")
        .id("w", "c")
        .build()
        .unwrap()
}

// Graphs

pub fn decoding_wire() -> CodedGraph {
    let half = q().frac(1, 2).unwrap();
    CodedGraph::new(q())
        .vertex("s")
        .vertex("t")
        .edge("a", Some("s"), Some("t"), 1)
        .edge("b", Some("s"), Some("t"), 1)
        .edge("c", Some("t"), Some("s"), 1)
        .code("s", m(&[&[1], &[1]]))
        .code("t", Matrix::from_rows(q(), vec![vec![half.clone(), half]], 2).unwrap())
}

/// Pseudo network coding: s emits two units that the relays discard.
pub fn routing_no_decoding() -> CodedGraph {
    CodedGraph::new(q())
        .vertex("s")
        .vertex("u")
        .vertex("w")
        .vertex("t")
        .source("s", 2)
        .edge("su", Some("s"), Some("u"), 1)
        .edge("sw", Some("s"), Some("w"), 1)
        .edge("ut", Some("u"), Some("t"), 1)
        .edge("wt", Some("w"), Some("t"), 1)
        .code("s", m(&[&[1, 0], &[0, 1]]))
        .code("u", m(&[&[0]]))
        .code("w", m(&[&[0]]))
}

/// Decoding edges t → s close the graph; the relays still discard.
pub fn routing_decoding() -> CodedGraph {
    CodedGraph::new(q())
        .vertex("s")
        .vertex("u")
        .vertex("w")
        .vertex("t")
        .edge("su", Some("s"), Some("u"), 1)
        .edge("sw", Some("s"), Some("w"), 1)
        .edge("ut", Some("u"), Some("t"), 1)
        .edge("wt", Some("w"), Some("t"), 1)
        .edge("d1", Some("t"), Some("s"), 1)
        .edge("d2", Some("t"), Some("s"), 1)
        .code("s", m(&[&[1, 0], &[0, 1]]))
        .code("u", m(&[&[0]]))
        .code("w", m(&[&[0]]))
        .code("t", m(&[&[1, 0], &[0, 1]]))
}

pub fn nc_one() -> CodedGraph {
    CodedGraph::new(q())
        .vertex("s")
        .vertex("t")
        .edge("a", Some("s"), Some("t"), 1)
        .edge("b", Some("s"), Some("t"), 1)
        .edge("c", Some("t"), Some("s"), 1)
        .code("s", m(&[&[1], &[0]]))
        .code("t", m(&[&[1, 0]]))
}

pub fn two_decoding_wires() -> CodedGraph {
    CodedGraph::new(q())
        .vertex("s")
        .vertex("t")
        .edge("a", Some("s"), Some("t"), 1)
        .edge("b", Some("s"), Some("t"), 1)
        .edge("c", Some("t"), Some("s"), 1)
        .edge("d", Some("t"), Some("s"), 1)
        .code("s", m(&[&[1, 0], &[0, 1]]))
        .code("t", m(&[&[1, 0], &[0, 1]]))
}

// Sensing

fn axis(n: usize, i: usize) -> Matrix {
    Matrix::from_fn(q(), n, 1, |r, _| if r == i { q().one() } else { q().zero() })
}

pub fn red_green() -> SensorNerve {
    let c = arc(CellComplex::simplicial(&[vec!["r", "g"]]).unwrap());
    SensorNerve::new(c, q(), 3, vec![("r".into(), axis(3, 0)), ("g".into(), axis(3, 1))]).unwrap()
}

/// A red ring sensor between inner and outer green sensors; coordinates (r*, g*).
pub fn red_circle() -> SensorNerve {
    let c = arc(CellComplex::simplicial(&[vec!["gin", "r"], vec!["r", "gout"]]).unwrap());
    SensorNerve::new(c, q(), 2, vec![("gin".into(), axis(2, 1)), ("r".into(), axis(2, 0)), ("gout".into(), axis(2, 1))]).unwrap()
}

// Manifolds

/// The 3×3 square torus; `twisted` multiplies by −1 across the wrap of the first coordinate.
pub fn grid_torus() -> Arc<CellComplex> {
    let n = 3;
    let v = |i: usize, j: usize| format!("v{}{}", i % n, j % n);
    let h = |i: usize, j: usize| format!("h{}{}", i % n, j % n);
    let u = |i: usize, j: usize| format!("u{}{}", i % n, j % n);
    let s = |i: usize, j: usize| format!("s{}{}", i % n, j % n);
    let mut b = CellComplex::builder();
    for i in 0..n {
        for j in 0..n {
            b = b.cell(&v(i, j), 0).cell(&h(i, j), 1).cell(&u(i, j), 1).cell(&s(i, j), 2);
            // h(i,j): v(i,j) → v(i+1,j); u(i,j): v(i,j) → v(i,j+1)
            b = b.cover(&v(i, j), &h(i, j), -1).cover(&v(i + 1, j), &h(i, j), 1);
            b = b.cover(&v(i, j), &u(i, j), -1).cover(&v(i, j + 1), &u(i, j), 1);
            // boundary of s(i,j) = h(i,j) + u(i+1,j) − h(i,j+1) − u(i,j)
            b = b.cover(&h(i, j), &s(i, j), 1).cover(&u(i + 1, j), &s(i, j), 1);
            b = b.cover(&h(i, j + 1), &s(i, j), -1).cover(&u(i, j), &s(i, j), -1);
        }
    }
    arc(b.build().unwrap())
}

pub fn grid_torus_sheaf(twisted: bool) -> CellSheaf {
    let c = grid_torus();
    let n = 3;
    let wraps = |id: &str| matches!(id.as_bytes()[0], b'h' | b's') && id.as_bytes()[1] == b'0' + (n - 1) as u8;
    // the face of a wrapping cell lying over column 0
    let at_zero = |id: &str| match id.as_bytes()[0] {
        b'v' | b'u' => id.as_bytes()[1] == b'0',
        _ => false,
    };
    let mut b = CellSheaf::builder(&c, q());
    for cell in c.cells() {
        b = b.stalk(&cell.id, 1);
    }
    for &(f, t) in c.covers() {
        let (fi, ti) = (c.id(f), c.id(t));
        let sign = if twisted && wraps(ti) && at_zero(fi) { -1 } else { 1 };
        b = b.map_i(fi, ti, &[&[sign]]);
    }
    b.build().unwrap()
}

pub fn circle_sheaf(twisted: bool) -> CellSheaf {
    let c = circle();
    CellSheaf::builder(&c, q())
        .stalk("x", 1)
        .stalk("y", 1)
        .stalk("a", 1)
        .stalk("b", 1)
        .id("x", "a")
        .id("y", "a")
        .id("y", "b")
        .map_i("x", "b", &[&[if twisted { -1 } else { 1 }]])
        .build()
        .unwrap()
}

/// A square whose signs fail to cancel at the corner v0 < s.
pub fn sign_broken_square() -> CellComplex {
    CellComplex::builder()
        .cell("v0", 0)
        .cell("v1", 0)
        .cell("v2", 0)
        .cell("v3", 0)
        .cell("e01", 1)
        .cell("e12", 1)
        .cell("e23", 1)
        .cell("e30", 1)
        .cell("s", 2)
        .cover("v0", "e01", -1)
        .cover("v1", "e01", 1)
        .cover("v1", "e12", -1)
        .cover("v2", "e12", 1)
        .cover("v2", "e23", -1)
        .cover("v3", "e23", 1)
        .cover("v3", "e30", -1)
        .cover("v0", "e30", -1)
        .cover("e01", "s", 1)
        .cover("e12", "s", 1)
        .cover("e23", "s", 1)
        .cover("e30", "s", 1)
        .build()
        .unwrap()
}

/// Every fixture with its corpus path, keyed by topic.
pub fn corpus() -> Vec<(&'static str, Document)> {
    use Document as D;
    vec![
        ("cech/triangle_nerve.txt", D::Cosheaf(cech_triangle())),
        ("cech/two_set_cover.txt", D::Cosheaf(cech_two_sets())),
        ("functors/half_open_sheaf.txt", D::Sheaf(half_open_sheaf())),
        ("functors/to_point.txt", D::Map(to_point_map())),
        ("functors/into_interval.txt", D::Map(into_interval_map())),
        ("functors/broken_circle_sheaf.txt", D::Sheaf(broken_circle_sheaf())),
        ("functors/to_circle.txt", D::Map(to_circle_map())),
        ("cohomology/open_interval.txt", D::Sheaf(open_interval())),
        ("cohomology/half_open_interval.txt", D::Sheaf(half_open_constant())),
        ("barcodes/sphere_f0.txt", D::Cosheaf(sphere_f0())),
        ("barcodes/sphere_f1.txt", D::Cosheaf(sphere_f1())),
        ("barcodes/cone_f1.txt", D::Cosheaf(cone_f1())),
        ("barcodes/torus_f1.txt", D::Cosheaf(torus_f1())),
        ("barcodes/mobile_sensor.txt", D::Cosheaf(mobile_sensor())),
        ("barcodes/d4.txt", D::Sheaf(d4_sheaf())),
        ("barcodes/no_flow.txt", D::Sheaf(no_flow_sheaf())),
        ("barcodes/sphere_height.txt", D::Map(CellularMap::new(super::sphere_height()))),
        ("barcodes/torus_height.txt", D::Map(CellularMap::new(super::torus_height()))),
        ("netcode/decoding_wire.txt", D::Graph(decoding_wire())),
        ("netcode/routing_no_decoding.txt", D::Graph(routing_no_decoding())),
        ("netcode/routing_decoding.txt", D::Graph(routing_decoding())),
        ("netcode/nc_one.txt", D::Graph(nc_one())),
        ("netcode/two_decoding_wires.txt", D::Graph(two_decoding_wires())),
        ("sensing/red_green.txt", D::Nerve(red_green())),
        ("sensing/red_circle.txt", D::Nerve(red_circle())),
        ("duality/circle_constant.txt", D::Sheaf(circle_sheaf(false))),
        ("duality/circle_twisted.txt", D::Sheaf(circle_sheaf(true))),
        ("duality/torus_constant.txt", D::Sheaf(grid_torus_sheaf(false))),
        ("duality/torus_twisted.txt", D::Sheaf(grid_torus_sheaf(true))),
        ("validation/sign_broken_square.txt", D::Complex(sign_broken_square())),
    ]
}
