//! Network coding sheaves on directed graphs and the structure of routing sheaves.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::cohomology_c_dims;
use crate::matrix::Matrix;
use crate::sheaf::CellSheaf;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    /// `None` for a dangling end.
    pub tail: Option<String>,
    pub head: Option<String>,
    pub capacity: usize,
}

/// A directed graph with capacities and a total coding Φ_v at each vertex,
/// from ⊕ incoming capacities (or a source override) to ⊕ outgoing capacities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodedGraph {
    pub field: Field,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub coding: BTreeMap<String, Matrix>,
    /// Vertices whose stalk dimension is given directly instead of by incoming edges.
    pub source_capacity: BTreeMap<String, usize>,
}

impl CodedGraph {
    pub fn new(field: Field) -> CodedGraph {
        CodedGraph { field, vertices: Vec::new(), edges: Vec::new(), coding: BTreeMap::new(), source_capacity: BTreeMap::new() }
    }

    pub fn vertex(mut self, v: &str) -> Self {
        self.vertices.push(v.to_string());
        self
    }

    pub fn edge(mut self, id: &str, tail: Option<&str>, head: Option<&str>, capacity: usize) -> Self {
        self.edges.push(Edge { id: id.into(), tail: tail.map(Into::into), head: head.map(Into::into), capacity });
        self
    }

    pub fn code(mut self, v: &str, m: Matrix) -> Self {
        self.coding.insert(v.to_string(), m);
        self
    }

    pub fn source(mut self, v: &str, capacity: usize) -> Self {
        self.source_capacity.insert(v.to_string(), capacity);
        self
    }

    pub fn incoming(&self, v: &str) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.head.as_deref() == Some(v)).collect()
    }

    pub fn outgoing(&self, v: &str) -> Vec<&Edge> {
        self.edges.iter().filter(|e| e.tail.as_deref() == Some(v)).collect()
    }

    /// c(v).
    pub fn vertex_capacity(&self, v: &str) -> usize {
        match self.source_capacity.get(v) {
            Some(&c) => c,
            None => self.incoming(v).iter().map(|e| e.capacity).sum(),
        }
    }

    /// Φ_v, zero when the vertex has no outgoing capacity and no coding is given.
    pub fn total_coding(&self, v: &str) -> Result<Matrix> {
        let rows: usize = self.outgoing(v).iter().map(|e| e.capacity).sum();
        let cols = self.vertex_capacity(v);
        match self.coding.get(v) {
            Some(m) if m.shape() == (rows, cols) => Ok(m.clone()),
            Some(m) => Err(Error::InconsistentCapacity(format!(
                "coding at {v} is {}x{}, capacities need {rows}x{cols}",
                m.rows(),
                m.cols()
            ))),
            None if rows == 0 || cols == 0 => Ok(Matrix::zeros(self.field, rows, cols)),
            None => Err(Error::InconsistentCapacity(format!("no coding given at {v}"))),
        }
    }

    pub fn check(&self) -> Result<()> {
        for e in &self.edges {
            for end in [&e.tail, &e.head].into_iter().flatten() {
                if !self.vertices.contains(end) {
                    return Err(Error::UnknownCell(end.clone()));
                }
            }
            if e.tail.is_some() && e.tail == e.head {
                return Err(Error::InvalidComplex(format!("edge {} is a loop", e.id)));
            }
        }
        for v in &self.vertices {
            if self.source_capacity.contains_key(v) && !self.incoming(v).is_empty() {
                return Err(Error::InconsistentCapacity(format!("source {v} has incoming edges")));
            }
            self.total_coding(v)?;
        }
        Ok(())
    }

    /// The underlying 1-complex; edges with a missing end are not compact.
    pub fn complex(&self) -> Result<CellComplex> {
        let mut b = CellComplex::builder();
        for v in &self.vertices {
            b = b.cell(v, 0);
        }
        for e in &self.edges {
            b = if e.tail.is_some() && e.head.is_some() { b.cell(&e.id, 1) } else { b.open_cell(&e.id, 1) };
            if let Some(t) = &e.tail {
                b = b.cover(t, &e.id, -1);
            }
            if let Some(h) = &e.head {
                b = b.cover(h, &e.id, 1);
            }
        }
        b.build()
    }
}

/// F(e) = k^{c(e)}, F(v) = k^{c(v)}; incoming restrictions project, outgoing ones code.
pub fn network_coding_sheaf(g: &CodedGraph) -> Result<CellSheaf> {
    g.check()?;
    let c = Arc::new(g.complex()?);
    let field = g.field;
    let mut b = CellSheaf::builder(&c, field);
    for v in &g.vertices {
        b = b.stalk(v, g.vertex_capacity(v));
    }
    for e in &g.edges {
        b = b.stalk(&e.id, e.capacity);
    }
    for v in &g.vertices {
        let cv = g.vertex_capacity(v);
        let mut off = 0;
        for e in g.incoming(v) {
            let m = Matrix::from_fn(field, e.capacity, cv, |i, j| if j == off + i { field.one() } else { field.zero() });
            b = b.map(v, &e.id, m);
            off += e.capacity;
        }
        let phi = g.total_coding(v)?;
        let mut off = 0;
        for e in g.outgoing(v) {
            b = b.map(v, &e.id, phi.block(off, 0, e.capacity, cv));
            off += e.capacity;
        }
    }
    b.build()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcReport {
    pub vertex_total: usize,
    pub edge_total: usize,
    pub h0: usize,
    pub h1: usize,
}

impl NcReport {
    pub fn holds(&self) -> bool {
        self.vertex_total == self.edge_total && self.h0 == self.h1
    }
}

/// Σ_v dim F(v) against Σ_e dim F(e), and H⁰ against H¹.
pub fn nc_duality_check(g: &CodedGraph) -> Result<NcReport> {
    let f = network_coding_sheaf(g)?;
    let c = &f.complex;
    let total = |k: usize| c.cells_of_dim(k).iter().map(|&x| f.dims[x]).sum();
    let h = cohomology_c_dims(&f);
    Ok(NcReport {
        vertex_total: total(0),
        edge_total: total(1),
        h0: h.first().copied().unwrap_or(0),
        h1: h.get(1).copied().unwrap_or(0),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SupportKind {
    /// [—]
    Closed,
    /// [—[ : closed where the unit stops, open where it starts from nothing (or leaves the graph).
    HalfOpen,
    /// ]—[
    Open,
    Circle,
}

impl fmt::Display for SupportKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SupportKind::Closed => "closed",
            SupportKind::HalfOpen => "half-open",
            SupportKind::Open => "open",
            SupportKind::Circle => "circle",
        })
    }
}

/// The cells visited by one unit of flow, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoutingSupport {
    pub kind: SupportKind,
    pub cells: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Edge(usize),
    /// (vertex, coordinate of F(v))
    Coord(usize, usize),
}

/// Traces each unit of a routing sheaf through the graph.
pub fn routing_decomposition(g: &CodedGraph) -> Result<Vec<RoutingSupport>> {
    g.check()?;
    if let Some(e) = g.edges.iter().find(|e| e.capacity != 1) {
        return Err(Error::NotRouting(format!("edge {} has capacity {}", e.id, e.capacity)));
    }
    let vidx = |v: &str| g.vertices.iter().position(|x| x == v).expect("checked");
    let mut codings = Vec::new();
    for v in &g.vertices {
        let phi = g.total_coding(v)?;
        for i in 0..phi.rows() {
            for j in 0..phi.cols() {
                let x = phi.get(i, j);
                if !(x.is_zero() || x.is_one()) {
                    return Err(Error::NotRouting(format!("coding at {v} has entry {x}")));
                }
            }
        }
        let ones = |it: &mut dyn Iterator<Item = usize>| it.count() <= 1;
        let rows_ok = (0..phi.rows()).all(|i| ones(&mut (0..phi.cols()).filter(|&j| phi.get(i, j).is_one())));
        let cols_ok = (0..phi.cols()).all(|j| ones(&mut (0..phi.rows()).filter(|&i| phi.get(i, j).is_one())));
        if !rows_ok || !cols_ok {
            return Err(Error::NotRouting(format!("coding at {v} is not a partial permutation")));
        }
        codings.push(phi);
    }
    let out_edges: Vec<Vec<usize>> = g
        .vertices
        .iter()
        .map(|v| (0..g.edges.len()).filter(|&e| g.edges[e].tail.as_deref() == Some(v)).collect())
        .collect();
    let in_edges: Vec<Vec<usize>> = g
        .vertices
        .iter()
        .map(|v| (0..g.edges.len()).filter(|&e| g.edges[e].head.as_deref() == Some(v)).collect())
        .collect();
    let succ = |n: Node| -> Option<Node> {
        match n {
            Node::Edge(e) => g.edges[e].head.as_deref().map(|h| {
                let v = vidx(h);
                Node::Coord(v, in_edges[v].iter().position(|&x| x == e).expect("incoming"))
            }),
            Node::Coord(v, i) => (0..codings[v].rows()).find(|&r| codings[v].get(r, i).is_one()).map(|r| Node::Edge(out_edges[v][r])),
        }
    };
    let mut nodes: Vec<Node> = (0..g.edges.len()).map(Node::Edge).collect();
    for (v, name) in g.vertices.iter().enumerate() {
        nodes.extend((0..g.vertex_capacity(name)).map(|i| Node::Coord(v, i)));
    }
    let mut has_pred = BTreeMap::new();
    for &n in &nodes {
        if let Some(m) = succ(n) {
            has_pred.insert(m, true);
        }
    }
    let name = |n: Node| match n {
        Node::Edge(e) => g.edges[e].id.clone(),
        Node::Coord(v, _) => g.vertices[v].clone(),
    };
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for &start in nodes.iter().filter(|n| !has_pred.contains_key(n)) {
        let mut cells = Vec::new();
        let mut cur = start;
        loop {
            seen.insert(cur, true);
            cells.push(name(cur));
            match succ(cur) {
                Some(n) => cur = n,
                None => break,
            }
        }
        let closed_start = matches!(start, Node::Coord(..));
        let closed_end = matches!(cur, Node::Coord(..));
        let kind = match (closed_start, closed_end) {
            (true, true) => SupportKind::Closed,
            (false, false) => SupportKind::Open,
            _ => SupportKind::HalfOpen,
        };
        out.push(RoutingSupport { kind, cells });
    }
    for &start in &nodes {
        if seen.contains_key(&start) || !matches!(start, Node::Edge(_)) {
            continue;
        }
        let mut cells = Vec::new();
        let mut cur = start;
        while !seen.contains_key(&cur) {
            seen.insert(cur, true);
            cells.push(name(cur));
            cur = succ(cur).expect("a unit without an end lies on a cycle");
        }
        out.push(RoutingSupport { kind: SupportKind::Circle, cells });
    }
    Ok(out)
}

/// Per-cell counts of the supports, in the cell order of the sheaf.
pub fn support_dims(f: &CellSheaf, supports: &[RoutingSupport]) -> Result<Vec<usize>> {
    let mut dims = vec![0; f.len()];
    for s in supports {
        for c in &s.cells {
            dims[f.complex.index_of(c)?] += 1;
        }
    }
    Ok(dims)
}

/// (H⁰_c, H¹_c) predicted from supports: closed intervals and circles carry H⁰,
/// open intervals and circles carry H¹.
pub fn predicted_cohomology(supports: &[RoutingSupport]) -> (usize, usize) {
    let n = |k: SupportKind| supports.iter().filter(|s| s.kind == k).count();
    (n(SupportKind::Closed) + n(SupportKind::Circle), n(SupportKind::Open) + n(SupportKind::Circle))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn m(rows: &[&[i64]], cols: usize) -> Matrix {
        Matrix::from_i64(q(), rows, cols)
    }

    #[test]
    fn decoding_wire() {
        let half = q().frac(1, 2).unwrap();
        let g = CodedGraph::new(q())
            .vertex("s")
            .vertex("t")
            .edge("a", Some("s"), Some("t"), 1)
            .edge("b", Some("s"), Some("t"), 1)
            .edge("c", Some("t"), Some("s"), 1)
            .code("s", m(&[&[1], &[1]], 1))
            .code("t", Matrix::from_rows(q(), vec![vec![half.clone(), half]], 2).unwrap());
        let f = network_coding_sheaf(&g).unwrap();
        assert_eq!(cohomology_c_dims(&f), vec![1, 1]);
        let r = nc_duality_check(&g).unwrap();
        assert!(r.holds());
        assert_eq!(r.vertex_total, 3);
    }

    #[test]
    fn single_cycle_is_a_circle() {
        let g = CodedGraph::new(q())
            .vertex("u")
            .vertex("v")
            .edge("e", Some("u"), Some("v"), 1)
            .edge("f", Some("v"), Some("u"), 1)
            .code("u", m(&[&[1]], 1))
            .code("v", m(&[&[1]], 1));
        let s = routing_decomposition(&g).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].kind, SupportKind::Circle);
        assert_eq!(predicted_cohomology(&s), (1, 1));
    }

    #[test]
    fn bad_capacity() {
        let g = CodedGraph::new(q()).vertex("u").vertex("v").edge("e", Some("u"), Some("v"), 2).code("u", m(&[&[1]], 1));
        assert!(matches!(network_coding_sheaf(&g), Err(Error::InconsistentCapacity(_))));
    }
}
