//! Line-based text documents for complexes, (co)sheaves, maps, sensor nerves and graphs.
//!
//! ```text
//! kind sheaf
//! field Q
//! cell x dim=0
//! cell a dim=1 compact=false
//! cover x a sign=1
//! stalk x 1
//! map x a rows=[[1/2]]
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::complex::{Cell, CellComplex};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::maps::{CellularMap, PosetMap};
use crate::matrix::Matrix;
use crate::netcode::CodedGraph;
use crate::sensing::SensorNerve;
use crate::sheaf::{CellCosheaf, CellSheaf, Rep, Variance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Complex(CellComplex),
    Sheaf(CellSheaf),
    Cosheaf(CellCosheaf),
    Map(CellularMap),
    Nerve(SensorNerve),
    Graph(CodedGraph),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Complex(_) => "complex",
            Document::Sheaf(_) => "sheaf",
            Document::Cosheaf(_) => "cosheaf",
            Document::Map(_) => "map",
            Document::Nerve(_) => "nerve",
            Document::Graph(_) => "graph",
        }
    }
}

impl PartialEq for SensorNerve {
    fn eq(&self, o: &SensorNerve) -> bool {
        self.complex == o.complex && self.field == o.field && self.n == o.n && self.spaces == o.spaces && self.zeroed == o.zeroed
    }
}

impl Eq for SensorNerve {}

struct Line<'a> {
    no: usize,
    text: &'a str,
    words: Vec<(usize, &'a str)>,
}

impl<'a> Line<'a> {
    fn err(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.no, col, msg: msg.into() }
    }

    fn arg(&self, i: usize, what: &str) -> Result<&'a str> {
        self.words.get(i).map(|w| w.1).ok_or_else(|| self.err(self.text.len() + 1, format!("missing {what}")))
    }

    /// `key=value` lookup; `rows=` takes the rest of the line.
    fn key(&self, k: &str) -> Option<(usize, &'a str)> {
        let pat = format!("{k}=");
        if k == "rows" {
            let at = self.text.find(&pat)?;
            return Some((at + 1, self.text[at + pat.len()..].trim()));
        }
        self.words.iter().find_map(|&(c, w)| w.strip_prefix(&pat).map(|v| (c + pat.len(), v)))
    }

    fn req(&self, k: &str) -> Result<(usize, &'a str)> {
        self.key(k).ok_or_else(|| self.err(self.text.len() + 1, format!("missing {k}=")))
    }

    fn usize_key(&self, k: &str) -> Result<usize> {
        let (c, v) = self.req(k)?;
        v.parse().map_err(|_| self.err(c, format!("{k} must be a non-negative integer, got `{v}`")))
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                return None;
            }
            let mut words = Vec::new();
            let mut start = None;
            for (j, ch) in body.char_indices() {
                match (ch.is_whitespace(), start) {
                    (true, Some(s)) => {
                        words.push((s + 1, &body[s..j]));
                        start = None;
                    }
                    (false, None) => start = Some(j),
                    _ => {}
                }
            }
            if let Some(s) = start {
                words.push((s + 1, &body[s..]));
            }
            Some(Line { no: i + 1, text: body.trim_end(), words })
        })
        .collect()
}

/// Parses `[[a, b], [c, d]]` into rows of scalars.
fn parse_rows(l: &Line, col: usize, s: &str, field: Field) -> Result<Vec<Vec<Scalar>>> {
    let bad = |m: &str| l.err(col, m.to_string());
    let inner = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(|| bad("rows must be a bracketed list"))?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    let mut rest = inner;
    loop {
        rest = rest.trim_start();
        let r = rest.strip_prefix('[').ok_or_else(|| bad("expected `[` to open a row"))?;
        let close = r.find(']').ok_or_else(|| bad("unclosed row"))?;
        let body = r[..close].trim();
        let row = if body.is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|x| field.parse_scalar(x).map_err(|_| bad(&format!("bad entry `{}`", x.trim()))))
                .collect::<Result<Vec<_>>>()?
        };
        rows.push(row);
        rest = r[close + 1..].trim_start();
        if rest.is_empty() {
            break;
        }
        rest = rest.strip_prefix(',').ok_or_else(|| bad("expected `,` between rows"))?;
    }
    Ok(rows)
}

fn to_matrix(l: &Line, col: usize, rows: Vec<Vec<Scalar>>, shape: (usize, usize), field: Field) -> Result<Matrix> {
    let (r, c) = shape;
    if rows.len() != r || rows.iter().any(|x| x.len() != c) {
        return Err(l.err(col, format!("matrix must be {r}x{c}")));
    }
    Matrix::from_rows(field, rows, c)
}

fn parse_bool(l: &Line, col: usize, v: &str) -> Result<bool> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(l.err(col, format!("expected true or false, got `{v}`"))),
    }
}

#[derive(Default)]
struct ComplexLines {
    cells: Vec<Cell>,
    covers: Vec<(String, String, i8)>,
}

impl ComplexLines {
    /// Consumes `cell` and `cover` lines; returns false for other keywords.
    fn take(&mut self, l: &Line) -> Result<bool> {
        match l.words[0].1 {
            "cell" => {
                let id = l.arg(1, "cell id")?;
                let dim = l.usize_key("dim")?;
                let compact = match l.key("compact") {
                    Some((c, v)) => parse_bool(l, c, v)?,
                    None => true,
                };
                self.cells.push(Cell { id: id.into(), dim, compact });
                Ok(true)
            }
            "cover" => {
                let (a, b) = (l.arg(1, "face")?, l.arg(2, "coface")?);
                let (c, v) = l.req("sign")?;
                let sign = match v {
                    "1" | "+1" => 1,
                    "-1" => -1,
                    _ => return Err(l.err(c, format!("sign must be +1 or -1, got `{v}`"))),
                };
                self.covers.push((a.into(), b.into(), sign));
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    fn build(self, at: &Line) -> Result<CellComplex> {
        CellComplex::new(self.cells, self.covers).map_err(|e| at.err(1, e.to_string()))
    }
}

/// Parses a document; `field` overrides any `field` line.
pub fn parse(text: &str, field: Option<Field>) -> Result<Document> {
    let ls = lines(text);
    let first = ls.first().ok_or(Error::Parse { line: 1, col: 1, msg: "empty document".into() })?;
    if first.words[0].1 != "kind" {
        return Err(first.err(first.words[0].0, "document must start with `kind`"));
    }
    let kind = first.arg(1, "kind")?;
    let mut fld = Field::Rational;
    let mut body = Vec::new();
    for l in &ls[1..] {
        if l.words[0].1 == "field" {
            let v = l.arg(1, "field")?;
            fld = v.parse().map_err(|_| l.err(l.words[1].0, format!("unknown field `{v}`")))?;
        } else {
            body.push(l);
        }
    }
    let field = field.unwrap_or(fld);
    let last = ls.last().expect("non-empty");
    match kind {
        "complex" => {
            let mut cx = ComplexLines::default();
            for l in body {
                if !cx.take(l)? {
                    return Err(l.err(l.words[0].0, format!("unexpected `{}` in a complex", l.words[0].1)));
                }
            }
            Ok(Document::Complex(cx.build(last)?))
        }
        "sheaf" => Ok(Document::Sheaf(parse_rep(&body, last, field)?)),
        "cosheaf" => Ok(Document::Cosheaf(parse_rep(&body, last, field)?)),
        "map" => parse_map(&body, last),
        "nerve" => parse_nerve(&body, last, field),
        "graph" => parse_graph(&body, field),
        other => Err(first.err(first.words[1].0, format!("unknown kind `{other}`"))),
    }
}

fn parse_rep<K: Variance>(body: &[&Line], last: &Line, field: Field) -> Result<Rep<K>> {
    let mut cx = ComplexLines::default();
    let mut stalks = Vec::new();
    let mut maps = Vec::new();
    for &l in body {
        if cx.take(l)? {
            continue;
        }
        match l.words[0].1 {
            "stalk" => {
                let id = l.arg(1, "cell")?;
                let n = l.arg(2, "dimension")?;
                let n: usize = n.parse().map_err(|_| l.err(l.words[2].0, format!("bad dimension `{n}`")))?;
                stalks.push((l, id, n));
            }
            "map" => maps.push(l),
            w => return Err(l.err(l.words[0].0, format!("unexpected `{w}`"))),
        }
    }
    let c = Arc::new(cx.build(last)?);
    let mut dims = vec![0; c.len()];
    for (l, id, n) in stalks {
        dims[c.index_of(id).map_err(|e| l.err(l.words[1].0, e.to_string()))?] = n;
    }
    let mut out = BTreeMap::new();
    for l in maps {
        let (a, b) = (l.arg(1, "face")?, l.arg(2, "coface")?);
        let ia = c.index_of(a).map_err(|e| l.err(l.words[1].0, e.to_string()))?;
        let ib = c.index_of(b).map_err(|e| l.err(l.words[2].0, e.to_string()))?;
        if !c.poset().is_cover(ia, ib) {
            return Err(l.err(l.words[1].0, format!("({a}, {b}) is not a cover")));
        }
        let shape = if K::CO { (dims[ia], dims[ib]) } else { (dims[ib], dims[ia]) };
        let (col, v) = l.req("rows")?;
        let rows = parse_rows(l, col, v, field)?;
        out.insert((ia, ib), to_matrix(l, col, rows, shape, field)?);
    }
    for &(a, b) in c.covers() {
        if !out.contains_key(&(a, b)) {
            let shape = if K::CO { (dims[a], dims[b]) } else { (dims[b], dims[a]) };
            out.insert((a, b), Matrix::zeros(field, shape.0, shape.1));
        }
    }
    Rep::new(c, field, dims, out)
}

fn parse_map(body: &[&Line], last: &Line) -> Result<Document> {
    let mut src = ComplexLines::default();
    let mut tgt = ComplexLines::default();
    let mut side = None;
    let mut assign = Vec::new();
    let mut open = Vec::new();
    for &l in body {
        match l.words[0].1 {
            "source" => side = Some(true),
            "target" => side = Some(false),
            "assign" => assign.push(l),
            "open-fiber" => open.push(l),
            w => {
                let cx = match side {
                    Some(true) => &mut src,
                    Some(false) => &mut tgt,
                    None => return Err(l.err(l.words[0].0, "cells must follow a `source` or `target` line")),
                };
                if !cx.take(l)? {
                    return Err(l.err(l.words[0].0, format!("unexpected `{w}`")));
                }
            }
        }
    }
    let (s, t) = (Arc::new(src.build(last)?), Arc::new(tgt.build(last)?));
    let mut pairs = Vec::new();
    for l in &assign {
        pairs.push((l.arg(1, "source cell")?, l.arg(2, "target cell")?));
    }
    let map = PosetMap::new(&s, &t, &pairs).map_err(|e| last.err(1, e.to_string()))?;
    let mut open_ids = Vec::new();
    for l in &open {
        open_ids.push(l.arg(1, "cell")?);
    }
    let cm = CellularMap::new(map).with_open_fibers(&open_ids).map_err(|e| last.err(1, e.to_string()))?;
    Ok(Document::Map(cm))
}

fn parse_nerve(body: &[&Line], last: &Line, field: Field) -> Result<Document> {
    let mut cx = ComplexLines::default();
    let mut n = None;
    let mut sensors = Vec::new();
    let mut zeroed = Vec::new();
    for &l in body {
        if cx.take(l)? {
            continue;
        }
        match l.words[0].1 {
            "ambient" => {
                let v = l.arg(1, "dimension")?;
                n = Some(v.parse::<usize>().map_err(|_| l.err(l.words[1].0, format!("bad dimension `{v}`")))?);
            }
            "sensor" => sensors.push(l),
            "zero" => zeroed.push(l.arg(1, "vertex")?),
            w => return Err(l.err(l.words[0].0, format!("unexpected `{w}`"))),
        }
    }
    let n = n.ok_or_else(|| last.err(1, "missing `ambient`"))?;
    let mut spaces = Vec::new();
    for l in sensors {
        let v = l.arg(1, "vertex")?;
        let (col, s) = l.req("rows")?;
        let rows = parse_rows(l, col, s, field)?;
        let k = rows.first().map_or(0, Vec::len);
        spaces.push((v.to_string(), to_matrix(l, col, rows, (n, k), field)?));
    }
    let c = Arc::new(cx.build(last)?);
    let mut s = SensorNerve::new(c, field, n, spaces).map_err(|e| last.err(1, e.to_string()))?;
    for z in zeroed {
        s = s.zero_vertex(z);
    }
    Ok(Document::Nerve(s))
}

fn parse_graph(body: &[&Line], field: Field) -> Result<Document> {
    let mut g = CodedGraph::new(field);
    let mut codes = Vec::new();
    for &l in body {
        match l.words[0].1 {
            "vertex" => g = g.vertex(l.arg(1, "vertex")?),
            "edge" => {
                let id = l.arg(1, "edge")?;
                let end = |k: &str| l.key(k).map(|(_, v)| v).filter(|v| *v != "-");
                g = g.edge(id, end("tail"), end("head"), l.usize_key("capacity")?);
            }
            "source" => g = g.source(l.arg(1, "vertex")?, l.usize_key("capacity")?),
            "code" => codes.push(l),
            w => return Err(l.err(l.words[0].0, format!("unexpected `{w}`"))),
        }
    }
    for l in codes {
        let v = l.arg(1, "vertex")?;
        let (col, s) = l.req("rows")?;
        let rows = parse_rows(l, col, s, field)?;
        let r: usize = g.outgoing(v).iter().map(|e| e.capacity).sum();
        let c = g.vertex_capacity(v);
        g = g.code(v, to_matrix(l, col, rows, (r, c), field)?);
    }
    Ok(Document::Graph(g))
}

fn rows_text(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| format!("[{}]", m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn write_complex(out: &mut String, c: &CellComplex) {
    for cell in c.cells() {
        let _ = write!(out, "cell {} dim={}", cell.id, cell.dim);
        if !cell.compact {
            out.push_str(" compact=false");
        }
        out.push('\n');
    }
    for &(a, b) in c.covers() {
        let _ = writeln!(out, "cover {} {} sign={}", c.id(a), c.id(b), c.sign(a, b));
    }
}

fn write_rep<K: Variance>(out: &mut String, f: &Rep<K>) {
    write_complex(out, &f.complex);
    for (i, d) in f.dims.iter().enumerate() {
        let _ = writeln!(out, "stalk {} {d}", f.complex.id(i));
    }
    for &(a, b) in f.complex.covers() {
        let _ = writeln!(out, "map {} {} rows={}", f.complex.id(a), f.complex.id(b), rows_text(f.map(a, b)));
    }
}

pub fn serialize(d: &Document) -> String {
    let mut out = format!("kind {}\n", d.kind());
    match d {
        Document::Complex(c) => write_complex(&mut out, c),
        Document::Sheaf(f) => {
            let _ = writeln!(out, "field {}", f.field);
            write_rep(&mut out, f);
        }
        Document::Cosheaf(f) => {
            let _ = writeln!(out, "field {}", f.field);
            write_rep(&mut out, f);
        }
        Document::Map(m) => {
            out.push_str("source\n");
            write_complex(&mut out, &m.map.source);
            out.push_str("target\n");
            write_complex(&mut out, &m.map.target);
            for (x, &y) in m.map.assign.iter().enumerate() {
                let _ = writeln!(out, "assign {} {}", m.map.source.id(x), m.map.target.id(y));
            }
            for (x, &c) in m.fiber_compact.iter().enumerate() {
                if !c {
                    let _ = writeln!(out, "open-fiber {}", m.map.source.id(x));
                }
            }
        }
        Document::Nerve(s) => {
            let _ = writeln!(out, "field {}", s.field);
            let _ = writeln!(out, "ambient {}", s.n);
            write_complex(&mut out, &s.complex);
            for (v, m) in &s.spaces {
                let _ = writeln!(out, "sensor {v} rows={}", rows_text(m));
            }
            for z in &s.zeroed {
                let _ = writeln!(out, "zero {z}");
            }
        }
        Document::Graph(g) => {
            let _ = writeln!(out, "field {}", g.field);
            for v in &g.vertices {
                let _ = writeln!(out, "vertex {v}");
            }
            for e in &g.edges {
                let end = |x: &Option<String>| x.clone().unwrap_or_else(|| "-".into());
                let _ = writeln!(out, "edge {} tail={} head={} capacity={}", e.id, end(&e.tail), end(&e.head), e.capacity);
            }
            for (v, c) in &g.source_capacity {
                let _ = writeln!(out, "source {v} capacity={c}");
            }
            for (v, m) in &g.coding {
                let _ = writeln!(out, "code {v} rows={}", rows_text(m));
            }
        }
    }
    out
}
