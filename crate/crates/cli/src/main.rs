use std::fs;
use std::process::ExitCode;
use std::sync::Arc;

use cellsheaf::barcode::zigzag_decompose;
use cellsheaf::derived::{
    injective_resolution, p_of_sheaf, projective_resolution, verdier_dual, DerivedInput, DerivedKind, Resolution,
};
use cellsheaf::functors::{pullback, push, pushforward_compact, Push};
use cellsheaf::homology::{cohomology_c_dims, cohomology_dims, homology_bm_dims, homology_dims, CechData};
use cellsheaf::io::{parse, serialize, Document};
use cellsheaf::netcode::{nc_duality_check, network_coding_sheaf, predicted_cohomology, routing_decomposition, support_dims};
use cellsheaf::pairing::coend;
use cellsheaf::sensing::{evasion_cosheaf, evasion_path_analysis, sensing_les, sensing_sheaf, EvasionVerdict};
use cellsheaf::sheaf::{CellCosheaf, CellSheaf, Rep, Variance};
use cellsheaf::{Error, Field};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cellsheaf", version, about = "Cellular sheaves and cosheaves: cohomology, pushforwards, barcodes, derived functors")]
struct Cli {
    /// Coefficient field (Q or Fp); overrides FIELD and the document's `field` line.
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check signs, diamonds, commutativity and map conditions.
    Validate { file: String },
    /// Sheaf cohomology; a bare complex is read as the constant sheaf.
    Cohomology {
        file: String,
        #[arg(long)]
        compact: bool,
    },
    /// Cosheaf homology; a bare complex is read as the constant cosheaf.
    Homology {
        file: String,
        /// Borel-Moore homology (all cells).
        #[arg(long)]
        bm: bool,
    },
    /// Čech homology of a cover (`--set U=a,b,c`), or of a cosheaf on a nerve.
    Cech {
        file: String,
        #[arg(long = "set")]
        sets: Vec<String>,
    },
    /// Push or pull an object along a cellular map.
    Push {
        file: String,
        #[arg(long)]
        functor: FunctorArg,
        #[arg(long)]
        map: String,
    },
    /// Interval decomposition over a path complex.
    Barcode { file: String },
    /// Canonical injective or projective resolution.
    Resolve {
        file: String,
        #[arg(long)]
        kind: ResolveArg,
    },
    /// Derived functors of the map to a point.
    Derived {
        file: String,
        #[arg(long)]
        functor: DerivedArg,
    },
    /// The complex of elementary projective cosheaves P(F).
    Equivalence { file: String },
    /// The Verdier dual complex D(F).
    Verdier { file: String },
    /// The coend of a cosheaf with a sheaf.
    Coend { cosheaf: String, sheaf: String },
    Netcode {
        #[arg(value_enum)]
        action: NetcodeArg,
        file: String,
    },
    Sense {
        #[arg(value_enum)]
        action: SenseArg,
        file: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctorArg {
    /// f* (pullback)
    Star,
    /// f_*
    LowerStar,
    /// f_†
    Dagger,
    /// f_!
    Shriek,
}

#[derive(Clone, Copy, ValueEnum)]
enum ResolveArg {
    Inj,
    Proj,
}

#[derive(Clone, Copy, ValueEnum)]
enum DerivedArg {
    /// Rp_* of a sheaf
    SheafCohomology,
    /// Lp_† of a sheaf
    SheafHomology,
    /// Lp_* of a cosheaf
    CosheafHomology,
    /// Rp_† of a cosheaf
    CosheafCohomology,
}

#[derive(Clone, Copy, ValueEnum)]
enum NetcodeArg {
    Check,
    Decompose,
}

#[derive(Clone, Copy, ValueEnum)]
enum SenseArg {
    Les,
    Evade,
}

/// Exit 1: the input parsed but is invalid or unsuitable. Exit 2: unreadable or malformed input.
enum Fail {
    Invalid(String),
    Usage(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        match e {
            Error::Parse { .. } | Error::BadField(_) => Fail::Usage(e.to_string()),
            e => Fail::Invalid(e.to_string()),
        }
    }
}

type Out = Result<Vec<String>, Fail>;

fn field_override(flag: Option<&str>) -> Result<Option<Field>, Fail> {
    let raw = match flag {
        Some(f) => Some(f.to_string()),
        None => std::env::var("FIELD").ok().filter(|s| !s.trim().is_empty()),
    };
    raw.map(|s| s.parse::<Field>().map_err(Fail::from)).transpose()
}

fn load(path: &str, field: Option<Field>) -> Result<Document, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{path}: {e}")))?;
    parse(&text, field).map_err(|e| Fail::Usage(format!("{path}: {e}")))
}

fn problems(d: &Document) -> Vec<String> {
    fn rep<K: Variance>(f: &Rep<K>) -> Vec<String> {
        let mut v: Vec<String> = f.complex.validate().violations.iter().map(ToString::to_string).collect();
        v.extend(f.validate().into_iter().map(|(a, b)| format!("maps do not commute from {a} to {b}")));
        v
    }
    match d {
        Document::Complex(c) => c.validate().violations.iter().map(ToString::to_string).collect(),
        Document::Sheaf(f) => rep(f),
        Document::Cosheaf(f) => rep(f),
        Document::Map(m) => {
            let mut v: Vec<String> = m.map.source.validate().violations.iter().map(|x| format!("source: {x}")).collect();
            v.extend(m.map.target.validate().violations.iter().map(|x| format!("target: {x}")));
            v.extend(m.violations().iter().map(ToString::to_string));
            v
        }
        Document::Nerve(s) => {
            let mut v: Vec<String> = s.complex.validate().violations.iter().map(ToString::to_string).collect();
            if let Err(e) = s.complex.vertex_sets() {
                v.push(e.to_string());
            }
            v
        }
        Document::Graph(g) => g.check().err().map(|e| e.to_string()).into_iter().collect(),
    }
}

/// Loads and rejects invalid input with exit 1.
fn load_valid(path: &str, field: Option<Field>) -> Result<Document, Fail> {
    let d = load(path, field)?;
    let p = problems(&d);
    if p.is_empty() {
        Ok(d)
    } else {
        Err(Fail::Invalid(p.join("\n")))
    }
}

fn wrong(d: &Document, want: &str) -> Fail {
    Fail::Invalid(format!("expected a {want} document, got {}", d.kind()))
}

fn sheaf_of(d: Document, field: Option<Field>) -> Result<CellSheaf, Fail> {
    match d {
        Document::Sheaf(f) => Ok(f),
        Document::Complex(c) => Ok(CellSheaf::constant(&Arc::new(c), field.unwrap_or(Field::Rational), 1)),
        Document::Graph(g) => Ok(network_coding_sheaf(&g)?),
        d => Err(wrong(&d, "sheaf")),
    }
}

fn cosheaf_of(d: Document, field: Option<Field>) -> Result<CellCosheaf, Fail> {
    match d {
        Document::Cosheaf(f) => Ok(f),
        Document::Complex(c) => Ok(CellCosheaf::constant(&Arc::new(c), field.unwrap_or(Field::Rational), 1)),
        d => Err(wrong(&d, "cosheaf")),
    }
}

fn graded(v: &[usize], name: &str, sub: bool) -> Vec<String> {
    v.iter()
        .enumerate()
        .map(|(i, d)| if sub { format!("{name}_{i} = {d}") } else { format!("{name}^{i} = {d}") })
        .collect()
}

fn run(cli: Cli) -> Out {
    let field = field_override(cli.field.as_deref())?;
    match cli.cmd {
        Cmd::Validate { file } => {
            let d = load(&file, field)?;
            let p = problems(&d);
            if p.is_empty() {
                Ok(vec![format!("ok: valid {}", d.kind())])
            } else {
                Err(Fail::Invalid(p.join("\n")))
            }
        }
        Cmd::Cohomology { file, compact } => {
            let f = sheaf_of(load_valid(&file, field)?, field)?;
            Ok(if compact {
                cohomology_c_dims(&f).iter().enumerate().map(|(i, d)| format!("H^{i}_c = {d}")).collect()
            } else {
                graded(&cohomology_dims(&f), "H", false)
            })
        }
        Cmd::Homology { file, bm } => {
            let f = cosheaf_of(load_valid(&file, field)?, field)?;
            Ok(if bm {
                homology_bm_dims(&f).iter().enumerate().map(|(i, d)| format!("H^BM_{i} = {d}")).collect()
            } else {
                graded(&homology_dims(&f), "H", true)
            })
        }
        Cmd::Cech { file, sets } => {
            let d = load_valid(&file, field)?;
            let data = match d {
                Document::Cosheaf(f) => CechData::new(f)?,
                Document::Complex(c) => {
                    let mut cover = Vec::new();
                    for s in &sets {
                        let (name, cells) =
                            s.split_once('=').ok_or_else(|| Fail::Usage(format!("--set expects NAME=cell,cell,..., got `{s}`")))?;
                        cover.push((name, cells.split(',').map(str::trim).filter(|x| !x.is_empty()).collect::<Vec<_>>()));
                    }
                    if cover.is_empty() {
                        return Err(Fail::Usage("cech on a complex needs at least one --set".into()));
                    }
                    CechData::from_cover(&c, field.unwrap_or(Field::Rational), &cover)?
                }
                d => return Err(wrong(&d, "complex or cosheaf")),
            };
            let top = data.nerve().dim();
            Ok((0..=top as i64).map(|p| format!("H_{p} = {}", data.homology(p))).collect())
        }
        Cmd::Push { file, functor, map } => {
            let m = match load_valid(&map, field)? {
                Document::Map(m) => m,
                d => return Err(wrong(&d, "map")),
            };
            let d = load_valid(&file, field)?;
            let mut out = Vec::new();
            let doc = match (functor, d) {
                (FunctorArg::Star, Document::Sheaf(f)) => Document::Sheaf(pullback(&m.map, &f)?),
                (FunctorArg::Star, Document::Cosheaf(f)) => Document::Cosheaf(pullback(&m.map, &f)?),
                (FunctorArg::LowerStar, Document::Sheaf(f)) => Document::Sheaf(push(&m.map, &f, Push::Star)?.rep),
                (FunctorArg::LowerStar, Document::Cosheaf(f)) => Document::Cosheaf(push(&m.map, &f, Push::Star)?.rep),
                (FunctorArg::Dagger, Document::Sheaf(f)) => Document::Sheaf(push(&m.map, &f, Push::Dagger)?.rep),
                (FunctorArg::Dagger, Document::Cosheaf(f)) => Document::Cosheaf(push(&m.map, &f, Push::Dagger)?.rep),
                (FunctorArg::Shriek, Document::Sheaf(f)) => {
                    let r = pushforward_compact(&m, &f)?;
                    out.extend(r.warnings.iter().map(|w| format!("# warning: {w}")));
                    Document::Sheaf(r.sheaf)
                }
                (_, d) => return Err(wrong(&d, "sheaf or cosheaf (f_! takes sheaves only)")),
            };
            out.extend(serialize(&doc).lines().map(String::from));
            Ok(out)
        }
        Cmd::Barcode { file } => {
            let b = match load_valid(&file, field)? {
                Document::Sheaf(f) => zigzag_decompose(&f)?,
                Document::Cosheaf(f) => zigzag_decompose(&f)?,
                d => return Err(wrong(&d, "sheaf or cosheaf")),
            };
            let mut out = vec![format!("bars = {}", b.bars.len())];
            out.extend(b.lines());
            Ok(out)
        }
        Cmd::Resolve { file, kind } => match (load_valid(&file, field)?, kind) {
            (Document::Sheaf(f), ResolveArg::Inj) => Ok(resolution_lines(&injective_resolution(&f))),
            (Document::Sheaf(f), ResolveArg::Proj) => Ok(resolution_lines(&projective_resolution(&f))),
            (Document::Cosheaf(f), ResolveArg::Inj) => Ok(resolution_lines(&injective_resolution(&f))),
            (Document::Cosheaf(f), ResolveArg::Proj) => Ok(resolution_lines(&projective_resolution(&f))),
            (d, _) => Err(wrong(&d, "sheaf or cosheaf")),
        },
        Cmd::Derived { file, functor } => {
            let d = load_valid(&file, field)?;
            let (kind, name) = match functor {
                DerivedArg::SheafCohomology => (DerivedKind::SheafCohomology, "R^{i}p_*"),
                DerivedArg::SheafHomology => (DerivedKind::SheafHomology, "L_{i}p_+"),
                DerivedArg::CosheafHomology => (DerivedKind::CosheafHomology, "L_{i}p_*"),
                DerivedArg::CosheafCohomology => (DerivedKind::CosheafCohomology, "R^{i}p_+"),
            };
            let dims = match d {
                Document::Sheaf(f) => cellsheaf::derived::derived_functor(kind, DerivedInput::Sheaf(&f))?,
                Document::Cosheaf(f) => cellsheaf::derived::derived_functor(kind, DerivedInput::Cosheaf(&f))?,
                Document::Graph(g) => cellsheaf::derived::derived_functor(kind, DerivedInput::Sheaf(&network_coding_sheaf(&g)?))?,
                d => return Err(wrong(&d, "sheaf or cosheaf")),
            };
            Ok(dims.iter().enumerate().map(|(i, v)| format!("{} = {v}", name.replace("{i}", &i.to_string()))).collect())
        }
        Cmd::Equivalence { file } => {
            let f = sheaf_of(load_valid(&file, field)?, field)?;
            let p = p_of_sheaf(&f);
            let mut out = Vec::new();
            for n in p.lo..=p.hi() {
                out.push(format!("P^{n} stalks = {:?}", p.term(n).dims));
            }
            let hc = cohomology_c_dims(&f);
            let g = p.global(Push::Star);
            for (i, d) in hc.iter().enumerate() {
                out.push(format!("H^{i}_c(F) = {d}  H_{}(P(F)) = {}", -(i as i64), g.betti_c(i as i64)));
            }
            Ok(out)
        }
        Cmd::Verdier { file } => {
            let f = sheaf_of(load_valid(&file, field)?, field)?;
            let d = verdier_dual(&f);
            let mut out = Vec::new();
            for n in d.lo..=d.hi() {
                out.push(format!("D^{n} stalks = {:?}", d.term(n).dims));
            }
            let g = d.global(Push::Star);
            for n in g.lo..=g.hi() {
                out.push(format!("H^{n}(X; DF) = {}", g.betti_c(n)));
            }
            Ok(out)
        }
        Cmd::Coend { cosheaf, sheaf } => {
            let g = cosheaf_of(load_valid(&cosheaf, field)?, field)?;
            let f = sheaf_of(load_valid(&sheaf, field)?, field)?;
            let r = coend(&g, &f)?;
            Ok(vec![format!("dim G (x) F = {}", r.dim())])
        }
        Cmd::Netcode { action, file } => {
            let g = match load_valid(&file, field)? {
                Document::Graph(g) => g,
                d => return Err(wrong(&d, "graph")),
            };
            match action {
                NetcodeArg::Check => {
                    let r = nc_duality_check(&g)?;
                    let out = vec![
                        format!("sum vertex stalks = {}", r.vertex_total),
                        format!("sum edge stalks = {}", r.edge_total),
                        format!("H^0 = {}", r.h0),
                        format!("H^1 = {}", r.h1),
                    ];
                    if r.holds() {
                        Ok(out)
                    } else {
                        Err(Fail::Invalid(out.join("\n")))
                    }
                }
                NetcodeArg::Decompose => {
                    let sup = routing_decomposition(&g)?;
                    let f = network_coding_sheaf(&g)?;
                    let dims = support_dims(&f, &sup)?;
                    let mut out: Vec<String> = sup
                        .iter()
                        .zip(&dims)
                        .map(|(s, d)| format!("{} [{}] stalk_total={d}", s.kind, s.cells.join(" ")))
                        .collect();
                    let (h0, h1) = predicted_cohomology(&sup);
                    out.push(format!("H^0 = {h0}"));
                    out.push(format!("H^1 = {h1}"));
                    Ok(out)
                }
            }
        }
        Cmd::Sense { action, file } => {
            let d = load_valid(&file, field)?;
            match (action, d) {
                (SenseArg::Les, Document::Nerve(s)) => {
                    let (_, iota) = sensing_sheaf(&s)?;
                    let les = sensing_les(&iota)?;
                    let mut out = les.lines();
                    out.push(format!("connecting ranks = {:?}", les.connecting_ranks));
                    out.push(format!("exact = {}", les.les.is_exact()));
                    Ok(out)
                }
                (SenseArg::Evade, Document::Nerve(s)) => {
                    let (_, iota) = sensing_sheaf(&s)?;
                    let e = evasion_cosheaf(&iota)?;
                    Ok(graded(&homology_dims(&e), "H", true).into_iter().map(|l| l.replacen('H', "E", 1)).collect())
                }
                (SenseArg::Evade, d @ (Document::Sheaf(_) | Document::Cosheaf(_))) => {
                    let a = match d {
                        Document::Sheaf(f) => evasion_path_analysis(&f)?,
                        Document::Cosheaf(f) => evasion_path_analysis(&f)?,
                        _ => unreachable!(),
                    };
                    let mut out = a.barcode.lines();
                    out.push(
                        match a.verdict {
                            EvasionVerdict::CertifiedNoPath => "verdict: no evasion path",
                            EvasionVerdict::LongBarPresentInconclusive => "verdict: long bar present, inconclusive",
                        }
                        .to_string(),
                    );
                    Ok(out)
                }
                (_, d) => Err(wrong(&d, "nerve")),
            }
        }
    }
}

fn resolution_lines<K: Variance>(r: &Resolution<K>) -> Vec<String> {
    let c = &r.complex;
    let cx = &r.object.complex;
    let mut out = Vec::new();
    for (k, n) in (c.lo..=c.hi()).enumerate() {
        let parts = match &r.summands {
            Some(s) => s[k]
                .iter()
                .map(|&(x, m)| format!("{}^{m}", cx.id(x)))
                .collect::<Vec<_>>()
                .join(" + "),
            None => format!("{:?}", c.term(n).dims),
        };
        out.push(format!("degree {n}: {}", if parts.is_empty() { "0".into() } else { parts }));
    }
    out.push(format!("exact = {}", r.is_exact()));
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(Fail::Invalid(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
