mod input;
mod tables;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use ccwl::candidates::{search, SearchOptions};
use ccwl::ccstruct::tensor;
use ccwl::isomorph::{aut_group, color_isomorphic, is_schurian};
use ccwl::io::format_edge_list;
use ccwl::planargraph::{embed, is_planar, kuratowski_witness, vertex_connectivity};
use ccwl::rigidity::RhoContext;
use ccwl::spectral::{is_faithful, rainbow_rho, representation};
use ccwl::{EdgeBounds, EigenChoice, Error, MatrixKind, SetRule, SphericalRep};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

/// Coherent configurations, Weisfeiler-Leman closure and spherical
/// representations.
///
/// Operands are `catalog:NAME` (a bundled graph or a group spec such as
/// `catalog:alt5/orbits=30+12`), an edge-list file, or a JSON file holding a
/// configuration or a permutation group.
#[derive(Parser)]
#[command(name = "cc", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Worker threads for the parallel searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bounds {
    Regular,
    Pairwise,
    Global,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    SameGram,
    Literal,
}

#[derive(clap::Args)]
struct RepArgs {
    /// Graph whose closure carries the representation.
    graph: String,
    #[arg(long, default_value = "L", value_parser = parse_matrix)]
    matrix: MatrixKind,
    /// `auto`, `fiedler`, or an eigenvalue.
    #[arg(long, default_value = "auto", value_parser = parse_eigen)]
    eigenvalue: EigenChoice,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closure of a graph: rank and color statistics.
    Wl { graph: String },
    /// Orbit configuration of a permutation group.
    Inv { group: String },
    /// Intersection numbers.
    Tensor { input: String },
    /// Automorphism group.
    Aut { input: String },
    /// Whether the configuration is the orbit configuration of its automorphism group.
    Schurian { input: String },
    /// Color isomorphism between two configurations.
    Iso { left: String, right: String },
    /// Spherical representation in the 2-sphere from a 3-dimensional eigenspace.
    S2 {
        #[command(flatten)]
        rep: RepArgs,
        /// Also print the point coordinates.
        #[arg(long)]
        points: bool,
    },
    /// Search for a color whose two points are rigid.
    Rigid {
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, value_enum, default_value_t = Rule::SameGram)]
        rule: Rule,
        /// Write the certificate as JSON.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Planarity with an embedding or a Kuratowski subgraph.
    Planar { graph: String },
    /// Vertex connectivity.
    Kappa { graph: String },
    /// Candidate graphs whose closure is the given configuration.
    Search {
        input: String,
        #[arg(long)]
        no_wl_filter: bool,
        #[arg(long)]
        no_phi_reduce: bool,
        #[arg(long, value_enum, default_value_t = Bounds::Regular)]
        bounds: Bounds,
        /// Directory for the edge lists of the surviving candidates.
        #[arg(long)]
        emit_witnesses: Option<PathBuf>,
    },
    /// Regenerate the solid and search tables from the catalog.
    Tables {
        #[arg(long, value_parser = ["solids", "search"], default_value = "solids")]
        table: String,
        /// Skip the search for rows with more symmetric units than this.
        #[arg(long, default_value_t = 24)]
        max_units: usize,
    },
}

fn parse_matrix(s: &str) -> std::result::Result<MatrixKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_eigen(s: &str) -> std::result::Result<EigenChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Accumulates TSV lines or a JSON object.
struct Out {
    format: Format,
    tsv: String,
    json: serde_json::Map<String, Value>,
}

impl Out {
    fn new(format: Format) -> Self {
        Out { format, tsv: String::new(), json: serde_json::Map::new() }
    }

    fn kv(&mut self, key: &str, v: impl Into<Value>) {
        let v = v.into();
        let text = match &v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let _ = writeln!(self.tsv, "{key}\t{text}");
        self.json.insert(key.to_string(), v);
    }

    /// A table: TSV rows under a header, a JSON array of row objects.
    fn table(&mut self, key: &str, header: &[&str], rows: Vec<Vec<Value>>) {
        let _ = writeln!(self.tsv, "{}", header.join("\t"));
        let mut arr = Vec::new();
        for row in rows {
            let cells: Vec<String> = row
                .iter()
                .map(|v| match v {
                    Value::String(s) => s.clone(),
                    Value::Null => "-".into(),
                    other => other.to_string(),
                })
                .collect();
            let _ = writeln!(self.tsv, "{}", cells.join("\t"));
            arr.push(Value::Object(header.iter().map(|h| h.to_string()).zip(row).collect()));
        }
        self.json.insert(key.to_string(), Value::Array(arr));
    }

    fn print(self) {
        match self.format {
            Format::Tsv => print!("{}", self.tsv),
            Format::Json => println!("{}", serde_json::to_string_pretty(&Value::Object(self.json)).expect("json")),
        }
    }
}

fn words(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn spherical(args: &RepArgs) -> Result<(ccwl::ColorGraph, SphericalRep)> {
    let g = input::graph(&args.graph)?;
    let x = ccwl::wlclosure::wl_close_graph(g.n(), &g.edges())?;
    let rep = representation(&x, &g, args.matrix, args.eigenvalue)?;
    Ok((x, rep))
}

fn run(cli: Cli) -> Result<()> {
    let mut out = Out::new(cli.format);
    match cli.cmd {
        Cmd::Wl { graph } => {
            let x = input::config(&graph)?;
            out.kv("rank", x.rank());
            out.kv("n", x.n());
            out.kv("fibers", x.fibers().len());
            let rows = (0..x.rank())
                .map(|c| {
                    let (f, g) = x.fiber_of(c);
                    vec![
                        c.into(),
                        x.size(c).into(),
                        x.valency(c).into(),
                        x.converse(c).into(),
                        x.is_reflexive(c).into(),
                        format!("{f}-{g}").into(),
                    ]
                })
                .collect();
            out.table("colors", &["color", "size", "valency", "converse", "reflexive", "fibers"], rows);
        }
        Cmd::Inv { group } => {
            let g = input::group(&group)?;
            let x = ccwl::permgrp::inv(&g);
            if cli.format == Format::Json {
                println!("{}", x.to_json());
                return Ok(());
            }
            out.kv("rank", x.rank());
            out.kv("n", x.n());
            out.kv("orbits", words(&x.fibers().iter().map(Vec::len).collect::<Vec<_>>()));
        }
        Cmd::Tensor { input } => {
            let x = input::config(&input)?;
            let t = tensor(&x)?;
            if cli.format == Format::Tsv {
                print!("{}", t.to_tsv());
                return Ok(());
            }
            let rows = t.iter().map(|(r, s, u, c)| vec![r.into(), s.into(), u.into(), c.into()]).collect();
            out.kv("rank", t.rank());
            out.table("entries", &["r", "s", "t", "c"], rows);
        }
        Cmd::Aut { input } => {
            let x = input::config(&input)?;
            let a = aut_group(&x)?;
            out.kv("order", a.order.to_string());
            out.kv("base", words(&a.base));
            out.kv("orbit_lengths", words(&a.orbit_lengths));
            let rows = a.group.generators().iter().enumerate().map(|(i, p)| vec![i.into(), words(p.images()).into()]).collect();
            out.table("generators", &["generator", "images"], rows);
        }
        Cmd::Schurian { input } => {
            let x = input::config(&input)?;
            out.kv("schurian", is_schurian(&x)?);
        }
        Cmd::Iso { left, right } => {
            let (x, y) = (input::config(&left)?, input::config(&right)?);
            let f = color_isomorphic(&x, &y)?;
            out.kv("isomorphic", f.is_some());
            if let Some(f) = f {
                out.kv("map", words(&f));
            }
        }
        Cmd::S2 { rep: args, points } => {
            let (x, rep) = spherical(&args)?;
            let rb = rainbow_rho(&x, &rep)?;
            out.kv("matrix", rep.kind.to_string());
            out.kv("lambda", format!("{:.9}", rep.lambda));
            out.kv("W", rep.w.len());
            out.kv("classes", rb.fibered_rank);
            out.kv("rank", x.rank());
            out.kv("faithful", is_faithful(&x, &rb));
            out.kv("injective", rep.injective);
            out.kv("antipodal_classes", rep.antipodal.classes.len());
            out.kv("w", rep.w.iter().map(|w| format!("{w:.9}")).collect::<Vec<_>>().join(" "));
            if points {
                let rows = rep
                    .points
                    .iter()
                    .enumerate()
                    .map(|(i, p)| vec![i.into(), format!("{:.9}", p[0]).into(), format!("{:.9}", p[1]).into(), format!("{:.9}", p[2]).into()])
                    .collect();
                out.table("points", &["point", "x", "y", "z"], rows);
            }
        }
        Cmd::Rigid { rep: args, rule, certificate } => {
            let (x, rep) = spherical(&args)?;
            let rule = match rule {
                Rule::SameGram => SetRule::SameGram,
                Rule::Literal => SetRule::Literal,
            };
            let ctx = RhoContext::with_rule(&x, &rep, rule)?;
            out.kv("lambda", format!("{:.9}", rep.lambda));
            match ctx.find_rigid_color() {
                Some((c, cert)) => {
                    out.kv("rigid", true);
                    out.kv("color", c);
                    out.kv("seed", words(&cert.seed));
                    out.kv("steps", cert.steps.len());
                    out.kv("final_size", cert.final_size);
                    if let Some(path) = certificate {
                        fs::write(&path, cert.to_json()).with_context(|| format!("writing {}", path.display()))?;
                    }
                }
                None => out.kv("rigid", false),
            }
        }
        Cmd::Planar { graph } => {
            let g = input::graph(&graph)?;
            let planar = is_planar(&g);
            out.kv("planar", planar);
            if let Some(emb) = embed(&g) {
                out.kv("faces", emb.blocks.iter().map(|b| b.faces.len()).sum::<usize>());
            }
            if let Some(k) = kuratowski_witness(&g) {
                out.kv("kuratowski", format!("{:?}", k.kind));
                out.kv("branch_vertices", words(&k.branch_vertices));
                let rows = k.edges.iter().map(|&(a, b)| vec![a.into(), b.into()]).collect();
                out.table("edges", &["a", "b"], rows);
            }
        }
        Cmd::Kappa { graph } => {
            let g = input::graph(&graph)?;
            let k = vertex_connectivity(&g);
            out.kv("kappa", k);
            out.kv("polyhedral", ccwl::planargraph::is_polyhedral(&g));
        }
        Cmd::Search { input, no_wl_filter, no_phi_reduce, bounds, emit_witnesses } => {
            let base = input::config(&input)?;
            let bounds = match bounds {
                Bounds::Regular => EdgeBounds::REGULAR,
                Bounds::Pairwise => EdgeBounds::PAIRWISE,
                Bounds::Global => EdgeBounds::GLOBAL_ONLY,
            };
            let opts = SearchOptions { bounds, phi_reduce: !no_phi_reduce, wl_filter: !no_wl_filter, ..Default::default() };
            let (cs, rep) = search(&base, &opts)?;
            let c = rep.counts;
            out.kv("units", cs.units.len());
            out.kv("phi_order", rep.phi_order);
            let rows = vec![
                vec!["raw".into(), c.raw.to_string().into()],
                vec!["edge_bounded".into(), c.edge_bounded.into()],
                vec!["phi_reduced".into(), c.phi_reduced.into()],
                vec!["wl_exact".into(), c.wl_exact.into()],
                vec!["polyhedral".into(), c.polyhedral.into()],
            ];
            out.table("stages", &["stage", "count"], rows);
            if let Some(dir) = emit_witnesses {
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                for m in &cs.candidates {
                    let path = dir.join(format!("candidate-{m:x}.txt"));
                    fs::write(&path, format_edge_list(base.n(), &cs.edges(*m)))
                        .with_context(|| format!("writing {}", path.display()))?;
                }
                for w in &rep.witnesses {
                    let path = dir.join(format!("witness-{:x}.txt", w.mask));
                    fs::write(&path, format_edge_list(w.n, &w.edges)).with_context(|| format!("writing {}", path.display()))?;
                }
            }
        }
        Cmd::Tables { table, max_units } => match table.as_str() {
            "solids" => tables::solids(&mut out)?,
            _ => tables::search(&mut out, max_units)?,
        },
    }
    out.print();
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(err) if err.is_resource() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        std::env::set_var("RAYON_NUM_THREADS", j.to_string());
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
