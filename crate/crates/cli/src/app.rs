//! Argument parsing, command execution and output rendering.
//!
//! Every command first produces a JSON payload; all three output formats
//! are rendered from that payload alone, so a cached payload prints exactly
//! like a fresh one.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use dinv_core::exactmath::form_data;
use dinv_core::knots::{enumerate_lspace_alex, torus_alex, AlexanderPoly};
use dinv_core::lattice::{d_bruteforce, d_plumbing, DInvariants, DEFAULT_BRUTEFORCE_LIMIT};
use dinv_core::obstruct::{run_classification, Category, Matcher};
use dinv_core::plumbing::{to_plumbing, PlumbingGraph};
use dinv_core::seifert::{
    classify, euler_number, h1_invariant_factors, h1_order, normalize, parse_seifert, SeifertData,
};
use dinv_core::surgery::{d_surgery, Slope};
use dinv_core::{Error, Rational};
use serde_json::{json, Value};

use crate::cache::{Cache, ENV_VAR};
use crate::tables;

#[derive(Parser, Debug)]
#[command(
    name = "dinv",
    version,
    about = "Correction terms of elliptic Seifert spaces and knot surgeries"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Directory for cached results; caching is off when unset.
    #[arg(long, env = ENV_VAR, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Worker threads for data-parallel commands.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: Option<u32>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Seifert fibered spaces.
    Sfs {
        #[command(subcommand)]
        command: SfsCommand,
    },
    /// Surgeries on knots with a given Alexander polynomial.
    Surgery {
        #[command(subcommand)]
        command: SurgeryCommand,
    },
    Knots {
        #[command(subcommand)]
        command: KnotsCommand,
    },
    /// Candidate surgeries for one manifold.
    Match {
        #[arg(allow_hyphen_values = true)]
        manifold: String,
    },
    /// Match every non-cyclic elliptic manifold up to a homology bound.
    Classify {
        #[arg(long, default_value_t = 9)]
        h1_max: u64,
        #[arg(long, default_value_t = 101)]
        n_max: i64,
        #[arg(long)]
        dihedral_only: bool,
    },
    /// Regenerate the published tables (1, 3 or 4).
    Tables {
        #[arg(value_parser = ["1", "3", "4"])]
        which: String,
        /// Family parameter for the dihedral rows.
        #[arg(long)]
        n: Option<i64>,
        /// Compare against the embedded printed copies.
        #[arg(long)]
        diff: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum SfsCommand {
    /// Canonical form, type and first homology.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        manifold: String,
    },
    /// Correction terms via the plumbing lattice.
    D {
        /// Seifert data, e.g. "(-1; 1/2, 1/3, 2/5)"; a leading '-' reverses it.
        #[arg(allow_hyphen_values = true)]
        manifold: Option<String>,
        /// Plumbing graph JSON {"weights":[..],"edges":[[i,j],..]} instead.
        #[arg(long, conflicts_with = "manifold")]
        graph: Option<String>,
        /// Maximize over the whole nice box instead of following paths.
        #[arg(long)]
        bruteforce: bool,
        #[arg(long, default_value_t = DEFAULT_BRUTEFORCE_LIMIT as u64)]
        limit: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum SurgeryCommand {
    /// d(S^3_{p/q}(K), i) for every Spin^c label.
    D {
        /// `p` or `p/q`.
        slope: String,
        #[arg(long)]
        q: Option<i64>,
        /// Coefficients "a_g,...,a_0" or a name such as D2 or D8''.
        #[arg(long, conflicts_with = "torus", required_unless_present = "torus")]
        alex: Option<String>,
        /// Torus knot "r,s".
        #[arg(long)]
        torus: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum KnotsCommand {
    /// Every L-space-shaped Alexander polynomial up to a genus.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        g_max: usize,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Invalid(_) => 2,
        e if e.is_inapplicable() => 3,
        _ => 1,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match cli.workers {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
        {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::Internal(format!("worker pool: {e}"))),
        },
        None => execute(&cli),
    };
    match result {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(cli: &Cli) -> Result<String, Error> {
    let (kind, payload) = payload(cli)?;
    render(kind, &payload, cli.format)
}

#[derive(Clone, Copy)]
enum Kind {
    Normalize,
    SfsD,
    SurgeryD,
    Knots,
    Match,
    Classify,
    Table,
    Diff,
}

fn cached(
    cli: &Cli,
    request: String,
    f: impl FnOnce() -> Result<Value, Error>,
) -> Result<Value, Error> {
    let Some(dir) = &cli.cache_dir else {
        return f();
    };
    let cache = Cache::new(dir);
    if let Some(v) = cache.get(&request) {
        return Ok(v);
    }
    let v = f()?;
    cache
        .put(&request, &v)
        .map_err(|e| Error::Internal(format!("writing cache in {}: {e}", cache.dir().display())))?;
    Ok(v)
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

fn payload(cli: &Cli) -> Result<(Kind, Value), Error> {
    match &cli.command {
        Command::Sfs {
            command: SfsCommand::Normalize { manifold },
        } => {
            let s = parse_seifert(manifold)?;
            let ty = classify(&s);
            let mut v = json!({
                "input": s.to_string(),
                "type": ty.to_string(),
                "euler": euler_number(&s).to_string(),
                "h1": h1_order(&s)?,
                "h1_factors": h1_invariant_factors(&s)?,
            });
            if ty.is_non_cyclic_elliptic() {
                let c = normalize(&s)?;
                v["canonical"] = json!(c.data.to_string());
                v["reversed"] = json!(c.reversed);
            } else {
                v["canonical"] = Value::Null;
                v["reversed"] = Value::Null;
            }
            Ok((Kind::Normalize, v))
        }
        Command::Sfs {
            command:
                SfsCommand::D {
                    manifold,
                    graph,
                    bruteforce,
                    limit,
                },
        } => {
            let (label, g, flipped, s) = match (manifold, graph) {
                (Some(m), None) => {
                    let s = parse_seifert(m)?;
                    let p = to_plumbing(&s)?;
                    (s.to_string(), p.graph, p.flipped, Some(s))
                }
                (None, Some(text)) => {
                    let g = PlumbingGraph::from_json(text)?;
                    (g.to_json(), g, false, None)
                }
                _ => return Err(Error::Invalid("give a Seifert manifold or --graph".into())),
            };
            let method = if *bruteforce { "bruteforce" } else { "path" };
            let request = format!("v1|sfs-d|{label}|{method}|{limit}");
            let v = cached(cli, request, || {
                let form = form_data(&g.intersection_form())?;
                let d = if *bruteforce {
                    d_bruteforce(&g, &form, flipped, *limit as u128)?
                } else {
                    d_plumbing(&g, &form, flipped)?
                };
                Ok(sfs_d_payload(&label, s.as_ref(), &g, flipped, method, &d))
            })?;
            Ok((Kind::SfsD, v))
        }
        Command::Surgery {
            command:
                SurgeryCommand::D {
                    slope,
                    q,
                    alex,
                    torus,
                },
        } => {
            let mut s: Slope = slope.parse()?;
            if let Some(q) = q {
                if s.q != 1 && s.q != *q {
                    return Err(Error::Invalid(format!(
                        "slope {slope} conflicts with --q {q}"
                    )));
                }
                s = Slope::new(s.p, *q)?;
            }
            let (poly, knot) = match (alex, torus) {
                (Some(a), _) => (parse_alex(a)?, None),
                (None, Some(t)) => {
                    let (r, k) = parse_pair(t)?;
                    (torus_alex(r, k)?, Some([r, k]))
                }
                (None, None) => return Err(Error::Invalid("give --alex or --torus".into())),
            };
            let request = format!("v1|surgery-d|{s}|{poly}");
            let v = cached(cli, request, || {
                let d = d_surgery(s, &poly)?;
                Ok(json!({
                    "slope": s.to_string(),
                    "p": s.p,
                    "q": s.q,
                    "alex": poly.to_string(),
                    "alex_name": poly.table_name(),
                    "torus": knot,
                    "values": strs(&d.values),
                    "row": strs(d.row()),
                    "multiset": strs(&d.multiset()),
                }))
            })?;
            Ok((Kind::SurgeryD, v))
        }
        Command::Knots {
            command: KnotsCommand::Enumerate { g_max },
        } => {
            if *g_max == 0 || *g_max > 24 {
                return Err(Error::Invalid(format!(
                    "--g-max must be in 1..=24, got {g_max}"
                )));
            }
            let polys: Vec<Value> = enumerate_lspace_alex(*g_max)
                .iter()
                .map(|p| json!({"genus": p.genus(), "coeffs": p.to_string(), "name": p.table_name()}))
                .collect();
            Ok((Kind::Knots, json!({"g_max": g_max, "polynomials": polys})))
        }
        Command::Match { manifold } => {
            let s = parse_seifert(manifold)?;
            let request = format!("v1|match|{s}");
            let v = cached(cli, request, || {
                let r = Matcher::new().match_manifold(&s)?;
                serde_json::to_value(&r).map_err(|e| Error::Internal(e.to_string()))
            })?;
            Ok((Kind::Match, v))
        }
        Command::Classify {
            h1_max,
            n_max,
            dihedral_only,
        } => {
            let request = format!("v1|classify|{h1_max}|{n_max}|{dihedral_only}");
            let v = cached(cli, request, || {
                let c = run_classification(*h1_max, *n_max, *dihedral_only)?;
                let names = |cat: Category| -> Vec<String> {
                    c.by_category(cat)
                        .map(|r| r.manifold.data.to_string())
                        .collect()
                };
                Ok(json!({
                    "h1_max": h1_max,
                    "n_max": n_max,
                    "dihedral_only": dihedral_only,
                    "reports": serde_json::to_value(&c.reports).map_err(|e| Error::Internal(e.to_string()))?,
                    "summary": {
                        "unique_torus": names(Category::UniqueTorus),
                        "candidate_only": names(Category::CandidateOnly),
                        "not_surgery": names(Category::NotSurgery),
                    },
                }))
            })?;
            Ok((Kind::Classify, v))
        }
        Command::Tables { which, n, diff } => table_payload(which, *n, *diff),
    }
}

fn sfs_d_payload(
    label: &str,
    s: Option<&SeifertData>,
    g: &PlumbingGraph,
    flipped: bool,
    method: &str,
    d: &DInvariants,
) -> Value {
    let classes: Vec<Value> = d
        .classes
        .iter()
        .map(|(c, v)| json!({"id": c.id, "representative": c.representative.0, "d": v.to_string()}))
        .collect();
    let graph: Value = serde_json::from_str(&g.to_json()).expect("graph JSON");
    json!({
        "manifold": label,
        "h1": s.and_then(|s| h1_order(s).ok()),
        "graph": graph,
        "flipped": flipped,
        "method": method,
        "classes": classes,
        "multiset": strs(&d.multiset()),
    })
}

fn parse_alex(text: &str) -> Result<AlexanderPoly, Error> {
    let t = text.trim();
    if t.starts_with('D') || t.starts_with('Δ') {
        AlexanderPoly::from_table_name(t)
    } else {
        t.parse()
    }
}

fn parse_pair(text: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("expected \"r,s\", got {text:?}"),
    };
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn table_payload(which: &str, n: Option<i64>, diff: bool) -> Result<(Kind, Value), Error> {
    if diff {
        let ns: Vec<i64> = n.map_or(vec![3, 5, 7, 9, 11], |n| vec![n]);
        let d = match which {
            "1" => tables::diff_table1(&ns)?,
            "3" => tables::diff_table3()?,
            _ => tables::diff_table4()?,
        };
        let v = serde_json::to_value(&d).map_err(|e| Error::Internal(e.to_string()))?;
        return Ok((Kind::Diff, json!({"table": which, "discrepancies": v})));
    }
    let rows: Vec<Value> = match which {
        "1" => {
            let n = n.unwrap_or(3);
            tables::table1()
                .iter()
                .map(|row| {
                    let computed = tables::sfs_multiset(&tables::table1_manifold(row.h1, n)?)?;
                    let printed: Vec<String> =
                        row.terms.iter().map(|t| t.eval(n).to_string()).collect();
                    Ok(json!({
                        "h1": row.h1,
                        "n": if row.symbolic { Some(n) } else { None },
                        "printed": printed,
                        "formula": row.terms.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                        "computed": strs(&computed),
                    }))
                })
                .collect::<Result<_, Error>>()?
        }
        "3" => {
            let mut out = Vec::new();
            for row in tables::table3() {
                let samples: Vec<i64> = match n {
                    Some(n) if n % 2 == 1 && n % row.m == row.k % row.m => vec![n],
                    Some(_) => continue,
                    None => row.sample_n.to_vec(),
                };
                for n in samples {
                    let computed: std::collections::BTreeSet<Rational> =
                        tables::sfs_multiset(&tables::dihedral(row.m, n)?)?
                            .into_iter()
                            .collect();
                    out.push(json!({
                        "four_m": 4 * row.m,
                        "class": format!("{} mod {}", row.k, if row.m == 1 { 2 } else { row.m }),
                        "n": n,
                        "constants": strs(&row.constants),
                        "variable": row.variable.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                        "printed": tables::table3_printed_set(&row, n).iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                        "computed": computed.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    }));
                }
            }
            out
        }
        _ => tables::table4()
            .iter()
            .map(|row| {
                let computed = tables::table4_computed(row.name, row.p)?;
                Ok(json!({
                    "alex_name": row.name,
                    "p": row.p,
                    "n": row.n,
                    "printed": strs(&row.values),
                    "computed": strs(&computed),
                }))
            })
            .collect::<Result<_, Error>>()?,
    };
    Ok((Kind::Table, json!({"table": which, "rows": rows})))
}

// ---- rendering ----

fn render(kind: Kind, v: &Value, format: Format) -> Result<String, Error> {
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => render_csv(kind, v),
        Format::Text => Ok(render_text(kind, v)),
    }
}

fn s(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn list(v: &Value) -> String {
    v.as_array()
        .map(|a| a.iter().map(s).collect::<Vec<_>>().join(", "))
        .unwrap_or_default()
}

fn arr(v: &Value) -> &[Value] {
    v.as_array().map_or(&[], Vec::as_slice)
}

fn render_csv(kind: Kind, v: &Value) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut row = |r: Vec<String>| {
        w.write_record(&r)
            .map_err(|e| Error::Internal(e.to_string()))
    };
    match kind {
        Kind::Normalize => {
            row(vec!["field".into(), "value".into()])?;
            for k in ["input", "type", "euler", "h1", "canonical", "reversed"] {
                row(vec![k.into(), s(&v[k])])?;
            }
            row(vec!["h1_factors".into(), list(&v["h1_factors"])])?;
        }
        Kind::SfsD => {
            row(vec!["id".into(), "representative".into(), "d".into()])?;
            for c in arr(&v["classes"]) {
                row(vec![s(&c["id"]), list(&c["representative"]), s(&c["d"])])?;
            }
        }
        Kind::SurgeryD => {
            row(vec!["label".into(), "d".into()])?;
            for (i, d) in arr(&v["values"]).iter().enumerate() {
                row(vec![i.to_string(), s(d)])?;
            }
        }
        Kind::Knots => {
            row(vec!["genus".into(), "coeffs".into(), "name".into()])?;
            for p in arr(&v["polynomials"]) {
                row(vec![s(&p["genus"]), s(&p["coeffs"]), s(&p["name"])])?;
            }
        }
        Kind::Match => {
            candidate_header(&mut row)?;
            candidate_rows(&mut row, v)?;
        }
        Kind::Classify => {
            candidate_header(&mut row)?;
            for r in arr(&v["reports"]) {
                candidate_rows(&mut row, r)?;
            }
        }
        Kind::Table => {
            row(vec![
                "row".into(),
                "n".into(),
                "printed".into(),
                "computed".into(),
            ])?;
            for r in arr(&v["rows"]) {
                row(vec![
                    table_row_label(r),
                    s(&r["n"]),
                    list(&r["printed"]),
                    list(&r["computed"]),
                ])?;
            }
        }
        Kind::Diff => {
            row(vec![
                "table".into(),
                "row".into(),
                "printed_only".into(),
                "computed_only".into(),
            ])?;
            for d in arr(&v["discrepancies"]) {
                row(vec![
                    s(&d["table"]),
                    s(&d["row"]),
                    list(&d["printed_only"]),
                    list(&d["computed_only"]),
                ])?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

fn candidate_header(row: &mut impl FnMut(Vec<String>) -> Result<(), Error>) -> Result<(), Error> {
    row([
        "manifold",
        "h1",
        "type",
        "verdict",
        "category",
        "p",
        "q",
        "alex",
        "alex_name",
        "orientation",
        "torus",
    ]
    .map(String::from)
    .to_vec())
}

fn candidate_rows(
    row: &mut impl FnMut(Vec<String>) -> Result<(), Error>,
    r: &Value,
) -> Result<(), Error> {
    let head = vec![
        s(&r["manifold"]),
        s(&r["h1"]),
        s(&r["type"]),
        s(&r["verdict"]),
        s(&r["category"]),
    ];
    let cands = arr(&r["candidates"]);
    if cands.is_empty() {
        let mut line = head;
        line.extend(std::iter::repeat_n(String::new(), 6));
        return row(line);
    }
    for c in cands {
        let mut line = head.clone();
        line.extend([
            s(&c["p"]),
            s(&c["q"]),
            s(&c["alex"]),
            s(&c["alex_name"]),
            s(&c["orientation"]),
            list(&c["torus"]),
        ]);
        row(line)?;
    }
    Ok(())
}

fn table_row_label(r: &Value) -> String {
    if let Some(h) = r.get("h1") {
        format!("|H1|={}", s(h))
    } else if let Some(m) = r.get("four_m") {
        format!("4m={} ({})", s(m), s(&r["class"]))
    } else {
        format!("{} p={}", s(&r["alex_name"]), s(&r["p"]))
    }
}

fn candidate_text(c: &Value) -> String {
    let slope = if c["q"] == json!(1) {
        s(&c["p"])
    } else {
        format!("{}/{}", s(&c["p"]), s(&c["q"]))
    };
    let name = if c["alex_name"].is_null() {
        s(&c["alex"])
    } else {
        s(&c["alex_name"])
    };
    let torus = match c["torus"].as_array() {
        Some(t) => format!(", torus T({},{})", s(&t[0]), s(&t[1])),
        None => String::new(),
    };
    let pinned = if c["pinned"] == json!(true) {
        ", unique"
    } else {
        ""
    };
    format!("  {slope}  {name}  {}{torus}{pinned}", s(&c["orientation"]))
}

fn render_text(kind: Kind, v: &Value) -> String {
    let mut out = String::new();
    let mut line = |l: String| {
        out.push_str(&l);
        out.push('\n');
    };
    match kind {
        Kind::Normalize => {
            line(format!("input      {}", s(&v["input"])));
            line(format!("type       {}", s(&v["type"])));
            line(format!("euler      {}", s(&v["euler"])));
            line(format!(
                "|H1|       {}  (factors: {})",
                s(&v["h1"]),
                list(&v["h1_factors"])
            ));
            if !v["canonical"].is_null() {
                let sign = if v["reversed"] == json!(true) {
                    "-"
                } else {
                    ""
                };
                line(format!("canonical  {sign}{}", s(&v["canonical"])));
            }
        }
        Kind::SfsD => {
            line(format!(
                "{}  ({} classes, {})",
                s(&v["manifold"]),
                arr(&v["classes"]).len(),
                s(&v["method"])
            ));
            for c in arr(&v["classes"]) {
                line(format!(
                    "  {:>3}  ({})  {}",
                    s(&c["id"]),
                    list(&c["representative"]),
                    s(&c["d"])
                ));
            }
            line(format!("multiset: {}", list(&v["multiset"])));
        }
        Kind::SurgeryD => {
            let name = if v["alex_name"].is_null() {
                s(&v["alex"])
            } else {
                s(&v["alex_name"])
            };
            line(format!(
                "S^3_{}(K), Alexander polynomial {name}",
                s(&v["slope"])
            ));
            let labels = if v["q"] == json!(1) {
                &v["row"]
            } else {
                &v["values"]
            };
            for (i, d) in arr(labels).iter().enumerate() {
                line(format!("  {i:>3}  {}", s(d)));
            }
            line(format!("multiset: {}", list(&v["multiset"])));
        }
        Kind::Knots => {
            for p in arr(&v["polynomials"]) {
                line(format!(
                    "g={:<3} {:<24} {}",
                    s(&p["genus"]),
                    s(&p["coeffs"]),
                    s(&p["name"])
                ));
            }
            line(format!("{} polynomials", arr(&v["polynomials"]).len()));
        }
        Kind::Match => {
            line(format!(
                "{}  |H1|={}  type {}",
                s(&v["manifold"]),
                s(&v["h1"]),
                s(&v["type"])
            ));
            line(format!("d: {}", list(&v["target_d"])));
            for c in arr(&v["candidates"]) {
                line(candidate_text(c));
            }
            line(format!(
                "verdict: {} ({})",
                s(&v["verdict"]),
                s(&v["category"])
            ));
        }
        Kind::Classify => {
            let reports = arr(&v["reports"]);
            for r in reports.iter().filter(|r| !arr(&r["candidates"]).is_empty()) {
                line(format!(
                    "{}  |H1|={}  {}",
                    s(&r["manifold"]),
                    s(&r["h1"]),
                    s(&r["category"])
                ));
                for c in arr(&r["candidates"]) {
                    line(candidate_text(c));
                }
            }
            let sum = &v["summary"];
            line(format!(
                "{} manifolds: {} uniquely torus surgeries, {} with candidates only, {} not surgery",
                reports.len(),
                arr(&sum["unique_torus"]).len(),
                arr(&sum["candidate_only"]).len(),
                arr(&sum["not_surgery"]).len()
            ));
        }
        Kind::Table => {
            for r in arr(&v["rows"]) {
                let n = if r["n"].is_null() {
                    String::new()
                } else {
                    format!(" n={}", s(&r["n"]))
                };
                line(format!("{}{n}", table_row_label(r)));
                line(format!("  printed:  {}", list(&r["printed"])));
                line(format!("  computed: {}", list(&r["computed"])));
            }
        }
        Kind::Diff => {
            let ds = arr(&v["discrepancies"]);
            for d in ds {
                line(format!("table {} {}", s(&d["table"]), s(&d["row"])));
                line(format!("  printed only:  {}", list(&d["printed_only"])));
                line(format!("  computed only: {}", list(&d["computed_only"])));
            }
            line(format!("{} discrepancies", ds.len()));
        }
    }
    out
}
