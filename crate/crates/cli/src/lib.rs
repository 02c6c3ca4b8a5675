//! `groupmagic` command-line front end.
//!
//! Exit codes: 0 for an affirmative result, 1 for a verified negative (no
//! labeling exists, an obstruction applies, a certificate is rejected), 2
//! for usage errors and failed preconditions.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use groupmagic::abelian::{enumerate_abelian_groups, GroupSpec};
use groupmagic::constructors::{
    auto_label, auto_label_single, label_c4k2_factor, label_dir_balanced_pow2, label_lex_balanced_pow2,
    label_lex_even_degrees, label_lex_kmn_mixed_on, label_matching_join_on, label_star_on, BalancedFactor,
    ConstructError, ConstructionReport, Product, Theorem,
};
use groupmagic::graphs::{construct_graph, Graph};
use groupmagic::magic::{
    all_obstructions, detect_biregular_universal, Certificate, CertificateVerdict, Labeling, Verdict,
};
use groupmagic::solver::{classify_over_all_groups, search_labelings, SearchMode, SearchOptions, VertexOrder};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "groupmagic", version, about = "Group distance magic labelings of graphs")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the abelian groups of order N, one per isomorphism class.
    Groups { n: u64 },
    /// Build a graph from an expression and print its vertices, degrees and edges.
    Construct { expr: String },
    /// Build a labeling with one of the explicit constructions.
    Label {
        #[arg(long)]
        graph: String,
        /// Balanced factor H; the labeled graph is then G ∘ H or G × H.
        #[arg(long)]
        h: Option<String>,
        /// Defaults to the method's product, or lex.
        #[arg(long, value_enum)]
        product: Option<ProductArg>,
        #[arg(long)]
        group: String,
        /// `auto` or a construction tag such as `even-degrees-lex`.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Exponent of the cyclic factor Z_{2^s} for the balanced-* methods.
        #[arg(long)]
        s: Option<u32>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search for labelings.
    Search {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value_t = ModeArg::First)]
        mode: ModeArg,
        /// Use the unpruned permutation scan.
        #[arg(long)]
        naive: bool,
        #[arg(long, value_enum, default_value_t = OrderArg::Degree)]
        order: OrderArg,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Check a certificate file.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Decide Γ-distance magicness for every abelian group of order |V(G)|.
    Classify {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        naive: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run the structural obstruction checks.
    Obstructions {
        #[arg(long)]
        graph: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProductArg {
    Lex,
    Dir,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    First,
    All,
    Count,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderArg {
    Degree,
    Input,
}

/// A failed command: exit code plus message for stderr.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure { code: EXIT_USAGE, message: message.to_string() }
}

type CmdResult = Result<i32, Failure>;

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut out = Output { json: cli.json, buf: String::new() };
    let result = dispatch(cli.command, &mut out);
    let _ = stdout.write_all(out.buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(stderr, "error: {message}");
            code
        }
    }
}

struct Output {
    json: bool,
    buf: String,
}

impl Output {
    fn line(&mut self, text: impl AsRef<str>) {
        self.buf.push_str(text.as_ref());
        self.buf.push('\n');
    }

    fn json(&mut self, value: &impl Serialize) {
        let text = serde_json::to_string_pretty(value).expect("serializable output");
        self.line(text);
    }
}

fn dispatch(command: Command, out: &mut Output) -> CmdResult {
    match command {
        Command::Groups { n } => groups(n, out),
        Command::Construct { expr } => construct(&expr, out),
        Command::Label { graph, h, product, group, method, s, out: path } => {
            label(LabelArgs { graph, h, product, group, method, s, path }, out)
        }
        Command::Search { graph, group, mode, naive, order, jobs } => {
            search(&graph, &group, mode, naive, order, jobs, out)
        }
        Command::Verify { cert } => verify_cert(&cert, out),
        Command::Classify { graph, naive, jobs } => classify(&graph, naive, jobs, out),
        Command::Obstructions { graph } => obstructions(&graph, out),
    }
}

fn parse_graph(expr: &str) -> Result<Graph, Failure> {
    construct_graph(expr).map_err(|e| usage(format!("graph `{expr}`: {e}")))
}

fn parse_group(spec: &str) -> Result<GroupSpec, Failure> {
    spec.parse().map_err(|e| usage(format!("group `{spec}`: {e}")))
}

fn groups(n: u64, out: &mut Output) -> CmdResult {
    if n == 0 {
        return Err(usage("N must be at least 1"));
    }
    let groups = enumerate_abelian_groups(n);
    if out.json {
        out.json(&groups);
    } else {
        for g in &groups {
            out.line(g.to_string());
        }
    }
    Ok(EXIT_OK)
}

fn construct(expr: &str, out: &mut Output) -> CmdResult {
    let g = parse_graph(expr)?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let metrics = g.metrics();
    if out.json {
        out.json(&json!({
            "vertices": g.n(),
            "degrees": metrics.degrees,
            "edges": edges,
            "regular": metrics.is_regular,
            "connected": metrics.is_connected,
            "tree": metrics.is_tree,
            "diameter": metrics.diameter,
        }));
    } else {
        out.line(format!("vertices: {}", g.n()));
        out.line(format!("degrees: {}", join(&metrics.degrees)));
        out.line(format!("regular: {}", metrics.is_regular));
        out.line(format!("connected: {}", metrics.is_connected));
        out.line(format!("tree: {}", metrics.is_tree));
        out.line(format!("diameter: {}", metrics.diameter.map_or("infinite".into(), |d| d.to_string())));
        out.line(format!("edges: {}", edges.len()));
        for (u, v) in edges {
            out.line(format!("{u} {v}"));
        }
    }
    Ok(EXIT_OK)
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

struct LabelArgs {
    graph: String,
    h: Option<String>,
    product: Option<ProductArg>,
    group: String,
    method: String,
    s: Option<u32>,
    path: Option<PathBuf>,
}

fn label(args: LabelArgs, out: &mut Output) -> CmdResult {
    let g = parse_graph(&args.graph)?;
    let group = parse_group(&args.group)?;
    let theorem = match args.method.as_str() {
        "auto" => None,
        tag => Some(Theorem::from_tag(tag).ok_or_else(|| {
            let tags: Vec<&str> = Theorem::ALL.iter().map(|t| t.tag()).collect();
            usage(format!("unknown method `{tag}`; expected auto or one of {}", tags.join(", ")))
        })?),
    };
    let factor = match &args.h {
        Some(expr) => Some(BalancedFactor::new(parse_graph(expr)?).map_err(|e| usage(format!("H: {e}")))?),
        None => None,
    };
    let needs_factor = !matches!(theorem, None | Some(Theorem::MatchingJoin | Theorem::Star));
    if needs_factor && factor.is_none() {
        return Err(usage(format!("method {} needs --h", args.method)));
    }
    let implied = theorem.and_then(|t| match t.tag() {
        tag if tag.ends_with("-lex") => Some(Product::Lex),
        tag if tag.ends_with("-dir") => Some(Product::Dir),
        _ => None,
    });
    let requested = args.product.map(|p| match p {
        ProductArg::Lex => Product::Lex,
        ProductArg::Dir => Product::Dir,
    });
    let product = match (requested, implied) {
        (Some(p), Some(q)) if p != q => {
            return Err(usage(format!("method {} does not match --product {}", args.method, p.name())))
        }
        (p, q) => p.or(q).unwrap_or(Product::Lex),
    };
    let report = match (theorem, &factor) {
        (None, Some(h)) => auto_label(&g, h, product, &group),
        (None, None) => auto_label_single(&g, &group),
        (Some(Theorem::MatchingJoin), _) => label_matching_join_on(&g, &group),
        (Some(Theorem::Star), _) => match label_star_on(&g, &group) {
            Ok(Some(report)) => Ok(report),
            Ok(None) => {
                return Err(Failure {
                    code: EXIT_NEGATIVE,
                    message: format!("no labeling: no x in {group} with 2x = s(Γ)"),
                })
            }
            Err(e) => Err(e),
        },
        (Some(t), Some(h)) => label_with(t, &g, h, &group, args.s),
        (Some(_), None) => unreachable!("checked above"),
    }
    .map_err(|e| match e {
        ConstructError::VerificationFailed { .. } => Failure { code: EXIT_USAGE, message: format!("internal: {e}") },
        e => usage(e),
    })?;
    let graph_expr = match (&args.h, report.theorem) {
        (Some(h), t) if !matches!(t, Theorem::MatchingJoin | Theorem::Star) => {
            format!("{}({},{h})", product.name(), args.graph)
        }
        _ => args.graph.clone(),
    };
    emit_certificate(&graph_expr, &report, args.path, out)
}

fn label_with(
    theorem: Theorem,
    g: &Graph,
    h: &BalancedFactor,
    group: &GroupSpec,
    s: Option<u32>,
) -> Result<ConstructionReport, ConstructError> {
    let precondition = |msg: String| ConstructError::Precondition(msg);
    match theorem {
        Theorem::C4k2Lex => label_c4k2_factor(g, h, group, Product::Lex),
        Theorem::C4k2Dir => label_c4k2_factor(g, h, group, Product::Dir),
        Theorem::EvenDegreesLex => label_lex_even_degrees(g, h, group),
        Theorem::KmnMixedLex => label_lex_kmn_mixed_on(g, h, group),
        Theorem::BalancedSmallLex
        | Theorem::BalancedSmallDir
        | Theorem::BalancedLargeLex
        | Theorem::BalancedLargeDir => {
            let k = h
                .log2_order()
                .filter(|&k| k >= 2)
                .ok_or_else(|| precondition(format!("H must have 2^k vertices with k >= 2, has {}", h.order())))?;
            let small = matches!(theorem, Theorem::BalancedSmallLex | Theorem::BalancedSmallDir);
            let in_branch = |s: u32| if small { s < k } else { s >= k };
            let s = match s {
                Some(s) if in_branch(s) => s,
                Some(s) => return Err(precondition(format!("s = {s} is outside the {theorem} branch (k = {k})"))),
                None => group
                    .primary_factors()
                    .iter()
                    .filter(|f| f.prime == 2 && in_branch(f.exponent))
                    .map(|f| f.exponent)
                    .max()
                    .ok_or_else(|| precondition(format!("{group} has no Z_2^s factor for the {theorem} branch")))?,
            };
            if theorem.tag().ends_with("-lex") {
                label_lex_balanced_pow2(g, h, group, s)
            } else {
                label_dir_balanced_pow2(g, h, group, s)
            }
        }
        Theorem::MatchingJoin | Theorem::Star => unreachable!("handled without a factor"),
    }
}

fn emit_certificate(
    graph_expr: &str,
    report: &ConstructionReport,
    path: Option<PathBuf>,
    out: &mut Output,
) -> CmdResult {
    let cert = Certificate::from_labeling(graph_expr, &report.labeling, Some(report.theorem.tag().to_string()))
        .map_err(usage)?;
    let text = if out.json {
        serde_json::to_string_pretty(&json!({
            "theorem": report.theorem.tag(),
            "graph": cert.graph,
            "group": cert.group,
            "mu": cert.mu,
            "labels": cert.labels,
            "parameters": report.parameters,
        }))
        .expect("serializable certificate")
            + "\n"
    } else {
        cert.to_string()
    };
    match path {
        Some(path) => {
            fs::write(&path, &text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            out.line(format!("wrote {} ({}, mu {})", path.display(), report.theorem, cert.mu));
        }
        None => out.buf.push_str(&text),
    }
    Ok(EXIT_OK)
}

fn certificate_for(graph: &str, labeling: &Labeling) -> Certificate {
    Certificate::from_labeling(graph, labeling, None).expect("solver labelings carry their constant")
}

fn search(
    graph: &str,
    group: &str,
    mode: ModeArg,
    naive: bool,
    order: OrderArg,
    jobs: Option<usize>,
    out: &mut Output,
) -> CmdResult {
    let g = parse_graph(graph)?;
    let gamma = parse_group(group)?;
    let opts = SearchOptions {
        mode: match mode {
            ModeArg::First => SearchMode::First,
            ModeArg::All => SearchMode::All,
            ModeArg::Count => SearchMode::Count,
        },
        vertex_order: match order {
            OrderArg::Degree => VertexOrder::DegreeDesc,
            OrderArg::Input => VertexOrder::Input,
        },
        use_pruning: !naive,
        jobs,
    };
    let outcome = search_labelings(&g, &gamma, &opts).map_err(usage)?;
    let certs: Vec<Certificate> = outcome.labelings.iter().map(|l| certificate_for(graph, l)).collect();
    if out.json {
        out.json(&json!({ "count": outcome.count, "labelings": certs }));
    } else if opts.mode == SearchMode::Count {
        out.line(outcome.count.to_string());
    } else {
        out.line(format!("# count: {}", outcome.count));
        for (i, cert) in certs.iter().enumerate() {
            if i > 0 {
                out.line("");
            }
            out.buf.push_str(&cert.to_string());
        }
    }
    Ok(if outcome.found() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn verify_cert(path: &PathBuf, out: &mut Output) -> CmdResult {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let cert = Certificate::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let verdict = cert.check().map_err(usage)?;
    let (accepted, detail) = match &verdict {
        CertificateVerdict::Accepted(mu) => (true, format!("accepted: mu {mu}")),
        CertificateVerdict::WrongConstant { claimed, actual } => {
            (false, format!("rejected: magic constant is {actual}, certificate claims {claimed}"))
        }
        CertificateVerdict::NotMagic(Verdict::Rejected { first, first_weight, second, second_weight }) => {
            (false, format!("rejected: w({first}) = {first_weight} but w({second}) = {second_weight}"))
        }
        CertificateVerdict::NotMagic(Verdict::Magic(_)) => {
            unreachable!("a magic verdict is never reported as not magic")
        }
    };
    if out.json {
        out.json(&json!({ "accepted": accepted, "verdict": verdict, "theorem": cert.theorem }));
    } else {
        out.line(detail);
    }
    Ok(if accepted { EXIT_OK } else { EXIT_NEGATIVE })
}

fn classify(graph: &str, naive: bool, jobs: Option<usize>, out: &mut Output) -> CmdResult {
    let g = parse_graph(graph)?;
    if g.n() == 0 {
        return Err(usage("graph has no vertices"));
    }
    let opts = SearchOptions { use_pruning: !naive, jobs, ..SearchOptions::default() };
    let verdicts = classify_over_all_groups(&g, &opts).map_err(usage)?;
    let all = verdicts.iter().all(|(_, magic)| *magic);
    if out.json {
        let groups: Vec<_> = verdicts.iter().map(|(gamma, magic)| json!({ "group": gamma, "magic": magic })).collect();
        out.json(&json!({ "groups": groups, "group_distance_magic": all }));
    } else {
        for (gamma, magic) in &verdicts {
            out.line(format!("{gamma}: {}", if *magic { "yes" } else { "no" }));
        }
        out.line(format!("group distance magic: {}", if all { "yes" } else { "no" }));
    }
    Ok(if all { EXIT_OK } else { EXIT_NEGATIVE })
}

fn obstructions(graph: &str, out: &mut Output) -> CmdResult {
    let g = parse_graph(graph)?;
    let found = all_obstructions(&g);
    let blocking = found.iter().any(|o| o.kind.rules_out_all_groups());
    let hub = detect_biregular_universal(&g);
    if out.json {
        let items: Vec<_> = found
            .iter()
            .map(|o| json!({ "kind": o.kind.tag(), "witness": o.witness.to_string(), "rules_out_all_groups": o.kind.rules_out_all_groups() }))
            .collect();
        out.json(&json!({ "obstructions": items, "biregular_universal": hub }));
    } else if found.is_empty() {
        out.line("none");
    } else {
        for o in &found {
            out.line(format!("{} {}", o.kind.tag(), o.witness));
        }
        if let Some(h) = hub {
            out.line(format!("# every labeling puts e on vertex {} (r2 = {})", h.vertex, h.r2));
        }
    }
    Ok(if blocking { EXIT_NEGATIVE } else { EXIT_OK })
}
