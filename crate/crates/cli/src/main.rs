//! Command-line front end: entropy fingerprints, exact spectra, state dumps,
//! proposition suites, isomorph-free enumeration, the coentropic-pair
//! search, and verification against the bundled reference results.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use coentropy::canon::enumerate_forms;
use coentropy::entropy::{
    unnormalized_entropy_with_precision, von_neumann_entropy_with_precision,
};
use coentropy::graph::Graph;
use coentropy::props::run_proposition_suites;
use coentropy::quantum::{
    incidence_vector, partial_trace_e, partial_trace_v, signless_incidence_vector, PureState,
};
use coentropy::search::{
    expected_pair_count, find_coentropic_pairs, locate_example_pair, verify_table, GraphClass,
    SearchConfig, Source,
};
use coentropy::spectral::{arc_list, charpoly, laplacian, spectrum};

#[derive(Parser)]
#[command(
    name = "coentropy",
    version,
    about = "Graph Laplacian spectra, von Neumann graph entropy, coentropic pair search"
)]
struct Cli {
    /// Worker threads (default: COENTROPY_WORKERS env var, then all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GraphArgs {
    /// Graph in graph6 short form
    #[arg(long, conflicts_with = "edges")]
    graph6: Option<String>,
    /// Edge list: "N; {u,v} {u,v} ..." or "{{u, v}, {u, v}, ...}" (1-based)
    #[arg(long)]
    edges: Option<String>,
    /// Vertex count (with --edges; defaults to the largest label)
    #[arg(long)]
    n: Option<usize>,
}

impl GraphArgs {
    fn parse_graph(&self) -> Result<Graph> {
        match (&self.graph6, &self.edges) {
            (Some(g6), None) => Ok(Graph::graph6_decode(g6)?),
            (None, Some(e)) => Ok(Graph::parse_edge_list(e, self.n)?),
            _ => bail!("provide exactly one of --graph6 or --edges"),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Von Neumann entropy fingerprint (exact prime-log form when the
    /// spectrum is integral, plus a high-precision decimal), and the
    /// un-normalized companion
    Entropy {
        #[command(flatten)]
        graph: GraphArgs,
        /// Decimal digits for the numeric value
        #[arg(long, default_value_t = 60)]
        digits: u32,
    },
    /// Exact characteristic polynomial and spectrum of the Laplacian
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Dump the incidence state (or its signless companion) and both
    /// partial traces
    State {
        #[command(flatten)]
        graph: GraphArgs,
        /// Dump the signless state instead
        #[arg(long)]
        signless: bool,
    },
    /// Run the partial-trace / Schmidt-rank / LU-equivalence suites over all
    /// isomorphism classes up to --max-n vertices
    CheckProps {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Stream one canonical graph6 line per isomorphism class
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Connected graphs only
        #[arg(long)]
        connected: bool,
    },
    /// Search for coentropic (equal-entropy, non-cospectral) pairs
    Search {
        #[arg(long)]
        n: usize,
        /// Graph class: "all" or "connected"
        #[arg(long, value_parser = parse_class, default_value = "all")]
        class: GraphClass,
        /// Working precision for numeric fingerprints
        #[arg(long, default_value_t = 60)]
        digits: u32,
        /// Digits that must agree for a numeric coentropy match
        #[arg(long, default_value_t = 50)]
        match_digits: u32,
        /// Pairs as JSON lines
        #[arg(long)]
        out: Option<PathBuf>,
        /// Summary CSV
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Read graphs from a graph6 file instead of enumerating
        #[arg(long)]
        graph6: Option<PathBuf>,
        /// Also compare pairs with different edge counts
        #[arg(long)]
        no_group_by_edges: bool,
        /// Resumable graph6 -> charpoly cache file
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Re-derive the bundled reference results: the 9-vertex coentropic
    /// table, the 8-vertex example pair, and the published pair counts
    VerifyPaper {
        /// Largest vertex count for the count checks (8..=10; 10 is slow)
        #[arg(long, default_value_t = 9)]
        max_n: usize,
    },
    /// Convert between edge-list and graph6 forms (prints both)
    Convert {
        #[command(flatten)]
        graph: GraphArgs,
    },
}

fn parse_class(s: &str) -> std::result::Result<GraphClass, String> {
    match s {
        "all" => Ok(GraphClass::All),
        "connected" => Ok(GraphClass::Connected),
        _ => Err(format!("unknown class {s:?}; use \"all\" or \"connected\"")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers.or_else(|| {
        std::env::var("COENTROPY_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(w) = workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .ok();
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Entropy { graph, digits } => {
            let g = graph.parse_graph()?;
            let s = von_neumann_entropy_with_precision(&g, digits)?;
            let s_hat = unnormalized_entropy_with_precision(&g, digits);
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "n": g.n(),
                        "m": g.m(),
                        "edges": g.edge_list_string(),
                        "entropy": s.canonical_text(),
                        "entropy_exact_key": s.exact_key(),
                        "entropy_numeric": s.numeric().to_string_digits(digits),
                        "unnormalized": s_hat.canonical_text(),
                    })
                );
            } else {
                println!("graph: n={} m={} {}", g.n(), g.m(), g.edge_list_string());
                println!("S     = {}", s.canonical_text());
                println!("S_hat = {}", s_hat.canonical_text());
            }
            Ok(true)
        }
        Cmd::Spectrum { graph } => {
            let g = graph.parse_graph()?;
            let cp = charpoly(&laplacian(&g));
            let spec = spectrum(&cp);
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "n": g.n(),
                        "m": g.m(),
                        "charpoly": cp.serialize(),
                        "spectrum": spec.text(),
                        "integral": spec.is_integral,
                    })
                );
            } else {
                println!("graph:    n={} m={} {}", g.n(), g.m(), g.edge_list_string());
                println!("charpoly: {}", cp.serialize());
                println!("spectrum: {}", spec.text());
                println!("integral: {}", spec.is_integral);
            }
            Ok(true)
        }
        Cmd::State { graph, signless } => {
            let g = graph.parse_graph()?;
            let psi = if signless {
                signless_incidence_vector(&g)?
            } else {
                incidence_vector(&g)?
            };
            print_state(&g, &psi, signless);
            Ok(true)
        }
        Cmd::CheckProps { max_n } => {
            let checks = run_proposition_suites(max_n)?;
            let mut all = true;
            for c in &checks {
                println!(
                    "[{}] {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
                all &= c.passed;
            }
            Ok(all)
        }
        Cmd::Enumerate { n, connected } => {
            let forms = enumerate_forms(n, connected)?;
            let stdout = std::io::stdout();
            let mut out = std::io::BufWriter::new(stdout.lock());
            for f in forms {
                writeln!(out, "{}", f.graph6())?;
            }
            Ok(true)
        }
        Cmd::Search {
            n,
            class,
            digits,
            match_digits,
            out,
            summary,
            graph6,
            no_group_by_edges,
            cache,
        } => {
            let cfg = SearchConfig {
                n,
                graph_class: class,
                numeric_digits: digits,
                match_digits,
                group_by_edges: !no_group_by_edges,
                source: match graph6 {
                    Some(p) => Source::Graph6File(p),
                    None => Source::Enumerate,
                },
                cache,
                verbose: false,
            };
            let report = find_coentropic_pairs(&cfg)?;
            if let Some(path) = &out {
                report
                    .write_pairs_jsonl(path)
                    .with_context(|| format!("writing {}", path.display()))?;
                if !report.near_misses.is_empty() {
                    let near = path.with_extension("near.jsonl");
                    report.write_near_misses_jsonl(&near)?;
                    eprintln!("near-misses written to {}", near.display());
                }
            }
            if let Some(path) = &summary {
                report
                    .write_summary_csv(path)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!(
                    "n={} class={}: scanned {} graphs, {} cospectral classes, \
                     {} coentropic pairs ({} equal-m, {} unequal-m), {} near misses, {:.1}s",
                    report.n,
                    report.graph_class,
                    report.graphs_scanned,
                    report.cospectral_classes_found,
                    report.coentropic_pairs.len(),
                    report.pairs_with_equal_edges,
                    report.pairs_with_unequal_edges,
                    report.near_misses.len(),
                    report.wall_time_secs
                );
                if out.is_none() {
                    for p in &report.coentropic_pairs {
                        println!(
                            "  {} {} m={} match={} S_a={} S_b={}",
                            p.g6_a,
                            p.g6_b,
                            p.m.map_or("mixed".into(), |m| m.to_string()),
                            p.match_kind,
                            p.spectrum_a,
                            p.spectrum_b
                        );
                    }
                }
            }
            Ok(true)
        }
        Cmd::VerifyPaper { max_n } => verify_paper(max_n, cli.json),
        Cmd::Convert { graph } => {
            let g = graph.parse_graph()?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "n": g.n(),
                        "m": g.m(),
                        "graph6": g.graph6_encode()?,
                        "edges": g.edge_list_string(),
                    })
                );
            } else {
                println!("graph6:    {}", g.graph6_encode()?);
                println!("edge list: {}; {}", g.n(), g.edge_list_string());
            }
            Ok(true)
        }
    }
}

fn print_state(g: &Graph, psi: &PureState, signless: bool) {
    let name = if signless { "phi" } else { "psi" };
    println!(
        "{name} in H_V (dim {}) x H_E (dim {}), raw convention, |{name}|^2 = {}",
        psi.dim_v(),
        psi.dim_e(),
        psi.norm_squared()
    );
    let arcs = arc_list(g);
    for v in 0..psi.dim_v() {
        for (a, &(s, t)) in arcs.iter().enumerate() {
            if let Some(k) = psi.amplitude_sqrt2(v, a) {
                if k != 0 {
                    let sign = if k > 0 { "+" } else { "-" };
                    let mag = k.abs();
                    let coeff = if mag == 1 {
                        format!("{sign}1/\u{221a}2")
                    } else {
                        format!("{sign}{mag}/\u{221a}2")
                    };
                    println!("  (v={}, arc=({},{})): {}", v + 1, s + 1, t + 1, coeff);
                }
            }
        }
    }
    let rho_v = partial_trace_e(psi);
    println!("tr_E ({0}x{0}, vertex space):", rho_v.dim());
    for i in 0..rho_v.dim() {
        let row: Vec<String> = (0..rho_v.dim())
            .map(|j| format!("{:>6}", rho_v.get(i, j)))
            .collect();
        println!("  [{}]", row.join(" "));
    }
    let rho_e = partial_trace_v(psi);
    println!("tr_V ({0}x{0}, arc space):", rho_e.dim());
    for i in 0..rho_e.dim() {
        let row: Vec<String> = (0..rho_e.dim())
            .map(|j| format!("{:>6}", rho_e.get(i, j)))
            .collect();
        println!("  [{}]", row.join(" "));
    }
}

fn verify_paper(max_n: usize, json: bool) -> Result<bool> {
    if !(8..=10).contains(&max_n) {
        bail!("--max-n must be between 8 and 10");
    }
    let mut all_ok = true;
    let mut lines: Vec<(String, bool, String)> = Vec::new();

    // 1. the 9-vertex reference table
    let rows = verify_table()?;
    for r in &rows {
        lines.push((
            format!("table row {} (m={})", r.row, r.m),
            r.passed,
            r.entropy_text.clone(),
        ));
        all_ok &= r.passed;
    }

    // 2. the 8-vertex example pair
    match locate_example_pair() {
        Ok((a, b)) => {
            let fa = von_neumann_entropy_with_precision(&a, 60)?;
            let fb = von_neumann_entropy_with_precision(&b, 60)?;
            let ok = fa.equals_exact(&fb);
            lines.push((
                "8-vertex example pair".into(),
                ok,
                format!(
                    "{} / {} with S = {}",
                    a.graph6_encode()?,
                    b.graph6_encode()?,
                    fa.canonical_text()
                ),
            ));
            all_ok &= ok;
        }
        Err(e) => {
            lines.push(("8-vertex example pair".into(), false, format!("{e}")));
            all_ok = false;
        }
    }

    // 3. published pair counts, both graph classes
    for n in 8..=max_n {
        let expected = expected_pair_count(n).unwrap();
        let mut found = Vec::new();
        for class in [GraphClass::All, GraphClass::Connected] {
            let mut cfg = SearchConfig::new(n);
            cfg.graph_class = class;
            let report = find_coentropic_pairs(&cfg)?;
            found.push((class, report));
        }
        let matching: Vec<String> = found
            .iter()
            .filter(|(_, r)| r.coentropic_pairs.len() == expected)
            .map(|(c, _)| c.to_string())
            .collect();
        let ok = !matching.is_empty();
        let detail = if ok {
            format!(
                "expected {expected}, matched under class(es): {}",
                matching.join(", ")
            )
        } else {
            let mut d = format!(
                "expected {expected}, found {} (all) / {} (connected); pair diff:",
                found[0].1.coentropic_pairs.len(),
                found[1].1.coentropic_pairs.len()
            );
            for p in &found[1].1.coentropic_pairs {
                d.push_str(&format!(
                    "\n    connected: {} {} m={:?} match={}",
                    p.g6_a, p.g6_b, p.m, p.match_kind
                ));
            }
            d
        };
        lines.push((format!("pair count n={n}"), ok, detail));
        all_ok &= ok;
    }

    if json {
        let arr: Vec<_> = lines
            .iter()
            .map(|(name, ok, detail)| {
                serde_json::json!({ "check": name, "passed": ok, "detail": detail })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "checks": arr,
                "all_passed": all_ok,
            }))?
        );
    } else {
        for (name, ok, detail) in &lines {
            println!("[{}] {name}: {detail}", if *ok { "PASS" } else { "FAIL" });
        }
        println!("overall: {}", if all_ok { "PASS" } else { "FAIL" });
    }
    Ok(all_ok)
}
