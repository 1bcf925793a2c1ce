//! `mal`: Betti numbers, cup products and sphere-product classification for
//! moment-angle complexes.
//!
//! Exit codes: 0 success, 1 classification found no case, 2 unreadable or
//! invalid input, 3 subset cap exceeded, 4 not a certified sphere, 5 any
//! other failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use mal_core::classify::{
    certify_sphere, classify, decomposition_to_betti, mcgavran_decomposition, weak_min_non_golod, Case,
    ClassificationReport,
};
use mal_core::complex::MAX_VERTICES;
use mal_core::corpus::{builtin, BUILTIN_NAMES};
use mal_core::graph::{is_chordal, missing_edge_structure, Chordality, Graph};
use mal_core::hochster::{decompose_with, has_trivial_products, BigradedTable, Cache, DecomposeOptions, DEFAULT_CAP};
use mal_core::io::{read_complex, write_json, write_text};
use mal_core::report::{BettiSection, ReportDocument};
use mal_core::{generate_stacked_sphere, Error, SimplicialComplex};

const EXIT_NO_CASE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_NOT_SPHERE: u8 = 4;
const EXIT_OTHER: u8 = 5;

#[derive(Parser)]
#[command(name = "mal", version, about = "Cohomology of moment-angle complexes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include the per-bidegree table.
    #[arg(long, global = true)]
    full: bool,
    /// Worker threads for the decomposition (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Proceed past the vertex-count cap.
    #[arg(long, global = true)]
    force: bool,
    /// Leave timing out of the output so runs can be diffed.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Directory for cached subset homology.
    #[arg(long, global = true, env = "MAL_CACHE_DIR")]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers of Z_K, with torsion flagged.
    Betti { path: PathBuf },
    /// Decide whether H*(Z_K) is the ring of a connected sum of sphere products.
    Classify { path: PathBuf },
    /// Chordality of the 1-skeleton with a certificate.
    Chordal { path: PathBuf },
    /// Missing faces and the arrangement of the missing edges.
    Missing { path: PathBuf },
    /// Check that K is a triangulated sphere.
    Certify { path: PathBuf },
    /// Write a complex in the canonical text (or, with --json, JSON) format.
    Generate {
        #[command(subcommand)]
        kind: Generate,
        /// Output file; stdout when omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Sphere-product decomposition predicted for a stacked sphere on m vertices.
    Predict {
        m: usize,
        /// dim K + 1.
        n: usize,
    },
    /// Product part of minimal non-Golodness.
    GolodWeak { path: PathBuf },
    /// Inspect or maintain the cache directory.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum Generate {
    /// Stacked sphere: `cuts` stellar subdivisions of the boundary of a (d+1)-simplex.
    Stacked {
        #[arg(long, short)]
        d: usize,
        #[arg(long)]
        cuts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Boundary of a p-gon.
    Polygon { p: usize },
    /// Boundary of the n-dimensional cross-polytope.
    CrossPolytope { n: usize },
    /// Boundary of the simplex on n vertices.
    SimplexBoundary { n: usize },
    /// Join of two complexes; the second is relabeled after the first.
    Join { first: PathBuf, second: PathBuf },
    /// A named complex from the built-in corpus.
    Builtin { name: String },
}

#[derive(Subcommand)]
enum CacheAction {
    Stats,
    Verify,
    Clear,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::LabelOutOfRange { .. }
            | Error::MissingVertex(_)
            | Error::DuplicateVertex { .. }
            | Error::TooManyVertices { .. } => EXIT_INPUT,
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::NotCertified(_) => EXIT_NOT_SPHERE,
            Error::Unknown(_) => EXIT_INPUT,
            _ => EXIT_OTHER,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build_global() {
            eprintln!("mal: cannot size the thread pool: {e}");
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("mal: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Betti { path } => betti(g, path),
        Command::Classify { path } => classify_cmd(g, path),
        Command::Chordal { path } => chordal(g, path),
        Command::Missing { path } => missing(g, path),
        Command::Certify { path } => certify(g, path),
        Command::Generate { kind, output } => generate(g, kind, output.as_deref()),
        Command::Predict { m, n } => predict(g, *m, *n),
        Command::GolodWeak { path } => golod_weak(g, path),
        Command::Cache { action } => cache_cmd(g, action),
    }
}

fn open_cache(g: &Global) -> Result<Option<Arc<Cache>>, Failure> {
    match &g.cache {
        Some(dir) => Ok(Some(Arc::new(Cache::open(dir)?))),
        None => Ok(None),
    }
}

/// Rough peak size of the cochain bases: each face `σ` appears in
/// `2^(m - |σ|)` full subcomplexes at about 16 bytes a time.
fn memory_estimate(k: &SimplicialComplex) -> f64 {
    let m = k.vertex_count() as i32;
    k.f_vector().iter().enumerate().map(|(size, &f)| f as f64 * 2f64.powi(m - size as i32) * 16.0).sum()
}

fn load_table(g: &Global, path: &Path) -> Result<(SimplicialComplex, BigradedTable, Option<Arc<Cache>>), Failure> {
    let k = read_complex(path)?;
    if g.force && k.vertex_count() > DEFAULT_CAP {
        eprintln!(
            "mal: m = {} exceeds the cap {DEFAULT_CAP}; 2^{} subsets, about {:.1} MiB of cochain bases",
            k.vertex_count(),
            k.vertex_count(),
            memory_estimate(&k) / (1u64 << 20) as f64
        );
    }
    let cache = open_cache(g)?;
    let opts = DecomposeOptions { force: g.force, cache: cache.clone(), ..DecomposeOptions::default() };
    let table = decompose_with(&k, &opts)?;
    Ok((k, table, cache))
}

fn finish(g: &Global, mut doc: ReportDocument, text: String, started: Instant, cache: Option<&Cache>) {
    doc.cache = cache.map(Cache::stats);
    if !g.no_timing {
        doc.timing_ms = Some(started.elapsed().as_millis() as u64);
    }
    if g.json {
        print!("{}", doc.to_json());
    } else {
        print!("{text}");
        if let Some(s) = doc.cache {
            println!("cache: {} hits, {} misses, {} writes, {} evicted", s.hits, s.misses, s.writes, s.evicted);
        }
        if let Some(ms) = doc.timing_ms {
            println!("time: {ms} ms");
        }
    }
}

fn header(k: &SimplicialComplex) -> String {
    format!("complex: m = {}, dim = {}, f = {:?}\n", k.vertex_count(), k.dim(), k.f_vector())
}

fn betti_text(section: &BettiSection) -> String {
    let mut s = String::from("H^*(Z_K):\n");
    for t in &section.totals {
        let _ = write!(s, "  deg {:>3}: {}", t.degree, t.rank);
        if !t.torsion.is_empty() {
            let tors: Vec<String> = t.torsion.iter().map(|d| format!("Z/{d}")).collect();
            let _ = write!(s, "  torsion {}", tors.join(" + "));
        }
        s.push('\n');
    }
    if section.torsion {
        s.push_str("  torsion present\n");
    }
    if let Some(rows) = &section.bigraded {
        s.push_str("bigraded (l, J, total degree, rank, torsion):\n");
        for r in rows {
            let _ = writeln!(
                s,
                "  {:>3} {:<24} {:>3} {:>3} {:?}",
                r.l,
                r.subset.to_string(),
                r.total_degree,
                r.rank,
                r.torsion
            );
        }
    }
    s
}

fn betti(g: &Global, path: &Path) -> Outcome {
    let started = Instant::now();
    let (k, table, cache) = load_table(g, path)?;
    let mut doc = ReportDocument::new("betti", &k);
    let section = BettiSection::of(&table, g.full);
    let text = header(&k) + &betti_text(&section);
    doc.betti = Some(section);
    finish(g, doc, text, started, cache.as_deref());
    Ok(0)
}

fn classification_text(r: &ClassificationReport) -> String {
    let mut s = String::new();
    let c = &r.certificate;
    let _ = writeln!(s, "sphere: {:?}", c.verdict);
    let _ = writeln!(s, "case: {:?}", r.case);
    if let Some(d) = &r.decomposition {
        let _ = writeln!(s, "decomposition: {d}");
    }
    if let Some(p) = &r.presentation {
        let _ = writeln!(s, "presentation: {:?}, {} generators, {} blocks", p.kind, p.generators.len(), p.blocks.len());
    }
    if let Some(v) = &r.verification {
        let _ = writeln!(s, "verification: {}", if v.passed { "passed" } else { "failed" });
        for ch in &v.checks {
            let _ = writeln!(s, "  [{}] {}: {}", if ch.passed { "ok" } else { "FAIL" }, ch.name, ch.detail);
        }
    }
    match &r.chordality {
        Chordality::Chordal(o) => {
            let _ = writeln!(s, "1-skeleton: chordal, elimination order {:?}", o.0);
        }
        Chordality::NotChordal(c) => {
            let _ = writeln!(s, "1-skeleton: chordless cycle {c:?}");
        }
    }
    let edges: Vec<String> = r.missing_edges.edges.iter().map(|e| e.to_string()).collect();
    let _ = writeln!(s, "missing edges: {}", edges.join(" "));
    if let Some(t) = &r.two_sphere {
        let _ = writeln!(
            s,
            "2-sphere equivalence: chordal {}, reduction {}, pairs {}",
            t.chordal,
            t.reduction.is_some(),
            t.pairs_verified
        );
    }
    if let Some(q) = &r.ssndim {
        let _ = writeln!(s, "missing faces generate low degrees (q = {}): {}", q.q, q.passed);
    }
    if let Some(w) = &r.weak_golod {
        let _ =
            writeln!(s, "products trivial: {}, weak minimal non-Golod: {}", w.trivial_products, w.weak_min_non_golod);
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn classify_cmd(g: &Global, path: &Path) -> Outcome {
    let started = Instant::now();
    let (k, table, cache) = load_table(g, path)?;
    let report = classify(&table)?;
    let code = if !report.certificate.is_sphere() {
        EXIT_NOT_SPHERE
    } else if report.case == Case::None {
        EXIT_NO_CASE
    } else {
        0
    };
    let mut doc = ReportDocument::new("classify", &k);
    let section = BettiSection::of(&table, g.full);
    let text = header(&k) + &betti_text(&section) + &classification_text(&report);
    doc.betti = Some(section);
    doc.classification = Some(report);
    finish(g, doc, text, started, cache.as_deref());
    Ok(code)
}

fn chordal(g: &Global, path: &Path) -> Outcome {
    let started = Instant::now();
    let k = read_complex(path)?;
    let result = is_chordal(&Graph::one_skeleton(&k));
    let text = header(&k)
        + &match &result {
            Chordality::Chordal(o) => format!("chordal\nelimination order: {:?}\n", o.0),
            Chordality::NotChordal(c) => format!("not chordal\nchordless cycle: {c:?}\n"),
        };
    let mut doc = ReportDocument::new("chordal", &k);
    doc.section("chordality", &result);
    finish(g, doc, text, started, None);
    Ok(0)
}

fn missing(g: &Global, path: &Path) -> Outcome {
    let started = Instant::now();
    let k = read_complex(path)?;
    let mut text = header(&k);
    let mut faces = Vec::new();
    for n in 1..k.vertex_count() {
        for f in k.missing_faces(n) {
            let _ = writeln!(text, "missing face (dim {}): {}", f.dimension(), f.vertices);
            faces.push(f.vertices);
        }
    }
    let report = missing_edge_structure(&k);
    let _ = writeln!(
        text,
        "missing edges: {}; disjoint {}, pairwise 4-cycles {}, join {}",
        report.count(),
        report.pairwise_disjoint,
        report.pairs_form_four_cycles,
        report.join_condition
    );
    let mut doc = ReportDocument::new("missing", &k);
    doc.section("missing_faces", &faces);
    doc.section("missing_edges", &report);
    finish(g, doc, text, started, None);
    Ok(0)
}

fn certify(g: &Global, path: &Path) -> Outcome {
    let started = Instant::now();
    let k = read_complex(path)?;
    let cert = certify_sphere(&k)?;
    let text = header(&k)
        + &format!(
            "pure {}, pseudomanifold {}, strongly connected {}, links {}, homology sphere {}\nverdict: {:?}\n",
            cert.pure, cert.pseudomanifold, cert.strongly_connected, cert.links, cert.homology_sphere, cert.verdict
        );
    let code = if cert.is_sphere() { 0 } else { EXIT_NOT_SPHERE };
    let mut doc = ReportDocument::new("certify", &k);
    doc.section("certificate", &cert);
    finish(g, doc, text, started, None);
    Ok(code)
}

fn generate(g: &Global, kind: &Generate, output: Option<&Path>) -> Outcome {
    let (k, name) = match kind {
        Generate::Stacked { d, cuts, seed } => {
            if *d == 0 {
                return Err(fail(EXIT_INPUT, "stacked spheres need d >= 1"));
            }
            (generate_stacked_sphere(*d, *cuts, *seed)?, format!("stacked-d{d}-c{cuts}-s{seed}"))
        }
        Generate::Polygon { p } => {
            if *p < 3 {
                return Err(fail(EXIT_INPUT, "a polygon needs p >= 3"));
            }
            (SimplicialComplex::polygon(*p), format!("polygon-{p}"))
        }
        Generate::CrossPolytope { n } => {
            if *n == 0 {
                return Err(fail(EXIT_INPUT, "a cross-polytope needs n >= 1"));
            }
            (SimplicialComplex::cross_polytope(*n), format!("cross-polytope-{n}"))
        }
        Generate::SimplexBoundary { n } => {
            if *n < 2 {
                return Err(fail(EXIT_INPUT, "a simplex boundary needs n >= 2 vertices"));
            }
            (SimplicialComplex::simplex_boundary(*n), format!("simplex-boundary-{n}"))
        }
        Generate::Join { first, second } => {
            let a = read_complex(first)?;
            let b = read_complex(second)?;
            if a.vertex_count() + b.vertex_count() > MAX_VERTICES {
                return Err(fail(EXIT_INPUT, format!("the join has more than {MAX_VERTICES} vertices")));
            }
            (a.join(&b), "join".to_string())
        }
        Generate::Builtin { name } => match builtin(name) {
            Ok(k) => (k, name.clone()),
            Err(_) => {
                return Err(fail(EXIT_INPUT, format!("unknown builtin `{name}`; known: {}", BUILTIN_NAMES.join(", "))))
            }
        },
    };
    let body = if g.json { write_json(&k, Some(&name)) } else { write_text(&k) };
    match output {
        Some(p) => std::fs::write(p, body).map_err(Error::from)?,
        None => print!("{body}"),
    }
    Ok(0)
}

fn predict(g: &Global, m: usize, n: usize) -> Outcome {
    let dec = mcgavran_decomposition(m, n)?;
    let betti = decomposition_to_betti(&dec, m + n)?;
    if g.json {
        let v = serde_json::json!({ "m": m, "n": n, "decomposition": dec, "display": dec.to_string(), "betti": betti });
        println!("{}", serde_json::to_string_pretty(&v).expect("prediction serializes"));
    } else {
        println!("{dec}");
        for (d, r) in &betti {
            println!("  deg {d:>3}: {r}");
        }
    }
    Ok(0)
}

fn golod_weak(g: &Global, path: &Path) -> Outcome {
    let started = Instant::now();
    let (k, table, cache) = load_table(g, path)?;
    let trivial = has_trivial_products(&table)?;
    let w = weak_min_non_golod(&table)?;
    let mut text = header(&k);
    let _ = writeln!(text, "products trivial: {trivial}");
    for (v, t) in &w.deletions {
        let _ = writeln!(text, "  delete {v}: products trivial {t}");
    }
    let _ = writeln!(text, "weak minimal non-Golod: {}", w.weak_min_non_golod);
    let mut doc = ReportDocument::new("golod-weak", &k);
    doc.section("weak_golod", &w);
    finish(g, doc, text, started, cache.as_deref());
    Ok(0)
}

fn cache_cmd(g: &Global, action: &CacheAction) -> Outcome {
    let cache =
        open_cache(g)?.ok_or_else(|| fail(EXIT_INPUT, "no cache directory: pass --cache or set MAL_CACHE_DIR"))?;
    let value = match action {
        CacheAction::Stats => {
            let (records, bytes) = cache.usage()?;
            serde_json::json!({ "dir": cache.dir(), "records": records, "bytes": bytes })
        }
        CacheAction::Verify => serde_json::to_value(cache.verify()?).map_err(Error::from)?,
        CacheAction::Clear => serde_json::json!({ "removed": cache.clear()? }),
    };
    if g.json {
        println!("{}", serde_json::to_string_pretty(&value).expect("value serializes"));
    } else if let Some(obj) = value.as_object() {
        for (key, v) in obj {
            println!("{key}: {v}");
        }
    }
    Ok(0)
}
