//! `cubecx`: batch front end over the document format of [`cubecx::doc`].
//!
//! Exit codes: 0 all checks pass, 1 an invariant or predicate is violated,
//! 2 the input could not be read, parsed or validated.

use clap::{Args, Parser, Subcommand};
use cubecx::action::{essential_at_scale, invariant_cube, irreducible_decomposition, orbit, validate_automorphism, ActionSpec, Automorphism};
use cubecx::boundary::transfer_character;
use cubecx::cocycle::{median_cocycle, product_split, support_decomposition};
use cubecx::complex::CubeComplex;
use cubecx::doc::{self, pocset_document, Document};
use cubecx::generate::{self, GenKind};
use cubecx::measure::{balanced_partition, balanced_subcomplex, terminal_elements, VertexMeasure};
use cubecx::pocset::{Halfspace, Pocset};
use cubecx::tournament::{high_outdegree_vertex, transitive_subtournament, Tournament};
use cubecx::verify::{self, Config};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cubecx", version, about = "Finite CAT(0) cube complexes given as pocsets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Document to read; `-` or absent reads standard input.
    file: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a pocset document for a standard family.
    Gen {
        /// cube, path, tripod, grid, bowtie, closure, tree, random-closure
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        /// Closure points, e.g. `000,110,011` (coordinate 0 first); for
        /// random-closure, the number of random points.
        #[arg(long)]
        seeds: Option<String>,
        /// Compact form such as `grid:2x3` or `product:path:2*tripod:1`.
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the document and report the size of its complex.
    Validate(Input),
    /// Median of a vertex triple.
    Median {
        #[command(flatten)]
        input: Input,
        /// Three vertex ids, e.g. `0,3,5`.
        #[arg(long, value_parser = parse_triple)]
        triple: [usize; 3],
    },
    /// The median cocycle c⁽ⁿ⁾ on a vertex triple.
    Cocycle {
        #[command(flatten)]
        input: Input,
        /// Three vertex ids, e.g. `0,3,5`.
        #[arg(long, value_parser = parse_triple)]
        triple: [usize; 3],
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        /// Also list the six sets S(a,c;b) with their signs.
        #[arg(long)]
        pieces: bool,
    },
    /// Irreducible factors and, with --triple, the product split of c.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_triple)]
        triple: Option<[usize; 3]>,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Essential hyperplanes at scale R for the automorphisms section.
    Essential {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
    },
    /// Balanced halfspaces of the measure section.
    Balanced(Input),
    /// High out-degree vertex and a greedy transitive subtournament.
    Tournament {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        d: usize,
        /// Attempt extraction below 5^D vertices.
        #[arg(long)]
        force: bool,
    },
    /// Transfer character of every universe element.
    Transfer(Input),
    /// Run the seeded invariant suite.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        complexes: usize,
        #[arg(long, default_value_t = 100)]
        tuples: usize,
        #[arg(long, default_value_t = 7)]
        max_k: usize,
    },
}

fn parse_triple(s: &str) -> Result<[usize; 3], String> {
    let v: Vec<usize> = s.split(',').map(|t| t.trim().parse().map_err(|_| format!("`{t}` is not a vertex id"))).collect::<Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<usize>| format!("expected three vertex ids, got {}", v.len()))
}

/// What a command produced: a report and whether everything held.
struct Report {
    text: String,
    violation: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, violation: false }
    }
}

/// Input errors, already prefixed with the module that raised them.
struct InputError(String);

fn err<E: std::fmt::Display>(module: &'static str) -> impl Fn(E) -> InputError {
    move |e| InputError(format!("{module}: {e}"))
}

fn read_input(input: &Input) -> Result<Document, InputError> {
    let text = match input.file.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(err("io"))?;
            s
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| InputError(format!("io: {path}: {e}")))?,
    };
    doc::parse(&text).map_err(err("document"))
}

fn complex_of(d: &Document) -> Result<CubeComplex, InputError> {
    let p = d.pocset().map_err(err("document"))?;
    CubeComplex::build(&p).map_err(err("complex"))
}

fn check_vertices(c: &CubeComplex, vs: &[usize]) -> Result<(), InputError> {
    for &v in vs {
        c.check_vertex(v).map_err(err("complex"))?;
    }
    Ok(())
}

fn generators(d: &Document, p: &Pocset) -> Result<Vec<Automorphism>, InputError> {
    d.automorphisms.iter().map(|perm| validate_automorphism(p, perm).map_err(err("action"))).collect()
}

/// `label` followed by the items, space separated, with a newline.
fn line<T: ToString>(label: &str, xs: impl IntoIterator<Item = T>) -> String {
    let mut out = label.to_string();
    for x in xs {
        out.push(' ');
        out.push_str(&x.to_string());
    }
    out.push('\n');
    out
}

fn gen(
    kind: Option<String>,
    k: Option<usize>,
    a: Option<usize>,
    b: Option<usize>,
    seeds: Option<String>,
    spec: Option<String>,
    seed: u64,
) -> Result<Report, InputError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let need = |x: Option<usize>, flag: &str| x.ok_or_else(|| InputError(format!("generate: --{flag} is required")));
    let p = match (kind.as_deref(), spec) {
        (None, Some(spec)) => GenKind::parse(&spec).and_then(|g| g.build()).map_err(err("generate"))?,
        (Some("tree"), None) => generate::random_tree(&mut rng, need(k, "k")?),
        (Some("random-closure"), None) => {
            let points = seeds.as_deref().unwrap_or("4").parse().map_err(err("generate"))?;
            generate::random_median_closure(&mut rng, need(k, "k")?, points)
        }
        (Some(name), None) => {
            let spec = match name {
                "grid" => format!("grid:{}x{}", need(a, "a")?, need(b, "b")?),
                "bowtie" => "bowtie".to_string(),
                "closure" => format!("closure:{}:{}", need(k, "k")?, seeds.as_deref().unwrap_or_default()),
                _ => format!("{name}:{}", need(k, "k")?),
            };
            GenKind::parse(&spec).and_then(|g| g.build()).map_err(err("generate"))?
        }
        (Some(_), Some(_)) => return Err(InputError("generate: give either --kind or --spec".into())),
        (None, None) => return Err(InputError("generate: --kind or --spec is required".into())),
    };
    Ok(Report::ok(pocset_document(&p)))
}

fn validate(d: &Document) -> Result<Report, InputError> {
    let mut out = String::new();
    let p = match d.pocset() {
        Ok(p) => p,
        Err(doc::DocError::MissingSection(_)) => {
            writeln!(out, "no pocset or graph section").unwrap();
            return Ok(Report::ok(out + &validate_extras(d)? + "valid\n"));
        }
        Err(e) => return Ok(Report { text: format!("invalid: {e}\n"), violation: true }),
    };
    let c = match CubeComplex::build(&p) {
        Ok(c) => c,
        Err(e) => return Ok(Report { text: format!("invalid: complex: {e}\n"), violation: true }),
    };
    writeln!(out, "pairs {}", p.n_pairs()).unwrap();
    writeln!(out, "dimension {}", p.dimension()).unwrap();
    writeln!(out, "vertices {}", c.vertex_count()).unwrap();
    writeln!(out, "edges {}", c.edges().len()).unwrap();
    writeln!(out, "interval {}", if c.is_interval().is_some() { "yes" } else { "no" }).unwrap();
    for (i, perm) in d.automorphisms.iter().enumerate() {
        if let Err(e) = validate_automorphism(&p, perm) {
            return Ok(Report { text: format!("{out}invalid: automorphism {i}: {e}\n"), violation: true });
        }
    }
    writeln!(out, "automorphisms {}", d.automorphisms.len()).unwrap();
    if let Some(entries) = &d.measure {
        VertexMeasure::from_entries(c.vertex_count(), entries).map_err(err("measure"))?;
        writeln!(out, "measure support {}", entries.len()).unwrap();
    }
    out.push_str(&validate_extras(d)?);
    writeln!(out, "valid").unwrap();
    Ok(Report::ok(out))
}

fn validate_extras(d: &Document) -> Result<String, InputError> {
    let mut out = String::new();
    if let Some((n, edges)) = &d.tournament {
        Tournament::new(*n, edges).map_err(err("tournament"))?;
        writeln!(out, "tournament {n}").unwrap();
    }
    if let Some(u) = &d.universe {
        writeln!(out, "universe rays {} elements {}", u.n_rays, u.elements.len()).unwrap();
    }
    Ok(out)
}

fn median(d: &Document, t: &[usize]) -> Result<Report, InputError> {
    let c = complex_of(d)?;
    check_vertices(&c, t)?;
    let m = c.median(t[0], t[1], t[2]);
    let mut out = format!("median {m} {}\n", c.vertex(m).label());
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        writeln!(out, "d({},{}) {}", t[a], t[b], c.distance(t[a], t[b])).unwrap();
    }
    Ok(Report::ok(out))
}

fn cocycle(d: &Document, t: &[usize], n: usize, p: f64, pieces: bool) -> Result<Report, InputError> {
    let c = complex_of(d)?;
    check_vertices(&c, t)?;
    if n == 0 {
        return Err(InputError("cocycle: --n must be at least 1".into()));
    }
    let v = median_cocycle(&c, t[0], t[1], t[2], n);
    let norms = v.norms(p).map_err(err("cocycle"))?;
    let mut out = format!("support {}\nl1 {}\nnorm p={p} {:.6}\n", norms.support, norms.l1, norms.lp);
    out.push_str("[cocycle]\n");
    out.push_str(&v.to_text());
    if pieces {
        for piece in support_decomposition(&c, t[0], t[1], t[2], n) {
            let (a, b, cc) = piece.label;
            writeln!(out, "S({a},{cc};{b}) sign {:+} size {}", piece.sign, piece.seqs.len()).unwrap();
        }
    }
    Ok(Report::ok(out))
}

fn decompose(d: &Document, triple: Option<&[usize]>, n: usize) -> Result<Report, InputError> {
    let c = complex_of(d)?;
    let comps = irreducible_decomposition(c.pocset());
    let mut out = format!("factors {}\n", comps.len());
    for comp in &comps {
        out.push_str(&line("factor", comp));
    }
    let mut violation = false;
    if let Some(t) = triple {
        check_vertices(&c, t)?;
        let split = product_split(&c, (t[0], t[1], t[2]), n).map_err(err("cocycle"))?;
        let agrees = split.agrees();
        violation = !agrees;
        for (i, piece) in split.pieces.iter().enumerate() {
            writeln!(out, "factor {i} support {}", piece.support_size()).unwrap();
        }
        writeln!(out, "direct sum {}", if agrees { "agrees" } else { "DIFFERS" }).unwrap();
    }
    Ok(Report { text: out, violation })
}

fn essential(d: &Document, radius: usize, basepoint: usize) -> Result<Report, InputError> {
    let c = complex_of(d)?;
    check_vertices(&c, &[basepoint])?;
    let gens = generators(d, c.pocset())?;
    let spec = ActionSpec::new(gens.clone(), Some(basepoint));
    let part = essential_at_scale(&c, &spec, radius);
    let mut out = line("orbit", &part.orbit);
    out.push_str(&line("essential", &part.essential));
    out.push_str(&line("non-essential", &part.non_essential));
    if part.orbit.len() == orbit(&c, &gens, basepoint, spec.depth_cap).len() {
        match invariant_cube(&c, &gens) {
            Some((base, dirs)) => {
                let corner = c.find(&base).expect("cube corners are vertices");
                out.push_str(&line(&format!("invariant cube at {corner} directions"), dirs));
            }
            None => writeln!(out, "no invariant cube").unwrap(),
        }
    }
    Ok(Report::ok(out))
}

fn balanced(d: &Document) -> Result<Report, InputError> {
    let c = complex_of(d)?;
    let entries = d.measure.as_ref().ok_or_else(|| InputError("document: no `measure` section".into()))?;
    let mu = VertexMeasure::from_entries(c.vertex_count(), entries).map_err(err("measure"))?;
    let part = balanced_partition(&c, &mu);
    let mut out = line("H_mu", part.h_mu.iter());
    out.push_str(&line("H_plus", part.h_plus.iter()));
    out.push_str(&line("H_minus", part.h_minus.iter()));
    let hmu: Vec<Halfspace> = part.h_mu.iter().collect();
    let (min, max) = terminal_elements(c.pocset(), &hmu);
    out.push_str(&line("terminal min", min));
    out.push_str(&line("terminal max", max));
    match balanced_subcomplex(&c, &mu) {
        Ok(sub) => {
            let (a, b) = sub.witness;
            let (a, b) = (sub.embedding.embedding[a], sub.embedding.embedding[b]);
            writeln!(out, "subcomplex vertices {} interval {a} {}", sub.embedding.sub.vertex_count(), b).unwrap();
            Ok(Report::ok(out))
        }
        Err(e) => Ok(Report { text: format!("{out}violation: measure: {e}\n"), violation: true }),
    }
}

fn tournament(d: &Document, target: usize, force: bool) -> Result<Report, InputError> {
    let (n, edges) = d.tournament.as_ref().ok_or_else(|| InputError("document: no `tournament` section".into()))?;
    let t = Tournament::new(*n, edges).map_err(err("tournament"))?;
    let v = high_outdegree_vertex(&t).map_err(err("tournament"))?;
    let mut out = format!("high out-degree vertex {v} out-degree {}\n", t.out_degree(v));
    match transitive_subtournament(&t, target, force) {
        Ok(e) => {
            out.push_str(&line("transitive", &e.vertices));
            out.push_str(&line("set sizes", &e.set_sizes));
            Ok(Report::ok(out))
        }
        Err(e @ cubecx::tournament::TournamentError::GreedyFailed { .. }) => {
            Ok(Report { text: format!("{out}failed: tournament: {e}\n"), violation: true })
        }
        Err(e) => Err(err("tournament")(e)),
    }
}

fn transfer(d: &Document) -> Result<Report, InputError> {
    let u = d.universe.as_ref().ok_or_else(|| InputError("document: no `universe` section".into()))?;
    let mut out = String::new();
    for (i, g) in u.elements.iter().enumerate() {
        let tr = transfer_character(g, &u.set).map_err(|e| InputError(format!("universe: element {i}: {e}")))?;
        writeln!(out, "tr {i} {tr}").unwrap();
    }
    Ok(Report::ok(out))
}

fn run_verify(cfg: &Config) -> Report {
    let outcomes = verify::run_suite(cfg);
    let mut out = format!("verify seed {} complexes {} tuples {} max_k {}\n", cfg.seed, cfg.complexes, cfg.tuples, cfg.max_k);
    let mut failed = 0;
    for o in &outcomes {
        writeln!(out, "{} {} ({} cases)", if o.passed() { "PASS" } else { "FAIL" }, o.name, o.cases).unwrap();
        if let Some(w) = &o.failure {
            failed += 1;
            writeln!(out, "witness: {}\n{}", w.description, w.document.trim_end()).unwrap();
        }
    }
    writeln!(out, "{} checks, {failed} failed", outcomes.len()).unwrap();
    Report { text: out, violation: failed > 0 }
}

fn run(cli: Cli) -> Result<Report, InputError> {
    match cli.command {
        Command::Gen { kind, k, a, b, seeds, spec, seed } => gen(kind, k, a, b, seeds, spec, seed),
        Command::Validate(input) => validate(&read_input(&input)?),
        Command::Median { input, triple } => median(&read_input(&input)?, &triple),
        Command::Cocycle { input, triple, n, p, pieces } => cocycle(&read_input(&input)?, &triple, n, p, pieces),
        Command::Decompose { input, triple, n } => decompose(&read_input(&input)?, triple.as_ref().map(|t| &t[..]), n),
        Command::Essential { input, radius, basepoint } => essential(&read_input(&input)?, radius, basepoint),
        Command::Balanced(input) => balanced(&read_input(&input)?),
        Command::Tournament { input, d, force } => tournament(&read_input(&input)?, d, force),
        Command::Transfer(input) => transfer(&read_input(&input)?),
        Command::Verify { seed, complexes, tuples, max_k } => {
            if !(3..=12).contains(&max_k) {
                return Err(InputError("verify: --max-k must lie in 3..=12".into()));
            }
            Ok(run_verify(&Config { seed, complexes, tuples, max_k }))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(u8::from(report.violation))
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
