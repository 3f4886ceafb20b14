use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use racg_boundary::classify::HypothesisStatus;
use racg_boundary::io::{generate, parse_graph, to_edgelist, CertificateDocument, Family, GraphFormat, Payload, WitnessRecord};
use racg_boundary::{
    build_witness, classify, is_planar, reduce, verify_certificate, verify_report, ClassifyOptions, Error, PatternId,
    SearchOptions, SimplicialGraph,
};

const INPUT_ERROR: u8 = 1;
const BUDGET_EXCEEDED: u8 = 2;
const VERIFY_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "racg", version, about = "Boundary planarity tools for right-angled Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Graph file (edge list, .dot or .json)
    file: String,
    /// Override the format guessed from the file name
    #[arg(long)]
    format: Option<GraphFormat>,
}

#[derive(clap::Args)]
struct Limits {
    /// Largest working graph the searches accept
    #[arg(long, default_value_t = racg_boundary::search::DEFAULT_BUDGET)]
    budget: usize,
    /// Wall-clock limit in seconds
    #[arg(long)]
    timeout: Option<f64>,
}

impl Limits {
    fn options(&self) -> SearchOptions {
        let mut opts = SearchOptions::with_budget(self.budget);
        opts.deadline = self.timeout.map(|s| Instant::now() + Duration::from_secs_f64(s));
        opts
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify the boundary and print the full report
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: Limits,
        /// Print the report as a JSON document
        #[arg(long)]
        json: bool,
    },
    /// Run the doubling reduction and print its certificate
    Reduce {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: Limits,
    },
    /// Check a certificate, report or witness document
    Verify { document: String },
    /// Planarity test with a Kuratowski witness
    Planarity {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Print a member of a graph family
    Gen {
        family: Family,
        params: Vec<usize>,
        #[arg(long, default_value = "edgelist")]
        format: GraphFormat,
    },
    /// Build a boundary witness from a pattern subdivision
    Witness {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_pattern)]
        pattern: PatternId,
        #[command(flatten)]
        limits: Limits,
    },
}

fn parse_pattern(s: &str) -> Result<PatternId, String> {
    PatternId::parse(s).ok_or_else(|| format!("unknown pattern `{s}`"))
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GraphTooLarge { .. } | Error::DeadlineExceeded => BUDGET_EXCEEDED,
            _ => INPUT_ERROR,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: INPUT_ERROR, message: format!("{path}: {e}") })
}

fn load(input: &Input) -> Result<SimplicialGraph, Failure> {
    let text = read(&input.file)?;
    let format = input.format.unwrap_or_else(|| GraphFormat::from_path(&input.file));
    Ok(parse_graph(&text, format)?)
}

fn emit(doc: &CertificateDocument) -> Result<(), Failure> {
    print!("{}", doc.emit()?);
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { input, limits, json } => {
            let g = load(&input)?;
            let opts = ClassifyOptions { search: limits.options(), ..Default::default() };
            let report = classify(&g, &opts)?;
            if json {
                emit(&CertificateDocument::new(g, Payload::Classification(Box::new(report.clone()))))?;
            } else {
                print_report(&report);
            }
            if let Some(err) = &report.reduction_error {
                // a certificate is kept only when it failed verification
                let code = if report.reduction.is_some() { VERIFY_FAILED } else { BUDGET_EXCEEDED };
                return Err(Failure { code, message: format!("reduction incomplete: {err}") });
            }
        }
        Command::Reduce { input, limits } => {
            let g = load(&input)?;
            let cert = reduce(&g, &limits.options())?;
            emit(&CertificateDocument::new(g, Payload::Reduction(cert)))?;
        }
        Command::Verify { document } => {
            let doc = CertificateDocument::parse(&read(&document)?)?;
            let check = match &doc.payload {
                Payload::Reduction(c) => verify_certificate(c),
                Payload::Classification(r) => verify_report(r),
                Payload::Witness(w) => w.verify(&doc.input_graph),
            };
            if !check.valid {
                return Err(Failure { code: VERIFY_FAILED, message: check.diagnostic.unwrap_or_else(|| "invalid".into()) });
            }
            println!("valid {}", doc.payload.kind());
        }
        Command::Planarity { input, json } => {
            let g = load(&input)?;
            let result = is_planar(&g);
            if json {
                let text = serde_json::to_string_pretty(&result).map_err(|e| Failure { code: INPUT_ERROR, message: e.to_string() })?;
                println!("{text}");
            } else if let Some(w) = &result.witness {
                println!("non-planar: {} subdivision on {} vertices", w.pattern, w.vertex_set().len());
            } else {
                println!("planar");
            }
        }
        Command::Gen { family, params, format } => {
            let g = generate(family, &params)?;
            match format {
                GraphFormat::Json => {
                    let text = serde_json::to_string_pretty(&g).map_err(|e| Failure { code: INPUT_ERROR, message: e.to_string() })?;
                    println!("{text}");
                }
                GraphFormat::Edgelist => print!("{}", to_edgelist(&g)),
                GraphFormat::Dot => {
                    println!("graph {{");
                    for (u, w) in g.edges() {
                        println!("  \"{u}\" -- \"{w}\";");
                    }
                    println!("}}");
                }
            }
        }
        Command::Witness { input, pattern, limits } => {
            let g = load(&input)?;
            let (embedding, witness) = build_witness(&g, pattern, &limits.options())?;
            emit(&CertificateDocument::new(g, Payload::Witness(WitnessRecord { pattern, embedding, witness })))?;
        }
    }
    Ok(())
}

fn print_report(r: &racg_boundary::ClassificationReport) {
    let g = &r.input_graph;
    println!("graph: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    println!("planar: {}", r.graph_planar);
    match r.inseparability.witnesses().first() {
        Some((name, set)) => println!("inseparable: false ({name} {})", set.join(" ")),
        None => println!("inseparable: {}", r.inseparability.inseparable),
    }
    println!("hyperbolic: {}", r.hyperbolic);
    println!("isolated flats: {} [{}]", r.isolated_flats, r.isolated_flats_strategy);
    if let Some(c) = &r.reduction {
        println!("reduction: {:?} after {} doublings ({})", c.terminal, c.doubling_count(), c.doubling_sequence.join(", "));
    }
    if let Some(e) = &r.reduction_error {
        println!("reduction: not completed ({e})");
    }
    for v in &r.verdicts {
        let marks: Vec<String> = v
            .hypotheses
            .iter()
            .map(|h| match h.status {
                HypothesisStatus::Verified => h.statement.clone(),
                HypothesisStatus::Assumed => format!("{} [assumed]", h.statement),
            })
            .collect();
        println!("verdict {:?}: {} (if {}; {})", v.kind, v.conclusion, marks.join(", "), v.citation);
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
