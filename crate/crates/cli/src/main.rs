//! `hodge`: build finite simplicial complexes, compute Hodge spectra and
//! exact invariants, compare open/closed subsets against their parent, run
//! the randomized verification suite, and re-render report files.
//!
//! Exit codes: 0 success, 1 a proven claim was violated, 2 input error.

mod plot;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use hodge_core::complex::{Complex, Subset};
use hodge_core::io;
use hodge_core::operators::hodge;
use hodge_core::spectral::{
    analytic_torsion, betti_exact, hodge_det, hodge_forest_det, hodge_spectra, merge_spectra,
    pad_left, Spectrum,
};
use hodge_core::verify::{aggregate, run_suite, Generator, Split, Status, TrialRecord, TrialSpec};
use plot::{Series, COLOR_CLOSED, COLOR_OPEN};

#[derive(Parser)]
#[command(
    name = "hodge",
    version,
    about = "Simplicial complexes, Hodge spectra, and spectral monotonicity checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SplitArg {
    RandomOpenSet,
    DeleteLocallyMaximal,
    RandomSubcomplex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    Derivative,
    Dirac,
    Hodge,
    Parity,
    Connection,
}

#[derive(Args)]
struct InputArgs {
    /// Complex JSON file ({"facets": [[...]]}); the closure is taken on load
    #[arg(long)]
    input: Option<PathBuf>,
    /// Subset JSON file ({"parent": ..., "elements": [[...]], "expect": ...});
    /// the parent comes from --input or from the file's "parent" path
    #[arg(long)]
    subset: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a complex from facets (or from a graph with --whitney) and emit
    /// it in canonical order with f-vector and Euler characteristic
    Build {
        /// Facets JSON file, or a graph JSON file with --whitney
        #[arg(long)]
        input: PathBuf,
        /// Treat the input as a graph and build its Whitney (clique) complex
        #[arg(long)]
        whitney: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hodge spectrum of a complex or of a subset
    Spectra {
        #[command(flatten)]
        io: InputArgs,
        /// Per-degree block spectra instead of the merged spectrum
        #[arg(long)]
        per_form: bool,
        /// Dump an operator matrix (integer CSV with block header) instead
        /// of eigenvalues
        #[arg(long, value_enum)]
        matrix: Option<MatrixKind>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact Betti vector of a complex or of a subset
    Betti {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// f-vector, Betti vector, Euler characteristic, trace, pseudo
    /// determinant, forest determinant, and analytic torsion
    Invariants {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Left-padded spectral differences of a parent against an open or
    /// closed subset and its complement (the monotonicity picture)
    Compare {
        /// Parent complex JSON file
        #[arg(long)]
        input: PathBuf,
        /// Subset JSON file; must be open or closed in the parent
        #[arg(long)]
        subset: PathBuf,
        /// Also compare every k-form block separately
        #[arg(long)]
        per_form: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the randomized verification suite (JSONL records + summary)
    Verify {
        /// Explicit complex to verify instead of random Whitney complexes
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// RNG seed; derived from entropy (and printed) when absent
        #[arg(long)]
        seed: Option<u64>,
        /// Vertex count for random graphs (default: range 8..=14)
        #[arg(long)]
        nv: Option<u32>,
        /// Edge probability for random graphs (default: range 0.3..=0.6)
        #[arg(long)]
        edge_prob: Option<f64>,
        /// Stars per random open set (default: range 1..=6)
        #[arg(long)]
        stars: Option<usize>,
        #[arg(long, value_enum, default_value = "random-open-set")]
        split: SplitArg,
        /// Write the JSONL report here (otherwise stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-render the summary of a JSONL report file
    Report {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            io::write_text(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// Loads the subset target when --subset is given, otherwise the whole
/// complex. The subset's parent comes from --input, or from the "parent"
/// path inside the subset file (resolved relative to that file).
fn load_target(io_args: &InputArgs) -> Result<(Complex, Option<Subset>)> {
    match (&io_args.input, &io_args.subset) {
        (Some(input), None) => Ok((io::load_complex(input)?, None)),
        (input, Some(subset_path)) => {
            let doc = io::load_subset_file(subset_path)?;
            let parent_path = match input {
                Some(p) => p.clone(),
                None => {
                    let Some(parent) = &doc.parent else {
                        bail!(
                            "{}: subset needs a parent complex (--input or a \"parent\" path)",
                            subset_path.display()
                        );
                    };
                    subset_path
                        .parent()
                        .unwrap_or_else(|| Path::new("."))
                        .join(parent)
                }
            };
            let parent = io::load_complex(&parent_path)?;
            let subset = io::resolve_subset(&parent, &doc)?;
            Ok((parent, Some(subset)))
        }
        (None, None) => bail!("--input or --subset is required"),
    }
}

fn target_elements<'a>(
    parent: &'a Complex,
    subset: &'a Option<Subset>,
) -> &'a [hodge_core::complex::Simplex] {
    match subset {
        Some(s) => s.elements(),
        None => parent.elements(),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Build {
            input,
            whitney,
            format,
            out,
        } => {
            let complex = if whitney {
                Complex::whitney(&io::load_graph(&input)?)
            } else {
                io::load_complex(&input)?
            };
            let doc = io::complex_document(&complex);
            let text = match format {
                Format::Json => io::to_json_string(&doc),
                Format::Text => format!(
                    "size: {}\ndimension: {}\nf_vector: {:?}\neuler_characteristic: {}\nfacets: {}\n",
                    complex.len(),
                    complex.dim().map_or("empty".into(), |d| d.to_string()),
                    complex.f_vector(),
                    complex.euler_characteristic(),
                    serde_json::to_string(&doc.facets)?,
                ),
                _ => bail!("build supports json or text output"),
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Spectra {
            io: io_args,
            per_form,
            matrix,
            format,
            out,
        } => {
            let (parent, subset) = load_target(&io_args)?;
            let els = target_elements(&parent, &subset);
            if let Some(kind) = matrix {
                let m = match kind {
                    MatrixKind::Derivative => hodge_core::operators::exterior_derivative(els),
                    MatrixKind::Dirac => hodge_core::operators::dirac(els),
                    MatrixKind::Hodge => hodge(els).full().clone(),
                    MatrixKind::Parity => hodge_core::operators::parity(els),
                    MatrixKind::Connection => hodge_core::operators::connection_laplacian(els),
                };
                emit(&out, &io::matrix_csv(&m))?;
                return Ok(ExitCode::SUCCESS);
            }
            let h = hodge(els);
            let blocks = hodge_spectra(&h)?;
            let full = merge_spectra(&blocks);
            let text = match (format, per_form) {
                (Format::Csv, false) => io::spectrum_csv(&full),
                (Format::Csv, true) => {
                    let mut s = String::new();
                    for (k, spec) in blocks.iter().enumerate() {
                        s.push_str(&format!("# block k={k} size={}\n", spec.len()));
                        s.push_str(&io::spectrum_csv(spec));
                    }
                    s
                }
                (Format::Json, _) => io::to_json_string(&serde_json::json!({
                    "full": full,
                    "blocks": if per_form { Some(&blocks) } else { None },
                })),
                (Format::Text, _) => format!("{:?}\n", full.values()),
                _ => bail!("spectra supports csv, json or text output"),
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Betti {
            io: io_args,
            format,
            out,
        } => {
            let (parent, subset) = load_target(&io_args)?;
            let els = target_elements(&parent, &subset);
            let betti = betti_exact(els);
            let text = match format {
                Format::Text => format!("betti: {:?}\n", betti.counts()),
                Format::Json => io::to_json_string(&serde_json::json!({
                    "betti": betti,
                    "euler_characteristic": betti.euler_characteristic(),
                })),
                Format::Csv => {
                    let rows: Vec<String> = betti.counts().iter().map(|b| b.to_string()).collect();
                    format!(
                        "k,b_k\n{}\n",
                        rows.iter()
                            .enumerate()
                            .map(|(k, b)| format!("{k},{b}"))
                            .collect::<Vec<_>>()
                            .join("\n")
                    )
                }
                _ => bail!("betti supports text, json or csv output"),
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Invariants {
            io: io_args,
            format,
            out,
        } => {
            let (parent, subset) = load_target(&io_args)?;
            let els = target_elements(&parent, &subset);
            let betti = betti_exact(els);
            let f = hodge_core::complex::f_vector(els);
            let chi = hodge_core::complex::euler_characteristic(els);
            let det = hodge_det(els)?;
            let forest = hodge_forest_det(els)?;
            let tr = hodge(els).full().trace();
            // analytic torsion is defined for whole complexes
            let torsion = match subset {
                None => Some(analytic_torsion(els)?),
                Some(_) => None,
            };
            let doc = serde_json::json!({
                "size": els.len(),
                "f_vector": f,
                "betti": betti,
                "euler_characteristic": chi,
                "trace": tr,
                "pseudo_det": det,
                "forest_det": forest,
                "torsion": torsion,
                "exact": det.is_exact() && forest.is_exact(),
            });
            let text = match format {
                Format::Json => io::to_json_string(&doc),
                Format::Text => {
                    let mut s = String::new();
                    s.push_str(&format!("size: {}\n", els.len()));
                    s.push_str(&format!("f_vector: {f:?}\n"));
                    s.push_str(&format!("betti: {:?}\n", betti.counts()));
                    s.push_str(&format!("euler_characteristic: {chi}\n"));
                    s.push_str(&format!("trace: {tr} (exact)\n"));
                    s.push_str(&format!(
                        "pseudo_det: {}\n",
                        det.exact
                            .as_ref()
                            .map(|x| format!("{x} (exact)"))
                            .unwrap_or_else(|| format!("exp({:.6}) (approximate)", det.log_abs))
                    ));
                    s.push_str(&format!(
                        "forest_det: {}\n",
                        forest
                            .exact
                            .as_ref()
                            .map(|x| format!("{x} (exact)"))
                            .unwrap_or_else(|| format!("exp({:.6}) (approximate)", forest.log_abs))
                    ));
                    if let Some(t) = &torsion {
                        s.push_str(&format!(
                            "torsion: {} (cross-check {}, {})\n",
                            t.torsion
                                .exact
                                .as_ref()
                                .map(|x| x.to_string())
                                .unwrap_or_else(|| format!("exp({:.6})", t.torsion.log)),
                            t.super_pseudo_det
                                .exact
                                .as_ref()
                                .map(|x| x.to_string())
                                .unwrap_or_else(|| format!("exp({:.6})", t.super_pseudo_det.log)),
                            if t.agree { "agree" } else { "MISMATCH" },
                        ));
                    }
                    s
                }
                _ => bail!("invariants supports text or json output"),
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Compare {
            input,
            subset,
            per_form,
            format,
            out,
        } => {
            let parent = io::load_complex(&input)?;
            let doc = io::load_subset_file(&subset)?;
            let s = io::resolve_subset(&parent, &doc)?;
            if !s.is_open() && !s.is_closed() {
                bail!("subset is neither open nor closed in the parent complex");
            }
            cmd_compare(&parent, &s, per_form, format, &out)
        }

        Cmd::Verify {
            input,
            trials,
            seed,
            nv,
            edge_prob,
            stars,
            split,
            out,
        } => {
            let seed = seed.unwrap_or_else(|| {
                let s: u64 = rand::random();
                eprintln!("seed: {s}");
                s
            });
            let generator = match input {
                Some(path) => {
                    let c = io::load_complex(&path)?;
                    Generator::Explicit {
                        facets: c.facets().iter().map(|x| x.vertices().to_vec()).collect(),
                    }
                }
                None => Generator::WhitneyGnp {
                    nv: nv.map_or((8, 14), |v| (v, v)),
                    edge_prob: edge_prob.map_or((0.3, 0.6), |p| (p, p)),
                },
            };
            let split = match split {
                SplitArg::RandomOpenSet => Split::RandomOpenSet {
                    stars: stars.map_or((1, 6), |k| (k, k)),
                },
                SplitArg::DeleteLocallyMaximal => Split::DeleteLocallyMaximal,
                SplitArg::RandomSubcomplex => Split::RandomSubcomplex { deletions: (0, 10) },
            };
            let spec = TrialSpec {
                generator,
                split,
                seed,
                trials,
            };
            let outcome = run_suite(&spec).map_err(|e| anyhow!("{e}"))?;
            let jsonl = io::records_jsonl(&outcome.records);
            let summary = io::summary_table(&outcome.reports);
            match &out {
                Some(path) => {
                    io::write_text(path, &jsonl)
                        .with_context(|| format!("writing {}", path.display()))?;
                    print!("{summary}");
                }
                None => {
                    print!("{jsonl}");
                    eprint!("{summary}");
                }
            }
            write_witnesses(&outcome.records, out.as_deref())?;
            Ok(if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Cmd::Report { input, format } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let records = io::parse_records_jsonl(&input, &text)?;
            let seed = records.first().map_or(0, |r| r.report.seed);
            let reports = aggregate(&records, seed);
            let failed = reports.iter().any(|r| r.is_fail());
            match format {
                Format::Text => print!("{}", io::summary_table(&reports)),
                Format::Json => print!("{}", io::to_json_string(&reports)),
                _ => bail!("report supports text or json output"),
            }
            Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

/// Persists a witness file per violated record (proven failures and
/// observation counterexamples) next to the report, or in the working
/// directory when no --out was given.
fn write_witnesses(records: &[TrialRecord], out: Option<&Path>) -> Result<()> {
    let dir = out
        .and_then(|p| p.parent())
        .filter(|p| !p.as_os_str().is_empty())
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    for rec in records {
        let violated = rec.report.status == Status::Fail
            || (rec.report.status == Status::Observation && rec.report.witness.is_some());
        if violated {
            if let Some(w) = &rec.report.witness {
                let path = dir.join(format!(
                    "witness-{}-trial{}.json",
                    rec.report.check, rec.trial
                ));
                io::write_text(&path, &io::to_json_string(w))?;
            }
        }
    }
    Ok(())
}

fn series_label(s: &Subset) -> (&'static str, &'static str) {
    if s.is_closed() {
        ("G-K", COLOR_CLOSED)
    } else {
        ("G-U", COLOR_OPEN)
    }
}

fn diff_series(spec_g: &Spectrum, spec_s: &Spectrum, n: usize) -> Result<Vec<f64>> {
    let padded = pad_left(spec_s, n)?;
    Ok(spec_g
        .values()
        .iter()
        .zip(padded.values())
        .map(|(g, s)| g - s)
        .collect())
}

fn cmd_compare(
    parent: &Complex,
    s: &Subset,
    per_form: bool,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode> {
    let complement = parent.complement(s)?;
    let (label_s, color_s) = series_label(s);
    let (mut label_c, mut color_c) = series_label(&complement);
    if label_c == label_s {
        // clopen pair: keep the two series distinguishable
        (label_c, color_c) = if label_s == "G-K" {
            ("G-U", COLOR_OPEN)
        } else {
            ("G-K", COLOR_CLOSED)
        };
    }

    let h_g = hodge(parent.elements());
    let blocks_g = hodge_spectra(&h_g)?;
    let full_g = merge_spectra(&blocks_g);
    let tol = 1e-7 * full_g.lambda_max().max(1.0);

    let mut acc = CompareAccum::default();

    let full_s = merge_spectra(&hodge_spectra(&hodge(s.elements()))?);
    let full_c = merge_spectra(&hodge_spectra(&hodge(complement.elements()))?);
    let d_s = diff_series(&full_g, &full_s, parent.len())?;
    let d_c = diff_series(&full_g, &full_c, parent.len())?;
    acc.push(
        "full".to_string(),
        vec![(label_s, color_s, d_s), (label_c, color_c, d_c)],
    );

    if per_form {
        let blocks_s = hodge_spectra(&hodge(s.elements()))?;
        let blocks_c = hodge_spectra(&hodge(complement.elements()))?;
        for (k, bg) in blocks_g.iter().enumerate() {
            let bs = blocks_s.get(k).cloned().unwrap_or_else(Spectrum::empty);
            let bc = blocks_c.get(k).cloned().unwrap_or_else(Spectrum::empty);
            let d_s = diff_series(bg, &bs, bg.len())?;
            let d_c = diff_series(bg, &bc, bg.len())?;
            acc.push(
                format!("k={k}"),
                vec![(label_s, color_s, d_s), (label_c, color_c, d_c)],
            );
        }
    }

    let violated = acc.worst < -tol;
    let text = match format {
        Format::Text => {
            let mut t = acc.texts.join("\n");
            t.push_str(&format!(
                "\nworst margin: {:.6e} (tolerance {tol:.1e}) -> {}\n",
                acc.worst,
                if violated { "VIOLATED" } else { "ok" }
            ));
            t
        }
        Format::Json => io::to_json_string(&serde_json::json!({
            "panels": acc.json_panels,
            "worst_margin": acc.worst,
            "tolerance": tol,
            "violated": violated,
        })),
        Format::Csv => acc.csv,
        Format::Svg => plot::render(&acc.panels),
    };
    emit(out, &text)?;
    Ok(if violated {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

/// Collects the difference panels for every output format at once.
struct CompareAccum {
    panels: Vec<(String, Vec<Series>)>,
    worst: f64,
    texts: Vec<String>,
    csv: String,
    json_panels: Vec<serde_json::Value>,
}

impl Default for CompareAccum {
    fn default() -> Self {
        CompareAccum {
            panels: Vec::new(),
            worst: f64::INFINITY,
            texts: Vec::new(),
            csv: String::from("panel,series,j,diff\n"),
            json_panels: Vec::new(),
        }
    }
}

impl CompareAccum {
    fn push(&mut self, title: String, pairs: Vec<(&str, &'static str, Vec<f64>)>) {
        let mut series = Vec::new();
        let mut jseries = Vec::new();
        for (label, color, diffs) in pairs {
            self.worst = diffs.iter().fold(self.worst, |a, &b| a.min(b));
            for (j, d) in diffs.iter().enumerate() {
                self.csv
                    .push_str(&format!("{title},{label},{j},{d:.17e}\n"));
            }
            self.texts.push(format!(
                "{title} {label}: min diff {:.6e}, max diff {:.6e}",
                diffs.iter().cloned().fold(f64::INFINITY, f64::min),
                diffs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            ));
            jseries.push(serde_json::json!({ "label": label, "diffs": diffs }));
            series.push(Series {
                label: label.to_string(),
                color,
                values: diffs,
            });
        }
        self.json_panels
            .push(serde_json::json!({ "panel": title, "series": jseries }));
        self.panels.push((title, series));
    }
}
