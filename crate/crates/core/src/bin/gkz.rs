//! Command-line front end: load a configuration or model file, run one of
//! the analyses, and emit JSON or a human-readable table.

use clap::{Parser, Subcommand, ValueEnum};
use gkz::error::GkzError;
use gkz::io::{self, InputBundle};
use gkz::matrix::{Int, Rat};
use gkz::{fan, mirror, ring, series, verify};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "gkz", version, about = "Exact GKZ hypergeometric toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(clap::Args)]
struct Common {
    /// Input configuration or model file (JSON).
    input: PathBuf,
    /// Truncation order for series-level commands.
    #[arg(long)]
    order: Option<u32>,
    /// Write output here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// 1-norm bound for the box-operator family (verify).
    #[arg(long)]
    lambda_bound: Option<u32>,
    /// Override the model sign vector, e.g. "-1,1".
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    signs: Option<Vec<i64>>,
    /// Override the model normalization kappa.
    #[arg(long)]
    kappa: Option<i64>,
    /// Weight vector for `triangulate`, comma-separated rationals.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weight: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the input and report lattice, volume, chamber and ring data.
    Analyze(Common),
    /// Enumerate all regular triangulations (chambers of the secondary fan).
    Fan(Common),
    /// The triangulation induced by a weight vector.
    Triangulate(Common),
    /// The graded quotient ring of the distinguished chamber.
    Ring(Common),
    /// Expand the (plain or deformed) series.
    Series(Common),
    /// Verify the series against the box and Euler operators.
    Verify(Common),
    /// Run the mirror pipeline and print instanton numbers.
    Mirror(Common),
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            e.exit_code()
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, GkzError> {
    match cli.command {
        Command::Analyze(c) => standard(&c, analyze),
        Command::Fan(c) => standard(&c, fan_cmd),
        Command::Triangulate(c) => standard(&c, triangulate_cmd),
        Command::Ring(c) => standard(&c, ring_cmd),
        Command::Series(c) => standard(&c, series_cmd),
        Command::Verify(c) => {
            let bundle = load(&c)?;
            let (text, clean) = verify_cmd(&c, &bundle)?;
            emit(&c, &text)?;
            Ok(if clean { 0 } else { 1 })
        }
        Command::Mirror(c) => standard(&c, mirror_cmd),
    }
}

fn standard(
    c: &Common,
    f: fn(&Common, &InputBundle) -> Result<String, GkzError>,
) -> Result<i32, GkzError> {
    let bundle = load(c)?;
    let text = f(c, &bundle)?;
    emit(c, &text)?;
    Ok(0)
}

fn load(c: &Common) -> Result<InputBundle, GkzError> {
    let text = std::fs::read_to_string(&c.input)
        .map_err(|e| GkzError::Schema(format!("cannot read {}: {}", c.input.display(), e)))?;
    let mut bundle = io::load_input(&text)?;
    if let Some(signs) = &c.signs {
        if signs.len() != bundle.lattice.rank() || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(GkzError::Schema("--signs must be d entries of +/-1".into()));
        }
        bundle.signs = Some(signs.clone());
    }
    if let Some(k) = c.kappa {
        bundle.kappa = Some(Int::from(k));
    }
    Ok(bundle)
}

fn order_of(c: &Common, bundle: &InputBundle) -> u32 {
    c.order.or(bundle.order).unwrap_or(10)
}

fn emit(c: &Common, text: &str) -> Result<(), GkzError> {
    match &c.output {
        None => {
            println!("{}", text);
            Ok(())
        }
        Some(path) => std::fs::write(path, format!("{}\n", text))
            .map_err(|e| GkzError::Schema(format!("cannot write {}: {}", path.display(), e))),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, GkzError> {
    serde_json::to_string_pretty(value)
        .map_err(|e| GkzError::Internal(format!("serialization: {}", e)))
}

#[derive(Serialize)]
struct AnalyzeJson {
    name: String,
    num_points: usize,
    ambient_rank: usize,
    lattice_rank: usize,
    h: Vec<String>,
    generates: bool,
    volume: String,
    relation_basis: Vec<Vec<String>>,
    chamber: io::TriangulationJson,
    ring_ranks: Vec<usize>,
    ring_rank: usize,
    poincare_ok: bool,
}

fn analyze(c: &Common, bundle: &InputBundle) -> Result<String, GkzError> {
    let cfg = &bundle.config;
    let lat = &bundle.lattice;
    let vol = fan::volume(cfg, lat)?;
    let chamber = bundle.chamber()?;
    let rg = ring::build_ring(cfg, lat, &chamber)?;
    let poincare_ok = ring::poincare_check(&rg, cfg, &chamber);
    let out = AnalyzeJson {
        name: bundle.name.clone(),
        num_points: cfg.num_points(),
        ambient_rank: cfg.ambient_rank(),
        lattice_rank: lat.rank(),
        h: cfg.h.iter().map(|x| x.to_string()).collect(),
        generates: cfg.check_generates(),
        volume: vol.to_string(),
        relation_basis: lat
            .basis
            .rows_vec()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect(),
        chamber: io::triangulation_json(cfg, &chamber),
        ring_ranks: rg.grading_ranks.clone(),
        ring_rank: rg.rank(),
        poincare_ok,
    };
    match c.format {
        Format::Json => to_json(&out),
        Format::Table => {
            let mut t = String::new();
            t.push_str(&format!("name            {}\n", out.name));
            t.push_str(&format!("points          {}\n", out.num_points));
            t.push_str(&format!("ambient rank    {}\n", out.ambient_rank));
            t.push_str(&format!("lattice rank    {}\n", out.lattice_rank));
            t.push_str(&format!("volume          {}\n", out.volume));
            t.push_str(&format!("ring ranks      {:?}\n", out.ring_ranks));
            t.push_str(&format!("poincare        {}\n", if out.poincare_ok { "ok" } else { "FAIL" }));
            t.push_str(&format!(
                "chamber         {}\n",
                format_simplices(&out.chamber.simplices)
            ));
            Ok(t.trim_end().to_string())
        }
    }
}

fn format_simplices(s: &[Vec<usize>]) -> String {
    let parts: Vec<String> = s
        .iter()
        .map(|x| {
            let inner: Vec<String> = x.iter().map(|i| i.to_string()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect();
    parts.join(" ")
}

#[derive(Serialize)]
struct FanJson {
    name: String,
    chambers: Vec<io::TriangulationJson>,
}

fn fan_cmd(c: &Common, bundle: &InputBundle) -> Result<String, GkzError> {
    let tris = fan::enumerate_regular_triangulations(&bundle.config, &bundle.lattice)?;
    let out = FanJson {
        name: bundle.name.clone(),
        chambers: tris
            .iter()
            .map(|t| io::triangulation_json(&bundle.config, t))
            .collect(),
    };
    match c.format {
        Format::Json => to_json(&out),
        Format::Table => {
            let mut t = format!("{}: {} chambers\n", out.name, out.chambers.len());
            for ch in &out.chambers {
                t.push_str(&format!(
                    "{} {}\n",
                    format_simplices(&ch.simplices),
                    if ch.unimodular { "(unimodular)" } else { "" }
                ));
            }
            Ok(t.trim_end().to_string())
        }
    }
}

fn triangulate_cmd(c: &Common, bundle: &InputBundle) -> Result<String, GkzError> {
    let tri = match &c.weight {
        Some(ws) => {
            let alpha: Result<Vec<Rat>, GkzError> =
                ws.iter().map(|s| io::rat_from_string(s)).collect();
            let w = fan::WeightVector::new(&bundle.lattice, alpha?);
            fan::triangulation_from_weight(&bundle.config, &bundle.lattice, &w)?
        }
        None => bundle.chamber()?,
    };
    let out = io::triangulation_json(&bundle.config, &tri);
    match c.format {
        Format::Json => to_json(&out),
        Format::Table => Ok(format_simplices(&out.simplices)),
    }
}

fn ring_cmd(c: &Common, bundle: &InputBundle) -> Result<String, GkzError> {
    let chamber = bundle.chamber()?;
    let rg = ring::build_ring(&bundle.config, &bundle.lattice, &chamber)?;
    let out = io::ring_json(&rg);
    match c.format {
        Format::Json => to_json(&out),
        Format::Table => {
            let mut t = format!("rank {} with graded ranks {:?}\n", out.rank, out.ranks);
            t.push_str("basis monomials: ");
            let parts: Vec<String> = out.basis.iter().map(|b| format!("{:?}", b)).collect();
            t.push_str(&parts.join(" "));
            Ok(t)
        }
    }
}

fn build_series(
    bundle: &InputBundle,
    order: u32,
) -> Result<(ring::GradedQuotientRing, series::TruncatedGammaSeries), GkzError> {
    let gamma = bundle
        .gamma
        .clone()
        .ok_or_else(|| GkzError::Schema("series commands need gamma".into()))?;
    let chamber = bundle.chamber()?;
    if gamma.iter().all(|g| g.is_integer())
        && fan::is_unimodular(&bundle.config, &chamber)
    {
        let rg = ring::build_ring(&bundle.config, &bundle.lattice, &chamber)?;
        let data = series::GammaData {
            gamma,
            epsilon: Some(rg.generator_images.clone()),
            chamber,
            adapted_basis: bundle.lattice.basis.clone(),
        };
        let s = series::expand_deformed(&bundle.config, &rg, &data, order)?;
        Ok((rg, s))
    } else {
        let data = series::GammaData {
            gamma,
            epsilon: None,
            chamber,
            adapted_basis: bundle.lattice.basis.clone(),
        };
        let s = series::expand_plain(&data, order)?;
        Ok((ring::trivial_ring(bundle.config.num_points()), s))
    }
}

fn series_cmd(c: &Common, bundle: &InputBundle) -> Result<String, GkzError> {
    let order = order_of(c, bundle);
    let (_rg, s) = build_series(bundle, order)?;
    let out = io::series_json(&s);
    match c.format {
        Format::Json => to_json(&out),
        Format::Table => {
            let mut t = format!("order {}\n", out.order);
            for term in &out.terms {
                t.push_str(&format!("{:?} -> [{}]\n", term.n, term.coeff.join(", ")));
            }
            Ok(t.trim_end().to_string())
        }
    }
}

fn verify_cmd(c: &Common, bundle: &InputBundle) -> Result<(String, bool), GkzError> {
    let order = order_of(c, bundle);
    let (rg, s) = build_series(bundle, order)?;
    let sol = verify::FormalSolution::from_series(&rg, &s);
    let cvec = s.data.c_vector(&bundle.config);
    let euler = verify::check_euler(&rg, &bundle.config, &sol, &cvec);
    let bound = c.lambda_bound.unwrap_or_else(|| {
        let max_norm = (0..bundle.lattice.rank())
            .map(|i| {
                bundle
                    .lattice
                    .basis
                    .row(i)
                    .iter()
                    .map(|x| i64::try_from(x).unwrap_or(i64::MAX / 4).unsigned_abs())
                    .sum::<u64>()
            })
            .max()
            .unwrap_or(2);
        (2 * max_norm) as u32
    });
    let mut box_reports = Vec::new();
    for lambda in verify::box_generator_set(&bundle.lattice, bound) {
        match verify::check_box(&rg, &bundle.lattice, &sol, &lambda) {
            Ok(r) => box_reports.push(io::VerifyLambdaJson {
                lambda: r.lambda,
                checked: r.checked,
                unchecked_boundary: r.unchecked_boundary,
                violations: r.violations,
            }),
            Err(GkzError::InsufficientOrder) => box_reports.push(io::VerifyLambdaJson {
                lambda,
                checked: 0,
                unchecked_boundary: sol.retained.len(),
                violations: Vec::new(),
            }),
            Err(e) => return Err(e),
        }
    }
    let report = io::VerifyReportJson {
        euler_checked: euler.checked,
        euler_violations: euler.violations,
        box_reports,
    };
    let clean = report.clean();
    let text = match c.format {
        Format::Json => to_json(&report)?,
        Format::Table => {
            let mut t = format!(
                "euler: {} checked, {} violations\n",
                report.euler_checked,
                report.euler_violations.len()
            );
            for b in &report.box_reports {
                t.push_str(&format!(
                    "box {:?}: {} checked, {} boundary, {} violations\n",
                    b.lambda,
                    b.checked,
                    b.unchecked_boundary,
                    b.violations.len()
                ));
            }
            t.trim_end().to_string()
        }
    };
    Ok((text, clean))
}

fn mirror_cmd(c: &Common, bundle: &InputBundle) -> Result<String, GkzError> {
    let order = order_of(c, bundle);
    let model = mirror::MirrorModel::from_bundle(bundle)?;
    let (run, table) = mirror::instanton_numbers(&model, order)?;
    let pairing = mirror::pairing_report(&run)?;
    let out = io::MirrorJson {
        model: model.name.clone(),
        order,
        instanton_numbers: table
            .entries
            .iter()
            .map(|(idx, v)| io::InstantonEntryJson {
                index: idx.clone(),
                value: io::rat_to_string(v),
                integral: v.is_integer(),
            })
            .collect(),
        pairing: io::PairingJson {
            invariant_form_dimension: pairing.invariant_dimension,
            tau_gramm: (0..pairing.gramm.rows)
                .map(|i| {
                    (0..pairing.gramm.cols)
                        .map(|j| io::rat_to_string(&pairing.gramm[(i, j)]))
                        .collect()
                })
                .collect(),
            pattern_ok: pairing.pattern_ok,
            tau_in_invariant_span: pairing.tau_in_invariant_span,
        },
    };
    match c.format {
        Format::Json => to_json(&out),
        Format::Table => {
            let mut rows: Vec<(String, String)> = Vec::new();
            for e in &out.instanton_numbers {
                let label: Vec<String> = e.index.iter().map(|x| x.to_string()).collect();
                rows.push((format!("N_{}", label.join(",")), e.value.clone()));
            }
            let width = rows.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
            let mut t = format!("model: {}   order: {}\n", out.model, out.order);
            for (label, value) in rows {
                t.push_str(&format!("{:<10} {:>width$}\n", label, value, width = width));
            }
            t.push_str(&format!(
                "pairing: dimension {}, pattern {}\n",
                out.pairing.invariant_form_dimension,
                if out.pairing.pattern_ok { "ok" } else { "FAIL" }
            ));
            Ok(t.trim_end().to_string())
        }
    }
}

