//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::classify::{giambelli_degree, secant_report, SecantReport};
use crate::coords::FactorProfile;
use crate::delpezzo::{delpezzo_report, DelPezzoReport};
use crate::error::{Error, Result};
use crate::field::{FieldConfig, DEFAULT_PRIME};
use crate::flatten::{enumerate_splits, split_census, Flattening, Split};
use crate::numeric::Embedding;
use crate::poly::SparsePoly;
use crate::secant::{independent_count, terracini_dim, verify_rank_bound, verify_vanishing};

pub const SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FLAGGED: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "secant", version, about = "Flattenings, minors and secant dimensions of Segre-Veronese varieties")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Profile such as `P(1)xP(1)xP(5)` or `P(2,2)xP(2,2)`.
    #[arg(short = 'p', long, global = true)]
    pub profile: Option<String>,
    /// Secant index `s` or an inclusive range `a..b`.
    #[arg(short = 's', long = "secant", global = true)]
    pub secant: Option<String>,
    /// Row-side degrees per factor, e.g. `1,1,0`.
    #[arg(long, global = true)]
    pub split: Option<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 3)]
    pub trials: usize,
    /// Maximum number of minors written.
    #[arg(long, global = true, default_value_t = 1000)]
    pub cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(short = 'o', long = "out", global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expected and oracle dimensions of secant varieties.
    Analyze,
    /// A flattening matrix, or the census of all splits.
    Flatten,
    /// Minors of size s+1 of a flattening.
    Equations,
    /// Check equations or a flattening rank bound on secant samples.
    Verify {
        /// Equations file written by `equations`.
        #[arg(long)]
        equations: Option<PathBuf>,
    },
    /// Degree of the s-th secant of P^a x P^b.
    Degree { a: usize, b: usize, s: usize },
    /// The Del Pezzo surface table.
    Delpezzo,
}

/// Resolved options shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub profile: Option<FactorProfile>,
    pub secant: Option<RangeInclusive<usize>>,
    pub split: Option<Split>,
    pub field: FieldConfig,
    pub cap: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub fn parse_secant_range(text: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::OutOfRange(format!("bad secant index or range '{text}'"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let s = num(text)?;
            (s, s)
        }
    };
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> Result<Self> {
        Ok(Self {
            profile: args.profile.as_deref().map(str::parse).transpose()?,
            secant: args.secant.as_deref().map(parse_secant_range).transpose()?,
            split: args.split.as_deref().map(str::parse).transpose()?,
            field: FieldConfig::new(args.prime, args.seed, args.trials)?,
            cap: args.cap,
            format: args.format,
            out: args.out.clone(),
        })
    }

    fn need_profile(&self) -> Result<&FactorProfile> {
        self.profile
            .as_ref()
            .ok_or_else(|| Error::InvalidProfile("missing --profile".into()))
    }

    fn need_split(&self) -> Result<&Split> {
        self.split
            .as_ref()
            .ok_or_else(|| Error::InvalidSplit("missing --split".into()))
    }

    fn need_single_s(&self) -> Result<usize> {
        match &self.secant {
            Some(r) if r.start() == r.end() => Ok(*r.start()),
            Some(_) => Err(Error::OutOfRange("this command takes a single secant index".into())),
            None => Err(Error::OutOfRange("missing --secant".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub schema: u32,
    pub profile: FactorProfile,
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
    pub rows: Vec<SecantReport>,
}

pub fn cmd_analyze(config: &RunConfig) -> Result<AnalyzeReport> {
    let profile = config.need_profile()?;
    let range = config.secant.clone().unwrap_or(1..=1);
    let embedding = Embedding::full(profile.clone());
    let rows = range
        .map(|s| {
            let oracle = terracini_dim(&embedding, s, &config.field)?;
            secant_report(profile, s, Some(oracle.projective_dim))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AnalyzeReport {
        schema: SCHEMA,
        profile: profile.clone(),
        prime: config.field.p,
        seed: config.field.seed,
        trials: config.field.trials,
        rows,
    })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

const ANALYZE_COLUMNS: [&str; 10] = [
    "s", "ambient", "expected", "oracle", "defect", "case", "predicted", "closed_form", "printed", "flags",
];

fn analyze_cells(r: &SecantReport) -> Vec<String> {
    vec![
        r.s.to_string(),
        r.ambient.to_string(),
        r.expected_dim.to_string(),
        opt(&r.oracle_dim),
        opt(&r.defect),
        opt(&r.thm24_case),
        opt(&r.predicted_dim),
        opt(&r.closed_form_defect),
        opt(&r.printed_defect),
        if r.flags.is_empty() { "-".to_string() } else { r.flags.join(";") },
    ]
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::OutOfRange(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::OutOfRange(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn render_analyze(report: &AnalyzeReport, format: Format) -> Result<String> {
    let rows: Vec<Vec<String>> = report.rows.iter().map(analyze_cells).collect();
    Ok(match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(&ANALYZE_COLUMNS, &rows)?,
        Format::Text => {
            let mut out = format!("profile {}  ambient P^{}\n", report.profile, report.profile.ambient_dim());
            out.push_str(&aligned(&ANALYZE_COLUMNS, &rows));
            out
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub rows: usize,
    pub cols: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitEntry {
    pub split: Split,
    pub rows: usize,
    pub cols: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixListing {
    pub split: Split,
    pub rows: usize,
    pub cols: usize,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlattenReport {
    pub schema: u32,
    pub profile: FactorProfile,
    pub census: Option<Vec<CensusEntry>>,
    pub splits: Option<Vec<SplitEntry>>,
    pub matrix: Option<MatrixListing>,
}

fn label(blocks: &[crate::coords::Exponent]) -> String {
    blocks.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

pub fn cmd_flatten(config: &RunConfig) -> Result<FlattenReport> {
    let profile = config.need_profile()?;
    let mut report = FlattenReport {
        schema: SCHEMA,
        profile: profile.clone(),
        census: None,
        splits: None,
        matrix: None,
    };
    match &config.split {
        Some(split) => {
            let flat = Flattening::build(profile, split, false)?;
            let (r, c) = flat.shape();
            let entries = (0..r)
                .map(|i| (0..c).map(|j| profile.coord_name(flat.entry(i, j))).collect())
                .collect::<Result<_>>()?;
            report.matrix = Some(MatrixListing {
                split: split.clone(),
                rows: r,
                cols: c,
                row_labels: flat.row_labels().iter().map(|b| label(b)).collect(),
                col_labels: flat.col_labels().iter().map(|b| label(b)).collect(),
                entries,
            });
        }
        None => {
            let splits = enumerate_splits(profile)?;
            report.census = Some(
                split_census(&splits)
                    .into_iter()
                    .map(|((rows, cols), count)| CensusEntry { rows, cols, count })
                    .collect(),
            );
            report.splits = Some(
                splits
                    .into_iter()
                    .map(|s| SplitEntry { split: s.split, rows: s.rows, cols: s.cols })
                    .collect(),
            );
        }
    }
    Ok(report)
}

pub fn render_flatten(report: &FlattenReport, format: Format) -> Result<String> {
    if format == Format::Json {
        return Ok(to_json(report));
    }
    if let Some(m) = &report.matrix {
        return Ok(match format {
            Format::Csv => {
                let header: Vec<&str> = std::iter::once("row")
                    .chain(m.col_labels.iter().map(String::as_str))
                    .collect();
                let rows: Vec<Vec<String>> = m
                    .row_labels
                    .iter()
                    .zip(&m.entries)
                    .map(|(l, e)| std::iter::once(l.clone()).chain(e.iter().cloned()).collect())
                    .collect();
                to_csv(&header, &rows)?
            }
            _ => {
                let mut out = format!("profile {}  split {}  shape {}x{}\n", report.profile, m.split, m.rows, m.cols);
                let cols: Vec<String> = m.col_labels.iter().map(|l| format!("[{l}]")).collect();
                let header: Vec<&str> = std::iter::once("").chain(cols.iter().map(String::as_str)).collect();
                let rows: Vec<Vec<String>> = m
                    .row_labels
                    .iter()
                    .zip(&m.entries)
                    .map(|(l, e)| std::iter::once(format!("[{l}]")).chain(e.iter().cloned()).collect())
                    .collect();
                out.push_str(&aligned(&header, &rows));
                out
            }
        });
    }
    let census = report.census.as_deref().unwrap_or_default();
    let splits = report.splits.as_deref().unwrap_or_default();
    Ok(match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = splits
                .iter()
                .map(|s| vec![s.split.to_string(), s.rows.to_string(), s.cols.to_string()])
                .collect();
            to_csv(&["split", "rows", "cols"], &rows)?
        }
        _ => {
            let mut out = format!("profile {}  {} flattenings\n", report.profile, splits.len());
            let summary: Vec<String> = census
                .iter()
                .map(|c| format!("{} of {}x{}", c.count, c.rows, c.cols))
                .collect();
            let _ = writeln!(out, "census {}", summary.join(", "));
            let rows: Vec<Vec<String>> = splits
                .iter()
                .map(|s| vec![s.split.to_string(), format!("{}x{}", s.rows, s.cols)])
                .collect();
            out.push_str(&aligned(&["split", "shape"], &rows));
            out
        }
    })
}

/// Header and body of an equations file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationsFile {
    pub profile: FactorProfile,
    pub split: Option<Split>,
    pub s: Option<usize>,
    pub total: Option<u128>,
    pub truncated: bool,
    pub polys: Vec<SparsePoly>,
}

impl EquationsFile {
    pub fn to_text(&self) -> Result<String> {
        let mut out = String::new();
        let _ = writeln!(out, "# profile: {}", self.profile);
        if let Some(split) = &self.split {
            let _ = writeln!(out, "# split: {split}");
        }
        if let Some(s) = self.s {
            let _ = writeln!(out, "# s: {s}");
        }
        let _ = writeln!(out, "# count: {}", self.polys.len());
        if let Some(t) = self.total {
            let _ = writeln!(out, "# total: {t}");
        }
        let _ = writeln!(out, "# truncated: {}", self.truncated);
        for p in &self.polys {
            out.push_str(&p.to_text(&self.profile)?);
            out.push('\n');
        }
        Ok(out)
    }

    /// Parses a file; `profile` overrides or supplies a missing header.
    pub fn parse(text: &str, profile: Option<&FactorProfile>) -> Result<Self> {
        let mut header_profile = None;
        let (mut split, mut s, mut total, mut truncated, mut count) = (None, None, None, false, None);
        let mut bodies = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let Some(meta) = trimmed.strip_prefix('#') else {
                bodies.push((line_no, trimmed));
                continue;
            };
            let Some((key, value)) = meta.split_once(':') else {
                continue;
            };
            let value = value.trim();
            let bad = |reason: &str| Error::PolyFormat { line: line_no, reason: reason.to_string() };
            match key.trim() {
                "profile" => header_profile = Some(value.parse::<FactorProfile>()?),
                "split" => split = Some(value.parse::<Split>()?),
                "s" => s = Some(value.parse().map_err(|_| bad("bad secant index"))?),
                "total" => total = Some(value.parse().map_err(|_| bad("bad total"))?),
                "count" => count = Some(value.parse::<usize>().map_err(|_| bad("bad count"))?),
                "truncated" => truncated = value.parse().map_err(|_| bad("bad truncated flag"))?,
                _ => {}
            }
        }
        let profile = match (profile, header_profile) {
            (Some(p), _) => p.clone(),
            (None, Some(p)) => p,
            (None, None) => {
                return Err(Error::PolyFormat { line: 1, reason: "no profile given or in header".into() })
            }
        };
        let polys = bodies
            .into_iter()
            .map(|(n, l)| SparsePoly::parse(l, &profile, n))
            .collect::<Result<Vec<_>>>()?;
        if let Some(c) = count {
            if c != polys.len() {
                return Err(Error::PolyFormat {
                    line: 1,
                    reason: format!("header count {c} but {} polynomials", polys.len()),
                });
            }
        }
        Ok(Self { profile, split, s, total, truncated, polys })
    }
}

pub fn cmd_equations(config: &RunConfig) -> Result<EquationsFile> {
    let profile = config.need_profile()?;
    let split = config.need_split()?;
    let s = config.need_single_s()?;
    let flat = Flattening::build(profile, split, false)?;
    let stream = flat.emit_minors(s + 1, config.cap)?;
    let total = stream.total();
    let polys: Vec<SparsePoly> = stream.map(|m| m.2).collect();
    Ok(EquationsFile {
        profile: profile.clone(),
        split: Some(split.clone()),
        s: Some(s),
        total: Some(total),
        truncated: (polys.len() as u128) < total,
        polys,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub profile: FactorProfile,
    pub s: usize,
    pub split: Option<Split>,
    pub equations: Option<usize>,
    pub vanishes: Option<bool>,
    pub independent: Option<usize>,
    pub rank_bound_holds: Option<bool>,
    pub max_rank: Option<usize>,
}

pub fn cmd_verify(config: &RunConfig, equations: Option<&str>) -> Result<VerifyReport> {
    let mut report = VerifyReport {
        schema: SCHEMA,
        profile: FactorProfile::segre(&[1])?,
        s: 0,
        split: None,
        equations: None,
        vanishes: None,
        independent: None,
        rank_bound_holds: None,
        max_rank: None,
    };
    match equations {
        Some(text) => {
            let file = EquationsFile::parse(text, config.profile.as_ref())?;
            let s = match (&config.secant, file.s) {
                (Some(_), _) => config.need_single_s()?,
                (None, Some(s)) => s,
                (None, None) => return Err(Error::OutOfRange("missing --secant".into())),
            };
            let emb = Embedding::full(file.profile.clone());
            report.vanishes = Some(verify_vanishing(&file.polys, &emb, s, &config.field)?);
            report.independent = Some(independent_count(&file.polys, emb.coord_count(), &config.field)?);
            report.equations = Some(file.polys.len());
            report.split = file.split;
            report.profile = file.profile;
            report.s = s;
        }
        None => {
            let profile = config.need_profile()?;
            let split = config.need_split()?;
            let s = config.need_single_s()?;
            let bound = verify_rank_bound(profile, split, s, &config.field)?;
            report.rank_bound_holds = Some(bound.holds);
            report.max_rank = Some(bound.max_rank);
            report.split = Some(split.clone());
            report.profile = profile.clone();
            report.s = s;
        }
    }
    Ok(report)
}

pub fn render_verify(report: &VerifyReport, format: Format) -> Result<String> {
    let rows = vec![vec![
        report.profile.to_string(),
        report.s.to_string(),
        opt(&report.split),
        opt(&report.equations),
        opt(&report.vanishes),
        opt(&report.independent),
        opt(&report.rank_bound_holds),
        opt(&report.max_rank),
    ]];
    let header = ["profile", "s", "split", "equations", "vanishes", "independent", "rank_bound", "max_rank"];
    Ok(match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(&header, &rows)?,
        Format::Text => aligned(&header, &rows),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub schema: u32,
    pub a: usize,
    pub b: usize,
    pub s: usize,
    pub degree: u128,
}

pub fn cmd_degree(a: usize, b: usize, s: usize) -> Result<DegreeReport> {
    Ok(DegreeReport { schema: SCHEMA, a, b, s, degree: giambelli_degree(a, b, s)? })
}

pub fn cmd_delpezzo(config: &RunConfig) -> Result<DelPezzoReport> {
    delpezzo_report(&config.field)
}

pub fn render_delpezzo(report: &DelPezzoReport, format: Format) -> Result<String> {
    let header = [
        "surface", "ambient", "matrix", "quadrics", "dim_s2", "dim_s3", "minors_on_s2", "generic", "degree", "flags",
    ];
    let rows: Vec<Vec<String>> = report
        .surfaces
        .iter()
        .map(|r| {
            vec![
                r.surface.to_string(),
                r.ambient.to_string(),
                format!("{}x{}", r.matrix_shape.0, r.matrix_shape.1),
                if r.quadrics_vanish_identically { "vanish" } else { "nonzero" }.to_string(),
                r.secants[0].oracle_dim.to_string(),
                r.secants[1].oracle_dim.to_string(),
                match r.secants[0].minors_vanish {
                    Some(true) => "vanish",
                    Some(false) => "nonzero",
                    None => "-",
                }
                .to_string(),
                r.sigma2_generic_height.to_string(),
                r.sigma2_degree.to_string(),
                if r.flags.is_empty() { "-".to_string() } else { r.flags.join(";") },
            ]
        })
        .collect();
    Ok(match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(&header, &rows)?,
        Format::Text => {
            let mut out = aligned(&header, &rows);
            for note in &report.notes {
                let _ = writeln!(out, "note: {note}");
            }
            out
        }
    })
}

fn write_output(config: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::OutOfRange(format!("write failed: {e}"));
    match &config.out {
        Some(path) => fs::write(path, text).map_err(io),
        None => stdout.write_all(text.as_bytes()).map_err(io),
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<i32> {
    let config = RunConfig::from_args(&cli.common)?;
    let (text, flagged) = match &cli.command {
        Command::Analyze => {
            let report = cmd_analyze(&config)?;
            let flagged = report.rows.iter().any(SecantReport::has_mismatch);
            (render_analyze(&report, config.format)?, flagged)
        }
        Command::Flatten => (render_flatten(&cmd_flatten(&config)?, config.format)?, false),
        Command::Equations => (cmd_equations(&config)?.to_text()?, false),
        Command::Verify { equations } => {
            let text = equations
                .as_ref()
                .map(|p| {
                    fs::read_to_string(p).map_err(|e| Error::PolyFormat {
                        line: 0,
                        reason: format!("{}: {e}", p.display()),
                    })
                })
                .transpose()?;
            (render_verify(&cmd_verify(&config, text.as_deref())?, config.format)?, false)
        }
        Command::Degree { a, b, s } => {
            let report = cmd_degree(*a, *b, *s)?;
            let text = match config.format {
                Format::Json => to_json(&report),
                Format::Csv => to_csv(
                    &["a", "b", "s", "degree"],
                    &[vec![a.to_string(), b.to_string(), s.to_string(), report.degree.to_string()]],
                )?,
                Format::Text => format!("{}\n", report.degree),
            };
            (text, false)
        }
        Command::Delpezzo => (render_delpezzo(&cmd_delpezzo(&config)?, config.format)?, false),
    };
    write_output(&config, &text, stdout)?;
    Ok(if flagged { EXIT_FLAGGED } else { EXIT_OK })
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("secant").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn secant_ranges() {
        assert_eq!(parse_secant_range("3").unwrap(), 3..=3);
        assert_eq!(parse_secant_range("2..4").unwrap(), 2..=4);
        assert_eq!(parse_secant_range("2..=4").unwrap(), 2..=4);
        for bad in ["0", "4..2", "x", "1..", ""] {
            assert!(parse_secant_range(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn degree_command() {
        assert_eq!(run_str(&["degree", "2", "5", "2"]), (0, "15\n".into(), String::new()));
        assert_eq!(run_str(&["degree", "3", "7", "3"]).1, "56\n");
        assert_eq!(run_str(&["degree", "1", "1", "1"]).1, "2\n");
        assert_eq!(run_str(&["degree", "2", "2", "3"]).0, 1);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_str(&["analyze", "-p", "Q(1)"]).0, 1);
        assert_eq!(run_str(&["analyze"]).0, 1);
        assert_eq!(run_str(&["bogus"]).0, 1);
        assert_eq!(run_str(&["analyze", "-p", "P(1)", "--prime", "15"]).0, 1);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn equations_file_round_trip() {
        let cfg = RunConfig::from_args(&CommonArgs {
            profile: Some("P(1)xP(1)xP(4)".into()),
            secant: Some("2".into()),
            split: Some("1,1,0".into()),
            prime: DEFAULT_PRIME,
            seed: 0,
            trials: 3,
            cap: 7,
            format: Format::Text,
            out: None,
        })
        .unwrap();
        let file = cmd_equations(&cfg).unwrap();
        assert_eq!((file.polys.len(), file.total, file.truncated), (7, Some(40), true));
        let text = file.to_text().unwrap();
        assert!(text.starts_with("# profile: P(1)xP(1)xP(4)\n# split: 1,1,0\n# s: 2\n# count: 7\n# total: 40\n# truncated: true\n"));
        assert_eq!(EquationsFile::parse(&text, None).unwrap(), file);
        let broken = text.replace("# count: 7", "# count: 8");
        assert!(EquationsFile::parse(&broken, None).is_err());
    }
}
