//! Command-line front end.
//!
//! `run` takes the argument list and output streams so that it can be
//! driven from tests. Exit codes: 0 success, 1 verification failure,
//! 2 invalid configuration or input.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::ball::Variant;
use crate::cyclic::build_p;
use crate::enumerate::{count_distinct_classes_with, realize, ClassCount, TriangulationMask};
use crate::error::{Error, Result};
use crate::io::{self, Document, Format};
use crate::sphere::{apex_map, build_p_prime, build_q, SiteSelection};
use crate::verify::{run_suite, LemmaId, LemmaReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

pub const THREADS_ENV: &str = "SPHEREWRIGHT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "spherewright", version, about = "Build and check neighborly polyhedral 3-spheres")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build P(n), P'(n) or Q(n) and write it out.
    Build(BuildArgs),
    /// Run the lemma checks and print one report per check.
    Verify(VerifyArgs),
    /// Split every bipyramid of Q(n) per a mask and write the result.
    Triangulate(TriangulateArgs),
    /// Count isomorphism classes over all masks.
    CountDistinct(CountArgs),
    /// Convert a complex between formats.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long, value_enum, default_value_t = VariantArg::Extended)]
    variant: VariantArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Literal,
    Extended,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Literal => Variant::Literal,
            VariantArg::Extended => Variant::Extended,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ObjectArg {
    Q,
    P,
    PPrime,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ComplexFormat {
    Json,
    Facets,
}

impl From<ComplexFormat> for Format {
    fn from(f: ComplexFormat) -> Self {
        match f {
            ComplexFormat::Json => Format::Json,
            ComplexFormat::Facets => Format::Facets,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Args)]
struct BuildArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = ObjectArg::Q)]
    object: ObjectArg,
    /// `auto`, `all`, or a list such as `4:1,6:2`.
    #[arg(long, default_value = "auto")]
    sites: String,
    #[arg(long, value_enum, default_value_t = ComplexFormat::Json)]
    format: ComplexFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Restrict to these checks (`L2`, `L6_BOUNDARY_TRIANGLES`, `SPHERE`, ..).
    #[arg(long, value_delimiter = ',')]
    lemma: Vec<String>,
    /// Treat L6/L7 mismatches as failures.
    #[arg(long)]
    strict_paper: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TriangulateArgs {
    #[command(flatten)]
    common: Common,
    /// One character per site in order, `0` = two tetrahedra, `1` = three.
    /// Defaults to all `0`.
    #[arg(long)]
    mask: Option<String>,
    #[arg(long, value_enum, default_value_t = ComplexFormat::Json)]
    format: ComplexFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[command(flatten)]
    common: Common,
    /// Largest number of masks to enumerate.
    #[arg(long, default_value_t = 1 << 16)]
    limit: u64,
    /// Relabel each triangulation randomly before canonicalizing.
    #[arg(long)]
    relabel_seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    format: ReportFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExportArgs {
    /// Input file in either format; `-` reads stdin.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = ComplexFormat::Json)]
    format: ComplexFormat,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Parses `auto`, `all`, or `a:u[,a:u..]`.
pub fn parse_sites(s: &str) -> Result<SiteSelection> {
    match s.trim() {
        "auto" => return Ok(SiteSelection::Auto),
        "all" => return Ok(SiteSelection::All),
        _ => {}
    }
    let mut sites = Vec::new();
    let mut column = 1;
    for part in s.split(',') {
        let bad = |message: String| Error::Parse {
            line: 1,
            column,
            message,
        };
        let (a, u) = part
            .split_once(':')
            .ok_or_else(|| bad(format!("site '{part}' is not of the form a:u")))?;
        let a = a
            .trim()
            .parse::<u32>()
            .map_err(|_| bad(format!("'{a}' is not a ball center")))?;
        let u = u
            .trim()
            .parse::<u32>()
            .map_err(|_| bad(format!("'{u}' is not a site index")))?;
        sites.push((a, u));
        column += part.chars().count() + 1;
    }
    Ok(SiteSelection::Explicit(sites))
}

/// Whether a failing report counts against the exit status.
pub fn is_blocking(report: &LemmaReport, strict_paper: bool) -> bool {
    let finding = matches!(
        report.lemma,
        LemmaId::L6BoundaryTriangles | LemmaId::L7InteriorEdges
    );
    !report.passed() && (strict_paper || !finding)
}

fn emit(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<()> {
    let res = match path {
        Some(p) => fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    };
    res.map_err(|e| Error::OutOfRange(format!("cannot write output: {e}")))
}

fn build(args: &BuildArgs) -> Result<(String, i32)> {
    let n = args.common.n;
    let variant: Variant = args.common.variant.into();
    let doc = match args.object {
        ObjectArg::P => Document::from_complex(&build_p(n)?, Some(n), None, Default::default()),
        ObjectArg::PPrime => {
            Document::from_complex(&build_p_prime(n, variant)?, Some(n), Some(variant), apex_map(n)?)
        }
        ObjectArg::Q => Document::from_sphere(&build_q(n, variant, &parse_sites(&args.sites)?)?),
    };
    Ok((io::serialize(&doc, args.format.into()), EXIT_OK))
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    n: u32,
    variant: Variant,
    strict_paper: bool,
    passed: bool,
    reports: &'a [LemmaReport],
}

fn list(faces: &[crate::Simplex]) -> String {
    faces.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ")
}

fn verify(args: &VerifyArgs) -> Result<(String, i32)> {
    let n = args.common.n;
    let variant: Variant = args.common.variant.into();
    let filter = if args.lemma.is_empty() {
        None
    } else {
        let ids = args
            .lemma
            .iter()
            .map(|s| LemmaId::parse(s).ok_or_else(|| Error::OutOfRange(format!("unknown check '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        Some(ids)
    };
    let reports = run_suite(n, variant, filter.as_deref())?;
    let passed = !reports.iter().any(|r| is_blocking(r, args.strict_paper));
    let text = match args.format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&VerifyOutput {
                n,
                variant,
                strict_paper: args.strict_paper,
                passed,
                reports: &reports,
            })
            .expect("reports serialize");
            s.push('\n');
            s
        }
        ReportFormat::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&r.summary_line());
                if !r.passed() && !is_blocking(r, args.strict_paper) {
                    s.push_str(" (finding)");
                }
                s.push('\n');
                if !r.computed_not_claimed.is_empty() {
                    s.push_str(&format!("  computed-not-claimed: {}\n", list(&r.computed_not_claimed)));
                }
                if !r.claimed_not_computed.is_empty() {
                    s.push_str(&format!("  claimed-not-computed: {}\n", list(&r.claimed_not_computed)));
                }
                for w in &r.witnesses {
                    s.push_str(&format!("  witness {:?}: {} {}\n", w.kind, list(&w.faces), w.detail));
                }
                for note in &r.notes {
                    s.push_str(&format!("  note: {note}\n"));
                }
            }
            s.push_str(if passed { "result: PASS\n" } else { "result: FAIL\n" });
            s
        }
    };
    Ok((text, if passed { EXIT_OK } else { EXIT_FAILED }))
}

fn triangulate(args: &TriangulateArgs) -> Result<(String, i32)> {
    let n = args.common.n;
    let variant: Variant = args.common.variant.into();
    let q = build_q(n, variant, &SiteSelection::Auto)?;
    let mask = match &args.mask {
        Some(m) => m.parse::<TriangulationMask>()?,
        None => TriangulationMask::from_index(0, q.bipyramids.len()),
    };
    let x = realize(&q, &mask)?;
    let doc = Document::from_complex(&x, Some(n), Some(variant), q.apexes.clone());
    Ok((io::serialize(&doc, args.format.into()), EXIT_OK))
}

fn class_table(c: &ClassCount) -> String {
    let mut s = format!(
        "n={} variant={} sites={} vertices={} masks={} lower-bound={:.3e}\n",
        c.n,
        c.variant,
        c.sites.len(),
        c.vertices,
        c.masks,
        c.lower_bound
    );
    s.push_str("class\tsize\tmask\tf-vector\n");
    for (i, k) in c.classes.iter().enumerate() {
        let fv: Vec<String> = k.f_vector.0.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!(
            "{}\t{}\t{}\t({})\n",
            i + 1,
            k.size,
            k.representative,
            fv.join(",")
        ));
    }
    s.push_str(&format!("classes: {}\n", c.class_count()));
    s
}

fn count(args: &CountArgs) -> Result<(String, i32)> {
    let c = count_distinct_classes_with(
        args.common.n,
        args.common.variant.into(),
        args.limit,
        args.relabel_seed,
    )?;
    let text = match args.format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&c).expect("count serializes");
            s.push('\n');
            s
        }
        ReportFormat::Text => class_table(&c),
    };
    Ok((text, EXIT_OK))
}

fn export(args: &ExportArgs) -> Result<(String, i32)> {
    let text = if args.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::OutOfRange(format!("cannot read stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(&args.input)
            .map_err(|e| Error::OutOfRange(format!("cannot read {}: {e}", args.input.display())))?
    };
    let doc = io::deserialize(&text)?;
    Ok((io::serialize(&doc, args.format.into()), EXIT_OK))
}

fn dispatch(cli: &Cli) -> Result<(String, i32)> {
    match &cli.command {
        Command::Build(a) => build(a),
        Command::Verify(a) => verify(a),
        Command::Triangulate(a) => triangulate(a),
        Command::CountDistinct(a) => count(a),
        Command::Export(a) => export(a),
    }
}

fn output_path(cli: &Cli) -> &Option<PathBuf> {
    match &cli.command {
        Command::Build(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::Triangulate(a) => &a.output,
        Command::CountDistinct(a) => &a.output,
        Command::Export(a) => &a.output,
    }
}

fn thread_pool() -> std::result::Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let t: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| format!("{THREADS_ENV}='{v}' is not a positive integer"))?;
        builder = builder.num_threads(t);
    }
    builder.build().map_err(|e| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INVALID;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    match pool
        .install(|| dispatch(&cli))
        .and_then(|(text, code)| emit(out, output_path(&cli), &text).map(|_| code))
    {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sites_syntax() {
        assert_eq!(parse_sites("auto").unwrap(), SiteSelection::Auto);
        assert_eq!(parse_sites("all").unwrap(), SiteSelection::All);
        assert_eq!(
            parse_sites("4:1,6:2").unwrap(),
            SiteSelection::Explicit(vec![(4, 1), (6, 2)])
        );
        assert!(matches!(parse_sites("4:1,6-2"), Err(Error::Parse { column: 5, .. })));
        assert!(matches!(parse_sites("x:1"), Err(Error::Parse { column: 1, .. })));
    }
}
