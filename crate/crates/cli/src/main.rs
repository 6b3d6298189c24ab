//! Command-line front end: parse sequence/ground-set/window literals,
//! dispatch to the library, and emit text, JSON, NDJSON reports or SVG.
//!
//! Exit codes: 0 success or all checks pass, 1 a check failed, 2 usage or
//! validation error, 3 operational inability (beyond horizon, window too
//! small or too large, infeasible search).

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use subdirect::decomp::{self, Sense};
use subdirect::lattice::{self, GroundSet, Point, Window};
use subdirect::render::{self, RenderOptions};
use subdirect::verify::{self, Suite, SuiteConfig};
use subdirect::{DoublingSequence, Error};

#[derive(Parser)]
#[command(
    name = "subdirect",
    version,
    about = "Staircase subsemigroups of Z x Z from doubling sequences",
    after_help = "Sequence literal: --prefix 1,2,5,10 --tail double|finite|bits:0110\n\
                  Window literal:   --window xmin:xmax:ymin:ymax\n\
                  Ground sets:      zxz zxn0 zxn n0xn0 n0xn"
)]
struct Cli {
    /// Optional config file with flat key=value lines; flags override it
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a sequence prefix and echo its canonical form
    Validate(Opts),
    /// Print the sequence term with the given index
    Term(Opts),
    /// Decide membership of a point
    Member(Opts),
    /// List the members of a window
    Enumerate(Opts),
    /// List the indecomposable members of a window
    Indec(Opts),
    /// Enumerate the decompositions of a member into indecomposables
    Decomp(Opts),
    /// Run verification suites, emitting one JSON report per line
    Verify(Opts),
    /// Recover the sequence prefix from a window's indecomposables
    Fingerprint(Opts),
    /// Compare the fingerprints of two sequences on one window
    Distinguish(Opts),
    /// Render the staircase as ASCII or SVG
    Plot(Opts),
}

#[derive(Args, Default)]
struct Opts {
    /// Sequence prefix, comma separated (first term must be 1)
    #[arg(long, value_name = "a,b,c")]
    prefix: Option<String>,
    /// Tail policy: finite | double | bits:BITS (default double)
    #[arg(long, value_name = "POLICY")]
    tail: Option<String>,
    /// Second sequence prefix, for distinguish
    #[arg(long, value_name = "a,b,c")]
    prefix_b: Option<String>,
    /// Second sequence tail policy, for distinguish
    #[arg(long, value_name = "POLICY")]
    tail_b: Option<String>,
    /// Ground set: zxz | zxn0 | zxn | n0xn0 | n0xn
    #[arg(long, value_name = "SET")]
    ground: Option<String>,
    /// Window bounds xmin:xmax:ymin:ymax
    #[arg(long, allow_hyphen_values = true, value_name = "X:X:Y:Y")]
    window: Option<String>,
    /// Indecomposability sense: auto | semigroup | monoid (default auto)
    #[arg(long, value_name = "SENSE")]
    sense: Option<String>,
    /// Point as x,y
    #[arg(long, allow_hyphen_values = true, value_name = "x,y")]
    point: Option<String>,
    /// Term index (term), or largest corner index for claims (verify)
    #[arg(long, value_name = "K")]
    k: Option<String>,
    /// Verify suite: all | closure | subdirect | indec | claims | distinguish
    #[arg(long, value_name = "SUITE")]
    suite: Option<String>,
    /// Stop after this many decompositions
    #[arg(long, value_name = "N")]
    max: Option<String>,
    /// Output format: text | json | ascii | svg
    #[arg(long, value_name = "FMT")]
    format: Option<String>,
    /// Plot labels, comma list of: ck, gaps
    #[arg(long, value_name = "LIST")]
    labels: Option<String>,
    /// SVG pixels per lattice unit
    #[arg(long, value_name = "PX")]
    cell: Option<String>,
    /// SVG margin in pixels
    #[arg(long, value_name = "PX")]
    margin: Option<String>,
    /// Write output to this file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                Error::BeyondHorizon(_)
                | Error::WindowTooSmall(_)
                | Error::WindowTooLarge { .. }
                | Error::Overflow(_) => 3,
                _ => 2,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => format!("error: Usage: {m}"),
            CliError::Core(e) => format!("error: {}: {e}", e.kind()),
            CliError::Io(m) => format!("error: Io: {m}"),
        }
    }
}

/// Merged view of flags over config-file defaults.
struct Ctx {
    values: HashMap<&'static str, String>,
    out: Option<PathBuf>,
}

impl Ctx {
    fn new(opts: Opts, config: Option<PathBuf>) -> Result<Self, CliError> {
        let mut defaults: HashMap<String, String> = HashMap::new();
        if let Some(path) = config {
            let text = fs::read_to_string(&path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(CliError::Usage(format!(
                        "config line {} is not key=value: {line:?}",
                        lineno + 1
                    )));
                };
                defaults.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        let mut values = HashMap::new();
        let mut merge = |key: &'static str, flag: Option<String>| {
            if let Some(v) = flag.or_else(|| defaults.get(key).cloned()) {
                values.insert(key, v);
            }
        };
        merge("prefix", opts.prefix);
        merge("tail", opts.tail);
        merge("prefix-b", opts.prefix_b);
        merge("tail-b", opts.tail_b);
        merge("ground", opts.ground);
        merge("window", opts.window);
        merge("sense", opts.sense);
        merge("point", opts.point);
        merge("k", opts.k);
        merge("suite", opts.suite);
        merge("max", opts.max);
        merge("format", opts.format);
        merge("labels", opts.labels);
        merge("cell", opts.cell);
        merge("margin", opts.margin);
        let out = opts.out.or_else(|| defaults.get("out").map(PathBuf::from));
        Ok(Ctx { values, out })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn require(&self, key: &'static str) -> Result<&str, CliError> {
        self.get(key)
            .ok_or_else(|| CliError::Usage(format!("missing --{key}")))
    }

    fn sigma(&self) -> Result<DoublingSequence, CliError> {
        let prefix = self.require("prefix")?;
        let tail = self.get("tail").unwrap_or("double");
        Ok(DoublingSequence::parse(prefix, tail)?)
    }

    fn sigma_b(&self) -> Result<DoublingSequence, CliError> {
        let prefix = self.require("prefix-b")?;
        let tail = self
            .get("tail-b")
            .or_else(|| self.get("tail"))
            .unwrap_or("double");
        Ok(DoublingSequence::parse(prefix, tail)?)
    }

    fn ground(&self) -> Result<GroundSet, CliError> {
        Ok(GroundSet::parse(self.require("ground")?)?)
    }

    fn window(&self) -> Result<Window, CliError> {
        Ok(Window::parse(self.require("window")?)?)
    }

    fn sense(&self, ground: GroundSet) -> Result<Sense, CliError> {
        match self.get("sense").unwrap_or("auto") {
            "auto" => Ok(ground.default_sense()),
            other => Ok(Sense::parse(other)?),
        }
    }

    fn point(&self) -> Result<Point, CliError> {
        Ok(Point::parse(self.require("point")?)?)
    }

    fn parse_number<T: std::str::FromStr>(
        &self,
        key: &'static str,
        what: &str,
    ) -> Result<Option<T>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("--{key} expects {what}, got {raw:?}"))),
        }
    }

    fn format(&self, default: &str, allowed: &[&str]) -> Result<String, CliError> {
        let fmt = self.get("format").unwrap_or(default);
        if allowed.contains(&fmt) {
            Ok(fmt.to_string())
        } else {
            Err(CliError::Usage(format!(
                "--format {fmt:?} not supported here (expected one of {})",
                allowed.join(", ")
            )))
        }
    }

    fn emit(&self, payload: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => fs::write(path, payload)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{payload}");
                Ok(())
            }
        }
    }
}

fn points_as_text(points: &[Point]) -> String {
    points
        .iter()
        .map(|p| format!("{} {}\n", p.x, p.y))
        .collect()
}

fn points_as_json(points: &[Point]) -> String {
    let body: Vec<String> = points.iter().map(|p| p.to_json()).collect();
    format!("[{}]\n", body.join(","))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Validate(opts) => {
            let ctx = Ctx::new(opts, cli.config)?;
            let prefix = ctx.require("prefix")?;
            let seq = DoublingSequence::parse(prefix, ctx.get("tail").unwrap_or("finite"))?;
            ctx.emit(&format!("{}\n", seq.canonical_json()))?;
            Ok(0)
        }
        Command::Term(opts) => {
            let ctx = Ctx::new(opts, cli.config)?;
            let seq = ctx.sigma()?;
            let k: u32 = ctx
                .parse_number("k", "a term index of at least 2")?
                .ok_or_else(|| CliError::Usage("missing --k".to_string()))?;
            let term = seq.term(k)?;
            match ctx.format("text", &["text", "json"])?.as_str() {
                "json" => ctx.emit(&format!("{{\"k\":{k},\"term\":{term}}}\n"))?,
                _ => ctx.emit(&format!("{term}\n"))?,
            }
            Ok(0)
        }
        Command::Member(opts) => {
            let ctx = Ctx::new(opts, cli.config)?;
            let seq = ctx.sigma()?;
            let ground = ctx.ground()?;
            let point = ctx.point()?;
            let member = lattice::contains(&seq, ground, point)?;
            match ctx.format("text", &["text", "json"])?.as_str() {
                "json" => ctx.emit(&format!(
                    "{{\"point\":{},\"ground\":\"{ground}\",\"member\":{member}}}\n",
                    point.to_json()
                ))?,
                _ => ctx.emit(&format!("{member}\n"))?,
            }
            Ok(0)
        }
        Command::Enumerate(opts) => {
            let ctx = Ctx::new(opts, cli.config)?;
            let seq = ctx.sigma()?;
            let ground = ctx.ground()?;
            let window = ctx.window()?;
            let points = lattice::enumerate_window(&seq, ground, &window)?;
            match ctx.format("text", &["text", "json"])?.as_str() {
                "json" => ctx.emit(&points_as_json(&points))?,
                _ => ctx.emit(&points_as_text(&points))?,
            }
            Ok(0)
        }
        Command::Indec(opts) => {
            let ctx = Ctx::new(opts, cli.config)?;
            let seq = ctx.sigma()?;
            let ground = ctx.ground()?;
            let window = ctx.window()?;
            let sense = ctx.sense(ground)?;
            let points = decomp::indecomposables_in_window(&seq, ground, &window, sense)?;
            match ctx.format("text", &["text", "json"])?.as_str() {
                "json" => ctx.emit(&points_as_json(&points))?,
                _ => ctx.emit(&points_as_text(&points))?,
            }
            Ok(0)
        }
        Command::Decomp(opts) => {
            let ctx = Ctx::new(opts, cli.config)?;
            let seq = ctx.sigma()?;
            let ground = ctx.ground()?;
            let point = ctx.point()?;
            let sense = ctx.sense(ground)?;
            let max = ctx.parse_number("max", "a positive count")?;
            let decs = decomp::decompositions(&seq, ground, point, sense, max)?;
            match ctx.format("text", &["text", "json"])?.as_str() {
                "json" => {
                    let body: Vec<String> = decs.iter().map(|d| d.to_json()).collect();
                    ctx.emit(&format!("[{}]\n", body.join(",")))?;
                }
                _ => {
                    let mut payload = String::new();
                    for d in &decs {
                        payload.push_str(&format!("{d}\n"));
                    }
                    payload.push_str(&format!("{} decomposition(s)\n", decs.len()));
                    ctx.emit(&payload)?;
                }
            }
            Ok(0)
        }
        Command::Verify(opts) => {
            let ctx = Ctx::new(opts, cli.config)?;
            let seq = ctx.sigma()?;
            let ground = ctx.ground()?;
            let window = ctx.window()?;
            let suite = Suite::parse(ctx.get("suite").unwrap_or("all"))?;
            let k_max: u32 = ctx
                .parse_number("k", "a corner index of at least 2")?
                .unwrap_or(4);
            if k_max < 2 {
                return Err(CliError::Usage("--k must be at least 2".to_string()));
            }
            let other = if ctx.get("prefix-b").is_some() {
                Some(ctx.sigma_b()?)
            } else {
                None
            };
            let cfg = SuiteConfig {
                window,
                k_range: (2, k_max),
                i_range: (1, 6),
            };
            let reports = verify::run_suite(&seq, other.as_ref(), ground, &cfg, suite)?;
            let mut payload = String::new();
            let mut failed = false;
            for report in &reports {
                payload.push_str(&report.ndjson_line());
                payload.push('\n');
                failed |= !report.passed();
            }
            ctx.emit(&payload)?;
            Ok(if failed { 1 } else { 0 })
        }
        Command::Fingerprint(opts) => {
            let ctx = Ctx::new(opts, cli.config)?;
            let seq = ctx.sigma()?;
            let ground = ctx.ground()?;
            let window = ctx.window()?;
            let fp = verify::fingerprint(&seq, ground, &window)?;
            match ctx.format("text", &["text", "json"])?.as_str() {
                "json" => ctx.emit(&format!("{}\n", fp.to_json()))?,
                _ => {
                    let prefix: Vec<String> =
                        fp.recovered_prefix.iter().map(|t| t.to_string()).collect();
                    let mut payload = format!("recovered_prefix: {}\n", prefix.join(","));
                    payload.push_str(&points_as_text(&fp.indec_points));
                    ctx.emit(&payload)?;
                }
            }
            Ok(0)
        }
        Command::Distinguish(opts) => {
            let ctx = Ctx::new(opts, cli.config)?;
            let seq = ctx.sigma()?;
            let other = ctx.sigma_b()?;
            let ground = ctx.ground()?;
            let window = ctx.window()?;
            let report = verify::distinguish(&seq, &other, ground, &window)?;
            ctx.emit(&format!("{}\n", report.ndjson_line()))?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Plot(opts) => {
            let ctx = Ctx::new(opts, cli.config)?;
            let seq = ctx.sigma()?;
            let ground = ctx.ground()?;
            let window = ctx.window()?;
            match ctx.format("ascii", &["ascii", "svg"])?.as_str() {
                "svg" => {
                    let mut options = RenderOptions::default();
                    if let Some(labels) = ctx.get("labels") {
                        for label in labels.split(',').filter(|l| !l.is_empty()) {
                            match label {
                                "ck" => options.show_ck_labels = true,
                                "gaps" => options.show_gap_labels = true,
                                other => {
                                    return Err(CliError::Usage(format!(
                                        "unknown label {other:?} (expected ck or gaps)"
                                    )));
                                }
                            }
                        }
                    }
                    if let Some(cell) = ctx.parse_number("cell", "a pixel count of at least 1")? {
                        options.cell_size = cell;
                    }
                    if let Some(margin) = ctx.parse_number("margin", "a pixel count")? {
                        options.margin = margin;
                    }
                    let svg = render::render_svg(&seq, ground, &window, &options)?;
                    ctx.emit(&svg)?;
                }
                _ => {
                    let grid = render::render_ascii(&seq, ground, &window)?;
                    ctx.emit(&grid)?;
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("{}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
