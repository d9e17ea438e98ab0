//! Command-line front end for `pbwcoh-core`.
//!
//! Exit codes: `0` every check passed, `1` a mathematical check failed (the
//! report carries the witness), `2` the input or the invocation is invalid.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use pbwcoh_core::cocycles::{self, Cocycles};
use pbwcoh_core::cohomology::{cohomology_monomials, hilbert_coefficients, ChainMap, ChainMaps};
use pbwcoh_core::presentations::{check_braided_central, check_confluence};
use pbwcoh_core::resolution::{self, Resolution};
use pbwcoh_core::{
    parse_assignment, parse_presentation, print_presentation, AlgebraMode, Assignment, Fault, Presentation, Report,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "pbwcoh",
    version,
    about = "Exact verification of normal forms, resolutions, cohomology and 2-cocycles for PBW quotients",
    after_help = "Presentation files use x_i x_j = q_ij x_j x_i + p_ij (i < j). A quantum plane written \
                  yx = q xy therefore has q.1.2 = q^-1."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the presentation (units, degree condition) and confluence of rewriting.
    Validate(Options),
    /// Print the associated graded presentation.
    Gr(Options),
    /// Verify d^2 = 0, sd + ds = id and exactness in degree zero.
    ResolutionCheck(Options),
    /// Cohomology basis, Hilbert coefficients, relations and the dual basis.
    Cohomology(Options),
    /// Values of the 2-cocycles zeta_i and their verification suites.
    CocycleTable(Options),
    /// Chain-map property of xi_i and eta_i, comparison squares and pullbacks.
    ChainmapCheck(Options),
    /// Every stage in sequence, stopping at the first failure.
    FullVerify(Options),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Gr(_) => "gr",
            Command::ResolutionCheck(_) => "resolution-check",
            Command::Cohomology(_) => "cohomology",
            Command::CocycleTable(_) => "cocycle-table",
            Command::ChainmapCheck(_) => "chainmap-check",
            Command::FullVerify(_) => "full-verify",
        }
    }

    fn options(&self) -> &Options {
        match self {
            Command::Validate(o)
            | Command::Gr(o)
            | Command::ResolutionCheck(o)
            | Command::Cohomology(o)
            | Command::CocycleTable(o)
            | Command::ChainmapCheck(o)
            | Command::FullVerify(o) => o,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
}

#[derive(Debug, clap::Args)]
pub struct Options {
    /// Presentation file.
    pub file: PathBuf,
    /// Highest homological degree checked.
    #[arg(long, default_value_t = 5)]
    pub max_degree: usize,
    /// Exponent bound for the homotopy sweep, or total omega-degree bound for cocycle sweeps.
    #[arg(long)]
    pub exp_bound: Option<u32>,
    /// Restrict to generator i (1-based).
    #[arg(long)]
    pub gen: Option<usize>,
    /// Numeric value for a parameter, e.g. q1_2=2/3. Repeatable.
    #[arg(long = "assign", value_name = "qI_J=VALUE")]
    pub assign: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Corrupt one formula on purpose: d-exponent, xi-exponent or zeta-functional.
    #[arg(long, value_parser = parse_fault)]
    pub fault: Option<Fault>,
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    s.parse()
}

/// Output of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Run {
    format: Format,
    body: Vec<String>,
    reports: Vec<Report>,
}

impl Run {
    fn line(&mut self, text: impl Into<String>) {
        self.body.push(text.into());
    }

    fn failed(&self) -> bool {
        self.reports.iter().any(|r| !r.passed())
    }

    fn push(&mut self, report: Report) -> bool {
        let ok = report.passed();
        self.reports.push(report);
        ok
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return if code == EXIT_OK {
                Outcome {
                    stdout: text,
                    ..Default::default()
                }
            } else {
                Outcome {
                    stderr: text,
                    code,
                    ..Default::default()
                }
            };
        }
    };
    execute(&cli.command)
}

fn usage(message: impl Into<String>) -> Outcome {
    Outcome {
        stderr: format!("error: {}\n", message.into()),
        code: EXIT_USAGE,
        ..Default::default()
    }
}

fn load(opts: &Options) -> Result<(Presentation, String), Outcome> {
    let bytes = std::fs::read(&opts.file).map_err(|e| usage(format!("cannot read {}: {e}", opts.file.display())))?;
    let fingerprint = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| usage("presentation file is not UTF-8"))?;
    let mut pres = parse_presentation(&text).map_err(|e| usage(format!("{}: {e}", opts.file.display())))?;
    if !opts.assign.is_empty() {
        let mut assignment = Assignment::new();
        for a in &opts.assign {
            let (p, v) = parse_assignment(a, pres.n()).map_err(|m| usage(format!("--assign {a}: {m}")))?;
            assignment.insert(p, v);
        }
        pres = pres.substitute(&assignment).map_err(|e| usage(e.to_string()))?;
    }
    Ok((pres, fingerprint))
}

fn echo(cmd: &Command) -> String {
    let o = cmd.options();
    let mut s = format!(
        "pbwcoh {} {} --max-degree {}",
        cmd.name(),
        o.file.display(),
        o.max_degree
    );
    if let Some(b) = o.exp_bound {
        let _ = write!(s, " --exp-bound {b}");
    }
    if let Some(g) = o.gen {
        let _ = write!(s, " --gen {g}");
    }
    for a in &o.assign {
        let _ = write!(s, " --assign {a}");
    }
    if let Some(f) = o.fault {
        let _ = write!(s, " --fault {}", f.name());
    }
    s
}

pub fn execute(cmd: &Command) -> Outcome {
    let start = Instant::now();
    let opts = cmd.options();
    let (pres, fingerprint) = match load(opts) {
        Ok(v) => v,
        Err(out) => return out,
    };
    let validation = pres.validate();
    if !validation.passed() {
        let mut out = usage("invalid presentation");
        out.stdout = format!("{validation}\n");
        return out;
    }
    if let Some(g) = opts.gen {
        if g == 0 || g > pres.n() {
            return usage(format!("--gen {g} is outside 1..={}", pres.n()));
        }
    }
    let mut run = Run {
        format: opts.format,
        body: Vec::new(),
        reports: Vec::new(),
    };
    let result = match cmd {
        Command::Validate(_) => {
            run.push(validation);
            run.push(check_confluence(&pres, AlgebraMode::B, opts.max_degree.clamp(3, 4)));
            Ok(())
        }
        Command::Gr(_) => {
            run.line(print_presentation(&pres.associated_graded()).trim_end().to_string());
            Ok(())
        }
        Command::ResolutionCheck(_) => {
            resolution_stage(&pres, opts, &mut run);
            Ok(())
        }
        Command::Cohomology(_) => {
            cohomology_stage(&pres, opts, &mut run, true);
            Ok(())
        }
        Command::CocycleTable(_) => cocycle_stage(&pres, opts, &mut run, true).map(|_| ()),
        Command::ChainmapCheck(_) => {
            chainmap_stage(&pres, opts, &mut run);
            Ok(())
        }
        Command::FullVerify(_) => {
            full_verify(&pres, opts, validation, &mut run);
            Ok(())
        }
    };
    if let Err(out) = result {
        return out;
    }
    render(cmd, &fingerprint, &run, start)
}

fn render(cmd: &Command, fingerprint: &str, run: &Run, start: Instant) -> Outcome {
    let failed = run.failed();
    let checked: usize = run.reports.iter().map(|r| r.checks.len()).sum();
    let failures: usize = run.reports.iter().map(Report::failed_count).sum();
    let mut s = String::new();
    match run.format {
        Format::Text => {
            let _ = writeln!(s, "command: {}", echo(cmd));
            let _ = writeln!(s, "fingerprint: sha256:{fingerprint}");
            for line in &run.body {
                let _ = writeln!(s, "{line}");
            }
            for r in &run.reports {
                let _ = writeln!(s, "{r}");
            }
            let _ = writeln!(
                s,
                "result: {} checked={checked} failed={failures}",
                if failed { "FAIL" } else { "PASS" }
            );
            let _ = writeln!(s, "wall-time: {:.3}s", start.elapsed().as_secs_f64());
        }
        Format::Tsv => {
            let _ = writeln!(s, "# command\t{}", echo(cmd));
            let _ = writeln!(s, "# fingerprint\tsha256:{fingerprint}");
            for line in &run.body {
                let _ = writeln!(s, "{line}");
            }
            for r in &run.reports {
                s.push_str(&r.to_tsv());
            }
            let _ = writeln!(
                s,
                "# result\t{}\t{checked}\t{failures}",
                if failed { "FAIL" } else { "PASS" }
            );
            let _ = writeln!(s, "# wall-time\t{:.3}", start.elapsed().as_secs_f64());
        }
    }
    Outcome {
        stdout: s,
        stderr: String::new(),
        code: if failed { EXIT_FAILED } else { EXIT_OK },
    }
}

fn resolution_stage(pres: &Presentation, opts: &Options, run: &mut Run) -> bool {
    let res = Resolution::new(pres).with_fault(opts.fault);
    let bound = opts.exp_bound.unwrap_or_else(|| resolution::default_exp_bound(pres));
    let a = run.push(res.verify_complex(opts.max_degree));
    let b = run.push(res.verify_homotopy(opts.max_degree, bound, true));
    let c = run.push(res.verify_exactness_at_zero(bound));
    a && b && c
}

fn cohomology_stage(pres: &Presentation, opts: &Options, run: &mut Run, listing: bool) -> bool {
    if listing {
        for m in 0..=opts.max_degree {
            let monos: Vec<String> = cohomology_monomials(m, pres).iter().map(ToString::to_string).collect();
            match run.format {
                Format::Text => run.line(format!("H^{m}: {}", monos.join(", ")).trim_end()),
                Format::Tsv => {
                    for mono in monos {
                        run.line(format!("{m}\t{mono}"));
                    }
                }
            }
        }
        let dims: Vec<String> = hilbert_coefficients(pres, opts.max_degree)
            .iter()
            .map(ToString::to_string)
            .collect();
        match run.format {
            Format::Text => run.line(format!("hilbert: {}", dims.join(" "))),
            Format::Tsv => run.line(format!("hilbert\t{}", dims.join("\t"))),
        }
    }
    let maps = ChainMaps::new(pres).with_fault(opts.fault);
    let a = run.push(maps.verify_relations(opts.max_degree));
    let b = run.push(maps.verify_dual_basis(opts.max_degree));
    let c = run.push(maps.verify_products(opts.max_degree.min(4)));
    a && b && c
}

fn braided_stage(pres: &Presentation, bound: u64, run: &mut Run) -> bool {
    let mut ok = true;
    for i in 0..pres.t() {
        ok &= run.push(check_braided_central(i, pres, bound));
    }
    ok
}

fn cocycle_stage(pres: &Presentation, opts: &Options, run: &mut Run, table: bool) -> Result<bool, Outcome> {
    let bound = opts
        .exp_bound
        .map_or_else(|| cocycles::default_exp_bound(pres), u64::from);
    let indices: Vec<usize> = match opts.gen {
        Some(g) if g > pres.t() => {
            return Err(usage(format!(
                "--gen {g} must be a nilpotent generator (t = {})",
                pres.t()
            )))
        }
        Some(g) => vec![g - 1],
        None => (0..pres.t()).collect(),
    };
    if table && !braided_stage(pres, bound, run) {
        return Ok(false);
    }
    let z = Cocycles::unchecked(pres).with_fault(opts.fault);
    let mut ok = true;
    for i in indices {
        let p = cocycles::filtration_degree(i, pres).map_err(|e| usage(e.to_string()))?;
        if table {
            match run.format {
                Format::Text => run.line(format!("zeta{} {p}", i + 1)),
                Format::Tsv => run.line(format!("# zeta{}\t{}", i + 1, p.p)),
            }
            let rows = match z.table(i, bound) {
                Ok(rows) => rows,
                Err(e) => return Err(usage(e.to_string())),
            };
            for (r, s, v) in rows {
                match run.format {
                    Format::Text => run.line(format!("  zeta{}({r}, {s}) = {v}", i + 1)),
                    Format::Tsv => run.line(format!("{r}\t{s}\t{v}")),
                }
            }
        }
        ok &= run.push(z.verify_zeta_properties(i, bound));
        ok &= run.push(z.verify_cocycle_on_a(i, bound));
        ok &= run.push(z.verify_bar_cocycle(i, bound.min(6)));
        ok &= run.push(z.verify_coboundary_on_b(i, bound));
        ok &= run.push(z.verify_filtration_degree(i, bound));
    }
    Ok(ok)
}

fn chainmap_stage(pres: &Presentation, opts: &Options, run: &mut Run) -> bool {
    let maps = ChainMaps::new(pres).with_fault(opts.fault);
    let mut ok = true;
    let indices: Vec<usize> = match opts.gen {
        Some(g) => vec![g - 1],
        None => (0..pres.n()).collect(),
    };
    for &i in &indices {
        if i < pres.t() {
            ok &= run.push(maps.verify_chain_map(&ChainMap::Xi(i), opts.max_degree));
        }
    }
    for &i in &indices {
        ok &= run.push(maps.verify_chain_map(&ChainMap::Eta(i), opts.max_degree));
    }
    ok &= run.push(cocycles::verify_f_squares(pres));
    ok &= run.push(cocycles::verify_identifications(pres));
    ok
}

fn full_verify(pres: &Presentation, opts: &Options, validation: Report, run: &mut Run) {
    run.push(validation);
    let confluence = check_confluence(pres, AlgebraMode::B, opts.max_degree.clamp(3, 4));
    if let Some(err) = pbwcoh_core::presentations::first_confluence_error(&confluence) {
        run.line(format!("halt: {err}"));
    }
    if !run.push(confluence) {
        return;
    }
    let bound = opts
        .exp_bound
        .map_or_else(|| cocycles::default_exp_bound(pres), u64::from);
    if !braided_stage(pres, bound, run) {
        run.line("halt: a nilpotent power is not braided-central; cocycle stages skipped");
        return;
    }
    if !resolution_stage(pres, opts, run) {
        return;
    }
    if !cohomology_stage(pres, opts, run, false) {
        return;
    }
    match cocycle_stage(pres, opts, run, false) {
        Ok(true) => {}
        _ => return,
    }
    chainmap_stage(pres, opts, run);
}
