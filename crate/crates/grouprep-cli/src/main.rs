mod config;
mod files;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use grouprep::coefficients::admissibility_constant;
use grouprep::dependency::{probe_independence, verify, Verdict, DEFAULT_SPECTRAL_THRESHOLD};
use grouprep::functions;
use grouprep::groupring::{zero_divisor_probe, Coefficient, FormalSum, GaussianRational, LatticeKind};
use grouprep::groups::LatticeElement;
use grouprep::numerics::{Grid, SampledFunction};
use grouprep::report::{CheckRecord, CheckStatus, Provenance, Report};
use grouprep::representations::RepresentationTag;
use grouprep::suites::{all_suites, canned_suite, SuiteConfig, SUITE_NAMES};

/// the only environment dependency: overrides the config path when --config
/// is not given
const CONFIG_ENV: &str = "GROUPREP_CONFIG";

/// Verification CLI: dependency certificates, independence probes, and
/// group-ring zero-divisor checks. Exit codes: 0 all checks pass, 1 a check
/// failed, 2 usage or parse error, 3 inconclusive results only.
#[derive(Parser)]
#[command(name = "grouprep", version)]
struct Cli {
    /// TOML run configuration (grids, tolerances, truncation boxes, seed,
    /// output paths)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a canned verification suite, or `all`
    Suite { name: String },
    /// Check a dependency certificate file
    Verify { file: PathBuf },
    /// Spectral independence probe from a probe file
    Probe { file: PathBuf },
    /// Admissibility constant of a named window
    Admissibility {
        /// window function name (gaussian, odd-gaussian, zero-mean-bump, ...)
        #[arg(long, default_value = "odd-gaussian")]
        function: String,
        #[arg(long, default_value = "pi-affine")]
        rep: String,
    },
    /// Group-ring operations on lattice groups
    #[command(subcommand)]
    Gring(GringCommand),
}

#[derive(Subcommand)]
enum GringCommand {
    /// Zero-divisor witness for 1 - g in the group ring of Z/m
    Torsion(TorsionArgs),
    /// Convolution-matrix rank probe of a formal sum file
    Probe {
        file: PathBuf,
        /// support-ball radius (defaults to the config ring radius)
        #[arg(long)]
        radius: Option<usize>,
    },
}

#[derive(Args)]
struct TorsionArgs {
    #[arg(long)]
    m: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            // parse/usage problems; clap handles flag errors itself with 2
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let config_path = cli.config.or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let run_config = match &config_path {
        Some(p) => config::RunConfig::load(p)?,
        None => config::RunConfig::default(),
    };
    let cfg = run_config.suite_config();

    let report = match cli.command {
        Command::Suite { name } => {
            if name == "all" {
                all_suites(&cfg).map_err(|e| anyhow!("{e}"))?
            } else if SUITE_NAMES.contains(&name.as_str()) {
                canned_suite(&name, &cfg).map_err(|e| anyhow!("{e}"))?
            } else {
                return Err(anyhow!(
                    "unknown suite `{name}`; available: all, {}",
                    SUITE_NAMES.join(", ")
                ));
            }
        }
        Command::Verify { file } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("cannot read `{}`", file.display()))?;
            let parsed = files::parse_certificate(&text)
                .with_context(|| format!("certificate `{}`", file.display()))?;
            let tol = parsed.tolerance.unwrap_or(cfg.transfer_tol);
            let outcome = verify(&parsed.certificate).map_err(|e| anyhow!("{e}"))?;
            let mut report = Report::new();
            report.push(CheckRecord::residual(
                "verify",
                "certificate-residual",
                outcome.relative,
                tol,
                Provenance::Identity,
                "linear dependency of the listed translates",
                &format!("{} terms, unnormalized {:.3e}", parsed.certificate.terms.len(), outcome.unnormalized),
            ));
            report
        }
        Command::Probe { file } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("cannot read `{}`", file.display()))?;
            let parsed =
                files::parse_probe(&text).with_context(|| format!("probe `{}`", file.display()))?;
            let threshold = parsed.threshold.unwrap_or(cfg.spectral_threshold);
            let probe = probe_independence(parsed.rep, &parsed.elements, &parsed.vector, threshold)
                .map_err(|e| anyhow!("{e}"))?;
            let rel = probe.min_eigenvalue.max(0.0) / probe.max_eigenvalue;
            let status = match probe.verdict {
                Verdict::Independent => CheckStatus::Pass,
                Verdict::Dependent => CheckStatus::Fail,
                Verdict::Inconclusive => CheckStatus::Inconclusive,
            };
            let mut report = Report::new();
            report.push(
                CheckRecord::lower_bound(
                    "probe",
                    "gram-relative-gap",
                    rel,
                    threshold,
                    Provenance::Derived,
                    "smallest relative eigenvalue of the Gram matrix",
                    &format!("{} elements, verdict {}", probe.elements.len(), probe.verdict),
                )
                .with_status(status),
            );
            report
        }
        Command::Admissibility { function, rep } => {
            let eval = functions::by_name(&function)
                .ok_or_else(|| anyhow!("unknown function `{function}`"))?;
            let tag = RepresentationTag::from_cli_name(&rep).map_err(|e| anyhow!("{e}"))?;
            let grid = Grid::line(-cfg.box_half, cfg.box_half, cfg.line_points)
                .map_err(|e| anyhow!("{e}"))?;
            let u = SampledFunction::from_fn(grid, eval);
            let adm = admissibility_constant(tag, &u).map_err(|e| anyhow!("{e}"))?;
            let status = if adm.convergent { CheckStatus::Pass } else { CheckStatus::Inconclusive };
            let mut report = Report::new();
            report.push(
                CheckRecord::lower_bound(
                    "admissibility",
                    &format!("constant-{function}"),
                    adm.constant,
                    0.0,
                    Provenance::Derived,
                    "Fourier-side admissibility integral",
                    &format!(
                        "xi in [{:.3e}, {}], convergent {}",
                        adm.xi_min, adm.xi_max, adm.convergent
                    ),
                )
                .with_status(status),
            );
            report
        }
        Command::Gring(cmd) => gring(cmd, &cfg)?,
    };

    print!("{}", report.render_text());
    if let Some(path) = &run_config.output.text {
        std::fs::write(path, report.render_text())
            .with_context(|| format!("cannot write `{}`", path.display()))?;
    }
    if let Some(path) = &run_config.output.records {
        std::fs::write(path, report.render_jsonl())
            .with_context(|| format!("cannot write `{}`", path.display()))?;
    }
    Ok(report.exit_code() as u8)
}

fn gring(cmd: GringCommand, cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new();
    match cmd {
        GringCommand::Torsion(args) => {
            let m = args.m;
            if m < 2 {
                return Err(anyhow!("--m must be at least 2"));
            }
            let one = GaussianRational::from_integer(1);
            let alpha = FormalSum::from_terms(
                LatticeKind::ZMod(m),
                vec![
                    (one, LatticeElement::ZMod { m, k: 0 }),
                    (one.neg(), LatticeElement::ZMod { m, k: 1 }),
                ],
            )
            .map_err(|e| anyhow!("{e}"))?;
            let probe = zero_divisor_probe(&alpha, m as usize).map_err(|e| anyhow!("{e}"))?;
            let witness = probe
                .witness
                .as_ref()
                .ok_or_else(|| anyhow!("no kernel witness found for m = {m}"))?;
            println!("kernel witness for (1 - g) over Z/{m}:");
            print!("{}", witness.serialize());
            report.push(CheckRecord::residual(
                "gring",
                &format!("torsion-m{m}"),
                probe.min_singular_value,
                1e-12,
                Provenance::Identity,
                "torsion zero divisor (1 + g + ... + g^(m-1))(1 - g) = 0",
                &format!("witness support {}", witness.len()),
            ));
        }
        GringCommand::Probe { file, radius } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("cannot read `{}`", file.display()))?;
            let alpha = files::parse_formal_sum(&text)
                .with_context(|| format!("formal sum `{}`", file.display()))?;
            let radius = radius.unwrap_or(cfg.ring_radius);
            let probe = zero_divisor_probe(&alpha, radius).map_err(|e| anyhow!("{e}"))?;
            if let Some(w) = &probe.witness {
                println!("kernel witness:");
                print!("{}", w.serialize());
            }
            let status = if probe.witness.is_some() {
                CheckStatus::Fail
            } else if probe.min_singular_value > DEFAULT_SPECTRAL_THRESHOLD {
                CheckStatus::Pass
            } else {
                CheckStatus::Inconclusive
            };
            report.push(
                CheckRecord::lower_bound(
                    "gring",
                    "zero-divisor-probe",
                    probe.min_singular_value,
                    DEFAULT_SPECTRAL_THRESHOLD,
                    Provenance::Derived,
                    "smallest singular value of the truncated convolution operator",
                    &format!("{} terms, radius {radius}", alpha.len()),
                )
                .with_status(status),
            );
        }
    }
    report.sort();
    Ok(report)
}
