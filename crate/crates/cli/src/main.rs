use std::path::PathBuf;
use std::process::ExitCode;

use brocard::Direction;
use brocard_cli::commands::{continuous_table, family_table, orbit_table};
use brocard_cli::figures::{render, FigureName, FigureParams};
use brocard_cli::{emit, verify, CliError, Mutation, OutputFormat, RunConfig};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "brocard",
    version,
    about = "Brocard porisms: invariant checks, orbit and family tables, figures"
)]
struct Cli {
    /// Scene-level tolerance for checks and figures.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Tolerance for primitive identities.
    #[arg(long, global = true, default_value_t = 1e-12)]
    primitive_tolerance: f64,
    /// Sample count (family rows, continuous rows, sampled checks).
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format; tables default to csv, figures to svg.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Read angle arguments in degrees.
    #[arg(long, global = true)]
    degrees: bool,
    /// Negative control: run with a deliberately corrupted step map.
    #[arg(long, global = true, value_enum, hide = true)]
    mutate: Option<MutateArg>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutateArg {
    /// Use (u² − 3)/(2u) for the forward u-map.
    FlipStepSign,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Forward,
    Back,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fig {
    Fig2,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
}

#[derive(Subcommand)]
enum Command {
    /// Run every named invariant check; exit 1 if any fails.
    #[command(
        after_help = "Columns: check_id, paper_anchor, max_residual, tolerance, passed, samples_used, note"
    )]
    Verify {
        /// Only run checks whose id starts with this prefix, e.g. thm1. or prop14
        #[arg(long)]
        filter: Option<String>,
    },
    /// Iterate the porism map from (R0, u0).
    #[command(
        after_help = "Columns: generation, R, u, u_error (|u - sqrt 3|), x3_x, x3_y, omega1_x, omega1_y, \
                            omega2_x, omega2_y, k_center_x, k_center_y, k_radius (root frame)"
    )]
    Orbit {
        #[arg(long = "R0", default_value_t = 1.0)]
        r0: f64,
        #[arg(long, default_value_t = 3.0)]
        u0: f64,
        #[arg(long, default_value_t = 6)]
        steps: usize,
        #[arg(long, value_enum, default_value = "forward")]
        direction: Dir,
    },
    /// Sample members of the porism through the isosceles triangle (d, h).
    #[command(
        after_help = "Columns: t, ax, ay, bx, by, cx, cy, closure_residual_max, brocard_angle_deviation"
    )]
    Family {
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        #[arg(long, default_value_t = 2.0)]
        h: f64,
    },
    /// Sample the continuous family on [t-min, t-max] within (0, pi/3].
    #[command(
        after_help = "Columns: t, a, b, eccentricity, R_t, x3_y, k_center_y, k_radius, xi1_x, xi1_y, \
                            envelope_residual (NaN past arccos(3/5))"
    )]
    Continuous {
        #[arg(long, allow_hyphen_values = true)]
        t_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        t_max: f64,
    },
    /// Write a figure as SVG.
    Figure {
        #[arg(value_enum)]
        name: Fig,
        /// Isosceles half-base (fig2).
        #[arg(long, default_value_t = 1.0)]
        d: f64,
        /// Isosceles height (fig2).
        #[arg(long, default_value_t = 2.0)]
        h: f64,
        /// Root circumradius (fig4, fig5).
        #[arg(long = "R0", default_value_t = 1.0)]
        r0: f64,
        /// Root cot of the Brocard angle (fig4, fig5).
        #[arg(long, default_value_t = 3.0)]
        u0: f64,
        /// Vertex parameter of the drawn member (fig2, fig4).
        #[arg(long, default_value_t = 0.7, allow_hyphen_values = true)]
        t: f64,
        /// Iterations drawn (fig4, fig5).
        #[arg(long, default_value_t = 3)]
        generations: usize,
        /// Family members drawn (fig6).
        #[arg(long, default_value_t = 8)]
        members: usize,
    },
}

fn angle(cli: &Cli, x: f64) -> f64 {
    if cli.degrees {
        x.to_radians()
    } else {
        x
    }
}

fn config(cli: &Cli, default: OutputFormat) -> RunConfig {
    RunConfig {
        tolerance_scene: cli.tolerance,
        tolerance_primitive: cli.primitive_tolerance,
        samples: cli.samples,
        seed: cli.seed,
        output_format: match cli.format {
            None => default,
            Some(Format::Csv) => OutputFormat::Csv,
            Some(Format::Json) => OutputFormat::Json,
            Some(Format::Svg) => OutputFormat::Svg,
        },
        output_path: cli.out.clone(),
        mutation: match cli.mutate {
            None => Mutation::None,
            Some(MutateArg::FlipStepSign) => Mutation::FlipStepSign,
        },
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let table_cfg = config(cli, OutputFormat::Csv);
    table_cfg.validate()?;
    let write_table = |t: brocard_cli::table::Table| -> Result<ExitCode, CliError> {
        let mut buf = Vec::new();
        t.write(table_cfg.output_format, &mut buf)?;
        emit(&table_cfg, &buf)?;
        Ok(ExitCode::SUCCESS)
    };
    match &cli.command {
        Command::Verify { filter } => {
            let (buf, reports) = verify(&table_cfg, filter.as_deref())?;
            emit(&table_cfg, &buf)?;
            let passed = reports.iter().filter(|r| r.passed).count();
            eprintln!("{passed} of {} checks passed", reports.len());
            for r in reports.iter().filter(|r| !r.passed) {
                eprintln!(
                    "FAILED {}: residual {:e} > {:e}{}",
                    r.check_id,
                    r.max_residual,
                    r.tolerance,
                    r.note
                        .as_deref()
                        .map(|n| format!(" ({n})"))
                        .unwrap_or_default()
                );
            }
            Ok(if passed == reports.len() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Orbit {
            r0,
            u0,
            steps,
            direction,
        } => {
            let dir = match direction {
                Dir::Forward => Direction::Forward,
                Dir::Back => Direction::Backward,
            };
            write_table(orbit_table(*r0, *u0, *steps, dir)?)
        }
        Command::Family { d, h } => {
            let (t, notes) = family_table(*d, *h, cli.samples)?;
            for n in notes {
                eprintln!("note: {n}");
            }
            write_table(t)
        }
        Command::Continuous { t_min, t_max } => write_table(continuous_table(
            angle(cli, *t_min),
            angle(cli, *t_max),
            cli.samples,
        )?),
        Command::Figure {
            name,
            d,
            h,
            r0,
            u0,
            t,
            generations,
            members,
        } => {
            let cfg = config(cli, OutputFormat::Svg);
            if cfg.output_format != OutputFormat::Svg {
                return Err(CliError::Usage("figures are written as svg".into()));
            }
            let name = match name {
                Fig::Fig2 => FigureName::Fig2,
                Fig::Fig4 => FigureName::Fig4,
                Fig::Fig5 => FigureName::Fig5,
                Fig::Fig6 => FigureName::Fig6,
                Fig::Fig7 => FigureName::Fig7,
            };
            let params = FigureParams {
                d: *d,
                h: *h,
                r0: *r0,
                u0: *u0,
                t: angle(cli, *t),
                generations: *generations,
                members: *members,
                tolerance: cli.tolerance,
            };
            emit(&cfg, render(name, &params)?.as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
