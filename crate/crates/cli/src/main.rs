//! `nbp`: exact Nielsen-type periodic invariants of fiberwise torus maps
//! `f(x, y) = (x^r y^s, y)` over the circle.

use clap::{Args, Parser, Subcommand, ValueEnum};

use nbp_cli::report::{
    build_hper_report, build_periodic_report, build_summary_table, build_verify_report,
};
use nbp_cli::{render, Limits};
use nbp_core::reidemeister::FiberTorusMap;

#[derive(Parser)]
#[command(
    name = "nbp",
    version,
    about = "Exact Reidemeister/Nielsen periodic invariants of fiberwise torus maps",
    long_about = "Computes, in exact arbitrary-precision arithmetic, the fiberwise \
Reidemeister and Nielsen data of the torus maps f(x, y) = (x^r y^s, y) over the \
circle: class counts per iterate, orbit structure, irreducible-orbit counts, the \
divisor-lattice numbers A_n, the periodic number n*O_n, and an independent \
geometric count of fixed-set components, with every cross-check reported."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct MapArgs {
    /// Fiber degree r of the map (x, y) -> (x^r y^s, y).
    #[arg(long = "r", allow_hyphen_values = true)]
    r: i64,
    /// Shear exponent s of the map (x, y) -> (x^r y^s, y).
    #[arg(long = "s", allow_hyphen_values = true)]
    s: i64,
    /// Orbit-enumeration cap: largest class-set modulus walked residue by residue.
    #[arg(long, default_value_t = nbp_core::DEFAULT_ENUMERATION_CAP)]
    cap: u64,
}

impl MapArgs {
    fn map(&self) -> FiberTorusMap {
        FiberTorusMap::new(self.r, self.s)
    }

    fn limits(&self) -> Limits {
        Limits::with_cap(self.cap)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of one iterate level: divisor-lattice table, counts,
    /// torality, and every consistency flag.
    Analyze {
        #[command(flatten)]
        map: MapArgs,
        /// Iterate level to analyze.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// One summary row per level n = 1..=max-n.
    Table {
        #[command(flatten)]
        map: MapArgs,
        /// Largest level to tabulate.
        #[arg(long = "max-n", value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Certified minimal periods: levels n with a nonzero periodic number.
    Hper {
        #[command(flatten)]
        map: MapArgs,
        /// Largest level to certify.
        #[arg(long = "max-n", value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
    },
    /// Run the full cross-module invariant suite for n = 1..=max-n.
    Verify {
        #[command(flatten)]
        map: MapArgs,
        /// Largest level to check.
        #[arg(long = "max-n", value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        /// Treat mathematical findings as failures (exit 1).
        #[arg(long)]
        strict: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze { map, n, format } => {
            let report = build_periodic_report(map.map(), n, map.limits());
            let rendered = match format {
                Format::Table => render::periodic_report_table(&report),
                Format::Json => render::periodic_report_json(&report),
                Format::Csv => render::periodic_report_csv(&report),
            };
            print!("{rendered}");
            if report.resource_limited() {
                3
            } else {
                0
            }
        }
        Command::Table { map, max_n, format } => {
            let table = build_summary_table(map.map(), max_n, map.limits());
            let rendered = match format {
                Format::Table => render::summary_table_text(&table),
                Format::Json => render::summary_table_json(&table),
                Format::Csv => render::summary_table_csv(&table),
            };
            print!("{rendered}");
            if table.resource_limited() {
                3
            } else {
                0
            }
        }
        Command::Hper { map, max_n } => {
            let report = build_hper_report(map.map(), max_n, map.limits());
            print!("{}", render::hper_text(&report));
            if report.resource_limited() {
                3
            } else {
                0
            }
        }
        Command::Verify {
            map,
            max_n,
            strict,
        } => {
            let report = build_verify_report(map.map(), max_n, map.limits());
            print!("{}", render::verify_text(&report));
            if report.violation_count() > 0 || (strict && report.finding_count() > 0) {
                1
            } else if report.resource_limited() {
                3
            } else {
                0
            }
        }
    };
    std::process::exit(code);
}
