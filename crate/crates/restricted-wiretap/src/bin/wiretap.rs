//! `wiretap`: key rates, bounds and sweeps for the restricted wiretap channel.
//!
//! Exit status: 0 on success, 1 for usage errors, 2 for numeric failures.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use restricted_wiretap::bb84::{self, Bb84Params, Eve, MuSearch};
use restricted_wiretap::sweep::{self, SweepSpec, OUT_DIR_ENV};
use restricted_wiretap::{bounds, rates, verify, Error};

#[derive(Parser)]
#[command(name = "wiretap", version, about = "Secret-key rates under restricted eavesdropping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Direct, reverse and CV-QKD rates at one point (bits per mode)
    Rate(RateArgs),
    /// Relative-entropy upper bound and unrestricted capacity
    Bound(ChannelArgs),
    /// Decoy-state BB84 rates (bits per second)
    Bb84(Bb84Args),
    /// Run a preset or a key=value spec file and write CSV
    Sweep(SweepArgs),
    /// Run the numbered self-checks
    Verify {
        /// Run only this check
        #[arg(long)]
        criterion: Option<u8>,
    },
}

#[derive(Args)]
struct ChannelArgs {
    /// Alice-to-Bob transmissivity
    #[arg(long)]
    eta: f64,
    /// Fraction of the lost light Eve collects
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// Mean photon number of Eve's injected thermal noise
    #[arg(long, default_value_t = 0.0)]
    ne: f64,
}

#[derive(Args)]
struct RateArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Signal mean photon number; `inf` for the asymptotic rate
    #[arg(long, default_value = "inf")]
    mu: f64,
    /// Reconciliation efficiency for the CV-QKD rate
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
}

#[derive(Args)]
struct Bb84Args {
    /// Overall Alice-to-Bob transmissivity
    #[arg(long, default_value_t = 0.005)]
    eta: f64,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// Signal mean photon number; omit or `inf` to optimize
    #[arg(long, default_value = "inf")]
    mu: f64,
    /// Dark counts per detector per pulse
    #[arg(long, default_value_t = 1e-4)]
    nd: f64,
    /// Reconciliation penalty
    #[arg(long, default_value_t = 1.1)]
    fl: f64,
    /// Pulse rate in Hz
    #[arg(long, default_value_t = 1e9)]
    rate: f64,
}

#[derive(Args)]
struct SweepArgs {
    /// Preset name or path to a spec file
    spec: Option<String>,
    /// Preset name (alternative to the positional argument)
    #[arg(long, conflicts_with = "spec")]
    preset: Option<String>,
    /// Output CSV; defaults to $WIRETAP_OUT_DIR/<name>.csv, else stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the timestamp line so reruns are byte-identical
    #[arg(long)]
    no_timestamp: bool,
    /// Also write a gnuplot script next to the CSV
    #[arg(long)]
    plot: bool,
    /// List presets and exit
    #[arg(long)]
    list: bool,
    /// Print the resolved spec instead of running it
    #[arg(long)]
    print_spec: bool,
    /// Override: a value or grid, e.g. `0.6` or `lin:0.1:0.9:9`
    #[arg(long)]
    eta: Option<String>,
    #[arg(long)]
    kappa: Option<String>,
    #[arg(long)]
    ne: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    #[arg(long)]
    beta: Option<String>,
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { .. } | Error::Spec(_) | Error::UnknownMode(_) => Failure::Usage(e.to_string()),
            e => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Rate(a) => rate(a),
        Command::Bound(a) => bound(a),
        Command::Bb84(a) => bb84_cmd(a),
        Command::Sweep(a) => sweep_cmd(a),
        Command::Verify { criterion } => verify_cmd(criterion),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("numeric failure: {m}");
            ExitCode::from(2)
        }
    }
}

fn rate(a: RateArgs) -> Result<(), Failure> {
    let ChannelArgs { eta, kappa, ne } = a.channel;
    let dr = rates::dr_rate(eta, kappa, ne, a.mu)?;
    let rr = rates::rr_rate(eta, kappa, ne, a.mu)?;
    println!("dr={}", sweep::fmt_g(dr.raw));
    println!("rr={}", sweep::fmt_g(rr.raw));
    if a.mu.is_finite() {
        let p = restricted_wiretap::channel::ChannelParams::new(eta, kappa, ne, a.mu)?;
        println!("ccq={}", sweep::fmt_g(rates::ccq_rate(p, a.beta)?.raw));
    }
    Ok(())
}

fn bound(a: ChannelArgs) -> Result<(), Failure> {
    let ub = bounds::er_upper_bound(a.eta, a.kappa, a.ne)?;
    println!("er_ub={}", sweep::fmt_g(ub));
    println!("plob={}", sweep::fmt_g(rates::plob(a.eta)?));
    Ok(())
}

fn bb84_cmd(a: Bb84Args) -> Result<(), Failure> {
    let eta_e = bb84::eve_transmissivity(a.kappa, a.eta, 1.0)?;
    let mu = if a.mu.is_finite() { a.mu } else { 1.0 };
    let p = Bb84Params::new(a.rate, a.eta, eta_e, a.nd, a.fl, mu)?;
    for (name, eve) in [("unrestricted", Eve::Unrestricted), ("restricted", Eve::Restricted)] {
        if a.mu.is_finite() {
            println!("{name}={}", sweep::fmt_g(eve.rate(&p)?));
        } else {
            let o = bb84::optimize_mu(&p, eve, MuSearch::default())?;
            println!("{name}={} mu={}", sweep::fmt_g(o.skr), sweep::fmt_g(o.mu));
        }
    }
    Ok(())
}

fn sweep_cmd(a: SweepArgs) -> Result<(), Failure> {
    if a.list {
        for name in sweep::preset_names() {
            println!("{name}");
        }
        return Ok(());
    }
    let source = a
        .preset
        .or(a.spec)
        .ok_or_else(|| Failure::Usage("sweep needs a preset name or spec file".into()))?;
    let mut spec: SweepSpec = sweep::load_spec(&source)?;
    for (key, value) in [
        ("eta", &a.eta),
        ("kappa", &a.kappa),
        ("ne", &a.ne),
        ("mu", &a.mu),
        ("beta", &a.beta),
    ] {
        if let Some(v) = value {
            spec.set(key, v)?;
        }
    }
    spec.plot |= a.plot;
    spec.validate()?;
    if a.print_spec {
        print!("{spec}");
        return Ok(());
    }
    let path = a.out.or_else(|| spec.output.clone()).or_else(|| {
        std::env::var_os(OUT_DIR_ENV).map(|d| PathBuf::from(d).join(format!("{}.csv", spec.name)))
    });
    let result = sweep::run_sweep(&spec)?;
    match &path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            sweep::write_csv(&result, File::create(p)?, !a.no_timestamp)?;
            if spec.plot {
                let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                std::fs::write(p.with_extension("gp"), sweep::gnuplot_script(&result, &name))?;
            }
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            sweep::write_csv(&result, &mut lock, !a.no_timestamp)?;
            lock.flush()?;
        }
    }
    eprintln!(
        "{}: {} rows, {} with errors{}",
        spec.name,
        result.rows.len(),
        result.error_rows(),
        path.map(|p| format!(", written to {}", p.display())).unwrap_or_default()
    );
    Ok(())
}

fn verify_cmd(criterion: Option<u8>) -> Result<(), Failure> {
    let reports = match criterion {
        Some(id) => vec![verify::run_criterion(id).ok_or_else(|| {
            Failure::Usage(format!("criterion must be 1..={}", verify::criterion_count()))
        })?],
        None => verify::run_all(),
    };
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(Failure::Numeric(format!("{failed} check(s) failed")));
    }
    Ok(())
}
