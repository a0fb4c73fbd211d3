use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::config::{Config, Format, MethodChoice, Shape, SweepKind, TSpec};
use super::record::{to_csv, to_structured, tripwire, ExperimentRecord};
use super::run::{run_certify, run_count, run_energy, run_family, sweep, verify_file};
use crate::error::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "coset-curves", version, about = "Point counts on coset products, certificates and energy bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count points of P = 0 on g1 G x g2 G.
    Count(Flags),
    /// Polynomial energies E_P^q(G), or E(f(G), g(G)).
    Energy(Flags),
    /// Total count of a family P = l_i for homogeneous P.
    Family(Flags),
    /// Build and verify an auxiliary-polynomial certificate.
    Certify(Flags),
    /// Run seeded random instances.
    Sweep(Flags),
    /// Re-check a serialized certificate.
    Verify {
        /// Certificate file written by `certify --cert-out`.
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Args, Debug, Default, Clone)]
pub struct Flags {
    /// TOML file with the same keys; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u64>,
    /// Subgroup order, or `all` for every divisor of p - 1.
    #[arg(long, value_parser = parse_with::<TSpec>)]
    pub t: Option<TSpec>,
    #[arg(long)]
    pub t_min: Option<u64>,
    #[arg(long)]
    pub t_max: Option<u64>,
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long)]
    pub g1: Option<u64>,
    #[arg(long)]
    pub g2: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub q: Option<Vec<u32>>,
    #[arg(long)]
    pub h: Option<u64>,
    #[arg(long)]
    pub gamma: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub ls: Option<Vec<u64>>,
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub chi: Option<i64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_parser = parse_with::<MethodChoice>)]
    pub method: Option<MethodChoice>,
    #[arg(long)]
    pub certify: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_parser = parse_with::<Format>)]
    pub format: Option<Format>,
    #[arg(long)]
    pub cert_out: Option<PathBuf>,
    /// Record wall-clock time per row.
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_parser = parse_with::<SweepKind>)]
    pub kind: Option<SweepKind>,
    #[arg(long)]
    pub instances: Option<usize>,
    #[arg(long)]
    pub p_min: Option<u64>,
    #[arg(long)]
    pub p_max: Option<u64>,
    #[arg(long)]
    pub deg_x: Option<u32>,
    #[arg(long)]
    pub deg_y: Option<u32>,
    #[arg(long, value_parser = parse_with::<Shape>)]
    pub shape: Option<Shape>,
    #[arg(long)]
    pub threads: Option<usize>,
}

fn parse_with<T: std::str::FromStr<Err = Error>>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Flags {
    /// Config file values overlaid with the flags that were given.
    pub fn resolve(&self) -> Result<Config> {
        let file = match &self.config {
            Some(path) => Config::from_file(path)?,
            None => Config::default(),
        };
        let top = Config {
            p: self.p,
            t: self.t,
            t_min: self.t_min,
            t_max: self.t_max,
            poly: self.poly.clone(),
            g1: self.g1,
            g2: self.g2,
            q: self.q.clone(),
            h: self.h,
            gamma: self.gamma,
            ls: self.ls.clone(),
            f: self.f.clone(),
            g: self.g.clone(),
            chi: self.chi,
            seed: self.seed,
            method: self.method,
            certify: self.certify.then_some(true),
            out: self.out.clone(),
            format: self.format,
            cert_out: self.cert_out.clone(),
            timing: self.timing.then_some(true),
            kind: self.kind,
            instances: self.instances,
            p_min: self.p_min,
            p_max: self.p_max,
            deg_x: self.deg_x,
            deg_y: self.deg_y,
            shape: self.shape,
            threads: self.threads,
        };
        Ok(file.merged(top))
    }
}

/// Serialized records in the configured format.
pub fn render(cfg: &Config, records: &[ExperimentRecord]) -> Result<String> {
    match cfg.format.unwrap_or_default() {
        Format::Csv => to_csv(records),
        Format::Structured => Ok(to_structured(records)),
    }
}

fn emit(cfg: &Config, records: &[ExperimentRecord]) -> Result<()> {
    let text = render(cfg, records)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Runs a parsed command line and returns the process exit code: 0 on
/// success, 1 on errors, 2 when an applicable check failed.
pub fn execute(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Verify { cert } => {
            return match std::fs::read_to_string(&cert).map_err(Error::from).and_then(|t| verify_file(&t)) {
                Ok((c, ok, count)) => {
                    println!("p={} t={} poly={} count={} bound={} verified={}", c.p, c.t, c.poly, count, c.bound, ok);
                    if ok {
                        0
                    } else {
                        2
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            };
        }
        Command::Count(f) => f.resolve().and_then(|c| run_count(&c).map(|r| (c, r))),
        Command::Energy(f) => f.resolve().and_then(|c| run_energy(&c).map(|r| (c, r))),
        Command::Family(f) => f.resolve().and_then(|c| run_family(&c).map(|r| (c, r))),
        Command::Certify(f) => f.resolve().and_then(|c| run_certify(&c).map(|r| (c, r))),
        Command::Sweep(f) => f.resolve().and_then(|c| sweep(&c).map(|r| (c, r))),
    };
    let (cfg, records) = match result {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if let Err(e) = emit(&cfg, &records) {
        eprintln!("error: {e}");
        return 1;
    }
    let bad = tripwire(&records);
    if bad > 0 {
        eprintln!("{bad} record(s) violate an applicable bound or check");
        return 2;
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flags() {
        let cli = Cli::try_parse_from([
            "coset-curves", "count", "--p", "31", "--t", "all", "--poly", "x - y + 1", "--method", "both", "--q", "1,2",
        ])
        .unwrap();
        let Command::Count(f) = cli.command else { panic!() };
        let c = f.resolve().unwrap();
        assert_eq!(c.t, Some(TSpec::All));
        assert_eq!(c.method, Some(MethodChoice::Both));
        assert_eq!(c.q, Some(vec![1, 2]));
        assert!(Cli::try_parse_from(["coset-curves", "count", "--method", "fast"]).is_err());
    }
}
