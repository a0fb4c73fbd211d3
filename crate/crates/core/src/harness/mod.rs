//! Configuration, seeded instance generation, sweeps, record emission and
//! the command line.

mod cli;
mod config;
mod record;
mod rng;
mod run;

pub use cli::{execute, render, Cli, Command, Flags};
pub use config::{Config, Format, MethodChoice, Shape, SweepKind, TSpec};
pub use record::{from_csv, from_structured, to_csv, to_structured, tripwire, ExperimentRecord, CSV_HEADER};
pub use rng::{instance_rng, instance_seed};
pub use run::{
    generate_instance, random_family_ls, run_certify, run_count, run_energy, run_family, sweep, verify_file, Instance,
};
