use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundKind, BoundReport};
use crate::error::{Error, Result};

/// One row of experiment output. Field order is the CSV column order.
///
/// `applicable` and `passed` hold `name=0|1` entries separated by `;`, one
/// per attached check. A failed instance has no count and
/// `passed = "error: <reason>"`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub p: u64,
    pub t: u64,
    pub g1: Option<u64>,
    pub g2: Option<u64>,
    pub poly: String,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub h: Option<u64>,
    pub q: Option<u32>,
    pub method: Option<String>,
    pub count: Option<String>,
    pub bound_th1: Option<String>,
    pub bound_thsr: Option<String>,
    pub bound_energy: Option<String>,
    pub bound_hk: Option<String>,
    pub bound_cz: Option<String>,
    pub applicable: String,
    pub passed: String,
    pub cert_bound: Option<String>,
    pub seed: Option<u64>,
    pub wall_ms: Option<u64>,
}

pub const CSV_HEADER: &str = "p,t,g1,g2,poly,m,n,h,q,method,count,bound_th1,bound_thsr,bound_energy,bound_hk,bound_cz,applicable,passed,cert_bound,seed,wall_ms";

const ERROR_PREFIX: &str = "error: ";

fn push_flag(list: &mut String, name: &str, v: bool) {
    if !list.is_empty() {
        list.push(';');
    }
    list.push_str(name);
    list.push_str(if v { "=1" } else { "=0" });
}

fn parse_flags(list: &str) -> Vec<(&str, bool)> {
    list.split(';')
        .filter_map(|e| e.split_once('='))
        .map(|(k, v)| (k, v == "1"))
        .collect()
}

impl ExperimentRecord {
    /// Adds a named check with its applicability and outcome.
    pub fn attach(&mut self, name: &str, applicable: bool, passed: bool) {
        push_flag(&mut self.applicable, name, applicable);
        push_flag(&mut self.passed, name, passed);
    }

    /// Records `report` against `count`: the value goes to the column of
    /// its kind and the exact comparison to the flags.
    pub fn attach_bound(&mut self, report: &BoundReport, count: &BigUint) {
        let value = Some(report.decimal(3));
        let slot = match report.kind {
            BoundKind::Th1 => &mut self.bound_th1,
            BoundKind::ThSr => &mut self.bound_thsr,
            BoundKind::Energy | BoundKind::Cor16 | BoundKind::Cor17 => &mut self.bound_energy,
            BoundKind::HeathBrownKonyagin => &mut self.bound_hk,
            BoundKind::CorvajaZannier => &mut self.bound_cz,
        };
        if slot.is_none() {
            *slot = value;
        }
        self.attach(&report.kind.to_string(), report.applicable, report.admits(count));
    }

    pub fn fail(&mut self, e: &Error) {
        self.count = None;
        self.passed = format!("{ERROR_PREFIX}{e}");
    }

    pub fn failure(&self) -> Option<&str> {
        self.passed.strip_prefix(ERROR_PREFIX)
    }

    /// `(name, applicable, passed)` for every attached check.
    pub fn flags(&self) -> Vec<(String, bool, bool)> {
        if self.failure().is_some() {
            return Vec::new();
        }
        let passed = parse_flags(&self.passed);
        parse_flags(&self.applicable)
            .into_iter()
            .map(|(k, a)| {
                let ok = passed.iter().find(|(n, _)| *n == k).is_none_or(|&(_, v)| v);
                (k.to_string(), a, ok)
            })
            .collect()
    }

    pub fn flag(&self, name: &str) -> Option<(bool, bool)> {
        self.flags().into_iter().find(|(n, _, _)| n == name).map(|(_, a, p)| (a, p))
    }

    /// Checks that apply and failed.
    pub fn violations(&self) -> Vec<String> {
        self.flags().into_iter().filter(|(_, a, p)| *a && !p).map(|(n, _, _)| n).collect()
    }

    pub fn count_value(&self) -> Option<BigUint> {
        self.count.as_deref().and_then(|c| c.parse().ok())
    }
}

/// Number of records with an applicable check that failed.
pub fn tripwire(records: &[ExperimentRecord]) -> usize {
    records.iter().filter(|r| !r.violations().is_empty()).count()
}

pub fn to_csv(records: &[ExperimentRecord]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let body = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    out.push_str(&String::from_utf8(body).map_err(|e| Error::Io(e.to_string()))?);
    Ok(out)
}

pub fn from_csv(text: &str) -> Result<Vec<ExperimentRecord>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| Error::Io(e.to_string()))?;
    if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
        return Err(Error::Config {
            key: "csv header".into(),
            msg: "unexpected columns".into(),
        });
    }
    r.deserialize().map(|row| row.map_err(|e| Error::Io(e.to_string()))).collect()
}

pub fn to_structured(records: &[ExperimentRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

pub fn from_structured(text: &str) -> Result<Vec<ExperimentRecord>> {
    serde_json::from_str(text).map_err(|e| Error::Io(e.to_string()))
}
