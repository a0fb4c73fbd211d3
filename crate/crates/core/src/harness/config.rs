use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::counting::Method;
use crate::error::{Error, Result};

/// Which counting methods a run uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Naive,
    #[default]
    Rootfind,
    Both,
}

impl MethodChoice {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodChoice::Naive => vec![Method::Naive],
            MethodChoice::Rootfind => vec![Method::RootFind],
            MethodChoice::Both => vec![Method::Naive, Method::RootFind],
        }
    }
}

impl FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(MethodChoice::Naive),
            "rootfind" => Ok(MethodChoice::Rootfind),
            "both" => Ok(MethodChoice::Both),
            _ => Err(Error::Config {
                key: "method".into(),
                msg: format!("expected naive|rootfind|both, got `{s}`"),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Structured,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "structured" | "json" => Ok(Format::Structured),
            _ => Err(Error::Config {
                key: "format".into(),
                msg: format!("expected csv|structured, got `{s}`"),
            }),
        }
    }
}

/// A subgroup order, or every divisor of `p - 1` in `[t_min, t_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TSpec {
    Order(u64),
    #[serde(with = "all_tag")]
    All,
}

mod all_tag {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("all")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "all" {
            Ok(())
        } else {
            Err(de::Error::custom(format!("expected an integer or \"all\", got `{s}`")))
        }
    }
}

impl FromStr for TSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(TSpec::All);
        }
        s.parse().map(TSpec::Order).map_err(|_| Error::Config {
            key: "t".into(),
            msg: format!("expected an integer or `all`, got `{s}`"),
        })
    }
}

impl fmt::Display for TSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TSpec::Order(t) => write!(f, "{t}"),
            TSpec::All => f.write_str("all"),
        }
    }
}

/// What a sweep generates per instance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    #[default]
    Count,
    Energy,
    Family,
    Certify,
}

impl FromStr for SweepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "count" => Ok(SweepKind::Count),
            "energy" => Ok(SweepKind::Energy),
            "family" => Ok(SweepKind::Family),
            "certify" => Ok(SweepKind::Certify),
            _ => Err(Error::Config {
                key: "kind".into(),
                msg: format!("expected count|energy|family|certify, got `{s}`"),
            }),
        }
    }
}

/// Random polynomial shape for sweeps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// Dense with random bidegree up to `(deg_x, deg_y)`.
    #[default]
    Random,
    /// `x - y + mu`, `mu != 0`.
    Linear,
    /// Homogeneous of degree `deg_y`.
    Homogeneous,
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Shape::Random),
            "linear" => Ok(Shape::Linear),
            "homogeneous" => Ok(Shape::Homogeneous),
            _ => Err(Error::Config {
                key: "shape".into(),
                msg: format!("expected random|linear|homogeneous, got `{s}`"),
            }),
        }
    }
}

/// Flat run configuration. Every key is optional; command-line flags
/// override values read from a file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub p: Option<u64>,
    pub t: Option<TSpec>,
    pub t_min: Option<u64>,
    pub t_max: Option<u64>,
    pub poly: Option<String>,
    pub g1: Option<u64>,
    pub g2: Option<u64>,
    pub q: Option<Vec<u32>>,
    pub h: Option<u64>,
    pub gamma: Option<u64>,
    pub ls: Option<Vec<u64>>,
    /// Univariate `f` and `g` for the composed energy `E(f(G), g(G))`.
    pub f: Option<String>,
    pub g: Option<String>,
    /// Euler characteristic for the Corvaja-Zannier comparator.
    pub chi: Option<i64>,
    pub seed: Option<u64>,
    pub method: Option<MethodChoice>,
    pub certify: Option<bool>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub cert_out: Option<PathBuf>,
    /// Fill `wall_ms`; off by default so output is reproducible.
    pub timing: Option<bool>,
    pub kind: Option<SweepKind>,
    pub instances: Option<usize>,
    pub p_min: Option<u64>,
    pub p_max: Option<u64>,
    pub deg_x: Option<u32>,
    pub deg_y: Option<u32>,
    pub shape: Option<Shape>,
    pub threads: Option<usize>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($f:ident),*) => {
        $( if $top.$f.is_some() { $base.$f = $top.$f; } )*
    };
}

impl Config {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let de = toml::Deserializer::parse(text).map_err(|e| Error::Config {
            key: String::new(),
            msg: e.to_string(),
        })?;
        serde_path_to_error::deserialize(de).map_err(|e| Error::Config {
            key: e.path().to_string(),
            msg: e.inner().to_string(),
        })
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    /// Values set in `top` win.
    pub fn merged(mut self, top: Config) -> Config {
        overlay!(self, top; p, t, t_min, t_max, poly, g1, g2, q, h, gamma, ls, f, g, chi, seed,
            method, certify, out, format, cert_out, timing, kind, instances, p_min, p_max,
            deg_x, deg_y, shape, threads);
        self
    }

    pub fn require_p(&self) -> Result<u64> {
        self.p.ok_or_else(|| missing("p"))
    }

    pub fn require_poly(&self) -> Result<&str> {
        self.poly.as_deref().ok_or_else(|| missing("poly"))
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

pub(crate) fn missing(key: &str) -> Error {
    Error::Config {
        key: key.into(),
        msg: "required but not set".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reports_paths() {
        let c = Config::from_toml_str("p = 31\nt = \"all\"\nq = [1, 2]\nmethod = \"both\"\n").unwrap();
        assert_eq!(c.p, Some(31));
        assert_eq!(c.t, Some(TSpec::All));
        assert_eq!(c.method, Some(MethodChoice::Both));
        let c = Config::from_toml_str("t = 12").unwrap();
        assert_eq!(c.t, Some(TSpec::Order(12)));

        let e = Config::from_toml_str("p = 31\nq = [1, \"x\"]\n").unwrap_err();
        assert!(matches!(e, Error::Config { ref key, .. } if key == "q[1]"), "{e:?}");
        let e = Config::from_toml_str("method = \"fast\"").unwrap_err();
        assert!(matches!(e, Error::Config { ref key, .. } if key == "method"), "{e:?}");
        assert!(Config::from_toml_str("bogus = 1").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = Config::from_toml_str("p = 31\nseed = 4").unwrap();
        let flags = Config {
            p: Some(37),
            ..Config::default()
        };
        let c = file.merged(flags);
        assert_eq!((c.p, c.seed), (Some(37), Some(4)));
    }
}
