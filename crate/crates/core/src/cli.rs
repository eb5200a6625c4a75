//! Batch commands behind the `qpw` binary.
//!
//! Each command reads its inputs from files, returns a serialisable report
//! carrying a [`RunManifest`], and maps to an exit code: 0 when every bound
//! check passed, 1 when one failed and 2 when the input was unusable.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::bounds::{tree_bound, ConstraintViolation};
use crate::code::{girth, min_distance_bruteforce, TannerGraph};
use crate::error::{Error, Result};
use crate::field::DEFAULT_ENUMERATION_LIMIT;
use crate::search::{estimate_min_pseudoweight, SearchConfig, SearchReport, SearchStatus};
use crate::weights::{
    awgn_2d_terms, decoder_prefers, distance_qsc, weight_qsc, witness_error_vector, Channel,
    ChannelWeight, Constellation, Preference, Pseudocodeword, QscWeightDetail, ReceivedVector,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

/// Everything needed to rerun a command and get the same output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub inputs: Vec<String>,
    pub q: Option<u32>,
    pub seed: Option<u64>,
    pub config: Value,
    pub tool_version: String,
    pub output: Option<String>,
}

impl RunManifest {
    pub fn new(
        subcommand: &str,
        inputs: &[&Path],
        q: Option<u32>,
        seed: Option<u64>,
        config: Value,
    ) -> Self {
        Self {
            subcommand: subcommand.into(),
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            q,
            seed,
            config,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            output: None,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Loads a graph from an alist file, or from the JSON mirror when the
/// extension is `.json`.
pub fn load_graph(path: &Path, q: u32) -> Result<TannerGraph> {
    let text = read(path)?;
    if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
    {
        TannerGraph::from_json(&text, q)
    } else {
        TannerGraph::from_alist(&text, q)
    }
}

pub fn load_pseudocodeword(path: &Path) -> Result<Pseudocodeword> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::InvalidPseudocodeword(e.to_string()))
}

pub fn load_constellation(path: &Path) -> Result<Constellation> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Error::InvalidConfig(format!("constellation: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzeReport {
    pub manifest: RunManifest,
    pub n: usize,
    pub r: usize,
    pub q: u32,
    pub girth: Option<usize>,
    pub d: usize,
    pub left_regular: bool,
    pub tree_bound: Option<u64>,
    pub d_min: Option<usize>,
    pub d_min_status: String,
    /// `d_min ≥ T(d, g)`; absent when either side is undefined.
    pub bound_satisfied: Option<bool>,
}

impl AnalyzeReport {
    pub fn exit_code(&self) -> i32 {
        if self.bound_satisfied == Some(false) {
            EXIT_VIOLATION
        } else {
            EXIT_OK
        }
    }
}

pub fn cmd_analyze(path: &Path, q: u32, enumeration_limit: u64) -> Result<AnalyzeReport> {
    let graph = load_graph(path, q)?;
    let report = girth(&graph);
    let tree = report
        .girth
        .and_then(|g| tree_bound(report.min_left_degree, g).ok());
    let (d_min, status) = match min_distance_bruteforce(&graph, enumeration_limit) {
        Ok(Some(d)) => (Some(d), "computed"),
        Ok(None) => (None, "trivial_code"),
        Err(_) => (None, "too_large"),
    };
    let config = serde_json::json!({ "enumeration_limit": enumeration_limit });
    Ok(AnalyzeReport {
        manifest: RunManifest::new("analyze", &[path], Some(q), None, config),
        n: graph.n(),
        r: graph.r(),
        q,
        girth: report.girth,
        d: report.min_left_degree,
        left_regular: report.is_d_left_regular,
        tree_bound: tree,
        d_min,
        d_min_status: status.into(),
        bound_satisfied: match (d_min, tree) {
            (Some(d), Some(t)) => Some(d as u64 >= t),
            _ => None,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QscDetailReport {
    #[serde(flatten)]
    pub detail: QscWeightDetail,
    pub witness: ReceivedVector,
    pub distance_to_pseudocodeword: num_rational::Ratio<u64>,
    pub distance_to_zero: num_rational::Ratio<u64>,
    pub preference: Preference,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightReport {
    pub manifest: RunManifest,
    pub channel: String,
    pub weight: ChannelWeight,
    pub weight_f64: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qsc: Option<QscDetailReport>,
    /// `(R, M, V)` for a two-dimensional constellation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub awgn_2d_terms: Option<[f64; 3]>,
    /// Single-constraint violation when a graph was supplied.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraint_violation: Option<ConstraintViolation>,
}

/// Weighs one pseudocodeword. `channel` is one of `qsc`, `pam`, `psk`, `2d`;
/// `2d` needs a constellation file.
pub fn cmd_weight(
    path: &Path,
    channel: &str,
    constellation: Option<&Path>,
) -> Result<WeightReport> {
    let f = load_pseudocodeword(path)?;
    let mut inputs = vec![path];
    let channel = match channel {
        "qsc" => Channel::Qsc,
        "pam" => Channel::Pam,
        "psk" => Channel::Psk,
        "2d" => {
            let c = constellation.ok_or_else(|| {
                Error::InvalidConfig("channel 2d requires a constellation".into())
            })?;
            inputs.push(c);
            Channel::TwoD(load_constellation(c)?)
        }
        other => return Err(Error::InvalidConfig(format!("unknown channel {other:?}"))),
    };
    let weight = channel.weigh(&f)?;
    let qsc = match channel {
        Channel::Qsc if !f.is_zero() => {
            let witness = witness_error_vector(&f)?;
            Some(QscDetailReport {
                detail: weight_qsc(&f),
                distance_to_pseudocodeword: distance_qsc(&witness, &f)?,
                distance_to_zero: distance_qsc(
                    &witness,
                    &Pseudocodeword::zero(f.n(), f.q(), f.degree())?,
                )?,
                preference: decoder_prefers(&witness, &f)?,
                witness,
            })
        }
        _ => None,
    };
    let awgn_2d_terms = match &channel {
        Channel::TwoD(c) => {
            let t = awgn_2d_terms(&f, c)?;
            Some([t.r, t.m, t.v])
        }
        _ => None,
    };
    let config = serde_json::json!({ "channel": channel.name() });
    Ok(WeightReport {
        manifest: RunManifest::new("weight", &inputs, Some(f.q()), None, config),
        channel: channel.name().into(),
        weight,
        weight_f64: weight.as_f64(),
        qsc,
        awgn_2d_terms,
        constraint_violation: None,
    })
}

/// Parses a comma-separated channel list such as `qsc,pam,psk`.
pub fn parse_channels(list: &str, constellation: Option<&Path>) -> Result<Vec<Channel>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| match name {
            "qsc" => Ok(Channel::Qsc),
            "pam" => Ok(Channel::Pam),
            "psk" => Ok(Channel::Psk),
            "2d" => {
                let c = constellation.ok_or_else(|| {
                    Error::InvalidConfig("channel 2d requires a constellation".into())
                })?;
                Ok(Channel::TwoD(load_constellation(c)?))
            }
            other => Err(Error::InvalidConfig(format!("unknown channel {other:?}"))),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutput {
    pub manifest: RunManifest,
    #[serde(flatten)]
    pub report: SearchReport,
}

impl SearchOutput {
    pub fn exit_code(&self) -> i32 {
        if self.report.status == SearchStatus::Violation {
            EXIT_VIOLATION
        } else {
            EXIT_OK
        }
    }
}

pub fn cmd_search(path: &Path, q: u32, cfg: &SearchConfig) -> Result<SearchOutput> {
    let graph = load_graph(path, q)?;
    let report = estimate_min_pseudoweight(&graph, cfg)?;
    let config = serde_json::to_value(cfg).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    Ok(SearchOutput {
        manifest: RunManifest::new("search", &[path], Some(q), Some(cfg.seed), config),
        report,
    })
}

/// Default enumeration limit for `analyze`.
pub const ANALYZE_LIMIT: u64 = DEFAULT_ENUMERATION_LIMIT;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::catalog;
    use std::io::Write as _;

    fn temp(contents: &str, suffix: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn analyze_cyclic_hamming() {
        let f = temp(&catalog::hamming_7_4_cyclic(2).to_alist(), ".alist");
        let rep = cmd_analyze(f.path(), 2, ANALYZE_LIMIT).unwrap();
        assert_eq!(
            (rep.girth, rep.d, rep.tree_bound, rep.d_min),
            (Some(4), 4, Some(2), Some(3))
        );
        assert_eq!(rep.bound_satisfied, Some(true));
        assert_eq!(rep.exit_code(), EXIT_OK);
    }

    #[test]
    fn analyze_json_mirror() {
        let g = catalog::cycle_code(3, 2);
        let f = temp(&serde_json::to_string(&g.to_json()).unwrap(), ".json");
        let rep = cmd_analyze(f.path(), 2, ANALYZE_LIMIT).unwrap();
        assert_eq!(
            (rep.girth, rep.d, rep.tree_bound, rep.d_min),
            (Some(6), 2, Some(3), Some(3))
        );
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            cmd_analyze(Path::new("/nonexistent/x.alist"), 2, 10),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn weight_fractional_example() {
        let f = temp(
            r#"{"q":3,"M":2,"counts":[[1,1,0],[1,1,0],[2,0,0]]}"#,
            ".json",
        );
        let rep = cmd_weight(f.path(), "qsc", None).unwrap();
        assert_eq!(rep.weight, ChannelWeight::Integer(2));
        let qsc = rep.qsc.unwrap();
        assert_eq!(qsc.witness, ReceivedVector(vec![1, 0, 0]));
        assert_eq!(qsc.preference, Preference::Tie);
        assert!(cmd_weight(f.path(), "2d", None).is_err());
        assert!(cmd_weight(f.path(), "fsk", None).is_err());
    }

    #[test]
    fn channel_lists() {
        assert_eq!(
            parse_channels("qsc, pam", None).unwrap(),
            vec![Channel::Qsc, Channel::Pam]
        );
        assert!(parse_channels("qsc,2d", None).is_err());
    }
}
