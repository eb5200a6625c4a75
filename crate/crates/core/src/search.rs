//! Minimum-pseudoweight search over random or exhaustively enumerated
//! covers, with every sample checked against the tree bound.
//!
//! Work is split into one item per cover. Items are processed in parallel
//! but reduced in their fixed order, so a report depends only on the graph
//! and the configuration, never on the number of worker threads.

use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{check_constraint_inequality, tree_bound};
use crate::code::{girth, min_distance_bruteforce, TannerGraph};
use crate::covers::{self, CoverSpec, CoverSpecJson};
use crate::error::{Error, Result};
use crate::field::{self, DEFAULT_ENUMERATION_LIMIT};
use crate::weights::{weight_awgn_pam_exact, weight_qsc, Channel, ChannelWeight, Pseudocodeword};

/// Random codewords drawn per cover when exhaustive enumeration was asked
/// for but the cover's code is too large.
pub const DEFAULT_FALLBACK_SAMPLES: usize = 256;

/// Largest number of covers an exhaustive sweep may visit by default.
pub const DEFAULT_COVER_LIMIT: u64 = 1 << 20;

const MAX_RECORDED_VIOLATIONS: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub max_degree: usize,
    pub lifts_per_degree: usize,
    /// Codewords drawn per cover; 0 enumerates the cover's whole code when
    /// that fits within `enumeration_limit`.
    pub codewords_per_lift: usize,
    pub seed: u64,
    pub channels: Vec<Channel>,
    pub exclude_codeword_pseudocodewords: bool,
    /// Visit every cover of each degree instead of `lifts_per_degree`
    /// random ones.
    pub exhaustive_lifts: bool,
    pub enumeration_limit: u64,
    pub cover_limit: u64,
    pub fallback_samples: usize,
    /// Worker threads; 0 uses the global pool. Has no effect on results.
    #[serde(skip)]
    pub jobs: usize,
    /// Keep every sample for CSV export.
    #[serde(skip)]
    pub record_samples: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            max_degree: 3,
            lifts_per_degree: 16,
            codewords_per_lift: 0,
            seed: 0,
            channels: vec![Channel::Qsc, Channel::Pam, Channel::Psk],
            exclude_codeword_pseudocodewords: false,
            exhaustive_lifts: false,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            cover_limit: DEFAULT_COVER_LIMIT,
            fallback_samples: DEFAULT_FALLBACK_SAMPLES,
            jobs: 0,
            record_samples: false,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.max_degree == 0 {
            return Err(Error::InvalidConfig("max_degree must be at least 1".into()));
        }
        if self.lifts_per_degree == 0 {
            return Err(Error::InvalidConfig(
                "lifts_per_degree must be at least 1".into(),
            ));
        }
        if self.channels.is_empty() {
            return Err(Error::InvalidConfig("no channels selected".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Ok,
    /// A sample broke the tree bound or the single-constraint inequality.
    Violation,
    NoSamples,
    /// Infinite girth or smallest left degree below 2.
    NoBoundApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelResult {
    pub channel: Channel,
    pub min_weight: Option<ChannelWeight>,
    pub minimizer: Option<Pseudocodeword>,
    pub minimizer_cover: Option<CoverSpecJson>,
    pub bound_satisfied: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationRecord {
    pub kind: String,
    pub degree: usize,
    pub lift: usize,
    pub sample: usize,
    pub detail: String,
}

/// Weights of one sample, in the order of `SearchConfig::channels`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub degree: usize,
    pub lift: usize,
    pub sample: usize,
    pub weights: Vec<ChannelWeight>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub r: usize,
    pub q: u32,
    pub girth: Option<usize>,
    pub d: usize,
    pub left_regular: bool,
    pub tree_bound: Option<u64>,
    pub d_min: Option<usize>,
    pub d_min_status: String,
    /// qSC minimum ≤ d_min, when both exist.
    pub qsc_le_dmin: Option<bool>,
    pub status: SearchStatus,
    pub channels: Vec<ChannelResult>,
    pub covers: usize,
    pub samples: usize,
    pub excluded_codeword_samples: usize,
    pub qsc_bound_violations: usize,
    pub pam_bound_violations: usize,
    pub constraint_violations: usize,
    pub violations: Vec<ViolationRecord>,
    pub config: SearchConfig,
    pub wall_clock_ms: u64,
    #[serde(skip)]
    pub sample_records: Vec<SampleRecord>,
}

impl SearchReport {
    pub fn channel(&self, name: &str) -> Option<&ChannelResult> {
        self.channels.iter().find(|c| c.channel.name() == name)
    }

    pub fn min_weight(&self, name: &str) -> Option<ChannelWeight> {
        self.channel(name).and_then(|c| c.min_weight)
    }

    /// Writes one CSV row per recorded sample.
    pub fn write_samples_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let names: Vec<&str> = self.channels.iter().map(|c| c.channel.name()).collect();
        writeln!(out, "degree,lift,sample,{}", names.join(","))?;
        for s in &self.sample_records {
            let ws: Vec<String> = s.weights.iter().map(|w| w.as_f64().to_string()).collect();
            writeln!(out, "{},{},{},{}", s.degree, s.lift, s.sample, ws.join(","))?;
        }
        Ok(())
    }
}

/// SplitMix64 finaliser.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of lift `index` at `degree`, derived from the base seed alone.
pub fn lift_seed(base: u64, degree: usize, index: usize) -> u64 {
    mix(mix(mix(base) ^ degree as u64) ^ index as u64)
}

struct WorkItem {
    degree: usize,
    lift: usize,
    spec: CoverSpec,
}

#[derive(Default)]
struct ItemOutcome {
    best: Vec<Option<(ChannelWeight, Pseudocodeword)>>,
    samples: usize,
    excluded: usize,
    qsc_violations: usize,
    pam_violations: usize,
    constraint_violations: usize,
    records: Vec<ViolationRecord>,
    sample_records: Vec<SampleRecord>,
}

struct Context<'a> {
    graph: &'a TannerGraph,
    cfg: &'a SearchConfig,
    tree: Option<u64>,
    strict: bool,
}

fn process(ctx: &Context<'_>, item: &WorkItem) -> Result<ItemOutcome> {
    let graph = ctx.graph;
    let cfg = ctx.cfg;
    let n_lift = graph.n() * item.degree;
    let basis = covers::lifted_code_basis(&item.spec);
    let mut out = ItemOutcome {
        best: vec![None; cfg.channels.len()],
        ..Default::default()
    };

    let visit = |c_hat: Vec<u32>, out: &mut ItemOutcome| -> Result<()> {
        let f = covers::counts_of(&item.spec, &c_hat);
        if f.is_zero() {
            return Ok(());
        }
        if cfg.exclude_codeword_pseudocodewords && f.is_integral() {
            out.excluded += 1;
            return Ok(());
        }
        let sample = out.samples;
        out.samples += 1;
        let note = |out: &mut ItemOutcome, kind: &str, detail: String| {
            if out.records.len() < MAX_RECORDED_VIOLATIONS {
                out.records.push(ViolationRecord {
                    kind: kind.into(),
                    degree: item.degree,
                    lift: item.lift,
                    sample,
                    detail,
                });
            }
        };
        if let Some(t) = ctx.tree {
            let qsc = weight_qsc(&f).weight;
            if qsc < t {
                out.qsc_violations += 1;
                note(out, "qsc_bound", format!("w_qsc = {qsc} < {t} for {f}"));
            }
            if !ChannelWeight::Rational(weight_awgn_pam_exact(&f)).at_least(t) {
                out.pam_violations += 1;
                note(out, "pam_bound", format!("w_pam < {t} for {f}"));
            }
        }
        if let Some(v) = check_constraint_inequality(graph, &f)? {
            out.constraint_violations += 1;
            note(out, "constraint", format!("{v:?} for {f}"));
        }
        let mut weights = Vec::with_capacity(cfg.channels.len());
        for (slot, ch) in out.best.iter_mut().zip(&cfg.channels) {
            let w = ch.weigh(&f)?;
            weights.push(w);
            let better = slot.as_ref().is_none_or(|(bw, _)| w.total_cmp(bw).is_lt());
            if better {
                *slot = Some((w, f.clone()));
            }
        }
        if cfg.record_samples {
            out.sample_records.push(SampleRecord {
                degree: item.degree,
                lift: item.lift,
                sample,
                weights,
            });
        }
        Ok(())
    };

    if basis.is_empty() {
        return Ok(out);
    }
    let exhaustive = if cfg.codewords_per_lift == 0 {
        match field::enumerate_codewords(&basis, n_lift, graph.field(), cfg.enumeration_limit) {
            Ok(it) => Some(it),
            Err(e) if ctx.strict => return Err(e),
            Err(_) => None,
        }
    } else {
        None
    };
    match exhaustive {
        Some(words) => {
            for w in words {
                visit(w, &mut out)?;
            }
        }
        None => {
            let wanted = if cfg.codewords_per_lift == 0 {
                cfg.fallback_samples
            } else {
                cfg.codewords_per_lift
            };
            let seed = item
                .spec
                .seed()
                .unwrap_or_else(|| lift_seed(cfg.seed, item.degree, item.lift));
            let mut rng = ChaCha8Rng::seed_from_u64(mix(seed ^ 0xC0DE_C0DE));
            let mut drawn = 0;
            // zero draws are discarded; bound the attempts since k ≥ 1 makes
            // each draw nonzero with probability at least 1/2
            let mut attempts = 0;
            while drawn < wanted && attempts < 64 * wanted {
                attempts += 1;
                let w = field::random_combination(&basis, n_lift, graph.field(), &mut rng);
                if w.iter().all(|&x| x == 0) {
                    continue;
                }
                drawn += 1;
                visit(w, &mut out)?;
            }
        }
    }
    Ok(out)
}

fn work_items(
    graph: &Arc<TannerGraph>,
    cfg: &SearchConfig,
    min_degree: usize,
) -> Result<Vec<WorkItem>> {
    let mut items = Vec::new();
    for degree in min_degree..=cfg.max_degree {
        if cfg.exhaustive_lifts {
            for (lift, spec) in covers::enumerate_lifts(graph, degree, cfg.cover_limit)?.enumerate()
            {
                items.push(WorkItem { degree, lift, spec });
            }
        } else if degree == 1 {
            let spec = CoverSpec::identity(Arc::clone(graph), 1)?;
            items.push(WorkItem {
                degree,
                lift: 0,
                spec,
            });
        } else {
            for lift in 0..cfg.lifts_per_degree {
                let spec = covers::random_lift(graph, degree, lift_seed(cfg.seed, degree, lift))?;
                items.push(WorkItem { degree, lift, spec });
            }
        }
    }
    Ok(items)
}

fn run(
    graph: &TannerGraph,
    cfg: &SearchConfig,
    min_degree: usize,
    strict: bool,
) -> Result<SearchReport> {
    cfg.validate()?;
    let started = Instant::now();
    let shared = Arc::new(graph.clone());
    let girth_report = girth(graph);
    let tree = girth_report
        .girth
        .and_then(|g| tree_bound(girth_report.min_left_degree, g).ok());
    let (d_min, d_min_status) = match min_distance_bruteforce(graph, cfg.enumeration_limit) {
        Ok(Some(d)) => (Some(d), "computed"),
        Ok(None) => (None, "trivial_code"),
        Err(_) => (None, "too_large"),
    };

    let items = work_items(&shared, cfg, min_degree)?;
    let ctx = Context {
        graph,
        cfg,
        tree,
        strict,
    };
    let compute = || -> Result<Vec<ItemOutcome>> {
        items.par_iter().map(|item| process(&ctx, item)).collect()
    };
    let outcomes = if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            .install(compute)?
    } else {
        compute()?
    };

    // ordered reduction
    let mut best: Vec<Option<(ChannelWeight, Pseudocodeword, usize)>> =
        vec![None; cfg.channels.len()];
    let mut report = SearchReport {
        n: graph.n(),
        r: graph.r(),
        q: graph.q(),
        girth: girth_report.girth,
        d: girth_report.min_left_degree,
        left_regular: girth_report.is_d_left_regular,
        tree_bound: tree,
        d_min,
        d_min_status: d_min_status.into(),
        qsc_le_dmin: None,
        status: SearchStatus::Ok,
        channels: Vec::new(),
        covers: items.len(),
        samples: 0,
        excluded_codeword_samples: 0,
        qsc_bound_violations: 0,
        pam_bound_violations: 0,
        constraint_violations: 0,
        violations: Vec::new(),
        config: cfg.clone(),
        wall_clock_ms: 0,
        sample_records: Vec::new(),
    };
    for (idx, outcome) in outcomes.into_iter().enumerate() {
        report.samples += outcome.samples;
        report.excluded_codeword_samples += outcome.excluded;
        report.qsc_bound_violations += outcome.qsc_violations;
        report.pam_bound_violations += outcome.pam_violations;
        report.constraint_violations += outcome.constraint_violations;
        for rec in outcome.records {
            if report.violations.len() < MAX_RECORDED_VIOLATIONS {
                report.violations.push(rec);
            }
        }
        report.sample_records.extend(outcome.sample_records);
        for (slot, cand) in best.iter_mut().zip(outcome.best) {
            if let Some((w, f)) = cand {
                let better = slot
                    .as_ref()
                    .is_none_or(|(bw, _, _)| w.total_cmp(bw).is_lt());
                if better {
                    *slot = Some((w, f, idx));
                }
            }
        }
    }

    report.channels = cfg
        .channels
        .iter()
        .zip(best)
        .map(|(ch, b)| match b {
            Some((w, f, idx)) => ChannelResult {
                channel: ch.clone(),
                min_weight: Some(w),
                minimizer: Some(f),
                minimizer_cover: Some(items[idx].spec.to_json()),
                bound_satisfied: tree.map(|t| w.at_least(t)),
            },
            None => ChannelResult {
                channel: ch.clone(),
                min_weight: None,
                minimizer: None,
                minimizer_cover: None,
                bound_satisfied: None,
            },
        })
        .collect();
    if let (Some(d), Some(w)) = (d_min, report.min_weight("qsc")) {
        report.qsc_le_dmin = Some(w.as_f64() <= d as f64);
    }

    let violated =
        report.qsc_bound_violations + report.pam_bound_violations + report.constraint_violations
            > 0
            || report.channels.iter().any(|c| {
                c.bound_satisfied == Some(false) && matches!(c.channel, Channel::Qsc | Channel::Pam)
            });
    report.status = if violated {
        SearchStatus::Violation
    } else if report.samples == 0 {
        SearchStatus::NoSamples
    } else if tree.is_none() {
        SearchStatus::NoBoundApplicable
    } else {
        SearchStatus::Ok
    };
    report.wall_clock_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

/// Minimum pseudocodeword weight over covers of degree `1..=max_degree`.
/// The result is an upper bound on the true minimum, which ranges over
/// covers of every degree.
pub fn estimate_min_pseudoweight(graph: &TannerGraph, cfg: &SearchConfig) -> Result<SearchReport> {
    run(graph, cfg, 1, false)
}

/// Limits for [`exhaustive_min_pseudoweight`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveLimits {
    pub cover_limit: u64,
    pub enumeration_limit: u64,
}

impl Default for ExhaustiveLimits {
    fn default() -> Self {
        Self {
            cover_limit: DEFAULT_COVER_LIMIT,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

/// Exact minimum over every cover of degree exactly `degree` and every
/// codeword of each. Fails instead of sampling when a limit is exceeded.
pub fn exhaustive_min_pseudoweight(
    graph: &TannerGraph,
    degree: usize,
    channels: Vec<Channel>,
    limits: ExhaustiveLimits,
) -> Result<SearchReport> {
    let cfg = SearchConfig {
        max_degree: degree,
        lifts_per_degree: 1,
        codewords_per_lift: 0,
        seed: 0,
        channels,
        exclude_codeword_pseudocodewords: false,
        exhaustive_lifts: true,
        enumeration_limit: limits.enumeration_limit,
        cover_limit: limits.cover_limit,
        fallback_samples: 0,
        jobs: 0,
        record_samples: false,
    };
    run(graph, &cfg, degree, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::catalog;

    fn cfg(max_degree: usize, lifts: usize) -> SearchConfig {
        SearchConfig {
            max_degree,
            lifts_per_degree: lifts,
            seed: 5,
            ..Default::default()
        }
    }

    #[test]
    fn degree_one_gives_dmin() {
        for g in [
            catalog::hamming_7_4(2),
            catalog::fano_plane(3),
            catalog::cycle_code(4, 3),
        ] {
            let rep = estimate_min_pseudoweight(&g, &cfg(1, 1)).unwrap();
            assert_eq!(
                rep.min_weight("qsc"),
                Some(ChannelWeight::Integer(rep.d_min.unwrap() as u64))
            );
            assert_eq!(rep.qsc_le_dmin, Some(true));
        }
    }

    #[test]
    fn odd_cycle_over_gf3() {
        let g = catalog::cycle_code(3, 3);
        let rep = estimate_min_pseudoweight(&g, &cfg(1, 1)).unwrap();
        assert_eq!(rep.status, SearchStatus::NoSamples);
        assert_eq!(rep.d_min_status, "trivial_code");
        // double covers contain the alternating 6-cycle word
        let ex =
            exhaustive_min_pseudoweight(&g, 2, vec![Channel::Qsc], ExhaustiveLimits::default())
                .unwrap();
        assert_eq!(ex.min_weight("qsc"), Some(ChannelWeight::Integer(4)));
        assert_eq!(ex.status, SearchStatus::Ok);
    }

    #[test]
    fn single_check_has_no_bound() {
        let g = catalog::single_check(3, 2);
        let rep =
            exhaustive_min_pseudoweight(&g, 2, vec![Channel::Qsc], ExhaustiveLimits::default())
                .unwrap();
        assert_eq!(rep.covers, 8);
        assert_eq!(rep.status, SearchStatus::NoBoundApplicable);
        assert_eq!(rep.min_weight("qsc"), Some(ChannelWeight::Integer(2)));
    }

    #[test]
    fn deterministic_across_jobs() {
        let g = catalog::fano_plane(3);
        let mut a = cfg(3, 6);
        a.codewords_per_lift = 20;
        let mut b = a.clone();
        a.jobs = 1;
        b.jobs = 3;
        let mut ra = estimate_min_pseudoweight(&g, &a).unwrap();
        let mut rb = estimate_min_pseudoweight(&g, &b).unwrap();
        ra.wall_clock_ms = 0;
        rb.wall_clock_ms = 0;
        assert_eq!(
            serde_json::to_string(&ra).unwrap(),
            serde_json::to_string(&rb).unwrap()
        );
    }

    #[test]
    fn more_lifts_never_raise_the_minimum() {
        let g = catalog::cycle_code(4, 3);
        let mut prev: Option<f64> = None;
        for lifts in [1, 2, 4, 8] {
            let rep = estimate_min_pseudoweight(&g, &cfg(3, lifts)).unwrap();
            let w = rep.min_weight("pam").unwrap().as_f64();
            if let Some(p) = prev {
                assert!(w <= p);
            }
            prev = Some(w);
        }
    }

    #[test]
    fn excluding_codewords() {
        let g = catalog::fano_plane(2);
        let mut c = cfg(1, 1);
        c.exclude_codeword_pseudocodewords = true;
        let rep = estimate_min_pseudoweight(&g, &c).unwrap();
        assert_eq!(rep.samples, 0);
        assert!(rep.excluded_codeword_samples > 0);
        assert_eq!(rep.status, SearchStatus::NoSamples);
    }

    #[test]
    fn exhaustive_limits_are_errors() {
        let g = catalog::fano_plane(2);
        let limits = ExhaustiveLimits {
            cover_limit: 10,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
        };
        assert!(matches!(
            exhaustive_min_pseudoweight(&g, 2, vec![Channel::Qsc], limits),
            Err(Error::TooManyCovers { .. })
        ));
    }

    #[test]
    fn csv_export() {
        let g = catalog::cycle_code(3, 2);
        let mut c = cfg(2, 2);
        c.record_samples = true;
        let rep = estimate_min_pseudoweight(&g, &c).unwrap();
        let mut buf = Vec::new();
        rep.write_samples_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("degree,lift,sample,qsc,pam,psk\n"));
        assert_eq!(text.lines().count(), rep.samples + 1);
    }

    #[test]
    fn rejects_bad_config() {
        let g = catalog::cycle_code(3, 2);
        assert!(estimate_min_pseudoweight(&g, &cfg(0, 1)).is_err());
        assert!(estimate_min_pseudoweight(&g, &cfg(2, 0)).is_err());
    }
}
