//! The tree bound `T(d, g)` and drivers that compare it against minimum
//! distance and minimum pseudocodeword weight.

use serde::Serialize;

use crate::code::{girth, min_distance_bruteforce, TannerGraph};
use crate::error::{Error, Result};
use crate::weights::{ChannelWeight, Pseudocodeword};

/// Tree bound for a graph with smallest left degree `d` and girth `g`.
///
/// With `g/2` odd it is `1 + d + d(d−1) + … + d(d−1)^{(g−6)/4}`; with `g/2`
/// even it is `1 + d + … + d(d−1)^{(g−8)/4} + (d−1)^{(g−4)/4}`. At `g = 4`
/// the middle sum is empty and the value is 2.
pub fn tree_bound(d: usize, g: usize) -> Result<u64> {
    let invalid = |reason| Error::InvalidTreeBound { d, g, reason };
    if g % 2 == 1 {
        return Err(invalid("girth must be even"));
    }
    if g < 4 {
        return Err(invalid("girth must be at least 4"));
    }
    if d < 2 {
        return Err(invalid("left degree must be at least 2"));
    }
    let overflow = || invalid("value overflows u64");
    let d = d as u64;
    let branch = d - 1;
    // d · Σ_{k=0}^{top} (d−1)^k, or 0 when top < 0
    let layered = |top: isize| -> Result<u64> {
        let mut sum = 0u64;
        let mut power = 1u64;
        for _ in 0..(top + 1).max(0) {
            sum = sum
                .checked_add(d.checked_mul(power).ok_or_else(overflow)?)
                .ok_or_else(overflow)?;
            power = power.checked_mul(branch).ok_or_else(overflow)?;
        }
        Ok(sum)
    };
    let g = g as isize;
    if (g / 2) % 2 == 1 {
        Ok(1 + layered((g - 6) / 4)?)
    } else {
        let tail = branch
            .checked_pow(((g - 4) / 4) as u32)
            .ok_or_else(overflow)?;
        (1 + layered((g - 8) / 4)?)
            .checked_add(tail)
            .ok_or_else(overflow)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub d: usize,
    pub g: usize,
    pub tree_bound_value: u64,
    pub compared_quantity: ChannelWeight,
    pub satisfied: bool,
    pub witness: Option<String>,
}

impl BoundReport {
    fn new(
        d: usize,
        g: usize,
        tree: u64,
        quantity: ChannelWeight,
        witness: Option<String>,
    ) -> Self {
        let satisfied = quantity.at_least(tree);
        Self {
            d,
            g,
            tree_bound_value: tree,
            compared_quantity: quantity,
            satisfied,
            witness,
        }
    }

    /// `compared − T`, the slack left by the bound.
    pub fn gap(&self) -> f64 {
        self.compared_quantity.as_f64() - self.tree_bound_value as f64
    }
}

/// Girth and smallest left degree, or the reason no tree bound applies.
pub fn bound_parameters(graph: &TannerGraph) -> Result<(usize, usize, u64)> {
    let report = girth(graph);
    let g = report.girth.ok_or(Error::InfiniteGirth)?;
    let d = report.min_left_degree;
    Ok((d, g, tree_bound(d, g)?))
}

/// Compares the brute-force minimum distance with `T(d, g)`, `d` being the
/// smallest left degree.
pub fn verify_dmin_bound(graph: &TannerGraph, limit: u64) -> Result<BoundReport> {
    let (d, g, tree) = bound_parameters(graph)?;
    let dmin = min_distance_bruteforce(graph, limit)?.ok_or(Error::TrivialCode)?;
    let witness = (dmin < tree as usize).then(|| format!("d_min = {dmin}"));
    Ok(BoundReport::new(
        d,
        g,
        tree,
        ChannelWeight::Integer(dmin as u64),
        witness,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightBoundCheck {
    pub report: BoundReport,
    pub minimizer: Pseudocodeword,
    /// Nonzero samples inspected.
    pub samples: usize,
}

/// Minimum of the sampled weights against `T(d, g)`. All-zero
/// pseudocodewords are skipped. Ties keep the earliest sample, so the result
/// does not depend on how the stream was produced as long as its order is
/// fixed.
pub fn verify_wmin_bound<I>(samples: I, d: usize, g: usize) -> Result<WeightBoundCheck>
where
    I: IntoIterator<Item = (Pseudocodeword, ChannelWeight)>,
{
    let tree = tree_bound(d, g)?;
    let mut best: Option<(usize, Pseudocodeword, ChannelWeight)> = None;
    let mut count = 0;
    for (idx, (f, w)) in samples.into_iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        count += 1;
        let better = match &best {
            None => true,
            Some((_, _, bw)) => w.total_cmp(bw).is_lt(),
        };
        if better {
            best = Some((idx, f, w));
        }
    }
    let (idx, minimizer, weight) = best.ok_or(Error::EmptySamples)?;
    let witness = (!weight.at_least(tree)).then(|| format!("sample {idx}: {minimizer}"));
    Ok(WeightBoundCheck {
        report: BoundReport::new(d, g, tree, weight, witness),
        minimizer,
        samples: count,
    })
}

/// A constraint at which `1 − f_{i,0} ≤ Σ_{j∈N(c), j≠i} (1 − f_{j,0})` fails.
/// Masses are scaled by `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstraintViolation {
    pub check: usize,
    pub variable: usize,
    pub lhs: u64,
    pub rhs: u64,
}

/// Checks the single-constraint inequality at every check and every
/// neighbour, exactly. Returns the first violation found.
pub fn check_constraint_inequality(
    graph: &TannerGraph,
    f: &Pseudocodeword,
) -> Result<Option<ConstraintViolation>> {
    if f.n() != graph.n() {
        return Err(Error::DimensionMismatch {
            expected: graph.n(),
            found: f.n(),
        });
    }
    for (c, vars) in graph.checks().iter().enumerate() {
        let total: u64 = vars.iter().map(|&v| f.nonzero_mass(v) as u64).sum();
        for &v in vars {
            let lhs = f.nonzero_mass(v) as u64;
            let rhs = total - lhs;
            if lhs > rhs {
                return Ok(Some(ConstraintViolation {
                    check: c,
                    variable: v,
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}
