use std::collections::BTreeMap;

use super::AsymptoticsError;
use crate::cap::CapBody;
use crate::geometry::{LatticePointSet, Point, Polytope, RationalScalar};
use crate::koszul::WeightCloud;

/// Margins `δ` for which the share of weights with slack `>= -δ` is reported.
pub const SLACK_MARGINS: [f64; 3] = [0.05, 0.1, 0.2];

#[derive(Clone, Debug, PartialEq)]
pub struct SlackEntry {
    pub p: usize,
    pub q: usize,
    pub d: u64,
    pub weight: Point,
    pub multiplicity: usize,
    pub tau: f64,
    /// `τ_y / vol(Δ) - p / (r_d + 1)`.
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UpperBoundReport {
    pub entries: Vec<SlackEntry>,
    /// `(δ, share of entries with slack >= -δ)`; empty when there are no
    /// entries.
    pub shares: Vec<(f64, f64)>,
}

/// Compares every normalized weight `y` of every cloud with `p / (r_d + 1)`,
/// the finite-`d` stand-in for the subset-size fraction, using the direction
/// sweep for `τ_y`. Descriptive only: nothing is asserted about the sign.
pub fn upper_bound_check(
    delta: &Polytope,
    clouds: &[WeightCloud],
    n_dirs: usize,
    tol: f64,
) -> Result<UpperBoundReport, AsymptoticsError> {
    let body = CapBody::new(delta)?;
    let mut tau_cache: BTreeMap<Vec<RationalScalar>, f64> = BTreeMap::new();
    let mut sections: BTreeMap<u64, usize> = BTreeMap::new();
    let mut entries = Vec::new();
    for cloud in clouds {
        let count = match sections.get(&cloud.d) {
            Some(&c) => c,
            None => {
                let c = LatticePointSet::of_dilate(delta, cloud.d)?.len();
                sections.insert(cloud.d, c);
                c
            }
        };
        for (weight, multiplicity) in cloud.normalized() {
            let tau = match tau_cache.get(&weight.0) {
                Some(&t) => t,
                None => {
                    let t = body.tau_direction_sweep(&weight, n_dirs, tol)?.tau_over_vol;
                    tau_cache.insert(weight.0.clone(), t);
                    t
                }
            };
            let slack = tau - cloud.p as f64 / count as f64;
            entries.push(SlackEntry { p: cloud.p, q: cloud.q, d: cloud.d, weight, multiplicity, tau, slack });
        }
    }
    let shares = if entries.is_empty() {
        Vec::new()
    } else {
        SLACK_MARGINS
            .iter()
            .map(|&m| (m, entries.iter().filter(|e| e.slack >= -m).count() as f64 / entries.len() as f64))
            .collect()
    };
    Ok(UpperBoundReport { entries, shares })
}
