//! Closed-form spectrum against the finite-difference oracles.
//!
//! Per channel `ν` the oracle solves the angular problem for the lowest `L`
//! separation constants `ℓ'_j(ℓ'_j + 1)` and, for each, the radial problem
//! for the lowest `L` energies `E(j, n_r)`. The closed form labels the same
//! levels by `N = n₂ + ñ₂` with `N + 1`-fold degeneracy, so the two sides are
//! matched by sorted distinct energy: the `k`-th oracle cluster is compared
//! with the closed-form level `N = k`.

use std::env;

use noncentral_oracle::{angular_eigenvalues, radial_eigenvalues, AngularProblem, RadialProblem};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::PotentialParams;
use crate::spectrum::{energy_level, QuantumNumbers};

/// Relative gap below which oracle energies count as one degenerate level.
/// Kept well above any sensible tolerance so that an inaccurate level shows
/// up as a deviation rather than as a broken degeneracy.
const CLUSTER_REL_TOL: f64 = 1e-3;

/// Environment variable capping the worker threads used across channels.
pub const THREADS_ENV: &str = "NONCENTRAL_NUM_THREADS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub nu_max: u32,
    pub levels_per_channel: usize,
    pub tol: f64,
    /// Coarsest angular grid; the oracle doubles it up to five times.
    pub angular_nodes: usize,
    /// Coarse radial grid; the fine grid doubles it.
    pub radial_nodes: usize,
    /// Worker threads; `None` reads [`THREADS_ENV`], falling back to rayon's default.
    pub threads: Option<usize>,
}

impl VerifyOptions {
    pub fn new(nu_max: u32, levels_per_channel: usize, tol: f64) -> Self {
        Self {
            nu_max,
            levels_per_channel,
            tol,
            angular_nodes: 2000,
            radial_nodes: 6000,
            threads: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub nu: u32,
    /// Angular index.
    pub j: u32,
    /// Radial index.
    pub n_r: u32,
    /// Closed-form `N = n₂ + ñ₂` this oracle level was matched to.
    pub n_sum: u32,
    pub e_closed_form: f64,
    pub e_oracle: f64,
    pub rel_dev: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelStatus {
    Verified,
    /// `ν² + B ± C < 0`; no rows.
    Invalid,
    /// An oracle cluster does not have the closed-form degeneracy.
    DegeneracyMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelReport {
    pub nu: u32,
    pub status: ChannelStatus,
    /// A plane index `√(ν² + B ± C)` vanishes with `B, C` not both zero.
    pub boundary_marginal: bool,
    /// Oracle `ℓ'_j`, ascending.
    pub l_eff: Vec<f64>,
    pub max_rel_dev: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub z: f64,
    pub b: f64,
    pub c: f64,
    pub nu_max: u32,
    pub levels_per_channel: usize,
    pub tol: f64,
    pub rows: Vec<VerificationRow>,
    pub channels: Vec<ChannelReport>,
    pub max_rel_dev: f64,
    pub pass: bool,
    pub status: String,
}

struct ChannelOutcome {
    report: ChannelReport,
    rows: Vec<VerificationRow>,
}

fn verify_channel(params: &PotentialParams, nu: u32, opts: &VerifyOptions) -> Result<ChannelOutcome> {
    let count = opts.levels_per_channel;
    let oracle_err = |source| Error::Oracle { nu, source };

    let mut angular = AngularProblem::new(params.b(), params.c(), nu, count);
    angular.grid_n = opts.angular_nodes;
    let boundary_marginal = angular.boundary_marginal();
    let closed: Vec<f64> = match (0..count as u32)
        .map(|n| energy_level(params, &QuantumNumbers::new(n, 0, nu)).map(|l| l.energy))
        .collect::<Result<Vec<_>>>()
    {
        Ok(e) => e,
        Err(Error::InvalidChannel { .. }) => {
            return Ok(ChannelOutcome {
                report: ChannelReport {
                    nu,
                    status: ChannelStatus::Invalid,
                    boundary_marginal: false,
                    l_eff: Vec::new(),
                    max_rel_dev: 0.0,
                },
                rows: Vec::new(),
            })
        }
        Err(e) => return Err(e),
    };

    let ang = angular_eigenvalues(&angular).map_err(oracle_err)?;
    let units = params.units();
    let mut found: Vec<(u32, u32, f64)> = Vec::with_capacity(count * count);
    for (j, &l_eff) in ang.l_eff.iter().enumerate() {
        let mut radial = RadialProblem::new(params.z(), l_eff, count);
        radial.grid.nodes = opts.radial_nodes;
        radial.mass = units.mass;
        radial.hbar = units.hbar;
        radial.e2 = units.e2;
        let sol = radial_eigenvalues(&radial).map_err(oracle_err)?;
        found.extend(
            sol.energies
                .iter()
                .enumerate()
                .map(|(n_r, &e)| (j as u32, n_r as u32, e)),
        );
    }
    found.sort_by(|x, y| x.2.total_cmp(&y.2).then(x.0.cmp(&y.0)));

    // group near-equal energies, keep the lowest `count` groups
    let mut clusters: Vec<Vec<(u32, u32, f64)>> = Vec::new();
    for item in found {
        match clusters.last_mut() {
            Some(last) if (item.2 - last[0].2).abs() <= CLUSTER_REL_TOL * item.2.abs() => last.push(item),
            _ => clusters.push(vec![item]),
        }
    }
    clusters.truncate(count);

    let mut rows = Vec::new();
    let mut status = ChannelStatus::Verified;
    let mut max_dev = 0.0f64;
    for (k, cluster) in clusters.iter().enumerate() {
        if cluster.len() != k + 1 {
            status = ChannelStatus::DegeneracyMismatch;
        }
        for &(j, n_r, e) in cluster {
            let rel_dev = (e - closed[k]).abs() / closed[k].abs();
            max_dev = max_dev.max(rel_dev);
            rows.push(VerificationRow {
                nu,
                j,
                n_r,
                n_sum: k as u32,
                e_closed_form: closed[k],
                e_oracle: e,
                rel_dev,
            });
        }
    }
    if clusters.len() < count {
        status = ChannelStatus::DegeneracyMismatch;
    }
    Ok(ChannelOutcome {
        report: ChannelReport {
            nu,
            status,
            boundary_marginal,
            l_eff: ang.l_eff,
            max_rel_dev: max_dev,
        },
        rows,
    })
}

fn thread_count(opts: &VerifyOptions) -> Option<usize> {
    opts.threads
        .or_else(|| env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok()))
        .filter(|&n| n > 0)
}

/// Verify the closed-form spectrum for every `ν <= nu_max`.
///
/// Channels run in parallel; the report is ordered by `ν` and then by
/// energy, so it does not depend on the thread count.
pub fn verify_spectrum(params: &PotentialParams, opts: &VerifyOptions) -> Result<VerificationReport> {
    if opts.levels_per_channel == 0 {
        return Err(Error::InvalidParams("levels_per_channel must be at least 1".into()));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParams(format!("tol must be positive, got {}", opts.tol)));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count(opts) {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot start worker threads: {e}")))?;
    let outcomes: Vec<ChannelOutcome> = pool.install(|| {
        (0..=opts.nu_max)
            .into_par_iter()
            .map(|nu| verify_channel(params, nu, opts))
            .collect::<Result<_>>()
    })?;

    let mut rows = Vec::new();
    let mut channels = Vec::new();
    for o in outcomes {
        rows.extend(o.rows);
        channels.push(o.report);
    }
    let valid: Vec<&ChannelReport> = channels.iter().filter(|c| c.status != ChannelStatus::Invalid).collect();
    let max_rel_dev = valid.iter().map(|c| c.max_rel_dev).fold(0.0, f64::max);
    let mismatched = valid
        .iter()
        .filter(|c| c.status == ChannelStatus::DegeneracyMismatch)
        .count();

    let (pass, status) = if valid.is_empty() {
        (
            false,
            "no valid channel: nu² + B ± C < 0 for every requested nu".to_string(),
        )
    } else if mismatched > 0 {
        (
            false,
            format!("{mismatched} channel(s) with oracle degeneracy different from the closed form"),
        )
    } else if max_rel_dev < opts.tol {
        (
            true,
            format!(
                "max relative deviation {max_rel_dev:.3e} below tolerance {:.1e}",
                opts.tol
            ),
        )
    } else {
        (
            false,
            format!(
                "max relative deviation {max_rel_dev:.3e} exceeds tolerance {:.1e}",
                opts.tol
            ),
        )
    };

    Ok(VerificationReport {
        z: params.z(),
        b: params.b(),
        c: params.c(),
        nu_max: opts.nu_max,
        levels_per_channel: opts.levels_per_channel,
        tol: opts.tol,
        rows,
        channels,
        max_rel_dev,
        pass,
        status,
    })
}
