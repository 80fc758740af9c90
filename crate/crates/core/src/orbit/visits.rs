use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::scan::{OrbitSampler, OrbitScan};
use super::svp::lll;
use crate::cassels::split_diagonal;
use crate::error::{Error, Result};
use crate::geometry::TraceZeroVec;
use crate::linalg::{IntMatrix, Matrix};
use crate::scalar::Real;
use crate::simplex::{HoleCatalog, Perm};

/// The functions `delta`, `rho`, `r` of the escape-of-mass statement.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EomParameters {
    pub kappa: f64,
    pub m_const: f64,
    pub covolume: f64,
    pub xi: f64,
    pub c_est: f64,
    /// `M e^(-(n/2) covol^(kappa/n))`.
    pub delta: f64,
    /// `covol^(kappa/n) / xi`.
    pub rho: f64,
    /// `c_est covol^(kappa/n)`.
    pub r: f64,
}

impl EomParameters {
    pub fn new(n: usize, kappa: f64, m_const: f64, covolume: f64, xi: f64, c_est: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa < 1.0) {
            return Err(Error::ParameterConstraint(format!("kappa = {kappa} must lie in (0, 1)")));
        }
        let grow = covolume.powf(kappa / n as f64);
        Ok(EomParameters {
            kappa,
            m_const,
            covolume,
            xi,
            c_est,
            delta: m_const * (-(n as f64) / 2.0 * grow).exp(),
            rho: grow / xi,
            r: c_est * grow,
        })
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalizationReport {
    pub delta: f64,
    pub r: f64,
    pub visit_cells: usize,
    pub max_distance: f64,
    pub worst_cell: Option<usize>,
    /// Visit cells whose time lies in `(1 - rho)(n/2) S_Phi + Delta_Phi`.
    pub inside_shrunk_simplex: usize,
    pub pass: bool,
}

/// Checks that every cell with `ell >= delta` lies within `r` of `W' + Delta_Phi`
/// and outside the shrunk simplex.
pub fn visit_localization_check(scan: &OrbitScan, catalog: &HoleCatalog<f64>, params: &EomParameters) -> Result<LocalizationReport> {
    let cells = scan.cells_above(params.delta);
    let half = (scan.d - 1) as f64 / 2.0;
    let measured = cells
        .par_iter()
        .map(|&idx| {
            let t = scan.cell_time(idx);
            let dist = catalog.nearest(&t)?.distance;
            let gauge = catalog.min_ceil(&t)?;
            Ok((idx, dist, gauge))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = LocalizationReport {
        delta: params.delta,
        r: params.r,
        visit_cells: cells.len(),
        max_distance: 0.0,
        worst_cell: None,
        inside_shrunk_simplex: 0,
        pass: true,
    };
    for (idx, dist, gauge) in measured {
        if dist > report.max_distance {
            report.max_distance = dist;
            report.worst_cell = Some(idx);
        }
        if gauge <= (1.0 - params.rho) * half {
            report.inside_shrunk_simplex += 1;
        }
    }
    report.pass = report.max_distance <= params.r && report.inside_shrunk_simplex == 0;
    Ok(report)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Component {
    pub cells: usize,
    pub peak_cell: usize,
    pub peak_value: f64,
    /// Hole class nearest to the peak cell.
    pub tau: Perm,
    pub peak_distance: f64,
    pub max_distance: f64,
    /// Hole classes nearest to any of the component's cells.
    pub classes: BTreeSet<Perm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VisitReport {
    pub delta1: f64,
    pub visit_cells: usize,
    pub components: Vec<Component>,
    pub max_distance: f64,
}

impl VisitReport {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    /// Whether distinct components sit next to distinct hole classes.
    pub fn distinct_attribution(&self) -> bool {
        let taus: BTreeSet<&Perm> = self.components.iter().map(|c| &c.tau).collect();
        taus.len() == self.components.len()
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Union-find over cells with `ell >= delta1` on the torus grid.
pub fn connected_components(scan: &OrbitScan, delta1: f64, catalog: &HoleCatalog<f64>) -> Result<VisitReport> {
    let cells = scan.cells_above(delta1);
    let slot: BTreeMap<usize, usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    for (k, &c) in cells.iter().enumerate() {
        for nb in scan.neighbours(c) {
            if let Some(&j) = slot.get(&nb) {
                let (a, b) = (find(&mut parent, k), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let nearest = cells
        .par_iter()
        .map(|&c| catalog.nearest(&scan.cell_time(c)).map(|h| (h.tau, h.distance)))
        .collect::<Result<Vec<_>>>()?;
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..cells.len() {
        let root = find(&mut parent, k);
        groups.entry(root).or_default().push(k);
    }
    let mut components = Vec::new();
    let mut max_distance: f64 = 0.0;
    for members in groups.values() {
        let peak = *members
            .iter()
            .max_by(|&&a, &&b| scan.values[cells[a]].total_cmp(&scan.values[cells[b]]))
            .expect("non-empty group");
        let comp_max = members.iter().map(|&k| nearest[k].1).fold(0.0, f64::max);
        max_distance = max_distance.max(comp_max);
        components.push(Component {
            cells: members.len(),
            peak_cell: cells[peak],
            peak_value: scan.values[cells[peak]],
            tau: nearest[peak].0.clone(),
            peak_distance: nearest[peak].1,
            max_distance: comp_max,
            classes: members.iter().map(|&k| nearest[k].0.clone()).collect(),
        });
    }
    components.sort_by(|a, b| b.cells.cmp(&a.cells));
    Ok(VisitReport { delta1, visit_cells: cells.len(), components, max_distance })
}

/// `B gamma = g a(s)` with `||g - I||` as a distance estimate to `A Z^d`.
#[derive(Clone, Debug)]
pub struct Proximity<T> {
    /// Max-entry norm of `g - I`; infinite when no diagonal structure is found.
    pub distance: f64,
    pub g: Option<Matrix<T>>,
    pub s: Option<TraceZeroVec<T>>,
    pub gamma: Option<IntMatrix>,
}

pub fn diagonal_proximity<T: Real>(basis: &Matrix<T>) -> Result<Proximity<T>> {
    let d = basis.rows();
    let red = lll(basis, 0.99)?;
    match split_diagonal(&red.basis, true) {
        Ok((g, s, perm)) => {
            let distance = g.sub(&Matrix::identity(d)).max_abs().to_f64();
            let gamma = red.transform.mul(&perm)?;
            Ok(Proximity { distance, g: Some(g), s: Some(s), gamma: Some(gamma) })
        }
        Err(Error::DecompositionDegenerate(_)) => Ok(Proximity { distance: f64::INFINITY, g: None, s: None, gamma: None }),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AccpropReport {
    pub epsilon: f64,
    pub c_prime: f64,
    pub kappa: f64,
    pub delta: f64,
    /// `C' e^(-(1/2) covol^epsilon)`.
    pub bound: f64,
    pub cells_checked: usize,
    pub max_distance: f64,
    pub worst_cell: Option<usize>,
    pub epsilon_c_pass: bool,
    pub pass: bool,
}

/// Distance to `A Z^d` at every cell with `ell >= delta`.
#[allow(clippy::too_many_arguments)]
pub fn accprop_check<T: Real>(
    scan: &OrbitScan,
    sampler: &OrbitSampler<T>,
    delta: f64,
    covolume: f64,
    epsilon: f64,
    c_prime: f64,
    kappa: f64,
    epsilon_c_pass: bool,
) -> Result<AccpropReport> {
    let n = (scan.d - 1) as f64;
    if kappa >= n * epsilon {
        return Err(Error::ParameterConstraint(format!("kappa = {kappa} must be below n epsilon = {}", n * epsilon)));
    }
    let cells = scan.cells_above(delta);
    let distances = cells
        .par_iter()
        .map(|&c| Ok((c, diagonal_proximity(&sampler.lattice_at(&scan.cell_time(c))?)?.distance)))
        .collect::<Result<Vec<_>>>()?;
    let (worst_cell, max_distance) = distances
        .iter()
        .fold((None, 0.0f64), |(wc, wd), &(c, dist)| if dist > wd { (Some(c), dist) } else { (wc, wd) });
    let bound = c_prime * (-0.5 * covolume.powf(epsilon)).exp();
    Ok(AccpropReport {
        epsilon,
        c_prime,
        kappa,
        delta,
        bound,
        cells_checked: cells.len(),
        max_distance,
        worst_cell,
        epsilon_c_pass,
        pass: max_distance <= bound,
    })
}
