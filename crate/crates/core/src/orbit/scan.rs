use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::svp::{lll, shortest_vector};
use crate::cassels::ConstructionReport;
use crate::error::{Error, Result};
use crate::geometry::{diag_flow_entries, TraceZeroVec};
use crate::linalg::Matrix;
use crate::scalar::{with_precision, Real, Scalar};

/// Evaluates `ell(a(t) x)` for times `t = sum u_i phi_i`.
///
/// The flow and a first LLL pass run in `T` at the construction's precision;
/// the reduced basis is then handed to the `f64` enumeration. Far along the
/// orbit `a(t) x` is a badly skewed basis of a tame lattice, which `f64`
/// alone cannot reduce faithfully.
#[derive(Clone, Debug)]
pub struct OrbitSampler<T> {
    basis: Matrix<T>,
    bits: u32,
    time_basis: Vec<TraceZeroVec<f64>>,
}

impl<T: Real> OrbitSampler<T> {
    /// Uses the first `n` unit logs as time basis.
    pub fn new(report: &ConstructionReport<T>) -> Result<Self> {
        let basis = report.scoped(|| lll(report.basis.matrix(), 0.99).map(|r| r.basis))?;
        let n = report.d() - 1;
        let time_basis = report.unit_logs[..n].iter().map(TraceZeroVec::to_f64).collect();
        Ok(OrbitSampler { basis, bits: report.bits(), time_basis })
    }

    pub fn from_parts(basis: Matrix<T>, bits: u32, time_basis: Vec<TraceZeroVec<f64>>) -> Result<Self> {
        let d = basis.rows();
        if time_basis.len() + 1 != d {
            return Err(Error::DimensionMismatch { expected: d - 1, got: time_basis.len() });
        }
        Ok(OrbitSampler { basis, bits, time_basis })
    }

    pub fn d(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn time_basis(&self) -> &[TraceZeroVec<f64>] {
        &self.time_basis
    }

    pub fn time(&self, u: &[f64]) -> TraceZeroVec<f64> {
        let mut t = TraceZeroVec::zero(self.d());
        for (c, phi) in u.iter().zip(&self.time_basis) {
            t = t.add(&phi.scale(c));
        }
        t
    }

    /// Coordinates of `t` in the time basis.
    pub fn coordinates(&self, t: &TraceZeroVec<f64>) -> Result<Vec<f64>> {
        let phi = Matrix::from_columns(&self.time_basis.iter().map(|v| v.coords().to_vec()).collect::<Vec<_>>());
        let pt = phi.transpose();
        pt.mul(&phi).solve(&pt.mul_vec(t.coords()))
    }

    /// LLL-reduced basis of `a(t) x`.
    pub fn lattice_at(&self, t: &TraceZeroVec<f64>) -> Result<Matrix<f64>> {
        with_precision(self.bits.max(64), || {
            let a = diag_flow_entries(&t.map(|x| T::from_f64(*x)))?;
            let m = Matrix::from_fn(self.d(), self.d(), |i, j| a[i].clone() * self.basis[(i, j)].clone());
            Ok(lll(&m, 0.99)?.basis.map(Scalar::to_f64))
        })
    }

    pub fn ell_at_time(&self, t: &TraceZeroVec<f64>) -> Result<f64> {
        Ok(shortest_vector(&self.lattice_at(t)?)?.length)
    }

    pub fn value_at(&self, u: &[f64]) -> Result<f64> {
        self.ell_at_time(&self.time(u))
    }
}

/// `ell(a(t) x)` on the cell centres of a `G^n` grid over `[0, 1)^n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitScan {
    pub d: usize,
    pub grid: usize,
    /// Row-major over `(u_1, .., u_n)`, `u_n` fastest; failed cells hold NaN.
    pub values: Vec<f64>,
    pub time_basis: Vec<Vec<f64>>,
    pub failures: Vec<(usize, String)>,
}

impl OrbitScan {
    pub fn n(&self) -> usize {
        self.d - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn cell_index(&self, idx: usize) -> Vec<usize> {
        let n = self.n();
        let mut out = vec![0; n];
        let mut rest = idx;
        for k in (0..n).rev() {
            out[k] = rest % self.grid;
            rest /= self.grid;
        }
        out
    }

    pub fn flat_index(&self, multi: &[usize]) -> usize {
        multi.iter().fold(0, |acc, &i| acc * self.grid + i)
    }

    pub fn cell_u(&self, idx: usize) -> Vec<f64> {
        self.cell_index(idx).iter().map(|&i| (i as f64 + 0.5) / self.grid as f64).collect()
    }

    pub fn cell_time(&self, idx: usize) -> TraceZeroVec<f64> {
        let u = self.cell_u(idx);
        let mut t = vec![0.0; self.d];
        for (c, phi) in u.iter().zip(&self.time_basis) {
            for (x, p) in t.iter_mut().zip(phi) {
                *x += c * p;
            }
        }
        TraceZeroVec::new_unchecked(t)
    }

    /// Face neighbours with wrap-around in every lattice coordinate.
    pub fn neighbours(&self, idx: usize) -> Vec<usize> {
        let multi = self.cell_index(idx);
        let mut out = Vec::with_capacity(2 * multi.len());
        for k in 0..multi.len() {
            for step in [1, self.grid - 1] {
                let mut m = multi.clone();
                m[k] = (m[k] + step) % self.grid;
                out.push(self.flat_index(&m));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().filter(|v| v.is_finite()).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().filter(|v| v.is_finite()).fold(f64::INFINITY, f64::min)
    }

    pub fn cells_above(&self, delta: f64) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] >= delta).collect()
    }
}

pub fn scan_fundamental_domain<T: Real>(report: &ConstructionReport<T>, grid: usize) -> Result<OrbitScan> {
    Ok(scan_with_sampler(&OrbitSampler::new(report)?, grid))
}

pub fn scan_with_sampler<T: Real>(sampler: &OrbitSampler<T>, grid: usize) -> OrbitScan {
    let d = sampler.d();
    let n = d - 1;
    let mut scan = OrbitScan {
        d,
        grid,
        values: Vec::new(),
        time_basis: sampler.time_basis().iter().map(|v| v.coords().to_vec()).collect(),
        failures: Vec::new(),
    };
    let cells = grid.pow(n as u32);
    let results: Vec<std::result::Result<f64, String>> = (0..cells)
        .into_par_iter()
        .map(|idx| sampler.ell_at_time(&scan.cell_time(idx)).map_err(|e| e.to_string()))
        .collect();
    scan.values = results
        .into_iter()
        .enumerate()
        .map(|(idx, r)| match r {
            Ok(v) => v,
            Err(e) => {
                scan.failures.push((idx, e));
                f64::NAN
            }
        })
        .collect();
    scan
}

/// Fraction of cells with `ell >= delta`.
pub fn mass_above(scan: &OrbitScan, delta: f64) -> f64 {
    if scan.values.is_empty() {
        return 0.0;
    }
    scan.values.iter().filter(|&&v| v >= delta).count() as f64 / scan.values.len() as f64
}

/// Largest relative difference between `ell` at `u` and at `u + e_i`.
pub fn periodicity_defect<T: Real>(sampler: &OrbitSampler<T>, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sampler.d() - 1;
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let u: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        let base = sampler.value_at(&u)?;
        for i in 0..n {
            let mut v = u.clone();
            v[i] += 1.0;
            worst = worst.max((sampler.value_at(&v)? - base).abs() / base);
        }
    }
    Ok(worst)
}

/// Largest relative difference between `ell` at `t` and at the reversed time
/// `(t_d, .., t_1)` taken modulo the time lattice.
pub fn involution_defect<T: Real>(sampler: &OrbitSampler<T>, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sampler.d() - 1;
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let u: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        let t = sampler.time(&u);
        let reversed = TraceZeroVec::new_unchecked(t.coords().iter().rev().copied().collect());
        let w: Vec<f64> = sampler.coordinates(&reversed)?.iter().map(|c| c - c.floor()).collect();
        let a = sampler.value_at(&u)?;
        let b = sampler.value_at(&w)?;
        worst = worst.max((a - b).abs() / a);
    }
    Ok(worst)
}
