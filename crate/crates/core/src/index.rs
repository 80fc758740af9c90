//! Certification that the unit lattice of `Z[theta]` is exactly `Delta_Phi`,
//! a brute-force saturation check of the same claim, and regulators.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cassels::{tightness_certificate, ConstructionReport};
use crate::error::{Error, Result};
use crate::geometry::TraceZeroVec;
use crate::linalg::Matrix;
use crate::orbit::{shortest_vector, EomParameters, OrbitScan, VisitReport};
use crate::scalar::{report_digits, Real, Scalar};
use crate::simplex::{HoleCatalog, Perm};

/// Coset representatives of `S_d / <theta>`, one per class of deep holes.
pub fn w_prime(d: usize) -> BTreeSet<Perm> {
    Perm::all(d).iter().map(Perm::coset_representative).collect()
}

/// Representatives whose ball `w_tau + B_r` (modulo `Delta_Phi`) holds a cell with `ell >= delta1`.
pub fn w_double_prime(scan: &OrbitScan, catalog: &HoleCatalog<f64>, delta1: f64, params: &EomParameters) -> Result<BTreeSet<Perm>> {
    let per_cell = scan
        .cells_above(delta1)
        .par_iter()
        .map(|&c| {
            let dists = catalog.class_distances(&scan.cell_time(c))?;
            Ok(dists.into_iter().filter(|(_, dist)| *dist <= params.r).map(|(tau, _)| tau).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_cell.into_iter().flatten().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexMethod {
    PrimeD,
    FullWDoublePrime,
    OracleOnly,
}

/// `covol(Delta_Phi)` against the classical regulator `|det (t_l[i])_{l,i < n}|`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Regulator {
    pub covolume: String,
    /// `covol / sqrt(d)`.
    pub classical: String,
    pub minor_det: String,
    pub defect: f64,
}

pub fn regulator<T: Real>(report: &ConstructionReport<T>) -> Result<Regulator> {
    report.scoped(|| {
        let d = report.d();
        let n = d - 1;
        let covol = report.simplex.covolume();
        let classical = covol.clone() / T::from_i64(d as i64).sqrt();
        let minor = Matrix::from_fn(n, n, |l, i| report.unit_logs[l].coords()[i].clone()).det().abs();
        let digits = report_digits(report.bits());
        Ok(Regulator {
            covolume: covol.to_decimal(digits),
            classical: classical.to_decimal(digits),
            minor_det: minor.to_decimal(digits),
            defect: (classical - minor).abs().to_f64(),
        })
    })
}

/// Thresholds standing in for the hypotheses of the index statement.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IndexConfig {
    /// Tightness constant `M`.
    pub m_const: f64,
    /// Bound on `||h_Phi||` and `||h_Phi^-1||` standing in for the compact set of shapes.
    pub max_distortion: f64,
    /// Covolumes below this are treated as the finitely many exceptions.
    pub min_covolume: f64,
}

impl Default for IndexConfig {
    fn default() -> Self {
        IndexConfig { m_const: 2.0, max_distortion: 2.0, min_covolume: 20.0 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleSummary {
    #[serde(rename = "Q")]
    pub q: usize,
    #[serde(rename = "H")]
    pub h: f64,
    pub candidates: usize,
    pub confirmed: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IndexCertificate {
    pub w_prime: Vec<Perm>,
    pub w_double_prime: Vec<Perm>,
    /// `|W''|`, an upper bound for `[Delta_x : Delta_Phi]`.
    pub bound: usize,
    pub index_one: bool,
    pub method: IndexMethod,
    pub regulator: Regulator,
    pub distortion_norm: f64,
    pub tightness_ratio: f64,
    pub covolume: f64,
    /// Hypotheses that failed; empty when the index statement applies.
    pub unmet: Vec<String>,
    pub oracle: Option<OracleSummary>,
    pub precision_bits: u32,
}

impl IndexCertificate {
    pub fn attach_oracle(&mut self, report: &OracleReport) {
        self.oracle = Some(OracleSummary {
            q: report.q_max,
            h: report.h,
            candidates: report.candidates,
            confirmed: report.is_confirmed(),
        });
    }
}

pub fn certify_index<T: Real>(report: &ConstructionReport<T>, w2: &BTreeSet<Perm>, config: &IndexConfig) -> Result<IndexCertificate> {
    let d = report.d();
    let wp = w_prime(d);
    let ell = report.scoped(|| shortest_vector(report.basis.matrix()))?.length.to_f64();
    let tight = tightness_certificate(report, config.m_const, ell);
    let (distortion_norm, covolume) = report.scoped(|| {
        let h = report.simplex.distortion();
        (h.operator_norm().to_f64().max(h.inverse_operator_norm().to_f64()), report.simplex.covolume().to_f64())
    });
    let mut unmet = Vec::new();
    if !tight.pass {
        unmet.push(format!("tightness with M = {} fails (ratio {})", config.m_const, tight.ratio));
    }
    if distortion_norm > config.max_distortion {
        unmet.push(format!("distortion {distortion_norm} exceeds {}", config.max_distortion));
    }
    if covolume < config.min_covolume {
        unmet.push(format!("covolume {covolume} below {}", config.min_covolume));
    }
    if let Some(stray) = w2.iter().find(|t| !wp.contains(*t)) {
        return Err(Error::Invalid(format!("{stray:?} is not a coset representative")));
    }
    let method = if !unmet.is_empty() {
        IndexMethod::OracleOnly
    } else if is_prime(d) {
        IndexMethod::PrimeD
    } else if w2.len() == wp.len() {
        IndexMethod::FullWDoublePrime
    } else {
        IndexMethod::OracleOnly
    };
    Ok(IndexCertificate {
        w_prime: wp.into_iter().collect(),
        w_double_prime: w2.iter().cloned().collect(),
        bound: w2.len(),
        index_one: method != IndexMethod::OracleOnly,
        method,
        regulator: regulator(report)?,
        distortion_norm,
        tightness_ratio: tight.ratio,
        covolume,
        unmet,
        oracle: None,
        precision_bits: report.bits(),
    })
}

fn is_prime(d: usize) -> bool {
    d >= 2 && (2..d).take_while(|p| p * p <= d).all(|p| !d.is_multiple_of(p))
}

/// A unit of `Z[theta]` reconstructed from a log vector.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FoundUnit {
    pub q: usize,
    /// Coefficients of `v = (1/q) sum c_l t_l`.
    pub numerators: Vec<i64>,
    pub signs: Vec<i8>,
    /// Characteristic polynomial, constant term first.
    pub char_poly: Vec<i128>,
    /// Coordinates in `1, theta, .., theta^(d-1)`.
    pub power_coords: Vec<i128>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum OracleOutcome {
    Confirmed,
    Violation(FoundUnit),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleReport {
    pub q_max: usize,
    pub h: f64,
    pub candidates: usize,
    pub outcome: OracleOutcome,
    pub precision_bits: u32,
}

impl OracleReport {
    pub fn is_confirmed(&self) -> bool {
        matches!(self.outcome, OracleOutcome::Confirmed)
    }
}

/// Default coefficient bound: the largest size whose integrality is decidable at `bits`.
pub fn default_coefficient_bound(bits: u32) -> f64 {
    2f64.powi(bits as i32 / 4)
}

enum Integrality {
    Integer(i128),
    Not,
    Ambiguous,
}

fn integrality<T: Real>(x: &T, h: f64, bits: u32) -> Integrality {
    let size = x.abs().to_f64();
    if !size.is_finite() || size > h {
        return Integrality::Ambiguous;
    }
    let Some(k) = x.round_to_i128() else {
        return Integrality::Ambiguous;
    };
    let dist = (x.clone() - T::from_i128(k)).abs().to_f64();
    if dist <= size.max(1.0) * 2f64.powi(-(bits as i32) / 2) {
        Integrality::Integer(k)
    } else if dist >= 2f64.powi(-(bits as i32) / 4) {
        Integrality::Not
    } else {
        Integrality::Ambiguous
    }
}

/// Elementary symmetric expansion of `prod (x - u_i)`, constant term first.
fn char_poly<T: Scalar>(u: &[T]) -> Vec<T> {
    let mut c = vec![T::one()];
    for ui in u {
        let mut next = vec![T::zero(); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] += ck.clone();
            next[k] -= ck.clone() * ui.clone();
        }
        c = next;
    }
    c
}

/// Checks whether `+-e^(v_i)` are the conjugates of an element of `Z[theta]`
/// with integral characteristic polynomial, trying every sign pattern.
pub fn unit_from_log<T: Real>(report: &ConstructionReport<T>, v: &TraceZeroVec<T>, h: f64) -> Result<Option<(Vec<i8>, Vec<i128>, Vec<i128>)>> {
    report.scoped(|| {
        let d = report.d();
        let bits = report.bits();
        let mags: Vec<T> = v.coords().iter().map(Real::exp).collect();
        let vander = Matrix::from_fn(d, d, |i, j| report.field.roots()[i].powi(j as i32));
        let mut ambiguous = false;
        'signs: for mask in 0..(1u32 << d) {
            let signs: Vec<i8> = (0..d).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let u: Vec<T> = mags.iter().zip(&signs).map(|(m, &s)| if s < 0 { -m.clone() } else { m.clone() }).collect();
            let mut poly = Vec::with_capacity(d + 1);
            for c in char_poly(&u) {
                match integrality(&c, h, bits) {
                    Integrality::Integer(k) => poly.push(k),
                    Integrality::Not => continue 'signs,
                    Integrality::Ambiguous => {
                        ambiguous = true;
                        continue 'signs;
                    }
                }
            }
            let mut coords = Vec::with_capacity(d);
            for a in vander.solve(&u)? {
                match integrality(&a, h, bits) {
                    Integrality::Integer(k) => coords.push(k),
                    Integrality::Not => continue 'signs,
                    Integrality::Ambiguous => {
                        ambiguous = true;
                        continue 'signs;
                    }
                }
            }
            return Ok(Some((signs, poly, coords)));
        }
        if ambiguous {
            return Err(Error::RaisePrecision { candidate: v.coords().iter().map(Scalar::to_f64).collect() });
        }
        Ok(None)
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Searches `(1/q) Delta_Phi` for `2 <= q <= q_max` for units of `Z[theta]`
/// outside `Delta_Phi`. Candidates are reduced fractions `(1/q) sum c_l t_l`
/// with `0 <= c_l < q`.
pub fn unit_saturation_oracle<T: Real>(report: &ConstructionReport<T>, h: f64, q_max: usize) -> Result<OracleReport> {
    let n = report.d() - 1;
    let mut candidates = Vec::new();
    for q in 2..=q_max as i64 {
        let total = (q as usize).pow(n as u32);
        for idx in 0..total {
            let mut c = vec![0i64; n];
            let mut rest = idx;
            for slot in c.iter_mut() {
                *slot = (rest % q as usize) as i64;
                rest /= q as usize;
            }
            if c.iter().fold(q, |g, &x| gcd(g, x)) == 1 {
                candidates.push((q as usize, c));
            }
        }
    }
    let found = candidates
        .par_iter()
        .map(|(q, c)| {
            let v = report.scoped(|| {
                let mut v = TraceZeroVec::zero(report.d());
                for (cl, tl) in c.iter().zip(&report.unit_logs) {
                    v = v.add(&tl.scale(&T::from_ratio(*cl, *q as i64)));
                }
                v
            });
            Ok(unit_from_log(report, &v, h)?.map(|(signs, char_poly, power_coords)| FoundUnit {
                q: *q,
                numerators: c.clone(),
                signs,
                char_poly,
                power_coords,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let outcome = match found.into_iter().flatten().next() {
        Some(unit) => OracleOutcome::Violation(unit),
        None => OracleOutcome::Confirmed,
    };
    Ok(OracleReport { q_max, h, candidates: candidates.len(), outcome, precision_bits: report.bits() })
}

/// Component count at `delta1`, checked against `|W''|`.
pub fn distinct_visits(visits: &VisitReport, certificate: &IndexCertificate, grid: usize) -> Result<usize> {
    if !certificate.index_one {
        return Err(Error::ParameterConstraint(format!("index one not certified (method {:?})", certificate.method)));
    }
    let count = visits.count();
    if count < certificate.bound {
        let detail = format!(
            "grid {grid}, delta1 {}, components {:?}, W'' {:?}",
            visits.delta1,
            visits.components.iter().map(|c| (c.cells, c.tau.images().to_vec())).collect::<Vec<_>>(),
            certificate.w_double_prime.iter().map(|t| t.images().to_vec()).collect::<Vec<_>>()
        );
        return Err(Error::DistinctVisits { components: count, required: certificate.bound, detail });
    }
    Ok(count)
}
