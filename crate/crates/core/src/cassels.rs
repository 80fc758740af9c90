//! Fields `Q[x] / p_m` with `p_m = prod (x - m_j) - 1`, their unimodular
//! lattices `x_m`, the units `theta - m_l` and the deep-hole decompositions.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{diag_flow_entries, PrecisionConfig, TraceZeroVec};
use crate::linalg::{IntMatrix, Matrix};
use crate::scalar::{report_digits, with_precision, Real, Scalar};
use crate::simplex::{Perm, SimplexSet};

/// Pairwise distinct integers `m_1, .., m_d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegerSpectrum {
    m: Vec<i64>,
    eta: f64,
}

impl IntegerSpectrum {
    pub fn new(m: Vec<i64>) -> Result<Self> {
        if m.len() < 2 {
            return Err(Error::Dimension(m.len()));
        }
        let mut gap = i64::MAX;
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                let diff = m[i].checked_sub(m[j]).ok_or(Error::Overflow("spectrum"))?.abs();
                if diff == 0 {
                    return Err(Error::EntriesNotDistinct);
                }
                gap = gap.min(diff);
            }
        }
        let norm = m.iter().map(|x| x.abs()).max().unwrap_or(0);
        Ok(IntegerSpectrum { eta: gap as f64 / norm as f64, m })
    }

    /// `k m_0` for a primitive direction `m_0`.
    pub fn family(direction: &[i64], k: i64) -> Result<Self> {
        let m = direction
            .iter()
            .map(|x| x.checked_mul(k).ok_or(Error::Overflow("spectrum")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m)
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn d(&self) -> usize {
        self.m.len()
    }

    /// `max |m_i|`.
    pub fn norm(&self) -> i64 {
        self.m.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// `min |m_i - m_j| / max |m_i|`.
    pub fn eta(&self) -> f64 {
        self.eta
    }

}

/// Coefficients of `prod (x - m_j) - 1`, constant term first.
pub fn build_polynomial(m: &[i64]) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::from(1)];
    for &mj in m {
        let mut next = vec![BigInt::from(0); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * mj;
        }
        coeffs = next;
    }
    coeffs[0] -= 1;
    coeffs
}

/// `(p(x), p'(x))` by Horner's rule.
fn horner<T: Scalar>(coeffs: &[T], x: &T) -> (T, T) {
    let mut p = T::zero();
    let mut dp = T::zero();
    for c in coeffs.iter().rev() {
        dp = dp * x.clone() + p.clone();
        p = p * x.clone() + c.clone();
    }
    (p, dp)
}

/// The real roots of `p_m`, root `j` being the one next to `m_j`.
#[derive(Clone, Debug)]
pub struct CasselsField<T> {
    spectrum: IntegerSpectrum,
    bits: u32,
    coeffs: Vec<BigInt>,
    roots: Vec<T>,
    radii: Vec<T>,
}

/// Newton iteration from each `m_j` at `precision`; see [`CasselsField::isolate`].
pub fn isolate_roots<T: Real>(m: &[i64], precision: PrecisionConfig) -> Result<CasselsField<T>> {
    CasselsField::isolate(&IntegerSpectrum::new(m.to_vec())?, precision)
}

impl<T: Real> CasselsField<T> {
    /// Runs Newton's method from every `m_j`. Each root gets the radius
    /// `d |p / p'|` (a disc of that radius around any point contains a root),
    /// padded by the rounding level; disjoint discs centred on the real line
    /// then certify `d` distinct real roots.
    pub fn isolate(spectrum: &IntegerSpectrum, precision: PrecisionConfig) -> Result<Self> {
        with_precision(precision.bits(), || {
            let d = spectrum.d();
            let bits = T::precision_bits().min(precision.bits());
            let coeffs = build_polynomial(spectrum.m());
            let c: Vec<T> = coeffs.iter().map(T::from_bigint).collect();
            let tol = T::tolerance();
            let floor = tol.clone() * tol.clone() * T::from_i64(16);
            let mut roots = Vec::with_capacity(d);
            let mut radii = Vec::with_capacity(d);
            for (j, &mj) in spectrum.m().iter().enumerate() {
                let seed = T::from_i64(mj);
                let mut x = seed.clone();
                let mut converged = false;
                for _ in 0..(64 + bits as usize) {
                    let (p, dp) = horner(&c, &x);
                    if dp.is_zero() {
                        break;
                    }
                    let step = p / dp;
                    x -= step.clone();
                    if step.abs() <= floor.clone() * T::one().max_of(x.abs()) {
                        converged = true;
                        break;
                    }
                }
                if !converged || !x.is_finite_value() {
                    return Err(Error::SpectrumTooSmall(format!("Newton iteration from m_{} = {mj} did not converge", j + 1)));
                }
                let drift = (x.clone() - seed).abs();
                if let Some(&other) = spectrum.m().iter().find(|&&mi| mi != mj && (x.clone() - T::from_i64(mi)).abs() <= drift) {
                    return Err(Error::SpectrumTooSmall(format!(
                        "root found from m_{} = {mj} lies nearer to {other} (drift {:.4})",
                        j + 1,
                        drift.to_f64()
                    )));
                }
                let (p, dp) = horner(&c, &x);
                let radius = T::from_i64(d as i64) * (p / dp).abs() + floor.clone() * T::one().max_of(x.abs());
                roots.push(x);
                radii.push(radius);
            }
            for i in 0..d {
                for j in i + 1..d {
                    if (roots[i].clone() - roots[j].clone()).abs() <= radii[i].clone() + radii[j].clone() {
                        return Err(Error::SpectrumTooSmall(format!("root enclosures {} and {} overlap", i + 1, j + 1)));
                    }
                }
            }
            Ok(CasselsField { spectrum: spectrum.clone(), bits, coeffs, roots, radii })
        })
    }

    pub fn spectrum(&self) -> &IntegerSpectrum {
        &self.spectrum
    }

    pub fn d(&self) -> usize {
        self.spectrum.d()
    }

    /// Mantissa bits the roots were computed with.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn polynomial(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn roots(&self) -> &[T] {
        &self.roots
    }

    pub fn radii(&self) -> &[T] {
        &self.radii
    }

    /// `|theta_j - m_j|`.
    pub fn deviations(&self) -> Vec<T> {
        self.roots.iter().zip(self.spectrum.m()).map(|(t, &m)| (t.clone() - T::from_i64(m)).abs()).collect()
    }

    /// Conjugates `theta_i - m_l` of the unit `omega_l`.
    pub fn unit_conjugates(&self, l: usize) -> Vec<T> {
        self.scoped(|| {
            let ml = T::from_i64(self.spectrum.m()[l]);
            self.roots.iter().map(|t| t.clone() - ml.clone()).collect()
        })
    }

    /// Norms `prod_i (theta_i - m_l)`, each equal to `(-1)^(d+1)`.
    pub fn unit_norms(&self) -> Vec<T> {
        (0..self.d()).map(|l| self.unit_conjugates(l).into_iter().fold(T::one(), |a, b| a * b)).collect()
    }

    pub(crate) fn scoped<R>(&self, f: impl FnOnce() -> R) -> R {
        with_precision(self.bits.max(64), f)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum IrreducibilityCertificate {
    /// Every proper subset of roots has a product `prod |m_l - theta_j| < 1`.
    Certified { worst_product: f64 },
    NotCertified { subset: Vec<usize>, product: f64 },
}

impl IrreducibilityCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, IrreducibilityCertificate::Certified { .. })
    }
}

/// A monic integer factor `q` of `p_m` would satisfy `|q(m_l)| = 1` because
/// `p_m(m_l) = -1`. Bounding `|q(m_l)| < 1` for a suitable `l` in each
/// candidate root subset rules every factor out.
pub fn irreducibility_certificate<T: Real>(field: &CasselsField<T>) -> IrreducibilityCertificate {
    field.scoped(|| {
        let d = field.d();
        let m = field.spectrum.m();
        let mut worst: f64 = 0.0;
        for mask in 1u32..(1 << d) - 1 {
            let members: Vec<usize> = (0..d).filter(|j| mask >> j & 1 == 1).collect();
            let best = members
                .iter()
                .map(|&l| {
                    let ml = T::from_i64(m[l]);
                    members.iter().fold(T::one(), |acc, &j| {
                        acc * ((ml.clone() - field.roots[j].clone()).abs() + field.radii[j].clone())
                    })
                })
                .fold(None, |acc: Option<T>, p| Some(acc.map_or(p.clone(), |a| a.min_of(p))))
                .expect("non-empty subset");
            if best >= T::one() {
                return IrreducibilityCertificate::NotCertified { subset: members, product: best.to_f64() };
            }
            worst = worst.max(best.to_f64());
        }
        IrreducibilityCertificate::Certified { worst_product: worst }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisLabel {
    /// Columns are the embeddings of `1, theta, .., theta^n`.
    Power,
    /// Columns are the embeddings of `1, omega_tau(1), omega_tau(1) omega_tau(2), ..`.
    UnitProduct(Perm),
}

/// Columns form a basis of a unimodular lattice.
#[derive(Clone, Debug)]
pub struct LatticeBasis<T> {
    matrix: Matrix<T>,
    label: BasisLabel,
}

impl<T: Real> LatticeBasis<T> {
    pub fn new(matrix: Matrix<T>, label: BasisLabel) -> Result<Self> {
        let det = matrix.det();
        let err = (det.abs() - T::one()).abs();
        if err > T::tolerance() * T::from_i64(1000) {
            return Err(Error::PrecisionExhausted(format!("|det| of basis deviates from 1 by {:e}", err.to_f64())));
        }
        Ok(LatticeBasis { matrix, label })
    }

    pub fn identity(d: usize) -> Self {
        LatticeBasis { matrix: Matrix::identity(d), label: BasisLabel::Power }
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn label(&self) -> &BasisLabel {
        &self.label
    }

    pub fn d(&self) -> usize {
        self.matrix.rows()
    }

    pub fn to_f64(&self) -> LatticeBasis<f64> {
        LatticeBasis { matrix: self.matrix.map(Scalar::to_f64), label: self.label.clone() }
    }
}

/// `x_m` with its units and simplex set.
#[derive(Clone, Debug)]
pub struct ConstructionReport<T> {
    pub field: CasselsField<T>,
    /// `prod_{i<j} (theta_j - theta_i)` in absolute value.
    pub d_m: T,
    pub basis: LatticeBasis<T>,
    pub unit_logs: Vec<TraceZeroVec<T>>,
    pub simplex: SimplexSet<T>,
}

/// `t_l[i] = log |theta_i - m_l|` and the simplex set they form.
pub fn unit_log_vectors<T: Real>(field: &CasselsField<T>) -> Result<(Vec<TraceZeroVec<T>>, SimplexSet<T>)> {
    field.scoped(|| {
        let logs = (0..field.d())
            .map(|l| {
                let conj = field.unit_conjugates(l);
                if conj.iter().any(|c| c.is_zero()) {
                    return Err(Error::SpectrumTooSmall(format!("root coincides with m_{}", l + 1)));
                }
                TraceZeroVec::new(conj.iter().map(|c| c.abs().ln()).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        let set = SimplexSet::new(logs.clone())?;
        Ok((logs, set))
    })
}

/// Builds `x_m = D_m^(-1/d) (theta_i^(j-1))` and the unit data.
pub fn build_lattice<T: Real>(field: &CasselsField<T>) -> Result<ConstructionReport<T>> {
    field.scoped(|| {
        let d = field.d();
        let mut d_m = T::one();
        for i in 0..d {
            for j in i + 1..d {
                d_m *= field.roots[j].clone() - field.roots[i].clone();
            }
        }
        let d_m = d_m.abs();
        let scale = T::one() / d_m.root(d as u32);
        let matrix = Matrix::from_fn(d, d, |i, j| field.roots[i].powi(j as i32) * scale.clone());
        let basis = LatticeBasis::new(matrix, BasisLabel::Power)?;
        let (unit_logs, simplex) = unit_log_vectors(field)?;
        Ok(ConstructionReport { field: field.clone(), d_m, basis, unit_logs, simplex })
    })
}

impl<T: Real> ConstructionReport<T> {
    pub fn d(&self) -> usize {
        self.field.d()
    }

    pub fn bits(&self) -> u32 {
        self.field.bits()
    }

    pub fn scoped<R>(&self, f: impl FnOnce() -> R) -> R {
        self.field.scoped(f)
    }

    /// Sup norm of the lattice vector `D_m^(-1/d) (1, .., 1)`.
    pub fn diagonal_vector_length(&self) -> T {
        self.scoped(|| T::one() / self.d_m.root(self.d() as u32))
    }

    /// Basis of `x_m` from the unit products `1, omega_tau(1), ..`.
    pub fn unit_product_basis(&self, tau: &Perm) -> Result<LatticeBasis<T>> {
        self.scoped(|| {
            let d = self.d();
            let scale = T::one() / self.d_m.root(d as u32);
            let conj: Vec<Vec<T>> = (0..d).map(|l| self.field.unit_conjugates(l)).collect();
            let matrix = Matrix::from_fn(d, d, |i, j| {
                (0..j).fold(scale.clone(), |acc, l| acc * conj[tau.apply(l)][i].clone())
            });
            LatticeBasis::new(matrix, BasisLabel::UnitProduct(tau.clone()))
        })
    }
}

/// The integer matrix of multiplication by `omega_l` on the power basis.
pub fn stabilizer_check<T: Real>(report: &ConstructionReport<T>, l: usize) -> Result<IntMatrix> {
    report.scoped(|| {
        let d = report.d();
        let b = report.basis.matrix();
        let conj = report.field.unit_conjugates(l);
        let scaled = Matrix::from_fn(d, d, |i, j| conj[i].clone() * b[(i, j)].clone());
        let gamma = b.inverse()?.mul(&scaled);
        let mut residual = T::zero();
        let mut out = IntMatrix::identity(d);
        for i in 0..d {
            for j in 0..d {
                let v = gamma[(i, j)].clone();
                let r = v.round_to_i128().ok_or(Error::Overflow("stabilizer"))?;
                residual = residual.max_of((v - T::from_i128(r)).abs());
                out.set(i, j, r);
            }
        }
        let scale = T::one().max_of(gamma.max_abs());
        if residual > T::tolerance() * T::from_i64(1000) * scale {
            return Err(Error::NotAStabilizer { residual: residual.to_f64() });
        }
        if out.det()?.abs() != 1 {
            return Err(Error::NotAStabilizer { residual: residual.to_f64() });
        }
        Ok(out)
    })
}

/// Max rounding residual of the stabiliser of `omega_l`.
pub fn stabilizer_residual<T: Real>(report: &ConstructionReport<T>, l: usize) -> Result<f64> {
    let gamma = stabilizer_check(report, l)?;
    report.scoped(|| {
        let d = report.d();
        let b = report.basis.matrix();
        let conj = report.field.unit_conjugates(l);
        let lhs = Matrix::from_fn(d, d, |i, j| conj[i].clone() * b[(i, j)].clone());
        let rhs = b.mul(&gamma.to_scalar());
        Ok(lhs.sub(&rhs).max_abs().to_f64())
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TightnessCertificate {
    pub m_const: f64,
    pub ell: f64,
    pub xi: f64,
    /// `M e^(-(n/2) xi)`.
    pub bound: f64,
    /// `ell e^((n/2) xi)`; the pass condition is `ratio <= M`.
    pub ratio: f64,
    pub pass: bool,
}

/// Checks `ell(x_m) <= M e^(-(n/2) xi)` for a given shortest-vector length.
pub fn tightness_certificate<T: Real>(report: &ConstructionReport<T>, m_const: f64, ell: f64) -> TightnessCertificate {
    let n = (report.d() - 1) as f64;
    let xi = report.simplex.xi().to_f64();
    let decay = (-(n / 2.0) * xi).exp();
    let ratio = ell / decay;
    TightnessCertificate { m_const, ell, xi, bound: m_const * decay, ratio, pass: ratio <= m_const }
}

/// `a(w_tau) f = g a(s)` after reordering the columns of the unit-product basis.
#[derive(Clone, Debug)]
pub struct DeepHoleDecomposition<T> {
    pub tau: Perm,
    pub g: Matrix<T>,
    pub s: TraceZeroVec<T>,
    /// Max-entry norm of `g - I`.
    pub g_deviation: T,
    /// Signed permutation with `a(w_tau) f_tau gamma = g a(s)`.
    pub gamma: IntMatrix,
}

/// Splits a matrix with dominant entries into `g a(s)`: columns are matched
/// to their dominant rows, sign-normalised, and divided by their diagonal
/// entries scaled to determinant one.
///
/// When two columns share a dominant row, `assign` falls back to the
/// matching that maximises the product of the matched entries; otherwise
/// the split is reported as degenerate.
pub fn split_diagonal<T: Real>(c: &Matrix<T>, assign: bool) -> Result<(Matrix<T>, TraceZeroVec<T>, IntMatrix)> {
    let d = c.rows();
    let mut target = vec![usize::MAX; d];
    for j in 0..d {
        let col = c.column(j);
        let row = (0..d)
            .max_by(|&a, &b| col[a].abs().partial_cmp(&col[b].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .expect("d >= 1");
        if target.contains(&row) {
            if !assign {
                return Err(Error::DecompositionDegenerate(format!("columns share dominant row {}", row + 1)));
            }
            target = best_assignment(c)?;
            break;
        }
        target[j] = row;
    }
    let mut gamma = IntMatrix::from_fn(d, d, |_, _| 0);
    let mut reordered = Matrix::zeros(d, d);
    for (j, &row) in target.iter().enumerate() {
        let col = c.column(j);
        let sign = if col[row].is_negative_value() { -1 } else { 1 };
        let signed: Vec<T> = col.iter().map(|x| if sign < 0 { -x.clone() } else { x.clone() }).collect();
        reordered.set_column(row, &signed);
        gamma.set(j, row, sign);
    }
    let diag: Vec<T> = (0..d).map(|i| reordered[(i, i)].clone()).collect();
    if diag.iter().any(|x| x.is_zero() || !x.is_finite_value()) {
        return Err(Error::DecompositionDegenerate("vanishing diagonal entry".into()));
    }
    let logs: Vec<T> = diag.iter().map(|x| x.ln()).collect();
    let s = crate::geometry::project_trace_zero(&logs);
    let a = diag_flow_entries(&s)?;
    let g = Matrix::from_fn(d, d, |i, j| reordered[(i, j)].clone() / a[j].clone());
    Ok((g, s, gamma))
}

/// Row for each column maximising `sum_j log |c[row_j][j]|` over all matchings.
fn best_assignment<T: Real>(c: &Matrix<T>) -> Result<Vec<usize>> {
    let d = c.rows();
    let logs: Vec<Vec<f64>> = (0..d).map(|i| (0..d).map(|j| c[(i, j)].abs().to_f64().ln()).collect()).collect();
    Perm::all(d)
        .into_iter()
        .map(|p| {
            let score: f64 = (0..d).map(|j| logs[p.apply(j)][j]).sum();
            (p, score)
        })
        .filter(|(_, s)| s.is_finite())
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(p, _)| p.images().to_vec())
        .ok_or_else(|| Error::DecompositionDegenerate("no matching with nonzero entries".into()))
}

pub fn deep_hole_decomposition<T: Real>(report: &ConstructionReport<T>, tau: &Perm) -> Result<DeepHoleDecomposition<T>> {
    report.scoped(|| {
        let d = report.d();
        let f = report.unit_product_basis(tau)?;
        let w = report.simplex.deep_hole(tau);
        let a = diag_flow_entries(&w)?;
        let c = Matrix::from_fn(d, d, |i, j| a[i].clone() * f.matrix()[(i, j)].clone());
        let (g, s, gamma) = split_diagonal(&c, false)?;
        let g_deviation = g.sub(&Matrix::identity(d)).max_abs();
        Ok(DeepHoleDecomposition { tau: tau.clone(), g, s, g_deviation, gamma })
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EpsilonCCertificate {
    pub epsilon: f64,
    pub c: f64,
    pub covolume: f64,
    /// `C e^(-covolume^epsilon)`.
    pub bound: f64,
    pub max_deviation: f64,
    pub worst_tau: Perm,
    pub pass: bool,
}

/// Checks `||g_tau - I|| <= C e^(-covol^epsilon)` over the given decompositions.
pub fn epsilon_c_certificate<T: Real>(decompositions: &[DeepHoleDecomposition<T>], covolume: f64, epsilon: f64, c: f64) -> Result<EpsilonCCertificate> {
    let worst = decompositions
        .iter()
        .max_by(|a, b| a.g_deviation.partial_cmp(&b.g_deviation).unwrap_or(std::cmp::Ordering::Equal))
        .ok_or_else(|| Error::Invalid("no decompositions".into()))?;
    let bound = c * (-covolume.powf(epsilon)).exp();
    let max_deviation = worst.g_deviation.to_f64();
    Ok(EpsilonCCertificate { epsilon, c, covolume, bound, max_deviation, worst_tau: worst.tau.clone(), pass: max_deviation <= bound })
}

/// Decompositions for every coset representative of `W'`.
pub fn representative_decompositions<T: Real>(report: &ConstructionReport<T>) -> Result<Vec<DeepHoleDecomposition<T>>> {
    Perm::all(report.d())
        .into_iter()
        .filter(|p| p.coset_representative() == *p)
        .map(|p| deep_hole_decomposition(report, &p))
        .collect()
}

/// Decimal-string view of a [`ConstructionReport`] for persistence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub m: Vec<i64>,
    pub eta: f64,
    pub precision_bits: u32,
    pub polynomial: Vec<String>,
    pub roots: Vec<String>,
    pub root_radii: Vec<String>,
    #[serde(rename = "D_m")]
    pub d_m: String,
    /// Row-major.
    pub basis: Vec<Vec<String>>,
    pub t_vectors: Vec<Vec<String>>,
    pub xi: String,
    pub covol_delta_phi: String,
}

impl<T: Real> ConstructionReport<T> {
    pub fn document(&self) -> ReportDocument {
        self.scoped(|| {
            let digits = report_digits(self.bits());
            let dec = |x: &T| x.to_decimal(digits);
            let d = self.d();
            ReportDocument {
                m: self.field.spectrum.m().to_vec(),
                eta: self.field.spectrum.eta(),
                precision_bits: self.bits(),
                polynomial: self.field.coeffs.iter().map(ToString::to_string).collect(),
                roots: self.field.roots.iter().map(dec).collect(),
                root_radii: self.field.radii.iter().map(dec).collect(),
                d_m: dec(&self.d_m),
                basis: (0..d).map(|i| (0..d).map(|j| dec(&self.basis.matrix()[(i, j)])).collect()).collect(),
                t_vectors: self.unit_logs.iter().map(|t| t.coords().iter().map(dec).collect()).collect(),
                xi: dec(self.simplex.xi()),
                covol_delta_phi: dec(self.simplex.covolume()),
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Mpf;
    use approx::assert_relative_eq;

    fn field(k: i64) -> CasselsField<Mpf> {
        isolate_roots(&[-k, 0, k], PrecisionConfig::default()).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(build_polynomial(&[-10, 0, 10]), big(&[-1, -100, 0, 1]));
        assert_eq!(build_polynomial(&[0, 1]), big(&[-1, -1, 1]));
        let m = [3, -7, 2, 11];
        let c = build_polynomial(&m);
        for &ml in &m {
            let value = c.iter().rev().fold(BigInt::from(0), |acc, x| acc * ml + x);
            assert_eq!(value, BigInt::from(-1));
        }
    }

    #[test]
    fn spectrum_validation() {
        assert_eq!(IntegerSpectrum::new(vec![0, 0, 1]), Err(Error::EntriesNotDistinct));
        let s = IntegerSpectrum::family(&[-1, 0, 1], 10).unwrap();
        assert_eq!(s.m(), &[-10, 0, 10]);
        assert_relative_eq!(s.eta(), 1.0);
    }

    #[test]
    fn roots_for_k_ten() {
        let f = field(10);
        let roots: Vec<f64> = f.roots().iter().map(Scalar::to_f64).collect();
        assert_relative_eq!(roots[0], -9.99499624499, epsilon = 1e-10);
        assert_relative_eq!(roots[1], -0.01000001, epsilon = 1e-10);
        assert_relative_eq!(roots[2], 10.004996255, epsilon = 1e-9);
        for r in f.radii() {
            assert!(r.to_f64() < 1e-60);
        }
        for norm in f.unit_norms() {
            assert!((norm.to_f64() - 1.0).abs() < 1e-30);
        }
    }

    #[test]
    fn small_spectrum_is_rejected() {
        let err = isolate_roots::<Mpf>(&[0, 1, 2], PrecisionConfig::default()).unwrap_err();
        assert!(matches!(err, Error::SpectrumTooSmall(_)));
    }

    #[test]
    fn golden_ratio_field() {
        let f = isolate_roots::<Mpf>(&[0, 1], PrecisionConfig::default()).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert_relative_eq!(f.roots()[1].to_f64(), phi, epsilon = 1e-12);
        assert!(irreducibility_certificate(&f).is_certified());
    }

    #[test]
    fn construction_for_k_ten() {
        let f = field(10);
        assert!(irreducibility_certificate(&f).is_certified());
        let r = build_lattice(&f).unwrap();
        assert_relative_eq!(r.d_m.to_f64(), 1999.99324999, epsilon = 1e-6);
        assert_relative_eq!(r.diagonal_vector_length().to_f64(), 0.079370142, epsilon = 1e-8);
        assert_relative_eq!(r.simplex.xi().to_f64(), 2.995982055, epsilon = 1e-8);
        let t3: Vec<f64> = r.unit_logs[2].coords().iter().map(Scalar::to_f64).collect();
        assert_relative_eq!(t3[0], 2.9954821, epsilon = 1e-6);
        assert_relative_eq!(t3[1], 2.3035846, epsilon = 1e-6);
        assert_relative_eq!(t3[2], -5.2990666, epsilon = 1e-6);
    }

    #[test]
    fn stabilizer_of_theta_is_the_companion_matrix() {
        let r = build_lattice(&field(10)).unwrap();
        let gamma = stabilizer_check(&r, 1).unwrap();
        assert_eq!(gamma.to_rows(), vec![vec![0, 0, 1], vec![1, 0, 100], vec![0, 1, 0]]);
        for l in 0..3 {
            assert!(stabilizer_residual(&r, l).unwrap() < 1e-30);
        }
    }

    #[test]
    fn unit_product_basis_is_unimodular() {
        let r = build_lattice(&field(100)).unwrap();
        for tau in Perm::all(3) {
            let f = r.unit_product_basis(&tau).unwrap();
            assert!((f.matrix().det().abs().to_f64() - 1.0).abs() < 1e-30);
        }
    }

    #[test]
    fn decomposition_reassembles() {
        let r = build_lattice(&field(100)).unwrap();
        for tau in Perm::all(3) {
            let dec = deep_hole_decomposition(&r, &tau).unwrap();
            assert!(dec.g_deviation.to_f64() < 0.1);
            let f = r.unit_product_basis(&tau).unwrap();
            let a = diag_flow_entries(&r.simplex.deep_hole(&tau)).unwrap();
            let lhs = Matrix::diagonal(&a).mul(f.matrix()).mul(&dec.gamma.to_scalar());
            let rhs = dec.g.mul(&Matrix::diagonal(&diag_flow_entries(&dec.s).unwrap()));
            assert!(lhs.sub(&rhs).max_abs().to_f64() < 1e-40);
        }
    }

    #[test]
    fn tightness_examples() {
        let r = build_lattice(&field(10)).unwrap();
        let ell = r.diagonal_vector_length().to_f64();
        assert!(tightness_certificate(&r, 2.0, ell).pass);
        assert!(!tightness_certificate(&r, 1.0, ell).pass);
    }
}
