//! Trace-zero vectors, the ceiling functional, lattices inside the
//! trace-zero hyperplane and the diagonal flow `a(t)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Real, Scalar};

/// Ambient dimension `d` (at least 2); the hyperplane has dimension `n = d - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Dimension(d));
        }
        Ok(Dimension(d))
    }

    pub fn d(self) -> usize {
        self.0
    }

    pub fn n(self) -> usize {
        self.0 - 1
    }
}

/// Mantissa size and derived tolerance used by the multiprecision pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    bits: u32,
}

impl PrecisionConfig {
    pub fn new(bits: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::Invalid(format!("precision must be at least 64 bits (got {bits})")));
        }
        Ok(PrecisionConfig { bits })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// `2^(-bits/2)`.
    pub fn tolerance(self) -> f64 {
        2f64.powi(-(self.bits as i32 / 2))
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig { bits: crate::scalar::DEFAULT_BITS }
    }
}

/// A point of the hyperplane of vectors with vanishing coordinate sum.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceZeroVec<T> {
    coords: Vec<T>,
}

impl<T: Scalar> TraceZeroVec<T> {
    /// Validates the coordinate sum against `d * tolerance * max(1, |v|)`.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::Dimension(coords.len()));
        }
        let sum = coords.iter().cloned().fold(T::zero(), |a, b| a + b);
        let scale = coords.iter().fold(T::one(), |a, b| a.max_of(b.abs()));
        let bound = T::from_i64(coords.len() as i64) * T::tolerance() * scale;
        if sum.abs() > bound {
            return Err(Error::NotTraceZero { sum: sum.to_f64() });
        }
        Ok(TraceZeroVec { coords })
    }

    pub(crate) fn new_unchecked(coords: Vec<T>) -> Self {
        TraceZeroVec { coords }
    }

    pub fn zero(d: usize) -> Self {
        TraceZeroVec { coords: vec![T::zero(); d] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    /// `max_i t_i`, the ceiling functional.
    pub fn ceil_norm(&self) -> T {
        ceil_norm(&self.coords)
    }

    pub fn sup_norm(&self) -> T {
        sup_norm(&self.coords)
    }

    pub fn add(&self, other: &Self) -> Self {
        TraceZeroVec { coords: zip_with(&self.coords, &other.coords, |a, b| a + b) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        TraceZeroVec { coords: zip_with(&self.coords, &other.coords, |a, b| a - b) }
    }

    pub fn scale(&self, s: &T) -> Self {
        TraceZeroVec { coords: self.coords.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn dot(&self, other: &Self) -> T {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn sum(&self) -> T {
        self.coords.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> TraceZeroVec<U> {
        TraceZeroVec { coords: self.coords.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> TraceZeroVec<f64> {
        self.map(Scalar::to_f64)
    }
}

impl<T: Real> TraceZeroVec<T> {
    pub fn euclidean_norm(&self) -> T {
        self.dot(self).sqrt()
    }
}

fn zip_with<T: Clone>(a: &[T], b: &[T], f: impl Fn(T, T) -> T) -> Vec<T> {
    assert_eq!(a.len(), b.len(), "dimension mismatch");
    a.iter().zip(b).map(|(x, y)| f(x.clone(), y.clone())).collect()
}

pub fn ceil_norm<T: Scalar>(v: &[T]) -> T {
    let mut it = v.iter();
    let first = it.next().cloned().unwrap_or_else(T::zero);
    it.fold(first, |acc, x| acc.max_of(x.clone()))
}

pub fn sup_norm<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, x| acc.max_of(x.abs()))
}

/// Orthogonal projection onto the trace-zero hyperplane: `v - mean(v) * 1`.
pub fn project_trace_zero<T: Scalar>(v: &[T]) -> TraceZeroVec<T> {
    let d = T::from_i64(v.len() as i64);
    let mean = v.iter().cloned().fold(T::zero(), |a, b| a + b) / d;
    TraceZeroVec { coords: v.iter().map(|x| x.clone() - mean.clone()).collect() }
}

/// A lattice of full rank `n` inside the trace-zero hyperplane.
#[derive(Clone, Debug)]
pub struct HyperLattice<T> {
    basis: Vec<TraceZeroVec<T>>,
    covolume: T,
}

impl<T: Real> HyperLattice<T> {
    pub fn new(basis: Vec<TraceZeroVec<T>>) -> Result<Self> {
        let d = basis.first().map_or(0, TraceZeroVec::dim);
        if d < 2 {
            return Err(Error::Dimension(d));
        }
        if basis.len() != d - 1 {
            return Err(Error::DimensionMismatch { expected: d - 1, got: basis.len() });
        }
        if let Some(bad) = basis.iter().find(|b| b.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: bad.dim() });
        }
        let gram = gram_matrix(&basis);
        let det = gram.det();
        let scale = basis.iter().fold(T::one(), |acc, b| acc * b.dot(b).max_of(T::one()));
        if det <= T::tolerance() * scale {
            return Err(Error::RankDeficient);
        }
        Ok(HyperLattice { covolume: det.sqrt(), basis })
    }

    pub fn basis(&self) -> &[TraceZeroVec<T>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `sqrt(det Gram)` in the metric induced from Euclidean space.
    pub fn covolume(&self) -> &T {
        &self.covolume
    }

    pub fn gram(&self) -> Matrix<T> {
        gram_matrix(&self.basis)
    }

    /// Real coordinates of `v` with respect to the basis.
    pub fn coordinates(&self, v: &TraceZeroVec<T>) -> Result<Vec<T>> {
        let rhs: Vec<T> = self.basis.iter().map(|b| b.dot(v)).collect();
        self.gram().solve(&rhs)
    }

    pub fn point(&self, coeffs: &[T]) -> TraceZeroVec<T> {
        let d = self.basis[0].dim();
        let mut acc = TraceZeroVec::zero(d);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            acc = acc.add(&b.scale(c));
        }
        acc
    }
}

/// Covolume of the lattice spanned by `basis`.
pub fn covolume<T: Real>(lattice: &HyperLattice<T>) -> T {
    lattice.covolume().clone()
}

fn gram_matrix<T: Scalar>(basis: &[TraceZeroVec<T>]) -> Matrix<T> {
    Matrix::from_fn(basis.len(), basis.len(), |i, j| basis[i].dot(&basis[j]))
}

/// `a(t) = diag(e^{t_1}, ..., e^{t_d})`.
pub fn diag_flow<T: Real>(t: &TraceZeroVec<T>) -> Result<Matrix<T>> {
    let entries = diag_flow_entries(t)?;
    Ok(Matrix::diagonal(&entries))
}

/// Diagonal entries of `a(t)`.
pub fn diag_flow_entries<T: Real>(t: &TraceZeroVec<T>) -> Result<Vec<T>> {
    let entries: Vec<T> = t.coords().iter().map(Real::exp).collect();
    if entries.iter().any(|e| !e.is_finite_value() || e.is_zero()) {
        return Err(Error::PrecisionExhausted(format!(
            "exp overflow at |t| = {:e}",
            t.sup_norm().to_f64()
        )));
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn b(d: usize, j: usize) -> TraceZeroVec<f64> {
        let n = (d - 1) as f64;
        TraceZeroVec::new((0..d).map(|i| if i == j { -n } else { 1.0 }).collect()).unwrap()
    }

    #[test]
    fn projection_examples() {
        assert_eq!(project_trace_zero(&[1.0, 1.0, 1.0]).coords(), &[0.0, 0.0, 0.0]);
        assert_eq!(project_trace_zero(&[-3.0, 0.0, 0.0]).coords(), &[-2.0, 1.0, 1.0]);
        assert_eq!(project_trace_zero(&[1.0, 2.0, 3.0]).coords(), &[-1.0, 0.0, 1.0]);
        let r = |v: i64| <BigRational as Scalar>::from_i64(v);
        let exact = project_trace_zero(&[r(1), r(2), r(4)]);
        assert!(exact.sum().is_zero());
    }

    #[test]
    fn ceil_norm_examples() {
        let t = TraceZeroVec::new(vec![1.0, 0.0, -1.0]).unwrap();
        assert_eq!(t.ceil_norm(), 1.0);
        let t = TraceZeroVec::new(vec![-2.0, 1.0, 1.0]).unwrap();
        assert_eq!(t.ceil_norm(), 1.0);
        assert_eq!(t.sup_norm(), 2.0);
        assert_eq!(TraceZeroVec::<f64>::zero(5).ceil_norm(), 0.0);
    }

    #[test]
    fn rejects_non_trace_zero() {
        assert!(matches!(TraceZeroVec::new(vec![1.0, 1.0]), Err(Error::NotTraceZero { .. })));
        assert!(matches!(Dimension::new(1), Err(Error::Dimension(1))));
    }

    #[test]
    fn covolume_examples() {
        let l = HyperLattice::new(vec![TraceZeroVec::new(vec![1.0, -1.0]).unwrap()]).unwrap();
        assert_relative_eq!(*l.covolume(), 2f64.sqrt(), epsilon = 1e-14);
        let l = HyperLattice::new(vec![b(3, 0), b(3, 1)]).unwrap();
        assert_relative_eq!(*l.covolume(), 27f64.sqrt(), epsilon = 1e-12);
        let scaled = HyperLattice::new(vec![b(3, 0).scale(&2.5), b(3, 1).scale(&2.5)]).unwrap();
        assert_relative_eq!(*scaled.covolume(), 2.5f64.powi(2) * 27f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn degenerate_basis_is_rank_deficient() {
        let v = b(3, 0);
        assert_eq!(HyperLattice::new(vec![v.clone(), v.scale(&2.0)]).unwrap_err(), Error::RankDeficient);
    }

    #[test]
    fn diag_flow_examples() {
        let id = diag_flow(&TraceZeroVec::<f64>::zero(3)).unwrap();
        assert_eq!(id, Matrix::identity(3));
        let l2 = 2f64.ln();
        let a = diag_flow(&TraceZeroVec::new(vec![l2, -l2]).unwrap()).unwrap();
        assert_relative_eq!(a[(0, 0)], 2.0, epsilon = 1e-14);
        assert_relative_eq!(a[(1, 1)], 0.5, epsilon = 1e-14);
        let huge = TraceZeroVec::new(vec![800.0, -800.0]).unwrap();
        assert!(matches!(diag_flow(&huge), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn ceil_to_sup_ratio_is_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 2..=6 {
            for _ in 0..10_000 {
                let raw: Vec<f64> = (0..d).map(|_| rng.gen_range(-5.0..5.0)).collect();
                let t = project_trace_zero(&raw);
                let ratio = t.ceil_norm() / t.sup_norm();
                assert!(t.ceil_norm() > 0.0);
                assert!(ratio >= 1.0 / d as f64 - 1e-12 && ratio <= 1.0 + 1e-12, "d={d} ratio={ratio}");
            }
        }
    }

    #[test]
    fn covolume_invariant_under_unimodular_change() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 3..=5 {
            let basis: Vec<_> = (0..d - 1).map(|j| b(d, j)).collect();
            let reference = *HyperLattice::new(basis.clone()).unwrap().covolume();
            for _ in 0..20 {
                let mut current = basis.clone();
                for _ in 0..6 {
                    let i = rng.gen_range(0..d - 1);
                    let j = (i + rng.gen_range(1..d - 1)) % (d - 1);
                    let k = rng.gen_range(-3i64..=3) as f64;
                    current[i] = current[i].add(&current[j].scale(&k));
                }
                let cov = *HyperLattice::new(current).unwrap().covolume();
                assert_relative_eq!(cov, reference, max_relative = 1e-9);
            }
        }
    }

    proptest! {
        #[test]
        fn projection_is_idempotent_and_linear(
            a in proptest::collection::vec(-100.0f64..100.0, 4),
            c in proptest::collection::vec(-100.0f64..100.0, 4),
            s in -10.0f64..10.0,
        ) {
            let pa = project_trace_zero(&a);
            let twice = project_trace_zero(pa.coords());
            for (x, y) in pa.coords().iter().zip(twice.coords()) {
                prop_assert!((x - y).abs() < 1e-10);
            }
            let combo: Vec<f64> = a.iter().zip(&c).map(|(x, y)| x + s * y).collect();
            let lhs = project_trace_zero(&combo);
            let rhs = pa.add(&project_trace_zero(&c).scale(&s));
            for (x, y) in lhs.coords().iter().zip(rhs.coords()) {
                prop_assert!((x - y).abs() < 1e-9);
            }
        }

        #[test]
        fn diag_flow_is_a_homomorphism(
            s in proptest::collection::vec(-5.0f64..5.0, 4),
            t in proptest::collection::vec(-5.0f64..5.0, 4),
        ) {
            let s = project_trace_zero(&s);
            let t = project_trace_zero(&t);
            let lhs = diag_flow(&s.add(&t)).unwrap();
            let rhs = diag_flow(&s).unwrap().mul(&diag_flow(&t).unwrap());
            for i in 0..4 {
                prop_assert!((lhs[(i, i)] - rhs[(i, i)]).abs() <= 1e-12 * lhs[(i, i)].abs().max(1.0));
            }
            prop_assert!((lhs.det() - 1.0).abs() < 1e-10);
        }
    }
}
