//! Simplex sets in the trace-zero hyperplane: the standard simplex set, the
//! distortion map, deep holes and the lattice reduction into the dilated
//! simplex `(n/2) S`.

mod cosets;
mod perm;
mod reduce;


pub use cosets::{coset_classes, coset_escape_witness, escape_step, same_coset_numeric, CosetClasses, EscapeReport, EscapeWitness};
pub use perm::{residue_membership, Perm};
pub use reduce::{
    covering_certificate, covering_certificate_points, covering_constant_estimate, reduce_standard,
    standard_lattice_box, CoveringConstant, CoveringReport, HoleCatalog, HoleDistance, PointClass, Reduction,
    RhoEstimate, DEEP_HOLE_FACTOR,
};

use crate::error::{Error, Result};
use crate::geometry::{Dimension, HyperLattice, TraceZeroVec};
use crate::linalg::Matrix;
use crate::scalar::{Real, Scalar};

/// `b_j = (1, .., -n, .., 1)` with `-n` in slot `j`.
pub fn standard_vector<T: Scalar>(d: usize, j: usize) -> TraceZeroVec<T> {
    let n = T::from_i64(d as i64 - 1);
    TraceZeroVec::new_unchecked((0..d).map(|i| if i == j { -n.clone() } else { T::one() }).collect())
}

/// `w_tau` for the standard simplex set: `tau (n/2, n/2 - 1, .., -n/2)`.
pub fn standard_deep_hole<T: Scalar>(tau: &Perm) -> TraceZeroVec<T> {
    let d = tau.d() as i64;
    let base: Vec<T> = (0..d).map(|i| T::from_ratio(d - 1 - 2 * i, 2)).collect();
    TraceZeroVec::new_unchecked(tau.act(&base))
}

/// Linear map on the hyperplane normalised so that it sends the standard
/// simplex set to the given one scaled to the covolume of the standard lattice.
#[derive(Clone, Debug)]
pub struct DistortionMap<T> {
    matrix: Matrix<T>,
    operator_norm: T,
    inverse_operator_norm: T,
}

impl<T: Real> DistortionMap<T> {
    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    /// Operator norm for the sup norm restricted to the hyperplane.
    pub fn operator_norm(&self) -> &T {
        &self.operator_norm
    }

    pub fn inverse_operator_norm(&self) -> &T {
        &self.inverse_operator_norm
    }
}

/// Sup-norm operator norm of `m` restricted to the trace-zero hyperplane.
///
/// The unit ball of the hyperplane is a polytope; its vertices have `n`
/// coordinates equal to `±1` and the remaining one fixed by the trace.
pub fn hyperplane_operator_norm<T: Scalar>(m: &Matrix<T>) -> T {
    let d = m.cols();
    let mut best = T::zero();
    for free in 0..d {
        for signs in 0u32..(1 << (d - 1)) {
            let mut v = vec![T::zero(); d];
            let mut sum = T::zero();
            let mut bit = 0;
            for (i, slot) in v.iter_mut().enumerate() {
                if i == free {
                    continue;
                }
                *slot = if signs >> bit & 1 == 1 { T::one() } else { -T::one() };
                sum += slot.clone();
                bit += 1;
            }
            if sum.abs() > T::one() {
                continue;
            }
            v[free] = -sum;
            let image = m.mul_vec(&v);
            best = best.max_of(crate::geometry::sup_norm(&image));
        }
    }
    best
}

/// `d` spanning trace-zero vectors summing to zero.
#[derive(Clone, Debug)]
pub struct SimplexSet<T> {
    dim: Dimension,
    vectors: Vec<TraceZeroVec<T>>,
    lattice: HyperLattice<T>,
    xi: T,
    to_phi: Matrix<T>,
    to_standard: Matrix<T>,
    distortion: DistortionMap<T>,
}

impl<T: Real> SimplexSet<T> {
    pub fn new(vectors: Vec<TraceZeroVec<T>>) -> Result<Self> {
        let d = vectors.len();
        let dim = Dimension::new(d)?;
        if let Some(bad) = vectors.iter().find(|v| v.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: bad.dim() });
        }
        let total = vectors.iter().skip(1).fold(vectors[0].clone(), |acc, v| acc.add(v));
        let scale = vectors.iter().fold(T::one(), |acc, v| acc.max_of(v.sup_norm()));
        let bound = T::from_i64(d as i64 * 16) * T::tolerance() * scale;
        if total.sup_norm() > bound {
            return Err(Error::NotSimplexSet(format!("vectors sum to {:e}, not zero", total.sup_norm().to_f64())));
        }
        let n = dim.n();
        let lattice = HyperLattice::new(vectors[..n].to_vec()).map_err(|e| match e {
            Error::RankDeficient => Error::NotSimplexSet("vectors do not span the hyperplane".into()),
            other => other,
        })?;
        let xi = vectors.iter().map(TraceZeroVec::ceil_norm).fold(None, |acc: Option<T>, c| {
            Some(match acc {
                None => c,
                Some(a) => a.max_of(c),
            })
        });
        let xi = xi.expect("d >= 2");

        let standard: Vec<Vec<T>> = (0..n).map(|j| standard_vector::<T>(d, j).into_coords()).collect();
        let phi: Vec<Vec<T>> = vectors[..n].iter().map(|v| v.coords().to_vec()).collect();
        let b = Matrix::from_columns(&standard);
        let t = Matrix::from_columns(&phi);
        let to_phi = t.mul(&pseudo_inverse(&b)?);
        let to_standard = b.mul(&pseudo_inverse(&t)?);

        let standard_covolume = standard_covolume::<T>(d);
        let relative = (lattice.covolume().clone() / standard_covolume).root(n as u32);
        let h = to_phi.scale(&(T::one() / relative.clone()));
        let h_inv = to_standard.scale(&relative);
        let distortion = DistortionMap {
            operator_norm: hyperplane_operator_norm(&h),
            inverse_operator_norm: hyperplane_operator_norm(&h_inv),
            matrix: h,
        };
        Ok(SimplexSet { dim, vectors, lattice, xi, to_phi, to_standard, distortion })
    }

    /// The standard simplex set `{b_1, .., b_d}`.
    pub fn standard(dim: Dimension) -> Self {
        let d = dim.d();
        Self::new((0..d).map(|j| standard_vector(d, j)).collect()).expect("standard simplex set is valid")
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn vectors(&self) -> &[TraceZeroVec<T>] {
        &self.vectors
    }

    /// The lattice spanned by the set (any `n` of the vectors form a basis).
    pub fn lattice(&self) -> &HyperLattice<T> {
        &self.lattice
    }

    pub fn covolume(&self) -> &T {
        self.lattice.covolume()
    }

    /// Maximal ceiling over the vectors.
    pub fn xi(&self) -> &T {
        &self.xi
    }

    pub fn distortion(&self) -> &DistortionMap<T> {
        &self.distortion
    }

    /// `covolume^(1/n) / xi`, bounded above by [`xi_bound_constant`].
    pub fn xi_bound_ratio(&self) -> T {
        self.covolume().root(self.dim.n() as u32) / self.xi.clone()
    }

    /// Linear map sending `b_j` to the j-th vector of the set.
    pub fn to_phi_matrix(&self) -> &Matrix<T> {
        &self.to_phi
    }

    pub fn to_standard_coords(&self, u: &TraceZeroVec<T>) -> TraceZeroVec<T> {
        TraceZeroVec::new_unchecked(self.to_standard.mul_vec(u.coords()))
    }

    pub fn from_standard_coords(&self, u: &TraceZeroVec<T>) -> TraceZeroVec<T> {
        TraceZeroVec::new_unchecked(self.to_phi.mul_vec(u.coords()))
    }

    /// Lattice point `sum_j c_j t_j`.
    pub fn combination(&self, coeffs: &[i64]) -> TraceZeroVec<T> {
        let d = self.dim.d();
        let mut acc = TraceZeroVec::zero(d);
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            if *c != 0 {
                acc = acc.add(&v.scale(&T::from_i64(*c)));
            }
        }
        acc
    }

    /// Deep hole `w_tau` of this simplex set.
    pub fn deep_hole(&self, tau: &Perm) -> TraceZeroVec<T> {
        self.from_standard_coords(&standard_deep_hole(tau))
    }

    pub fn deep_holes(&self) -> DeepHoleSet<T> {
        let holes: Vec<(Perm, TraceZeroVec<T>)> =
            Perm::all(self.dim.d()).into_iter().map(|p| (p.clone(), self.deep_hole(&p))).collect();
        let representatives = holes
            .iter()
            .enumerate()
            .filter(|(_, (p, _))| p.coset_representative() == *p)
            .map(|(i, _)| i)
            .collect();
        DeepHoleSet { holes, representatives }
    }

    pub fn to_f64(&self) -> Result<SimplexSet<f64>> {
        SimplexSet::new(self.vectors.iter().map(TraceZeroVec::to_f64).collect())
    }
}

/// Covolume of the standard lattice: `sqrt(d) * d^(n-1)` in the Gram convention.
pub fn standard_covolume<T: Real>(d: usize) -> T {
    let d_s = T::from_i64(d as i64);
    d_s.sqrt() * d_s.powi(d as i32 - 2)
}

/// Constant `C` with `covolume^(1/n) <= C xi` for every simplex set: each
/// vector with ceiling `<= xi` has Euclidean length `<= sqrt(n d) xi`, so
/// Hadamard's inequality gives `C = sqrt(n d)`.
pub fn xi_bound_constant(d: usize) -> f64 {
    (((d - 1) * d) as f64).sqrt()
}

fn pseudo_inverse<T: Real>(b: &Matrix<T>) -> Result<Matrix<T>> {
    let bt = b.transpose();
    Ok(bt.mul(b).inverse()?.mul(&bt))
}

/// Deep holes indexed by permutations, with one representative per coset of
/// the standard cycle (the lexicographically minimal permutation).
#[derive(Clone, Debug)]
pub struct DeepHoleSet<T> {
    holes: Vec<(Perm, TraceZeroVec<T>)>,
    representatives: Vec<usize>,
}

impl<T: Real> DeepHoleSet<T> {
    pub fn holes(&self) -> &[(Perm, TraceZeroVec<T>)] {
        &self.holes
    }

    pub fn representatives(&self) -> impl Iterator<Item = &(Perm, TraceZeroVec<T>)> {
        self.representatives.iter().map(move |&i| &self.holes[i])
    }

    pub fn representative_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn len(&self) -> usize {
        self.holes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.holes.is_empty()
    }

    pub fn get(&self, tau: &Perm) -> Option<&TraceZeroVec<T>> {
        self.holes.iter().find(|(p, _)| p == tau).map(|(_, w)| w)
    }
}
