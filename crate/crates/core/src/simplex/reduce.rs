use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{standard_deep_hole, Perm, SimplexSet};
use crate::error::{Error, Result};
use crate::geometry::TraceZeroVec;
use crate::scalar::{Real, Scalar};

/// Multiple of the working tolerance within which a stuck point counts as a deep hole.
pub const DEEP_HOLE_FACTOR: i64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointClass {
    Interior,
    DeepHole(Perm),
}

#[derive(Clone, Debug)]
pub struct Reduction<T> {
    /// `u + sum_j shifts[j] t_j`.
    pub reduced: TraceZeroVec<T>,
    /// The reduced point in standard coordinates.
    pub standard: TraceZeroVec<T>,
    pub class: PointClass,
    pub shifts: Vec<i64>,
    pub iterations: usize,
    /// Ceiling (standard coordinates) before each move and after the last one.
    pub ceil_history: Vec<f64>,
}

fn descending_order<T: Scalar>(u: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..u.len()).collect();
    order.sort_by(|&a, &b| u[b].partial_cmp(&u[a]).unwrap_or(Ordering::Equal));
    order
}

/// Moves `u` by vectors of the standard lattice until its ceiling is below
/// `n/2` or it sits on a deep hole.
pub fn reduce_standard<T: Scalar>(u: &TraceZeroVec<T>) -> Result<Reduction<T>> {
    let d = u.dim();
    let n = d - 1;
    let half = T::from_ratio(n as i64, 2);
    let tol = T::tolerance();
    let d_s = T::from_i64(d as i64);

    let start = u.ceil_norm();
    let cap = 10 * d * (1 + start.to_f64().max(0.0).ceil() as usize);
    let mut cur = u.coords().to_vec();
    let mut ceil = start;
    let mut shifts = vec![0i64; d];
    let mut history = vec![ceil.to_f64()];
    let mut iterations = 0;

    loop {
        if ceil < half.clone() - tol.clone() {
            return Ok(finish(cur, PointClass::Interior, shifts, iterations, history));
        }
        let order = descending_order(&cur);
        let mut moved = false;
        for k in 1..=n {
            let k_s = T::from_i64(k as i64);
            let top = cur[order[0]].clone() - d_s.clone() + k_s.clone();
            let rest = cur[order[k]].clone() + k_s.clone();
            let candidate = top.max_of(rest);
            if candidate < ceil.clone() - tol.clone() {
                for (rank, &i) in order.iter().enumerate() {
                    cur[i] += k_s.clone();
                    if rank < k {
                        cur[i] -= d_s.clone();
                        shifts[i] += 1;
                    }
                }
                ceil = crate::geometry::ceil_norm(&cur);
                history.push(ceil.to_f64());
                moved = true;
                break;
            }
        }
        if !moved {
            let tau = Perm::new(order).expect("sort order is a permutation");
            let hole = standard_deep_hole::<T>(&tau);
            let gap = crate::geometry::sup_norm(&TraceZeroVec::new_unchecked(cur.clone()).sub(&hole).into_coords());
            if gap <= T::from_i64(DEEP_HOLE_FACTOR) * tol.clone() {
                return Ok(finish(cur, PointClass::DeepHole(tau), shifts, iterations, history));
            }
            if ceil <= half + tol {
                return Ok(finish(cur, PointClass::Interior, shifts, iterations, history));
            }
            return Err(Error::ReductionStuck { ceil: ceil.to_f64() });
        }
        iterations += 1;
        if iterations > cap {
            return Err(Error::NonTermination { iterations });
        }
    }
}

fn finish<T: Scalar>(cur: Vec<T>, class: PointClass, shifts: Vec<i64>, iterations: usize, ceil_history: Vec<f64>) -> Reduction<T> {
    let standard = TraceZeroVec::new_unchecked(cur);
    Reduction { reduced: standard.clone(), standard, class, shifts, iterations, ceil_history }
}

impl<T: Real> SimplexSet<T> {
    /// Reduction into `(n/2) S_Phi`, performed in standard coordinates.
    pub fn reduce(&self, u: &TraceZeroVec<T>) -> Result<Reduction<T>> {
        let mut r = reduce_standard(&self.to_standard_coords(u))?;
        r.reduced = u.add(&self.combination(&r.shifts));
        Ok(r)
    }

    /// Uniform point `sum_j c_j t_j` with `c_j` in `[-spread, spread)`.
    pub(crate) fn random_point(&self, rng: &mut impl Rng, spread: f64) -> TraceZeroVec<T> {
        let n = self.dim().n();
        let mut acc = TraceZeroVec::zero(self.dim().d());
        for v in &self.vectors()[..n] {
            acc = acc.add(&v.scale(&T::from_f64(rng.gen_range(-spread..spread))));
        }
        acc
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoveringReport {
    pub samples: usize,
    /// Largest ceiling, in standard coordinates, after reduction.
    pub max_residual: f64,
    pub deep_hole_hits: usize,
    pub max_iterations: usize,
    pub mean_iterations: f64,
}

/// Reduces `samples` random points and checks that each lands in `(n/2) S_Phi`.
pub fn covering_certificate<T: Real>(set: &SimplexSet<T>, samples: usize, seed: u64) -> Result<CoveringReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<_> = (0..samples).map(|_| set.random_point(&mut rng, 3.0)).collect();
    covering_certificate_points(set, &points)
}

pub fn covering_certificate_points<T: Real>(set: &SimplexSet<T>, points: &[TraceZeroVec<T>]) -> Result<CoveringReport> {
    let half = set.dim().n() as f64 / 2.0;
    let slack = T::tolerance().to_f64() * DEEP_HOLE_FACTOR as f64;
    let mut report = CoveringReport { samples: points.len(), max_residual: f64::NEG_INFINITY, deep_hole_hits: 0, max_iterations: 0, mean_iterations: 0.0 };
    let mut total = 0usize;
    for u in points {
        let fail = |reason: String| Error::CoveringFailure { u: u.to_f64().into_coords(), reason };
        let r = set.reduce(u).map_err(|e| fail(e.to_string()))?;
        if r.ceil_history.windows(2).any(|w| w[1] >= w[0]) {
            return Err(fail("ceiling did not decrease strictly".into()));
        }
        let residual = r.standard.ceil_norm().to_f64();
        if residual > half + slack {
            return Err(fail(format!("residual ceiling {residual}")));
        }
        if matches!(r.class, PointClass::DeepHole(_)) {
            report.deep_hole_hits += 1;
        }
        report.max_residual = report.max_residual.max(residual);
        report.max_iterations = report.max_iterations.max(r.iterations);
        total += r.iterations;
    }
    if !points.is_empty() {
        report.mean_iterations = total as f64 / points.len() as f64;
    }
    Ok(report)
}

/// Nearest point of `W' + Delta_Phi` to a time, with its hole class.
#[derive(Clone, Debug)]
pub struct HoleDistance<T> {
    /// Coset representative of the nearest hole's class.
    pub tau: Perm,
    /// Sup-norm distance in the hyperplane.
    pub distance: T,
    pub hole: TraceZeroVec<T>,
}

/// The deep holes near `(n/2) S_*` together with the small vectors of the
/// standard lattice needed to measure distances and covering gauges modulo
/// the lattice.
#[derive(Clone, Debug)]
pub struct HoleCatalog<T> {
    set: SimplexSet<T>,
    /// `(class, hole in standard coordinates, hole in the set's coordinates)`.
    holes: Vec<(Perm, TraceZeroVec<T>, TraceZeroVec<T>)>,
    gauge_shifts: Vec<TraceZeroVec<T>>,
}

/// Vectors of the standard lattice (integer, trace zero, all coordinates
/// congruent modulo `d`) with every coordinate in `[-bound, bound]`.
pub fn standard_lattice_box(d: usize, bound: i64) -> Vec<Vec<i64>> {
    let d_i = d as i64;
    let mut out = Vec::new();
    for r in 0..d_i {
        let values: Vec<i64> = (-bound..=bound).filter(|v| v.rem_euclid(d_i) == r).collect();
        let mut stack = vec![(Vec::with_capacity(d), 0i64)];
        while let Some((prefix, sum)) = stack.pop() {
            if prefix.len() == d {
                if sum == 0 {
                    out.push(prefix);
                }
                continue;
            }
            let remaining = (d - prefix.len() - 1) as i64;
            for &v in &values {
                let s = sum + v;
                if s.abs() <= remaining * bound {
                    let mut p = prefix.clone();
                    p.push(v);
                    stack.push((p, s));
                }
            }
        }
    }
    out.sort();
    out
}

impl<T: Real> HoleCatalog<T> {
    pub fn new(set: &SimplexSet<T>) -> Self {
        let d = set.dim().d();
        let n = d as i64 - 1;
        // A point of (n/2) S_* has coordinates in [-n^2/2, n/2], so two such
        // points differ by at most n/2 + n^2/2 in each coordinate.
        let gauge_bound = (n + n * n + 1) / 2;
        let to_vec = |v: &[i64]| TraceZeroVec::new_unchecked(v.iter().map(|&x| T::from_i64(x)).collect());
        let gauge_shifts = standard_lattice_box(d, gauge_bound).iter().map(|v| to_vec(v)).collect();
        let mut holes = Vec::new();
        for shift in standard_lattice_box(d, d as i64) {
            let shift = to_vec(&shift);
            for tau in Perm::all(d) {
                let h = standard_deep_hole::<T>(&tau).add(&shift);
                if h.ceil_norm() <= T::from_ratio(n + 2, 2) {
                    let mapped = set.from_standard_coords(&h);
                    holes.push((tau.coset_representative(), h, mapped));
                }
            }
        }
        HoleCatalog { set: set.clone(), holes, gauge_shifts }
    }

    pub fn set(&self) -> &SimplexSet<T> {
        &self.set
    }

    /// Smallest ceiling (standard coordinates) over the translates `u + Delta_Phi`.
    pub fn min_ceil(&self, u: &TraceZeroVec<T>) -> Result<T> {
        let r = self.set.reduce(u)?;
        let mut best = r.standard.ceil_norm();
        for v in &self.gauge_shifts {
            best = best.min_of(r.standard.add(v).ceil_norm());
        }
        Ok(best)
    }

    /// Sup-norm distance from `u` to each class `w_tau + Delta_Phi`, keyed by representative.
    pub fn class_distances(&self, u: &TraceZeroVec<T>) -> Result<BTreeMap<Perm, T>> {
        let r = self.set.reduce(u)?;
        let mut out: BTreeMap<Perm, T> = BTreeMap::new();
        for (tau, _, h) in &self.holes {
            let dist = r.reduced.sub(h).sup_norm();
            match out.get_mut(tau) {
                Some(best) if dist >= *best => {}
                Some(best) => *best = dist,
                None => {
                    out.insert(tau.clone(), dist);
                }
            }
        }
        Ok(out)
    }

    /// Sup-norm distance from `u` to `W' + Delta_Phi`.
    pub fn nearest(&self, u: &TraceZeroVec<T>) -> Result<HoleDistance<T>> {
        let r = self.set.reduce(u)?;
        let p = &r.reduced;
        let mut best: Option<(usize, T)> = None;
        for (i, (_, _, h)) in self.holes.iter().enumerate() {
            let dist = p.sub(h).sup_norm();
            if best.as_ref().map_or(true, |(_, b)| dist < *b) {
                best = Some((i, dist));
            }
        }
        let (i, distance) = best.expect("catalog is non-empty");
        let (tau, _, h) = &self.holes[i];
        let hole = h.sub(&self.set.combination(&r.shifts));
        Ok(HoleDistance { tau: tau.clone(), distance, hole })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RhoEstimate {
    pub rho: f64,
    pub samples: usize,
    pub uncovered: usize,
    /// Largest `distance / (rho xi)` over uncovered samples.
    pub c: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoveringConstant {
    pub per_rho: Vec<RhoEstimate>,
    pub c_est: f64,
}

/// Measures the constant `c` for which points outside
/// `(1 - rho)(n/2) S_Phi + Delta_Phi` lie within `c rho xi` of `W' + Delta_Phi`.
///
/// Half of the samples are uniform in a fundamental domain, the rest are
/// concentrated around the deep holes where the uncovered set lives.
pub fn covering_constant_estimate<T: Real>(set: &SimplexSet<T>, rhos: &[f64], samples: usize, seed: u64) -> Result<CoveringConstant> {
    let catalog = HoleCatalog::new(set);
    let d = set.dim().d();
    let half = set.dim().n() as f64 / 2.0;
    let xi = set.xi().to_f64();
    let holes = set.deep_holes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut per_rho = Vec::new();
    for &rho in rhos {
        let mut est = RhoEstimate { rho, samples, uncovered: 0, c: 0.0 };
        for s in 0..samples {
            let u = if s % 2 == 0 {
                set.random_point(&mut rng, 0.5)
            } else {
                let (_, w) = &holes.holes()[rng.gen_range(0..holes.len())];
                let noise: Vec<T> = (0..d).map(|_| T::from_f64(rng.gen_range(-1.0..1.0) * rho * half)).collect();
                let noise = crate::geometry::project_trace_zero(&noise);
                w.add(&set.from_standard_coords(&noise))
            };
            if catalog.min_ceil(&u)?.to_f64() <= (1.0 - rho) * half {
                continue;
            }
            est.uncovered += 1;
            let dist = catalog.nearest(&u)?.distance.to_f64();
            est.c = est.c.max(dist / (rho * xi));
        }
        per_rho.push(est);
    }
    let c_est = per_rho.iter().map(|e| e.c).fold(0.0, f64::max);
    Ok(CoveringConstant { per_rho, c_est })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Dimension;
    use crate::simplex::tests::random_simplex_set;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn v(c: &[f64]) -> TraceZeroVec<f64> {
        TraceZeroVec::new(c.to_vec()).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let r = reduce_standard(&v(&[2.0, -1.0, -1.0])).unwrap();
        assert_eq!(r.standard.coords(), &[0.0, 0.0, 0.0]);
        assert_eq!(r.class, PointClass::Interior);
        assert_eq!(r.shifts, vec![1, 0, 0]);

        let r = reduce_standard(&v(&[1.0, 0.0, -1.0])).unwrap();
        assert_eq!(r.standard.coords(), &[1.0, 0.0, -1.0]);
        assert_eq!(r.class, PointClass::DeepHole(Perm::identity(3)));

        let inside = v(&[0.3, 0.1, -0.4]);
        let r = reduce_standard(&inside).unwrap();
        assert_eq!(r.standard, inside);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn exact_reduction_fixes_every_deep_hole() {
        for d in 2..=5 {
            for tau in Perm::all(d) {
                let w = standard_deep_hole::<BigRational>(&tau);
                let r = reduce_standard(&w).unwrap();
                assert_eq!(r.standard, w);
                assert_eq!(r.class, PointClass::DeepHole(tau));
            }
        }
    }

    #[test]
    fn exact_reduction_of_translated_holes() {
        let shift: Vec<BigRational> = [5i64, -3, 1, -3].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let tau = Perm::new(vec![2, 0, 3, 1]).unwrap();
        let w = standard_deep_hole::<BigRational>(&tau).add(&TraceZeroVec::new(shift).unwrap());
        let r = reduce_standard(&w).unwrap();
        assert!(matches!(r.class, PointClass::DeepHole(_)));
        let half = BigRational::new(3.into(), 2.into());
        assert_eq!(r.standard.ceil_norm(), half);
        assert!(r.standard.sum().is_zero());
    }

    #[test]
    fn standard_covering_small_sample() {
        for d in 3..=5 {
            let set = SimplexSet::<f64>::standard(Dimension::new(d).unwrap());
            let report = covering_certificate(&set, 500, 7).unwrap();
            assert!(report.max_residual <= (d - 1) as f64 / 2.0 + 1e-9);
            assert_eq!(report.deep_hole_hits, 0);
        }
    }

    #[test]
    fn deep_hole_samples_are_reported() {
        let set = SimplexSet::<f64>::standard(Dimension::new(3).unwrap());
        let holes: Vec<_> = set.deep_holes().holes().iter().map(|(_, w)| w.clone()).collect();
        let report = covering_certificate_points(&set, &holes).unwrap();
        assert_eq!(report.deep_hole_hits, 6);
    }

    #[test]
    fn random_sets_cover() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 3..=5 {
            let set = random_simplex_set(d, &mut rng, 0.4);
            let report = covering_certificate(&set, 300, 1).unwrap();
            assert!(report.max_residual <= (d - 1) as f64 / 2.0 + 1e-9);
        }
    }

    #[test]
    fn lattice_box_matches_membership() {
        for v in standard_lattice_box(4, 4) {
            assert_eq!(v.iter().sum::<i64>(), 0);
            assert!(v.iter().all(|x| (x - v[0]).rem_euclid(4) == 0));
        }
        assert!(standard_lattice_box(3, 2).contains(&vec![-2, 1, 1]));
    }

    #[test]
    fn nearest_hole_of_a_hole_is_itself() {
        let set = SimplexSet::<f64>::standard(Dimension::new(4).unwrap());
        let catalog = HoleCatalog::new(&set);
        for (tau, w) in set.deep_holes().holes() {
            let shifted = w.add(&set.combination(&[2, -1, 0, 0]));
            let near = catalog.nearest(&shifted).unwrap();
            assert!(near.distance < 1e-9);
            assert_eq!(near.tau, tau.coset_representative());
            assert!(near.hole.sub(&shifted).sup_norm() < 1e-9);
        }
    }

    #[test]
    fn covering_constant_is_stable_in_rho() {
        let set = SimplexSet::<f64>::standard(Dimension::new(3).unwrap());
        let est = covering_constant_estimate(&set, &[0.3, 0.1, 0.03], 2000, 5).unwrap();
        let cs: Vec<f64> = est.per_rho.iter().map(|e| e.c).collect();
        let (lo, hi) = cs.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &c| (l.min(c), h.max(c)));
        assert!(lo > 0.0 && hi / lo <= 2.0, "{cs:?}");
        let full = covering_constant_estimate(&set, &[1.0], 200, 5).unwrap();
        assert_eq!(full.per_rho[0].uncovered, 200);
        assert!(full.c_est.is_finite());
    }

    proptest! {
        #[test]
        fn reduction_stays_in_the_coset(c in prop::collection::vec(-20.0f64..20.0, 3)) {
            let u = crate::geometry::project_trace_zero(&c);
            let r = reduce_standard(&u).unwrap();
            prop_assert!(r.standard.ceil_norm() <= 1.0 + 1e-9);
            let diff = r.standard.sub(&u);
            let steps: Vec<f64> = diff.coords().iter().map(|x| (x - diff.coords()[0]) / 3.0).collect();
            prop_assert!(steps.iter().all(|s| (s - s.round()).abs() < 1e-9));
        }
    }
}
