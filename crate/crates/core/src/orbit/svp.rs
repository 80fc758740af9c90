//! LLL reduction and sup-norm shortest vectors.

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Matrix};
use crate::scalar::{Real, Scalar};

/// Default cap on enumeration nodes per shortest-vector call.
pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;

/// `basis = input * transform` with `transform` unimodular.
#[derive(Clone, Debug)]
pub struct Reduced<T> {
    pub basis: Matrix<T>,
    pub transform: IntMatrix,
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Gram-Schmidt coefficients `mu[i][j]` and squared lengths of the `b*_i`.
fn gram_schmidt<T: Real>(b: &[Vec<T>]) -> (Vec<Vec<T>>, Vec<T>) {
    let d = b.len();
    let mut star: Vec<Vec<T>> = Vec::with_capacity(d);
    let mut mu = vec![vec![T::zero(); d]; d];
    let mut norms: Vec<T> = Vec::with_capacity(d);
    for i in 0..d {
        let mut v = b[i].clone();
        for j in 0..i {
            let m = dot(&b[i], &star[j]) / norms[j].clone();
            for (x, s) in v.iter_mut().zip(&star[j]) {
                *x -= m.clone() * s.clone();
            }
            mu[i][j] = m;
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (mu, norms)
}

/// LLL reduction of the columns of `basis` with Lovász parameter `delta`.
pub fn lll<T: Real>(basis: &Matrix<T>, delta: f64) -> Result<Reduced<T>> {
    let d = basis.cols();
    let mut b = basis.columns();
    let mut u: Vec<Vec<i128>> = (0..d).map(|j| (0..d).map(|i| i128::from(i == j)).collect()).collect();
    let (mut mu, mut norms) = gram_schmidt(&b);
    if norms.iter().any(|n| n.is_zero()) {
        return Err(Error::RankDeficient);
    }
    let delta = T::from_f64(delta);
    let half = T::from_ratio(1, 2);
    let mut k = 1;
    let mut steps = 0usize;
    while k < d {
        steps += 1;
        if steps > 100_000 * d {
            return Err(Error::PrecisionExhausted("LLL reduction did not settle".into()));
        }
        for j in (0..k).rev() {
            if mu[k][j].abs() > half {
                let q = mu[k][j].round_to_i128().ok_or(Error::Overflow("LLL size reduction"))?;
                let qt = T::from_i128(q);
                for i in 0..b[k].len() {
                    let sub = qt.clone() * b[j][i].clone();
                    b[k][i] -= sub;
                }
                for i in 0..d {
                    u[k][i] = u[k][i]
                        .checked_sub(q.checked_mul(u[j][i]).ok_or(Error::Overflow("LLL transform"))?)
                        .ok_or(Error::Overflow("LLL transform"))?;
                }
                for i in 0..j {
                    let sub = qt.clone() * mu[j][i].clone();
                    mu[k][i] -= sub;
                }
                mu[k][j] -= qt;
            }
        }
        let lhs = norms[k].clone();
        let rhs = (delta.clone() - mu[k][k - 1].clone() * mu[k][k - 1].clone()) * norms[k - 1].clone();
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            let gs = gram_schmidt(&b);
            mu = gs.0;
            norms = gs.1;
            k = (k - 1).max(1);
        }
    }
    let transform = IntMatrix::from_fn(d, d, |i, j| u[j][i]);
    Ok(Reduced { basis: Matrix::from_columns(&b), transform })
}

#[derive(Clone, Debug)]
pub struct ShortestVector<T> {
    /// Sup norm of the vector.
    pub length: T,
    /// Coefficients with respect to the input basis.
    pub coeffs: Vec<i64>,
    pub vector: Vec<T>,
    pub nodes: usize,
}

/// Exact sup-norm minimiser among nonzero lattice vectors.
///
/// The basis is LLL-reduced, then every coefficient vector with Euclidean
/// length at most `sqrt(d)` times the best sup norm so far is enumerated
/// (Schnorr-Euchner order, shrinking the radius as better vectors appear).
pub fn shortest_vector<T: Real>(basis: &Matrix<T>) -> Result<ShortestVector<T>> {
    shortest_vector_with_budget(basis, DEFAULT_NODE_BUDGET)
}

pub fn shortest_vector_with_budget<T: Real>(basis: &Matrix<T>, budget: usize) -> Result<ShortestVector<T>> {
    let red = lll(basis, 0.99)?;
    let (coeffs, vector, length, nodes) = enumerate(&red.basis, budget)?;
    let coeffs = (0..coeffs.len())
        .map(|i| {
            let mut acc: i128 = 0;
            for (j, &c) in coeffs.iter().enumerate() {
                acc += red.transform.get(i, j) * i128::from(c);
            }
            i64::try_from(acc).map_err(|_| Error::Overflow("shortest vector coefficients"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ShortestVector { length, coeffs, vector, nodes })
}

type Candidate<T> = (Vec<i64>, Vec<T>, T, usize);

fn enumerate<T: Real>(basis: &Matrix<T>, budget: usize) -> Result<Candidate<T>> {
    let d = basis.cols();
    let b = basis.columns();
    let (mu, norms) = gram_schmidt(&b);
    let sup = |v: &[T]| crate::geometry::sup_norm(v);

    let (start, _) = b
        .iter()
        .enumerate()
        .map(|(j, v)| (j, sup(v)))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
        .expect("d >= 1");
    let mut best_coeffs = vec![0i64; d];
    best_coeffs[start] = 1;
    let mut best_vec = b[start].clone();
    let mut best = sup(&best_vec);

    let radius_sq = |best: &T| T::from_f64(d as f64 * (1.0 + 1e-12)) * best.clone() * best.clone();
    let mu_f: Vec<Vec<f64>> = mu.iter().map(|r| r.iter().map(Scalar::to_f64).collect()).collect();
    let norms_f: Vec<f64> = norms.iter().map(Scalar::to_f64).collect();

    let mut x = vec![0i64; d];
    let mut partial = vec![0f64; d + 1];
    let mut r2 = radius_sq(&best).to_f64();
    let mut nodes = 0usize;

    // Iterative depth-first search, level `d - 1` down to `0`.
    let mut hi = vec![0i64; d];
    let mut level = d;
    let mut descending = true;
    loop {
        if descending {
            if level == 0 {
                if x.iter().any(|&c| c != 0) {
                    let v: Vec<T> = (0..b[0].len())
                        .map(|i| (0..d).fold(T::zero(), |acc, j| acc + T::from_i64(x[j]) * b[j][i].clone()))
                        .collect();
                    let s = sup(&v);
                    if s < best {
                        best = s;
                        best_vec = v;
                        best_coeffs = x.clone();
                        r2 = radius_sq(&best).to_f64();
                    }
                }
                descending = false;
                continue;
            }
            let i = level - 1;
            let centre: f64 = -(i + 1..d).map(|j| mu_f[j][i] * x[j] as f64).sum::<f64>();
            let room = r2 - partial[level];
            if room < 0.0 || norms_f[i] <= 0.0 {
                descending = false;
                continue;
            }
            let rad = (room / norms_f[i]).sqrt();
            let mut lo = (centre - rad).ceil() as i64;
            if x[i + 1..].iter().all(|&c| c == 0) {
                lo = lo.max(0);
            }
            hi[i] = (centre + rad).floor() as i64;
            if lo > hi[i] {
                descending = false;
                continue;
            }
            x[i] = lo;
            let y = x[i] as f64 - centre;
            partial[i] = partial[level] + y * y * norms_f[i];
            level = i;
            nodes += 1;
            if nodes > budget {
                return Err(Error::EnumerationBudget { nodes });
            }
        } else {
            // Advance the coefficient at `level`, or climb.
            if level == d {
                break;
            }
            let i = level;
            x[i] += 1;
            if x[i] > hi[i] {
                x[i] = 0;
                level += 1;
                continue;
            }
            let centre: f64 = -(i + 1..d).map(|j| mu_f[j][i] * x[j] as f64).sum::<f64>();
            let y = x[i] as f64 - centre;
            partial[i] = partial[i + 1] + y * y * norms_f[i];
            if partial[i] > r2 {
                // Coefficients grow monotonically past the centre; skip ahead when beyond it.
                if (x[i] as f64) > centre {
                    x[i] = 0;
                    level += 1;
                }
                continue;
            }
            nodes += 1;
            if nodes > budget {
                return Err(Error::EnumerationBudget { nodes });
            }
            descending = true;
        }
    }
    Ok((best_coeffs, best_vec, best, nodes))
}

/// Reference search over the coefficient box `[-bound, bound]^d`.
pub fn brute_force_shortest(basis: &Matrix<f64>, bound: i64) -> (f64, Vec<i64>) {
    let d = basis.cols();
    let cols = basis.columns();
    let mut best = f64::INFINITY;
    let mut best_x = vec![0; d];
    let mut x = vec![-bound; d];
    let mut v = vec![0.0; basis.rows()];
    loop {
        if x.iter().any(|&c| c != 0) {
            v.iter_mut().for_each(|e| *e = 0.0);
            for (j, &c) in x.iter().enumerate() {
                for (e, b) in v.iter_mut().zip(&cols[j]) {
                    *e += c as f64 * b;
                }
            }
            let s = v.iter().fold(0.0f64, |m, e| m.max(e.abs()));
            if s < best {
                best = s;
                best_x = x.clone();
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return (best, best_x);
            }
            x[i] += 1;
            if x[i] <= bound {
                break;
            }
            x[i] = -bound;
            i += 1;
        }
    }
}
