#![allow(dead_code)]

use escape_core::cassels::{build_lattice, isolate_roots, ConstructionReport};
use escape_core::geometry::project_trace_zero;
use escape_core::linalg::Matrix;
use escape_core::simplex::standard_vector;
use escape_core::{Mpf, PrecisionConfig, SimplexSet64};
use rand::Rng;

pub fn family(k: i64) -> ConstructionReport<Mpf> {
    let field = isolate_roots::<Mpf>(&[-k, 0, k], PrecisionConfig::default()).expect("roots isolate");
    build_lattice(&field).expect("lattice builds")
}

/// Image of the standard simplex set under a random near-identity map, rescaled.
pub fn random_simplex_set(d: usize, rng: &mut impl Rng, spread: f64) -> SimplexSet64 {
    let g = Matrix::from_fn(d, d, |i, j| if i == j { 1.0 } else { 0.0 } + rng.gen_range(-spread..spread));
    let scale = rng.gen_range(0.5..4.0);
    let vectors = (0..d).map(|j| project_trace_zero(&g.mul_vec(standard_vector::<f64>(d, j).coords())).scale(&scale)).collect();
    SimplexSet64::new(vectors).expect("random set spans")
}

/// Determinant-one perturbation of the identity composed with a few integer shears.
pub fn random_unimodular_basis(d: usize, rng: &mut impl Rng) -> Matrix<f64> {
    let mut g = Matrix::from_fn(d, d, |i, j| if i == j { 1.0 } else { 0.0 } + rng.gen_range(-0.5..0.5));
    let det = g.det();
    g = g.scale(&det.abs().powf(-1.0 / d as f64));
    if det < 0.0 {
        for i in 0..d {
            g[(i, 0)] = -g[(i, 0)];
        }
    }
    let mut u = Matrix::identity(d);
    for _ in 0..d {
        let (a, b) = (rng.gen_range(0..d), rng.gen_range(0..d));
        if a != b {
            let q = f64::from(rng.gen_range(-1..=1));
            for i in 0..d {
                u[(i, a)] += q * u[(i, b)];
            }
        }
    }
    g.mul(&u)
}

/// Box `[-B, B]^d` guaranteed to hold the coefficients of a shortest vector:
/// `|x_i| <= ||row_i(B^-1)||_1 ||v||_sup` and `||v||_sup` is at most the shortest basis column.
pub fn coefficient_box(basis: &Matrix<f64>) -> i64 {
    let inv = basis.inverse().expect("invertible");
    let shortest_column = (0..basis.cols()).map(|j| basis.column(j).iter().fold(0.0f64, |m, x| m.max(x.abs()))).fold(f64::INFINITY, f64::min);
    let worst_row = (0..inv.rows()).map(|i| inv.row(i).iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
    (worst_row * shortest_column).floor() as i64
}
