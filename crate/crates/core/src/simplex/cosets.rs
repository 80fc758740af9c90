use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{residue_membership, standard_deep_hole, Perm};
use crate::error::{Error, Result};
use crate::geometry::Dimension;

/// Whether `w_tau - w_sigma` lies in the standard lattice, decided from the
/// floating-point holes: all `(v_i - v_0) / d` must be integers.
pub fn same_coset_numeric(tau: &Perm, sigma: &Perm) -> bool {
    let d = tau.d() as f64;
    let diff = standard_deep_hole::<f64>(tau).sub(&standard_deep_hole::<f64>(sigma));
    let c = diff.coords();
    c.iter().all(|x| {
        let q = (x - c[0]) / d;
        (q - q.round()).abs() < 1e-9
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CosetClasses {
    pub d: usize,
    /// Each class sorted, led by its lexicographically minimal member.
    pub classes: Vec<Vec<Perm>>,
    pub pairs_checked: usize,
}

/// Partitions all permutations into cosets of the standard cycle, checking
/// the numeric and combinatorial membership tests on every pair.
pub fn coset_classes(dim: Dimension) -> Result<CosetClasses> {
    let d = dim.d();
    if d > 8 {
        return Err(Error::Invalid(format!("exhaustive coset enumeration supports d <= 8 (got {d})")));
    }
    let perms = Perm::all(d);
    let inverses: Vec<Perm> = perms.iter().map(Perm::inverse).collect();
    perms.par_iter().enumerate().try_for_each(|(i, tau)| {
        for sigma in &perms {
            let combinatorial = inverses[i].compose(sigma).is_cycle_power();
            if combinatorial != same_coset_numeric(tau, sigma) {
                return Err(Error::CosetLawViolated { tau: tau.images().to_vec(), sigma: sigma.images().to_vec() });
            }
        }
        Ok(())
    })?;
    let mut classes: Vec<Vec<Perm>> = Vec::new();
    for p in &perms {
        let rep = p.coset_representative();
        match classes.iter_mut().find(|c| c[0] == rep) {
            Some(c) => {
                if *p != rep {
                    c.push(p.clone());
                }
            }
            None => {
                let mut c = vec![rep.clone()];
                if *p != rep {
                    c.push(p.clone());
                }
                classes.push(c);
            }
        }
    }
    for c in &mut classes {
        c[1..].sort();
    }
    Ok(CosetClasses { d, classes, pairs_checked: perms.len() * perms.len() })
}

/// Smallest `1 <= k <= n` with `w_tau' + k (w_tau - w_sigma)` outside
/// `W + Delta_*`, tested on the integer representatives.
pub fn escape_step(tau_prime: &Perm, tau: &Perm, sigma: &Perm) -> Result<Option<usize>> {
    if tau.inverse().compose(sigma).is_cycle_power() {
        return Err(Error::SameCoset);
    }
    let base = tau_prime.hole_representative();
    let step: Vec<i64> = tau.hole_representative().iter().zip(sigma.hole_representative()).map(|(a, b)| a - b).collect();
    let n = tau.d() - 1;
    Ok((1..=n).find(|&k| {
        let v: Vec<i64> = base.iter().zip(&step).map(|(b, s)| b + k as i64 * s).collect();
        !residue_membership(&v)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EscapeWitness {
    Witness { tau_prime: Perm, k: usize },
    AllCovered,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EscapeReport {
    pub witness: EscapeWitness,
    /// Escape step for every `tau'`, `None` when all multiples stay in `W + Delta_*`.
    pub per_tau_prime: Vec<(Perm, Option<usize>)>,
    pub every_tau_prime_escapes: bool,
}

pub fn coset_escape_witness(dim: Dimension, tau: &Perm, sigma: &Perm) -> Result<EscapeReport> {
    let d = dim.d();
    if tau.d() != d || sigma.d() != d {
        return Err(Error::DimensionMismatch { expected: d, got: tau.d().max(sigma.d()) });
    }
    let per_tau_prime = Perm::all(d)
        .into_iter()
        .map(|p| escape_step(&p, tau, sigma).map(|k| (p, k)))
        .collect::<Result<Vec<_>>>()?;
    let witness = per_tau_prime
        .iter()
        .find_map(|(p, k)| k.map(|k| EscapeWitness::Witness { tau_prime: p.clone(), k }))
        .unwrap_or(EscapeWitness::AllCovered);
    let every_tau_prime_escapes = per_tau_prime.iter().all(|(_, k)| k.is_some());
    Ok(EscapeReport { witness, per_tau_prime, every_tau_prime_escapes })
}
