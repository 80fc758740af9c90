use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0, .., d-1}` stored by its images. It acts on vectors
/// as a permutation matrix: `(tau v)[tau(i)] = v[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    pub fn identity(d: usize) -> Self {
        Perm((0..d).collect())
    }

    /// The standard cycle `e_i -> e_{i+1 mod d}`.
    pub fn cycle(d: usize) -> Self {
        Perm((0..d).map(|i| (i + 1) % d).collect())
    }

    /// All `d!` permutations in lexicographic order of their image lists.
    pub fn all(d: usize) -> Vec<Perm> {
        (0..d).permutations(d).map(Perm).collect()
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.d()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn act<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.0[i]] = x.clone();
        }
        out
    }

    /// Whether this permutation lies in the cyclic group generated by the standard cycle.
    pub fn is_cycle_power(&self) -> bool {
        let d = self.d();
        let shift = self.0[0];
        self.0.iter().enumerate().all(|(i, &j)| j == (i + shift) % d)
    }

    /// Lexicographically minimal element of the coset `self <theta>`.
    ///
    /// `(tau theta^j)(i) = tau(i + j mod d)`, so the coset consists of the
    /// rotations of the image list.
    pub fn coset_representative(&self) -> Perm {
        let d = self.d();
        (0..d)
            .map(|j| Perm((0..d).map(|i| self.0[(i + j) % d]).collect()))
            .min()
            .expect("non-empty coset")
    }

    /// Integer vector `tau (d, d-1, .., 1)` whose projection is the standard deep hole `w_tau`.
    pub fn hole_representative(&self) -> Vec<i64> {
        let d = self.d() as i64;
        self.act(&(0..d).map(|i| d - i).collect::<Vec<_>>())
    }

    /// Inverse of [`Perm::hole_representative`] up to `d Z^d`: the permutation whose
    /// representative has the same residues modulo `d` as `z`.
    pub fn from_hole_representative(z: &[i64]) -> Result<Perm> {
        let d = z.len();
        if !residue_membership(z) {
            return Err(Error::Invalid(format!("{z:?} does not contain every residue modulo {d}")));
        }
        let images = (0..d)
            .map(|i| {
                let target = (d as i64 - i as i64).rem_euclid(d as i64);
                z.iter().position(|x| x.rem_euclid(d as i64) == target).expect("all residues present")
            })
            .collect();
        Perm::new(images)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

/// True iff the residues of `v` modulo `d = v.len()` are exactly `{0, .., d-1}`.
pub fn residue_membership(v: &[i64]) -> bool {
    let d = v.len() as i64;
    if d == 0 {
        return false;
    }
    let mut seen = vec![false; v.len()];
    for x in v {
        let r = x.rem_euclid(d) as usize;
        if std::mem::replace(&mut seen[r], true) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_inverse() {
        let t = Perm::new(vec![2, 0, 1]).unwrap();
        assert_eq!(t.compose(&t.inverse()), Perm::identity(3));
        let theta = Perm::cycle(3);
        assert_eq!(theta.compose(&theta).compose(&theta), Perm::identity(3));
        assert!(theta.is_cycle_power());
        assert!(!Perm::new(vec![1, 0, 2]).unwrap().is_cycle_power());
    }

    #[test]
    fn action_matches_permutation_matrix() {
        let theta = Perm::cycle(4);
        // theta e_0 = e_1
        assert_eq!(theta.act(&[1, 0, 0, 0]), vec![0, 1, 0, 0]);
    }

    #[test]
    fn residue_examples() {
        assert!(residue_membership(&[1, 2, 3]));
        assert!(!residue_membership(&[1, 1, 3]));
        assert!(residue_membership(&[4, 2, 3]));
    }

    #[test]
    fn representative_roundtrip() {
        for p in Perm::all(4) {
            let z = p.hole_representative();
            assert_eq!(Perm::from_hole_representative(&z).unwrap(), p);
        }
        assert!(Perm::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn coset_representatives_partition() {
        let reps: std::collections::BTreeSet<_> = Perm::all(4).iter().map(Perm::coset_representative).collect();
        assert_eq!(reps.len(), 6);
    }
}
