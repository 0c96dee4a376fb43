//! Torsion-point selection in a finite cyclic model of `Pic⁰(D)`.
//!
//! The group is `Z/N`; `G` is the subgroup generated by the given residues,
//! standing in for the image of `Pic(X)`. A marked point `p` solves
//! `a·p = target` with `m·p ∉ G` for every `m ≥ 1` with `m² · |G| < a`.

use std::collections::BTreeSet;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("modulus must be positive")]
    ZeroModulus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupModel {
    modulus: u64,
    subgroup_gens: Vec<u64>,
    /// `G = d·Z/N` with `d = gcd(N, gens)`.
    step: u64,
}

impl FiniteGroupModel {
    pub fn new(modulus: u64, subgroup_gens: Vec<u64>) -> Result<Self, GroupError> {
        if modulus == 0 {
            return Err(GroupError::ZeroModulus);
        }
        let step = subgroup_gens.iter().fold(modulus, |d, &g| d.gcd(&(g % modulus)));
        Ok(FiniteGroupModel {
            modulus,
            subgroup_gens,
            step,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn subgroup_gens(&self) -> &[u64] {
        &self.subgroup_gens
    }

    /// `|G|`.
    pub fn subgroup_order(&self) -> u64 {
        self.modulus / self.step
    }

    pub fn in_subgroup(&self, x: u64) -> bool {
        (x % self.modulus) % self.step == 0
    }

    fn mul(&self, m: u64, x: u64) -> u64 {
        ((m as u128 * x as u128) % self.modulus as u128) as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkedPoint {
    pub p: u64,
    pub a: u64,
    pub target: u64,
}

/// Smallest residue `p` satisfying the marked-point conditions, if any.
pub fn find_marked_point(model: &FiniteGroupModel, a: u64, target: u64) -> Option<MarkedPoint> {
    if a == 0 {
        return None;
    }
    let n = model.modulus;
    let target = target % n;
    let g = model.subgroup_order() as u128;
    let bound: Vec<u64> = (1..).take_while(|&m: &u64| (m as u128).pow(2) * g < a as u128).collect();
    (0..n)
        .find(|&p| model.mul(a, p) == target && bound.iter().all(|&m| !model.in_subgroup(model.mul(m, p))))
        .map(|p| MarkedPoint { p, a, target })
}

/// Brute-force check of a candidate; enumerates `G` element by element.
pub fn verify_marked_point(model: &FiniteGroupModel, candidate: &MarkedPoint) -> bool {
    let n = model.modulus;
    let MarkedPoint { p, a, target } = *candidate;
    if a == 0 || p >= n {
        return false;
    }
    let mut group: BTreeSet<u64> = BTreeSet::from([0]);
    let mut frontier = vec![0u64];
    while let Some(x) = frontier.pop() {
        for &gen in &model.subgroup_gens {
            let y = (x + gen % n) % n;
            if group.insert(y) {
                frontier.push(y);
            }
        }
    }
    let mut ap = 0u64;
    for _ in 0..a {
        ap = (ap + p) % n;
    }
    if ap != target % n {
        return false;
    }
    let order = group.len() as u64;
    let mut mp = 0u64;
    let mut m = 1u64;
    while m * m * order < a {
        mp = (mp + p) % n;
        if group.contains(&mp) {
            return false;
        }
        m += 1;
    }
    true
}
