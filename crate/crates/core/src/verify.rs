//! Exact term-by-term verification of truncated series against the defining
//! differential operators: the box operators attached to lattice vectors and
//! the Euler (torus-weight) operators.

use crate::error::{GkzError, Result};
use crate::lattice::{PointConfiguration, RelationLattice};
use crate::matrix::{Int, Rat};
use crate::ring::{GradedQuotientRing, RingElement};
use crate::series::TruncatedGammaSeries;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// A formal solution: coefficients keyed by lattice vector, with the exact
/// set of retained lattice vectors (the truncation-trusted region).
#[derive(Clone, Debug)]
pub struct FormalSolution {
    pub gamma: Vec<Rat>,
    pub epsilon: Vec<RingElement>,
    pub terms: BTreeMap<Vec<i64>, RingElement>,
    pub retained: BTreeSet<Vec<i64>>,
}

impl FormalSolution {
    pub fn from_series(ring: &GradedQuotientRing, series: &TruncatedGammaSeries) -> Self {
        let n = series.data.gamma.len();
        let epsilon = series
            .data
            .epsilon
            .clone()
            .unwrap_or_else(|| vec![ring.zero(); n]);
        let mut terms = BTreeMap::new();
        let mut retained = BTreeSet::new();
        for idx in &series.retained {
            retained.insert(series.lattice_vector(idx));
        }
        for (idx, coeff) in &series.terms {
            terms.insert(series.lattice_vector(idx), coeff.clone());
        }
        FormalSolution { gamma: series.data.gamma.clone(), epsilon, terms, retained }
    }

    pub fn coefficient(&self, ring: &GradedQuotientRing, l: &[i64]) -> RingElement {
        self.terms.get(l).cloned().unwrap_or_else(|| ring.zero())
    }
}

/// The factor (gamma_j + l_j + epsilon_j) - r as a ring element.
fn shift_factor(
    ring: &GradedQuotientRing,
    sol: &FormalSolution,
    j: usize,
    l: &[i64],
    r: i64,
) -> RingElement {
    let scalar = &sol.gamma[j] + Rat::from(Int::from(l[j] - r));
    ring.add(&ring.scalar(scalar), &sol.epsilon[j])
}

/// Apply d/du_j formally: each coefficient is multiplied by
/// (gamma_j + l_j + epsilon_j) and gamma_j drops by one.
pub fn apply_partial(
    ring: &GradedQuotientRing,
    sol: &FormalSolution,
    j: usize,
) -> FormalSolution {
    let mut terms = BTreeMap::new();
    for (l, coeff) in &sol.terms {
        let f = shift_factor(ring, sol, j, l, 0);
        let c = ring.mul(coeff, &f);
        if !c.is_zero() {
            terms.insert(l.clone(), c);
        }
    }
    let mut gamma = sol.gamma.clone();
    gamma[j] -= Rat::one();
    FormalSolution { gamma, epsilon: sol.epsilon.clone(), terms, retained: sol.retained.clone() }
}

#[derive(Clone, Debug)]
pub struct BoxReport {
    pub lambda: Vec<i64>,
    pub checked: usize,
    pub unchecked_boundary: usize,
    /// Lattice vectors with a nonzero residual.
    pub violations: Vec<Vec<i64>>,
}

/// Check the box operator of a lattice vector lambda on the truncation-safe
/// interior: at each retained l whose partner l + lambda is also retained,
/// the two derivative products must agree exactly.
pub fn check_box(
    ring: &GradedQuotientRing,
    lattice: &RelationLattice,
    sol: &FormalSolution,
    lambda: &[i64],
) -> Result<BoxReport> {
    let lam_ints: Vec<Int> = lambda.iter().map(|&x| Int::from(x)).collect();
    if !lattice.contains(&lam_ints) {
        return Err(GkzError::LatticeViolation);
    }
    let mut checked = 0usize;
    let mut unchecked = 0usize;
    let mut violations = Vec::new();
    for l in &sol.retained {
        let partner: Vec<i64> = l.iter().zip(lambda).map(|(a, b)| a + b).collect();
        if !sol.retained.contains(&partner) {
            unchecked += 1;
            continue;
        }
        checked += 1;
        // Left side: negative-part derivatives applied to the term at l.
        let mut lhs = sol.coefficient(ring, l);
        for (j, &lj) in lambda.iter().enumerate() {
            if lj < 0 {
                for r in 0..(-lj) {
                    let f = shift_factor(ring, sol, j, l, r);
                    lhs = ring.mul(&lhs, &f);
                }
            }
        }
        // Right side: positive-part derivatives applied to the term at
        // l + lambda.
        let mut rhs = sol.coefficient(ring, &partner);
        for (j, &lj) in lambda.iter().enumerate() {
            if lj > 0 {
                for r in 0..lj {
                    let f = shift_factor(ring, sol, j, &partner, r);
                    rhs = ring.mul(&rhs, &f);
                }
            }
        }
        if lhs != rhs {
            violations.push(l.clone());
        }
    }
    if checked == 0 {
        return Err(GkzError::InsufficientOrder);
    }
    Ok(BoxReport { lambda: lambda.to_vec(), checked, unchecked_boundary: unchecked, violations })
}

#[derive(Clone, Debug)]
pub struct EulerReport {
    pub checked: usize,
    pub violations: Vec<Vec<i64>>,
}

/// Check the Euler operators: for every retained l and every coordinate row,
/// sum_j a_ij (gamma_j + l_j + epsilon_j) acting on the coefficient must
/// equal c_i times the coefficient.
pub fn check_euler(
    ring: &GradedQuotientRing,
    config: &PointConfiguration,
    sol: &FormalSolution,
    c: &[Rat],
) -> EulerReport {
    let k1 = config.ambient_rank();
    let n = config.num_points();
    // Ring parts sum_j a_ij epsilon_j, computed once per row.
    let mut eps_rows = Vec::with_capacity(k1);
    for i in 0..k1 {
        let mut acc = ring.zero();
        for j in 0..n {
            let aij = Rat::from(config.matrix[(i, j)].clone());
            acc = ring.add(&acc, &ring.scale(&sol.epsilon[j], &aij));
        }
        eps_rows.push(acc);
    }
    let mut checked = 0;
    let mut violations = Vec::new();
    for l in &sol.retained {
        let coeff = sol.coefficient(ring, l);
        checked += 1;
        let mut bad = false;
        for i in 0..k1 {
            let mut scalar = Rat::zero();
            for j in 0..n {
                let aij = Rat::from(config.matrix[(i, j)].clone());
                scalar += aij * (&sol.gamma[j] + Rat::from(Int::from(l[j])));
            }
            let op = ring.add(&ring.scalar(scalar), &eps_rows[i]);
            let lhs = ring.mul(&op, &coeff);
            let rhs = ring.scale(&coeff, &c[i]);
            if lhs != rhs {
                bad = true;
                break;
            }
        }
        if bad {
            violations.push(l.clone());
        }
    }
    EulerReport { checked, violations }
}

/// All nonzero lattice vectors with 1-norm at most `bound`, deduplicated up
/// to sign (the representative has positive first nonzero entry).
pub fn box_generator_set(lattice: &RelationLattice, bound: u32) -> Vec<Vec<i64>> {
    let basis = crate::matrix::hnf(&lattice.basis).hnf;
    let d = lattice.rank();
    let n = lattice.num_points();
    let bound = bound as i64;
    let mut out: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut coeffs = vec![0i64; d];
    // The HNF pivots let coefficients be bounded coordinate by coordinate:
    // the pivot coordinate of the partial sum is c_i * pivot_i.
    fn rec(
        basis: &crate::matrix::IMat,
        pivots: &[usize],
        bound: i64,
        pos: usize,
        partial: &mut Vec<i64>,
        coeffs: &mut Vec<i64>,
        out: &mut BTreeSet<Vec<i64>>,
    ) {
        let d = basis.rows;
        if pos == d {
            let norm: i64 = partial.iter().map(|x| x.abs()).sum();
            if norm == 0 || norm > bound {
                return;
            }
            let mut v = partial.clone();
            if let Some(first) = v.iter().find(|x| !x.is_zero()) {
                if *first < 0 {
                    v = v.iter().map(|x| -x).collect();
                }
            }
            out.insert(v);
            return;
        }
        let pc = pivots[pos];
        let pivot = i64::try_from(&basis[(pos, pc)]).expect("small pivot");
        // |partial[pc] + c * pivot| <= bound
        let lo = (-bound - partial[pc]).div_euclid(pivot);
        let hi = (bound - partial[pc]).div_euclid(pivot);
        for c in lo..=hi {
            coeffs[pos] = c;
            let mut next = partial.clone();
            for j in 0..basis.cols {
                next[j] += c * i64::try_from(&basis[(pos, j)]).expect("small entry");
            }
            rec(basis, pivots, bound, pos + 1, &mut next, coeffs, out);
        }
        coeffs[pos] = 0;
    }
    let h = crate::matrix::hnf(&lattice.basis);
    let mut partial = vec![0i64; n];
    rec(&basis, &h.pivots, bound, 0, &mut partial, &mut coeffs, &mut out);
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::kernel_basis;
    use crate::matrix::{int, IMat};

    #[test]
    fn box_generators_on_lines() {
        let config = crate::lattice::PointConfiguration::new(&[
            vec![int(1), int(1), int(1)],
            vec![int(-1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
        ])
        .unwrap();
        let lat = kernel_basis(&config).unwrap();
        assert_eq!(box_generator_set(&lat, 4), vec![vec![1, 1, -1, -1]]);
        assert_eq!(box_generator_set(&lat, 3), Vec::<Vec<i64>>::new());
    }

    #[test]
    fn box_generators_fd3() {
        let (_c, lat) = crate::fan::fd_lattice(3).unwrap();
        let set = box_generator_set(&lat, 4);
        assert!(set.contains(&vec![1, -1, 0, -1, 1, 0]));
        assert!(set.contains(&vec![1, 0, -1, -1, 0, 1]));
        // The difference of the displayed rows has 1-norm 4.
        assert!(set.contains(&vec![0, 1, -1, 0, -1, 1]) || set.contains(&vec![0, -1, 1, 0, 1, -1]));
    }

    #[test]
    fn lattice_violation_detected() {
        let config = crate::lattice::PointConfiguration::new(&[
            vec![int(1), int(1), int(1)],
            vec![int(-1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
        ])
        .unwrap();
        let lat = kernel_basis(&config).unwrap();
        let ring = crate::ring::trivial_ring(4);
        let sol = FormalSolution {
            gamma: vec![crate::matrix::rat(0, 1); 4],
            epsilon: vec![ring.zero(); 4],
            terms: BTreeMap::new(),
            retained: BTreeSet::new(),
        };
        assert!(matches!(
            check_box(&ring, &lat, &sol, &[1, 0, 0, -1]),
            Err(GkzError::LatticeViolation)
        ));
        let _ = IMat::identity(1);
    }
}
