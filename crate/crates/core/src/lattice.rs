//! Point configurations and their lattices of relations.
//!
//! A configuration is a finite set of N distinct columns a_j in Z^{k+1}
//! generating the full lattice, together with an integer functional h taking
//! the value 1 on every column. The relation lattice L collects the integer
//! vectors l with sum_j l_j a_j = 0; its rank is d = N - k - 1.

use crate::error::{GkzError, Result};
use crate::matrix::{self, IMat, Int, QMat, Rat};
use num::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    /// (k+1) x N matrix whose columns are the points.
    pub matrix: IMat,
    /// Homogeneity functional with h . a_j = 1 for all j.
    pub h: Vec<Int>,
}

impl PointConfiguration {
    /// Build from the list of columns, validating distinctness, full rank,
    /// lattice generation, and the existence of h.
    pub fn new(points: &[Vec<Int>]) -> Result<Self> {
        if points.is_empty() {
            return Err(GkzError::Schema("empty configuration".into()));
        }
        let dim = points[0].len();
        if points.iter().any(|p| p.len() != dim) {
            return Err(GkzError::Schema("points of mixed dimension".into()));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(GkzError::DuplicatePoint);
                }
            }
        }
        let mut matrix = IMat::zero(dim, points.len());
        for (j, p) in points.iter().enumerate() {
            for (i, v) in p.iter().enumerate() {
                matrix[(i, j)] = v.clone();
            }
        }
        let cfg = PointConfiguration { matrix, h: Vec::new() };
        if QMat::from_int(&cfg.matrix).rank() != dim {
            return Err(GkzError::RankDeficient);
        }
        if !cfg.check_generates() {
            return Err(GkzError::NotGenerating);
        }
        let h = cfg.homogeneity_vector()?;
        Ok(PointConfiguration { h, ..cfg })
    }

    pub fn num_points(&self) -> usize {
        self.matrix.cols
    }

    /// k + 1, the ambient lattice rank.
    pub fn ambient_rank(&self) -> usize {
        self.matrix.rows
    }

    pub fn lattice_rank(&self) -> usize {
        self.num_points() - self.ambient_rank()
    }

    pub fn point(&self, j: usize) -> Vec<Int> {
        self.matrix.col(j)
    }

    /// Integer functional h with h . a_j = 1 for every j.
    pub fn homogeneity_vector(&self) -> Result<Vec<Int>> {
        let t = self.matrix.transpose();
        let ones = vec![Int::one(); self.num_points()];
        matrix::solve_integer(&t, &ones).ok_or(GkzError::NoHomogeneity)
    }

    /// True iff the points generate the ambient lattice, i.e. all Smith
    /// invariant factors of the point matrix are 1.
    pub fn check_generates(&self) -> bool {
        let s = matrix::snf(&self.matrix);
        (0..self.ambient_rank()).all(|i| s.d[(i, i)] == Int::one())
    }

    /// Normalized volume |det (a_i)_{i in I}| of a (k+1)-point simplex.
    /// Indices are 0-based.
    pub fn simplex_volume(&self, index_set: &[usize]) -> Result<Int> {
        let need = self.ambient_rank();
        if index_set.len() != need {
            return Err(GkzError::BadIndexSet(format!(
                "expected {} indices, got {}",
                need,
                index_set.len()
            )));
        }
        let mut seen = vec![false; self.num_points()];
        for &i in index_set {
            if i >= self.num_points() || seen[i] {
                return Err(GkzError::BadIndexSet(format!("bad index {}", i + 1)));
            }
            seen[i] = true;
        }
        let sub = self.matrix.select_cols(index_set);
        Ok(matrix::det(&sub).abs())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationLattice {
    /// d x N matrix whose rows form a Z-basis of the relation lattice.
    pub basis: IMat,
}

impl RelationLattice {
    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn num_points(&self) -> usize {
        self.basis.cols
    }

    /// The j-th column b_j, i.e. the image of the j-th unit vector in the
    /// dual coordinates attached to this basis.
    pub fn b_column(&self, j: usize) -> Vec<Int> {
        self.basis.col(j)
    }

    /// Membership test for integer vectors.
    pub fn contains(&self, v: &[Int]) -> bool {
        let q: Vec<Rat> = v.iter().map(|x| Rat::from(x.clone())).collect();
        matrix::lattice_contains(&self.basis, &q)
    }

    /// Coordinates of a lattice vector over this basis.
    pub fn coordinates(&self, v: &[Int]) -> Option<Vec<Int>> {
        matrix::lattice_coords(&self.basis, v)
    }
}

/// Canonical basis of the relation lattice of a configuration; rows are in
/// Hermite normal form, so the output is deterministic.
pub fn kernel_basis(config: &PointConfiguration) -> Result<RelationLattice> {
    if QMat::from_int(&config.matrix).rank() != config.ambient_rank() {
        return Err(GkzError::RankDeficient);
    }
    let basis = matrix::kernel_rows(&config.matrix);
    let lat = RelationLattice { basis };
    debug_assert!(lat.basis.mul(&config.matrix.transpose()).is_zero());
    Ok(lat)
}

/// Wrap a user-supplied basis after validating that it spans the full
/// relation lattice of the configuration.
pub fn lattice_from_basis(config: &PointConfiguration, rows: IMat) -> Result<RelationLattice> {
    if rows.cols != config.num_points() {
        return Err(GkzError::Schema("relation basis has wrong width".into()));
    }
    if !rows.mul(&config.matrix.transpose()).is_zero() {
        return Err(GkzError::Schema("rows are not relations (B . A^t != 0)".into()));
    }
    if rows.rows != config.lattice_rank() {
        return Err(GkzError::Schema("relation basis has wrong rank".into()));
    }
    let canonical = kernel_basis(config)?;
    if matrix::hnf(&rows).hnf != canonical.basis {
        return Err(GkzError::Schema("rows do not form a basis of the full relation lattice".into()));
    }
    Ok(RelationLattice { basis: rows })
}

/// The constant beta of the enumeration bound: the maximum absolute value of
/// the entries of (B_{J'})^{-1} B, where J' is the complement of J. Every
/// lattice vector l then satisfies ||l||_1 <= beta * sum_{j in J'} |l_j|.
pub fn enumeration_bound(
    config: &PointConfiguration,
    lattice: &RelationLattice,
    index_set: &[usize],
) -> Result<Rat> {
    let n = config.num_points();
    let need = config.ambient_rank();
    if index_set.len() != need || index_set.iter().any(|&i| i >= n) {
        return Err(GkzError::BadIndexSet(format!("J must have {} valid indices", need)));
    }
    let complement: Vec<usize> = (0..n).filter(|j| !index_set.contains(j)).collect();
    let bj = QMat::from_int(&lattice.basis.select_cols(&complement));
    let inv = bj.inverse().ok_or(GkzError::SingularComplement)?;
    let m = inv.mul(&QMat::from_int(&lattice.basis));
    let mut best = Rat::zero();
    for i in 0..m.rows {
        for j in 0..m.cols {
            let a = m[(i, j)].abs();
            if a > best {
                best = a;
            }
        }
    }
    Ok(best)
}

/// Number of classes modulo the relation lattice of vectors gamma with
/// sum_j gamma_j a_j = c and gamma integral outside J. When the system is
/// solvable the count is |det (a_j)_{j in J}|.
pub fn gamma_class_count(
    config: &PointConfiguration,
    _lattice: &RelationLattice,
    index_set: &[usize],
    c: &[Rat],
) -> Result<Int> {
    let vol = config.simplex_volume(index_set)?;
    if vol.is_zero() {
        return Err(GkzError::BadIndexSet("simplex columns are dependent".into()));
    }
    if solvable_off_set(config, index_set, c) {
        Ok(vol)
    } else {
        Err(GkzError::Unsolvable)
    }
}

/// Does some gamma exist with sum_j gamma_j a_j = c and gamma_j integral for
/// every j outside `inside`? Decided exactly by passing to the quotient by
/// the span of the inside columns and testing lattice membership there.
fn solvable_off_set(config: &PointConfiguration, inside: &[usize], c: &[Rat]) -> bool {
    let n = config.num_points();
    let a = QMat::from_int(&config.matrix);
    // Rational annihilator of the inside columns: rows w with w . a_j = 0.
    let sub = config.matrix.select_cols(inside);
    let w = QMat::from_int(&sub.transpose()).nullspace();
    if w.is_empty() {
        // Inside columns span everything: any rational gamma works off-set
        // components can be taken zero.
        return true;
    }
    let wmat = QMat::from_rows(w);
    // Lattice generated by W a_j for j outside `inside`.
    let outside: Vec<usize> = (0..n).filter(|j| !inside.contains(j)).collect();
    let cols = wmat.mul(&a.select_cols_q(&outside));
    // Clear denominators per equation (row scaling keeps the solution set).
    let mut rows_int: Vec<Vec<Int>> = Vec::new();
    let mut rhs: Vec<Rat> = wmat.mul_vec(c);
    for i in 0..cols.rows {
        let mut denom = Int::one();
        for j in 0..cols.cols {
            denom = num::integer::lcm(denom, cols[(i, j)].denom().clone());
        }
        denom = num::integer::lcm(denom, rhs[i].denom().clone());
        let scale = Rat::from(denom);
        let row: Vec<Int> = (0..cols.cols)
            .map(|j| (&cols[(i, j)] * &scale).to_integer())
            .collect();
        rhs[i] = &rhs[i] * &scale;
        rows_int.push(row);
    }
    if rhs.iter().any(|x| !x.is_integer()) {
        // An integer combination can never produce a non-integral value.
        return false;
    }
    let m = IMat::from_big_rows(&rows_int);
    let b: Vec<Int> = rhs.iter().map(|x| x.to_integer()).collect();
    matrix::solve_integer(&m, &b).is_some()
}

impl QMat {
    fn select_cols_q(&self, cols: &[usize]) -> QMat {
        let mut m = QMat::zero(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }
}

/// Resonance test: c is resonant for the chamber of T iff some gamma solving
/// sum gamma_j a_j = c is integral outside the intersection of two distinct
/// simplices of T.
pub fn is_resonant(
    config: &PointConfiguration,
    lattice: &RelationLattice,
    triangulation: &crate::fan::RegularTriangulation,
    c: &[Rat],
) -> Result<bool> {
    triangulation.validate(config, lattice)?;
    let simplices = &triangulation.simplices;
    for i in 0..simplices.len() {
        for j in i + 1..simplices.len() {
            let inter: Vec<usize> = simplices[i]
                .iter()
                .copied()
                .filter(|x| simplices[j].contains(x))
                .collect();
            if solvable_off_set(config, &inter, c) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int, rat};

    pub fn gauss_config() -> PointConfiguration {
        PointConfiguration::new(&[
            vec![int(1), int(1), int(1)],
            vec![int(-1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
        ])
        .unwrap()
    }

    #[test]
    fn gauss_kernel_is_1111() {
        let cfg = gauss_config();
        let lat = kernel_basis(&cfg).unwrap();
        assert_eq!(lat.rank(), 1);
        let row = lat.basis.row(0);
        let expect: Vec<Int> = vec![int(1), int(1), int(-1), int(-1)];
        let neg: Vec<Int> = expect.iter().map(|x| -x.clone()).collect();
        assert!(row == &expect[..] || row == &neg[..]);
    }

    #[test]
    fn trivial_kernel_when_square() {
        let cfg = PointConfiguration::new(&[
            vec![int(1), int(0)],
            vec![int(1), int(1)],
        ])
        .unwrap();
        let lat = kernel_basis(&cfg).unwrap();
        assert_eq!(lat.rank(), 0);
        assert_eq!(lat.basis.cols, 2);
    }

    #[test]
    fn fd_k3_kernel_spans_displayed_rows() {
        let cfg = crate::fan::fd_configuration(3).unwrap();
        let lat = kernel_basis(&cfg).unwrap();
        let displayed = IMat::from_rows(&[
            vec![1, -1, 0, -1, 1, 0],
            vec![1, 0, -1, -1, 0, 1],
        ]);
        assert_eq!(matrix::hnf(&displayed).hnf, lat.basis);
    }

    #[test]
    fn homogeneity_examples() {
        // First row all ones -> h is the first-coordinate functional.
        let cfg = PointConfiguration::new(&[
            vec![int(1), int(0)],
            vec![int(1), int(1)],
            vec![int(1), int(2)],
        ])
        .unwrap();
        assert_eq!(cfg.h, vec![int(1), int(0)]);

        let gauss = gauss_config();
        assert_eq!(gauss.h, vec![int(-1), int(1), int(1)]);
        // Independent check over a small integer box.
        let mut found = Vec::new();
        for h0 in -3i64..=3 {
            for h1 in -3i64..=3 {
                for h2 in -3i64..=3 {
                    let h = [int(h0), int(h1), int(h2)];
                    let ok = (0..4).all(|j| {
                        let p = gauss.point(j);
                        let dot: Int = (0..3).map(|i| &h[i] * &p[i]).sum();
                        dot == int(1)
                    });
                    if ok {
                        found.push(vec![h0, h1, h2]);
                    }
                }
            }
        }
        assert_eq!(found, vec![vec![-1, 1, 1]]);
    }

    #[test]
    fn no_homogeneity() {
        let r = PointConfiguration::new(&[vec![int(1), int(0)], vec![int(2), int(0)]]);
        assert!(matches!(r, Err(GkzError::NoHomogeneity) | Err(GkzError::RankDeficient)));
        // (1,0) and (2,0) are rank deficient as a 2xN of rank 1; use a rank-2
        // variant to isolate the homogeneity failure.
        let r = PointConfiguration::new(&[
            vec![int(1), int(0)],
            vec![int(2), int(0)],
            vec![int(0), int(1)],
        ]);
        assert!(matches!(r, Err(GkzError::NoHomogeneity)));
    }

    #[test]
    fn generation_check() {
        assert!(gauss_config().check_generates());
        // Columns (2,0),(0,1),(2,1): first coordinates all even.
        let m = IMat::from_rows(&[vec![2, 0, 2], vec![0, 1, 1]]);
        let cfg = PointConfiguration { matrix: m, h: vec![] };
        assert!(!cfg.check_generates());
        let id = PointConfiguration {
            matrix: IMat::identity(3),
            h: vec![],
        };
        assert!(id.check_generates());
    }

    #[test]
    fn duplicate_rejected() {
        let r = PointConfiguration::new(&[
            vec![int(1), int(0)],
            vec![int(1), int(0)],
            vec![int(1), int(1)],
        ]);
        assert!(matches!(r, Err(GkzError::DuplicatePoint)));
    }

    #[test]
    fn volumes() {
        let gauss = gauss_config();
        // I = {1,3,4} in 1-based labels.
        assert_eq!(gauss.simplex_volume(&[0, 2, 3]).unwrap(), int(1));
        assert!(gauss.simplex_volume(&[0, 1]).is_err());
        // Degenerate triple.
        let cfg = PointConfiguration::new(&[
            vec![int(1), int(0), int(0)],
            vec![int(1), int(1), int(0)],
            vec![int(1), int(2), int(0)],
            vec![int(1), int(0), int(1)],
        ])
        .unwrap();
        assert_eq!(cfg.simplex_volume(&[0, 1, 2]).unwrap(), int(0));
    }

    #[test]
    fn beta_bounds() {
        let gauss = gauss_config();
        let lat = kernel_basis(&gauss).unwrap();
        // J = {2,3,4}: complement {1}.
        let beta = enumeration_bound(&gauss, &lat, &[1, 2, 3]).unwrap();
        assert_eq!(beta, rat(1, 1));

        // L = Z(-2,1,1).
        let cfg = PointConfiguration::new(&[
            vec![int(1), int(0)],
            vec![int(1), int(1)],
            vec![int(1), int(-1)],
        ])
        .unwrap();
        let lat = kernel_basis(&cfg).unwrap();
        let beta = enumeration_bound(&cfg, &lat, &[1, 2]).unwrap();
        assert_eq!(beta, rat(1, 1));

        // L = Z(-3,1,1,1).
        let cfg = z3111_config();
        let lat = kernel_basis(&cfg).unwrap();
        let beta = enumeration_bound(&cfg, &lat, &[1, 2, 3]).unwrap();
        assert_eq!(beta, rat(1, 1));
    }

    pub fn z3111_config() -> PointConfiguration {
        PointConfiguration::new(&[
            vec![int(1), int(0), int(0)],
            vec![int(1), int(1), int(1)],
            vec![int(1), int(-1), int(0)],
            vec![int(1), int(0), int(-1)],
        ])
        .unwrap()
    }

    #[test]
    fn class_counts() {
        let gauss = gauss_config();
        let lat = kernel_basis(&gauss).unwrap();
        let c = vec![rat(4, 5), rat(-1, 2), rat(-1, 3)];
        assert_eq!(gamma_class_count(&gauss, &lat, &[1, 2, 3], &c).unwrap(), int(1));

        let z = z3111_config();
        let zl = kernel_basis(&z).unwrap();
        // J = {2,3,4}: |det| = 3, c integral so solvable.
        let c0 = vec![rat(0, 1), rat(0, 1), rat(0, 1)];
        assert_eq!(gamma_class_count(&z, &zl, &[1, 2, 3], &c0).unwrap(), int(3));
        // Class count always matches the simplex volume when defined.
        assert_eq!(z.simplex_volume(&[1, 2, 3]).unwrap(), int(3));
    }

    #[test]
    fn det_b_complement_equals_det_a() {
        // For every (k+1)-subset J with nondegenerate simplex:
        // |det B_{J'}| = |det A_J|.
        for cfg in [gauss_config(), z3111_config()] {
            let lat = kernel_basis(&cfg).unwrap();
            let n = cfg.num_points();
            let k1 = cfg.ambient_rank();
            for j in crate::combinatorics::subsets_of_size(&(0..n).collect::<Vec<_>>(), k1) {
                let va = cfg.simplex_volume(&j).unwrap();
                let comp: Vec<usize> = (0..n).filter(|x| !j.contains(x)).collect();
                let vb = matrix::det(&lat.basis.select_cols(&comp)).abs();
                assert_eq!(va, vb);
            }
        }
    }

    #[test]
    fn kernel_rows_sum_zero() {
        for cfg in [gauss_config(), z3111_config()] {
            let lat = kernel_basis(&cfg).unwrap();
            for i in 0..lat.rank() {
                let s: Int = lat.basis.row(i).iter().cloned().sum();
                assert!(s.is_zero());
            }
        }
    }
}
