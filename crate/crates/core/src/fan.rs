//! The secondary fan: vertex lists of weight polyhedra, regular
//! triangulations with explicit interior witnesses, the secondary polytope,
//! and the permutation description of the fan for the Lauricella F_D family.

use crate::combinatorics::{permutations, subsets_of_size, subsets_up_to_size};
use crate::cone;
use crate::error::{GkzError, Result};
use crate::lattice::{PointConfiguration, RelationLattice};
use crate::matrix::{IMat, Int, QMat, Rat};
use num::{One, Signed, Zero};

/// A weight vector alpha in Q^N together with its image t = B alpha in the
/// dual coordinates attached to the lattice basis.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    pub alpha: Vec<Rat>,
    pub t: Vec<Rat>,
}

impl WeightVector {
    pub fn new(lattice: &RelationLattice, alpha: Vec<Rat>) -> Self {
        assert_eq!(alpha.len(), lattice.num_points());
        let b = QMat::from_int(&lattice.basis);
        let t = b.mul_vec(&alpha);
        WeightVector { alpha, t }
    }
}

#[derive(Clone, Debug)]
pub struct RegularTriangulation {
    /// Sorted list of sorted (k+1)-element index sets, 0-based.
    pub simplices: Vec<Vec<usize>>,
    /// A weight in the interior of the corresponding chamber.
    pub witness: WeightVector,
}

impl PartialEq for RegularTriangulation {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}
impl Eq for RegularTriangulation {}

impl RegularTriangulation {
    /// Full battery of triangulation invariants: simplex shape, positive
    /// volumes, volume partition, pairwise proper intersections, a chamber
    /// cone with nonempty interior, and witness consistency.
    pub fn validate(&self, config: &PointConfiguration, lattice: &RelationLattice) -> Result<()> {
        let k1 = config.ambient_rank();
        let n = config.num_points();
        if self.simplices.is_empty() {
            return Err(GkzError::NotATriangulation("empty simplex list".into()));
        }
        let mut total = Int::zero();
        for s in &self.simplices {
            if s.len() != k1 {
                return Err(GkzError::NotATriangulation(format!(
                    "simplex of size {} (expected {})",
                    s.len(),
                    k1
                )));
            }
            if s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&i| i >= n) {
                return Err(GkzError::NotATriangulation("unsorted or invalid simplex".into()));
            }
            let v = config.simplex_volume(s)?;
            if v.is_zero() {
                return Err(GkzError::NotATriangulation("degenerate simplex".into()));
            }
            total += v;
        }
        let vol = volume(config, lattice)?;
        if total != vol {
            return Err(GkzError::NotATriangulation(format!(
                "simplex volumes sum to {} but the polytope has volume {}",
                total, vol
            )));
        }
        for i in 0..self.simplices.len() {
            for j in i + 1..self.simplices.len() {
                if !cone::simplices_intersect_properly(
                    &config.matrix,
                    &self.simplices[i],
                    &self.simplices[j],
                ) {
                    return Err(GkzError::NotATriangulation(format!(
                        "simplices {:?} and {:?} overlap improperly",
                        one_based(&self.simplices[i]),
                        one_based(&self.simplices[j])
                    )));
                }
            }
        }
        let cons = cone::chamber_constraints(&lattice.basis, &self.simplices, true)
            .ok_or_else(|| GkzError::NotATriangulation("singular chamber data".into()))?;
        if cone::feasible_point(&cons, lattice.rank()).is_none() {
            return Err(GkzError::NotATriangulation("chamber cone has empty interior".into()));
        }
        let reproduced = vertex_list(lattice, &self.witness.t);
        if reproduced != self.simplices {
            return Err(GkzError::NotATriangulation("witness does not reproduce the simplex list".into()));
        }
        Ok(())
    }
}

fn one_based(s: &[usize]) -> Vec<usize> {
    s.iter().map(|&i| i + 1).collect()
}

/// Every index set I such that the complementary columns b_j are linearly
/// independent and t is a strictly positive combination of them. These are
/// the vertex sets of the weight polyhedron over t, and for generic t the
/// simplices of the induced triangulation.
pub fn vertex_list(lattice: &RelationLattice, t: &[Rat]) -> Vec<Vec<usize>> {
    let n = lattice.num_points();
    let d = lattice.rank();
    assert_eq!(t.len(), d);
    let b = QMat::from_int(&lattice.basis);
    let mut out: Vec<Vec<usize>> = Vec::new();
    for support in subsets_up_to_size(n, d) {
        let sub = b_select(&b, &support);
        if sub.rank() != support.len() {
            continue;
        }
        let Some(tau) = sub.solve(t) else { continue };
        if !tau.iter().all(|x| x.is_positive()) {
            continue;
        }
        let set: Vec<usize> = (0..n).filter(|j| !support.contains(j)).collect();
        out.push(set);
    }
    out.sort();
    out
}

fn b_select(b: &QMat, cols: &[usize]) -> QMat {
    let mut m = QMat::zero(b.rows, cols.len());
    for i in 0..b.rows {
        for (jj, &j) in cols.iter().enumerate() {
            m[(i, jj)] = b[(i, j)].clone();
        }
    }
    m
}

/// The regular triangulation induced by a generic weight vector; fails with
/// `NonGenericWeight` when the weight lies on a wall of the secondary fan.
pub fn triangulation_from_weight(
    config: &PointConfiguration,
    lattice: &RelationLattice,
    weight: &WeightVector,
) -> Result<RegularTriangulation> {
    let simplices = raw_list_from_t(config, lattice, &weight.t)?;
    let tri = RegularTriangulation { simplices, witness: weight.clone() };
    tri.validate(config, lattice)?;
    Ok(tri)
}

fn raw_list_from_t(
    config: &PointConfiguration,
    lattice: &RelationLattice,
    t: &[Rat],
) -> Result<Vec<Vec<usize>>> {
    let list = vertex_list(lattice, t);
    let k1 = config.ambient_rank();
    if list.iter().any(|s| s.len() != k1) {
        return Err(GkzError::NonGenericWeight);
    }
    Ok(list)
}

/// Normalized volume of the convex hull of the configuration, computed by
/// summing simplex volumes over the triangulation of a deterministic generic
/// weight.
pub fn volume(config: &PointConfiguration, lattice: &RelationLattice) -> Result<Int> {
    let n = config.num_points();
    for m in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut alpha = Vec::with_capacity(n);
        let mut p = Rat::one();
        let base = Rat::from(Int::from(m));
        for _ in 0..n {
            alpha.push(p.clone());
            p *= &base;
        }
        let w = WeightVector::new(lattice, alpha);
        match raw_list_from_t(config, lattice, &w.t) {
            Ok(list) => {
                let mut total = Int::zero();
                for s in &list {
                    total += config.simplex_volume(s)?;
                }
                return Ok(total);
            }
            Err(GkzError::NonGenericWeight) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(GkzError::Internal("no generic weight found for volume computation".into()))
}

/// Exhaustive list of all regular triangulations, each with an integral
/// interior witness. Candidate simplex collections are assembled by depth
/// first search under the volume-partition and proper-intersection
/// constraints, then kept when their chamber cone has nonempty interior.
pub fn enumerate_regular_triangulations(
    config: &PointConfiguration,
    lattice: &RelationLattice,
) -> Result<Vec<RegularTriangulation>> {
    let n = config.num_points();
    let k1 = config.ambient_rank();
    let d = lattice.rank();
    let vol = volume(config, lattice)?;
    let indices: Vec<usize> = (0..n).collect();
    let mut cands: Vec<(Vec<usize>, Int)> = Vec::new();
    for s in subsets_of_size(&indices, k1) {
        let v = config.simplex_volume(&s)?;
        if !v.is_zero() {
            cands.push((s, v));
        }
    }
    let mut compat: Vec<Vec<Option<bool>>> = vec![vec![None; cands.len()]; cands.len()];
    let mut suffix = vec![Int::zero(); cands.len() + 1];
    for i in (0..cands.len()).rev() {
        suffix[i] = &suffix[i + 1] + &cands[i].1;
    }
    let mut results: Vec<RegularTriangulation> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();

    fn compatible(
        config: &PointConfiguration,
        cands: &[(Vec<usize>, Int)],
        compat: &mut [Vec<Option<bool>>],
        a: usize,
        b: usize,
    ) -> bool {
        if let Some(v) = compat[a][b] {
            return v;
        }
        let v = cone::simplices_intersect_properly(&config.matrix, &cands[a].0, &cands[b].0);
        compat[a][b] = Some(v);
        compat[b][a] = Some(v);
        v
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        config: &PointConfiguration,
        lattice: &RelationLattice,
        cands: &[(Vec<usize>, Int)],
        compat: &mut [Vec<Option<bool>>],
        suffix: &[Int],
        vol: &Int,
        start: usize,
        acc: &Int,
        chosen: &mut Vec<usize>,
        d: usize,
        results: &mut Vec<RegularTriangulation>,
    ) {
        if acc == vol {
            let simplices: Vec<Vec<usize>> = chosen.iter().map(|&i| cands[i].0.clone()).collect();
            if let Some(w) = chamber_witness(lattice, &simplices, d) {
                results.push(RegularTriangulation { simplices, witness: w });
            }
            return;
        }
        for i in start..cands.len() {
            let next = acc + &cands[i].1;
            if &next > vol {
                continue;
            }
            if &(acc + &suffix[i]) < vol {
                break;
            }
            if chosen.iter().any(|&c| !compatible(config, cands, compat, c, i)) {
                continue;
            }
            chosen.push(i);
            dfs(config, lattice, cands, compat, suffix, vol, i + 1, &next, chosen, d, results);
            chosen.pop();
        }
    }

    dfs(
        config,
        lattice,
        &cands,
        &mut compat,
        &suffix,
        &vol,
        0,
        &Int::zero(),
        &mut chosen,
        d,
        &mut results,
    );
    results.sort_by(|a, b| a.simplices.cmp(&b.simplices));
    Ok(results)
}

/// An integral weight in the chamber interior, or `None` when the chamber
/// cone has empty interior (i.e. the candidate collection is not regular).
fn chamber_witness(
    lattice: &RelationLattice,
    simplices: &[Vec<usize>],
    d: usize,
) -> Option<WeightVector> {
    let cons = cone::chamber_constraints(&lattice.basis, simplices, true)?;
    let t = cone::feasible_point(&cons, d)?;
    Some(weight_from_t(lattice, &t))
}

/// Solve B alpha = t for an integral alpha (scaling t inside its cone).
fn weight_from_t(lattice: &RelationLattice, t: &[Rat]) -> WeightVector {
    let b = QMat::from_int(&lattice.basis);
    let alpha = b.solve(t).expect("basis has full row rank");
    let mut denom = Int::one();
    for x in &alpha {
        denom = num::integer::lcm(denom, x.denom().clone());
    }
    let scale = Rat::from(denom);
    let alpha: Vec<Rat> = alpha.iter().map(|x| x * &scale).collect();
    WeightVector::new(lattice, alpha)
}

pub fn is_unimodular(config: &PointConfiguration, tri: &RegularTriangulation) -> bool {
    tri.simplices
        .iter()
        .all(|s| config.simplex_volume(s).map(|v| v == Int::one()).unwrap_or(false))
}

/// The GKZ vector of a triangulation: the j-th coordinate is the total
/// volume of the simplices having j as a vertex.
pub fn gkz_vector(config: &PointConfiguration, tri: &RegularTriangulation) -> Vec<Int> {
    let n = config.num_points();
    let mut q = vec![Int::zero(); n];
    for s in &tri.simplices {
        let v = config.simplex_volume(s).expect("validated simplex");
        for &j in s {
            q[j] += &v;
        }
    }
    q
}

#[derive(Clone, Debug)]
pub struct SecondaryPolytope {
    /// Triangulations paired with their GKZ vectors, in canonical order.
    pub vertices: Vec<(RegularTriangulation, Vec<Int>)>,
}

pub fn secondary_polytope(
    config: &PointConfiguration,
    lattice: &RelationLattice,
) -> Result<SecondaryPolytope> {
    let tris = enumerate_regular_triangulations(config, lattice)?;
    let vertices = tris
        .into_iter()
        .map(|t| {
            let q = gkz_vector(config, &t);
            (t, q)
        })
        .collect();
    Ok(SecondaryPolytope { vertices })
}

// ---------------------------------------------------------------------------
// Lauricella F_D: prism configuration and its permutation chambers.
// ---------------------------------------------------------------------------

/// The prism configuration for F_D with parameter k: N = 2k points in
/// Z^{k+1}, the bottom copy (0, e_j) and the top copy (1, e_j).
pub fn fd_configuration(k: usize) -> Result<PointConfiguration> {
    if k < 2 {
        return Err(GkzError::Schema("F_D needs k >= 2".into()));
    }
    let mut points = Vec::new();
    for top in [false, true] {
        for j in 0..k {
            let mut p = vec![Int::zero(); k + 1];
            if top {
                p[0] = Int::one();
            }
            p[j + 1] = Int::one();
            points.push(p);
        }
    }
    PointConfiguration::new(&points)
}

/// The relation lattice of the F_D prism with its standard displayed basis:
/// row i has +1 at position 1, -1 at position i+1, -1 at position k+1 and
/// +1 at position k+i+1 (1-based positions).
pub fn fd_lattice(k: usize) -> Result<(PointConfiguration, RelationLattice)> {
    let config = fd_configuration(k)?;
    let mut rows = Vec::new();
    for i in 1..k {
        let mut r = vec![0i64; 2 * k];
        r[0] = 1;
        r[i] = -1;
        r[k] = -1;
        r[k + i] = 1;
        rows.push(r);
    }
    let basis = IMat::from_rows(&rows);
    let lattice = crate::lattice::lattice_from_basis(&config, basis)?;
    Ok((config, lattice))
}

/// The staircase triangulation of the prism attached to a permutation tau of
/// {1, ..., k}: the j-th simplex keeps the tail of tau on the bottom face
/// and the head of tau on the top face.
pub fn fd_triangulation(k: usize, tau: &[usize]) -> Result<RegularTriangulation> {
    let (config, lattice) = fd_lattice(k)?;
    validate_permutation(k, tau)?;
    let mut simplices = Vec::new();
    for j in 1..=k {
        let mut s: Vec<usize> = Vec::new();
        for i in j..=k {
            s.push(tau[i - 1] - 1);
        }
        for i in 1..=j {
            s.push(k + tau[i - 1] - 1);
        }
        s.sort_unstable();
        simplices.push(s);
    }
    simplices.sort();
    // Interior weight: t_j = (position of j in tau) - (position of 1 in tau),
    // realized through an alpha with B alpha = t.
    let pos_of = |label: usize| tau.iter().position(|&x| x == label).unwrap() as i64;
    let shift = pos_of(1);
    let t: Vec<Rat> = (2..=k)
        .map(|j| Rat::from(Int::from(pos_of(j) - shift)))
        .collect();
    let witness = weight_from_t(&lattice, &t);
    let tri = RegularTriangulation { simplices, witness };
    tri.validate(&config, &lattice)?;
    Ok(tri)
}

fn validate_permutation(k: usize, tau: &[usize]) -> Result<()> {
    if tau.len() != k {
        return Err(GkzError::Schema("permutation has wrong length".into()));
    }
    let mut seen = vec![false; k + 1];
    for &x in tau {
        if x == 0 || x > k || seen[x] {
            return Err(GkzError::Schema("not a permutation of 1..k".into()));
        }
        seen[x] = true;
    }
    Ok(())
}

/// The permutation determined by a generic point t = (t_2, ..., t_k) of the
/// F_D secondary fan (with t_1 = 0): the one sorting the values increasingly.
pub fn fd_permutation_from_weight(k: usize, t: &[Rat]) -> Result<Vec<usize>> {
    if t.len() != k - 1 {
        return Err(GkzError::Schema("t must have k-1 coordinates".into()));
    }
    let mut full: Vec<(Rat, usize)> = Vec::with_capacity(k);
    full.push((Rat::zero(), 1));
    for (i, v) in t.iter().enumerate() {
        full.push((v.clone(), i + 2));
    }
    let mut sorted = full.clone();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    for w in sorted.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(GkzError::OnWall);
        }
    }
    Ok(sorted.into_iter().map(|(_, label)| label).collect())
}

/// All regular triangulations of the F_D prism, via the permutation
/// parameterization.
pub fn fd_all_triangulations(k: usize) -> Result<Vec<RegularTriangulation>> {
    permutations(k).iter().map(|p| fd_triangulation(k, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::kernel_basis;
    use crate::matrix::{int, rat};

    fn config_from_cols(cols: &[Vec<i64>]) -> PointConfiguration {
        let cols: Vec<Vec<Int>> = cols
            .iter()
            .map(|c| c.iter().map(|&x| int(x)).collect())
            .collect();
        PointConfiguration::new(&cols).unwrap()
    }

    fn gauss() -> (PointConfiguration, RelationLattice) {
        let c = config_from_cols(&[
            vec![1, 1, 1],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ]);
        let l = kernel_basis(&c).unwrap();
        (c, l)
    }

    fn z211() -> (PointConfiguration, RelationLattice) {
        let c = config_from_cols(&[vec![1, 0], vec![1, 1], vec![1, -1]]);
        // Fix the displayed basis (-2, 1, 1); the canonical kernel basis is
        // its negative.
        let l = crate::lattice::lattice_from_basis(&c, IMat::from_rows(&[vec![-2, 1, 1]])).unwrap();
        (c, l)
    }

    fn z3111() -> (PointConfiguration, RelationLattice) {
        let c = config_from_cols(&[
            vec![1, 0, 0],
            vec![1, 1, 1],
            vec![1, -1, 0],
            vec![1, 0, -1],
        ]);
        let l = kernel_basis(&c).unwrap();
        (c, l)
    }

    fn pentagon() -> (PointConfiguration, RelationLattice) {
        let c = config_from_cols(&[
            vec![1, 0, 1],
            vec![1, 1, 1],
            vec![1, -1, 0],
            vec![1, 0, 0],
            vec![1, 1, 0],
            vec![1, 0, -1],
        ]);
        let l = kernel_basis(&c).unwrap();
        (c, l)
    }

    fn sets(list: &[Vec<usize>]) -> Vec<Vec<usize>> {
        // 1-based helper for readable expectations.
        let mut v: Vec<Vec<usize>> = list
            .iter()
            .map(|s| s.iter().map(|&i| i - 1).collect())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn vertex_lists_z211() {
        let (_c, l) = z211();
        // b = (-2, 1, 1).
        assert_eq!(vertex_list(&l, &[rat(-1, 1)]), sets(&[vec![2, 3]]));
        assert_eq!(vertex_list(&l, &[rat(1, 1)]), sets(&[vec![1, 2], vec![1, 3]]));
        assert_eq!(vertex_list(&l, &[rat(0, 1)]), sets(&[vec![1, 2, 3]]));
    }

    #[test]
    fn vertex_lists_gauss() {
        let (_c, l) = gauss();
        assert_eq!(
            vertex_list(&l, &[rat(-1, 1)]),
            sets(&[vec![1, 2, 3], vec![1, 2, 4]])
        );
        assert_eq!(
            vertex_list(&l, &[rat(2, 1)]),
            sets(&[vec![2, 3, 4], vec![1, 3, 4]])
        );
        assert_eq!(vertex_list(&l, &[rat(0, 1)]), sets(&[vec![1, 2, 3, 4]]));
    }

    #[test]
    fn vertex_list_f4_sector() {
        // F_4: relation basis rows (1,-1,1,-1,0,0) and (1,0,1,0,-1,-1).
        let rows = IMat::from_rows(&[vec![1, -1, 1, -1, 0, 0], vec![1, 0, 1, 0, -1, -1]]);
        let config = crate::io::config_from_relations(&rows).unwrap();
        let l = crate::lattice::lattice_from_basis(&config, rows).unwrap();
        // t inside the cone spanned by b1 = b3 = (1,1) and b5 = b6 = (0,-1).
        let t = vec![rat(1, 1), rat(0, 1)];
        assert_eq!(
            vertex_list(&l, &t),
            sets(&[vec![2, 3, 4, 6], vec![2, 3, 4, 5], vec![1, 2, 4, 6], vec![1, 2, 4, 5]])
        );
    }

    #[test]
    fn pentagon_weight_triangulation() {
        let (c, l) = pentagon();
        let alpha: Vec<Rat> = [21, 35, 35, 14, 21, 28].iter().map(|&x| rat(x, 1)).collect();
        let w = WeightVector::new(&l, alpha);
        let t = triangulation_from_weight(&c, &l, &w).unwrap();
        assert_eq!(
            t.simplices,
            sets(&[vec![1, 2, 5], vec![1, 4, 5], vec![1, 3, 4], vec![4, 5, 6], vec![3, 4, 6]])
        );
        assert!(is_unimodular(&c, &t));
    }

    #[test]
    fn gauss_weight_sides() {
        let (c, l) = gauss();
        let w = WeightVector::new(&l, vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(1, 1)]);
        // t = -2 < 0: the diagonal through vertices 1 and 2.
        let t = triangulation_from_weight(&c, &l, &w).unwrap();
        assert_eq!(t.simplices, sets(&[vec![1, 2, 3], vec![1, 2, 4]]));
        let w = WeightVector::new(&l, vec![rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1)]);
        let t = triangulation_from_weight(&c, &l, &w).unwrap();
        assert_eq!(t.simplices, sets(&[vec![2, 3, 4], vec![1, 3, 4]]));
        // Constant weights sit on every wall.
        let w = WeightVector::new(&l, vec![rat(3, 1); 4]);
        assert!(matches!(
            triangulation_from_weight(&c, &l, &w),
            Err(GkzError::NonGenericWeight)
        ));
    }

    #[test]
    fn enumerate_counts() {
        let (c, l) = gauss();
        assert_eq!(enumerate_regular_triangulations(&c, &l).unwrap().len(), 2);
        let (c, l) = z3111();
        let tris = enumerate_regular_triangulations(&c, &l).unwrap();
        assert_eq!(tris.len(), 2);
        let (c, l) = pentagon();
        let tris = enumerate_regular_triangulations(&c, &l).unwrap();
        assert_eq!(tris.len(), 10);
        for t in &tris {
            t.validate(&c, &l).unwrap();
        }
    }

    #[test]
    fn secondary_polytopes() {
        let (c, l) = z211();
        let sp = secondary_polytope(&c, &l).unwrap();
        let qs: Vec<Vec<Int>> = sp.vertices.iter().map(|(_, q)| q.clone()).collect();
        assert!(qs.contains(&vec![int(0), int(2), int(2)]));
        assert!(qs.contains(&vec![int(2), int(1), int(1)]));

        let (c, l) = gauss();
        let sp = secondary_polytope(&c, &l).unwrap();
        let qs: Vec<Vec<Int>> = sp.vertices.iter().map(|(_, q)| q.clone()).collect();
        assert!(qs.contains(&vec![int(2), int(2), int(1), int(1)]));
        assert!(qs.contains(&vec![int(1), int(1), int(2), int(2)]));

        let (c, l) = z3111();
        let sp = secondary_polytope(&c, &l).unwrap();
        let qs: Vec<Vec<Int>> = sp.vertices.iter().map(|(_, q)| q.clone()).collect();
        assert!(qs.contains(&vec![int(0), int(3), int(3), int(3)]));
        assert!(qs.contains(&vec![int(3), int(2), int(2), int(2)]));

        // Coordinate sums equal (k+1) * volume for every vertex.
        for (cfg, lat) in [gauss(), z3111(), pentagon()] {
            let vol = volume(&cfg, &lat).unwrap();
            let expect = Int::from(cfg.ambient_rank() as i64) * &vol;
            for (_, q) in secondary_polytope(&cfg, &lat).unwrap().vertices {
                let s: Int = q.iter().cloned().sum();
                assert_eq!(s, expect);
            }
        }
    }

    #[test]
    fn pentagon_gkz_vectors_match_figure() {
        let (c, l) = pentagon();
        let sp = secondary_polytope(&c, &l).unwrap();
        let mut qs: Vec<Vec<i64>> = sp
            .vertices
            .iter()
            .map(|(_, q)| q.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        qs.sort();
        let mut expect = vec![
            vec![2, 3, 2, 4, 1, 3],
            vec![2, 2, 2, 5, 2, 2],
            vec![1, 3, 3, 4, 2, 2],
            vec![4, 3, 2, 0, 1, 5],
            vec![1, 5, 4, 0, 1, 4],
            vec![1, 3, 5, 0, 4, 2],
            vec![1, 4, 3, 3, 1, 3],
            vec![5, 1, 2, 0, 3, 4],
            vec![3, 1, 2, 4, 3, 2],
            vec![3, 1, 4, 0, 5, 2],
        ];
        expect.sort();
        assert_eq!(qs, expect);
    }

    #[test]
    fn fd_triangulation_identity() {
        let t = fd_triangulation(3, &[1, 2, 3]).unwrap();
        assert_eq!(
            t.simplices,
            sets(&[vec![1, 2, 3, 4], vec![2, 3, 4, 5], vec![3, 4, 5, 6]])
        );
        let (c, _) = fd_lattice(3).unwrap();
        assert!(is_unimodular(&c, &t));
    }

    #[test]
    fn fd_gkz_vector_formula() {
        for k in [2usize, 3, 4] {
            let (c, _) = fd_lattice(k).unwrap();
            for tau in permutations(k) {
                let t = fd_triangulation(k, &tau).unwrap();
                let q = gkz_vector(&c, &t);
                let inv = |v: usize| tau.iter().position(|&x| x == v).unwrap() as i64 + 1;
                let mut expect = Vec::new();
                for j in 1..=k {
                    expect.push(int(inv(j)));
                }
                for j in 1..=k {
                    expect.push(int(k as i64 + 1 - inv(j)));
                }
                assert_eq!(q, expect);
            }
        }
    }

    #[test]
    fn fd_gauss_case() {
        // k = 2 reduces to the Gauss square; identity permutation gives the
        // two triangles sharing the diagonal.
        let t = fd_triangulation(2, &[1, 2]).unwrap();
        assert_eq!(t.simplices.len(), 2);
        let (c, _) = fd_lattice(2).unwrap();
        assert!(is_unimodular(&c, &t));
    }

    #[test]
    fn fd_permutation_sorting() {
        assert_eq!(fd_permutation_from_weight(3, &[rat(1, 1), rat(2, 1)]).unwrap(), vec![1, 2, 3]);
        assert_eq!(
            fd_permutation_from_weight(3, &[rat(-1, 1), rat(-2, 1)]).unwrap(),
            vec![3, 2, 1]
        );
        assert!(matches!(
            fd_permutation_from_weight(2, &[rat(0, 1)]),
            Err(GkzError::OnWall)
        ));
    }

    #[test]
    fn fd_round_trip_small() {
        for k in [2usize, 3] {
            let (c, l) = fd_lattice(k).unwrap();
            for tau in permutations(k) {
                let tri = fd_triangulation(k, &tau).unwrap();
                let recovered = fd_permutation_from_weight(k, &tri.witness.t).unwrap();
                assert_eq!(recovered, tau);
                let again = triangulation_from_weight(&c, &l, &tri.witness).unwrap();
                assert_eq!(again.simplices, tri.simplices);
            }
        }
    }

    #[test]
    fn chamber_consistency_random_weights() {
        // Same vertex list => same triangulation, for a spread of weights.
        let (c, l) = pentagon();
        let mut seen: Vec<(Vec<Vec<usize>>, Vec<Vec<usize>>)> = Vec::new();
        for seed in 0..40i64 {
            let alpha: Vec<Rat> = (0..6)
                .map(|j| rat((seed * 7 + j * j * 13 + 3) % 23, 1 + ((seed + j) % 5)))
                .collect();
            let w = WeightVector::new(&l, alpha);
            let Ok(tri) = triangulation_from_weight(&c, &l, &w) else { continue };
            let list = vertex_list(&l, &w.t);
            if let Some((_, t0)) = seen.iter().find(|(l0, _)| *l0 == list) {
                assert_eq!(*t0, tri.simplices);
            } else {
                seen.push((list, tri.simplices.clone()));
            }
        }
    }
}
