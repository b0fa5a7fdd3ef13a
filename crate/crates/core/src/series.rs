//! Plain and nilpotent-deformed Gamma-series, truncated exactly.
//!
//! A series datum fixes an exponent offset gamma, an epsilon vector of
//! degree-one ring elements (all zero in the plain case), a chamber whose
//! monoid of lattice points supports the expansion, and an adapted basis of
//! the relation lattice. Terms are indexed by the multi-index n over the
//! adapted basis; the lattice vector of a term is l = sum_i n_i beta_i.

use crate::cone::{self, Constraint};
use crate::error::{GkzError, Result};
use crate::fan::RegularTriangulation;
use crate::lattice::PointConfiguration;
use crate::matrix::{IMat, Int, Rat};
use crate::ring::{GradedQuotientRing, RingElement};
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug)]
pub struct GammaData {
    pub gamma: Vec<Rat>,
    /// Degree-one ring elements; `None` for a plain series.
    pub epsilon: Option<Vec<RingElement>>,
    pub chamber: RegularTriangulation,
    /// d x N matrix whose rows generate the chamber monoid.
    pub adapted_basis: IMat,
}

impl GammaData {
    /// The parameter c = sum_j gamma_j a_j of the differential system the
    /// series solves.
    pub fn c_vector(&self, config: &PointConfiguration) -> Vec<Rat> {
        let k1 = config.ambient_rank();
        let mut c = vec![Rat::zero(); k1];
        for (j, g) in self.gamma.iter().enumerate() {
            let a = config.point(j);
            for i in 0..k1 {
                c[i] += g * Rat::from(a[i].clone());
            }
        }
        c
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedGammaSeries {
    pub data: GammaData,
    pub order: u32,
    /// Nonzero coefficients, keyed by multi-index over the adapted basis.
    pub terms: BTreeMap<Vec<i64>, RingElement>,
    /// Every enumerated multi-index, including those with zero coefficient;
    /// these are the indices at which the truncation is trusted.
    pub retained: BTreeSet<Vec<i64>>,
}

impl TruncatedGammaSeries {
    /// The lattice vector of a multi-index.
    pub fn lattice_vector(&self, n: &[i64]) -> Vec<i64> {
        let b = &self.data.adapted_basis;
        let mut l = vec![0i64; b.cols];
        for (i, &ni) in n.iter().enumerate() {
            for j in 0..b.cols {
                let v = i64::try_from(&b[(i, j)]).expect("small basis entries");
                l[j] += ni * v;
            }
        }
        l
    }
}

/// Pochhammer symbol (s)_n = s (s+1) ... (s+n-1).
pub fn pochhammer(s: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    let mut f = s.clone();
    for _ in 0..n {
        acc *= &f;
        f += Rat::one();
    }
    acc
}

/// The ratio Gamma(s+1) / Gamma(s+l+1) as an exact rational, interpreted via
/// the Pochhammer rewrite (i.e. by meromorphic continuation in s). Returns
/// an error when the rewrite hits a pole, which happens only for integral
/// s < 0 with s + l >= 0.
pub fn gamma_ratio(s: &Rat, l: i64) -> Result<Rat> {
    if l >= 0 {
        // 1 / ((s+1)(s+2)...(s+l))
        let mut denom = Rat::one();
        let mut f = s + Rat::one();
        for _ in 0..l {
            if f.is_zero() {
                return Err(GkzError::NonNormalizable);
            }
            denom *= &f;
            f += Rat::one();
        }
        Ok(denom.recip())
    } else {
        // s (s-1) ... (s+l+1): a polynomial value, zeros allowed.
        let mut acc = Rat::one();
        let mut f = s.clone();
        for _ in 0..(-l) {
            acc *= &f;
            f -= Rat::one();
        }
        Ok(acc)
    }
}

/// Normalized coefficient of a plain Gamma-series at lattice vector l:
/// prod_j Gamma(gamma_j + 1) / Gamma(gamma_j + l_j + 1).
pub fn plain_coefficient(gamma: &[Rat], l: &[i64]) -> Result<Rat> {
    assert_eq!(gamma.len(), l.len());
    let mut acc = Rat::one();
    for (g, &lj) in gamma.iter().zip(l) {
        acc *= gamma_ratio(g, lj)?;
    }
    Ok(acc)
}

/// Gamma(1+e) / Gamma(m+1+e) for a nilpotent ring element e:
/// the inverse of (1+e)...(m+e) for m > 0, the unit for m = 0, and the
/// polynomial e(e-1)...(e+m+1) for m < 0.
pub fn gamma_ratio_deformed(
    ring: &GradedQuotientRing,
    m: i64,
    e: &RingElement,
) -> Result<RingElement> {
    if !ring.scalar_part(e).is_zero() {
        return Err(GkzError::NotNilpotent);
    }
    if m == 0 {
        return Ok(ring.one());
    }
    if m > 0 {
        let mut prod = ring.one();
        for i in 1..=m {
            let f = ring.add(&ring.scalar(Rat::from(Int::from(i))), e);
            prod = ring.mul(&prod, &f);
        }
        ring.invert_unit(&prod)
    } else {
        let mut prod = ring.one();
        for r in 0..(-m) {
            let f = ring.sub(e, &ring.scalar(Rat::from(Int::from(r))));
            prod = ring.mul(&prod, &f);
        }
        Ok(prod)
    }
}

/// Multi-indices enumerated for an expansion of the given order, together
/// with their lattice vectors. The primary route requires the chamber cone
/// to be the positive orthant in the adapted dual coordinates, so that the
/// chamber monoid is freely generated by the adapted basis; otherwise a box
/// enumeration filtered by cone membership is used.
fn enumerate_support(data: &GammaData, order: u32) -> Result<Vec<(Vec<i64>, Vec<i64>)>> {
    let d = data.adapted_basis.rows;
    let n = data.adapted_basis.cols;

    let closure = cone::chamber_constraints(&data.adapted_basis, &data.chamber.simplices, false)
        .ok_or_else(|| GkzError::NotATriangulation("singular chamber data".into()))?;
    if monoid_is_free(&closure, d) {
        let mut out = Vec::new();
        for idx in crate::combinatorics::multi_indices_up_to(d, order) {
            let nvec: Vec<i64> = idx.iter().map(|&x| x as i64).collect();
            let l = lattice_vec(&data.adapted_basis, &nvec);
            out.push((nvec, l));
        }
        return Ok(out);
    }
    // Fallback: enumerate lattice vectors in the 1-norm box given by the
    // smallest enumeration bound over the chamber simplices, keep the ones
    // whose pairing with the whole chamber is nonnegative.
    let mut beta_bound: Option<Rat> = None;
    let cfgless_basis = &data.adapted_basis;
    for s in &data.chamber.simplices {
        let complement: Vec<usize> = (0..n).filter(|j| !s.contains(j)).collect();
        let sub = crate::matrix::QMat::from_int(&cfgless_basis.select_cols(&complement));
        if let Some(inv) = sub.inverse() {
            let m = inv.mul(&crate::matrix::QMat::from_int(cfgless_basis));
            let mut best = Rat::zero();
            for i in 0..m.rows {
                for j in 0..m.cols {
                    let a = m[(i, j)].abs();
                    if a > best {
                        best = a;
                    }
                }
            }
            beta_bound = Some(match beta_bound {
                None => best,
                Some(b) if best < b => best,
                Some(b) => b,
            });
        }
    }
    let beta = beta_bound.ok_or(GkzError::SingularComplement)?;
    let radius_rat = beta * Rat::from(Int::from(order as i64));
    let radius = radius_rat.ceil().to_integer();
    let radius = i64::try_from(&radius).map_err(|_| GkzError::Internal("bound overflow".into()))?;
    let mut out = Vec::new();
    let mut cvec = vec![0i64; d];
    enumerate_box(data, &closure, radius, 0, &mut cvec, &mut out);
    out.sort();
    Ok(out)
}

fn lattice_vec(basis: &IMat, n: &[i64]) -> Vec<i64> {
    let mut l = vec![0i64; basis.cols];
    for (i, &ni) in n.iter().enumerate() {
        for j in 0..basis.cols {
            let v = i64::try_from(&basis[(i, j)]).expect("small basis entries");
            l[j] += ni * v;
        }
    }
    l
}

fn enumerate_box(
    data: &GammaData,
    closure: &[Constraint],
    radius: i64,
    pos: usize,
    cvec: &mut Vec<i64>,
    out: &mut Vec<(Vec<i64>, Vec<i64>)>,
) {
    let d = data.adapted_basis.rows;
    if pos == d {
        let l = lattice_vec(&data.adapted_basis, cvec);
        let norm: i64 = l.iter().map(|x| x.abs()).sum();
        if norm > radius {
            return;
        }
        // l must pair nonnegatively with the whole chamber: in the adapted
        // dual coordinates the pairing functional is the coefficient vector.
        let functional: Vec<Rat> = cvec.iter().map(|&x| Rat::from(Int::from(x))).collect();
        if cone::nonnegative_on_cone(closure, &functional) {
            out.push((cvec.clone(), l));
        }
        return;
    }
    for v in -radius..=radius {
        cvec[pos] = v;
        enumerate_box(data, closure, radius, pos + 1, cvec, out);
    }
    cvec[pos] = 0;
}

/// The chamber monoid is the free monoid on the adapted basis iff the closed
/// chamber cone is exactly the positive orthant in adapted coordinates.
fn monoid_is_free(closure: &[Constraint], d: usize) -> bool {
    // Each unit vector must lie in the closed cone...
    for i in 0..d {
        for c in closure {
            if c.coeffs[i].is_negative() {
                return false;
            }
        }
    }
    // ...and the closed cone must lie in the orthant.
    for i in 0..d {
        let mut functional = vec![Rat::zero(); d];
        functional[i] = Rat::one();
        if !cone::nonnegative_on_cone(closure, &functional) {
            return false;
        }
    }
    true
}

fn validate_adapted(data: &GammaData) -> Result<()> {
    // Every adapted basis row must lie in the chamber monoid.
    let d = data.adapted_basis.rows;
    let closure = cone::chamber_constraints(&data.adapted_basis, &data.chamber.simplices, false)
        .ok_or_else(|| GkzError::NotATriangulation("singular chamber data".into()))?;
    for i in 0..d {
        let mut functional = vec![Rat::zero(); d];
        functional[i] = Rat::one();
        if !cone::nonnegative_on_cone(&closure, &functional) {
            return Err(GkzError::InvalidGamma(
                "adapted basis row outside the chamber monoid".into(),
            ));
        }
    }
    Ok(())
}

/// Expand a plain Gamma-series to the given order. The gamma vector must be
/// integral outside some simplex of the chamber.
pub fn expand_plain(data: &GammaData, order: u32) -> Result<TruncatedGammaSeries> {
    if data.epsilon.is_some() {
        return Err(GkzError::InvalidGamma("plain expansion with nonzero epsilon".into()));
    }
    validate_adapted(data)?;
    let ok = data.chamber.simplices.iter().any(|s| {
        data.gamma
            .iter()
            .enumerate()
            .all(|(j, g)| s.contains(&j) || g.is_integer())
    });
    if !ok {
        return Err(GkzError::InvalidGamma(
            "gamma must be integral outside some chamber simplex".into(),
        ));
    }
    let ring = crate::ring::trivial_ring(data.gamma.len());
    let mut terms = BTreeMap::new();
    let mut retained = BTreeSet::new();
    for (nvec, l) in enumerate_support(data, order)? {
        let c = plain_coefficient(&data.gamma, &l)?;
        retained.insert(nvec.clone());
        if !c.is_zero() {
            terms.insert(nvec, ring.scalar(c));
        }
    }
    Ok(TruncatedGammaSeries { data: data.clone(), order, terms, retained })
}

/// Expand a deformed Gamma-series with coefficients in the given ring. The
/// chamber must be unimodular and gamma integral.
pub fn expand_deformed(
    config: &PointConfiguration,
    ring: &GradedQuotientRing,
    data: &GammaData,
    order: u32,
) -> Result<TruncatedGammaSeries> {
    let eps = data
        .epsilon
        .as_ref()
        .ok_or_else(|| GkzError::InvalidGamma("deformed expansion needs epsilon".into()))?;
    if !crate::fan::is_unimodular(config, &data.chamber) {
        return Err(GkzError::NotUnimodular);
    }
    if data.gamma.iter().any(|g| !g.is_integer()) {
        return Err(GkzError::InvalidGamma("deformed expansion needs integral gamma".into()));
    }
    validate_adapted(data)?;
    let mut terms = BTreeMap::new();
    let mut retained = BTreeSet::new();
    for (nvec, l) in enumerate_support(data, order)? {
        let mut coeff = ring.one();
        for (j, e) in eps.iter().enumerate() {
            let m = i64::try_from(&data.gamma[j].to_integer()).expect("small gamma") + l[j];
            let f = gamma_ratio_deformed(ring, m, e)?;
            coeff = ring.mul(&coeff, &f);
            if coeff.is_zero() {
                break;
            }
        }
        retained.insert(nvec.clone());
        if !coeff.is_zero() {
            terms.insert(nvec, coeff);
        }
    }
    Ok(TruncatedGammaSeries { data: data.clone(), order, terms, retained })
}

/// The polynomial solutions of the system at c = m * v: the multinomial sum
/// over exponent tuples of total degree m whose weighted point sum is m * v,
/// where v is the dual direction of the homogeneity functional.
pub struct PolynomialSolution {
    /// Exponent tuples with their multinomial coefficients.
    pub terms: Vec<(Vec<u32>, Int)>,
    /// The parameter vector c = m * v of the system the polynomial solves.
    pub c: Vec<Rat>,
}

pub fn polynomial_solution(config: &PointConfiguration, m: u32) -> Result<PolynomialSolution> {
    if m == 0 {
        return Err(GkzError::Schema("polynomial solutions need m >= 1".into()));
    }
    let k1 = config.ambient_rank();
    let p = crate::matrix::complete_primitive_row(&config.h)
        .ok_or_else(|| GkzError::Internal("homogeneity vector is not primitive".into()))?;
    // v = P^{-1} e_1.
    let pinv = crate::matrix::QMat::from_int(&p)
        .inverse()
        .expect("unimodular completion");
    let v: Vec<Rat> = (0..k1).map(|i| pinv[(i, 0)].clone()).collect();
    let target: Vec<Rat> = v.iter().map(|x| x * Rat::from(Int::from(m as i64))).collect();
    let mut terms = Vec::new();
    for tuple in crate::combinatorics::compositions(config.num_points(), m) {
        let mut s = vec![Rat::zero(); k1];
        for (j, &e) in tuple.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let a = config.point(j);
            for i in 0..k1 {
                s[i] += Rat::from(&a[i] * Int::from(e as i64));
            }
        }
        if s == target {
            terms.push((tuple.clone(), multinomial(m, &tuple)));
        }
    }
    Ok(PolynomialSolution { terms, c: target })
}

fn multinomial(m: u32, parts: &[u32]) -> Int {
    let mut num = Int::one();
    for i in 2..=m as i64 {
        num *= Int::from(i);
    }
    let mut den = Int::one();
    for &p in parts {
        for i in 2..=p as i64 {
            den *= Int::from(i);
        }
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{triangulation_from_weight, WeightVector};
    use crate::lattice::RelationLattice;
    use crate::lattice::kernel_basis;
    use crate::matrix::{int, rat};

    fn gauss() -> (PointConfiguration, RelationLattice) {
        let c = PointConfiguration::new(&[
            vec![int(1), int(1), int(1)],
            vec![int(-1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
        ])
        .unwrap();
        let l = kernel_basis(&c).unwrap();
        (c, l)
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(1, 1), 5), rat(120, 1));
        assert_eq!(pochhammer(&rat(1, 2), 0), rat(1, 1));
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
    }

    #[test]
    fn gamma_ratio_cases() {
        // s = 0: 1/Gamma(l+1) = 1/l!.
        assert_eq!(gamma_ratio(&rat(0, 1), 3).unwrap(), rat(1, 6));
        // Negative shift of a nonnegative integer hits a zero.
        assert_eq!(gamma_ratio(&rat(0, 1), -1).unwrap(), rat(0, 1));
        assert_eq!(gamma_ratio(&rat(2, 1), -3).unwrap(), rat(0, 1));
        // Negative integer shifted down stays finite: Gamma(0)/Gamma(-3n).
        assert_eq!(gamma_ratio(&rat(-1, 1), -3).unwrap(), rat(-6, 1));
        // Pole: gamma = -1 shifted up across zero.
        assert!(gamma_ratio(&rat(-1, 1), 1).is_err());
        // Non-integral arguments never pole: 1/((1/2)(3/2)) = 4/3.
        assert_eq!(gamma_ratio(&rat(-1, 2), 2).unwrap(), rat(4, 3));
    }

    fn gauss_plain_data(a0: Rat, b0: Rat, c0: Rat) -> (PointConfiguration, GammaData) {
        let (config, lattice) = gauss();
        let w = WeightVector::new(&lattice, vec![rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1)]);
        let chamber = triangulation_from_weight(&config, &lattice, &w).unwrap();
        let gamma = vec![rat(0, 1), &c0 - rat(1, 1), -a0, -b0];
        let data = GammaData {
            gamma,
            epsilon: None,
            chamber,
            adapted_basis: lattice.basis.clone(),
        };
        (config, data)
    }

    #[test]
    fn gauss_series_coefficients() {
        let (a0, b0, c0) = (rat(1, 2), rat(1, 3), rat(1, 5));
        let (_config, data) = gauss_plain_data(a0.clone(), b0.clone(), c0.clone());
        let s = expand_plain(&data, 5).unwrap();
        for n in 0u32..=5 {
            let expect = pochhammer(&a0, n) * pochhammer(&b0, n)
                / (pochhammer(&rat(1, 1), n) * pochhammer(&c0, n));
            let got = s.terms.get(&vec![n as i64]).map(|e| e.coords[0].clone());
            assert_eq!(got.unwrap(), expect, "coefficient at n = {}", n);
        }
    }

    #[test]
    fn gauss_contiguous_ratio() {
        let (a0, b0, c0) = (rat(1, 2), rat(1, 3), rat(1, 5));
        let (_config, data) = gauss_plain_data(a0.clone(), b0.clone(), c0.clone());
        let d = 8u32;
        let s = expand_plain(&data, d).unwrap();
        for n in 0..(d as i64) {
            let cur = &s.terms[&vec![n]].coords[0];
            let next = &s.terms[&vec![n + 1]].coords[0];
            let nr = Rat::from(Int::from(n));
            let expect = (&a0 + &nr) * (&b0 + &nr) / ((Rat::one() + &nr) * (&c0 + &nr));
            assert_eq!(next / cur, expect);
        }
    }

    #[test]
    fn binomial_series() {
        // L = Z(1,-1) with gamma = (0, 7/2): binomial coefficients. The two
        // points of this configuration coincide, so the chamber data is
        // assembled by hand instead of going through a validated
        // configuration.
        let basis = IMat::from_rows(&[vec![1, -1]]);
        let lattice = RelationLattice { basis };
        let w = WeightVector::new(&lattice, vec![rat(1, 1), rat(0, 1)]);
        // t = 1 > 0: the vertex list is {{2}}.
        let chamber = crate::fan::RegularTriangulation {
            simplices: crate::fan::vertex_list(&lattice, &w.t),
            witness: w,
        };
        assert_eq!(chamber.simplices, vec![vec![1]]);
        let a0 = rat(7, 2);
        let data = GammaData {
            gamma: vec![rat(0, 1), a0.clone()],
            epsilon: None,
            chamber,
            adapted_basis: lattice.basis.clone(),
        };
        let s = expand_plain(&data, 6).unwrap();
        for n in 0u32..=6 {
            // binom(7/2, n)
            let mut expect = Rat::one();
            for i in 0..n {
                expect *= (&a0 - rat(i as i64, 1)) / rat(i as i64 + 1, 1);
            }
            assert_eq!(s.terms[&vec![n as i64]].coords[0], expect);
        }
    }

    #[test]
    fn zero_support_off_cone() {
        // gamma = 0: a negative entry in l kills the plain coefficient.
        assert_eq!(
            plain_coefficient(&vec![rat(0, 1); 4], &[1, 1, -1, -1]).unwrap(),
            rat(0, 1)
        );
        assert_eq!(plain_coefficient(&vec![rat(0, 1); 2], &[0, 0]).unwrap(), rat(1, 1));
    }

    #[test]
    fn two_cubics_f0_law() {
        // gamma = (-1,-1,0,...,0) on the two-cubics lattice: the plain
        // coefficients follow ((3n)!/(n!)^3)^2.
        let b = IMat::from_rows(&[vec![-3, -3, 1, 1, 1, 1, 1, 1]]);
        let config = crate::io::config_from_relations(&b).unwrap();
        let lattice = crate::lattice::lattice_from_basis(&config, b).unwrap();
        let alpha: Vec<Rat> = (0..8).map(|j| if j >= 2 { rat(1, 1) } else { rat(0, 1) }).collect();
        let w = WeightVector::new(&lattice, alpha);
        let chamber = triangulation_from_weight(&config, &lattice, &w).unwrap();
        let mut gamma = vec![rat(0, 1); 8];
        gamma[0] = rat(-1, 1);
        gamma[1] = rat(-1, 1);
        let data = GammaData { gamma, epsilon: None, chamber, adapted_basis: lattice.basis.clone() };
        let s = expand_plain(&data, 3).unwrap();
        let fact = |n: i64| -> Int {
            let mut f = Int::one();
            for i in 2..=n {
                f *= Int::from(i);
            }
            f
        };
        for n in 0i64..=3 {
            let c3n = fact(3 * n);
            let cn = fact(n);
            let expect = Rat::from(&c3n / (&cn * &cn * &cn));
            let expect = &expect * &expect;
            assert_eq!(s.terms[&vec![n]].coords[0], expect, "n = {}", n);
        }
        assert_eq!(s.terms[&vec![1]].coords[0], rat(36, 1));
    }

    #[test]
    fn multinomial_solution_small() {
        // Points with layer pattern (0, 1, -1): tuples of degree 2 balancing
        // the layers.
        let config = PointConfiguration::new(&[
            vec![int(1), int(0)],
            vec![int(1), int(1)],
            vec![int(1), int(-1)],
        ])
        .unwrap();
        let sol = polynomial_solution(&config, 2).unwrap();
        assert!(sol.terms.contains(&(vec![0, 1, 1], int(2))));
        assert!(sol.terms.contains(&(vec![2, 0, 0], int(1))));
        assert_eq!(sol.terms.len(), 2);
        // m = 1: only tuples placing the unit on a zero-layer point.
        let sol = polynomial_solution(&config, 1).unwrap();
        assert_eq!(sol.terms, vec![(vec![1, 0, 0], int(1))]);
    }
}
