//! The mirror-symmetry pipeline: deformed series components, canonical
//! coordinates, mirror-map inversion, the prepotential's instanton part, and
//! the extraction of instanton numbers by trilogarithm inversion.

use crate::error::{GkzError, Result};
use crate::fan::{RegularTriangulation, WeightVector};
use crate::io::InputBundle;
use crate::lattice::{PointConfiguration, RelationLattice};
use crate::matrix::{Int, QMat, Rat};
use crate::multiseries::MultiSeries;
use crate::ring::{self, GradedQuotientRing, RingElement};
use crate::series::{expand_deformed, GammaData};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct MirrorModel {
    pub name: String,
    pub config: PointConfiguration,
    /// Relation basis rows; these double as the adapted basis defining the
    /// coordinates z_i = u^{beta_i}.
    pub lattice: RelationLattice,
    pub gamma: Vec<Rat>,
    pub kappa: Int,
    pub signs: Vec<i64>,
}

/// Default sign rule: sigma_i = (-1)^(sum of the negative parts of the i-th
/// adapted basis row).
pub fn default_signs(lattice: &RelationLattice) -> Vec<i64> {
    (0..lattice.rank())
        .map(|i| {
            let mut neg = Int::zero();
            for j in 0..lattice.num_points() {
                let v = &lattice.basis[(i, j)];
                if v.is_negative() {
                    neg -= v;
                }
            }
            if (neg % Int::from(2)).is_zero() {
                1
            } else {
                -1
            }
        })
        .collect()
}

impl MirrorModel {
    pub fn from_bundle(bundle: &InputBundle) -> Result<Self> {
        if !bundle.b_form {
            return Err(GkzError::Schema("mirror models need a B-form input".into()));
        }
        let gamma = bundle
            .gamma
            .clone()
            .ok_or_else(|| GkzError::Schema("mirror models need gamma".into()))?;
        if gamma.iter().any(|g| !g.is_integer()) {
            return Err(GkzError::Schema("mirror gamma must be integral".into()));
        }
        let kappa = bundle
            .kappa
            .clone()
            .ok_or_else(|| GkzError::Schema("mirror models need kappa".into()))?;
        if !kappa.is_positive() {
            return Err(GkzError::Schema("kappa must be positive".into()));
        }
        let signs = bundle
            .signs
            .clone()
            .unwrap_or_else(|| default_signs(&bundle.lattice));
        Ok(MirrorModel {
            name: bundle.name.clone(),
            config: bundle.config.clone(),
            lattice: bundle.lattice.clone(),
            gamma,
            kappa,
            signs,
        })
    }

    /// The distinguished chamber: positive span of the last d columns of the
    /// relation basis.
    pub fn chamber(&self) -> Result<RegularTriangulation> {
        let n = self.config.num_points();
        let d = self.lattice.rank();
        let alpha: Vec<Rat> = (0..n)
            .map(|j| if j >= n - d { Rat::one() } else { Rat::zero() })
            .collect();
        let w = WeightVector::new(&self.lattice, alpha);
        crate::fan::triangulation_from_weight(&self.config, &self.lattice, &w)
    }
}

/// Everything the downstream stages need, computed once.
pub struct MirrorRun {
    pub model: MirrorModel,
    pub order: u32,
    pub chamber: RegularTriangulation,
    pub ring: GradedQuotientRing,
    pub ring_bar: GradedQuotientRing,
    /// Ordered model basis of the quotient: 1, the delta classes, their
    /// tau-duals, and the top class.
    pub basis: Vec<RingElement>,
    /// Structural-coordinate component series of the reduced series.
    pub structural: Vec<MultiSeries>,
    /// Model-coordinate component series.
    pub components: Vec<MultiSeries>,
    /// Normalized components: f0 is the degree-zero component, f[b] the
    /// component over basis element b+1 divided by f0.
    pub f0: MultiSeries,
    pub f: Vec<MultiSeries>,
}

pub fn run_pipeline(model: &MirrorModel, order: u32) -> Result<MirrorRun> {
    let d = model.lattice.rank();
    let chamber = model.chamber()?;
    if !crate::fan::is_unimodular(&model.config, &chamber) {
        return Err(GkzError::NotUnimodular);
    }
    let ring = ring::build_ring(&model.config, &model.lattice, &chamber)?;
    let data = GammaData {
        gamma: model.gamma.clone(),
        epsilon: Some(ring.generator_images.clone()),
        chamber: chamber.clone(),
        adapted_basis: model.lattice.basis.clone(),
    };
    let series = expand_deformed(&model.config, &ring, &data, order)?;
    let zero_index = vec![0i64; d];
    let leading = series
        .terms
        .get(&zero_index)
        .cloned()
        .ok_or_else(|| GkzError::Internal("deformed series has no leading term".into()))?;
    let ring_bar = ring::quotient_by_annihilator(&ring, &leading)?;
    if ring_bar.grading_ranks != vec![1, d, d, 1] {
        return Err(GkzError::Schema(format!(
            "quotient grading ranks {:?} are not (1, d, d, 1)",
            ring_bar.grading_ranks
        )));
    }
    let basis = model_basis(&ring, &ring_bar, d)?;
    let change = model_change(&ring_bar, &basis)?;

    let rank = ring_bar.rank();
    let mut structural = vec![MultiSeries::zero(d, order); rank];
    for (nvec, coeff) in &series.terms {
        let class = ring_bar.image_class(coeff)?;
        let idx: Vec<u32> = nvec.iter().map(|&x| u32::try_from(x).unwrap()).collect();
        for (i, c) in class.coords.iter().enumerate() {
            if !c.is_zero() {
                structural[i].set_coefficient(idx.clone(), c.clone());
            }
        }
    }
    let mut components = vec![MultiSeries::zero(d, order); rank];
    for (row, comp) in components.iter_mut().enumerate() {
        for (i, s) in structural.iter().enumerate() {
            if !change[(row, i)].is_zero() {
                *comp = comp.add(&s.scale(&change[(row, i)]));
            }
        }
    }
    let f0 = components[0].clone();
    if !f0.constant_term().is_one() {
        return Err(GkzError::Internal("leading component does not start at 1".into()));
    }
    let f0_inv = f0.inverse();
    let f: Vec<MultiSeries> = components[1..].iter().map(|c| c.mul(&f0_inv)).collect();
    Ok(MirrorRun {
        model: model.clone(),
        order,
        chamber,
        ring,
        ring_bar,
        basis,
        structural,
        components,
        f0,
        f,
    })
}

/// The ordered basis 1, delta_1..delta_d, their tau-duals, top generator.
fn model_basis(
    ring: &GradedQuotientRing,
    ring_bar: &GradedQuotientRing,
    d: usize,
) -> Result<Vec<RingElement>> {
    let mut basis = Vec::with_capacity(2 * d + 2);
    basis.push(ring_bar.quotient_class(&ring.one())?);
    let mut deltas = Vec::with_capacity(d);
    for i in 0..d {
        let mut exp = vec![0u32; d];
        exp[i] = 1;
        let y = ring.monomial_class(&exp)?;
        deltas.push(ring_bar.quotient_class(&y)?);
    }
    basis.extend(deltas.iter().cloned());
    // Top class: the first degree-3 monomial class that generates the
    // (rank-one) top piece.
    let top_off = ring_bar.offsets[3];
    let mut e3: Option<RingElement> = None;
    let mut monos = crate::combinatorics::compositions(d, 3);
    monos.sort();
    monos.reverse();
    for mono in monos {
        let y = ring.monomial_class(&mono)?;
        let cls = ring_bar.quotient_class(&y)?;
        let c = &cls.coords[top_off];
        if c.abs() == Rat::one() {
            e3 = Some(cls);
            break;
        }
    }
    let e3 = e3.ok_or_else(|| GkzError::Internal("no unit monomial class in top degree".into()))?;
    // tau-dual degree-2 elements: tau(delta_i * v_j) = delta_{ij}, where tau
    // reads off the e3-coordinate.
    let off2 = ring_bar.offsets[2];
    let r2 = ring_bar.grading_ranks[2];
    let e3c = e3.coords[top_off].clone();
    let mut p = QMat::zero(d, r2);
    for i in 0..d {
        for m in 0..r2 {
            let mut s = ring_bar.zero();
            s.coords[off2 + m] = Rat::one();
            let prod = ring_bar.mul(&deltas[i], &s);
            p[(i, m)] = &prod.coords[top_off] / &e3c;
        }
    }
    let pinv = p
        .inverse()
        .ok_or_else(|| GkzError::Internal("degenerate degree pairing".into()))?;
    for j in 0..d {
        let mut v = ring_bar.zero();
        for m in 0..r2 {
            v.coords[off2 + m] = pinv[(m, j)].clone();
        }
        basis.push(v);
    }
    basis.push(e3);
    Ok(basis)
}

/// Matrix sending structural coordinates to model-basis coordinates.
fn model_change(ring_bar: &GradedQuotientRing, basis: &[RingElement]) -> Result<QMat> {
    let n = ring_bar.rank();
    let mut m = QMat::zero(n, n);
    for (j, e) in basis.iter().enumerate() {
        for i in 0..n {
            m[(i, j)] = e.coords[i].clone();
        }
    }
    m.inverse()
        .ok_or_else(|| GkzError::Internal("model basis is degenerate".into()))
}

/// Canonical coordinates q_i = sigma_i z_i exp(f_{1,i}).
pub fn canonical_coordinates(run: &MirrorRun) -> Vec<MultiSeries> {
    let d = run.model.lattice.rank();
    (0..d)
        .map(|i| {
            let zi = MultiSeries::variable(d, run.order, i);
            let sign = Rat::from(Int::from(run.model.signs[i]));
            zi.mul(&run.f[i].exp()).scale(&sign)
        })
        .collect()
}

/// Invert the mirror map by fixed-point iteration: z_i maps to
/// sigma_i q_i exp(-f_{1,i}(z)); the composition q(z(q)) is the identity
/// through the truncation order.
pub fn invert_mirror_map(run: &MirrorRun, q_series: &[MultiSeries]) -> Result<Vec<MultiSeries>> {
    let d = run.model.lattice.rank();
    let order = run.order;
    // The linear part of q_i must be exactly sigma_i z_i.
    for (i, q) in q_series.iter().enumerate() {
        for j in 0..d {
            let mut unit = vec![0u32; d];
            unit[j] = 1;
            let expect = if i == j {
                Rat::from(Int::from(run.model.signs[i]))
            } else {
                Rat::zero()
            };
            if q.coefficient(&unit) != expect || !q.constant_term().is_zero() {
                return Err(GkzError::BadLinearPart);
            }
        }
    }
    let mut z: Vec<MultiSeries> = (0..d)
        .map(|i| {
            let sign = Rat::from(Int::from(run.model.signs[i]));
            MultiSeries::variable(d, order, i).scale(&sign)
        })
        .collect();
    for _ in 0..order {
        let mut next = Vec::with_capacity(d);
        for i in 0..d {
            let sign = Rat::from(Int::from(run.model.signs[i]));
            let fi = run.f[i].compose(&z);
            let qi = MultiSeries::variable(d, order, i);
            next.push(qi.scale(&sign).mul(&fi.scale(&-Rat::one()).exp()));
        }
        if next == z {
            break;
        }
        z = next;
    }
    Ok(z)
}

/// The pure power-series part of the prepotential in the canonical
/// coordinates: -(kappa/2) times the top component of log of the normalized
/// series, composed with the inverted mirror map.
pub fn instanton_part(run: &MirrorRun) -> Result<MultiSeries> {
    let l = top_log_component(run)?;
    let q = canonical_coordinates(run);
    let z_of_q = invert_mirror_map(run, &q)?;
    let lq = l.compose(&z_of_q);
    let half_kappa = Rat::new(-run.model.kappa.clone(), Int::from(2));
    Ok(lq.scale(&half_kappa))
}

/// The top-degree component of log(Phi / Phi_0) as a power series in z
/// (no logarithms: the symbolic prefactor never enters the top projection
/// of the normalized series).
pub fn top_log_component(run: &MirrorRun) -> Result<MultiSeries> {
    let ring_bar = &run.ring_bar;
    let rank = ring_bar.rank();
    let d = run.model.lattice.rank();
    let order = run.order;
    let f0_inv = run.f0.inverse();
    // S / F0 in structural coordinates.
    let normalized: Vec<MultiSeries> = run.structural.iter().map(|s| s.mul(&f0_inv)).collect();
    // U = S/F0 - 1.
    let mut u = normalized;
    for (i, c) in ring_bar.identity.coords.iter().enumerate() {
        if !c.is_zero() {
            let unit = MultiSeries::constant(d, order, c.clone());
            u[i] = u[i].sub(&unit);
        }
    }
    // log(1 + U) = U - U^2/2 + U^3/3 (U has ring degree >= 1, top degree 3).
    let u2 = ring_series_mul(ring_bar, &u, &u);
    let u3 = ring_series_mul(ring_bar, &u2, &u);
    let mut log = vec![MultiSeries::zero(d, order); rank];
    for i in 0..rank {
        log[i] = u[i]
            .sub(&u2[i].scale(&Rat::new(Int::one(), Int::from(2))))
            .add(&u3[i].scale(&Rat::new(Int::one(), Int::from(3))));
    }
    // Read off the coordinate along the top model basis element.
    let change = model_change(ring_bar, &run.basis)?;
    let top_row = rank - 1;
    let mut out = MultiSeries::zero(d, order);
    for (i, s) in log.iter().enumerate() {
        if !change[(top_row, i)].is_zero() {
            out = out.add(&s.scale(&change[(top_row, i)]));
        }
    }
    Ok(out)
}

/// Ring-valued series product using the structure constants.
fn ring_series_mul(
    ring: &GradedQuotientRing,
    a: &[MultiSeries],
    b: &[MultiSeries],
) -> Vec<MultiSeries> {
    let rank = ring.rank();
    let (d, order) = (a[0].vars, a[0].order);
    let mut out = vec![MultiSeries::zero(d, order); rank];
    for i in 0..rank {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..rank {
            if b[j].is_zero() {
                continue;
            }
            let prod = a[i].mul(&b[j]);
            if prod.is_zero() {
                continue;
            }
            for (k, t) in ring.mult_table[i][j].iter().enumerate() {
                if !t.is_zero() {
                    out[k] = out[k].add(&prod.scale(&Rat::from(t.clone())));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct InstantonTable {
    pub entries: BTreeMap<Vec<u32>, Rat>,
}

impl InstantonTable {
    pub fn all_integral(&self) -> bool {
        self.entries.values().all(|v| v.is_integer())
    }

    pub fn all_positive(&self) -> bool {
        self.entries.values().all(|v| v.is_positive())
    }

    pub fn get(&self, index: &[u32]) -> Option<&Rat> {
        self.entries.get(index)
    }
}

/// Solve a_m = sum_{t >= 1, t | m} N_{m/t} / t^3 for the N's: the inversion
/// of the trilogarithm multi-cover sum.
pub fn extract_instanton_numbers(part: &MultiSeries, order: u32) -> InstantonTable {
    let d = part.vars;
    let mut by_degree: Vec<Vec<Vec<u32>>> = vec![Vec::new(); order as usize + 1];
    for m in crate::combinatorics::multi_indices_up_to(d, order) {
        let deg: u32 = m.iter().sum();
        if deg > 0 {
            by_degree[deg as usize].push(m);
        }
    }
    let mut entries: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    for deg in 1..=order as usize {
        for m in &by_degree[deg] {
            let mut value = part.coefficient(m);
            let g = m.iter().fold(0u32, |acc, &x| num::integer::gcd(acc, x));
            for t in 2..=g {
                if g % t != 0 {
                    continue;
                }
                let base: Vec<u32> = m.iter().map(|&x| x / t).collect();
                let cube = Rat::from(Int::from((t as i64).pow(3)));
                value -= &entries[&base] / cube;
            }
            entries.insert(m.clone(), value);
        }
    }
    InstantonTable { entries }
}

#[derive(Clone, Debug)]
pub struct PairingReport {
    pub invariant_dimension: usize,
    pub gramm: QMat,
    pub pattern_ok: bool,
    pub tau_in_invariant_span: bool,
}

/// Dimension of the monodromy-invariant antisymmetric forms, the tau-pairing
/// Gramm matrix on the model basis, and whether it matches the intersection
/// pattern <e_0, e_3> = 1, <e_{1,i}, e_{2,i}> = -1.
pub fn pairing_report(run: &MirrorRun) -> Result<PairingReport> {
    let ring_bar = &run.ring_bar;
    let forms = ring::monodromy_invariant_forms(ring_bar, &run.basis)?;
    let gramm = ring::tau_pairing(ring_bar, &run.basis)?;
    let n = ring_bar.rank();
    let d = run.model.lattice.rank();
    let mut pattern = QMat::zero(n, n);
    pattern[(0, n - 1)] = Rat::one();
    pattern[(n - 1, 0)] = -Rat::one();
    for i in 0..d {
        pattern[(1 + i, 1 + d + i)] = -Rat::one();
        pattern[(1 + d + i, 1 + i)] = Rat::one();
    }
    let pattern_ok = gramm == pattern;
    // Membership of the Gramm matrix in the span of the invariant forms.
    let vars: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut rows = Vec::new();
    for &(i, j) in &vars {
        rows.push(forms.iter().map(|f| f[(i, j)].clone()).collect::<Vec<Rat>>());
    }
    let sys = QMat::from_rows(rows);
    let rhs: Vec<Rat> = vars.iter().map(|&(i, j)| gramm[(i, j)].clone()).collect();
    let tau_in_invariant_span = sys.solve(&rhs).is_some();
    Ok(PairingReport {
        invariant_dimension: forms.len(),
        gramm,
        pattern_ok,
        tau_in_invariant_span,
    })
}

/// Convenience wrapper: full pipeline to the instanton table.
pub fn instanton_numbers(model: &MirrorModel, order: u32) -> Result<(MirrorRun, InstantonTable)> {
    let run = run_pipeline(model, order)?;
    let part = instanton_part(&run)?;
    Ok((run, extract_instanton_numbers(&part, order)))
}
