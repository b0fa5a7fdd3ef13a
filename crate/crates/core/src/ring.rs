//! Graded quotient rings of Stanley-Reisner type.
//!
//! The ring Z[E_1..E_N]/(linear relations + nonface monomials) is presented
//! on the d quotient variables y_1..y_d of the linear relations: the class of
//! E_j is the linear form <b_j, y>, and each nonface monomial becomes the
//! product of the corresponding forms. Graded pieces are cut out degree by
//! degree with integer Hermite reduction, which keeps an integral basis of
//! standard monomials and integer structure constants throughout.

use crate::combinatorics::compositions;
use crate::error::{GkzError, Result};
use crate::fan::RegularTriangulation;
use crate::lattice::{PointConfiguration, RelationLattice};
use crate::matrix::{self, IMat, Int, QMat, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// An element of a [`GradedQuotientRing`], stored as rational coordinates
/// over the ring's global basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub coords: Vec<Rat>,
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }
}

/// Description of one global basis element.
#[derive(Clone, Debug)]
pub struct BasisElem {
    pub degree: usize,
    /// Exponent vector of the standard monomial in the presentation
    /// variables, when the basis element is a monomial class.
    pub monomial: Option<Vec<u32>>,
}

#[derive(Clone, Debug)]
struct Piece {
    /// All degree-m monomials (exponent vectors over the presentation
    /// variables), lexicographically descending.
    monomials: Vec<Vec<u32>>,
    /// HNF rows of the relation lattice over those monomials; pivot entries
    /// are all 1, so reduction stays integral.
    rel_rows: Vec<Vec<Int>>,
    rel_pivots: Vec<usize>,
    /// Indices of the standard (non-pivot) monomials.
    standard: Vec<usize>,
}

impl Piece {
    /// Reduce a coefficient vector over the monomials of this degree to
    /// coordinates over the standard monomials.
    fn reduce(&self, mut v: Vec<Rat>) -> Vec<Rat> {
        for (ri, &pc) in self.rel_pivots.iter().enumerate() {
            if v[pc].is_zero() {
                continue;
            }
            let q = v[pc].clone();
            for (j, coeff) in self.rel_rows[ri].iter().enumerate() {
                if !coeff.is_zero() {
                    let s = &q * Rat::from(coeff.clone());
                    v[j] -= s;
                }
            }
        }
        self.standard.iter().map(|&j| v[j].clone()).collect()
    }
}

#[derive(Clone, Debug)]
struct QuotientPiece {
    /// HNF basis rows of the image lattice x * R^(m), in coordinates of the
    /// parent piece of degree m + deg(x).
    lattice_rows: Vec<Vec<Int>>,
    pivots: Vec<usize>,
    /// Preimages: integer coordinate vectors over the parent degree-m basis
    /// with x * preimage = lattice row.
    preimages: Vec<Vec<Int>>,
}

#[derive(Clone, Debug)]
enum Presentation {
    /// Standard-monomial presentation in the quotient variables.
    Monomial { pieces: Vec<Piece> },
    /// Quotient by the annihilator of an element of a parent ring.
    Annihilator {
        parent: Box<GradedQuotientRing>,
        /// The (primitive integer) element whose annihilator is divided out.
        element: Vec<Rat>,
        pieces: Vec<QuotientPiece>,
    },
}

#[derive(Clone, Debug)]
pub struct GradedQuotientRing {
    /// Number of ring generators E_j (the configuration size N).
    pub num_generators: usize,
    /// Number of presentation variables (the lattice rank d), 0 for rings
    /// not built from a configuration.
    pub num_vars: usize,
    /// Rank of each graded piece, degrees 0..=top.
    pub grading_ranks: Vec<usize>,
    pub basis: Vec<BasisElem>,
    /// offsets[m] = global index of the first degree-m basis element.
    pub offsets: Vec<usize>,
    /// Structure constants: mult_table[i][j] = coordinates of e_i * e_j.
    pub mult_table: Vec<Vec<Vec<Int>>>,
    /// Coordinates of the classes of the generators E_j (all of degree 1).
    pub generator_images: Vec<RingElement>,
    pub identity: RingElement,
    presentation: Presentation,
}

impl GradedQuotientRing {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn top_degree(&self) -> usize {
        self.grading_ranks.len() - 1
    }

    pub fn zero(&self) -> RingElement {
        RingElement { coords: vec![Rat::zero(); self.rank()] }
    }

    pub fn one(&self) -> RingElement {
        self.identity.clone()
    }

    pub fn scalar(&self, c: Rat) -> RingElement {
        self.scale(&self.identity, &c)
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, a: &RingElement, c: &Rat) -> RingElement {
        RingElement { coords: a.coords.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut out = vec![Rat::zero(); self.rank()];
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (k, t) in self.mult_table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &c * Rat::from(t.clone());
                    }
                }
            }
        }
        RingElement { coords: out }
    }

    /// Degree of a homogeneous element; `None` for 0 or mixed degrees.
    pub fn degree_of(&self, a: &RingElement) -> Option<usize> {
        let mut deg = None;
        for (i, c) in a.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = self.basis[i].degree;
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// The degree-0 coordinate of `a` as a scalar (coefficient of 1).
    pub fn scalar_part(&self, a: &RingElement) -> Rat {
        // identity = iota * e_0 with iota = +/-1 in general; solve the 1-dim
        // system a_0 = c * identity_0.
        let i0 = self.offsets[0];
        if self.identity.coords[i0].is_zero() {
            return Rat::zero();
        }
        &a.coords[i0] / &self.identity.coords[i0]
    }

    /// Strip the degree-0 part, returning (scalar, nilpotent rest).
    pub fn split_unit(&self, a: &RingElement) -> (Rat, RingElement) {
        let c = self.scalar_part(a);
        let rest = self.sub(a, &self.scale(&self.identity, &c));
        (c, rest)
    }

    /// Exact inverse of a unit: geometric series on the nilpotent part.
    pub fn invert_unit(&self, a: &RingElement) -> Result<RingElement> {
        let (c, n) = self.split_unit(a);
        if c.is_zero() {
            return Err(GkzError::Internal("attempted to invert a non-unit".into()));
        }
        let cinv = c.recip();
        let scaled = self.scale(&n, &cinv); // a = c (1 + scaled)
        let mut acc = self.one();
        let mut pow = self.one();
        for t in 1..=self.top_degree() {
            pow = self.mul(&pow, &scaled);
            if pow.is_zero() {
                break;
            }
            let signed = if t % 2 == 1 {
                self.scale(&pow, &-Rat::one())
            } else {
                pow.clone()
            };
            acc = self.add(&acc, &signed);
        }
        Ok(self.scale(&acc, &cinv))
    }

    /// The class of a monomial in the presentation variables (monomial
    /// presentation only).
    pub fn monomial_class(&self, exponents: &[u32]) -> Result<RingElement> {
        let Presentation::Monomial { pieces } = &self.presentation else {
            return Err(GkzError::Internal("monomial_class needs a monomial presentation".into()));
        };
        let deg: u32 = exponents.iter().sum();
        let deg = deg as usize;
        let mut out = self.zero();
        if deg >= pieces.len() {
            return Ok(out);
        }
        let piece = &pieces[deg];
        let pos = piece
            .monomials
            .iter()
            .position(|m| m == exponents)
            .ok_or_else(|| GkzError::Internal("unknown monomial".into()))?;
        let mut v = vec![Rat::zero(); piece.monomials.len()];
        v[pos] = Rat::one();
        let reduced = piece.reduce(v);
        for (loc, val) in reduced.into_iter().enumerate() {
            out.coords[self.offsets[deg] + loc] = val;
        }
        Ok(out)
    }

    /// Map an element of the parent ring to its class in this annihilator
    /// quotient: the class of w is represented by x*w expressed over the
    /// image-lattice basis.
    pub fn quotient_class(&self, parent_elem: &RingElement) -> Result<RingElement> {
        let Presentation::Annihilator { parent, element, .. } = &self.presentation else {
            return Err(GkzError::Internal("quotient_class needs an annihilator quotient".into()));
        };
        let x = RingElement { coords: element.clone() };
        let image = parent.mul(parent_elem, &x);
        self.image_class(&image)
    }

    /// Coordinates of an element of the image lattice x * R (given in parent
    /// coordinates) over the quotient basis. Errors if the element does not
    /// lie in the image.
    pub fn image_class(&self, image: &RingElement) -> Result<RingElement> {
        let Presentation::Annihilator { parent, element, pieces } = &self.presentation else {
            return Err(GkzError::Internal("image_class needs an annihilator quotient".into()));
        };
        let x = RingElement { coords: element.clone() };
        let e = parent.degree_of(&x).unwrap_or(0);
        let mut out = self.zero();
        let mut consumed = vec![false; parent.rank()];
        for (m, piece) in pieces.iter().enumerate() {
            if piece.lattice_rows.is_empty() {
                continue;
            }
            let width = piece.lattice_rows[0].len();
            let poff = parent.offsets[m + e];
            for i in 0..width {
                consumed[poff + i] = true;
            }
            let mut slice: Vec<Rat> = (0..width).map(|i| image.coords[poff + i].clone()).collect();
            let coords = express_rational(&piece.lattice_rows, &piece.pivots, &mut slice)
                .ok_or_else(|| GkzError::Internal("element not in quotient image".into()))?;
            for (loc, val) in coords.into_iter().enumerate() {
                out.coords[self.offsets[m] + loc] = val;
            }
        }
        for (i, c) in image.coords.iter().enumerate() {
            if !consumed[i] && !c.is_zero() {
                return Err(GkzError::Internal("element not in quotient image".into()));
            }
        }
        Ok(out)
    }
}

/// Express `v` over HNF rows (rational coefficients); `None` if it is not in
/// the row span.
fn express_rational(rows: &[Vec<Int>], pivots: &[usize], v: &mut [Rat]) -> Option<Vec<Rat>> {
    let mut coeffs = vec![Rat::zero(); rows.len()];
    for (ri, &pc) in pivots.iter().enumerate() {
        if v[pc].is_zero() {
            continue;
        }
        let q = &v[pc] / Rat::from(rows[ri][pc].clone());
        for (j, coeff) in rows[ri].iter().enumerate() {
            if !coeff.is_zero() {
                let s = &q * Rat::from(coeff.clone());
                v[j] -= s;
            }
        }
        coeffs[ri] = q;
    }
    if v.iter().all(|x| x.is_zero()) {
        Some(coeffs)
    } else {
        None
    }
}

/// Inclusion-minimal subsets of {1..N} contained in no simplex of the
/// triangulation (0-based indices).
pub fn minimal_nonfaces(tri: &RegularTriangulation, n: usize) -> Vec<Vec<usize>> {
    assert!(n <= 31, "bitmask nonface search limited to 31 points");
    let masks: Vec<u32> = tri
        .simplices
        .iter()
        .map(|s| s.iter().fold(0u32, |m, &i| m | (1 << i)))
        .collect();
    let is_face = |f: u32| masks.iter().any(|&j| f & !j == 0);
    let mut out: Vec<Vec<usize>> = Vec::new();
    for f in 1u32..(1 << n) {
        if is_face(f) {
            continue;
        }
        // All proper subsets obtained by dropping one element must be faces.
        let mut minimal = true;
        let mut bits = f;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            if !is_face(f & !b) {
                minimal = false;
                break;
            }
            bits &= bits - 1;
        }
        if minimal {
            out.push((0..n).filter(|&i| f & (1 << i) != 0).collect());
        }
    }
    out.sort_by(|a, b| (a.len(), a.clone()).cmp(&(b.len(), b.clone())));
    out
}

/// Multivariate polynomial with integer coefficients, used only while
/// assembling relation generators.
type Poly = BTreeMap<Vec<u32>, Int>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out: Poly = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let c = ca * cb;
            *out.entry(m).or_insert_with(Int::zero) += c;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn linear_form(coeffs: &[Int]) -> Poly {
    let d = coeffs.len();
    let mut p: Poly = BTreeMap::new();
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let mut m = vec![0u32; d];
            m[i] = 1;
            p.insert(m, c.clone());
        }
    }
    p
}

fn degree_monomials(d: usize, m: usize) -> Vec<Vec<u32>> {
    let mut monos = compositions(d, m as u32);
    monos.sort();
    monos.reverse(); // lexicographically descending: y1-heavy first
    monos
}

/// Build the graded ring of a configuration and a regular triangulation.
pub fn build_ring(
    config: &PointConfiguration,
    lattice: &RelationLattice,
    tri: &RegularTriangulation,
) -> Result<GradedQuotientRing> {
    let n = config.num_points();
    let d = lattice.rank();
    let k1 = config.ambient_rank();
    let nonfaces = minimal_nonfaces(tri, n);
    // Nonface generators as polynomials in the quotient variables.
    let mut gens: Vec<Poly> = Vec::new();
    for f in &nonfaces {
        let mut p: Poly = BTreeMap::new();
        p.insert(vec![0u32; d], Int::one());
        for &j in f {
            let col: Vec<Int> = lattice.b_column(j);
            p = poly_mul(&p, &linear_form(&col));
        }
        gens.push(p);
    }

    let mut pieces: Vec<Piece> = Vec::new();
    let mut ranks: Vec<usize> = Vec::new();
    for m in 0..=k1 + 1 {
        let monos = degree_monomials(d, m);
        let index: BTreeMap<Vec<u32>, usize> =
            monos.iter().cloned().enumerate().map(|(i, mo)| (mo, i)).collect();
        let mut rows: Vec<Vec<Int>> = Vec::new();
        for (g, f) in gens.iter().zip(&nonfaces) {
            let fdeg = f.len();
            if fdeg > m {
                continue;
            }
            for mu in degree_monomials(d, m - fdeg) {
                let mut row = vec![Int::zero(); monos.len()];
                for (mono, coeff) in g {
                    let total: Vec<u32> = mono.iter().zip(&mu).map(|(x, y)| x + y).collect();
                    row[index[&total]] = coeff.clone();
                }
                rows.push(row);
            }
        }
        let (rel_rows, rel_pivots) = hermite_rows(rows, monos.len())?;
        let standard: Vec<usize> =
            (0..monos.len()).filter(|j| !rel_pivots.contains(j)).collect();
        let rank = standard.len();
        pieces.push(Piece { monomials: monos, rel_rows, rel_pivots, standard });
        ranks.push(rank);
        if rank == 0 {
            break;
        }
    }
    if *ranks.last().unwrap() != 0 {
        return Err(GkzError::Internal(
            "graded pieces fail to vanish beyond the expected top degree".into(),
        ));
    }
    ranks.pop();
    pieces.pop();
    let top = ranks.len() - 1;

    let mut basis: Vec<BasisElem> = Vec::new();
    let mut offsets: Vec<usize> = Vec::new();
    for (m, piece) in pieces.iter().enumerate() {
        offsets.push(basis.len());
        for &j in &piece.standard {
            basis.push(BasisElem { degree: m, monomial: Some(piece.monomials[j].clone()) });
        }
    }
    let rank = basis.len();

    // Multiplication table on standard monomials.
    let mut table = vec![vec![vec![Int::zero(); rank]; rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            let (mi, mj) = (&basis[i], &basis[j]);
            let deg = mi.degree + mj.degree;
            if deg > top {
                continue;
            }
            let prod: Vec<u32> = mi
                .monomial
                .as_ref()
                .unwrap()
                .iter()
                .zip(mj.monomial.as_ref().unwrap())
                .map(|(a, b)| a + b)
                .collect();
            let piece = &pieces[deg];
            let pos = piece.monomials.iter().position(|m| *m == prod).unwrap();
            let mut v = vec![Rat::zero(); piece.monomials.len()];
            v[pos] = Rat::one();
            let reduced = piece.reduce(v);
            for (loc, val) in reduced.into_iter().enumerate() {
                if !val.is_integer() {
                    return Err(GkzError::TorsionRing);
                }
                table[i][j][offsets[deg] + loc] = val.to_integer();
            }
        }
    }

    let mut ring = GradedQuotientRing {
        num_generators: n,
        num_vars: d,
        grading_ranks: ranks,
        basis,
        offsets,
        mult_table: table,
        generator_images: Vec::new(),
        identity: RingElement { coords: Vec::new() },
        presentation: Presentation::Monomial { pieces },
    };
    // Identity: the empty monomial.
    ring.identity = RingElement { coords: vec![Rat::zero(); rank] };
    ring.identity.coords[0] = Rat::one();
    // Generator images: E_j -> <b_j, y>. With no relations (d = 0) every
    // generator class is zero.
    let mut images = Vec::new();
    for j in 0..n {
        if ring.top_degree() == 0 {
            images.push(ring.zero());
            continue;
        }
        let col = lattice.b_column(j);
        let piece = ring_piece(&ring, 1);
        let mut v = vec![Rat::zero(); piece.monomials.len()];
        for (i, mono) in piece.monomials.iter().enumerate() {
            if let Some(var) = mono.iter().position(|&e| e == 1) {
                v[i] = Rat::from(col[var].clone());
            }
        }
        let reduced = piece.reduce(v);
        let mut e = ring.zero();
        for (loc, val) in reduced.into_iter().enumerate() {
            e.coords[ring.offsets[1] + loc] = val;
        }
        images.push(e);
    }
    ring.generator_images = images;
    Ok(ring)
}

fn ring_piece(ring: &GradedQuotientRing, m: usize) -> Piece {
    match &ring.presentation {
        Presentation::Monomial { pieces } => pieces[m].clone(),
        _ => unreachable!(),
    }
}

/// HNF of generator rows over a monomial basis; requires all pivots to be 1
/// so that standard-monomial reduction stays integral.
fn hermite_rows(rows: Vec<Vec<Int>>, width: usize) -> Result<(Vec<Vec<Int>>, Vec<usize>)> {
    if rows.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let m = IMat::from_big_rows(&rows);
    let h = matrix::hnf(&m);
    let mut out_rows = Vec::new();
    for (ri, &pc) in h.pivots.iter().enumerate() {
        if h.hnf[(ri, pc)] != Int::one() {
            return Err(GkzError::TorsionRing);
        }
        out_rows.push(h.hnf.row(ri).to_vec());
    }
    let _ = width;
    Ok((out_rows, h.pivots.clone()))
}

/// The quotient of a ring by the annihilator of a homogeneous element.
pub fn quotient_by_annihilator(
    ring: &GradedQuotientRing,
    x: &RingElement,
) -> Result<GradedQuotientRing> {
    if x.is_zero() {
        return Err(GkzError::ZeroElement);
    }
    let e = ring
        .degree_of(x)
        .ok_or_else(|| GkzError::Internal("annihilator element must be homogeneous".into()))?;
    // Normalize to a primitive integer vector; the annihilator is unchanged.
    let mut denom = Int::one();
    for c in &x.coords {
        denom = num::integer::lcm(denom, c.denom().clone());
    }
    let ints: Vec<Int> = x.coords.iter().map(|c| (c * Rat::from(denom.clone())).to_integer()).collect();
    let mut g = Int::zero();
    for v in &ints {
        g = num::integer::gcd(g, v.clone());
    }
    let prim: Vec<Rat> = ints.iter().map(|v| Rat::from(v / &g)).collect();
    let xp = RingElement { coords: prim.clone() };

    let top = ring.top_degree();
    let mut pieces: Vec<QuotientPiece> = Vec::new();
    let mut ranks: Vec<usize> = Vec::new();
    for m in 0..=top {
        if m + e > top {
            pieces.push(QuotientPiece {
                lattice_rows: Vec::new(),
                pivots: Vec::new(),
                preimages: Vec::new(),
            });
            ranks.push(0);
            continue;
        }
        let src = ring.grading_ranks[m];
        let dst = ring.grading_ranks[m + e];
        let mut rows: Vec<Vec<Int>> = Vec::new();
        for i in 0..src {
            let mut unit = ring.zero();
            unit.coords[ring.offsets[m] + i] = Rat::one();
            let img = ring.mul(&unit, &xp);
            let row: Vec<Int> = (0..dst)
                .map(|j| {
                    let c = &img.coords[ring.offsets[m + e] + j];
                    debug_assert!(c.is_integer());
                    c.to_integer()
                })
                .collect();
            rows.push(row);
        }
        let mat = IMat::from_big_rows(&rows);
        let h = matrix::hnf(&mat);
        let mut lattice_rows = Vec::new();
        let mut preimages = Vec::new();
        for (ri, &_pc) in h.pivots.iter().enumerate() {
            lattice_rows.push(h.hnf.row(ri).to_vec());
            preimages.push(h.transform.row(ri).to_vec());
        }
        ranks.push(lattice_rows.len());
        pieces.push(QuotientPiece { lattice_rows, pivots: h.pivots.clone(), preimages });
    }
    while ranks.len() > 1 && *ranks.last().unwrap() == 0 {
        ranks.pop();
        pieces.pop();
    }
    let top_bar = ranks.len() - 1;

    let mut basis = Vec::new();
    let mut offsets = Vec::new();
    for (m, r) in ranks.iter().enumerate() {
        offsets.push(basis.len());
        for _ in 0..*r {
            basis.push(BasisElem { degree: m, monomial: None });
        }
    }
    let rank = basis.len();

    // Structure constants via preimages: [w_i][w_j] has representative
    // w_i * (x * w_j), expressed over the image lattice in the target degree.
    let mut table = vec![vec![vec![Int::zero(); rank]; rank]; rank];
    for mi in 0..=top_bar {
        for i in 0..ranks[mi] {
            let gi = offsets[mi] + i;
            let mut pre_i = ring.zero();
            for (c, v) in pieces[mi].preimages[i].iter().enumerate() {
                pre_i.coords[ring.offsets[mi] + c] = Rat::from(v.clone());
            }
            for mj in 0..=top_bar {
                if mi + mj > top_bar {
                    continue;
                }
                for j in 0..ranks[mj] {
                    let gj = offsets[mj] + j;
                    // representative of [w_j] is lattice row j in degree mj+e.
                    let mut rep_j = ring.zero();
                    for (c, v) in pieces[mj].lattice_rows[j].iter().enumerate() {
                        rep_j.coords[ring.offsets[mj + e] + c] = Rat::from(v.clone());
                    }
                    let prod = ring.mul(&pre_i, &rep_j);
                    let target = &pieces[mi + mj];
                    let width = ring.grading_ranks[mi + mj + e];
                    let poff = ring.offsets[mi + mj + e];
                    let mut slice: Vec<Rat> =
                        (0..width).map(|c| prod.coords[poff + c].clone()).collect();
                    let coords = express_rational(&target.lattice_rows, &target.pivots, &mut slice)
                        .ok_or_else(|| {
                            GkzError::Internal("quotient product escaped the image lattice".into())
                        })?;
                    for (loc, val) in coords.into_iter().enumerate() {
                        if !val.is_integer() {
                            return Err(GkzError::TorsionRing);
                        }
                        table[gi][gj][offsets[mi + mj] + loc] = val.to_integer();
                    }
                }
            }
        }
    }

    let mut out = GradedQuotientRing {
        num_generators: ring.num_generators,
        num_vars: ring.num_vars,
        grading_ranks: ranks,
        basis,
        offsets,
        mult_table: table,
        generator_images: Vec::new(),
        identity: RingElement { coords: Vec::new() },
        presentation: Presentation::Annihilator {
            parent: Box::new(ring.clone()),
            element: prim,
            pieces,
        },
    };
    out.identity = out.quotient_class(&ring.one())?;
    let images: Result<Vec<RingElement>> = ring
        .generator_images
        .iter()
        .map(|g| out.quotient_class(g))
        .collect();
    out.generator_images = images?;
    Ok(out)
}

/// The rank-one ring Z in degree zero, with all generator classes zero.
/// Plain (scalar-coefficient) series use this ring so that plain and
/// deformed expansions share one code path.
pub fn trivial_ring(num_generators: usize) -> GradedQuotientRing {
    let piece = Piece {
        monomials: vec![Vec::new()],
        rel_rows: Vec::new(),
        rel_pivots: Vec::new(),
        standard: vec![0],
    };
    let identity = RingElement { coords: vec![Rat::one()] };
    GradedQuotientRing {
        num_generators,
        num_vars: 0,
        grading_ranks: vec![1],
        basis: vec![BasisElem { degree: 0, monomial: Some(Vec::new()) }],
        offsets: vec![0],
        mult_table: vec![vec![vec![Int::one()]]],
        generator_images: vec![RingElement { coords: vec![Rat::zero()] }; num_generators],
        identity,
        presentation: Presentation::Monomial { pieces: vec![piece] },
    }
}

/// Check the Poincare identity: sum over degrees of rank * T^i equals
/// sum_m S_m T^m (1-T)^{k+1-m}, with S_m the number of m-vertex faces.
pub fn poincare_check(
    ring: &GradedQuotientRing,
    config: &PointConfiguration,
    tri: &RegularTriangulation,
) -> bool {
    let k1 = config.ambient_rank();
    // Face counts S_0 = 1, S_m = number of m-element subsets of simplices.
    let mut faces: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    for s in &tri.simplices {
        for sub in crate::combinatorics::subsets_up_to_size(s.len(), s.len())
            .into_iter()
            .map(|idx| idx.into_iter().map(|i| s[i]).collect::<Vec<usize>>())
        {
            if !sub.is_empty() {
                faces.insert(sub);
            }
        }
    }
    let mut s_counts = vec![Int::zero(); k1 + 2];
    s_counts[0] = Int::one();
    for f in &faces {
        s_counts[f.len()] += 1;
    }
    // Expand the right-hand side polynomial.
    let mut rhs = vec![Rat::zero(); k1 + 2];
    for m in 0..=k1 {
        if s_counts[m].is_zero() {
            continue;
        }
        // (1 - T)^{k1 - m}
        let pow = k1 - m;
        for t in 0..=pow {
            let sign = if t % 2 == 0 { Rat::one() } else { -Rat::one() };
            let binom = binomial(pow, t);
            let idx = m + t;
            if idx < rhs.len() {
                rhs[idx] += sign * Rat::from(&s_counts[m] * binom);
            }
        }
    }
    let mut lhs = vec![Rat::zero(); k1 + 2];
    for (i, &r) in ring.grading_ranks.iter().enumerate() {
        if i < lhs.len() {
            lhs[i] = Rat::from(Int::from(r as i64));
        }
    }
    lhs == rhs
}

fn binomial(n: usize, k: usize) -> Int {
    let mut r = Int::one();
    for i in 0..k {
        r = r * Int::from((n - i) as i64) / Int::from((i + 1) as i64);
    }
    r
}

/// Gramm matrix of the pairing <x, y> = tau(x* y) on the given ordered basis
/// of homogeneous elements, where tau projects onto the (rank-one) top piece
/// spanned by the last basis element and x* = (-1)^deg x.
pub fn tau_pairing(ring: &GradedQuotientRing, ordered: &[RingElement]) -> Result<QMat> {
    if *ring.grading_ranks.last().unwrap() != 1 {
        return Err(GkzError::TopRankNotOne);
    }
    let n = ring.rank();
    if ordered.len() != n {
        return Err(GkzError::BadIndexSet("ordered basis has wrong size".into()));
    }
    let change = basis_change(ring, ordered)?;
    let mut g = QMat::zero(n, n);
    for i in 0..n {
        let deg = ring
            .degree_of(&ordered[i])
            .ok_or_else(|| GkzError::Internal("pairing basis must be homogeneous".into()))?;
        let sign = if deg % 2 == 0 { Rat::one() } else { -Rat::one() };
        for j in 0..n {
            let prod = ring.mul(&ordered[i], &ordered[j]);
            let coords = change.mul_vec(&prod.coords);
            g[(i, j)] = &sign * &coords[n - 1];
        }
    }
    Ok(g)
}

/// Matrix expressing structural coordinates in the ordered basis.
fn basis_change(ring: &GradedQuotientRing, ordered: &[RingElement]) -> Result<QMat> {
    let n = ring.rank();
    let mut m = QMat::zero(n, n);
    for (j, e) in ordered.iter().enumerate() {
        for i in 0..n {
            m[(i, j)] = e.coords[i].clone();
        }
    }
    m.inverse().ok_or_else(|| GkzError::Internal("ordered set is not a basis".into()))
}

/// Multiplication matrix of x on the given ordered basis: column j holds the
/// coordinates of x * e_j.
pub fn multiplication_matrix(
    ring: &GradedQuotientRing,
    ordered: &[RingElement],
    x: &RingElement,
) -> Result<QMat> {
    let n = ring.rank();
    let change = basis_change(ring, ordered)?;
    let mut m = QMat::zero(n, n);
    for j in 0..n {
        let prod = ring.mul(x, &ordered[j]);
        let coords = change.mul_vec(&prod.coords);
        for i in 0..n {
            m[(i, j)] = coords[i].clone();
        }
    }
    Ok(m)
}

/// Basis of the space of antisymmetric matrices G with
/// mat(x) G = -G mat(x)^t for the class of every generator, over the given
/// ordered basis. Returned as primitive integer-scaled matrices.
pub fn monodromy_invariant_forms(
    ring: &GradedQuotientRing,
    ordered: &[RingElement],
) -> Result<Vec<QMat>> {
    let n = ring.rank();
    let mats: Result<Vec<QMat>> = ring
        .generator_images
        .iter()
        .map(|g| multiplication_matrix(ring, ordered, g))
        .collect();
    let mats = mats?;
    // Unknowns g_{ij} for i < j (antisymmetric).
    let vars: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let nv = vars.len();
    let g_at = |i: usize, j: usize| -> Option<(usize, Rat)> {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Less => Some((vars.iter().position(|&(a, b)| (a, b) == (i, j))?, Rat::one())),
            Ordering::Greater => {
                Some((vars.iter().position(|&(a, b)| (a, b) == (j, i))?, -Rat::one()))
            }
            Ordering::Equal => None,
        }
    };
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for m in &mats {
        // Constraint: (M G + G M^t)_{rc} = 0 for all r <= c.
        for r in 0..n {
            for c in r..n {
                let mut row = vec![Rat::zero(); nv];
                for t in 0..n {
                    if let Some((v, s)) = g_at(t, c) {
                        row[v] += &m[(r, t)] * &s;
                    }
                    if let Some((v, s)) = g_at(r, t) {
                        row[v] += &m[(c, t)] * &s;
                    }
                }
                if !row.iter().all(|x| x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = if rows.is_empty() {
        QMat::zero(1, nv)
    } else {
        QMat::from_rows(rows)
    };
    let null = sys.nullspace();
    let mut out = Vec::new();
    for v in null {
        // Scale to a primitive integer vector with positive leading entry.
        let mut denom = Int::one();
        for x in &v {
            denom = num::integer::lcm(denom, x.denom().clone());
        }
        let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from(denom.clone())).to_integer()).collect();
        let mut g = Int::zero();
        for x in &ints {
            g = num::integer::gcd(g, x.clone());
        }
        let mut scaled: Vec<Rat> = ints.iter().map(|x| Rat::from(x / &g)).collect();
        if let Some(first) = scaled.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                scaled = scaled.iter().map(|x| -x.clone()).collect();
            }
        }
        let mut gm = QMat::zero(n, n);
        for (vidx, &(i, j)) in vars.iter().enumerate() {
            gm[(i, j)] = scaled[vidx].clone();
            gm[(j, i)] = -scaled[vidx].clone();
        }
        out.push(gm);
    }
    Ok(out)
}
