//! JSON input and output schemas.
//!
//! Configuration files carry either a point matrix `A` (column list) or a
//! relation basis `B` (row list), never both. Rationals serialize as plain
//! integers or `"p/q"` strings. All indices in JSON are 1-based.

use crate::error::{GkzError, Result};
use crate::fan::{RegularTriangulation, WeightVector};
use crate::lattice::{self, PointConfiguration, RelationLattice};
use crate::matrix::{self, IMat, Int, Rat};
use num::{One, Zero};
use serde::{Deserialize, Serialize};

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_string(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<Int> {
        t.trim()
            .parse::<Int>()
            .map_err(|_| GkzError::Schema(format!("bad integer '{}'", t)))
    };
    match s.split_once('/') {
        None => Ok(Rat::from(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(GkzError::Schema("zero denominator".into()));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
    }
}

fn rat_from_value(v: &serde_json::Value) -> Result<Rat> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from(Int::from(i)))
            } else {
                Err(GkzError::Schema(format!("non-integer number {}", n)))
            }
        }
        serde_json::Value::String(s) => rat_from_string(s),
        other => Err(GkzError::Schema(format!("expected rational, got {}", other))),
    }
}

#[derive(Deserialize)]
struct InputFile {
    name: Option<String>,
    #[serde(rename = "A")]
    a: Option<Vec<Vec<i64>>>,
    #[serde(rename = "B")]
    b: Option<Vec<Vec<i64>>>,
    gamma: Option<Vec<serde_json::Value>>,
    kappa: Option<i64>,
    signs: Option<Vec<i64>>,
    order: Option<u32>,
    weight: Option<Vec<serde_json::Value>>,
}

/// A loaded configuration file.
#[derive(Clone, Debug)]
pub struct InputBundle {
    pub name: String,
    pub config: PointConfiguration,
    /// In B-form files this keeps the given rows (they double as the adapted
    /// basis); in A-form files it is the canonical kernel basis.
    pub lattice: RelationLattice,
    pub b_form: bool,
    pub gamma: Option<Vec<Rat>>,
    pub kappa: Option<Int>,
    pub signs: Option<Vec<i64>>,
    pub order: Option<u32>,
    pub weight: Option<Vec<Rat>>,
}

/// Reconstruct the canonical point configuration of a relation basis. When
/// the basis ends in an identity block the construction is the standard one:
/// A0 = (I | -Btilde^t) with the first row replaced by the all-ones row
/// (which is the sum of all rows of A0). In general the kernel of B is taken
/// in Hermite form and transformed so that its first row is all ones.
pub fn config_from_relations(b: &IMat) -> Result<PointConfiguration> {
    let d = b.rows;
    let n = b.cols;
    if d == 0 || n <= d {
        return Err(GkzError::Schema("relation basis must be d x N with d < N".into()));
    }
    let k1 = n - d;
    let ends_in_identity = {
        let mut ok = true;
        'outer: for i in 0..d {
            for j in 0..d {
                let expect = if i == j { Int::one() } else { Int::zero() };
                if b[(i, k1 + j)] != expect {
                    ok = false;
                    break 'outer;
                }
            }
        }
        ok
    };
    let a = if ends_in_identity {
        let mut a0 = IMat::zero(k1, n);
        for i in 0..k1 {
            a0[(i, i)] = Int::one();
            for r in 0..d {
                a0[(i, k1 + r)] = -b[(r, i)].clone();
            }
        }
        // First row := sum of all rows (the all-ones functional).
        let mut a = a0.clone();
        for j in 0..n {
            let s: Int = (0..k1).map(|i| a0[(i, j)].clone()).sum();
            a[(0, j)] = s;
        }
        a
    } else {
        let raw = matrix::kernel_rows(b);
        if raw.rows != k1 {
            return Err(GkzError::Schema("relation rows are not independent".into()));
        }
        // Solve ones = c^t raw and move the all-ones row to the front.
        let ones = vec![Int::one(); n];
        let c = matrix::solve_integer(&raw.transpose(), &ones)
            .ok_or(GkzError::NoHomogeneity)?;
        let u = matrix::complete_primitive_row(&c)
            .ok_or_else(|| GkzError::Internal("ones combination not primitive".into()))?;
        u.mul(&raw)
    };
    let cols: Vec<Vec<Int>> = (0..n).map(|j| a.col(j)).collect();
    PointConfiguration::new(&cols)
}

pub fn load_input(json: &str) -> Result<InputBundle> {
    let f: InputFile =
        serde_json::from_str(json).map_err(|e| GkzError::Schema(format!("bad JSON: {}", e)))?;
    let (config, lattice, b_form) = match (&f.a, &f.b) {
        (Some(_), Some(_)) => {
            return Err(GkzError::Schema("exactly one of A and B must be given".into()))
        }
        (None, None) => {
            return Err(GkzError::Schema("one of A (columns) or B (rows) is required".into()))
        }
        (Some(cols), None) => {
            let points: Vec<Vec<Int>> = cols
                .iter()
                .map(|c| c.iter().map(|&x| Int::from(x)).collect())
                .collect();
            let config = PointConfiguration::new(&points)?;
            let lattice = lattice::kernel_basis(&config)?;
            (config, lattice, false)
        }
        (None, Some(rows)) => {
            let b = IMat::from_rows(rows);
            let config = config_from_relations(&b)?;
            let lattice = lattice::lattice_from_basis(&config, b)?;
            (config, lattice, true)
        }
    };
    let n = config.num_points();
    let gamma = match &f.gamma {
        None => None,
        Some(vals) => {
            if vals.len() != n {
                return Err(GkzError::Schema(format!(
                    "gamma must have {} entries, got {}",
                    n,
                    vals.len()
                )));
            }
            Some(vals.iter().map(rat_from_value).collect::<Result<Vec<Rat>>>()?)
        }
    };
    let weight = match &f.weight {
        None => None,
        Some(vals) => {
            if vals.len() != n {
                return Err(GkzError::Schema(format!(
                    "weight must have {} entries, got {}",
                    n,
                    vals.len()
                )));
            }
            Some(vals.iter().map(rat_from_value).collect::<Result<Vec<Rat>>>()?)
        }
    };
    if let Some(s) = &f.signs {
        if s.len() != lattice.rank() || s.iter().any(|&x| x != 1 && x != -1) {
            return Err(GkzError::Schema("signs must be a vector of +/-1 of length d".into()));
        }
    }
    Ok(InputBundle {
        name: f.name.unwrap_or_else(|| "unnamed".into()),
        config,
        lattice,
        b_form,
        gamma,
        kappa: f.kappa.map(Int::from),
        signs: f.signs,
        order: f.order,
        weight,
    })
}

impl InputBundle {
    /// The distinguished chamber of the bundle: from the explicit weight if
    /// present, from the positive span of the last d columns for B-form
    /// files, otherwise the first unimodular chamber in canonical order.
    pub fn chamber(&self) -> Result<RegularTriangulation> {
        if let Some(w) = &self.weight {
            let wv = WeightVector::new(&self.lattice, w.clone());
            return crate::fan::triangulation_from_weight(&self.config, &self.lattice, &wv);
        }
        if self.b_form {
            let n = self.config.num_points();
            let d = self.lattice.rank();
            let alpha: Vec<Rat> = (0..n)
                .map(|j| if j >= n - d { Rat::one() } else { Rat::zero() })
                .collect();
            let wv = WeightVector::new(&self.lattice, alpha);
            return crate::fan::triangulation_from_weight(&self.config, &self.lattice, &wv);
        }
        let all = crate::fan::enumerate_regular_triangulations(&self.config, &self.lattice)?;
        all.into_iter()
            .find(|t| crate::fan::is_unimodular(&self.config, t))
            .ok_or_else(|| GkzError::NotATriangulation("no unimodular chamber".into()))
    }
}

// ---------------------------------------------------------------------------
// Output schemas.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TriangulationJson {
    /// 1-based simplex index sets.
    pub simplices: Vec<Vec<usize>>,
    pub witness: Vec<String>,
    pub unimodular: bool,
    pub gkz_vector: Vec<i64>,
}

pub fn triangulation_json(
    config: &PointConfiguration,
    tri: &RegularTriangulation,
) -> TriangulationJson {
    let q = crate::fan::gkz_vector(config, tri);
    TriangulationJson {
        simplices: tri
            .simplices
            .iter()
            .map(|s| s.iter().map(|&i| i + 1).collect())
            .collect(),
        witness: tri.witness.alpha.iter().map(rat_to_string).collect(),
        unimodular: crate::fan::is_unimodular(config, tri),
        gkz_vector: q.iter().map(|x| i64::try_from(x).expect("small volume")).collect(),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct RingJson {
    pub ranks: Vec<usize>,
    pub rank: usize,
    /// Exponent vectors of the standard monomials in the quotient variables;
    /// empty for basis elements of annihilator quotients.
    pub basis: Vec<Vec<u32>>,
    pub mult_table: Vec<Vec<Vec<i64>>>,
    pub generators: Vec<Vec<String>>,
}

pub fn ring_json(ring: &crate::ring::GradedQuotientRing) -> RingJson {
    RingJson {
        ranks: ring.grading_ranks.clone(),
        rank: ring.rank(),
        basis: ring
            .basis
            .iter()
            .map(|b| b.monomial.clone().unwrap_or_default())
            .collect(),
        mult_table: ring
            .mult_table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(|x| i64::try_from(x).expect("small constant")).collect())
                    .collect()
            })
            .collect(),
        generators: ring
            .generator_images
            .iter()
            .map(|g| g.coords.iter().map(rat_to_string).collect())
            .collect(),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct SeriesJson {
    pub order: u32,
    pub terms: Vec<SeriesTermJson>,
}

#[derive(Serialize, Clone, Debug)]
pub struct SeriesTermJson {
    pub n: Vec<i64>,
    pub coeff: Vec<String>,
}

pub fn series_json(series: &crate::series::TruncatedGammaSeries) -> SeriesJson {
    SeriesJson {
        order: series.order,
        terms: series
            .terms
            .iter()
            .map(|(n, c)| SeriesTermJson {
                n: n.clone(),
                coeff: c.coords.iter().map(rat_to_string).collect(),
            })
            .collect(),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct VerifyLambdaJson {
    pub lambda: Vec<i64>,
    pub checked: usize,
    pub unchecked_boundary: usize,
    pub violations: Vec<Vec<i64>>,
}

#[derive(Serialize, Clone, Debug)]
pub struct VerifyReportJson {
    pub euler_checked: usize,
    pub euler_violations: Vec<Vec<i64>>,
    pub box_reports: Vec<VerifyLambdaJson>,
}

impl VerifyReportJson {
    pub fn clean(&self) -> bool {
        self.euler_violations.is_empty()
            && self.box_reports.iter().all(|b| b.violations.is_empty())
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct MirrorJson {
    pub model: String,
    pub order: u32,
    #[serde(rename = "N")]
    pub instanton_numbers: Vec<InstantonEntryJson>,
    pub pairing: PairingJson,
}

#[derive(Serialize, Clone, Debug)]
pub struct InstantonEntryJson {
    pub index: Vec<u32>,
    pub value: String,
    pub integral: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct PairingJson {
    pub invariant_form_dimension: usize,
    pub tau_gramm: Vec<Vec<String>>,
    pub pattern_ok: bool,
    pub tau_in_invariant_span: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    #[test]
    fn rational_strings() {
        assert_eq!(rat_to_string(&crate::matrix::rat(-5, 1)), "-5");
        assert_eq!(rat_to_string(&crate::matrix::rat(2, 3)), "2/3");
        assert_eq!(rat_from_string("7/2").unwrap(), crate::matrix::rat(7, 2));
        assert_eq!(rat_from_string("-4").unwrap(), crate::matrix::rat(-4, 1));
        assert!(rat_from_string("1/0").is_err());
    }

    #[test]
    fn quintic_reconstruction_matches_standard_form() {
        let b = IMat::from_rows(&[vec![-5, 1, 1, 1, 1, 1]]);
        let config = config_from_relations(&b).unwrap();
        let expect = IMat::from_rows(&[
            vec![1, 1, 1, 1, 1, 1],
            vec![0, 1, 0, 0, 0, -1],
            vec![0, 0, 1, 0, 0, -1],
            vec![0, 0, 0, 1, 0, -1],
            vec![0, 0, 0, 0, 1, -1],
        ]);
        assert_eq!(config.matrix, expect);
        assert_eq!(config.h, vec![int(1), int(0), int(0), int(0), int(0)]);
    }

    #[test]
    fn p2p2_reconstruction() {
        let b = IMat::from_rows(&[vec![-3, 1, 0, 1, 0, 1, 0], vec![-3, 0, 1, 0, 1, 0, 1]]);
        let config = config_from_relations(&b).unwrap();
        let expect = IMat::from_rows(&[
            vec![1, 1, 1, 1, 1, 1, 1],
            vec![0, 1, 0, 0, 0, -1, 0],
            vec![0, 0, 1, 0, 0, 0, -1],
            vec![0, 0, 0, 1, 0, -1, 0],
            vec![0, 0, 0, 0, 1, 0, -1],
        ]);
        assert_eq!(config.matrix, expect);
    }

    #[test]
    fn general_b_without_identity_block() {
        // The F4 relation rows do not end in an identity block.
        let b = IMat::from_rows(&[vec![1, -1, 1, -1, 0, 0], vec![1, 0, 1, 0, -1, -1]]);
        let config = config_from_relations(&b).unwrap();
        let lat = lattice::lattice_from_basis(&config, b).unwrap();
        assert_eq!(lat.rank(), 2);
        assert_eq!(config.num_points(), 6);
        // Volume of the F4 polytope is 4.
        let vol = crate::fan::volume(&config, &lat).unwrap();
        assert_eq!(vol, int(4));
    }

    #[test]
    fn exclusivity_and_consistency() {
        let both = r#"{"name":"x","A":[[1,0],[1,1]],"B":[[1,-1]]}"#;
        assert!(matches!(load_input(both), Err(GkzError::Schema(_))));
        let neither = r#"{"name":"x"}"#;
        assert!(matches!(load_input(neither), Err(GkzError::Schema(_))));
        // Rows that are relations but not a full basis: 2 * (1,1,-1,-1).
        let bad = r#"{"name":"x","B":[[2,2,-2,-2]]}"#;
        assert!(load_input(bad).is_err());
    }

    #[test]
    fn loads_gamma_and_weight() {
        let j = r#"{
            "name": "gauss",
            "A": [[1,1,1],[-1,0,0],[0,1,0],[0,0,1]],
            "gamma": [0, "-4/5", "-1/2", "-1/3"],
            "weight": [1, 1, 0, 0]
        }"#;
        let b = load_input(j).unwrap();
        assert_eq!(b.name, "gauss");
        assert_eq!(b.gamma.as_ref().unwrap()[1], crate::matrix::rat(-4, 5));
        let ch = b.chamber().unwrap();
        assert_eq!(ch.simplices.len(), 2);
    }
}
