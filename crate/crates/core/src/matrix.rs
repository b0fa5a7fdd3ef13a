//! Dense exact linear algebra over the integers and rationals.
//!
//! Everything downstream (kernels, chamber tests, ring bases) is built on the
//! Hermite and Smith normal forms computed here, so all routines are
//! deterministic: same input, same output, no randomized pivoting.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(int(n), int(d))
}

/// Row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = IMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = int(*v);
            }
        }
        m
    }

    pub fn from_big_rows(rows: &[Vec<Int>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = IMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Submatrix keeping the given columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> IMat {
        let mut m = IMat::zero(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn rows_vec(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_scaled_row(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let p = q * &self[(src, j)];
            self[(dst, j)] -= p;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of a row-style Hermite normal form computation: `transform * input = hnf`.
pub struct Hnf {
    pub hnf: IMat,
    pub transform: IMat,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-style HNF: pivots positive, entries above each pivot reduced into
/// `[0, pivot)`, zero rows at the bottom. Deterministic.
pub fn hnf(m: &IMat) -> Hnf {
    let mut h = m.clone();
    let mut u = IMat::identity(m.rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..h.cols {
        if r == h.rows {
            break;
        }
        loop {
            // Minimal absolute nonzero entry in column c at or below row r.
            let mut best: Option<usize> = None;
            for i in r..h.rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(b) if h[(i, c)].abs() < h[(b, c)].abs() => Some(i),
                    Some(b) => Some(b),
                };
            }
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            u.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..h.rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = div_round(&h[(i, c)], &h[(r, c)]);
                h.sub_scaled_row(i, r, &q);
                u.sub_scaled_row(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            h.sub_scaled_row(i, r, &q);
            u.sub_scaled_row(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hnf { hnf: h, transform: u, pivots }
}

/// Division with rounding to the nearest integer (used to keep HNF
/// intermediates small; exact choice does not affect the final form).
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    let two_r = int(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) ^ (b.is_negative()) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// Basis of the lattice `{x in Z^n : m * x = 0}` returned as the rows of a
/// matrix in canonical (HNF) form. The kernel of an integer matrix is
/// saturated, so these rows always generate the full kernel lattice.
pub fn kernel_rows(m: &IMat) -> IMat {
    let t = m.transpose();
    let h = hnf(&t);
    let rank = h.rank();
    let n = m.cols;
    let mut ker = IMat::zero(n - rank, n);
    for i in rank..n {
        for j in 0..n {
            ker[(i - rank, j)] = h.transform[(i, j)].clone();
        }
    }
    hnf(&ker).hnf
}

/// Smith normal form: `u * m * v = d` with `u`, `v` unimodular and `d`
/// diagonal with nonnegative entries `d_1 | d_2 | ...`.
pub struct Snf {
    pub d: IMat,
    pub u: IMat,
    pub v: IMat,
}

pub fn snf(m: &IMat) -> Snf {
    let mut d = m.clone();
    let mut u = IMat::identity(m.rows);
    let mut v = IMat::identity(m.cols);
    let n = m.rows.min(m.cols);
    loop {
        diagonalize(&mut d, &mut u, &mut v);
        // Repair the divisibility chain d_i | d_{i+1}; gluing column i+1 into
        // column i re-introduces an off-diagonal entry whose elimination
        // replaces the pair (a, b) by (gcd, lcm).
        let mut bad = None;
        for i in 0..n.saturating_sub(1) {
            let a = &d[(i, i)];
            let b = &d[(i + 1, i + 1)];
            if !a.is_zero() && !b.is_zero() && !(b % a).is_zero() {
                bad = Some(i);
                break;
            }
        }
        let Some(i) = bad else { break };
        let minus_one = -Int::one();
        sub_scaled_col(&mut d, i, i + 1, &minus_one);
        sub_scaled_col(&mut v, i, i + 1, &minus_one);
    }
    Snf { d, u, v }
}

fn diagonalize(d: &mut IMat, u: &mut IMat, v: &mut IMat) {
    let n = d.rows.min(d.cols);
    let mut t = 0;
    while t < n {
        // Find minimal-abs nonzero entry in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..d.rows {
            for j in t..d.cols {
                if d[(i, j)].is_zero() {
                    continue;
                }
                best = match best {
                    None => Some((i, j)),
                    Some(b) if d[(i, j)].abs() < d[b].abs() => Some((i, j)),
                    Some(b) => Some(b),
                };
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        swap_cols(d, t, bj);
        swap_cols(v, t, bj);
        // Clear column t and row t; remainders can reappear after the cross
        // pass, so iterate until both are clean.
        let mut clean = false;
        while !clean {
            clean = true;
            for i in t + 1..d.rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = div_round(&d[(i, t)], &d[(t, t)]);
                d.sub_scaled_row(i, t, &q);
                u.sub_scaled_row(i, t, &q);
                if !d[(i, t)].is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    clean = false;
                }
            }
            for j in t + 1..d.cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = div_round(&d[(t, j)], &d[(t, t)]);
                sub_scaled_col(d, j, t, &q);
                sub_scaled_col(v, j, t, &q);
                if !d[(t, j)].is_zero() {
                    swap_cols(d, t, j);
                    swap_cols(v, t, j);
                    clean = false;
                }
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
}

fn swap_cols(m: &mut IMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        let x = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = x;
    }
}

/// col[dst] -= q * col[src]
fn sub_scaled_col(m: &mut IMat, dst: usize, src: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for i in 0..m.rows {
        let p = q * &m[(i, src)];
        m[(i, dst)] -= p;
    }
}

/// Determinant of a square integer matrix (fraction-free Bareiss).
pub fn det(m: &IMat) -> Int {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return Int::one();
    }
    let mut a = m.clone();
    let mut sign = 1i64;
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Int::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                a[(i, j)] = q;
            }
        }
        for i in k + 1..n {
            a[(i, k)] = Int::zero();
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// One integer solution of `m x = b`, if any (via SNF).
pub fn solve_integer(m: &IMat, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(m.rows, b.len());
    let s = snf(m);
    let ub = s.u.mul_vec(b);
    let n = m.cols;
    let mut z = vec![Int::zero(); n];
    let r = m.rows.min(n);
    for i in 0..m.rows {
        if i < r && !s.d[(i, i)].is_zero() {
            let (q, rem) = ub[i].div_rem(&s.d[(i, i)]);
            if !rem.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !ub[i].is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&z))
}

/// Whether the rational vector `v` lies in the lattice spanned by `rows`.
pub fn lattice_contains(rows: &IMat, v: &[Rat]) -> bool {
    // Coordinates that must combine integrally: solve x^t * rows = v over Q,
    // then check integrality; when rows are not independent fall back to
    // HNF reduction of a scaled copy.
    let h = hnf(rows);
    let mut w: Vec<Rat> = v.to_vec();
    for (ri, &pc) in h.pivots.iter().enumerate() {
        if w[pc].is_zero() {
            continue;
        }
        let pivot = Rat::from(h.hnf[(ri, pc)].clone());
        let q = &w[pc] / &pivot;
        if !q.is_integer() {
            return false;
        }
        for j in 0..rows.cols {
            let s = &q * Rat::from(h.hnf[(ri, j)].clone());
            w[j] -= s;
        }
    }
    w.iter().all(|x| x.is_zero())
}

/// Reduce `v` modulo the lattice spanned by `rows`, returning the integer
/// combination used at the pivot columns; `None` if the reduction needs a
/// non-integral multiple at some pivot.
pub fn lattice_coords(rows: &IMat, v: &[Int]) -> Option<Vec<Int>> {
    let h = hnf(rows);
    let mut w: Vec<Int> = v.to_vec();
    let mut coeffs = vec![Int::zero(); h.rank()];
    for (ri, &pc) in h.pivots.iter().enumerate() {
        if w[pc].is_zero() {
            continue;
        }
        let (q, r) = w[pc].div_rem(&h.hnf[(ri, pc)]);
        if !r.is_zero() {
            return None;
        }
        for j in 0..rows.cols {
            let s = &q * &h.hnf[(ri, j)];
            w[j] -= s;
        }
        coeffs[ri] = q;
    }
    if w.iter().all(|x| x.is_zero()) {
        Some(coeffs)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Rational dense matrices (small systems only).
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn from_int(m: &IMat) -> Self {
        let mut q = QMat::zero(m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                q[(i, j)] = Rat::from(m[(i, j)].clone());
            }
        }
        q
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = QMat::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn neg(&self) -> QMat {
        let mut m = self.clone();
        for x in &mut m.data {
            *x = -x.clone();
        }
        m
    }

    /// Solve `self * x = b`; `None` when inconsistent, a single solution when
    /// consistent (free variables pinned to zero).
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len());
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows_q(r, p);
            rhs.swap(r, p);
            let inv = a[(r, c)].recip();
            for j in 0..a.cols {
                let v = &a[(r, j)] * &inv;
                a[(r, j)] = v;
            }
            let v = &rhs[r] * &inv;
            rhs[r] = v;
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..a.cols {
                    let s = &f * &a[(r, j)];
                    a[(i, j)] -= s;
                }
                let s = &f * &rhs[r];
                rhs[i] -= s;
            }
            pivot_cols.push(c);
            r += 1;
            if r == a.rows {
                break;
            }
        }
        for i in r..a.rows {
            if !rhs[i].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rat::zero(); a.cols];
        for (ri, &c) in pivot_cols.iter().enumerate() {
            x[c] = rhs[ri].clone();
        }
        Some(x)
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut r = 0;
        for c in 0..a.cols {
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows_q(r, p);
            for i in r + 1..a.rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = &a[(i, c)] / &a[(r, c)];
                for j in c..a.cols {
                    let s = &f * &a[(r, j)];
                    a[(i, j)] -= s;
                }
            }
            r += 1;
            if r == a.rows {
                break;
            }
        }
        r
    }

    /// Basis of the right null space `{x : self * x = 0}`, from the reduced
    /// echelon form; deterministic, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let mut a = self.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows_q(r, p);
            let inv = a[(r, c)].recip();
            for j in 0..a.cols {
                let v = &a[(r, j)] * &inv;
                a[(r, j)] = v;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..a.cols {
                    let s = &f * &a[(r, j)];
                    a[(i, j)] -= s;
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == a.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (ri, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[(ri, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMat::identity(n);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return None;
            };
            a.swap_rows_q(c, p);
            inv.swap_rows_q(c, p);
            let f = a[(c, c)].recip();
            for j in 0..n {
                let v = &a[(c, j)] * &f;
                a[(c, j)] = v;
                let v = &inv[(c, j)] * &f;
                inv[(c, j)] = v;
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    let s = &f * &a[(c, j)];
                    a[(i, j)] -= s;
                    let s = &f * &inv[(c, j)];
                    inv[(i, j)] -= s;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows_q(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Extend a primitive integer row vector to a unimodular matrix having it as
/// the first row.
pub fn complete_primitive_row(v: &[Int]) -> Option<IMat> {
    let m = IMat::from_big_rows(&[v.to_vec()]);
    let s = snf(&m);
    if s.d[(0, 0)] != Int::one() {
        return None;
    }
    // u * v * V = e1^t with u = [sign], so +/- the first row of V^{-1} is v.
    let vinv = QMat::from_int(&s.v).inverse().expect("unimodular");
    let n = v.len();
    let mut out = IMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = &vinv[(i, j)];
            assert!(x.is_integer());
            out[(i, j)] = x.numer().clone();
        }
    }
    if s.u[(0, 0)].is_negative() {
        out.negate_row(0);
    }
    debug_assert_eq!(out.row(0), v);
    Some(out)
}

pub fn gcd_of_maximal_minors(m: &IMat) -> Int {
    // gcd over all r x r minors where r = rank; only needed for small d here.
    let r = QMat::from_int(m).rank();
    if r == 0 {
        return Int::zero();
    }
    assert_eq!(r, m.rows, "rows must be independent");
    let cols: Vec<usize> = (0..m.cols).collect();
    let mut g = Int::zero();
    for combo in crate::combinatorics::subsets_of_size(&cols, r) {
        let sub = m.select_cols(&combo);
        g = g.gcd(&det(&sub));
        if g == Int::one() {
            return g;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_small() {
        let m = IMat::from_rows(&[vec![1, 2], vec![3, 4]]);
        let h = hnf(&m);
        assert_eq!(h.transform.mul(&m), h.hnf);
        assert_eq!(h.hnf, IMat::from_rows(&[vec![1, 0], vec![0, 2]]));

        let m = IMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let h = hnf(&m);
        assert_eq!(h.transform.mul(&m), h.hnf);
        assert_eq!(det(&h.transform).abs(), Int::one());
        // Pivots positive, entries above reduced.
        assert_eq!(h.pivots, vec![0, 1, 2]);
        let prod: Int = (0..3).map(|i| h.hnf[(i, i)].clone()).product();
        assert_eq!(prod, det(&m).abs());
        for (ri, &pc) in h.pivots.iter().enumerate() {
            for i in 0..ri {
                assert!(h.hnf[(i, pc)] >= Int::zero() && h.hnf[(i, pc)] < h.hnf[(ri, pc)]);
            }
        }
    }

    #[test]
    fn kernel_of_gauss_config() {
        let a = IMat::from_rows(&[vec![1, -1, 0, 0], vec![1, 0, 1, 0], vec![1, 0, 0, 1]]);
        let k = kernel_rows(&a);
        assert_eq!(k.rows, 1);
        let row: Vec<i64> = vec![1, 1, -1, -1];
        let got = k.row(0);
        assert!(got.iter().zip(&row).all(|(a, b)| *a == int(*b)) ||
                got.iter().zip(&row).all(|(a, b)| *a == int(-*b)));
    }

    #[test]
    fn snf_diagonal_divides() {
        let m = IMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let s = snf(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        // Invariant factors: gcd of entries 2, gcd of 2x2 minors 4, det 624.
        assert_eq!(s.d[(0, 0)], int(2));
        assert_eq!(s.d[(1, 1)], int(2));
        assert_eq!(s.d[(2, 2)], int(156));
        assert_eq!(det(&s.u).abs(), Int::one());
        assert_eq!(det(&s.v).abs(), Int::one());
    }

    #[test]
    fn det_bareiss() {
        let m = IMat::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]);
        assert_eq!(det(&m), int(-3));
        let singular = IMat::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(det(&singular), int(0));
    }

    #[test]
    fn solve_integer_system() {
        let m = IMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        let b = vec![int(4), int(9)];
        let x = solve_integer(&m, &b).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
        let b2 = vec![int(1), int(0)];
        assert!(solve_integer(&m, &b2).is_none());
    }

    #[test]
    fn qmat_solve_and_nullspace() {
        let m = QMat::from_int(&IMat::from_rows(&[vec![1, 1], vec![1, -1]]));
        let x = m.solve(&[rat(3, 1), rat(1, 1)]).unwrap();
        assert_eq!(x, vec![rat(2, 1), rat(1, 1)]);
        let singular = QMat::from_int(&IMat::from_rows(&[vec![1, 2], vec![2, 4]]));
        let ns = singular.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![rat(-2, 1), rat(1, 1)]);
    }

    #[test]
    fn complete_row() {
        let v = vec![int(3), int(5)];
        let m = complete_primitive_row(&v).unwrap();
        assert_eq!(det(&m).abs(), Int::one());
        assert_eq!(m.row(0), &v[..]);
        assert!(complete_primitive_row(&[int(2), int(4)]).is_none());
    }

    #[test]
    fn lattice_membership() {
        let rows = IMat::from_rows(&[vec![1, 1, -1, -1]]);
        assert!(lattice_contains(&rows, &[rat(2, 1), rat(2, 1), rat(-2, 1), rat(-2, 1)]));
        assert!(!lattice_contains(&rows, &[rat(1, 1), rat(0, 1), rat(-1, 1), rat(0, 1)]));
        assert!(!lattice_contains(&rows, &[rat(1, 2), rat(1, 2), rat(-1, 2), rat(-1, 2)]));
    }
}
