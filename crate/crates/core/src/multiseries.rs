//! Truncated multivariate power series with exact rational coefficients.
//! All operations truncate at a fixed total degree.

use crate::matrix::{Int, Rat};
use num::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSeries {
    pub vars: usize,
    pub order: u32,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiSeries {
    pub fn zero(vars: usize, order: u32) -> Self {
        MultiSeries { vars, order, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, order: u32, c: Rat) -> Self {
        let mut s = Self::zero(vars, order);
        if !c.is_zero() {
            s.terms.insert(vec![0; vars], c);
        }
        s
    }

    pub fn one(vars: usize, order: u32) -> Self {
        Self::constant(vars, order, Rat::one())
    }

    /// The coordinate series z_i.
    pub fn variable(vars: usize, order: u32, i: usize) -> Self {
        let mut s = Self::zero(vars, order);
        if order >= 1 {
            let mut m = vec![0; vars];
            m[i] = 1;
            s.terms.insert(m, Rat::one());
        }
        s
    }

    pub fn coefficient(&self, index: &[u32]) -> Rat {
        self.terms.get(index).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set_coefficient(&mut self, index: Vec<u32>, value: Rat) {
        let deg: u32 = index.iter().sum();
        if deg > self.order {
            return;
        }
        if value.is_zero() {
            self.terms.remove(&index);
        } else {
            self.terms.insert(index, value);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&vec![0; self.vars])
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let v = out.coefficient(m) + c;
            out.set_coefficient(m.clone(), v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let v = out.coefficient(m) - c;
            out.set_coefficient(m.clone(), v);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.vars, self.order);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.vars, self.order);
        for (ma, ca) in &self.terms {
            let da: u32 = ma.iter().sum();
            for (mb, cb) in &other.terms {
                let db: u32 = mb.iter().sum();
                if da + db > self.order {
                    continue;
                }
                let m: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                let add = ca * cb;
                let v = out.coefficient(&m) + add;
                out.set_coefficient(m, v);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.vars, self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Self {
        assert!(self.constant_term().is_zero(), "exp needs zero constant term");
        let mut acc = Self::one(self.vars, self.order);
        let mut pw = Self::one(self.vars, self.order);
        let mut fact = Int::one();
        for t in 1..=self.order {
            pw = pw.mul(self);
            if pw.is_zero() {
                break;
            }
            fact *= Int::from(t as i64);
            acc = acc.add(&pw.scale(&Rat::from(fact.clone()).recip()));
        }
        acc
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Self {
        assert!(self.constant_term().is_one(), "log needs constant term 1");
        let g = self.sub(&Self::one(self.vars, self.order));
        let mut acc = Self::zero(self.vars, self.order);
        let mut pw = Self::one(self.vars, self.order);
        for t in 1..=self.order {
            pw = pw.mul(&g);
            if pw.is_zero() {
                break;
            }
            let sign = if t % 2 == 1 { Rat::one() } else { -Rat::one() };
            let c = sign / Rat::from(Int::from(t as i64));
            acc = acc.add(&pw.scale(&c));
        }
        acc
    }

    /// Multiplicative inverse of a series with nonzero constant term.
    pub fn inverse(&self) -> Self {
        let c0 = self.constant_term();
        assert!(!c0.is_zero(), "inverse needs a unit constant term");
        let cinv = c0.recip();
        // self = c0 (1 + g): invert by the geometric series.
        let g = self.scale(&cinv).sub(&Self::one(self.vars, self.order));
        let mut acc = Self::one(self.vars, self.order);
        let mut pw = Self::one(self.vars, self.order);
        for t in 1..=self.order {
            pw = pw.mul(&g);
            if pw.is_zero() {
                break;
            }
            let signed = if t % 2 == 1 { pw.scale(&-Rat::one()) } else { pw.clone() };
            acc = acc.add(&signed);
        }
        acc.scale(&cinv)
    }

    /// Substitute: evaluate this series at the tuple of argument series
    /// (each must have zero constant term for the truncation to be exact).
    pub fn compose(&self, args: &[MultiSeries]) -> Self {
        assert_eq!(args.len(), self.vars);
        for a in args {
            assert!(a.constant_term().is_zero(), "composition needs zero constant terms");
        }
        let (tvars, torder) = if args.is_empty() {
            (self.vars, self.order)
        } else {
            (args[0].vars, args[0].order)
        };
        // Cache powers of each argument.
        let mut powers: Vec<Vec<MultiSeries>> = Vec::with_capacity(args.len());
        for a in args {
            let mut ps = vec![MultiSeries::one(tvars, torder)];
            for e in 1..=self.order {
                let next = ps[(e - 1) as usize].mul(a);
                ps.push(next);
            }
            powers.push(ps);
        }
        let mut out = MultiSeries::zero(tvars, torder);
        for (m, c) in &self.terms {
            let mut term = MultiSeries::constant(tvars, torder, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Truncate (or widen the cap of) the series to a new order.
    pub fn with_order(&self, order: u32) -> Self {
        let mut out = Self::zero(self.vars, order);
        for (m, c) in &self.terms {
            out.set_coefficient(m.clone(), c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::rat;

    fn x(order: u32) -> MultiSeries {
        MultiSeries::variable(1, order, 0)
    }

    #[test]
    fn exp_log_round_trip() {
        let s = x(8).add(&x(8).pow(2).scale(&rat(3, 2)));
        let e = s.exp();
        assert_eq!(e.log(), s);
        let l = MultiSeries::one(1, 8).add(&x(8)).log();
        assert_eq!(l.coefficient(&[1]), rat(1, 1));
        assert_eq!(l.coefficient(&[2]), rat(-1, 2));
        assert_eq!(l.coefficient(&[3]), rat(1, 3));
    }

    #[test]
    fn inverse_matches_geometric() {
        let s = MultiSeries::one(1, 6).sub(&x(6));
        let inv = s.inverse();
        for n in 0..=6u32 {
            assert_eq!(inv.coefficient(&[n]), rat(1, 1));
        }
        assert_eq!(s.mul(&inv), MultiSeries::one(1, 6));
    }

    #[test]
    fn compose_and_revert() {
        // f(z) = z + z^2; g(q) = q - q^2 + 2q^3 - 5q^4 ... the compositional
        // inverse computed by hand to order 4: f(g) = q.
        let f = x(4).add(&x(4).pow(2));
        let g = x(4)
            .sub(&x(4).pow(2))
            .add(&x(4).pow(3).scale(&rat(2, 1)))
            .sub(&x(4).pow(4).scale(&rat(5, 1)));
        let comp = f.compose(&[g]);
        assert_eq!(comp, x(4));
    }

    #[test]
    fn two_variable_products() {
        let z1 = MultiSeries::variable(2, 4, 0);
        let z2 = MultiSeries::variable(2, 4, 1);
        let p = z1.add(&z2).pow(3);
        assert_eq!(p.coefficient(&[2, 1]), rat(3, 1));
        assert_eq!(p.coefficient(&[1, 1]), rat(0, 1));
        // Truncation drops anything above total degree 4.
        let q = z1.add(&z2).pow(5);
        assert!(q.is_zero());
    }
}
