//! Sparse polynomials with exact rational coefficients.
//!
//! Monomials may carry negative exponents, but only for variables known to
//! be nonzero: dividing by such a monomial keeps an equation equivalent.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use super::interval::Interval;

pub type Var = usize;

/// A monomial as sorted `(variable, exponent)` pairs with nonzero exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(x: Var) -> Self {
        Monomial(vec![(x, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, x: Var) -> i32 {
        self.0.iter().find(|&&(y, _)| y == x).map_or(0, |&(_, e)| e)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(x, _)| x)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(x, e)| (x, e * k)).collect())
    }

    pub fn inverse(&self) -> Monomial {
        self.pow(-1)
    }

    /// The monomial with variable `x` removed.
    pub fn without(&self, x: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(y, _)| y != x).collect())
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, BigRational>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(rat(c))
    }

    pub fn var(x: Var) -> Self {
        Poly::term(Monomial::var(x), rat(1))
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), c1 * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::int(1);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.terms.keys().flat_map(|m| m.vars()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn contains_var(&self, x: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(x) != 0)
    }

    /// Replaces `x` by `value`. Negative powers of `x` need `value` to be a
    /// single term; returns `None` otherwise.
    pub fn substitute(&self, x: Var, value: &Poly) -> Option<Poly> {
        if !self.contains_var(x) {
            return Some(self.clone());
        }
        let inverse = if self.terms.keys().any(|m| m.exponent(x) < 0) {
            if value.len() != 1 {
                return None;
            }
            let (m, c) = value.terms.iter().next().unwrap();
            Some(Poly::term(m.inverse(), c.recip()))
        } else {
            None
        };
        let mut powers: BTreeMap<i32, Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(x);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let p = powers
                .entry(e)
                .or_insert_with(|| if e > 0 { value.pow(e as u32) } else { inverse.as_ref().unwrap().pow((-e) as u32) })
                .clone();
            out = out.add(&p.mul_term(&m.without(x), c));
        }
        Some(out)
    }

    /// Scales so the leading coefficient is 1 and divides out the largest
    /// monomial over `divisible` variables common to all terms, clearing
    /// negative exponents on the way. Equivalent as an equation `p = 0`
    /// provided every variable in `divisible` is nonzero.
    pub fn normalized(&self, divisible: impl Fn(Var) -> bool) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut shift: BTreeMap<Var, i32> = BTreeMap::new();
        let vars = self.vars();
        for &x in &vars {
            let min = self.terms.keys().map(|m| m.exponent(x)).min().unwrap();
            if min < 0 || (min > 0 && divisible(x)) {
                shift.insert(x, -min);
            }
        }
        let factor = Monomial(shift.into_iter().filter(|&(_, e)| e != 0).collect());
        let lead = self.terms.values().next_back().unwrap().clone();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.mul(&factor), c / &lead);
        }
        out
    }

    pub fn eval_f64(&self, value: impl Fn(Var) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for &(x, e) in &m.0 {
                    t *= value(x).powi(e);
                }
                t
            })
            .sum()
    }

    pub fn eval_interval(&self, value: impl Fn(Var) -> Interval) -> Interval {
        let mut acc = Interval::point(0.0);
        for (m, c) in &self.terms {
            let mut t = Interval::from_rational(c);
            for &(x, e) in &m.0 {
                let v = value(x);
                let p = if e >= 0 { v.powi(e as u32) } else { Interval::point(1.0).div(&v.powi((-e) as u32)) };
                t = t.mul(&p);
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn degree_in(&self, x: Var) -> i32 {
        self.terms.keys().map(|m| m.exponent(x)).max().unwrap_or(0)
    }

    /// Whether every coefficient is positive and every exponent even, so the
    /// polynomial is positive wherever its variables are real.
    pub fn is_positive_definite_sum(&self) -> bool {
        !self.is_zero()
            && self.terms.iter().all(|(m, c)| c.is_positive() && m.0.iter().all(|&(_, e)| e % 2 == 0))
            && self.terms.contains_key(&Monomial::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            let unit = a.is_one();
            if !unit || m.is_one() {
                write!(f, "{a}")?;
            }
            for (j, &(x, e)) in m.0.iter().enumerate() {
                if j > 0 || !unit {
                    write!(f, "*")?;
                }
                write!(f, "x{x}")?;
                if e != 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_and_inverse() {
        // x0 * x1 + x2 with x1 := -x2 / x0
        let p = Poly::var(0).mul(&Poly::var(1)).add(&Poly::var(2));
        let v = Poly::term(Monomial(vec![(0, -1), (2, 1)]), rat(-1));
        assert!(p.substitute(1, &v).unwrap().is_zero());
        // x1^-1 needs a single-term replacement
        let q = Poly::term(Monomial(vec![(1, -1)]), rat(1));
        assert!(q.substitute(1, &Poly::var(0).add(&Poly::int(1))).is_none());
        assert_eq!(q.substitute(1, &Poly::int(2)).unwrap().as_constant(), Some(BigRational::new(1.into(), 2.into())));
    }

    #[test]
    fn normalization_divides_nonzero_factors() {
        // x0^2 x1 - 2 x0 x1^2 with x0 nonzero: divide by x0 but not x1
        let p = Poly::term(Monomial(vec![(0, 2), (1, 1)]), rat(1))
            .add(&Poly::term(Monomial(vec![(0, 1), (1, 2)]), rat(-2)));
        let n = p.normalized(|x| x == 0);
        assert!(n.terms.keys().all(|m| m.exponent(1) >= 1));
        assert!(n.terms.keys().any(|m| m.exponent(0) == 0));
        let neg = Poly::term(Monomial(vec![(0, -1)]), rat(3)).add(&Poly::int(1));
        assert!(neg.normalized(|_| false).terms.keys().all(|m| m.exponent(0) >= 0));
    }
}
