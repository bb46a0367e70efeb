//! Closed real intervals with outward rounding.
//!
//! Every bound is computed in round-to-nearest and then moved one ulp
//! outward when the operation was inexact; exactness is detected with
//! error-free transformations (two-sum, fused multiply-add), so exact
//! arithmetic on small integers stays degenerate.

use num::{BigRational, ToPrimitive};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn add_err(a: f64, b: f64, s: f64) -> f64 {
    if !s.is_finite() {
        return 0.0;
    }
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if add_err(a, b, s) < 0.0 { s.next_down() } else { s }
}

fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if add_err(a, b, s) > 0.0 { s.next_up() } else { s }
}

/// `a * b` and the sign of the rounding error (true minus computed).
fn mul_err(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if p.is_nan() {
        // 0 * inf: the bound of a product with a zero endpoint is zero
        return (0.0, 0.0);
    }
    if !p.is_finite() || p == 0.0 && a != 0.0 && b != 0.0 {
        // overflow keeps the infinity; underflow to zero is inexact
        return (p, if p == 0.0 { a.signum() * b.signum() } else { 0.0 });
    }
    (p, a.mul_add(b, -p))
}

fn mul_down(a: f64, b: f64) -> f64 {
    let (p, e) = mul_err(a, b);
    if e < 0.0 { p.next_down() } else { p }
}

fn mul_up(a: f64, b: f64) -> f64 {
    let (p, e) = mul_err(a, b);
    if e > 0.0 { p.next_up() } else { p }
}

fn div_err(a: f64, b: f64) -> (f64, f64) {
    let q = a / b;
    if !q.is_finite() || b.is_infinite() {
        return (q, if b.is_infinite() && a != 0.0 { -a.signum() * b.signum() * q.signum() } else { 0.0 });
    }
    let r = (-q).mul_add(b, a);
    (q, r * b.signum())
}

fn div_down(a: f64, b: f64) -> f64 {
    let (q, e) = div_err(a, b);
    if q.is_nan() {
        return f64::NEG_INFINITY;
    }
    if e < 0.0 || (e != 0.0 && q == 0.0) { q.next_down() } else { q }
}

fn div_up(a: f64, b: f64) -> f64 {
    let (q, e) = div_err(a, b);
    if q.is_nan() {
        return f64::INFINITY;
    }
    if e > 0.0 || (e != 0.0 && q == 0.0) { q.next_up() } else { q }
}

fn sqrt_down(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let s = x.sqrt();
    if s.is_finite() && s.mul_add(s, -x) > 0.0 { s.next_down() } else { s }
}

fn sqrt_up(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let s = x.sqrt();
    if s.is_finite() && s.mul_add(s, -x) < 0.0 { s.next_up() } else { s }
}

impl Interval {
    pub const ENTIRE: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// The tightest enclosure of a rational number.
    pub fn from_rational(c: &BigRational) -> Self {
        let x = c.to_f64().unwrap_or(f64::NAN);
        if !x.is_finite() {
            return Interval::ENTIRE;
        }
        let back = BigRational::from_float(x);
        match back {
            Some(b) if &b == c => Interval::point(x),
            Some(b) if &b < c => Interval::new(x, x.next_up()),
            _ => Interval::new(x.next_down(), x),
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        let m = 0.5 * self.lo + 0.5 * self.hi;
        m.clamp(self.lo, self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Smallest absolute value in the interval.
    pub fn mig(&self) -> f64 {
        if self.contains_zero() { 0.0 } else { self.lo.abs().min(self.hi.abs()) }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: add_down(self.lo, o.lo), hi: add_up(self.hi, o.hi) }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        if (self.is_point() && self.lo == 0.0) || (o.is_point() && o.lo == 0.0) {
            return Interval::point(0.0);
        }
        let (a, b, c, d) = (self.lo, self.hi, o.lo, o.hi);
        let lo = mul_down(a, c).min(mul_down(a, d)).min(mul_down(b, c)).min(mul_down(b, d));
        let hi = mul_up(a, c).max(mul_up(a, d)).max(mul_up(b, c)).max(mul_up(b, d));
        Interval { lo, hi }
    }

    /// Quotient; the whole line when the divisor contains zero.
    pub fn div(&self, o: &Interval) -> Interval {
        if o.contains_zero() {
            return Interval::ENTIRE;
        }
        let (a, b, c, d) = (self.lo, self.hi, o.lo, o.hi);
        let lo = div_down(a, c).min(div_down(a, d)).min(div_down(b, c)).min(div_down(b, d));
        let hi = div_up(a, c).max(div_up(a, d)).max(div_up(b, c)).max(div_up(b, d));
        Interval { lo, hi }
    }

    /// Hull of `{x in within : x * den in num}`, or `None` if empty.
    /// Handles divisors containing zero by splitting the quotient.
    pub fn solve_product(num: &Interval, den: &Interval, within: &Interval) -> Option<Interval> {
        if !den.contains_zero() {
            return num.div(den).intersect(within);
        }
        if num.contains_zero() {
            return Some(*within);
        }
        if den.is_point() {
            return None;
        }
        // num excludes zero; x = num / den for den in [c, 0) or (0, d]
        let mut pieces: Vec<Interval> = Vec::new();
        if den.lo < 0.0 {
            let neg = Interval { lo: den.lo, hi: -0.0 };
            pieces.push(if num.lo > 0.0 {
                Interval { lo: f64::NEG_INFINITY, hi: div_up(num.lo, neg.lo) }
            } else {
                Interval { lo: div_down(num.hi, neg.lo), hi: f64::INFINITY }
            });
        }
        if den.hi > 0.0 {
            pieces.push(if num.lo > 0.0 {
                Interval { lo: div_down(num.lo, den.hi), hi: f64::INFINITY }
            } else {
                Interval { lo: f64::NEG_INFINITY, hi: div_up(num.hi, den.hi) }
            });
        }
        pieces.iter().filter_map(|p| p.intersect(within)).reduce(|a, b| a.hull(&b))
    }

    /// Square, never negative.
    pub fn sqr(&self) -> Interval {
        let lo = if self.contains_zero() { 0.0 } else { mul_down(self.mig(), self.mig()) };
        Interval { lo, hi: mul_up(self.mag(), self.mag()) }
    }

    /// Integer power with even powers kept nonnegative.
    pub fn powi(&self, k: u32) -> Interval {
        match k {
            0 => Interval::point(1.0),
            1 => *self,
            2 => self.sqr(),
            _ if k % 2 == 0 => self.sqr().powi(k / 2),
            _ => self.mul(&self.powi(k - 1)),
        }
    }

    /// Square root of the nonnegative part; `None` if entirely negative.
    pub fn sqrt(&self) -> Option<Interval> {
        if self.hi < 0.0 {
            return None;
        }
        Some(Interval { lo: sqrt_down(self.lo.max(0.0)), hi: sqrt_up(self.hi) })
    }

    /// Hull of `{x in within : x^2 in sq}`.
    pub fn solve_square(sq: &Interval, within: &Interval) -> Option<Interval> {
        let root = sq.sqrt()?;
        let pos = root.intersect(within);
        let neg = root.neg().intersect(within);
        match (pos, neg) {
            (Some(a), Some(b)) => Some(a.hull(&b)),
            (a, b) => a.or(b),
        }
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval { lo: self.lo, hi: m }, Interval { lo: m, hi: self.hi })
    }
}
