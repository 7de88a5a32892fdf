//! Scalars: exact elements of a quadratic field `ℚ(√m)` and tolerant floats.
//!
//! Every geometric routine in the crate is generic over [`Scalar`]. The exact
//! type [`Quad`] carries its radicand with the value, so `√2` and `√5` can be
//! created independently; mixing two different irrational radicands in one
//! operation is a programming error and panics.

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

pub type Rat = Ratio<i128>;

/// Field operations plus the handful of queries the geometry needs.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Hashable, totally ordered stand-in used for deduplication and sorting.
    type Key: Clone + Eq + Hash + Ord + fmt::Debug + Send + Sync;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_quad(q: &Quad) -> Self;
    /// Float input; exact scalars accept only values with a short binary
    /// expansion (integers, halves, quarters, ...).
    fn from_f64(x: f64) -> Option<Self>;
    fn key(&self) -> Self::Key;
    fn is_zero(&self) -> bool;
    /// -1, 0 or 1 (zero is decided with the tolerance in float mode).
    fn signum(&self) -> i32;
    fn sqrt(&self) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// `Some(n)` when the value is (within tolerance of) the integer `n`.
    fn as_integer(&self) -> Option<i128>;

    fn cmp_s(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum().cmp(&0)
    }
    fn abs_s(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn is_exact() -> bool;
    /// Exact value when the scalar is a quadratic-field element.
    fn to_quad(&self) -> Option<Quad>;
}

// ---------------------------------------------------------------------------
// Quadratic field elements

/// `a + b√m` with rational `a, b` and square-free `m ≥ 2`; `m = 0` iff `b = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quad {
    a: Rat,
    b: Rat,
    m: u32,
}

impl Quad {
    pub fn new(a: Rat, b: Rat, m: u32) -> Quad {
        if b.is_zero() || m == 0 {
            return Quad {
                a,
                b: Rat::zero(),
                m: 0,
            };
        }
        let (s, t) = square_free_split(m as i128);
        if t == 1 {
            return Quad {
                a: a + b * Rat::from_integer(s),
                b: Rat::zero(),
                m: 0,
            };
        }
        Quad {
            a,
            b: b * Rat::from_integer(s),
            m: t as u32,
        }
    }

    pub fn rational(r: Rat) -> Quad {
        Quad {
            a: r,
            b: Rat::zero(),
            m: 0,
        }
    }

    pub fn int(n: i64) -> Quad {
        Quad::rational(Rat::from_integer(n as i128))
    }

    pub fn frac(num: i64, den: i64) -> Quad {
        Quad::rational(Rat::new(num as i128, den as i128))
    }

    /// `√n` for a non-negative integer `n`.
    pub fn sqrt_int(n: u32) -> Quad {
        Quad::new(Rat::zero(), Rat::one(), n)
    }

    /// The golden ratio `(1+√5)/2`.
    pub fn phi() -> Quad {
        Quad::new(Rat::new(1, 2), Rat::new(1, 2), 5)
    }

    pub fn a(&self) -> Rat {
        self.a
    }
    pub fn b(&self) -> Rat {
        self.b
    }
    pub fn radicand(&self) -> u32 {
        self.m
    }
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Quad {
        Quad {
            a: self.a,
            b: -self.b,
            m: self.m,
        }
    }

    /// Field norm `a² − m b²`.
    pub fn norm(&self) -> Rat {
        self.a * self.a - self.b * self.b * Rat::from_integer(self.m as i128)
    }

    pub fn pow(&self, e: u32) -> Quad {
        let mut out = Quad::int(1);
        for _ in 0..e {
            out = out * *self;
        }
        out
    }

    pub fn recip(&self) -> Quad {
        if self.b.is_zero() {
            assert!(!self.a.is_zero(), "division by zero");
            return Quad::rational(self.a.recip());
        }
        let n = self.norm();
        Quad {
            a: self.a / n,
            b: -self.b / n,
            m: self.m,
        }
    }

    fn common_m(x: &Quad, y: &Quad) -> u32 {
        match (x.m, y.m) {
            (0, m) | (m, 0) => m,
            (m, n) if m == n => m,
            (m, n) => panic!("mixed quadratic radicals √{m} and √{n} in one operation"),
        }
    }

    fn sign(&self) -> i32 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with m b², i.e. (pb)² with m (ra)²
        // for a = p/pa, b = r/rb
        let (p, pa) = (*self.a.numer(), *self.a.denom());
        let (r, rb) = (*self.b.numer(), *self.b.denom());
        let m = self.m as i128;
        let small = p.checked_mul(rb).and_then(|x| x.checked_mul(x)).zip(
            r.checked_mul(pa)
                .and_then(|y| y.checked_mul(y))
                .and_then(|y| y.checked_mul(m)),
        );
        let ord = match small {
            Some((l, rr)) => l.cmp(&rr),
            None => {
                let l = num_bigint::BigInt::from(p) * num_bigint::BigInt::from(rb);
                let rr = num_bigint::BigInt::from(r) * num_bigint::BigInt::from(pa);
                (&l * &l).cmp(&(&rr * &rr * num_bigint::BigInt::from(m)))
            }
        };
        match ord {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }
}

fn rat_sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Splits `n > 0` as `s² · t` with `t` square-free.
pub fn square_free_split(n: i128) -> (i128, i128) {
    assert!(n > 0);
    let mut s = 1i128;
    let mut t = 1i128;
    let mut rest = n;
    let mut p = 2i128;
    while p * p <= rest && p < 2_000_000 {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            t *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let r = rest.sqrt();
        if r * r == rest {
            s *= r;
        } else {
            t *= rest;
        }
    }
    (s, t)
}

fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (*r.numer(), *r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if sn * sn == n && sd * sd == d {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quad {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).sign().cmp(&0)
    }
}

impl Add for Quad {
    type Output = Quad;
    fn add(self, o: Quad) -> Quad {
        let m = Quad::common_m(&self, &o);
        let b = self.b + o.b;
        if b.is_zero() {
            Quad::rational(self.a + o.a)
        } else {
            Quad {
                a: self.a + o.a,
                b,
                m,
            }
        }
    }
}

impl Sub for Quad {
    type Output = Quad;
    fn sub(self, o: Quad) -> Quad {
        self + (-o)
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad {
            a: -self.a,
            b: -self.b,
            m: self.m,
        }
    }
}

impl Mul for Quad {
    type Output = Quad;
    fn mul(self, o: Quad) -> Quad {
        if self.b.is_zero() && o.b.is_zero() {
            return Quad::rational(self.a * o.a);
        }
        let m = Quad::common_m(&self, &o);
        let mm = Rat::from_integer(m as i128);
        let a = self.a * o.a + self.b * o.b * mm;
        let b = self.a * o.b + self.b * o.a;
        if b.is_zero() {
            Quad::rational(a)
        } else {
            Quad { a, b, m }
        }
    }
}

impl Div for Quad {
    type Output = Quad;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Quad) -> Quad {
        if o.b.is_zero() {
            assert!(!o.a.is_zero(), "division by zero");
            return Quad {
                a: self.a / o.a,
                b: self.b / o.a,
                m: self.m,
            };
        }
        self * o.recip()
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            write!(f, "{}√{}", self.b, self.m)
        } else if self.b.is_negative() {
            write!(f, "{}-{}√{}", self.a, -self.b, self.m)
        } else {
            write!(f, "{}+{}√{}", self.a, self.b, self.m)
        }
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().ok()?;
            let d: i128 = d.trim().parse().ok()?;
            (d != 0).then(|| Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Parses the display form: `3`, `-1/2`, `√2`, `1/2√2`, `1/2-3/2√5`;
/// `sqrt` may replace `√`.
impl std::str::FromStr for Quad {
    type Err = crate::error::Error;

    fn from_str(input: &str) -> Result<Quad, Self::Err> {
        let err = || crate::error::Error::Parse(format!("not an element of ℚ(√m): `{input}`"));
        let s: String = input
            .replace("sqrt", "√")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let Some((left, m)) = s.split_once('√') else {
            return parse_rat(&s).map(Quad::rational).ok_or_else(err);
        };
        let m: u32 = m
            .trim_matches(|c| c == '(' || c == ')')
            .parse()
            .map_err(|_| err())?;
        // split `a±b` at the last sign that is not leading
        let cut = left
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (a, b) = match cut {
            Some(i) => (&left[..i], &left[i..]),
            None => ("", left),
        };
        let a = if a.is_empty() {
            Rat::zero()
        } else {
            parse_rat(a).ok_or_else(err)?
        };
        let b = match b.trim_start_matches('+') {
            "" => Rat::one(),
            "-" => -Rat::one(),
            t => parse_rat(t).ok_or_else(err)?,
        };
        Ok(Quad::new(a, b, m))
    }
}

impl Scalar for Quad {
    type Key = Quad;

    fn zero() -> Self {
        Quad::int(0)
    }
    fn one() -> Self {
        Quad::int(1)
    }
    fn from_i64(n: i64) -> Self {
        Quad::int(n)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Quad::frac(num, den)
    }
    fn from_quad(q: &Quad) -> Self {
        *q
    }
    fn from_f64(x: f64) -> Option<Self> {
        let scaled = x * (1u64 << 20) as f64;
        (scaled.is_finite() && scaled.fract() == 0.0 && scaled.abs() < 1e30)
            .then(|| Quad::rational(Rat::new(scaled as i128, 1 << 20)))
    }
    fn key(&self) -> Quad {
        *self
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn signum(&self) -> i32 {
        self.sign()
    }

    /// Square root inside the same field, or `√m'` times a rational for a
    /// rational radicand. Returns `None` when the root leaves every single
    /// quadratic field (e.g. `√(2+√3)` is fine, `√(1+√2)` is not).
    fn sqrt(&self) -> Option<Quad> {
        match self.sign() {
            -1 => return None,
            0 => return Some(Quad::int(0)),
            _ => {}
        }
        if self.b.is_zero() {
            if let Some(r) = rat_sqrt(&self.a) {
                return Some(Quad::rational(r));
            }
            // sqrt(p/q) = sqrt(p q) / q
            let (p, q) = (*self.a.numer(), *self.a.denom());
            let (s, t) = square_free_split(p * q);
            if t > u32::MAX as i128 {
                return None;
            }
            return Some(Quad {
                a: Rat::zero(),
                b: Rat::new(s, q),
                m: t as u32,
            });
        }
        // (c + e√m)² = a + b√m  ⇒  c² = (a ± √N)/2 with N the field norm.
        let n = rat_sqrt(&self.norm())?;
        let two = Rat::from_integer(2);
        for cand in [(self.a + n) / two, (self.a - n) / two] {
            if let Some(c) = rat_sqrt(&cand) {
                if c.is_zero() {
                    continue;
                }
                let e = self.b / (two * c);
                let root = Quad {
                    a: c,
                    b: e,
                    m: self.m,
                };
                let root = if root.sign() < 0 { -root } else { root };
                if root * root == *self {
                    return Some(root);
                }
            }
        }
        // pure multiple of √m: b√m = (e√m)² / ... only when a = 0 handled above by norm
        None
    }

    fn to_f64(&self) -> f64 {
        let a = self.a.numer().to_f64().unwrap() / self.a.denom().to_f64().unwrap();
        if self.b.is_zero() {
            return a;
        }
        let b = self.b.numer().to_f64().unwrap() / self.b.denom().to_f64().unwrap();
        a + b * (self.m as f64).sqrt()
    }

    fn as_integer(&self) -> Option<i128> {
        if self.b.is_zero() && self.a.is_integer() {
            Some(*self.a.numer())
        } else {
            None
        }
    }

    fn is_exact() -> bool {
        true
    }
    fn to_quad(&self) -> Option<Quad> {
        Some(*self)
    }
}

// ---------------------------------------------------------------------------
// Floats with tolerance

static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Absolute tolerance used by every [`Approx`] comparison.
pub fn tolerance() -> f64 {
    f64::from_bits(TOLERANCE_BITS.load(AtomicOrdering::Relaxed))
}

pub fn set_tolerance(eps: f64) {
    assert!(eps > 0.0 && eps.is_finite(), "tolerance must be positive");
    TOLERANCE_BITS.store(eps.to_bits(), AtomicOrdering::Relaxed);
}

/// Binary float whose equality means `|x − y| ≤ tolerance()`.
#[derive(Clone, Copy, Default)]
pub struct Approx(pub f64);

impl PartialEq for Approx {
    fn eq(&self, other: &Self) -> bool {
        (self.0 - other.0).abs() <= tolerance()
    }
}

impl fmt::Debug for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! approx_op {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for Approx {
            type Output = Approx;
            fn $f(self, o: Approx) -> Approx {
                Approx(self.0 $op o.0)
            }
        }
    };
}
approx_op!(Add, add, +);
approx_op!(Sub, sub, -);
approx_op!(Mul, mul, *);
approx_op!(Div, div, /);

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx(-self.0)
    }
}

impl Scalar for Approx {
    /// Values quantized to the tolerance grid.
    type Key = i64;

    fn zero() -> Self {
        Approx(0.0)
    }
    fn one() -> Self {
        Approx(1.0)
    }
    fn from_i64(n: i64) -> Self {
        Approx(n as f64)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Approx(num as f64 / den as f64)
    }
    fn from_quad(q: &Quad) -> Self {
        Approx(q.to_f64())
    }
    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(Approx(x))
    }
    fn key(&self) -> i64 {
        (self.0 / (tolerance() * 10.0)).round() as i64
    }
    fn is_zero(&self) -> bool {
        self.0.abs() <= tolerance()
    }
    fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.0 > 0.0 {
            1
        } else {
            -1
        }
    }
    fn sqrt(&self) -> Option<Self> {
        if self.0 < -tolerance() {
            None
        } else {
            Some(Approx(self.0.max(0.0).sqrt()))
        }
    }
    fn to_f64(&self) -> f64 {
        self.0
    }
    fn as_integer(&self) -> Option<i128> {
        let r = self.0.round();
        if (self.0 - r).abs() <= tolerance() {
            Some(r as i128)
        } else {
            None
        }
    }
    fn is_exact() -> bool {
        false
    }
    fn to_quad(&self) -> Option<Quad> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_identity() {
        let p = Quad::phi();
        assert_eq!(p * p, p + Quad::int(1));
        assert_eq!(p.recip(), p - Quad::int(1));
    }

    #[test]
    fn radicand_normalization() {
        assert_eq!(Quad::sqrt_int(8), Quad::sqrt_int(2) * Quad::int(2));
        assert_eq!(Quad::sqrt_int(9), Quad::int(3));
        assert!(Quad::sqrt_int(2) * Quad::sqrt_int(2) == Quad::int(2));
    }

    #[test]
    fn ordering_is_numeric() {
        let s2 = Quad::sqrt_int(2);
        assert!(s2 > Quad::frac(141, 100));
        assert!(s2 < Quad::frac(142, 100));
        assert!(Quad::int(1) - s2 < Quad::int(0));
    }

    #[test]
    fn square_roots() {
        assert_eq!(Quad::frac(9, 4).sqrt(), Some(Quad::frac(3, 2)));
        assert_eq!(Quad::int(12).sqrt(), Some(Quad::sqrt_int(3) * Quad::int(2)));
        let x = Quad::int(3) + Quad::sqrt_int(2) * Quad::int(2); // (1+√2)²
        assert_eq!(x.sqrt(), Some(Quad::int(1) + Quad::sqrt_int(2)));
        assert_eq!(Quad::int(-1).sqrt(), None);
        let y = Quad::int(1) + Quad::sqrt_int(2);
        assert_eq!(y.sqrt(), None);
    }

    #[test]
    #[should_panic(expected = "mixed quadratic radicals")]
    fn mixing_radicals_panics() {
        let _ = Quad::sqrt_int(2) + Quad::sqrt_int(3);
    }

    #[test]
    fn parse_round_trip() {
        for q in [
            Quad::int(-3),
            Quad::frac(1, 2),
            Quad::phi(),
            Quad::frac(1, 2) - Quad::sqrt_int(5) * Quad::frac(3, 2),
        ] {
            assert_eq!(q.to_string().parse::<Quad>().unwrap(), q);
        }
        assert_eq!("sqrt(2)".parse::<Quad>().unwrap(), Quad::sqrt_int(2));
        assert_eq!("-√3".parse::<Quad>().unwrap(), -Quad::sqrt_int(3));
        assert!("1/0".parse::<Quad>().is_err());
        assert!("x".parse::<Quad>().is_err());
    }

    #[test]
    fn approx_tolerance() {
        assert_eq!(Approx(1.0), Approx(1.0 + 1e-12));
        assert_ne!(Approx(1.0), Approx(1.0 + 1e-6));
        assert_eq!(Approx(2.0 + 1e-12).as_integer(), Some(2));
    }
}
