//! Extended-precision real numbers.
//!
//! [`RealHP`] is an unevaluated sum `hi + lo` of two `f64` values with
//! `|lo| <= ulp(hi)/2` (double-double arithmetic), giving roughly 31
//! significant decimal digits with the exponent range of `f64`. Basic
//! arithmetic uses error-free transformations; `exp`, `ln`, `sin_pi` and
//! `cos_pi` are evaluated with argument reduction and Taylor series.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, ToPrimitive};

use crate::rational::Rational;

#[derive(Clone, Copy, Default, PartialEq)]
pub struct RealHP {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl RealHP {
    pub const ZERO: RealHP = RealHP { hi: 0.0, lo: 0.0 };
    pub const ONE: RealHP = RealHP { hi: 1.0, lo: 0.0 };
    pub const PI: RealHP = RealHP { hi: std::f64::consts::PI, lo: 1.2246467991473532e-16 };
    pub const LN_2: RealHP = RealHP { hi: std::f64::consts::LN_2, lo: 2.3190468138462996e-17 };

    pub const EPS: f64 = 4.93038065763132e-32; // 2^-104

    #[inline]
    fn renorm(hi: f64, lo: f64) -> RealHP {
        if !hi.is_finite() {
            return RealHP { hi, lo: 0.0 };
        }
        let (hi, lo) = quick_two_sum(hi, lo);
        RealHP { hi, lo }
    }

    pub fn from_f64(x: f64) -> RealHP {
        RealHP { hi: x, lo: 0.0 }
    }

    pub fn from_i64(n: i64) -> RealHP {
        let hi = n as f64;
        // The rounding error of the cast is itself an exactly representable i64.
        let lo = (n as i128 - hi as i128) as f64;
        RealHP::renorm(hi, lo)
    }

    pub fn from_bigint(n: &BigInt) -> RealHP {
        let bits = n.bits();
        if bits <= 1000 {
            let hi = n.to_f64().unwrap_or(0.0);
            let hi_big = BigInt::from_f64(hi).unwrap_or_default();
            let lo = (n - hi_big).to_f64().unwrap_or(0.0);
            RealHP::renorm(hi, lo)
        } else {
            let shift = bits - 200;
            let top: BigInt = n >> shift;
            RealHP::from_bigint(&top).ldexp(shift as i32)
        }
    }

    /// Correctly scaled conversion; huge numerators and denominators are
    /// handled by exponent bookkeeping rather than going through `f64`.
    pub fn from_rational(r: &Rational) -> RealHP {
        let (n, d) = (r.numer(), r.denom());
        let nb = n.bits() as i64;
        let db = d.bits() as i64;
        if nb <= 900 && db <= 900 {
            return RealHP::from_bigint(n) / RealHP::from_bigint(d);
        }
        let ns = (nb - 200).max(0);
        let ds = (db - 200).max(0);
        let top: BigInt = n >> ns as usize;
        let bottom: BigInt = d >> ds as usize;
        let ratio = RealHP::from_bigint(&top) / RealHP::from_bigint(&bottom);
        ratio.ldexp((ns - ds).clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn is_nan(self) -> bool {
        self.hi.is_nan() || self.lo.is_nan()
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    pub fn is_sign_negative(self) -> bool {
        self.hi < 0.0
    }

    pub fn abs(self) -> RealHP {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Multiplies by `2^k` exactly (barring overflow or underflow).
    pub fn ldexp(self, k: i32) -> RealHP {
        let mut out = self;
        let mut k = k;
        while k != 0 {
            let step = k.clamp(-1000, 1000);
            let f = 2f64.powi(step);
            out = RealHP { hi: out.hi * f, lo: out.lo * f };
            k -= step;
        }
        out
    }

    pub fn floor(self) -> RealHP {
        let hi = self.hi.floor();
        if hi == self.hi {
            let lo = self.lo.floor();
            RealHP::renorm(hi, lo)
        } else {
            RealHP { hi, lo: 0.0 }
        }
    }

    pub fn round(self) -> RealHP {
        (self + RealHP::from_f64(0.5)).floor()
    }

    pub fn recip(self) -> RealHP {
        RealHP::ONE / self
    }

    pub fn sqr(self) -> RealHP {
        self * self
    }

    pub fn sqrt(self) -> RealHP {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { RealHP::ZERO } else { RealHP::from_f64(f64::NAN) };
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = RealHP::from_f64(self.hi * x);
        let corr = (self - ax.sqr()).hi * (x * 0.5);
        ax + RealHP::from_f64(corr)
    }

    pub fn powi(self, n: i64) -> RealHP {
        if n == 0 {
            return RealHP::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = RealHP::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// `self^y` for positive `self`.
    pub fn powf(self, y: RealHP) -> RealHP {
        if self.hi <= 0.0 {
            return RealHP::from_f64(f64::NAN);
        }
        (y * self.ln()).exp()
    }

    pub fn exp(self) -> RealHP {
        if self.is_nan() {
            return self;
        }
        if self.hi > 709.8 {
            return RealHP::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return RealHP::ZERO;
        }
        if self.hi == 0.0 {
            return RealHP::ONE;
        }
        let k = (self.hi / RealHP::LN_2.hi).round();
        let r = (self - RealHP::LN_2 * k).ldexp(-10);
        // expm1(r) by Taylor; |r| < 3.4e-4 so a dozen terms are plenty.
        let mut term = r;
        let mut s = r;
        let mut i = 2.0;
        loop {
            term = term * r / i;
            s += term;
            if term.hi.abs() <= RealHP::EPS * s.hi.abs() * 1e-2 || i > 30.0 {
                break;
            }
            i += 1.0;
        }
        // (1+s)^(2^10) - 1, keeping the small part separate.
        for _ in 0..10 {
            s = s * 2.0 + s.sqr();
        }
        (s + RealHP::ONE).ldexp(k as i32)
    }

    pub fn ln(self) -> RealHP {
        if self.hi <= 0.0 || self.is_nan() {
            return if self.hi == 0.0 {
                RealHP::from_f64(f64::NEG_INFINITY)
            } else {
                RealHP::from_f64(f64::NAN)
            };
        }
        if self.hi.is_infinite() {
            return self;
        }
        if self.hi == 1.0 && self.lo == 0.0 {
            return RealHP::ZERO;
        }
        // Strip the binary exponent so exp(-x) below never leaves the normal range.
        let e = self.hi.log2().floor();
        let m = self.ldexp(-(e as i32));
        let mut x = RealHP::from_f64(m.hi.ln());
        for _ in 0..2 {
            x = x + m * (-x).exp() - RealHP::ONE;
        }
        x + RealHP::LN_2 * e
    }

    /// `sin(π x)`, exact zero at integers.
    pub fn sin_pi(self) -> RealHP {
        if !self.is_finite() {
            return RealHP::from_f64(f64::NAN);
        }
        let n = (self.hi / 2.0).round();
        let mut r = self - RealHP::from_f64(2.0 * n);
        // r in [-1, 1]; fold onto [-1/2, 1/2] using sin(π(1-r)) = sin(πr).
        if r.hi > 0.5 {
            r = RealHP::ONE - r;
        } else if r.hi < -0.5 {
            r = -RealHP::ONE - r;
        }
        let half = RealHP::from_f64(0.5);
        if r.abs().hi <= 0.25 {
            sin_taylor(RealHP::PI * r)
        } else {
            let c = cos_taylor(RealHP::PI * (half - r.abs()));
            if r.hi < 0.0 {
                -c
            } else {
                c
            }
        }
    }

    /// `cos(π x)`, exact zero at half-integers.
    pub fn cos_pi(self) -> RealHP {
        (self + RealHP::from_f64(0.5)).sin_pi()
    }

    /// Decimal scientific notation with `digits` significant digits.
    pub fn to_string_sig(self, digits: usize) -> String {
        if self.is_nan() {
            return "NaN".into();
        }
        if !self.is_finite() {
            return if self.hi > 0.0 { "inf".into() } else { "-inf".into() };
        }
        if self.hi == 0.0 {
            return "0".into();
        }
        let digits = digits.clamp(1, 32);
        let neg = self.hi < 0.0;
        let x = self.abs();
        let mut e = x.hi.log10().floor() as i32;
        let ten = RealHP::from_f64(10.0);
        let mut y = x * ten.powi(-(e as i64));
        while y.hi >= 10.0 {
            y /= ten;
            e += 1;
        }
        while y.hi < 1.0 {
            y *= ten;
            e -= 1;
        }
        let mut ds: Vec<u8> = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let mut d = y.hi.floor();
            if (y - RealHP::from_f64(d)).hi < 0.0 {
                d -= 1.0;
            }
            let d = d.clamp(0.0, 9.0);
            ds.push(d as u8);
            y = (y - RealHP::from_f64(d)) * ten;
        }
        // Round half up on the guard digit.
        let guard = ds.pop().unwrap_or(0);
        if guard >= 5 {
            let mut i = ds.len();
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.pop();
                    e += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push((b'0' + ds[0]) as char);
        if ds.len() > 1 {
            s.push('.');
            for d in &ds[1..] {
                s.push((b'0' + d) as char);
            }
        }
        s.push('e');
        s.push_str(&e.to_string());
        s
    }

    /// Parses the output of [`RealHP::to_string_sig`] (or any decimal literal)
    /// back into a value. Only used for report round-trips and tests.
    pub fn parse_decimal(text: &str) -> Option<RealHP> {
        let text = text.trim();
        match text {
            "NaN" => return Some(RealHP::from_f64(f64::NAN)),
            "inf" => return Some(RealHP::from_f64(f64::INFINITY)),
            "-inf" => return Some(RealHP::from_f64(f64::NEG_INFINITY)),
            _ => {}
        }
        let (mant, exp) = match text.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i64>().ok()?),
            None => (text, 0),
        };
        let neg = mant.starts_with('-');
        let mant = mant.trim_start_matches(['-', '+']);
        let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        let digits = format!("{int}{frac}");
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let big: BigInt = digits.parse().ok()?;
        let scale = exp - frac.len() as i64;
        let ten = BigInt::from(10u32);
        let r = if scale >= 0 {
            Rational::from(big * num_traits::pow(ten, scale as usize))
        } else {
            Rational::from_bigints(big, num_traits::pow(ten, (-scale) as usize))?
        };
        let v = RealHP::from_rational(&r);
        Some(if neg { -v } else { v })
    }

    /// Exact rational value of `hi + lo` (finite values only).
    pub fn to_rational(self) -> Option<Rational> {
        fn exact(x: f64) -> Option<Rational> {
            if !x.is_finite() {
                return None;
            }
            let r = num_rational::BigRational::from_float(x)?;
            Some(Rational::from(r))
        }
        Some(exact(self.hi)? + exact(self.lo)?)
    }
}

fn sin_taylor(y: RealHP) -> RealHP {
    let y2 = y.sqr();
    let mut term = y;
    let mut s = y;
    let mut k = 1.0;
    loop {
        term = -(term * y2) / ((k + 1.0) * (k + 2.0));
        s += term;
        k += 2.0;
        if term.hi.abs() <= RealHP::EPS * 1e-2 * s.hi.abs().max(1e-300) || k > 60.0 {
            break;
        }
    }
    s
}

fn cos_taylor(y: RealHP) -> RealHP {
    let y2 = y.sqr();
    let mut term = RealHP::ONE;
    let mut s = RealHP::ONE;
    let mut k = 0.0;
    loop {
        term = -(term * y2) / ((k + 1.0) * (k + 2.0));
        s += term;
        k += 2.0;
        if term.hi.abs() <= RealHP::EPS * 1e-2 || k > 60.0 {
            break;
        }
    }
    s
}

impl From<f64> for RealHP {
    fn from(x: f64) -> Self {
        RealHP::from_f64(x)
    }
}

impl From<&Rational> for RealHP {
    fn from(r: &Rational) -> Self {
        RealHP::from_rational(r)
    }
}

impl PartialOrd for RealHP {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl Neg for RealHP {
    type Output = RealHP;
    fn neg(self) -> RealHP {
        RealHP { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for RealHP {
    type Output = RealHP;
    fn add(self, b: RealHP) -> RealHP {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return RealHP { hi: s1, lo: 0.0 };
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        RealHP { hi, lo }
    }
}

impl Sub for RealHP {
    type Output = RealHP;
    fn sub(self, b: RealHP) -> RealHP {
        self + (-b)
    }
}

impl Mul for RealHP {
    type Output = RealHP;
    fn mul(self, b: RealHP) -> RealHP {
        let (p1, p2) = two_prod(self.hi, b.hi);
        if !p1.is_finite() {
            return RealHP { hi: p1, lo: 0.0 };
        }
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        RealHP::renorm(p1, p2)
    }
}

impl Div for RealHP {
    type Output = RealHP;
    fn div(self, b: RealHP) -> RealHP {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || b.hi.is_infinite() {
            return RealHP { hi: q1, lo: 0.0 };
        }
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        RealHP { hi: q1, lo: q2 } + RealHP::from_f64(q3)
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $m:ident $atr:ident $am:ident),*) => {$(
        impl $tr<f64> for RealHP {
            type Output = RealHP;
            fn $m(self, b: f64) -> RealHP { $tr::$m(self, RealHP::from_f64(b)) }
        }
        impl $tr<RealHP> for f64 {
            type Output = RealHP;
            fn $m(self, b: RealHP) -> RealHP { $tr::$m(RealHP::from_f64(self), b) }
        }
        impl $atr for RealHP {
            fn $am(&mut self, b: RealHP) { *self = $tr::$m(*self, b); }
        }
        impl $atr<f64> for RealHP {
            fn $am(&mut self, b: f64) { *self = $tr::$m(*self, RealHP::from_f64(b)); }
        }
    )*};
}

scalar_ops!(Add add AddAssign add_assign, Sub sub SubAssign sub_assign, Mul mul MulAssign mul_assign, Div div DivAssign div_assign);

impl Sum for RealHP {
    fn sum<I: Iterator<Item = RealHP>>(iter: I) -> Self {
        iter.fold(RealHP::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for RealHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        f.write_str(&self.to_string_sig(digits))
    }
}

/// Serialized as a decimal string with 20 significant digits.
impl serde::Serialize for RealHP {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.to_string_sig(20))
    }
}

impl<'de> serde::Deserialize<'de> for RealHP {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        RealHP::parse_decimal(&s).ok_or_else(|| serde::de::Error::custom(format!("invalid decimal {s:?}")))
    }
}

impl fmt::Debug for RealHP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealHP({})", self.to_string_sig(32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn close(a: RealHP, b: RealHP, tol: f64) -> bool {
        ((a - b).abs() / b.abs()).to_f64() <= tol
    }

    #[test]
    fn arithmetic_beyond_f64() {
        let third = RealHP::ONE / RealHP::from_f64(3.0);
        let back = third * 3.0;
        assert!((back - RealHP::ONE).abs().to_f64() < 1e-31);
        // 1 + 1e-20 survives.
        let x = RealHP::ONE + RealHP::from_f64(1e-20);
        assert_eq!((x - RealHP::ONE).to_f64(), 1e-20);
    }

    #[test]
    fn rational_conversion() {
        let r = RealHP::from_rational(&q(1, 3));
        assert!((r * 3.0 - RealHP::ONE).abs().to_f64() < 1e-31);
        let big: Rational = "123456789012345678901234567890123/7".parse().unwrap();
        let v = RealHP::from_rational(&big);
        assert!(close(v * 7.0, RealHP::from_bigint(big.numer()), 1e-30));
    }

    #[test]
    fn exp_ln_roundtrip() {
        for x in [-30.5, -1.0, -1e-8, 0.3, 1.0, 2.5, 100.0, 700.0] {
            let v = RealHP::from_f64(x);
            let back = v.exp().ln();
            let err = (back - v).abs().to_f64();
            assert!(err <= 1e-29 * x.abs().max(1.0), "{x}: {err:e}");
        }
        // e to 32 digits.
        let e = RealHP::ONE.exp();
        let reference = RealHP::parse_decimal("2.7182818284590452353602874713527").unwrap();
        assert!(close(e, reference, 1e-30));
        let ln2 = RealHP::from_f64(2.0).ln();
        assert!(close(ln2, RealHP::LN_2, 1e-31));
    }

    #[test]
    fn trig_of_pi_multiples() {
        assert_eq!(RealHP::from_f64(3.0).sin_pi().to_f64(), 0.0);
        assert_eq!(RealHP::from_f64(-2.5).cos_pi().to_f64(), 0.0);
        let s = RealHP::from_rational(&q(1, 6)).sin_pi();
        assert!(close(s, RealHP::from_f64(0.5), 1e-30));
        let c = RealHP::from_rational(&q(1, 3)).cos_pi();
        assert!(close(c, RealHP::from_f64(0.5), 1e-30));
        let s4 = RealHP::from_rational(&q(1, 4)).sin_pi();
        assert!(close(s4.sqr(), RealHP::from_f64(0.5), 1e-30));
        let neg = RealHP::from_rational(&q(-7, 6)).sin_pi();
        assert!(close(neg, RealHP::from_f64(0.5), 1e-30));
    }

    #[test]
    fn sqrt_and_powers() {
        let two = RealHP::from_f64(2.0);
        assert!(close(two.sqrt().sqr(), two, 1e-31));
        assert!(close(two.powi(-3), RealHP::from_f64(0.125), 1e-31));
        assert!(close(two.powf(RealHP::from_f64(0.5)), two.sqrt(), 1e-30));
    }

    #[test]
    fn decimal_text_roundtrip() {
        let x = RealHP::PI;
        let text = x.to_string_sig(30);
        assert_eq!(text, "3.14159265358979323846264338328e0");
        let back = RealHP::parse_decimal(&text).unwrap();
        assert!(close(back, x, 1e-29));
        assert_eq!(RealHP::from_f64(-0.00125).to_string_sig(3), "-1.25e-3");
        assert_eq!(RealHP::from_f64(9.9999).to_string_sig(2), "1.0e1");
        assert_eq!(RealHP::ZERO.to_string_sig(5), "0");
    }
}
