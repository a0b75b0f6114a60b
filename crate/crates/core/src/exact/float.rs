//! Arbitrary-precision binary floating point on top of `BigInt`.
//!
//! A value is `mant * 2^exp` with the mantissa stored in canonical form
//! (odd, or zero with exponent zero). Every operation takes an explicit
//! precision in bits and rounds its result once, to nearest with ties to
//! even, so the relative error of a single operation is at most `2^(1-prec)`.
//! There are no hidden extra roundings: converting an exact rational with
//! [`BigFloat::from_ratio`] is a single rounding, which is what the root
//! finder relies on when it evaluates polynomials exactly and rounds the
//! exact value.
//!
//! The exponent is unbounded (no overflow, no subnormals), and all
//! operations are deterministic, so equal inputs give byte-equal outputs on
//! every platform.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{CRational, Rational};

/// Decimal digits carried by `prec` bits of mantissa.
pub fn decimal_digits(prec: u32) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

/// Arbitrary-precision binary float, canonical form (odd mantissa or zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        Self { mant: BigInt::zero(), exp: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::make(BigInt::from(n), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Canonicalize without precision loss.
    fn make(mut mant: BigInt, mut exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mant >>= tz;
            exp += tz as i64;
        }
        Self { mant, exp }
    }

    /// Canonicalize and round to `prec` bits, nearest, ties to even.
    fn make_round(mant: BigInt, exp: i64, prec: u32) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let bits = mant.magnitude().bits();
        if bits <= prec as u64 {
            return Self::make(mant, exp);
        }
        let drop = bits - prec as u64;
        let sign = mant.sign();
        let mag = mant.into_parts().1;
        let mut q = &mag >> drop;
        let rem = mag - (&q << drop);
        let half = BigUint::one() << (drop - 1);
        match rem.cmp(&half) {
            Ordering::Greater => q += 1u32,
            Ordering::Equal => {
                if q.is_odd() {
                    q += 1u32;
                }
            }
            Ordering::Less => {}
        }
        let mut exp = exp + drop as i64;
        if q.bits() > prec as u64 {
            // all-ones mantissa carried over: value is exactly a power of two
            q >>= 1;
            exp += 1;
        }
        Self::make(BigInt::from_biguint(sign, q), exp)
    }

    /// Round an existing value to `prec` bits.
    pub fn round_to(&self, prec: u32) -> Self {
        Self::make_round(self.mant.clone(), self.exp, prec)
    }

    /// Exponent of the most significant bit: the value lies in
    /// `[2^(e-1), 2^e)`. `None` for zero.
    pub fn msb_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.magnitude().bits() as i64)
        }
    }

    pub fn neg(&self) -> Self {
        Self { mant: -self.mant.clone(), exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Self { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        if self.is_zero() {
            return other.round_to(prec);
        }
        if other.is_zero() {
            return self.round_to(prec);
        }
        let ta = self.msb_exp().unwrap();
        let tb = other.msb_exp().unwrap();
        // A term more than prec+4 binary orders below the other cannot move
        // the rounded result by more than an ulp; skip the alignment.
        if ta - tb > prec as i64 + 4 {
            return self.round_to(prec);
        }
        if tb - ta > prec as i64 + 4 {
            return other.round_to(prec);
        }
        let e = self.exp.min(other.exp);
        let ma = &self.mant << (self.exp - e) as u64;
        let mb = &other.mant << (other.exp - e) as u64;
        Self::make_round(ma + mb, e, prec)
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        Self::make_round(&self.mant * &other.mant, self.exp + other.exp, prec)
    }

    /// Quotient rounded to `prec` bits; panics on a zero divisor.
    pub fn div(&self, other: &Self, prec: u32) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let na = self.mant.magnitude();
        let nb = other.mant.magnitude();
        let s = (prec as u64 + 4 + nb.bits()).saturating_sub(na.bits());
        let (mut q, r) = (na << s).div_rem(nb);
        if &r << 1 >= *nb {
            q += 1u32;
        }
        let sign = if self.mant.sign() == other.mant.sign() { Sign::Plus } else { Sign::Minus };
        Self::make_round(
            BigInt::from_biguint(sign, q),
            self.exp - other.exp - s as i64,
            prec,
        )
    }

    /// Square root of a non-negative value, rounded to `prec` bits.
    pub fn sqrt(&self, prec: u32) -> Self {
        assert!(!self.is_negative(), "BigFloat sqrt of negative value");
        if self.is_zero() {
            return Self::zero();
        }
        let mag = self.mant.magnitude();
        let bits = mag.bits();
        let mut widen = (2 * (prec as u64 + 2)).saturating_sub(bits);
        if (self.exp - widen as i64) % 2 != 0 {
            widen += 1;
        }
        let wide = mag << widen;
        let root = wide.sqrt();
        Self::make_round(BigInt::from_biguint(Sign::Plus, root), (self.exp - widen as i64) / 2, prec)
    }

    /// Single-rounding conversion of an exact integer ratio; the denominator
    /// need not be reduced against the numerator but must be nonzero.
    pub fn from_ratio(numer: &BigInt, denom: &BigInt, prec: u32) -> Self {
        assert!(!denom.is_zero(), "BigFloat from_ratio with zero denominator");
        if numer.is_zero() {
            return Self::zero();
        }
        let nn = numer.magnitude();
        let nd = denom.magnitude();
        let s = (prec as u64 + 4 + nd.bits()).saturating_sub(nn.bits());
        let (mut q, r) = (nn << s).div_rem(nd);
        if &r << 1 >= *nd {
            q += 1u32;
        }
        let sign = if numer.sign() == denom.sign() { Sign::Plus } else { Sign::Minus };
        Self::make_round(BigInt::from_biguint(sign, q), -(s as i64), prec)
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Self::from_ratio(r.numer(), r.denom(), prec)
    }

    /// Mantissa and exponent of the canonical form: value = mant · 2^exp.
    pub fn to_parts(&self) -> (&BigInt, i64) {
        (&self.mant, self.exp)
    }

    /// Exact rational value (every binary float is a dyadic rational).
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Exact conversion from a finite `f64`.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "BigFloat::from_f64 needs a finite input");
        let r = Rational::from_float(x).unwrap_or_else(Rational::zero);
        if r.is_zero() {
            return Self::zero();
        }
        // exact: f64 values are dyadic with <= 53 mantissa bits
        Self::from_ratio(r.numer(), r.denom(), 64)
    }

    /// Nearest `f64` (round to a 53-bit mantissa, then scale exactly);
    /// very large or tiny exponents saturate to inf or zero.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let rounded = self.round_to(53);
        let mag = rounded.mant.magnitude().to_f64().unwrap();
        let v = if rounded.exp > 2000 {
            f64::INFINITY
        } else if rounded.exp < -2000 {
            0.0
        } else {
            mag * (rounded.exp as f64).exp2()
        };
        if self.mant.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Exact total-order comparison.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        match (self.mant.sign(), other.mant.sign()) {
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            (Sign::Minus, Sign::NoSign) | (Sign::Minus, Sign::Plus) | (Sign::NoSign, Sign::Plus) => {
                return Ordering::Less
            }
            (Sign::Plus, Sign::NoSign) | (Sign::Plus, Sign::Minus) | (Sign::NoSign, Sign::Minus) => {
                return Ordering::Greater
            }
            _ => {}
        }
        let negative = self.mant.is_negative();
        let ta = self.msb_exp().unwrap();
        let tb = other.msb_exp().unwrap();
        let mag = match ta.cmp(&tb) {
            Ordering::Equal => {
                let e = self.exp.min(other.exp);
                let ma = self.mant.magnitude() << (self.exp - e) as u64;
                let mb = other.mant.magnitude() << (other.exp - e) as u64;
                ma.cmp(&mb)
            }
            ord => ord,
        };
        if negative {
            mag.reverse()
        } else {
            mag
        }
    }

    /// Decimal string with exactly `sig` significant digits.
    ///
    /// Plain positional notation for moderate magnitudes, scientific
    /// (`d.dd...e±k`) otherwise. Rounding is exact, to nearest.
    pub fn decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.mant.is_negative();
        let num = self.mant.magnitude().clone();
        let (num, den) = if self.exp >= 0 {
            (num << self.exp as u64, BigUint::one())
        } else {
            (num, BigUint::one() << (-self.exp) as u64)
        };
        // decimal exponent: 10^e10 <= num/den < 10^(e10+1)
        let top = num.bits() as i64 - den.bits() as i64;
        let mut e10 = ((top as f64) * std::f64::consts::LOG10_2).floor() as i64;
        let ten = BigUint::from(10u32);
        let ge_pow10 = |k: i64| -> bool {
            if k >= 0 {
                num >= &den * ten.pow(k as u32)
            } else {
                &num * ten.pow((-k) as u32) >= den
            }
        };
        while !ge_pow10(e10) {
            e10 -= 1;
        }
        while ge_pow10(e10 + 1) {
            e10 += 1;
        }
        // digit block: round(num/den * 10^(sig-1-e10))
        let t = sig as i64 - 1 - e10;
        let (n2, d2) = if t >= 0 {
            (&num * ten.pow(t as u32), den.clone())
        } else {
            (num.clone(), &den * ten.pow((-t) as u32))
        };
        let (mut q, r) = n2.div_rem(&d2);
        if &r << 1 >= d2 {
            q += 1u32;
        }
        let mut e10 = e10;
        if q >= ten.pow(sig as u32) {
            q = &q / &ten;
            e10 += 1;
        }
        let digits = q.to_string();
        debug_assert_eq!(digits.len(), sig);
        let sign = if neg { "-" } else { "" };
        if e10 >= 0 && (e10 as usize) < sig + 6 {
            let point = e10 as usize + 1;
            if point >= sig {
                let zeros = "0".repeat(point - sig);
                format!("{sign}{digits}{zeros}")
            } else {
                format!("{sign}{}.{}", &digits[..point], &digits[point..])
            }
        } else if e10 < 0 && e10 >= -4 {
            let zeros = "0".repeat((-e10 - 1) as usize);
            format!("{sign}0.{zeros}{digits}")
        } else {
            let head = &digits[..1];
            let tail = &digits[1..];
            if tail.is_empty() {
                format!("{sign}{head}e{e10}")
            } else {
                format!("{sign}{head}.{tail}e{e10}")
            }
        }
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

/// Complex number with [`BigFloat`] components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CBigFloat {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl CBigFloat {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self { re: BigFloat::zero(), im: BigFloat::zero() }
    }

    pub fn from_f64s(re: f64, im: f64) -> Self {
        Self { re: BigFloat::from_f64(re), im: BigFloat::from_f64(im) }
    }

    pub fn from_crational(z: &CRational, prec: u32) -> Self {
        Self {
            re: BigFloat::from_rational(&z.re, prec),
            im: BigFloat::from_rational(&z.im, prec),
        }
    }

    /// Exact dyadic components.
    pub fn to_crational(&self) -> CRational {
        CRational::new(self.re.to_rational(), self.im.to_rational())
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> Self {
        Self { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, other: &Self, prec: u32) -> Self {
        Self { re: self.re.add(&other.re, prec), im: self.im.add(&other.im, prec) }
    }

    pub fn sub(&self, other: &Self, prec: u32) -> Self {
        Self { re: self.re.sub(&other.re, prec), im: self.im.sub(&other.im, prec) }
    }

    pub fn mul(&self, other: &Self, prec: u32) -> Self {
        let g = prec + 8;
        let re = self.re.mul(&other.re, g).sub(&self.im.mul(&other.im, g), prec);
        let im = self.re.mul(&other.im, g).add(&self.im.mul(&other.re, g), prec);
        Self { re, im }
    }

    pub fn div(&self, other: &Self, prec: u32) -> Self {
        let g = prec + 8;
        let d = other.norm_sqr(g);
        assert!(!d.is_zero(), "CBigFloat division by zero");
        let n = self.mul(&other.conj(), g);
        Self { re: n.re.div(&d, prec), im: n.im.div(&d, prec) }
    }

    pub fn norm_sqr(&self, prec: u32) -> BigFloat {
        let g = prec + 8;
        self.re.mul(&self.re, g).add(&self.im.mul(&self.im, g), prec)
    }

    pub fn abs(&self, prec: u32) -> BigFloat {
        self.norm_sqr(prec + 8).sqrt(prec)
    }

    /// Writes the exact value as `(u_re + i·u_im) / 2^shift` with Gaussian
    /// integer numerator and the smallest shift that clears both exponents.
    pub fn to_dyadic_ints(&self) -> (BigInt, BigInt, u64) {
        let (mr, er) = self.re.to_parts();
        let (mi, ei) = self.im.to_parts();
        let shift = (-er.min(ei).min(0)) as u64;
        let ur = mr << (er + shift as i64) as u64;
        let ui = mi << (ei + shift as i64) as u64;
        (ur, ui, shift)
    }

    /// Exponent of the dominant component's most significant bit.
    pub fn msb_exp(&self) -> Option<i64> {
        match (self.re.msb_exp(), self.im.msb_exp()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        }
    }
}
