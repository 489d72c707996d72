//! Scalar coefficient fields for the polynomial kernel.
//!
//! Every operation in the crate runs over one of three coefficient types:
//! arbitrary-precision rationals (`Rat`, the exact path), `f64` (the float
//! path used for root finding and path tracking), and [`Ext`], elements of a
//! single real quadratic extension ℚ(√r) used where norm-form solutions pick
//! up one square root per solution family.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Build a rational from an integer pair.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Field of coefficients. Implementors must be actual fields; `div_ref`
/// panics on a zero divisor (callers guard).
pub trait Scalar: Clone + PartialEq + fmt::Debug + Zero + One + 'static {
    /// Exact scalars decide zero-ness and divisibility exactly; float
    /// scalars go through thresholds chosen by the caller.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Pivot preference for Gaussian elimination. Exact fields only need
    /// nonzero-ness; floats prefer large magnitude.
    fn pivot_size(&self) -> f64;
    fn to_f64(&self) -> f64;
    /// Quadratic-extension bookkeeping: the square-reduced radicand in use,
    /// if any. Plain fields never use one.
    fn radical_key(&self) -> Option<num_bigint::BigInt> {
        None
    }
    /// Whether arithmetic between the two values stays inside one field.
    fn compatible_with(&self, _other: &Self) -> bool {
        true
    }
}

/// Scalars embedded in ℝ: sign queries, absolute value, square roots.
pub trait RealScalar: Scalar + PartialOrd {
    /// -1, 0 or 1.
    fn signum_i(&self) -> i32;
    fn abs_ref(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;
    /// Square root of a nonnegative element, if representable in this field.
    /// Returns `None` for negative inputs and for roots that would leave the
    /// field (e.g. √2 over the rationals).
    fn sqrt_psd(&self) -> Option<Self>;
    /// Exact rational value, when this scalar is one.
    fn to_rat(&self) -> Option<Rat> {
        None
    }
    /// Inverse of `to_f64` for float-backed scalars; exact fields never take
    /// this path (the EXACT flag routes around it).
    fn from_f64(_x: f64) -> Self {
        unreachable!("float construction on an exact field")
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn pivot_size(&self) -> f64 {
        self.abs()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl RealScalar for f64 {
    fn signum_i(&self) -> i32 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
    fn abs_ref(&self) -> Self {
        self.abs()
    }
    fn from_rat(r: &Rat) -> Self {
        rat_to_f64(r)
    }
    fn sqrt_psd(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(self.sqrt())
        }
    }
    fn from_f64(x: f64) -> Self {
        x
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    ToPrimitive::to_f64(r).unwrap_or_else(|| {
        // Fall back to a scaled conversion when numerator/denominator each
        // overflow f64 on their own.
        let n = r.numer();
        let d = r.denom();
        let shift = (n.bits() as i64 - d.bits() as i64).clamp(-900, 900);
        let scaled = if shift > 0 {
            Rat::new(n.clone(), d.clone() << shift as u64)
        } else {
            Rat::new(n.clone() << (-shift) as u64, d.clone())
        };
        ToPrimitive::to_f64(&scaled).unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        rat_int(n)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn pivot_size(&self) -> f64 {
        if Zero::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
    fn to_f64(&self) -> f64 {
        rat_to_f64(self)
    }
}

impl RealScalar for Rat {
    fn signum_i(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn abs_ref(&self) -> Self {
        self.abs()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn sqrt_psd(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        if Zero::is_zero(self) {
            return Some(rat_int(0));
        }
        let sn = exact_sqrt(self.numer())?;
        let sd = exact_sqrt(self.denom())?;
        Some(Rat::new(sn, sd))
    }
    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut sieve = vec![true; 1024];
        let mut primes = Vec::new();
        for p in 2..1024usize {
            if sieve[p] {
                primes.push(p as u64);
                let mut q = p * p;
                while q < 1024 {
                    sieve[q] = false;
                    q += p;
                }
            }
        }
        primes
    })
}

/// Split a positive integer as s²·m with m square-reduced. Trial division by
/// small primes plus a perfect-square check on the cofactor; a large hidden
/// square factor can survive in m, which only makes two radicals fail to
/// unify (an honest ExactUnavailable downstream, never a wrong value).
pub fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "extract_square needs a positive integer");
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut m = BigInt::one();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= &pb;
        }
        if e % 2 == 1 {
            m *= &pb;
        }
    }
    if let Some(r) = exact_sqrt(&rest) {
        s *= r;
    } else {
        m *= rest;
    }
    (s, m)
}

/// Element a + b·√r of a real quadratic extension of ℚ. `r` is a positive
/// square-reduced integer; `r = 0` marks a plain rational (b = 0). Values
/// from different extensions must not be mixed; arithmetic panics on a
/// radical mismatch, and the norm-form code checks compatibility up front.
#[derive(Clone, PartialEq, Eq)]
pub struct Ext {
    a: Rat,
    b: Rat,
    r: BigInt,
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}·√{}", self.a, self.b, self.r)
        }
    }
}

impl Ext {
    pub fn from_rational(a: Rat) -> Self {
        Ext {
            a,
            b: rat_int(0),
            r: BigInt::zero(),
        }
    }

    pub fn with_radical(a: Rat, b: Rat, r: BigInt) -> Self {
        let mut v = Ext { a, b, r };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        if Zero::is_zero(&self.b) || self.r.is_one() {
            if self.r.is_one() && !Zero::is_zero(&self.b) {
                self.a += std::mem::replace(&mut self.b, rat_int(0));
            }
            self.b = rat_int(0);
            self.r = BigInt::zero();
        }
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn radical_part(&self) -> &Rat {
        &self.b
    }

    /// The radical r of this value, if it actually uses one.
    pub fn radical(&self) -> Option<&BigInt> {
        if Zero::is_zero(&self.b) {
            None
        } else {
            Some(&self.r)
        }
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn compatible(&self, other: &Ext) -> bool {
        Zero::is_zero(&self.b) || Zero::is_zero(&other.b) || self.r == other.r
    }

    fn unified_radical(&self, other: &Ext) -> BigInt {
        if !self.compatible(other) {
            panic!(
                "mixed quadratic extensions: √{} vs √{}",
                self.r, other.r
            );
        }
        if Zero::is_zero(&self.b) {
            other.r.clone()
        } else {
            self.r.clone()
        }
    }
}

impl std::ops::Add for Ext {
    type Output = Ext;
    fn add(self, rhs: Ext) -> Ext {
        self.add_ref(&rhs)
    }
}

impl std::ops::Mul for Ext {
    type Output = Ext;
    fn mul(self, rhs: Ext) -> Ext {
        self.mul_ref(&rhs)
    }
}

impl Zero for Ext {
    fn zero() -> Self {
        Ext::from_rational(rat_int(0))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
}

impl One for Ext {
    fn one() -> Self {
        Ext::from_rational(rat_int(1))
    }
}

impl Scalar for Ext {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Ext::from_rational(rat_int(n))
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let r = self.unified_radical(rhs);
        Ext::with_radical(&self.a + &rhs.a, &self.b + &rhs.b, r)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        let r = self.unified_radical(rhs);
        Ext::with_radical(&self.a - &rhs.a, &self.b - &rhs.b, r)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let r = self.unified_radical(rhs);
        let rr = Rat::from_integer(r.clone());
        let a = &self.a * &rhs.a + &(&self.b * &rhs.b) * &rr;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ext::with_radical(a, b, r)
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero in quadratic extension");
        let r = self.unified_radical(rhs);
        let rr = Rat::from_integer(r.clone());
        // (a+b√r)/(c+d√r) = (a+b√r)(c−d√r)/(c²−d²r)
        let norm = &rhs.a * &rhs.a - &(&rhs.b * &rhs.b) * &rr;
        let a = (&self.a * &rhs.a - &(&self.b * &rhs.b) * &rr) / &norm;
        let b = (&self.b * &rhs.a - &self.a * &rhs.b) / &norm;
        Ext::with_radical(a, b, r)
    }
    fn neg_ref(&self) -> Self {
        Ext {
            a: -self.a.clone(),
            b: -self.b.clone(),
            r: self.r.clone(),
        }
    }
    fn pivot_size(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
    fn to_f64(&self) -> f64 {
        let rf = self.r.to_f64().unwrap_or(f64::NAN);
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * rf.sqrt()
    }
    fn radical_key(&self) -> Option<BigInt> {
        self.radical().cloned()
    }
    fn compatible_with(&self, other: &Self) -> bool {
        self.compatible(other)
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if !self.compatible(other) {
            return None;
        }
        let d = self.sub_ref(other);
        Some(match d.signum_i() {
            x if x > 0 => Ordering::Greater,
            0 => Ordering::Equal,
            _ => Ordering::Less,
        })
    }
}

impl RealScalar for Ext {
    fn signum_i(&self) -> i32 {
        let sa = RealScalar::signum_i(&self.a);
        let sb = RealScalar::signum_i(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // a and b√r have opposite signs: compare magnitudes via a² vs b²r.
        let rr = Rat::from_integer(self.r.clone());
        let d = &self.a * &self.a - &(&self.b * &self.b) * &rr;
        sa * RealScalar::signum_i(&d)
    }
    fn abs_ref(&self) -> Self {
        if self.signum_i() < 0 {
            self.neg_ref()
        } else {
            self.clone()
        }
    }
    fn from_rat(r: &Rat) -> Self {
        Ext::from_rational(r.clone())
    }
    fn sqrt_psd(&self) -> Option<Self> {
        match self.signum_i() {
            x if x < 0 => return None,
            0 => return Some(Ext::zero()),
            _ => {}
        }
        if self.is_rational() {
            return sqrt_rational_ext(&self.a);
        }
        // Denest √(a+b√r): requires a²−b²r to be a rational square d², and
        // then √(a+b√r) = √((a+d)/2) + sign(b)·√((a−d)/2) with both halves
        // landing back in ℚ(√r).
        let rr = Rat::from_integer(self.r.clone());
        let disc = &self.a * &self.a - &(&self.b * &self.b) * &rr;
        let d = RealScalar::sqrt_psd(&disc)?;
        let half = rat(1, 2);
        let x = sqrt_rational_ext(&(&(&self.a + &d) * &half))?;
        let y = sqrt_rational_ext(&(&(&self.a - &d) * &half))?;
        let y = if RealScalar::signum_i(&self.b) >= 0 {
            y
        } else {
            y.neg_ref()
        };
        if !x.compatible(&y) {
            return None;
        }
        let cand = x.add_ref(&y);
        if let Some(r) = cand.radical() {
            if *r != self.r {
                return None;
            }
        }
        Some(cand)
    }
    fn to_rat(&self) -> Option<Rat> {
        self.as_rational().cloned()
    }
}

/// √ of a nonnegative rational as an element of some ℚ(√m).
fn sqrt_rational_ext(c: &Rat) -> Option<Ext> {
    if c.is_negative() {
        return None;
    }
    if Zero::is_zero(c) {
        return Some(Ext::zero());
    }
    // √(p/q) = √(pq)/q
    let n = c.numer() * c.denom();
    let (s, m) = extract_square(&n);
    let coeff = Rat::new(s, c.denom().clone());
    if m.is_one() {
        Some(Ext::from_rational(coeff))
    } else {
        Some(Ext::with_radical(rat_int(0), coeff, m))
    }
}

/// Minimal complex pair over any scalar field; used for the divisibility
/// sign choices where forms are evaluated at complex roots.
#[derive(Clone, Debug, PartialEq)]
pub struct CPair<K> {
    pub re: K,
    pub im: K,
}

impl<K: Scalar> CPair<K> {
    pub fn new(re: K, im: K) -> Self {
        CPair { re, im }
    }
    pub fn zero() -> Self {
        CPair::new(K::zero(), K::zero())
    }
    pub fn add(&self, o: &Self) -> Self {
        CPair::new(self.re.add_ref(&o.re), self.im.add_ref(&o.im))
    }
    pub fn mul(&self, o: &Self) -> Self {
        CPair::new(
            self.re.mul_ref(&o.re).sub_ref(&self.im.mul_ref(&o.im)),
            self.re.mul_ref(&o.im).add_ref(&self.im.mul_ref(&o.re)),
        )
    }
    pub fn scale(&self, k: &K) -> Self {
        CPair::new(self.re.mul_ref(k), self.im.mul_ref(k))
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt() {
        assert_eq!(RealScalar::sqrt_psd(&rat(1, 4)), Some(rat(1, 2)));
        assert_eq!(RealScalar::sqrt_psd(&rat(9, 16)), Some(rat(3, 4)));
        assert_eq!(RealScalar::sqrt_psd(&rat(2, 1)), None);
        assert_eq!(RealScalar::sqrt_psd(&rat(-1, 1)), None);
    }

    #[test]
    fn extract_square_small() {
        let (s, m) = extract_square(&BigInt::from(12));
        assert_eq!((s, m), (BigInt::from(2), BigInt::from(3)));
        let (s, m) = extract_square(&BigInt::from(49));
        assert_eq!((s, m), (BigInt::from(7), BigInt::from(1)));
    }

    #[test]
    fn ext_arithmetic_and_sign() {
        // (1+√5)(1−√5) = −4
        let x = Ext::with_radical(rat_int(1), rat_int(1), BigInt::from(5));
        let y = Ext::with_radical(rat_int(1), rat_int(-1), BigInt::from(5));
        let p = x.mul_ref(&y);
        assert_eq!(p, Ext::from_rational(rat_int(-4)));
        // 1 − √5 < 0 while √5 − 1 > 0
        assert_eq!(y.signum_i(), -1);
        assert_eq!(y.neg_ref().signum_i(), 1);
        // division round-trips
        let q = p.div_ref(&x);
        assert_eq!(q, y);
    }

    #[test]
    fn ext_sqrt_denesting() {
        // √((3−√5)/2) = (√5−1)/2, the norm-form λ witness value.
        let lam = Ext::with_radical(rat(3, 2), rat(-1, 2), BigInt::from(5));
        let s = RealScalar::sqrt_psd(&lam).expect("denests");
        assert_eq!(
            s,
            Ext::with_radical(rat(-1, 2), rat(1, 2), BigInt::from(5))
        );
        // and squaring gives back λ
        assert_eq!(s.mul_ref(&s), lam);
        // √((√5−1)/2) does not denest
        let n = Ext::with_radical(rat(-1, 2), rat(1, 2), BigInt::from(5));
        assert!(RealScalar::sqrt_psd(&n).is_none());
    }

    #[test]
    fn ext_sqrt_of_rational() {
        let three = Ext::from_rational(rat_int(3));
        let s = RealScalar::sqrt_psd(&three).unwrap();
        assert_eq!(s.radical(), Some(&BigInt::from(3)));
        assert_eq!(s.mul_ref(&s), three);
    }
}
