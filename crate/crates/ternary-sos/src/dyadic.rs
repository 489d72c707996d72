//! Arbitrary-precision dyadic numbers and complex ball arithmetic.
//!
//! This is the certified evaluation backend for the Φ pencil invariant:
//! polynomial roots are enclosed in complex balls and the 28-pair product is
//! evaluated with rigorous outward rounding, so an integer result can be
//! rounded exactly once the enclosing interval is narrower than 1/2.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::scalar::Rat;

/// m · 2^e with arbitrary-precision mantissa.
#[derive(Clone, PartialEq)]
pub struct Dy {
    pub m: BigInt,
    pub e: i64,
}

impl std::fmt::Debug for Dy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.6e}", self.to_f64())
    }
}

impl Dy {
    pub fn zero() -> Self {
        Dy {
            m: BigInt::zero(),
            e: 0,
        }
    }

    pub fn one() -> Self {
        Dy {
            m: BigInt::one(),
            e: 0,
        }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Dy { m: n.clone(), e: 0 }
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Dy::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        Dy {
            m: BigInt::from(sign) * BigInt::from(mant),
            e,
        }
    }

    /// Power of two 2^k.
    pub fn pow2(k: i64) -> Self {
        Dy {
            m: BigInt::one(),
            e: k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn bits(&self) -> u64 {
        self.m.bits()
    }

    pub fn neg(&self) -> Self {
        Dy {
            m: -self.m.clone(),
            e: self.e,
        }
    }

    pub fn abs(&self) -> Self {
        Dy {
            m: self.m.abs(),
            e: self.e,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let sa = (self.e - e) as u64;
        let sb = (o.e - e) as u64;
        assert!(sa < (1 << 24) && sb < (1 << 24), "dyadic exponent spread too large");
        Dy {
            m: (&self.m << sa) + (&o.m << sb),
            e,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Dy {
            m: &self.m * &o.m,
            e: self.e + o.e,
        }
    }

    /// Truncate the mantissa to `prec` bits; returns (value, error bound).
    /// Truncation is toward zero so |error| ≤ 2^{e+shift}.
    pub fn round(&self, prec: u64) -> (Self, Self) {
        let b = self.bits();
        if b <= prec {
            return (self.clone(), Dy::zero());
        }
        let shift = b - prec;
        let q = &self.m >> shift; // arithmetic shift: rounds toward −∞
        let q = if self.m.is_negative() && (&self.m - (&q << shift)).is_zero() == false {
            q + 1 // bring truncation toward zero for negatives
        } else {
            q
        };
        (
            Dy {
                m: q,
                e: self.e + shift as i64,
            },
            Dy::pow2(self.e + shift as i64),
        )
    }

    /// Round a nonnegative bound upward to `prec` bits.
    pub fn round_up(&self, prec: u64) -> Self {
        debug_assert!(!self.is_negative());
        let b = self.bits();
        if b <= prec {
            return self.clone();
        }
        let shift = b - prec;
        let q = &self.m >> shift;
        let exact = (&self.m - (&q << shift)).is_zero();
        Dy {
            m: if exact { q } else { q + 1 },
            e: self.e + shift as i64,
        }
    }

    /// Rounded quotient with error bound: self/den to ~prec bits.
    pub fn div_round(&self, den: &Self, prec: u64) -> (Self, Self) {
        assert!(!den.is_zero());
        if self.is_zero() {
            return (Dy::zero(), Dy::zero());
        }
        // scale numerator so the integer quotient carries ≥ prec bits
        let extra = (prec as i64 + den.bits() as i64 - self.bits() as i64 + 2).max(2) as u64;
        let num = &self.m << extra;
        let q = num / &den.m;
        let e = self.e - extra as i64 - den.e;
        (Dy { m: q, e }, Dy::pow2(e))
    }

    pub fn cmp_dy(&self, o: &Self) -> std::cmp::Ordering {
        let d = self.sub(o);
        match d.m.sign() {
            Sign::Minus => std::cmp::Ordering::Less,
            Sign::NoSign => std::cmp::Ordering::Equal,
            Sign::Plus => std::cmp::Ordering::Greater,
        }
    }

    pub fn max_dy(&self, o: &Self) -> Self {
        if self.cmp_dy(o) == std::cmp::Ordering::Less {
            o.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_rat(&self) -> Rat {
        if self.e >= 0 {
            Rat::from_integer(&self.m << self.e as u64)
        } else {
            Rat::new(self.m.clone(), BigInt::one() << (-self.e) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        crate::scalar::rat_to_f64(&self.to_rat())
    }

    pub fn from_rat(r: &Rat, prec: u64) -> (Self, Self) {
        if r.numer().is_zero() {
            return (Dy::zero(), Dy::zero());
        }
        let nb = r.numer().bits() as i64;
        let db = r.denom().bits() as i64;
        let extra = (prec as i64 + db - nb + 2).max(2) as u64;
        let q = (r.numer() << extra) / r.denom();
        let e = -(extra as i64);
        (Dy { m: q, e }, Dy::pow2(e))
    }
}

/// Complex point at fixed precision (no error tracking); used for Newton
/// refinement where the iteration self-corrects.
#[derive(Clone, Debug)]
pub struct CPt {
    pub re: Dy,
    pub im: Dy,
}

impl CPt {
    pub fn from_f64(re: f64, im: f64) -> Self {
        CPt {
            re: Dy::from_f64(re),
            im: Dy::from_f64(im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CPt {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn mul_round(&self, o: &Self, prec: u64) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CPt {
            re: re.round(prec).0,
            im: im.round(prec).0,
        }
    }

    pub fn div_round(&self, o: &Self, prec: u64) -> Self {
        let den = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let nre = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let nim = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        CPt {
            re: nre.div_round(&den, prec).0,
            im: nim.div_round(&den, prec).0,
        }
    }

    /// Upper bound proxy for |z| (within factor √2).
    pub fn mag_ub(&self) -> Dy {
        self.re.abs().add(&self.im.abs())
    }
}

/// Complex ball |z − c| ≤ rad.
#[derive(Clone, Debug)]
pub struct Ball {
    pub re: Dy,
    pub im: Dy,
    pub rad: Dy,
}

pub enum BallError {
    NeedPrecision,
}

impl Ball {
    pub fn exact_int(n: &BigInt) -> Self {
        Ball {
            re: Dy::from_bigint(n),
            im: Dy::zero(),
            rad: Dy::zero(),
        }
    }

    pub fn from_center(c: CPt, rad: Dy) -> Self {
        Ball {
            re: c.re,
            im: c.im,
            rad,
        }
    }

    fn mag_ub(&self) -> Dy {
        self.re.abs().add(&self.im.abs())
    }

    /// Lower bound for |center|.
    fn center_mag_lb(&self) -> Dy {
        self.re.abs().max_dy(&self.im.abs())
    }

    pub fn add(&self, o: &Self, prec: u64) -> Self {
        let (re, e1) = self.re.add(&o.re).round(prec);
        let (im, e2) = self.im.add(&o.im).round(prec);
        let rad = self
            .rad
            .add(&o.rad)
            .add(&e1)
            .add(&e2)
            .round_up(32);
        Ball { re, im, rad }
    }

    pub fn sub(&self, o: &Self, prec: u64) -> Self {
        self.add(
            &Ball {
                re: o.re.neg(),
                im: o.im.neg(),
                rad: o.rad.clone(),
            },
            prec,
        )
    }

    pub fn mul(&self, o: &Self, prec: u64) -> Self {
        let (re, e1) = self
            .re
            .mul(&o.re)
            .sub(&self.im.mul(&o.im))
            .round(prec);
        let (im, e2) = self
            .re
            .mul(&o.im)
            .add(&self.im.mul(&o.re))
            .round(prec);
        let na = self.mag_ub();
        let nb = o.mag_ub();
        let rad = na
            .mul(&o.rad)
            .add(&nb.mul(&self.rad))
            .add(&self.rad.mul(&o.rad))
            .add(&e1)
            .add(&e2)
            .round_up(32);
        Ball { re, im, rad }
    }

    pub fn div(&self, o: &Self, prec: u64) -> Result<Self, BallError> {
        let lb = o.center_mag_lb().sub(&o.rad);
        if lb.is_negative() || lb.is_zero() {
            return Err(BallError::NeedPrecision);
        }
        let den = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let nre = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let nim = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        let (qre, e1) = nre.div_round(&den, prec);
        let (qim, e2) = nim.div_round(&den, prec);
        // |a/b − ca/cb| ≤ (ra·|cb| + |ca|·rb) / (|b|·|cb|)
        let ca = self.mag_ub();
        let cb_ub = o.mag_ub();
        let cb_lb = o.center_mag_lb();
        let num = self.rad.mul(&cb_ub).add(&ca.mul(&o.rad));
        let den_lb = lb.mul(&cb_lb);
        let (prop, e3) = num.div_round(&den_lb, 32);
        let rad = prop.abs().add(&e3).add(&e1).add(&e2).round_up(32);
        Ok(Ball { re: qre, im: qim, rad })
    }

    /// Real-part interval as exact rationals.
    pub fn real_interval(&self) -> (Rat, Rat) {
        let lo = self.re.sub(&self.rad).to_rat();
        let hi = self.re.add(&self.rad).to_rat();
        (lo, hi)
    }

    /// Does the imaginary part interval contain zero?
    pub fn imag_contains_zero(&self) -> bool {
        self.im.abs().cmp_dy(&self.rad) != std::cmp::Ordering::Greater
    }
}

/// Evaluate an integer-coefficient polynomial on a ball (Horner).
pub fn horner_ball(coeffs: &[BigInt], z: &Ball, prec: u64) -> Ball {
    let mut acc = Ball::exact_int(&BigInt::zero());
    for c in coeffs {
        acc = acc.mul(z, prec).add(&Ball::exact_int(c), prec);
    }
    acc
}

/// Evaluate polynomial and derivative at a complex point (Horner).
pub fn horner_point(coeffs: &[BigInt], z: &CPt, prec: u64) -> (CPt, CPt) {
    let mut v = CPt {
        re: Dy::zero(),
        im: Dy::zero(),
    };
    let mut d = v.clone();
    for c in coeffs {
        d = d.mul_round(z, prec).addp(&v);
        v = v.mul_round(z, prec).addp(&CPt {
            re: Dy::from_bigint(c),
            im: Dy::zero(),
        });
        v.re = v.re.round(prec).0;
        v.im = v.im.round(prec).0;
        d.re = d.re.round(prec).0;
        d.im = d.im.round(prec).0;
    }
    (v, d)
}

impl CPt {
    fn addp(&self, o: &Self) -> Self {
        CPt {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_round_trip() {
        let x = Dy::from_f64(3.75);
        assert_eq!(x.to_f64(), 3.75);
        let y = Dy::from_f64(-0.1);
        assert!((y.to_f64() + 0.1).abs() < 1e-17);
    }

    #[test]
    fn rounding_bounds_error() {
        let x = Dy {
            m: BigInt::from(0b1011101i64),
            e: -3,
        };
        let (r, err) = x.round(4);
        let diff = x.sub(&r).abs();
        assert!(diff.cmp_dy(&err) != std::cmp::Ordering::Greater);
    }

    #[test]
    fn ball_product_contains_truth() {
        // (2 ± 0.01)(3 ± 0.01) must contain 6
        let a = Ball {
            re: Dy::from_f64(2.0),
            im: Dy::zero(),
            rad: Dy::from_f64(0.01),
        };
        let b = Ball {
            re: Dy::from_f64(3.0),
            im: Dy::zero(),
            rad: Dy::from_f64(0.01),
        };
        let p = a.mul(&b, 128);
        let (lo, hi) = p.real_interval();
        let six = Rat::from_integer(6.into());
        assert!(lo <= six && six <= hi);
    }

    #[test]
    fn ball_division() {
        let a = Ball {
            re: Dy::from_f64(1.0),
            im: Dy::zero(),
            rad: Dy::from_f64(1e-10),
        };
        let b = Ball {
            re: Dy::from_f64(3.0),
            im: Dy::zero(),
            rad: Dy::from_f64(1e-10),
        };
        let q = a.div(&b, 128).ok().unwrap();
        let (lo, hi) = q.real_interval();
        let third = Rat::new(1.into(), 3.into());
        assert!(lo <= third && third <= hi);
        assert!((q.re.to_f64() - 1.0 / 3.0).abs() < 1e-12);
    }
}
