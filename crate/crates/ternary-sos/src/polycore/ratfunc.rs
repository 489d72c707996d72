//! Fraction field of UniPoly<K>: rational functions in one variable.
//! Used to run the Euclidean algorithm on the pencil cubics over ℚ(x).

use num_traits::Zero;

use crate::scalar::Scalar;

use super::unipoly::UniPoly;

#[derive(Clone)]
pub struct RatFunc<K> {
    pub num: UniPoly<K>,
    pub den: UniPoly<K>,
}

impl<K: Scalar> std::fmt::Debug for RatFunc<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl<K: Scalar> RatFunc<K> {
    pub fn new(num: UniPoly<K>, den: UniPoly<K>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut v = RatFunc { num, den };
        v.reduce();
        v
    }

    pub fn from_poly(p: UniPoly<K>) -> Self {
        RatFunc {
            num: p.trimmed(),
            den: UniPoly::one(),
        }
    }

    fn reduce(&mut self) {
        self.num = self.num.trimmed();
        self.den = self.den.trimmed();
        if self.num.is_zero() {
            self.den = UniPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() > 0 {
            self.num = self.num.exact_div(&g);
            self.den = self.den.exact_div(&g);
        }
        // normalize: monic denominator
        let l = self.den.lc();
        self.num = self.num.map(|c| c.div_ref(&l));
        self.den = self.den.map(|c| c.div_ref(&l));
    }
}

impl<K: Scalar> PartialEq for RatFunc<K> {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul_poly(&other.den).trimmed() == other.num.mul_poly(&self.den).trimmed()
    }
}

impl<K: Scalar> std::ops::Add for RatFunc<K> {
    type Output = RatFunc<K>;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<K: Scalar> std::ops::Mul for RatFunc<K> {
    type Output = RatFunc<K>;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<K: Scalar> num_traits::Zero for RatFunc<K> {
    fn zero() -> Self {
        RatFunc::from_poly(UniPoly::zero(0))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<K: Scalar> num_traits::One for RatFunc<K> {
    fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }
}

impl<K: Scalar> Scalar for RatFunc<K> {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        RatFunc::from_poly(UniPoly::constant(K::from_i64(n)))
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        RatFunc::new(
            &self.num.mul_poly(&rhs.den) + &rhs.num.mul_poly(&self.den),
            self.den.mul_poly(&rhs.den),
        )
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        RatFunc::new(self.num.mul_poly(&rhs.num), self.den.mul_poly(&rhs.den))
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFunc::new(self.num.mul_poly(&rhs.den), self.den.mul_poly(&rhs.num))
    }
    fn neg_ref(&self) -> Self {
        RatFunc {
            num: self.num.neg_poly(),
            den: self.den.clone(),
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
        f64::NAN
    }
}
