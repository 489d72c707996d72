//! Homogeneous binary forms of a declared degree.
//!
//! Index k holds the coefficient of x^{d−k}·y^k, so dehomogenizing at y = 1
//! reuses the same coefficient list as a `UniPoly` of nominal degree d, and
//! homogenize ∘ dehomogenize is the identity by construction.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{RealScalar, Scalar};

use super::unipoly::UniPoly;

#[derive(Clone, PartialEq)]
pub struct BinaryForm<K> {
    pub coeffs: Vec<K>,
}

impl<K: Scalar> std::fmt::Debug for BinaryForm<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BinaryForm{:?}", self.coeffs)
    }
}

impl<K: Scalar> BinaryForm<K> {
    pub fn new(coeffs: Vec<K>) -> Self {
        assert!(!coeffs.is_empty());
        BinaryForm { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        BinaryForm::new(coeffs.iter().map(|&c| K::from_i64(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm::new(vec![K::zero(); degree + 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient of x^{d−k} y^k.
    pub fn coeff(&self, k: usize) -> K {
        self.coeffs[k].clone()
    }

    pub fn dehomogenize(&self) -> UniPoly<K> {
        UniPoly::new(self.coeffs.clone())
    }

    /// Interpret a univariate polynomial's nominal degree as a form degree.
    pub fn homogenize(p: &UniPoly<K>) -> Self {
        BinaryForm::new(p.coeffs.clone())
    }

    /// Homogenize to the stated degree (pads with roots at infinity).
    pub fn homogenize_to(p: &UniPoly<K>, degree: usize) -> Self {
        BinaryForm::homogenize(&p.with_nominal(degree))
    }

    /// Multiplicity of y (the root at infinity of the dehomogenization).
    pub fn y_multiplicity(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len() - 1)
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> BinaryForm<L> {
        BinaryForm::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, k: &K) -> Self {
        self.map(|c| c.mul_ref(k))
    }

    pub fn add_form(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in form sum");
        BinaryForm::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        )
    }

    pub fn sub_form(&self, rhs: &Self) -> Self {
        self.add_form(&rhs.neg_form())
    }

    pub fn neg_form(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn mul_form(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = vec![K::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        BinaryForm::new(out)
    }

    pub fn square(&self) -> Self {
        self.mul_form(self)
    }

    pub fn eval(&self, x: &K, y: &K) -> K {
        // Horner in x with y-powers accumulated alongside.
        let d = self.degree();
        let mut acc = K::zero();
        let mut ypow = K::one();
        let mut terms = Vec::with_capacity(d + 1);
        for k in 0..=d {
            terms.push(self.coeffs[k].mul_ref(&ypow));
            if k < d {
                ypow = ypow.mul_ref(y);
            }
        }
        for t in terms {
            acc = acc.mul_ref(x).add_ref(&t);
        }
        acc
    }

    /// ∂/∂x as a form of degree d−1.
    pub fn derivative_x(&self) -> Self {
        let d = self.degree();
        assert!(d >= 1);
        let mut out = Vec::with_capacity(d);
        for k in 0..d {
            out.push(self.coeffs[k].mul_ref(&K::from_i64((d - k) as i64)));
        }
        BinaryForm::new(out)
    }

    /// Exact form division: self = q·rhs with deg q = deg self − deg rhs.
    /// Returns None when the division leaves a remainder or the root at
    /// infinity does not divide out.
    pub fn try_div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BinaryForm::zero(self.degree().saturating_sub(rhs.degree())));
        }
        if self.degree() < rhs.degree() {
            return None;
        }
        if self.y_multiplicity() < rhs.y_multiplicity() {
            return None;
        }
        let (q, r) = self.dehomogenize().divrem(&rhs.dehomogenize());
        if !r.is_zero() {
            return None;
        }
        let qd = self.degree() - rhs.degree();
        if q.degree() > qd {
            return None;
        }
        Some(BinaryForm::homogenize_to(&q, qd))
    }

    /// Swap the roles of x and y.
    pub fn swapped(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        BinaryForm::new(c)
    }
}

impl<K: RealScalar> BinaryForm<K> {
    pub fn norm_inf(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> BinaryForm<f64> {
        self.map(|c| c.to_f64())
    }
}

impl<K: Scalar> Add for &BinaryForm<K> {
    type Output = BinaryForm<K>;
    fn add(self, rhs: Self) -> BinaryForm<K> {
        self.add_form(rhs)
    }
}

impl<K: Scalar> Sub for &BinaryForm<K> {
    type Output = BinaryForm<K>;
    fn sub(self, rhs: Self) -> BinaryForm<K> {
        self.sub_form(rhs)
    }
}

impl<K: Scalar> Mul for &BinaryForm<K> {
    type Output = BinaryForm<K>;
    fn mul(self, rhs: Self) -> BinaryForm<K> {
        self.mul_form(rhs)
    }
}

impl<K: Scalar> Neg for &BinaryForm<K> {
    type Output = BinaryForm<K>;
    fn neg(self) -> BinaryForm<K> {
        self.neg_form()
    }
}
