//! Dense univariate polynomials with an explicit nominal degree.
//!
//! Coefficients are stored in descending order a₀…a_n where n is the nominal
//! degree; a₀ may be zero. The nominal degree matters: disc_n and Φ_{m,n}
//! change value (and meaning) with it, so arithmetic never silently trims
//! leading zeros.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{RealScalar, Scalar};

#[derive(Clone, PartialEq)]
pub struct UniPoly<K> {
    /// Descending coefficients, length = nominal degree + 1.
    pub coeffs: Vec<K>,
}

impl<K: Scalar> std::fmt::Debug for UniPoly<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

impl<K: Scalar> UniPoly<K> {
    pub fn new(coeffs: Vec<K>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial needs at least one coefficient");
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| K::from_i64(c)).collect())
    }

    pub fn zero(nominal: usize) -> Self {
        UniPoly::new(vec![K::zero(); nominal + 1])
    }

    pub fn constant(c: K) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn one() -> Self {
        UniPoly::constant(K::one())
    }

    /// The monomial x.
    pub fn x() -> Self {
        UniPoly::new(vec![K::one(), K::zero()])
    }

    pub fn nominal_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree of the actual polynomial; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(i) => self.coeffs.len() - 1 - i,
            None => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Leading coefficient with respect to the nominal degree (may be zero).
    pub fn lc_nominal(&self) -> &K {
        &self.coeffs[0]
    }

    /// Leading coefficient of the actual polynomial; zero only for the zero
    /// polynomial.
    pub fn lc(&self) -> K {
        self.coeffs
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap_or_else(K::zero)
    }

    /// Coefficient of x^k (zero when k exceeds the nominal degree).
    pub fn coeff(&self, k: usize) -> K {
        let n = self.nominal_degree();
        if k > n {
            K::zero()
        } else {
            self.coeffs[n - k].clone()
        }
    }

    /// Drop leading zeros; the result's nominal degree is its actual degree.
    pub fn trimmed(&self) -> Self {
        let lead = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len() - 1);
        UniPoly::new(self.coeffs[lead..].to_vec())
    }

    /// Same polynomial under a larger (or equal) nominal degree.
    pub fn with_nominal(&self, nominal: usize) -> Self {
        let d = self.degree();
        assert!(nominal >= d, "nominal degree below actual degree");
        let t = self.trimmed();
        let mut coeffs = vec![K::zero(); nominal - d];
        coeffs.extend(t.coeffs);
        UniPoly::new(coeffs)
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> UniPoly<L> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, k: &K) -> Self {
        self.map(|c| c.mul_ref(k))
    }

    pub fn add_poly(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![K::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[n - self.coeffs.len() + i] = c.clone();
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            let j = n - rhs.coeffs.len() + i;
            out[j] = out[j].add_ref(c);
        }
        UniPoly::new(out)
    }

    pub fn sub_poly(&self, rhs: &Self) -> Self {
        self.add_poly(&rhs.neg_poly())
    }

    pub fn neg_poly(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn mul_poly(&self, rhs: &Self) -> Self {
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
        UniPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul_poly(self);
        }
        acc
    }

    /// Quotient and remainder; deg(rem) < deg(divisor). Panics on a zero
    /// divisor — callers check. Index-driven so the leading term cancels by
    /// construction (floats would otherwise leave ~1e-16 residue there).
    pub fn divrem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let d = rhs.trimmed();
        let num = self.trimmed();
        let dd = d.degree();
        if num.is_zero() || num.degree() < dd {
            return (UniPoly::zero(0), num);
        }
        let qn = num.degree() - dd;
        let mut rem = num.coeffs.clone();
        let mut q = vec![K::zero(); qn + 1];
        let dl = &d.coeffs[0];
        for i in 0..=qn {
            let c = rem[i].div_ref(dl);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate().skip(1) {
                    rem[i + j] = rem[i + j].sub_ref(&c.mul_ref(dc));
                }
            }
            rem[i] = K::zero();
            q[i] = c;
        }
        let r = if dd == 0 {
            UniPoly::zero(0)
        } else {
            UniPoly::new(rem[qn + 1..].to_vec())
        };
        (UniPoly::new(q), r)
    }

    /// Exact division; panics if the remainder is nonzero (exact scalars).
    pub fn exact_div(&self, rhs: &Self) -> Self {
        let (q, r) = self.divrem(rhs);
        assert!(
            !K::EXACT || r.is_zero(),
            "exact division left a remainder"
        );
        q
    }

    pub fn derivative(&self) -> Self {
        let n = self.nominal_degree();
        if n == 0 {
            return UniPoly::zero(0);
        }
        let mut out = Vec::with_capacity(n);
        for (i, c) in self.coeffs.iter().take(n).enumerate() {
            let k = (n - i) as i64;
            out.push(c.mul_ref(&K::from_i64(k)));
        }
        UniPoly::new(out)
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in &self.coeffs {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    /// Composition p(a·x + b).
    pub fn compose_affine(&self, a: &K, b: &K) -> Self {
        let lin = UniPoly::new(vec![a.clone(), b.clone()]);
        let mut acc = UniPoly::zero(0);
        for c in &self.coeffs {
            acc = acc.mul_poly(&lin).add_poly(&UniPoly::constant(c.clone()));
        }
        acc.with_nominal(self.nominal_degree())
    }

    /// Monic gcd on actual degrees (the zero polynomial acts as gcd identity).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.trimmed();
        let mut b = rhs.trimmed();
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.trimmed();
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.trimmed();
        }
        let l = self.lc();
        self.trimmed().map(|c| c.div_ref(&l))
    }

    /// Square-free levels: f = lc · ∏ sᵢ^i with each sᵢ monic square-free,
    /// pairwise coprime. Returns the list [s₁, s₂, …] (trailing entries may
    /// be constant 1). Exact scalars only.
    pub fn squarefree_levels(&self) -> Vec<Self> {
        assert!(K::EXACT, "square-free decomposition needs exact scalars");
        let f = self.trimmed().monic();
        if f.degree() == 0 {
            return vec![];
        }
        // Yun's algorithm over a characteristic-zero field.
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0);
        let mut c = fp.exact_div(&a0);
        let mut out = Vec::new();
        while b.degree() > 0 {
            let d = c.sub_poly(&b.derivative()).trimmed();
            let s = b.gcd(&d);
            out.push(s.clone());
            b = b.exact_div(&s).monic();
            c = d.exact_div(&s);
        }
        out
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        assert!(K::EXACT);
        let f = self.trimmed();
        if f.degree() == 0 {
            return f.monic();
        }
        let g = f.gcd(&f.derivative());
        f.exact_div(&g).monic()
    }
}

impl<K: RealScalar> UniPoly<K> {
    pub fn norm_inf(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

impl<K: Scalar> Add for &UniPoly<K> {
    type Output = UniPoly<K>;
    fn add(self, rhs: Self) -> UniPoly<K> {
        self.add_poly(rhs)
    }
}

impl<K: Scalar> Sub for &UniPoly<K> {
    type Output = UniPoly<K>;
    fn sub(self, rhs: Self) -> UniPoly<K> {
        self.sub_poly(rhs)
    }
}

impl<K: Scalar> Mul for &UniPoly<K> {
    type Output = UniPoly<K>;
    fn mul(self, rhs: Self) -> UniPoly<K> {
        self.mul_poly(rhs)
    }
}

impl<K: Scalar> Neg for &UniPoly<K> {
    type Output = UniPoly<K>;
    fn neg(self) -> UniPoly<K> {
        self.neg_poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    type P = UniPoly<Rat>;

    #[test]
    fn divrem_factorization() {
        // (x²−1) / (x−1) = (x+1, 0)
        let f = P::from_i64(&[1, 0, -1]);
        let g = P::from_i64(&[1, -1]);
        let (q, r) = f.divrem(&g);
        assert_eq!(q, P::from_i64(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn mul_square() {
        let f = P::from_i64(&[1, 0, 1]);
        assert_eq!(f.mul_poly(&f), P::from_i64(&[1, 0, 2, 0, 1]));
    }

    #[test]
    fn divrem_identity() {
        for coeffs in [vec![3, 1, 4], vec![2, 0, 0, -5], vec![7]] {
            let f = P::from_i64(&coeffs);
            let (q, r) = f.divrem(&f);
            assert_eq!(q, P::from_i64(&[1]));
            assert!(r.is_zero());
        }
    }

    #[test]
    fn divrem_with_remainder() {
        // x³+2x+1 = (x²+1)·x + (x+1)
        let f = P::from_i64(&[1, 0, 2, 1]);
        let g = P::from_i64(&[1, 0, 1]);
        let (q, r) = f.divrem(&g);
        assert_eq!(q, P::from_i64(&[1, 0]));
        assert_eq!(r.trimmed(), P::from_i64(&[1, 1]));
        assert_eq!((&g.mul_poly(&q) + &r).trimmed(), f);
    }

    #[test]
    fn nominal_degree_is_preserved() {
        let f = P::from_i64(&[0, 0, 1, 1]); // x+1 at nominal degree 3
        assert_eq!(f.nominal_degree(), 3);
        assert_eq!(f.degree(), 1);
        let g = f.add_poly(&P::from_i64(&[1, 0]));
        assert_eq!(g.nominal_degree(), 3);
        assert_eq!(g.degree(), 1);
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = P::from_i64(&[1, 0, 1]); // x²+1
        let g = P::from_i64(&[1, 0, 2]); // x²+2
        let fg = f.mul_poly(&g);
        assert_eq!(f.gcd(&g).degree(), 0);
        assert_eq!(fg.gcd(&f), f);
        let sq = f.mul_poly(&f).mul_poly(&g);
        assert_eq!(sq.squarefree_part(), fg);
        let levels = sq.squarefree_levels();
        assert_eq!(levels[0], g);
        assert_eq!(levels[1], f);
    }

    #[test]
    fn compose_affine_scales() {
        // f(2x+1) for f = x²: 4x²+4x+1
        let f = P::from_i64(&[1, 0, 0]);
        let g = f.compose_affine(&Rat::from_integer(2.into()), &Rat::from_integer(1.into()));
        assert_eq!(g, P::from_i64(&[4, 4, 1]));
    }

    #[test]
    fn derivative_nominal() {
        let f = P::from_i64(&[0, 1, 1]); // x+1 nominal 2
        assert_eq!(f.derivative(), P::from_i64(&[0, 1]));
    }
}
