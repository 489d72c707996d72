//! Ternary forms: dense homogeneous polynomials in (x, y, z), the
//! 15-coefficient quartics and the quadratic triples that square-sum to
//! them.

use crate::error::{Error, Result};
use crate::polycore::BinaryForm;
use crate::scalar::{RealScalar, Scalar};

/// Dense homogeneous form of the given degree in (x, y, z). Monomials
/// x^i y^j z^k (i+j+k = deg) are ordered lexicographically with i, then j,
/// descending.
#[derive(Clone, PartialEq)]
pub struct TernForm<K> {
    pub degree: usize,
    pub coeffs: Vec<K>,
}

impl<K: Scalar> std::fmt::Debug for TernForm<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TernForm(deg {}, {:?})", self.degree, self.coeffs)
    }
}

pub fn monomial_count(degree: usize) -> usize {
    (degree + 1) * (degree + 2) / 2
}

/// Position of x^i y^j z^{d−i−j} in the dense layout.
pub fn monomial_index(degree: usize, i: usize, j: usize) -> usize {
    debug_assert!(i + j <= degree);
    let u = degree - i;
    u * (u + 1) / 2 + (degree - i - j)
}

/// All exponent triples of the given degree in storage order.
pub fn monomials(degree: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(monomial_count(degree));
    for i in (0..=degree).rev() {
        for j in (0..=degree - i).rev() {
            out.push((i, j, degree - i - j));
        }
    }
    out
}

impl<K: Scalar> TernForm<K> {
    pub fn zero(degree: usize) -> Self {
        TernForm {
            degree,
            coeffs: vec![K::zero(); monomial_count(degree)],
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> K {
        debug_assert_eq!(i + j + k, self.degree);
        self.coeffs[monomial_index(self.degree, i, j)].clone()
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: K) {
        debug_assert_eq!(i + j + k, self.degree);
        self.coeffs[monomial_index(self.degree, i, j)] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> TernForm<L> {
        TernForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &K) -> Self {
        self.map(|c| c.mul_ref(k))
    }

    pub fn add_form(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree);
        TernForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn sub_form(&self, o: &Self) -> Self {
        self.add_form(&o.scale(&K::from_i64(-1)))
    }

    pub fn mul_form(&self, o: &Self) -> Self {
        let d = self.degree + o.degree;
        let mut out = TernForm::zero(d);
        for (ai, aj, _ak) in monomials(self.degree) {
            let ca = self.get(ai, aj, self.degree - ai - aj);
            if ca.is_zero() {
                continue;
            }
            for (bi, bj, _bk) in monomials(o.degree) {
                let cb = o.get(bi, bj, o.degree - bi - bj);
                if cb.is_zero() {
                    continue;
                }
                let idx = monomial_index(d, ai + bi, aj + bj);
                out.coeffs[idx] = out.coeffs[idx].add_ref(&ca.mul_ref(&cb));
            }
        }
        out
    }

    pub fn square(&self) -> Self {
        self.mul_form(self)
    }

    pub fn eval(&self, x: &K, y: &K, z: &K) -> K {
        let mut acc = K::zero();
        for (i, j, k) in monomials(self.degree) {
            let c = self.get(i, j, k);
            if c.is_zero() {
                continue;
            }
            let mut t = c;
            for _ in 0..i {
                t = t.mul_ref(x);
            }
            for _ in 0..j {
                t = t.mul_ref(y);
            }
            for _ in 0..k {
                t = t.mul_ref(z);
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Partial derivative along axis 0 (x), 1 (y) or 2 (z).
    pub fn derivative(&self, axis: usize) -> Self {
        assert!(self.degree >= 1);
        let mut out = TernForm::zero(self.degree - 1);
        for (i, j, k) in monomials(self.degree) {
            let c = self.get(i, j, k);
            if c.is_zero() {
                continue;
            }
            let (e, ni, nj, nk) = match axis {
                0 => (i, i.wrapping_sub(1), j, k),
                1 => (j, i, j.wrapping_sub(1), k),
                _ => (k, i, j, k.wrapping_sub(1)),
            };
            if e == 0 {
                continue;
            }
            let idx = monomial_index(self.degree - 1, ni, nj);
            out.coeffs[idx] =
                out.coeffs[idx].add_ref(&c.mul_ref(&K::from_i64(e as i64)));
            debug_assert_eq!(ni + nj + nk, self.degree - 1);
        }
        out
    }

    /// Substitute (x,y,z) ← M·(x,y,z): returns g with g(v) = f(M·v).
    pub fn substitute(&self, m: &[[K; 3]; 3]) -> Self {
        let lin = |r: usize| -> TernForm<K> {
            let mut l = TernForm::zero(1);
            l.set(1, 0, 0, m[r][0].clone());
            l.set(0, 1, 0, m[r][1].clone());
            l.set(0, 0, 1, m[r][2].clone());
            l
        };
        let (lx, ly, lz) = (lin(0), lin(1), lin(2));
        let mut acc = TernForm::zero(self.degree);
        for (i, j, k) in monomials(self.degree) {
            let c = self.get(i, j, k);
            if c.is_zero() {
                continue;
            }
            let mut term = TernForm::zero(0);
            term.coeffs[0] = c;
            for _ in 0..i {
                term = term.mul_form(&lx);
            }
            for _ in 0..j {
                term = term.mul_form(&ly);
            }
            for _ in 0..k {
                term = term.mul_form(&lz);
            }
            acc = acc.add_form(&term);
        }
        acc
    }
}

impl<K: RealScalar> TernForm<K> {
    pub fn norm_inf(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> TernForm<f64> {
        self.map(|c| c.to_f64())
    }
}

/// A quartic form viewed in z-layers: a₀z⁴ + e₃(x,y)z³ + f₂z² + f₃z + f₄.
pub struct ZLayers<K> {
    pub a0: K,
    pub z3: BinaryForm<K>,
    pub f2: BinaryForm<K>,
    pub f3: BinaryForm<K>,
    pub f4: BinaryForm<K>,
}

impl<K: Scalar> TernForm<K> {
    pub fn z_layers(&self) -> ZLayers<K> {
        assert_eq!(self.degree, 4);
        let layer = |zdeg: usize| -> BinaryForm<K> {
            let d = 4 - zdeg;
            BinaryForm::new(
                (0..=d)
                    .map(|j| self.get(d - j, j, zdeg))
                    .collect(),
            )
        };
        ZLayers {
            a0: self.get(0, 0, 4),
            z3: layer(3),
            f2: layer(2),
            f3: layer(1),
            f4: layer(0),
        }
    }

    pub fn from_z_layers(
        a0: &K,
        z3: &BinaryForm<K>,
        f2: &BinaryForm<K>,
        f3: &BinaryForm<K>,
        f4: &BinaryForm<K>,
    ) -> Self {
        assert_eq!(z3.degree(), 1);
        assert_eq!(f2.degree(), 2);
        assert_eq!(f3.degree(), 3);
        assert_eq!(f4.degree(), 4);
        let mut f = TernForm::zero(4);
        f.set(0, 0, 4, a0.clone());
        for (form, zdeg) in [(z3, 3usize), (f2, 2), (f3, 1), (f4, 0)] {
            let d = 4 - zdeg;
            for j in 0..=d {
                f.set(d - j, j, zdeg, form.coeff(j));
            }
        }
        f
    }
}

/// Ternary quadratic in z-layers: u·z² + v(x,y)·z + w(x,y).
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryQuadratic<K> {
    pub u: K,
    pub v: BinaryForm<K>,
    pub w: BinaryForm<K>,
}

impl<K: Scalar> TernaryQuadratic<K> {
    pub fn new(u: K, v: BinaryForm<K>, w: BinaryForm<K>) -> Self {
        assert_eq!(v.degree(), 1);
        assert_eq!(w.degree(), 2);
        TernaryQuadratic { u, v, w }
    }

    pub fn from_binary(w: BinaryForm<K>) -> Self {
        TernaryQuadratic::new(K::zero(), BinaryForm::zero(1), w)
    }

    pub fn zero() -> Self {
        TernaryQuadratic::new(K::zero(), BinaryForm::zero(1), BinaryForm::zero(2))
    }

    pub fn to_ternary(&self) -> TernForm<K> {
        let mut f = TernForm::zero(2);
        f.set(0, 0, 2, self.u.clone());
        f.set(1, 0, 1, self.v.coeff(0));
        f.set(0, 1, 1, self.v.coeff(1));
        f.set(2, 0, 0, self.w.coeff(0));
        f.set(1, 1, 0, self.w.coeff(1));
        f.set(0, 2, 0, self.w.coeff(2));
        f
    }

    pub fn from_ternary(f: &TernForm<K>) -> Self {
        assert_eq!(f.degree, 2);
        TernaryQuadratic::new(
            f.get(0, 0, 2),
            BinaryForm::new(vec![f.get(1, 0, 1), f.get(0, 1, 1)]),
            BinaryForm::new(vec![f.get(2, 0, 0), f.get(1, 1, 0), f.get(0, 2, 0)]),
        )
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> TernaryQuadratic<L> {
        TernaryQuadratic {
            u: f(&self.u),
            v: self.v.map(&f),
            w: self.w.map(&f),
        }
    }
}

/// Three quadratic forms with p₁²+p₂²+p₃² equal to a target quartic, plus
/// the (ξ, η) witness when the construction produced one.
#[derive(Clone, Debug)]
pub struct SosTriple<K: Scalar> {
    pub p: [TernaryQuadratic<K>; 3],
    pub witness: Option<(BinaryForm<K>, BinaryForm<K>)>,
}

impl<K: Scalar> SosTriple<K> {
    pub fn new(p: [TernaryQuadratic<K>; 3]) -> Self {
        SosTriple { p, witness: None }
    }

    pub fn with_witness(
        p: [TernaryQuadratic<K>; 3],
        xi: BinaryForm<K>,
        eta: BinaryForm<K>,
    ) -> Self {
        SosTriple {
            p,
            witness: Some((xi, eta)),
        }
    }

    pub fn sum_of_squares(&self) -> TernForm<K> {
        let mut acc = TernForm::zero(4);
        for q in &self.p {
            acc = acc.add_form(&q.to_ternary().square());
        }
        acc
    }
}

impl<K: RealScalar> SosTriple<K> {
    /// ‖f − Σpᵢ²‖∞ in float.
    pub fn residual_inf(&self, f: &TernForm<K>) -> f64 {
        self.sum_of_squares().sub_form(f).norm_inf()
    }
}

/// Exactness check for exact scalars.
pub fn verify_triple_exact<K: Scalar>(triple: &SosTriple<K>, f: &TernForm<K>) -> Result<()> {
    if !K::EXACT {
        return Err(Error::Shape("verify_triple_exact needs exact scalars".into()));
    }
    if triple.sum_of_squares() != *f {
        return Err(Error::Numerical("triple does not sum to the form".into()));
    }
    Ok(())
}
