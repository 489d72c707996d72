//! Resultants and discriminants on nominal degrees.
//!
//! The n-discriminant follows the convention disc_n(f) = 0 for
//! deg f < n−1, realized for a vanishing leading coefficient through the
//! continuity limit disc_n(f) = a₁²·disc_{n−1}(f) (one root pushed to
//! infinity).

use crate::scalar::Scalar;

use super::det::det_gauss;
use super::unipoly::UniPoly;

/// Sylvester matrix of f (nominal degree m) and g (nominal degree n):
/// (m+n)×(m+n), n shifted rows of f's coefficients over m shifted rows of
/// g's. Leading coefficients may be zero; that is the point of nominal
/// degrees.
pub fn sylvester<K: Scalar>(
    f: &UniPoly<K>,
    g: &UniPoly<K>,
    m: usize,
    n: usize,
) -> Vec<Vec<K>> {
    let fc = f.with_nominal(m).coeffs;
    let gc = g.with_nominal(n).coeffs;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![K::zero(); size];
        for (j, c) in fc.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![K::zero(); size];
        for (j, c) in gc.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Res_{m,n}(f, g) as the Sylvester determinant. Vanishes iff the pair has a
/// common factor or both nominal leading coefficients are zero.
pub fn resultant<K: Scalar>(f: &UniPoly<K>, g: &UniPoly<K>, m: usize, n: usize) -> K {
    assert!(
        m + n > 0,
        "resultant needs at least one positive nominal degree"
    );
    det_gauss(sylvester(f, g, m, n))
}

fn disc_sign<K: Scalar>(n: usize) -> K {
    if (n * (n - 1) / 2) % 2 == 0 {
        K::one()
    } else {
        K::from_i64(-1)
    }
}

/// The n-discriminant of f (deg f ≤ n): (−1)^{n(n−1)/2}·Res_{n,n−1}(f,f′)/a₀
/// when a₀ ≠ 0, extended by disc_n = a₁²·disc_{n−1} when a₀ = 0.
pub fn disc<K: Scalar>(f: &UniPoly<K>, n: usize) -> K {
    assert!(n >= 1, "disc_0 is not defined");
    let f = f.with_nominal(n);
    if n == 1 {
        return K::one();
    }
    let a0 = f.lc_nominal().clone();
    if a0.is_zero() {
        let a1 = f.coeffs[1].clone();
        if a1.is_zero() {
            return K::zero();
        }
        let tail = UniPoly::new(f.coeffs[1..].to_vec());
        return a1.mul_ref(&a1).mul_ref(&disc(&tail, n - 1));
    }
    let r = resultant(&f, &f.derivative(), n, n - 1);
    disc_sign::<K>(n).mul_ref(&r.div_ref(&a0))
}

/// Check disc_n(f(λz)) = λ^{n(n−1)}·disc_n(f). Exact equality for exact
/// scalars, relative 1e-9 for floats.
pub fn disc_scale_law<K: Scalar>(f: &UniPoly<K>, lambda: &K, n: usize) -> bool {
    let f = f.with_nominal(n);
    // f(λz): a_i ↦ a_i λ^{n−i}
    let mut scaled = Vec::with_capacity(n + 1);
    let mut pow = K::one();
    let mut pows = vec![K::one()];
    for _ in 0..n {
        pow = pow.mul_ref(lambda);
        pows.push(pow.clone());
    }
    for (i, c) in f.coeffs.iter().enumerate() {
        scaled.push(c.mul_ref(&pows[n - i]));
    }
    let lhs = disc(&UniPoly::new(scaled), n);
    let mut factor = K::one();
    for _ in 0..n * (n - 1) {
        factor = factor.mul_ref(lambda);
    }
    let rhs = factor.mul_ref(&disc(&f, n));
    if K::EXACT {
        lhs == rhs
    } else {
        let scale = lhs.to_f64().abs().max(rhs.to_f64().abs()).max(1.0);
        (lhs.to_f64() - rhs.to_f64()).abs() <= 1e-9 * scale
    }
}

/// Matrix of the pairing (p,q) ↦ p·g + q·f on k[x]_{m−1} ⊕ k[x]_{n−1} →
/// k[x]_{m+n−1} in descending monomial bases (f at nominal degree m, g at
/// n). Its determinant is the resultant up to sign; it is invertible iff
/// gcd(f,g) = 1.
pub fn pencil_pairing_matrix<K: Scalar>(
    f: &UniPoly<K>,
    g: &UniPoly<K>,
    m: usize,
    n: usize,
) -> Vec<Vec<K>> {
    let fc = f.with_nominal(m).coeffs;
    let gc = g.with_nominal(n).coeffs;
    let size = m + n;
    let mut rows = vec![vec![K::zero(); size]; size];
    // columns 0..m: p-basis x^{m−1−j} multiplied by g
    for j in 0..m {
        for (i, c) in gc.iter().enumerate() {
            rows[i + j][j] = c.clone();
        }
    }
    // columns m..m+n: q-basis x^{n−1−j} multiplied by f
    for j in 0..n {
        for (i, c) in fc.iter().enumerate() {
            rows[i + j][m + j] = c.clone();
        }
    }
    rows
}
