//! Dense determinants: Gaussian elimination over a field and fraction-free
//! Bareiss elimination over exact-division domains (used for resultants of
//! polynomial-entry Sylvester matrices, where fractions would blow up).

use crate::scalar::Scalar;

use super::unipoly::UniPoly;

/// Determinant by Gaussian elimination with pivot preference from
/// `Scalar::pivot_size` (nonzero-first for exact fields, magnitude for f64).
pub fn det_gauss<K: Scalar>(mut m: Vec<Vec<K>>) -> K {
    let n = m.len();
    if n == 0 {
        return K::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut det = K::one();
    for col in 0..n {
        let mut best = col;
        let mut best_size = m[col][col].pivot_size();
        for (r, row) in m.iter().enumerate().skip(col + 1) {
            let s = row[col].pivot_size();
            if s > best_size {
                best = r;
                best_size = s;
            }
        }
        if best_size == 0.0 {
            return K::zero();
        }
        if best != col {
            m.swap(best, col);
            det = det.neg_ref();
        }
        let pivot = m[col][col].clone();
        det = det.mul_ref(&pivot);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].div_ref(&pivot);
            for c in col..n {
                let delta = factor.mul_ref(&m[col][c]);
                m[r][c] = m[r][c].sub_ref(&delta);
            }
        }
    }
    det
}

/// Entries for fraction-free elimination: an integral domain with exact
/// division by known divisors.
pub trait BareissEntry: Clone {
    fn b_zero() -> Self;
    fn b_one() -> Self;
    fn b_is_zero(&self) -> bool;
    fn b_mul(&self, o: &Self) -> Self;
    fn b_sub(&self, o: &Self) -> Self;
    fn b_neg(&self) -> Self;
    /// Exact quotient; the divisor is guaranteed to divide.
    fn b_exact_div(&self, o: &Self) -> Self;
}

impl<K: Scalar> BareissEntry for UniPoly<K> {
    fn b_zero() -> Self {
        UniPoly::zero(0)
    }
    fn b_one() -> Self {
        UniPoly::one()
    }
    fn b_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn b_mul(&self, o: &Self) -> Self {
        self.mul_poly(o)
    }
    fn b_sub(&self, o: &Self) -> Self {
        self.sub_poly(o)
    }
    fn b_neg(&self) -> Self {
        self.neg_poly()
    }
    fn b_exact_div(&self, o: &Self) -> Self {
        let (q, r) = self.divrem(o);
        debug_assert!(r.is_zero(), "Bareiss division must be exact");
        q
    }
}

/// Fraction-free Bareiss determinant. Intermediate entries are minors of the
/// input, so sizes stay under control for integer-like domains.
pub fn det_bareiss<T: BareissEntry>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::b_one();
    }
    let mut sign_flip = false;
    let mut prev = T::b_one();
    for k in 0..n - 1 {
        if m[k][k].b_is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].b_is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return T::b_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].b_mul(&m[k][k]).b_sub(&m[i][k].b_mul(&m[k][j]));
                m[i][j] = t.b_exact_div(&prev);
            }
            m[i][k] = T::b_zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.b_neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat_int, Rat};

    #[test]
    fn gauss_and_bareiss_agree() {
        let rows_i: Vec<Vec<i64>> = vec![
            vec![2, 1, 0, 3],
            vec![1, -1, 4, 0],
            vec![0, 2, 2, 1],
            vec![5, 0, 1, 1],
        ];
        let rat_m: Vec<Vec<Rat>> = rows_i
            .iter()
            .map(|r| r.iter().map(|&v| rat_int(v)).collect())
            .collect();
        let poly_m: Vec<Vec<UniPoly<Rat>>> = rows_i
            .iter()
            .map(|r| r.iter().map(|&v| UniPoly::constant(rat_int(v))).collect())
            .collect();
        let g = det_gauss(rat_m);
        let b = det_bareiss(poly_m);
        assert_eq!(UniPoly::constant(g).trimmed(), b.trimmed());
    }

    #[test]
    fn bareiss_polynomial_entries() {
        // det [[x, 1], [1, x]] = x²−1
        let x: UniPoly<Rat> = UniPoly::from_i64(&[1, 0]);
        let one = UniPoly::one();
        let m = vec![vec![x.clone(), one.clone()], vec![one, x]];
        assert_eq!(det_bareiss(m), UniPoly::from_i64(&[1, 0, -1]));
    }

    #[test]
    fn singular_matrix() {
        let m: Vec<Vec<Rat>> = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ];
        assert_eq!(det_gauss(m), rat_int(0));
    }
}
