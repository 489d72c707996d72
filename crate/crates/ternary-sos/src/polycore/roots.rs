//! Real-root counting (exact Sturm sequences), psd tests for binary forms,
//! and the float-path root machinery: companion-matrix roots, clustering,
//! approximate gcd degree via Sylvester singular values.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::scalar::RealScalar;

use super::binary::BinaryForm;
use super::resultant::sylvester;
use super::unipoly::UniPoly;

pub type C64 = Complex<f64>;

/// Cluster tolerance for float root identification.
pub const TAU_ROOT: f64 = 1e-7;
/// Float psd slack, relative to the coefficient norm.
pub const TAU_PSD: f64 = 1e-9;
/// Approximate-gcd singular value threshold.
pub const TAU_GCD: f64 = 1e-8;

fn sign_changes(signs: &[i32]) -> usize {
    let mut count = 0;
    let mut last = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of f (exact scalars).
pub fn sturm_real_root_count<K: RealScalar>(f: &UniPoly<K>) -> usize {
    assert!(K::EXACT, "Sturm sequences use exact arithmetic only");
    let f = f.trimmed();
    if f.is_zero() || f.degree() == 0 {
        return 0;
    }
    let sf = f.squarefree_part();
    if sf.degree() == 0 {
        return 0;
    }
    let mut chain = vec![sf.clone(), sf.derivative().trimmed()];
    loop {
        let last = &chain[chain.len() - 1];
        if last.is_zero() || last.degree() == 0 {
            break;
        }
        let (_, r) = chain[chain.len() - 2].divrem(last);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg_poly().trimmed());
    }
    let at_pos: Vec<i32> = chain.iter().map(|p| p.lc().signum_i()).collect();
    let at_neg: Vec<i32> = chain
        .iter()
        .map(|p| {
            let s = p.lc().signum_i();
            if p.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    sign_changes(&at_neg) - sign_changes(&at_pos)
}

/// Square-freeness: exact gcd test for exact scalars, approximate gcd degree
/// (Sylvester singular values) on the float path.
pub fn square_free<K: RealScalar>(f: &UniPoly<K>) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if K::EXACT {
        let f = f.trimmed();
        if f.degree() == 0 {
            return Ok(true);
        }
        Ok(f.gcd(&f.derivative()).degree() == 0)
    } else {
        let ff = f.map(|c| c.to_f64()).trimmed();
        if ff.degree() == 0 {
            return Ok(true);
        }
        Ok(approx_gcd_degree(&ff, &ff.derivative(), TAU_GCD) == 0)
    }
}

/// Degree of the approximate gcd: rank deficiency of the Sylvester matrix on
/// actual degrees, singular values below `tau`·σ_max counting as zero.
pub fn approx_gcd_degree(f: &UniPoly<f64>, g: &UniPoly<f64>, tau: f64) -> usize {
    let f = f.trimmed();
    let g = g.trimmed();
    let (m, n) = (f.degree(), g.degree());
    if m == 0 || n == 0 {
        return 0;
    }
    let rows = sylvester(&f, &g, m, n);
    let size = m + n;
    let mat = DMatrix::from_fn(size, size, |i, j| rows[i][j]);
    let svd = mat.svd(false, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    if smax == 0.0 {
        return size.min(m.min(n));
    }
    let deficient = svd
        .singular_values
        .iter()
        .filter(|&&s| s <= tau * smax)
        .count();
    deficient.min(m.min(n))
}

/// All complex roots of p (actual degree), companion-matrix eigenvalues with
/// a few Newton polish steps.
pub fn complex_roots(p: &UniPoly<f64>) -> Vec<C64> {
    let p = p.trimmed();
    let n = p.degree();
    if n == 0 {
        return Vec::new();
    }
    let lc = p.coeffs[0];
    let monic: Vec<f64> = p.coeffs.iter().map(|c| c / lc).collect();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        // last column: −c_{n−i} where monic = [1, c_1, …, c_n]
        m[(i, n - 1)] = -monic[n - i];
    }
    let eig = m.complex_eigenvalues();
    let mut roots: Vec<C64> = eig.iter().cloned().collect();
    for z in roots.iter_mut() {
        for _ in 0..3 {
            let (v, d) = eval_with_derivative(&p, *z);
            if d.norm() > 1e-300 {
                let step = v / d;
                if step.norm().is_finite() {
                    *z -= step;
                }
            }
        }
    }
    roots.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    roots
}

/// Newton-polish a root of multiplicity k: it is a simple root of the
/// (k−1)-th derivative.
pub fn polish_multiple_root(p: &UniPoly<f64>, z: C64, k: usize) -> C64 {
    let mut d = p.trimmed();
    for _ in 0..k.saturating_sub(1) {
        d = d.derivative();
    }
    let mut z = z;
    for _ in 0..4 {
        let (v, dv) = eval_with_derivative(&d, z);
        if dv.norm() > 1e-300 {
            let step = v / dv;
            if step.norm().is_finite() {
                z -= step;
            }
        }
    }
    z
}

fn eval_with_derivative(p: &UniPoly<f64>, z: C64) -> (C64, C64) {
    let mut v = C64::new(0.0, 0.0);
    let mut d = C64::new(0.0, 0.0);
    for &c in &p.coeffs {
        d = d * z + v;
        v = v * z + C64::new(c, 0.0);
    }
    (v, d)
}

/// Greedy clustering of complex points: groups within `tol` of a growing
/// cluster centroid. Returns (centroid, size) pairs.
pub fn cluster_complex(points: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let mut clusters: Vec<(C64, usize)> = Vec::new();
    for &z in points {
        let mut placed = false;
        for (c, k) in clusters.iter_mut() {
            if (*c - z).norm() <= tol {
                let kk = *k as f64;
                *c = (*c * kk + z) / (kk + 1.0);
                *k += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            clusters.push((z, 1));
        }
    }
    clusters
}

/// Cluster coefficient vectors; errors if any pair sits in the ambiguity
/// band [tol, gap·tol) where membership would be a guess.
pub fn cluster_vectors(points: &[Vec<f64>], tol: f64, gap: f64) -> Result<Vec<Vec<usize>>> {
    let dist = |a: &[f64], b: &[f64]| -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    };
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = dist(&points[i], &points[j]);
            if d >= tol && d < gap * tol {
                return Err(Error::AmbiguousClustering(format!(
                    "pair distance {d:.3e} inside [{tol:.1e}, {:.1e})",
                    gap * tol
                )));
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let mut placed = false;
        for g in groups.iter_mut() {
            if dist(&points[g[0]], p) < tol {
                g.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            groups.push(vec![i]);
        }
    }
    Ok(groups)
}

/// psd test for a binary form of even degree. Exact path: Sturm count on the
/// odd-multiplicity part plus parity of the root at infinity. Float path:
/// root clustering with even cluster sizes plus circle sampling.
pub fn psd_binary<K: RealScalar>(f: &BinaryForm<K>) -> Result<bool> {
    if f.degree() % 2 != 0 {
        return Err(Error::OddDegree);
    }
    if f.is_zero() {
        return Ok(true);
    }
    if K::EXACT {
        psd_binary_exact(f)
    } else {
        Ok(psd_binary_float(&f.map(|c| c.to_f64())))
    }
}

fn psd_binary_exact<K: RealScalar>(f: &BinaryForm<K>) -> Result<bool> {
    let k = f.y_multiplicity();
    if k % 2 != 0 {
        return Ok(false);
    }
    let p = f.dehomogenize().trimmed();
    if p.lc().signum_i() < 0 {
        return Ok(false);
    }
    if p.degree() == 0 {
        return Ok(true);
    }
    // real roots of odd multiplicity are exactly the real roots of the
    // product of odd square-free levels
    let levels = p.squarefree_levels();
    let mut odd_part: UniPoly<K> = UniPoly::one();
    for (i, s) in levels.iter().enumerate() {
        if i % 2 == 0 {
            odd_part = odd_part.mul_poly(s);
        }
    }
    if odd_part.degree() == 0 {
        return Ok(true);
    }
    Ok(sturm_real_root_count(&odd_part) == 0)
}

fn psd_binary_float(f: &BinaryForm<f64>) -> bool {
    let norm = f.norm_inf();
    if norm == 0.0 {
        return true;
    }
    // sampling on the circle
    let samples = 256;
    for i in 0..samples {
        let th = std::f64::consts::PI * (i as f64) / (samples as f64);
        let v = f.eval(&th.cos(), &th.sin());
        if v < -TAU_PSD * norm {
            return false;
        }
    }
    // root-at-infinity parity with a relative threshold
    let mut k = 0;
    while k < f.coeffs.len() - 1 && f.coeffs[k].abs() <= TAU_ROOT * norm {
        k += 1;
    }
    if k % 2 != 0 {
        return false;
    }
    let p = UniPoly::new(f.coeffs[k..].to_vec());
    if p.degree() == 0 {
        return p.coeffs[0] >= -TAU_PSD * norm;
    }
    let roots = complex_roots(&p);
    let real: Vec<C64> = roots
        .iter()
        .cloned()
        .filter(|z| z.im.abs() <= TAU_ROOT * (1.0 + z.norm()))
        .collect();
    let clusters = cluster_complex(&real, TAU_ROOT.sqrt() * (1.0 + norm.sqrt()));
    clusters.iter().all(|(_, size)| size % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    type P = UniPoly<Rat>;
    type B = BinaryForm<Rat>;

    #[test]
    fn sturm_counts() {
        // x³−x has three simple real roots
        assert_eq!(sturm_real_root_count(&P::from_i64(&[1, 0, -1, 0])), 3);
        // x²+1 has none
        assert_eq!(sturm_real_root_count(&P::from_i64(&[1, 0, 1])), 0);
        // (x−1)²(x+2): distinct real roots = 2
        let f = P::from_i64(&[1, -1]).pow(2).mul_poly(&P::from_i64(&[1, 2]));
        assert_eq!(sturm_real_root_count(&f), 2);
    }

    #[test]
    fn square_free_flags() {
        let f = P::from_i64(&[1, 0, 1]).mul_poly(&P::from_i64(&[1, 0, 2]));
        assert!(square_free(&f).unwrap());
        let g = P::from_i64(&[1, 0, 1]).pow(2);
        assert!(!square_free(&g).unwrap());
        assert!(square_free(&P::from_i64(&[1, 0, -1, 0])).unwrap());
        assert!(matches!(
            square_free(&P::zero(2)),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn psd_binary_examples() {
        assert!(psd_binary(&B::from_i64(&[1, 0, 1])).unwrap());
        assert!(!psd_binary(&B::from_i64(&[1, 0, -1])).unwrap());
        assert!(psd_binary(&B::from_i64(&[0, 0, 1])).unwrap()); // y²
        assert!(!psd_binary(&B::from_i64(&[0, 1, 0])).unwrap()); // xy
        assert!(matches!(
            psd_binary(&B::from_i64(&[1, 0])),
            Err(Error::OddDegree)
        ));
        // 4(x²+y²)(x⁴+y⁴) − (2xy²)² = 4(x⁶+x⁴y²+y⁶)
        let f2 = B::from_i64(&[1, 0, 1]);
        let f4 = B::from_i64(&[1, 0, 0, 0, 1]);
        let f3 = B::from_i64(&[0, 2, 0, 0]); // 2xy²
        let f6 = &(&f2 * &f4).scale(&Rat::from_integer(4.into())) - &f3.square();
        assert!(psd_binary(&f6).unwrap());
    }

    #[test]
    fn psd_binary_float_path() {
        let f: BinaryForm<f64> = BinaryForm::from_i64(&[1, 0, 1]);
        assert!(psd_binary(&f).unwrap());
        let g: BinaryForm<f64> = BinaryForm::from_i64(&[1, 0, -1]);
        assert!(!psd_binary(&g).unwrap());
        // (x−y)²(x+y)² is psd with real double roots
        let h: BinaryForm<f64> = BinaryForm::from_i64(&[1, 0, -1]).square();
        assert!(psd_binary(&h).unwrap());
        // (x−y)(x+y)³ is not
        let l1: BinaryForm<f64> = BinaryForm::from_i64(&[1, -1]);
        let l2: BinaryForm<f64> = BinaryForm::from_i64(&[1, 1]);
        let k = &l1 * &(&(&l2 * &l2) * &l2);
        assert!(!psd_binary(&k).unwrap());
    }

    #[test]
    fn companion_roots() {
        // (x−1)(x−2)(x+3)
        let p: UniPoly<f64> = UniPoly::from_i64(&[1, 0, -7, 6]);
        let roots = complex_roots(&p);
        let mut reals: Vec<f64> = roots.iter().map(|z| z.re).collect();
        reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((reals[0] + 3.0).abs() < 1e-9);
        assert!((reals[1] - 1.0).abs() < 1e-9);
        assert!((reals[2] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn approx_gcd() {
        let f: UniPoly<f64> = UniPoly::from_i64(&[1, 0, 1]).mul_poly(&UniPoly::from_i64(&[1, -2]));
        let g: UniPoly<f64> = UniPoly::from_i64(&[1, 0, 1]).mul_poly(&UniPoly::from_i64(&[1, 5]));
        assert_eq!(approx_gcd_degree(&f, &g, TAU_GCD), 2);
        let h: UniPoly<f64> = UniPoly::from_i64(&[1, 1]);
        let k: UniPoly<f64> = UniPoly::from_i64(&[1, 2]);
        assert_eq!(approx_gcd_degree(&h, &k, TAU_GCD), 0);
    }
}
