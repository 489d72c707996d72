//! The pencil invariant Φ_{m,n}, its companion Ψ_{m,n}, the auxiliary
//! polynomials g_{ij}, P, Q, R, and the genericity report E1–E11.
//!
//! Φ_{m,n}(f,g,h) = a₀^{(m−1)(n−1)} · ∏_{i<j} (g(αᵢ)h(αⱼ) − g(αⱼ)h(αᵢ))/(αᵢ−αⱼ)
//! over the roots αᵢ of f. It vanishes exactly when some member of the
//! pencil s·g + t·h shares a factor of degree ≥ 2 with f (for separable f of
//! full degree). We evaluate it two independent ways: a certified complex
//! ball product rounded to the known-rational result, and an exact
//! Φ² = disc_m(Res_x(f, s·g+h))/disc_m(f) route with the sign recovered from
//! low-precision numerics.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dyadic::{horner_ball, horner_point, Ball, CPt, Dy};
use crate::error::{Error, Result};
use crate::polycore::{complex_roots, det_bareiss, disc, resultant, BinaryForm, UniPoly, C64};
use crate::scalar::{rat_to_f64, Rat, Scalar};

fn binom2(m: usize) -> usize {
    m * (m - 1) / 2
}

/// Clear denominators: c·f has integer coefficients, returns (ints, c).
fn clear_denominators(f: &UniPoly<Rat>) -> (Vec<BigInt>, BigInt) {
    let mut lcm = BigInt::one();
    for c in &f.coeffs {
        let d = c.denom();
        let g = num_integer::Integer::gcd(&lcm, d);
        lcm = &lcm / g * d;
    }
    let ints = f
        .coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    (ints, lcm)
}

fn pow_rat(base: &Rat, e: usize) -> Rat {
    let mut acc = Rat::from_integer(1.into());
    for _ in 0..e {
        acc = acc * base.clone();
    }
    acc
}

/// Φ_{m,n} for rational inputs, exact. Degenerate f (repeated roots or
/// deg f < m) is handled by interpolation along f + s·u for a fixed
/// separable degree-m perturbation u.
pub fn phi(f: &UniPoly<Rat>, g: &UniPoly<Rat>, h: &UniPoly<Rat>, m: usize, n: usize) -> Result<Rat> {
    phi_with(f, g, h, m, n, phi_int_certified)
}

/// Φ_{m,n} through the resultant route (dual evaluation; see module docs).
pub fn phi_via_resultants(
    f: &UniPoly<Rat>,
    g: &UniPoly<Rat>,
    h: &UniPoly<Rat>,
    m: usize,
    n: usize,
) -> Result<Rat> {
    phi_with(f, g, h, m, n, phi_int_resultant)
}

/// Ψ_{m,n} = disc_m(f)·Φ_{m,n}(f,g,h).
pub fn psi(f: &UniPoly<Rat>, g: &UniPoly<Rat>, h: &UniPoly<Rat>, m: usize, n: usize) -> Result<Rat> {
    Ok(disc(f, m) * phi(f, g, h, m, n)?)
}

fn phi_with(
    f: &UniPoly<Rat>,
    g: &UniPoly<Rat>,
    h: &UniPoly<Rat>,
    m: usize,
    n: usize,
    core: impl Fn(&[BigInt], &[BigInt], &[BigInt], usize, usize) -> Result<BigInt> + Copy,
) -> Result<Rat> {
    assert!(m >= 2 && n >= 2, "Φ_{{m,n}} needs m, n ≥ 2");
    assert!(f.degree() <= m && g.degree() <= n && h.degree() <= n);
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // clear denominators via the multidegree law:
    // Φ(cf·f, cg·g, ch·h) = cf^{(m−1)(n−1)}·(cg·ch)^{C(m,2)}·Φ(f,g,h)
    let (fi, cf) = clear_denominators(&f.with_nominal(m));
    let (gi, cg) = clear_denominators(&g.with_nominal(n));
    let (hi, ch) = clear_denominators(&h.with_nominal(n));
    let value = phi_int_degenerate_guard(&fi, &gi, &hi, m, n, core)?;
    let scale = pow_rat(&Rat::from_integer(cf), (m - 1) * (n - 1))
        * pow_rat(&Rat::from_integer(cg), binom2(m))
        * pow_rat(&Rat::from_integer(ch), binom2(m));
    Ok(Rat::from_integer(value) / scale)
}

fn int_poly(coeffs: &[BigInt]) -> UniPoly<Rat> {
    UniPoly::new(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

/// Wraps a core integer evaluator with the perturbation-and-interpolation
/// fallback for f with repeated roots or deg f < m. Φ is a polynomial of
/// degree (m−1)(n−1) in f's coefficients, so sampling Φ(f + s·u) at
/// (m−1)(n−1)+1 good rational s and interpolating at s = 0 is exact.
fn phi_int_degenerate_guard(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    m: usize,
    n: usize,
    core: impl Fn(&[BigInt], &[BigInt], &[BigInt], usize, usize) -> Result<BigInt> + Copy,
) -> Result<BigInt> {
    let fp = int_poly(f);
    let separable_full = !f[0].is_zero() && !disc(&fp, m).is_zero();
    if separable_full {
        return core(f, g, h, m, n);
    }
    // u = x^m − 1 is separable; f + s·u has leading coefficient a0 + s.
    let deg_in_s = (m - 1) * (n - 1);
    let mut samples: Vec<(Rat, Rat)> = Vec::with_capacity(deg_in_s + 1);
    let mut s = BigInt::one();
    while samples.len() <= deg_in_s {
        let mut fs: Vec<BigInt> = f.to_vec();
        fs[0] += &s;
        *fs.last_mut().unwrap() -= &s;
        let fsp = int_poly(&fs);
        if !fs[0].is_zero() && !disc(&fsp, m).is_zero() {
            let v = core(&fs, g, h, m, n)?;
            samples.push((Rat::from_integer(s.clone()), Rat::from_integer(v)));
        }
        s += 1;
    }
    let v = lagrange_at_zero(&samples);
    if !v.denom().is_one() {
        return Err(Error::Numerical(
            "perturbation interpolation produced a non-integer".into(),
        ));
    }
    Ok(v.numer().clone())
}

fn lagrange_at_zero(samples: &[(Rat, Rat)]) -> Rat {
    let mut acc = Rat::zero();
    for (k, (sk, vk)) in samples.iter().enumerate() {
        let mut w = Rat::one();
        for (j, (sj, _)) in samples.iter().enumerate() {
            if j != k {
                w = w * (-sj.clone()) / (sk - sj);
            }
        }
        acc = acc + vk * w;
    }
    acc
}

/// Certified-ball evaluation for integer inputs with f separable of degree m.
fn phi_int_certified(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    m: usize,
    n: usize,
) -> Result<BigInt> {
    debug_assert_eq!(f.len(), m + 1);
    debug_assert_eq!(g.len(), n + 1);
    debug_assert_eq!(h.len(), n + 1);
    let ff: UniPoly<f64> = UniPoly::new(f.iter().map(|c| bigint_f64(c)).collect());
    let mut approx: Vec<CPt> = complex_roots(&ff)
        .iter()
        .map(|z| CPt::from_f64(z.re, z.im))
        .collect();
    if approx.len() != m {
        return Err(Error::Numerical("companion roots lost degree".into()));
    }
    let fder: Vec<BigInt> = derivative_int(f);
    let mut prec: u64 = 192;
    while prec <= (1 << 16) {
        // Newton refinement at this precision
        for z in approx.iter_mut() {
            for _ in 0..(64 - (prec.leading_zeros() as u64) + 6) {
                let (v, d) = horner_point(f, z, prec);
                if d.mag_ub().is_zero() {
                    break;
                }
                let step = v.div_round(&d, prec);
                *z = z.sub(&step);
                if step.mag_ub().cmp_dy(&Dy::pow2(-(prec as i64) + 8).mul(&z.mag_ub().add(&Dy::one())))
                    == std::cmp::Ordering::Less
                {
                    break;
                }
            }
        }
        match phi_product_at_precision(f, &fder, g, h, m, n, &approx, prec) {
            Ok(v) => return Ok(v),
            Err(()) => prec *= 2,
        }
    }
    Err(Error::Numerical(
        "certified Φ evaluation did not converge within the precision cap".into(),
    ))
}

fn derivative_int(f: &[BigInt]) -> Vec<BigInt> {
    let n = f.len() - 1;
    (0..n)
        .map(|i| &f[i] * BigInt::from((n - i) as i64))
        .collect()
}

fn bigint_f64(c: &BigInt) -> f64 {
    rat_to_f64(&Rat::from_integer(c.clone()))
}

#[allow(clippy::too_many_arguments)]
fn phi_product_at_precision(
    f: &[BigInt],
    fder: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    m: usize,
    n: usize,
    centers: &[CPt],
    prec: u64,
) -> std::result::Result<BigInt, ()> {
    // certified enclosures: a disk of radius m·|f(z)|/|f'(z)| around z
    // contains a root of f
    let mut balls = Vec::with_capacity(m);
    for z in centers {
        let zb = Ball::from_center(z.clone(), Dy::zero());
        let fv = horner_ball(f, &zb, prec);
        let dv = horner_ball(fder, &zb, prec);
        let fv_ub = fv.re.abs().add(&fv.im.abs()).add(&fv.rad);
        let dv_lb = dv.re.abs().max_dy(&dv.im.abs()).sub(&dv.rad);
        if dv_lb.is_zero() || dv_lb.is_negative() {
            return Err(());
        }
        let (q, qe) = fv_ub.div_round(&dv_lb, 64);
        let rho = q.abs().add(&qe).mul(&Dy::from_bigint(&BigInt::from(m as i64)));
        balls.push(Ball::from_center(z.clone(), rho.round_up(32)));
    }
    // pairwise disjointness ⇒ the m balls isolate the m distinct roots;
    // max(|Δre|, |Δim|) is a lower bound for the center distance
    for i in 0..m {
        for j in i + 1..m {
            let dre = balls[i].re.sub(&balls[j].re).abs();
            let dim = balls[i].im.sub(&balls[j].im).abs();
            let dist_lb = dre.max_dy(&dim);
            let rr = balls[i].rad.add(&balls[j].rad);
            if dist_lb.cmp_dy(&rr) != std::cmp::Ordering::Greater {
                return Err(());
            }
        }
    }
    let gvals: Vec<Ball> = balls.iter().map(|b| horner_ball(g, b, prec)).collect();
    let hvals: Vec<Ball> = balls.iter().map(|b| horner_ball(h, b, prec)).collect();
    let mut acc = Ball::exact_int(&BigInt::one());
    for i in 0..m {
        for j in i + 1..m {
            let num = gvals[i]
                .mul(&hvals[j], prec)
                .sub(&gvals[j].mul(&hvals[i], prec), prec);
            let den = balls[i].sub(&balls[j], prec);
            let q = num.div(&den, prec).map_err(|_| ())?;
            acc = acc.mul(&q, prec);
        }
    }
    let mut a0pow = Ball::exact_int(&BigInt::one());
    let a0 = Ball::exact_int(&f[0]);
    for _ in 0..(m - 1) * (n - 1) {
        a0pow = a0pow.mul(&a0, prec);
    }
    acc = acc.mul(&a0pow, prec);
    if !acc.imag_contains_zero() {
        return Err(());
    }
    let (lo, hi) = acc.real_interval();
    unique_integer_in(&lo, &hi).ok_or(())
}

fn unique_integer_in(lo: &Rat, hi: &Rat) -> Option<BigInt> {
    let lo_c = lo.ceil().to_integer();
    let hi_f = hi.floor().to_integer();
    if lo_c == hi_f {
        Some(lo_c)
    } else {
        None
    }
}

/// Exact Φ² through resultants: Φ² = disc_m(Res_x(f, s·g + h))/disc_m(f),
/// sign from a normalized f64 product. Needs disc_m(f) ≠ 0 (guaranteed by
/// the degenerate guard).
fn phi_int_resultant(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    m: usize,
    n: usize,
) -> Result<BigInt> {
    let fq = int_poly(f);
    let gq = int_poly(g);
    let hq = int_poly(h);
    // R(s) = Res_x(f, s·g + h) with linear-in-s entries, Bareiss over ℚ[s]
    let sg_h: Vec<UniPoly<Rat>> = gq
        .coeffs
        .iter()
        .zip(&hq.coeffs)
        .map(|(b, c)| UniPoly::new(vec![b.clone(), c.clone()]))
        .collect();
    let f_rows: Vec<UniPoly<Rat>> = fq.coeffs.iter().map(|c| UniPoly::constant(c.clone())).collect();
    let size = m + n;
    let mut mat = vec![vec![UniPoly::<Rat>::zero(0); size]; size];
    for i in 0..n {
        for (j, c) in f_rows.iter().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in sg_h.iter().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    let r_of_s = det_bareiss(mat).with_nominal_checked(m)?;
    let disc_r = disc(&r_of_s, m);
    let disc_f = disc(&fq, m);
    debug_assert!(!disc_f.is_zero());
    let phi_sq = disc_r / disc_f;
    if phi_sq.is_zero() {
        return Ok(BigInt::zero());
    }
    if phi_sq.is_negative() || !phi_sq.denom().is_one() {
        return Err(Error::Numerical(format!(
            "Φ² resultant route produced a non-square candidate {phi_sq}"
        )));
    }
    let root = phi_sq.numer().sqrt();
    if &(&root * &root) != phi_sq.numer() {
        return Err(Error::Numerical(
            "Φ² from the resultant route is not a perfect square".into(),
        ));
    }
    let sign = phi_sign_f64(f, g, h, m, n);
    Ok(if sign < 0 { -root } else { root })
}

impl UniPoly<Rat> {
    fn with_nominal_checked(&self, nominal: usize) -> Result<UniPoly<Rat>> {
        if self.degree() > nominal {
            return Err(Error::Numerical(format!(
                "resultant in s has degree {} > {}",
                self.degree(),
                nominal
            )));
        }
        Ok(self.with_nominal(nominal))
    }
}

/// Sign of Φ from low-precision numerics: the product of unit-normalized
/// factors (magnitude is irrelevant, only the direction survives).
fn phi_sign_f64(f: &[BigInt], g: &[BigInt], h: &[BigInt], m: usize, n: usize) -> i32 {
    let ff: UniPoly<f64> = UniPoly::new(f.iter().map(|c| bigint_f64(c)).collect());
    let gf: UniPoly<f64> = UniPoly::new(g.iter().map(|c| bigint_f64(c)).collect());
    let hf: UniPoly<f64> = UniPoly::new(h.iter().map(|c| bigint_f64(c)).collect());
    let roots = complex_roots(&ff);
    let mut acc = C64::new(1.0, 0.0);
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let gi = eval_c(&gf, roots[i]);
            let gj = eval_c(&gf, roots[j]);
            let hi = eval_c(&hf, roots[i]);
            let hj = eval_c(&hf, roots[j]);
            let v = (gi * hj - gj * hi) / (roots[i] - roots[j]);
            let norm = v.norm();
            if norm > 0.0 {
                acc *= v / norm;
            }
        }
    }
    let a0 = bigint_f64(&f[0]);
    let s0 = if a0 < 0.0 && ((m - 1) * (n - 1)) % 2 == 1 {
        -1.0
    } else {
        1.0
    };
    if acc.re * s0 < 0.0 {
        -1
    } else {
        1
    }
}

fn eval_c(p: &UniPoly<f64>, z: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for &c in &p.coeffs {
        acc = acc * z + C64::new(c, 0.0);
    }
    acc
}

/// Float advisory Φ (for float-input genericity reports only).
pub fn phi_f64(f: &UniPoly<f64>, g: &UniPoly<f64>, h: &UniPoly<f64>, m: usize, n: usize) -> f64 {
    let roots = complex_roots(&f.with_nominal(m));
    if roots.len() != m {
        return f64::NAN;
    }
    let mut acc = C64::new(1.0, 0.0);
    for i in 0..m {
        for j in i + 1..m {
            let gi = eval_c(g, roots[i]);
            let gj = eval_c(g, roots[j]);
            let hi = eval_c(h, roots[i]);
            let hj = eval_c(h, roots[j]);
            acc *= (gi * hj - gj * hi) / (roots[i] - roots[j]);
        }
    }
    let a0 = f.with_nominal(m).coeffs[0];
    acc.re * a0.powi(((m - 1) * (n - 1)) as i32)
}

/// g_{ij} = i·fᵢ·fⱼ′ − j·fⱼ·fᵢ′ on dehomogenized inputs; nominal degree
/// i+j−2 (the top terms cancel identically).
pub fn g_ij<K: Scalar>(fi: &UniPoly<K>, fj: &UniPoly<K>, i: usize, j: usize) -> UniPoly<K> {
    assert!((2..=4).contains(&i) && (2..=4).contains(&j));
    let fi = fi.with_nominal(i);
    let fj = fj.with_nominal(j);
    let a = fi.mul_poly(&fj.derivative()).scale(&K::from_i64(i as i64));
    let b = fj.mul_poly(&fi.derivative()).scale(&K::from_i64(j as i64));
    let d = a.sub_poly(&b).trimmed();
    assert!(d.degree() <= i + j - 2, "g_ij leading terms must cancel");
    d.with_nominal(i + j - 2)
}

/// P = g₂₃g₃₄ − g₂₄², Q = f₄²g₂₃(2f₄g₂₃ − f₃g₂₄),
/// R = (8f₂f₄ − 3f₃²)g₂₃ + 2f₂f₃g₂₄, at nominal degrees (8, 18, 9).
pub fn build_pqr<K: Scalar>(
    f2: &UniPoly<K>,
    f3: &UniPoly<K>,
    f4: &UniPoly<K>,
) -> (UniPoly<K>, UniPoly<K>, UniPoly<K>) {
    let f2 = f2.with_nominal(2);
    let f3 = f3.with_nominal(3);
    let f4 = f4.with_nominal(4);
    let g23 = g_ij(&f2, &f3, 2, 3);
    let g24 = g_ij(&f2, &f4, 2, 4);
    let g34 = g_ij(&f3, &f4, 3, 4);
    let p = (&(&g23 * &g34) - &(&g24 * &g24)).with_nominal(8);
    let two = K::from_i64(2);
    let q = (&(&f4.mul_poly(&f4) * &g23)
        * &(&f4.mul_poly(&g23).scale(&two) - &(&f3 * &g24)))
        .with_nominal(18);
    let r = (&(&(&f2.mul_poly(&f4).scale(&K::from_i64(8))
        - &f3.mul_poly(&f3).scale(&K::from_i64(3)))
        * &g23)
        + &(&f2.mul_poly(&f3).scale(&two) * &g24))
        .with_nominal(9);
    (p, q, r)
}

/// Exact genericity report for the exceptional conditions E1–E11.
/// `true` means the exceptional condition HOLDS (the form is non-generic).
#[derive(Clone, Debug)]
pub struct GenericityReport {
    pub holds: [bool; 11],
    /// Witness values, one per condition, printed exactly for rational
    /// inputs (discriminants, resultants and Φ values).
    pub witnesses: Vec<(String, String)>,
    pub exact: bool,
}

impl GenericityReport {
    pub fn all_clear(&self) -> bool {
        self.holds.iter().all(|&b| !b)
    }

    pub fn first_violation(&self) -> Option<usize> {
        self.holds.iter().position(|&b| b).map(|i| i + 1)
    }

    pub fn violated(&self) -> Vec<usize> {
        self.holds
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Evaluate E1–E11 exactly on rational binary forms (f₂, f₃, f₄).
pub fn genericity(
    f2: &BinaryForm<Rat>,
    f3: &BinaryForm<Rat>,
    f4: &BinaryForm<Rat>,
) -> Result<GenericityReport> {
    assert_eq!(f2.degree(), 2);
    assert_eq!(f3.degree(), 3);
    assert_eq!(f4.degree(), 4);
    let p2 = f2.dehomogenize();
    let p3 = f3.dehomogenize();
    let p4 = f4.dehomogenize();
    let four = Rat::from_integer(4.into());
    let f6 = &(f2 * f4).scale(&four) - &f3.square();
    let mut holds = [false; 11];
    let mut wit: Vec<(String, String)> = Vec::new();

    let d2 = disc(&p2, 2);
    holds[0] = d2.is_zero();
    wit.push(("disc2(f2)".into(), d2.to_string()));

    holds[1] = f3.try_div_exact(f2).is_some();
    wit.push(("f2 divides f3".into(), holds[1].to_string()));

    let d6 = disc(&f6.dehomogenize(), 6);
    holds[2] = d6.is_zero();
    wit.push(("disc6(4f2f4-f3^2)".into(), d6.to_string()));

    let d3 = disc(&p3, 3);
    holds[3] = d3.is_zero();
    wit.push(("disc3(f3)".into(), d3.to_string()));

    let r34 = resultant(&p3, &p4, 3, 4);
    holds[4] = r34.is_zero();
    wit.push(("res(f3,f4)".into(), r34.to_string()));

    let g23 = g_ij(&p2, &p3, 2, 3);
    let g24 = g_ij(&p2, &p4, 2, 4);
    let g34 = g_ij(&p3, &p4, 3, 4);

    let r_e6 = resultant(&g23, &g24, 3, 4);
    holds[5] = r_e6.is_zero();
    wit.push(("res(g23,g24)".into(), r_e6.to_string()));

    let r_e7 = resultant(&g24, &g34, 4, 5);
    holds[6] = r_e7.is_zero();
    wit.push(("res(g24,g34)".into(), r_e7.to_string()));

    // Φ is homogeneous of positive degree in f's coefficients, so it
    // vanishes identically at f = 0 (phi() itself rejects the zero input)
    let f2sq = p2.mul_poly(&p2);
    let phi34 = if p3.is_zero() {
        Rat::zero()
    } else {
        phi(&p3, &f2sq, &p4, 3, 4)?
    };
    holds[7] = phi34.is_zero();
    wit.push(("phi34(f3,f2^2,f4)".into(), phi34.to_string()));

    let (p, q, r) = build_pqr(&p2, &p3, &p4);
    let d8 = disc(&p, 8);
    holds[8] = d8.is_zero();
    wit.push(("disc8(P)".into(), d8.to_string()));

    let r2 = q_r2(&r);
    let phi818 = if p.is_zero() {
        Rat::zero()
    } else {
        phi(&p, &q, &r2, 8, 18)?
    };
    holds[9] = phi818.is_zero();
    wit.push(("phi818(P,Q,R^2)".into(), phi818.to_string()));

    let e11_poly = &p4.scale(&four) - &f2sq;
    let r_e11 = resultant(&p3, &e11_poly.with_nominal(4), 3, 4);
    holds[10] = r_e11.is_zero();
    wit.push(("res(f3,4f4-f2^2)".into(), r_e11.to_string()));

    Ok(GenericityReport {
        holds,
        witnesses: wit,
        exact: true,
    })
}

fn q_r2(r: &UniPoly<Rat>) -> UniPoly<Rat> {
    r.mul_poly(r).with_nominal(18)
}

/// Thresholded advisory report for float inputs (normalization leaves float
/// coefficients). Flags are advisory: |witness| below a relative threshold.
pub fn genericity_f64(
    f2: &BinaryForm<f64>,
    f3: &BinaryForm<f64>,
    f4: &BinaryForm<f64>,
    threshold: f64,
) -> GenericityReport {
    let p2 = f2.dehomogenize();
    let p3 = f3.dehomogenize();
    let p4 = f4.dehomogenize();
    let f6 = &(f2 * f4).scale(&4.0) - &f3.square();
    let mut holds = [false; 11];
    let mut wit: Vec<(String, String)> = Vec::new();
    let scaled = |v: f64, s: f64| if s == 0.0 { v == 0.0 } else { v.abs() <= threshold * s };

    let n2 = f2.norm_inf().max(1e-300);
    let n3 = f3.norm_inf();
    let n4 = f4.norm_inf().max(1e-300);
    let n6 = f6.norm_inf().max(1e-300);

    let d2 = disc(&p2, 2);
    holds[0] = scaled(d2, n2 * n2);
    wit.push(("disc2(f2)".into(), format!("{d2:.6e}")));

    let (_, rem) = p3.divrem(&p2);
    let divides = rem.norm_inf() <= threshold * n3.max(1e-300) && f3.y_multiplicity() >= f2.y_multiplicity();
    holds[1] = n3 == 0.0 || divides;
    wit.push(("f2 divides f3".into(), holds[1].to_string()));

    let d6 = disc(&f6.dehomogenize(), 6);
    holds[2] = scaled(d6, n6.powi(10));
    wit.push(("disc6(4f2f4-f3^2)".into(), format!("{d6:.6e}")));

    let d3 = disc(&p3, 3);
    holds[3] = scaled(d3, n3.max(1e-300).powi(4));
    wit.push(("disc3(f3)".into(), format!("{d3:.6e}")));

    let r34 = resultant(&p3, &p4, 3, 4);
    holds[4] = scaled(r34, n3.max(1e-300).powi(4) * n4.powi(3));
    wit.push(("res(f3,f4)".into(), format!("{r34:.6e}")));

    let g23 = g_ij(&p2, &p3, 2, 3);
    let g24 = g_ij(&p2, &p4, 2, 4);
    let g34 = g_ij(&p3, &p4, 3, 4);
    let s23 = g23.norm_inf().max(1e-300);
    let s24 = g24.norm_inf().max(1e-300);
    let s34 = g34.norm_inf().max(1e-300);

    let r_e6 = resultant(&g23, &g24, 3, 4);
    holds[5] = scaled(r_e6, s23.powi(4) * s24.powi(3));
    wit.push(("res(g23,g24)".into(), format!("{r_e6:.6e}")));

    let r_e7 = resultant(&g24, &g34, 4, 5);
    holds[6] = scaled(r_e7, s24.powi(5) * s34.powi(4));
    wit.push(("res(g24,g34)".into(), format!("{r_e7:.6e}")));

    let f2sq = p2.mul_poly(&p2);
    let phi34 = phi_f64(&p3, &f2sq, &p4, 3, 4);
    holds[7] = phi34.is_nan() || scaled(phi34, n3.max(1e-300).powi(6) * n2.powi(6) * n4.powi(3));
    wit.push(("phi34(f3,f2^2,f4)".into(), format!("{phi34:.6e}")));

    let (p, q, r) = build_pqr(&p2, &p3, &p4);
    let d8 = disc(&p, 8);
    let np = p.norm_inf().max(1e-300);
    holds[8] = scaled(d8, np.powi(14));
    wit.push(("disc8(P)".into(), format!("{d8:.6e}")));

    let r2 = r.mul_poly(&r).with_nominal(18);
    let phi818 = phi_f64(&p, &q, &r2, 8, 18);
    let sq = q.norm_inf().max(1e-300);
    let sr = r2.norm_inf().max(1e-300);
    holds[9] = scaled(phi818, np.powi(119) * sq.powi(28) * sr.powi(28)) || phi818.is_nan();
    wit.push(("phi818(P,Q,R^2)".into(), format!("{phi818:.6e}")));

    let e11_poly = &p4.scale(&4.0) - &f2sq;
    let r_e11 = resultant(&p3, &e11_poly.with_nominal(4), 3, 4);
    holds[10] = scaled(r_e11, n3.max(1e-300).powi(4) * e11_poly.norm_inf().max(1e-300).powi(3));
    wit.push(("res(f3,4f4-f2^2)".into(), format!("{r_e11:.6e}")));

    GenericityReport {
        holds,
        witnesses: wit,
        exact: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    type P = UniPoly<Rat>;

    fn rand_int_poly(rng: &mut StdRng, nominal: usize, lo: i64, hi: i64) -> P {
        P::new((0..=nominal).map(|_| rat_int(rng.gen_range(lo..hi))).collect())
    }

    #[test]
    fn phi22_is_det() {
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..30 {
            let f = rand_int_poly(&mut rng, 2, -6, 7);
            let g = rand_int_poly(&mut rng, 2, -6, 7);
            let h = rand_int_poly(&mut rng, 2, -6, 7);
            if f.is_zero() {
                continue;
            }
            let det = crate::polycore::det_gauss(vec![
                vec![f.coeffs[0].clone(), g.coeffs[0].clone(), h.coeffs[0].clone()],
                vec![f.coeffs[1].clone(), g.coeffs[1].clone(), h.coeffs[1].clone()],
                vec![f.coeffs[2].clone(), g.coeffs[2].clone(), h.coeffs[2].clone()],
            ]);
            assert_eq!(phi(&f, &g, &h, 2, 2).unwrap(), det);
        }
    }

    #[test]
    fn phi_monomial_pencil_identity() {
        // Φ_{m,n}(f, x^{n−1}(b0x+b1), x^{n−1}(c0x+c1))
        //   = a_m^{(m−1)(n−1)}·(b0c1−b1c0)^{C(m,2)}
        let mut rng = StdRng::seed_from_u64(22);
        for _ in 0..20 {
            let m = rng.gen_range(2usize..5);
            let n = rng.gen_range(2usize..5);
            let f = rand_int_poly(&mut rng, m, -5, 6);
            if f.is_zero() {
                continue;
            }
            let (b0, b1, c0, c1) = (
                rng.gen_range(-4i64..5),
                rng.gen_range(-4i64..5),
                rng.gen_range(-4i64..5),
                rng.gen_range(-4i64..5),
            );
            let mut gc = vec![rat_int(b0), rat_int(b1)];
            gc.extend(std::iter::repeat_with(|| rat_int(0)).take(n - 1));
            let mut hc = vec![rat_int(c0), rat_int(c1)];
            hc.extend(std::iter::repeat_with(|| rat_int(0)).take(n - 1));
            let g = P::new(gc);
            let h = P::new(hc);
            let am = f.coeffs[m].clone();
            let want = pow_rat(&am, (m - 1) * (n - 1))
                * pow_rat(&rat_int(b0 * c1 - b1 * c0), binom2(m));
            assert_eq!(phi(&f, &g, &h, m, n).unwrap(), want, "m={m} n={n}");
        }
    }

    #[test]
    fn phi23_fourteen_terms() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..25 {
            let f = rand_int_poly(&mut rng, 2, -5, 6);
            let g = rand_int_poly(&mut rng, 3, -5, 6);
            let h = rand_int_poly(&mut rng, 3, -5, 6);
            if f.is_zero() {
                continue;
            }
            let a = |i: usize| f.coeffs[i].clone();
            let b = |i: usize| g.coeffs[i].clone();
            let c = |i: usize| h.coeffs[i].clone();
            let want = a(0).clone() * a(0) * b(2) * c(3) - a(0) * a(2) * b(2) * c(1)
                + a(1) * a(2) * b(2) * c(0)
                - a(0) * a(1) * b(1) * c(3)
                + a(1) * a(1) * b(0) * c(3)
                - a(0) * a(2) * b(0) * c(3)
                + a(2) * a(2) * b(0) * c(1)
                - a(0) * a(0) * b(3) * c(2)
                + a(0) * a(2) * b(1) * c(2)
                - a(1) * a(2) * b(0) * c(2)
                + a(0) * a(1) * b(3) * c(1)
                - a(1) * a(1) * b(3) * c(0)
                + a(0) * a(2) * b(3) * c(0)
                - a(2) * a(2) * b(1) * c(0);
            assert_eq!(phi(&f, &g, &h, 2, 3).unwrap(), want);
        }
    }

    #[test]
    fn psi_detects_planted_common_factor() {
        let mut rng = StdRng::seed_from_u64(24);
        for _ in 0..10 {
            // f = p·u, and g,h with g+h = p·w ⇒ Ψ = 0 for the member s=t=1
            let p = rand_int_poly(&mut rng, 2, -4, 5);
            if p.degree() < 2 {
                continue;
            }
            let u = rand_int_poly(&mut rng, 2, -4, 5);
            let w = rand_int_poly(&mut rng, 2, -4, 5);
            let f = p.mul_poly(&u).with_nominal(4);
            let h = rand_int_poly(&mut rng, 4, -4, 5);
            let g = &p.mul_poly(&w).with_nominal(4) - &h;
            let v = psi(&f, &g, &h, 4, 4).unwrap();
            assert!(v.is_zero(), "Ψ must vanish on a planted quadratic factor");
        }
    }

    #[test]
    fn psi_trivia() {
        // double root ⇒ Ψ = 0 via the disc factor
        let f = P::from_i64(&[1, -2, 1]); // (x−1)²
        let g = P::from_i64(&[1, 0, 0]);
        let h = P::from_i64(&[0, 1, 0]);
        assert!(psi(&f, &g, &h, 2, 2).unwrap().is_zero());
        // g = h ⇒ Φ = 0
        let f = P::from_i64(&[1, 0, -2]);
        assert!(phi(&f, &g, &g, 2, 2).unwrap().is_zero());
        // random separable with generic g,h ⇒ Ψ ≠ 0
        let mut rng = StdRng::seed_from_u64(25);
        let mut nonzero = 0;
        for _ in 0..20 {
            let f = rand_int_poly(&mut rng, 3, -6, 7);
            let g = rand_int_poly(&mut rng, 3, -6, 7);
            let h = rand_int_poly(&mut rng, 3, -6, 7);
            if f.is_zero() || disc(&f, 3).is_zero() {
                continue;
            }
            if !psi(&f, &g, &h, 3, 3).unwrap().is_zero() {
                nonzero += 1;
            }
        }
        assert!(nonzero >= 18);
    }

    #[test]
    fn g_ij_example_and_syzygy() {
        // f₂ = x²−x+1, f₃ = x²−1 ⇒ g₂₃ = −2x³−x²+10x−3
        let f2 = P::from_i64(&[1, -1, 1]);
        let f3 = P::from_i64(&[0, 1, 0, -1]);
        let g23 = g_ij(&f2, &f3, 2, 3);
        assert_eq!(g23.trimmed(), P::from_i64(&[-2, -1, 10, -3]));
        // antisymmetry
        assert!(g_ij(&f2, &f2, 2, 2).is_zero());
        // syzygy 2f₂g₃₄ − 3f₃g₂₄ + 4f₄g₂₃ = 0
        let mut rng = StdRng::seed_from_u64(26);
        for _ in 0..30 {
            let f2 = rand_int_poly(&mut rng, 2, -5, 6);
            let f3 = rand_int_poly(&mut rng, 3, -5, 6);
            let f4 = rand_int_poly(&mut rng, 4, -5, 6);
            let g23 = g_ij(&f2, &f3, 2, 3);
            let g24 = g_ij(&f2, &f4, 2, 4);
            let g34 = g_ij(&f3, &f4, 3, 4);
            let s = &(&f2.scale(&rat_int(2)) * &g34) - &(&f3.scale(&rat_int(3)) * &g24);
            let s = &s + &(&f4.scale(&rat_int(4)) * &g23);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn multidegree_laws() {
        let mut rng = StdRng::seed_from_u64(27);
        for lam in [rat_int(2), rat_int(-3), crate::scalar::rat(1, 5)] {
            let m = 3usize;
            let n = 3usize;
            let f = rand_int_poly(&mut rng, m, -5, 6);
            let g = rand_int_poly(&mut rng, n, -5, 6);
            let h = rand_int_poly(&mut rng, n, -5, 6);
            if f.is_zero() {
                continue;
            }
            let base = phi(&f, &g, &h, m, n).unwrap();
            let lf = phi(&f.scale(&lam), &g, &h, m, n).unwrap();
            assert_eq!(lf, pow_rat(&lam, (m - 1) * (n - 1)) * base.clone());
            let lg = phi(&f, &g.scale(&lam), &h, m, n).unwrap();
            assert_eq!(lg, pow_rat(&lam, binom2(m)) * base.clone());
            let lh = phi(&f, &g, &h.scale(&lam), m, n).unwrap();
            assert_eq!(lh, pow_rat(&lam, binom2(m)) * base);
        }
    }

    #[test]
    fn resultant_relation() {
        // Φ_{m,n+d}(f, pg, ph) = Res_{m,d}(f,p)^{m−1}·Φ_{m,n}(f,g,h)
        let mut rng = StdRng::seed_from_u64(28);
        for _ in 0..8 {
            let m = 3usize;
            let n = 2usize;
            let d = 2usize;
            let f = rand_int_poly(&mut rng, m, -4, 5);
            let g = rand_int_poly(&mut rng, n, -4, 5);
            let h = rand_int_poly(&mut rng, n, -4, 5);
            let p = rand_int_poly(&mut rng, d, -4, 5);
            if f.is_zero() {
                continue;
            }
            let lhs = phi(&f, &p.mul_poly(&g), &p.mul_poly(&h), m, n + d).unwrap();
            let res = resultant(&f, &p, m, d);
            let rhs = pow_rat(&res, m - 1) * phi(&f, &g, &h, m, n).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dual_routes_agree() {
        let mut rng = StdRng::seed_from_u64(29);
        let mut checked = 0;
        for _ in 0..25 {
            let m = rng.gen_range(2usize..4);
            let n = rng.gen_range(2usize..4);
            let f = rand_int_poly(&mut rng, m, -5, 6);
            let g = rand_int_poly(&mut rng, n, -5, 6);
            let h = rand_int_poly(&mut rng, n, -5, 6);
            if f.is_zero() {
                continue;
            }
            let a = phi(&f, &g, &h, m, n).unwrap();
            let b = phi_via_resultants(&f, &g, &h, m, n).unwrap();
            assert_eq!(a, b, "routes disagree for m={m}, n={n}");
            checked += 1;
        }
        assert!(checked > 15);
    }

    #[test]
    fn degenerate_inputs_via_interpolation() {
        // deg f < m (root at infinity): Φ₃,₄ of the §-style data
        let f3 = P::from_i64(&[0, 1, 0, -1]); // x²−1 at nominal 3
        let f2sq = P::from_i64(&[1, -1, 1]).pow(2);
        let f4 = P::from_i64(&[1, 0, 0, 0, 1]);
        let v = phi(&f3, &f2sq, &f4, 3, 4).unwrap();
        assert_eq!(v, rat_int(56));
        // repeated roots: still a well-defined polynomial value
        let f = P::from_i64(&[1, -2, 1]); // (x−1)²
        let g = P::from_i64(&[1, 1, 0]);
        let h = P::from_i64(&[2, 0, 1]);
        let direct = {
            // Φ₂,₂ = det of the coefficient matrix, defined for all inputs
            crate::polycore::det_gauss(vec![
                vec![f.coeffs[0].clone(), g.coeffs[0].clone(), h.coeffs[0].clone()],
                vec![f.coeffs[1].clone(), g.coeffs[1].clone(), h.coeffs[1].clone()],
                vec![f.coeffs[2].clone(), g.coeffs[2].clone(), h.coeffs[2].clone()],
            ])
        };
        assert_eq!(phi(&f, &g, &h, 2, 2).unwrap(), direct);
    }

    #[test]
    fn genericity_flags_trivia() {
        use crate::polycore::BinaryForm;
        // f₂ = x² ⇒ E1
        let f2: BinaryForm<Rat> = BinaryForm::from_i64(&[1, 0, 0]);
        let f3: BinaryForm<Rat> = BinaryForm::from_i64(&[1, 0, 0, 1]);
        let f4: BinaryForm<Rat> = BinaryForm::from_i64(&[1, 0, 0, 0, 1]);
        let rep = genericity(&f2, &f3, &f4).unwrap();
        assert!(rep.holds[0]);
        // f₃ = 0 ⇒ E2 and E4
        let f2: BinaryForm<Rat> = BinaryForm::from_i64(&[1, 1, 1]);
        let z3: BinaryForm<Rat> = BinaryForm::zero(3);
        let rep = genericity(&f2, &z3, &f4).unwrap();
        assert!(rep.holds[1] && rep.holds[3]);
    }
}
