//! Representations by the norm form ⟨1,q⟩: f = η² + q·ξ².
//!
//! Existence, full enumeration, and counting. A psd univariate f splits into
//! a positive constant times psd quadratic factors; each factor has a unique
//! λ ≥ 0 with factor − λ·q a square, and the branch pairs combine through
//! both signs of the multiplication rule
//! (a²+b²q)(c²+d²q) = (ac±bdq)² + (ad∓bc)²q.
//!
//! The float path is fully general. The exact path promotes rationals into a
//! single quadratic extension ℚ(√r) per solution family and reports
//! `ExactUnavailable` when the enumeration would genuinely leave that field
//! (off-center factors provably force nested radicals).

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polycore::{
    cluster_complex, cluster_vectors, complex_roots, psd_binary, sturm_real_root_count,
    BinaryForm, UniPoly,
};
use crate::scalar::{Ext, Rat, RealScalar, Scalar};

/// A solution of f = η² + q·ξ².
#[derive(Clone, Debug)]
pub struct NormRep<K: Scalar> {
    pub xi: UniPoly<K>,
    pub eta: UniPoly<K>,
    pub q: UniPoly<K>,
}

/// Monic psd quadratic factor (x+a)² + b², tracked by (a, b²).
#[derive(Clone, Debug)]
pub(crate) struct QuadFactor<K> {
    pub(crate) a: K,
    pub(crate) bsq: K,
    pub(crate) mult: usize,
}

/// psd test for univariate polynomials: p ≥ 0 on ℝ iff its homogenization
/// to the next even degree is a psd binary form.
pub fn psd_univariate<K: RealScalar>(p: &UniPoly<K>) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    let d = p.trimmed().degree();
    let even = d + (d % 2);
    psd_binary(&BinaryForm::homogenize_to(&p.trimmed(), even))
}

/// The unique λ ≥ 0 making (x+a)²+b² − λ(x²+1) a square: λ = min{1, b²} for
/// a = 0, otherwise the root of (1−λ)(a²+b²−λ) − a² in [0,1).
pub fn quadratic_lambda<K: RealScalar>(a: &K, b: &K) -> Result<K> {
    lambda_from_a_bsq(a, &b.mul_ref(b))
}

fn lambda_from_a_bsq<K: RealScalar>(a: &K, bsq: &K) -> Result<K> {
    // λ² − σλ + b² = 0 with σ = 1+a²+b²; the branch in [0,1) written
    // without cancellation: λ = 2b²/(σ + √(σ²−4b²)). For a = 0 the radical
    // collapses to |1−b²| and λ = min{1, b²}.
    let sigma = K::one().add_ref(&a.mul_ref(a)).add_ref(bsq);
    let disc = sigma
        .mul_ref(&sigma)
        .sub_ref(&K::from_i64(4).mul_ref(bsq));
    let root = disc.abs_ref().sqrt_psd().ok_or_else(|| {
        Error::ExactUnavailable("λ needs a square root outside the current field".into())
    })?;
    Ok(K::from_i64(2)
        .mul_ref(bsq)
        .div_ref(&sigma.add_ref(&root)))
}

/// Base branch pair (η, ξ) for a monic psd quadratic factor against q=x²+1.
/// Both coefficients of η are taken as square roots — η = √(1−λ)·x ±
/// √(a²+b²−λ) with the sign of a — which is an identity by the λ equation
/// and avoids the a→0 cancellation of the a/√(1−λ) form.
fn factor_base_pair<K: RealScalar>(a: &K, bsq: &K) -> Result<(UniPoly<K>, UniPoly<K>)> {
    if bsq.is_zero() {
        // (x+a)² = (x+a)² + 0²·q
        return Ok((
            UniPoly::new(vec![K::one(), a.clone()]),
            UniPoly::zero(0),
        ));
    }
    let sqrt_err =
        || Error::ExactUnavailable("branch pair needs a square root outside the field".into());
    let clamp_sqrt = |v: K| -> Option<K> {
        if K::EXACT {
            v.sqrt_psd()
        } else {
            // float noise below zero is legitimate rounding
            v.abs_ref().sqrt_psd()
        }
    };
    if a.is_zero() {
        // λ = min{1, b²}, written directly so λ = 1 gives an exactly-zero x
        // coefficient (the radical form would amplify ulp noise in b²)
        let one = K::one();
        return if bsq < &one {
            let s = clamp_sqrt(one.sub_ref(bsq)).ok_or_else(sqrt_err)?;
            let xi0 = clamp_sqrt(bsq.clone()).ok_or_else(sqrt_err)?;
            if !s.compatible_with(&xi0) {
                return Err(sqrt_err());
            }
            Ok((UniPoly::new(vec![s, K::zero()]), UniPoly::constant(xi0)))
        } else {
            let eta0 = clamp_sqrt(bsq.sub_ref(&one)).ok_or_else(sqrt_err)?;
            Ok((UniPoly::constant(eta0), UniPoly::one()))
        };
    }
    let lam = lambda_from_a_bsq(a, bsq)?;
    let s = clamp_sqrt(K::one().sub_ref(&lam)).ok_or_else(sqrt_err)?;
    let c = clamp_sqrt(a.mul_ref(a).add_ref(bsq).sub_ref(&lam)).ok_or_else(sqrt_err)?;
    let c = if a.signum_i() < 0 { c.neg_ref() } else { c };
    let xi0 = clamp_sqrt(lam).ok_or_else(sqrt_err)?;
    if !s.compatible_with(&c) || !s.compatible_with(&xi0) || !c.compatible_with(&xi0) {
        return Err(sqrt_err());
    }
    Ok((UniPoly::new(vec![s, c]), UniPoly::constant(xi0)))
}

/// One multiplication step: (A²+B²q)(c²+d²q) = (Ac±Bdq)² + (Ad∓Bc)²q.
fn combine<K: Scalar>(
    acc: &(UniPoly<K>, UniPoly<K>),
    fac: &(UniPoly<K>, UniPoly<K>),
    q: &UniPoly<K>,
    plus: bool,
) -> (UniPoly<K>, UniPoly<K>) {
    let (a, b) = acc;
    let (c, d) = fac;
    let ac = a.mul_poly(c);
    let bdq = b.mul_poly(d).mul_poly(q);
    let ad = a.mul_poly(d);
    let bc = b.mul_poly(c);
    if plus {
        (ac.add_poly(&bdq), ad.sub_poly(&bc))
    } else {
        (ac.sub_poly(&bdq), ad.add_poly(&bc))
    }
}

fn fold_branches<K: Scalar>(
    start: (UniPoly<K>, UniPoly<K>),
    factors: &[(UniPoly<K>, UniPoly<K>)],
    q: &UniPoly<K>,
) -> Vec<(UniPoly<K>, UniPoly<K>)> {
    let mut acc = vec![start];
    for fac in factors {
        let mut next = Vec::with_capacity(acc.len() * 2);
        for s in &acc {
            next.push(combine(s, fac, q, true));
            next.push(combine(s, fac, q, false));
        }
        acc = next;
    }
    acc
}

/// Factor a psd polynomial into the enumeration data: a real multiplier
/// (leading constant and real-rooted content) and the psd quadratic factor
/// list. Exact scalars go through square-free levels; floats through
/// clustered companion roots.
pub(crate) fn psd_factors<K: RealScalar>(
    f: &UniPoly<K>,
    q_monic: &UniPoly<K>,
) -> Result<(UniPoly<K>, Vec<QuadFactor<K>>)> {
    if K::EXACT {
        psd_factors_exact(f, q_monic)
    } else {
        let (m, quads) = psd_factors_float(&f.map(|c| c.to_f64()))?;
        Ok((
            m.map(|c| K::from_f64(*c)),
            quads
                .into_iter()
                .map(|qf| QuadFactor {
                    a: K::from_f64(qf.a),
                    bsq: K::from_f64(qf.bsq),
                    mult: qf.mult,
                })
                .collect(),
        ))
    }
}

/// Exact path: factor a psd rational/extension polynomial into the enum data.
/// Returns (multiplier from real-rooted content, quadratic factor list).
fn psd_factors_exact<K: RealScalar>(
    f: &UniPoly<K>,
    q_monic: &UniPoly<K>,
) -> Result<(UniPoly<K>, Vec<QuadFactor<K>>)> {
    debug_assert!(K::EXACT);
    let f = f.trimmed();
    let mut multiplier = UniPoly::constant(
        f.lc()
            .sqrt_psd()
            .ok_or_else(|| Error::ExactUnavailable("leading coefficient is not a square".into()))?,
    );
    let mut quads: Vec<QuadFactor<K>> = Vec::new();
    let levels = f.squarefree_levels();
    for (idx, level) in levels.iter().enumerate() {
        let mult = idx + 1;
        let mut s = level.clone();
        if s.degree() == 0 {
            continue;
        }
        // pull out copies of q first (they are legitimate branch factors)
        loop {
            let (qt, r) = s.divrem(q_monic);
            if r.is_zero() && s.degree() >= 2 {
                quads.push(QuadFactor {
                    a: q_monic.coeffs[1].div_ref(&K::from_i64(2)),
                    bsq: q_monic.coeffs[2].sub_ref(
                        &q_monic.coeffs[1].mul_ref(&q_monic.coeffs[1]).div_ref(&K::from_i64(4)),
                    ),
                    mult,
                });
                s = qt.trimmed();
            } else {
                break;
            }
        }
        match s.degree() {
            0 => {}
            1 => {
                // (x+a) at level m: psd forces m even; contributes (x+a)^{m/2}
                if mult % 2 != 0 {
                    return Err(Error::NotPsd);
                }
                let a = s.monic().coeffs[1].clone();
                let lin = UniPoly::new(vec![K::one(), a]);
                for _ in 0..mult / 2 {
                    multiplier = multiplier.mul_poly(&lin);
                }
            }
            2 => {
                let sm = s.monic();
                let a = sm.coeffs[1].div_ref(&K::from_i64(2));
                let bsq = sm.coeffs[2].sub_ref(&a.mul_ref(&a));
                match bsq.signum_i() {
                    1 => quads.push(QuadFactor { a, bsq, mult }),
                    _ => {
                        // two real roots (square-free ⇒ distinct); psd forces
                        // even multiplicity, handled as a real block
                        if mult % 2 != 0 {
                            return Err(Error::NotPsd);
                        }
                        for _ in 0..mult / 2 {
                            multiplier = multiplier.mul_poly(&sm);
                        }
                    }
                }
            }
            _ => {
                let mut s = s.monic();
                let real = sturm_real_root_count(&s);
                if real > 0 {
                    if mult % 2 != 0 {
                        return Err(Error::NotPsd);
                    }
                    // pull exactly-verified rational real roots
                    for r in rational_real_roots(&s) {
                        let lin = UniPoly::new(vec![K::one(), K::from_rat(&r).neg_ref()]);
                        s = s.exact_div(&lin);
                        for _ in 0..mult / 2 {
                            multiplier = multiplier.mul_poly(&lin);
                        }
                    }
                    let real_left = sturm_real_root_count(&s);
                    if real_left > 0 {
                        if real_left == s.degree() {
                            // block of irrational real roots, even level
                            for _ in 0..mult / 2 {
                                multiplier = multiplier.mul_poly(&s);
                            }
                            s = UniPoly::one();
                        } else {
                            return Err(Error::ExactUnavailable(
                                "mixed real/complex square-free factor cannot be split \
                                 in a single quadratic extension"
                                    .into(),
                            ));
                        }
                    }
                }
                match s.degree() {
                    0 => {}
                    2 => {
                        let a = s.coeffs[1].div_ref(&K::from_i64(2));
                        let bsq = s.coeffs[2].sub_ref(&a.mul_ref(&a));
                        quads.push(QuadFactor { a, bsq, mult });
                    }
                    _ => {
                        let parts = split_rational_quadratics(&s).ok_or_else(|| {
                            Error::ExactUnavailable(format!(
                                "square-free factor of degree {} needs splitting beyond \
                                 rational quadratics",
                                s.degree()
                            ))
                        })?;
                        for (a, bsq) in parts {
                            quads.push(QuadFactor { a, bsq, mult });
                        }
                    }
                }
            }
        }
    }
    Ok((multiplier, quads))
}

/// Best rational approximation with bounded denominator (continued
/// fractions); candidates are only accepted after exact verification, so a
/// miss is safe.
fn rationalize(x: f64, max_den: u64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let mut p_prev = BigInt::from(1);
    let mut p = BigInt::from(x.floor() as i64);
    let mut q_prev = BigInt::from(0);
    let mut q = BigInt::from(1);
    let mut frac = x - x.floor();
    for _ in 0..64 {
        let cand = Rat::new(p.clone(), q.clone());
        if (crate::scalar::rat_to_f64(&cand) - x).abs() <= 1e-9 * (1.0 + x.abs()) {
            return Some(cand);
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        frac = inv - a;
        let ai = BigInt::from(a as i64);
        let p_next = &ai * &p + &p_prev;
        let q_next = &ai * &q + &q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        if q > BigInt::from(max_den) {
            break;
        }
    }
    None
}

/// Rational real roots of a monic exact polynomial, found from float roots
/// and certified by exact evaluation.
fn rational_real_roots<K: RealScalar>(s: &UniPoly<K>) -> Vec<Rat> {
    let sf = s.map(|c| c.to_f64());
    let mut out = Vec::new();
    for z in complex_roots(&sf) {
        if z.im.abs() > 1e-7 * (1.0 + z.norm()) {
            continue;
        }
        if let Some(r) = rationalize(z.re, 1_000_000_000) {
            let val = s.eval(&K::from_rat(&r));
            if val.is_zero() && !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

/// Split a monic square-free exact polynomial with no real roots into monic
/// psd quadratics (a, b²), reconstructing rational candidates from float
/// roots and verifying by exact division. Returns None when a factor
/// resists rational reconstruction.
fn split_rational_quadratics<K: RealScalar>(s: &UniPoly<K>) -> Option<Vec<(K, K)>> {
    if s.degree() % 2 != 0 {
        return None;
    }
    let quad_data = |p: &UniPoly<K>| -> (K, K) {
        let a = p.coeffs[1].div_ref(&K::from_i64(2));
        let bsq = p.coeffs[2].sub_ref(&a.mul_ref(&a));
        (a, bsq)
    };
    let mut rest = s.clone();
    let mut out = Vec::new();
    while rest.degree() > 2 {
        let rf = rest.map(|c| c.to_f64());
        let roots = complex_roots(&rf);
        let mut advanced = false;
        for z in roots.iter().filter(|z| z.im > 0.0) {
            let beta = match rationalize(-2.0 * z.re, 1_000_000) {
                Some(b) => b,
                None => continue,
            };
            let gamma = match rationalize(z.norm_sqr(), 1_000_000) {
                Some(g) => g,
                None => continue,
            };
            let quad = UniPoly::new(vec![K::one(), K::from_rat(&beta), K::from_rat(&gamma)]);
            let (qt, r) = rest.divrem(&quad);
            if r.is_zero() {
                let (a, bsq) = quad_data(&quad);
                if bsq.signum_i() <= 0 {
                    return None;
                }
                out.push((a, bsq));
                rest = qt.trimmed().monic();
                advanced = true;
                break;
            }
        }
        if !advanced {
            return None;
        }
    }
    if rest.degree() == 2 {
        out.push(quad_data(&rest));
    } else if rest.degree() != 0 {
        return None;
    }
    Some(out)
}

/// Float path: factor a psd polynomial via clustered companion roots.
fn psd_factors_float(f: &UniPoly<f64>) -> Result<(UniPoly<f64>, Vec<QuadFactor<f64>>)> {
    let f = f.trimmed();
    let c = f.lc();
    if c <= 0.0 {
        return Err(Error::NotPsd);
    }
    let mut multiplier = UniPoly::constant(c.sqrt());
    let mut quads = Vec::new();
    if f.degree() == 0 {
        return Ok((multiplier, quads));
    }
    let roots = complex_roots(&f);
    let scale: f64 = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    // multiplicity clustering: a k-fold root smears ~ε^{1/k} in f64
    let tol = 2e-3 * scale;
    let clusters = cluster_complex(&roots, tol);
    let mut used = 0usize;
    let mut complex_clusters: Vec<(crate::polycore::C64, usize)> = Vec::new();
    for (z, k) in clusters {
        let z = if k > 1 {
            crate::polycore::polish_multiple_root(&f, z, k)
        } else {
            z
        };
        if z.im.abs() <= tol {
            // real cluster: even size, root multiplicity k
            if k % 2 != 0 {
                return Err(Error::NotPsd);
            }
            let lin = UniPoly::new(vec![1.0, -z.re]);
            for _ in 0..k / 2 {
                multiplier = multiplier.mul_poly(&lin);
            }
            used += k;
        } else if z.im > 0.0 {
            complex_clusters.push((z, k));
            used += 2 * k;
        }
    }
    if used != f.degree() {
        return Err(Error::AmbiguousClustering(format!(
            "factor clustering covered {} of degree {}",
            used,
            f.degree()
        )));
    }
    for (z, k) in complex_clusters {
        // clustered centers carry f64 noise; a center that is numerically on
        // the imaginary axis must be snapped there or the λ/η formulas sit
        // on the wrong branch
        let re = if z.re.abs() <= 1e-10 * (1.0 + z.norm()) {
            0.0
        } else {
            z.re
        };
        quads.push(QuadFactor {
            a: -re,
            bsq: z.im * z.im,
            mult: k,
        });
    }
    Ok((multiplier, quads))
}

/// Positive-definite quadratic normal data: q = A((x+β)² + γ²), γ > 0.
struct QNormal<K> {
    beta: K,
    gamma_sq: K,
    scale: K, // A·γ²: q(γu−β) = scale·(u²+1)
}

fn q_normal<K: RealScalar>(q: &UniPoly<K>) -> Result<QNormal<K>> {
    let q = q.trimmed();
    if q.degree() != 2 {
        return Err(Error::NotPositiveDefinite);
    }
    let a = q.coeffs[0].clone();
    if a.signum_i() <= 0 {
        return Err(Error::NotPositiveDefinite);
    }
    let beta = q.coeffs[1].div_ref(&a).div_ref(&K::from_i64(2));
    let gamma_sq = q.coeffs[2].div_ref(&a).sub_ref(&beta.mul_ref(&beta));
    if gamma_sq.signum_i() <= 0 {
        return Err(Error::NotPositiveDefinite);
    }
    let scale = a.mul_ref(&gamma_sq);
    Ok(QNormal {
        beta,
        gamma_sq,
        scale,
    })
}

fn dedupe_exact<K: RealScalar>(
    mut sols: Vec<(UniPoly<K>, UniPoly<K>)>,
) -> Vec<(UniPoly<K>, UniPoly<K>)> {
    let mut out: Vec<(UniPoly<K>, UniPoly<K>)> = Vec::new();
    for s in sols.drain(..) {
        if !out
            .iter()
            .any(|t| t.0.trimmed() == s.0.trimmed() && t.1.trimmed() == s.1.trimmed())
        {
            out.push(s);
        }
    }
    out
}

fn dedupe_float(
    sols: Vec<(UniPoly<f64>, UniPoly<f64>)>,
    d_eta: usize,
    d_xi: usize,
    scale: f64,
) -> Result<Vec<(UniPoly<f64>, UniPoly<f64>)>> {
    let vecs: Vec<Vec<f64>> = sols
        .iter()
        .map(|(e, x)| {
            let mut v = Vec::with_capacity(d_eta + d_xi + 2);
            let ep = e.with_nominal(d_eta);
            let xp = x.with_nominal(d_xi);
            v.extend(ep.coeffs.iter());
            v.extend(xp.coeffs.iter());
            v
        })
        .collect();
    let groups = cluster_vectors(&vecs, 1e-6 * scale.max(1.0), 10.0)?;
    Ok(groups.into_iter().map(|g| sols[g[0]].clone()).collect())
}

fn sign_closure<K: Scalar>(
    sols: Vec<(UniPoly<K>, UniPoly<K>)>,
) -> Vec<(UniPoly<K>, UniPoly<K>)> {
    let mut out = Vec::with_capacity(sols.len() * 4);
    for (e, x) in sols {
        out.push((e.clone(), x.clone()));
        out.push((e.neg_poly(), x.clone()));
        out.push((e.clone(), x.neg_poly()));
        out.push((e.neg_poly(), x.neg_poly()));
    }
    out
}

/// Shared enumeration core.
fn represent_core<K: RealScalar>(
    f: &UniPoly<K>,
    q: &UniPoly<K>,
) -> Result<Vec<(UniPoly<K>, UniPoly<K>)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !psd_univariate(f)? {
        return Err(Error::NotPsd);
    }
    let qn = q_normal(q)?;
    let gamma = qn.gamma_sq.sqrt_psd().ok_or_else(|| {
        Error::ExactUnavailable("normalizing q needs √γ² outside the field".into())
    })?;
    let sqrt_scale = qn.scale.sqrt_psd().ok_or_else(|| {
        Error::ExactUnavailable("normalizing q needs √(Aγ²) outside the field".into())
    })?;
    // substitute x = γu − β, getting f̃ = H² + (u²+1)·X² with ξ = X/√(Aγ²)
    let ft = f.compose_affine(&gamma, &qn.beta.neg_ref());
    let q0: UniPoly<K> = UniPoly::new(vec![K::one(), K::zero(), K::one()]);
    let q_monic = q.trimmed().monic();
    let q0_from_q = q_monic.compose_affine(&gamma, &qn.beta.neg_ref());
    debug_assert!(
        !K::EXACT || q0_from_q.scale(&K::one().div_ref(&qn.gamma_sq)) == q0,
        "q normalization must send q to γ²(u²+1)"
    );
    let (multiplier, quads) = psd_factors(&ft, &q0)?;
    let mut branch_factors = Vec::new();
    for qf in &quads {
        let base = factor_base_pair(&qf.a, &qf.bsq)?;
        for _ in 0..qf.mult {
            branch_factors.push(base.clone());
        }
    }
    if K::EXACT {
        // every leaf combines all of these, so a single quadratic extension
        // must carry the whole enumeration
        let mut key: Option<num_bigint::BigInt> = None;
        let mut admit = |v: &K| -> Result<()> {
            if let Some(r) = v.radical_key() {
                match &key {
                    None => key = Some(r),
                    Some(k) if *k == r => {}
                    Some(_) => {
                        return Err(Error::ExactUnavailable(
                            "enumeration needs two independent radicals".into(),
                        ))
                    }
                }
            }
            Ok(())
        };
        admit(&gamma)?;
        admit(&sqrt_scale)?;
        for c in &multiplier.coeffs {
            admit(c)?;
        }
        for (e, x) in &branch_factors {
            for c in e.coeffs.iter().chain(x.coeffs.iter()) {
                admit(c)?;
            }
        }
    }
    let start = (multiplier, UniPoly::zero(0));
    let leaves = fold_branches(start, &branch_factors, &q0);
    // undo the substitution: u = (x+β)/γ and ξ = X/√(Aγ²)
    let inv_gamma = K::one().div_ref(&gamma);
    let shift = qn.beta.div_ref(&gamma);
    let mut sols = Vec::with_capacity(leaves.len());
    for (h, x) in leaves {
        let eta = h.compose_affine(&inv_gamma, &shift);
        let xi = x
            .compose_affine(&inv_gamma, &shift)
            .scale(&K::one().div_ref(&sqrt_scale));
        sols.push((eta, xi));
    }
    Ok(sign_closure(sols))
}

fn verify_rep<K: RealScalar>(
    f: &UniPoly<K>,
    q: &UniPoly<K>,
    eta: &UniPoly<K>,
    xi: &UniPoly<K>,
) -> Result<()> {
    let lhs = eta.mul_poly(eta).add_poly(&q.mul_poly(&xi.mul_poly(xi)));
    let diff = lhs.sub_poly(f);
    if K::EXACT {
        if !diff.is_zero() {
            return Err(Error::Numerical("exact norm representation failed".into()));
        }
    } else {
        let tol = 1e-10 * (1.0 + f.norm_inf());
        if diff.norm_inf() > tol {
            return Err(Error::DivisionResidual {
                residual: diff.norm_inf(),
                tol,
            });
        }
    }
    Ok(())
}

/// All solutions of f = η² + q·ξ² on the float path.
pub fn represent_f64(f: &UniPoly<f64>, q: &UniPoly<f64>) -> Result<Vec<NormRep<f64>>> {
    let sols = represent_core(f, q)?;
    let d = f.trimmed().degree();
    let deduped = dedupe_float(sols, d / 2, d / 2, f.norm_inf().sqrt())?;
    let mut out = Vec::with_capacity(deduped.len());
    for (eta, xi) in deduped {
        verify_rep(f, q, &eta, &xi)?;
        out.push(NormRep {
            xi,
            eta,
            q: q.clone(),
        });
    }
    Ok(out)
}

/// All solutions of f = η² + q·ξ² with exact coefficients in ℚ(√r), one
/// radical per solution family. Errors with `ExactUnavailable` when the
/// solutions genuinely live in a bigger field.
pub fn represent_exact(f: &UniPoly<Rat>, q: &UniPoly<Rat>) -> Result<Vec<NormRep<Ext>>> {
    let fe = f.map(|c| Ext::from_rational(c.clone()));
    let qe = q.map(|c| Ext::from_rational(c.clone()));
    let sols = represent_core(&fe, &qe)?;
    let deduped = dedupe_exact(sols);
    let mut out = Vec::with_capacity(deduped.len());
    for (eta, xi) in deduped {
        verify_rep(&fe, &qe, &eta, &xi)?;
        out.push(NormRep {
            xi,
            eta,
            q: qe.clone(),
        });
    }
    Ok(out)
}

/// 2·∏_p (1 + v_p(f)) over monic irreducible psd quadratics p ≠ q, computed
/// factorization-free from square-free levels and Sturm counts.
pub fn count(f: &UniPoly<Rat>, q: &UniPoly<Rat>) -> Result<BigInt> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !psd_univariate(f)? {
        return Err(Error::NotPsd);
    }
    q_normal(q)?;
    let q_monic = q.trimmed().monic();
    let mut acc = BigInt::from(2);
    for (idx, level) in f.squarefree_levels().iter().enumerate() {
        let mult = idx + 1;
        let mut s = level.clone();
        if s.degree() == 0 {
            continue;
        }
        let (qt, r) = s.divrem(&q_monic);
        if r.is_zero() {
            s = qt.trimmed(); // p = q is excluded from the product
            if s.degree() == 0 {
                continue;
            }
        }
        let real = sturm_real_root_count(&s);
        debug_assert!((s.degree() - real) % 2 == 0);
        let quads = (s.degree() - real) / 2;
        for _ in 0..quads {
            acc *= BigInt::from((1 + mult) as i64);
        }
    }
    Ok(acc)
}

/// Homogenized wrapper: f psd of degree 2d, q positive definite of degree 2,
/// returning pairs (ξ of degree d−1, η of degree d). The root at y = 0 is
/// pulled out as an even power of y and multiplied back in.
pub fn represent_binary_f64(
    f: &BinaryForm<f64>,
    q: &BinaryForm<f64>,
) -> Result<Vec<(BinaryForm<f64>, BinaryForm<f64>)>> {
    let reps = represent_binary_shape(f, q)?;
    let fp = f.dehomogenize().trimmed();
    let qp = q.dehomogenize();
    let inner = represent_f64(&fp, &qp)?;
    Ok(homogenize_reps(
        reps,
        inner.into_iter().map(|r| (r.eta, r.xi)).collect(),
    ))
}

pub fn represent_binary_exact(
    f: &BinaryForm<Rat>,
    q: &BinaryForm<Rat>,
) -> Result<Vec<(BinaryForm<Ext>, BinaryForm<Ext>)>> {
    let reps = represent_binary_shape(f, q)?;
    let fp = f.dehomogenize().trimmed();
    let qp = q.dehomogenize();
    let inner = represent_exact(&fp, &qp)?;
    Ok(homogenize_reps(
        reps,
        inner.into_iter().map(|r| (r.eta, r.xi)).collect(),
    ))
}

struct BinaryShape {
    half_deg: usize,
    y_half: usize,
}

fn represent_binary_shape<K: RealScalar>(
    f: &BinaryForm<K>,
    q: &BinaryForm<K>,
) -> Result<BinaryShape> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() % 2 != 0 {
        return Err(Error::OddDegree);
    }
    if q.degree() != 2 {
        return Err(Error::NotPositiveDefinite);
    }
    let ym = f.y_multiplicity();
    if ym % 2 != 0 {
        return Err(Error::NotPsd);
    }
    Ok(BinaryShape {
        half_deg: f.degree() / 2,
        y_half: ym / 2,
    })
}

fn homogenize_reps<K: Scalar>(
    shape: BinaryShape,
    reps: Vec<(UniPoly<K>, UniPoly<K>)>,
) -> Vec<(BinaryForm<K>, BinaryForm<K>)> {
    let d = shape.half_deg;
    let kappa = shape.y_half;
    let mut yk: BinaryForm<K> = BinaryForm::new(vec![K::one()]);
    for _ in 0..kappa {
        yk = yk.mul_form(&BinaryForm::new(vec![K::zero(), K::one()]));
    }
    reps.into_iter()
        .map(|(eta, xi)| {
            let eta_f = BinaryForm::homogenize_to(&eta, d - kappa).mul_form(&yk);
            let xi_f = if d > kappa {
                BinaryForm::homogenize_to(&xi, d - kappa - 1).mul_form(&yk)
            } else {
                // f = c·y^{2d}: ξ is identically zero of degree d−1
                BinaryForm::zero(d.saturating_sub(1))
            };
            (xi_f, eta_f)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use num_traits::One;

    type P = UniPoly<Rat>;

    fn q_std() -> P {
        P::from_i64(&[1, 0, 1])
    }

    #[test]
    fn lambda_examples() {
        // (a,b) = (0,2) → 1; (0,½) → ¼
        assert_eq!(
            quadratic_lambda(&rat_int(0), &rat_int(2)).unwrap(),
            rat_int(1)
        );
        assert_eq!(
            quadratic_lambda(&rat_int(0), &rat(1, 2)).unwrap(),
            rat(1, 4)
        );
        // (1,1) → (3−√5)/2 ≈ 0.3819660
        let l = quadratic_lambda(&Ext::from_rational(rat_int(1)), &Ext::from_rational(rat_int(1)))
            .unwrap();
        assert_eq!(
            l,
            Ext::with_radical(rat(3, 2), rat(-1, 2), BigInt::from(5))
        );
        let lf = quadratic_lambda(&1.0f64, &1.0f64).unwrap();
        assert!((lf - 0.3819660).abs() < 1e-6);
        // exact rational path cannot express (3−√5)/2
        assert!(matches!(
            quadratic_lambda(&rat_int(1), &rat_int(1)),
            Err(Error::ExactUnavailable(_))
        ));
    }

    #[test]
    fn represent_x2_plus_4() {
        // f = x²+4, q = x²+1: solutions (ξ,η) = (±1, ±√3)
        let f = P::from_i64(&[1, 0, 4]);
        let reps = represent_exact(&f, &q_std()).unwrap();
        assert_eq!(reps.len(), 4);
        let sqrt3 = Ext::from_rational(rat_int(3)).sqrt_psd().unwrap();
        for r in &reps {
            assert_eq!(r.xi.trimmed().degree(), 0);
            let xi0 = r.xi.trimmed().coeffs[0].clone();
            let eta0 = r.eta.trimmed().coeffs[0].clone();
            assert!(xi0.abs_ref() == Ext::one());
            assert!(eta0.abs_ref() == sqrt3);
        }
    }

    #[test]
    fn represent_f_equals_q() {
        let reps = represent_exact(&q_std(), &q_std()).unwrap();
        assert_eq!(reps.len(), 2);
        for r in &reps {
            assert!(r.eta.is_zero());
        }
        assert_eq!(count(&q_std(), &q_std()).unwrap(), BigInt::from(2));
    }

    #[test]
    fn count_examples() {
        // (x²+2)² → 2·(1+2) = 6
        let f = P::from_i64(&[1, 0, 2]).pow(2);
        assert_eq!(count(&f, &q_std()).unwrap(), BigInt::from(6));
        let reps = represent_exact(&f, &q_std()).unwrap();
        assert_eq!(reps.len(), 6);
        // q·(x²+2) → 2·(1+1) = 4
        let g = q_std().mul_poly(&P::from_i64(&[1, 0, 2]));
        assert_eq!(count(&g, &q_std()).unwrap(), BigInt::from(4));
        let reps = represent_exact(&g, &q_std()).unwrap();
        assert_eq!(reps.len(), 4);
    }

    #[test]
    fn square_free_product_hits_the_bound() {
        // distinct centered factors with rational η: x²+2, x²+5, x²+10
        let f = P::from_i64(&[1, 0, 2])
            .mul_poly(&P::from_i64(&[1, 0, 5]))
            .mul_poly(&P::from_i64(&[1, 0, 10]));
        let d = 3usize;
        assert_eq!(count(&f, &q_std()).unwrap(), BigInt::from(1 << (d + 1)));
        let reps = represent_exact(&f, &q_std()).unwrap();
        assert_eq!(reps.len(), 1 << (d + 1));
        // and the float path agrees
        let ff = f.map(|c| c.to_f64());
        let qf = q_std().map(|c| c.to_f64());
        let reps_f = represent_f64(&ff, &qf).unwrap();
        assert_eq!(reps_f.len(), 1 << (d + 1));
    }

    #[test]
    fn solutions_closed_under_signs() {
        let f = P::from_i64(&[1, 0, 2]).mul_poly(&P::from_i64(&[1, 0, 5]));
        let reps = represent_exact(&f, &q_std()).unwrap();
        for r in &reps {
            let found = reps.iter().any(|s| {
                s.eta.trimmed() == r.eta.neg_poly().trimmed()
                    && s.xi.trimmed() == r.xi.trimmed()
            });
            assert!(found, "solution set must be closed under η ↦ −η");
        }
    }

    #[test]
    fn real_roots_are_b_zero_factors() {
        // f = (x−1)²(x²+2): real root handled as multiplier
        let f = P::from_i64(&[1, -1]).pow(2).mul_poly(&P::from_i64(&[1, 0, 2]));
        assert_eq!(count(&f, &q_std()).unwrap(), BigInt::from(4));
        let reps = represent_exact(&f, &q_std()).unwrap();
        assert_eq!(reps.len(), 4);
        let ff = f.map(|c| c.to_f64());
        let qf = q_std().map(|c| c.to_f64());
        assert_eq!(represent_f64(&ff, &qf).unwrap().len(), 4);
    }

    #[test]
    fn off_center_general_q_float_path() {
        // q = 2x²+2x+3 positive definite; f = (x²+x+1)(x²+4) psd
        let q = P::from_i64(&[2, 2, 3]);
        let f = P::from_i64(&[1, 1, 1]).mul_poly(&P::from_i64(&[1, 0, 4]));
        let ff = f.map(|c| c.to_f64());
        let qf = q.map(|c| c.to_f64());
        let reps = represent_f64(&ff, &qf).unwrap();
        let want: usize = count(&f, &q).unwrap().try_into().unwrap();
        assert_eq!(reps.len(), want);
        for r in &reps {
            let res = r
                .eta
                .mul_poly(&r.eta)
                .add_poly(&qf.mul_poly(&r.xi.mul_poly(&r.xi)))
                .sub_poly(&ff);
            assert!(res.norm_inf() < 1e-9 * (1.0 + ff.norm_inf()));
        }
    }

    #[test]
    fn not_psd_rejected() {
        let f = P::from_i64(&[1, 0, -1]);
        assert!(matches!(
            represent_exact(&f, &q_std()),
            Err(Error::NotPsd)
        ));
        assert!(matches!(
            represent_exact(&P::zero(2), &q_std()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn binary_wrapper_with_y_root() {
        // f = y²·(x²+2y²)·(x²+5y²): root at infinity handled explicitly
        let a: BinaryForm<Rat> = BinaryForm::from_i64(&[0, 0, 1]);
        let b: BinaryForm<Rat> = BinaryForm::from_i64(&[1, 0, 2]);
        let c: BinaryForm<Rat> = BinaryForm::from_i64(&[1, 0, 5]);
        let f = &(&a * &b) * &c;
        let q: BinaryForm<Rat> = BinaryForm::from_i64(&[1, 0, 1]);
        let reps = represent_binary_exact(&f, &q).unwrap();
        assert_eq!(reps.len(), 8);
        let fe = f.map(|v| Ext::from_rational(v.clone()));
        let qe = q.map(|v| Ext::from_rational(v.clone()));
        for (xi, eta) in &reps {
            assert_eq!(eta.degree(), 3);
            assert_eq!(xi.degree(), 2);
            let lhs = &eta.square() + &(&qe * &xi.square());
            assert_eq!(lhs, fe);
        }
    }

    #[test]
    fn binary_q_squared() {
        // f = q²: every returned pair must satisfy η² + qξ² = q²
        let q: BinaryForm<Rat> = BinaryForm::from_i64(&[1, 0, 1]);
        let f = q.square();
        let reps = represent_binary_exact(&f, &q).unwrap();
        assert!(!reps.is_empty());
        let fe = f.map(|v| Ext::from_rational(v.clone()));
        let qe = q.map(|v| Ext::from_rational(v.clone()));
        for (xi, eta) in &reps {
            let lhs = &eta.square() + &(&qe * &xi.square());
            assert_eq!(lhs, fe);
        }
        // zero form is rejected
        let z: BinaryForm<Rat> = BinaryForm::zero(4);
        assert!(matches!(
            represent_binary_exact(&z, &q),
            Err(Error::ZeroPolynomial)
        ));
    }
}
