//! Constructive sum-of-three-squares decomposition for psd quartics with a
//! real zero at (0,0,1), i.e. f = f₂z² + f₃z + f₄, plus the enumeration of
//! the four orthogonal equivalence classes in the generic case.
//!
//! Three cases: f₂ = 0 reduces to two squares of the binary quartic;
//! f₂ = l² divides f₃ by 2l and reduces to two squares; positive definite
//! f₂ takes a norm-form witness η² + f₂ξ² = 4f₂f₄ − f₃², splits
//! f₂ = l₁² + l₂², orients l₂ so (l₁+il₂) ∣ (η+if₃), and assembles
//! f = (ξ/2)² + (h₁+l₁z)² + (h₂+l₂z)².

use crate::error::{Error, Result};
use crate::normforms::{psd_factors, represent_binary_exact, represent_binary_f64};
use crate::polycore::{cluster_vectors, disc, psd_binary, BinaryForm, UniPoly};
use crate::scalar::{CPair, Ext, Rat, RealScalar, Scalar};
use crate::ternary::{SosTriple, TernForm, TernaryQuadratic};

/// The z-layers of a psd quartic vanishing at (0,0,1).
#[derive(Clone, Debug)]
pub struct RealZeroForm<K: Scalar> {
    pub f2: BinaryForm<K>,
    pub f3: BinaryForm<K>,
    pub f4: BinaryForm<K>,
}

impl<K: RealScalar> RealZeroForm<K> {
    /// Validates the psd characterization: f₂, f₄ and 4f₂f₄ − f₃² psd.
    pub fn new(f2: BinaryForm<K>, f3: BinaryForm<K>, f4: BinaryForm<K>) -> Result<Self> {
        assert_eq!(f2.degree(), 2);
        assert_eq!(f3.degree(), 3);
        assert_eq!(f4.degree(), 4);
        let f6 = &(&f2 * &f4).scale(&K::from_i64(4)) - &f3.square();
        if !psd_binary(&f2)? || !psd_binary(&f4)? || !psd_binary(&f6)? {
            return Err(Error::NotPsd);
        }
        Ok(RealZeroForm { f2, f3, f4 })
    }

    pub fn discriminant_form(&self) -> BinaryForm<K> {
        &(&self.f2 * &self.f4).scale(&K::from_i64(4)) - &self.f3.square()
    }

    pub fn quartic(&self) -> TernForm<K> {
        TernForm::from_z_layers(
            &K::zero(),
            &BinaryForm::zero(1),
            &self.f2,
            &self.f3,
            &self.f4,
        )
    }
}

/// Complex polynomial product helper over coefficient pairs.
fn cpoly_mul<K: Scalar>(a: &[CPair<K>], b: &[CPair<K>]) -> Vec<CPair<K>> {
    let mut out = vec![CPair::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&ca.mul(cb));
        }
    }
    out
}

/// Write a psd binary form as w₂² + w₃²: take one root from each conjugate
/// pair of the dehomogenization, multiply the linear factors over ℂ, and
/// split into real and imaginary parts.
pub fn two_squares<K: RealScalar>(f: &BinaryForm<K>) -> Result<(BinaryForm<K>, BinaryForm<K>)> {
    if f.degree() % 2 != 0 {
        return Err(Error::OddDegree);
    }
    let e = f.degree() / 2;
    if f.is_zero() {
        return Ok((BinaryForm::zero(e), BinaryForm::zero(e)));
    }
    if !psd_binary(f)? {
        return Err(Error::NotPsd);
    }
    let ym = f.y_multiplicity();
    if ym % 2 != 0 {
        return Err(Error::NotPsd);
    }
    let kappa = ym / 2;
    let p = f.dehomogenize().trimmed();
    let q0: UniPoly<K> = UniPoly::new(vec![K::one(), K::zero(), K::one()]);
    let (multiplier, quads) = psd_factors(&p, &q0)?;
    let mut w: Vec<CPair<K>> = multiplier
        .coeffs
        .iter()
        .map(|c| CPair::new(c.clone(), K::zero()))
        .collect();
    for qf in &quads {
        let b = qf.bsq.sqrt_psd().ok_or_else(|| {
            Error::ExactUnavailable("two-square split needs a root outside the field".into())
        })?;
        if !b.compatible_with(&qf.a) || !multiplier.coeffs.iter().all(|c| c.compatible_with(&b)) {
            return Err(Error::ExactUnavailable(
                "two-square split needs two independent radicals".into(),
            ));
        }
        let lin = [
            CPair::new(K::one(), K::zero()),
            CPair::new(qf.a.clone(), b),
        ];
        for _ in 0..qf.mult {
            w = cpoly_mul(&w, &lin);
        }
    }
    let w2: UniPoly<K> = UniPoly::new(w.iter().map(|c| c.re.clone()).collect());
    let w3: UniPoly<K> = UniPoly::new(w.iter().map(|c| c.im.clone()).collect());
    let mut yk: BinaryForm<K> = BinaryForm::new(vec![K::one()]);
    for _ in 0..kappa {
        yk = yk.mul_form(&BinaryForm::new(vec![K::zero(), K::one()]));
    }
    let w2f = BinaryForm::homogenize_to(&w2, e - kappa).mul_form(&yk);
    let w3f = BinaryForm::homogenize_to(&w3, e - kappa).mul_form(&yk);
    verify_two_squares(f, &w2f, &w3f)?;
    Ok((w2f, w3f))
}

fn verify_two_squares<K: RealScalar>(
    f: &BinaryForm<K>,
    w2: &BinaryForm<K>,
    w3: &BinaryForm<K>,
) -> Result<()> {
    let diff = &(&w2.square() + &w3.square()) - f;
    if K::EXACT {
        if !diff.is_zero() {
            return Err(Error::Numerical("two-square split failed exactly".into()));
        }
    } else {
        let tol = 1e-9 * (1.0 + f.norm_inf());
        if diff.norm_inf() > tol {
            return Err(Error::DivisionResidual {
                residual: diff.norm_inf(),
                tol,
            });
        }
    }
    Ok(())
}

/// Split a nonzero psd quadratic form as l₁² + l₂² (complete the square).
pub fn split_psd_quadratic<K: RealScalar>(
    f2: &BinaryForm<K>,
) -> Result<(BinaryForm<K>, BinaryForm<K>)> {
    assert_eq!(f2.degree(), 2);
    let alpha = f2.coeff(0);
    let beta = f2.coeff(1);
    let gamma = f2.coeff(2);
    let sqrt_err =
        || Error::ExactUnavailable("splitting f₂ needs a square root outside the field".into());
    if alpha.is_zero() {
        // psd forces β = 0 here; f₂ = γ y²
        if !K::EXACT && beta.to_f64().abs() > 1e-9 * (1.0 + f2.norm_inf()) {
            return Err(Error::NotPsd);
        }
        let g = gamma.abs_ref().sqrt_psd().ok_or_else(sqrt_err)?;
        return Ok((
            BinaryForm::new(vec![K::zero(), g]),
            BinaryForm::zero(1),
        ));
    }
    if alpha.signum_i() < 0 {
        return Err(Error::NotPsd);
    }
    // l₁ = √α·x + β/(2√α)·y, l₂ = √(γ − β²/4α)·y
    let sa = alpha.sqrt_psd().ok_or_else(sqrt_err)?;
    let rest = gamma.sub_ref(
        &beta
            .mul_ref(&beta)
            .div_ref(&K::from_i64(4).mul_ref(&alpha)),
    );
    let rest = if K::EXACT { rest } else { rest.abs_ref() };
    let sr = rest.sqrt_psd().ok_or_else(sqrt_err)?;
    if !sa.compatible_with(&sr) {
        return Err(sqrt_err());
    }
    Ok((
        BinaryForm::new(vec![sa.clone(), beta.div_ref(&K::from_i64(2).mul_ref(&sa))]),
        BinaryForm::new(vec![K::zero(), sr]),
    ))
}

/// Form division with an exactness/residual check; divides by swapping x↔y
/// when the divisor is y-dominant.
pub fn div_form<K: RealScalar>(
    num: &BinaryForm<K>,
    den: &BinaryForm<K>,
    rel_tol: f64,
) -> Result<BinaryForm<K>> {
    if den.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let qd = num
        .degree()
        .checked_sub(den.degree())
        .ok_or_else(|| Error::Shape("division by a higher-degree form".into()))?;
    if num.is_zero() {
        return Ok(BinaryForm::zero(qd));
    }
    let x_dominant = den.coeff(0).abs_ref() >= den.coeff(den.degree()).abs_ref();
    let (n, d) = if x_dominant {
        (num.clone(), den.clone())
    } else {
        (num.swapped(), den.swapped())
    };
    let (q, r) = n.dehomogenize().divrem(&d.dehomogenize());
    let ok = if K::EXACT {
        r.is_zero() && q.degree() <= qd
    } else {
        r.norm_inf() <= rel_tol * (1.0 + num.norm_inf())
    };
    if !ok {
        return Err(Error::DivisionResidual {
            residual: r.norm_inf(),
            tol: rel_tol * (1.0 + num.norm_inf()),
        });
    }
    let qf = BinaryForm::homogenize_to(&q, qd);
    Ok(if x_dominant { qf } else { qf.swapped() })
}

/// Evaluate η + i·f₃ at the projective root of l₁ + i·l₂; exactly zero (or
/// numerically smallest) for the correctly oriented l₂.
fn divisibility_defect<K: RealScalar>(
    eta: &BinaryForm<K>,
    f3: &BinaryForm<K>,
    l1: &BinaryForm<K>,
    l2: &BinaryForm<K>,
) -> f64 {
    // root of Px + Qy with P = l1x + i·l2x, Q = l1y + i·l2y is (Q, −P)
    let p = CPair::new(l1.coeff(0), l2.coeff(0));
    let q = CPair::new(l1.coeff(1), l2.coeff(1));
    let x0 = q;
    let y0 = CPair::new(p.re.neg_ref(), p.im.neg_ref());
    let mut acc = CPair::<K>::zero();
    let d = eta.degree();
    for k in 0..=d {
        let mut t = CPair::new(eta.coeff(k), f3.coeff(k));
        for _ in 0..d - k {
            t = t.mul(&x0);
        }
        for _ in 0..k {
            t = t.mul(&y0);
        }
        acc = acc.add(&t);
    }
    let re = acc.re.to_f64();
    let im = acc.im.to_f64();
    re * re + im * im
}

/// Decomposition driven by a norm-form witness (ξ, η) with
/// η² + f₂ξ² = 4f₂f₄ − f₃² (the positive definite f₂ case).
pub fn decompose_with_witness<K: RealScalar>(
    form: &RealZeroForm<K>,
    xi: &BinaryForm<K>,
    eta: &BinaryForm<K>,
) -> Result<SosTriple<K>> {
    let (l1, mut l2) = split_psd_quadratic(&form.f2)?;
    // choose the sign of l₂ so that (l₁+il₂) divides (η+if₃)
    let d_plus = divisibility_defect(eta, &form.f3, &l1, &l2);
    let d_minus = divisibility_defect(eta, &form.f3, &l1, &l2.neg_form());
    if d_minus < d_plus {
        l2 = l2.neg_form();
    }
    let two_f2 = form.f2.scale(&K::from_i64(2));
    // h₁ = (f₃l₁ − ηl₂)/(2f₂), h₂ = (ηl₁ + f₃l₂)/(2f₂)
    let h1 = div_form(&(&(&form.f3 * &l1) - &(eta * &l2)), &two_f2, 1e-9)?;
    let h2 = div_form(&(&(eta * &l1) + &(&form.f3 * &l2)), &two_f2, 1e-9)?;
    let half_xi = xi.scale(&K::one().div_ref(&K::from_i64(2)));
    let triple = SosTriple::with_witness(
        [
            TernaryQuadratic::from_binary(half_xi),
            TernaryQuadratic::new(K::zero(), l1, h1),
            TernaryQuadratic::new(K::zero(), l2, h2),
        ],
        xi.clone(),
        eta.clone(),
    );
    verify_real_zero_triple(form, &triple)?;
    Ok(triple)
}

fn verify_real_zero_triple<K: RealScalar>(
    form: &RealZeroForm<K>,
    triple: &SosTriple<K>,
) -> Result<()> {
    let f = form.quartic();
    if K::EXACT {
        if triple.sum_of_squares() != f {
            return Err(Error::Numerical(
                "real-zero decomposition failed exactly".into(),
            ));
        }
    } else {
        let tol = 1e-8 * (1.0 + f.norm_inf());
        let res = triple.residual_inf(&f);
        if res > tol {
            return Err(Error::DivisionResidual { residual: res, tol });
        }
    }
    Ok(())
}

fn decompose_core<K: RealScalar>(
    form: &RealZeroForm<K>,
    witness: Option<(BinaryForm<K>, BinaryForm<K>)>,
) -> Result<SosTriple<K>> {
    if form.f2.is_zero() {
        // psd forces f₃ = 0 and f = f₄ is a sum of two squares
        if K::EXACT && !form.f3.is_zero() {
            return Err(Error::NotPsd);
        }
        let (w2, w3) = two_squares(&form.f4)?;
        let triple = SosTriple::new([
            TernaryQuadratic::from_binary(w2),
            TernaryQuadratic::from_binary(w3),
            TernaryQuadratic::zero(),
        ]);
        verify_real_zero_triple(form, &triple)?;
        return Ok(triple);
    }
    let d2 = disc(&form.f2.dehomogenize(), 2);
    let degenerate = if K::EXACT {
        d2.is_zero()
    } else {
        d2.to_f64().abs() <= 1e-9 * (1.0 + form.f2.norm_inf()).powi(2)
    };
    if degenerate {
        // f₂ = l²: then l ∣ f₃, say f₃ = 2l·g₂, and
        // f = (lz+g₂)² + (f₄ − g₂²) with the tail a sum of two squares
        let (l, l2) = split_psd_quadratic(&form.f2)?;
        if K::EXACT && !l2.is_zero() {
            return Err(Error::Numerical("disc₂ = 0 but f₂ is not a square".into()));
        }
        let g2 = div_form(&form.f3, &l.scale(&K::from_i64(2)), 1e-9)?;
        let tail = &form.f4 - &g2.square();
        let (w2, w3) = two_squares(&tail)?;
        let triple = SosTriple::new([
            TernaryQuadratic::new(K::zero(), l, g2),
            TernaryQuadratic::from_binary(w2),
            TernaryQuadratic::from_binary(w3),
        ]);
        verify_real_zero_triple(form, &triple)?;
        return Ok(triple);
    }
    match witness {
        Some((xi, eta)) => decompose_with_witness(form, &xi, &eta),
        None => Err(Error::Shape(
            "positive definite f₂ needs a norm-form witness".into(),
        )),
    }
}

/// Sum-of-three-squares decomposition, float path.
pub fn decompose_f64(form: &RealZeroForm<f64>) -> Result<SosTriple<f64>> {
    let needs_witness = {
        let d2 = disc(&form.f2.dehomogenize(), 2);
        !form.f2.is_zero() && d2.abs() > 1e-9 * (1.0 + form.f2.norm_inf()).powi(2)
    };
    let witness = if needs_witness {
        let reps = represent_binary_f64(&form.discriminant_form(), &form.f2)?;
        let (xi, eta) = reps
            .into_iter()
            .next()
            .ok_or_else(|| Error::Numerical("no norm-form representation found".into()))?;
        Some((xi, eta))
    } else {
        None
    };
    decompose_core(form, witness)
}

/// Sum-of-three-squares decomposition, exact path. Coefficients live in a
/// single quadratic extension when the construction demands one;
/// `ExactUnavailable` reports the (provably common) cases beyond that.
pub fn decompose_exact(form: &RealZeroForm<Rat>) -> Result<SosTriple<Ext>> {
    let fe = RealZeroForm {
        f2: form.f2.map(|c| Ext::from_rational(c.clone())),
        f3: form.f3.map(|c| Ext::from_rational(c.clone())),
        f4: form.f4.map(|c| Ext::from_rational(c.clone())),
    };
    let needs_witness = {
        let d2 = disc(&form.f2.dehomogenize(), 2);
        !form.f2.is_zero() && !d2.is_zero()
    };
    let witness = if needs_witness {
        let reps = represent_binary_exact(&form.discriminant_form(), &form.f2)?;
        let (xi, eta) = reps
            .into_iter()
            .next()
            .ok_or_else(|| Error::Numerical("no norm-form representation found".into()))?;
        Some((xi, eta))
    } else {
        None
    };
    decompose_core(&fe, witness)
}

/// All sixteen (ξ, η) pairs grouped by the class invariant (ξ², η²), one
/// decomposition per class. Requires the generic preconditions: f₂ not a
/// square, f₂ ∤ f₃, and 4f₂f₄ − f₃² square-free (these are E1–E3).
pub fn classes(form: &RealZeroForm<f64>) -> Result<Vec<SosTriple<f64>>> {
    let n2 = 1.0 + form.f2.norm_inf();
    let d2 = disc(&form.f2.dehomogenize(), 2);
    if d2.abs() <= 1e-9 * n2 * n2 {
        return Err(Error::Genericity {
            condition: "E1".into(),
            detail: "f₂ is a square (disc₂(f₂) = 0)".into(),
        });
    }
    if div_form(&form.f3, &form.f2, 1e-9).is_ok() {
        return Err(Error::Genericity {
            condition: "E2".into(),
            detail: "f₂ divides f₃".into(),
        });
    }
    let f6 = form.discriminant_form();
    if !crate::polycore::square_free(&f6.dehomogenize())? || f6.y_multiplicity() >= 2 {
        return Err(Error::Genericity {
            condition: "E3".into(),
            detail: "4f₂f₄ − f₃² is not square-free".into(),
        });
    }
    let reps = represent_binary_f64(&f6, &form.f2)?;
    // group by the equivalence invariant (ξ², η²)
    let keys: Vec<Vec<f64>> = reps
        .iter()
        .map(|(xi, eta)| {
            let mut v: Vec<f64> = xi.square().coeffs.clone();
            v.extend(eta.square().coeffs.iter());
            v
        })
        .collect();
    let scale = f6.norm_inf().max(1.0);
    let groups = cluster_vectors(&keys, 1e-5 * scale, 10.0)?;
    let mut out = Vec::with_capacity(groups.len());
    for g in groups {
        let (xi, eta) = &reps[g[0]];
        out.push(decompose_with_witness(form, xi, eta)?);
    }
    Ok(out)
}

/// The class invariant of a representation f = Σ(vᵢz + wᵢ)²: eliminate the
/// first z-coefficient orthogonally and read off ξ = 2w₁,
/// η = 2(v₂w₃ − v₃w₂). Computed through the cross product so (ξ², η²) needs
/// no normalization: ξ²‖ũ‖² = 4(ũ·w)², η²‖ũ‖² = 4(ũ·(v×w))² with
/// ũ = a×b from the v-coefficient matrix.
pub fn invariant_of_representation<K: RealScalar>(
    triple: &SosTriple<K>,
    form: &RealZeroForm<K>,
) -> Result<(BinaryForm<K>, BinaryForm<K>)> {
    verify_real_zero_triple(form, triple)?;
    for p in &triple.p {
        let ok = if K::EXACT {
            p.u.is_zero()
        } else {
            p.u.to_f64().abs() <= 1e-7
        };
        if !ok {
            return Err(Error::Shape(
                "a real-zero triple must have no z² coefficients".into(),
            ));
        }
    }
    let a: Vec<K> = triple.p.iter().map(|p| p.v.coeff(0)).collect();
    let b: Vec<K> = triple.p.iter().map(|p| p.v.coeff(1)).collect();
    let cross = |u: &[K], v: &[K]| -> Vec<K> {
        vec![
            u[1].mul_ref(&v[2]).sub_ref(&u[2].mul_ref(&v[1])),
            u[2].mul_ref(&v[0]).sub_ref(&u[0].mul_ref(&v[2])),
            u[0].mul_ref(&v[1]).sub_ref(&u[1].mul_ref(&v[0])),
        ]
    };
    let u = cross(&a, &b);
    let usq = u
        .iter()
        .fold(K::zero(), |acc, c| acc.add_ref(&c.mul_ref(c)));
    if usq.is_zero() || (!K::EXACT && usq.to_f64() <= 1e-12) {
        return Err(Error::Genericity {
            condition: "E1".into(),
            detail: "z-linear parts are rank-deficient (f₂ is a square)".into(),
        });
    }
    // ũ·w as a quadratic form
    let mut uw = BinaryForm::zero(2);
    for (ui, p) in u.iter().zip(&triple.p) {
        uw = uw.add_form(&p.w.scale(ui));
    }
    // ũ·(v×w) as a cubic form: Σᵢ ũᵢ (vⱼwₖ − vₖwⱼ)
    let mut uvw = BinaryForm::zero(3);
    for i in 0..3 {
        let j = (i + 1) % 3;
        let k = (i + 2) % 3;
        let term = &(&triple.p[j].v * &triple.p[k].w) - &(&triple.p[k].v * &triple.p[j].w);
        uvw = uvw.add_form(&term.scale(&u[i]));
    }
    let four = K::from_i64(4);
    let xi_sq = uw.square().scale(&four.div_ref(&usq));
    let eta_sq = uvw.square().scale(&four.div_ref(&usq));
    Ok((xi_sq, eta_sq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn trivial_form_f64() -> RealZeroForm<f64> {
        // f = (xz+y²)² + (yz)² + (x²)²
        RealZeroForm::new(
            BinaryForm::from_i64(&[1, 0, 1]),
            BinaryForm::from_i64(&[0, 2, 0, 0]),
            BinaryForm::from_i64(&[1, 0, 0, 0, 1]),
        )
        .unwrap()
    }

    #[test]
    fn decompose_trivial_example() {
        let form = trivial_form_f64();
        let t = decompose_f64(&form).unwrap();
        let res = t.residual_inf(&form.quartic());
        assert!(res < 1e-8, "residual {res}");
    }

    #[test]
    fn decompose_trivial_example_exact() {
        let form = RealZeroForm::<Rat>::new(
            BinaryForm::from_i64(&[1, 0, 1]),
            BinaryForm::from_i64(&[0, 2, 0, 0]),
            BinaryForm::from_i64(&[1, 0, 0, 0, 1]),
        )
        .unwrap();
        match decompose_exact(&form) {
            Ok(t) => {
                let fe = form.quartic().map(|c| Ext::from_rational(c.clone()));
                assert!(t.sum_of_squares() == fe);
            }
            Err(Error::ExactUnavailable(_)) => {
                // legitimate outcome when the witness leaves ℚ(√r)
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn decompose_f2_zero() {
        let form = RealZeroForm::<f64>::new(
            BinaryForm::zero(2),
            BinaryForm::zero(3),
            BinaryForm::from_i64(&[1, 0, 0, 0, 1]),
        )
        .unwrap();
        let t = decompose_f64(&form).unwrap();
        assert!(t.residual_inf(&form.quartic()) < 1e-10);
        assert!(t.p[2].to_ternary().is_zero());
    }

    #[test]
    fn decompose_f2_square() {
        // f₂ = x², f₃ = 2x·y², f₄ = y⁴+x⁴ → (xz+y²)² + (x²)² + 0
        let form = RealZeroForm::<f64>::new(
            BinaryForm::from_i64(&[1, 0, 0]),
            BinaryForm::from_i64(&[0, 2, 0, 0]),
            BinaryForm::from_i64(&[1, 0, 0, 0, 1]),
        )
        .unwrap();
        let t = decompose_f64(&form).unwrap();
        assert!(t.residual_inf(&form.quartic()) < 1e-9);
        // identity 4l²(f₄−g₂²) = 4f₂f₄−f₃² holds exactly here
        let l: BinaryForm<Rat> = BinaryForm::from_i64(&[1, 0]);
        let g2: BinaryForm<Rat> = BinaryForm::from_i64(&[0, 0, 1]);
        let f4: BinaryForm<Rat> = BinaryForm::from_i64(&[1, 0, 0, 0, 1]);
        let f2 = l.square();
        let f3 = (&l * &g2).scale(&rat_int(2));
        let lhs = (&l.square() * &(&f4 - &g2.square())).scale(&rat_int(4));
        let rhs = &(&f2 * &f4).scale(&rat_int(4)) - &f3.square();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_square_case() {
        let form = RealZeroForm::<Rat>::new(
            BinaryForm::from_i64(&[1, 0, 0]),
            BinaryForm::from_i64(&[0, 2, 0, 0]),
            BinaryForm::from_i64(&[1, 0, 0, 0, 1]),
        )
        .unwrap();
        let t = decompose_exact(&form).unwrap();
        let fe = form.quartic().map(|c| Ext::from_rational(c.clone()));
        assert!(t.sum_of_squares() == fe);
    }

    fn random_generic_form(rng: &mut StdRng) -> (RealZeroForm<Rat>, RealZeroForm<f64>) {
        loop {
            let rnd = |rng: &mut StdRng| rat_int(rng.gen_range(-3i64..4));
            let v2 = BinaryForm::new(vec![rnd(rng), rnd(rng)]);
            let v3 = BinaryForm::new(vec![rnd(rng), rnd(rng)]);
            let w1 = BinaryForm::new(vec![rnd(rng), rnd(rng), rnd(rng)]);
            let w2 = BinaryForm::new(vec![rnd(rng), rnd(rng), rnd(rng)]);
            let w3 = BinaryForm::new(vec![rnd(rng), rnd(rng), rnd(rng)]);
            let f2 = &v2.square() + &v3.square();
            let f3 = (&(&v2 * &w2) + &(&v3 * &w3)).scale(&rat_int(2));
            let f4 = &(&w1.square() + &w2.square()) + &w3.square();
            // E1–E3 checks, exactly
            if disc(&f2.dehomogenize(), 2).is_zero() {
                continue;
            }
            if f3.try_div_exact(&f2).is_some() {
                continue;
            }
            let f6 = &(&f2 * &f4).scale(&rat_int(4)) - &f3.square();
            if disc(&f6.dehomogenize(), 6).is_zero() {
                continue;
            }
            let exact = RealZeroForm::new(f2, f3, f4).unwrap();
            let float = RealZeroForm {
                f2: exact.f2.to_f64(),
                f3: exact.f3.to_f64(),
                f4: exact.f4.to_f64(),
            };
            return (exact, float);
        }
    }

    #[test]
    fn four_classes_on_generic_forms() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..5 {
            let (_, form) = random_generic_form(&mut rng);
            let cls = classes(&form).unwrap();
            assert_eq!(cls.len(), 4);
            let f = form.quartic();
            for t in &cls {
                assert!(t.residual_inf(&f) <= 1e-8 * (1.0 + f.norm_inf()));
            }
            // distinct classes give distinct (ξ², η²)
            let invs: Vec<Vec<f64>> = cls
                .iter()
                .map(|t| {
                    let (a, b) = invariant_of_representation(t, &form).unwrap();
                    let mut v = a.coeffs.clone();
                    v.extend(b.coeffs);
                    v
                })
                .collect();
            for i in 0..invs.len() {
                for j in i + 1..invs.len() {
                    let d: f64 = invs[i]
                        .iter()
                        .zip(&invs[j])
                        .map(|(x, y)| (x - y).abs())
                        .fold(0.0, f64::max);
                    assert!(d > 1e-3, "classes {i},{j} share the invariant");
                }
            }
        }
    }

    #[test]
    fn classes_reject_square_f2() {
        let form = RealZeroForm::<f64>::new(
            BinaryForm::from_i64(&[1, 0, 0]),
            BinaryForm::from_i64(&[0, 2, 0, 0]),
            BinaryForm::from_i64(&[1, 0, 0, 0, 1]),
        )
        .unwrap();
        match classes(&form) {
            Err(Error::Genericity { condition, .. }) => assert_eq!(condition, "E1"),
            other => panic!("expected E1 genericity error, got {other:?}"),
        }
    }

    #[test]
    fn invariant_is_orthogonally_stable() {
        let mut rng = StdRng::seed_from_u64(32);
        let (_, form) = random_generic_form(&mut rng);
        let t = decompose_f64(&form).unwrap();
        let (xi2, eta2) = invariant_of_representation(&t, &form).unwrap();
        // random rotation built from a QR factorization
        let m = nalgebra::Matrix3::<f64>::from_fn(|_, _| rng.gen_range(-1.0..1.0));
        let qr = m.qr();
        let q = qr.q();
        let mix = |t: &SosTriple<f64>| -> SosTriple<f64> {
            let forms: Vec<TernForm<f64>> = t.p.iter().map(|p| p.to_ternary()).collect();
            let mixed: Vec<TernaryQuadratic<f64>> = (0..3)
                .map(|j| {
                    let mut acc = TernForm::zero(2);
                    for i in 0..3 {
                        acc = acc.add_form(&forms[i].scale(&q[(i, j)]));
                    }
                    TernaryQuadratic::from_ternary(&acc)
                })
                .collect();
            SosTriple::new([mixed[0].clone(), mixed[1].clone(), mixed[2].clone()])
        };
        let mixed = mix(&t);
        let (xi2m, eta2m) = invariant_of_representation(&mixed, &form).unwrap();
        let d1 = (&xi2 - &xi2m).norm_inf();
        let d2 = (&eta2 - &eta2m).norm_inf();
        let scale = 1.0 + xi2.norm_inf().max(eta2.norm_inf());
        assert!(d1 <= 1e-6 * scale, "ξ² moved by {d1}");
        assert!(d2 <= 1e-6 * scale, "η² moved by {d2}");
    }

    #[test]
    fn witness_invariant_consistency() {
        let mut rng = StdRng::seed_from_u64(33);
        let (_, form) = random_generic_form(&mut rng);
        let t = decompose_f64(&form).unwrap();
        let (xi, eta) = t.witness.clone().unwrap();
        let (xi2, eta2) = invariant_of_representation(&t, &form).unwrap();
        let dxi = (&xi.square() - &xi2).norm_inf();
        let deta = (&eta.square() - &eta2).norm_inf();
        let scale = 1.0 + xi2.norm_inf().max(eta2.norm_inf());
        assert!(dxi <= 1e-6 * scale, "ξ² off by {dxi}");
        assert!(deta <= 1e-6 * scale, "η² off by {deta}");
    }
}
