//! Power-series eigenstate solver: the operator
//! `β1 N + β2 B- + β3 B+ + β4 A- + β5 A+` acting on analytic functions gives
//! a linear ODE `p2 f'' + p1 f' + p0 f = 0` (with the eigenvalue folded into
//! `p0`); its coefficients are exact truncated series for all three
//! realizations, and solutions come from the Cauchy-product recurrence. The
//! matching truncated matrix representation serves as an independent oracle.

use crate::error::{Error, Result};
use crate::fockrep::{rep, RepKind};
use crate::lie::Gen;
use crate::scalar::Scalar;
use crate::series::{
    exp_2ct2_series, exp_series, expm1_div_series, one_minus_exp_neg_div_series, phi1_series,
    psi_over_t_series, psi_series, q_series, w_series, PowerSeries,
};

/// An eigenstate problem: realization kind, deformation parameter, the five
/// operator coefficients, the eigenvalue, and the series truncation order.
#[derive(Clone, Debug)]
pub struct EigenProblem {
    pub kind: RepKind,
    pub param: Scalar,
    pub betas: [Scalar; 5],
    pub lambda: Scalar,
    pub order: usize,
}

/// Coefficient series of `p2 f'' + p1 f' + p0 f = 0`, each of length
/// `order + 1`. `first_order` is set when `p2` vanishes identically and the
/// problem reduces to `p1 f' + p0 f = 0`.
#[derive(Clone, Debug)]
pub struct OdeSpec {
    pub p2: PowerSeries,
    pub p1: PowerSeries,
    pub p0: PowerSeries,
    pub first_order: bool,
}

/// Truncated series solution with its residual report.
#[derive(Clone, Debug)]
pub struct SeriesSolution {
    pub coeffs: Vec<Scalar>,
    /// ODE residual coefficients at orders `0..=order-2`; exactly zero by
    /// construction of the recurrence, recomputed independently here.
    pub residual: Vec<Scalar>,
    pub c0: Scalar,
    pub c1: Scalar,
}

impl SeriesSolution {
    pub fn residual_is_zero(&self) -> bool {
        self.residual.iter().all(|r| r.is_zero())
    }

    /// CSV rows `(index, numerator, denominator)` in exact mode.
    pub fn to_csv_exact(&self) -> Result<String> {
        let mut out = String::from("index,numerator,denominator\n");
        for (k, c) in self.coeffs.iter().enumerate() {
            let r = c.as_rational().ok_or_else(|| {
                Error::Domain("polynomial coefficients have no exact CSV form".into())
            })?;
            out.push_str(&format!("{},{},{}\n", k, r.numer(), r.denom()));
        }
        Ok(out)
    }

    /// CSV rows `(index, value)` in float mode.
    pub fn to_csv_float(&self) -> Result<String> {
        let mut out = String::from("index,value\n");
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{},{:.17e}\n", k, c.to_f64()?));
        }
        Ok(out)
    }
}

/// Expand the operator coefficients of the eigenstate equation as truncated
/// series at the origin. Every coefficient function is analytic there after
/// the removable-singularity regularizations; the square-root factor uses the
/// branch with value +1 at zero.
pub fn ode_from_problem(p: &EigenProblem) -> Result<OdeSpec> {
    let len = p.order + 1;
    let [b1, b2, b3, b4, b5] = p.betas.clone();
    let lam = p.lambda.clone();
    let a = &p.param;

    let mono = |k: usize, c: &Scalar| -> PowerSeries {
        let mut s = PowerSeries::zero(len.max(k + 1));
        if k < s.len() {
            s.coeffs[k] = c.clone();
        }
        s
    };

    let (p2, p1, p0) = match p.kind {
        RepKind::Classical => {
            // β2 f'' + (β1 α + β4) f' + (β3 α² + β5 α − λ) f = 0
            let p2 = mono(0, &b2);
            let p1 = mono(0, &b4).add(&mono(1, &b1));
            let p0 = mono(0, &lam.neg()).add(&mono(1, &b5)).add(&mono(2, &b3));
            (p2, p1, p0)
        }
        RepKind::Ua1 => {
            // β2 e^{aα} f'' + (β1 (e^{aα}−1)/a + β4 e^{aα}) f'
            //   + (β3 ((1−e^{−aα})/a)² + β5 α − λ) f = 0
            let e = exp_series(a, len);
            let f = expm1_div_series(a, len);
            let g = one_minus_exp_neg_div_series(a, len);
            let p2 = e.scale(&b2);
            let p1 = f.scale(&b1).add(&e.scale(&b4));
            let p0 = g
                .mul(&g, len)
                .scale(&b3)
                .add(&mono(1, &b5))
                .add(&mono(0, &lam.neg()));
            (p2, p1, p0)
        }
        RepKind::Ua2 => {
            // β2 q(α) f'' + (β1 φ1(α) + β4 e^{2aα²}h(α) + β2 w(α)) f'
            //   + (β3 α² + β5 ψ(α) − λ) f = 0
            let q = q_series(a, len);
            let phi1 = phi1_series(a, len);
            let eh = exp_2ct2_series(a, len).mul(&psi_over_t_series(a, len)?, len);
            let w = w_series(a, len);
            let psi = psi_series(a, len)?;
            let p2 = q.scale(&b2);
            let p1 = phi1.scale(&b1).add(&eh.scale(&b4)).add(&w.scale(&b2));
            let p0 = mono(2, &b3)
                .add(&psi.scale(&b5))
                .add(&mono(0, &lam.neg()));
            (p2, p1, p0)
        }
    };

    let pad = |s: PowerSeries| -> PowerSeries {
        let mut c = s.coeffs;
        c.resize(len, Scalar::zero());
        PowerSeries { coeffs: c, label: s.label }
    };
    let p2 = pad(p2);
    let p1 = pad(p1);
    let p0 = pad(p0);
    let first_order = p2.coeffs.iter().all(|c| c.is_zero());
    Ok(OdeSpec {
        p2,
        p1,
        p0,
        first_order,
    })
}

/// Coefficient of `α^k` in `p · f'` for series coefficients `c` of `f`.
fn conv_deriv(p: &PowerSeries, c: &[Scalar], k: usize) -> Scalar {
    // (f')_i = (i+1) c_{i+1}
    let mut acc = Scalar::zero();
    for j in 0..=k {
        let pj = p.coeff(j);
        if pj.is_zero() {
            continue;
        }
        let i = k - j;
        if i + 1 < c.len() {
            let fi = c[i + 1]
                .checked_mul(&Scalar::from_int((i + 1) as i64))
                .unwrap();
            acc = acc.checked_add(&pj.checked_mul(&fi).unwrap()).unwrap();
        }
    }
    acc
}

/// Coefficient of `α^k` in `p · f''`.
fn conv_deriv2(p: &PowerSeries, c: &[Scalar], k: usize) -> Scalar {
    // (f'')_i = (i+2)(i+1) c_{i+2}
    let mut acc = Scalar::zero();
    for j in 0..=k {
        let pj = p.coeff(j);
        if pj.is_zero() {
            continue;
        }
        let i = k - j;
        if i + 2 < c.len() {
            let fi = c[i + 2]
                .checked_mul(&Scalar::from_int(((i + 2) * (i + 1)) as i64))
                .unwrap();
            acc = acc.checked_add(&pj.checked_mul(&fi).unwrap()).unwrap();
        }
    }
    acc
}

/// Coefficient of `α^k` in `p · f`.
fn conv(p: &PowerSeries, c: &[Scalar], k: usize) -> Scalar {
    let mut acc = Scalar::zero();
    for j in 0..=k {
        let pj = p.coeff(j);
        if pj.is_zero() {
            continue;
        }
        let i = k - j;
        if i < c.len() {
            acc = acc.checked_add(&pj.checked_mul(&c[i]).unwrap()).unwrap();
        }
    }
    acc
}

/// Solve the ODE by the convolution recurrence with initial data `(c0, c1)`.
///
/// Requires an ordinary point at the origin: `p2(0) ≠ 0`, or `p2 ≡ 0` with
/// `p1(0) ≠ 0` (first-order case; `c1` is then determined, not free).
/// Returns coefficients `c0..c_order` and the independently recomputed
/// residual coefficients `0..=order-2`.
pub fn solve_series(
    spec: &OdeSpec,
    c0: &Scalar,
    c1: &Scalar,
    order: usize,
) -> Result<SeriesSolution> {
    if order < 4 {
        return Err(Error::Domain("truncation order must be >= 4".into()));
    }
    let mut coeffs: Vec<Scalar> = vec![Scalar::zero(); order + 1];
    coeffs[0] = c0.clone();

    if spec.first_order {
        let p1_0 = spec.p1.coeff(0);
        if p1_0.is_zero() {
            return Err(Error::SingularPoint(
                "p2 vanishes identically and p1(0) = 0".into(),
            ));
        }
        // coefficient of α^k: Σ p1_j (k+1-j) c_{k+1-j} + Σ p0_j c_{k-j} = 0
        for k in 0..order {
            let mut rhs = Scalar::zero();
            for j in 1..=k {
                let pj = spec.p1.coeff(j);
                if !pj.is_zero() {
                    let i = k - j;
                    let term = coeffs[i + 1]
                        .checked_mul(&Scalar::from_int((i + 1) as i64))
                        .unwrap()
                        .checked_mul(&pj)
                        .unwrap();
                    rhs = rhs.checked_add(&term).unwrap();
                }
            }
            rhs = rhs.checked_add(&conv(&spec.p0, &coeffs, k)).unwrap();
            let denom = p1_0
                .checked_mul(&Scalar::from_int((k + 1) as i64))
                .unwrap();
            coeffs[k + 1] = rhs.neg().checked_div(&denom)?;
        }
    } else {
        let p2_0 = spec.p2.coeff(0);
        if p2_0.is_zero() {
            return Err(Error::SingularPoint(
                "p2(0) = 0 with p2 not identically zero".into(),
            ));
        }
        coeffs[1] = c1.clone();
        // coefficient of α^k determines c_{k+2}:
        // p2_0 (k+2)(k+1) c_{k+2} = -( Σ_{j>=1} p2_j (f'')_{k-j}
        //                            + (p1 f')_k + (p0 f)_k )
        for k in 0..order - 1 {
            let mut rhs = Scalar::zero();
            for j in 1..=k {
                let pj = spec.p2.coeff(j);
                if !pj.is_zero() {
                    let i = k - j;
                    let term = coeffs[i + 2]
                        .checked_mul(&Scalar::from_int(((i + 2) * (i + 1)) as i64))
                        .unwrap()
                        .checked_mul(&pj)
                        .unwrap();
                    rhs = rhs.checked_add(&term).unwrap();
                }
            }
            rhs = rhs
                .checked_add(&conv_deriv(&spec.p1, &coeffs, k))
                .unwrap()
                .checked_add(&conv(&spec.p0, &coeffs, k))
                .unwrap();
            let denom = p2_0
                .checked_mul(&Scalar::from_int(((k + 2) * (k + 1)) as i64))
                .unwrap();
            coeffs[k + 2] = rhs.neg().checked_div(&denom)?;
        }
    }

    // independent residual recomputation at orders 0..=order-2
    let mut residual = Vec::with_capacity(order.saturating_sub(1));
    for k in 0..=order.saturating_sub(2) {
        let r = conv_deriv2(&spec.p2, &coeffs, k)
            .checked_add(&conv_deriv(&spec.p1, &coeffs, k))
            .unwrap()
            .checked_add(&conv(&spec.p0, &coeffs, k))
            .unwrap();
        residual.push(r);
    }

    Ok(SeriesSolution {
        coeffs,
        residual,
        c0: c0.clone(),
        c1: c1.clone(),
    })
}

/// Residual rows of the matrix form of the eigenproblem.
#[derive(Clone, Debug, serde::Serialize)]
pub struct MatrixResidualReport {
    pub dim: usize,
    pub order: usize,
    pub rows_checked: usize,
    pub passed: bool,
    pub first_failing_row: Option<usize>,
}

/// Apply `H − λ` from the matching truncated representation to the solution
/// coefficient vector and require rows `0..=order-2` to vanish exactly. The
/// representation matrices are an independent oracle for the ODE coefficient
/// series.
pub fn matrix_residual(
    p: &EigenProblem,
    sol: &SeriesSolution,
    dim: usize,
) -> Result<MatrixResidualReport> {
    if dim < p.order + 4 {
        return Err(Error::Domain(format!(
            "matrix residual needs dim >= order + 4 (got dim={dim}, order={})",
            p.order
        )));
    }
    let r = rep(p.kind, dim, &p.param)?;
    let ops = [Gen::N, Gen::BMinus, Gen::BPlus, Gen::AMinus, Gen::APlus];
    // H = β1 N + β2 B- + β3 B+ + β4 A- + β5 A+
    let mut h = crate::matrix::Matrix::zeros(dim);
    for (beta, g) in p.betas.iter().zip(ops) {
        if !beta.is_zero() {
            h = h.add(&r.mat(g).scale(beta));
        }
    }
    // rows of (H - λ) c
    let mut c = sol.coeffs.clone();
    c.resize(dim, Scalar::zero());
    let rows_checked = p.order - 1;
    let mut first_fail = None;
    for i in 0..rows_checked {
        let mut acc = Scalar::zero();
        for j in 0..dim {
            let hij = h.get(i, j);
            if !hij.is_zero() {
                acc = acc.checked_add(&hij.checked_mul(&c[j])?)?;
            }
        }
        acc = acc.checked_sub(&p.lambda.checked_mul(&c[i])?)?;
        if !acc.is_zero() {
            first_fail = Some(i);
            break;
        }
    }
    Ok(MatrixResidualReport {
        dim,
        order: p.order,
        rows_checked,
        passed: first_fail.is_none(),
        first_failing_row: first_fail,
    })
}

/// JSON form of a solution together with its ODE spec, for auditability.
pub fn solution_to_json(p: &EigenProblem, spec: &OdeSpec, sol: &SeriesSolution) -> serde_json::Value {
    let series_json = |s: &PowerSeries| -> serde_json::Value {
        serde_json::Value::Array(
            s.coeffs
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        )
    };
    serde_json::json!({
        "kind": p.kind.name(),
        "parameter": p.param.to_string(),
        "betas": p.betas.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "lambda": p.lambda.to_string(),
        "order": p.order,
        "ode": {
            "p2": series_json(&spec.p2),
            "p1": series_json(&spec.p1),
            "p0": series_json(&spec.p0),
            "first_order": spec.first_order,
        },
        "coefficients": sol.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "residual_zero": sol.residual_is_zero(),
    })
}
