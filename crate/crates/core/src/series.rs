//! Truncated power series over exact scalars: Cauchy products, square roots,
//! and the named coefficient streams of the deformed representations and
//! eigenstate equations.
//!
//! Every removable singularity in the deformed operator coefficients is
//! regularized here at the coefficient level (symbolic division by the
//! deformation parameter folded into closed-form coefficients), never by
//! dividing matrices.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Truncated Taylor coefficients `c0..c_{len-1}` of an analytic function,
/// with a provenance label naming the function it came from. Used both as
/// operator-function coefficient lists (applied to nilpotent matrices) and as
/// ODE coefficient series. Equality compares coefficients only.
#[derive(Clone, Debug, Eq)]
pub struct PowerSeries {
    pub coeffs: Vec<Scalar>,
    pub label: Option<String>,
}

impl PartialEq for PowerSeries {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl PowerSeries {
    pub fn zero(len: usize) -> Self {
        PowerSeries {
            coeffs: vec![Scalar::zero(); len],
            label: None,
        }
    }

    pub fn one(len: usize) -> Self {
        let mut s = PowerSeries::zero(len);
        s.coeffs[0] = Scalar::one();
        s
    }

    pub fn labeled(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let len = self.len().max(other.len());
        let mut out = PowerSeries::zero(len);
        for k in 0..len {
            out.coeffs[k] = self.coeff(k).checked_add(&other.coeff(k)).expect("varsets");
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> PowerSeries {
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.checked_mul(s).expect("varsets"))
                .collect(),
            label: self.label.clone(),
        }
    }

    /// Cauchy product truncated at `len`.
    pub fn mul(&self, other: &PowerSeries, len: usize) -> PowerSeries {
        let mut out = PowerSeries::zero(len);
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                let p = a.checked_mul(b).expect("varsets");
                out.coeffs[i + j] = out.coeffs[i + j].checked_add(&p).expect("varsets");
            }
        }
        out
    }

    /// Series square root with constant term `+1` (the branch compatible with
    /// the classical limit). Requires `self.coeffs[0] == 1`.
    pub fn sqrt(&self, len: usize) -> Result<PowerSeries> {
        if self.coeff(0) != Scalar::one() {
            return Err(Error::Domain(
                "series square root requires constant term 1".into(),
            ));
        }
        let mut h = PowerSeries::zero(len);
        h.coeffs[0] = Scalar::one();
        let half = Scalar::ratio(1, 2);
        for n in 1..len {
            let mut s = Scalar::zero();
            for k in 1..n {
                s = s
                    .checked_add(&h.coeffs[k].checked_mul(&h.coeffs[n - k]).expect("varsets"))
                    .expect("varsets");
            }
            let g = self.coeff(n);
            h.coeffs[n] = g
                .checked_sub(&s)
                .expect("varsets")
                .checked_mul(&half)
                .expect("varsets");
        }
        Ok(h)
    }

    /// Shift down by `k` powers of the variable; the dropped coefficients
    /// must all be zero (an exactness check on the regularization).
    pub fn div_t(&self, k: usize) -> Result<PowerSeries> {
        for i in 0..k.min(self.len()) {
            if !self.coeffs[i].is_zero() {
                return Err(Error::Domain(format!(
                    "series has a nonzero coefficient at order {i} < {k}; not divisible by t^{k}"
                )));
            }
        }
        Ok(PowerSeries {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
            label: self.label.clone(),
        })
    }

    /// Shift up by `k` powers of the variable, truncating at `len`.
    pub fn mul_t(&self, k: usize, len: usize) -> PowerSeries {
        let mut out = PowerSeries::zero(len);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k < len {
                out.coeffs[i + k] = c.clone();
            }
        }
        out
    }
}

fn factorial(k: usize) -> Scalar {
    let mut f = Scalar::one();
    for i in 1..=k {
        f = f.checked_mul(&Scalar::from_int(i as i64)).unwrap();
    }
    f
}

/// `e^{c t}`: coefficients `c^k / k!`.
pub fn exp_series(c: &Scalar, len: usize) -> PowerSeries {
    let mut out = PowerSeries::zero(len);
    let mut num = Scalar::one();
    for k in 0..len {
        if k > 0 {
            num = num.checked_mul(c).expect("varsets");
        }
        out.coeffs[k] = num.checked_div(&factorial(k)).unwrap();
    }
    out.labeled("exp(c t)")
}

/// `(e^{c t} - 1)/c` with the division folded in: coefficients
/// `c^{k-1}/k!` for `k ≥ 1`, zero constant term. Exact for polynomial `c`.
pub fn expm1_div_series(c: &Scalar, len: usize) -> PowerSeries {
    let mut out = PowerSeries::zero(len);
    let mut num = Scalar::one();
    for k in 1..len {
        if k > 1 {
            num = num.checked_mul(c).expect("varsets");
        }
        out.coeffs[k] = num.checked_div(&factorial(k)).unwrap();
    }
    out.labeled("(exp(c t) - 1)/c")
}

/// `(1 - e^{-c t})/c = (e^{(-c)t} - 1)/(-c)`.
pub fn one_minus_exp_neg_div_series(c: &Scalar, len: usize) -> PowerSeries {
    expm1_div_series(&c.neg(), len)
}

/// `(e^{2 c t^2} - 1)/(2 c t)`: odd series with `t^{2n-1}` coefficient
/// `(2c)^{n-1}/n!`. The N coefficient of the B+-primitive representation.
pub fn phi1_series(c: &Scalar, len: usize) -> PowerSeries {
    let two_c = c.checked_mul(&Scalar::from_int(2)).expect("varsets");
    let mut out = PowerSeries::zero(len);
    let mut num = Scalar::one();
    let mut n = 1usize;
    while 2 * n - 1 < len {
        if n > 1 {
            num = num.checked_mul(&two_c).expect("varsets");
        }
        out.coeffs[2 * n - 1] = num.checked_div(&factorial(n)).unwrap();
        n += 1;
    }
    out.labeled("(exp(2c t^2) - 1)/(2c t)")
}

/// `(1 - e^{-2 c t^2})/(2c)`: even series with `t^{2n}` coefficient
/// `(-1)^{n+1} (2c)^{n-1}/n!`. This is the square of the deformed A+.
pub fn psi_squared_series(c: &Scalar, len: usize) -> PowerSeries {
    let two_c = c.checked_mul(&Scalar::from_int(2)).expect("varsets");
    let mut out = PowerSeries::zero(len);
    let mut num = Scalar::one();
    let mut n = 1usize;
    while 2 * n < len {
        if n > 1 {
            num = num.checked_mul(&two_c).expect("varsets");
        }
        let sign = if n % 2 == 1 { 1 } else { -1 };
        out.coeffs[2 * n] = num
            .checked_div(&factorial(n))
            .unwrap()
            .checked_mul(&Scalar::from_int(sign))
            .unwrap();
        n += 1;
    }
    out.labeled("(1 - exp(-2c t^2))/(2c)")
}

/// `ψ(t) = ((1 - e^{-2ct^2})/(2c))^{1/2} = t·sqrt(ψ²/t²)`, the +1 branch.
pub fn psi_series(c: &Scalar, len: usize) -> Result<PowerSeries> {
    let s2 = psi_squared_series(c, len + 2);
    let h2 = s2.div_t(2)?;
    let h = h2.sqrt(len)?;
    Ok(h.mul_t(1, len).labeled("((1 - exp(-2c t^2))/(2c))^(1/2)"))
}

/// Even regular factor `h(t) = ψ(t)/t`, used by the deformed A- coefficient
/// `e^{2ct^2} h(t)`.
pub fn psi_over_t_series(c: &Scalar, len: usize) -> Result<PowerSeries> {
    let s2 = psi_squared_series(c, len + 2);
    Ok(s2.div_t(2)?.sqrt(len)?.labeled("psi(t)/t"))
}

/// `e^{2 c t^2}`: even series with `t^{2n}` coefficient `(2c)^n/n!`.
pub fn exp_2ct2_series(c: &Scalar, len: usize) -> PowerSeries {
    let two_c = c.checked_mul(&Scalar::from_int(2)).expect("varsets");
    let mut out = PowerSeries::zero(len);
    let mut num = Scalar::one();
    let mut n = 0usize;
    while 2 * n < len {
        if n > 0 {
            num = num.checked_mul(&two_c).expect("varsets");
        }
        out.coeffs[2 * n] = num.checked_div(&factorial(n)).unwrap();
        n += 1;
    }
    out.labeled("exp(2c t^2)")
}

/// `(e^{2 c t^2} - 1)/(2 c t^2)`: even series with `t^{2n-2}` coefficient
/// `(2c)^{n-1}/n!`. The second-derivative coefficient of the deformed B-.
pub fn q_series(c: &Scalar, len: usize) -> PowerSeries {
    phi1_series(c, len + 1)
        .div_t(1)
        .expect("odd series")
        .labeled("(exp(2c t^2) - 1)/(2c t^2)")
}

/// Regularized first-derivative coefficient of the deformed B-:
/// its two singular-looking parts combine into
/// `Σ_{n≥1} (2c)^n · n/(n+1)! · t^{2n-1}`, with no negative powers.
pub fn w_series(c: &Scalar, len: usize) -> PowerSeries {
    let two_c = c.checked_mul(&Scalar::from_int(2)).expect("varsets");
    let mut out = PowerSeries::zero(len);
    let mut num = Scalar::one();
    let mut n = 1usize;
    while 2 * n - 1 < len {
        num = num.checked_mul(&two_c).expect("varsets");
        let coeff = num
            .checked_mul(&Scalar::from_int(n as i64))
            .unwrap()
            .checked_div(&factorial(n + 1))
            .unwrap();
        out.coeffs[2 * n - 1] = coeff;
        n += 1;
    }
    out.labeled("regularized B- drift coefficient")
}
