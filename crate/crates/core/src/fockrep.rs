//! Truncated one-boson representations in the Bargmann monomial basis
//! `e_m ≅ α^m`, m = 0..D-1: the raising operator is the shift matrix, the
//! lowering operator the weighted shift, and every deformed generator is an
//! exact-scalar matrix built from regularized series. The number basis is a
//! derived floating-point view.

use crate::error::{Error, Result};
use crate::expr::{relation_table, RelationCheck, RelationReport};
use crate::lie::Gen;
use crate::matrix::{guarded_indices, nilpotent_series, Matrix};
use crate::scalar::Scalar;
use crate::series::{
    exp_2ct2_series, exp_series, expm1_div_series, one_minus_exp_neg_div_series, phi1_series,
    psi_over_t_series, psi_series, q_series, w_series, PowerSeries,
};

/// Which algebra a truncated representation realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RepKind {
    #[serde(rename = "classical")]
    Classical,
    #[serde(rename = "ua1")]
    Ua1,
    #[serde(rename = "ua2")]
    Ua2,
}

impl RepKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "classical" | "cl" => Ok(RepKind::Classical),
            "ua1" => Ok(RepKind::Ua1),
            "ua2" => Ok(RepKind::Ua2),
            _ => Err(Error::Parse(format!("unknown representation kind `{s}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RepKind::Classical => "classical",
            RepKind::Ua1 => "ua1",
            RepKind::Ua2 => "ua2",
        }
    }

    /// The primitive generator whose exponentials appear in the deformed
    /// relation tables and coproducts.
    pub fn primitive(self) -> Gen {
        match self {
            RepKind::Classical | RepKind::Ua1 => Gen::APlus,
            RepKind::Ua2 => Gen::BPlus,
        }
    }
}

/// A truncated representation: one exact matrix per generator.
#[derive(Clone, Debug)]
pub struct TruncRep {
    pub kind: RepKind,
    pub param: Scalar,
    dim: usize,
    mats: [Matrix; 6],
}

impl TruncRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat(&self, g: Gen) -> &Matrix {
        &self.mats[g.index()]
    }

    pub fn generators(&self) -> impl Iterator<Item = (Gen, &Matrix)> {
        Gen::ALL.iter().map(|g| (*g, &self.mats[g.index()]))
    }
}

/// Truncated boson pair: `â+ e_m = e_{m+1}` (top row truncated) and
/// `â- e_m = m e_{m-1}`; `[â-, â+] = 1` except in the last diagonal entry.
pub fn boson_ops(dim: usize) -> Result<(Matrix, Matrix)> {
    if dim < 2 {
        return Err(Error::Domain("boson operators need dimension >= 2".into()));
    }
    let mut up = Matrix::zeros(dim);
    let mut down = Matrix::zeros(dim);
    for m in 0..dim - 1 {
        up.set(m + 1, m, Scalar::one());
    }
    for m in 1..dim {
        down.set(m - 1, m, Scalar::from_int(m as i64));
    }
    Ok((up, down))
}

/// Matrix of the multiplication operator with Taylor coefficients `f`:
/// entry `(m+k, m) = f_k`.
pub fn series_matrix(f: &PowerSeries, dim: usize) -> Matrix {
    let mut out = Matrix::zeros(dim);
    for m in 0..dim {
        for k in 0..dim - m {
            let c = f.coeff(k);
            if !c.is_zero() {
                out.set(m + k, m, c);
            }
        }
    }
    out
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 4 {
        return Err(Error::Domain(
            "truncated representations need dimension >= 4".into(),
        ));
    }
    Ok(())
}

/// Classical one-boson representation: `N = â+â-, A± = â±, B± = â±², M = 1`.
pub fn rep_classical(dim: usize) -> Result<TruncRep> {
    check_dim(dim)?;
    let (up, down) = boson_ops(dim)?;
    let mats = [
        up.mul(&down),       // N
        up.clone(),          // A+
        down.clone(),        // A-
        up.mul(&up),         // B+
        down.mul(&down),     // B-
        Matrix::identity(dim), // M
    ];
    Ok(TruncRep {
        kind: RepKind::Classical,
        param: Scalar::zero(),
        dim,
        mats,
    })
}

/// Deformed one-boson realization of the A+-primitive quantum algebra:
/// `N = ((e^{a â+}-1)/a) â-`, `A+ = â+`, `A- = e^{a â+} â-`,
/// `B+ = ((1-e^{-a â+})/a)^2`, `B- = e^{a â+} â-²`, `M = 1`.
pub fn rep_ua1(dim: usize, a: &Scalar) -> Result<TruncRep> {
    check_dim(dim)?;
    let (up, down) = boson_ops(dim)?;
    let down2 = down.mul(&down);
    let e = series_matrix(&exp_series(a, dim), dim);
    let f = series_matrix(&expm1_div_series(a, dim), dim);
    let g = one_minus_exp_neg_div_series(a, dim);
    let g2 = series_matrix(&g.mul(&g, dim), dim);
    let mats = [
        f.mul(&down),
        up,
        e.mul(&down),
        g2,
        e.mul(&down2),
        Matrix::identity(dim),
    ];
    Ok(TruncRep {
        kind: RepKind::Ua1,
        param: a.clone(),
        dim,
        mats,
    })
}

/// Deformed one-boson realization of the B+-primitive quantum algebra:
/// `B+ = â+², M = 1, N = φ1(â+) â-, A+ = ψ(â+)`,
/// `A- = e^{2a â+²} (ψ(â+)/â+) â-`, and
/// `B- = q(â+) â-² + w(â+) â-`, where the apparent 1/t and 1/t³
/// singularities cancel into the regular series `q` and `w`.
pub fn rep_ua2(dim: usize, a: &Scalar) -> Result<TruncRep> {
    check_dim(dim)?;
    let (up, down) = boson_ops(dim)?;
    let down2 = down.mul(&down);
    let phi1 = series_matrix(&phi1_series(a, dim), dim);
    let psi = series_matrix(&psi_series(a, dim)?, dim);
    let h = psi_over_t_series(a, dim)?;
    let e2h = exp_2ct2_series(a, dim).mul(&h, dim);
    let am = series_matrix(&e2h, dim).mul(&down);
    let q = series_matrix(&q_series(a, dim), dim);
    let w = series_matrix(&w_series(a, dim), dim);
    let mats = [
        phi1.mul(&down),
        psi,
        am,
        up.mul(&up),
        q.mul(&down2).add(&w.mul(&down)),
        Matrix::identity(dim),
    ];
    Ok(TruncRep {
        kind: RepKind::Ua2,
        param: a.clone(),
        dim,
        mats,
    })
}

/// Build a representation by kind.
pub fn rep(kind: RepKind, dim: usize, param: &Scalar) -> Result<TruncRep> {
    match kind {
        RepKind::Classical => rep_classical(dim),
        RepKind::Ua1 => rep_ua1(dim, param),
        RepKind::Ua2 => rep_ua2(dim, param),
    }
}

/// Operator-function evaluation `Σ c_k A^k` on a nilpotent matrix; thin
/// wrapper pairing [`PowerSeries`] with [`nilpotent_series`].
pub fn apply_series(f: &PowerSeries, a: &Matrix) -> Result<Matrix> {
    nilpotent_series(&|k| f.coeff(k), a)
}

/// Check every commutation relation of the representation's table against
/// the generator matrices, exactly, on the guarded block
/// `{(i, j) : i, j ≤ D-1-G}`. Truncation artifacts live within a bounded
/// band below the cutoff, so the guarded block of a correct table is exact.
pub fn check_relations(rep: &TruncRep, guard: usize) -> Result<RelationReport> {
    if guard < 2 || rep.dim <= guard {
        return Err(Error::Domain(
            "relation check needs guard >= 2 and dim > guard".into(),
        ));
    }
    let table = relation_table(rep.kind, &rep.param);
    let idx = guarded_indices(rep.dim, guard);
    let mut checks = Vec::new();
    for rel in &table {
        let lhs = rep.mat(rel.x).commutator(rep.mat(rel.y));
        let rhs = rel.rhs.eval(rep)?;
        let diff = lhs.sub(&rhs);
        let failure = diff.first_nonzero_on(&idx, &idx);
        // report the worst (max-index) violation as well as the first
        let max_violation = {
            let mut worst = None;
            for &i in &idx {
                for &j in &idx {
                    if !diff.get(i, j).is_zero() {
                        worst = Some((i, j));
                    }
                }
            }
            worst
        };
        checks.push(RelationCheck {
            relation: format!("[{},{}]", rel.x.name(), rel.y.name()),
            passed: failure.is_none(),
            first_failure: failure,
            max_failure: max_violation,
        });
    }
    Ok(RelationReport {
        kind: rep.kind,
        dim: rep.dim,
        guard,
        parameter: rep.param.to_string(),
        checks,
    })
}

/// Truncation-growth oracle: generator matrices computed at `dim` and at
/// `dim + growth` must agree exactly on the top-left `(dim-4)²` block.
pub fn truncation_growth_ok(
    kind: RepKind,
    dim: usize,
    growth: usize,
    param: &Scalar,
) -> Result<bool> {
    let small = rep(kind, dim, param)?;
    let large = rep(kind, dim + growth, param)?;
    let block = dim - 4;
    for g in Gen::ALL {
        let a = small.mat(g);
        let b = large.mat(g);
        for i in 0..block {
            for j in 0..block {
                if a.get(i, j) != b.get(i, j) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Number-basis view: conjugate each monomial-basis matrix by
/// `diag(sqrt(m!))`, in double precision. Requires rational entries.
pub fn to_number_basis(rep: &TruncRep) -> Result<Vec<(Gen, Vec<Vec<f64>>)>> {
    let dim = rep.dim;
    // sqrt(i!/j!) computed as a product over the gap to avoid overflow
    let ratio_sqrt = |i: usize, j: usize| -> f64 {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let mut prod = 1.0f64;
        for k in (lo + 1)..=hi {
            prod *= k as f64;
        }
        let s = prod.sqrt();
        if i >= j {
            s
        } else {
            1.0 / s
        }
    };
    let mut out = Vec::new();
    for (g, m) in rep.generators() {
        let mut rows = vec![vec![0.0f64; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let v = m.get(i, j);
                if v.is_zero() {
                    continue;
                }
                rows[i][j] = v.to_f64()? * ratio_sqrt(i, j);
            }
        }
        out.push((g, rows));
    }
    Ok(out)
}
