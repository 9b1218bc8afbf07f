//! Dense matrices over exact scalars, plus the tensor-product and
//! nilpotent-series machinery the truncated representations run on.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense square matrix over [`Scalar`], row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            entries: vec![Scalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b).expect("varsets must match"))
            .collect();
        Matrix {
            dim: self.dim,
            entries,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_sub(b).expect("varsets must match"))
            .collect();
        Matrix {
            dim: self.dim,
            entries,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|e| e.checked_mul(s).expect("varsets must match"))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.checked_mul(b).expect("varsets must match");
                    let cur = out.get(i, j).checked_add(&prod).expect("varsets");
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Kronecker product; index `(i1, i2)` flattens to `i1 * other.dim + i2`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (n, m) = (self.dim, other.dim);
        let mut out = Matrix::zeros(n * m);
        for i1 in 0..n {
            for j1 in 0..n {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..m {
                    for j2 in 0..m {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(
                            i1 * m + i2,
                            j1 * m + j2,
                            a.checked_mul(b).expect("varsets"),
                        );
                    }
                }
            }
        }
        out
    }

    /// Embed a `D^2`-dimensional operator onto legs `(l1, l2)` of the tensor
    /// cube, identity on the remaining leg. Legs are 0-based and `l1 < l2`.
    pub fn embed_pair(&self, leg_dim: usize, l1: usize, l2: usize) -> Matrix {
        let d = leg_dim;
        assert_eq!(self.dim, d * d);
        assert!(l1 < l2 && l2 < 3);
        let n = d * d * d;
        let mut out = Matrix::zeros(n);
        let idx = |t: &[usize; 3]| (t[0] * d + t[1]) * d + t[2];
        let mut it = [0usize; 3];
        for i0 in 0..d {
            for i1 in 0..d {
                for i2 in 0..d {
                    it[0] = i0;
                    it[1] = i1;
                    it[2] = i2;
                    let free = 3 - l1 - l2; // the leg not acted on
                    let mut jt = it;
                    for j1 in 0..d {
                        for j2 in 0..d {
                            let v = self.get(it[l1] * d + it[l2], j1 * d + j2);
                            if v.is_zero() {
                                continue;
                            }
                            jt[l1] = j1;
                            jt[l2] = j2;
                            jt[free] = it[free];
                            out.set(idx(&it), idx(&jt), v.clone());
                        }
                    }
                }
            }
        }
        out
    }

    /// The tensor-swap conjugation `σ M σ` on a two-leg operator.
    pub fn swap_legs(&self, leg_dim: usize) -> Matrix {
        let d = leg_dim;
        assert_eq!(self.dim, d * d);
        let mut out = Matrix::zeros(d * d);
        for i1 in 0..d {
            for i2 in 0..d {
                for j1 in 0..d {
                    for j2 in 0..d {
                        let v = self.get(i1 * d + i2, j1 * d + j2);
                        if !v.is_zero() {
                            out.set(i2 * d + i1, j2 * d + j1, v.clone());
                        }
                    }
                }
            }
        }
        out
    }

    /// Exact equality of the top-left `size × size` blocks.
    pub fn block_eq(&self, other: &Matrix, size: usize) -> bool {
        for i in 0..size {
            for j in 0..size {
                if self.get(i, j) != other.get(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// First nonzero entry `(i, j)` restricted to `guarded` index sets, if
    /// any. `None` means the matrix vanishes there.
    pub fn first_nonzero_on(&self, rows: &[usize], cols: &[usize]) -> Option<(usize, usize)> {
        for &i in rows {
            for &j in cols {
                if !self.get(i, j).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Entry-wise specialization of single-variable polynomial entries to
    /// their degree-`k` rational coefficient, as a new rational matrix.
    pub fn degree_coefficient(&self, k: u32) -> Result<Matrix> {
        let mut out = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let c = self.get(i, j).coeff_of_degree(k)?;
                out.set(i, j, Scalar::from_rat(c));
            }
        }
        Ok(out)
    }

    /// Entry-wise constant term (deformation parameter set to zero).
    pub fn constant_term(&self) -> Matrix {
        let mut out = Matrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, Scalar::from_rat(self.get(i, j).constant_term()));
            }
        }
        out
    }
}

/// Evaluate `Σ coeffs(k) · A^k` for nilpotent `A`; the sum terminates when
/// `A^k = 0`, which must happen at `k ≤ dim`. Returns a domain error for
/// non-nilpotent input. `coeffs` is consulted lazily so callers can supply
/// series of any length (missing coefficients are zero).
pub fn nilpotent_series(coeffs: &dyn Fn(usize) -> Scalar, a: &Matrix) -> Result<Matrix> {
    let n = a.dim();
    let mut out = Matrix::zeros(n);
    let mut power = Matrix::identity(n);
    let mut k = 0usize;
    loop {
        let c = coeffs(k);
        if !c.is_zero() {
            out = out.add(&power.scale(&c));
        }
        power = power.mul(a);
        k += 1;
        if power.is_zero() {
            break;
        }
        if k > n {
            return Err(Error::NotNilpotent);
        }
    }
    Ok(out)
}

/// Guarded index set `{0, ..., dim-1-guard}`.
pub fn guarded_indices(dim: usize, guard: usize) -> Vec<usize> {
    if guard >= dim {
        return Vec::new();
    }
    (0..=dim - 1 - guard).collect()
}

/// Flattened two-leg indices whose components both lie in the guarded range.
pub fn guarded_tensor2(leg_dim: usize, guard: usize) -> Vec<usize> {
    let keep = guarded_indices(leg_dim, guard);
    let mut out = Vec::with_capacity(keep.len() * keep.len());
    for &i in &keep {
        for &j in &keep {
            out.push(i * leg_dim + j);
        }
    }
    out
}

/// Flattened three-leg indices whose components all lie in the guarded range.
pub fn guarded_tensor3(leg_dim: usize, guard: usize) -> Vec<usize> {
    let keep = guarded_indices(leg_dim, guard);
    let mut out = Vec::new();
    for &i in &keep {
        for &j in &keep {
            for &k in &keep {
                out.push((i * leg_dim + j) * leg_dim + k);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift(dim: usize) -> Matrix {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim - 1 {
            m.set(i + 1, i, Scalar::one());
        }
        m
    }

    #[test]
    fn exp_of_shift_is_pascal_like() {
        let a = shift(4);
        let exp = nilpotent_series(
            &|k| {
                let mut fact = Scalar::one();
                for i in 1..=k {
                    fact = fact.checked_mul(&Scalar::from_int(i as i64)).unwrap();
                }
                Scalar::one().checked_div(&fact).unwrap()
            },
            &a,
        )
        .unwrap();
        assert_eq!(*exp.get(2, 0), Scalar::ratio(1, 2));
        assert_eq!(*exp.get(3, 0), Scalar::ratio(1, 6));
        assert_eq!(*exp.get(3, 2), Scalar::one());
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let id = Matrix::identity(3);
        let r = nilpotent_series(&|_| Scalar::one(), &id);
        assert!(matches!(r, Err(Error::NotNilpotent)));
    }

    #[test]
    fn kron_and_embed_agree_on_leg_pairs() {
        let d = 3;
        let a = shift(d);
        let b = Matrix::identity(d).scale(&Scalar::from_int(2));
        let ab = a.kron(&b);
        // embedding (0,1) of a (x) b must equal a (x) b (x) 1
        let emb = ab.embed_pair(d, 0, 1);
        let full = ab.kron(&Matrix::identity(d));
        assert_eq!(emb, full);
        // embedding (1,2) must equal 1 (x) a (x) b
        let emb = ab.embed_pair(d, 1, 2);
        let full = Matrix::identity(d).kron(&ab);
        assert_eq!(emb, full);
        // embedding (0,2) must equal a (x) 1 (x) b
        let emb = ab.embed_pair(d, 0, 2);
        let full = a.kron(&Matrix::identity(d)).kron(&b);
        assert_eq!(emb, full);
    }

    #[test]
    fn swap_legs_is_involutive() {
        let d = 3;
        let m = shift(d).kron(&Matrix::identity(d).scale(&Scalar::ratio(1, 2)));
        assert_eq!(m.swap_legs(d).swap_legs(d), m);
    }
}
