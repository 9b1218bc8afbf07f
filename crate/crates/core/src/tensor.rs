//! Sparse tensors over the h6 basis: second and third tensor powers, wedge
//! products, the Leibniz (adjoint) action, and the Schouten bracket.
//!
//! Conventions fixed here and relied on everywhere else:
//!   * `x ∧ y := x⊗y − y⊗x` (no 1/2 factor),
//!   * `x ∧ y ∧ z := Σ_{σ∈S3} sgn(σ) σ(x⊗y⊗z)`.
//!
//! With these normalizations the coboundary formula reproduces the classified
//! cocommutator tables term by term, and the Schouten bracket of
//! `c2 A+∧A-` equals `-c2^2 A+∧A-∧M` exactly (both are pinned by golden
//! tests).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::lie::{bracket, Gen, LieElement};
use crate::scalar::Scalar;

/// Sparse tensor of order 2 or 3 over the h6 basis.
/// Invariant: no stored zero coefficients; all keys have length `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    order: usize,
    coeffs: BTreeMap<Vec<Gen>, Scalar>,
}

impl TensorElement {
    pub fn zero(order: usize) -> Self {
        assert!(order == 2 || order == 3, "tensor order must be 2 or 3");
        TensorElement {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, key: &[Gen]) -> Scalar {
        self.coeffs
            .get(key)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Gen>, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, key: Vec<Gen>, c: Scalar) {
        debug_assert_eq!(key.len(), self.order);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().checked_add(&c).expect("variable sets must match");
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.order, other.order);
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.order, other.order);
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero(self.order);
        for (k, c) in self.terms() {
            out.add_term(k.clone(), c.checked_mul(s).expect("variable sets must match"));
        }
        out
    }

    /// Order-2 antisymmetry: `coeff(i,j) = -coeff(j,i)` for all pairs.
    /// Order-3: sign change under any transposition.
    pub fn is_antisymmetric(&self) -> bool {
        if self.order == 2 {
            for (k, c) in self.terms() {
                if k[0] == k[1] {
                    return false;
                }
                let swapped = vec![k[1], k[0]];
                if !self.coeff(&swapped).checked_add(c).unwrap().is_zero() {
                    return false;
                }
            }
            true
        } else {
            for (k, c) in self.terms() {
                if k[0] == k[1] || k[1] == k[2] || k[0] == k[2] {
                    return false;
                }
                for (i, j) in [(0usize, 1usize), (1, 2), (0, 2)] {
                    let mut t = k.clone();
                    t.swap(i, j);
                    if !self.coeff(&t).checked_add(c).unwrap().is_zero() {
                        return false;
                    }
                }
            }
            true
        }
    }

    /// Decompose an antisymmetric tensor into wedge-basis coefficients:
    /// for order 2 the pairs `i < j`, for order 3 the triples `i < j < k`,
    /// each paired with the coefficient of the ascending tensor key.
    pub fn wedge_coefficients(&self) -> Vec<(Vec<Gen>, Scalar)> {
        let mut out = Vec::new();
        for (k, c) in self.terms() {
            let mut sorted = k.clone();
            sorted.sort();
            if sorted == *k {
                out.push((k.clone(), c.clone()));
            }
        }
        out
    }

    /// Map each tensor leg through a linear map on generators.
    pub fn map_legs(&self, f: impl Fn(Gen) -> LieElement) -> TensorElement {
        let mut out = TensorElement::zero(self.order);
        for (k, c) in self.terms() {
            let legs: Vec<LieElement> = k.iter().map(|&g| f(g)).collect();
            // expand the product of linear combinations
            let mut partial: Vec<(Vec<Gen>, Scalar)> = vec![(Vec::new(), c.clone())];
            for leg in &legs {
                let mut next = Vec::new();
                for (key, coeff) in &partial {
                    for (g, lc) in leg.terms() {
                        let mut k2 = key.clone();
                        k2.push(g);
                        next.push((k2, coeff.checked_mul(lc).expect("varsets must match")));
                    }
                }
                partial = next;
            }
            for (key, coeff) in partial {
                out.add_term(key, coeff);
            }
        }
        out
    }
}

/// `x ∧ y = x⊗y − y⊗x`, bilinear in both slots.
pub fn wedge(x: &LieElement, y: &LieElement) -> TensorElement {
    let mut out = TensorElement::zero(2);
    for (gx, cx) in x.terms() {
        for (gy, cy) in y.terms() {
            let c = cx.checked_mul(cy).expect("varsets must match");
            out.add_term(vec![gx, gy], c.clone());
            out.add_term(vec![gy, gx], c.neg());
        }
    }
    out
}

/// `x ∧ y ∧ z = Σ_{σ∈S3} sgn(σ) σ(x⊗y⊗z)` for basis generators.
pub fn wedge3(x: Gen, y: Gen, z: Gen) -> TensorElement {
    const PERMS: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 0, 2], -1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
    ];
    let base = [x, y, z];
    let mut out = TensorElement::zero(3);
    for (perm, sgn) in PERMS {
        out.add_term(
            vec![base[perm[0]], base[perm[1]], base[perm[2]]],
            Scalar::from_int(sgn),
        );
    }
    out
}

/// Leibniz action of `x` on a tensor: bracket on each leg and sum.
/// This is `[1⊗x + x⊗1, t]` for order 2 and the three-leg analogue for
/// order 3; it preserves the order.
pub fn ad_tensor(x: &LieElement, t: &TensorElement) -> Result<TensorElement> {
    let mut out = TensorElement::zero(t.order());
    for (key, c) in t.terms() {
        for leg in 0..key.len() {
            let br = bracket(x, &LieElement::gen(key[leg]))?;
            for (gz, cz) in br.terms() {
                let mut k2 = key.clone();
                k2[leg] = gz;
                out.add_term(k2, c.checked_mul(cz)?);
            }
        }
    }
    Ok(out)
}

/// Schouten bracket `[[r, r]] = [r12, r13] + [r12, r23] + [r13, r23]` of an
/// order-2 tensor, as an order-3 tensor.
///
/// For `r = Σ r^{ij} Xi⊗Xj` the three terms expand to
/// `Σ r^{ij} r^{kl} ([Xi,Xk]⊗Xj⊗Xl + Xi⊗[Xj,Xk]⊗Xl + Xi⊗Xk⊗[Xj,Xl])`.
pub fn schouten_bracket(r: &TensorElement) -> Result<TensorElement> {
    assert_eq!(r.order(), 2);
    let mut out = TensorElement::zero(3);
    let terms: Vec<(Vec<Gen>, Scalar)> =
        r.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
    for (kij, cij) in &terms {
        let (i, j) = (kij[0], kij[1]);
        for (kkl, ckl) in &terms {
            let (k, l) = (kkl[0], kkl[1]);
            let c = cij.checked_mul(ckl)?;
            if c.is_zero() {
                continue;
            }
            for (gz, cz) in bracket(&LieElement::gen(i), &LieElement::gen(k))?.terms() {
                out.add_term(vec![gz, j, l], c.checked_mul(cz)?);
            }
            for (gz, cz) in bracket(&LieElement::gen(j), &LieElement::gen(k))?.terms() {
                out.add_term(vec![i, gz, l], c.checked_mul(cz)?);
            }
            for (gz, cz) in bracket(&LieElement::gen(j), &LieElement::gen(l))?.terms() {
                out.add_term(vec![i, k, gz], c.checked_mul(cz)?);
            }
        }
    }
    Ok(out)
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(k, c)| {
                let names: Vec<&str> = k.iter().map(|g| g.name()).collect();
                format!("({})*{}", c, names.join("(x)"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Gen::*;

    #[test]
    fn wedge_definition_and_antisymmetry() {
        let w = wedge(&LieElement::gen(N), &LieElement::gen(APlus));
        assert_eq!(w.coeff(&[N, APlus]), Scalar::one());
        assert_eq!(w.coeff(&[APlus, N]), Scalar::from_int(-1));
        assert!(w.is_antisymmetric());

        let x = LieElement::term(BMinus, Scalar::ratio(2, 3));
        assert!(wedge(&x, &x).is_zero());

        let a = wedge(&LieElement::gen(APlus), &LieElement::gen(M));
        let b = wedge(&LieElement::gen(M), &LieElement::gen(APlus));
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn ad_tensor_examples() {
        // M acts trivially on anything
        let t = wedge(&LieElement::gen(N), &LieElement::gen(BPlus));
        assert!(ad_tensor(&LieElement::gen(M), &t).unwrap().is_zero());

        // ad_{A+}(N ∧ M) = -A+ ∧ M (expanded by the Leibniz rule)
        let t = wedge(&LieElement::gen(N), &LieElement::gen(M));
        let got = ad_tensor(&LieElement::gen(APlus), &t).unwrap();
        let want = wedge(&LieElement::gen(APlus), &LieElement::gen(M))
            .scale(&Scalar::from_int(-1));
        assert_eq!(got, want);

        // zero input stays zero
        assert!(ad_tensor(&LieElement::gen(APlus), &TensorElement::zero(2))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn ad_tensor_preserves_antisymmetry() {
        let mut t = wedge(&LieElement::gen(AMinus), &LieElement::gen(BPlus));
        t = t.add(&wedge(&LieElement::gen(N), &LieElement::gen(M)).scale(&Scalar::ratio(5, 2)));
        for g in Gen::ALL {
            let r = ad_tensor(&LieElement::gen(g), &t).unwrap();
            assert!(r.is_antisymmetric(), "ad_{g} broke antisymmetry");
        }
    }

    #[test]
    fn schouten_of_c2_wedge_is_golden() {
        // [[c2 A+∧A-, c2 A+∧A-]] = -c2^2 A+∧A-∧M, checked at c2 = 1 and 3/2
        for c2 in [Scalar::one(), Scalar::ratio(3, 2)] {
            let r = wedge(&LieElement::gen(APlus), &LieElement::gen(AMinus)).scale(&c2);
            let s = schouten_bracket(&r).unwrap();
            let want = wedge3(APlus, AMinus, M).scale(&c2.checked_mul(&c2).unwrap().neg());
            assert_eq!(s, want);
        }
    }

    #[test]
    fn wedge3_is_alternating() {
        let w = wedge3(APlus, AMinus, M);
        assert!(w.is_antisymmetric());
        assert_eq!(w.coeff(&[APlus, AMinus, M]), Scalar::one());
        assert_eq!(w.coeff(&[AMinus, APlus, M]), Scalar::from_int(-1));
    }
}
