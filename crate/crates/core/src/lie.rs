//! The two-photon Lie algebra h6: six generators, compiled structure
//! constants, and sparse elements over exact scalars.
//!
//! Commutation table:
//!
//! ```text
//! [N,A+] = A+     [N,A-] = -A-      [A-,A+] = M
//! [N,B+] = 2B+    [N,B-] = -2B-     [B-,B+] = 4N + 2M
//! [A+,B-] = -2A-  [A+,B+] = 0       [M, . ] = 0
//! [A-,B+] = 2A+   [A-,B-] = 0
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, VarSet};

/// Basis generators in the fixed serialization order `(N, A+, A-, B+, B-, M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    N,
    APlus,
    AMinus,
    BPlus,
    BMinus,
    M,
}

impl Gen {
    pub const ALL: [Gen; 6] = [
        Gen::N,
        Gen::APlus,
        Gen::AMinus,
        Gen::BPlus,
        Gen::BMinus,
        Gen::M,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Gen::N => "N",
            Gen::APlus => "A+",
            Gen::AMinus => "A-",
            Gen::BPlus => "B+",
            Gen::BMinus => "B-",
            Gen::M => "M",
        }
    }

    pub fn parse(s: &str) -> Result<Gen> {
        match s {
            "N" | "n" => Ok(Gen::N),
            "A+" | "Ap" | "ap" | "a+" => Ok(Gen::APlus),
            "A-" | "Am" | "am" | "a-" => Ok(Gen::AMinus),
            "B+" | "Bp" | "bp" | "b+" => Ok(Gen::BPlus),
            "B-" | "Bm" | "bm" | "b-" => Ok(Gen::BMinus),
            "M" | "m" => Ok(Gen::M),
            _ => Err(Error::Parse(format!("unknown generator `{s}`"))),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Gen::N => 0,
            Gen::APlus => 1,
            Gen::AMinus => 2,
            Gen::BPlus => 3,
            Gen::BMinus => 4,
            Gen::M => 5,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Structure constants: `[x, y]` for basis generators, as a list of
/// `(generator, integer coefficient)` pairs.
fn bracket_table(x: Gen, y: Gen) -> Vec<(Gen, i64)> {
    use Gen::*;
    if x == y || x == M || y == M {
        return vec![];
    }
    let ordered = |a: Gen, b: Gen| -> Option<Vec<(Gen, i64)>> {
        match (a, b) {
            (N, APlus) => Some(vec![(APlus, 1)]),
            (N, AMinus) => Some(vec![(AMinus, -1)]),
            (AMinus, APlus) => Some(vec![(M, 1)]),
            (N, BPlus) => Some(vec![(BPlus, 2)]),
            (N, BMinus) => Some(vec![(BMinus, -2)]),
            (BMinus, BPlus) => Some(vec![(N, 4), (M, 2)]),
            (APlus, BMinus) => Some(vec![(AMinus, -2)]),
            (APlus, BPlus) => Some(vec![]),
            (AMinus, BPlus) => Some(vec![(APlus, 2)]),
            (AMinus, BMinus) => Some(vec![]),
            _ => None,
        }
    };
    if let Some(v) = ordered(x, y) {
        v
    } else if let Some(v) = ordered(y, x) {
        v.into_iter().map(|(g, c)| (g, -c)).collect()
    } else {
        unreachable!("bracket table covers all pairs")
    }
}

/// Sparse element of h6: map from basis generator to scalar coefficient.
/// Invariant: no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LieElement {
    coeffs: BTreeMap<Gen, Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn gen(g: Gen) -> Self {
        LieElement::term(g, Scalar::one())
    }

    pub fn term(g: Gen, c: Scalar) -> Self {
        let mut e = LieElement::zero();
        e.add_term(g, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, g: Gen) -> Scalar {
        self.coeffs.get(&g).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Gen, &Scalar)> {
        self.coeffs.iter().map(|(g, c)| (*g, c))
    }

    pub fn add_term(&mut self, g: Gen, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(g) {
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

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c.neg());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> LieElement {
        let mut out = LieElement::zero();
        for (g, c) in self.terms() {
            out.add_term(g, c.checked_mul(s).expect("variable sets must match"));
        }
        out
    }

    /// The distinct polynomial variable set used by the coefficients, if any.
    /// Errors when two coefficients carry different sets.
    pub fn varset(&self) -> Result<Option<VarSet>> {
        let mut found: Option<VarSet> = None;
        for (_, c) in self.terms() {
            if let Some(v) = c.vars() {
                match &found {
                    None => found = Some(v.clone()),
                    Some(w) if w == v => {}
                    Some(_) => return Err(Error::VarSetMismatch),
                }
            }
        }
        Ok(found)
    }
}

/// Lie bracket `[x, y]`, extended bilinearly from the structure constants.
///
/// Operands must share one scalar variable set; a mismatch is a domain error.
pub fn bracket(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    match (x.varset()?, y.varset()?) {
        (Some(v), Some(w)) if v != w => return Err(Error::VarSetMismatch),
        _ => {}
    }
    let mut out = LieElement::zero();
    for (gx, cx) in x.terms() {
        for (gy, cy) in y.terms() {
            let c = cx.checked_mul(cy)?;
            if c.is_zero() {
                continue;
            }
            for (gz, k) in bracket_table(gx, gy) {
                out.add_term(gz, c.checked_mul(&Scalar::from_int(k))?);
            }
        }
    }
    Ok(out)
}

/// Jacobi residuals `[[x,y],z] + [[y,z],x] + [[z,x],y]` for all 20 unordered
/// basis triples, in lexicographic order of `(i, j, k)`. All must be zero.
pub fn jacobi_residual() -> Vec<(Gen, Gen, Gen, LieElement)> {
    let mut out = Vec::new();
    for i in 0..6 {
        for j in (i + 1)..6 {
            for k in (j + 1)..6 {
                let (x, y, z) = (Gen::ALL[i], Gen::ALL[j], Gen::ALL[k]);
                let (ex, ey, ez) = (LieElement::gen(x), LieElement::gen(y), LieElement::gen(z));
                let r = bracket(&bracket(&ex, &ey).unwrap(), &ez)
                    .unwrap()
                    .add(&bracket(&bracket(&ey, &ez).unwrap(), &ex).unwrap())
                    .add(&bracket(&bracket(&ez, &ex).unwrap(), &ey).unwrap());
                out.push((x, y, z, r));
            }
        }
    }
    out
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(g, c)| format!("({})*{}", c, g.name()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_examples() {
        // [A-, A+] = M
        let r = bracket(&LieElement::gen(Gen::AMinus), &LieElement::gen(Gen::APlus)).unwrap();
        assert_eq!(r, LieElement::gen(Gen::M));
        // [B-, B+] = 4N + 2M
        let r = bracket(&LieElement::gen(Gen::BMinus), &LieElement::gen(Gen::BPlus)).unwrap();
        let mut want = LieElement::term(Gen::N, Scalar::from_int(4));
        want.add_term(Gen::M, Scalar::from_int(2));
        assert_eq!(r, want);
        // [M, anything] = 0
        for g in Gen::ALL {
            assert!(bracket(&LieElement::gen(Gen::M), &LieElement::gen(g))
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn antisymmetry_on_mixed_element() {
        let mut x = LieElement::term(Gen::N, Scalar::ratio(3, 7));
        x.add_term(Gen::BMinus, Scalar::ratio(-2, 5));
        x.add_term(Gen::APlus, Scalar::from_int(1));
        let r = bracket(&x, &x).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn all_twenty_jacobi_triples_vanish() {
        let res = jacobi_residual();
        assert_eq!(res.len(), 20);
        for (x, y, z, r) in res {
            assert!(r.is_zero(), "Jacobi fails on ({x}, {y}, {z}): {r}");
        }
    }

    #[test]
    fn bracket_is_bilinear() {
        let s = Scalar::ratio(5, 3);
        let x = LieElement::term(Gen::BMinus, Scalar::ratio(1, 2));
        let y = LieElement::gen(Gen::BPlus);
        let lhs = bracket(&x.scale(&s), &y).unwrap();
        let rhs = bracket(&x, &y).unwrap().scale(&s);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_rejects_mixed_varsets() {
        use crate::scalar::VarSet;
        let p = Scalar::var(&VarSet::params15(), "a1").unwrap();
        let q = Scalar::var(&VarSet::single("z"), "z").unwrap();
        let x = LieElement::term(Gen::N, p);
        let y = LieElement::term(Gen::APlus, q);
        assert!(matches!(bracket(&x, &y), Err(Error::VarSetMismatch)));
    }
}
