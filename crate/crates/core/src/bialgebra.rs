//! The 15-parameter coboundary Lie bialgebra family on h6: the general
//! classical r-matrix, cocommutators, the 19 classification equations with
//! their discriminant, the bialgebra automorphism, and the classified
//! two-primitive-generator families.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;

use crate::error::{Error, Result};
use crate::lie::{bracket, Gen, LieElement};
use crate::scalar::{parse_scalar, Scalar, VarSet};
use crate::tensor::{ad_tensor, schouten_bracket, wedge, wedge3, TensorElement};

/// Parameter names in their fixed serialization order.
pub const PARAM_NAMES: [&str; 15] = [
    "a1", "a2", "a3", "a4", "a5", "a6", "b1", "b2", "b3", "b4", "b5", "b6", "c1", "c2", "c3",
];

/// The fifteen coefficients `(a1..a6, b1..b6, c1..c3)` of the general
/// two-photon classical r-matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebraParams {
    vals: [Scalar; 15],
}

impl BialgebraParams {
    pub fn zero() -> Self {
        BialgebraParams {
            vals: std::array::from_fn(|_| Scalar::zero()),
        }
    }

    /// Fully symbolic parameters: each entry is its own variable over the
    /// fifteen-name set.
    pub fn symbolic() -> Self {
        let vars = VarSet::params15();
        BialgebraParams {
            vals: std::array::from_fn(|i| Scalar::var(&vars, PARAM_NAMES[i]).unwrap()),
        }
    }

    pub fn get(&self, name: &str) -> Result<&Scalar> {
        let i = PARAM_NAMES
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| Error::Parse(format!("unknown parameter `{name}`")))?;
        Ok(&self.vals[i])
    }

    pub fn set(&mut self, name: &str, v: Scalar) -> Result<()> {
        let i = PARAM_NAMES
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| Error::Parse(format!("unknown parameter `{name}`")))?;
        self.vals[i] = v;
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&'static str, &Scalar)> {
        PARAM_NAMES.iter().copied().zip(self.vals.iter())
    }

    /// Parse from the JSON object schema `{"a1": "p/q" | "<poly>", ...}`.
    /// Missing keys default to zero; unknown keys are rejected. Polynomial
    /// values are read over the fifteen-parameter variable set.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("params must be a JSON object".into()))?;
        let vars = VarSet::params15();
        let mut p = BialgebraParams::zero();
        for (k, val) in obj {
            let s = val
                .as_str()
                .ok_or_else(|| Error::Parse(format!("param `{k}` must be a string")))?;
            p.set(k, parse_scalar(s, &vars)?)?;
        }
        Ok(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (name, v) in self.entries() {
            m.insert(name.to_string(), serde_json::Value::String(v.to_string()));
        }
        serde_json::Value::Object(m)
    }
}

impl serde::Serialize for BialgebraParams {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(15))?;
        for (name, v) in self.entries() {
            map.serialize_entry(name, &v.to_string())?;
        }
        map.end()
    }
}

/// The fifteen wedge monomials of the general r-matrix, parallel to
/// [`PARAM_NAMES`].
const R_MONOMIALS: [(Gen, Gen); 15] = [
    (Gen::N, Gen::APlus),       // a1
    (Gen::N, Gen::BPlus),       // a2
    (Gen::APlus, Gen::M),       // a3
    (Gen::BPlus, Gen::M),       // a4
    (Gen::APlus, Gen::BPlus),   // a5
    (Gen::APlus, Gen::BMinus),  // a6
    (Gen::N, Gen::AMinus),      // b1
    (Gen::N, Gen::BMinus),      // b2
    (Gen::AMinus, Gen::M),      // b3
    (Gen::BMinus, Gen::M),      // b4
    (Gen::AMinus, Gen::BMinus), // b5
    (Gen::AMinus, Gen::BPlus),  // b6
    (Gen::N, Gen::M),           // c1
    (Gen::APlus, Gen::AMinus),  // c2
    (Gen::BPlus, Gen::BMinus),  // c3
];

/// Build the classical r-matrix `r = a1 N∧A+ + a2 N∧B+ + ... + c3 B+∧B-`.
pub fn build_r(p: &BialgebraParams) -> TensorElement {
    let mut r = TensorElement::zero(2);
    for (i, (x, y)) in R_MONOMIALS.iter().enumerate() {
        if p.vals[i].is_zero() {
            continue;
        }
        r = r.add(&wedge(&LieElement::gen(*x), &LieElement::gen(*y)).scale(&p.vals[i]));
    }
    r
}

/// Coboundary cocommutator `δ(x) = [1⊗x + x⊗1, r]`.
pub fn cocommutator(p: &BialgebraParams, x: &LieElement) -> Result<TensorElement> {
    ad_tensor(x, &build_r(p))
}

/// Schouten bracket `[[r, r]]` of the r-matrix built from `p`.
pub fn schouten(p: &BialgebraParams) -> Result<TensorElement> {
    schouten_bracket(&build_r(p))
}

/// Difference between the directly computed Schouten bracket and the closed
/// one-term form `disc(p) · A+∧A-∧M`. Identically zero on solutions of the 19
/// equations; nonzero for generic parameters, so callers report it rather
/// than assert on it.
pub fn schouten_closed_form_residual(p: &BialgebraParams) -> Result<TensorElement> {
    let direct = schouten(p)?;
    let closed = wedge3(Gen::APlus, Gen::AMinus, Gen::M).scale(&discriminant(p)?);
    Ok(direct.sub(&closed))
}

fn mul2(a: &Scalar, b: &Scalar) -> Scalar {
    a.checked_mul(b).expect("parameter variable sets must match")
}

fn lin(terms: &[(i64, Scalar)]) -> Scalar {
    let mut acc = Scalar::zero();
    for (k, s) in terms {
        acc = acc
            .checked_add(&s.checked_mul(&Scalar::from_int(*k)).unwrap())
            .unwrap();
    }
    acc
}

/// The 19 classification equations, grouped as set-A (8), set-B (8) and
/// set-C (3), evaluated as residual scalars. The coefficients are written
/// out literally; the mYBE-invariance audit on every family cross-validates
/// them (any slip surfaces as a family failing invariance).
pub fn classification_equations(p: &BialgebraParams) -> (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) {
    let g = |n: &str| p.get(n).unwrap().clone();
    let (a1, a2, a3, a4, a5, a6) = (g("a1"), g("a2"), g("a3"), g("a4"), g("a5"), g("a6"));
    let (b1, b2, b3, b4, b5, b6) = (g("b1"), g("b2"), g("b3"), g("b4"), g("b5"), g("b6"));
    let (c1, c2, c3) = (g("c1"), g("c2"), g("c3"));
    let m = mul2;

    let set_a = vec![
        // 2 a6^2 - a6 b1 + 3 a1 b5 + 2 b5 b6
        lin(&[(2, m(&a6, &a6)), (-1, m(&a6, &b1)), (3, m(&a1, &b5)), (2, m(&b5, &b6))]),
        // a2 a3 - 2 a1 a4 + 2 a4 b6 - 3 a5 c1 - a5 c2 - 2 a5 c3
        lin(&[
            (1, m(&a2, &a3)),
            (-2, m(&a1, &a4)),
            (2, m(&a4, &b6)),
            (-3, m(&a5, &c1)),
            (-1, m(&a5, &c2)),
            (-2, m(&a5, &c3)),
        ]),
        // a1 a2 - 2 a2 b6 - 4 a5 c3
        lin(&[(1, m(&a1, &a2)), (-2, m(&a2, &b6)), (-4, m(&a5, &c3))]),
        // a5 b1 - a1 b6 + 2 a2 c1 + 2 a2 c3 + 4 a4 c3
        lin(&[
            (1, m(&a5, &b1)),
            (-1, m(&a1, &b6)),
            (2, m(&a2, &c1)),
            (2, m(&a2, &c3)),
            (4, m(&a4, &c3)),
        ]),
        // 2 a2 a6 + 4 a4 a6 - 2 a4 b1 - 2 a5 b2 + 2 a2 b3 - 4 a5 b4 + a1 c1 + a1 c2
        lin(&[
            (2, m(&a2, &a6)),
            (4, m(&a4, &a6)),
            (-2, m(&a4, &b1)),
            (-2, m(&a5, &b2)),
            (2, m(&a2, &b3)),
            (-4, m(&a5, &b4)),
            (1, m(&a1, &c1)),
            (1, m(&a1, &c2)),
        ]),
        // 3 a1 b2 + 2 a2 b5 + 4 a6 c3 - 2 b1 c3
        lin(&[(3, m(&a1, &b2)), (2, m(&a2, &b5)), (4, m(&a6, &c3)), (-2, m(&b1, &c3))]),
        // a3 b2 + 2 a1 b4 + 2 a4 b5 + a6 c1 - a6 c2 - 2 a6 c3 - 2 b3 c3
        lin(&[
            (1, m(&a3, &b2)),
            (2, m(&a1, &b4)),
            (2, m(&a4, &b5)),
            (1, m(&a6, &c1)),
            (-1, m(&a6, &c2)),
            (-2, m(&a6, &c3)),
            (-2, m(&b3, &c3)),
        ]),
        // 3 a2 b5 + b2 b6 + 2 a6 c3
        lin(&[(3, m(&a2, &b5)), (1, m(&b2, &b6)), (2, m(&a6, &c3))]),
    ];

    let set_b = vec![
        // 2 b6^2 - b6 a1 + 3 b1 a5 + 2 a5 a6
        lin(&[(2, m(&b6, &b6)), (-1, m(&b6, &a1)), (3, m(&b1, &a5)), (2, m(&a5, &a6))]),
        // b2 b3 - 2 b1 b4 + 2 b4 a6 - 3 b5 c1 + b5 c2 + 2 b5 c3
        lin(&[
            (1, m(&b2, &b3)),
            (-2, m(&b1, &b4)),
            (2, m(&b4, &a6)),
            (-3, m(&b5, &c1)),
            (1, m(&b5, &c2)),
            (2, m(&b5, &c3)),
        ]),
        // b1 b2 - 2 b2 a6 + 4 b5 c3
        lin(&[(1, m(&b1, &b2)), (-2, m(&b2, &a6)), (4, m(&b5, &c3))]),
        // b5 a1 - b1 a6 + 2 b2 c1 - 2 b2 c3 - 4 b4 c3
        lin(&[
            (1, m(&b5, &a1)),
            (-1, m(&b1, &a6)),
            (2, m(&b2, &c1)),
            (-2, m(&b2, &c3)),
            (-4, m(&b4, &c3)),
        ]),
        // 2 b2 b6 + 4 b4 b6 - 2 b4 a1 - 2 b5 a2 + 2 b2 a3 - 4 b5 a4 + b1 c1 - b1 c2
        lin(&[
            (2, m(&b2, &b6)),
            (4, m(&b4, &b6)),
            (-2, m(&b4, &a1)),
            (-2, m(&b5, &a2)),
            (2, m(&b2, &a3)),
            (-4, m(&b5, &a4)),
            (1, m(&b1, &c1)),
            (-1, m(&b1, &c2)),
        ]),
        // 3 b1 a2 + 2 b2 a5 - 4 b6 c3 + 2 a1 c3
        lin(&[(3, m(&b1, &a2)), (2, m(&b2, &a5)), (-4, m(&b6, &c3)), (2, m(&a1, &c3))]),
        // b3 a2 + 2 b1 a4 + 2 b4 a5 + b6 c1 + b6 c2 + 2 b6 c3 + 2 a3 c3
        lin(&[
            (1, m(&b3, &a2)),
            (2, m(&b1, &a4)),
            (2, m(&b4, &a5)),
            (1, m(&b6, &c1)),
            (1, m(&b6, &c2)),
            (2, m(&b6, &c3)),
            (2, m(&a3, &c3)),
        ]),
        // 3 b2 a5 + a2 a6 - 2 b6 c3
        lin(&[(3, m(&b2, &a5)), (1, m(&a2, &a6)), (-2, m(&b6, &c3))]),
    ];

    let set_c = vec![
        // a2 b2 + c3^2
        lin(&[(1, m(&a2, &b2)), (1, m(&c3, &c3))]),
        // 2 a2 b4 + 2 a4 b2 - a5 b5 + a6 b6 - 2 c3^2
        lin(&[
            (2, m(&a2, &b4)),
            (2, m(&a4, &b2)),
            (-1, m(&a5, &b5)),
            (1, m(&a6, &b6)),
            (-2, m(&c3, &c3)),
        ]),
        // a1 b1 + a1 a6 + b1 b6 + 2 a5 b5 - 2 a6 b6
        lin(&[
            (1, m(&a1, &b1)),
            (1, m(&a1, &a6)),
            (1, m(&b1, &b6)),
            (2, m(&a5, &b5)),
            (-2, m(&a6, &b6)),
        ]),
    ];

    (set_a, set_b, set_c)
}

/// Discriminant separating standard from non-standard r-matrices:
/// `a1 b3 + a3 b1 + 2 a3 a6 + 2 b3 b6 - 2 a5 b5 + 2 a6 b6 - c2^2`.
pub fn discriminant(p: &BialgebraParams) -> Result<Scalar> {
    let g = |n: &str| p.get(n).unwrap().clone();
    Ok(lin(&[
        (1, mul2(&g("a1"), &g("b3"))),
        (1, mul2(&g("a3"), &g("b1"))),
        (2, mul2(&g("a3"), &g("a6"))),
        (2, mul2(&g("b3"), &g("b6"))),
        (-2, mul2(&g("a5"), &g("b5"))),
        (2, mul2(&g("a6"), &g("b6"))),
        (-1, mul2(&g("c2"), &g("c2"))),
    ]))
}

/// Classification outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    #[serde(rename = "not-a-bialgebra")]
    NotABialgebra,
    #[serde(rename = "non-standard")]
    NonStandard,
    #[serde(rename = "standard")]
    Standard,
    /// Polynomial parameters with a nonzero discriminant polynomial: standard
    /// away from the vanishing locus.
    #[serde(rename = "generically-standard")]
    GenericallyStandard,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::NotABialgebra => "not-a-bialgebra",
            Verdict::NonStandard => "non-standard",
            Verdict::Standard => "standard",
            Verdict::GenericallyStandard => "generically-standard",
        };
        write!(f, "{s}")
    }
}

/// Residuals of the 19 equations, the discriminant, the verdict, and the
/// primitive generator set of a parameter tuple.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ClassificationReport {
    pub set_a: Vec<Scalar>,
    pub set_b: Vec<Scalar>,
    pub set_c: Vec<Scalar>,
    pub discriminant: Scalar,
    pub verdict: Verdict,
    /// Generators with identically zero cocommutator, decided by computing
    /// δ(X) exactly, never by pattern-matching parameter zeros.
    pub primitive: Vec<String>,
}

impl ClassificationReport {
    pub fn all_residuals_zero(&self) -> bool {
        self.set_a
            .iter()
            .chain(&self.set_b)
            .chain(&self.set_c)
            .all(|s| s.is_zero())
    }
}

/// Evaluate all 19 equations and the discriminant; decide the verdict and the
/// primitive set.
pub fn classification_residuals(p: &BialgebraParams) -> Result<ClassificationReport> {
    let (set_a, set_b, set_c) = classification_equations(p);
    let disc = discriminant(p)?;
    let zero_residuals = set_a
        .iter()
        .chain(&set_b)
        .chain(&set_c)
        .all(|s| s.is_zero());
    let verdict = if !zero_residuals {
        Verdict::NotABialgebra
    } else if disc.is_zero() {
        Verdict::NonStandard
    } else if disc.is_rational() {
        Verdict::Standard
    } else {
        Verdict::GenericallyStandard
    };
    let mut primitive = Vec::new();
    for g in Gen::ALL {
        if cocommutator(p, &LieElement::gen(g))?.is_zero() {
            primitive.push(g.name().to_string());
        }
    }
    Ok(ClassificationReport {
        set_a,
        set_b,
        set_c,
        discriminant: disc,
        verdict,
        primitive,
    })
}

/// Modified-YBE invariance residuals `[1⊗1⊗X + perms, [[r,r]]]` for the six
/// generators, in basis order. All six vanish exactly when the 19 equations
/// hold.
pub fn mybe_invariance_residual(p: &BialgebraParams) -> Result<Vec<TensorElement>> {
    let s = schouten(p)?;
    Gen::ALL
        .iter()
        .map(|g| ad_tensor(&LieElement::gen(*g), &s))
        .collect()
}

/// 1-cocycle residual `δ([x,y]) − [δ(x), 1⊗y + y⊗1] − [1⊗x + x⊗1, δ(y)]`.
/// Identically zero for every coboundary cocommutator.
pub fn cocycle_residual(
    p: &BialgebraParams,
    x: &LieElement,
    y: &LieElement,
) -> Result<TensorElement> {
    let bxy = bracket(x, y)?;
    let mut d_bxy = TensorElement::zero(2);
    for (g, c) in bxy.terms() {
        d_bxy = d_bxy.add(&cocommutator(p, &LieElement::gen(g))?.scale(c));
    }
    let dx = cocommutator(p, x)?;
    let dy = cocommutator(p, y)?;
    // [δ(x), 1⊗y + y⊗1] = -ad_y(δ(x));  [1⊗x + x⊗1, δ(y)] = ad_x(δ(y))
    Ok(d_bxy
        .add(&ad_tensor(y, &dx)?)
        .sub(&ad_tensor(x, &dy)?))
}

/// The h6 automorphism `N→-N, A±→-A∓, B±→-B∓, M→-M` on elements.
pub fn automorphism_map(x: &LieElement) -> LieElement {
    let image = |g: Gen| -> LieElement {
        let target = match g {
            Gen::N => Gen::N,
            Gen::APlus => Gen::AMinus,
            Gen::AMinus => Gen::APlus,
            Gen::BPlus => Gen::BMinus,
            Gen::BMinus => Gen::BPlus,
            Gen::M => Gen::M,
        };
        LieElement::term(target, Scalar::from_int(-1))
    };
    let mut out = LieElement::zero();
    for (g, c) in x.terms() {
        out = out.add(&image(g).scale(c));
    }
    out
}

/// Generator map applied to each tensor leg.
pub fn automorphism_map_tensor(t: &TensorElement) -> TensorElement {
    t.map_legs(|g| automorphism_map(&LieElement::gen(g)))
}

/// The companion parameter map `a_i→b_i, b_i→a_i, c1→c1, c2→-c2, c3→-c3`.
pub fn automorphism_params(p: &BialgebraParams) -> BialgebraParams {
    let mut out = BialgebraParams::zero();
    for i in 0..6 {
        out.vals[i] = p.vals[i + 6].clone();
        out.vals[i + 6] = p.vals[i].clone();
    }
    out.vals[12] = p.vals[12].clone();
    out.vals[13] = p.vals[13].neg();
    out.vals[14] = p.vals[14].neg();
    out
}

/// Family kinds of the two-primitive-generator classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    IStandard,
    INonStandard,
    II,
    IIIStandard,
    IIINonStandard,
}

impl FamilyKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i-standard" | "i-std" => Ok(FamilyKind::IStandard),
            "i-nonstandard" | "i-nonstd" => Ok(FamilyKind::INonStandard),
            "ii" => Ok(FamilyKind::II),
            "iii-standard" | "iii-std" => Ok(FamilyKind::IIIStandard),
            "iii-nonstandard" | "iii-nonstd" => Ok(FamilyKind::IIINonStandard),
            _ => Err(Error::Parse(format!("unknown family kind `{s}`"))),
        }
    }

    /// The generator (besides M) that is primitive for this family.
    pub fn primitive_generator(self) -> Gen {
        match self {
            FamilyKind::IStandard | FamilyKind::INonStandard => Gen::N,
            FamilyKind::II => Gen::APlus,
            FamilyKind::IIIStandard | FamilyKind::IIINonStandard => Gen::BPlus,
        }
    }
}

/// Type I standard subfamily: `r = c1 N∧M + c2 A+∧A-`, requires `c2 ≠ 0`.
pub fn family_i_standard(c1: Scalar, c2: Scalar) -> Result<BialgebraParams> {
    if c2.is_zero() {
        return Err(Error::Constraint("Type I standard requires c2 != 0".into()));
    }
    let mut p = BialgebraParams::zero();
    p.set("c1", c1)?;
    p.set("c2", c2)?;
    Ok(p)
}

/// Type I non-standard subfamily: `r = c1 N∧M`.
pub fn family_i_nonstandard(c1: Scalar) -> Result<BialgebraParams> {
    let mut p = BialgebraParams::zero();
    p.set("c1", c1)?;
    Ok(p)
}

/// Type II family (A+ primitive): free `(a1, a3, a4, a5, b3, c1)` with
/// `c2 = -c1`, subject to `a1 a4 + a5 c1 = 0`. The constructor validates, it
/// never solves; see [`family_ii_solved`] for the parameterized solution.
pub fn family_ii(
    a1: Scalar,
    a3: Scalar,
    a4: Scalar,
    a5: Scalar,
    b3: Scalar,
    c1: Scalar,
) -> Result<BialgebraParams> {
    let lhs = mul2(&a1, &a4).checked_add(&mul2(&a5, &c1))?;
    if !lhs.is_zero() {
        return Err(Error::Constraint(format!(
            "Type II requires a1*a4 + a5*c1 = 0, got {lhs}"
        )));
    }
    let mut p = BialgebraParams::zero();
    p.set("a1", a1)?;
    p.set("a3", a3)?;
    p.set("a4", a4)?;
    p.set("a5", a5)?;
    p.set("b3", b3)?;
    p.set("c2", c1.neg())?;
    p.set("c1", c1)?;
    Ok(p)
}

/// Solved Type II helper: parameterizes `a1 a4 + a5 c1 = 0` by
/// `(a1, a5, c1)` with `a4 = -a5 c1 / a1`, requiring `a1 ≠ 0`.
pub fn family_ii_solved(
    a1: Scalar,
    a3: Scalar,
    a5: Scalar,
    b3: Scalar,
    c1: Scalar,
) -> Result<BialgebraParams> {
    if a1.is_zero() {
        return Err(Error::Constraint(
            "solved Type II requires a1 != 0 to express a4 = -a5*c1/a1".into(),
        ));
    }
    let a4 = mul2(&a5, &c1).neg().checked_div(&a1)?;
    family_ii(a1, a3, a4, a5, b3, c1)
}

/// Type III standard subfamily (B+ primitive): free `(a2, a3, a4, c2)` with
/// `c2 ≠ 0` and `a5 = a2 a3 / c2`.
pub fn family_iii_standard(
    a2: Scalar,
    a3: Scalar,
    a4: Scalar,
    c2: Scalar,
) -> Result<BialgebraParams> {
    if c2.is_zero() {
        return Err(Error::Constraint(
            "Type III standard requires c2 != 0".into(),
        ));
    }
    let a5 = mul2(&a2, &a3).checked_div(&c2)?;
    let mut p = BialgebraParams::zero();
    p.set("a2", a2)?;
    p.set("a3", a3)?;
    p.set("a4", a4)?;
    p.set("a5", a5)?;
    p.set("c2", c2)?;
    Ok(p)
}

/// Type III non-standard subfamily: free `(a2, a4, a5)` with `a3 = 0`.
pub fn family_iii_nonstandard(a2: Scalar, a4: Scalar, a5: Scalar) -> Result<BialgebraParams> {
    let mut p = BialgebraParams::zero();
    p.set("a2", a2)?;
    p.set("a4", a4)?;
    p.set("a5", a5)?;
    Ok(p)
}

/// Build a family from a kind and a name→value map of its free parameters.
/// Unknown or missing names default per subfamily; constraints are validated.
pub fn family(kind: FamilyKind, free: &BTreeMap<String, Scalar>) -> Result<BialgebraParams> {
    let get = |n: &str| free.get(n).cloned().unwrap_or_else(Scalar::zero);
    let allowed: &[&str] = match kind {
        FamilyKind::IStandard => &["c1", "c2"],
        FamilyKind::INonStandard => &["c1"],
        FamilyKind::II => &["a1", "a3", "a4", "a5", "b3", "c1"],
        FamilyKind::IIIStandard => &["a2", "a3", "a4", "c2"],
        FamilyKind::IIINonStandard => &["a2", "a4", "a5"],
    };
    for k in free.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(Error::Constraint(format!(
                "parameter `{k}` is not free in this family (free: {})",
                allowed.join(", ")
            )));
        }
    }
    match kind {
        FamilyKind::IStandard => family_i_standard(get("c1"), get("c2")),
        FamilyKind::INonStandard => family_i_nonstandard(get("c1")),
        FamilyKind::II => family_ii(
            get("a1"),
            get("a3"),
            get("a4"),
            get("a5"),
            get("b3"),
            get("c1"),
        ),
        FamilyKind::IIIStandard => {
            family_iii_standard(get("a2"), get("a3"), get("a4"), get("c2"))
        }
        FamilyKind::IIINonStandard => {
            family_iii_nonstandard(get("a2"), get("a4"), get("a5"))
        }
    }
}

/// The one-parameter bialgebra quantized by the A+-primitive deformation:
/// `r = a1 N∧A+` (Type II non-standard with only a1 free).
pub fn family_ua1(a1: Scalar) -> BialgebraParams {
    let mut p = BialgebraParams::zero();
    p.set("a1", a1).unwrap();
    p
}

/// The one-parameter bialgebra quantized by the B+-primitive deformation:
/// `r = a2 N∧B+` (Type III non-standard with only a2 free).
pub fn family_ua2(a2: Scalar) -> BialgebraParams {
    let mut p = BialgebraParams::zero();
    p.set("a2", a2).unwrap();
    p
}

/// The general cocommutator table for fully symbolic parameters, one wedge
/// combination per generator, written out literally. Kept separate from the
/// coboundary computation so the golden test
/// `cocommutator(symbolic, X) == table[X]` cross-validates both routes.
pub fn general_cocommutator_table() -> Vec<(Gen, TensorElement)> {
    let vars = VarSet::params15();
    let sym = |n: &str| Scalar::var(&vars, n).unwrap();
    let (a1, a2, a3, a4, a5, a6) = (sym("a1"), sym("a2"), sym("a3"), sym("a4"), sym("a5"), sym("a6"));
    let (b1, b2, b3, b4, b5, b6) = (sym("b1"), sym("b2"), sym("b3"), sym("b4"), sym("b5"), sym("b6"));
    let (c1, c2, c3) = (sym("c1"), sym("c2"), sym("c3"));
    let si = Scalar::from_int;
    let w = |c: Scalar, x: Gen, y: Gen| wedge(&LieElement::gen(x), &LieElement::gen(y)).scale(&c);
    let combine = |parts: Vec<TensorElement>| {
        let mut acc = TensorElement::zero(2);
        for p in parts {
            acc = acc.add(&p);
        }
        acc
    };
    use Gen::*;
    vec![
        (
            N,
            combine(vec![
                w(a1.clone(), N, APlus),
                w(&a2 * &si(2), N, BPlus),
                w(a3.clone(), APlus, M),
                w(&a4 * &si(2), BPlus, M),
                w(&a5 * &si(3), APlus, BPlus),
                w(b1.neg(), N, AMinus),
                w(&b2 * &si(-2), N, BMinus),
                w(b3.neg(), AMinus, M),
                w(&b4 * &si(-2), BMinus, M),
                w(&b5 * &si(-3), AMinus, BMinus),
                w(a6.neg(), APlus, BMinus),
                w(b6.clone(), AMinus, BPlus),
            ]),
        ),
        (
            APlus,
            combine(vec![
                w(&(&a6 * &si(2)) + &b1, AMinus, APlus),
                w(a2.clone(), BPlus, APlus),
                w(b2.clone(), BMinus, APlus),
                w(&b2 * &si(2), AMinus, N),
                w(b1.neg(), N, M),
                w(&b4 * &si(-2), AMinus, M),
                w(b5.clone(), BMinus, M),
                w(b6.clone(), BPlus, M),
                w((&c1 + &c2).neg(), APlus, M),
                w(&c3 * &si(2), AMinus, BPlus),
            ]),
        ),
        (
            AMinus,
            combine(vec![
                w((&(&b6 * &si(2)) + &a1).neg(), APlus, AMinus),
                w(b2.neg(), BMinus, AMinus),
                w(a2.neg(), BPlus, AMinus),
                w(&a2 * &si(-2), APlus, N),
                w(a1.clone(), N, M),
                w(&a4 * &si(2), APlus, M),
                w(a5.neg(), BPlus, M),
                w(a6.neg(), BMinus, M),
                w(&c1 - &c2, AMinus, M),
                w(&c3 * &si(2), APlus, BMinus),
            ]),
        ),
        (
            BPlus,
            combine(vec![
                w(&c3 * &si(4), N, BPlus),
                w(&(&a1 - &b6) * &si(2), APlus, BPlus),
                w(&b1 * &si(2), AMinus, BPlus),
                w(&b2 * &si(2), BMinus, BPlus),
                w(&(&(&a6 * &si(2)) - &b1) * &si(2), N, APlus),
                w(&b5 * &si(4), N, AMinus),
                w(&b5 * &si(-2), APlus, BMinus),
                w(&b5 * &si(-2), AMinus, M),
                w(&(&b2 + &(&b4 * &si(2))) * &si(-2), N, M),
                w(&(&a6 + &b3) * &si(-2), APlus, M),
                w(&(&c1 + &c3) * &si(-2), BPlus, M),
            ]),
        ),
        (
            BMinus,
            combine(vec![
                w(&c3 * &si(4), N, BMinus),
                w(&(&b1 - &a6) * &si(-2), AMinus, BMinus),
                w(&a1 * &si(-2), APlus, BMinus),
                w(&a2 * &si(-2), BPlus, BMinus),
                w(&(&(&b6 * &si(2)) - &a1) * &si(-2), N, AMinus),
                w(&a5 * &si(-4), N, APlus),
                w(&a5 * &si(2), AMinus, BPlus),
                w(&a5 * &si(2), APlus, M),
                w(&(&a2 + &(&a4 * &si(2))) * &si(2), N, M),
                w(&(&b6 + &a3) * &si(2), AMinus, M),
                w(&(&c1 - &c3) * &si(2), BMinus, M),
            ]),
        ),
        (M, TensorElement::zero(2)),
    ]
}

/// Dual co-Jacobi residuals: the bracket on the dual basis defined by the
/// cocommutator coefficients must satisfy the Jacobi identity. Returns, for
/// each dual triple `i<j<k` and output generator `n`, the residual scalar;
/// all vanish exactly when `(g, δ)` is a Lie bialgebra.
pub fn dual_cojacobi_residuals(p: &BialgebraParams) -> Result<Vec<Scalar>> {
    // f[i][j][k]: coefficient of Xi⊗Xj in δ(X_k)
    let mut f = vec![vec![vec![Scalar::zero(); 6]; 6]; 6];
    for gk in Gen::ALL {
        let d = cocommutator(p, &LieElement::gen(gk))?;
        for (key, c) in d.terms() {
            f[key[0].index()][key[1].index()][gk.index()] = c.clone();
        }
    }
    let mut out = Vec::new();
    for i in 0..6 {
        for j in (i + 1)..6 {
            for k in (j + 1)..6 {
                for n in 0..6 {
                    let mut acc = Scalar::zero();
                    for m in 0..6 {
                        // cyclic sum f^{ij}_m f^{mk}_n + f^{jk}_m f^{mi}_n + f^{ki}_m f^{mj}_n
                        acc = acc
                            .checked_add(&mul2(&f[i][j][m], &f[m][k][n]))?
                            .checked_add(&mul2(&f[j][k][m], &f[m][i][n]))?
                            .checked_add(&mul2(&f[k][i][m], &f[m][j][n]))?;
                    }
                    out.push(acc);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Gen::*;

    #[test]
    fn build_r_examples() {
        assert!(build_r(&BialgebraParams::zero()).is_zero());

        let mut p = BialgebraParams::zero();
        p.set("c1", Scalar::one()).unwrap();
        assert_eq!(
            build_r(&p),
            wedge(&LieElement::gen(N), &LieElement::gen(M))
        );

        let mut p = BialgebraParams::zero();
        p.set("a1", Scalar::one()).unwrap();
        assert_eq!(
            build_r(&p),
            wedge(&LieElement::gen(N), &LieElement::gen(APlus))
        );
    }

    #[test]
    fn cocommutator_examples() {
        // δ(M) = 0 for fully symbolic parameters
        let p = BialgebraParams::symbolic();
        assert!(cocommutator(&p, &LieElement::gen(M)).unwrap().is_zero());

        // c1-only: δ(A+) = -A+∧M
        let mut p = BialgebraParams::zero();
        p.set("c1", Scalar::one()).unwrap();
        let d = cocommutator(&p, &LieElement::gen(APlus)).unwrap();
        let want =
            wedge(&LieElement::gen(APlus), &LieElement::gen(M)).scale(&Scalar::from_int(-1));
        assert_eq!(d, want);
    }

    #[test]
    fn schouten_examples() {
        assert!(schouten(&BialgebraParams::zero()).unwrap().is_zero());

        // c2-only: [[r,r]] = -A+∧A-∧M at c2 = 1
        let mut p = BialgebraParams::zero();
        p.set("c2", Scalar::one()).unwrap();
        let s = schouten(&p).unwrap();
        assert_eq!(s, wedge3(APlus, AMinus, M).scale(&Scalar::from_int(-1)));
    }

    #[test]
    fn classification_examples() {
        // Type I: all residuals zero
        let p = family_i_standard(Scalar::ratio(1, 2), Scalar::from_int(2)).unwrap();
        let rep = classification_residuals(&p).unwrap();
        assert!(rep.all_residuals_zero());
        assert_eq!(rep.verdict, Verdict::Standard);
        assert!(rep.primitive.contains(&"N".to_string()));
        assert!(rep.primitive.contains(&"M".to_string()));

        // a2 = b2 = 1 violates set-C equation a2 b2 + c3^2 = 0
        let mut p = BialgebraParams::zero();
        p.set("a2", Scalar::one()).unwrap();
        p.set("b2", Scalar::one()).unwrap();
        let rep = classification_residuals(&p).unwrap();
        assert_eq!(rep.set_c[0], Scalar::one());
        assert_eq!(rep.verdict, Verdict::NotABialgebra);

        // zero params: trivially non-standard
        let rep = classification_residuals(&BialgebraParams::zero()).unwrap();
        assert!(rep.all_residuals_zero());
        assert_eq!(rep.verdict, Verdict::NonStandard);
    }

    #[test]
    fn automorphism_is_involutive() {
        let p = BialgebraParams::symbolic();
        assert_eq!(automorphism_params(&automorphism_params(&p)), p);
        for g in Gen::ALL {
            let once = automorphism_map(&LieElement::gen(g));
            let twice = {
                let mut acc = LieElement::zero();
                for (h, c) in once.terms() {
                    acc = acc.add(&automorphism_map(&LieElement::gen(h)).scale(c));
                }
                acc
            };
            assert_eq!(twice, LieElement::gen(g));
        }
        // c2-only flips sign
        let mut p = BialgebraParams::zero();
        p.set("c2", Scalar::one()).unwrap();
        let q = automorphism_params(&p);
        assert_eq!(*q.get("c2").unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn automorphism_leaves_r_invariant_symbolically() {
        let p = BialgebraParams::symbolic();
        let mapped = automorphism_map_tensor(&build_r(&automorphism_params(&p)));
        assert_eq!(mapped, build_r(&p));
    }

    #[test]
    fn family_constraint_errors() {
        assert!(matches!(
            family_i_standard(Scalar::one(), Scalar::zero()),
            Err(Error::Constraint(_))
        ));
        assert!(matches!(
            family_ii(
                Scalar::one(),
                Scalar::zero(),
                Scalar::one(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::one()
            ),
            Err(Error::Constraint(_))
        ));
        assert!(matches!(
            family_iii_standard(Scalar::one(), Scalar::one(), Scalar::zero(), Scalar::zero()),
            Err(Error::Constraint(_))
        ));
        assert!(matches!(
            family_ii_solved(
                Scalar::zero(),
                Scalar::zero(),
                Scalar::one(),
                Scalar::zero(),
                Scalar::one()
            ),
            Err(Error::Constraint(_))
        ));
    }

    #[test]
    fn family_cocommutator_tables() {
        // I-nonstandard at c1 = 1: δ(B+) = -2 B+∧M
        let p = family_i_nonstandard(Scalar::one()).unwrap();
        let d = cocommutator(&p, &LieElement::gen(BPlus)).unwrap();
        let want =
            wedge(&LieElement::gen(BPlus), &LieElement::gen(M)).scale(&Scalar::from_int(-2));
        assert_eq!(d, want);

        // ua1 family at a1 = 1: δ(A+) = 0, δ(N) = N∧A+
        let p = family_ua1(Scalar::one());
        assert!(cocommutator(&p, &LieElement::gen(APlus)).unwrap().is_zero());
        let d = cocommutator(&p, &LieElement::gen(N)).unwrap();
        assert_eq!(d, wedge(&LieElement::gen(N), &LieElement::gen(APlus)));

        // ua2 family at a2 = 1: δ(B+) = 0, δ(N) = 2 N∧B+
        let p = family_ua2(Scalar::one());
        assert!(cocommutator(&p, &LieElement::gen(BPlus)).unwrap().is_zero());
        let d = cocommutator(&p, &LieElement::gen(N)).unwrap();
        assert_eq!(
            d,
            wedge(&LieElement::gen(N), &LieElement::gen(BPlus)).scale(&Scalar::from_int(2))
        );
    }

    #[test]
    fn params_json_roundtrip() {
        let p = family_iii_standard(
            Scalar::ratio(2, 3),
            Scalar::ratio(-1, 2),
            Scalar::from_int(1),
            Scalar::ratio(5, 4),
        )
        .unwrap();
        let j = p.to_json();
        let q = BialgebraParams::from_json(&j).unwrap();
        assert_eq!(p, q);
    }
}
