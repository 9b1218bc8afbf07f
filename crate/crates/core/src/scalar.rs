//! Exact scalars: arbitrary-precision rationals and sparse multivariate
//! polynomials over the rationals.
//!
//! A [`Scalar`] is either a reduced rational or a polynomial over a declared
//! variable set. Two variable sets are used in practice: the fifteen bialgebra
//! parameter names (`a1..a6`, `b1..b6`, `c1..c3`) and a single deformation
//! variable for semiclassical expansions. Mixing two distinct polynomial
//! variable sets in one operation is a domain error; rationals combine with
//! anything.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Ordered set of variable names shared by all terms of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new(names: &[&str]) -> Self {
        VarSet(Arc::new(names.iter().map(|s| s.to_string()).collect()))
    }

    /// The fifteen bialgebra parameters in their fixed order.
    pub fn params15() -> Self {
        VarSet::new(&[
            "a1", "a2", "a3", "a4", "a5", "a6", "b1", "b2", "b3", "b4", "b5", "b6", "c1", "c2",
            "c3",
        ])
    }

    /// Single-variable set for semiclassical expansions.
    pub fn single(name: &str) -> Self {
        VarSet::new(&[name])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

/// Exponent vector over a variable set. Ordered graded-lexicographically:
/// lower total degree first, ties broken by the exponent vector itself.
/// Canonical display iterates in reverse (leading term first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
/// Invariant: no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(vars: VarSet) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarSet, c: Rat) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; p.vars.len()]), c);
        }
        p
    }

    /// The polynomial consisting of a single named variable.
    pub fn var(vars: VarSet, name: &str) -> Result<Self, Error> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::Domain(format!("unknown variable `{name}`")))?;
        let mut exps = vec![0u32; vars.len()];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), Rat::one());
        Ok(Poly { vars, terms })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    fn insert(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn add(&self, other: &Poly, sign: i32) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let c = if sign < 0 { -c.clone() } else { c.clone() };
            out.insert(m.clone(), c);
        }
        out
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// If the polynomial is a constant, return it as a rational.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_constant() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Evaluate at a rational point given by variable name.
    pub fn eval(&self, point: &BTreeMap<String, Rat>) -> Result<Rat, Error> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let name = &self.vars.names()[i];
                    let v = point.get(name).ok_or_else(|| {
                        Error::Domain(format!("missing value for variable `{name}`"))
                    })?;
                    for _ in 0..e {
                        term *= v;
                    }
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Coefficient of total degree `k` in a single-variable polynomial.
    pub fn coeff_of_degree(&self, k: u32) -> Result<Rat, Error> {
        if self.vars.len() != 1 {
            return Err(Error::Domain(
                "degree extraction requires a single-variable polynomial".into(),
            ));
        }
        Ok(self
            .terms
            .get(&Monomial(vec![k]))
            .cloned()
            .unwrap_or_else(Rat::zero))
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }
}

/// Exact scalar: reduced rational or sparse polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(Rat),
    Poly(Poly),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::Rational(r)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(rat(num, den))
    }

    /// The polynomial `name` over the given variable set.
    pub fn var(vars: &VarSet, name: &str) -> Result<Self, Error> {
        Ok(Scalar::Poly(Poly::var(vars.clone(), name)?))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    /// Collapse to a rational if possible (rationals and constant polynomials).
    pub fn as_rational(&self) -> Option<Rat> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Poly(p) => p.as_constant(),
        }
    }

    pub fn vars(&self) -> Option<&VarSet> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Poly(p) => Some(&p.vars),
        }
    }

    fn promote(&self, vars: &VarSet) -> Poly {
        match self {
            Scalar::Rational(r) => Poly::constant(vars.clone(), r.clone()),
            Scalar::Poly(p) => p.clone(),
        }
    }

    fn varset_for(&self, other: &Scalar) -> Result<Option<VarSet>, Error> {
        match (self.vars(), other.vars()) {
            (None, None) => Ok(None),
            (Some(v), None) | (None, Some(v)) => Ok(Some(v.clone())),
            (Some(v), Some(w)) => {
                if v == w {
                    Ok(Some(v.clone()))
                } else {
                    Err(Error::VarSetMismatch)
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, Error> {
        match self.varset_for(other)? {
            None => match (self, other) {
                (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
                _ => unreachable!(),
            },
            Some(vars) => Ok(Scalar::Poly(
                self.promote(&vars).add(&other.promote(&vars), 1),
            )),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, Error> {
        match self.varset_for(other)? {
            None => match (self, other) {
                (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a - b)),
                _ => unreachable!(),
            },
            Some(vars) => Ok(Scalar::Poly(
                self.promote(&vars).add(&other.promote(&vars), -1),
            )),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, Error> {
        match self.varset_for(other)? {
            None => match (self, other) {
                (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
                _ => unreachable!(),
            },
            Some(vars) => match (self, other) {
                // scaling by a rational keeps sparsity without a full product
                (Scalar::Rational(r), Scalar::Poly(p)) | (Scalar::Poly(p), Scalar::Rational(r)) => {
                    Ok(Scalar::Poly(p.scale(r)))
                }
                _ => Ok(Scalar::Poly(
                    self.promote(&vars).mul(&other.promote(&vars)),
                )),
            },
        }
    }

    /// Exact division. The divisor must be a nonzero rational (or constant
    /// polynomial); dividing by a genuine polynomial is a domain error.
    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, Error> {
        let d = other
            .as_rational()
            .ok_or_else(|| Error::Domain("division by a non-constant polynomial".into()))?;
        if d.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        let inv = Scalar::Rational(d.recip());
        self.checked_mul(&inv)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r.clone()),
            Scalar::Poly(p) => Scalar::Poly(p.scale(&-Rat::one())),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Evaluate at a rational point. Rationals evaluate to themselves.
    pub fn eval(&self, point: &BTreeMap<String, Rat>) -> Result<Rat, Error> {
        match self {
            Scalar::Rational(r) => Ok(r.clone()),
            Scalar::Poly(p) => p.eval(point),
        }
    }

    /// Specialize every variable to zero (classical limit of a deformation
    /// polynomial): returns the constant term.
    pub fn constant_term(&self) -> Rat {
        match self {
            Scalar::Rational(r) => r.clone(),
            Scalar::Poly(p) => p
                .terms
                .iter()
                .find(|(m, _)| m.is_constant())
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::zero),
        }
    }

    /// Degree-`k` coefficient of a single-variable polynomial scalar.
    /// A rational scalar is its own degree-0 coefficient.
    pub fn coeff_of_degree(&self, k: u32) -> Result<Rat, Error> {
        match self {
            Scalar::Rational(r) => Ok(if k == 0 { r.clone() } else { Rat::zero() }),
            Scalar::Poly(p) => p.coeff_of_degree(k),
        }
    }

    pub fn to_f64(&self) -> Result<f64, Error> {
        let r = self
            .as_rational()
            .ok_or_else(|| Error::Domain("polynomial scalar has no float value".into()))?;
        r.to_f64()
            .ok_or_else(|| Error::Domain("rational out of f64 range".into()))
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).expect("scalar variable sets must match")
            }
        }
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar variable sets must match")
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

// ---------------------------------------------------------------------------
// display / parsing
// ---------------------------------------------------------------------------

/// Canonical rational string: `p` for integers, otherwise `p/q` with q > 0.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", rat_to_string(r)),
            Scalar::Poly(p) => {
                if p.is_zero() {
                    return write!(f, "0");
                }
                // descending graded-lex, leading term first
                let mut first = true;
                for (m, c) in p.terms.iter().rev() {
                    let neg = c.is_negative();
                    let mag = c.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                        first = false;
                    } else if neg {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    let mut factors: Vec<String> = Vec::new();
                    if !mag.is_one() || m.is_constant() {
                        factors.push(rat_to_string(&mag));
                    }
                    for (i, &e) in m.0.iter().enumerate() {
                        if e == 1 {
                            factors.push(p.vars.names()[i].clone());
                        } else if e > 1 {
                            factors.push(format!("{}^{}", p.vars.names()[i], e));
                        }
                    }
                    write!(f, "{}", factors.join("*"))?;
                }
                Ok(())
            }
        }
    }
}

/// Parse a rational literal `p`, `p/q`, or a decimal like `0.25` (converted
/// exactly).
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rat::new(n, d));
    }
    if s.contains('.') || s.contains('e') || s.contains('E') {
        let f: f64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad numeric literal `{s}`")))?;
        return Rat::from_float(f).ok_or_else(|| Error::Parse(format!("non-finite value `{s}`")));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer literal `{s}`")))?;
    Ok(Rat::from_integer(n))
}

/// Parse a scalar: a rational literal, or a polynomial expression over `vars`
/// in the canonical form emitted by [`Scalar`]'s `Display` (sums of terms
/// `coeff*var^e*...`).
pub fn parse_scalar(s: &str, vars: &VarSet) -> Result<Scalar, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    if let Ok(r) = parse_rat(s) {
        return Ok(Scalar::Rational(r));
    }
    // split into signed terms at top level
    let mut poly = Poly::zero(vars.clone());
    let bytes = s.as_bytes();
    let mut term_start = 0usize;
    let mut terms: Vec<(i32, &str)> = Vec::new();
    let mut sign = 1i32;
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && i > term_start {
            let t = s[term_start..i].trim();
            if !t.is_empty() {
                terms.push((sign, t));
            }
            sign = if c == '-' { -1 } else { 1 };
            term_start = i + 1;
        } else if (c == '+' || c == '-') && i == term_start {
            if c == '-' {
                sign = -sign;
            }
            term_start = i + 1;
        }
        i += 1;
    }
    let t = s[term_start..].trim();
    if !t.is_empty() {
        terms.push((sign, t));
    }
    if terms.is_empty() {
        return Err(Error::Parse(format!("cannot parse scalar `{s}`")));
    }
    for (sign, term) in terms {
        let mut coeff = Rat::from_integer(BigInt::from(sign));
        let mut exps = vec![0u32; vars.len()];
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{term}`")));
            }
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => {
                    let e: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    (b.trim(), e)
                }
                None => (factor, 1),
            };
            if let Some(idx) = vars.index_of(base) {
                exps[idx] += exp;
            } else if exp == 1 {
                let r = parse_rat(base)?;
                coeff *= r;
            } else {
                let r = parse_rat(base)?;
                for _ in 0..exp {
                    coeff *= &r;
                }
            }
        }
        poly.insert(Monomial(exps), coeff);
    }
    Ok(Scalar::Poly(poly))
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_reduction_and_display() {
        let r = Scalar::ratio(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Scalar::ratio(8, 4).to_string(), "2");
    }

    #[test]
    fn poly_arithmetic_basics() {
        let vars = VarSet::params15();
        let a1 = Scalar::var(&vars, "a1").unwrap();
        let b5 = Scalar::var(&vars, "b5").unwrap();
        let p = &(&a1 * &b5) + &Scalar::from_int(3);
        assert_eq!(p.to_string(), "a1*b5 + 3");
        let q = &p - &p;
        assert!(q.is_zero());
    }

    #[test]
    fn varset_mismatch_is_an_error() {
        let p = Scalar::var(&VarSet::params15(), "a1").unwrap();
        let q = Scalar::var(&VarSet::single("a1"), "a1").unwrap();
        assert!(matches!(
            p.checked_add(&q),
            Err(Error::VarSetMismatch)
        ));
    }

    #[test]
    fn display_roundtrip() {
        let vars = VarSet::params15();
        let s = parse_scalar("2*a6^2 - a6*b1 + 3*a1*b5 + 2*b5*b6", &vars).unwrap();
        let t = parse_scalar(&s.to_string(), &vars).unwrap();
        assert_eq!(s, t);
        let r = parse_scalar("-7/3", &vars).unwrap();
        assert_eq!(r.to_string(), "-7/3");
    }

    #[test]
    fn eval_commutes_with_arithmetic() {
        let vars = VarSet::params15();
        let a1 = Scalar::var(&vars, "a1").unwrap();
        let c2 = Scalar::var(&vars, "c2").unwrap();
        let p = &(&a1 + &c2) * &(&a1 - &c2);
        let mut point = BTreeMap::new();
        point.insert("a1".to_string(), rat(3, 2));
        point.insert("c2".to_string(), rat(-1, 3));
        let lhs = p.eval(&point).unwrap();
        let rhs = a1.eval(&point).unwrap().pow(2) - c2.eval(&point).unwrap().pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_coefficients_single_var() {
        let v = VarSet::single("a1");
        let a = Scalar::var(&v, "a1").unwrap();
        let p = &(&a * &a) + &(&Scalar::from_int(5) * &a);
        assert_eq!(p.coeff_of_degree(1).unwrap(), rat(5, 1));
        assert_eq!(p.coeff_of_degree(2).unwrap(), rat(1, 1));
        assert_eq!(p.coeff_of_degree(0).unwrap(), rat(0, 1));
    }

    #[test]
    fn float_literals_parse_exactly() {
        assert_eq!(parse_rat("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rat("-3").unwrap(), rat(-3, 1));
    }
}
