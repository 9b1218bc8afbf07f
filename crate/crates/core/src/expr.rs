//! Operator expression trees: the relation tables and coproduct tables of
//! the two deformations are defined exactly once, here, and every check
//! (representation-level commutators, coproduct homomorphism, coassociativity)
//! evaluates the same trees.
//!
//! Series atoms apply entire functions to a primitive generator whose matrix
//! is nilpotent in every truncated representation, so each evaluation is an
//! exact finite sum. Extending the coproduct over a tree uses the algebra
//! homomorphism property: products map to products of coproducts, and a
//! series of a primitive maps to the same series of its (nilpotent) coproduct.

use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::fockrep::{RepKind, TruncRep};
use crate::lie::Gen;
use crate::matrix::{nilpotent_series, Matrix};
use crate::scalar::Scalar;

/// Coefficient stream of an entire function with symbolic divisions folded
/// into the coefficients, so polynomial deformation parameters stay exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesSpec {
    /// `e^{c x}`: coefficient `c^k/k!`.
    Exp(Scalar),
    /// `(e^{c x} - 1)/c`: coefficient `c^{k-1}/k!` for k >= 1.
    ExpM1Div(Scalar),
}

impl SeriesSpec {
    pub fn coeff(&self, k: usize) -> Scalar {
        let fact = |n: usize| {
            let mut f = Scalar::one();
            for i in 1..=n {
                f = f.checked_mul(&Scalar::from_int(i as i64)).unwrap();
            }
            f
        };
        match self {
            SeriesSpec::Exp(c) => c.pow(k as u32).checked_div(&fact(k)).unwrap(),
            SeriesSpec::ExpM1Div(c) => {
                if k == 0 {
                    Scalar::zero()
                } else {
                    c.pow((k - 1) as u32).checked_div(&fact(k)).unwrap()
                }
            }
        }
    }
}

/// One-leg operator word over the generators.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Id,
    Gen(Gen),
    /// Entire function of a generator; the generator's matrix must be
    /// nilpotent (it is the primitive one in every table here).
    Series(SeriesSpec, Gen),
    Prod(Vec<Expr>),
    Sum(Vec<Expr>),
    Scaled(Scalar, Box<Expr>),
}

impl Expr {
    pub fn gen(g: Gen) -> Expr {
        Expr::Gen(g)
    }

    pub fn exp(c: Scalar, g: Gen) -> Expr {
        Expr::Series(SeriesSpec::Exp(c), g)
    }

    pub fn expm1_div(c: Scalar, g: Gen) -> Expr {
        Expr::Series(SeriesSpec::ExpM1Div(c), g)
    }

    pub fn prod(factors: Vec<Expr>) -> Expr {
        Expr::Prod(factors)
    }

    pub fn sum(terms: Vec<Expr>) -> Expr {
        Expr::Sum(terms)
    }

    pub fn scaled(s: Scalar, e: Expr) -> Expr {
        Expr::Scaled(s, Box::new(e))
    }

    pub fn zero() -> Expr {
        Expr::Sum(Vec::new())
    }

    /// Evaluate at a single truncated representation leg.
    pub fn eval(&self, rep: &TruncRep) -> Result<Matrix> {
        let dim = rep.dim();
        match self {
            Expr::Id => Ok(Matrix::identity(dim)),
            Expr::Gen(g) => Ok(rep.mat(*g).clone()),
            Expr::Series(spec, g) => nilpotent_series(&|k| spec.coeff(k), rep.mat(*g)),
            Expr::Prod(factors) => {
                let mut acc = Matrix::identity(dim);
                for f in factors {
                    acc = acc.mul(&f.eval(rep)?);
                }
                Ok(acc)
            }
            Expr::Sum(terms) => {
                let mut acc = Matrix::zeros(dim);
                for t in terms {
                    acc = acc.add(&t.eval(rep)?);
                }
                Ok(acc)
            }
            Expr::Scaled(s, e) => Ok(e.eval(rep)?.scale(s)),
        }
    }

    /// Evaluate the coproduct extension of this word on the tensor square,
    /// using the homomorphism property.
    pub fn eval_delta(&self, ctx: &DeltaContext) -> Result<Matrix> {
        let dim2 = ctx.rep.dim() * ctx.rep.dim();
        match self {
            Expr::Id => Ok(Matrix::identity(dim2)),
            Expr::Gen(g) => Ok(ctx.delta(*g).clone()),
            Expr::Series(spec, g) => ctx.delta_series(spec, *g),
            Expr::Prod(factors) => {
                let mut acc = Matrix::identity(dim2);
                for f in factors {
                    acc = acc.mul(&f.eval_delta(ctx)?);
                }
                Ok(acc)
            }
            Expr::Sum(terms) => {
                let mut acc = Matrix::zeros(dim2);
                for t in terms {
                    acc = acc.add(&t.eval_delta(ctx)?);
                }
                Ok(acc)
            }
            Expr::Scaled(s, e) => Ok(e.eval_delta(ctx)?.scale(s)),
        }
    }
}

/// One term `coeff · (left ⊗ right)` of a tensor-square expression.
#[derive(Clone, Debug)]
pub struct TensorTerm {
    pub coeff: Scalar,
    pub left: Expr,
    pub right: Expr,
}

/// Sum of tensor terms; the form every coproduct table entry takes.
#[derive(Clone, Debug)]
pub struct TensorExpr(pub Vec<TensorTerm>);

impl TensorExpr {
    /// Evaluate on the tensor square of a representation.
    pub fn eval(&self, rep: &TruncRep) -> Result<Matrix> {
        let d = rep.dim();
        let mut acc = Matrix::zeros(d * d);
        for t in &self.0 {
            let l = t.left.eval(rep)?;
            let r = t.right.eval(rep)?;
            acc = acc.add(&l.kron(&r).scale(&t.coeff));
        }
        Ok(acc)
    }

    /// The opposite coproduct: tensor factors swapped term by term.
    pub fn opposite(&self) -> TensorExpr {
        TensorExpr(
            self.0
                .iter()
                .map(|t| TensorTerm {
                    coeff: t.coeff.clone(),
                    left: t.right.clone(),
                    right: t.left.clone(),
                })
                .collect(),
        )
    }

    /// `(Δ ⊗ id)` applied to this expression, on the tensor cube.
    pub fn eval_delta_id(&self, ctx: &DeltaContext) -> Result<Matrix> {
        let d = ctx.rep.dim();
        let mut acc = Matrix::zeros(d * d * d);
        for t in &self.0 {
            let l = t.left.eval_delta(ctx)?;
            let r = t.right.eval(ctx.rep)?;
            acc = acc.add(&l.kron(&r).scale(&t.coeff));
        }
        Ok(acc)
    }

    /// `(id ⊗ Δ)` applied to this expression, on the tensor cube.
    pub fn eval_id_delta(&self, ctx: &DeltaContext) -> Result<Matrix> {
        let d = ctx.rep.dim();
        let mut acc = Matrix::zeros(d * d * d);
        for t in &self.0 {
            let l = t.left.eval(ctx.rep)?;
            let r = t.right.eval_delta(ctx)?;
            acc = acc.add(&l.kron(&r).scale(&t.coeff));
        }
        Ok(acc)
    }
}

/// One commutation relation `[x, y] = rhs`.
pub struct Relation {
    pub x: Gen,
    pub y: Gen,
    pub rhs: Expr,
}

fn s_int(k: i64) -> Scalar {
    Scalar::from_int(k)
}

fn times(a: &Scalar, k: i64) -> Scalar {
    a.checked_mul(&s_int(k)).unwrap()
}

/// The commutation table of a representation kind, with the deformation
/// parameter baked into the series atoms. Fifteen relations: ten generator
/// pairs plus the five centrality relations of M.
pub fn relation_table(kind: RepKind, a: &Scalar) -> Vec<Relation> {
    use Expr as E;
    use Gen::*;
    let mut t: Vec<Relation> = Vec::with_capacity(15);
    let mut rel = |x: Gen, y: Gen, rhs: Expr| t.push(Relation { x, y, rhs });
    match kind {
        RepKind::Classical => {
            rel(N, APlus, E::gen(APlus));
            rel(N, AMinus, E::scaled(s_int(-1), E::gen(AMinus)));
            rel(AMinus, APlus, E::gen(M));
            rel(N, BPlus, E::scaled(s_int(2), E::gen(BPlus)));
            rel(N, BMinus, E::scaled(s_int(-2), E::gen(BMinus)));
            rel(
                BMinus,
                BPlus,
                E::sum(vec![
                    E::scaled(s_int(4), E::gen(N)),
                    E::scaled(s_int(2), E::gen(M)),
                ]),
            );
            rel(APlus, BMinus, E::scaled(s_int(-2), E::gen(AMinus)));
            rel(APlus, BPlus, E::zero());
            rel(AMinus, BPlus, E::scaled(s_int(2), E::gen(APlus)));
            rel(AMinus, BMinus, E::zero());
        }
        RepKind::Ua1 => {
            rel(N, APlus, E::expm1_div(a.clone(), APlus));
            rel(N, AMinus, E::scaled(s_int(-1), E::gen(AMinus)));
            rel(
                AMinus,
                APlus,
                E::prod(vec![E::gen(M), E::exp(a.clone(), APlus)]),
            );
            rel(N, BPlus, E::scaled(s_int(2), E::gen(BPlus)));
            rel(
                N,
                BMinus,
                E::sum(vec![
                    E::scaled(s_int(-2), E::gen(BMinus)),
                    E::scaled(a.neg(), E::prod(vec![E::gen(AMinus), E::gen(N)])),
                ]),
            );
            rel(
                BMinus,
                BPlus,
                E::sum(vec![
                    E::prod(vec![
                        E::sum(vec![E::Id, E::exp(a.neg(), APlus)]),
                        E::scaled(s_int(2), E::gen(N)),
                    ]),
                    E::scaled(s_int(2), E::gen(M)),
                    E::scaled(times(a, -2), E::prod(vec![E::gen(AMinus), E::gen(BPlus)])),
                ]),
            );
            // the N term carries one power of the central M; invisible in the
            // one-boson realization (M = 1) but required for the coproduct to
            // be a homomorphism
            rel(
                APlus,
                BMinus,
                E::sum(vec![
                    E::scaled(
                        s_int(-1),
                        E::prod(vec![
                            E::sum(vec![E::Id, E::exp(a.clone(), APlus)]),
                            E::gen(AMinus),
                        ]),
                    ),
                    E::scaled(
                        a.clone(),
                        E::prod(vec![E::exp(a.clone(), APlus), E::gen(M), E::gen(N)]),
                    ),
                ]),
            );
            rel(APlus, BPlus, E::zero());
            rel(
                AMinus,
                BPlus,
                E::scaled(s_int(2), E::expm1_div(a.neg(), APlus)),
            );
            rel(
                AMinus,
                BMinus,
                E::scaled(a.neg(), E::prod(vec![E::gen(AMinus), E::gen(AMinus)])),
            );
        }
        RepKind::Ua2 => {
            rel(N, APlus, E::gen(APlus));
            rel(N, AMinus, E::scaled(s_int(-1), E::gen(AMinus)));
            rel(AMinus, APlus, E::gen(M));
            rel(
                N,
                BPlus,
                E::scaled(s_int(2), E::expm1_div(times(a, 2), BPlus)),
            );
            rel(
                N,
                BMinus,
                E::sum(vec![
                    E::scaled(s_int(-2), E::gen(BMinus)),
                    E::scaled(times(a, -4), E::prod(vec![E::gen(N), E::gen(N)])),
                ]),
            );
            rel(
                BMinus,
                BPlus,
                E::sum(vec![
                    E::scaled(s_int(4), E::gen(N)),
                    E::scaled(
                        s_int(2),
                        E::prod(vec![E::gen(M), E::exp(times(a, 2), BPlus)]),
                    ),
                ]),
            );
            rel(
                APlus,
                BMinus,
                E::sum(vec![
                    E::scaled(s_int(-2), E::gen(AMinus)),
                    E::scaled(
                        times(a, 2),
                        E::sum(vec![
                            E::prod(vec![E::gen(N), E::gen(APlus)]),
                            E::prod(vec![E::gen(APlus), E::gen(N)]),
                        ]),
                    ),
                ]),
            );
            rel(APlus, BPlus, E::zero());
            rel(
                AMinus,
                BPlus,
                E::scaled(
                    s_int(2),
                    E::prod(vec![E::exp(times(a, 2), BPlus), E::gen(APlus)]),
                ),
            );
            rel(
                AMinus,
                BMinus,
                E::scaled(
                    times(a, -2),
                    E::sum(vec![
                        E::prod(vec![E::gen(N), E::gen(AMinus)]),
                        E::prod(vec![E::gen(AMinus), E::gen(N)]),
                    ]),
                ),
            );
        }
    }
    for g in [N, APlus, AMinus, BPlus, BMinus] {
        t.push(Relation {
            x: M,
            y: g,
            rhs: Expr::zero(),
        });
    }
    t
}

/// Coproduct table of a deformation: one tensor expression per generator.
pub struct CoproductTable {
    pub kind: RepKind,
    terms: [TensorExpr; 6],
}

impl CoproductTable {
    pub fn expr(&self, g: Gen) -> &TensorExpr {
        &self.terms[g.index()]
    }
}

fn primitive(g: Gen) -> TensorExpr {
    TensorExpr(vec![
        TensorTerm {
            coeff: Scalar::one(),
            left: Expr::Id,
            right: Expr::gen(g),
        },
        TensorTerm {
            coeff: Scalar::one(),
            left: Expr::gen(g),
            right: Expr::Id,
        },
    ])
}

fn term(coeff: Scalar, left: Expr, right: Expr) -> TensorTerm {
    TensorTerm { coeff, left, right }
}

/// The coproduct tables of the two deformations. The deformed tails sit on
/// the second tensor leg.
pub fn coproduct_table(kind: RepKind, a: &Scalar) -> Result<CoproductTable> {
    use Expr as E;
    use Gen::*;
    let one = Scalar::one;
    match kind {
        RepKind::Classical => Err(Error::KindMismatch(
            "coproduct tables exist for the two deformations only".into(),
        )),
        RepKind::Ua1 => {
            let n = TensorExpr(vec![
                term(one(), E::Id, E::gen(N)),
                term(one(), E::gen(N), E::exp(a.clone(), APlus)),
            ]);
            let bp = TensorExpr(vec![
                term(one(), E::Id, E::gen(BPlus)),
                term(one(), E::gen(BPlus), E::exp(times(a, -2), APlus)),
            ]);
            let am = TensorExpr(vec![
                term(one(), E::Id, E::gen(AMinus)),
                term(one(), E::gen(AMinus), E::exp(a.clone(), APlus)),
                term(
                    a.clone(),
                    E::gen(N),
                    E::prod(vec![E::exp(a.clone(), APlus), E::gen(M)]),
                ),
            ]);
            // Δ(B-) = 1⊗B- + B-⊗e^{2aA+} - a A-⊗e^{aA+}N + a N⊗e^{aA+}(A- - a M N)
            let bm = TensorExpr(vec![
                term(one(), E::Id, E::gen(BMinus)),
                term(one(), E::gen(BMinus), E::exp(times(a, 2), APlus)),
                term(
                    a.neg(),
                    E::gen(AMinus),
                    E::prod(vec![E::exp(a.clone(), APlus), E::gen(N)]),
                ),
                term(
                    a.clone(),
                    E::gen(N),
                    E::prod(vec![E::exp(a.clone(), APlus), E::gen(AMinus)]),
                ),
                term(
                    times(a, -1).checked_mul(a).unwrap(),
                    E::gen(N),
                    E::prod(vec![E::exp(a.clone(), APlus), E::gen(M), E::gen(N)]),
                ),
            ]);
            Ok(CoproductTable {
                kind,
                terms: [n, primitive(APlus), am, bp, bm, primitive(M)],
            })
        }
        RepKind::Ua2 => {
            let n = TensorExpr(vec![
                term(one(), E::Id, E::gen(N)),
                term(one(), E::gen(N), E::exp(times(a, 2), BPlus)),
            ]);
            let ap = TensorExpr(vec![
                term(one(), E::Id, E::gen(APlus)),
                term(one(), E::gen(APlus), E::exp(a.neg(), BPlus)),
            ]);
            let am = TensorExpr(vec![
                term(one(), E::Id, E::gen(AMinus)),
                term(one(), E::gen(AMinus), E::exp(a.clone(), BPlus)),
                term(
                    times(a, 2),
                    E::gen(N),
                    E::prod(vec![E::exp(times(a, 2), BPlus), E::gen(APlus)]),
                ),
            ]);
            let bm = TensorExpr(vec![
                term(one(), E::Id, E::gen(BMinus)),
                term(one(), E::gen(BMinus), E::exp(times(a, 2), BPlus)),
                term(
                    times(a, 2),
                    E::gen(N),
                    E::prod(vec![E::exp(times(a, 2), BPlus), E::gen(M)]),
                ),
            ]);
            Ok(CoproductTable {
                kind,
                terms: [n, ap, am, primitive(BPlus), bm, primitive(M)],
            })
        }
    }
}

/// Evaluation context caching the six coproduct matrices of a representation
/// and the series-of-coproduct evaluations.
pub struct DeltaContext<'a> {
    pub rep: &'a TruncRep,
    pub table: &'a CoproductTable,
    deltas: [Matrix; 6],
    series_cache: RefCell<Vec<((SeriesSpec, Gen), Matrix)>>,
}

impl<'a> DeltaContext<'a> {
    pub fn new(table: &'a CoproductTable, rep: &'a TruncRep) -> Result<Self> {
        if table.kind != rep.kind {
            return Err(Error::KindMismatch(format!(
                "coproduct table is {} but representation is {}",
                table.kind.name(),
                rep.kind.name()
            )));
        }
        let deltas: [Matrix; 6] = {
            let mut v = Vec::with_capacity(6);
            for g in Gen::ALL {
                v.push(table.expr(g).eval(rep)?);
            }
            v.try_into().unwrap()
        };
        Ok(DeltaContext {
            rep,
            table,
            deltas,
            series_cache: RefCell::new(Vec::new()),
        })
    }

    pub fn delta(&self, g: Gen) -> &Matrix {
        &self.deltas[g.index()]
    }

    fn delta_series(&self, spec: &SeriesSpec, g: Gen) -> Result<Matrix> {
        {
            let cache = self.series_cache.borrow();
            if let Some((_, m)) = cache.iter().find(|((s, h), _)| s == spec && *h == g) {
                return Ok(m.clone());
            }
        }
        let m = nilpotent_series(&|k| spec.coeff(k), self.delta(g))?;
        self.series_cache
            .borrow_mut()
            .push(((spec.clone(), g), m.clone()));
        Ok(m)
    }
}

/// Outcome of one relation comparison.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub passed: bool,
    pub first_failure: Option<(usize, usize)>,
    pub max_failure: Option<(usize, usize)>,
}

/// Report for a full relation-table check.
#[derive(Clone, Debug, serde::Serialize)]
pub struct RelationReport {
    pub kind: RepKind,
    pub dim: usize,
    pub guard: usize,
    pub parameter: String,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&RelationCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn assert_ok(&self) -> Result<()> {
        match self.checks.iter().find(|c| !c.passed) {
            None => Ok(()),
            Some(c) => Err(Error::Verification(format!(
                "relation {} fails at {:?} (kind {}, D={}, G={})",
                c.relation,
                c.first_failure,
                self.kind.name(),
                self.dim,
                self.guard
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockrep::{rep_ua1, rep_ua2};

    #[test]
    fn primitive_coproducts_evaluate_as_sums_of_krons() {
        let a = Scalar::ratio(1, 2);
        let rep = rep_ua1(4, &a).unwrap();
        let table = coproduct_table(RepKind::Ua1, &a).unwrap();
        let d = table.expr(Gen::APlus).eval(&rep).unwrap();
        let want = Matrix::identity(4)
            .kron(rep.mat(Gen::APlus))
            .add(&rep.mat(Gen::APlus).kron(&Matrix::identity(4)));
        assert_eq!(d, want);
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let a = Scalar::ratio(1, 2);
        let rep = rep_ua2(4, &a).unwrap();
        let table = coproduct_table(RepKind::Ua1, &a).unwrap();
        assert!(matches!(
            DeltaContext::new(&table, &rep),
            Err(Error::KindMismatch(_))
        ));
    }

    #[test]
    fn delta_of_exponential_factorizes_for_primitives() {
        // Δ(e^{cA+}) = e^{cΔ(A+)} = e^{cA+} ⊗ e^{cA+} when A+ is primitive
        let a = Scalar::ratio(1, 3);
        let rep = rep_ua1(5, &a).unwrap();
        let table = coproduct_table(RepKind::Ua1, &a).unwrap();
        let ctx = DeltaContext::new(&table, &rep).unwrap();
        let e = Expr::exp(a.clone(), Gen::APlus);
        let lhs = e.eval_delta(&ctx).unwrap();
        let one_leg = e.eval(&rep).unwrap();
        assert_eq!(lhs, one_leg.kron(&one_leg));
    }

    #[test]
    fn opposite_matches_swap_conjugation() {
        let a = Scalar::ratio(2, 5);
        for (kind, rep) in [
            (RepKind::Ua1, rep_ua1(5, &a).unwrap()),
            (RepKind::Ua2, rep_ua2(5, &a).unwrap()),
        ] {
            let table = coproduct_table(kind, &a).unwrap();
            for g in Gen::ALL {
                let direct = table.expr(g).eval(&rep).unwrap();
                let opp = table.expr(g).opposite().eval(&rep).unwrap();
                assert_eq!(opp, direct.swap_legs(5), "{:?} {}", kind, g);
            }
        }
    }
}
