//! Quantum-level integration checks at small dimensions: coassociativity on
//! the tensor cube, intertwining, semiclassical limits, and zero-parameter
//! specializations.

use twophoton::expr::coproduct_table;
use twophoton::fockrep::{rep, rep_classical, RepKind};
use twophoton::lie::Gen;
use twophoton::matrix::Matrix;
use twophoton::quantum::*;
use twophoton::scalar::Scalar;

const KINDS: [RepKind; 2] = [RepKind::Ua1, RepKind::Ua2];

#[test]
fn coassociativity_exact_on_guarded_cube() {
    for kind in KINDS {
        for (dim, a) in [(4, Scalar::ratio(1, 2)), (5, Scalar::ratio(-1, 3))] {
            let r = rep(kind, dim, &a).unwrap();
            let table = coproduct_table(kind, &a).unwrap();
            let report = coassoc_check(&table, &r, 2).unwrap();
            assert!(report.passed(), "{:?} D={}: {}", kind, dim, report.status);
        }
    }
}

#[test]
fn coassociativity_for_primitive_generator_is_structural() {
    // Δ(A+) for ua1: both sides are 1⊗1⊗A+ + 1⊗A+⊗1 + A+⊗1⊗1 exactly
    let a = Scalar::ratio(1, 2);
    let dim = 4;
    let r = rep(RepKind::Ua1, dim, &a).unwrap();
    let table = coproduct_table(RepKind::Ua1, &a).unwrap();
    let ctx = twophoton::expr::DeltaContext::new(&table, &r).unwrap();
    let lhs = table.expr(Gen::APlus).eval_delta_id(&ctx).unwrap();
    let id = Matrix::identity(dim);
    let ap = r.mat(Gen::APlus);
    let want = id
        .kron(&id.kron(ap))
        .add(&id.kron(&ap.kron(&id)))
        .add(&ap.kron(&id.kron(&id)));
    assert_eq!(lhs, want);
    let rhs = table.expr(Gen::APlus).eval_id_delta(&ctx).unwrap();
    assert_eq!(rhs, want);
}

#[test]
fn hom_check_across_dims_and_parameters() {
    for kind in KINDS {
        for dim in [4, 5, 6] {
            for a in [Scalar::ratio(1, 2), Scalar::ratio(-2, 5), Scalar::ratio(1, 7)] {
                let r = rep(kind, dim, &a).unwrap();
                let table = coproduct_table(kind, &a).unwrap();
                let report = hom_check(&table, &r, 2).unwrap();
                assert!(
                    report.passed(),
                    "{:?} D={} a={}: {}",
                    kind,
                    dim,
                    a,
                    report.status
                );
            }
        }
    }
}

#[test]
fn qybe_exact_on_full_cube() {
    for kind in KINDS {
        for (dim, a) in [(4, Scalar::ratio(1, 2)), (5, Scalar::ratio(2, 3))] {
            let r = rep(kind, dim, &a).unwrap();
            let spec = RMatrixSpec::new(kind, a.clone()).unwrap();
            let report = qybe_check(&spec, &r, 2).unwrap();
            assert!(report.passed());
            assert!(
                report.status.contains("full cube"),
                "{:?} D={}: {}",
                kind,
                dim,
                report.status
            );
        }
    }
}

#[test]
fn intertwining_on_guarded_block() {
    for kind in KINDS {
        let a = Scalar::ratio(1, 2);
        let r = rep(kind, 6, &a).unwrap();
        let table = coproduct_table(kind, &a).unwrap();
        let spec = RMatrixSpec::new(kind, a.clone()).unwrap();
        let report = intertwine_check(&spec, &table, &r, 2).unwrap();
        assert!(report.passed(), "{:?}: {}", kind, report.status);
    }
}

#[test]
fn zero_parameter_specializations() {
    // coproducts primitive, R identity, brackets undeformed
    let z = Scalar::zero();
    for kind in KINDS {
        let r = rep(kind, 5, &z).unwrap();
        let cl = rep_classical(5).unwrap();
        for g in Gen::ALL {
            assert_eq!(r.mat(g), cl.mat(g));
        }
        let spec = RMatrixSpec::new(kind, z.clone()).unwrap();
        assert_eq!(rmatrix(&spec, &r).unwrap(), Matrix::identity(25));
        let table = coproduct_table(kind, &z).unwrap();
        let report = hom_check(&table, &r, 2).unwrap();
        assert!(report.passed());
        let report = intertwine_check(&spec, &table, &r, 2).unwrap();
        assert!(report.passed());
    }
}

#[test]
fn semiclassical_degree_one_limits() {
    for kind in KINDS {
        let report = semiclassical_check(kind, 5).unwrap();
        assert!(report.passed(), "{:?}: {}", kind, report.status);
    }
}

#[test]
fn semiclassical_degree_one_is_antisymmetric() {
    // the extracted degree-1 coefficient of Δ − σΔσ is σ-antisymmetric
    use twophoton::scalar::VarSet;
    for (kind, var) in [(RepKind::Ua1, "a1"), (RepKind::Ua2, "a2")] {
        let a = Scalar::var(&VarSet::single(var), var).unwrap();
        let dim = 4;
        let r = rep(kind, dim, &a).unwrap();
        let table = coproduct_table(kind, &a).unwrap();
        for g in Gen::ALL {
            let dx = coproduct(&table, &r, g).unwrap();
            let anti = dx.sub(&dx.swap_legs(dim)).degree_coefficient(1).unwrap();
            let flipped = anti.swap_legs(dim);
            assert_eq!(anti, flipped.scale(&Scalar::from_int(-1)));
        }
    }
}

#[test]
fn check_report_serializes_with_schema_fields() {
    let a = Scalar::ratio(1, 2);
    let r = rep(RepKind::Ua1, 4, &a).unwrap();
    let table = coproduct_table(RepKind::Ua1, &a).unwrap();
    let report = hom_check(&table, &r, 2).unwrap();
    let v = serde_json::to_value(&report).unwrap();
    for key in ["check", "kind", "dim", "guard", "parameter", "status"] {
        assert!(v.get(key).is_some(), "missing key {key}");
    }
}
