use lqel::clifford::{
    build_clifford_module, build_clifford_module_with_complement, divisibility_check, module_multiplicity,
    q_nondegenerate, recover_q_from_squares, verify_clifford_relations, Chirality, CliffordError,
};
use lqel::exactla::{Matrix, Scalar};
use lqel::sampling::{rng_from_seed, small_int_vector, small_nonzero_int};
use lqel::secantgeom::{key_identity_check, SecantReport};
use lqel::sff::{sample_general_vector, second_fundamental_form, FundamentalForms};
use lqel::varieties::{chart_for_id, CatalogId};

fn setup(id: &str, seed: u64) -> (FundamentalForms, SecantReport) {
    let chart = chart_for_id(&id.parse::<CatalogId>().unwrap()).unwrap();
    let forms = second_fundamental_form(&chart).unwrap();
    let gv = sample_general_vector(&forms, &mut rng_from_seed(seed)).unwrap();
    let report = key_identity_check(&forms, &gv.v).unwrap();
    (forms, report)
}

#[test]
fn grassmann26_module() {
    for seed in 0..5 {
        let (forms, report) = setup("grassmann:2,6", seed);
        assert_eq!((report.n, report.delta), (8, 4));
        let d = build_clifford_module(&forms, &report).unwrap();
        assert_eq!((d.form_dim(), d.module_dim()), (3, 4));
        let rel = verify_clifford_relations(&d);
        assert_eq!(rel.pairs_checked, 6);
        assert!(rel.is_exact(), "seed {seed}: {:?}", rel.residuals);
        assert_eq!(recover_q_from_squares(&d).unwrap(), d.q);
        assert!(q_nondegenerate(&d.q));
        let mult = module_multiplicity(&d).unwrap();
        assert_eq!((mult.l, mult.p, mult.m), (3, 2, 2));
        assert_ne!(mult.chirality, Chirality::NotApplicable);
        assert!(divisibility_check(report.n, report.delta));
    }
}

#[test]
fn grassmann27_module() {
    let (forms, report) = setup("grassmann:2,7", 3);
    assert_eq!((report.n, report.delta), (10, 4));
    let d = build_clifford_module(&forms, &report).unwrap();
    assert_eq!((d.form_dim(), d.module_dim()), (3, 6));
    assert!(verify_clifford_relations(&d).is_exact());
    assert_eq!(module_multiplicity(&d).unwrap().m, 3);
}

#[test]
fn severi16_module() {
    let (forms, report) = setup("severi16", 1);
    assert_eq!((report.n, report.a, report.delta), (16, 10, 8));
    assert!(report.key_identity_holds);
    let d = build_clifford_module(&forms, &report).unwrap();
    assert_eq!((d.form_dim(), d.module_dim()), (7, 8));
    let rel = verify_clifford_relations(&d);
    assert_eq!(rel.pairs_checked, 28);
    assert!(rel.is_exact());
    assert_eq!(recover_q_from_squares(&d).unwrap(), d.q);
    assert!(q_nondegenerate(&d.q));
    let mult = module_multiplicity(&d).unwrap();
    assert_eq!((mult.l, mult.p, mult.m), (7, 8, 1));
}

#[test]
fn degenerate_entries_rejected() {
    for id in ["segre:1x2", "grassmann:2,5"] {
        let (forms, report) = setup(id, 0);
        assert!(report.secant_fills);
        assert!(!report.key_identity_holds);
        assert_eq!(report.landsberg_s, report.n - report.delta);
        assert_eq!(build_clifford_module(&forms, &report), Err(CliffordError::SecantFills));
    }
}

#[test]
fn rescaling_covariance() {
    for (id, seed) in [("segre:2x3", 2), ("grassmann:2,6", 4)] {
        let (forms, report) = setup(id, seed);
        let d = build_clifford_module(&forms, &report).unwrap();
        let lambda = Scalar::from_int(small_nonzero_int(&mut rng_from_seed(seed), 10));
        let scaled_v: Vec<Scalar> = report.v.iter().map(|x| x * &lambda).collect();
        let scaled_report = key_identity_check(&forms, &scaled_v).unwrap();
        assert_eq!(scaled_report.ker_iiv, report.ker_iiv);
        let d2 = build_clifford_module_with_complement(&forms, &scaled_report, d.u_basis.clone()).unwrap();
        let inv = lambda.inv().unwrap();
        for (c, c2) in d.action.iter().zip(&d2.action) {
            assert_eq!(c2, &c.scale(&inv));
        }
        assert_eq!(d2.q, d.q.scale(&(&inv * &inv)));
        assert!(verify_clifford_relations(&d2).is_exact());
        assert_eq!(q_nondegenerate(&d2.q), q_nondegenerate(&d.q));
    }
}

#[test]
fn complement_independence_weak_form() {
    for (id, seed) in [("segre:2x2", 0), ("segre:2x3", 1), ("grassmann:2,6", 2)] {
        let (forms, report) = setup(id, seed);
        let d = build_clifford_module(&forms, &report).unwrap();
        let mut rng = rng_from_seed(seed + 100);
        let shifted: Vec<Vec<Scalar>> = d
            .u_basis
            .iter()
            .map(|u| {
                let coeffs = small_int_vector(&mut rng, report.span_v_ker.dim());
                let mut out = u.clone();
                for (c, b) in coeffs.iter().zip(report.span_v_ker.basis()) {
                    for (o, x) in out.iter_mut().zip(b) {
                        *o += &(c * x);
                    }
                }
                out
            })
            .collect();
        let d2 = build_clifford_module_with_complement(&forms, &report, shifted).unwrap();
        assert!(verify_clifford_relations(&d2).is_exact());
        assert_eq!(d2.q.rank(), d.q.rank());
        assert_eq!(module_multiplicity(&d2).unwrap().m, module_multiplicity(&d).unwrap().m);
    }
}

#[test]
fn veronese_modules_are_vacuous() {
    for n in 2..=4 {
        let (forms, report) = setup(&format!("veronese:{n}"), 7);
        let d = build_clifford_module(&forms, &report).unwrap();
        assert_eq!(d.q, Matrix::zeros(0, 0));
        let mult = module_multiplicity(&d).unwrap();
        assert_eq!((mult.l, mult.p, mult.m), (0, 1, n - 1));
    }
}
