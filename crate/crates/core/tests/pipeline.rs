use shortres::exactla::PrimeField;
use shortres::invsys::{apolar_algebra, random_cubic};
use shortres::laws::{
    construct_ci_cover, graded_pair, leading_part, search_pair_and_conca, verify_golod, verify_gorenstein_rationality,
    verify_koszul_socle_criterion,
};
use shortres::par::Execution;
use shortres::polyspace::{parse_poly, var_list};
use shortres::quotient::{build_graded, parse_algebra_file};
use shortres::resolve::{minimal_resolution, residue_field, ModulePresentation};
use shortres::survey::{run_survey, to_jsonl, SurveyConfig, SurveySummary};
use shortres::zerodiv::{criterion_balanced, find_exact_pair, Budget};

#[test]
fn found_pairs_pass_the_numerical_criterion() {
    for seed in 0..6 {
        let l = apolar_algebra(&random_cubic(PrimeField::default(), 3, seed), 10)
            .unwrap()
            .to_local()
            .unwrap();
        let cert = find_exact_pair(&l, Budget::default(), seed)
            .unwrap()
            .certificate
            .unwrap();
        assert!(criterion_balanced(&l, cert.a(), cert.b()).unwrap(), "seed {seed}");
    }
}

#[test]
fn gorenstein_sample_end_to_end() {
    let f = PrimeField::default();
    let r = apolar_algebra(&random_cubic(f, 3, 1), 10).unwrap();
    let l = r.to_local().unwrap();
    let searched = search_pair_and_conca(&l, Budget::default(), 1).unwrap();
    assert!(searched.pair.is_some());

    let ks = verify_koszul_socle_criterion(&r, &searched, 6).unwrap();
    assert!(ks.outcome.is_verified(), "{}", ks.to_json());
    assert_eq!(ks.payload["predicted_koszul"], true);

    let modules = vec![
        ("k".to_string(), ModulePresentation::residue_field(f, r.vars())),
        ("R".to_string(), ModulePresentation::free(vec![0])),
    ];
    let gr = verify_gorenstein_rationality(&r, &searched, &modules, 6, 10).unwrap();
    assert!(gr.outcome.is_verified(), "{}", gr.to_json());
    assert_eq!(gr.payload["product_k"], serde_json::json!([1, 0, 0, 0, 0, 0, 0]));
}

#[test]
fn golod_cover_on_a_sample_with_a_conca_generator() {
    let f = PrimeField::default();
    let (r, l, searched) = (0..40)
        .find_map(|seed| {
            let r = apolar_algebra(&random_cubic(f, 3, seed), 10).unwrap();
            let l = r.to_local().unwrap();
            let s = search_pair_and_conca(&l, Budget::default(), seed).unwrap();
            s.conca_found().then_some((r, l, s))
        })
        .expect("some sample has a Conca generator");
    let cert = searched.pair.as_ref().unwrap();
    let (a, b) = graded_pair(&r, &l, cert).unwrap().unwrap();
    let c_vec = searched.conca.as_ref().unwrap().c_vec.clone().unwrap();
    let c = leading_part(&l.lift(&c_vec).rename_to(r.vars()).unwrap());
    let cover = construct_ci_cover(&r, &a, &b, &c, 10).unwrap();
    assert_eq!(cover.images.len(), 3);
    let golod = verify_golod(&cover, 6, 10).unwrap();
    assert!(golod.outcome.is_verified(), "{}", golod.to_json());
    assert_eq!(golod.payload["golod_series"], golod.payload["poincare_r_k"]);
}

#[test]
fn survey_is_independent_of_execution_mode() {
    let cfg = SurveyConfig {
        samples: 6,
        seed: 3,
        cyclic_modules: 2,
        ..SurveyConfig::default()
    };
    let parallel = run_survey(&cfg).unwrap();
    let sequential = run_survey(&SurveyConfig {
        exec: Execution::Sequential,
        ..cfg.clone()
    })
    .unwrap();
    assert_eq!(to_jsonl(&parallel), to_jsonl(&sequential));
    assert_eq!(to_jsonl(&parallel).lines().count(), 6);
    let summary = SurveySummary::of(&parallel);
    assert_eq!(summary.gorenstein_shape, 6);
    assert!(!summary.any_refuted(), "{summary}");
}

#[test]
fn algebra_file_round_trip_to_betti_table() {
    let text = "# two quadrics\np = 101\nvars = x, y\nrelations = x^2, y^2\n";
    let r = parse_algebra_file(text).unwrap().graded().unwrap();
    let b = minimal_resolution(&r, &residue_field(&r), 4, 8).unwrap();
    assert_eq!(b.poincare().unwrap().to_i64_vec().unwrap(), vec![1, 2, 3, 4, 5]);
    assert_eq!(b.first_off_diagonal(0), None);
}

#[test]
fn hypersurface_residue_field_has_two_periodic_tail() {
    // k[x]/(x^3): β_{2i} in degree 3i, β_{2i+1} in degree 3i+1
    let f = PrimeField::default();
    let v = var_list(&["x"]);
    let r = build_graded(f, v.clone(), &[parse_poly("x^3", &v, f).unwrap()], 12).unwrap();
    let b = minimal_resolution(&r, &residue_field(&r), 4, 12).unwrap();
    let entries: Vec<_> = b.entries().map(|(i, j, _)| (i, j)).collect();
    assert_eq!(entries, vec![(0, 0), (1, 1), (2, 3), (3, 4), (4, 6)]);
}
