use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shortres::exactla::{Matrix, PrimeField};
use shortres::invsys::{apolar_algebra, default_vars, is_degenerate, random_cubic};
use shortres::polyspace::{parse_poly, random_form};
use shortres::resolve::{minimal_resolution, present_module, residue_field, ModulePresentation};
use shortres::series::{IntPoly, TruncSeries};
use shortres::zerodiv::{criterion_balanced, is_exact_pair};

const P: u32 = 101;

fn field() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn matrix_strategy() -> impl Strategy<Value = (usize, Vec<Vec<u32>>)> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| (Just(c), prop::collection::vec(prop::collection::vec(0..P, c), r)))
}

proptest! {
    #[test]
    fn rank_plus_nullity_is_column_count((cols, rows) in matrix_strategy()) {
        let f = field();
        let m = Matrix::from_rows(cols, &rows);
        let kernel = m.kernel_basis(&f);
        prop_assert_eq!(m.rank(&f) + kernel.rows(), cols);
        for v in kernel.row_vecs() {
            prop_assert!(m.mul_vec(&f, &v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solutions_solve((cols, rows) in matrix_strategy(), seed in any::<u64>()) {
        let f = field();
        let m = Matrix::from_rows(cols, &rows);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<u32> = (0..cols).map(|_| rand::Rng::random_range(&mut rng, 0..P)).collect();
        let b = m.mul_vec(&f, &x);
        let y = m.solve(&f, &b).expect("a consistent system has a solution");
        prop_assert_eq!(m.mul_vec(&f, &y), b);
    }

    #[test]
    fn series_inverse_is_inverse(tail in prop::collection::vec(-5i64..6, 0..6), order in 1usize..12) {
        let mut c = vec![1];
        c.extend(tail);
        let s = TruncSeries::from_i64(&c, order);
        let product = s.mul(&s.invert().unwrap());
        prop_assert_eq!(product, TruncSeries::from_poly(&IntPoly::one(), order));
    }

    #[test]
    fn sign_twist_is_an_involution(c in prop::collection::vec(-9i64..10, 1..8)) {
        let p = IntPoly::from_i64(&c);
        prop_assert_eq!(p.eval_neg_t().eval_neg_t(), p);
    }

    #[test]
    fn polynomials_print_and_parse_back(seed in any::<u64>(), d in 0usize..5) {
        let f = field();
        let vars = default_vars(3);
        let p = random_form(f, vars.clone(), d, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(parse_poly(&p.to_text(), &vars, f).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn apolar_algebras_of_ternary_cubics_are_gorenstein(seed in any::<u64>()) {
        let form = random_cubic(field(), 3, seed);
        prop_assume!(!is_degenerate(&form));
        let r = apolar_algebra(&form, 8).unwrap();
        let h = r.hilbert_function();
        prop_assert_eq!(h.len(), 4);
        prop_assert_eq!(h[1], h[2]);
        let l = r.to_local().unwrap();
        prop_assert!(l.is_gorenstein());
        prop_assert_eq!(l.socle().lambda(), 1);
    }

    #[test]
    fn numerical_criterion_matches_exactness(seed in any::<u64>(), ca in prop::collection::vec(0..P, 3), cb in prop::collection::vec(0..P, 3)) {
        prop_assume!(ca.iter().any(|&x| x != 0) && cb.iter().any(|&x| x != 0));
        let r = apolar_algebra(&random_cubic(field(), 3, seed), 8).unwrap();
        prop_assume!(r.hilbert_function() == vec![1, 3, 3, 1]);
        let l = r.to_local().unwrap();
        let (a, b) = (l.linear_form(&ca), l.linear_form(&cb));
        let exact = is_exact_pair(&l, &a, &b).unwrap();
        prop_assert_eq!(criterion_balanced(&l, &a, &b).unwrap(), exact);
        prop_assert_eq!(is_exact_pair(&l, &b, &a).unwrap(), exact);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// `H_M(t) = H_R(t) Σ (-1)^i β_{i,j} t^j` in degrees `≤ N` whenever
    /// rows `0..=N` are complete.
    #[test]
    fn betti_numbers_recover_the_hilbert_series(seed in any::<u64>(), use_cyclic in any::<bool>()) {
        let f = field();
        let r = apolar_algebra(&random_cubic(f, 3, seed), 10).unwrap();
        let n = 5;
        let pres = if use_cyclic {
            let q = random_form(f, r.vars().clone(), 2, &mut ChaCha8Rng::seed_from_u64(seed ^ 1));
            ModulePresentation::cyclic(vec![q])
        } else {
            ModulePresentation::residue_field(f, r.vars())
        };
        let m = present_module(&r, &pres).unwrap();
        let b = minimal_resolution(&r, &m, n, 10).unwrap();
        prop_assume!((0..=n).all(|i| b.is_complete(i)));
        let mut alternating = vec![0i64; n + 1];
        for (i, j, beta) in b.entries() {
            if j <= n {
                alternating[j] += if i % 2 == 0 { beta as i64 } else { -(beta as i64) };
            }
        }
        let lhs = TruncSeries::from_poly(&r.hilbert(), n).mul(&TruncSeries::from_i64(&alternating, n));
        let hm: Vec<usize> = (0..=n).map(|j| m.hilbert_function().get(j).copied().unwrap_or(0)).collect();
        prop_assert_eq!(lhs, TruncSeries::from_usize(&hm));
    }

    #[test]
    fn residue_field_resolution_matches_across_presentations(seed in any::<u64>()) {
        let f = field();
        let r = apolar_algebra(&random_cubic(f, 3, seed), 10).unwrap();
        let direct = minimal_resolution(&r, &residue_field(&r), 4, 10).unwrap();
        let presented = present_module(&r, &ModulePresentation::residue_field(f, r.vars())).unwrap();
        prop_assert_eq!(minimal_resolution(&r, &presented, 4, 10).unwrap(), direct);
    }
}
