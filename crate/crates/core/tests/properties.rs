use num_traits::Zero;
use proptest::prelude::*;

use powersum_forge::exact::{int, rat, Integer, Rational};
use powersum_forge::forms::{
    check_characterization, content_reduce, evaluate_forms, fraction_ratio, numeric_ratio,
    permute_seed, sandor_generate, substitute, verify_cubic_identity, CubicQuadruple,
    SubstitutionMatrix,
};
use powersum_forge::identities::{build_f, build_q, build_relation, RelationMode};
use powersum_forge::powersum::{combo_to_polynomial, eval_powersum, product, square};
use powersum_forge::search::{canonicalize, SearchMode, SolutionRecord};

const BASES: [[i64; 4]; 8] = [
    [3, 4, 5, 6],
    [1, 6, 8, 9],
    [7, 14, 17, 20],
    [3, 10, 18, 19],
    [11, 15, 27, 29],
    [2, 17, 40, 41],
    [-1, 9, 10, 12],
    [16, 23, 41, 44],
];

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn seeds() -> impl Strategy<Value = CubicQuadruple> {
    (0..BASES.len(), 0..PERMS.len(), (1i64..=40), any::<bool>()).prop_filter_map(
        "nontrivial seed",
        |(b, p, t, neg)| {
            let [a, b, c, d] = BASES[b];
            let base = CubicQuadruple::from_i64(a, b, c, d).ok()?;
            let t = if neg { -t } else { t };
            permute_seed(&base, PERMS[p])
                .and_then(|s| s.scaled(&int(t)))
                .ok()
        },
    )
}

fn unimodular() -> impl Strategy<Value = SubstitutionMatrix> {
    prop_oneof![
        Just(SubstitutionMatrix::from_i64([[1, 1], [0, 1]])),
        Just(SubstitutionMatrix::from_i64([[1, 0], [-2, 1]])),
        Just(SubstitutionMatrix::from_i64([[0, 1], [1, 0]])),
        Just(SubstitutionMatrix::from_i64([[2, 1], [1, 1]])),
        Just(SubstitutionMatrix::from_i64([[-1, 3], [0, 1]])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_forms_always_cancel(s in seeds()) {
        let fq = sandor_generate(&s);
        prop_assert!(verify_cubic_identity(&fq));
        let (r, g) = content_reduce(&fq);
        prop_assert!(g > Integer::zero());
        prop_assert!(verify_cubic_identity(&r));
        prop_assert!(check_characterization(&s, &r));
    }

    #[test]
    fn nontrivial_points_keep_the_seed_ratio(s in seeds(), u in -30i64..30, v in -30i64..30) {
        let (fq, _) = content_reduce(&sandor_generate(&s));
        let q = evaluate_forms(&fq, &int(u), &int(v));
        if let Some(r) = numeric_ratio(&q) {
            prop_assert_eq!(r, fraction_ratio(&s));
        }
    }

    #[test]
    fn substitution_then_inverse_is_identity(s in seeds(), m in unimodular()) {
        let (fq, _) = content_reduce(&sandor_generate(&s));
        let there = substitute(&fq, &m).unwrap();
        prop_assert!(verify_cubic_identity(&there));
        let back = substitute(&there, &m.inverse().unwrap()).unwrap();
        prop_assert_eq!(back.forms, fq.forms);
    }

    #[test]
    fn canonical_form_is_idempotent(s in seeds(), u in -20i64..20, v in -20i64..20) {
        let (fq, _) = content_reduce(&sandor_generate(&s));
        let q = evaluate_forms(&fq, &int(u), &int(v));
        if q.iter().all(|x| !x.is_zero()) {
            let (c, g) = canonicalize(&q).unwrap();
            let (c2, g2) = canonicalize(&c).unwrap();
            prop_assert_eq!(&c, &c2);
            prop_assert_eq!(g2, int(1));
            prop_assert!(g > Integer::zero());
            let rec = SolutionRecord::from_raw(&s, SearchMode::Cubic, (int(u), int(v)), q).unwrap();
            prop_assert!(rec.verify().is_ok());
            prop_assert_eq!(SolutionRecord::from_json_line(&rec.to_json_line()).unwrap(), rec);
        }
    }

    #[test]
    fn products_commute_and_match_evaluation(k in 0u32..10, m in 0u32..10, n in -12i64..40) {
        prop_assert_eq!(product(k, m), product(m, k));
        let n = int(n);
        let want = eval_powersum(k, &n) * eval_powersum(m, &n);
        prop_assert_eq!(combo_to_polynomial(&product(k, m)).eval(&Rational::from_integer(n)), want);
    }

    #[test]
    fn squares_equal_one_at_n_one(k in 1u32..12) {
        let at_one = combo_to_polynomial(&square(k)).eval(&rat(1, 1));
        prop_assert_eq!(at_one, rat(1, 1));
    }

    #[test]
    fn relations_hold_and_vanish(s in seeds(), k in 1u32..5, m in 1u32..5, n in -6i64..12) {
        let fq = sandor_generate(&s);
        for mode in [RelationMode::Q { k, m }, RelationMode::F { k }] {
            let cq = build_relation(&fq, mode).unwrap();
            prop_assert!(cq.holds_at(&int(n)));
        }
        for f in &fq.forms {
            for n in [0, -1] {
                prop_assert!(build_q(f, k, m).unwrap().eval(&int(n)).is_zero());
                prop_assert!(build_f(f, k).unwrap().eval(&int(n)).is_zero());
            }
        }
    }
}
