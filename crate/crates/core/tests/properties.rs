use proptest::prelude::*;

use secant_core::classify::{
    critical_s, expected_dim, giambelli_degree, two_factor_codim, two_factor_secant_dim, unbalanced_classify,
    Thm24Case,
};
use secant_core::coords::{CoordIndex, Factor, FactorProfile};
use secant_core::field::FieldConfig;
use secant_core::flatten::{enumerate_splits, Flattening, Split};
use secant_core::numeric::{evaluate_matrix, seeded_cone_point, Embedding};
use secant_core::poly::SparsePoly;
use secant_core::secant::{terracini_dim, verify_rank_bound};

fn small_profile() -> impl Strategy<Value = FactorProfile> {
    prop::collection::vec((1usize..=3, 1u32..=3), 1..=3)
        .prop_filter_map("too many coordinates", |fs| {
            let p = FactorProfile::new(fs.into_iter().map(|(n, d)| Factor::new(n, d)).collect()).ok()?;
            (p.coord_count() <= 120).then_some(p)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn profile_text_round_trips(p in small_profile()) {
        let again: FactorProfile = p.to_string().parse().unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn coordinates_biject(p in small_profile()) {
        for c in 0..p.coord_count() {
            let mons = p.coord_monomials(CoordIndex(c)).unwrap();
            prop_assert_eq!(p.coord_index(&mons).unwrap(), CoordIndex(c));
            prop_assert!(mons.iter().zip(p.factors()).all(|(m, f)| m.degree() == f.d));
        }
    }

    #[test]
    fn flattenings_are_kronecker_consistent(p in small_profile()) {
        for info in enumerate_splits(&p).unwrap() {
            let flat = Flattening::build(&p, &info.split, false).unwrap();
            prop_assert_eq!(flat.shape(), (info.rows, info.cols));
            prop_assert!(info.rows <= info.cols);
            let t = Flattening::build(&p, &info.split.complement(&p), false).unwrap();
            prop_assert_eq!(t.matrix(), &flat.matrix().transpose());
            for (i, row) in flat.row_labels().iter().enumerate() {
                for (j, col) in flat.col_labels().iter().enumerate() {
                    let sum: Vec<_> = row.iter().zip(col).map(|(a, b)| a.add(b)).collect();
                    prop_assert_eq!(p.coord_index(&sum).unwrap(), flat.entry(i, j));
                }
            }
        }
    }

    #[test]
    fn rank_one_on_the_variety(p in small_profile(), trial in 0u64..1000) {
        let cfg = FieldConfig::with_seed(11);
        let pt = seeded_cone_point(&p, &cfg, trial).unwrap();
        for info in enumerate_splits(&p).unwrap() {
            let flat = Flattening::build(&p, &info.split, false).unwrap();
            prop_assert_eq!(evaluate_matrix(flat.matrix(), &pt.image).rank(cfg.field()), 1);
        }
    }

    #[test]
    fn rank_at_most_s_on_secants(p in small_profile(), s in 1usize..=3, seed in 0u64..50) {
        let cfg = FieldConfig::with_seed(seed);
        for info in enumerate_splits(&p).unwrap() {
            let bound = verify_rank_bound(&p, &info.split, s, &cfg).unwrap();
            prop_assert!(bound.holds);
            prop_assert_eq!(bound.max_rank, s.min(info.rows));
        }
    }

    #[test]
    fn oracle_is_monotone_and_bounded(p in small_profile(), seed in 0u64..50) {
        let cfg = FieldConfig::with_seed(seed);
        let emb = Embedding::full(p.clone());
        let mut prev = 0;
        for s in 1..=4 {
            let d = terracini_dim(&emb, s, &cfg).unwrap().projective_dim;
            prop_assert!(d >= prev);
            prop_assert!(d <= expected_dim(p.ambient_dim(), p.variety_dim(), s));
            prev = d;
        }
        prop_assert_eq!(terracini_dim(&emb, 1, &cfg).unwrap().projective_dim, p.variety_dim());
    }

    #[test]
    fn polynomial_text_round_trips(terms in prop::collection::vec((prop::collection::vec(0usize..24, 2), -5i64..=5), 0..6)) {
        let p: FactorProfile = "P(1)xP(2)xP(3)".parse().unwrap();
        let mut poly = SparsePoly::zero(2);
        for (vars, c) in terms {
            poly.add_term(vars.into_iter().map(CoordIndex).collect(), c);
        }
        let text = poly.to_text(&p).unwrap();
        let back = SparsePoly::parse(&text, &p, 1).unwrap();
        if poly.is_zero() {
            prop_assert!(back.is_zero());
        } else {
            prop_assert_eq!(back, poly);
        }
    }

    #[test]
    fn split_text_round_trips(v in prop::collection::vec(0u32..9, 1..6)) {
        let s = Split(v);
        prop_assert_eq!(s.to_string().parse::<Split>().unwrap(), s);
    }

    #[test]
    fn determinantal_codimension_law(a in 1usize..12, b in 1usize..12, s in 1usize..12) {
        let n = (a + 1) * (b + 1) - 1;
        let dim = two_factor_secant_dim(a, b, s);
        prop_assert!(dim <= n);
        prop_assert_eq!(n - dim, two_factor_codim(a, b, s));
        if s <= a.min(b) {
            prop_assert_eq!(n - dim, (a + 1 - s) * (b + 1 - s));
            prop_assert!(giambelli_degree(a, b, s).is_ok());
            prop_assert_eq!(giambelli_degree(a, b, s).unwrap(), giambelli_degree(b, a, s).unwrap());
        }
    }

    #[test]
    fn unbalanced_cases_partition(n_list in prop::collection::vec(1usize..=2, 1..=3), extra in 0usize..4, s in 2usize..40) {
        let crit = critical_s(&n_list);
        let n = crit + extra;
        let big_n: usize = n_list.iter().map(|k| k + 1).product::<usize>() - 1;
        let r = unbalanced_classify(&n_list, n, s);
        prop_assert!(r.hypothesis_holds);
        let want = if s < crit {
            Thm24Case::One
        } else if s == crit {
            Thm24Case::Two
        } else if s <= n.min(big_n) {
            Thm24Case::Three
        } else {
            Thm24Case::Four
        };
        prop_assert_eq!(r.case, want);
        prop_assert!(r.predicted_dim <= r.expected_dim);
        if r.case == Thm24Case::Three && !r.flags.iter().any(|f| f == "ambient-bound") {
            prop_assert_eq!(r.closed_form_defect, Some(r.definitional_defect as i64));
        }
    }
}
