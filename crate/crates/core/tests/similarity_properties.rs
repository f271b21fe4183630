use kgprof_core::linker::similarity as sim;
use kgprof_core::linker::Measure;
use kgprof_testkit::strings;
use proptest::prelude::*;

fn label() -> impl Strategy<Value = String> {
    "[a-dé ]{0,14}"
}

proptest! {
    #[test]
    fn scores_are_bounded_and_symmetric(a in label(), b in label()) {
        for m in Measure::ALL {
            let x = m.similarity(&a, &b);
            prop_assert!((0.0..=1.0).contains(&x), "{:?}({:?}, {:?}) = {}", m, a, b, x);
            prop_assert!((x - m.similarity(&b, &a)).abs() < 1e-12, "{:?} is not symmetric", m);
        }
    }

    #[test]
    fn identical_labels_score_one(a in "[a-z]{1,8}( [a-z]{1,8}){0,3}") {
        for m in Measure::ALL {
            prop_assert_eq!(m.similarity(&a, &a), 1.0, "{:?}", m);
        }
    }

    #[test]
    fn measures_match_reference_implementations(a in label(), b in label()) {
        prop_assert_eq!(sim::levenshtein(&a, &b), strings::edit_distance(&a, &b));
        prop_assert!((sim::scaled_levenshtein(&a, &b) - strings::scaled_levenshtein(&a, &b)).abs() < 1e-9);
        prop_assert!((sim::jaccard(&a, &b) - strings::jaccard(&a, &b)).abs() < 1e-9);
        prop_assert!((sim::jaro(&a, &b) - strings::jaro(&a, &b)).abs() < 1e-9);
        prop_assert!((sim::jaro_winkler(&a, &b) - strings::jaro_winkler(&a, &b)).abs() < 1e-9);
        let me = sim::monge_elkan(&a, &b, sim::jaro_winkler);
        prop_assert!((me - strings::monge_elkan(&a, &b, strings::jaro_winkler)).abs() < 1e-9);
    }

    #[test]
    fn jaro_winkler_never_lowers_jaro(a in label(), b in label()) {
        prop_assert!(sim::jaro_winkler(&a, &b) >= sim::jaro(&a, &b) - 1e-12);
    }
}
