mod common;

use antimagic::constructions;
use antimagic::labeling::{self, TotalLabeling};
use antimagic::magic;
use antimagic::solver::{self, SearchBudget, Status};
use antimagic::{FamilySpec, Graph, Mode};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_and_bijection(max_n: usize, max_total: usize) -> impl Strategy<Value = (Graph, TotalLabeling)> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_connected_graph(&mut rng, max_n, max_total);
        let (v, e) = common::random_bijection(&mut rng, &g);
        (g, TotalLabeling::new(v, e))
    })
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Svtla), Just(Mode::Setla)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn counting_identity_holds((g, f) in graph_and_bijection(10, 20)) {
        prop_assert!(labeling::counting_identity_check(&g, &f).unwrap());
        let w = common::weights(g.n(), g.edges(), &f.vertex_labels, &f.edge_labels);
        prop_assert_eq!(&labeling::weight_profile(&g, &f).unwrap().weights, &w);
    }

    #[test]
    fn verdict_matches_weights((g, f) in graph_and_bijection(10, 20)) {
        let w = labeling::weight_profile(&g, &f).unwrap();
        let verdict = labeling::is_local_antimagic(&g, &f).unwrap();
        let clashes = g.edges().iter().filter(|&&(u, v)| w.weight(u) == w.weight(v)).count();
        prop_assert_eq!(verdict.violations.len(), clashes);
        prop_assert_eq!(verdict.valid, clashes == 0);
        prop_assert_eq!(labeling::classify(&g, &f).unwrap().len(), 1);
    }
}

proptest! {
    #[test]
    fn family_sizes(n in 3usize..30, m in 1usize..12, t in 1usize..4) {
        let size = |s: FamilySpec| { let g = s.generate().unwrap(); (g.n(), g.m()) };
        prop_assert_eq!(size(FamilySpec::Path { n }), (n, n - 1));
        prop_assert_eq!(size(FamilySpec::Cycle { n }), (n, n));
        prop_assert_eq!(size(FamilySpec::Star { n }), (n + 1, n));
        prop_assert_eq!(size(FamilySpec::Complete { n: n.min(12) }), (n.min(12), n.min(12) * (n.min(12) - 1) / 2));
        prop_assert_eq!(size(FamilySpec::CompleteBipartite { m, n }), (m + n, m * n));
        prop_assert_eq!(size(FamilySpec::Spider { n, t }), (n * (t + 1) + 1, n * (t + 1)));
        prop_assert_eq!(size(FamilySpec::Bistar { m, n }), (m + n + 2, m + n + 1));
        prop_assert_eq!(size(FamilySpec::Corona(Box::new(FamilySpec::Cycle { n }))), (2 * n, 2 * n));
        let g = FamilySpec::Cycle { n }.generate().unwrap();
        prop_assert_eq!(g.regularity(), Some(2));
        prop_assert!(g.is_connected());
    }

    #[test]
    fn constructions_are_valid(
        spec in prop_oneof![
            (1usize..40).prop_map(|n| FamilySpec::Star { n }),
            (2usize..70).prop_map(|n| FamilySpec::Path { n }),
            (3usize..70).prop_map(|n| FamilySpec::Cycle { n }),
            (1usize..8, 1usize..8).prop_map(|(a, b)| FamilySpec::Bistar { m: a.min(b), n: a.max(b) }),
            (1usize..6, 1usize..6).prop_map(|(a, b)| FamilySpec::CompleteBipartite { m: 2 * a.min(b), n: 2 * a.max(b) + 2 }),
            (1usize..10).prop_map(|k| FamilySpec::CompleteBipartite { m: 2, n: 2 * k + 1 }),
            (3usize..14).prop_map(|n| FamilySpec::Corona(Box::new(FamilySpec::Cycle { n }))),
        ],
        mode in mode(),
    ) {
        let c = constructions::construct(&spec, mode, 0).unwrap();
        prop_assert!(labeling::is_local_antimagic(&c.graph, &c.labeling).unwrap().valid);
        prop_assert!(labeling::has_class(&c.graph, &c.labeling, mode).unwrap());
        prop_assert!(labeling::counting_identity_check(&c.graph, &c.labeling).unwrap());
        prop_assert!(c.colors() >= labeling::pendant_lower_bound(&c.graph));
        prop_assert_eq!(c.colors(), c.predicted_colors);
    }

    #[test]
    fn svtla_only_constructions_are_valid(n in 2usize..20, t in 1usize..3, k in 2usize..8) {
        for c in [constructions::construct_spider(n, t).unwrap(), constructions::construct_complete(k).unwrap()] {
            prop_assert!(labeling::is_local_antimagic(&c.graph, &c.labeling).unwrap().valid);
            prop_assert!(labeling::has_class(&c.graph, &c.labeling, Mode::Svtla).unwrap());
            prop_assert!(c.colors() >= labeling::pendant_lower_bound(&c.graph));
        }
    }

    #[test]
    fn magic_rectangles_verify(a in 2usize..14, b in 2usize..14, seed in any::<u64>()) {
        match magic::construct_magic_rectangle(a, b, seed) {
            Ok(r) => {
                prop_assert!(magic::mr_exists(a, b));
                prop_assert!(magic::verify_magic_rectangle(&r).is_empty());
                prop_assert_eq!((r.rows, r.cols), (a, b));
            }
            Err(_) => prop_assert!(!magic::mr_exists(a, b)),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_results_are_sound(seed in any::<u64>(), mode in mode()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_connected_graph(&mut rng, 5, 10);
        let r = solver::solve_min_colors(&g, mode, &SearchBudget::default()).unwrap();
        prop_assert_eq!(r.status, Status::Exact);
        let f = r.best_witness.unwrap();
        let chi = r.chi.unwrap();
        prop_assert!(labeling::is_local_antimagic(&g, &f).unwrap().valid);
        prop_assert!(labeling::has_class(&g, &f, mode).unwrap());
        prop_assert_eq!(labeling::weight_profile(&g, &f).unwrap().color_count(), chi);
        prop_assert!(chi >= labeling::pendant_lower_bound(&g).max(2));
        prop_assert!(chi >= solver::chromatic_number(&g));
    }
}
