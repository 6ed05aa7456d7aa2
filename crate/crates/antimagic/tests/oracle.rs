mod common;

use antimagic::labeling;
use antimagic::solver::{self, SearchBudget, Status};
use antimagic::Mode;

#[test]
fn solver_matches_brute_force_on_small_connected_graphs() {
    let graphs: Vec<_> = solver::connected_graphs(4).into_iter().filter(|g| g.n() + g.m() <= 8).collect();
    // K_4 and K_4 minus an edge exceed the limit
    assert_eq!(graphs.len(), 7);
    for g in &graphs {
        for mode in [Mode::Svtla, Mode::Setla, Mode::General] {
            let expected = common::brute_force_min_colors(g, mode);
            let r = solver::solve_min_colors(g, mode, &SearchBudget::default()).unwrap();
            assert_eq!(r.status, Status::Exact);
            assert_eq!(r.chi, expected, "{g:?} {mode}");
            let f = r.best_witness.unwrap();
            let w = common::weights(g.n(), g.edges(), &f.vertex_labels, &f.edge_labels);
            assert_eq!(labeling::weight_profile(g, &f).unwrap().weights, w);
        }
    }
}

#[test]
fn scan_agrees_with_brute_force_existence() {
    for mode in [Mode::Svtla, Mode::Setla] {
        let report = solver::conjecture_scan(4, mode, &SearchBudget::default());
        assert_eq!(report.entries.len(), 9);
        for e in &report.entries {
            let admits = matches!(e.outcome, solver::ScanOutcome::Admits { .. });
            assert_eq!(admits, common::brute_force_min_colors(&e.graph, mode).is_some());
        }
    }
}

#[test]
fn solver_is_deterministic_at_parallelism_one() {
    let g = antimagic::FamilySpec::Bistar { m: 1, n: 2 }.generate().unwrap();
    let budget = SearchBudget::default();
    let a = solver::solve_min_colors(&g, Mode::Setla, &budget).unwrap();
    let b = solver::solve_min_colors(&g, Mode::Setla, &budget).unwrap();
    assert_eq!((a.chi, a.best_witness, a.nodes_explored), (b.chi, b.best_witness, b.nodes_explored));
}
