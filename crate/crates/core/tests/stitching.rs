use increasing_trails::generators::gen_gnp;
use increasing_trails::graph::Graph;
use increasing_trails::ordering::OrderedGraph;
use increasing_trails::seed::stream;
use increasing_trails::solvers::{validate_path, validate_trail};
use increasing_trails::stitching::{
    find_connector, partition_labels, run_stitching, FailureStage, Mode, ScheduleConfig, Status,
};
use increasing_trails::Seed;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn partition_tiles_the_used_labels(n in 3usize..5000, m in 0usize..2_000_000, swapped in any::<bool>()) {
        let cfg = if swapped {
            ScheduleConfig::swapped_defaults(n, m, Mode::Trail).unwrap()
        } else {
            ScheduleConfig::defaults(n, m, Mode::Trail).unwrap()
        };
        let parts = partition_labels(m, &cfg).unwrap();
        prop_assert_eq!(parts.len(), cfg.t);
        let mut next = 1u32;
        for p in &parts {
            prop_assert_eq!(p.connector.0, next);
            prop_assert_eq!(p.connector.1 - p.connector.0 + 1, cfg.a as u32);
            prop_assert_eq!(p.growth.0, p.connector.1 + 1);
            prop_assert_eq!(p.growth.1 - p.growth.0 + 1, cfg.b as u32);
            next = p.growth.1 + 1;
        }
        prop_assert!((next - 1) as usize <= m);
    }

    #[test]
    fn stitched_walks_are_certified(
        n in 40usize..160,
        dense in any::<bool>(),
        path_mode in any::<bool>(),
        swapped in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let s = Seed::new(seed);
        let g = if dense {
            Graph::complete(n)
        } else {
            gen_gnp(n, 4.0 * (n as f64).ln() / n as f64, &s.derive(stream::GRAPH)).unwrap()
        };
        let og = OrderedGraph::random(g, &s.derive(stream::ORDERING));
        let mode = if path_mode { Mode::Path } else { Mode::Trail };
        let m = og.graph.edge_count();
        let mut cfg = if swapped {
            ScheduleConfig::swapped_defaults(n, m, mode).unwrap()
        } else {
            ScheduleConfig::defaults(n, m, mode).unwrap()
        };
        cfg.search_budget = 2000;
        let parts = partition_labels(m, &cfg).unwrap();
        let run = run_stitching(&og, &cfg).unwrap();

        match mode {
            Mode::Trail => prop_assert!(validate_trail(&og, &run.trail).is_ok()),
            Mode::Path => prop_assert!(validate_path(&og, &run.trail).is_ok()),
        }
        prop_assert_eq!(run.rounds.len(), cfg.t);
        let total: usize = run.rounds.iter().map(|r| r.gain).sum();
        prop_assert_eq!(total, run.trail.len());

        let mut cumulative = 0;
        for (r, part) in run.rounds.iter().zip(&parts) {
            prop_assert_eq!(r.gain > 0, r.status == Status::Success);
            prop_assert_eq!(r.status == Status::Failure, r.failure_stage != FailureStage::None);
            // this round's edges sit in its own label blocks
            for &l in &run.trail.labels[cumulative..cumulative + r.gain] {
                prop_assert!(part.connector.0 <= l && l <= part.growth.1);
            }
            if let Some(c) = r.connector_label {
                if r.status == Status::Success {
                    prop_assert!(part.connector.0 <= c && c <= part.connector.1);
                }
            }
            cumulative += r.gain;
            prop_assert_eq!(r.cumulative_length, cumulative);
        }
    }
}

#[test]
fn connector_edge_cases() {
    let g = Graph::star(3);
    // centre 0, edges 0-1, 0-2, 0-3
    let h = [(0u32, 7u32), (1, 5), (2, 9)];
    assert_eq!(find_connector(&g, 0, &h, 3, |u| u != 2), Some((0, 7)));
    assert_eq!(find_connector(&g, 0, &h, 3, |_| true), Some((1, 5)));
    assert_eq!(find_connector(&g, 0, &h, 9, |_| true), None);
    assert_eq!(find_connector(&g, 0, &[], 0, |_| true), None);
}
