use isdc::quadrature::{make_nodes, make_weights, CollocationTable, NodeRule};
use proptest::prelude::*;

fn rule() -> impl Strategy<Value = NodeRule> {
    prop_oneof![Just(NodeRule::GaussLobatto), Just(NodeRule::GaussRadauRight), Just(NodeRule::GaussLegendre)]
}

fn poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn poly_integral(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().enumerate().map(|(p, c)| c * x.powi(p as i32 + 1) / (p as f64 + 1.0)).sum()
}

proptest! {
    #[test]
    fn cumulative_weights_integrate_polynomials(rule in rule(), m in 3usize..9, raw in prop::collection::vec(-1.0f64..1.0, 9)) {
        let t = CollocationTable::<f64>::new(rule, m).unwrap();
        let coeffs = &raw[..m];
        let values: Vec<f64> = t.nodes.iter().map(|&x| poly(coeffs, x)).collect();
        for (row, &tau) in t.full_weights.iter().zip(&t.nodes) {
            let q: f64 = row.iter().zip(&values).map(|(w, v)| w * v).sum();
            prop_assert!((q - poly_integral(coeffs, tau)).abs() < 1e-12);
        }
        for (i, row) in t.substep_weights.iter().enumerate() {
            let q: f64 = row.iter().zip(&values).map(|(w, v)| w * v).sum();
            let want = poly_integral(coeffs, t.nodes[i + 1]) - poly_integral(coeffs, t.nodes[i]);
            prop_assert!((q - want).abs() < 1e-12);
        }
    }

    #[test]
    fn weights_of_arbitrary_nodes(mut nodes in prop::collection::vec(0.0f64..1.0, 2..7)) {
        nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
        nodes.dedup_by(|a, b| (*a - *b).abs() < 0.05);
        prop_assume!(nodes.len() >= 2);
        let w = make_weights(&nodes).unwrap();
        for (row, &tau) in w.full.iter().zip(&nodes) {
            prop_assert!((row.iter().sum::<f64>() - tau).abs() < 1e-10);
        }
        prop_assert!((w.terminal.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn nodes_are_increasing_and_in_unit_interval() {
    for rule in [NodeRule::GaussLobatto, NodeRule::GaussRadauRight, NodeRule::GaussLegendre] {
        for m in 3..=12 {
            let x: Vec<f64> = make_nodes(rule, m).unwrap();
            assert_eq!(x.len(), m);
            assert!(x.windows(2).all(|w| w[0] < w[1]));
            assert!(x[0] >= 0.0 && x[m - 1] <= 1.0);
        }
    }
    let lobatto: Vec<f64> = make_nodes(NodeRule::GaussLobatto, 5).unwrap();
    assert_eq!((lobatto[0], lobatto[4]), (0.0, 1.0));
    let radau: Vec<f64> = make_nodes(NodeRule::GaussRadauRight, 3).unwrap();
    assert_eq!(radau[2], 1.0);
}

#[test]
fn single_precision_table() {
    let t = CollocationTable::<f32>::new(NodeRule::GaussLobatto, 5).unwrap();
    let s: f32 = t.terminal_weights.iter().sum();
    assert!((s - 1.0).abs() < 1e-6);
}
