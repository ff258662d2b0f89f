use isdc::sweeper::initialize;
use isdc::{
    run_step, BurgersProblem, BurgersProfile, CollocationTable, HeatProblem, ImexProblem, Multigrid, NodeRule,
    SmootherConfig, SweepConfig,
};

fn heat(nu: f64, n: usize) -> (HeatProblem, Multigrid) {
    let p = HeatProblem::new(nu, n).unwrap();
    let s = Multigrid::new(p.op.clone(), SmootherConfig::default(), 4).unwrap();
    (p, s)
}

#[test]
fn sdc_and_isdc_reach_the_same_solution() {
    let (p, mut solver) = heat(10.0, 32);
    let table = CollocationTable::new(NodeRule::GaussLobatto, 3).unwrap();
    let sdc = run_step(&p.initial(), &p, &table, 1e-3, &mut solver, &SweepConfig::default()).unwrap();
    let isdc = run_step(&p.initial(), &p, &table, 1e-3, &mut solver, &SweepConfig::isdc(2)).unwrap();
    assert!(sdc.stats.converged && isdc.stats.converged);
    assert!(sdc.u_final.max_diff(&isdc.u_final) <= 10.0 * 5e-8);
}

#[test]
fn isdc_cycle_accounting_is_exact() {
    let (p, mut solver) = heat(100.0, 32);
    for (m, l) in [(3, 1), (5, 2), (7, 3)] {
        let table = CollocationTable::new(NodeRule::GaussLobatto, m).unwrap();
        let out = run_step(&p.initial(), &p, &table, 1e-3, &mut solver, &SweepConfig::isdc(l)).unwrap();
        let s = &out.stats;
        assert_eq!(s.inner_cycles, s.sweeps * (m - 1) * l);
        assert_eq!(s.residual_history.len(), s.sweeps);
        assert!(s.w_inversion_cycles > 0);
    }
}

#[test]
fn caches_match_stored_node_values() {
    let p = BurgersProblem::new(1.0, 16, BurgersProfile::Radial).unwrap();
    let mut solver = Multigrid::new(p.op.clone(), SmootherConfig::default(), 4).unwrap();
    let table = CollocationTable::new(NodeRule::GaussLobatto, 3).unwrap();
    let mut state = initialize(&p.initial(), &table, 1e-3, &p).unwrap();
    for config in [SweepConfig::default(), SweepConfig::isdc(2)] {
        state.sweep(&p, &mut solver, &config).unwrap();
        for (m, u) in state.nodes.iter().enumerate() {
            let fi = p.weighted_implicit(u).unwrap();
            let fe = p.explicit(u).unwrap().unwrap();
            assert!(fi.max_diff(&state.implicit_weighted[m]) <= 1e-12 * fi.max_norm().max(1.0));
            assert!(fe.max_diff(&state.explicit.as_ref().unwrap()[m]) <= 1e-12 * fe.max_norm().max(1.0));
        }
    }
    assert_eq!(state.sweep, 2);
}

#[test]
fn heat_step_respects_maximum_principle() {
    let (p, mut solver) = heat(100.0, 64);
    let table = CollocationTable::new(NodeRule::GaussLobatto, 5).unwrap();
    let out = run_step(&p.initial(), &p, &table, 1e-3, &mut solver, &SweepConfig::default()).unwrap();
    for u in &out.state.nodes {
        assert!(u.values.iter().all(|&v| (-1e-8..=1.0 + 1e-8).contains(&v)));
    }
}

#[test]
fn burgers_step_does_not_grow() {
    let p = BurgersProblem::new(0.1, 32, BurgersProfile::Radial).unwrap();
    let mut solver = Multigrid::new(p.op.clone(), SmootherConfig::default(), 4).unwrap();
    let table = CollocationTable::new(NodeRule::GaussLobatto, 3).unwrap();
    let u0 = p.initial();
    let out = run_step(&u0, &p, &table, 1e-3, &mut solver, &SweepConfig::isdc(2)).unwrap();
    assert!(out.stats.converged);
    assert!(out.u_final.max_norm() <= u0.max_norm());
}

#[test]
fn huge_tolerance_needs_no_sweeps() {
    let (p, mut solver) = heat(1.0, 16);
    let table = CollocationTable::new(NodeRule::GaussLobatto, 3).unwrap();
    let config = SweepConfig {
        residual_tol: 1e10,
        ..SweepConfig::default()
    };
    let out = run_step(&p.initial(), &p, &table, 1e-3, &mut solver, &config).unwrap();
    assert_eq!(out.stats.sweeps, 0);
    assert_eq!(out.stats.inner_cycles, 0);
}

#[test]
fn radau_end_value_uses_collocation_update() {
    let (p, mut solver) = heat(1.0, 32);
    let lobatto = CollocationTable::new(NodeRule::GaussLobatto, 3).unwrap();
    let legendre = CollocationTable::new(NodeRule::GaussLegendre, 3).unwrap();
    let a = run_step(&p.initial(), &p, &lobatto, 1e-3, &mut solver, &SweepConfig::default()).unwrap();
    let b = run_step(&p.initial(), &p, &legendre, 1e-3, &mut solver, &SweepConfig::default()).unwrap();
    let reference = p.semi_discrete(1e-3);
    assert!(a.u_final.max_diff(&reference) < 1e-7);
    assert!(b.u_final.max_diff(&reference) < 1e-7);
}
