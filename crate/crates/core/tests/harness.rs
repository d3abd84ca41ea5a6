use ramify::harness::{check_ls, run_axioms, ConductorUnderTest, SampleParams, ALL_LAWS};

fn params(p: u32, n: usize, m: usize, depth: i64) -> SampleParams {
    SampleParams { p, n, m, depth }
}

#[test]
fn registered_conductors_satisfy_axioms() {
    let grid = [params(2, 2, 1, 4), params(3, 2, 2, 5), params(5, 1, 1, 6), params(3, 3, 1, 3)];
    for (k, &pp) in grid.iter().enumerate() {
        for name in ConductorUnderTest::NAMES {
            let c = ConductorUnderTest::named(name, pp).unwrap();
            let r = run_axioms(&c, 100 + k as u64, 40);
            for ch in &r.checks {
                println!("{}", ch.csv_row());
            }
            assert!(r.passed(), "{name} {pp:?}: {:?}", r.checks.iter().flat_map(|c| c.failures.iter().take(2)).collect::<Vec<_>>());
        }
    }
}

#[test]
fn symbol_laws_hold() {
    for (k, pp) in [params(2, 2, 1, 3), params(3, 1, 2, 4), params(5, 2, 1, 3), params(3, 3, 0, 3)].into_iter().enumerate() {
        for r in check_ls(&ALL_LAWS, pp, 7 + k as u64, 30) {
            println!("{}", r.csv_row());
            assert!(r.passed(), "{:?}", r.failures.iter().take(2).collect::<Vec<_>>());
        }
    }
}
