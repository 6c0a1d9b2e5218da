use spinweyl::{bracket_scan, Spin};

fn spins() -> Vec<Spin> {
    [8, 16, 32, 64].map(Spin::from_two_j).to_vec()
}

#[test]
fn quadratic_pair_approaches_the_bracket() {
    let study = bracket_scan("Jx^2", "Jz^2", &spins()).unwrap();
    for errs in [&study.commutator_errors, &study.anticommutator_errors, &study.product_errors] {
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    }
    // one power of 1/j beyond the bracket, in units where the symbols stay O(1)
    assert!(study.commutator_slope.unwrap() <= -1.7, "{study:?}");
    assert!(study.anticommutator_slope.unwrap() <= -1.7, "{study:?}");
    assert!(study.product_slope.unwrap() <= -1.7, "{study:?}");
}

#[test]
fn rotation_generator_bracket_is_exact() {
    let study = bracket_scan("Jx^2 + Jy*Jz", "Jz", &spins()).unwrap();
    assert!(study.commutator_errors.iter().all(|&e| e < 1e-12), "{study:?}");
}
