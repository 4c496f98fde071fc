use molemod_core::controller::{control_velocity, settle, settle_trace, ControllerConfig};
use proptest::prelude::*;

proptest! {
    #[test]
    fn odd_and_bounded(e in -5e-3f64..5e-3) {
        let cfg = ControllerConfig::default();
        let v = control_velocity(0.0, e, &cfg).unwrap();
        prop_assert_eq!(control_velocity(0.0, -e, &cfg).unwrap(), -v);
        prop_assert!(v.abs() <= cfg.vel);
        prop_assert_eq!(v == 0.0, e.abs() <= cfg.accuracy);
    }

    #[test]
    fn larger_error_never_settles_faster(a in 0.0f64..3e-3, b in 0.0f64..3e-3) {
        let cfg = ControllerConfig::default();
        let (small, large) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(settle(0.0, small, &cfg).unwrap() <= settle(0.0, large, &cfg).unwrap());
    }

    #[test]
    fn settles_inside_dead_band(start in -0.05f64..0.05, target in -0.05f64..0.05) {
        let cfg = ControllerConfig::default();
        let (_, end) = settle_trace(start, target, &cfg).unwrap();
        prop_assert!((target - end).abs() <= cfg.accuracy);
    }
}

#[test]
fn one_millimetre_short() {
    let cfg = ControllerConfig::default();
    assert!((cfg.vel * cfg.dt - 50e-6).abs() < 1e-12);
    // Plant simulated here step by step: 10 full-speed steps cover 500 um,
    // then half-speed 25 um steps run until the error is within 50 um.
    let mut position = 0.0f64;
    let mut steps = 0;
    while (1e-3 - position).abs() > cfg.accuracy {
        let e = 1e-3 - position;
        position += if e > cfg.slow_band { cfg.vel } else { cfg.vel / 2.0 } * cfg.dt;
        steps += 1;
    }
    assert_eq!(settle(0.0, 1e-3, &cfg), Ok(steps));
}

#[test]
fn too_coarse_step_is_rejected() {
    let cfg = ControllerConfig { vel: 0.06, dt: 0.005, ..Default::default() };
    assert!((cfg.vel * cfg.dt - 300e-6).abs() < 1e-12);
    assert!(settle(0.0, 1e-3, &cfg).is_err());
}
