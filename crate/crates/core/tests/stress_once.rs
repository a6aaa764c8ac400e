//! Opt-in deep stress suites, excluded from the default run.
//!
//! Run with `cargo test -p relpos-core --test stress_once -- --ignored`.
//! These grind through ~3.6e5 instances, concentrating on the
//! input-snapping tolerance boundaries where band interactions live.
use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relpos_core::classify::classify;
use relpos_core::geom::{Sphere, StdHyperboloid};
use relpos_core::root_set;
use relpos_core::sweep::{sweep, CenterPath};

#[test]
#[ignore]
fn stress_classify_totality_and_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(999);
    let mut worst_rel: f64 = 0.0;
    for i in 0..200_000u64 {
        let a = rng.gen_range(0.3..3.0);
        let c = rng.gen_range(0.3..3.0);
        let r = rng.gen_range(0.1..4.0);
        let h = StdHyperboloid::new(a, c).unwrap();
        let rho: f64 = rng.gen_range(0.0..8.0);
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let z: f64 = rng.gen_range(-5.0..5.0);
        let s = Sphere::new(Vector3::new(rho * th.cos(), rho * th.sin(), z), r).unwrap();
        let v = classify(&h, &s);
        assert!(v.is_ok(), "i={i} a={a} c={c} r={r} rho={rho} z={z}: {v:?}");
        let rs = root_set(&h, &s);
        let expected = -h.a2() * h.a2() * h.c2() * r * r;
        let rel = (rs.product() - expected).abs() / expected.abs();
        worst_rel = worst_rel.max(rel);
    }
    println!("stress: 2e5 instances classified, worst product rel error {worst_rel:.3e}");
    assert!(worst_rel <= 1e-8);
}

#[test]
#[ignore]
fn stress_axis_and_plane_tolerance_boundaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    for i in 0..100_000u64 {
        let a = rng.gen_range(0.3..3.0);
        let c = rng.gen_range(0.3..3.0);
        let r = rng.gen_range(0.1..4.0);
        let h = StdHyperboloid::new(a, c).unwrap();
        // exponents sweeping through the 1e-9 input-snap boundary
        let u: f64 = rng.gen_range(-13.0..-5.0);
        let scale = a + r;
        let (rho, z) = if rng.gen_bool(0.5) {
            (scale * 10f64.powf(u), rng.gen_range(-4.0..4.0))
        } else {
            (rng.gen_range(0.0..6.0), scale * 10f64.powf(u))
        };
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let s = Sphere::new(Vector3::new(rho * th.cos(), rho * th.sin(), z), r).unwrap();
        let v = classify(&h, &s);
        assert!(v.is_ok(), "i={i} a={a} c={c} r={r} rho={rho} z={z}: {v:?}");
        let rs = root_set(&h, &s);
        let expected = -h.a2() * h.a2() * h.c2() * r * r;
        let rel = (rs.product() - expected).abs() / expected.abs();
        assert!(
            rel <= 1e-8,
            "i={i} product rel {rel:.3e} a={a} c={c} r={r} rho={rho:e} z={z:e}"
        );
    }
    println!("stress: 1e5 boundary-band instances ok");
}

#[test]
#[ignore]
fn stress_random_sweeps_tile_and_alternate() {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    for i in 0..60 {
        let a = rng.gen_range(0.5..2.0);
        let c = rng.gen_range(0.5..2.0);
        let r = rng.gen_range(0.2..2.5);
        let h = StdHyperboloid::new(a, c).unwrap();
        let n_pts = rng.gen_range(2..6);
        let pts: Vec<Vector3<f64>> = (0..n_pts)
            .map(|_| {
                Vector3::new(
                    rng.gen_range(-5.0..5.0),
                    rng.gen_range(-5.0..5.0),
                    rng.gen_range(-4.0..4.0),
                )
            })
            .collect();
        let path = CenterPath::waypoints(pts).unwrap();
        let report = sweep(&h, r, &path, 150);
        assert_eq!(report.segments.first().unwrap().t_start, 0.0, "i={i}");
        assert_eq!(report.segments.last().unwrap().t_end, 1.0, "i={i}");
        for w in report.segments.windows(2) {
            assert!(w[0].t_end <= w[1].t_start + 1e-12, "i={i}");
            assert_ne!(w[0].kind, w[1].kind, "i={i}");
        }
    }
    println!("stress: 60 random sweeps consistent");
}

#[test]
#[ignore]
fn stress_oracle_agreement_alternate_seed() {
    use relpos_core::classify::PositionType;
    use relpos_core::oracle::{
        oracle_contact, oracle_side, sample_surface, GridSpec, OracleContact, OracleSide,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(424242);
    let spec = GridSpec::new(256, 256);
    let mut kept = 0;
    while kept < 3000 {
        let a = rng.gen_range(0.4..2.5);
        let c = rng.gen_range(0.4..2.5);
        let r = rng.gen_range(0.2..3.0);
        let h = StdHyperboloid::new(a, c).unwrap();
        let rho: f64 = rng.gen_range(0.0..6.0);
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let z: f64 = rng.gen_range(-4.0..4.0);
        let s = Sphere::new(Vector3::new(rho * th.cos(), rho * th.sin(), z), r).unwrap();
        let rs = root_set(&h, &s);
        // at-margin filter: every pair of the four roots separated
        let pts: Vec<(f64, f64)> = {
            let mut v = vec![(rs.fixed_root, 0.0)];
            match &rs.cubic {
                relpos_core::CubicRoots::Real(list) => {
                    for &(x, m) in list {
                        for _ in 0..m {
                            v.push((x, 0.0));
                        }
                    }
                }
                relpos_core::CubicRoots::Complex { real, re, im } => {
                    v.push((*real, 0.0));
                    v.push((*re, *im));
                    v.push((*re, -*im));
                }
            }
            v
        };
        let m = 10.0 * rs.cluster_eps;
        let mut ok = true;
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                if (pts[i].0 - pts[j].0).hypot(pts[i].1 - pts[j].1) <= m {
                    ok = false;
                }
            }
            for &lm in &[-h.a2(), 0.0, h.c2(), h.a() * r] {
                if i == 0 && lm == rs.fixed_root {
                    continue;
                }
                if (pts[i].0 - lm).hypot(pts[i].1) <= m {
                    ok = false;
                }
            }
        }
        if !ok {
            continue;
        }
        kept += 1;
        let verdict = classify(&h, &s).unwrap();
        let grid = sample_surface(&h, &s, &spec);
        let Ok(contact) = oracle_contact(&grid) else {
            continue;
        };
        match verdict {
            PositionType::I => {
                assert_eq!(contact, OracleContact::NoContactOutside);
                assert_eq!(oracle_side(&h, &s, 500), OracleSide::Interior);
            }
            PositionType::E => {
                assert_eq!(contact, OracleContact::NoContactOutside);
                assert_eq!(oracle_side(&h, &s, 500), OracleSide::Exterior);
            }
            PositionType::C => assert_eq!(contact, OracleContact::Contact { components: 1 }),
            PositionType::Ca | PositionType::Cm => {
                assert_eq!(contact, OracleContact::Contact { components: 2 })
            }
            other => panic!("unexpected at-margin verdict {other}"),
        }
    }
    println!("stress: 3000 alternate-seed oracle agreements ok");
}
