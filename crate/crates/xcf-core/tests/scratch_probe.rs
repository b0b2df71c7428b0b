//! Temporary numeric probe; deleted before delivery.

use xcf_core::*;

#[test]
fn probe_criteria() {
    let start = std::time::Instant::now();
    let runs = verify::compute_runs().unwrap();
    println!("runs computed in {:.1}s", start.elapsed().as_secs_f64());
    for rep in verify::run_all(&runs) {
        println!("{rep}");
    }
}

#[test]
fn probe_oracle_profile() {
    for (kappa, n) in [(1.0_f64, 128usize), (1.5, 192)] {
        let ell1 = 2.0 * std::f64::consts::PI * (kappa * 1.0_f64).sinh() / kappa;
        let p = TwoPiParams {
            ell1,
            longitude_len: 5.0,
            s0: 1.0,
            kappa_prime: None,
            epsilon: 0.0,
        };
        let m = make_two_pi_metric(&p, RadialGrid::new(n).unwrap()).unwrap();
        let rates = curvature_rhs_oracle(&m, None).unwrap();
        let expect = -2.0 * kappa.powi(6);
        let dev = |v: &[f64]| {
            let mut worst = (0usize, 0.0f64);
            for (i, &x) in v.iter().enumerate() {
                let d = (x - expect).abs();
                if d > worst.1 {
                    worst = (i, d);
                }
            }
            worst
        };
        println!(
            "kappa={kappa} n={n}: alpha worst {:?}, beta worst {:?}, gamma worst {:?} (expect {expect})",
            dev(&rates.alpha_t),
            dev(&rates.beta_t),
            dev(&rates.gamma_t)
        );
        // per-cell profile near core and boundary for beta
        for i in (0..8).chain(n - 4..n) {
            println!("  i={i}: a_t={:.5} b_t={:.5} g_t={:.5}", rates.alpha_t[i], rates.beta_t[i], rates.gamma_t[i]);
        }
    }
}

#[test]
fn probe_bbs() {
    let p = TwoPiParams {
        ell1: 8.0,
        longitude_len: 5.0,
        s0: 1.0,
        kappa_prime: None,
        epsilon: 0.0,
    };
    for n in [64usize, 128, 256] {
        let m = make_two_pi_metric(&p, RadialGrid::new(n).unwrap()).unwrap();
        let c = curvatures(&m).unwrap();
        let (bb, bg) = bbs_products(&m, &c, 1.0);
        // also find argmax of |beta_s|
        let bs: Vec<f64> = d_ds(&m, &c.beta, Parity::Even, *c.beta.last().unwrap());
        let mut wi = 0;
        let mut wv = 0.0f64;
        for (i, &x) in bs.iter().enumerate() {
            if x.abs() > wv {
                wv = x.abs();
                wi = i;
            }
        }
        println!("n={n}: bbs_beta={bb:.3e} bbs_gamma={bg:.3e}, beta_s argmax {wi} val {wv:.3e}");
    }
}

#[test]
fn probe_richardson() {
    let m = hyperbolic_tube(1.0, 1.0, RadialGrid::new(64).unwrap()).unwrap();
    let state = FlowState::new(m).unwrap();
    let cfg = FlowConfig::new(1.0);
    let s = stable_dt(&state, &cfg).unwrap();
    println!("stable dt at n=64: {s:.3e}");
    let gap = |dt: f64| {
        let full = step(&state, dt, &cfg).unwrap();
        let half = step(&step(&state, dt / 2.0, &cfg).unwrap(), dt / 2.0, &cfg).unwrap();
        full.metric
            .f()
            .iter()
            .zip(half.metric.f())
            .fold(0.0_f64, |a, (&x, &y)| a.max((x - y).abs()))
    };
    for dt in [4.0 * s, 2.0 * s, s, s / 2.0, s / 4.0] {
        println!("dt={dt:.3e}: gap={:.3e}", gap(dt));
    }
}
