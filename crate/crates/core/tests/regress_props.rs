use heaps_core::curves::local_slopes_xy;
use heaps_core::regress::{fit_counts, fit_xy, LogBase, Model};
use proptest::prelude::*;

/// Noisy, increasing, concave-ish type-token data with `T >= 1`, `V >= 1`.
fn data() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (
        0.6f64..1.1,
        -0.03f64..0.0,
        proptest::collection::vec(-0.05f64..0.05, 8..80),
    )
        .prop_map(|(alpha, beta, noise)| {
            let ts: Vec<f64> = (0..noise.len())
                .map(|i| (10.0 * 1.2f64.powi(i as i32)).round())
                .collect();
            let vs = ts
                .iter()
                .zip(&noise)
                .map(|(t, e)| {
                    let x = t.ln();
                    (alpha * x + beta * x * x + e).exp().max(1.0)
                })
                .collect();
            (ts, vs)
        })
}

proptest! {
    #[test]
    fn quadratic_nests_linear((ts, vs) in data()) {
        let l = fit_counts(&ts, &vs, Model::Linear, LogBase::E).unwrap();
        let q = fit_counts(&ts, &vs, Model::Quadratic, LogBase::E).unwrap();
        prop_assert!(q.rss <= l.rss * (1.0 + 1e-9) + 1e-12);
        prop_assert!(q.r2 >= l.r2 - 1e-9);
        prop_assert_eq!(l.beta, 0.0);
    }

    #[test]
    fn base_change_rescales_coefficients((ts, vs) in data()) {
        let l10 = std::f64::consts::LN_10;
        for model in [Model::Linear, Model::Quadratic] {
            let e = fit_counts(&ts, &vs, model, LogBase::E).unwrap();
            let t = fit_counts(&ts, &vs, model, LogBase::Ten).unwrap();
            prop_assert!((e.alpha - t.alpha).abs() < 1e-8);
            prop_assert!((e.beta * l10 - t.beta).abs() < 1e-8);
            prop_assert!((e.c0 / l10 - t.c0).abs() < 1e-8);
            prop_assert!((e.r2 - t.r2).abs() < 1e-9);
        }
    }

    #[test]
    fn residuals_are_orthogonal_to_regressors((ts, vs) in data()) {
        let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
        let ys: Vec<f64> = vs.iter().map(|v| v.ln()).collect();
        let f = fit_xy(&xs, &ys, Model::Quadratic, LogBase::E).unwrap();
        let scale = ys.iter().map(|y| y.abs()).fold(1.0, f64::max);
        for power in 0..=2 {
            let dot: f64 = xs.iter().zip(&ys).map(|(&x, &y)| (y - f.predict_log(x)) * x.powi(power)).sum();
            let norm: f64 = xs.iter().map(|x| x.powi(power).abs()).sum();
            prop_assert!(dot.abs() <= 1e-8 * norm * scale, "power {power}: {dot}");
        }
    }

    #[test]
    fn adjusted_r2_penalizes((ts, vs) in data()) {
        for model in [Model::Linear, Model::Quadratic] {
            let f = fit_counts(&ts, &vs, model, LogBase::E).unwrap();
            prop_assert!(f.r2_adj <= f.r2 + 1e-15);
            prop_assert!(f.r2 <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn band_slopes_match_elasticity(c0 in -1.0f64..1.0, alpha in 0.5f64..1.2, beta in -0.05f64..0.0) {
        // Exact quadratic on a symmetric grid: each band's OLS slope equals the
        // derivative at the band centre.
        let xs: Vec<f64> = (0..=400).map(|i| 0.01 * i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| c0 + alpha * x + beta * x * x).collect();
        let f = fit_xy(&xs, &ys, Model::Quadratic, LogBase::Ten).unwrap();
        let r = local_slopes_xy(&xs, &ys, 0.5, 0.1).unwrap();
        prop_assert!(!r.bands.is_empty());
        for b in &r.bands {
            let t = 10f64.powf(b.x_center);
            prop_assert!((b.slope - f.elasticity_at(t)).abs() < 1e-6, "{} vs {}", b.slope, f.elasticity_at(t));
        }
    }
}
