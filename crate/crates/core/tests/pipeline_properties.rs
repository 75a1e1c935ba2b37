mod common;

use common::*;
use hermite_kernels::baselines::BaselineMethod;
use hermite_kernels::derivatives::{apply_fir, derivative_stack, fir_taps, DerivativeMode, FirFilter};
use hermite_kernels::hermite::{interpolate_direct, HermiteData, Multiplicity, NodeMultiplicity, RectilinearGrid};
use hermite_kernels::imaging::{zoom2x, ImagePlane};
use hermite_kernels::kernel::{build_kernel, build_zoom_set, FractionalOffset, StencilSpec};
use hermite_kernels::methods::{Interpolator, Method};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn image_strategy(h: usize, w: usize) -> impl Strategy<Value = ImagePlane> {
    prop::collection::vec(0.0f64..255.0, h * w).prop_map(move |d| ImagePlane::new(h, w, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kernel_dot_matches_direct_interpolation(
        q in prop::collection::vec(0.0f64..1.0, 2),
        size in 2usize..=5,
        nu in 1usize..=3,
        seed in any::<u64>(),
    ) {
        let offset = FractionalOffset::new(q.clone()).unwrap();
        let mult = Multiplicity::uniform(2, nu).unwrap();
        let tensor = build_kernel(&offset, &StencilSpec::uniform(2, size).unwrap(), &mult).unwrap();
        let grid = RectilinearGrid::integer(tensor.origin(), tensor.shape()).unwrap();
        let nodes = NodeMultiplicity::constant(&grid, &mult).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = HermiteData::from_fn(&grid, &nodes, |_, _| rng.gen_range(-1.0..1.0));
        let dot: f64 = (0..grid.num_points())
            .flat_map(|s| (0..tensor.channels()).map(move |j| (s, j)))
            .map(|(s, j)| tensor.at(s, j) * data.at(s)[j])
            .sum();
        let direct = interpolate_direct(&grid, &nodes, &data, &q).unwrap();
        prop_assert!((dot - direct).abs() < 1e-10, "{dot} vs {direct}");
        prop_assert!((tensor.channel_sum(0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn flipping_reverses_every_spatial_axis(q in prop::collection::vec(0.0f64..1.0, 2), size in 2usize..=5) {
        let t = build_kernel(
            &FractionalOffset::new(q).unwrap(),
            &StencilSpec::uniform(2, size).unwrap(),
            &Multiplicity::uniform(2, 2).unwrap(),
        )
        .unwrap();
        let f = t.to_flipped();
        for j in 0..t.channels() {
            let (a, b) = (t.channel(j), f.channel(j));
            for r in 0..size {
                for c in 0..size {
                    prop_assert_eq!(a[r * size + c], b[(size - 1 - r) * size + (size - 1 - c)]);
                }
            }
        }
        prop_assert_eq!(f.to_flipped(), t);
    }

    #[test]
    fn fir_taps_satisfy_their_moments(len in (1usize..=5).prop_map(|h| 2 * h + 1), order in 1usize..=4) {
        prop_assume!(order < len);
        let f = fir_taps(order, len).unwrap();
        let half = (len / 2) as i64;
        for p in 0..len {
            let m: f64 = f.taps().iter().enumerate().map(|(i, t)| t * ((i as i64 - half) as f64).powi(p as i32)).sum();
            let expect = if p == order { (1..=order).map(|k| k as f64).product() } else { 0.0 };
            prop_assert!((m - expect).abs() < 1e-9 * expect.max(1.0), "p={p}: {m}");
        }
    }

    #[test]
    fn separable_fir_passes_commute(img in image_strategy(12, 14), a in 1usize..=2, b in 1usize..=2) {
        let (v, h) = (fir_taps(a, 5).unwrap(), fir_taps(b, 5).unwrap());
        let one = apply_fir(&img, &v, &h).unwrap();
        let vt = v.apply(&img, hermite_kernels::imaging::Axis::Rows).unwrap();
        let other = h.apply(&vt, hermite_kernels::imaging::Axis::Cols).unwrap();
        let ht = h.apply(&img, hermite_kernels::imaging::Axis::Cols).unwrap();
        let swapped = v.apply(&ht, hermite_kernels::imaging::Axis::Rows).unwrap();
        prop_assert!(one.max_abs_diff(&other) < 1e-9);
        prop_assert!(one.max_abs_diff(&swapped) < 1e-9);
        let id = apply_fir(&img, &FirFilter::identity(), &FirFilter::identity()).unwrap();
        prop_assert_eq!(id, img);
    }

    #[test]
    fn zoom_is_linear(a in image_strategy(12, 12), b in image_strategy(12, 12), s in -3.0f64..3.0) {
        for m in Method::standard() {
            let interp = Interpolator::new(m, 5, 3).unwrap();
            let combo = ImagePlane::new(12, 12, a.data().iter().zip(b.data()).map(|(x, y)| x + s * y).collect()).unwrap();
            let (za, zb, zc) = (interp.zoom(&a).unwrap(), interp.zoom(&b).unwrap(), interp.zoom(&combo).unwrap());
            let lin = ImagePlane::new(24, 24, za.data().iter().zip(zb.data()).map(|(x, y)| x + s * y).collect()).unwrap();
            prop_assert!(zc.max_abs_diff(&lin) < 1e-8, "{m}");
        }
    }

    #[test]
    fn fused_zoom_equals_stack_zoom(img in image_strategy(16, 16), len in prop::sample::select(vec![3usize, 5, 7]), nu in 2usize..=3) {
        let fused = zoom2x(&img, &hermite_kernels::derivatives::DerivativeStack::single(img.clone()),
            &build_zoom_set(5, nu, DerivativeMode::Fir(len)).unwrap()).unwrap();
        let stack = derivative_stack(&img, &Multiplicity::uniform(2, nu).unwrap(), DerivativeMode::Fir(len)).unwrap();
        let channels = zoom2x(&img, &stack, &build_zoom_set(5, nu, DerivativeMode::Iir).unwrap()).unwrap();
        prop_assert!(fused.max_abs_diff(&channels) < 1e-8);
    }

    #[test]
    fn compact_cascade_matches_banded_solve(line in prop::collection::vec(-1.0f64..1.0, 8..80), order in 1usize..=2) {
        let scheme = hermite_kernels::derivatives::derive_compact_scheme().unwrap();
        let got = scheme.apply_line(&line, order).unwrap();
        let want = banded_solve(&line, order);
        for (g, w) in got.iter().zip(&want) {
            prop_assert!((g - w).abs() < 1e-8, "{g} vs {w}");
        }
    }

    #[test]
    fn bilinear_reproduces_affine_images(a in -5.0f64..5.0, b in -5.0f64..5.0, c in -50.0f64..50.0) {
        let img = ImagePlane::from_fn(10, 10, |r, col| a * r as f64 + b * col as f64 + c);
        let out = Interpolator::new(Method::Baseline(BaselineMethod::Bilinear), 5, 3).unwrap().zoom(&img).unwrap();
        for r in 0..18 {
            for col in 0..18 {
                let expect = a * r as f64 / 2.0 + b * col as f64 / 2.0 + c;
                prop_assert!((out.get(r, col) - expect).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn exact_stacks_reproduce_monomials() {
    let (h, w) = (24, 24);
    for nu in [2usize, 3] {
        let deg = nu * 5 - 1;
        let set = build_zoom_set(5, nu, DerivativeMode::Iir).unwrap();
        for px in 0..=deg {
            for py in [0, deg / 2, deg] {
                let (img, stack) = exact_monomial_stack(h, w, px, py, nu);
                let out = zoom2x(&img, &stack, &set).unwrap();
                for r in 6..2 * h - 6 {
                    for c in 6..2 * w - 6 {
                        let e = monomial_at(h, w, px, py, r as f64 / 2.0, c as f64 / 2.0);
                        assert!((out.get(r, c) - e).abs() < 1e-8, "nu={nu} x^{px} y^{py} at ({r},{c})");
                    }
                }
            }
        }
    }
}

#[test]
fn compact_scheme_converges_at_least_as_fast_as_fir5() {
    let omegas = [1.0, 0.5, 0.25];
    let compact = convergence_slope(compact_line(), &omegas);
    let fir5 = convergence_slope(fir_line(5), &omegas);
    assert!((fir5 - 4.0).abs() < 0.5, "fir5 slope {fir5}");
    assert!(compact >= fir5, "compact {compact} < fir5 {fir5}");
}
