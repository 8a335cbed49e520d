use movquad::algebra::{bidegree_dim, monomial_basis};
use movquad::detrep::{self, compose, QuadricSource};
use movquad::exactla::{self, Matrix};
use movquad::{oracle, syzygy, thresholds, BiHomPoly, Field, Fp62, Rational, SurfaceParam};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A map of bidegree `(m, n)` vanishing at `k` points `(1:a) x (1:b)` with distinct `a`.
///
/// Coefficients are small integers so the same map can be read over QQ and GF(p).
fn with_base_points(m: u32, n: u32, k: usize, seed: u64) -> SurfaceParam<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = monomial_basis(m, n);
    let mut a: Vec<i64> = (-30..=30).collect();
    let conditions: Vec<Vec<Rational>> = (0..k)
        .map(|_| {
            let ai = a.swap_remove(rng.random_range(0..a.len()));
            let bi = rng.random_range(-30..=30i64);
            basis.iter().map(|&(i, j)| Rational::from_i64(ai.pow(i) * bi.pow(j))).collect()
        })
        .collect();
    let kernel = exactla::kernel_basis(&Matrix::from_rows(bidegree_dim(m, n), conditions));
    loop {
        let f: Vec<BiHomPoly<Rational>> = (0..4)
            .map(|_| {
                let w: Vec<Rational> = (0..kernel.ncols()).map(|_| Rational::from_i64(rng.random_range(-50..=50))).collect();
                let v = kernel.mul_vec(&w);
                // clear denominators so the map reads the same over every field
                let lcm = v.iter().fold(num_bigint::BigInt::from(1), |l, c| num_integer::Integer::lcm(&l, c.denom()));
                let scale = Rational::from_integer(lcm);
                BiHomPoly::from_coords(m, n, &v.iter().map(|c| c * &scale).collect::<Vec<_>>())
            })
            .collect();
        if let Ok(p) = SurfaceParam::new(m, n, f.try_into().unwrap()) {
            return p;
        }
    }
}

fn to_fp(p: &SurfaceParam<Rational>) -> SurfaceParam<Fp62> {
    SurfaceParam::from_json(&p.to_json()).unwrap()
}

fn bidegree_and_points() -> impl Strategy<Value = (u32, u32, usize)> {
    prop_oneof![Just((1, 1, 0)), (0usize..=2).prop_map(|k| (2, 1, k)), (0usize..=3).prop_map(|k| (2, 2, k))]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn moving_forms_follow_the_map((m, n, k) in bidegree_and_points(), seed in any::<u64>(), mu in 0u32..3, nu in 0u32..2) {
        let p = to_fp(&with_base_points(m, n, k, seed));
        for l in syzygy::moving_planes(&p, mu, nu).basis {
            prop_assert!(l.substitute(&p).is_zero());
        }
        for q in syzygy::quadratic_relations(&p, mu, nu).basis {
            prop_assert!(q.substitute(&p).is_zero());
        }
        let vp = syzygy::plane_generated_quadrics(&syzygy::moving_planes(&p, mu, nu));
        prop_assert!(syzygy::quadratic_relations(&p, mu, nu).contains(&vp.coords));
    }

    #[test]
    fn r_counts_simple_base_points((m, n, k) in bidegree_and_points(), seed in any::<u64>()) {
        let p = to_fp(&with_base_points(m, n, k, seed));
        prop_assert_eq!(thresholds::base_degree_r(&p).unwrap(), k);
        prop_assert_eq!(thresholds::base_degree_r(&p.transpose()).unwrap(), k);
        // reduced points are local complete intersections: deg(phi) deg(S) = 2mn - r
        let o = oracle::implicit_equation(&p, seed).unwrap();
        prop_assert_eq!(o.degphi_lci.map(|d| d * o.deg_f), Some(2 * m * n - k as u32));
    }

    #[test]
    fn complexes_are_exact_in_shape((m, n, k) in bidegree_and_points(), seed in any::<u64>()) {
        let p = to_fp(&with_base_points(m, n, k, seed));
        let mu0 = thresholds::mu0(&p).unwrap();
        for mu in mu0.max(1)..=2 * m {
            let c = detrep::assemble_complex(&p, mu - 1, n - 1, QuadricSource::Default).unwrap();
            let (rows, l, q, z) = c.shape();
            prop_assert_eq!(rows + z, l + q);
            prop_assert!(compose(&c.d1.forms(), &c.d2).iter().flatten().all(|e| e.is_zero()));
            prop_assert!(c.d2[l..].iter().flatten().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn window_determinants_are_the_implicit_equation((m, n, k) in bidegree_and_points(), seed in any::<u64>()) {
        let p = to_fp(&with_base_points(m, n, k, seed));
        let a = thresholds::analyze(&p, seed).unwrap();
        let o = oracle::implicit_equation(&p, seed).unwrap();
        for &mu in &a.window {
            let det = detrep::assemble_mpq(&p, mu - 1, n - 1, QuadricSource::Default).unwrap().determinant().unwrap();
            let d = det.xdeg();
            prop_assert_eq!(d % o.deg_f, 0);
            prop_assert!(oracle::power_check(&det, &o.f, d / o.deg_f));
        }
    }

    #[test]
    fn dimensions_agree_over_qq_and_fp((m, n, k) in bidegree_and_points(), seed in any::<u64>(), mu in 0u32..4) {
        let q = with_base_points(m, n, k, seed);
        let p = to_fp(&q);
        for nu in 0..n {
            prop_assert_eq!(syzygy::moving_planes(&q, mu, nu).dim(), syzygy::moving_planes(&p, mu, nu).dim());
            prop_assert_eq!(syzygy::koszul_z2(&q, mu, nu).dim(), syzygy::koszul_z2(&p, mu, nu).dim());
        }
        prop_assert_eq!(thresholds::mu0(&q).unwrap(), thresholds::mu0(&p).unwrap());
    }

    #[test]
    fn transposition_swaps_thresholds((m, n, k) in bidegree_and_points(), seed in any::<u64>()) {
        let p = to_fp(&with_base_points(m, n, k, seed));
        let a = thresholds::analyze(&p, 0).unwrap();
        let t = thresholds::analyze(&p.transpose(), 0).unwrap();
        prop_assert_eq!((a.r, a.mu0, a.nu0), (t.r, t.nu0, t.mu0));
        prop_assert_eq!(&a.window, &t.transposed_window);
    }
}
