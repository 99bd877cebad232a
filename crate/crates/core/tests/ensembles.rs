use dpplab_core::dpp::{projection_exact_law, GroundSpace};
use dpplab_core::ensembles::{
    log_density, meixner_weights, projection_frame, projection_frame_on, sample_eigs, EnsembleSampler, EnsembleSpec,
    FrameMethod,
};
use dpplab_core::stats::mean_var;
use rand::SeedableRng;

fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn meixner_samples_have_m_particles() {
    let spec = EnsembleSpec::Meixner { m: 3, n: 5, q: 0.5 };
    let sampler = EnsembleSampler::new(spec).unwrap();
    let mut r = rng(1);
    for _ in 0..500 {
        let s = sampler.sample(&mut r).unwrap();
        assert_eq!(s.values.len(), 3);
        assert!(s.values.windows(2).all(|w| w[0] < w[1]));
        assert!(s.values.iter().all(|v| v.fract() == 0.0 && *v >= 0.0));
    }
}

#[test]
fn kernels_depend_only_on_the_span() {
    let specs = [
        EnsembleSpec::Meixner { m: 4, n: 6, q: 0.4 },
        EnsembleSpec::Meixner { m: 6, n: 6, q: 0.5 },
        EnsembleSpec::Wishart { m: 3, n: 5 },
        EnsembleSpec::Wishart { m: 6, n: 6 },
    ];
    for spec in specs {
        let base = projection_frame(&spec).unwrap();
        let space = base.space().clone();
        let a = projection_frame_on(&spec, space.clone(), FrameMethod::Recurrence).unwrap().kernel();
        let b = projection_frame_on(&spec, space, FrameMethod::GramSchmidt).unwrap().kernel();
        let dev = a.absorbed().sub(&b.absorbed()).max_abs();
        assert!(dev < 1e-6, "{spec:?}: {dev}");
    }
}

#[test]
fn sampled_configurations_have_finite_density() {
    let specs = [
        EnsembleSpec::Wishart { m: 3, n: 4 },
        EnsembleSpec::Jacobi { n1: 4, n2: 3, n: 2 },
        EnsembleSpec::Meixner { m: 2, n: 3, q: 0.5 },
    ];
    let mut r = rng(2);
    for spec in specs {
        for _ in 0..200 {
            let s = sample_eigs(&spec, &mut r).unwrap();
            let d = log_density(&spec, &s.values).unwrap();
            assert!(d.unnormalized.is_finite(), "{spec:?} {:?}", s.values);
            if let Some(v) = d.normalized() {
                assert!(v.is_finite());
            }
        }
    }
}

#[test]
fn wishart_trace_mean() {
    let (m, n, reps) = (3, 4, 10_000);
    let mut r = rng(3);
    let sums: Vec<f64> =
        (0..reps).map(|_| sample_eigs(&EnsembleSpec::Wishart { m, n }, &mut r).unwrap().values.iter().sum()).collect();
    let (mean, var) = mean_var(&sums);
    let sigma = (var / reps as f64).sqrt();
    assert!((mean - (m * n) as f64).abs() < 3.0 * sigma, "{mean} ± {sigma}");
}

#[test]
fn one_particle_meixner_is_negative_binomial() {
    let (n, q, t) = (4usize, 0.5, 120usize);
    let spec = EnsembleSpec::Meixner { m: 1, n, q };
    let space = GroundSpace::lattice(meixner_weights(1, n, q, t)).unwrap();
    let frame = projection_frame_on(&spec, space, FrameMethod::Recurrence).unwrap();
    let law = projection_exact_law(&frame).unwrap();
    let mut tv = 0.0;
    for (c, p) in law.iter() {
        let x = c.indices()[0] as f64;
        let log_nb = libm::lgamma(x + n as f64) - libm::lgamma(x + 1.0) - libm::lgamma(n as f64)
            + n as f64 * libm::log(1.0 - q)
            + x * libm::log(q);
        tv += (p - libm::exp(log_nb)).abs();
    }
    assert!(tv / 2.0 < 1e-10, "{tv}");
}
