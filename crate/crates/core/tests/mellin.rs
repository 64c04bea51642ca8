mod common;

use common::*;
use mbx_core::expansion::{classify, Regime, SeriesParams, Sign};
use mbx_core::hyp::f_poly;
use mbx_core::mellin::*;
use mbx_core::scalars::cplx;
use mbx_core::scalars::gamma::gamma_fn;
use mbx_core::scalars::{bessel_j, gamma_real};
use mbx_core::{BigComplex, BigReal, Error, PrecisionCtx, Real};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn re(x: BigReal) -> BigComplex {
    cplx::re(x)
}

fn kernel(mu: BigRational, nu: BigRational, g: BigRational, b: i64, c: &PrecisionCtx) -> MellinKernel<BigReal> {
    MellinKernel::new(mu, nu, g, BigReal::from_i64(b, c), c)
}

fn params(mu: BigRational, nu: BigRational, g: BigRational, b: i64, c: &PrecisionCtx) -> SeriesParams<BigReal> {
    SeriesParams::new(mu, nu, g, BigReal::from_i64(b, c)).unwrap()
}

#[test]
fn closed_form_matches_quadrature_at_two() {
    let c = ctx(60);
    let k = kernel(q(1, 1), q(2, 3), q(1, 1), 1, &c);
    let s = re(BigReal::from_i64(2, &c));
    let h = k.h(&s).unwrap();
    let p = params(q(1, 1), q(2, 3), q(1, 1), 1, &c);
    let quad = mellin_quadrature(&s, &p, &c).unwrap();
    assert!(crel_err(&h, &quad) < 10.0 * c.quad_tol, "{}", crel_err(&h, &quad));
}

fn grid_check(mu: BigRational, nu: BigRational, g: BigRational, b: i64, sigmas: &[(i64, i64)]) {
    let c = ctx(60);
    let k = kernel(mu.clone(), nu.clone(), g.clone(), b, &c);
    let quad = MellinQuadrature::new(mu, nu, g, BigReal::from_i64(b, &c), &c).unwrap();
    let mut worst = 0f64;
    for &(sp, sq) in sigmas {
        for tau in [-2i64, -1, 0, 1, 2] {
            let s = Complex::new(BigReal::from_ratio(sp, sq, &c), BigReal::from_ratio(tau, 2, &c));
            let h = k.value(&s, Part::Full).unwrap();
            let i = quad.integrate(&s).unwrap();
            worst = worst.max(crel_err(&h, &i));
        }
    }
    assert!(worst < 1e-40, "worst relative error {worst:e}");
}

#[test]
fn closed_form_matches_quadrature_on_grid() {
    grid_check(q(1, 1), q(2, 3), q(1, 1), 1, &[(-1, 4), (1, 2), (1, 1), (7, 4), (3, 1)]);
}

#[test]
fn closed_form_matches_quadrature_on_grid_second_set() {
    grid_check(q(8, 5), q(1, 3), q(-1, 4), 2, &[(3, 4), (1, 1), (5, 3), (5, 2), (4, 1)]);
}

#[test]
fn half_integer_order_matches_quadrature() {
    let c = ctx(60);
    let p = params(q(3, 2), q(1, 2), q(0, 1), 1, &c);
    let k = MellinKernel::from_params(&p, &c);
    for s in [1i64, 2, 3] {
        let s = re(BigReal::from_i64(s, &c));
        let h = k.value(&s, Part::Full).unwrap();
        let i = mellin_quadrature(&s, &p, &c).unwrap();
        assert!(crel_err(&h, &i) < 1e-40);
    }
}

#[test]
fn integer_order_limits_match_quadrature() {
    let c = ctx(60);
    // ν = 0 at a removable point of both sine lattices (s = 1) and away from it
    for (mu, nu, g, s) in [
        (q(2, 1), q(0, 1), q(1, 1), 1i64),
        (q(2, 1), q(0, 1), q(1, 1), 2),
        (q(2, 1), q(1, 1), q(3, 4), 1),
        (q(1, 1), q(1, 1), q(1, 1), 2),
    ] {
        let p = params(mu, nu, g, 1, &c);
        let k = MellinKernel::from_params(&p, &c);
        let s = re(BigReal::from_i64(s, &c));
        let h = k.value(&s, Part::Full).unwrap();
        let i = mellin_quadrature(&s, &p, &c).unwrap();
        assert!(crel_err(&h, &i) < 1e-40, "{:e}", crel_err(&h, &i));
    }
}

#[test]
fn bessel_moment_without_damping() {
    let c = ctx(60);
    let (nu, g) = (q(2, 3), q(1, 2));
    let quad = MellinQuadrature::new(q(0, 1), nu.clone(), g.clone(), BigReal::from_i64(2, &c), &c).unwrap();
    for (sr, si) in [(1i64, 0i64), (2, 1), (3, -2)] {
        let s = Complex::new(BigReal::from_i64(sr, &c), BigReal::from_i64(si, &c));
        let got = quad.integrate(&s).unwrap();
        // 2^{γ+s−2} b^{−γ−s} Γ(λ_ν) Γ(λ_{−ν}) with b = 2
        let gs = s.clone() + re(BigReal::from_rational(&g, &c));
        let half = BigReal::from_ratio(1, 2, &c);
        let nuv = BigReal::from_rational(&nu, &c);
        let lp = cplx::scale(&(gs.clone() + re(nuv.clone())), &half);
        let lm = cplx::scale(&(gs.clone() - re(nuv)), &half);
        let two = BigReal::from_i64(2, &c);
        let pw = cplx::exp(&cplx::scale(&(gs.clone() - re(two.clone())), &two.ln()));
        let bw = cplx::exp(&cplx::scale(&(-gs), &two.ln()));
        let want = pw * bw * gamma_fn(&lp, &c).unwrap() * gamma_fn(&lm, &c).unwrap();
        assert!(crel_err(&got, &want) < 1e-40);
    }
}

#[test]
fn quadrature_rejects_points_outside_the_strip() {
    let c = ctx(30);
    let p = params(q(1, 1), q(2, 3), q(1, 1), 1, &c);
    // Re(γ+s) = ν − 1/2
    let s = re(BigReal::from_rational(&(q(2, 3) - q(1, 2) - q(1, 1)), &c));
    assert!(matches!(mellin_quadrature(&s, &p, &c), Err(Error::StripViolation { .. })));
}

#[test]
fn quadrature_caches_nodes_across_s() {
    let c = ctx(30);
    let quad = MellinQuadrature::new(q(1, 1), q(2, 3), q(1, 1), BigReal::from_i64(1, &c), &c).unwrap();
    quad.integrate(&re(BigReal::from_i64(2, &c))).unwrap();
    let n = quad.cached_nodes();
    quad.integrate(&re(BigReal::from_i64(3, &c))).unwrap();
    assert!(quad.cached_nodes() <= n + n / 4);
}

#[test]
fn constant_at_one_matches_quadrature() {
    let c = ctx(60);
    let p = params(q(1, 1), q(2, 3), q(1, 1), 1, &c);
    let h = h_at_one(&p, &Regime::Generic, &c).unwrap();
    let i = mellin_quadrature(&re(BigReal::from_i64(1, &c)), &p, &c).unwrap();
    assert!(crel_err(&h, &i) < 10.0 * c.quad_tol);
}

#[test]
fn constant_at_one_checks_regime() {
    let c = ctx(30);
    let p = params(q(1, 1), q(2, 3), q(1, 1), 1, &c);
    assert!(matches!(
        h_at_one(&p, &Regime::NuZero, &c),
        Err(Error::RegimeMismatch { .. })
    ));
}

#[test]
fn guarded_pieces_refuse_apparent_points() {
    let c = ctx(40);
    let k = kernel(q(8, 5), q(1, 3), q(1, 1), 1, &c);
    let s0 = BigReal::from_rational(&k.apparent_point(0, Sign::Plus), &c);
    assert!(matches!(k.h1(&re(s0.clone())), Err(Error::NearPole { .. })));
    assert!(matches!(k.h2(&re(s0.clone()), Sign::Plus), Err(Error::NearPole { .. })));
    // the full kernel is regular there
    let v = k.value(&re(s0.clone()), Part::Full).unwrap();
    let off = re(s0 + BigReal::from_ratio(1, 10, &c));
    let near = k.h(&off).unwrap();
    assert!(cplx::abs(&(v - near)).to_f64() < 1.0);
}

#[test]
fn swapping_the_sign_of_nu_swaps_second_pieces() {
    let c = ctx(40);
    let kp = kernel(q(7, 4), q(2, 5), q(1, 3), 2, &c);
    let km = kernel(q(7, 4), q(-2, 5), q(1, 3), 2, &c);
    let s = Complex::new(BigReal::from_ratio(3, 2, &c), BigReal::from_ratio(1, 3, &c));
    assert!(crel_err(&kp.h(&s).unwrap(), &km.h(&s).unwrap()) < 1e-38);
    assert!(crel_err(&kp.h2(&s, Sign::Plus).unwrap(), &km.h2(&s, Sign::Minus).unwrap()) < 1e-38);
    assert!(crel_err(&kp.h1(&s).unwrap(), &km.h1(&s).unwrap()) < 1e-38);
}

#[test]
fn second_piece_reduces_to_bessel_j_when_mu_is_one() {
    let c = ctx(60);
    // γ + ν = −1
    let nu = q(1, 4);
    let k = kernel(q(1, 1), nu.clone(), q(-5, 4), 1, &c);
    let pi = BigReal::pi(&c);
    let nuv = BigReal::from_rational(&nu, &c);
    let snu = nuv.sin_pi(&c);
    let one = BigReal::from_i64(1, &c);
    let jp = bessel_j(&nuv, &one, &c).unwrap();
    let jm = bessel_j(&(-nuv.clone()), &one, &c).unwrap();
    let h = k.h2(&re(BigReal::from_i64(2, &c)), Sign::Plus).unwrap();
    let want = -(pi.clone() * &pi) / &(BigReal::from_i64(4, &c) * &snu) * &jp;
    assert!(crel_err(&h, &re(want)) < 1e-55);
    let h = k.h2(&re(one.clone()), Sign::Minus).unwrap();
    let t = pi / &(BigReal::from_i64(2, &c) * &snu);
    let want = -(t.clone() * &t) * &jm;
    assert!(crel_err(&h, &re(want)) < 1e-55);
}

#[test]
fn coincident_regular_part_has_the_predicted_residues() {
    let c = ctx(50);
    let (mu, nu, g) = (q(1, 1), q(1, 4), q(-5, 4));
    let k = kernel(mu.clone(), nu.clone(), g, 1, &c);
    let chi = BigReal::from_ratio(1, 4, &c);
    let nuv = BigReal::from_rational(&nu, &c);
    let half = BigReal::from_ratio(1, 2, &c);
    let base = (nuv.clone() * &half * &chi.ln()).exp() * &half * &gamma_real(&(-nuv), &c).unwrap();
    for kk in 1..=3usize {
        let s = re(BigReal::from_i64(1 - 2 * kk as i64, &c));
        // H₁ + H₂(s,ν)
        let l = k.laurent(&s, Part::Without(Sign::Minus), &[-2, -1]).unwrap();
        let f: BigReal = f_poly(kk, &mu, &nu, &chi, &c).unwrap();
        let sign = if kk % 2 == 0 { 1 } else { -1 };
        let want = base.clone() * &f * &BigReal::from_i64(sign, &c);
        assert!(cplx::abs(&l[0]).to_f64() < 1e-40, "order -2: {:e}", cplx::abs(&l[0]).to_f64());
        let e = crel_err(&l[1], &re(want));
        assert!(e < 1e-40, "k={kk}: {e:e}");
    }
}

#[test]
fn q_vanishes_at_apparent_points_example() {
    let c = ctx(60);
    let k = kernel(q(8, 5), q(1, 3), q(1, 1), 1, &c);
    for kk in [0i64, -1] {
        for sg in [Sign::Plus, Sign::Minus] {
            let v = k.q_check(kk, sg).unwrap().to_f64();
            assert!(v < 1e-45, "k={kk} {sg}: {v:e}");
        }
    }
    let generic = k.q_fn(&re(BigReal::from_ratio(1, 7, &c)), Sign::Plus).unwrap();
    let m = cplx::abs(&generic).to_f64();
    assert!(m > 1e-3 && m < 1e3, "{m}");
}

fn random_rational(rng: &mut ChaCha8Rng, lo: f64, hi: f64, avoid_integer: bool) -> BigRational {
    loop {
        let den = rng.gen_range(2..13i64);
        let num = rng.gen_range((lo * den as f64).ceil() as i64..=(hi * den as f64).floor() as i64);
        let r = q(num, den);
        if !(avoid_integer && r.is_integer()) {
            return r;
        }
    }
}

#[test]
fn q_vanishes_at_six_apparent_points_on_both_branches() {
    let c = ctx(60);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..5 {
        let mu = random_rational(&mut rng, 0.2, 3.0, true);
        let nu = random_rational(&mut rng, 0.1, 2.9, true);
        let g = random_rational(&mut rng, -2.0, 2.0, false);
        let b = rng.gen_range(1..4i64);
        let k = kernel(mu.clone(), nu.clone(), g.clone(), b, &c);
        for kk in -3..=2i64 {
            for sg in [Sign::Plus, Sign::Minus] {
                let v = k.q_check(kk, sg).unwrap().to_f64();
                assert!(v < 1e-45, "mu={mu} nu={nu} gamma={g} b={b} k={kk} {sg}: {v:e}");
            }
        }
    }
}

#[test]
fn regimes_classify_the_worked_examples() {
    let c = ctx(20);
    let cases = [
        (q(2, 1), q(0, 1), q(1, 1), "nu-zero"),
        (q(2, 1), q(1, 1), q(3, 4), "nu-one"),
        (q(8, 5), q(1, 3), q(-4, 3), "double-pole(m=0,sign=+)"),
        (q(1, 1), q(1, 4), q(-5, 4), "coincident-double-pole(sign=+)"),
        (q(1, 1), q(0, 1), q(-1, 1), "treble-pole"),
        (q(1, 1), q(2, 3), q(1, 1), "generic"),
    ];
    for (mu, nu, g, tag) in cases {
        assert_eq!(classify(&params(mu, nu, g, 1, &c)).tag(), tag);
    }
}

#[test]
fn treble_pole_constant_is_finite() {
    let c = ctx(40);
    let p = params(q(1, 1), q(0, 1), q(-1, 1), 1, &c);
    let h = h_at_one(&p, &Regime::TreblePole, &c).unwrap();
    assert!(cplx::abs(&h).to_f64().is_finite());
}
