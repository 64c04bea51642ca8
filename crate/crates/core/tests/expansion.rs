mod common;

use common::*;
use mbx_core::expansion::engines::{
    alternating, alternating_by_halving, coincident_laurent, nu_one, nu_one_odd, nu_zero, nu_zero_even, r_family,
    residue_by_laurent, series, treble_laurent,
};
use mbx_core::expansion::*;
use mbx_core::mellin::{MellinKernel, Part};
use mbx_core::oracle::{direct_sum, direct_sum_alternating, direct_sum_derivative};
use mbx_core::scalars::{cplx, gamma_real};
use mbx_core::{BigComplex, BigReal, Error, PrecisionCtx, Real};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(d))
}

fn params(mu: BigRational, nu: BigRational, g: BigRational, b: i64, c: &PrecisionCtx) -> SeriesParams<BigReal> {
    SeriesParams::new(mu, nu, g, BigReal::from_i64(b, c)).unwrap()
}

fn real_a(x: i64, c: &PrecisionCtx) -> BigComplex {
    cplx::re(BigReal::from_i64(x, c))
}

fn polar(r: i64, p: i64, d: i64, c: &PrecisionCtx) -> BigComplex {
    let t = BigReal::from_ratio(p, d, c);
    let r = BigReal::from_i64(r, c);
    Complex::new(r.clone() * &t.cos_pi(c), r * &t.sin_pi(c))
}

/// max(x/y, y/x)
fn factor(x: f64, y: f64) -> f64 {
    (x / y).max(y / x)
}

/// Relative error (tabulated normalization) of the auto-truncated expansion.
fn tabulated_error(p: &SeriesParams<BigReal>, a: &BigComplex, c: &PrecisionCtx) -> (f64, ExpansionResult<BigReal>) {
    let r = expand(p, a, &Truncation::Auto, c).unwrap();
    let (s, _) = direct_sum(p, a, c).unwrap();
    (r.error_vs(&s, ErrorNorm::tabulated(&r.regime)).to_f64(), r)
}

const AS: [i64; 5] = [2, 4, 6, 8, 10];

#[test]
fn simple_poles_reproduce_reference_errors_and_truncation_indices() {
    let c = ctx(60);
    let rows: [(i64, [f64; 5]); 2] = [
        (1, [1.050e-4, 9.670e-10, 5.951e-15, 2.899e-20, 1.394e-25]),
        (2, [3.177e-5, 3.964e-10, 2.807e-15, 8.323e-21, 4.939e-26]),
    ];
    for (b, want) in rows {
        let p = params(q(1, 1), q(2, 3), q(1, 1), b, &c);
        for (i, a) in AS.iter().enumerate() {
            let (e, r) = tabulated_error(&p, &real_a(*a, &c), &c);
            assert!(factor(e, want[i]) < 3.0, "b={b} a={a}: {e:e} vs {:e}", want[i]);
            if b == 1 {
                assert_eq!(r.k_o, [5, 11, 17, 24, 30][i]);
            }
        }
    }
}

#[test]
fn complex_argument_errors_grow_towards_the_sector_edge() {
    let c = ctx(60);
    let want = [
        [3.323e-21, 2.899e-20, 2.689e-18],
        [1.673e-19, 1.478e-18, 1.417e-16],
        [9.057e-15, 7.982e-14, 7.544e-12],
        [1.094e-7, 9.627e-7, 8.977e-5],
    ];
    for (j, mu) in [q(1, 2), q(1, 1), q(5, 2)].into_iter().enumerate() {
        let p = params(mu, q(2, 3), q(1, 1), 1, &c);
        let mut last = 0.0;
        for (i, row) in want.iter().enumerate() {
            let (e, _) = tabulated_error(&p, &polar(8, i as i64, 8, &c), &c);
            assert!(factor(e, row[j]) < 3.0, "mu#{j} theta#{i}: {e:e}");
            assert!(e > last);
            last = e;
        }
    }
}

#[test]
fn each_pole_regime_reproduces_reference_errors() {
    let c = ctx(60);
    let cols: [((i64, i64), (i64, i64), (i64, i64), [f64; 5]); 5] = [
        ((2, 1), (0, 1), (1, 1), [1.204e-3, 2.857e-8, 3.095e-13, 2.366e-18, 1.554e-23]),
        ((2, 1), (1, 1), (3, 4), [1.039e-4, 1.398e-9, 1.081e-14, 6.641e-20, 2.802e-25]),
        ((8, 5), (1, 3), (-4, 3), [7.667e-6, 2.539e-11, 8.702e-17, 2.563e-22, 9.106e-28]),
        ((1, 1), (1, 4), (-5, 4), [9.376e-6, 1.581e-11, 3.545e-17, 9.315e-23, 2.420e-28]),
        ((1, 1), (0, 1), (-1, 1), [1.324e-5, 2.080e-11, 5.127e-17, 1.417e-22, 4.269e-28]),
    ];
    for (mu, nu, g, want) in cols {
        let p = params(q(mu.0, mu.1), q(nu.0, nu.1), q(g.0, g.1), 1, &c);
        let mut last = 1.0;
        for (i, a) in AS.iter().enumerate() {
            let (e, r) = tabulated_error(&p, &real_a(*a, &c), &c);
            assert!(factor(e, want[i]) < 3.0, "{} a={a}: {e:e} vs {:e}", r.regime.tag(), want[i]);
            assert!(e < last);
            last = e;
        }
    }
}

#[test]
fn real_argument_gives_real_value() {
    let c = ctx(40);
    for (mu, nu, g) in [(q(1, 1), q(2, 3), q(1, 1)), (q(1, 1), q(0, 1), q(-1, 1)), (q(8, 5), q(1, 3), q(-4, 3))] {
        let r = expand(&params(mu, nu, g, 1, &c), &real_a(6, &c), &Truncation::Auto, &c).unwrap();
        assert!(r.value.im.abs() < r.est_error.unwrap());
    }
}

#[test]
fn conjugate_argument_gives_conjugate_value() {
    let c = ctx(40);
    let p = params(q(1, 1), q(2, 3), q(1, 1), 1, &c);
    let a = polar(6, 1, 5, &c);
    let r = expand(&p, &a, &Truncation::Fixed(6), &c).unwrap();
    let s = expand(&p, &a.conj(), &Truncation::Fixed(6), &c).unwrap();
    assert!(crel_err(&s.value, &r.value.conj()) < 1e-38);
}

#[test]
fn nearly_real_argument_agrees_with_the_real_path() {
    let c = ctx(40);
    let p = params(q(1, 1), q(2, 3), q(1, 1), 1, &c);
    let r = expand(&p, &real_a(6, &c), &Truncation::Fixed(8), &c).unwrap();
    let a = Complex::new(BigReal::from_i64(6, &c), big("1e-30", &c));
    let s = expand(&p, &a, &Truncation::Fixed(8), &c).unwrap();
    assert!(crel_err(&s.value, &r.value) < 1e-28);
}

#[test]
fn warns_near_the_sector_edge_and_rejects_outside() {
    let c = ctx(30);
    let p = params(q(1, 1), q(2, 3), q(1, 1), 1, &c);
    let r = expand(&p, &polar(8, 15, 32, &c), &Truncation::Auto, &c).unwrap();
    assert!(r.warning.is_some());
    let r = expand(&p, &polar(8, 1, 4, &c), &Truncation::Auto, &c).unwrap();
    assert!(r.warning.is_none());
    assert!(matches!(
        expand(&p, &polar(8, 1, 2, &c), &Truncation::Auto, &c),
        Err(Error::Domain(_))
    ));
}

#[test]
fn trivial_zeros_give_exactly_zero_terms() {
    let c = ctx(30);
    // −γ−ν−2k = −2−2k for every k
    let p = params(q(1, 1), q(1, 2), q(3, 2), 1, &c);
    let f = r_family(&p, &q(1, 2), None, &c).unwrap();
    for k in 0..6 {
        assert!(f.term(k).unwrap().unwrap().is_zero());
    }
}

#[test]
fn half_integer_order_leading_coefficient_is_closed_form() {
    let c = ctx(40);
    let p = params(q(1, 1), q(1, 2), q(1, 1), 1, &c);
    let f = r_family(&p, &q(1, 2), None, &c).unwrap();
    let t = f.term(0).unwrap().unwrap();
    assert_eq!(t.power, q(-5, 2));
    // ½ χ^{1/4} Γ(−½) ζ(−3/2), Γ(−½) = −2√π, χ = 1/4
    let g = gamma_real(&BigReal::from_ratio(-1, 2, &c), &c).unwrap();
    let want_g = -(BigReal::pi(&c).sqrt() * &BigReal::from_i64(2, &c));
    assert!(rel_err(&g, &want_g) < 1e-38);
    let zeta = mbx_core::scalars::zeta(&BigReal::from_ratio(-3, 2, &c), &c).unwrap();
    let chi4 = BigReal::from_ratio(1, 4, &c).sqrt().sqrt();
    let want = BigReal::from_ratio(1, 2, &c) * &chi4 * &want_g * &zeta;
    assert!(rel_err(&t.logc[0].re, &want) < 1e-35);
}

#[test]
fn zeta_pole_in_a_family_is_reported() {
    let c = ctx(30);
    let p = params(q(3, 2), q(1, 3), q(-4, 3), 1, &c);
    let f = r_family(&p, &q(1, 3), None, &c).unwrap();
    assert_eq!(f.term(0), Err(Error::ZetaPoleHit { k: 0 }));
    let f = r_family(&p, &q(1, 3), Some(0), &c).unwrap();
    assert_eq!(f.term(0).unwrap(), None);
}

#[test]
fn engines_reject_other_regimes() {
    let c = ctx(30);
    let p = params(q(1, 1), q(2, 3), q(1, 1), 1, &c);
    let a = real_a(4, &c);
    for r in [
        expand_nu_zero(&p, &a, &Truncation::Auto, &c),
        expand_treble_pole(&p, &a, &Truncation::Auto, &c),
        expand_double_pole(&p, &a, &Truncation::Auto, &c),
    ] {
        assert!(matches!(r, Err(Error::RegimeMismatch { .. })));
    }
    let p = params(q(3, 1), q(1, 3), q(-4, 3), 1, &c);
    assert!(matches!(expand(&p, &a, &Truncation::Auto, &c), Err(Error::Unsupported(_))));
}

fn merged_values(s: &AsymptoticSeries<BigReal>, a: &BigComplex, n: usize, c: &PrecisionCtx) -> Vec<BigComplex> {
    let la = cplx::ln(a);
    let mut v: Vec<BigComplex> = s.merged(n, true).unwrap().iter().map(|m| m.term.eval(&la, c)).collect();
    let mut k0 = cplx::re(BigReal::from_i64(0, c));
    for t in &s.constant {
        k0 = k0 + t.eval(&la, c);
    }
    v.insert(0, k0);
    v
}

#[test]
fn even_gamma_collapse_matches_the_uniform_log_form_termwise() {
    let c = ctx(40);
    let a = real_a(5, &c);
    for g in [0, 2, 4] {
        let p = params(q(3, 2), q(0, 1), q(g, 1), 1, &c);
        let u = merged_values(&nu_zero(&p, &c).unwrap(), &a, 8, &c);
        let e = merged_values(&nu_zero_even(&p, &c).unwrap(), &a, 8, &c);
        assert_eq!(u.len(), e.len());
        // at m = 0 the k = 0 log term is carried by the constant part
        let head = |v: &[BigComplex]| v[0].clone() + v[1].clone();
        assert!(crel_err(&head(&e), &head(&u)) < 1e-36);
        for (x, y) in u.iter().zip(&e).skip(2) {
            let d = cplx::abs(&(x.clone() - y.clone())).to_f64() / cplx::abs(&u[0]).to_f64();
            assert!(d < 1e-36, "g={g}: {d:e}");
        }
    }
}

#[test]
fn odd_gamma_collapse_matches_the_two_sum_form() {
    let c = ctx(40);
    let a = real_a(5, &c);
    for g in [1, 3] {
        let p = params(q(3, 2), q(1, 1), q(g, 1), 1, &c);
        let full = nu_one(&p, &c).unwrap().evaluate(&a, &Truncation::Fixed(8), &c).unwrap();
        let odd = nu_one_odd(&p, &c).unwrap().evaluate(&a, &Truncation::Fixed(8), &c).unwrap();
        // the collapsed form drops the vanishing plain terms, so compare sums
        assert!(crel_err(&odd.value, &full.value) < 1e-36, "g={g}: {:e}", crel_err(&odd.value, &full.value));
    }
}

#[test]
fn simple_pole_sums_tend_to_the_log_forms_as_the_order_tends_to_an_integer() {
    let c = ctx(60);
    let a = real_a(6, &c);
    let eps = BigRational::new(BigInt::from(1), BigInt::from(10u64.pow(15)));
    let kk = 8i64;
    for (base, floor) in [(0i64, q(-1, 2)), (1, q(-3, 2))] {
        let mu = q(3, 2);
        let g = q(1, 2);
        let p = params(mu.clone(), q(base, 1), g.clone(), 1, &c);
        let floor = -q(2, 1) * &mu - q(2 * kk, 1) + floor;
        let exact = if base == 0 { nu_zero(&p, &c) } else { nu_one(&p, &c) }.unwrap();
        let exact = AsymptoticSeries::new(exact.regime.clone(), vec![], exact.families.clone());
        let want = exact.evaluate(&a, &Truncation::PowerFloor(floor.clone()), &c).unwrap().value;
        let nu = q(base, 1) + &eps;
        let pe = p.with(mu, nu.clone(), g);
        let lim = AsymptoticSeries::new(
            Regime::Generic,
            vec![],
            vec![r_family(&pe, &nu, None, &c).unwrap(), r_family(&pe, &-nu, None, &c).unwrap()],
        );
        let got = lim.evaluate(&a, &Truncation::PowerFloor(floor), &c).unwrap().value;
        assert!(crel_err(&got, &want) < 1e-10, "nu={base}: {:e}", crel_err(&got, &want));
    }
}

#[test]
fn coincident_bracket_matches_the_numerical_laurent_expansion() {
    let c = ctx(50);
    for (nu, g, sign) in [(q(1, 4), q(-5, 4), Sign::Plus), (q(2, 3), q(-5, 3), Sign::Plus), (q(1, 3), q(-2, 3), Sign::Minus)] {
        let p = params(q(1, 1), nu, g, 1, &c);
        let (cm1, c0) = coincident_laurent(&p, sign, &c).unwrap();
        let k = MellinKernel::from_params(&p, &c);
        let l = k.laurent(&real_a(1, &c), Part::Without(sign.flip()), &[-2, -1, 0]).unwrap();
        assert!(cplx::abs(&l[0]).to_f64() < 1e-40);
        assert!(rel_err(&l[1].re, &cm1) < 1e-40, "{:e}", rel_err(&l[1].re, &cm1));
        assert!(rel_err(&l[2].re, &c0) < 1e-40, "{:e}", rel_err(&l[2].re, &c0));
    }
}

#[test]
fn treble_pole_coefficients_match_the_numerical_laurent_expansion() {
    let c = ctx(50);
    for b in [1, 3] {
        let p = params(q(1, 1), q(0, 1), q(-1, 1), b, &c);
        let h = treble_laurent(&p, &c).unwrap();
        let k = MellinKernel::from_params(&p, &c);
        let l = k.laurent(&real_a(1, &c), Part::Full, &[-2, -1, 0]).unwrap();
        for (x, y) in l.iter().zip(&h) {
            assert!(rel_err(&x.re, y) < 1e-38);
        }
    }
}

#[test]
fn residues_agree_with_the_numerical_laurent_route() {
    let c = ctx(50);
    let a = polar(7, 1, 9, &c);
    for (mu, nu, g) in [
        (q(8, 5), q(1, 3), q(-4, 3)),
        (q(5, 2), q(1, 4), q(-13, 4)),
        (q(1, 1), q(1, 4), q(-5, 4)),
        (q(1, 1), q(0, 1), q(-1, 1)),
    ] {
        let p = params(mu, nu, g, 1, &c);
        let s = series(&p, &c).unwrap();
        let la = cplx::ln(&a);
        let mut res = cplx::re(BigReal::from_i64(0, &c));
        for t in &s.constant {
            res = res + t.eval(&la, &c);
        }
        let want = residue_by_laurent(&p, Part::Full, &a, &c).unwrap();
        assert!(crel_err(&res, &want) < 1e-38, "{}: {:e}", s.regime.tag(), crel_err(&res, &want));
    }
}

#[test]
fn residue_derivative_formula_matches_finite_differences() {
    let c = ctx(60);
    let p = params(q(1, 1), q(1, 3), q(-4, 3), 1, &c);
    let s = series(&p, &c).unwrap();
    let res = |a: &BigReal| {
        let la = cplx::ln(&cplx::re(a.clone()));
        s.constant.iter().fold(cplx::re(BigReal::from_i64(0, &c)), |z, t| z + t.eval(&la, &c)).re
    };
    let a = BigReal::from_i64(5, &c);
    let h = big("1e-15", &c);
    let fd = (res(&(a.clone() + &h)) - &res(&(a.clone() - &h))) / &(h.clone() + &h);
    // ∂_a Res = ((γ−1)/a) Res + ½ a^{γ−2} χ^{ν/2} Γ(−ν)
    let g = BigReal::from_ratio(-4, 3, &c);
    let chi = BigReal::from_ratio(1, 4, &c);
    let nu = BigReal::from_ratio(1, 3, &c);
    let gam = gamma_real(&-nu.clone(), &c).unwrap();
    let formula = (g.clone() - &BigReal::from_i64(1, &c)) / &a * &res(&a)
        + &(BigReal::from_ratio(1, 2, &c)
            * &a.powf(&(g - &BigReal::from_i64(2, &c)))
            * &chi.powf(&(nu / &BigReal::from_i64(2, &c)))
            * &gam);
    assert!(rel_err(&fd, &formula) < 1e-25);
    // termwise a∂_a agrees as well
    let la = cplx::ln(&cplx::re(a.clone()));
    let d = s.constant.iter().fold(cplx::re(BigReal::from_i64(0, &c)), |z, t| z + t.a_deriv(&c).eval(&la, &c)).re / &a;
    assert!(rel_err(&d, &formula) < 1e-40);
}

#[test]
fn mu_two_lift_matches_the_oracle() {
    let c = ctx(60);
    for (nu, g) in [(q(1, 3), q(-4, 3)), (q(3, 4), q(-7, 4))] {
        let p = params(q(2, 1), nu, g, 1, &c);
        let a = real_a(8, &c);
        let r = expand_mu_two_lift(&p, &a, &Truncation::Auto, &c).unwrap();
        let (s, _) = direct_sum(&p, &a, &c).unwrap();
        assert!(crel_err(&r.value, &s) < 1e-20);
    }
}

#[test]
fn recurrence_matches_the_oracle_and_reduces_to_integer_order_regimes() {
    let c = ctx(50);
    let a = real_a(6, &c);
    let p = params(q(1, 1), q(2, 1), q(2, 1), 1, &c);
    let r = expand_recurrence(&p, &a, &Truncation::Auto, &c).unwrap();
    let (s, _) = direct_sum(&p, &a, &c).unwrap();
    assert!(crel_err(&r.value, &s) < 1e-15);
    assert_eq!(classify_exact(&q(1, 1), &q(3, 1), &q(3, 1)), Regime::RecurrenceReduce { nu: 3 });
    for (nu, g) in [(1, 3), (0, 2), (1, 1)] {
        let reg = classify_exact(&q(1, 1), &q(nu, 1), &q(g, 1));
        assert!(matches!(reg, Regime::NuZeroEven { .. } | Regime::NuOneOdd { .. }));
    }
    let p = params(q(1, 1), q(3, 1), q(3, 1), 1, &c);
    let r = expand(&p, &a, &Truncation::Auto, &c).unwrap();
    let (s, _) = direct_sum(&p, &a, &c).unwrap();
    assert!(crel_err(&r.value, &s) < 1e-14);
}

#[test]
fn recurrence_holds_between_direct_sums() {
    let c = ctx(50);
    let a = polar(5, 1, 7, &c);
    let (mu, g) = (q(3, 2), q(1, 2));
    let s = |nu: i64, g: BigRational| direct_sum(&params(mu.clone(), q(nu, 1), g, 1, &c), &a, &c).unwrap().0;
    for n in [0, 1] {
        let lhs = s(n + 2, g.clone());
        let f = cplx::scale(&a, &BigReal::from_i64(2 * (n + 1), &c));
        let rhs = s(n, g.clone()) + f * s(n + 1, g.clone() - q(1, 1));
        assert!(crel_err(&lhs, &rhs) < 1e-45);
    }
}

#[test]
fn derivative_expansion_matches_the_oracle() {
    let c = ctx(50);
    let a = real_a(6, &c);
    for nu in [q(3, 2), q(1, 2), q(1, 3)] {
        let p = params(q(1, 1), nu, q(1, 1), 1, &c);
        let r = expand_derivative(&p, &a, &Truncation::Auto, &c).unwrap();
        let (s, _) = direct_sum_derivative(&p, &a, &c).unwrap();
        assert!(crel_err(&r.value, &s) < 1e-15);
    }
}

#[test]
fn alternating_forms_agree_and_match_the_oracle() {
    let c = ctx(50);
    let a = real_a(8, &c);
    let p = params(q(1, 1), q(2, 3), q(1, 1), 1, &c);
    let direct = alternating(&p, &c).unwrap().evaluate(&a, &Truncation::Fixed(10), &c).unwrap();
    let halved = alternating_by_halving(&p, &c).unwrap().evaluate(&a, &Truncation::Fixed(10), &c).unwrap();
    assert!(crel_err(&direct.value, &halved.value) < 1e-40);
    assert!(cplx::abs(&halved.constant).to_f64() < 1e-45);
    let (s, _) = direct_sum_alternating(&p, &a, &c).unwrap();
    let r = expand_alternating(&p, &a, &Truncation::Auto, &c).unwrap();
    assert!(crel_err(&r.value, &s) < 1e-8);
    for (mu, nu, g) in [(q(1, 1), q(1, 4), q(-5, 4)), (q(1, 1), q(0, 1), q(-1, 1))] {
        let p = params(mu, nu, g, 1, &c);
        let r = expand_alternating(&p, &a, &Truncation::Auto, &c).unwrap();
        let (s, _) = direct_sum_alternating(&p, &a, &c).unwrap();
        assert!(crel_err(&r.value, &s) < 1e-9);
    }
}

#[test]
fn truncation_rule_on_simple_sequences() {
    let inc: Vec<f64> = (1..10).map(|i| i as f64).collect();
    assert_eq!(optimal_truncation(&inc), Cut { kept: 0, no_minimum: false });
    let dec: Vec<f64> = (1..10).map(|i| 1.0 / i as f64).collect();
    assert_eq!(optimal_truncation(&dec), Cut { kept: 9, no_minimum: true });
    let v = [1.0, 0.5, 0.0, 0.2, 0.3, 0.4, 0.5, 0.6];
    assert_eq!(optimal_truncation(&v), Cut { kept: 3, no_minimum: false });
    // two interleaved families
    let z = [1.0, 3.0, 0.1, 0.3, 0.01, 0.03, 0.02, 0.06, 0.04, 0.1, 0.07, 0.2];
    assert_eq!(optimal_truncation_with(&z, 6).kept, 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn optimal_cut_is_the_least_nonzero_term(v in prop::collection::vec(0.0f64..10.0, 2..40)) {
        let cut = optimal_truncation(&v);
        prop_assert!(cut.kept <= v.len());
        if !cut.no_minimum {
            let m = v[cut.kept];
            prop_assert!(m > 0.0);
            for x in &v[..cut.kept] {
                prop_assert!(*x == 0.0 || *x > m);
            }
        }
    }

    #[test]
    fn termwise_halving_matches_direct_evaluation(
        p in -20i64..20, d in 1i64..5, c0 in -3.0f64..3.0, c1 in -3.0f64..3.0, c2 in -3.0f64..3.0,
        e in -6i64..6, x in 1.5f64..30.0,
    ) {
        let c = PrecisionCtx::new(15).unwrap();
        let t = Term::new(q(p, d), vec![cplx::re(c0), cplx::re(c1), cplx::re(c2)]);
        let la = cplx::re(x.ln());
        let lh = cplx::re((x / 2.0).ln());
        let want = t.eval(&la, &c) - cplx::scale(&t.eval(&lh, &c), &2f64.powi(e as i32));
        let got = t.minus_halved(&q(e, 1), &c).eval(&la, &c);
        // rounding scale: coefficient magnitudes, not the (possibly cancelled) values
        let l = x.ln() + 1.0;
        let size = x.powf(p as f64 / d as f64) * (c0.abs() + c1.abs() * l + c2.abs() * l * l);
        let scale = size * (1.0 + 2f64.powf(e as f64 - p as f64 / d as f64));
        prop_assert!(cplx::abs(&(got - want)) <= 1e-12 * scale);
    }

    #[test]
    fn termwise_derivative_matches_finite_differences(
        p in -20i64..20, d in 1i64..5, c0 in -3.0f64..3.0, c1 in -3.0f64..3.0, x in 1.5f64..30.0,
    ) {
        let c = PrecisionCtx::new(15).unwrap();
        let t = Term::new(q(p, d), vec![cplx::re(c0), cplx::re(c1)]);
        let h = 1e-5 * x;
        let f = |y: f64| t.eval(&cplx::re(y.ln()), &c).re;
        let fd = x * (f(x + h) - f(x - h)) / (2.0 * h);
        let got = t.a_deriv(&c).eval(&cplx::re(x.ln()), &c).re;
        prop_assert!((got - fd).abs() <= 1e-6 * (1.0 + fd.abs() + f(x).abs()));
    }
}
