use num_complex::Complex64;
use num_traits::Signed;
use proptest::prelude::*;

use ncpos::algebra::{Element, Monomial, Presentation, PresetKind};
use ncpos::expr::parse_element;
use ncpos::poly::RatPoly;
use ncpos::rep::{
    build_representation, count_real_roots, finite_rep_split_and_pi_rho, hypothesis_ii_check, rep_evaluate,
    resolvent_integrability_check, sorted_eigenvalues, sturm_positive, torsion_spectral_check, Positivity, RepKind,
    TorsionWhich, Witness,
};
use ncpos::scalar::{rat, rat_int, rational_to_f64, Rational, Scalar};

fn int_poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 1..=7).prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
}

/// sample points k/4 on [−100, 100]
fn samples() -> impl Iterator<Item = Rational> {
    (-400i64..=400).map(|k| rat(k, 4))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sturm_agrees_with_dense_sampling(coeffs in int_poly()) {
        let p = RatPoly::from_ints(&coeffs);
        let values: Vec<Rational> = samples().map(|x| p.eval(&x)).collect();
        let sampled_nonpositive = values.iter().any(|v| !v.is_positive());
        let changes = values.windows(2).filter(|w| (w[0].is_positive() && w[1].is_negative()) || (w[0].is_negative() && w[1].is_positive())).count();
        prop_assert!(count_real_roots(&p) >= changes);
        match sturm_positive(&p).unwrap() {
            Positivity::StrictlyPositive => prop_assert!(!sampled_nonpositive),
            Positivity::NotStrictlyPositive { witness: Witness::Point(x) } => prop_assert!(!p.eval(&x).is_positive()),
            Positivity::NotStrictlyPositive { witness: Witness::Interval(lo, hi) } => {
                prop_assert!(lo < hi);
                prop_assert!(count_real_roots(&p) > 0);
            }
        }
    }
}

#[test]
fn oscillator_spectrum() {
    let w = Presentation::weyl();
    let h = parse_element(&w, "p^2 + q^2").unwrap();
    let m = rep_evaluate(&RepKind::Schroedinger { n: 128 }, &w, &h, 2).unwrap();
    let ev = sorted_eigenvalues(&m);
    for (k, lam) in ev.iter().take(20).enumerate() {
        assert!((lam - (2 * k + 1) as f64).abs() < 1e-6, "level {k}: {lam}");
    }
}

#[test]
fn schroedinger_commutator() {
    for n in [8, 32, 128] {
        let rep = build_representation(&RepKind::Schroedinger { n }).unwrap();
        let (p, q) = (&rep.matrices["p"], &rep.matrices["q"]);
        let c = p * q - q * p;
        // exact on all but the last basis vector
        for a in 0..n - 1 {
            for b in 0..n - 1 {
                let want = if a == b { Complex64::new(0.0, -1.0) } else { Complex64::new(0.0, 0.0) };
                assert!((c[(a, b)] - want).norm() < 1e-13, "N={n} ({a},{b}) = {}", c[(a, b)]);
            }
        }
    }
}

fn hermitian_weyl() -> impl Strategy<Value = Element> {
    let term = (0u32..=2, 0u32..=2, -3i64..=3, -3i64..=3);
    (prop::collection::vec(term.clone(), 1..=3), prop::collection::vec(term, 0..=2), -3i64..=3).prop_map(|(b, e, k)| {
        let w = Presentation::weyl();
        let mk = |ts: Vec<(u32, u32, i64, i64)>| {
            Element::from_terms(ts.into_iter().map(|(j, l, re, im)| (Monomial::new(j, l), Scalar::new(rat_int(re), rat_int(im)))))
        };
        let (b, e) = (mk(b), mk(e));
        w.mul(&w.star(&b), &b).add(&e).add(&w.star(&e)).add(&Element::term(Scalar::from_int(k), 0, 0))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn hyp2_matches_torsion_symbolic(c in hermitian_weyl()) {
        let w = Presentation::weyl();
        let hyp = hypothesis_ii_check(&w, &c);
        let first = torsion_spectral_check(&w, &c, TorsionWhich::First);
        let second = torsion_spectral_check(&w, &c, TorsionWhich::Second);
        match (hyp, first, second) {
            (Ok(h), Ok(f), Ok(s)) => {
                let gamma_positive = match &h {
                    ncpos::rep::Hyp2Outcome::Holds { edges } | ncpos::rep::Hyp2Outcome::Fails { edges, .. } => edges.gamma.is_positive(),
                };
                prop_assert_eq!(h.holds() && gamma_positive, f.symbolic && s.symbolic);
            }
            (Err(a), Err(b), Err(c)) => {
                prop_assert_eq!(&a, &b);
                prop_assert_eq!(&a, &c);
            }
            (h, f, s) => prop_assert!(false, "outcomes disagree: {:?} / {:?} / {:?}", h.is_ok(), f.is_ok(), s.is_ok()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn pi_rho_matches_mu_over_lambda(
        coeffs in prop::collection::vec(-5i64..=5, 1..=7),
        thetas in prop::collection::vec(-3.0f64..3.0, 1..=4),
    ) {
        let comm = Presentation::comm();
        let c = coeffs.iter().enumerate().fold(Element::zero(), |acc, (k, &x)| acc.add(&Element::term(Scalar::from_int(x), k as u32, 0)));
        // points of λ² + μ² = λ away from the torsion point, with x = μ/λ = tan(θ/2)
        let atoms: Vec<(f64, f64)> = thetas.iter().map(|t| ((1.0 + t.cos()) / 2.0, t.sin() / 2.0)).collect();
        let s = finite_rep_split_and_pi_rho(&RepKind::CommAtoms { atoms: atoms.clone() }, &comm, &c).unwrap();
        prop_assert!(s.torsion.is_empty());
        for (k, &(l, m)) in atoms.iter().enumerate() {
            let x = m / l;
            let direct = coeffs.iter().rev().fold(0.0, |acc, &a| acc * x + a as f64);
            let scale = coeffs.iter().enumerate().map(|(j, &a)| (a as f64 * x.powi(j as i32)).abs()).sum::<f64>().max(1.0);
            prop_assert!((s.pi_rho[k] - direct).abs() <= 1e-10 * scale, "x = {}: {} vs {}", x, s.pi_rho[k], direct);
        }
    }

    #[test]
    fn scalar_resolvent_identities(
        g in (-40i64..=40, 1i64..=9),
        a in (1i64..=60, 2i64..=9),
        b in (1i64..=40, 1i64..=9, any::<bool>()),
    ) {
        let gamma = rat(g.0, g.1);
        let alpha = rat_int(-1) - rat(a.0, a.1);
        prop_assume!(!alpha.is_integer());
        let beta = rat(if b.2 { b.0 } else { -b.0 }, b.1);
        let pres = Presentation::new(PresetKind::AxB, alpha.clone(), beta.clone()).unwrap();
        let r = resolvent_integrability_check(&RepKind::AxBScalar { gamma: gamma.clone() }, &pres).unwrap();
        prop_assert!(r.passed);
        // independent scalar oracle: x0 = 1/(γ − αi), x1 = 1/(γ − (α+1)i), y = 1/(−βi)
        let (gf, af, bf) = (rational_to_f64(&gamma), rational_to_f64(&alpha), rational_to_f64(&beta));
        let i = Complex64::i();
        let x0 = 1.0 / (gf - i * af);
        let x1 = 1.0 / (gf - i * (af + 1.0));
        let y = 1.0 / (-i * bf);
        let close = |l: Complex64, r: Complex64| (l - r).norm() <= 1e-12 * l.norm().max(r.norm()).max(1e-300);
        prop_assert!(close(x0 - x0.conj(), 2.0 * af * i * x0.conj() * x0));
        prop_assert!(close(y - y.conj(), 2.0 * bf * i * y.conj() * y));
        prop_assert!(close(x0 - x1, -i * x1 * x0));
        prop_assert!(close(x0 * y - y * x1, -bf * y * x1 * x0 * y));
    }
}
