use num_complex::Complex64;
use proptest::prelude::*;

use ncpos::algebra::{Element, Monomial, MultiDegree, Presentation, PresetKind};
use ncpos::expr::parse_element;
use ncpos::scalar::{rat_int, Scalar};
use ncpos::sohs::{
    assemble_gram_system, certify_target, ExtractMode, GramCertificate, PipelineResult, SolverOptions,
};

fn factor(kind: PresetKind) -> impl Strategy<Value = Element> {
    let second = if kind == PresetKind::CommPoly { 0u32 } else { 1 };
    prop::collection::vec((0u32..=1, 0..=second, -3i64..=3, -3i64..=3), 1..=3).prop_map(|ts| {
        Element::from_terms(ts.into_iter().map(|(j, l, re, im)| (Monomial::new(j, l), Scalar::new(rat_int(re), rat_int(im)))))
    })
}

/// `Σ b_k* b_k + k` with `k ≥ 1`
fn sos_target() -> impl Strategy<Value = (PresetKind, Element)> {
    prop_oneof![Just(PresetKind::Weyl), Just(PresetKind::AxB), Just(PresetKind::CommPoly)].prop_flat_map(|kind| {
        (prop::collection::vec(factor(kind), 1..=3), 1i64..=4).prop_map(move |(bs, k)| {
            let p = Presentation::default_for(kind);
            let sum = bs.iter().fold(Element::zero(), |acc, b| acc.add(&p.mul(&p.star(b), b)));
            (kind, sum.add(&Element::term(Scalar::from_int(k), 0, 0)))
        })
    })
}

fn certify(p: &Presentation, c: &Element, cap: &MultiDegree) -> Option<GramCertificate> {
    match certify_target(p, c, cap, &SolverOptions::default()).unwrap() {
        PipelineResult::Certified(cert) => Some(cert),
        PipelineResult::Infeasible(_) => None,
    }
}

/// Recomputes `c − Σ w b* b` with the ring product, independently of the library's own check.
fn exact_defect(p: &Presentation, c: &Element, cert: &GramCertificate) -> Element {
    let mut rest = c.clone();
    for (w, b) in &cert.weighted {
        let sq = p.mul(&p.star(b), b);
        rest = rest.sub(&sq.scale(&Scalar::real(w.clone())));
    }
    rest
}

/// `Σ_k a_k* a_k` from float factors given in basis coordinates, expanded monomial by monomial.
fn float_defect(p: &Presentation, c: &Element, cap: &MultiDegree, cert: &GramCertificate) -> f64 {
    let sys = assemble_gram_system(p, c, cap).unwrap();
    let mut total: std::collections::BTreeMap<Monomial, Complex64> = Default::default();
    for f in &cert.float_factors {
        for (u, fu) in sys.basis.iter().zip(f) {
            for (v, fv) in sys.basis.iter().zip(f) {
                let prod = p.mul(&p.star(&Element::monomial(u.j, u.l)), &Element::monomial(v.j, v.l));
                for (m, s) in prod.terms() {
                    *total.entry(*m).or_default() += fu.conj() * fv * s.to_complex();
                }
            }
        }
    }
    for (m, s) in c.terms() {
        *total.entry(*m).or_default() -= s.to_complex();
    }
    total.values().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn certificates_are_sound((kind, c) in sos_target()) {
        let p = Presentation::default_for(kind);
        let cap = MultiDegree::new(1, if kind == PresetKind::CommPoly { 0 } else { 1 });
        let cert = certify(&p, &c, &cap);
        prop_assert!(cert.is_some(), "no certificate for {}", p.element_to_text(&c));
        let cert = cert.unwrap();
        prop_assert!(cert.valid);
        match cert.mode {
            ExtractMode::Rational => {
                prop_assert!(exact_defect(&p, &c, &cert).is_zero());
                prop_assert!(cert.weighted.iter().all(|(w, _)| *w > rat_int(0)));
            }
            ExtractMode::Float => {
                let norm = c.terms().values().map(|s| s.to_complex().norm_sqr()).sum::<f64>().sqrt();
                prop_assert!(float_defect(&p, &c, &cap, &cert) <= 1e-6 * (1.0 + norm));
            }
        }
    }
}

#[test]
fn larger_caps_keep_certificates() {
    let cases = [
        (PresetKind::CommPoly, "x^2 + 1", [(1, 0), (2, 0)]),
        (PresetKind::CommPoly, "(x^2 - 1)^2", [(2, 0), (3, 0)]),
        (PresetKind::Weyl, "p^2 + q^2 + 1", [(1, 1), (2, 2)]),
    ];
    for (kind, text, caps) in cases {
        let p = Presentation::default_for(kind);
        let c = parse_element(&p, text).unwrap();
        for (d1, d2) in caps {
            let cert = certify(&p, &c, &MultiDegree::new(d1, d2)).unwrap_or_else(|| panic!("{text} at ({d1},{d2})"));
            if cert.mode == ExtractMode::Rational {
                assert!(exact_defect(&p, &c, &cert).is_zero(), "{text} at ({d1},{d2})");
            }
        }
    }
}

#[test]
fn negative_targets_are_rejected() {
    for (kind, text) in [(PresetKind::CommPoly, "x^2 - 1"), (PresetKind::CommPoly, "0 - x^4 - 1"), (PresetKind::Weyl, "p^2 + q^2 - 2")] {
        let p = Presentation::default_for(kind);
        let c = parse_element(&p, text).unwrap();
        let cap = p.multidegree(&c).unwrap().half_ceil();
        assert!(certify(&p, &c, &cap).is_none(), "{text}");
    }
}
