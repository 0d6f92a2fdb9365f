use std::collections::BTreeMap;

use super::degree::MultiDegree;
use super::element::{Element, Monomial};
use super::presentation::Presentation;
use crate::error::{Error, Result};
use crate::poly::GaussPoly;
use crate::scalar::Scalar;

/// The three coefficient views of an element.
///
/// `f[n]` is a polynomial in the first generator with `e = Σ f_n(g1) g2^n`;
/// `g[k]` is a polynomial in the second generator with `e = Σ g_k(g2) g1^k`
/// (second generator written to the left).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PbwViews {
    pub gamma: BTreeMap<Monomial, Scalar>,
    pub f: BTreeMap<u32, GaussPoly>,
    pub g: BTreeMap<u32, GaussPoly>,
}

impl PbwViews {
    pub fn f_at(&self, n: u32) -> GaussPoly {
        self.f.get(&n).cloned().unwrap_or_default()
    }

    pub fn g_at(&self, k: u32) -> GaussPoly {
        self.g.get(&k).cloned().unwrap_or_default()
    }
}

pub fn pbw_views(pres: &Presentation, e: &Element) -> PbwViews {
    let gamma = e.terms().clone();
    let mut f: BTreeMap<u32, GaussPoly> = BTreeMap::new();
    for (m, s) in &gamma {
        f.entry(m.l).or_default().set(m.j as usize, s.clone());
    }
    let mut g: BTreeMap<u32, GaussPoly> = BTreeMap::new();
    for (m, s) in pres.to_second_left(e) {
        g.entry(m.j).or_default().set(m.l as usize, s);
    }
    PbwViews { gamma, f, g }
}

/// Writes `e = Σ b_i c_i` with `d(b_i) ≤ n` and `d(c_i) ≤ k`.
///
/// Each leading monomial `g1^j g2^l` is cut as `g1^{j1} g2^{l1} · g1^{j-j1} g2^{l-l1}`
/// with the left piece as large as `n` allows; the lower-order correction
/// produced by reordering is split again.
pub fn degree_split(pres: &Presentation, e: &Element, n: &MultiDegree, k: &MultiDegree) -> Result<Vec<(Element, Element)>> {
    if e.is_zero() {
        return Ok(Vec::new());
    }
    let bound = n + k;
    let d = pres.multidegree(e)?;
    if !d.le(&bound) {
        return Err(Error::DegreeTooLarge { got: d.to_string(), bound: bound.to_string() });
    }
    let (n1, n2) = (n.d1().max(0) as u32, n.d2().max(0) as u32);
    let mut rest = e.clone();
    let mut out = Vec::new();
    while let Some((m, coeff)) = rest.terms().iter().max_by_key(|(m, _)| (m.total(), m.j, m.l)).map(|(m, s)| (*m, s.clone())) {
        let (j1, l1) = (m.j.min(n1), m.l.min(n2));
        let b = Element::monomial(j1, l1);
        let c = Element::monomial(m.j - j1, m.l - l1);
        let prod = pres.mul(&b, &c).scale(&coeff);
        rest = rest.sub(&prod);
        out.push((b.scale(&coeff), c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weyl_c() -> (Presentation, Element) {
        let pres = Presentation::weyl();
        let c = Element::from_terms([
            (Monomial::new(2, 2), Scalar::one()),
            (Monomial::new(1, 1), Scalar::imag_int(2)),
            (Monomial::new(2, 0), Scalar::one()),
            (Monomial::new(0, 2), Scalar::one()),
        ]);
        (pres, c)
    }

    #[test]
    fn views_of_oscillator() {
        let pres = Presentation::weyl();
        let c = Element::from_terms([
            (Monomial::new(2, 0), Scalar::one()),
            (Monomial::new(0, 2), Scalar::one()),
            (Monomial::ONE, Scalar::one()),
        ]);
        let v = pbw_views(&pres, &c);
        let quad = GaussPoly::new(vec![Scalar::one(), Scalar::zero(), Scalar::one()]);
        assert_eq!(v.f_at(0), quad);
        assert_eq!(v.f_at(2), GaussPoly::new(vec![Scalar::one()]));
        assert_eq!(v.g_at(0), quad);
        assert_eq!(v.g_at(2), GaussPoly::new(vec![Scalar::one()]));
    }

    #[test]
    fn g_view_after_reordering() {
        let (pres, c) = weyl_c();
        let v = pbw_views(&pres, &c);
        let quad = GaussPoly::new(vec![Scalar::one(), Scalar::zero(), Scalar::one()]);
        assert_eq!(v.g_at(2), quad);
        assert_eq!(v.f_at(2), quad);
        // reassemble Σ g_k(q) p^k
        let mut back = Element::zero();
        for (k, poly) in &v.g {
            for (l, s) in poly.coeffs().iter().enumerate() {
                let t = pres.mul(&Element::monomial(0, l as u32), &Element::monomial(*k, 0));
                back = back.add(&t.scale(s));
            }
        }
        assert_eq!(back, c);
    }

    #[test]
    fn axb_views_of_ab() {
        let pres = Presentation::axb();
        let v = pbw_views(&pres, &Element::monomial(1, 1));
        assert_eq!(v.f_at(1), GaussPoly::new(vec![Scalar::zero(), Scalar::one()]));
        // ab = ba + i b
        assert_eq!(v.g_at(1), GaussPoly::new(vec![Scalar::zero(), Scalar::one()]));
        assert_eq!(v.g_at(0), GaussPoly::new(vec![Scalar::zero(), Scalar::i()]));
    }

    #[test]
    fn split_examples() {
        let pres = Presentation::weyl();
        let one = MultiDegree::new(1, 1);
        let got = degree_split(&pres, &Element::monomial(2, 2), &one, &one).unwrap();
        assert_eq!(
            got,
            vec![
                (Element::monomial(1, 1), Element::monomial(1, 1)),
                (Element::term(Scalar::imag_int(-1), 1, 1), Element::one())
            ]
        );
        let got = degree_split(&pres, &Element::one(), &one, &one).unwrap();
        assert_eq!(got, vec![(Element::one(), Element::one())]);
        let n = MultiDegree::new(1, 0);
        let got = degree_split(&pres, &Element::monomial(2, 0), &n, &n).unwrap();
        assert_eq!(got, vec![(Element::monomial(1, 0), Element::monomial(1, 0))]);
        assert!(matches!(
            degree_split(&pres, &Element::monomial(3, 0), &n, &n),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn split_recombines() {
        for pres in [Presentation::weyl(), Presentation::axb()] {
            let (_, c) = weyl_c();
            let n = MultiDegree::new(1, 2);
            let k = MultiDegree::new(1, 0);
            let parts = degree_split(&pres, &c, &n, &k).unwrap();
            let mut sum = Element::zero();
            for (b, cc) in &parts {
                if !b.is_zero() {
                    assert!(pres.multidegree(b).unwrap().le(&n));
                }
                assert!(pres.multidegree(cc).unwrap().le(&k));
                sum = sum.add(&pres.mul(b, cc));
            }
            assert_eq!(sum, c);
        }
    }
}
