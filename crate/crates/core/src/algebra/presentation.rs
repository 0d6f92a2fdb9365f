//! The three presented *-algebras and their PBW arithmetic.
//!
//! Every element is stored in the first-generator-left basis `g1^j g2^l`.
//! Products of basis monomials are reordered with closed formulas derived from
//! the single defining relation:
//!
//! * Weyl: `pq − qp = −i`, so `q^l p^j = Σ_k k!·C(l,k)·C(j,k)·i^k · p^{j−k} q^{l−k}`.
//! * ax+b: `ab − ba = ib`, so `b^l a^j = (a − l·i)^j b^l`.
//! * commutative: `x` alone, the second exponent is always zero.
//!
//! The word rewriting engine in [`super::rewrite`] reaches the same normal
//! forms by applying the relation one adjacent pair at a time.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::degree::MultiDegree;
use super::element::{Element, Monomial};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, rat, rat_int, Rational, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresetKind {
    Weyl,
    #[serde(rename = "axb")]
    AxB,
    #[serde(rename = "comm")]
    CommPoly,
}

impl PresetKind {
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "weyl" => Some(PresetKind::Weyl),
            "axb" | "ax+b" => Some(PresetKind::AxB),
            "comm" | "commpoly" | "commutative" => Some(PresetKind::CommPoly),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PresetKind::Weyl => "weyl",
            PresetKind::AxB => "axb",
            PresetKind::CommPoly => "comm",
        }
    }

    pub fn generators(&self) -> &'static [&'static str] {
        match self {
            PresetKind::Weyl => &["p", "q"],
            PresetKind::AxB => &["a", "b"],
            PresetKind::CommPoly => &["x"],
        }
    }
}

impl fmt::Display for PresetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A presented *-algebra with hermitian generators and its denominator parameters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Presentation {
    pub kind: PresetKind,
    pub alpha: Rational,
    pub beta: Rational,
}

/// Which PBW order a coefficient map refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    /// `g1^j g2^l`
    FirstLeft,
    /// `g2^l g1^j`
    SecondLeft,
}

pub(crate) fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `i^k`
fn i_pow(k: u32) -> Scalar {
    match k % 4 {
        0 => Scalar::from_int(1),
        1 => Scalar::imag_int(1),
        2 => Scalar::from_int(-1),
        _ => Scalar::imag_int(-1),
    }
}

impl Presentation {
    /// Validates the parameter constraints of the preset.
    pub fn new(kind: PresetKind, alpha: Rational, beta: Rational) -> Result<Self> {
        match kind {
            PresetKind::Weyl => {
                if alpha.is_zero() || beta.is_zero() {
                    return Err(Error::InvalidParameters("weyl requires alpha != 0 and beta != 0".into()));
                }
            }
            PresetKind::AxB => {
                if alpha >= rat_int(-1) || alpha.is_integer() {
                    return Err(Error::InvalidParameters(
                        "axb requires alpha < -1 and alpha not an integer".into(),
                    ));
                }
                if beta.is_zero() {
                    return Err(Error::InvalidParameters("axb requires beta != 0".into()));
                }
            }
            PresetKind::CommPoly => {}
        }
        Ok(Presentation { kind, alpha, beta })
    }

    /// Default parameters: Weyl `α = β = 1`, ax+b `α = −3/2, β = 1`.
    pub fn default_for(kind: PresetKind) -> Self {
        match kind {
            PresetKind::Weyl => Presentation { kind, alpha: rat_int(1), beta: rat_int(1) },
            PresetKind::AxB => Presentation { kind, alpha: rat(-3, 2), beta: rat_int(1) },
            PresetKind::CommPoly => Presentation { kind, alpha: rat_int(0), beta: rat_int(0) },
        }
    }

    pub fn weyl() -> Self {
        Self::default_for(PresetKind::Weyl)
    }

    pub fn axb() -> Self {
        Self::default_for(PresetKind::AxB)
    }

    pub fn comm() -> Self {
        Self::default_for(PresetKind::CommPoly)
    }

    pub fn generator_names(&self) -> &'static [&'static str] {
        self.kind.generators()
    }

    /// Generator by index (0 = first, 1 = second).
    pub fn generator(&self, idx: usize) -> Element {
        match idx {
            0 => Element::monomial(1, 0),
            _ => {
                assert!(self.kind != PresetKind::CommPoly, "commutative preset has one generator");
                Element::monomial(0, 1)
            }
        }
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names().iter().position(|g| *g == name)
    }

    pub fn describe_params(&self) -> String {
        format!("alpha={}, beta={}", format_rational(&self.alpha), format_rational(&self.beta))
    }

    /// Product of two basis monomials in first-left normal form.
    pub fn mul_monomials(&self, a: Monomial, b: Monomial) -> Element {
        match self.kind {
            PresetKind::CommPoly => Element::monomial(a.j + b.j, 0),
            PresetKind::Weyl => {
                // p^{j1} (q^{l1} p^{j2}) q^{l2}
                let kmax = a.l.min(b.j);
                Element::from_terms((0..=kmax).map(|k| {
                    let c = factorial(k) * binom(a.l, k) * binom(b.j, k);
                    let s = i_pow(k).scale(&Rational::from_integer(c));
                    (Monomial::new(a.j + b.j - k, a.l + b.l - k), s)
                }))
            }
            PresetKind::AxB => {
                // a^{j1} (a − l1·i)^{j2} b^{l1+l2}
                let shift = Scalar::imag_int(-(a.l as i64));
                Element::from_terms((0..=b.j).map(|r| {
                    let c = Scalar::real(Rational::from_integer(binom(b.j, r)));
                    (Monomial::new(a.j + r, a.l + b.l), &c * &shift.pow(b.j - r))
                }))
            }
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let coeff = ca * cb;
                for (m, s) in self.mul_monomials(*ma, *mb).into_terms() {
                    out.add_term(m, &s * &coeff);
                }
            }
        }
        out
    }

    pub fn mul_all<'a, I: IntoIterator<Item = &'a Element>>(&self, factors: I) -> Element {
        factors.into_iter().fold(Element::one(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, a: &Element, e: u32) -> Element {
        let mut acc = Element::one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// `[a, b] = ab − ba`
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// Involution: conjugate coefficients and reverse each monomial.
    ///
    /// `(γ p^j q^l)* = γ̄ q^l p^j`, which is then brought back to first-left order.
    pub fn star(&self, e: &Element) -> Element {
        let mut reversed = std::collections::BTreeMap::new();
        for (m, s) in e.terms() {
            reversed.insert(*m, s.conj());
        }
        self.from_order(&reversed, Order::SecondLeft)
    }

    pub fn is_hermitian(&self, e: &Element) -> bool {
        self.star(e) == *e
    }

    /// `d(e) = (max j, max l)`.
    pub fn multidegree(&self, e: &Element) -> Result<MultiDegree> {
        if e.is_zero() {
            return Err(Error::ZeroElement);
        }
        let d1 = e.terms().keys().map(|m| m.j).max().unwrap_or(0);
        let d2 = e.terms().keys().map(|m| m.l).max().unwrap_or(0);
        Ok(MultiDegree::new(d1 as i64, d2 as i64))
    }

    /// Rewrites a first-left element into second-left coefficients
    /// (`(j,l) ↦ coefficient of g2^l g1^j`).
    pub fn to_second_left(&self, e: &Element) -> std::collections::BTreeMap<Monomial, Scalar> {
        let mut out = Element::zero();
        for (m, s) in e.terms() {
            for (mm, c) in self.reorder_monomial(*m, Order::FirstLeft) {
                out.add_term(mm, &c * s);
            }
        }
        out.into_terms()
    }

    /// Converts coefficients given in `order` into a first-left element.
    pub fn from_order(&self, coeffs: &std::collections::BTreeMap<Monomial, Scalar>, order: Order) -> Element {
        match order {
            Order::FirstLeft => Element::from_terms(coeffs.iter().map(|(m, s)| (*m, s.clone()))),
            Order::SecondLeft => {
                let mut out = Element::zero();
                for (m, s) in coeffs {
                    for (mm, c) in self.reorder_monomial(*m, Order::SecondLeft) {
                        out.add_term(mm, &c * s);
                    }
                }
                out
            }
        }
    }

    /// Re-expresses a single monomial given in `from` order in the opposite order.
    fn reorder_monomial(&self, m: Monomial, from: Order) -> Vec<(Monomial, Scalar)> {
        match self.kind {
            PresetKind::CommPoly => vec![(m, Scalar::one())],
            PresetKind::Weyl => {
                // q^l p^j = Σ k! C(l,k) C(j,k) i^k p^{j−k} q^{l−k}; the other direction uses (−i)^k.
                (0..=m.j.min(m.l))
                    .map(|k| {
                        let c = Rational::from_integer(factorial(k) * binom(m.l, k) * binom(m.j, k));
                        let phase = match from {
                            Order::SecondLeft => i_pow(k),
                            Order::FirstLeft => i_pow(k).conj(),
                        };
                        (Monomial::new(m.j - k, m.l - k), phase.scale(&c))
                    })
                    .collect()
            }
            PresetKind::AxB => {
                // b^l a^j = (a − l i)^j b^l and a^j b^l = b^l (a + l i)^j
                let sign = match from {
                    Order::SecondLeft => -(m.l as i64),
                    Order::FirstLeft => m.l as i64,
                };
                let shift = Scalar::imag_int(sign);
                (0..=m.j)
                    .map(|r| {
                        let c = Scalar::real(Rational::from_integer(binom(m.j, r)));
                        (Monomial::new(r, m.l), &c * &shift.pow(m.j - r))
                    })
                    .collect()
            }
        }
    }

    /// Canonical text `Σ (re+im*i)*g1^j*g2^l`, terms sorted by `(j,l)`.
    pub fn element_to_text(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let names = self.generator_names();
        let parts: Vec<String> = e
            .terms()
            .iter()
            .map(|(m, s)| match self.kind {
                PresetKind::CommPoly => format!("{}*{}^{}", s.to_text(), names[0], m.j),
                _ => format!("{}*{}^{}*{}^{}", s.to_text(), names[0], m.j, names[1], m.l),
            })
            .collect();
        parts.join(" + ")
    }

    /// Human-oriented rendering (`p^2*q + 2i*p`), not guaranteed canonical.
    pub fn element_to_pretty(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let names = self.generator_names();
        let mut out = String::new();
        for (idx, (m, s)) in e.terms().iter().enumerate() {
            let mut factors = Vec::new();
            for (name, exp) in names.iter().zip([m.j, m.l]) {
                match exp {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{exp}")),
                }
            }
            let (neg, coeff) = pretty_coeff(s);
            let body = match (coeff.as_str(), factors.is_empty()) {
                (c, true) => c.to_string(),
                ("1", false) => factors.join("*"),
                (c, false) => format!("{c}*{}", factors.join("*")),
            };
            if idx == 0 {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

fn pretty_coeff(s: &Scalar) -> (bool, String) {
    if s.im.is_zero() {
        return (s.re.is_negative(), format_rational(&s.re.abs()));
    }
    if s.re.is_zero() {
        let mag = s.im.abs();
        let body = if mag.is_one() { "i".to_string() } else { format!("{}*i", format_rational(&mag)) };
        return (s.im.is_negative(), body);
    }
    (false, s.to_text())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Element {
        Element::monomial(1, 0)
    }
    fn q() -> Element {
        Element::monomial(0, 1)
    }

    #[test]
    fn weyl_relation() {
        let w = Presentation::weyl();
        // qp = pq + i
        let qp = w.mul(&q(), &p());
        let expect = Element::monomial(1, 1).add(&Element::scalar(Scalar::i()));
        assert_eq!(qp, expect);
        assert_eq!(w.commutator(&p(), &q()), Element::scalar(Scalar::imag_int(-1)));
    }

    #[test]
    fn weyl_q2_p() {
        let w = Presentation::weyl();
        let got = w.mul(&w.pow(&q(), 2), &p());
        let expect = Element::monomial(1, 2).add(&Element::term(Scalar::imag_int(2), 0, 1));
        assert_eq!(got, expect);
    }

    #[test]
    fn axb_relation() {
        let x = Presentation::axb();
        let a = Element::monomial(1, 0);
        let b = Element::monomial(0, 1);
        let ba = x.mul(&b, &a);
        let expect = Element::monomial(1, 1).add(&Element::term(Scalar::imag_int(-1), 0, 1));
        assert_eq!(ba, expect);
        assert_eq!(x.commutator(&a, &b), Element::term(Scalar::i(), 0, 1));
    }

    #[test]
    fn star_examples() {
        let w = Presentation::weyl();
        // star(pq) = qp = pq + i
        let expect = Element::monomial(1, 1).add(&Element::scalar(Scalar::i()));
        assert_eq!(w.star(&Element::monomial(1, 1)), expect);
        assert_eq!(w.star(&Element::scalar(Scalar::i())), Element::scalar(Scalar::imag_int(-1)));
        let c = Element::monomial(2, 0).add(&Element::monomial(0, 2)).add(&Element::one());
        assert!(w.is_hermitian(&c));
    }

    #[test]
    fn multidegree_examples() {
        let w = Presentation::weyl();
        let e = Element::monomial(2, 1).add(&q());
        assert_eq!(w.multidegree(&e).unwrap(), MultiDegree::new(2, 1));
        let prod = w.mul(&Element::monomial(2, 1), &Element::monomial(1, 2));
        let expect = Element::monomial(3, 3).add(&Element::term(Scalar::imag_int(2), 2, 2));
        // (p²q)(pq²) = p²(qp)q² = p²(pq + i)q²
        assert_eq!(prod, expect.sub(&Element::term(Scalar::i(), 2, 2)));
        assert_eq!(w.multidegree(&prod).unwrap(), MultiDegree::new(3, 3));
        assert_eq!(w.multidegree(&Element::one()).unwrap(), MultiDegree::new(0, 0));
        assert_eq!(w.multidegree(&Element::zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn second_left_roundtrip() {
        for pres in [Presentation::weyl(), Presentation::axb()] {
            let e = Element::from_terms([
                (Monomial::new(2, 2), Scalar::one()),
                (Monomial::new(1, 3), Scalar::imag_int(3)),
                (Monomial::new(0, 1), Scalar::from_int(-2)),
            ]);
            let opp = pres.to_second_left(&e);
            assert_eq!(pres.from_order(&opp, Order::SecondLeft), e);
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(Presentation::new(PresetKind::AxB, rat(-1, 2), rat_int(1)).is_err());
        assert!(Presentation::new(PresetKind::AxB, rat_int(-2), rat_int(1)).is_err());
        assert!(Presentation::new(PresetKind::AxB, rat(-5, 2), rat_int(0)).is_err());
        assert!(Presentation::new(PresetKind::Weyl, rat_int(0), rat_int(1)).is_err());
        assert!(Presentation::new(PresetKind::AxB, rat(-5, 2), rat(1, 3)).is_ok());
    }

    #[test]
    fn text_form_sorted() {
        let w = Presentation::weyl();
        let e = Element::monomial(0, 2).add(&Element::monomial(2, 0)).add(&Element::one());
        assert_eq!(w.element_to_text(&e), "(1+0*i)*p^0*q^0 + (1+0*i)*p^0*q^2 + (1+0*i)*p^2*q^0");
        assert_eq!(w.element_to_pretty(&e), "1 + q^2 + p^2");
    }
}
