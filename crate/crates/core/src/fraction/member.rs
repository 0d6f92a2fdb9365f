//! Membership in the subalgebra X generated by the resolvent atoms.

use std::collections::BTreeMap;
use std::fmt;

use super::atom::{AtomKind, DenomAtom, DenomWord};
use super::ore::{frac_add, frac_mul, Fraction};
use crate::algebra::{degree_split, Element, Monomial, MultiDegree, PresetKind, Presentation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Generator of X.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum XGen {
    /// `atom⁻¹`
    Inv(DenomAtom),
    /// `x·s⁻¹` in the commutative preset
    CommB,
}

impl XGen {
    pub fn fraction(&self) -> Fraction {
        match self {
            XGen::Inv(a) => Fraction::atom_inverse(*a),
            XGen::CommB => Fraction::new(Element::monomial(1, 0), DenomWord::single(DenomAtom::plain(AtomKind::S))),
        }
    }

    /// `(s⁻¹)* = (s*)⁻¹`; `b` is self-adjoint.
    pub fn adjoint(&self) -> XGen {
        match self {
            XGen::Inv(a) => XGen::Inv(a.adjoint()),
            XGen::CommB => XGen::CommB,
        }
    }

    pub fn name(&self) -> String {
        let (base, adj) = match self {
            XGen::CommB => return "b".into(),
            XGen::Inv(a) => (
                match a.kind {
                    AtomKind::P => "x".to_string(),
                    AtomKind::Q | AtomKind::B => "y".to_string(),
                    AtomKind::A(n) => format!("x[{n}]"),
                    AtomKind::S => "a".to_string(),
                },
                a.adjoint,
            ),
        };
        if adj {
            format!("{base}*")
        } else {
            base
        }
    }
}

/// Noncommutative polynomial in the generators of X.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct XPoly {
    pub terms: BTreeMap<Vec<XGen>, Scalar>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly::default()
    }

    pub fn scalar(s: Scalar) -> Self {
        XPoly::word(Vec::new(), s)
    }

    pub fn gen(g: XGen) -> Self {
        XPoly::word(vec![g], Scalar::one())
    }

    pub fn word(w: Vec<XGen>, s: Scalar) -> Self {
        let mut out = XPoly::zero();
        out.add_word(w, s);
        out
    }

    pub fn add_word(&mut self, w: Vec<XGen>, s: Scalar) {
        if s.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        *e += &s;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let mut out = self.clone();
        for (w, s) in &other.terms {
            out.add_word(w.clone(), s.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> XPoly {
        let mut out = XPoly::zero();
        for (w, s) in &self.terms {
            out.add_word(w.clone(), s * c);
        }
        out
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        let mut out = XPoly::zero();
        for (w1, s1) in &self.terms {
            for (w2, s2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_word(w, s1 * s2);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Involution: reverses words, adjoins generators and conjugates coefficients.
    pub fn star(&self) -> XPoly {
        let mut out = XPoly::zero();
        for (w, s) in &self.terms {
            out.add_word(w.iter().rev().map(|g| g.adjoint()).collect(), s.conj());
        }
        out
    }

    /// Evaluates back to a fraction, factoring out the last generator of each word.
    pub fn evaluate(&self, pres: &Presentation) -> Result<Fraction> {
        let mut by_last: BTreeMap<XGen, XPoly> = BTreeMap::new();
        let mut total = Fraction::zero();
        for (w, s) in &self.terms {
            match w.split_last() {
                None => total = Fraction::scalar(s.clone()),
                Some((g, rest)) => by_last.entry(*g).or_default().add_word(rest.to_vec(), s.clone()),
            }
        }
        for (g, inner) in by_last {
            let part = frac_mul(pres, &inner.evaluate(pres)?, &g.fraction())?;
            total = frac_add(pres, &total, &part)?;
        }
        Ok(total)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, s)| {
                if w.is_empty() {
                    s.to_text()
                } else {
                    let names: Vec<String> = w.iter().map(|g| g.name()).collect();
                    format!("{}*{}", s.to_text(), names.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    InX(XPoly),
    CriterionFailed { num_degree: MultiDegree, den_degree: MultiDegree },
}

/// Decides membership through the sufficient criterion `d(num) ≤ d(den)`.
///
/// On success the witness has been evaluated and compared with `f`.
pub fn membership_in_x(pres: &Presentation, f: &Fraction) -> Result<Membership> {
    f.check(pres)?;
    if f.is_zero() {
        return Ok(Membership::InX(XPoly::zero()));
    }
    let dn = pres.multidegree(&f.num)?;
    let dd = f.den.degree();
    if !dn.le(&dd) {
        return Ok(Membership::CriterionFailed { num_degree: dn, den_degree: dd });
    }
    let witness = witness(pres, &f.num, f.den.atoms())?;
    let back = witness.evaluate(pres)?;
    if !super::ore::frac_eq(pres, &back, f)? {
        return Err(Error::Internal(format!("membership witness {witness} does not evaluate back")));
    }
    Ok(Membership::InX(witness))
}

/// X-expression for `a · (w1⋯wk)⁻¹` assuming `d(a) ≤ d(w)`.
fn witness(pres: &Presentation, a: &Element, w: &[DenomAtom]) -> Result<XPoly> {
    if a.is_zero() {
        return Ok(XPoly::zero());
    }
    let Some((&s, t)) = w.split_last() else {
        return a
            .as_scalar()
            .map(XPoly::scalar)
            .ok_or_else(|| Error::Internal("degree bookkeeping left a non-scalar numerator".into()));
    };
    let ds = s.degree();
    let dt = DenomWord(t.to_vec()).degree();
    let mut out = XPoly::zero();
    for (b, c) in degree_split(pres, a, &ds, &dt)? {
        if s.is_shift_type() {
            // c s_n⁻¹ = s_{n±l}⁻¹ c for each monomial of c
            let AtomKind::A(n) = s.kind else { unreachable!() };
            for (m, coeff) in c.terms() {
                let k = if s.adjoint { n - m.l as i64 } else { n + m.l as i64 };
                let shifted = DenomAtom::new(AtomKind::A(k), s.adjoint);
                let left = block(pres, &b, shifted)?;
                let right = witness(pres, &Element::term(coeff.clone(), m.j, m.l), t)?;
                out = out.add(&left.mul(&right));
            }
        } else {
            // b c (t s)⁻¹ = b s⁻¹ (c t⁻¹ − [c, s](t s)⁻¹)
            let left = block(pres, &b, s)?;
            let se = s.element(pres);
            let comm = pres.mul(&c, &se).sub(&pres.mul(&se, &c));
            let mut inner = witness(pres, &c, t)?;
            if !comm.is_zero() {
                inner = inner.add(&witness(pres, &comm, w)?.scale(&Scalar::from_int(-1)));
            }
            out = out.add(&left.mul(&inner));
        }
    }
    Ok(out)
}

/// X-expression for `b s⁻¹` with `d(b) ≤ d(s)`.
fn block(pres: &Presentation, b: &Element, s: DenomAtom) -> Result<XPoly> {
    let inv = XPoly::gen(XGen::Inv(s));
    match s.kind {
        AtomKind::S => {
            // x s⁻¹ = b, x² s⁻¹ = 1 − a
            let c0 = b.coeff(Monomial::new(0, 0));
            let c1 = b.coeff(Monomial::new(1, 0));
            let c2 = b.coeff(Monomial::new(2, 0));
            Ok(XPoly::scalar(c2.clone()).add(&inv.scale(&(&c0 - &c2))).add(&XPoly::gen(XGen::CommB).scale(&c1)))
        }
        _ => {
            // g s⁻¹ = 1 + c s⁻¹ where s = g − c
            let g = s.generator();
            let (lam, mu) = if g == 0 {
                (b.coeff(Monomial::new(0, 0)), b.coeff(Monomial::new(1, 0)))
            } else {
                (b.coeff(Monomial::new(0, 0)), b.coeff(Monomial::new(0, 1)))
            };
            let rest = &lam + &(&mu * &s.shift(pres));
            Ok(XPoly::scalar(mu).add(&inv.scale(&rest)))
        }
    }
}

/// Generators of X for a preset, ax+b restricted to the shift window.
pub fn x_generators(kind: PresetKind, window: i64) -> Vec<XGen> {
    let mut out: Vec<XGen> = DenomAtom::all(kind, window).into_iter().map(XGen::Inv).collect();
    if kind == PresetKind::CommPoly {
        out.push(XGen::CommB);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness_of(pres: &Presentation, f: &Fraction) -> XPoly {
        match membership_in_x(pres, f).unwrap() {
            Membership::InX(w) => w,
            other => panic!("expected membership, got {other:?}"),
        }
    }

    #[test]
    fn weyl_examples() {
        let w = Presentation::weyl();
        let s2 = DenomAtom::plain(AtomKind::Q);
        let got = witness_of(&w, &Fraction::new(Element::monomial(0, 1), DenomWord::single(s2)));
        assert_eq!(got.to_string(), "(1+0*i) + (0+1*i)*y");
        let s1 = DenomAtom::plain(AtomKind::P);
        assert_eq!(witness_of(&w, &Fraction::atom_inverse(s1)).to_string(), "(1+0*i)*x");
        let fail = membership_in_x(&w, &Fraction::new(Element::monomial(2, 0), DenomWord::single(s1))).unwrap();
        assert!(matches!(fail, Membership::CriterionFailed { .. }));
    }

    #[test]
    fn mixed_words() {
        for kind in [PresetKind::Weyl, PresetKind::AxB, PresetKind::CommPoly] {
            let pres = Presentation::default_for(kind);
            let atoms = DenomAtom::all(kind, 1);
            for a in &atoms {
                for b in &atoms {
                    let w = DenomWord(vec![*a, *b]);
                    let d = w.degree();
                    // the full-degree numerator g1^{d1} g2^{d2}
                    let num = Element::monomial(d.d1() as u32, d.d2() as u32);
                    let f = Fraction::new(num, w);
                    witness_of(&pres, &f);
                }
            }
        }
    }
}
