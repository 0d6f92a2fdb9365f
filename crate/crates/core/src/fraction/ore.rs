use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::atom::{AtomKind, DenomAtom, DenomWord};
use crate::algebra::{Element, Monomial, MultiDegree, Presentation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Right fraction `num · den⁻¹`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Fraction {
    pub num: Element,
    pub den: DenomWord,
}

impl Fraction {
    pub fn new(num: Element, den: DenomWord) -> Self {
        Fraction { num, den }
    }

    pub fn from_element(e: Element) -> Self {
        Fraction { num: e, den: DenomWord::unit() }
    }

    pub fn scalar(s: Scalar) -> Self {
        Fraction::from_element(Element::scalar(s))
    }

    pub fn one() -> Self {
        Fraction::from_element(Element::one())
    }

    pub fn zero() -> Self {
        Fraction::from_element(Element::zero())
    }

    /// `w⁻¹`
    pub fn inverse_of(w: DenomWord) -> Self {
        Fraction { num: Element::one(), den: w }
    }

    pub fn atom_inverse(a: DenomAtom) -> Self {
        Fraction::inverse_of(DenomWord::single(a))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn check(&self, pres: &Presentation) -> Result<()> {
        self.den.check(pres)
    }

    /// `d(num) − d(den)`.
    pub fn multidegree(&self, pres: &Presentation) -> Result<MultiDegree> {
        Ok(&pres.multidegree(&self.num)? - &self.den.degree())
    }

    pub fn to_text(&self, pres: &Presentation) -> String {
        let num = pres.element_to_text(&self.num);
        if self.den.is_unit() {
            num
        } else {
            let den: Vec<String> = self
                .den
                .atoms()
                .iter()
                .map(|a| {
                    let t = a.to_string();
                    match t.strip_suffix('*') {
                        Some(base) => format!("adj({base})"),
                        None => t,
                    }
                })
                .collect();
            format!("({num}) * inv({})", den.join("*"))
        }
    }

    pub fn to_pretty(&self, pres: &Presentation) -> String {
        let num = pres.element_to_pretty(&self.num);
        if self.den.is_unit() {
            num
        } else {
            format!("({num}) * inv({})", self.den)
        }
    }
}

/// Serializable snapshot of a fraction.
#[derive(Serialize)]
pub struct FractionReport {
    pub numerator: String,
    pub denominator: String,
    pub text: String,
}

impl FractionReport {
    pub fn new(pres: &Presentation, f: &Fraction) -> Self {
        FractionReport { numerator: pres.element_to_text(&f.num), denominator: f.den.to_string(), text: f.to_text(pres) }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} * inv({})", self.num, self.den)
    }
}

/// Solves `s⁻¹ b = b' v⁻¹` for a single atom, returning `(b', v)`.
pub fn ore_atom(pres: &Presentation, s: DenomAtom, b: &Element) -> (Element, DenomWord) {
    if b.is_zero() {
        return (Element::zero(), DenomWord::unit());
    }
    let (out, v) = match s.kind {
        AtomKind::A(n) => ore_shift(pres, s, n, b),
        _ => ore_nilpotent(pres, s, b),
    };
    debug_assert_eq!(pres.mul(b, &v.element(pres)), pres.mul(&s.element(pres), &out));
    (out, v)
}

/// `s⁻¹ b = Σ_k D^k(b) s^{−(k+1)}` with `D(b) = b s − s b` nilpotent.
fn ore_nilpotent(pres: &Presentation, s: DenomAtom, b: &Element) -> (Element, DenomWord) {
    let se = s.element(pres);
    let mut chain = vec![b.clone()];
    loop {
        let last = chain.last().expect("nonempty");
        let next = pres.mul(last, &se).sub(&pres.mul(&se, last));
        if next.is_zero() {
            break;
        }
        chain.push(next);
    }
    let k_max = chain.len() - 1;
    let mut powers = vec![Element::one()];
    for _ in 0..k_max {
        let next = pres.mul(powers.last().expect("nonempty"), &se);
        powers.push(next);
    }
    let mut out = Element::zero();
    for (k, d) in chain.iter().enumerate() {
        out = out.add(&pres.mul(d, &powers[k_max - k]));
    }
    (out, DenomWord::power(s, k_max + 1))
}

/// `s_n⁻¹ f(a) b^l = f(a) b^l s_{n−l}⁻¹` and `(s_n*)⁻¹ f(a) b^l = f(a) b^l (s_{n+l}*)⁻¹`.
fn ore_shift(pres: &Presentation, s: DenomAtom, n: i64, b: &Element) -> (Element, DenomWord) {
    let mut by_l: BTreeMap<u32, Element> = BTreeMap::new();
    for (m, c) in b.terms() {
        by_l.entry(m.l).or_default().add_term(*m, c.clone());
    }
    let atom_for = |l: u32| {
        let k = if s.adjoint { n + l as i64 } else { n - l as i64 };
        DenomAtom::new(AtomKind::A(k), s.adjoint)
    };
    let atoms: Vec<DenomAtom> = by_l.keys().map(|&l| atom_for(l)).collect();
    let mut out = Element::zero();
    for (idx, part) in by_l.values().enumerate() {
        let mut t = part.clone();
        for (jdx, a) in atoms.iter().enumerate() {
            if jdx != idx {
                t = pres.mul(&t, &a.element(pres));
            }
        }
        out = out.add(&t);
    }
    (out, DenomWord(atoms))
}

/// Solves `w⁻¹ b = b' (w')⁻¹`.
pub fn ore_right(pres: &Presentation, w: &DenomWord, b: &Element) -> (Element, DenomWord) {
    let mut cur = b.clone();
    let mut den = DenomWord::unit();
    for a in w.atoms() {
        let (next, v) = ore_atom(pres, *a, &cur);
        cur = next;
        den = den.concat(&v);
    }
    (cur, den)
}

/// Checks `b · w' = w · b'` exactly.
pub fn verify_ore(pres: &Presentation, w: &DenomWord, b: &Element, b2: &Element, w2: &DenomWord) -> bool {
    pres.mul(b, &w2.element(pres)) == pres.mul(&w.element(pres), b2)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FracOp {
    Mul,
    Add,
    Sub,
    Star,
}

impl FracOp {
    pub fn parse(s: &str) -> Option<FracOp> {
        match s {
            "mul" => Some(FracOp::Mul),
            "add" => Some(FracOp::Add),
            "sub" => Some(FracOp::Sub),
            "star" => Some(FracOp::Star),
            _ => None,
        }
    }
}

pub fn frac_arith(pres: &Presentation, op: FracOp, f1: &Fraction, f2: Option<&Fraction>) -> Result<Fraction> {
    let second = || f2.ok_or_else(|| Error::Internal("binary fraction operation needs two operands".into()));
    match op {
        FracOp::Mul => frac_mul(pres, f1, second()?),
        FracOp::Add => frac_add(pres, f1, second()?),
        FracOp::Sub => frac_sub(pres, f1, second()?),
        FracOp::Star => frac_star(pres, f1),
    }
}

/// `(a w⁻¹)(b v⁻¹) = a b' (v w')⁻¹` where `w⁻¹ b = b' w'⁻¹`.
pub fn frac_mul(pres: &Presentation, f: &Fraction, g: &Fraction) -> Result<Fraction> {
    f.check(pres)?;
    g.check(pres)?;
    if f.is_zero() || g.is_zero() {
        return Ok(Fraction::zero());
    }
    let (b2, w2) = ore_right(pres, &f.den, &g.num);
    Ok(frac_reduce(pres, Fraction::new(pres.mul(&f.num, &b2), g.den.concat(&w2))))
}

/// `a w⁻¹ + b v⁻¹ = (a v' + b w')(v w')⁻¹` where `w⁻¹ v = v' w'⁻¹`.
pub fn frac_add(pres: &Presentation, f: &Fraction, g: &Fraction) -> Result<Fraction> {
    f.check(pres)?;
    g.check(pres)?;
    if f.is_zero() {
        return Ok(g.clone());
    }
    if g.is_zero() {
        return Ok(f.clone());
    }
    let (p, u, v) = f.den.common_left_factor(&g.den);
    // a (p u)⁻¹ + b (p v)⁻¹ = (a u⁻¹ + b v⁻¹) p⁻¹
    let (num, den) = if u.is_unit() {
        (g.num.add(&pres.mul(&f.num, &v.element(pres))), v)
    } else if v.is_unit() {
        (f.num.add(&pres.mul(&g.num, &u.element(pres))), u)
    } else {
        // u⁻¹ v = v' u'⁻¹ gives the common multiple v u' = u v'; ore against the smaller element
        let (ue, ve) = (u.element(pres), v.element(pres));
        if ve.len() <= ue.len() {
            let (v2, u2) = ore_right(pres, &u, &ve);
            (pres.mul(&f.num, &v2).add(&pres.mul(&g.num, &u2.element(pres))), v.concat(&u2))
        } else {
            let (u2, v2) = ore_right(pres, &v, &ue);
            (pres.mul(&g.num, &u2).add(&pres.mul(&f.num, &v2.element(pres))), u.concat(&v2))
        }
    };
    Ok(frac_reduce(pres, Fraction::new(num, p.concat(&den))))
}

/// Right division `a = quotient · s + remainder` with the remainder free of the atom's generator
/// (of degree below 2 for `x² + 1`).
pub fn right_divide(pres: &Presentation, a: &Element, s: DenomAtom) -> (Element, Element) {
    let se = s.element(pres);
    let mut rest = a.clone();
    let mut quot = Element::zero();
    let mut rem = Element::zero();
    while let Some((m, c)) = rest.terms().iter().max_by_key(|(m, _)| (m.total(), m.j, m.l)).map(|(m, c)| (*m, c.clone())) {
        let factor = match (s.kind, s.generator()) {
            (AtomKind::S, _) if m.j >= 2 => Some(Monomial::new(m.j - 2, 0)),
            (AtomKind::S, _) => None,
            (_, 0) if m.j >= 1 => Some(Monomial::new(m.j - 1, m.l)),
            (_, 1) if m.l >= 1 => Some(Monomial::new(m.j, m.l - 1)),
            _ => None,
        };
        match factor {
            Some(f) => {
                let t = Element::term(c, f.j, f.l);
                rest = rest.sub(&pres.mul(&t, &se));
                quot = quot.add(&t);
            }
            None => {
                let t = Element::term(c, m.j, m.l);
                rest = rest.sub(&t);
                rem = rem.add(&t);
            }
        }
    }
    (quot, rem)
}

/// Cancels atoms of the trailing commuting run that divide the numerator on the right.
pub fn frac_reduce(pres: &Presentation, f: Fraction) -> Fraction {
    if f.num.is_zero() {
        return Fraction::zero();
    }
    let mut num = f.num;
    let mut den = f.den.canonical();
    'outer: while let Some(last) = den.atoms().last() {
        let g = last.generator();
        let run = den.atoms().iter().rev().take_while(|a| a.generator() == g).count();
        let start = den.len() - run;
        let mut tried: Vec<DenomAtom> = Vec::new();
        for idx in start..den.len() {
            let s = den.atoms()[idx];
            if tried.contains(&s) {
                continue;
            }
            tried.push(s);
            let (q, r) = right_divide(pres, &num, s);
            if r.is_zero() {
                num = q;
                den.0.remove(idx);
                continue 'outer;
            }
        }
        break;
    }
    Fraction::new(num, den)
}

pub fn frac_neg(f: &Fraction) -> Fraction {
    Fraction::new(f.num.neg(), f.den.clone())
}

pub fn frac_scale(f: &Fraction, s: &Scalar) -> Fraction {
    Fraction::new(f.num.scale(s), f.den.clone())
}

pub fn frac_sub(pres: &Presentation, f: &Fraction, g: &Fraction) -> Result<Fraction> {
    frac_add(pres, f, &frac_neg(g))
}

/// `(a w⁻¹)* = (w*)⁻¹ a*`, rewritten as a right fraction.
pub fn frac_star(pres: &Presentation, f: &Fraction) -> Result<Fraction> {
    f.check(pres)?;
    let (num, den) = ore_right(pres, &f.den.adjoint(), &pres.star(&f.num));
    Ok(frac_reduce(pres, Fraction::new(num, den)))
}

/// Equality by cross-multiplication: the difference has a zero numerator.
pub fn frac_eq(pres: &Presentation, f: &Fraction, g: &Fraction) -> Result<bool> {
    Ok(frac_sub(pres, f, g)?.is_zero())
}

/// Product of fractions left to right.
pub fn frac_product<'a, I: IntoIterator<Item = &'a Fraction>>(pres: &Presentation, factors: I) -> Result<Fraction> {
    let mut acc = Fraction::one();
    for f in factors {
        acc = frac_mul(pres, &acc, f)?;
    }
    Ok(acc)
}

pub fn frac_pow(pres: &Presentation, f: &Fraction, e: u32) -> Result<Fraction> {
    let mut acc = Fraction::one();
    for _ in 0..e {
        acc = frac_mul(pres, &acc, f)?;
    }
    Ok(acc)
}
