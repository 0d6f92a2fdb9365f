use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{Element, MultiDegree, PresetKind, Presentation};
use crate::error::{Error, Result};
use crate::scalar::{rat_int, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum AtomKind {
    /// `p − αi` (Weyl)
    P,
    /// `q − βi` (Weyl)
    Q,
    /// `a − (α+n)i` (ax+b)
    A(i64),
    /// `b − βi` (ax+b)
    B,
    /// `x² + 1` (commutative)
    S,
}

/// A generator of the denominator monoid, or its adjoint.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DenomAtom {
    pub kind: AtomKind,
    pub adjoint: bool,
}

impl DenomAtom {
    pub fn new(kind: AtomKind, adjoint: bool) -> Self {
        // x² + 1 is self-adjoint
        let adjoint = adjoint && kind != AtomKind::S;
        DenomAtom { kind, adjoint }
    }

    pub fn plain(kind: AtomKind) -> Self {
        DenomAtom::new(kind, false)
    }

    pub fn adjoint(&self) -> DenomAtom {
        DenomAtom::new(self.kind, !self.adjoint)
    }

    pub fn preset(&self) -> PresetKind {
        match self.kind {
            AtomKind::P | AtomKind::Q => PresetKind::Weyl,
            AtomKind::A(_) | AtomKind::B => PresetKind::AxB,
            AtomKind::S => PresetKind::CommPoly,
        }
    }

    pub fn check(&self, pres: &Presentation) -> Result<()> {
        if self.preset() == pres.kind {
            Ok(())
        } else {
            Err(Error::PresetMismatch)
        }
    }

    /// Index of the generator the atom is built from.
    pub fn generator(&self) -> usize {
        match self.kind {
            AtomKind::P | AtomKind::A(_) | AtomKind::S => 0,
            AtomKind::Q | AtomKind::B => 1,
        }
    }

    /// The constant `c` with `atom = g − c` for the linear atoms.
    pub fn shift(&self, pres: &Presentation) -> Scalar {
        let im = match self.kind {
            AtomKind::P => pres.alpha.clone(),
            AtomKind::Q | AtomKind::B => pres.beta.clone(),
            AtomKind::A(n) => &pres.alpha + rat_int(n),
            AtomKind::S => return Scalar::zero(),
        };
        let s = Scalar::imag(im);
        if self.adjoint {
            -s
        } else {
            s
        }
    }

    pub fn element(&self, pres: &Presentation) -> Element {
        match self.kind {
            AtomKind::S => Element::monomial(2, 0).add(&Element::one()),
            _ => pres.generator(self.generator()).sub(&Element::scalar(self.shift(pres))),
        }
    }

    pub fn degree(&self) -> MultiDegree {
        match self.kind {
            AtomKind::P | AtomKind::A(_) => MultiDegree::new(1, 0),
            AtomKind::Q | AtomKind::B => MultiDegree::new(0, 1),
            AtomKind::S => MultiDegree::new(2, 0),
        }
    }

    /// Atoms whose inverses pass `b` by shifting the index.
    pub fn is_shift_type(&self) -> bool {
        matches!(self.kind, AtomKind::A(_))
    }

    /// The generating atoms (with adjoints) of a preset; ax+b uses shifts in `[-window, window]`.
    pub fn all(kind: PresetKind, window: i64) -> Vec<DenomAtom> {
        match kind {
            PresetKind::Weyl => vec![
                DenomAtom::plain(AtomKind::P),
                DenomAtom::new(AtomKind::P, true),
                DenomAtom::plain(AtomKind::Q),
                DenomAtom::new(AtomKind::Q, true),
            ],
            PresetKind::AxB => {
                let mut out = vec![DenomAtom::plain(AtomKind::B), DenomAtom::new(AtomKind::B, true)];
                for n in shift_order(window) {
                    out.push(DenomAtom::plain(AtomKind::A(n)));
                    out.push(DenomAtom::new(AtomKind::A(n), true));
                }
                out
            }
            PresetKind::CommPoly => vec![DenomAtom::plain(AtomKind::S)],
        }
    }

    pub fn parse(text: &str, pres: &Presentation) -> Result<DenomAtom> {
        let t = text.trim();
        let (body, adjoint) = match t.strip_suffix('*') {
            Some(b) => (b.trim(), true),
            None => (t, false),
        };
        let kind = match (pres.kind, body) {
            (PresetKind::Weyl, "s1") => AtomKind::P,
            (PresetKind::Weyl, "s2") => AtomKind::Q,
            (PresetKind::AxB, "sb") => AtomKind::B,
            (PresetKind::CommPoly, "s") => AtomKind::S,
            (PresetKind::AxB, b) if b.starts_with("s[") && b.ends_with(']') => {
                let n = b[2..b.len() - 1].trim().parse::<i64>().map_err(|_| Error::BadInverse(t.to_string()))?;
                AtomKind::A(n)
            }
            _ => return Err(Error::BadInverse(t.to_string())),
        };
        Ok(DenomAtom::new(kind, adjoint))
    }
}

/// 0, 1, −1, 2, −2, ...
fn shift_order(window: i64) -> Vec<i64> {
    let mut out = vec![0];
    for k in 1..=window.max(0) {
        out.push(k);
        out.push(-k);
    }
    out
}

impl fmt::Display for DenomAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AtomKind::P => f.write_str("s1")?,
            AtomKind::Q => f.write_str("s2")?,
            AtomKind::A(n) => write!(f, "s[{n}]")?,
            AtomKind::B => f.write_str("sb")?,
            AtomKind::S => f.write_str("s")?,
        }
        if self.adjoint {
            f.write_str("*")?;
        }
        Ok(())
    }
}

impl Serialize for DenomAtom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Ordered product of atoms; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct DenomWord(pub Vec<DenomAtom>);

impl DenomWord {
    pub fn unit() -> Self {
        DenomWord(Vec::new())
    }

    pub fn single(a: DenomAtom) -> Self {
        DenomWord(vec![a])
    }

    pub fn atoms(&self) -> &[DenomAtom] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &DenomWord) -> DenomWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        DenomWord(v)
    }

    pub fn power(a: DenomAtom, k: usize) -> DenomWord {
        DenomWord(vec![a; k])
    }

    /// `(w1⋯wk)* = wk*⋯w1*`
    pub fn adjoint(&self) -> DenomWord {
        DenomWord(self.0.iter().rev().map(|a| a.adjoint()).collect())
    }

    pub fn element(&self, pres: &Presentation) -> Element {
        self.0.iter().fold(Element::one(), |acc, a| pres.mul(&acc, &a.element(pres)))
    }

    pub fn degree(&self) -> MultiDegree {
        self.0.iter().fold(MultiDegree::zeros(2), |acc, a| &acc + &a.degree())
    }

    pub fn check(&self, pres: &Presentation) -> Result<()> {
        self.0.iter().try_for_each(|a| a.check(pres))
    }

    /// Sorts each maximal run of atoms built from the same generator; such atoms commute,
    /// so the element is unchanged.
    pub fn canonical(mut self) -> DenomWord {
        let mut start = 0;
        while start < self.0.len() {
            let g = self.0[start].generator();
            let end = start + self.0[start..].iter().take_while(|a| a.generator() == g).count();
            self.0[start..end].sort();
            start = end;
        }
        self
    }

    /// Splits off the longest left factor shared by both words up to commuting atoms,
    /// returning `(p, u, v)` with `self = p u` and `other = p v` as elements.
    pub fn common_left_factor(&self, other: &DenomWord) -> (DenomWord, DenomWord, DenomWord) {
        let mut p = Vec::new();
        let (mut u, mut v) = (self.0.clone(), other.0.clone());
        while let (Some(a), Some(b)) = (u.first(), v.first()) {
            let g = a.generator();
            if b.generator() != g {
                break;
            }
            let ru = u.iter().take_while(|x| x.generator() == g).count();
            let rv = v.iter().take_while(|x| x.generator() == g).count();
            let mut run_v: Vec<DenomAtom> = v[..rv].to_vec();
            let mut rest_u = Vec::new();
            for x in &u[..ru] {
                if let Some(pos) = run_v.iter().position(|y| y == x) {
                    run_v.remove(pos);
                    p.push(*x);
                } else {
                    rest_u.push(*x);
                }
            }
            let done = !rest_u.is_empty() || !run_v.is_empty();
            rest_u.extend_from_slice(&u[ru..]);
            run_v.extend_from_slice(&v[rv..]);
            u = rest_u;
            v = run_v;
            if done {
                break;
            }
        }
        (DenomWord(p), DenomWord(u), DenomWord(v))
    }

    /// Parses atoms separated by whitespace or commas; `1` or an empty string is the unit word.
    pub fn parse(text: &str, pres: &Presentation) -> Result<DenomWord> {
        let t = text.trim();
        if t.is_empty() || t == "1" {
            return Ok(DenomWord::unit());
        }
        t.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|p| !p.is_empty())
            .map(|p| DenomAtom::parse(p, pres))
            .collect::<Result<Vec<_>>>()
            .map(DenomWord)
    }
}

impl fmt::Display for DenomWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for DenomWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_elements() {
        let w = Presentation::weyl();
        let s1 = DenomAtom::plain(AtomKind::P);
        assert_eq!(w.element_to_text(&s1.element(&w)), "(0-1*i)*p^0*q^0 + (1+0*i)*p^1*q^0");
        assert_eq!(s1.adjoint().element(&w), w.star(&s1.element(&w)));
        let x = Presentation::axb();
        for a in DenomAtom::all(PresetKind::AxB, 2) {
            assert_eq!(a.adjoint().element(&x), x.star(&a.element(&x)));
        }
    }

    #[test]
    fn word_parse_and_print() {
        let x = Presentation::axb();
        let w = DenomWord::parse("s[-1] sb*, s[2]*", &x).unwrap();
        assert_eq!(w.to_string(), "s[-1] sb* s[2]*");
        assert_eq!(w.adjoint().to_string(), "s[2] sb s[-1]*");
        assert_eq!(w.degree(), MultiDegree::new(2, 1));
        assert!(DenomWord::parse("s1", &x).is_err());
        assert_eq!(DenomWord::parse("1", &x).unwrap(), DenomWord::unit());
    }

    #[test]
    fn commuting_runs() {
        let w = Presentation::weyl();
        let word = DenomWord::parse("s1* s1 s2 s1* s2* s2", &w).unwrap();
        let c = word.clone().canonical();
        assert_eq!(c.to_string(), "s1 s1* s2 s1* s2 s2*");
        assert_eq!(c.element(&w), word.element(&w));
        let other = DenomWord::parse("s1* s1 s2 s1", &w).unwrap();
        let (p, u, v) = word.common_left_factor(&other);
        assert_eq!(p.to_string(), "s1* s1 s2");
        assert_eq!(p.concat(&u).element(&w), word.element(&w));
        assert_eq!(p.concat(&v).element(&w), other.element(&w));
    }
}
