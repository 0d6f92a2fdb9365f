use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// PBW monomial `g1^j · g2^l` (first generator to the left).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Monomial {
    pub j: u32,
    pub l: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { j: 0, l: 0 };

    pub fn new(j: u32, l: u32) -> Self {
        Monomial { j, l }
    }

    pub fn total(&self) -> u32 {
        self.j + self.l
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j, self.l)
    }
}

/// Finite linear combination of PBW monomials with nonzero exact coefficients.
///
/// Multiplication depends on the defining relation and lives on
/// [`Presentation`](crate::algebra::Presentation).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::scalar(Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Self {
        Element::term(s, 0, 0)
    }

    pub fn monomial(j: u32, l: u32) -> Self {
        Element::term(Scalar::one(), j, l)
    }

    pub fn term(s: Scalar, j: u32, l: u32) -> Self {
        let mut e = Element::zero();
        e.add_term(Monomial::new(j, l), s);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(terms: I) -> Self {
        let mut e = Element::zero();
        for (m, s) in terms {
            e.add_term(m, s);
        }
        e
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }

    pub fn coeff(&self, m: Monomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `s·m`, dropping the entry if the coefficient cancels.
    pub fn add_term(&mut self, m: Monomial, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &s;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, s) in &other.terms {
            out.add_term(*m, s.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, s) in &other.terms {
            out.add_term(*m, -s);
        }
        out
    }

    pub fn neg(&self) -> Element {
        Element { terms: self.terms.iter().map(|(m, s)| (*m, -s)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        if s.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    /// Constant term, if the element is a scalar multiple of 1.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    /// Maximal total degree `j + l` over the support.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total()).max()
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(m, s)| format!("{}*g1^{}*g2^{}", s.to_text(), m.j, m.l)).collect();
        f.write_str(&parts.join(" + "))
    }
}
