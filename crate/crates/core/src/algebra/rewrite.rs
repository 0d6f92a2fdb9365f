//! Word rewriting with the single defining relation of each preset.
//!
//! Words are sequences of generator indices (0 = first, 1 = second). An
//! out-of-order adjacent pair is replaced by its reordered form plus the
//! correction term dictated by the relation. Each step either shortens the
//! word or removes one inversion, so rewriting terminates; the presets'
//! single-rule systems are confluent, so every strategy reaches the same
//! normal form.

use std::collections::BTreeMap;

use rand::Rng;

use super::element::{Element, Monomial};
use super::presentation::{Order, PresetKind, Presentation};
use crate::scalar::Scalar;

pub type Word = Vec<u8>;

/// Linear combination of words.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WordSum {
    pub terms: BTreeMap<Word, Scalar>,
}

impl WordSum {
    pub fn zero() -> Self {
        WordSum::default()
    }

    pub fn unit() -> Self {
        WordSum::single(Vec::new(), Scalar::one())
    }

    pub fn single(w: Word, s: Scalar) -> Self {
        let mut out = WordSum::zero();
        out.add(w, s);
        out
    }

    pub fn add(&mut self, w: Word, s: Scalar) {
        if s.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_default();
        *entry += &s;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn plus(&self, other: &WordSum) -> WordSum {
        let mut out = self.clone();
        for (w, s) in &other.terms {
            out.add(w.clone(), s.clone());
        }
        out
    }

    pub fn scaled(&self, c: &Scalar) -> WordSum {
        let mut out = WordSum::zero();
        for (w, s) in &self.terms {
            out.add(w.clone(), s * c);
        }
        out
    }

    /// Concatenation product (free algebra).
    pub fn times(&self, other: &WordSum) -> WordSum {
        let mut out = WordSum::zero();
        for (w1, s1) in &self.terms {
            for (w2, s2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add(w, s1 * s2);
            }
        }
        out
    }

    /// Reverse every word and conjugate coefficients (generators are hermitian).
    pub fn adjoint(&self) -> WordSum {
        let mut out = WordSum::zero();
        for (w, s) in &self.terms {
            let mut r = w.clone();
            r.reverse();
            out.add(r, s.conj());
        }
        out
    }

    pub fn from_element(e: &Element) -> WordSum {
        let mut out = WordSum::zero();
        for (m, s) in e.terms() {
            let mut w = vec![0u8; m.j as usize];
            w.extend(std::iter::repeat_n(1u8, m.l as usize));
            out.add(w, s.clone());
        }
        out
    }
}

/// Order in which out-of-order pairs are picked.
pub enum Strategy<'a, R: Rng> {
    /// Always the leftmost inversion of the first unreduced word.
    Leftmost,
    /// A random inversion of a random unreduced word.
    Random(&'a mut R),
}

/// Rewrites `sum` to exhaustion and returns the normal form in `order`.
pub fn reduce<R: Rng>(pres: &Presentation, sum: &WordSum, order: Order, mut strategy: Strategy<'_, R>) -> Element {
    let (left, right) = match order {
        Order::FirstLeft => (0u8, 1u8),
        Order::SecondLeft => (1u8, 0u8),
    };
    let mut pending: Vec<(Word, Scalar)> = sum.terms.iter().map(|(w, s)| (w.clone(), s.clone())).collect();
    let mut done: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    while !pending.is_empty() {
        let idx = match &mut strategy {
            Strategy::Leftmost => 0,
            Strategy::Random(rng) => rng.gen_range(0..pending.len()),
        };
        let (word, coeff) = pending.swap_remove(idx);
        let inversions: Vec<usize> =
            (0..word.len().saturating_sub(1)).filter(|&k| word[k] == right && word[k + 1] == left).collect();
        if inversions.is_empty() {
            let n_left = word.iter().filter(|&&g| g == left).count() as u32;
            let n_right = word.len() as u32 - n_left;
            let m = match order {
                Order::FirstLeft => Monomial::new(n_left, n_right),
                Order::SecondLeft => Monomial::new(n_right, n_left),
            };
            let e = done.entry(m).or_default();
            *e += &coeff;
            continue;
        }
        let k = match &mut strategy {
            Strategy::Leftmost => inversions[0],
            Strategy::Random(rng) => inversions[rng.gen_range(0..inversions.len())],
        };
        for (replacement, c) in swap_rule(pres.kind, order) {
            let mut w = word[..k].to_vec();
            w.extend_from_slice(&replacement);
            w.extend_from_slice(&word[k + 2..]);
            let s = &coeff * &c;
            if !s.is_zero() {
                pending.push((w, s));
            }
        }
    }
    // for SecondLeft the keys mean g2^l g1^j
    Element::from_terms(done)
}

/// Replacement for the out-of-order pair in the given target order.
fn swap_rule(kind: PresetKind, order: Order) -> Vec<(Word, Scalar)> {
    match (kind, order) {
        // qp → pq + i
        (PresetKind::Weyl, Order::FirstLeft) => vec![(vec![0, 1], Scalar::one()), (vec![], Scalar::i())],
        // pq → qp − i
        (PresetKind::Weyl, Order::SecondLeft) => vec![(vec![1, 0], Scalar::one()), (vec![], Scalar::imag_int(-1))],
        // ba → ab − i b
        (PresetKind::AxB, Order::FirstLeft) => vec![(vec![0, 1], Scalar::one()), (vec![1], Scalar::imag_int(-1))],
        // ab → ba + i b
        (PresetKind::AxB, Order::SecondLeft) => vec![(vec![1, 0], Scalar::one()), (vec![1], Scalar::i())],
        (PresetKind::CommPoly, Order::FirstLeft) => vec![(vec![0, 1], Scalar::one())],
        (PresetKind::CommPoly, Order::SecondLeft) => vec![(vec![1, 0], Scalar::one())],
    }
}

/// Leftmost-innermost normal form in the first-left order.
pub fn reduce_leftmost(pres: &Presentation, sum: &WordSum) -> Element {
    reduce::<rand::rngs::ThreadRng>(pres, sum, Order::FirstLeft, Strategy::Leftmost)
}
