use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::scalar::{format_rational, rat, rat_int, rational_to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "decision")]
pub enum Positivity {
    StrictlyPositive,
    NotStrictlyPositive { witness: Witness },
}

impl Positivity {
    pub fn is_positive(&self) -> bool {
        matches!(self, Positivity::StrictlyPositive)
    }
}

/// Where the polynomial fails to be strictly positive.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `p(x) ≤ 0`
    Point(Rational),
    /// `(lo, hi]` contains a real root (possibly irrational, of even multiplicity)
    Interval(Rational, Rational),
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Witness::Point(x) => s.serialize_str(&format_rational(x)),
            Witness::Interval(a, b) => s.serialize_str(&format!("({}, {}]", format_rational(a), format_rational(b))),
        }
    }
}

/// Sturm chain `p, p', −rem(p, p'), …`.
pub fn sturm_sequence(p: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().is_none_or(|q| q.is_zero()) {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        seq.push(r.neg());
    }
    seq.pop();
    seq
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs.filter(|s| *s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn changes_at(seq: &[RatPoly], x: &Rational) -> usize {
    sign_changes(seq.iter().map(|q| sign(&q.eval(x))))
}

fn changes_at_infinity(seq: &[RatPoly], positive: bool) -> usize {
    sign_changes(seq.iter().map(|q| {
        let s = sign(&q.leading());
        let odd = q.degree().unwrap_or(0) % 2 == 1;
        if !positive && odd {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &RatPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(p);
    changes_at_infinity(&seq, false) - changes_at_infinity(&seq, true)
}

/// Isolating intervals `(lo, hi]` of width below `width`, one per distinct real root.
pub fn isolate_real_roots(p: &RatPoly, width: &Rational) -> Vec<(Rational, Rational)> {
    if p.is_zero() || p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(p);
    let b = p.cauchy_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = changes_at(&seq, &lo) - changes_at(&seq, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && &hi - &lo < *width {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / rat_int(2);
        if p.eval(&mid).is_zero() {
            // keep the root strictly inside a half-open piece
            let eps = width / rat_int(4);
            let (l2, h2) = (&mid - &eps, &mid + &eps);
            out.push((l2.clone(), h2.clone()));
            stack.push((lo, l2));
            stack.push((h2, hi));
            continue;
        }
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Decides `p > 0` on ℝ: no real roots and `p(0) > 0`.
pub fn sturm_positive(p: &RatPoly) -> Result<Positivity> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let zero = Rational::zero();
    if !p.eval(&zero).is_positive() {
        return Ok(Positivity::NotStrictlyPositive { witness: Witness::Point(zero) });
    }
    if count_real_roots(p) == 0 {
        return Ok(Positivity::StrictlyPositive);
    }
    // a real root exists; look for a rational point with p ≤ 0
    let width = rat(1, 1 << 20);
    let roots = isolate_real_roots(p, &width);
    for (lo, hi) in &roots {
        for x in [lo, hi, &((lo + hi) / rat_int(2))] {
            if !p.eval(x).is_positive() {
                return Ok(Positivity::NotStrictlyPositive { witness: Witness::Point(x.clone()) });
            }
        }
    }
    let (lo, hi) = roots.into_iter().next().ok_or_else(|| Error::Internal("root count and isolation disagree".into()))?;
    Ok(Positivity::NotStrictlyPositive { witness: Witness::Interval(lo, hi) })
}

/// Global minimum over ℝ from the critical points; `None` if unbounded below.
pub fn global_minimum(p: &RatPoly) -> Option<f64> {
    let d = p.degree()?;
    if d == 0 {
        return Some(rational_to_f64(&p.coeffs()[0]));
    }
    if d % 2 == 1 || p.leading().is_negative() {
        return None;
    }
    let dp = p.derivative();
    let width = rat(1, 1 << 40);
    let mut best = f64::INFINITY;
    for (lo, hi) in isolate_real_roots(&dp, &width) {
        let x = rational_to_f64(&((&lo + &hi) / rat_int(2)));
        best = best.min(p.eval_f64(x));
    }
    Some(best)
}
