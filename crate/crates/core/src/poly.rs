//! Univariate polynomials with exact coefficients.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::scalar::{format_rational, Rational, Scalar};

/// Univariate polynomial over the Gaussian rationals, coefficients in increasing degree.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GaussPoly {
    coeffs: Vec<Scalar>,
}

impl GaussPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        GaussPoly { coeffs }
    }

    pub fn zero() -> Self {
        GaussPoly::default()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn set(&mut self, power: usize, c: Scalar) {
        if self.coeffs.len() <= power {
            self.coeffs.resize(power + 1, Scalar::zero());
        }
        self.coeffs[power] = c;
        *self = GaussPoly::new(std::mem::take(&mut self.coeffs));
    }

    /// `p(t + shift)` expanded exactly.
    pub fn shift(&self, shift: &Scalar) -> GaussPoly {
        // Horner in the shifted variable
        let mut acc: Vec<Scalar> = Vec::new();
        for c in self.coeffs.iter().rev() {
            // acc = acc·(t + shift) + c
            let mut next = vec![Scalar::zero(); acc.len() + 1];
            for (k, a) in acc.iter().enumerate() {
                next[k + 1] += a;
                next[k] += &(a * shift);
            }
            next[0] += c;
            acc = next;
        }
        GaussPoly::new(acc)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Real part view; `None` if any coefficient has an imaginary part.
    pub fn to_real(&self) -> Option<RatPoly> {
        if self.coeffs.iter().all(|c| c.is_real()) {
            Some(RatPoly::new(self.coeffs.iter().map(|c| c.re.clone()).collect()))
        } else {
            None
        }
    }

    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| format!("{}*{var}^{k}", c)).collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for GaussPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

/// Univariate polynomial over ℚ, coefficients in increasing degree.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        RatPoly::new(c.iter().map(|&v| crate::scalar::rat_int(v)).collect())
    }

    pub fn zero() -> Self {
        RatPoly::default()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let cs: Vec<f64> = self.coeffs.iter().map(crate::scalar::rational_to_f64).collect();
        cs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * crate::scalar::rat_int(k as i64)).collect(),
        )
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
                        - other.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        )
    }

    /// Euclidean division `(quotient, remainder)`; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] / &lead;
            let shift = top - dd;
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + k] -= &c * dc;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading();
        RatPoly::new(a.coeffs.iter().map(|c| c / &lead).collect())
    }

    /// Bound `1 + max |a_k / a_n|` on the absolute value of every real root.
    pub fn cauchy_bound(&self) -> Rational {
        let lead = self.leading().abs();
        let n = self.coeffs.len().saturating_sub(1);
        let m = self.coeffs[..n].iter().map(|c| c.abs() / &lead).fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + Rational::one()
    }

    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = format_rational(&mag);
            match (k, mag.is_one()) {
                (0, _) => out.push_str(&coeff),
                (1, true) => out.push_str(var),
                (1, false) => out.push_str(&format!("{coeff}*{var}")),
                (_, true) => out.push_str(&format!("{var}^{k}")),
                (_, false) => out.push_str(&format!("{coeff}*{var}^{k}")),
            }
        }
        out
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    #[test]
    fn shift_matches_evaluation() {
        let p = GaussPoly::new(vec![Scalar::from_int(1), Scalar::i(), Scalar::from_int(3)]);
        let s = Scalar::imag_int(2);
        let shifted = p.shift(&s);
        for t in -3..=3 {
            let t = Scalar::from_int(t);
            assert_eq!(shifted.eval(&t), p.eval(&(&t + &s)));
        }
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) and (x-1)^2
        let a = RatPoly::from_ints(&[-2, 1, 1]);
        let b = RatPoly::from_ints(&[1, -2, 1]);
        assert_eq!(a.gcd(&b), RatPoly::from_ints(&[-1, 1]));
        let (q, r) = a.div_rem(&RatPoly::from_ints(&[-1, 1]));
        assert_eq!(q, RatPoly::from_ints(&[2, 1]));
        assert!(r.is_zero());
        assert_eq!(a.eval(&rat_int(1)), rat_int(0));
        assert_eq!(a.to_text("x"), "x^2 + x - 2");
    }
}
