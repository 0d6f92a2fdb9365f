use serde::Serialize;

use super::truncated::{build_representation, RepKind};
use crate::algebra::{Element, Presentation, PresetKind};
use crate::error::{Error, Result};

const TORSION_EPS: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct TorsionSplit {
    /// atom indices with `λ = 0`, where `ρ(s⁻¹)` has a kernel
    pub torsion: Vec<usize>,
    pub torsionfree: Vec<usize>,
    /// degree `n` of the denominator `s^n` used for the fraction formula
    pub denominator_power: u32,
    /// diagonal of `π_ρ(c)` on the torsionfree block, from `ρ(c s⁻ⁿ) ρ(s⁻ⁿ)⁻¹`
    pub pi_rho: Vec<f64>,
    /// `c(μ/λ)` on the same block
    pub direct: Vec<f64>,
    pub max_deviation: f64,
    /// value of `c` with both generators sent to zero on the torsion block
    pub torsion_value: Option<f64>,
    pub note: Option<String>,
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `ρ(x^k s^{-n})` for one atom, with `x^{2m+r} s^{-n} = Σ_i C(m,i)(−1)^{m−i} x^r s^{i−n}`
/// and `s^{-1} ↦ λ`, `x s^{-1} ↦ μ`.
fn power_over_denominator(k: u32, n: u32, lambda: f64, mu: f64) -> f64 {
    let (m, r) = (k / 2, k % 2);
    (0..=m)
        .map(|i| {
            let sign = if (m - i) % 2 == 0 { 1.0 } else { -1.0 };
            let term = if r == 0 { lambda.powi((n - i) as i32) } else { mu * lambda.powi((n - i - 1) as i32) };
            binomial(m, i) * sign * term
        })
        .sum()
}

/// Splits a diagonal representation of the bounded generators into torsion and torsionfree parts
/// and evaluates `π_ρ(c)` on the torsionfree part.
pub fn finite_rep_split_and_pi_rho(kind: &RepKind, pres: &Presentation, c: &Element) -> Result<TorsionSplit> {
    let RepKind::CommAtoms { atoms } = kind else { return Err(Error::NotCommPreset) };
    if pres.kind != PresetKind::CommPoly {
        return Err(Error::NotCommPreset);
    }
    build_representation(kind)?;
    let (torsion, torsionfree): (Vec<usize>, Vec<usize>) = (0..atoms.len()).partition(|&i| atoms[i].0.abs() < TORSION_EPS);
    let deg = c.terms().keys().map(|m| m.j).max().unwrap_or(0);
    let n = deg.div_ceil(2).max(1);
    let coeff = |k: u32| c.coeff(crate::algebra::Monomial::new(k, 0));
    if c.terms().values().any(|s| !s.is_real()) {
        return Err(Error::NonRealPolynomial(pres.element_to_text(c)));
    }
    let mut pi_rho: Vec<f64> = Vec::new();
    let mut direct: Vec<f64> = Vec::new();
    for &i in &torsionfree {
        let (l, m) = atoms[i];
        let num: f64 = (0..=deg)
            .map(|k| crate::scalar::rational_to_f64(&coeff(k).re) * power_over_denominator(k, n, l, m))
            .sum();
        pi_rho.push(num / l.powi(n as i32));
        let x = m / l;
        direct.push(c.terms().iter().map(|(mo, s)| crate::scalar::rational_to_f64(&s.re) * x.powi(mo.j as i32)).sum());
    }
    let max_deviation = pi_rho.iter().zip(&direct).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let torsion_value = (!torsion.is_empty()).then(|| crate::scalar::rational_to_f64(&coeff(0).re));
    let note = torsionfree.is_empty().then(|| "torsionfree part is empty; pi_rho is undefined".to_string());
    Ok(TorsionSplit { torsion, torsionfree, denominator_power: n, pi_rho, direct, max_deviation, torsion_value, note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;

    #[test]
    fn circle_example() {
        let c = Presentation::comm();
        let x = parse_element(&c, "x").unwrap();
        let kind = RepKind::CommAtoms { atoms: vec![(0.0, 0.0), (0.5, 0.5)] };
        let s = finite_rep_split_and_pi_rho(&kind, &c, &x).unwrap();
        assert_eq!(s.torsion, vec![0]);
        assert_eq!(s.torsionfree, vec![1]);
        assert!((s.pi_rho[0] - 1.0).abs() < 1e-10);
        assert!(s.max_deviation < 1e-10);
    }

    #[test]
    fn origin_atom() {
        let c = Presentation::comm();
        let x = parse_element(&c, "x").unwrap();
        let s = finite_rep_split_and_pi_rho(&RepKind::CommAtoms { atoms: vec![(1.0, 0.0)] }, &c, &x).unwrap();
        assert_eq!(s.pi_rho, vec![0.0]);
    }

    #[test]
    fn torsion_only() {
        let c = Presentation::comm();
        let e = parse_element(&c, "x^3 + 2").unwrap();
        let s = finite_rep_split_and_pi_rho(&RepKind::CommAtoms { atoms: vec![(0.0, 0.0)] }, &c, &e).unwrap();
        assert!(s.torsionfree.is_empty() && s.note.is_some());
        assert_eq!(s.torsion_value, Some(2.0));
    }

    #[test]
    fn higher_powers() {
        // x = 2: λ = 1/5, μ = 2/5
        let c = Presentation::comm();
        let e = parse_element(&c, "x^5 - 3*x^2 + 1").unwrap();
        let s = finite_rep_split_and_pi_rho(&RepKind::CommAtoms { atoms: vec![(0.2, 0.4)] }, &c, &e).unwrap();
        assert!((s.pi_rho[0] - 21.0).abs() < 1e-10, "{:?}", s.pi_rho);
    }

    #[test]
    fn wrong_preset() {
        let w = Presentation::weyl();
        let kind = RepKind::CommAtoms { atoms: vec![(1.0, 0.0)] };
        assert_eq!(finite_rep_split_and_pi_rho(&kind, &w, &Element::one()).unwrap_err(), Error::NotCommPreset);
    }
}
