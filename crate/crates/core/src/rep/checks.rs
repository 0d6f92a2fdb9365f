use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::truncated::{build_representation, min_eig, rep_evaluate, CMatrix, RepKind};
use crate::algebra::{Element, Presentation};
use crate::error::{Error, Result};

pub const STABILIZATION: f64 = 0.05;

#[derive(Clone, Debug, Serialize)]
pub struct MinEigReport {
    pub value: f64,
    #[serde(rename = "N_sequence")]
    pub n_sequence: Vec<(usize, f64)>,
    pub stabilized: bool,
    pub margin: f64,
    pub margin_positive: bool,
}

/// Smallest eigenvalue of the truncated image of `c` for each size.
///
/// `margin_positive` needs the last two values to agree within 5% and to exceed the margin.
pub fn min_eig_check(
    kind: &RepKind,
    pres: &Presentation,
    c: &Element,
    margin: f64,
    sizes: &[usize],
    oversample: usize,
) -> Result<MinEigReport> {
    if !pres.is_hermitian(c) {
        return Err(Error::NotHermitian);
    }
    let mut sizes: Vec<usize> = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    if matches!(kind, RepKind::AxBScalar { .. } | RepKind::CommAtoms { .. }) {
        sizes = vec![kind.size()];
    }
    if sizes.is_empty() {
        return Err(Error::BadSize("empty size list".into()));
    }
    let n_sequence: Vec<(usize, f64)> = sizes
        .par_iter()
        .map(|&n| rep_evaluate(&kind.with_size(n), pres, c, oversample).map(|m| (n, min_eig(&m))))
        .collect::<Result<Vec<_>>>()?;
    let value = n_sequence.last().map(|x| x.1).unwrap_or(f64::NAN);
    let stabilized = match n_sequence.len() {
        0 | 1 => true,
        k => {
            let (a, b) = (n_sequence[k - 2].1, n_sequence[k - 1].1);
            (a - b).abs() <= STABILIZATION * a.abs().max(b.abs())
        }
    };
    Ok(MinEigReport { value, n_sequence, stabilized, margin, margin_positive: stabilized && value > margin })
}

/// Relative defect of `e^{iλP} e^{iμQ} = e^{iλμ} e^{iμQ} e^{iλP}` on the low-lying block of a Schrödinger truncation.
pub fn weyl_relation_smoke(n: usize, lambda: f64, mu: f64) -> Result<f64> {
    let rep = build_representation(&RepKind::Schroedinger { n })?;
    let i = Complex64::new(0.0, 1.0);
    let ep = (&rep.matrices["p"] * (i * lambda)).exp();
    let eq = (&rep.matrices["q"] * (i * mu)).exp();
    let lhs = &ep * &eq;
    let rhs = (&eq * &ep) * (i * lambda * mu).exp();
    let k = n / 4;
    let block = |m: &CMatrix| m.view((0, 0), (k, k)).into_owned();
    Ok((block(&lhs) - block(&rhs)).norm() / block(&lhs).norm())
}

/// Report envelope shared by the representation checks.
#[derive(Clone, Debug, Serialize)]
pub struct RepReport {
    pub check: String,
    pub preset: String,
    pub params: String,
    #[serde(rename = "N_sequence")]
    pub n_sequence: Vec<(usize, f64)>,
    pub residuals: BTreeMap<String, f64>,
    pub decision: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;

    #[test]
    fn oscillator_margin() {
        let w = Presentation::weyl();
        let c = parse_element(&w, "p^2 + q^2 + 1").unwrap();
        let r = min_eig_check(&RepKind::Schroedinger { n: 32 }, &w, &c, 0.5, &[32, 64, 128], 2).unwrap();
        assert!((r.value - 2.0).abs() < 1e-8);
        assert!(r.margin_positive);
        assert_eq!(r.n_sequence.len(), 3);
    }

    #[test]
    fn unbounded_and_unit() {
        let w = Presentation::weyl();
        let q = parse_element(&w, "q").unwrap();
        let r = min_eig_check(&RepKind::Schroedinger { n: 16 }, &w, &q, 0.0, &[16, 32], 2).unwrap();
        assert!(r.value < 0.0 && !r.margin_positive);
        let r = min_eig_check(&RepKind::Schroedinger { n: 8 }, &w, &Element::one(), 0.5, &[8], 1).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn weyl_exponentials() {
        let d = weyl_relation_smoke(128, 0.3, 0.5).unwrap();
        assert!(d < 5e-2, "defect {d}");
    }
}
