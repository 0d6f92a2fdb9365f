use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{Element, Presentation, PresetKind};
use crate::error::{Error, Result};
use crate::scalar::{rational_to_f64, Rational};

pub type CMatrix = DMatrix<Complex64>;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum RepKind {
    /// Hermite-ladder truncation of `p = −i d/dt`, `q = t`
    Schroedinger { n: usize },
    /// `a = i d/dx` by central differences, `b = ±e^x` on `N` points of `[−L/2, L/2]`
    AxBGrid { n: usize, length: f64, positive: bool },
    /// `a = γ`, `b = 0`
    AxBScalar {
        #[serde(serialize_with = "ser_rational")]
        gamma: Rational,
    },
    /// diagonal `(λ, μ)` values of `(s⁻¹, x s⁻¹)` on the circle `λ² + μ² = λ`
    CommAtoms { atoms: Vec<(f64, f64)> },
}

impl RepKind {
    pub fn preset(&self) -> PresetKind {
        match self {
            RepKind::Schroedinger { .. } => PresetKind::Weyl,
            RepKind::AxBGrid { .. } | RepKind::AxBScalar { .. } => PresetKind::AxB,
            RepKind::CommAtoms { .. } => PresetKind::CommPoly,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RepKind::Schroedinger { .. } => "schroedinger",
            RepKind::AxBGrid { .. } => "axb-grid",
            RepKind::AxBScalar { .. } => "axb-scalar",
            RepKind::CommAtoms { .. } => "comm-atoms",
        }
    }

    /// Same family at a different size; fixed-size kinds are returned unchanged.
    pub fn with_size(&self, n: usize) -> RepKind {
        match self {
            RepKind::Schroedinger { .. } => RepKind::Schroedinger { n },
            RepKind::AxBGrid { length, positive, .. } => RepKind::AxBGrid { n, length: *length, positive: *positive },
            other => other.clone(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            RepKind::Schroedinger { n } | RepKind::AxBGrid { n, .. } => *n,
            RepKind::AxBScalar { .. } => 1,
            RepKind::CommAtoms { atoms } => atoms.len(),
        }
    }
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::scalar::format_rational(r))
}

#[derive(Clone, Debug)]
pub struct TruncatedRep {
    pub kind: RepKind,
    pub matrices: BTreeMap<String, CMatrix>,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Lowering operator `a|n⟩ = √n |n−1⟩`.
fn lowering(n: usize) -> CMatrix {
    let mut a = CMatrix::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = c((k as f64).sqrt());
    }
    a
}

/// Fourth-order central difference matrix with zero padding.
pub fn difference_matrix(n: usize, h: f64) -> DMatrix<f64> {
    let mut d = DMatrix::zeros(n, n);
    for j in 0..n {
        for (off, w) in [(-2i64, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)] {
            let k = j as i64 + off;
            if k >= 0 && (k as usize) < n {
                d[(j, k as usize)] = w / (12.0 * h);
            }
        }
    }
    d
}

/// Grid points `x_j = −L/2 + j h` with `h = L/(N−1)`.
pub fn grid_points(n: usize, length: f64) -> Vec<f64> {
    let h = length / (n as f64 - 1.0);
    (0..n).map(|j| -length / 2.0 + j as f64 * h).collect()
}

pub fn build_representation(kind: &RepKind) -> Result<TruncatedRep> {
    let mut matrices = BTreeMap::new();
    match kind {
        RepKind::Schroedinger { n } => {
            if *n < 2 {
                return Err(Error::BadSize(format!("N = {n}, need N >= 2")));
            }
            let a = lowering(*n);
            let ad = a.adjoint();
            let r = std::f64::consts::FRAC_1_SQRT_2;
            matrices.insert("q".to_string(), (&a + &ad) * c(r));
            matrices.insert("p".to_string(), (&ad - &a) * Complex64::new(0.0, r));
        }
        RepKind::AxBGrid { n, length, positive } => {
            if *n < 2 {
                return Err(Error::BadSize(format!("N = {n}, need N >= 2")));
            }
            if length.is_nan() || *length <= 0.0 {
                return Err(Error::BadSize(format!("L = {length}, need L > 0")));
            }
            let h = length / (*n as f64 - 1.0);
            let d = difference_matrix(*n, h);
            let sign = if *positive { 1.0 } else { -1.0 };
            let xs = grid_points(*n, *length);
            matrices.insert("a".to_string(), d.map(|v| Complex64::new(0.0, v)));
            matrices.insert(
                "b".to_string(),
                CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(*n, xs.iter().map(|x| c(sign * x.exp())))),
            );
        }
        RepKind::AxBScalar { gamma } => {
            matrices.insert("a".to_string(), CMatrix::from_element(1, 1, c(rational_to_f64(gamma))));
            matrices.insert("b".to_string(), CMatrix::zeros(1, 1));
        }
        RepKind::CommAtoms { atoms } => {
            if atoms.is_empty() {
                return Err(Error::BadSize("no atoms".into()));
            }
            for (l, m) in atoms {
                if (l * l + m * m - l).abs() > 1e-12 {
                    return Err(Error::InvalidParameters(format!("atom ({l}, {m}) is off the circle λ² + μ² = λ")));
                }
            }
            let n = atoms.len();
            let diag = |f: &dyn Fn(&(f64, f64)) -> f64| {
                CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, atoms.iter().map(|a| c(f(a)))))
            };
            matrices.insert("a".to_string(), diag(&|a| a.0));
            matrices.insert("b".to_string(), diag(&|a| a.1));
        }
    }
    Ok(TruncatedRep { kind: kind.clone(), matrices })
}

fn power(m: &CMatrix, e: u32) -> CMatrix {
    let mut out = CMatrix::identity(m.nrows(), m.ncols());
    for _ in 0..e {
        out = &out * m;
    }
    out
}

/// Image of `c` as `Σ γ_jl G1^j G2^l`; the Schrödinger family is built at `oversample·N` and cropped.
pub fn rep_evaluate(kind: &RepKind, pres: &Presentation, c: &Element, oversample: usize) -> Result<CMatrix> {
    if pres.kind != kind.preset() {
        return Err(Error::PresetMismatch);
    }
    let n = kind.size();
    if let Some(s) = c.as_scalar() {
        return Ok(CMatrix::identity(n, n) * s.to_complex());
    }
    let big = match kind {
        RepKind::Schroedinger { n } => kind.with_size(n * oversample.max(1)),
        RepKind::CommAtoms { atoms } => return comm_evaluate(atoms, c),
        other => other.clone(),
    };
    let rep = build_representation(&big)?;
    let names = pres.generator_names();
    let g1 = &rep.matrices[names[0]];
    let g2 = &rep.matrices[names[1]];
    let dim = g1.nrows();
    let mut out = CMatrix::zeros(dim, dim);
    let mut cache1: BTreeMap<u32, CMatrix> = BTreeMap::new();
    let mut cache2: BTreeMap<u32, CMatrix> = BTreeMap::new();
    for (m, s) in c.terms() {
        let p1 = cache1.entry(m.j).or_insert_with(|| power(g1, m.j)).clone();
        let p2 = cache2.entry(m.l).or_insert_with(|| power(g2, m.l));
        out += (p1 * &*p2) * s.to_complex();
    }
    Ok(out.view((0, 0), (n, n)).into_owned())
}

/// `c(μ/λ)` on atoms; requires every atom to be torsionfree.
fn comm_evaluate(atoms: &[(f64, f64)], c: &Element) -> Result<CMatrix> {
    if atoms.iter().any(|(l, _)| l.abs() < 1e-12) {
        return Err(Error::UnsupportedRepresentation(
            "x acts only on the torsionfree part; use the torsion split".into(),
        ));
    }
    let vals = atoms.iter().map(|(l, m)| {
        let x = m / l;
        c.terms().iter().map(|(mo, s)| s.to_complex() * x.powi(mo.j as i32)).sum::<Complex64>()
    });
    Ok(CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(atoms.len(), vals)))
}

/// Hermitian part `(M + M*)/2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * c(0.5)
}

/// Frobenius norm of the anti-hermitian part.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    (m - m.adjoint()).norm() / 2.0
}

pub fn min_eig(m: &CMatrix) -> f64 {
    hermitian_part(m).symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

pub fn sorted_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = hermitian_part(m).symmetric_eigenvalues().iter().cloned().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;
    use crate::scalar::rat_int;

    #[test]
    fn small_schroedinger() {
        let rep = build_representation(&RepKind::Schroedinger { n: 2 }).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let q = &rep.matrices["q"];
        assert!((q[(0, 1)] - c(r)).norm() < 1e-15 && (q[(1, 0)] - c(r)).norm() < 1e-15);
        assert!(q[(0, 0)].norm() < 1e-15);
    }

    #[test]
    fn commutator_on_interior_block() {
        let n = 40;
        let rep = build_representation(&RepKind::Schroedinger { n }).unwrap();
        let (p, q) = (&rep.matrices["p"], &rep.matrices["q"]);
        let defect = p * q - q * p + CMatrix::identity(n, n) * Complex64::new(0.0, 1.0);
        assert!(defect.view((0, 0), (n - 1, n - 1)).norm() < 1e-13);
    }

    #[test]
    fn oscillator_diagonal() {
        let w = Presentation::weyl();
        let c2 = parse_element(&w, "p^2 + q^2").unwrap();
        let m = rep_evaluate(&RepKind::Schroedinger { n: 64 }, &w, &c2, 2).unwrap();
        for k in 0..64 {
            assert!((m[(k, k)] - c(2.0 * k as f64 + 1.0)).norm() < 1e-9);
        }
        let ev = sorted_eigenvalues(&m);
        assert!((ev[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn scalar_and_unit() {
        let x = Presentation::axb();
        let f = parse_element(&x, "a^2 - 3*a + 1").unwrap();
        let kind = RepKind::AxBScalar { gamma: rat_int(2) };
        let m = rep_evaluate(&kind, &x, &f, 1).unwrap();
        assert!((m[(0, 0)] - c(-1.0)).norm() < 1e-15);
        let id = rep_evaluate(&RepKind::AxBGrid { n: 8, length: 4.0, positive: true }, &x, &Element::one(), 1).unwrap();
        assert_eq!(id, CMatrix::identity(8, 8));
        assert_eq!(rep_evaluate(&kind, &Presentation::weyl(), &Element::one(), 1).unwrap_err(), Error::PresetMismatch);
    }

    #[test]
    fn bad_sizes() {
        assert!(matches!(build_representation(&RepKind::Schroedinger { n: 1 }), Err(Error::BadSize(_))));
        let grid = RepKind::AxBGrid { n: 16, length: 0.0, positive: true };
        assert!(matches!(build_representation(&grid), Err(Error::BadSize(_))));
        let off = RepKind::CommAtoms { atoms: vec![(0.5, 0.6)] };
        assert!(build_representation(&off).is_err());
    }
}
