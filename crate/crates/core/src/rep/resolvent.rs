use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Signed;
use serde::Serialize;

use super::truncated::{build_representation, grid_points, CMatrix, RepKind};
use crate::algebra::{Presentation, PresetKind};
use crate::error::{Error, Result};
use crate::scalar::{rat_int, rational_to_f64};

pub const SCALAR_TOL: f64 = 1e-12;
pub const GRID_TOL: f64 = 1e-2;

#[derive(Clone, Debug, Serialize)]
pub struct ResolventReport {
    pub rep: String,
    /// relative residual per identity
    pub residuals: BTreeMap<String, f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub notes: Vec<String>,
}

fn rel(lhs: &CMatrix, rhs: &CMatrix) -> f64 {
    let scale = lhs.norm().max(rhs.norm());
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).norm() / scale
    }
}

fn inverse(m: CMatrix) -> Result<CMatrix> {
    let n = m.nrows();
    let lu = m.lu();
    let inv = lu.try_inverse().ok_or(Error::SingularResolvent)?;
    if inv.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) || n == 0 {
        return Err(Error::SingularResolvent);
    }
    Ok(inv)
}

/// Resolvent identities of `x₀ = (A−αi)⁻¹`, `x₁ = (A−(α+1)i)⁻¹`, `y = (B−βi)⁻¹` and the relation `AB − BA = iB`.
pub fn resolvent_integrability_check(kind: &RepKind, pres: &Presentation) -> Result<ResolventReport> {
    if pres.kind != PresetKind::AxB || kind.preset() != PresetKind::AxB {
        return Err(Error::UnsupportedRepresentation(format!("{} is not an ax+b representation", kind.name())));
    }
    if pres.alpha >= rat_int(-1) {
        return Err(Error::InvalidParameters("resolvent checks need alpha < -1".into()));
    }
    if pres.beta.abs() == rat_int(0) {
        return Err(Error::InvalidParameters("resolvent checks need beta != 0".into()));
    }
    let rep = build_representation(kind)?;
    let (a, b) = (&rep.matrices["a"], &rep.matrices["b"]);
    let n = a.nrows();
    let id = CMatrix::identity(n, n);
    let i = Complex64::new(0.0, 1.0);
    let (alpha, beta) = (rational_to_f64(&pres.alpha), rational_to_f64(&pres.beta));
    let x0 = inverse(a - &id * (i * alpha))?;
    let x1 = inverse(a - &id * (i * (alpha + 1.0)))?;
    let y = inverse(b - &id * (i * beta))?;
    let (x0s, ys) = (x0.adjoint(), y.adjoint());

    let mut residuals = BTreeMap::new();
    let mut put = |k: &str, v: f64| {
        residuals.insert(k.to_string(), v);
    };
    put("x0 - x0* = 2ai x0* x0", rel(&(&x0 - &x0s), &(&x0s * &x0 * (i * 2.0 * alpha))));
    put("x0 - x0* = 2ai x0 x0*", rel(&(&x0 - &x0s), &(&x0 * &x0s * (i * 2.0 * alpha))));
    put("y - y* = 2bi y* y", rel(&(&y - &ys), &(&ys * &y * (i * 2.0 * beta))));
    put("y - y* = 2bi y y*", rel(&(&y - &ys), &(&y * &ys * (i * 2.0 * beta))));
    put("x0 - x1 = -i x1 x0", rel(&(&x0 - &x1), &(&x1 * &x0 * -i)));
    put("x0 - x1 = -i x0 x1", rel(&(&x0 - &x1), &(&x0 * &x1 * -i)));
    put("x0 y - y x1 = -b y x1 x0 y", rel(&(&x0 * &y - &y * &x1), &(&y * &x1 * &x0 * &y * Complex64::new(-beta, 0.0))));

    let mut notes = vec!["density of (B - bi)(A - ai)D is not checkable numerically".to_string()];
    let (tolerance, passed) = match kind {
        RepKind::AxBGrid { n, length, .. } => {
            // smooth test vector: Gaussian centred at 0 with full width at half maximum L/6
            let sigma = length / (6.0 * (8.0 * std::f64::consts::LN_2).sqrt());
            let phi = nalgebra::DVector::from_iterator(
                *n,
                grid_points(*n, *length).into_iter().map(|x| Complex64::new((-x * x / (2.0 * sigma * sigma)).exp(), 0.0)),
            );
            let bphi = b * &phi;
            let lhs = a * &bphi - b * (a * &phi);
            let rhs = &bphi * i;
            let r = (&lhs - &rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE);
            put("AB phi - BA phi = iB phi", r);
            notes.push("the truncated grid satisfies the resolvent product identity only approximately".into());
            let exact = ["x0 - x0* = 2ai x0* x0", "x0 - x0* = 2ai x0 x0*", "y - y* = 2bi y* y", "y - y* = 2bi y y*", "x0 - x1 = -i x1 x0", "x0 - x1 = -i x0 x1"];
            let ok = exact.iter().all(|k| residuals[*k] < 1e-9) && r < GRID_TOL;
            (GRID_TOL, ok)
        }
        _ => {
            let lhs = a * b - b * a;
            let rhs = b * i;
            put("AB - BA = iB", rel(&lhs, &rhs));
            (SCALAR_TOL, residuals.values().all(|v| *v < SCALAR_TOL))
        }
    };
    Ok(ResolventReport { rep: kind.name().to_string(), residuals, tolerance, passed, notes })
}
