use num_traits::{Signed, Zero};
use serde::Serialize;

use super::sturm::{sturm_positive, Positivity};
use crate::algebra::{pbw_views, Element, Monomial, Presentation, PresetKind};
use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::scalar::{rat_int, rational_to_f64, Rational, Scalar};

/// Corner coefficient and the two edge polynomials of an even-degree hermitian element.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeData {
    pub m1: u32,
    pub m2: u32,
    #[serde(serialize_with = "ser_rational")]
    pub gamma: Rational,
    /// `f_{2m₂}` in the first generator (shifted by `m₂ i` for ax+b)
    #[serde(serialize_with = "ser_poly")]
    pub f: RatPoly,
    /// `g_{2m₁}` in the second generator
    #[serde(serialize_with = "ser_poly")]
    pub g: RatPoly,
    pub f_text: String,
    pub g_text: String,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::scalar::format_rational(r))
}

fn ser_poly<S: serde::Serializer>(p: &RatPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_text("t"))
}

/// Extracts `γ_{2m₁,2m₂}`, `f_{2m₂}` and `g_{2m₁}`.
pub fn edge_data(pres: &Presentation, c: &Element) -> Result<EdgeData> {
    if pres.kind == PresetKind::CommPoly {
        return Err(Error::UnsupportedRepresentation("edge polynomials need a two-generator preset".into()));
    }
    if !pres.is_hermitian(c) {
        return Err(Error::NotHermitian);
    }
    let d = pres.multidegree(c)?;
    if d.d1() % 2 != 0 || d.d2() % 2 != 0 {
        return Err(Error::OddDegree(d.to_string()));
    }
    let (m1, m2) = ((d.d1() / 2) as u32, (d.d2() / 2) as u32);
    let views = pbw_views(pres, c);
    let corner = views.gamma.get(&Monomial::new(2 * m1, 2 * m2)).cloned().unwrap_or_else(Scalar::zero);
    if !corner.is_real() {
        return Err(Error::NonRealPolynomial(format!("corner coefficient {}", corner.to_text())));
    }
    let names = pres.generator_names();
    let f_raw = views.f_at(2 * m2);
    let f = match pres.kind {
        PresetKind::AxB => {
            let shifted = f_raw.shift(&Scalar::imag_int(m2 as i64));
            shifted.to_real().ok_or_else(|| Error::NonRealShiftedPolynomial(shifted.to_text(names[0])))?
        }
        _ => f_raw.to_real().ok_or_else(|| Error::NonRealPolynomial(f_raw.to_text(names[0])))?,
    };
    let g_raw = views.g_at(2 * m1);
    let g = g_raw.to_real().ok_or_else(|| Error::NonRealPolynomial(g_raw.to_text(names[1])))?;
    Ok(EdgeData { m1, m2, gamma: corner.re, f_text: f.to_text(names[0]), g_text: g.to_text(names[1]), f, g })
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "decision")]
pub enum Hyp2Outcome {
    Holds { edges: EdgeData },
    Fails { reason: String, edges: EdgeData },
}

impl Hyp2Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Hyp2Outcome::Holds { .. })
    }
}

fn positivity(p: &RatPoly) -> Result<Positivity> {
    if p.is_zero() {
        return Ok(Positivity::NotStrictlyPositive { witness: super::sturm::Witness::Point(rat_int(0)) });
    }
    sturm_positive(p)
}

/// Nonzero corner coefficient and strict positivity of both edge polynomials.
pub fn hypothesis_ii_check(pres: &Presentation, c: &Element) -> Result<Hyp2Outcome> {
    let edges = edge_data(pres, c)?;
    let (m1, m2) = (edges.m1, edges.m2);
    if edges.gamma.is_zero() {
        return Ok(Hyp2Outcome::Fails { reason: format!("gamma_{{{},{}}} = 0", 2 * m1, 2 * m2), edges });
    }
    let fname = if pres.kind == PresetKind::AxB { format!("f_{}(.+{}i)", 2 * m2, m2) } else { format!("f_{}", 2 * m2) };
    if !positivity(&edges.f)?.is_positive() {
        let reason = format!("{fname} = {} not strictly positive", edges.f_text);
        return Ok(Hyp2Outcome::Fails { reason, edges });
    }
    if !positivity(&edges.g)?.is_positive() {
        let reason = format!("g_{} = {} not strictly positive", 2 * m1, edges.g_text);
        return Ok(Hyp2Outcome::Fails { reason, edges });
    }
    Ok(Hyp2Outcome::Holds { edges })
}

/// Quotient used by the torsion check.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TorsionWhich {
    /// Weyl `p − αi`, ax+b `a − (α+n)i`: the spectral variable is the second generator
    First,
    /// Weyl `q − βi`, ax+b `b − βi`: the spectral variable is the first generator
    Second,
}

impl TorsionWhich {
    pub fn parse(s: &str) -> Option<TorsionWhich> {
        match s {
            "s1" | "s_n" | "sn" | "a" => Some(TorsionWhich::First),
            "s2" | "s" | "sb" | "b" => Some(TorsionWhich::Second),
            _ if s.starts_with("s[") => Some(TorsionWhich::First),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub which: TorsionWhich,
    pub positive: bool,
    /// exact decision: `γ > 0` and the edge polynomial strictly positive
    pub symbolic: bool,
    pub infimum: f64,
    pub argmin: Option<f64>,
    pub h_at_zero: f64,
    pub grid_points: usize,
    pub reason: Option<String>,
}

pub const TORSION_QMAX: f64 = 100.0;
pub const TORSION_POINTS: usize = 10_000;

/// Evaluates `h(t) = e(t) / (t² + δ²)^m` on a grid of the circle parameter, plus `h(0) = γ` at `y = 0`.
///
/// For the quotient by the first atom, `e = g_{2m₁}`, `δ = β`, `m = m₂`; for the second,
/// `e = f_{2m₂}` (shifted for ax+b), `δ = α`, `m = m₁`.
pub fn torsion_spectral_check(pres: &Presentation, c: &Element, which: TorsionWhich) -> Result<TorsionReport> {
    let edges = edge_data(pres, c)?;
    let (poly, delta, m, name) = match which {
        TorsionWhich::First => (&edges.g, rational_to_f64(&pres.beta), edges.m2, format!("g_{}", 2 * edges.m1)),
        TorsionWhich::Second => (&edges.f, rational_to_f64(&pres.alpha), edges.m1, format!("f_{}", 2 * edges.m2)),
    };
    let gamma = rational_to_f64(&edges.gamma);
    let mut infimum = gamma;
    let mut argmin = None;
    let step = 2.0 * TORSION_QMAX / (TORSION_POINTS as f64 - 1.0);
    for k in 0..TORSION_POINTS {
        let t = -TORSION_QMAX + k as f64 * step;
        let h = poly.eval_f64(t) / (t * t + delta * delta).powi(m as i32);
        if h < infimum {
            infimum = h;
            argmin = Some(t);
        }
    }
    let edge_positive = !poly.is_zero() && positivity(poly)?.is_positive();
    let symbolic = edges.gamma.is_positive() && edge_positive;
    let reason = if !edges.gamma.is_positive() {
        Some(format!("h(0) = gamma = {}", crate::scalar::format_rational(&edges.gamma)))
    } else if !edge_positive {
        Some(format!("{name} = {} not strictly positive", poly.to_text("t")))
    } else if infimum <= 0.0 {
        Some(format!("grid infimum {infimum:e}"))
    } else {
        None
    };
    Ok(TorsionReport {
        which,
        positive: symbolic && infimum > 0.0,
        symbolic,
        infimum,
        argmin,
        h_at_zero: gamma,
        grid_points: TORSION_POINTS + 1,
        reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;

    #[test]
    fn weyl_examples() {
        let w = Presentation::weyl();
        let good = parse_element(&w, "p^2*q^2 + 2*i*p*q + p^2 + q^2").unwrap();
        let out = hypothesis_ii_check(&w, &good).unwrap();
        let Hyp2Outcome::Holds { edges } = &out else { panic!("{out:?}") };
        assert_eq!(edges.gamma, rat_int(1));
        assert_eq!(edges.f, RatPoly::from_ints(&[1, 0, 1]));
        assert_eq!(edges.g, RatPoly::from_ints(&[1, 0, 1]));

        let osc = parse_element(&w, "p^2 + q^2 + 1").unwrap();
        let Hyp2Outcome::Fails { reason, .. } = hypothesis_ii_check(&w, &osc).unwrap() else { panic!() };
        assert!(reason.contains("gamma_{2,2} = 0"));

        let q2 = parse_element(&w, "q^2").unwrap();
        let Hyp2Outcome::Fails { reason, .. } = hypothesis_ii_check(&w, &q2).unwrap() else { panic!() };
        assert!(reason.starts_with("g_0"), "{reason}");
    }

    #[test]
    fn errors() {
        let w = Presentation::weyl();
        let q = parse_element(&w, "q").unwrap();
        assert!(matches!(hypothesis_ii_check(&w, &q), Err(Error::OddDegree(_))));
        let pq = parse_element(&w, "p*q").unwrap();
        assert_eq!(hypothesis_ii_check(&w, &pq).unwrap_err(), Error::NotHermitian);
    }

    #[test]
    fn torsion_examples() {
        let w = Presentation::weyl();
        let good = parse_element(&w, "p^2*q^2 + 2*i*p*q + p^2 + q^2").unwrap();
        let r = torsion_spectral_check(&w, &good, TorsionWhich::First).unwrap();
        assert!(r.positive && r.symbolic);
        assert!((r.infimum - 1.0).abs() < 1e-12 && r.h_at_zero == 1.0);
        let osc = parse_element(&w, "p^2 + q^2 + 1").unwrap();
        let r = torsion_spectral_check(&w, &osc, TorsionWhich::First).unwrap();
        assert!(!r.positive && r.h_at_zero == 0.0);
        let one = parse_element(&w, "3").unwrap();
        let r = torsion_spectral_check(&w, &one, TorsionWhich::Second).unwrap();
        assert!(r.positive && r.infimum == 3.0);
    }

    #[test]
    fn axb_shift() {
        let x = Presentation::axb();
        assert!(hypothesis_ii_check(&x, &parse_element(&x, "b^2 + 1").unwrap()).unwrap().holds());
        // f_2(a) = a² − 2ia + 1 is not real, but f_2(a + i) = a² + 2 is
        let c = parse_element(&x, "b*(a^2 + 1)*b + b^2 + a^2 + 1").unwrap();
        let edges = edge_data(&x, &c).unwrap();
        assert_eq!((edges.m1, edges.m2), (1, 1));
        assert_eq!(edges.f, RatPoly::from_ints(&[2, 0, 1]));
        assert!(hypothesis_ii_check(&x, &c).unwrap().holds());
        let r = torsion_spectral_check(&x, &c, TorsionWhich::Second).unwrap();
        assert!(r.symbolic);
    }
}
