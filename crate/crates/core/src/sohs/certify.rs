use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::gram::GramSystem;
use super::solver::{hermitian_eigen, min_eigenvalue, GramMatrix, Layout};
use crate::algebra::{Element, Monomial, Presentation};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, rat_int, Rational, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtractMode {
    Float,
    Rational,
}

impl ExtractMode {
    pub fn parse(s: &str) -> Option<ExtractMode> {
        match s {
            "float" => Some(ExtractMode::Float),
            "rational" => Some(ExtractMode::Rational),
            _ => None,
        }
    }
}

/// `weight · factor* factor` in the certificate sum.
#[derive(Clone, Debug, Serialize)]
pub struct CertFactor {
    pub weight: String,
    pub factor: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GramCertificate {
    pub mode: ExtractMode,
    pub basis: Vec<String>,
    pub factors: Vec<CertFactor>,
    #[serde(serialize_with = "ser_gram")]
    pub gram: GramMatrix,
    /// canonical text of the exact residual, or the float residual norm
    pub residual: String,
    pub residual_norm: f64,
    pub min_eig: f64,
    pub iterations: usize,
    pub valid: bool,
    #[serde(skip)]
    pub weighted: Vec<(Rational, Element)>,
    #[serde(skip)]
    pub float_factors: Vec<Vec<Complex64>>,
    #[serde(skip)]
    pub exact_residual: Option<Element>,
}

fn ser_gram<S: Serializer>(g: &GramMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<[f64; 2]>> = g.iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect();
    rows.serialize(s)
}

/// Float acceptance threshold `1e−6 (1 + ‖target‖)`.
pub fn float_tolerance(sys: &GramSystem) -> f64 {
    1e-6 * (1.0 + sys.target_norm())
}

/// Best rational approximation with denominator at most `max_den`, by continued fractions.
pub fn rationalize(x: f64, max_den: u64) -> Rational {
    if !x.is_finite() {
        return rat_int(0);
    }
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e18 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 {
        return rat_int(0);
    }
    Rational::new(BigInt::from(h1), BigInt::from(k1))
}

/// Exact affine solver in reduced row echelon form.
struct ExactAffine {
    /// `(pivot column, row over all columns, rhs)`
    pivots: Vec<(usize, Vec<Rational>, Rational)>,
    consistent: bool,
}

impl ExactAffine {
    fn new(mut rows: Vec<Vec<Rational>>, mut rhs: Vec<Rational>, ncols: usize) -> Self {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
            rows.swap(r, p);
            rhs.swap(r, p);
            let inv = Rational::from_integer(1.into()) / &rows[r][col];
            for v in rows[r].iter_mut() {
                *v = &*v * &inv;
            }
            rhs[r] = &rhs[r] * &inv;
            for i in 0..rows.len() {
                if i == r || rows[i][col].is_zero() {
                    continue;
                }
                let f = rows[i][col].clone();
                for k in 0..ncols {
                    if !rows[r][k].is_zero() {
                        let d = &f * &rows[r][k];
                        rows[i][k] -= d;
                    }
                }
                let d = &f * &rhs[r];
                rhs[i] -= d;
            }
            pivots.push(col);
            r += 1;
        }
        let consistent = rhs[r..].iter().all(|v| v.is_zero());
        let pivots = pivots.into_iter().enumerate().map(|(i, c)| (c, rows[i].clone(), rhs[i].clone())).collect();
        ExactAffine { pivots, consistent }
    }

    /// Keeps the free coordinates of `x` and solves for the pivot coordinates.
    fn correct(&self, x: &mut [Rational]) -> bool {
        if !self.consistent {
            return false;
        }
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|(c, _, _)| *c).collect();
        for (col, row, rhs) in &self.pivots {
            let mut v = rhs.clone();
            for (k, a) in row.iter().enumerate() {
                if k != *col && !a.is_zero() && !pivot_cols.contains(&k) {
                    v -= a * &x[k];
                }
            }
            x[*col] = v;
        }
        true
    }
}

/// Exact `G = L D L*` for a hermitian matrix; `None` if `G` is not PSD.
pub fn ldl_hermitian(g: &[Vec<Scalar>]) -> Option<(Vec<Vec<Scalar>>, Vec<Rational>)> {
    let n = g.len();
    let mut l = vec![vec![Scalar::zero(); n]; n];
    let mut d: Vec<Rational> = vec![rat_int(0); n];
    for k in 0..n {
        let mut dk = g[k][k].re.clone();
        for j in 0..k {
            dk -= &l[k][j].norm_sqr() * &d[j];
        }
        if dk.is_negative() {
            return None;
        }
        l[k][k] = Scalar::one();
        for i in k + 1..n {
            let mut v = g[i][k].clone();
            for j in 0..k {
                v -= &(&(&l[i][j] * &l[k][j].conj()) * &Scalar::real(d[j].clone()));
            }
            if dk.is_zero() {
                if !v.is_zero() {
                    return None;
                }
            } else {
                l[i][k] = v.scale(&(Rational::from_integer(1.into()) / &dk));
            }
        }
        d[k] = dk;
    }
    Some((l, d))
}

/// `target − Σ w_k b_k* b_k`, computed exactly.
pub fn verify_weighted(pres: &Presentation, target: &Element, factors: &[(Rational, Element)]) -> Element {
    let mut sum = Element::zero();
    for (w, b) in factors {
        sum = sum.add(&pres.mul(&pres.star(b), b).scale(&Scalar::real(w.clone())));
    }
    target.sub(&sum)
}

/// Residual norm of `target − Σ a_k* a_k` for factors given in basis coordinates.
pub fn verify_float_factors(sys: &GramSystem, factors: &[Vec<Complex64>]) -> f64 {
    sys.float_residual(&factors_gram(sys.len(), factors))
}

/// `G_uv = Σ_k conj(f_ku) f_kv`
fn factors_gram(n: usize, factors: &[Vec<Complex64>]) -> GramMatrix {
    let mut g = vec![vec![Complex64::zero(); n]; n];
    for f in factors {
        for u in 0..n {
            for v in 0..n {
                g[u][v] += f[u].conj() * f[v];
            }
        }
    }
    g
}

/// Gram matrix of a factor list, for feeding hand-made decompositions to [`extract_and_verify`].
pub fn gram_from_factors(sys: &GramSystem, factors: &[Vec<Complex64>]) -> GramMatrix {
    factors_gram(sys.len(), factors)
}

/// Basis coordinates of an element, or `None` if it leaves the span of the basis.
pub fn basis_coordinates(sys: &GramSystem, e: &Element) -> Option<Vec<Complex64>> {
    let mut out = vec![Complex64::zero(); sys.len()];
    for (m, s) in e.terms() {
        let k = sys.basis.iter().position(|b| b == m)?;
        out[k] = s.to_complex();
    }
    Some(out)
}

fn monomial_text(pres: &Presentation, m: Monomial) -> String {
    pres.element_to_pretty(&Element::monomial(m.j, m.l))
}

fn float_factor_text(pres: &Presentation, basis: &[Monomial], f: &[Complex64]) -> String {
    let names = pres.generator_names();
    let parts: Vec<String> = basis
        .iter()
        .zip(f)
        .filter(|(_, c)| c.norm() > 1e-14)
        .map(|(m, c)| {
            if pres.kind == crate::algebra::PresetKind::CommPoly {
                format!("({}+{}*i)*{}^{}", c.re, c.im, names[0], m.j)
            } else {
                format!("({}+{}*i)*{}^{}*{}^{}", c.re, c.im, names[0], m.j, names[1], m.l)
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Factors a PSD Gram matrix and verifies `target = Σ a_k* a_k`.
///
/// Rational mode rounds to small-denominator rationals, restores the coefficient
/// equations exactly and factors with an exact `LDL*`; the residual is then exact.
pub fn extract_and_verify(sys: &GramSystem, gram: &GramMatrix, mode: ExtractMode) -> Result<GramCertificate> {
    match mode {
        ExtractMode::Float => Ok(float_extract(sys, gram)),
        ExtractMode::Rational => rational_extract(sys, gram),
    }
}

fn float_extract(sys: &GramSystem, gram: &GramMatrix) -> GramCertificate {
    let n = sys.len();
    let (vals, vecs) = hermitian_eigen(gram);
    let mut factors = Vec::new();
    for (k, &lam) in vals.iter().enumerate() {
        if lam <= 1e-13 {
            continue;
        }
        let r = lam.sqrt();
        factors.push((0..n).map(|v| vecs[(v, k)].conj() * r).collect::<Vec<_>>());
    }
    let residual_norm = verify_float_factors(sys, &factors);
    let min_eig = min_eigenvalue(gram);
    let valid = min_eig >= -1e-8 && residual_norm <= float_tolerance(sys);
    GramCertificate {
        mode: ExtractMode::Float,
        basis: sys.basis.iter().map(|m| monomial_text(&sys.pres, *m)).collect(),
        factors: factors
            .iter()
            .map(|f| CertFactor { weight: "1".into(), factor: float_factor_text(&sys.pres, &sys.basis, f) })
            .collect(),
        gram: gram.clone(),
        residual: format!("{residual_norm:e}"),
        residual_norm,
        min_eig,
        iterations: 0,
        valid,
        weighted: Vec::new(),
        float_factors: factors,
        exact_residual: None,
    }
}

const DENOMINATOR_CAPS: [u64; 6] = [10, 100, 1_000, 10_000, 100_000, 1_000_000];

fn rational_extract(sys: &GramSystem, gram: &GramMatrix) -> Result<GramCertificate> {
    let layout = Layout::new(sys);
    let (rows, rhs) = layout.exact_rows(sys);
    let affine = ExactAffine::new(rows, rhs, layout.vars());
    let scale = gram.iter().enumerate().map(|(i, r)| r[i].re.abs()).fold(1.0, f64::max);
    let repaired = clip_eigenvalues(gram, 1e-7 * scale);
    for g in [gram, &repaired] {
        let x = layout.from_matrix(g);
        for cap in DENOMINATOR_CAPS {
            let mut xr: Vec<Rational> = x.iter().map(|v| rationalize(*v, cap)).collect();
            if !affine.correct(&mut xr) {
                return Err(Error::RoundingLostPSD);
            }
            if let Some(cert) = exact_certificate(sys, &layout, &xr) {
                return Ok(cert);
            }
        }
    }
    Err(Error::RoundingLostPSD)
}

fn clip_eigenvalues(g: &GramMatrix, floor: f64) -> GramMatrix {
    let n = g.len();
    if n == 0 {
        return g.clone();
    }
    let (vals, vecs) = hermitian_eigen(g);
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        vals.iter().map(|l| Complex64::new(l.max(floor), 0.0)),
    ));
    let m = &vecs * d * vecs.adjoint();
    (0..n).map(|a| (0..n).map(|b| m[(a, b)]).collect()).collect()
}

fn exact_certificate(sys: &GramSystem, layout: &Layout, x: &[Rational]) -> Option<GramCertificate> {
    let n = layout.n();
    let mut g = vec![vec![Scalar::zero(); n]; n];
    for a in 0..n {
        g[a][a] = Scalar::real(x[a].clone());
    }
    let mut k = n;
    for a in 0..n {
        for b in a + 1..n {
            g[a][b] = Scalar::new(x[k].clone(), x[k + 1].clone());
            g[b][a] = g[a][b].conj();
            k += 2;
        }
    }
    let (l, d) = ldl_hermitian(&g)?;
    let mut weighted = Vec::new();
    for col in 0..n {
        if d[col].is_zero() {
            continue;
        }
        let b = Element::from_terms((0..n).map(|v| {
            let m = sys.basis[layout.active[v]];
            (m, l[v][col].conj())
        }));
        weighted.push((d[col].clone(), b));
    }
    let residual = verify_weighted(&sys.pres, &sys.target, &weighted);
    let full = layout.to_matrix(&x.iter().map(crate::scalar::rational_to_f64).collect::<Vec<_>>());
    let min_eig = min_eigenvalue(&full);
    Some(GramCertificate {
        mode: ExtractMode::Rational,
        basis: sys.basis.iter().map(|m| monomial_text(&sys.pres, *m)).collect(),
        factors: weighted
            .iter()
            .map(|(w, b)| CertFactor { weight: format_rational(w), factor: sys.pres.element_to_text(b) })
            .collect(),
        gram: full,
        residual: sys.pres.element_to_text(&residual),
        residual_norm: if residual.is_zero() { 0.0 } else { f64::INFINITY },
        min_eig,
        iterations: 0,
        valid: residual.is_zero(),
        weighted,
        float_factors: Vec::new(),
        exact_residual: Some(residual),
    })
}
