use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use super::gram::GramSystem;
use crate::scalar::{rational_to_f64, Rational, Scalar};

pub type GramMatrix = Vec<Vec<Complex64>>;

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_ITER: usize = 20_000;

/// Real coordinates of a hermitian matrix over the active basis.
///
/// Diagonal entries are one coordinate each; an off-diagonal pair `a < b`
/// contributes `Re G_ab` and `Im G_ab`.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub active: Vec<usize>,
    pub full: usize,
}

impl Layout {
    pub fn new(sys: &GramSystem) -> Self {
        Layout { active: sys.active_indices(), full: sys.len() }
    }

    pub fn n(&self) -> usize {
        self.active.len()
    }

    pub fn vars(&self) -> usize {
        self.n() * self.n()
    }

    /// Position of `a` in the active list.
    fn local(&self, a: usize) -> Option<usize> {
        self.active.iter().position(|&x| x == a)
    }

    fn off_index(&self, a: usize, b: usize) -> usize {
        // pairs (a, b), a < b, listed row by row after the diagonal
        let n = self.n();
        let before: usize = (0..a).map(|r| n - r - 1).sum();
        n + 2 * (before + (b - a - 1))
    }

    /// Exact rows in unscaled coordinates, split into real and imaginary parts.
    pub fn exact_rows(&self, sys: &GramSystem) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let nv = self.vars();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for con in &sys.constraints {
            let mut coef = vec![Scalar::zero(); nv];
            for (a, b, s) in &con.entries {
                let (Some(la), Some(lb)) = (self.local(*a), self.local(*b)) else { continue };
                if la == lb {
                    coef[la] += s;
                } else {
                    let (lo, hi, sign) = if la < lb { (la, lb, 1) } else { (lb, la, -1) };
                    let k = self.off_index(lo, hi);
                    coef[k] += s;
                    coef[k + 1] += &(s * &Scalar::imag_int(sign));
                }
            }
            rows.push(coef.iter().map(|c| c.re.clone()).collect());
            rhs.push(con.rhs.re.clone());
            rows.push(coef.iter().map(|c| c.im.clone()).collect());
            rhs.push(con.rhs.im.clone());
        }
        (rows, rhs)
    }

    /// Unscaled coordinates to a full hermitian matrix (zeros on inactive entries).
    pub fn to_matrix(&self, x: &[f64]) -> GramMatrix {
        let mut g = vec![vec![Complex64::zero(); self.full]; self.full];
        let n = self.n();
        for la in 0..n {
            let a = self.active[la];
            g[a][a] = Complex64::new(x[la], 0.0);
            for lb in la + 1..n {
                let b = self.active[lb];
                let k = self.off_index(la, lb);
                g[a][b] = Complex64::new(x[k], x[k + 1]);
                g[b][a] = g[a][b].conj();
            }
        }
        g
    }

    /// Full matrix to unscaled coordinates, ignoring inactive entries.
    pub fn from_matrix(&self, g: &GramMatrix) -> Vec<f64> {
        let n = self.n();
        let mut x = vec![0.0; self.vars()];
        for la in 0..n {
            let a = self.active[la];
            x[la] = g[a][a].re;
            for lb in la + 1..n {
                let b = self.active[lb];
                let k = self.off_index(la, lb);
                let v = (g[a][b] + g[b][a].conj()) * 0.5;
                x[k] = v.re;
                x[k + 1] = v.im;
            }
        }
        x
    }

    /// Scale factors turning unscaled coordinates into Frobenius-orthonormal ones.
    fn weights(&self) -> Vec<f64> {
        let n = self.n();
        (0..self.vars()).map(|k| if k < n { 1.0 } else { std::f64::consts::SQRT_2 }).collect()
    }

    fn active_matrix(&self, x: &[f64]) -> DMatrix<Complex64> {
        let n = self.n();
        let mut m = DMatrix::from_element(n, n, Complex64::zero());
        for a in 0..n {
            m[(a, a)] = Complex64::new(x[a], 0.0);
            for b in a + 1..n {
                let k = self.off_index(a, b);
                m[(a, b)] = Complex64::new(x[k], x[k + 1]);
                m[(b, a)] = m[(a, b)].conj();
            }
        }
        m
    }

    fn active_coords(&self, m: &DMatrix<Complex64>) -> Vec<f64> {
        let n = self.n();
        let mut x = vec![0.0; self.vars()];
        for a in 0..n {
            x[a] = m[(a, a)].re;
            for b in a + 1..n {
                let k = self.off_index(a, b);
                let v = (m[(a, b)] + m[(b, a)].conj()) * 0.5;
                x[k] = v.re;
                x[k + 1] = v.im;
            }
        }
        x
    }
}

/// Smallest eigenvalue of a hermitian matrix.
pub fn min_eigenvalue(g: &GramMatrix) -> f64 {
    let n = g.len();
    if n == 0 {
        return 0.0;
    }
    let m = DMatrix::from_fn(n, n, |a, b| (g[a][b] + g[b][a].conj()) * 0.5);
    m.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Hermitian eigen-decomposition `(λ, V)` with eigenvectors as columns.
pub fn hermitian_eigen(g: &GramMatrix) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = g.len();
    let m = DMatrix::from_fn(n, n, |a, b| (g[a][b] + g[b][a].conj()) * 0.5);
    let eig = m.symmetric_eigen();
    (eig.eigenvalues.iter().cloned().collect(), eig.eigenvectors)
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// eigenvalue floor of the cone projection; positive values push towards the interior
    pub floor: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER, floor: 0.0 }
    }
}

#[derive(Clone, Debug)]
pub enum Feasibility {
    Feasible { gram: GramMatrix, iterations: usize, min_eig: f64 },
    /// Not a proof of infeasibility.
    InfeasibleAtCap { iterations: usize, reason: String },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }
}

/// Douglas–Rachford splitting between the affine constraint set and the PSD cone.
pub fn sdp_feasible(sys: &GramSystem, tol: f64, max_iter: usize) -> Feasibility {
    sdp_feasible_with(sys, &SolverOptions { tol, max_iter, floor: 0.0 })
}

pub fn sdp_feasible_with(sys: &GramSystem, opts: &SolverOptions) -> Feasibility {
    let layout = Layout::new(sys);
    let (rows, rhs) = layout.exact_rows(sys);
    let nv = layout.vars();
    let w = layout.weights();
    let b = DVector::from_iterator(rhs.len(), rhs.iter().map(rational_to_f64));
    let bnorm = b.norm();
    if nv == 0 {
        return if bnorm == 0.0 {
            Feasibility::Feasible { gram: layout.to_matrix(&[]), iterations: 0, min_eig: 0.0 }
        } else {
            Feasibility::InfeasibleAtCap { iterations: 0, reason: "no admissible basis monomials".into() }
        };
    }
    // columns in scaled coordinates: x_unscaled = x_scaled / w
    let a = DMatrix::from_fn(rows.len(), nv, |r, k| rational_to_f64(&rows[r][k]) / w[k]);
    let svd = a.clone().svd(true, true);
    let (u, vt) = (svd.u.expect("svd u"), svd.v_t.expect("svd v_t"));
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> =
        (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > 1e-10 * smax.max(1.0)).collect();
    let vr = DMatrix::from_fn(keep.len(), nv, |r, k| vt[(keep[r], k)]);
    let mut xp = DVector::zeros(nv);
    for (r, &i) in keep.iter().enumerate() {
        let coef = u.column(i).dot(&b) / svd.singular_values[i];
        xp += vr.row(r).transpose() * coef;
    }
    let affine_res = (&a * &xp - &b).norm();
    if affine_res > 1e-9 * (1.0 + bnorm) {
        return Feasibility::InfeasibleAtCap {
            iterations: 0,
            reason: format!("coefficient equations are inconsistent (residual {affine_res:.3e})"),
        };
    }
    let project_affine = |x: &DVector<f64>| -> DVector<f64> { x - vr.transpose() * (&vr * x) + &xp };
    let unscale = |x: &DVector<f64>| -> Vec<f64> { x.iter().zip(&w).map(|(v, s)| v / s).collect() };
    let scale = |x: &[f64]| -> DVector<f64> { DVector::from_iterator(nv, x.iter().zip(&w).map(|(v, s)| v * s)) };

    let project_cone = |x: &DVector<f64>| -> (DVector<f64>, f64) {
        let m = layout.active_matrix(&unscale(x));
        let eig = m.symmetric_eigen();
        let lmin = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        let clipped = eig.eigenvalues.map(|l| l.max(opts.floor));
        let vecs = &eig.eigenvectors;
        let d = DMatrix::from_diagonal(&clipped.map(|l| Complex64::new(l, 0.0)));
        (scale(&layout.active_coords(&(vecs * d * vecs.adjoint()))), lmin)
    };

    // Douglas–Rachford: the shadow sequence x = P_A(y) converges to a point of A ∩ cone
    let mut y = xp.clone();
    let mut checkpoint = f64::INFINITY;
    for it in 1..=opts.max_iter {
        let x = project_affine(&y);
        let (_, lmin) = project_cone(&x);
        if lmin >= opts.floor - opts.tol {
            let gram = layout.to_matrix(&unscale(&x));
            return Feasibility::Feasible { min_eig: min_eigenvalue(&gram), gram, iterations: it };
        }
        let (z, _) = project_cone(&(&x * 2.0 - &y));
        let gap = (&x - &z).norm();
        if it % 250 == 0 {
            if it >= 1000 && gap > 1e3 * opts.tol && checkpoint - gap < 1e-4 * gap {
                return Feasibility::InfeasibleAtCap {
                    iterations: it,
                    reason: format!("projection gap stalled at {gap:.3e}"),
                };
            }
            checkpoint = gap;
        }
        y += &z - &x;
    }
    Feasibility::InfeasibleAtCap { iterations: opts.max_iter, reason: "iteration limit reached".into() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Element, MultiDegree, Presentation};
    use crate::expr::parse_element;
    use crate::sohs::assemble_gram_system;

    #[test]
    fn unit_target() {
        let w = Presentation::weyl();
        let sys = assemble_gram_system(&w, &Element::one(), &MultiDegree::new(0, 0)).unwrap();
        let Feasibility::Feasible { gram, .. } = sdp_feasible(&sys, DEFAULT_TOL, DEFAULT_MAX_ITER) else { panic!() };
        assert!((gram[0][0] - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn weyl_oscillator() {
        let w = Presentation::weyl();
        let c = parse_element(&w, "p^2 + q^2 + 1").unwrap();
        let sys = assemble_gram_system(&w, &c, &MultiDegree::new(1, 1)).unwrap();
        let Feasibility::Feasible { gram, min_eig, .. } = sdp_feasible(&sys, DEFAULT_TOL, DEFAULT_MAX_ITER) else {
            panic!()
        };
        assert!(min_eig >= -1e-8);
        assert!(sys.float_residual(&gram) < 1e-8);
    }

    #[test]
    fn unbounded_below() {
        let w = Presentation::weyl();
        let q = parse_element(&w, "q").unwrap();
        let sys = assemble_gram_system(&w, &q, &MultiDegree::new(1, 1)).unwrap();
        assert!(!sdp_feasible(&sys, DEFAULT_TOL, DEFAULT_MAX_ITER).is_feasible());
        let c = Presentation::comm();
        let e = parse_element(&c, "x^2 - 1").unwrap();
        let sys = assemble_gram_system(&c, &e, &MultiDegree::new(1, 0)).unwrap();
        assert!(!sdp_feasible(&sys, DEFAULT_TOL, DEFAULT_MAX_ITER).is_feasible());
    }

    #[test]
    fn layout_round_trip() {
        let c = Presentation::comm();
        let e = parse_element(&c, "x^4 + 1").unwrap();
        let sys = assemble_gram_system(&c, &e, &MultiDegree::new(2, 0)).unwrap();
        let layout = Layout::new(&sys);
        let x: Vec<f64> = (0..layout.vars()).map(|k| k as f64 + 0.5).collect();
        assert_eq!(layout.from_matrix(&layout.to_matrix(&x)), x);
    }
}
