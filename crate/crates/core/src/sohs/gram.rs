use std::collections::BTreeMap;

use crate::algebra::{Element, Monomial, MultiDegree, Presentation, PresetKind};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One coefficient match: `Σ G_{uv} · coeff_m(u* v) = target_m`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub monomial: Monomial,
    /// `(u, v, coeff_m(u* v))`, nonzero entries only
    pub entries: Vec<(usize, usize, Scalar)>,
    pub rhs: Scalar,
}

/// Coefficient-matching system for `target = Σ_{u,v} G_{uv} u* v` over a monomial basis.
#[derive(Clone, Debug)]
pub struct GramSystem {
    pub pres: Presentation,
    pub target: Element,
    pub cap: MultiDegree,
    pub basis: Vec<Monomial>,
    /// `products[u][v] = u* v` in normal form
    pub products: Vec<Vec<Element>>,
    pub constraints: Vec<Constraint>,
    /// basis entries that can carry weight in a PSD solution
    pub active: Vec<bool>,
}

/// Monomials with `d ≤ cap`, ordered by total degree and then by descending first exponent.
pub fn graded_basis(pres: &Presentation, cap: &MultiDegree) -> Vec<Monomial> {
    let c1 = cap.d1().max(0) as u32;
    let c2 = if pres.kind == PresetKind::CommPoly { 0 } else { cap.d2().max(0) as u32 };
    let mut out: Vec<Monomial> = (0..=c1).flat_map(|j| (0..=c2).map(move |l| Monomial::new(j, l))).collect();
    out.sort_by_key(|m| (m.total(), std::cmp::Reverse(m.j)));
    out
}

/// Builds the Gram system. The target must be hermitian and the cap at least `⌈d(c)/2⌉`.
pub fn assemble_gram_system(pres: &Presentation, c: &Element, cap: &MultiDegree) -> Result<GramSystem> {
    if !pres.is_hermitian(c) {
        return Err(Error::NotHermitian);
    }
    if cap.len() != 2 {
        return Err(Error::InvalidParameters(format!("degree cap {cap} needs two components")));
    }
    if !c.is_zero() {
        let need = pres.multidegree(c)?.half_ceil();
        if !need.le(cap) {
            return Err(Error::CapTooSmall { cap: cap.to_string(), need: need.to_string() });
        }
    }
    let basis = graded_basis(pres, cap);
    let n = basis.len();
    let mut products = Vec::with_capacity(n);
    for u in &basis {
        let us = pres.star(&Element::monomial(u.j, u.l));
        products.push(basis.iter().map(|v| pres.mul(&us, &Element::monomial(v.j, v.l))).collect::<Vec<_>>());
    }
    let mut rows: BTreeMap<Monomial, Vec<(usize, usize, Scalar)>> = BTreeMap::new();
    for m in c.terms().keys() {
        rows.entry(*m).or_default();
    }
    for (a, row) in products.iter().enumerate() {
        for (b, e) in row.iter().enumerate() {
            for (m, s) in e.terms() {
                rows.entry(*m).or_default().push((a, b, s.clone()));
            }
        }
    }
    let constraints: Vec<Constraint> =
        rows.into_iter().map(|(monomial, entries)| Constraint { monomial, entries, rhs: c.coeff(monomial) }).collect();
    let mut sys =
        GramSystem { pres: pres.clone(), target: c.clone(), cap: cap.clone(), basis, products, constraints, active: vec![true; n] };
    sys.prune();
    Ok(sys)
}

impl GramSystem {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn active_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.active[i]).collect()
    }

    /// Drops `u` whenever some coefficient with zero target is reached only through `u* u`.
    fn prune(&mut self) {
        loop {
            let mut changed = false;
            for con in &self.constraints {
                if !con.rhs.is_zero() {
                    continue;
                }
                let mut live = con.entries.iter().filter(|(a, b, _)| self.active[*a] && self.active[*b]);
                if let (Some((a, b, _)), None) = (live.next(), live.next()) {
                    if a == b {
                        self.active[*a] = false;
                        changed = true;
                        break;
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// `Σ_k Σ_{u,v} conj(f_ku) f_kv coeff(u* v)` for factors given by basis coordinates.
    pub fn realize(&self, gram: &[Vec<num_complex::Complex64>]) -> BTreeMap<Monomial, num_complex::Complex64> {
        let mut out: BTreeMap<Monomial, num_complex::Complex64> = BTreeMap::new();
        for con in &self.constraints {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for (a, b, s) in &con.entries {
                acc += gram[*a][*b] * s.to_complex();
            }
            out.insert(con.monomial, acc);
        }
        out
    }

    /// Euclidean norm of `target − Σ G_{uv} u* v` over the coefficient vector.
    pub fn float_residual(&self, gram: &[Vec<num_complex::Complex64>]) -> f64 {
        self.realize(gram)
            .iter()
            .map(|(m, v)| (self.target.coeff(*m).to_complex() - v).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Euclidean norm of the target coefficient vector.
    pub fn target_norm(&self) -> f64 {
        self.target.terms().values().map(|s| s.to_complex().norm_sqr()).sum::<f64>().sqrt()
    }
}
