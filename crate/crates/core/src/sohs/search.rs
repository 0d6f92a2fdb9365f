use rayon::prelude::*;
use serde::Serialize;

use super::certify::{extract_and_verify, ExtractMode, GramCertificate};
use super::gram::assemble_gram_system;
use super::solver::{sdp_feasible_with, Feasibility, SolverOptions};
use crate::algebra::{Element, MultiDegree, Presentation};
use crate::error::{Error, Result};
use crate::fraction::{DenomAtom, DenomWord};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum SearchMode {
    /// `s* c s ∈ ΣA²`
    Strict,
    /// `s* (c + ε t t*) s ∈ ΣA²`
    Marshall { epsilon: Rational, t: DenomWord },
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub max_denom_len: usize,
    /// defaults to `⌈d(c)/2⌉`
    pub cap: Option<MultiDegree>,
    /// ax+b shift window for candidate atoms
    pub window: i64,
    pub solver: SolverOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_denom_len: 1, cap: None, window: 1, solver: SolverOptions::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Attempt {
    pub s: String,
    pub cap: MultiDegree,
    pub outcome: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status")]
pub enum SearchOutcome {
    Found { s: DenomWord, target: String, cap: MultiDegree, certificate: GramCertificate, attempts: Vec<Attempt> },
    /// Inconclusive.
    NotFoundWithinCaps { attempts: Vec<Attempt> },
}

impl SearchOutcome {
    pub fn attempts(&self) -> &[Attempt] {
        match self {
            SearchOutcome::Found { attempts, .. } | SearchOutcome::NotFoundWithinCaps { attempts } => attempts,
        }
    }
}

/// Result of the Gram pipeline on one target.
#[derive(Clone, Debug)]
pub enum PipelineResult {
    Certified(GramCertificate),
    Infeasible(String),
}

/// Decides Gram feasibility at `cap` and extracts a verified certificate, preferring exact ones.
pub fn certify_target(
    pres: &Presentation,
    target: &Element,
    cap: &MultiDegree,
    opts: &SolverOptions,
) -> Result<PipelineResult> {
    let sys = assemble_gram_system(pres, target, cap)?;
    let with_iters = |mut c: GramCertificate, it: usize| {
        c.iterations = it;
        c
    };
    let scale = 1.0 + sys.target_norm();
    let mut spent = 0;
    let mut boundary = None;
    let mut reason = String::new();
    for floor in [1e-2 * scale, 1e-4 * scale, 0.0] {
        let run = SolverOptions { floor, ..opts.clone() };
        match sdp_feasible_with(&sys, &run) {
            Feasibility::Feasible { gram, iterations, .. } => {
                spent += iterations;
                if let Ok(c) = extract_and_verify(&sys, &gram, ExtractMode::Rational) {
                    if c.valid {
                        return Ok(PipelineResult::Certified(with_iters(c, spent)));
                    }
                }
                if floor == 0.0 {
                    boundary = Some(gram);
                }
            }
            Feasibility::InfeasibleAtCap { iterations, reason: r } => {
                spent += iterations;
                reason = r;
            }
        }
    }
    let Some(gram) = boundary else { return Ok(PipelineResult::Infeasible(reason)) };
    let c = extract_and_verify(&sys, &gram, ExtractMode::Float)?;
    if c.valid {
        Ok(PipelineResult::Certified(with_iters(c, spent)))
    } else {
        Ok(PipelineResult::Infeasible(format!("float extraction residual {:e}", c.residual_norm)))
    }
}

/// Candidate denominators of length `len` in enumeration order, skipping words equal up to commuting atoms.
pub fn candidate_words(pres: &Presentation, len: usize, window: i64) -> Vec<DenomWord> {
    let atoms = DenomAtom::all(pres.kind, window);
    let mut words = vec![DenomWord::unit()];
    for _ in 0..len {
        words = words.iter().flat_map(|w| atoms.iter().map(move |a| w.concat(&DenomWord::single(*a)))).collect();
    }
    let mut seen = std::collections::HashSet::new();
    words.into_iter().filter(|w| seen.insert(w.clone().canonical())).collect()
}

/// Searches for `s` with `s* c s` (strict) or `s* (c + ε t t*) s` (Marshall) in ΣA² at bounded degree.
pub fn positivstellensatz_search(
    pres: &Presentation,
    c: &Element,
    mode: &SearchMode,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    if !pres.is_hermitian(c) {
        return Err(Error::NotHermitian);
    }
    let base = match mode {
        SearchMode::Strict => c.clone(),
        SearchMode::Marshall { epsilon, t } => {
            t.check(pres)?;
            let te = t.element(pres);
            c.add(&pres.mul(&te, &pres.star(&te)).scale(&Scalar::real(epsilon.clone())))
        }
    };
    if base.is_zero() {
        return Err(Error::ZeroElement);
    }
    let need = pres.multidegree(&base)?.half_ceil();
    let user_cap = opts.cap.clone().unwrap_or_else(|| need.clone());
    if !need.le(&user_cap) {
        return Err(Error::CapTooSmall { cap: user_cap.to_string(), need: need.to_string() });
    }
    let mut attempts = Vec::new();
    for len in 0..=opts.max_denom_len {
        let words = candidate_words(pres, len, opts.window);
        let results: Vec<(DenomWord, Element, MultiDegree, Result<PipelineResult>)> = words
            .into_par_iter()
            .map(|s| {
                let se = s.element(pres);
                let target = pres.mul(&pres.mul(&pres.star(&se), &base), &se);
                let cap = (&user_cap + &s.degree()).join(&pres.multidegree(&target).map(|d| d.half_ceil()).unwrap_or(user_cap.clone()));
                let r = certify_target(pres, &target, &cap, &opts.solver);
                (s, target, cap, r)
            })
            .collect();
        for (s, target, cap, r) in results {
            match r? {
                PipelineResult::Certified(certificate) => {
                    attempts.push(Attempt { s: s.to_string(), cap: cap.clone(), outcome: "certified".into() });
                    return Ok(SearchOutcome::Found {
                        s,
                        target: pres.element_to_text(&target),
                        cap,
                        certificate,
                        attempts,
                    });
                }
                PipelineResult::Infeasible(reason) => {
                    attempts.push(Attempt { s: s.to_string(), cap, outcome: reason });
                }
            }
        }
    }
    Ok(SearchOutcome::NotFoundWithinCaps { attempts })
}
