use serde::Serialize;

use super::atom::DenomWord;
use super::member::{membership_in_x, Membership, XPoly};
use super::ore::{frac_reduce, ore_right, Fraction, FractionReport};
use crate::algebra::Presentation;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Cofactor {
    pub s: DenomWord,
    /// `s t⁻¹`
    pub right: Fraction,
    pub right_witness: XPoly,
    /// `t⁻¹ s`
    pub left: Fraction,
    pub left_witness: XPoly,
}

#[derive(Clone, Debug)]
pub struct CommonDenominator {
    pub t0: DenomWord,
    /// `t0* t0`
    pub t: DenomWord,
    pub cofactors: Vec<Cofactor>,
}

/// Finds `t = t0* t0` with `s t⁻¹` and `t⁻¹ s` in X for every input word.
///
/// `t0` grows by appending each word of `F ∪ F*` that is not already covered,
/// which keeps every `s t0⁻¹` in X by the inner-automorphism condition. Each
/// `s t⁻¹` gets an evaluated witness; `t⁻¹ s` takes the adjoint of the witness of `s* t⁻¹`.
pub fn common_denominator(pres: &Presentation, words: &[DenomWord]) -> Result<CommonDenominator> {
    if words.is_empty() {
        return Err(Error::Internal("common_denominator needs at least one word".into()));
    }
    for w in words {
        w.check(pres)?;
    }
    let mut family: Vec<DenomWord> = Vec::new();
    for w in words {
        family.push(w.clone());
        family.push(w.adjoint());
    }
    let mut t0 = DenomWord::unit();
    for s in &family {
        let covered = !s.is_unit() && s.degree().le(&t0.degree()) && in_x(pres, &Fraction::new(s.element(pres), t0.clone()))?.is_some();
        if !covered && !s.is_unit() {
            t0 = t0.concat(s);
        }
    }
    let t = t0.adjoint().concat(&t0);
    let mut cofactors = Vec::new();
    for s in words {
        let right = frac_reduce(pres, Fraction::new(s.element(pres), t.clone()));
        let (num, den) = ore_right(pres, &t, &s.element(pres));
        let left = frac_reduce(pres, Fraction::new(num, den));
        let right_witness = in_x(pres, &right)?.ok_or_else(|| Error::Internal(format!("cofactor {s} t^-1 not in X")))?;
        // t is self-adjoint, so t⁻¹ s = (s* t⁻¹)*
        let adj = frac_reduce(pres, Fraction::new(s.adjoint().element(pres), t.clone()));
        let left_witness = in_x(pres, &adj)?
            .ok_or_else(|| Error::Internal(format!("cofactor t^-1 {s} not in X")))?
            .star();
        cofactors.push(Cofactor { s: s.clone(), right, right_witness, left, left_witness });
    }
    Ok(CommonDenominator { t0, t, cofactors })
}

fn in_x(pres: &Presentation, f: &Fraction) -> Result<Option<XPoly>> {
    Ok(match membership_in_x(pres, f)? {
        Membership::InX(w) => Some(w),
        Membership::CriterionFailed { .. } => None,
    })
}

#[derive(Serialize)]
pub struct CofactorReport {
    pub s: String,
    pub s_t_inv: FractionReport,
    pub s_t_inv_witness: String,
    pub t_inv_s: FractionReport,
    pub t_inv_s_witness: String,
}

#[derive(Serialize)]
pub struct CommonDenominatorReport {
    pub t0: String,
    pub t: String,
    pub cofactors: Vec<CofactorReport>,
}

impl CommonDenominatorReport {
    pub fn new(pres: &Presentation, cd: &CommonDenominator) -> Self {
        CommonDenominatorReport {
            t0: cd.t0.to_string(),
            t: cd.t.to_string(),
            cofactors: cd
                .cofactors
                .iter()
                .map(|c| CofactorReport {
                    s: c.s.to_string(),
                    s_t_inv: FractionReport::new(pres, &c.right),
                    s_t_inv_witness: c.right_witness.to_string(),
                    t_inv_s: FractionReport::new(pres, &c.left),
                    t_inv_s_witness: c.left_witness.to_string(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::{frac_eq, frac_mul, AtomKind, DenomAtom};

    #[test]
    fn single_atom() {
        let w = Presentation::weyl();
        let s1 = DenomAtom::plain(AtomKind::P);
        let cd = common_denominator(&w, &[DenomWord::single(s1)]).unwrap();
        assert_eq!(cd.t0, DenomWord::single(s1));
        assert_eq!(cd.t, DenomWord(vec![s1.adjoint(), s1]));
        let c = &cd.cofactors[0];
        assert!(frac_eq(&w, &c.right, &Fraction::atom_inverse(s1.adjoint())).unwrap());
        assert!(frac_eq(&w, &c.right_witness.evaluate(&w).unwrap(), &c.right).unwrap());
        assert!(frac_eq(&w, &c.left_witness.evaluate(&w).unwrap(), &c.left).unwrap());
    }

    #[test]
    fn two_atoms_and_unit() {
        let w = Presentation::weyl();
        let s1 = DenomWord::single(DenomAtom::plain(AtomKind::P));
        let s2 = DenomWord::single(DenomAtom::plain(AtomKind::Q));
        let cd = common_denominator(&w, &[s1.clone(), s2.clone()]).unwrap();
        assert_eq!(cd.t0, s1.concat(&s2));
        for c in &cd.cofactors {
            assert!(frac_eq(&w, &c.right_witness.evaluate(&w).unwrap(), &c.right).unwrap());
            let adj = Fraction::new(c.s.adjoint().element(&w), cd.t.clone());
            assert!(frac_eq(&w, &c.left_witness.star().evaluate(&w).unwrap(), &adj).unwrap());
            // t · (t⁻¹ s) = s
            let back = frac_mul(&w, &Fraction::from_element(cd.t.element(&w)), &c.left).unwrap();
            assert!(frac_eq(&w, &back, &Fraction::from_element(c.s.element(&w))).unwrap());
        }
        let cd = common_denominator(&w, &[DenomWord::unit()]).unwrap();
        assert!(cd.t.is_unit());
        assert!(frac_eq(&w, &cd.cofactors[0].right, &Fraction::one()).unwrap());
    }
}
