use super::ast::Ast;
use super::parse::parse_expression;
use crate::algebra::{Element, Presentation};
use crate::error::{Error, Result};
use crate::fraction::{frac_add, frac_mul, frac_pow, frac_star, frac_sub, DenomAtom, DenomWord, Fraction};
use crate::scalar::{rat_int, Scalar};

/// Resolves an identifier to a generator or a denominator atom element.
fn ident_element(pres: &Presentation, name: &str) -> Result<Element> {
    if let Some(idx) = pres.generator_index(name) {
        return Ok(pres.generator(idx));
    }
    match DenomAtom::parse(name, pres) {
        Ok(atom) => Ok(atom.element(pres)),
        Err(_) => Err(Error::UnknownGenerator(name.to_string())),
    }
}

/// Evaluates a polynomial expression to its normal form.
pub fn eval_element(pres: &Presentation, ast: &Ast) -> Result<Element> {
    Ok(match ast {
        Ast::Num(r) => Element::scalar(Scalar::real(r.clone())),
        Ast::ImagUnit => Element::scalar(Scalar::i()),
        Ast::Gen(g) => ident_element(pres, g)?,
        Ast::Add(l, r) => eval_element(pres, l)?.add(&eval_element(pres, r)?),
        Ast::Sub(l, r) => eval_element(pres, l)?.sub(&eval_element(pres, r)?),
        Ast::Mul(l, r) => pres.mul(&eval_element(pres, l)?, &eval_element(pres, r)?),
        Ast::Pow(b, e) => pres.pow(&eval_element(pres, b)?, *e),
        Ast::Adj(e) => pres.star(&eval_element(pres, e)?),
        Ast::Inv(_) => return Err(Error::NotPolynomial(ast.to_string())),
    })
}

/// Reads the argument of `inv(...)` as a word of denominator atoms.
pub fn inverse_word(pres: &Presentation, ast: &Ast) -> Result<DenomWord> {
    let bad = || Error::BadInverse(ast.to_string());
    match ast {
        Ast::Gen(g) => {
            if pres.generator_index(g).is_some() {
                return Err(bad());
            }
            match DenomAtom::parse(g, pres) {
                Ok(a) => Ok(DenomWord::single(a)),
                Err(_) if is_atom_name(g) => Err(bad()),
                Err(_) => Err(Error::UnknownGenerator(g.clone())),
            }
        }
        Ast::Num(r) if *r == rat_int(1) => Ok(DenomWord::unit()),
        Ast::Mul(l, r) => Ok(inverse_word(pres, l)?.concat(&inverse_word(pres, r)?)),
        Ast::Pow(b, e) => {
            let w = inverse_word(pres, b)?;
            Ok((0..*e).fold(DenomWord::unit(), |acc, _| acc.concat(&w)))
        }
        Ast::Adj(e) => Ok(inverse_word(pres, e)?.adjoint()),
        _ => Err(bad()),
    }
}

fn is_atom_name(g: &str) -> bool {
    matches!(g, "s" | "s1" | "s2" | "sb") || g.starts_with("s[")
}

/// Evaluates an expression with inverses of denominator words to a right fraction.
pub fn eval_fraction(pres: &Presentation, ast: &Ast) -> Result<Fraction> {
    match ast {
        Ast::Add(l, r) => frac_add(pres, &eval_fraction(pres, l)?, &eval_fraction(pres, r)?),
        Ast::Sub(l, r) => frac_sub(pres, &eval_fraction(pres, l)?, &eval_fraction(pres, r)?),
        Ast::Mul(l, r) => frac_mul(pres, &eval_fraction(pres, l)?, &eval_fraction(pres, r)?),
        Ast::Pow(b, e) => frac_pow(pres, &eval_fraction(pres, b)?, *e),
        Ast::Adj(e) => frac_star(pres, &eval_fraction(pres, e)?),
        Ast::Inv(e) => Ok(Fraction::inverse_of(inverse_word(pres, e)?)),
        _ => Ok(Fraction::from_element(eval_element(pres, ast)?)),
    }
}

pub fn parse_element(pres: &Presentation, text: &str) -> Result<Element> {
    eval_element(pres, &parse_expression(text)?)
}

pub fn parse_fraction(pres: &Presentation, text: &str) -> Result<Fraction> {
    eval_fraction(pres, &parse_expression(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::{frac_eq, AtomKind};

    #[test]
    fn normal_forms() {
        let w = Presentation::weyl();
        let e = |t: &str| parse_element(&w, t).unwrap();
        assert_eq!(e("q*p"), e("p*q + i"));
        assert_eq!(e("q^2*p"), e("p*q^2 + 2*i*q"));
        assert_eq!(e("adj(p*q)"), e("p*q + i"));
        assert_eq!(e("s1"), e("p - i"));
        let x = Presentation::axb();
        assert_eq!(parse_element(&x, "b*a").unwrap(), parse_element(&x, "a*b - i*b").unwrap());
        assert_eq!(parse_element(&x, "s[2]").unwrap(), parse_element(&x, "a - (-3/2 + 2)*i").unwrap());
    }

    #[test]
    fn errors() {
        let w = Presentation::weyl();
        assert_eq!(parse_element(&w, "p*a"), Err(Error::UnknownGenerator("a".into())));
        assert!(matches!(parse_fraction(&w, "inv(p)"), Err(Error::BadInverse(_))));
        assert!(matches!(parse_fraction(&w, "inv(s1 + s2)"), Err(Error::BadInverse(_))));
        assert!(matches!(parse_element(&w, "inv(s1)"), Err(Error::NotPolynomial(_))));
        assert!(matches!(parse_fraction(&w, "inv(sb)"), Err(Error::BadInverse(_))));
    }

    #[test]
    fn fractions() {
        let w = Presentation::weyl();
        let f = parse_fraction(&w, "inv(s1*s2)").unwrap();
        let s1 = DenomAtom::plain(AtomKind::P);
        let s2 = DenomAtom::plain(AtomKind::Q);
        assert_eq!(f.den, DenomWord(vec![s1, s2]));
        let g = parse_fraction(&w, "inv(s2)*inv(s1)").unwrap();
        assert!(frac_eq(&w, &f, &g).unwrap());
        let h = parse_fraction(&w, "adj(inv(s1)) * q").unwrap();
        let direct = frac_mul(&w, &Fraction::atom_inverse(s1.adjoint()), &Fraction::from_element(Element::monomial(0, 1))).unwrap();
        assert!(frac_eq(&w, &h, &direct).unwrap());
        let z = parse_fraction(&w, "inv(s1) - inv(adj(s1)) - 2*i*inv(adj(s1))*inv(s1)").unwrap();
        assert!(z.is_zero());
    }
}
