use std::fmt;

use num_traits::Signed;

use crate::scalar::{format_rational, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Ast {
    Num(Rational),
    ImagUnit,
    Gen(String),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
    Inv(Box<Ast>),
    Adj(Box<Ast>),
}

impl Ast {
    pub fn add(l: Ast, r: Ast) -> Ast {
        Ast::Add(Box::new(l), Box::new(r))
    }

    pub fn sub(l: Ast, r: Ast) -> Ast {
        Ast::Sub(Box::new(l), Box::new(r))
    }

    pub fn mul(l: Ast, r: Ast) -> Ast {
        Ast::Mul(Box::new(l), Box::new(r))
    }

    pub fn pow(b: Ast, e: u32) -> Ast {
        Ast::Pow(Box::new(b), e)
    }

    pub fn inv(e: Ast) -> Ast {
        Ast::Inv(Box::new(e))
    }

    pub fn adj(e: Ast) -> Ast {
        Ast::Adj(Box::new(e))
    }

    pub fn gen(name: &str) -> Ast {
        Ast::Gen(name.to_string())
    }

    fn precedence(&self) -> u8 {
        match self {
            Ast::Add(..) | Ast::Sub(..) => 0,
            Ast::Mul(..) => 1,
            Ast::Pow(..) => 2,
            Ast::Num(r) if r.is_negative() => 0,
            _ => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Ast::Num(r) if r.is_negative() => write!(f, "0 - {}", format_rational(&-r)),
            Ast::Num(r) => f.write_str(&format_rational(r)),
            Ast::ImagUnit => f.write_str("i"),
            Ast::Gen(g) => f.write_str(g),
            Ast::Add(l, r) => {
                l.write_at(f, 0)?;
                f.write_str(" + ")?;
                r.write_at(f, 1)
            }
            Ast::Sub(l, r) => {
                l.write_at(f, 0)?;
                f.write_str(" - ")?;
                r.write_at(f, 1)
            }
            Ast::Mul(l, r) => {
                l.write_at(f, 1)?;
                f.write_str("*")?;
                r.write_at(f, 2)
            }
            Ast::Pow(b, e) => {
                // a rational base like 3/2 reads back as one token
                b.write_at(f, 3)?;
                write!(f, "^{e}")
            }
            Ast::Inv(e) => {
                f.write_str("inv(")?;
                e.write_at(f, 0)?;
                f.write_str(")")
            }
            Ast::Adj(e) => {
                f.write_str("adj(")?;
                e.write_at(f, 0)?;
                f.write_str(")")
            }
        }
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
