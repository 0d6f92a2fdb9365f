use super::ast::Ast;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, rat_int};

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Inv,
    Adj,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(text: &'a str) -> Result<Vec<(usize, Tok)>> {
        let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        loop {
            lx.skip_ws();
            let start = lx.pos;
            let tok = lx.next_tok()?;
            let end = tok == Tok::End;
            out.push((start, tok));
            if end {
                return Ok(out);
            }
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::SyntaxError { pos, msg: msg.into() }
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.pos - start
    }

    fn next_tok(&mut self) -> Result<Tok> {
        let Some(&c) = self.src.get(self.pos) else { return Ok(Tok::End) };
        let start = self.pos;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok(t);
        }
        if c.is_ascii_digit() {
            self.digits();
            if self.src.get(self.pos) == Some(&b'/') || self.src.get(self.pos) == Some(&b'.') {
                self.pos += 1;
                if self.digits() == 0 {
                    return Err(self.err(self.pos, "expected digits"));
                }
            }
            return Ok(Tok::Num(self.text(start)));
        }
        if c.is_ascii_alphabetic() {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let word = self.text(start);
            if (word == "inv" || word == "adj") && self.src.get(self.pos) == Some(&b'(') {
                self.pos += 1;
                return Ok(if word == "inv" { Tok::Inv } else { Tok::Adj });
            }
            if word == "s" && self.src.get(self.pos) == Some(&b'[') {
                self.pos += 1;
                self.skip_ws();
                if self.src.get(self.pos) == Some(&b'-') {
                    self.pos += 1;
                }
                if self.digits() == 0 {
                    return Err(self.err(self.pos, "expected shift index"));
                }
                self.skip_ws();
                if self.src.get(self.pos) != Some(&b']') {
                    return Err(self.err(self.pos, "expected `]`"));
                }
                self.pos += 1;
                let inner: String = self.text(start + 2).chars().filter(|c| !c.is_whitespace()).collect();
                return Ok(Tok::Ident(format!("s[{}", inner)));
            }
            return Ok(Tok::Ident(word));
        }
        Err(self.err(start, format!("unexpected character `{}`", c as char)))
    }

    fn text(&self, start: usize) -> String {
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.idx].1
    }

    fn pos(&self) -> usize {
        self.toks[self.idx].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].1.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(Error::SyntaxError { pos: self.pos(), msg: format!("expected {what}") })
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = if *self.peek() == Tok::Minus {
            self.bump();
            Ast::sub(Ast::Num(rat_int(0)), self.term()?)
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Ast::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Ast::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Ast::mul(lhs, self.factor()?);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => n
                .parse::<u32>()
                .map(|e| Ast::pow(base, e))
                .map_err(|_| Error::SyntaxError { pos, msg: "exponent must be a nonnegative integer".into() }),
            _ => Err(Error::SyntaxError { pos, msg: "expected exponent".into() }),
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => parse_rational(&n)
                .map(Ast::Num)
                .ok_or(Error::SyntaxError { pos, msg: format!("bad number `{n}`") }),
            Tok::Ident(name) if name == "i" => Ok(Ast::ImagUnit),
            Tok::Ident(name) => Ok(Ast::Gen(name)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Inv => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Ast::inv(e))
            }
            Tok::Adj => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Ast::adj(e))
            }
            Tok::End => Err(Error::SyntaxError { pos, msg: "unexpected end of input".into() }),
            t => Err(Error::SyntaxError { pos, msg: format!("unexpected token {t:?}") }),
        }
    }
}

/// Parses the expression grammar; identifiers are resolved later against a presentation.
pub fn parse_expression(text: &str) -> Result<Ast> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser { toks, idx: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(Error::SyntaxError { pos: p.pos(), msg: "trailing input".into() });
    }
    Ok(e)
}
