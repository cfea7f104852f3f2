use num_bigint::BigInt;

use super::{Expr, Symbol};
use crate::error::{Error, Result};
use crate::qalgebra::{ClassicalGen, Gen};
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let start = i;
        let tok = match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((start, Tok::Num(digits.parse().expect("ascii digits"))));
                continue;
            }
            c if c.is_alphabetic() => {
                while i < chars.len() && chars[i].is_alphabetic() {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

fn symbol(name: &str) -> Option<Symbol> {
    Some(match name {
        "q" => Symbol::Q,
        "alpha" | "α" => Symbol::Classical(ClassicalGen::Alpha),
        "beta" | "β" => Symbol::Classical(ClassicalGen::Beta),
        "gamma" | "γ" => Symbol::Classical(ClassicalGen::Gamma),
        "delta" | "δ" => Symbol::Classical(ClassicalGen::Delta),
        s if s.chars().count() == 1 => Symbol::Quantum(Gen::from_letter(s.chars().next()?)?),
        _ => return None,
    })
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].1
    }

    fn pos(&self) -> usize {
        self.toks[self.i].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", describe(&want), describe(self.peek())))
        }
    }

    // expr := '-'? term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negate = true;
        }
        loop {
            let t = self.term()?;
            terms.push((negate, t));
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => break,
            }
            self.bump();
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Expr::Sum(terms))
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Expr> {
        let mut factors = Vec::new();
        let mut seen_quantum = false;
        loop {
            let pos = self.pos();
            let f = self.factor()?;
            if seen_quantum && f.has_classical() {
                return Err(Error::Parse {
                    pos,
                    msg: "classical factor after a quantum factor; write it first".into(),
                });
            }
            seen_quantum |= f.has_quantum();
            factors.push(f);
            if *self.peek() != Tok::Star {
                break;
            }
            self.bump();
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        Ok(Expr::Product(factors))
    }

    // factor := base ('^' int)?
    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let exp = self.exponent()?;
        if exp < 0 && base != Expr::Symbol(Symbol::Q) {
            return Err(Error::Parse {
                pos,
                msg: "negative exponents are only allowed on q".into(),
            });
        }
        Ok(Expr::Power(Box::new(base), exp))
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let (pos, tok) = self.bump();
        let Tok::Num(n) = tok else {
            return Err(Error::Parse {
                pos,
                msg: format!("expected an integer exponent, found {}", describe(&tok)),
            });
        };
        let n: i64 = i64::try_from(&n).map_err(|_| Error::Parse {
            pos,
            msg: "exponent too large".into(),
        })?;
        if paren {
            self.expect(Tok::RParen)?;
        }
        Ok(if neg { -n } else { n })
    }

    // base := symbol | rational | '(' expr ')'
    fn base(&mut self) -> Result<Expr> {
        let (pos, tok) = self.bump();
        match tok {
            Tok::Ident(name) => symbol(&name).map(Expr::Symbol).ok_or(Error::Parse {
                pos,
                msg: format!("unknown symbol '{name}'"),
            }),
            Tok::Num(num) => {
                if *self.peek() != Tok::Slash {
                    return Ok(Expr::Rational(Rational::from_integer(num)));
                }
                self.bump();
                let (dpos, dtok) = self.bump();
                match dtok {
                    Tok::Num(den) if den != BigInt::from(0) => Ok(Expr::Rational(Rational::new(num, den))),
                    Tok::Num(_) => Err(Error::Parse {
                        pos: dpos,
                        msg: "zero denominator".into(),
                    }),
                    other => Err(Error::Parse {
                        pos: dpos,
                        msg: format!("expected a denominator, found {}", describe(&other)),
                    }),
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(Error::Parse {
                pos,
                msg: format!("expected a symbol, number or '(', found {}", describe(&other)),
            }),
        }
    }
}

/// Parses an expression. Positions in errors are character offsets.
pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(text)?,
        i: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(e)
}
