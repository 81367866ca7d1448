//! Construction expressions: `K(n)`, `C(n)`, `Kneser(m,n)`, `X(e,e)`,
//! `Lex(e,e)`, `Exp(c,e)` and `Grotzsch`.

use std::fmt;

use kneserlab::graph::{
    categorical_product_with_loops, complete, cycle, exponential_graph, grotzsch, kneser, lexicographic_product, Graph,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Complete(usize),
    Cycle(usize),
    Kneser(usize, usize),
    Grotzsch,
    Product(Box<Expr>, Box<Expr>),
    Lex(Box<Expr>, Box<Expr>),
    Exp(usize, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: unknown family `{name}` (expected K, C, Kneser, X, Lex, Exp or Grotzsch)")]
    UnknownFamily { line: usize, column: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Open,
    Close,
    Comma,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, col);
        if ch == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let tok = match ch {
            '(' => Tok::Open,
            ')' => Tok::Close,
            ',' => Tok::Comma,
            d if d.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    chars.next();
                    col += 1;
                }
                let n = s.parse().map_err(|_| ParseError::Syntax {
                    line: l,
                    column: c,
                    message: format!("number `{s}` is too large"),
                })?;
                out.push((Tok::Num(n), l, c));
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&a) = chars.peek().filter(|a| a.is_ascii_alphanumeric() || **a == '_') {
                    s.push(a);
                    chars.next();
                    col += 1;
                }
                out.push((Tok::Ident(s), l, c));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    line: l,
                    column: c,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        chars.next();
        col += 1;
        out.push((tok, l, c));
    }
    out.push((Tok::End, line, col));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &(Tok, usize, usize) {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> (Tok, usize, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String) -> ParseError {
        let (_, line, column) = self.peek();
        ParseError::Syntax {
            line: *line,
            column: *column,
            message,
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek().0 == want {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {}", describe(&self.peek().0))))
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        match self.peek().0 {
            Tok::Num(n) => {
                self.next();
                Ok(n)
            }
            ref t => Err(self.error(format!("expected a number, found {}", describe(t)))),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let (tok, line, column) = self.next();
        let name = match tok {
            Tok::Ident(name) => name,
            t => {
                return Err(ParseError::Syntax {
                    line,
                    column,
                    message: format!("expected a family name, found {}", describe(&t)),
                })
            }
        };
        if name == "Grotzsch" {
            if self.peek().0 == Tok::Open {
                self.next();
                self.expect(Tok::Close, "`)`")?;
            }
            return Ok(Expr::Grotzsch);
        }
        if !matches!(name.as_str(), "K" | "C" | "Kneser" | "X" | "Lex" | "Exp") {
            return Err(ParseError::UnknownFamily { line, column, name });
        }
        self.expect(Tok::Open, "`(`")?;
        let e = match name.as_str() {
            "K" => Expr::Complete(self.number()?),
            "C" => Expr::Cycle(self.number()?),
            "Kneser" => {
                let m = self.number()?;
                self.expect(Tok::Comma, "`,`")?;
                Expr::Kneser(m, self.number()?)
            }
            "Exp" => {
                let c = self.number()?;
                self.expect(Tok::Comma, "`,`")?;
                Expr::Exp(c, Box::new(self.expr()?))
            }
            _ => {
                let a = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.expr()?;
                if name == "X" {
                    Expr::Product(Box::new(a), Box::new(b))
                } else {
                    Expr::Lex(Box::new(a), Box::new(b))
                }
            }
        };
        self.expect(Tok::Close, "`)`")?;
        Ok(e)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(n) => format!("`{n}`"),
        Tok::Open => "`(`".into(),
        Tok::Close => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::End => "end of input".into(),
    }
}

pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let mut lx = Lexer {
        toks: tokenize(text)?,
        pos: 0,
    };
    let e = lx.expr()?;
    if lx.peek().0 != Tok::End {
        return Err(lx.error(format!("unexpected {} after expression", describe(&lx.peek().0))));
    }
    Ok(e)
}

impl Expr {
    /// Evaluates the expression. `X` treats looped vertices as
    /// self-adjacent; `Lex` needs loop-free factors.
    pub fn build(&self) -> kneserlab::Result<Graph> {
        match self {
            Expr::Complete(n) => Ok(complete(*n)),
            Expr::Cycle(n) => cycle(*n),
            Expr::Kneser(m, n) => kneser(*m, *n),
            Expr::Grotzsch => Ok(grotzsch()),
            Expr::Product(a, b) => categorical_product_with_loops(&a.build()?, &b.build()?),
            Expr::Lex(a, b) => lexicographic_product(&a.build()?, &b.build()?),
            Expr::Exp(c, h) => exponential_graph(*c, &h.build()?),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Complete(n) => write!(f, "K({n})"),
            Expr::Cycle(n) => write!(f, "C({n})"),
            Expr::Kneser(m, n) => write!(f, "Kneser({m},{n})"),
            Expr::Grotzsch => f.write_str("Grotzsch"),
            Expr::Product(a, b) => write!(f, "X({a},{b})"),
            Expr::Lex(a, b) => write!(f, "Lex({a},{b})"),
            Expr::Exp(c, h) => write!(f, "Exp({c},{h})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_expression("Exp(2, K(3))").unwrap(),
            Expr::Exp(2, Box::new(Expr::Complete(3)))
        );
        assert_eq!(
            parse_expression("X(C(5), Kneser(5,2))").unwrap(),
            Expr::Product(Box::new(Expr::Cycle(5)), Box::new(Expr::Kneser(5, 2)))
        );
        assert_eq!(
            parse_expression("Lex(C(5), K(2))").unwrap(),
            Expr::Lex(Box::new(Expr::Cycle(5)), Box::new(Expr::Complete(2)))
        );
        assert_eq!(parse_expression("Grotzsch").unwrap(), Expr::Grotzsch);
        assert_eq!(parse_expression(" Grotzsch() ").unwrap(), Expr::Grotzsch);
    }

    #[test]
    fn display_round_trips() {
        for text in ["Exp(2,K(3))", "X(C(5),Kneser(5,2))", "Lex(Grotzsch,K(2))", "X(Exp(3,C(4)),K(1))"] {
            let e = parse_expression(text).unwrap();
            assert_eq!(e.to_string(), text);
            assert_eq!(parse_expression(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn positions_in_errors() {
        assert_eq!(
            parse_expression("X(K(3),\n  K(4)").unwrap_err(),
            ParseError::Syntax {
                line: 2,
                column: 7,
                message: "expected `)`, found end of input".into()
            }
        );
        assert_eq!(
            parse_expression("Lex(K(2), Foo(3))").unwrap_err(),
            ParseError::UnknownFamily {
                line: 1,
                column: 11,
                name: "Foo".into()
            }
        );
        let e = parse_expression("K(3) K(4)").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 1, column: 6, .. }));
        assert!(matches!(parse_expression("K(x)"), Err(ParseError::Syntax { column: 3, .. })));
        assert!(matches!(parse_expression("K(3]"), Err(ParseError::Syntax { column: 4, .. })));
    }

    #[test]
    fn builds_graphs() {
        let g = parse_expression("X(C(5), Kneser(5,2))").unwrap().build().unwrap();
        assert_eq!(g.n(), 50);
        let e = parse_expression("Exp(2, K(2))").unwrap().build().unwrap();
        assert_eq!(e.loops().len(), 2);
        let lex = parse_expression("Lex(Exp(2,K(2)),K(2))").unwrap().build();
        assert!(lex.unwrap_err().is_regime());
    }
}
