//! Polynomial expression parser: rational literals, named variables,
//! +, -, *, ^ with natural exponents, and parentheses. Implicit
//! multiplication is not accepted.

use gmcalc_core::{Error, MPoly, Monomial, Rational, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                // rational literal a/b
                if i < bytes.len()
                    && bytes[i] == b'/'
                    && i + 1 < bytes.len()
                    && bytes[i + 1].is_ascii_digit()
                {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &src[start..i];
                let value: Rational = text.parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("bad number `{text}`"),
                })?;
                out.push((start, Token::Number(value)));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(src[start..i].to_string())));
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    vars: &'a [String],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t);
        self.pos += 1;
        t
    }

    fn n_vars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<MPoly<Rational>> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Token::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<Rational>> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly<Rational>> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            let pos = self.here();
            match self.bump().cloned() {
                Some(Token::Number(e)) if e.is_integer() && !e.is_negative() => {
                    let exp = u32::try_from(i64::try_from(e.numer().clone()).map_err(|_| {
                        Error::Parse {
                            pos,
                            msg: "exponent too large".into(),
                        }
                    })?)
                    .map_err(|_| Error::Parse {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(exp));
                }
                _ => {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected a natural exponent after ^".into(),
                    });
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly<Rational>> {
        let pos = self.here();
        match self.bump().cloned() {
            Some(Token::Number(v)) => Ok(MPoly::constant(self.n_vars(), v)),
            Some(Token::Ident(name)) => match self.vars.iter().position(|v| v == &name) {
                Some(i) => Ok(MPoly::monomial_term(
                    Monomial::var(self.n_vars(), i),
                    Rational::from_int(1),
                )),
                None => Err(Error::Parse {
                    pos,
                    msg: format!("unknown variable `{name}`"),
                }),
            },
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let pos = self.here();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse {
                        pos,
                        msg: "expected `)`".into(),
                    }),
                }
            }
            other => Err(Error::Parse {
                pos,
                msg: match other {
                    None => "unexpected end of input".into(),
                    Some(t) => format!("unexpected token {t:?}"),
                },
            }),
        }
    }
}

/// Parse with a declared variable list.
pub fn parse_polynomial(src: &str, vars: &[String]) -> Result<MPoly<Rational>> {
    let tokens = lex(src)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        vars,
        end: src.len(),
    };
    let poly = p.expr()?;
    if p.pos != tokens.len() {
        return Err(Error::Parse {
            pos: p.here(),
            msg: "trailing input".into(),
        });
    }
    Ok(poly)
}

/// Infer variables of the form x1..xN from the source when none are declared.
pub fn infer_variables(src: &str) -> Result<Vec<String>> {
    let tokens = lex(src)?;
    let mut max_index = 0usize;
    for (pos, t) in &tokens {
        if let Token::Ident(name) = t {
            let idx = name
                .strip_prefix('x')
                .and_then(|rest| rest.parse::<usize>().ok())
                .filter(|&i| i >= 1);
            match idx {
                Some(i) => max_index = max_index.max(i),
                None => {
                    return Err(Error::Parse {
                        pos: *pos,
                        msg: format!(
                            "variable `{name}` is not of the form x1..xN; declare names with --vars"
                        ),
                    })
                }
            }
        }
    }
    if max_index == 0 {
        // constant polynomial: give it two formal variables so weights exist
        max_index = 2;
    }
    Ok((1..=max_index).map(|i| format!("x{i}")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn parses_example2() {
        let names = infer_variables("x1^3+x2^3+x3^3+x4^3+x5^3-x1-x2").unwrap();
        assert_eq!(names.len(), 5);
        let p = parse_polynomial("x1^3+x2^3+x3^3+x4^3+x5^3-x1-x2", &names).unwrap();
        assert_eq!(p.n_terms(), 7);
        let ord = gmcalc_core::MonomialOrder::new(vec![1; 5]);
        assert_eq!(p.display(&names, &ord), "x1^3+x2^3+x3^3+x4^3+x5^3-x1-x2");
    }

    #[test]
    fn parses_zero_and_constants() {
        let p = parse_polynomial("0", &vars(2)).unwrap();
        assert!(p.is_zero());
        let p = parse_polynomial("3/2", &vars(2)).unwrap();
        assert_eq!(
            p.coeff(&gmcalc_core::Monomial::unit(2)),
            Rational::new(3, 2)
        );
    }

    #[test]
    fn parses_declared_variables() {
        let names = vec!["x".to_string(), "y".to_string()];
        let p = parse_polynomial("x^2+y^3-y", &names).unwrap();
        assert_eq!(p.n_terms(), 3);
    }

    #[test]
    fn rejects_unknown_variable_and_syntax_errors() {
        assert!(matches!(
            parse_polynomial("x^2+z", &["x".into(), "y".into()]),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(parse_polynomial("x^", &["x".into()]).is_err());
        assert!(parse_polynomial("(x+1", &["x".into()]).is_err());
        assert!(
            parse_polynomial("x x", &["x".into()]).is_err(),
            "implicit multiplication"
        );
        assert!(parse_polynomial("x^-2", &["x".into()]).is_err());
    }

    #[test]
    fn printer_parser_round_trip_randomized() {
        use proptest::prelude::*;
        let names = vars(3);
        let ord = gmcalc_core::MonomialOrder::new(vec![1, 1, 1]);
        let term = (proptest::collection::vec(0u16..4, 3), -9i64..=9, 1i64..=4);
        let poly = proptest::collection::vec(term, 0..6).prop_map(|terms| {
            let mut p = gmcalc_core::MPoly::zero(3);
            for (exps, num, den) in terms {
                p.add_term(gmcalc_core::Monomial::new(exps), Rational::new(num, den));
            }
            p
        });
        proptest!(ProptestConfig::with_cases(128), |(p in poly)| {
            let text = p.display(&names, &ord);
            let back = parse_polynomial(&text, &names).unwrap();
            prop_assert_eq!(back, p);
        });
    }

    #[test]
    fn precedence_and_unary_minus() {
        let names = vec!["x".into(), "y".into()];
        let p = parse_polynomial("-x^2*y+2*(x-y)^2", &names).unwrap();
        // -x^2*y + 2x^2 - 4xy + 2y^2
        assert_eq!(
            p.coeff(&gmcalc_core::Monomial::new(vec![2, 1])),
            Rational::from_int(-1)
        );
        assert_eq!(
            p.coeff(&gmcalc_core::Monomial::new(vec![2, 0])),
            Rational::from_int(2)
        );
        assert_eq!(
            p.coeff(&gmcalc_core::Monomial::new(vec![1, 1])),
            Rational::from_int(-4)
        );
        assert_eq!(
            p.coeff(&gmcalc_core::Monomial::new(vec![0, 2])),
            Rational::from_int(2)
        );
    }
}
