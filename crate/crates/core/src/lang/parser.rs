use super::lexer::{tokenize, Tok, Token};
use super::{Formula, LangError, Term};

/// Maximum nesting of terms and formulas accepted by the parser.
pub const MAX_DEPTH: usize = 200;

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    depth: usize,
    end_column: usize,
}

type PResult<T> = Result<T, LangError>;

impl<'a> Parser<'a> {
    fn new(toks: &'a [Token]) -> Self {
        let end_column = toks
            .last()
            .map(|t| t.column + t.tok.to_string().chars().count())
            .unwrap_or(1);
        Parser {
            toks,
            pos: 0,
            depth: 0,
            end_column,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.column)
            .unwrap_or(self.end_column)
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        Err(LangError::Parse {
            column: self.column(),
            expected: expected.to_string(),
            found: match self.peek() {
                Some(t) => format!("`{t}`"),
                None => "end of input".to_string(),
            },
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.error(&format!("`{tok}`"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error("identifier"),
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            Err(LangError::TooDeep {
                column: self.column(),
                limit: MAX_DEPTH,
            })
        } else {
            Ok(())
        }
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn finish(&self) -> PResult<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    fn term(&mut self) -> PResult<Term> {
        self.enter()?;
        let t = self.term_inner();
        self.leave();
        t
    }

    fn term_inner(&mut self) -> PResult<Term> {
        let Some(tok) = self.peek().cloned() else {
            return self.error("a term");
        };
        self.pos += 1;
        match tok {
            Tok::LBrace => {
                let mut items = Vec::new();
                if self.eat(&Tok::RBrace) {
                    return Ok(Term::SetLit(items));
                }
                loop {
                    items.push(self.term()?);
                    if self.eat(&Tok::RBrace) {
                        return Ok(Term::SetLit(items));
                    }
                    if !self.eat(&Tok::Comma) {
                        return self.error("`,` or `}`");
                    }
                }
            }
            Tok::Hash => match self.peek() {
                Some(Tok::Ident(s)) => {
                    let s = s.clone();
                    self.pos += 1;
                    Ok(Term::AtomLit(s))
                }
                _ => self.error("atom identifier"),
            },
            Tok::Ident(name) => Ok(Term::Var(name)),
            Tok::Lt => {
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::Gt)?;
                Ok(Term::KPair(Box::new(a), Box::new(b)))
            }
            Tok::Union => Ok(Term::Union(Box::new(self.parenthesized_term()?))),
            Tok::Succ => Ok(Term::Succ(Box::new(self.parenthesized_term()?))),
            Tok::Funcs => {
                self.expect(Tok::LParen)?;
                let a = self.term()?;
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::FuncSet(Box::new(a), Box::new(b)))
            }
            Tok::Omega => {
                self.expect(Tok::LParen)?;
                let n = match self.peek() {
                    Some(Tok::Nat(n)) => *n,
                    _ => return self.error("a natural number"),
                };
                self.pos += 1;
                self.expect(Tok::RParen)?;
                Ok(Term::OmegaApprox(n))
            }
            Tok::Atoms => Ok(Term::AtomsSet),
            Tok::Sep => {
                let var = self.ident()?;
                if !self.eat(&Tok::In) {
                    return self.error("`in` bound");
                }
                let bound = self.term()?;
                self.expect(Tok::Dot)?;
                let body = self.closed_formula()?;
                Ok(Term::Sep {
                    var,
                    bound: Box::new(bound),
                    body: Box::new(body),
                })
            }
            _ => {
                self.pos -= 1;
                self.error("a term")
            }
        }
    }

    fn parenthesized_term(&mut self) -> PResult<Term> {
        self.expect(Tok::LParen)?;
        let t = self.term()?;
        self.expect(Tok::RParen)?;
        Ok(t)
    }

    fn formula(&mut self) -> PResult<Formula> {
        self.enter()?;
        let f = self.implies();
        self.leave();
        f
    }

    fn implies(&mut self) -> PResult<Formula> {
        let lhs = self.or()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.formula()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> PResult<Formula> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Formula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> PResult<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula> {
        self.enter()?;
        let f = match self.peek() {
            Some(Tok::All) | Some(Tok::Ex) => self.quantifier(),
            Some(Tok::Not) => {
                self.pos += 1;
                self.unary().map(|p| Formula::Not(Box::new(p)))
            }
            Some(Tok::LParen) => self.group(),
            _ => self.atomic(),
        };
        self.leave();
        f
    }

    /// A formula that cannot extend to the right: atomic, negated or
    /// parenthesized. Separation bodies use this form.
    fn closed_formula(&mut self) -> PResult<Formula> {
        self.enter()?;
        let f = match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                self.closed_formula().map(|p| Formula::Not(Box::new(p)))
            }
            Some(Tok::LParen) => self.group(),
            _ => self.atomic(),
        };
        self.leave();
        f
    }

    fn group(&mut self) -> PResult<Formula> {
        self.expect(Tok::LParen)?;
        let f = self.formula()?;
        self.expect(Tok::RParen)?;
        Ok(f)
    }

    fn quantifier(&mut self) -> PResult<Formula> {
        let universal = self.peek() == Some(&Tok::All);
        self.pos += 1;
        let var = self.ident()?;
        if !self.eat(&Tok::In) {
            return self.error("`in` bound (quantifiers must be bounded)");
        }
        let bound = self.term()?;
        self.expect(Tok::Dot)?;
        let body = Box::new(self.formula()?);
        Ok(if universal {
            Formula::AllIn { var, bound, body }
        } else {
            Formula::ExIn { var, bound, body }
        })
    }

    fn atomic(&mut self) -> PResult<Formula> {
        match self.peek() {
            Some(Tok::True) => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Tok::Set) => {
                self.pos += 1;
                Ok(Formula::IsSet(self.parenthesized_term()?))
            }
            Some(Tok::Atom) => {
                self.pos += 1;
                Ok(Formula::IsAtom(self.parenthesized_term()?))
            }
            Some(
                Tok::LBrace
                | Tok::Hash
                | Tok::Ident(_)
                | Tok::Lt
                | Tok::Union
                | Tok::Sep
                | Tok::Funcs
                | Tok::Succ
                | Tok::Omega
                | Tok::Atoms,
            ) => {
                let lhs = self.term()?;
                if self.eat(&Tok::Eq) {
                    Ok(Formula::Eq(lhs, self.term()?))
                } else if self.eat(&Tok::In) {
                    Ok(Formula::Mem(lhs, self.term()?))
                } else {
                    self.error("`=` or `in`")
                }
            }
            _ => self.error("a formula"),
        }
    }
}

pub fn parse_term_tokens(toks: &[Token]) -> Result<Term, LangError> {
    let mut p = Parser::new(toks);
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_formula_tokens(toks: &[Token]) -> Result<Formula, LangError> {
    let mut p = Parser::new(toks);
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, LangError> {
    parse_term_tokens(&tokenize(text)?)
}

pub fn parse_formula(text: &str) -> Result<Formula, LangError> {
    parse_formula_tokens(&tokenize(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Term {
        Term::Var(s.into())
    }

    #[test]
    fn separation_term() {
        let t = parse_term("sep x in {#a,{}} . atom(x)").unwrap();
        assert_eq!(
            t,
            Term::Sep {
                var: "x".into(),
                bound: Box::new(Term::SetLit(vec![
                    Term::AtomLit("a".into()),
                    Term::SetLit(vec![])
                ])),
                body: Box::new(Formula::IsAtom(v("x"))),
            }
        );
    }

    #[test]
    fn unbounded_quantifiers_rejected() {
        let e = parse_formula("all x . true").unwrap_err();
        assert!(matches!(e, LangError::Parse { column: 7, .. }), "{e}");
        assert!(e.to_string().contains("bounded"));
        assert!(parse_formula("ex y. y = y").is_err());
        assert!(parse_formula("all x in {} . ex y . x = y").is_err());
    }

    #[test]
    fn implication_associates_right() {
        let f = parse_formula("x = x -> y = y -> z = z").unwrap();
        let eq = |s: &str| Formula::Eq(v(s), v(s));
        assert_eq!(
            f,
            Formula::Implies(
                Box::new(eq("x")),
                Box::new(Formula::Implies(Box::new(eq("y")), Box::new(eq("z"))))
            )
        );
    }

    #[test]
    fn precedence() {
        let f = parse_formula("~true /\\ false \\/ true -> false").unwrap();
        assert_eq!(
            f,
            Formula::Implies(
                Box::new(Formula::Or(
                    Box::new(Formula::And(
                        Box::new(Formula::Not(Box::new(Formula::True))),
                        Box::new(Formula::False)
                    )),
                    Box::new(Formula::True)
                )),
                Box::new(Formula::False)
            )
        );
        let g = parse_formula("true /\\ false /\\ true").unwrap();
        assert_eq!(g.to_string(), "true /\\ false /\\ true");
        assert!(matches!(g, Formula::And(ref l, _) if matches!(**l, Formula::And(..))));
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            "{}",
            "{#a,{}}",
            "<x,{x}>",
            "union({{},{{}}})",
            "sep x in u . x = {}",
            "sep x in u . (atom(x) /\\ x in v)",
            "sep x in sep y in u . ~set(y) . (all z in x . false)",
            "funcs({{}},{{},{{}}})",
            "succ(omega(3))",
            "atoms",
        ] {
            let t = parse_term(s).unwrap();
            assert_eq!(t.to_string(), s);
            assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }
        for s in [
            "(all x in u . x = x) /\\ true",
            "~(true -> false)",
            "(true -> false) -> true",
            "true \\/ (false \\/ true)",
            "ex x in {} . all y in x . y in x",
            "sep x in u . x = {} = v",
        ] {
            let f = parse_formula(s).unwrap();
            assert_eq!(f.to_string(), s);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_term("{{}").unwrap_err();
        assert_eq!(e.column(), 4);
        let e = parse_formula("{} = ").unwrap_err();
        assert!(e.to_string().contains("end of input"));
        assert!(parse_term("(x)").is_err());
        assert!(parse_term("x y").is_err());
        assert!(parse_term("omega(x)").is_err());
        assert!(parse_term("#").is_err());
    }

    #[test]
    fn depth_is_limited() {
        let deep = "{".repeat(5000) + &"}".repeat(5000);
        assert!(matches!(parse_term(&deep), Err(LangError::TooDeep { .. })));
        let neg = "~".repeat(5000) + "true";
        assert!(matches!(
            parse_formula(&neg),
            Err(LangError::TooDeep { .. })
        ));
        let ok = "{".repeat(100) + &"}".repeat(100);
        assert!(parse_term(&ok).is_ok());
    }
}
