//! The term and bounded-formula language.
//!
//! Every quantifier carries an `in` bound, so unbounded formulas cannot be
//! written down at all.

mod lexer;
mod parser;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use lexer::{tokenize, Tok, Token};
pub use parser::{parse_formula, parse_formula_tokens, parse_term, parse_term_tokens, MAX_DEPTH};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("lexical error at column {column}: unexpected `{found}`")]
    Lex { column: usize, found: char },
    #[error("parse error at column {column}: expected {expected}, found {found}")]
    Parse {
        column: usize,
        expected: String,
        found: String,
    },
    #[error("parse error at column {column}: nesting deeper than {limit}")]
    TooDeep { column: usize, limit: usize },
}

impl LangError {
    pub fn column(&self) -> usize {
        match self {
            LangError::Lex { column, .. }
            | LangError::Parse { column, .. }
            | LangError::TooDeep { column, .. } => *column,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(String),
    AtomLit(String),
    SetLit(Vec<Term>),
    KPair(Box<Term>, Box<Term>),
    Union(Box<Term>),
    Sep {
        var: String,
        bound: Box<Term>,
        body: Box<Formula>,
    },
    FuncSet(Box<Term>, Box<Term>),
    Succ(Box<Term>),
    OmegaApprox(usize),
    AtomsSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Eq(Term, Term),
    Mem(Term, Term),
    IsSet(Term),
    IsAtom(Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    True,
    False,
    AllIn {
        var: String,
        bound: Term,
        body: Box<Formula>,
    },
    ExIn {
        var: String,
        bound: Term,
        body: Box<Formula>,
    },
}

impl Term {
    /// Atom identifiers written anywhere in the term.
    pub fn atom_ids(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::AtomLit(id) => {
                out.insert(id.clone());
            }
            Term::SetLit(ts) => ts.iter().for_each(|t| t.collect_atoms(out)),
            Term::KPair(a, b) | Term::FuncSet(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Term::Union(t) | Term::Succ(t) => t.collect_atoms(out),
            Term::Sep { bound, body, .. } => {
                bound.collect_atoms(out);
                body.collect_atoms(out);
            }
            Term::Var(_) | Term::OmegaApprox(_) | Term::AtomsSet => {}
        }
    }
}

impl Formula {
    pub fn atom_ids(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) | Formula::Mem(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::IsSet(t) | Formula::IsAtom(t) => t.collect_atoms(out),
            Formula::Not(p) => p.collect_atoms(out),
            Formula::And(p, q) | Formula::Or(p, q) | Formula::Implies(p, q) => {
                p.collect_atoms(out);
                q.collect_atoms(out);
            }
            Formula::True | Formula::False => {}
            Formula::AllIn { bound, body, .. } | Formula::ExIn { bound, body, .. } => {
                bound.collect_atoms(out);
                body.collect_atoms(out);
            }
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(
            self,
            Formula::Eq(..)
                | Formula::Mem(..)
                | Formula::IsSet(_)
                | Formula::IsAtom(_)
                | Formula::True
                | Formula::False
        )
    }

    /// Binding strength: 4 unary, 3 and, 2 or, 1 implies, 0 quantifier.
    fn level(&self) -> u8 {
        match self {
            Formula::AllIn { .. } | Formula::ExIn { .. } => 0,
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            _ => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Mem(a, b) => write!(f, "{a} in {b}"),
            Formula::IsSet(t) => write!(f, "set({t})"),
            Formula::IsAtom(t) => write!(f, "atom({t})"),
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Not(p) => {
                write!(f, "~")?;
                p.fmt_at(f, 4)
            }
            Formula::And(p, q) => {
                p.fmt_at(f, 3)?;
                write!(f, " /\\ ")?;
                q.fmt_at(f, 4)
            }
            Formula::Or(p, q) => {
                p.fmt_at(f, 2)?;
                write!(f, " \\/ ")?;
                q.fmt_at(f, 3)
            }
            Formula::Implies(p, q) => {
                p.fmt_at(f, 2)?;
                write!(f, " -> ")?;
                q.fmt_at(f, 1)
            }
            Formula::AllIn { var, bound, body } => write!(f, "all {var} in {bound} . {body}"),
            Formula::ExIn { var, bound, body } => write!(f, "ex {var} in {bound} . {body}"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::AtomLit(id) => write!(f, "#{id}"),
            Term::SetLit(ts) => {
                write!(f, "{{")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "}}")
            }
            Term::KPair(a, b) => write!(f, "<{a},{b}>"),
            Term::Union(t) => write!(f, "union({t})"),
            Term::Sep { var, bound, body } => {
                write!(f, "sep {var} in {bound} . ")?;
                if body.is_atomic() || matches!(**body, Formula::Not(_)) {
                    write!(f, "{body}")
                } else {
                    write!(f, "({body})")
                }
            }
            Term::FuncSet(a, b) => write!(f, "funcs({a},{b})"),
            Term::Succ(t) => write!(f, "succ({t})"),
            Term::OmegaApprox(n) => write!(f, "omega({n})"),
            Term::AtomsSet => write!(f, "atoms"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
