use std::fmt;

use super::LangError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    LBrace,
    RBrace,
    Comma,
    Lt,
    Gt,
    Eq,
    In,
    Set,
    Atom,
    All,
    Ex,
    Dot,
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    Hash,
    Ident(String),
    Nat(usize),
    Union,
    Sep,
    Funcs,
    Succ,
    Omega,
    Atoms,
    True,
    False,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::Eq => "=",
            Tok::In => "in",
            Tok::Set => "set",
            Tok::Atom => "atom",
            Tok::All => "all",
            Tok::Ex => "ex",
            Tok::Dot => ".",
            Tok::Not => "~",
            Tok::And => "/\\",
            Tok::Or => "\\/",
            Tok::Implies => "->",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Hash => "#",
            Tok::Ident(s) => return write!(f, "{s}"),
            Tok::Nat(n) => return write!(f, "{n}"),
            Tok::Union => "union",
            Tok::Sep => "sep",
            Tok::Funcs => "funcs",
            Tok::Succ => "succ",
            Tok::Omega => "omega",
            Tok::Atoms => "atoms",
            Tok::True => "true",
            Tok::False => "false",
        };
        f.write_str(s)
    }
}

/// A token with its 1-based character column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub column: usize,
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "in" => Tok::In,
        "set" => Tok::Set,
        "atom" => Tok::Atom,
        "all" => Tok::All,
        "ex" => Tok::Ex,
        "union" => Tok::Union,
        "sep" => Tok::Sep,
        "funcs" => Tok::Funcs,
        "succ" => Tok::Succ,
        "omega" => Tok::Omega,
        "atoms" => Tok::Atoms,
        "true" => Tok::True,
        "false" => Tok::False,
        _ => return None,
    })
}

fn atom_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(input: &str) -> Result<Vec<Token>, LangError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let two = |s: &str| chars[i..].iter().take(2).copied().eq(s.chars());
        let single = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            '<' => Some(Tok::Lt),
            '>' => Some(Tok::Gt),
            '=' => Some(Tok::Eq),
            '.' => Some(Tok::Dot),
            '~' => Some(Tok::Not),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, column });
            i += 1;
        } else if two("/\\") {
            out.push(Token {
                tok: Tok::And,
                column,
            });
            i += 2;
        } else if two("\\/") {
            out.push(Token {
                tok: Tok::Or,
                column,
            });
            i += 2;
        } else if two("->") {
            out.push(Token {
                tok: Tok::Implies,
                column,
            });
            i += 2;
        } else if c == '#' {
            out.push(Token {
                tok: Tok::Hash,
                column,
            });
            i += 1;
            let start = i;
            while i < chars.len() && atom_char(chars[i]) {
                i += 1;
            }
            if i > start {
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    column: start + 1,
                });
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            // Overlong numerals saturate; the evaluator caps them anyway.
            let n = text.parse().unwrap_or(usize::MAX);
            out.push(Token {
                tok: Tok::Nat(n),
                column,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && atom_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let tok = keyword(&word).unwrap_or(Tok::Ident(word));
            out.push(Token { tok, column });
        } else {
            return Err(LangError::Lex { column, found: c });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn braces() {
        assert_eq!(toks("{}"), vec![Tok::LBrace, Tok::RBrace]);
    }

    #[test]
    fn atoms_and_membership() {
        let a = || Tok::Ident("a".into());
        assert_eq!(
            toks("#a in {#a}"),
            vec![
                Tok::Hash,
                a(),
                Tok::In,
                Tok::LBrace,
                Tok::Hash,
                a(),
                Tok::RBrace
            ]
        );
        assert_eq!(toks("#in"), vec![Tok::Hash, Tok::Ident("in".into())]);
        assert_eq!(toks("#0x"), vec![Tok::Hash, Tok::Ident("0x".into())]);
    }

    #[test]
    fn connectives() {
        assert_eq!(
            toks("~p/\\q\\/r->s"),
            vec![
                Tok::Not,
                Tok::Ident("p".into()),
                Tok::And,
                Tok::Ident("q".into()),
                Tok::Or,
                Tok::Ident("r".into()),
                Tok::Implies,
                Tok::Ident("s".into()),
            ]
        );
        assert_eq!(
            toks("atoms atom omega(3)"),
            vec![
                Tok::Atoms,
                Tok::Atom,
                Tok::Omega,
                Tok::LParen,
                Tok::Nat(3),
                Tok::RParen
            ]
        );
    }

    #[test]
    fn lexical_errors() {
        assert_eq!(
            tokenize("@@"),
            Err(LangError::Lex {
                column: 1,
                found: '@'
            })
        );
        assert_eq!(
            tokenize("{} /"),
            Err(LangError::Lex {
                column: 4,
                found: '/'
            })
        );
        assert_eq!(tokenize("x - y").unwrap_err().column(), 3);
    }

    #[test]
    fn columns_count_characters() {
        let t = tokenize("∅").unwrap_err();
        assert_eq!(t.column(), 1);
        let t = tokenize("{} ∈ x").unwrap_err();
        assert_eq!(t.column(), 4);
    }
}
