use num_bigint::BigInt;

use crate::error::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Prime,
    Eq,
    Colon,
    Comma,
    Newline,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub fn error_at(t: &Token, kind: ParseErrorKind) -> ParseError {
    ParseError {
        line: t.line,
        column: t.column,
        kind,
    }
}

/// Splits `text` into tokens; comments run from `#` to the end of the line.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let start = col;
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '\'' => Some(Tok::Prime),
            '=' => Some(Tok::Eq),
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = simple {
            chars.next();
            col += 1;
            out.push(Token { tok, line, column: start });
            continue;
        }
        match c {
            '\n' => {
                chars.next();
                out.push(Token {
                    tok: Tok::Newline,
                    line,
                    column: start,
                });
                line += 1;
                col = 1;
            }
            '#' => {
                while let Some(&d) = chars.peek() {
                    if d == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    s.push(d);
                    chars.next();
                    col += 1;
                }
                let n: BigInt = s.parse().expect("digits");
                out.push(Token {
                    tok: Tok::Int(n),
                    line,
                    column: start,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    s.push(d);
                    chars.next();
                    col += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(s),
                    line,
                    column: start,
                });
            }
            other => {
                return Err(ParseError {
                    line,
                    column: start,
                    kind: ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                })
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let toks = tokenize("x1' = a # rate\n  y").unwrap();
        let kinds: Vec<&Tok> = toks.iter().map(|t| &t.tok).collect();
        assert_eq!(
            kinds,
            vec![
                &Tok::Ident("x1".into()),
                &Tok::Prime,
                &Tok::Eq,
                &Tok::Ident("a".into()),
                &Tok::Newline,
                &Tok::Ident("y".into()),
                &Tok::Eof
            ]
        );
        assert_eq!((toks[5].line, toks[5].column), (2, 3));
    }

    #[test]
    fn bad_character() {
        let e = tokenize("a = 1 $ 2").unwrap_err();
        assert_eq!((e.line, e.column), (1, 7));
    }
}
