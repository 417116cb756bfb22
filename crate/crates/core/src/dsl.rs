//! Text syntax for tangle words.
//!
//! ```text
//! expr   := term (';' term)*
//! term   := factor ('*' factor)*
//! factor := 'cup' | 'cap' | 'x+' | 'x-' | 'id(' n ')' | '@' name | '(' expr ')'
//! ```
//!
//! `;` composes left first and binds looser than `*` (tensor).

use std::fmt;

use thiserror::Error;

use crate::library;
use crate::tangle::{Generator, TangleError, TangleWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("arity error: {left} strands meet {right}")]
    Arity { left: usize, right: usize },
    #[error("unknown reference @{0}")]
    UnknownName(String),
    #[error("word passes through {0} strands; the limit is {max}", max = crate::tangle::MAX_STRANDS)]
    TooWide(usize),
}

impl From<TangleError> for DslError {
    fn from(e: TangleError) -> Self {
        match e {
            TangleError::ArityMismatch { left, right } => DslError::Arity { left, right },
            TangleError::TooWide(n) => DslError::TooWide(n),
            TangleError::BrokenChain {
                expected, found, ..
            } => DslError::Arity {
                left: expected,
                right: found,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TangleAst {
    Cup,
    Cap,
    Xp,
    Xm,
    Id(usize),
    Named(String),
    Compose(Box<TangleAst>, Box<TangleAst>),
    Tensor(Box<TangleAst>, Box<TangleAst>),
}

impl fmt::Display for TangleAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleAst::Cup => f.write_str("cup"),
            TangleAst::Cap => f.write_str("cap"),
            TangleAst::Xp => f.write_str("x+"),
            TangleAst::Xm => f.write_str("x-"),
            TangleAst::Id(n) => write!(f, "id({n})"),
            TangleAst::Named(n) => write!(f, "@{n}"),
            TangleAst::Compose(a, b) => write!(f, "({a} ; {b})"),
            TangleAst::Tensor(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(usize),
    At(String),
    Plus,
    Minus,
    LParen,
    RParen,
    Semi,
    Star,
    End,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    column: usize,
}

type Spanned = (Tok, usize, usize);

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Self {
        Self {
            chars: input.char_indices().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|&c| f(c)) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, DslError> {
        let mut out = Vec::new();
        loop {
            self.take_while(char::is_whitespace);
            let (line, column) = (self.line, self.column);
            let Some(c) = self.peek() else {
                out.push((Tok::End, line, column));
                return Ok(out);
            };
            let tok = match c {
                '(' | ')' | ';' | '*' | '+' | '-' => {
                    self.bump();
                    match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        ';' => Tok::Semi,
                        '*' => Tok::Star,
                        '+' => Tok::Plus,
                        _ => Tok::Minus,
                    }
                }
                '@' => {
                    self.bump();
                    let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                    if name.is_empty() {
                        return Err(syntax(line, column, "expected a name after '@'"));
                    }
                    Tok::At(name)
                }
                c if c.is_ascii_digit() => {
                    let digits = self.take_while(|c| c.is_ascii_digit());
                    Tok::Num(
                        digits
                            .parse()
                            .map_err(|_| syntax(line, column, "number too large"))?,
                    )
                }
                c if c.is_ascii_alphabetic() => {
                    Tok::Word(self.take_while(|c| c.is_ascii_alphanumeric()))
                }
                other => {
                    return Err(syntax(
                        line,
                        column,
                        &format!("unexpected character {other:?}"),
                    ))
                }
            };
            out.push((tok, line, column));
        }
    }
}

fn syntax(line: usize, column: usize, message: &str) -> DslError {
    DslError::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: &str) -> DslError {
        let (_, line, column) = &self.toks[self.pos];
        syntax(*line, *column, message)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), DslError> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(&format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<TangleAst, DslError> {
        let mut lhs = self.term()?;
        while *self.peek() == Tok::Semi {
            self.next();
            lhs = TangleAst::Compose(Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<TangleAst, DslError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.next();
            lhs = TangleAst::Tensor(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<TangleAst, DslError> {
        let (tok, line, column) = self.next();
        match tok {
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::At(name) => Ok(TangleAst::Named(name)),
            Tok::Word(w) => match w.as_str() {
                "cup" => Ok(TangleAst::Cup),
                "cap" => Ok(TangleAst::Cap),
                "x" => match self.next().0 {
                    Tok::Plus => Ok(TangleAst::Xp),
                    Tok::Minus => Ok(TangleAst::Xm),
                    _ => Err(syntax(line, column, "expected 'x+' or 'x-'")),
                },
                "id" => {
                    self.expect(Tok::LParen, "'(' after id")?;
                    let n = match self.next().0 {
                        Tok::Num(n) => n,
                        _ => return Err(syntax(line, column, "expected a strand count in id(n)")),
                    };
                    self.expect(Tok::RParen, "')'")?;
                    Ok(TangleAst::Id(n))
                }
                other => Err(syntax(
                    line,
                    column,
                    &format!("unknown generator {other:?}"),
                )),
            },
            Tok::End => Err(syntax(line, column, "unexpected end of input")),
            other => Err(syntax(
                line,
                column,
                &format!("unexpected {}", describe(&other)),
            )),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Word(_) => "word",
        Tok::Num(_) => "number",
        Tok::At(_) => "reference",
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::Semi => "';'",
        Tok::Star => "'*'",
        Tok::End => "end of input",
    }
}

pub fn parse(input: &str) -> Result<TangleAst, DslError> {
    let toks = Lexer::new(input).tokens()?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error_here("trailing input"));
    }
    Ok(ast)
}

pub fn lower(ast: &TangleAst) -> Result<TangleWord, DslError> {
    Ok(match ast {
        TangleAst::Cup => TangleWord::cup(),
        TangleAst::Cap => TangleWord::cap(),
        TangleAst::Xp => TangleWord::xp(),
        TangleAst::Xm => TangleWord::xm(),
        TangleAst::Id(n) => {
            if *n > crate::tangle::MAX_STRANDS {
                return Err(DslError::TooWide(*n));
            }
            TangleWord::identity(*n)
        }
        TangleAst::Named(name) => {
            let text = library::builtin(name).ok_or_else(|| DslError::UnknownName(name.clone()))?;
            parse_word(text)?
        }
        TangleAst::Compose(a, b) => lower(a)?.compose(&lower(b)?)?,
        TangleAst::Tensor(a, b) => lower(a)?.tensor(&lower(b)?)?,
    })
}

pub fn parse_word(input: &str) -> Result<TangleWord, DslError> {
    lower(&parse(input)?)
}

/// DSL text that parses back to `word`.
pub fn print_word(word: &TangleWord) -> String {
    if word.slices().is_empty() {
        return format!("id({})", word.source());
    }
    let slices: Vec<String> = word
        .slices()
        .iter()
        .map(|s| {
            let mut parts: Vec<String> = Vec::new();
            let mut ids = 0;
            for &g in s.factors() {
                if g == Generator::Id {
                    ids += 1;
                    continue;
                }
                if ids > 0 {
                    parts.push(format!("id({ids})"));
                    ids = 0;
                }
                parts.push(
                    match g {
                        Generator::Cup => "cup",
                        Generator::Cap => "cap",
                        Generator::Xp => "x+",
                        Generator::Xm => "x-",
                        Generator::Id => unreachable!(),
                    }
                    .to_string(),
                );
            }
            if ids > 0 {
                parts.push(format!("id({ids})"));
            }
            if parts.len() == 1 {
                parts.remove(0)
            } else {
                format!("({})", parts.join(" * "))
            }
        })
        .collect();
    slices.join(" ; ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::Slice;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let unknot = parse_word("cup ; cap").unwrap();
        assert!(unknot.is_link());
        assert_eq!(
            unknot,
            TangleWord::cup().compose(&TangleWord::cap()).unwrap()
        );
        let zig = parse_word("(cup * id(1)) ; (id(1) * cap)").unwrap();
        assert_eq!((zig.source(), zig.target()), (1, 1));
        assert_eq!(
            zig.slices(),
            &[
                Slice(vec![Generator::Cup, Generator::Id]),
                Slice(vec![Generator::Id, Generator::Cap])
            ]
        );
        let w = parse_word("cup ; x+").unwrap();
        assert_eq!((w.source(), w.target()), (0, 2));
        assert_eq!(
            parse_word("cap ; cap").unwrap_err(),
            DslError::Arity { left: 0, right: 2 }
        );
    }

    #[test]
    fn precedence() {
        let ast = parse("cup * cup ; cap * cap").unwrap();
        assert!(matches!(ast, TangleAst::Compose(_, _)));
        let w = lower(&ast).unwrap();
        assert!(w.is_link());
        assert_eq!(w.slices().len(), 2);
    }

    #[test]
    fn references() {
        assert_eq!(parse_word("@e").unwrap(), TangleWord::turnback());
        assert_eq!(parse_word("@unknot * @unknot").unwrap().slices().len(), 2);
        assert_eq!(
            parse_word("@knot").unwrap_err(),
            DslError::UnknownName("knot".into())
        );
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse("cup ;\n  cap )").unwrap_err() {
            DslError::Syntax { line, column, .. } => assert_eq!((line, column), (2, 7)),
            e => panic!("{e}"),
        }
        match parse("cup ; x*").unwrap_err() {
            DslError::Syntax { line, column, .. } => assert_eq!((line, column), (1, 7)),
            e => panic!("{e}"),
        }
        assert!(matches!(
            parse(""),
            Err(DslError::Syntax {
                line: 1,
                column: 1,
                ..
            })
        ));
        assert!(matches!(parse("id(x)"), Err(DslError::Syntax { .. })));
        assert!(matches!(
            parse("cup % cap"),
            Err(DslError::Syntax {
                line: 1,
                column: 5,
                ..
            })
        ));
        assert!(matches!(parse("(cup ; cap"), Err(DslError::Syntax { .. })));
    }

    #[test]
    fn printing() {
        assert_eq!(print_word(&TangleWord::identity(3)), "id(3)");
        let w = parse_word("(id(2) * x+ * id(1)) ; (cap * id(3))").unwrap();
        assert_eq!(print_word(&w), "(id(2) * x+ * id(1)) ; (cap * id(3))");
        assert_eq!(w.to_string(), print_word(&w));
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(w in crate::tangle::tests::arb_word(6)) {
            prop_assert_eq!(parse_word(&print_word(&w)).unwrap(), w);
        }

        #[test]
        fn link_round_trip(w in crate::library::arb_link(6, 6)) {
            prop_assert_eq!(parse_word(&print_word(&w)).unwrap(), w);
        }
    }
}
