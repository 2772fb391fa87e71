//! Recursive-descent parser producing a named source tree.
//!
//! Precedence, tightest first: type application `e[T]` and the prefix
//! operators (`proj1`, `proj2`, `inN`) over atoms; then left-associative
//! juxtaposition for application; then left-associative `or`; binder
//! forms (`fun`, `Lam`, `let`, `if`, `ifz`, `case`) extend as far right
//! as possible. For types: `*` binds tighter than `->`, `->` associates
//! to the right, and `mu`/`all` extend right (their arms and bodies may
//! contain arrows; a `mu` or `all` used as an operand of `*` or `->`
//! must be parenthesized).

use super::lexer::{lex, LexError, Tok, Token};
use crate::syntax::Proj;
use thiserror::Error;

/// A parse failure: where it happened, what would have been accepted
/// there, and a short description of what was found instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}{}", fmt_expected(expected))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub message: String,
}

fn fmt_expected(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(" or "))
    }
}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError {
            offset: e.offset,
            expected: Vec::new(),
            message: e.to_string(),
        }
    }
}

/// A type as written: names instead of indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceType {
    Var(String, usize),
    Unit,
    Prod(Box<SourceType>, Box<SourceType>),
    Arrow(Box<SourceType>, Box<SourceType>),
    Mu { name: String, arms: Vec<SourceType> },
    All { name: String, body: Box<SourceType> },
}

/// One `inK x => body` branch of a `case`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseArm {
    pub tag: usize,
    pub name: String,
    pub body: SourceTerm,
    pub offset: usize,
}

/// A term as written: names, sugar forms, and source offsets where a
/// later phase may need to report an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceTerm {
    Var(String, usize),
    Unit,
    Pair(Box<SourceTerm>, Box<SourceTerm>),
    Fun {
        name: String,
        ann: Option<SourceType>,
        body: Box<SourceTerm>,
    },
    TyFun {
        name: String,
        body: Box<SourceTerm>,
    },
    Let {
        name: String,
        bound: Box<SourceTerm>,
        body: Box<SourceTerm>,
    },
    /// `if` (`zero_test: false`) tests a boolean; `ifz` (`true`) tests
    /// whether a numeral is zero. Both expand to the same shape.
    If {
        zero_test: bool,
        scrut: Box<SourceTerm>,
        then: Box<SourceTerm>,
        els: Box<SourceTerm>,
    },
    Case {
        scrut: Box<SourceTerm>,
        arms: Vec<CaseArm>,
    },
    Or(Box<SourceTerm>, Box<SourceTerm>),
    App(Box<SourceTerm>, Box<SourceTerm>),
    Proj {
        which: Proj,
        of: Box<SourceTerm>,
    },
    Inj {
        arm: usize,
        annot: Option<SourceType>,
        payload: Box<SourceTerm>,
        offset: usize,
    },
    TyApp(Box<SourceTerm>, SourceType),
    Choice,
    Numeral(u64),
    True,
    False,
    Fix,
    Omega(SourceType),
    /// `[]` — only accepted when parsing an evaluation context.
    Hole(usize),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: usize,
    allow_hole: bool,
}

impl Parser {
    fn new(src: &str, allow_hole: bool) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
            end: src.len(),
            allow_hole,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.offset)
    }

    fn err(&self, expected: &[&str]) -> ParseError {
        let found = match self.peek() {
            Some(t) => format!("found {}", t.describe()),
            None => "found end of input".to_string(),
        };
        ParseError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            message: found,
        }
    }

    fn expect(&mut self, want: &Tok, describe: &str) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&[describe]))
        }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(&["an identifier"])),
        }
    }

    fn expect_tyvar(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::TyVar(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(&["a type variable like `'a`"])),
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.toks.len()
    }

    // ---- terms ----

    fn expr(&mut self) -> Result<SourceTerm, ParseError> {
        match self.peek() {
            Some(Tok::KwFun) => {
                self.pos += 1;
                let name = self.expect_ident()?;
                let ann = if self.peek() == Some(&Tok::Colon) {
                    self.pos += 1;
                    Some(self.ty()?)
                } else {
                    None
                };
                self.expect(&Tok::FatArrow, "`=>`")?;
                let body = self.expr()?;
                Ok(SourceTerm::Fun {
                    name,
                    ann,
                    body: Box::new(body),
                })
            }
            Some(Tok::KwTyFun) => {
                self.pos += 1;
                let name = self.expect_tyvar()?;
                self.expect(&Tok::FatArrow, "`=>`")?;
                let body = self.expr()?;
                Ok(SourceTerm::TyFun {
                    name,
                    body: Box::new(body),
                })
            }
            Some(Tok::KwLet) => {
                self.pos += 1;
                let name = self.expect_ident()?;
                self.expect(&Tok::Eq, "`=`")?;
                let bound = self.expr()?;
                self.expect(&Tok::KwIn, "`in`")?;
                let body = self.expr()?;
                Ok(SourceTerm::Let {
                    name,
                    bound: Box::new(bound),
                    body: Box::new(body),
                })
            }
            Some(Tok::KwIf) | Some(Tok::KwIfz) => {
                let zero_test = self.peek() == Some(&Tok::KwIfz);
                self.pos += 1;
                let scrut = self.expr()?;
                self.expect(&Tok::KwThen, "`then`")?;
                let then = self.expr()?;
                self.expect(&Tok::KwElse, "`else`")?;
                let els = self.expr()?;
                Ok(SourceTerm::If {
                    zero_test,
                    scrut: Box::new(scrut),
                    then: Box::new(then),
                    els: Box::new(els),
                })
            }
            Some(Tok::KwCase) => {
                self.pos += 1;
                let scrut = self.expr()?;
                self.expect(&Tok::KwOf, "`of`")?;
                let mut arms = vec![self.case_arm()?];
                while self.peek() == Some(&Tok::Pipe) {
                    self.pos += 1;
                    arms.push(self.case_arm()?);
                }
                Ok(SourceTerm::Case {
                    scrut: Box::new(scrut),
                    arms,
                })
            }
            _ => self.or_chain(),
        }
    }

    fn case_arm(&mut self) -> Result<CaseArm, ParseError> {
        let offset = self.offset();
        let tag = match self.peek() {
            Some(&Tok::InjTag(k)) => {
                self.pos += 1;
                k
            }
            _ => return Err(self.err(&["a branch tag like `in1`"])),
        };
        let name = self.expect_ident()?;
        self.expect(&Tok::FatArrow, "`=>`")?;
        let body = self.expr()?;
        Ok(CaseArm {
            tag,
            name,
            body,
            offset,
        })
    }

    fn or_chain(&mut self) -> Result<SourceTerm, ParseError> {
        let mut e = self.app_expr()?;
        while self.peek() == Some(&Tok::KwOr) {
            self.pos += 1;
            let rhs = self.app_expr()?;
            e = SourceTerm::Or(Box::new(e), Box::new(rhs));
        }
        Ok(e)
    }

    fn starts_operand(&self) -> bool {
        match self.peek() {
            Some(Tok::KwProj1 | Tok::KwProj2 | Tok::InjTag(_)) => true,
            Some(Tok::LBrack) => self.allow_hole && self.peek2() == Some(&Tok::RBrack),
            Some(t) => starts_atom(t),
            None => false,
        }
    }

    fn app_expr(&mut self) -> Result<SourceTerm, ParseError> {
        let mut e = self.operand()?;
        while self.starts_operand() {
            let arg = self.operand()?;
            e = SourceTerm::App(Box::new(e), Box::new(arg));
        }
        Ok(e)
    }

    fn operand(&mut self) -> Result<SourceTerm, ParseError> {
        match self.peek() {
            Some(Tok::KwProj1) | Some(Tok::KwProj2) => {
                let which = if self.peek() == Some(&Tok::KwProj1) {
                    Proj::Fst
                } else {
                    Proj::Snd
                };
                self.pos += 1;
                let of = self.postfix()?;
                Ok(SourceTerm::Proj {
                    which,
                    of: Box::new(of),
                })
            }
            Some(&Tok::InjTag(arm)) => {
                let offset = self.offset();
                self.pos += 1;
                let annot = if self.peek() == Some(&Tok::LBrack) {
                    self.pos += 1;
                    let t = self.ty()?;
                    self.expect(&Tok::RBrack, "`]`")?;
                    Some(t)
                } else {
                    None
                };
                let payload = self.postfix()?;
                Ok(SourceTerm::Inj {
                    arm,
                    annot,
                    payload: Box::new(payload),
                    offset,
                })
            }
            _ => self.postfix(),
        }
    }

    fn postfix(&mut self) -> Result<SourceTerm, ParseError> {
        let mut e = self.atom()?;
        while self.peek() == Some(&Tok::LBrack) {
            if self.peek2() == Some(&Tok::RBrack) {
                // `[]` after an atom is a hole argument, not a type
                // application; leave it for the application loop.
                break;
            }
            self.pos += 1;
            let t = self.ty()?;
            self.expect(&Tok::RBrack, "`]`")?;
            e = SourceTerm::TyApp(Box::new(e), t);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<SourceTerm, ParseError> {
        let offset = self.offset();
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                Ok(SourceTerm::Var(name, offset))
            }
            Some(&Tok::Num(n)) => {
                self.pos += 1;
                Ok(SourceTerm::Numeral(n))
            }
            Some(Tok::KwTrue) => {
                self.pos += 1;
                Ok(SourceTerm::True)
            }
            Some(Tok::KwFalse) => {
                self.pos += 1;
                Ok(SourceTerm::False)
            }
            Some(Tok::Question) => {
                self.pos += 1;
                Ok(SourceTerm::Choice)
            }
            Some(Tok::KwFix) => {
                self.pos += 1;
                Ok(SourceTerm::Fix)
            }
            Some(Tok::KwOmega) => {
                self.pos += 1;
                self.expect(&Tok::LBrack, "`[`")?;
                let t = self.ty()?;
                self.expect(&Tok::RBrack, "`]`")?;
                Ok(SourceTerm::Omega(t))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::RParen) {
                    self.pos += 1;
                    return Ok(SourceTerm::Unit);
                }
                let e = self.expr()?;
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    let e2 = self.expr()?;
                    self.expect(&Tok::RParen, "`)`")?;
                    return Ok(SourceTerm::Pair(Box::new(e), Box::new(e2)));
                }
                self.expect(&Tok::RParen, "`)` or `,`")?;
                Ok(e)
            }
            Some(Tok::LBrack) if self.allow_hole => {
                self.pos += 1;
                self.expect(&Tok::RBrack, "`]`")?;
                Ok(SourceTerm::Hole(offset))
            }
            _ => Err(self.err(&["a term"])),
        }
    }

    // ---- types ----

    fn ty(&mut self) -> Result<SourceType, ParseError> {
        match self.peek() {
            Some(Tok::KwAll) => {
                self.pos += 1;
                let name = self.expect_tyvar()?;
                self.expect(&Tok::Dot, "`.`")?;
                let body = self.ty()?;
                Ok(SourceType::All {
                    name,
                    body: Box::new(body),
                })
            }
            Some(Tok::KwMu) => {
                self.pos += 1;
                let name = self.expect_tyvar()?;
                self.expect(&Tok::Dot, "`.`")?;
                let mut arms = vec![self.arrow_ty()?];
                while self.peek() == Some(&Tok::Plus) {
                    self.pos += 1;
                    arms.push(self.arrow_ty()?);
                }
                Ok(SourceType::Mu { name, arms })
            }
            _ => self.arrow_ty(),
        }
    }

    fn arrow_ty(&mut self) -> Result<SourceType, ParseError> {
        let a = self.prod_ty()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let b = self.ty()?;
            Ok(SourceType::Arrow(Box::new(a), Box::new(b)))
        } else {
            Ok(a)
        }
    }

    fn prod_ty(&mut self) -> Result<SourceType, ParseError> {
        let mut a = self.atom_ty()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let b = self.atom_ty()?;
            a = SourceType::Prod(Box::new(a), Box::new(b));
        }
        Ok(a)
    }

    fn atom_ty(&mut self) -> Result<SourceType, ParseError> {
        let offset = self.offset();
        match self.peek() {
            Some(Tok::KwUnit) => {
                self.pos += 1;
                Ok(SourceType::Unit)
            }
            Some(Tok::TyVar(name)) => {
                let name = name.clone();
                self.pos += 1;
                Ok(SourceType::Var(name, offset))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.ty()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            _ => Err(self.err(&["a type"])),
        }
    }

    fn finish<T>(&self, value: T) -> Result<T, ParseError> {
        if self.at_end() {
            Ok(value)
        } else {
            Err(self.err(&["end of input"]))
        }
    }
}

fn starts_atom(t: &Tok) -> bool {
    matches!(
        t,
        Tok::Ident(_)
            | Tok::Num(_)
            | Tok::KwTrue
            | Tok::KwFalse
            | Tok::Question
            | Tok::KwFix
            | Tok::KwOmega
            | Tok::LParen
    )
}

/// Parse a complete term. Holes (`[]`) are rejected.
pub fn parse_term(src: &str) -> Result<SourceTerm, ParseError> {
    let mut p = Parser::new(src, false)?;
    let e = p.expr()?;
    p.finish(e)
}

/// Parse a complete term in which `[]` is an allowed atom. Used for
/// evaluation contexts.
pub(crate) fn parse_term_with_hole(src: &str) -> Result<SourceTerm, ParseError> {
    let mut p = Parser::new(src, true)?;
    let e = p.expr()?;
    p.finish(e)
}

/// Parse a complete type.
pub fn parse_type(src: &str) -> Result<SourceType, ParseError> {
    let mut p = Parser::new(src, false)?;
    let t = p.ty()?;
    p.finish(t)
}
