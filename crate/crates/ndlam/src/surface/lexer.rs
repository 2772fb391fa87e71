//! Tokenizer for the surface syntax.

use thiserror::Error;

/// A lexical token. Word-shaped tokens are classified after reading the
/// whole word, so `in1` is an injection tag, `in` a keyword, and `in1x`
/// an ordinary identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    TyVar(String),
    Num(u64),
    /// `in1`, `in2`, … — injection tag with its 1-based arm number.
    InjTag(usize),
    KwFun,
    KwTyFun,
    KwLet,
    KwIn,
    KwIf,
    KwIfz,
    KwThen,
    KwElse,
    KwCase,
    KwOf,
    KwOr,
    KwProj1,
    KwProj2,
    KwTrue,
    KwFalse,
    KwUnit,
    KwMu,
    KwAll,
    KwFix,
    KwOmega,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    FatArrow,
    Arrow,
    Eq,
    Pipe,
    Question,
    Plus,
    Star,
    Colon,
}

impl Tok {
    /// Short human-readable rendering used in error messages.
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::TyVar(s) => format!("type variable `'{s}`"),
            Tok::Num(n) => format!("numeral `{n}`"),
            Tok::InjTag(k) => format!("`in{k}`"),
            Tok::KwFun => "`fun`".into(),
            Tok::KwTyFun => "`Lam`".into(),
            Tok::KwLet => "`let`".into(),
            Tok::KwIn => "`in`".into(),
            Tok::KwIf => "`if`".into(),
            Tok::KwIfz => "`ifz`".into(),
            Tok::KwThen => "`then`".into(),
            Tok::KwElse => "`else`".into(),
            Tok::KwCase => "`case`".into(),
            Tok::KwOf => "`of`".into(),
            Tok::KwOr => "`or`".into(),
            Tok::KwProj1 => "`proj1`".into(),
            Tok::KwProj2 => "`proj2`".into(),
            Tok::KwTrue => "`true`".into(),
            Tok::KwFalse => "`false`".into(),
            Tok::KwUnit => "`unit`".into(),
            Tok::KwMu => "`mu`".into(),
            Tok::KwAll => "`all`".into(),
            Tok::KwFix => "`fix`".into(),
            Tok::KwOmega => "`omega`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Question => "`?`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Colon => "`:`".into(),
        }
    }
}

/// A token together with the byte offset where it starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub offset: usize,
}

/// A character the lexer cannot start a token with.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unexpected character `{ch}` at byte {offset}")]
pub struct LexError {
    pub ch: char,
    pub offset: usize,
}

fn is_word_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_word_cont(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn classify_word(word: &str) -> Tok {
    match word {
        "fun" => Tok::KwFun,
        "Lam" => Tok::KwTyFun,
        "let" => Tok::KwLet,
        "in" => Tok::KwIn,
        "if" => Tok::KwIf,
        "ifz" => Tok::KwIfz,
        "then" => Tok::KwThen,
        "else" => Tok::KwElse,
        "case" => Tok::KwCase,
        "of" => Tok::KwOf,
        "or" => Tok::KwOr,
        "proj1" => Tok::KwProj1,
        "proj2" => Tok::KwProj2,
        "true" => Tok::KwTrue,
        "false" => Tok::KwFalse,
        "unit" => Tok::KwUnit,
        "mu" => Tok::KwMu,
        "all" => Tok::KwAll,
        "fix" => Tok::KwFix,
        "omega" => Tok::KwOmega,
        _ => {
            if let Some(digits) = word.strip_prefix("in") {
                if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                    if let Ok(k) = digits.parse::<usize>() {
                        return Tok::InjTag(k);
                    }
                }
            }
            Tok::Ident(word.to_string())
        }
    }
}

/// Tokenize `src`. Whitespace separates tokens; `//` starts a comment
/// that runs to the end of the line.
pub fn lex(src: &str) -> Result<Vec<Token>, LexError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == '/' && bytes.get(i + 1) == Some(&b'/') {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = match c {
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            '[' => {
                i += 1;
                Tok::LBrack
            }
            ']' => {
                i += 1;
                Tok::RBrack
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            '.' => {
                i += 1;
                Tok::Dot
            }
            '|' => {
                i += 1;
                Tok::Pipe
            }
            '?' => {
                i += 1;
                Tok::Question
            }
            '+' => {
                i += 1;
                Tok::Plus
            }
            '*' => {
                i += 1;
                Tok::Star
            }
            ':' => {
                i += 1;
                Tok::Colon
            }
            '=' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    i += 2;
                    Tok::FatArrow
                } else {
                    i += 1;
                    Tok::Eq
                }
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    i += 2;
                    Tok::Arrow
                } else {
                    return Err(LexError { ch: c, offset: i });
                }
            }
            '\'' => {
                i += 1;
                let ws = i;
                while i < bytes.len() && is_word_cont(bytes[i] as char) {
                    i += 1;
                }
                if ws == i {
                    return Err(LexError { ch: c, offset: start });
                }
                Tok::TyVar(src[ws..i].to_string())
            }
            c if c.is_ascii_digit() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                match src[start..i].parse::<u64>() {
                    Ok(n) => Tok::Num(n),
                    Err(_) => return Err(LexError { ch: c, offset: start }),
                }
            }
            c if is_word_start(c) => {
                while i < bytes.len() && is_word_cont(bytes[i] as char) {
                    i += 1;
                }
                classify_word(&src[start..i])
            }
            other => return Err(LexError { ch: other, offset: i }),
        };
        out.push(Token { tok, offset: start });
    }
    Ok(out)
}
