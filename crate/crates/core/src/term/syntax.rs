//! Text syntax for terms.
//!
//! ```text
//! variable     e<N>
//! metavariable X<name>
//! finitary     (f t1 … tn)            a bare nullary symbol `c` is read as `(c)`
//! metaterm     (h t0 … | proj <a> <b>)
//!              (h t0 … | const <metaterm>)
//! q-term       (q <fun> <t0> … | <tail>)
//! ```
//!
//! An omitted tail means `proj 1 0`. Printing always emits the canonical form
//! with an explicit tail.

use std::collections::BTreeMap;
use std::fmt;

use super::{is_projection_name, FinTerm, Head, MetaTerm, OmegaSeq, QTerm, Signature, Tail};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Bar,
    Atom(String),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Vec<Spanned> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, cl) = (line, col);
        let single = match c {
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            '|' => Some(Tok::Bar),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            col += 1;
            out.push(Spanned { tok, line: l, col: cl });
        } else if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else {
            let mut atom = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_whitespace() || matches!(c, '(' | ')' | '|') {
                    break;
                }
                atom.push(c);
                chars.next();
                col += 1;
            }
            out.push(Spanned {
                tok: Tok::Atom(atom),
                line: l,
                col: cl,
            });
        }
    }
    out
}

enum Word<'a> {
    Var(usize),
    Meta(&'a str),
    Q,
    Sym(&'a str),
}

struct Parser<'s> {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    sig: Option<&'s Signature>,
    seen: BTreeMap<String, usize>,
}

impl<'s> Parser<'s> {
    fn new(text: &str, sig: Option<&'s Signature>) -> Self {
        let toks = lex(text);
        let line = text.lines().count().max(1);
        let col = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
        Parser {
            toks,
            pos: 0,
            end: (line, col),
            sig,
            seen: BTreeMap::new(),
        }
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.col))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Syntax {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.peek() {
            Some(Tok::Close) => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => self.err("expected `)`"),
            None => self.err("unexpected end of input, expected `)`"),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            self.err("trailing input after term")
        } else {
            Ok(())
        }
    }

    fn atom(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Atom(_)) => match self.next() {
                Some(Tok::Atom(a)) => Ok(a),
                _ => unreachable!(),
            },
            Some(_) => self.err("expected a name"),
            None => self.err("unexpected end of input"),
        }
    }

    fn classify<'a>(&self, a: &'a str) -> Result<Word<'a>> {
        if is_projection_name(a) {
            return match a[1..].parse::<usize>() {
                Ok(i) => Ok(Word::Var(i)),
                Err(_) => self.err(format!("variable index out of range in `{a}`")),
            };
        }
        if let Some(name) = a.strip_prefix('X') {
            if name.is_empty() {
                return self.err("metavariable needs a name after `X`");
            }
            return Ok(Word::Meta(name));
        }
        if a == "q" {
            return Ok(Word::Q);
        }
        if a.contains('#') {
            return self.err(format!("invalid symbol `{a}`"));
        }
        Ok(Word::Sym(a))
    }

    fn check_known(&self, f: &str) -> Result<()> {
        match self.sig {
            Some(sig) if !sig.contains(f) => Err(Error::UnknownSymbol(f.to_string())),
            _ => Ok(()),
        }
    }

    fn check_arity(&mut self, f: &str, found: usize) -> Result<()> {
        let expected = match self.sig {
            Some(sig) => sig
                .arity(f)
                .ok_or_else(|| Error::UnknownSymbol(f.to_string()))?,
            None => *self.seen.entry(f.to_string()).or_insert(found),
        };
        if expected != found {
            return Err(Error::ArityMismatch {
                symbol: f.to_string(),
                expected,
                found,
            });
        }
        Ok(())
    }

    // Finitary terms.

    fn fin(&mut self) -> Result<FinTerm> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(Tok::Close) => self.err("unexpected `)`"),
            Some(Tok::Bar) => self.err("tails are not allowed in finitary terms"),
            Some(Tok::Atom(_)) => {
                let save = self.pos;
                let a = self.atom()?;
                match self.classify(&a)? {
                    Word::Var(i) => Ok(FinTerm::Var(i)),
                    Word::Sym(f) => {
                        let f = f.to_string();
                        self.check_arity(&f, 0)?;
                        Ok(FinTerm::App(f, vec![]))
                    }
                    _ => {
                        self.pos = save;
                        self.err(format!("`{a}` cannot occur in a finitary term"))
                    }
                }
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let save = self.pos;
                let a = self.atom()?;
                let f = match self.classify(&a)? {
                    Word::Sym(f) => f.to_string(),
                    _ => {
                        self.pos = save;
                        return self.err(format!("`{a}` cannot head a finitary term"));
                    }
                };
                let mut children = Vec::new();
                while !matches!(self.peek(), Some(Tok::Close) | None | Some(Tok::Bar)) {
                    children.push(self.fin()?);
                }
                if matches!(self.peek(), Some(Tok::Bar)) {
                    return self.err("tails are not allowed in finitary terms");
                }
                self.expect_close()?;
                self.check_arity(&f, children.len())?;
                Ok(FinTerm::App(f, children))
            }
        }
    }

    // Metaterms.

    fn meta(&mut self) -> Result<MetaTerm> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(Tok::Close) => self.err("unexpected `)`"),
            Some(Tok::Bar) => self.err("unexpected `|`"),
            Some(Tok::Atom(_)) => {
                let save = self.pos;
                let a = self.atom()?;
                match self.classify(&a)? {
                    Word::Var(i) => Ok(MetaTerm::Proj(i)),
                    Word::Meta(x) => Ok(MetaTerm::App(Head::Meta(x.to_string()), OmegaSeq::identity())),
                    Word::Sym(f) => {
                        self.check_known(f)?;
                        Ok(MetaTerm::constant(f))
                    }
                    Word::Q => {
                        self.pos = save;
                        self.err("`q` cannot occur in a metaterm")
                    }
                }
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let save = self.pos;
                let a = self.atom()?;
                let head = match self.classify(&a)? {
                    Word::Meta(x) => Head::Meta(x.to_string()),
                    Word::Sym(f) => {
                        self.check_known(f)?;
                        Head::Sym(f.to_string())
                    }
                    _ => {
                        self.pos = save;
                        return self.err(format!("`{a}` cannot head a metaterm"));
                    }
                };
                let mut prefix = Vec::new();
                while !matches!(self.peek(), Some(Tok::Close) | Some(Tok::Bar) | None) {
                    prefix.push(self.meta()?);
                }
                let tail = self.tail(Self::meta)?;
                self.expect_close()?;
                Ok(MetaTerm::App(head, OmegaSeq::new(prefix, tail)))
            }
        }
    }

    fn tail<T>(&mut self, item: fn(&mut Self) -> Result<T>) -> Result<Tail<T>> {
        if !matches!(self.peek(), Some(Tok::Bar)) {
            return Ok(Tail::Affine { a: 1, b: 0 });
        }
        self.pos += 1;
        let kind = self.atom()?;
        match kind.as_str() {
            "proj" => {
                let a = self.number()?;
                let b = self.number()?;
                Ok(Tail::Affine { a, b })
            }
            "const" => Ok(Tail::Const(Box::new(item(self)?))),
            _ => Err(Error::UnknownTail(kind)),
        }
    }

    fn number(&mut self) -> Result<usize> {
        let save = self.pos;
        let a = self.atom()?;
        a.parse().or_else(|_| {
            self.pos = save;
            self.err(format!("expected a natural number, found `{a}`"))
        })
    }

    // q-terms.

    fn qterm(&mut self) -> Result<QTerm> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(Tok::Close) => self.err("unexpected `)`"),
            Some(Tok::Bar) => self.err("unexpected `|`"),
            Some(Tok::Atom(_)) => {
                let save = self.pos;
                let a = self.atom()?;
                match self.classify(&a)? {
                    Word::Var(i) => Ok(QTerm::Proj(i)),
                    Word::Meta(x) => Ok(QTerm::MetaVar(x.to_string())),
                    Word::Sym(f) => {
                        self.check_known(f)?;
                        Ok(QTerm::SymConst(f.to_string()))
                    }
                    Word::Q => {
                        self.pos = save;
                        self.err("`q` must be applied: `(q fun args…)`")
                    }
                }
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let save = self.pos;
                let a = self.atom()?;
                let fun = match self.classify(&a)? {
                    Word::Q => self.qterm()?,
                    Word::Meta(x) => QTerm::MetaVar(x.to_string()),
                    Word::Sym(f) => {
                        self.check_known(f)?;
                        QTerm::SymConst(f.to_string())
                    }
                    Word::Var(_) => {
                        self.pos = save;
                        return self.err(format!("`{a}` cannot head an application; use `(q {a} …)`"));
                    }
                };
                let mut prefix = Vec::new();
                while !matches!(self.peek(), Some(Tok::Close) | Some(Tok::Bar) | None) {
                    prefix.push(self.qterm()?);
                }
                let tail = self.tail(Self::qterm)?;
                self.expect_close()?;
                Ok(QTerm::q(fun, OmegaSeq::new(prefix, tail)))
            }
        }
    }
}

/// Parses a finitary term. With a signature, symbols and arities are checked
/// against it; without one, each symbol must be used with a single arity.
pub fn parse_fin(text: &str, sig: Option<&Signature>) -> Result<FinTerm> {
    let mut p = Parser::new(text, sig);
    let t = p.fin()?;
    p.finish()?;
    Ok(t)
}

/// Parses a metaterm into canonical form.
pub fn parse_meta(text: &str, sig: Option<&Signature>) -> Result<MetaTerm> {
    let mut p = Parser::new(text, sig);
    let t = p.meta()?;
    p.finish()?;
    Ok(t)
}

/// Parses a q-term. `(f t… | tail)` abbreviates `(q f t… | tail)`.
pub fn parse_q(text: &str, sig: Option<&Signature>) -> Result<QTerm> {
    let mut p = Parser::new(text, sig);
    let t = p.qterm()?;
    p.finish()?;
    Ok(t)
}

impl fmt::Display for FinTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinTerm::Var(i) => write!(f, "e{i}"),
            FinTerm::App(s, cs) => {
                write!(f, "({s}")?;
                for c in cs {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Head {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Head::Sym(s) => f.write_str(s),
            Head::Meta(x) => write!(f, "X{x}"),
        }
    }
}

fn write_seq<T: fmt::Display>(f: &mut fmt::Formatter<'_>, s: &OmegaSeq<T>) -> fmt::Result {
    for t in s.prefix() {
        write!(f, " {t}")?;
    }
    match s.tail() {
        Tail::Affine { a, b } => write!(f, " | proj {a} {b}"),
        Tail::Const(t) => write!(f, " | const {t}"),
    }
}

impl fmt::Display for MetaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetaTerm::Proj(i) => write!(f, "e{i}"),
            MetaTerm::App(h, s) => {
                write!(f, "({h}")?;
                write_seq(f, s)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for QTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QTerm::Proj(i) => write!(f, "e{i}"),
            QTerm::SymConst(s) => f.write_str(s),
            QTerm::MetaVar(x) => write!(f, "X{x}"),
            QTerm::Q(fun, s) => {
                write!(f, "(q {fun}")?;
                write_seq(f, s)?;
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finitary_terms() {
        let t = parse_fin("(and e0 e1)", None).unwrap();
        assert_eq!(t, FinTerm::app("and", vec![FinTerm::Var(0), FinTerm::Var(1)]));
        assert_eq!(t.to_string(), "(and e0 e1)");
        assert_eq!(parse_fin("c", None).unwrap().to_string(), "(c)");
        let sig = Signature::parse("and/2").unwrap();
        assert_eq!(
            parse_fin("(and e0)", Some(&sig)),
            Err(Error::ArityMismatch {
                symbol: "and".into(),
                expected: 2,
                found: 1
            })
        );
        assert_eq!(parse_fin("(or e0 e1)", Some(&sig)), Err(Error::UnknownSymbol("or".into())));
        assert!(matches!(
            parse_fin("(f e0 (f e1))", None),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn metaterm_tails() {
        let t = parse_meta("(and e0 e1 | proj 1 0)", None).unwrap();
        assert_eq!(t, MetaTerm::constant("and"));
        assert_eq!(t.to_string(), "(and | proj 1 0)");
        let t = parse_meta("(f e3 | const (g e0))", None).unwrap();
        assert_eq!(t.to_string(), "(f e3 | const (g | proj 1 0))");
        assert_eq!(parse_meta("(f e0 | weird)", None), Err(Error::UnknownTail("weird".into())));
        let t = parse_meta("(Xa e1 e0 | proj 0 4)", None).unwrap();
        assert_eq!(t.to_string(), "(Xa e1 e0 | const e4)");
    }

    #[test]
    fn qterms() {
        let t = parse_q("(q e2 (a) (b) (c) | proj 1 0)", None).unwrap();
        assert_eq!(t.to_string(), "(q e2 (q a | proj 1 0) (q b | proj 1 0) (q c | proj 1 0) | proj 1 0)");
        assert_eq!(parse_q(&t.to_string(), None).unwrap(), t);
        assert_eq!(parse_q("(f e0)", None).unwrap(), parse_q("(q f e0)", None).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_meta("(f e0\n  | proj x 0)", None) {
            Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 10)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_meta("(f e0", None), Err(Error::Syntax { .. })));
        assert!(matches!(parse_meta("e0 e1", None), Err(Error::Syntax { .. })));
    }
}
