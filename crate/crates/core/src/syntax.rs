//! Concrete syntax for LFP formulas.
//!
//! ```text
//! formula := quant | binder | bin
//! binder  := ("lfp" | "gfp") NAME "(" vars ")" "." formula "@" "(" args ")"
//! quant   := ("exists" | "forall") VAR "." formula
//! bin     := atom (("&" | "|") atom)*          & binds tighter than |
//! atom    := "!" atom | "(" formula ")" | NAME "(" args ")" | arg "=" arg | arg "!=" arg
//! ```
//!
//! `!NAME(args)` on a vocabulary relation parses to a negative literal; a
//! negation applied to anything else stays an explicit `Not` node. Text after
//! `#` up to the end of the line is ignored.

use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{FixKind, Formula, Term, Universe, Vocabulary};
use crate::token::is_identifier;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    At,
    Amp,
    Bar,
    Bang,
    Eq,
    Neq,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::At => f.write_str("`@`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Neq => f.write_str("`!=`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

const KEYWORDS: [&str; 4] = ["lfp", "gfp", "exists", "forall"];

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l, co) = (line, col);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => advance(1, &mut i),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => {
                out.push((Tok::LParen, l, co));
                advance(1, &mut i)
            }
            ')' => {
                out.push((Tok::RParen, l, co));
                advance(1, &mut i)
            }
            ',' => {
                out.push((Tok::Comma, l, co));
                advance(1, &mut i)
            }
            '.' => {
                out.push((Tok::Dot, l, co));
                advance(1, &mut i)
            }
            '@' => {
                out.push((Tok::At, l, co));
                advance(1, &mut i)
            }
            '&' => {
                out.push((Tok::Amp, l, co));
                advance(1, &mut i)
            }
            '|' => {
                out.push((Tok::Bar, l, co));
                advance(1, &mut i)
            }
            '=' => {
                out.push((Tok::Eq, l, co));
                advance(1, &mut i)
            }
            '!' => {
                if chars.get(i + 1) == Some(&'=') {
                    out.push((Tok::Neq, l, co));
                    advance(2, &mut i)
                } else {
                    out.push((Tok::Bang, l, co));
                    advance(1, &mut i)
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                col += i - start;
                if !is_identifier(&word) {
                    return Err(Error::Parse { line: l, column: co, message: format!("invalid name `{word}`") });
                }
                out.push((Tok::Ident(word), l, co));
            }
            other => {
                return Err(Error::Parse { line: l, column: co, message: format!("unexpected character `{other}`") })
            }
        }
    }
    out.push((Tok::End, line, col));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    vocab: &'a Vocabulary,
    universe: Option<&'a Universe>,
    vars: Vec<String>,
    fps: Vec<(String, usize)>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].0
    }

    fn error<T>(&self, message: String) -> Result<T> {
        let (_, line, column) = self.toks[self.pos];
        Err(Error::Parse { line, column, message })
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            self.error(format!("expected {want}, found {}", self.peek()))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.next();
                Ok(s)
            }
            other => self.error(format!("expected a name, found {other}")),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Ident(k) if k == "exists" || k == "forall" => {
                let universal = k == "forall";
                self.next();
                let v = self.ident()?;
                self.expect(Tok::Dot)?;
                self.vars.push(v.clone());
                let body = self.formula();
                self.vars.pop();
                let body = Box::new(body?);
                Ok(if universal { Formula::Forall(v, body) } else { Formula::Exists(v, body) })
            }
            Tok::Ident(k) if k == "lfp" || k == "gfp" => {
                let kind = if k == "lfp" { FixKind::Lfp } else { FixKind::Gfp };
                self.next();
                let rel = self.ident()?;
                self.expect(Tok::LParen)?;
                let mut vars = vec![self.ident()?];
                while *self.peek() == Tok::Comma {
                    self.next();
                    vars.push(self.ident()?);
                }
                self.expect(Tok::RParen)?;
                self.expect(Tok::Dot)?;
                let depth = self.vars.len();
                self.vars.extend(vars.iter().cloned());
                self.fps.push((rel.clone(), vars.len()));
                let body = self.formula();
                self.fps.pop();
                self.vars.truncate(depth);
                let body = Box::new(body?);
                self.expect(Tok::At)?;
                let args = self.args()?;
                if args.len() != vars.len() {
                    return Err(Error::ArityMismatch { relation: rel, expected: vars.len(), found: args.len() });
                }
                Ok(Formula::Fix { kind, rel, vars, body, args })
            }
            _ => self.disjunction(),
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.next();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.atom()?;
        while *self.peek() == Tok::Amp {
            self.next();
            f = Formula::and(f, self.atom()?);
        }
        Ok(f)
    }

    fn args(&mut self) -> Result<Vec<Term>> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.next();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.ident()?;
        if self.vars.contains(&name) {
            return Ok(Term::Var(name));
        }
        match self.universe {
            Some(u) if u.index(&name).is_none() => {
                self.pos -= 1;
                self.error(format!("`{name}` is neither a bound variable nor a universe element"))
            }
            _ => Ok(Term::Const(name)),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.next();
                if let (Tok::Ident(name), Tok::LParen) = (self.peek().clone(), self.peek2().clone()) {
                    if self.vocab.contains(&name) {
                        return match self.application()? {
                            Formula::Rel { rel, args } => Ok(Formula::NegRel { rel, args }),
                            other => Ok(Formula::not(other)),
                        };
                    }
                }
                Ok(Formula::not(self.atom()?))
            }
            Tok::LParen => {
                self.next();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(k) if KEYWORDS.contains(&k.as_str()) => self.error(format!("`{k}` must be parenthesized here")),
            Tok::Ident(_) if *self.peek2() == Tok::LParen => self.application(),
            Tok::Ident(_) => {
                let a = self.term()?;
                let negated = match self.peek() {
                    Tok::Eq => false,
                    Tok::Neq => true,
                    other => return self.error(format!("expected `=` or `!=`, found {other}")),
                };
                self.next();
                let b = self.term()?;
                Ok(if negated { Formula::Neq(a, b) } else { Formula::Eq(a, b) })
            }
            other => self.error(format!("expected a formula, found {other}")),
        }
    }

    fn application(&mut self) -> Result<Formula> {
        let name = self.ident()?;
        let args = self.args()?;
        if let Some((_, arity)) = self.fps.iter().rev().find(|(n, _)| *n == name) {
            if *arity != args.len() {
                return Err(Error::ArityMismatch { relation: name, expected: *arity, found: args.len() });
            }
            return Ok(Formula::FpVar { rel: name, args });
        }
        match self.vocab.arity(&name) {
            Some(arity) if arity == args.len() => Ok(Formula::Rel { rel: name, args }),
            Some(arity) => Err(Error::ArityMismatch { relation: name, expected: arity, found: args.len() }),
            None => Err(Error::UnknownRelation(name)),
        }
    }
}

/// Parses a formula against a vocabulary. Names that are not bound variables
/// are element constants; with a universe given they must name elements.
/// The result is checked for well-formedness but not for positivity.
pub fn parse_formula(text: &str, vocab: &Vocabulary, universe: Option<&Universe>) -> Result<Formula> {
    let mut p = Parser { toks: lex(text)?, pos: 0, vocab, universe, vars: Vec::new(), fps: Vec::new() };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {} after formula", p.peek()));
    }
    f.check_well_formed(vocab, universe)?;
    Ok(f)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Or,
    And,
    Unary,
}

fn write_args(out: &mut String, args: &[Term]) {
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(a.name());
    }
    out.push(')');
}

fn print_into(f: &Formula, ctx: Prec, out: &mut String) {
    let open_right = matches!(f, Formula::Exists(..) | Formula::Forall(..) | Formula::Fix { .. });
    let own = match f {
        Formula::Or(..) => Prec::Or,
        Formula::And(..) => Prec::And,
        _ => Prec::Unary,
    };
    let paren = (open_right && ctx > Prec::Or) || own < ctx;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Rel { rel, args } | Formula::FpVar { rel, args } => {
            out.push_str(rel);
            write_args(out, args);
        }
        Formula::NegRel { rel, args } => {
            out.push('!');
            out.push_str(rel);
            write_args(out, args);
        }
        Formula::Eq(a, b) => {
            out.push_str(&format!("{} = {}", a.name(), b.name()));
        }
        Formula::Neq(a, b) => {
            out.push_str(&format!("{} != {}", a.name(), b.name()));
        }
        Formula::Or(a, b) => {
            print_into(a, Prec::Or, out);
            out.push_str(" | ");
            print_into(b, Prec::And, out);
        }
        Formula::And(a, b) => {
            print_into(a, Prec::And, out);
            out.push_str(" & ");
            print_into(b, Prec::Unary, out);
        }
        Formula::Not(b) => {
            out.push('!');
            // `!R(a)` would read back as a negative literal.
            if matches!(**b, Formula::Rel { .. }) {
                out.push('(');
                print_into(b, Prec::Or, out);
                out.push(')');
            } else {
                print_into(b, Prec::Unary, out);
            }
        }
        Formula::Exists(v, b) | Formula::Forall(v, b) => {
            let q = if matches!(f, Formula::Exists(..)) { "exists" } else { "forall" };
            out.push_str(&format!("{q} {v}. "));
            print_into(b, Prec::Or, out);
        }
        Formula::Fix { kind, rel, vars, body, args } => {
            out.push_str(&format!("{} {rel}({}). ", kind.keyword(), vars.join(",")));
            print_into(body, Prec::Or, out);
            out.push_str(" @ ");
            write_args(out, args);
        }
    }
    if paren {
        out.push(')');
    }
}

/// Prints a formula in the concrete syntax accepted by [`parse_formula`].
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    print_into(f, Prec::Or, &mut out);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vocab() -> Vocabulary {
        Vocabulary::new([("E", 2), ("P", 1), ("Q", 1)]).unwrap()
    }

    #[test]
    fn parses_infinite_path_formula() {
        let f = parse_formula("gfp R(x). exists y. (E(x,y) & R(y)) @ (u)", &vocab(), None).unwrap();
        let expected = Formula::fix(
            FixKind::Gfp,
            "R",
            &["x"],
            Formula::exists(
                "y",
                Formula::and(
                    Formula::rel("E", vec![Term::Var("x".into()), Term::Var("y".into())]),
                    Formula::fp_var("R", vec![Term::Var("y".into())]),
                ),
            ),
            vec![Term::Const("u".into())],
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn negation_and_equality() {
        let f = parse_formula("!(P(u) | Q(u))", &vocab(), None).unwrap();
        assert!(matches!(f, Formula::Not(ref b) if matches!(**b, Formula::Or(..))));
        let f = parse_formula("forall x. x = x", &vocab(), None).unwrap();
        assert!(f.is_sentence());
        assert!(matches!(parse_formula("!P(u)", &vocab(), None).unwrap(), Formula::NegRel { .. }));
    }

    #[test]
    fn precedence() {
        let f = parse_formula("P(u) | P(v) & Q(u)", &vocab(), None).unwrap();
        assert!(matches!(f, Formula::Or(_, ref b) if matches!(**b, Formula::And(..))));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("P(u) &\n  & Q(u)", &vocab(), None) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_formula("R(u)", &vocab(), None), Err(Error::UnknownRelation("R".into())));
        assert!(matches!(
            parse_formula("E(u)", &vocab(), None),
            Err(Error::ArityMismatch { expected: 2, found: 1, .. })
        ));
        let u = Universe::new(["u"]).unwrap();
        assert!(matches!(parse_formula("P(w)", &vocab(), Some(&u)), Err(Error::Parse { .. })));
    }

    #[test]
    fn print_round_trips() {
        let texts = [
            "gfp X(x). lfp Y(x). exists y. E(x,y) & (X(y) & P(y) | Y(y)) @ (x) @ (u)",
            "!(P(u)) | !Q(u) & u != v",
            "(exists x. P(x)) & (forall y. !(y = u))",
            "!(lfp R(x). P(x) | (exists y. E(x,y) & R(y)) @ (u)) | P(v)",
            "(P(u) | Q(u)) & P(v)",
            "P(u) | (Q(u) | P(v))",
        ];
        for t in texts {
            let f = parse_formula(t, &vocab(), None).unwrap();
            let printed = print_formula(&f);
            let g = parse_formula(&printed, &vocab(), None).unwrap();
            assert_eq!(f, g, "{t} printed as {printed}");
            assert_eq!(printed, print_formula(&g));
        }
    }
}
