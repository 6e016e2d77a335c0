//! Hand-written lexer and recursive-descent parser for programs, open-program
//! directives and ground queries.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::syntax::{Atom, OpenProgram, Program, Query, Rule, Symbol, Term, RESERVED_PREFIX};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Var(String),
    LParen,
    RParen,
    Comma,
    Dot,
    If,
    Slash,
    Directive(String),
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let mut push = |tok| {
            out.push(Spanned {
                tok,
                line: start_line,
                column: start_col,
            })
        };
        match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {}
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => push(Tok::LParen),
            ')' => push(Tok::RParen),
            ',' => push(Tok::Comma),
            '.' => push(Tok::Dot),
            '/' => push(Tok::Slash),
            ':' if chars.get(i + 1) == Some(&'-') => {
                push(Tok::If);
                i += 2;
                col += 2;
                continue;
            }
            '#' => {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                let word: String = chars[i + 1..j].iter().collect();
                push(Tok::Directive(word));
                col += j - i;
                i = j;
                continue;
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                if c.is_ascii_uppercase() || c == '_' {
                    push(Tok::Var(word));
                } else {
                    push(Tok::Name(word));
                }
                col += j - i;
                i = j;
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
        col += 1;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// Parser options; generated names may only be read back when
/// `allow_reserved` is set.
#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    pub allow_reserved: bool,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    opts: ParseOptions,
    predicates: BTreeMap<String, usize>,
    functions: BTreeMap<String, usize>,
}

impl Parser {
    fn new(text: &str, opts: ParseOptions) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            opts,
            predicates: BTreeMap::new(),
            functions: BTreeMap::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn next(&mut self) -> Tok {
        let tok = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let s = &self.toks[self.pos];
        Err(Error::Syntax {
            line: s.line,
            column: s.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn check_name(&self, name: &str) -> Result<()> {
        if !self.opts.allow_reserved && name.starts_with(RESERVED_PREFIX) {
            return Err(Error::ReservedPrefix(name.to_string()));
        }
        Ok(())
    }

    fn record(table: &mut BTreeMap<String, usize>, name: &str, arity: usize) -> Result<()> {
        match table.get(name) {
            Some(&first) if first != arity => Err(Error::ArityClash {
                name: name.to_string(),
                first,
                second: arity,
            }),
            Some(_) => Ok(()),
            None => {
                table.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }

    fn name(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.next();
                Ok(n)
            }
            other => self.error(format!("expected {what}, found {}", describe(&other))),
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>> {
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.next();
            loop {
                args.push(self.term()?);
                match self.peek().clone() {
                    Tok::Comma => {
                        self.next();
                    }
                    Tok::RParen => {
                        self.next();
                        break;
                    }
                    other => {
                        return self
                            .error(format!("expected `,` or `)`, found {}", describe(&other)));
                    }
                }
            }
        }
        Ok(args)
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Var(v) => {
                self.next();
                Ok(Term::Var(v))
            }
            Tok::Name(n) => {
                self.next();
                self.check_name(&n)?;
                let args = self.arguments()?;
                Self::record(&mut self.functions, &n, args.len())?;
                Ok(Term::App(n, args))
            }
            other => self.error(format!("expected a term, found {}", describe(&other))),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let name = self.name("an atom")?;
        self.check_name(&name)?;
        let args = self.arguments()?;
        Self::record(&mut self.predicates, &name, args.len())?;
        Ok(Atom::new(name, args))
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Name(n) if n == word)
    }

    fn literal(&mut self) -> Result<(bool, Atom)> {
        if self.is_keyword("not") && matches!(self.peek_at(1), Tok::Name(_)) {
            self.next();
            Ok((false, self.atom()?))
        } else {
            Ok((true, self.atom()?))
        }
    }

    fn rule(&mut self) -> Result<Rule> {
        let head = self.atom()?;
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        if *self.peek() == Tok::If {
            self.next();
            loop {
                let (positive, atom) = self.literal()?;
                if positive {
                    pos.push(atom);
                } else {
                    neg.push(atom);
                }
                if *self.peek() == Tok::Comma {
                    self.next();
                } else {
                    break;
                }
            }
        }
        Ok(Rule::new(head, pos, neg))
    }

    fn directive_symbol(&mut self) -> Result<Symbol> {
        let name = self.name("a symbol name")?;
        self.check_name(&name)?;
        self.expect(Tok::Slash, "`/`")?;
        match self.peek().clone() {
            Tok::Name(n) if n.chars().all(|c| c.is_ascii_digit()) => {
                self.next();
                let arity = n
                    .parse()
                    .or_else(|_| self.error::<usize>("arity out of range"))?;
                Ok(Symbol::new(name, arity))
            }
            other => self.error(format!("expected an arity, found {}", describe(&other))),
        }
    }

    fn statements(&mut self) -> Result<(Program, Vec<Symbol>, Vec<Symbol>)> {
        let (mut rules, mut fresh, mut open) = (Vec::new(), Vec::new(), Vec::new());
        while *self.peek() != Tok::Eof {
            if let Tok::Directive(d) = self.peek().clone() {
                self.next();
                let sym = self.directive_symbol()?;
                match d.as_str() {
                    "open" => open.push(sym),
                    "fresh" => fresh.push(sym),
                    other => {
                        let s = &self.toks[self.pos - 1];
                        return Err(Error::Syntax {
                            line: s.line,
                            column: s.column,
                            message: format!("unknown directive `#{other}`"),
                        });
                    }
                }
            } else {
                rules.push(self.rule()?);
            }
            self.expect(Tok::Dot, "`.`")?;
        }
        Ok((Program::new(rules), fresh, open))
    }

    fn query_or(&mut self) -> Result<Query> {
        let mut q = self.query_and()?;
        while self.is_keyword("or") {
            self.next();
            q = Query::or(q, self.query_and()?);
        }
        Ok(q)
    }

    fn query_and(&mut self) -> Result<Query> {
        let mut q = self.query_unary()?;
        while self.is_keyword("and") {
            self.next();
            q = Query::and(q, self.query_unary()?);
        }
        Ok(q)
    }

    fn query_unary(&mut self) -> Result<Query> {
        if self.is_keyword("not") && matches!(self.peek_at(1), Tok::Name(_) | Tok::LParen) {
            self.next();
            return Ok(Query::not(self.query_unary()?));
        }
        if *self.peek() == Tok::LParen {
            self.next();
            let q = self.query_or()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(q);
        }
        let atom = self.atom()?;
        if !atom.is_ground() {
            return Err(Error::NonGroundQuery(atom.to_string()));
        }
        Ok(Query::Atom(atom))
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Name(n) => format!("`{n}`"),
        Tok::Var(v) => format!("variable `{v}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::If => "`:-`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Directive(d) => format!("`#{d}`"),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses a plain program; directives are rejected.
pub fn parse_program(text: &str) -> Result<Program> {
    parse_program_with(text, ParseOptions::default())
}

pub fn parse_program_with(text: &str, opts: ParseOptions) -> Result<Program> {
    let mut parser = Parser::new(text, opts)?;
    let (program, fresh, open) = parser.statements()?;
    if fresh.is_empty() && open.is_empty() {
        Ok(program)
    } else {
        Err(Error::Syntax {
            line: 1,
            column: 1,
            message: "directives are only allowed in open programs".into(),
        })
    }
}

pub fn parse_open_program(text: &str) -> Result<OpenProgram> {
    parse_open_program_with(text, ParseOptions::default())
}

pub fn parse_open_program_with(text: &str, opts: ParseOptions) -> Result<OpenProgram> {
    let mut parser = Parser::new(text, opts)?;
    let (program, fresh, open) = parser.statements()?;
    for sym in &open {
        Parser::record(&mut parser.predicates, &sym.name, sym.arity)?;
    }
    let mut fresh_arities = BTreeMap::new();
    for sym in &fresh {
        if parser.functions.contains_key(&sym.name) {
            return Err(Error::FreshOccurs(sym.name.clone()));
        }
        Parser::record(&mut fresh_arities, &sym.name, sym.arity)?;
    }
    Ok(OpenProgram {
        program,
        fresh: fresh.into_iter().collect::<BTreeSet<_>>(),
        open: open.into_iter().collect::<BTreeSet<_>>(),
    })
}

pub fn parse_query(text: &str) -> Result<Query> {
    let mut parser = Parser::new(
        text,
        ParseOptions {
            allow_reserved: true,
        },
    )?;
    let q = parser.query_or()?;
    if *parser.peek() != Tok::Eof {
        return parser.error(format!(
            "unexpected {} after query",
            describe(parser.peek())
        ));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("X")
    }

    #[test]
    fn example_program() {
        let p = parse_program("p(a). q :- not p(X).").unwrap();
        assert_eq!(
            p.rules,
            vec![
                Rule::fact(Atom::ground("p", &["a"])),
                Rule::new(Atom::prop("q"), vec![], vec![Atom::new("p", vec![x()])]),
            ]
        );
    }

    #[test]
    fn empty_and_self_loop() {
        assert!(parse_program("").unwrap().is_empty());
        assert!(parse_program("  % only a comment\n").unwrap().is_empty());
        let p = parse_program("p :- p.").unwrap();
        assert_eq!(
            p.rules,
            vec![Rule::new(Atom::prop("p"), vec![Atom::prop("p")], vec![])]
        );
    }

    #[test]
    fn syntax_error_position() {
        match parse_program("p(a).\nq :- .") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 6)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_program("p(a)"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_program("p(a) :- q !"),
            Err(Error::Syntax { .. })
        ));
        match parse_program("p(a") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 4)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_open_program("#closed r/1."),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn arity_clash() {
        assert!(matches!(
            parse_program("p(a). p(a,b)."),
            Err(Error::ArityClash { .. })
        ));
        assert!(matches!(
            parse_program("p(f(a)). q(f)."),
            Err(Error::ArityClash { .. })
        ));
    }

    #[test]
    fn open_program_directives() {
        let o = parse_open_program("p(a). q :- not p(X). #fresh b/0. #open r/1.").unwrap();
        assert_eq!(o.program.len(), 2);
        assert_eq!(o.fresh, [Symbol::new("b", 0)].into_iter().collect());
        assert_eq!(o.open, [Symbol::new("r", 1)].into_iter().collect());

        let plain = parse_open_program("p(a).").unwrap();
        assert!(plain.fresh.is_empty() && plain.open.is_empty());

        assert_eq!(
            parse_open_program("p(a). #fresh a/0."),
            Err(Error::FreshOccurs("a".into()))
        );
        assert!(matches!(
            parse_open_program("p(a). #open p/2."),
            Err(Error::ArityClash { .. })
        ));
        assert!(matches!(
            parse_program("#open r/1."),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn reserved_prefix_rejected() {
        assert_eq!(
            parse_program("o_u(a)."),
            Err(Error::ReservedPrefix("o_u".into()))
        );
        assert!(parse_program_with(
            "o_u(a).",
            ParseOptions {
                allow_reserved: true
            }
        )
        .is_ok());
    }

    #[test]
    fn queries() {
        assert_eq!(parse_query("q").unwrap(), Query::atom(Atom::prop("q")));
        assert_eq!(
            parse_query("not q").unwrap(),
            Query::not(Query::atom(Atom::prop("q")))
        );
        assert_eq!(
            parse_query("q and not p(a)").unwrap(),
            Query::and(
                Query::atom(Atom::prop("q")),
                Query::not(Query::atom(Atom::ground("p", &["a"])))
            )
        );
        // `and` binds tighter than `or`
        assert_eq!(
            parse_query("a or b and c").unwrap(),
            Query::or(
                Query::atom(Atom::prop("a")),
                Query::and(Query::atom(Atom::prop("b")), Query::atom(Atom::prop("c")))
            )
        );
        assert_eq!(
            parse_query("p(X)"),
            Err(Error::NonGroundQuery("p(X)".into()))
        );
        assert!(matches!(parse_query("q and"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_query("(q"), Err(Error::Syntax { .. })));
    }
}
