//! Abstract syntax of normal logic programs, open programs and queries.
//!
//! Every type orders structurally, so `BTreeSet`s of atoms and models come
//! out in the canonical order used by reports and golden tests.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Prefix reserved for names generated by the translations.
pub const RESERVED_PREFIX: &str = "o_";

/// A predicate or function symbol together with its arity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Symbol {
            name: name.into(),
            arity,
        }
    }

    pub fn is_reserved(&self) -> bool {
        self.name.starts_with(RESERVED_PREFIX)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    /// A function application; constants have no arguments.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(functor: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(functor.into(), args)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Nesting depth; constants and variables have depth zero.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|t| t.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn as_constant(&self) -> Option<&str> {
        match self {
            Term::App(name, args) if args.is_empty() => Some(name),
            _ => None,
        }
    }

    pub(crate) fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            Term::App(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
        }
    }

    pub(crate) fn collect_functions(&self, out: &mut Vec<Symbol>) {
        if let Term::App(name, args) = self {
            let sym = Symbol::new(name.clone(), args.len());
            if !out.contains(&sym) {
                out.push(sym);
            }
            args.iter().for_each(|t| t.collect_functions(out));
        }
    }

    pub fn substitute(&self, binding: &BTreeMap<&str, &Term>) -> Term {
        match self {
            Term::Var(v) => binding
                .get(v.as_str())
                .map(|t| (*t).clone())
                .unwrap_or_else(|| self.clone()),
            Term::App(name, args) => Term::App(
                name.clone(),
                args.iter().map(|t| t.substitute(binding)).collect(),
            ),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(name, args) => write_application(f, name, args),
        }
    }
}

fn write_application(f: &mut fmt::Formatter<'_>, name: &str, args: &[Term]) -> fmt::Result {
    f.write_str(name)?;
    if !args.is_empty() {
        f.write_str("(")?;
        for (i, arg) in args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{arg}")?;
        }
        f.write_str(")")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn prop(predicate: impl Into<String>) -> Self {
        Atom::new(predicate, Vec::new())
    }

    /// `p(c1,...,cn)` over constants.
    pub fn ground(predicate: impl Into<String>, constants: &[&str]) -> Self {
        Atom::new(
            predicate,
            constants.iter().map(|c| Term::constant(*c)).collect(),
        )
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn symbol(&self) -> Symbol {
        Symbol::new(self.predicate.clone(), self.args.len())
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn substitute(&self, binding: &BTreeMap<&str, &Term>) -> Atom {
        Atom {
            predicate: self.predicate.clone(),
            args: self.args.iter().map(|t| t.substitute(binding)).collect(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_application(f, &self.predicate, &self.args)
    }
}

/// `head :- pos, not neg.`
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Atom,
    pub pos: Vec<Atom>,
    pub neg: Vec<Atom>,
}

impl Rule {
    pub fn new(head: Atom, pos: Vec<Atom>, neg: Vec<Atom>) -> Self {
        Rule { head, pos, neg }
    }

    pub fn fact(head: Atom) -> Self {
        Rule::new(head, Vec::new(), Vec::new())
    }

    pub fn is_fact(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        std::iter::once(&self.head)
            .chain(self.pos.iter())
            .chain(self.neg.iter())
    }

    pub fn is_ground(&self) -> bool {
        self.atoms().all(Atom::is_ground)
    }

    /// Distinct variables in order of first occurrence (head, then body).
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        for atom in self.atoms() {
            for t in &atom.args {
                t.collect_vars(&mut out);
            }
        }
        out
    }

    pub fn substitute(&self, binding: &BTreeMap<&str, &Term>) -> Rule {
        Rule {
            head: self.head.substitute(binding),
            pos: self.pos.iter().map(|a| a.substitute(binding)).collect(),
            neg: self.neg.iter().map(|a| a.substitute(binding)).collect(),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.is_fact() {
            f.write_str(" :- ")?;
            let body = self
                .pos
                .iter()
                .map(|a| a.to_string())
                .chain(self.neg.iter().map(|a| format!("not {a}")));
            for (i, lit) in body.enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                f.write_str(&lit)?;
            }
        }
        f.write_str(".")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Program {
    pub rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Self {
        Program { rules }
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rule> {
        self.rules.iter()
    }

    pub fn is_ground(&self) -> bool {
        self.rules.iter().all(Rule::is_ground)
    }

    /// Drops duplicate rules, keeping the first occurrence.
    pub fn normalized(&self) -> Program {
        let mut seen = BTreeSet::new();
        Program::new(
            self.rules
                .iter()
                .filter(|r| seen.insert(*r))
                .cloned()
                .collect(),
        )
    }

    /// Constants (arity-0 function symbols) in order of first occurrence.
    pub fn constants(&self) -> Vec<String> {
        self.functions()
            .into_iter()
            .filter(|s| s.arity == 0)
            .map(|s| s.name)
            .collect()
    }

    /// Function symbols in order of first occurrence.
    pub fn functions(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        for rule in &self.rules {
            for atom in rule.atoms() {
                for t in &atom.args {
                    t.collect_functions(&mut out);
                }
            }
        }
        out
    }

    /// Predicate symbols in order of first occurrence.
    pub fn predicates(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = Vec::new();
        for rule in &self.rules {
            for atom in rule.atoms() {
                let sym = atom.symbol();
                if !out.contains(&sym) {
                    out.push(sym);
                }
            }
        }
        out
    }
}

impl FromIterator<Rule> for Program {
    fn from_iter<I: IntoIterator<Item = Rule>>(iter: I) -> Self {
        Program::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

/// The predicate and function symbols of a program.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub predicates: BTreeSet<Symbol>,
    pub functions: BTreeSet<Symbol>,
}

impl Signature {
    pub fn constants(&self) -> impl Iterator<Item = &str> {
        self.functions
            .iter()
            .filter(|s| s.arity == 0)
            .map(|s| s.name.as_str())
    }

    pub fn is_function_free(&self) -> bool {
        self.functions.iter().all(|s| s.arity == 0)
    }

    pub fn union(&self, other: &Signature) -> Signature {
        Signature {
            predicates: self.predicates.union(&other.predicates).cloned().collect(),
            functions: self.functions.union(&other.functions).cloned().collect(),
        }
    }
}

/// A program `P` with fresh symbols `F` and open predicates `O`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpenProgram {
    pub program: Program,
    pub fresh: BTreeSet<Symbol>,
    pub open: BTreeSet<Symbol>,
}

impl OpenProgram {
    pub fn new(
        program: Program,
        fresh: impl IntoIterator<Item = Symbol>,
        open: impl IntoIterator<Item = Symbol>,
    ) -> Self {
        OpenProgram {
            program,
            fresh: fresh.into_iter().collect(),
            open: open.into_iter().collect(),
        }
    }

    pub fn closed(program: Program) -> Self {
        OpenProgram::new(program, [], [])
    }

    /// Predicates occurring in the program or declared open.
    pub fn predicates(&self) -> BTreeSet<Symbol> {
        let mut preds: BTreeSet<Symbol> = self.program.predicates().into_iter().collect();
        preds.extend(self.open.iter().cloned());
        preds
    }
}

impl fmt::Display for OpenProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.program)?;
        for s in &self.fresh {
            writeln!(f, "#fresh {s}.")?;
        }
        for s in &self.open {
            writeln!(f, "#open {s}.")?;
        }
        Ok(())
    }
}

/// A boolean formula over ground atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Query {
    Atom(Atom),
    Not(Box<Query>),
    And(Box<Query>, Box<Query>),
    Or(Box<Query>, Box<Query>),
}

impl Query {
    pub fn atom(atom: Atom) -> Self {
        Query::Atom(atom)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(q: Query) -> Self {
        Query::Not(Box::new(q))
    }

    pub fn and(a: Query, b: Query) -> Self {
        Query::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Query, b: Query) -> Self {
        Query::Or(Box::new(a), Box::new(b))
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Query::Atom(a) => out.push(a),
            Query::Not(q) => q.collect_atoms(out),
            Query::And(a, b) | Query::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Atom(a) => write!(f, "{a}"),
            Query::Not(q) => match **q {
                Query::Atom(_) | Query::Not(_) => write!(f, "not {q}"),
                _ => write!(f, "not ({q})"),
            },
            Query::And(a, b) => {
                let wrap = |q: &Query| match q {
                    Query::Or(..) => format!("({q})"),
                    _ => q.to_string(),
                };
                write!(f, "{} and {}", wrap(a), wrap(b))
            }
            Query::Or(a, b) => write!(f, "{a} or {b}"),
        }
    }
}

/// A finite set of ground atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation(pub BTreeSet<Atom>);

impl Interpretation {
    pub fn new() -> Self {
        Interpretation::default()
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.0.contains(atom)
    }

    pub fn insert(&mut self, atom: Atom) -> bool {
        self.0.insert(atom)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::collections::btree_set::Iter<'_, Atom> {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Atoms as strings, in canonical order.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(Atom::to_string).collect()
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Interpretation(iter.into_iter().collect())
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_strings().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_display() {
        let r = Rule::new(
            Atom::prop("q"),
            vec![Atom::ground("r", &["a"])],
            vec![Atom::new("p", vec![Term::var("X")])],
        );
        assert_eq!(r.to_string(), "q :- r(a), not p(X).");
        assert_eq!(Rule::fact(Atom::ground("p", &["a"])).to_string(), "p(a).");
    }

    #[test]
    fn variables_in_first_occurrence_order() {
        let r = Rule::new(
            Atom::new("h", vec![Term::var("Y")]),
            vec![Atom::new("b", vec![Term::var("X"), Term::var("Y")])],
            vec![Atom::new("c", vec![Term::var("Z")])],
        );
        assert_eq!(r.variables(), vec!["Y", "X", "Z"]);
    }

    #[test]
    fn term_depth() {
        let t = Term::app("f", vec![Term::app("f", vec![Term::constant("a")])]);
        assert_eq!(t.depth(), 2);
        assert_eq!(Term::constant("a").depth(), 0);
    }

    #[test]
    fn query_display_keeps_precedence() {
        let q = Query::and(
            Query::or(Query::atom(Atom::prop("a")), Query::atom(Atom::prop("b"))),
            Query::not(Query::atom(Atom::prop("c"))),
        );
        assert_eq!(q.to_string(), "(a or b) and not c");
    }
}
