//! Open inference decided by enumerating completions in normal form.
//!
//! A completion normal form `(C, E)` fixes which fresh constants the
//! completion mentions (`C`) and which ground open atoms it adds as facts
//! (`E`). Every stable model of an arbitrary completion is a stable model of
//! the realization of some normal form, so quantifying over normal forms
//! decides all four open-inference modes.
//!
//! The representation carries `C` explicitly. Facts alone cannot make a
//! completion mention a fresh constant without also asserting an atom on it,
//! and that difference matters: for `P = {p(a). q :- not p(X).}` with `O = {r}`
//! and `F = {b}`, the completion `P ∪ {r(b) :- not q}` has the stable model
//! `{p(a), q}`, which no completion made of ground open facts reproduces.
//! [`realize`] pads activated constants with a tautology instead.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::herbrand::tuples;
use crate::par;
use crate::stable::{eval_query, stable_models, SolveConfig};
use crate::syntax::{Atom, Interpretation, OpenProgram, Program, Query, Rule, Symbol, Term};

/// Body predicate used to mention an activated constant when every open
/// predicate is propositional. It has no rules, so the padding rule never
/// fires.
pub const DOMAIN_PAD_PREDICATE: &str = "o_dom";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpenMode {
    /// Some completion has a stable model satisfying the query.
    Crd,
    /// Every stable model of every completion satisfies the query.
    Skp,
    /// Some consistent completion satisfies the query in all its models.
    Cs,
    /// Every consistent completion satisfies the query in some model.
    Sc,
}

impl OpenMode {
    pub const ALL: [OpenMode; 4] = [OpenMode::Crd, OpenMode::Skp, OpenMode::Cs, OpenMode::Sc];

    /// The mode `m'` with `m(Ψ) ⇔ ¬m'(¬Ψ)`.
    pub fn dual(self) -> OpenMode {
        match self {
            OpenMode::Crd => OpenMode::Skp,
            OpenMode::Skp => OpenMode::Crd,
            OpenMode::Cs => OpenMode::Sc,
            OpenMode::Sc => OpenMode::Cs,
        }
    }
}

impl fmt::Display for OpenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpenMode::Crd => "crd",
            OpenMode::Skp => "skp",
            OpenMode::Cs => "cs",
            OpenMode::Sc => "sc",
        })
    }
}

impl FromStr for OpenMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "crd" => Ok(OpenMode::Crd),
            "skp" => Ok(OpenMode::Skp),
            "cs" => Ok(OpenMode::Cs),
            "sc" => Ok(OpenMode::Sc),
            other => Err(Error::Scope(format!("unknown open mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompletionNf {
    pub activated: BTreeSet<String>,
    pub facts: BTreeSet<Atom>,
}

impl fmt::Display for CompletionNf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<&str> = self.activated.iter().map(String::as_str).collect();
        let e: Vec<String> = self.facts.iter().map(Atom::to_string).collect();
        write!(f, "({{{}}}, {{{}}})", c.join(", "), e.join(", "))
    }
}

/// Rejects open programs the completion oracle cannot enumerate.
pub fn check_oracle_scope(omega: &OpenProgram) -> Result<()> {
    if let Some(f) = omega.program.functions().into_iter().find(|s| s.arity > 0) {
        return Err(Error::Scope(format!(
            "program uses function symbol {f}; the completion oracle is function-free"
        )));
    }
    if let Some(f) = omega.fresh.iter().find(|s| s.arity > 0) {
        return Err(Error::Scope(format!(
            "fresh symbol {f} has arity > 0; the completion oracle takes constants only"
        )));
    }
    Ok(())
}

fn fresh_constants(omega: &OpenProgram) -> Vec<String> {
    omega.fresh.iter().map(|s| s.name.clone()).collect()
}

/// `constants(P) ∪ activated`, sorted.
fn nf_domain(omega: &OpenProgram, activated: &BTreeSet<String>) -> BTreeSet<Term> {
    omega
        .program
        .constants()
        .into_iter()
        .chain(activated.iter().cloned())
        .map(Term::constant)
        .collect()
}

/// Ground atoms of the open predicates over `domain`.
pub(crate) fn open_atoms(open: &BTreeSet<Symbol>, domain: &BTreeSet<Term>) -> Vec<Atom> {
    let domain: Vec<Term> = domain.iter().cloned().collect();
    open.iter()
        .flat_map(|p| {
            tuples(&domain, p.arity)
                .into_iter()
                .map(move |args| Atom::new(p.name.clone(), args))
        })
        .collect()
}

pub(crate) fn subsets<T: Clone + Ord>(items: &[T], limit: usize) -> Result<Vec<BTreeSet<T>>> {
    if items.len() > limit || items.len() >= 63 {
        return Err(Error::EnumerationLimit {
            needed: items.len(),
            limit,
        });
    }
    Ok((0..1u64 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect())
}

/// All normal forms `(C, E)`, `C` ranging over subsets of the fresh
/// constants and `E` over subsets of the open atoms on `constants(P) ∪ C`.
/// With no open predicates the only completion is `P` itself.
pub fn completions_nf(omega: &OpenProgram, cfg: &SolveConfig) -> Result<Vec<CompletionNf>> {
    check_oracle_scope(omega)?;
    if omega.open.is_empty() {
        return Ok(vec![CompletionNf::default()]);
    }
    let mut out = Vec::new();
    for activated in subsets(&fresh_constants(omega), cfg.max_atoms)? {
        let atoms = open_atoms(&omega.open, &nf_domain(omega, &activated));
        for facts in subsets(&atoms, cfg.max_atoms)? {
            out.push(CompletionNf {
                activated: activated.clone(),
                facts,
            });
        }
    }
    Ok(out)
}

/// The completion `P ∪ E` (plus padding for activated constants not
/// mentioned by `E`) and its grounding domain.
pub fn realize(nf: &CompletionNf, omega: &OpenProgram) -> Result<(Program, BTreeSet<Term>)> {
    let fresh: BTreeSet<String> = fresh_constants(omega).into_iter().collect();
    if let Some(c) = nf.activated.iter().find(|c| !fresh.contains(*c)) {
        return Err(Error::Scope(format!("`{c}` is not a fresh constant")));
    }
    if !nf.activated.is_empty() && omega.open.is_empty() {
        return Err(Error::ActivationWithoutOpen);
    }
    let domain = nf_domain(omega, &nf.activated);
    for fact in &nf.facts {
        if !omega.open.contains(&fact.symbol()) {
            return Err(Error::Scope(format!("`{fact}` is not an open atom")));
        }
        if !fact.args.iter().all(|t| domain.contains(t)) {
            return Err(Error::Scope(format!(
                "`{fact}` uses a constant outside the completion's vocabulary"
            )));
        }
    }

    let mut rules = omega.program.rules.clone();
    rules.extend(nf.facts.iter().cloned().map(Rule::fact));
    let mentioned: BTreeSet<&str> = nf
        .facts
        .iter()
        .flat_map(|a| a.args.iter().filter_map(Term::as_constant))
        .collect();
    for c in nf
        .activated
        .iter()
        .filter(|c| !mentioned.contains(c.as_str()))
    {
        rules.push(padding_rule(&omega.open, c));
    }
    Ok((Program::new(rules), domain))
}

fn padding_rule(open: &BTreeSet<Symbol>, constant: &str) -> Rule {
    match open.iter().find(|p| p.arity > 0) {
        Some(p) => {
            let atom = Atom::new(p.name.clone(), vec![Term::constant(constant); p.arity]);
            Rule::new(atom.clone(), vec![atom], vec![])
        }
        None => {
            let p = open.iter().next().expect("padding needs an open predicate");
            let head = Atom::prop(p.name.clone());
            Rule::new(
                head.clone(),
                vec![head, Atom::ground(DOMAIN_PAD_PREDICATE, &[constant])],
                vec![],
            )
        }
    }
}

/// Stable models of the realization of `nf`.
pub fn nf_models(
    nf: &CompletionNf,
    omega: &OpenProgram,
    cfg: &SolveConfig,
) -> Result<Vec<Interpretation>> {
    let (program, domain) = realize(nf, omega)?;
    stable_models(&program, &domain, cfg)
}

pub fn open_entails(
    omega: &OpenProgram,
    mode: OpenMode,
    q: &Query,
    cfg: &SolveConfig,
) -> Result<bool> {
    let nfs = completions_nf(omega, cfg)?;
    let sat = |m: &Interpretation| eval_query(m, q);
    match mode {
        OpenMode::Crd => par::try_any(&nfs, cfg.parallel, |nf| {
            Ok(nf_models(nf, omega, cfg)?.iter().any(sat))
        }),
        OpenMode::Skp => par::try_all(&nfs, cfg.parallel, |nf| {
            Ok(nf_models(nf, omega, cfg)?.iter().all(sat))
        }),
        OpenMode::Cs => par::try_any(&nfs, cfg.parallel, |nf| {
            let models = nf_models(nf, omega, cfg)?;
            Ok(!models.is_empty() && models.iter().all(sat))
        }),
        OpenMode::Sc => par::try_all(&nfs, cfg.parallel, |nf| {
            let models = nf_models(nf, omega, cfg)?;
            Ok(models.is_empty() || models.iter().any(sat))
        }),
    }
}

pub fn has_consistent_completion(omega: &OpenProgram, cfg: &SolveConfig) -> Result<bool> {
    let nfs = completions_nf(omega, cfg)?;
    par::try_any(&nfs, cfg.parallel, |nf| {
        Ok(!nf_models(nf, omega, cfg)?.is_empty())
    })
}

/// Union of the stable models of all completions.
pub fn completion_models(
    omega: &OpenProgram,
    cfg: &SolveConfig,
) -> Result<BTreeSet<Interpretation>> {
    let nfs = completions_nf(omega, cfg)?;
    let per_nf = par::try_map(&nfs, cfg.parallel, |nf| nf_models(nf, omega, cfg))?;
    Ok(per_nf.into_iter().flatten().collect())
}
