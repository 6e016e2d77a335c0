//! Stable model semantics: reduct, least model, stability check, model
//! enumeration and credulous/skeptical entailment.
//!
//! Two enumeration strategies share one indexed representation of a ground
//! program. [`Strategy::BruteForce`] checks every subset of the atoms
//! occurring in the program and is the trusted reference.
//! [`Strategy::Search`] first discards atoms that no rule can derive, then
//! branches on negated atoms with lower/upper bound propagation; it must
//! agree with brute force on every input.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::herbrand::{check_ground_size, ground_program, signature};
use crate::par;
use crate::syntax::{Atom, Interpretation, Program, Query, Rule, Term};

/// Environment variable overriding [`SolveConfig::max_atoms`].
pub const MAX_ATOMS_ENV: &str = "OPENLP_MAX_ATOMS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntailMode {
    Credulous,
    Skeptical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    BruteForce,
    Search,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveConfig {
    /// Cap on enumerated atoms: the base size for brute force, the number of
    /// choice atoms for search.
    pub max_atoms: usize,
    /// Cap on the number of rule instances produced by grounding.
    pub max_ground_rules: u128,
    pub strategy: Strategy,
    /// Fan work out over the rayon pool (ignored without the `parallel`
    /// feature).
    pub parallel: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            max_atoms: 20,
            max_ground_rules: 1_000_000,
            strategy: Strategy::Search,
            parallel: par::AVAILABLE,
        }
    }
}

impl SolveConfig {
    /// Defaults, with `OPENLP_MAX_ATOMS` applied when set.
    pub fn from_env() -> Self {
        let mut cfg = SolveConfig::default();
        if let Some(n) = std::env::var(MAX_ATOMS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            cfg.max_atoms = n;
        }
        cfg
    }

    pub fn with_max_atoms(mut self, n: usize) -> Self {
        self.max_atoms = n;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }
}

fn require_ground(pg: &Program) -> Result<()> {
    match pg.iter().find(|r| !r.is_ground()) {
        Some(r) => Err(Error::NonGround(r.to_string())),
        None => Ok(()),
    }
}

/// Gelfond–Lifschitz reduct of a ground program.
pub fn reduct(pg: &Program, i: &Interpretation) -> Result<Program> {
    require_ground(pg)?;
    Ok(pg
        .iter()
        .filter(|r| !r.neg.iter().any(|a| i.contains(a)))
        .map(|r| Rule::new(r.head.clone(), r.pos.clone(), Vec::new()))
        .collect())
}

/// Least Herbrand model of a ground, negation-free program.
pub fn least_model(pg: &Program) -> Result<Interpretation> {
    require_ground(pg)?;
    if let Some(r) = pg.iter().find(|r| !r.neg.is_empty()) {
        return Err(Error::NegationPresent(r.to_string()));
    }
    let ix = Indexed::new(pg);
    let active = vec![true; ix.rules.len()];
    Ok(ix.interpretation(&ix.least_model(&active)))
}

fn in_base(atom: &Atom, pg: &Program) -> bool {
    let sig = signature(pg);
    fn term_ok(t: &Term, sig: &crate::syntax::Signature) -> bool {
        match t {
            Term::Var(_) => false,
            Term::App(f, args) => {
                sig.functions
                    .contains(&crate::syntax::Symbol::new(f.clone(), args.len()))
                    && args.iter().all(|a| term_ok(a, sig))
            }
        }
    }
    sig.predicates.contains(&atom.symbol()) && atom.args.iter().all(|t| term_ok(t, &sig))
}

/// `least_model(reduct(pg, i)) == i`.
pub fn is_stable(pg: &Program, i: &Interpretation) -> Result<bool> {
    require_ground(pg)?;
    if let Some(a) = i.iter().find(|a| !in_base(a, pg)) {
        return Err(Error::OutsideBase(a.to_string()));
    }
    Ok(least_model(&reduct(pg, i)?)? == *i)
}

/// Stable models of `p` grounded over `domain`, in canonical order.
pub fn stable_models(
    p: &Program,
    domain: &BTreeSet<Term>,
    cfg: &SolveConfig,
) -> Result<Vec<Interpretation>> {
    check_ground_size(p, domain.len(), cfg.max_ground_rules)?;
    ground_models(&ground_program(p, domain), cfg)
}

/// Stable models of an already ground program, in canonical order.
pub fn ground_models(pg: &Program, cfg: &SolveConfig) -> Result<Vec<Interpretation>> {
    require_ground(pg)?;
    let ix = Indexed::new(pg);
    let raw = match cfg.strategy {
        Strategy::BruteForce => ix.brute_force(cfg)?,
        Strategy::Search => ix.search(cfg)?,
    };
    let mut models: Vec<Interpretation> = raw.iter().map(|m| ix.interpretation(m)).collect();
    models.sort();
    models.dedup();
    Ok(models)
}

pub fn eval_query(i: &Interpretation, q: &Query) -> bool {
    match q {
        Query::Atom(a) => i.contains(a),
        Query::Not(q) => !eval_query(i, q),
        Query::And(a, b) => eval_query(i, a) && eval_query(i, b),
        Query::Or(a, b) => eval_query(i, a) || eval_query(i, b),
    }
}

/// Entailment over a precomputed model set; skeptical is vacuous on `[]`.
pub fn entails_models(models: &[Interpretation], mode: EntailMode, q: &Query) -> bool {
    match mode {
        EntailMode::Credulous => models.iter().any(|m| eval_query(m, q)),
        EntailMode::Skeptical => models.iter().all(|m| eval_query(m, q)),
    }
}

pub fn entails(
    p: &Program,
    domain: &BTreeSet<Term>,
    mode: EntailMode,
    q: &Query,
    cfg: &SolveConfig,
) -> Result<bool> {
    Ok(entails_models(&stable_models(p, domain, cfg)?, mode, q))
}

pub fn is_consistent(p: &Program, domain: &BTreeSet<Term>, cfg: &SolveConfig) -> Result<bool> {
    Ok(!stable_models(p, domain, cfg)?.is_empty())
}

/// Constants of `p` as a grounding domain.
pub fn constant_domain(p: &Program) -> BTreeSet<Term> {
    p.constants().into_iter().map(Term::constant).collect()
}

#[derive(Debug, Clone)]
struct IRule {
    head: usize,
    pos: Vec<usize>,
    neg: Vec<usize>,
}

/// A ground program over interned atoms.
#[derive(Debug, Clone)]
struct Indexed {
    atoms: Vec<Atom>,
    rules: Vec<IRule>,
    /// For every atom, the rules having it in the positive body (with
    /// multiplicity).
    pos_occ: Vec<Vec<usize>>,
}

impl Indexed {
    fn new<'p>(pg: &'p Program) -> Self {
        let mut index: HashMap<&'p Atom, usize> = HashMap::new();
        let mut atoms: Vec<Atom> = Vec::new();
        let mut intern = |a: &'p Atom| -> usize {
            *index.entry(a).or_insert_with(|| {
                atoms.push(a.clone());
                atoms.len() - 1
            })
        };
        let rules: Vec<IRule> = pg
            .iter()
            .map(|r| IRule {
                head: intern(&r.head),
                pos: r.pos.iter().map(&mut intern).collect(),
                neg: r.neg.iter().map(&mut intern).collect(),
            })
            .collect();
        Indexed::from_parts(atoms, rules)
    }

    fn from_parts(atoms: Vec<Atom>, rules: Vec<IRule>) -> Self {
        let mut pos_occ = vec![Vec::new(); atoms.len()];
        for (ri, r) in rules.iter().enumerate() {
            for &a in &r.pos {
                pos_occ[a].push(ri);
            }
        }
        Indexed {
            atoms,
            rules,
            pos_occ,
        }
    }

    fn interpretation(&self, model: &[bool]) -> Interpretation {
        model
            .iter()
            .enumerate()
            .filter(|(_, &t)| t)
            .map(|(i, _)| self.atoms[i].clone())
            .collect()
    }

    /// Least model of the active rules, ignoring their negative bodies.
    fn least_model(&self, active: &[bool]) -> Vec<bool> {
        let mut truth = vec![false; self.atoms.len()];
        let mut missing: Vec<usize> = self.rules.iter().map(|r| r.pos.len()).collect();
        let mut queue = Vec::new();
        for (ri, r) in self.rules.iter().enumerate() {
            if active[ri] && r.pos.is_empty() && !truth[r.head] {
                truth[r.head] = true;
                queue.push(r.head);
            }
        }
        while let Some(a) = queue.pop() {
            for &ri in &self.pos_occ[a] {
                missing[ri] -= 1;
                if missing[ri] == 0 && active[ri] {
                    let h = self.rules[ri].head;
                    if !truth[h] {
                        truth[h] = true;
                        queue.push(h);
                    }
                }
            }
        }
        truth
    }

    fn is_stable_mask(&self, model: &[bool]) -> bool {
        let active: Vec<bool> = self
            .rules
            .iter()
            .map(|r| !r.neg.iter().any(|&a| model[a]))
            .collect();
        self.least_model(&active) == model
    }

    fn brute_force(&self, cfg: &SolveConfig) -> Result<Vec<Vec<bool>>> {
        let n = self.atoms.len();
        if n > cfg.max_atoms || n >= 63 {
            return Err(Error::EnumerationLimit {
                needed: n,
                limit: cfg.max_atoms,
            });
        }
        let masks: Vec<u64> = (0..1u64 << n).collect();
        let hits = par::map(&masks, cfg.parallel, |&mask| {
            let model: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            self.is_stable_mask(&model).then_some(model)
        });
        Ok(hits.into_iter().flatten().collect())
    }

    /// Drops rules whose positive body cannot be derived and negative
    /// literals over underivable atoms. Stable models are unchanged since
    /// every stable model lies inside the least model of the program with
    /// negation erased.
    fn simplify(&self) -> Indexed {
        let possible = self.least_model(&vec![true; self.rules.len()]);
        let mut seen = BTreeSet::new();
        let rules = self
            .rules
            .iter()
            .filter(|r| r.pos.iter().all(|&a| possible[a]))
            .map(|r| {
                let mut pos = r.pos.clone();
                pos.sort_unstable();
                pos.dedup();
                let mut neg: Vec<usize> = r.neg.iter().copied().filter(|&a| possible[a]).collect();
                neg.sort_unstable();
                neg.dedup();
                IRule {
                    head: r.head,
                    pos,
                    neg,
                }
            })
            .filter(|r| seen.insert((r.head, r.pos.clone(), r.neg.clone())))
            .collect();
        Indexed::from_parts(self.atoms.clone(), rules)
    }

    fn search(&self, cfg: &SolveConfig) -> Result<Vec<Vec<bool>>> {
        let simple = self.simplify();
        let mut is_choice = vec![false; simple.atoms.len()];
        for r in &simple.rules {
            for &a in &r.neg {
                is_choice[a] = true;
            }
        }
        let choice: Vec<usize> = (0..simple.atoms.len()).filter(|&a| is_choice[a]).collect();
        if choice.len() > cfg.max_atoms {
            return Err(Error::EnumerationLimit {
                needed: choice.len(),
                limit: cfg.max_atoms,
            });
        }
        let search = Search {
            prog: &simple,
            choice: &choice,
            parallel: cfg.parallel,
        };
        let mut out = Vec::new();
        search.run(vec![None; simple.atoms.len()], 0, &mut out);
        Ok(out)
    }
}

struct Search<'a> {
    prog: &'a Indexed,
    choice: &'a [usize],
    parallel: bool,
}

const PARALLEL_DEPTH: usize = 6;

impl Search<'_> {
    /// Bounds for a partial assignment of choice atoms. `None` on conflict.
    fn propagate(&self, assign: &mut [Option<bool>]) -> Option<Vec<bool>> {
        let rules = &self.prog.rules;
        loop {
            let applicable: Vec<bool> = rules
                .iter()
                .map(|r| r.neg.iter().all(|&a| assign[a] == Some(false)))
                .collect();
            let lower = self.prog.least_model(&applicable);
            let possible: Vec<bool> = rules
                .iter()
                .map(|r| r.neg.iter().all(|&a| assign[a] != Some(true) && !lower[a]))
                .collect();
            let upper = self.prog.least_model(&possible);
            let mut changed = false;
            for &a in self.choice {
                match assign[a] {
                    Some(true) if !upper[a] => return None,
                    Some(false) if lower[a] => return None,
                    None if lower[a] => {
                        assign[a] = Some(true);
                        changed = true;
                    }
                    None if !upper[a] => {
                        assign[a] = Some(false);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return Some(lower);
            }
        }
    }

    fn run(&self, mut assign: Vec<Option<bool>>, depth: usize, out: &mut Vec<Vec<bool>>) {
        let Some(lower) = self.propagate(&mut assign) else {
            return;
        };
        let Some(&pick) = self.choice.iter().find(|&&a| assign[a].is_none()) else {
            out.push(lower);
            return;
        };
        let mut yes = assign.clone();
        yes[pick] = Some(true);
        assign[pick] = Some(false);
        if self.parallel && depth < PARALLEL_DEPTH {
            let (mut a, b) = par::join(
                true,
                || {
                    let mut v = Vec::new();
                    self.run(yes, depth + 1, &mut v);
                    v
                },
                || {
                    let mut v = Vec::new();
                    self.run(assign, depth + 1, &mut v);
                    v
                },
            );
            a.extend(b);
            out.extend(a);
        } else {
            self.run(yes, depth + 1, out);
            self.run(assign, depth + 1, out);
        }
    }
}
