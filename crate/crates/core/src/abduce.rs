//! Abduction under (open) generalized stable models.
//!
//! An explanation is a set of ground abducible atoms `E` together with the
//! skolem individuals it postulates. Each postulated individual joins the
//! grounding domain of `T ∪ E` whether or not an atom of `E` mentions it,
//! the same way the open-program normal forms activate fresh constants.
//! With a skolem budget of zero this is the plain generalized stable model
//! semantics.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::open::{open_atoms, subsets};
use crate::par;
use crate::pi::restricted_models;
use crate::stable::{eval_query, stable_models, SolveConfig};
use crate::syntax::{Atom, Interpretation, OpenProgram, Program, Query, Rule, Symbol, Term};

/// Prefix of the canonical skolem constants `o_sk0`, `o_sk1`, ...
pub const SKOLEM_PREFIX: &str = "o_sk";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbductionFramework {
    pub theory: Program,
    pub abducibles: BTreeSet<Symbol>,
}

impl AbductionFramework {
    pub fn new(theory: Program, abducibles: impl IntoIterator<Item = Symbol>) -> Self {
        AbductionFramework {
            theory,
            abducibles: abducibles.into_iter().collect(),
        }
    }

    /// The open program `⟨T, Sk', A⟩` for a budget's skolem set.
    pub fn as_open_program(&self, budget: SkolemBudget) -> OpenProgram {
        OpenProgram::new(
            self.theory.clone(),
            budget.names().into_iter().map(|n| Symbol::new(n, 0)),
            self.abducibles.iter().cloned(),
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SkolemBudget {
    pub count: usize,
}

impl SkolemBudget {
    pub fn new(count: usize) -> Self {
        SkolemBudget { count }
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.count)
            .map(|i| format!("{SKOLEM_PREFIX}{i}"))
            .collect()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Explanation {
    pub atoms: BTreeSet<Atom>,
    /// Postulated skolem individuals; includes every skolem used by `atoms`.
    pub individuals: BTreeSet<String>,
}

impl Explanation {
    /// Skolems postulated without any atom mentioning them.
    pub fn bare_individuals(&self) -> impl Iterator<Item = &String> {
        let used: BTreeSet<&str> = self
            .atoms
            .iter()
            .flat_map(|a| a.args.iter().filter_map(Term::as_constant))
            .collect();
        self.individuals
            .iter()
            .filter(move |c| !used.contains(c.as_str()))
    }

    pub fn is_subset(&self, other: &Explanation) -> bool {
        self.atoms.is_subset(&other.atoms) && self.individuals.is_subset(&other.individuals)
    }

    pub fn atom_strings(&self) -> Vec<String> {
        self.atoms.iter().map(Atom::to_string).collect()
    }
}

impl Ord for Explanation {
    /// Smaller explanations first, then lexicographic.
    fn cmp(&self, other: &Self) -> Ordering {
        (
            self.atoms.len(),
            self.individuals.len(),
            &self.atoms,
            &self.individuals,
        )
            .cmp(&(
                other.atoms.len(),
                other.individuals.len(),
                &other.atoms,
                &other.individuals,
            ))
    }
}

impl PartialOrd for Explanation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.atom_strings().join(", "))?;
        let bare: Vec<&str> = self.bare_individuals().map(String::as_str).collect();
        if !bare.is_empty() {
            write!(f, " with individuals {{{}}}", bare.join(", "))?;
        }
        Ok(())
    }
}

/// An explanation returned by a query, flagged when no other qualifying
/// explanation is a proper subset of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedExplanation {
    pub explanation: Explanation,
    pub minimal: bool,
}

fn check_scope(fr: &AbductionFramework, budget: SkolemBudget) -> Result<()> {
    if let Some(f) = fr.theory.functions().into_iter().find(|s| s.arity > 0) {
        return Err(Error::Scope(format!(
            "theory uses function symbol {f}; the abducible set would be infinite"
        )));
    }
    let constants: BTreeSet<String> = fr.theory.constants().into_iter().collect();
    if let Some(s) = budget.names().into_iter().find(|s| constants.contains(s)) {
        return Err(Error::Scope(format!(
            "skolem constant `{s}` occurs in the theory"
        )));
    }
    Ok(())
}

fn domain(fr: &AbductionFramework, individuals: &BTreeSet<String>) -> BTreeSet<Term> {
    fr.theory
        .constants()
        .into_iter()
        .chain(individuals.iter().cloned())
        .map(Term::constant)
        .collect()
}

/// Ground abducible atoms over the Herbrand domain of the theory.
pub fn abducibles(fr: &AbductionFramework) -> Result<BTreeSet<Atom>> {
    abducibles_open(fr, SkolemBudget::new(0))
}

/// Ground abducible atoms over the theory's domain plus the budget's skolems.
pub fn abducibles_open(fr: &AbductionFramework, budget: SkolemBudget) -> Result<BTreeSet<Atom>> {
    check_scope(fr, budget)?;
    let all: BTreeSet<String> = budget.names().into_iter().collect();
    Ok(open_atoms(&fr.abducibles, &domain(fr, &all))
        .into_iter()
        .collect())
}

/// Every candidate explanation: individuals `C` within the budget and atoms
/// over the theory's constants plus `C`.
fn candidates(
    fr: &AbductionFramework,
    budget: SkolemBudget,
    cfg: &SolveConfig,
) -> Result<Vec<Explanation>> {
    check_scope(fr, budget)?;
    let mut out = Vec::new();
    for individuals in subsets(&budget.names(), cfg.max_atoms)? {
        let atoms = open_atoms(&fr.abducibles, &domain(fr, &individuals));
        for atoms in subsets(&atoms, cfg.max_atoms)? {
            out.push(Explanation {
                atoms,
                individuals: individuals.clone(),
            });
        }
    }
    Ok(out)
}

fn explanation_models(
    fr: &AbductionFramework,
    e: &Explanation,
    cfg: &SolveConfig,
) -> Result<Vec<Interpretation>> {
    let mut rules = fr.theory.rules.clone();
    rules.extend(e.atoms.iter().cloned().map(Rule::fact));
    stable_models(&Program::new(rules), &domain(fr, &e.individuals), cfg)
}

fn explained(
    fr: &AbductionFramework,
    budget: SkolemBudget,
    cfg: &SolveConfig,
) -> Result<Vec<(Explanation, Vec<Interpretation>)>> {
    let cands = candidates(fr, budget, cfg)?;
    let models = par::try_map(&cands, cfg.parallel, |e| explanation_models(fr, e, cfg))?;
    Ok(cands.into_iter().zip(models).collect())
}

/// All pairs `(E, M)` with `M` a stable model of `T ∪ E`, sorted.
pub fn gsm_enumerate(
    fr: &AbductionFramework,
    budget: SkolemBudget,
    cfg: &SolveConfig,
) -> Result<Vec<(Explanation, Interpretation)>> {
    let mut pairs: Vec<(Explanation, Interpretation)> = explained(fr, budget, cfg)?
        .into_iter()
        .flat_map(|(e, ms)| ms.into_iter().map(move |m| (e.clone(), m)))
        .collect();
    pairs.sort();
    Ok(pairs)
}

/// The distinct (open) generalized stable models.
pub fn gsm_models(
    fr: &AbductionFramework,
    budget: SkolemBudget,
    cfg: &SolveConfig,
) -> Result<BTreeSet<Interpretation>> {
    Ok(gsm_enumerate(fr, budget, cfg)?
        .into_iter()
        .map(|(_, m)| m)
        .collect())
}

fn rank(mut found: Vec<Explanation>) -> Vec<RankedExplanation> {
    found.sort();
    found
        .iter()
        .map(|e| RankedExplanation {
            explanation: e.clone(),
            minimal: !found.iter().any(|o| o != e && o.is_subset(e)),
        })
        .collect()
}

/// Explanations `E` such that some stable model of `T ∪ E` satisfies `q`.
pub fn explain_credulous(
    fr: &AbductionFramework,
    budget: SkolemBudget,
    q: &Query,
    cfg: &SolveConfig,
) -> Result<Vec<RankedExplanation>> {
    Ok(rank(
        explained(fr, budget, cfg)?
            .into_iter()
            .filter(|(_, ms)| ms.iter().any(|m| eval_query(m, q)))
            .map(|(e, _)| e)
            .collect(),
    ))
}

/// Explanations `E` such that every stable model of `T ∪ E` satisfies `q`;
/// with `require_consistent`, `T ∪ E` must also have a stable model.
pub fn gen_skeptical_consequence(
    fr: &AbductionFramework,
    budget: SkolemBudget,
    q: &Query,
    require_consistent: bool,
    cfg: &SolveConfig,
) -> Result<Vec<RankedExplanation>> {
    Ok(rank(
        explained(fr, budget, cfg)?
            .into_iter()
            .filter(|(_, ms)| {
                (!require_consistent || !ms.is_empty()) && ms.iter().all(|m| eval_query(m, q))
            })
            .map(|(e, _)| e)
            .collect(),
    ))
}

/// Generalized stable models read off the translation of `⟨T, Sk', A⟩`.
pub fn gsm_via_pi(
    fr: &AbductionFramework,
    budget: SkolemBudget,
    cfg: &SolveConfig,
) -> Result<Vec<Interpretation>> {
    check_scope(fr, budget)?;
    Ok(restricted_models(&fr.as_open_program(budget), 0, cfg)?
        .into_iter()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_program, parse_query};

    fn skolem_framework() -> AbductionFramework {
        AbductionFramework::new(
            parse_program("p(a). q :- r(X), not p(X).").unwrap(),
            [Symbol::new("r", 1)],
        )
    }

    fn strings(atoms: &BTreeSet<Atom>) -> Vec<String> {
        atoms.iter().map(Atom::to_string).collect()
    }

    fn cfg() -> SolveConfig {
        SolveConfig::default()
    }

    #[test]
    fn abducible_sets() {
        let fr = skolem_framework();
        assert_eq!(strings(&abducibles(&fr).unwrap()), ["r(a)"]);
        assert_eq!(
            strings(&abducibles_open(&fr, SkolemBudget::new(1)).unwrap()),
            ["r(a)", "r(o_sk0)"]
        );
        assert_eq!(
            abducibles_open(&fr, SkolemBudget::new(0)).unwrap(),
            abducibles(&fr).unwrap()
        );
        assert_eq!(
            strings(&abducibles_open(&fr, SkolemBudget::new(2)).unwrap()),
            ["r(a)", "r(o_sk0)", "r(o_sk1)"]
        );
        let none = AbductionFramework::new(fr.theory.clone(), []);
        assert!(abducibles(&none).unwrap().is_empty());
        let two =
            AbductionFramework::new(parse_program("p(a). p(b).").unwrap(), [Symbol::new("r", 1)]);
        assert_eq!(strings(&abducibles(&two).unwrap()), ["r(a)", "r(b)"]);
    }

    #[test]
    fn rejects_function_symbols() {
        let fr = AbductionFramework::new(parse_program("p(f(a)).").unwrap(), [Symbol::new("r", 1)]);
        assert!(matches!(abducibles(&fr), Err(Error::Scope(_))));
    }

    #[test]
    fn skolem_models() {
        let fr = skolem_framework();
        let q = parse_query("q").unwrap();
        let closed = gsm_enumerate(&fr, SkolemBudget::new(0), &cfg()).unwrap();
        assert!(!closed.is_empty());
        assert!(closed.iter().all(|(_, m)| !eval_query(m, &q)));

        let open = gsm_enumerate(&fr, SkolemBudget::new(1), &cfg()).unwrap();
        assert!(open.iter().any(|(e, m)| {
            e.to_string() == "{r(o_sk0)}" && m.to_string() == "{p(a), q, r(o_sk0)}"
        }));
    }

    #[test]
    fn propositional_abducible() {
        let fr = AbductionFramework::new(Program::default(), [Symbol::new("r", 0)]);
        let pairs: Vec<(String, String)> = gsm_enumerate(&fr, SkolemBudget::new(0), &cfg())
            .unwrap()
            .into_iter()
            .map(|(e, m)| (e.to_string(), m.to_string()))
            .collect();
        assert_eq!(
            pairs,
            vec![
                ("{}".to_string(), "{}".to_string()),
                ("{r}".into(), "{r}".into())
            ]
        );
    }

    #[test]
    fn credulous_explanations() {
        let fr = skolem_framework();
        let q = parse_query("q").unwrap();
        let found = explain_credulous(&fr, SkolemBudget::new(1), &q, &cfg()).unwrap();
        let minimal: Vec<String> = found
            .iter()
            .filter(|r| r.minimal)
            .map(|r| r.explanation.to_string())
            .collect();
        assert_eq!(minimal, ["{r(o_sk0)}"]);
        assert!(found.len() > 1);

        let pa = parse_query("p(a)").unwrap();
        let found = explain_credulous(&fr, SkolemBudget::new(1), &pa, &cfg()).unwrap();
        assert_eq!(found[0].explanation, Explanation::default());
        assert!(found[0].minimal);

        assert!(explain_credulous(&fr, SkolemBudget::new(0), &q, &cfg())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn skeptical_consequences() {
        let fr =
            AbductionFramework::new(parse_program("q :- r(a).").unwrap(), [Symbol::new("r", 1)]);
        let q = parse_query("q").unwrap();
        let found = gen_skeptical_consequence(&fr, SkolemBudget::new(0), &q, true, &cfg()).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].explanation.to_string(), "{r(a)}");

        let even = AbductionFramework::new(
            parse_program("p :- not q. q :- not p.").unwrap(),
            [Symbol::new("r", 0)],
        );
        let p = parse_query("p").unwrap();
        assert!(
            gen_skeptical_consequence(&even, SkolemBudget::new(0), &p, true, &cfg())
                .unwrap()
                .is_empty()
        );

        let taut = parse_query("q or not q").unwrap();
        let all =
            gen_skeptical_consequence(&even, SkolemBudget::new(0), &taut, true, &cfg()).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn inconsistent_explanations_only_without_consistency_requirement() {
        let fr = AbductionFramework::new(
            parse_program("p :- r, not p.").unwrap(),
            [Symbol::new("r", 0)],
        );
        let z = parse_query("z").unwrap();
        let strict =
            gen_skeptical_consequence(&fr, SkolemBudget::new(0), &z, true, &cfg()).unwrap();
        assert!(strict.is_empty());
        let lax = gen_skeptical_consequence(&fr, SkolemBudget::new(0), &z, false, &cfg()).unwrap();
        assert_eq!(lax.len(), 1);
        assert_eq!(lax[0].explanation.to_string(), "{r}");
    }

    #[test]
    fn via_pi_matches_enumeration() {
        let fr = skolem_framework();
        for k in 0..=1 {
            let budget = SkolemBudget::new(k);
            let via_pi: BTreeSet<Interpretation> = gsm_via_pi(&fr, budget, &cfg())
                .unwrap()
                .into_iter()
                .collect();
            assert_eq!(via_pi, gsm_models(&fr, budget, &cfg()).unwrap());
        }
        let models: Vec<String> = gsm_via_pi(&fr, SkolemBudget::new(1), &cfg())
            .unwrap()
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert!(models.contains(&"{p(a), q, r(o_sk0)}".to_string()));
    }

    #[test]
    fn bare_individuals_are_reported() {
        let fr = AbductionFramework::new(
            parse_program("p(a). q :- not p(X).").unwrap(),
            [Symbol::new("r", 1)],
        );
        let q = parse_query("q").unwrap();
        let found = explain_credulous(&fr, SkolemBudget::new(1), &q, &cfg()).unwrap();
        assert_eq!(
            found[0].explanation.to_string(),
            "{} with individuals {o_sk0}"
        );
        assert!(found[0].minimal);
    }
}
