//! Translation of an open program into one normal program whose stable
//! models, restricted to the original vocabulary, are exactly the stable
//! models of the program's completions.
//!
//! The translated program has four rule families:
//!
//! 1. every rule of `P`, guarded by `o_u(X)` for each of its variables;
//! 2. `o_u(f(X1..Xn)) :- o_u(X1), ..., o_u(Xn), o_s(f^)` per function symbol;
//! 3. `o_s(f^).` for symbols of `P`, and the choice pair
//!    `o_s(f^) :- not o_ns(f^).` / `o_ns(f^) :- not o_s(f^).` for fresh ones;
//! 4. `p(X..) :- o_u(X..), not o_neg_p(X..).` and its mirror per open `p`.
//!
//! `f^` is the constant `o_sym_<f>_<arity>` naming the symbol `f`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::herbrand::{
    check_ground_size, ground_program, ground_rule_into, herbrand_universe, signature,
};
use crate::open::OpenMode;
use crate::stable::{eval_query, ground_models, SolveConfig};
use crate::syntax::{
    Atom, Interpretation, OpenProgram, Program, Query, Rule, Signature, Symbol, Term,
    RESERVED_PREFIX,
};

pub const DOMAIN_PREDICATE: &str = "o_u";
pub const SELECT_PREDICATE: &str = "o_s";
pub const DESELECT_PREDICATE: &str = "o_ns";
const DUAL_PREFIX: &str = "o_neg_";
const NAME_PREFIX: &str = "o_sym_";

/// Whether `name` has the shape of a name produced by the translation.
pub fn is_generated_name(name: &str) -> bool {
    name == DOMAIN_PREDICATE
        || name == SELECT_PREDICATE
        || name == DESELECT_PREDICATE
        || name.starts_with(DUAL_PREFIX)
        || name.starts_with(NAME_PREFIX)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameMap {
    pub open_dual: BTreeMap<Symbol, String>,
    pub func_name: BTreeMap<Symbol, String>,
    pub domain_pred: String,
    pub select_pred: String,
    pub deselect_pred: String,
}

impl NameMap {
    fn new(functions: &[Symbol], open: &BTreeSet<Symbol>) -> Self {
        NameMap {
            open_dual: open
                .iter()
                .map(|p| (p.clone(), format!("{DUAL_PREFIX}{}", p.name)))
                .collect(),
            func_name: functions
                .iter()
                .map(|f| (f.clone(), format!("{NAME_PREFIX}{}_{}", f.name, f.arity)))
                .collect(),
            domain_pred: DOMAIN_PREDICATE.into(),
            select_pred: SELECT_PREDICATE.into(),
            deselect_pred: DESELECT_PREDICATE.into(),
        }
    }

    fn domain(&self, t: Term) -> Atom {
        Atom::new(self.domain_pred.clone(), vec![t])
    }

    fn select(&self, f: &Symbol) -> Atom {
        Atom::ground(&self.select_pred, &[&self.func_name[f]])
    }

    fn deselect(&self, f: &Symbol) -> Atom {
        Atom::ground(&self.deselect_pred, &[&self.func_name[f]])
    }

    /// Predicates introduced by the translation.
    pub fn generated_predicates(&self) -> BTreeSet<&str> {
        [&self.domain_pred, &self.select_pred, &self.deselect_pred]
            .into_iter()
            .chain(self.open_dual.values())
            .map(String::as_str)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiProgram {
    pub program: Program,
    pub names: NameMap,
    pub origin: OpenProgram,
}

fn check_user_symbols(omega: &OpenProgram) -> Result<()> {
    let user = omega
        .program
        .predicates()
        .into_iter()
        .chain(omega.program.functions())
        .chain(omega.open.iter().cloned());
    for s in user {
        if s.is_reserved() {
            return Err(Error::ReservedPrefix(s.name));
        }
    }
    if let Some(s) = omega.fresh.iter().find(|s| is_generated_name(&s.name)) {
        return Err(Error::ReservedPrefix(s.name.clone()));
    }
    Ok(())
}

fn numbered_vars(n: usize) -> Vec<Term> {
    (1..=n).map(|i| Term::var(format!("X{i}"))).collect()
}

pub fn translate(omega: &OpenProgram) -> Result<PiProgram> {
    check_user_symbols(omega)?;
    let mut functions = omega.program.functions();
    for f in &omega.fresh {
        if !functions.contains(f) {
            functions.push(f.clone());
        }
    }
    let names = NameMap::new(&functions, &omega.open);
    let mut rules = Vec::new();

    for r in omega.program.iter() {
        let mut guarded = r.clone();
        for v in r.variables() {
            guarded.pos.push(names.domain(Term::var(v)));
        }
        rules.push(guarded);
    }

    for f in &functions {
        let xs = numbered_vars(f.arity);
        let mut body: Vec<Atom> = xs.iter().cloned().map(|x| names.domain(x)).collect();
        body.push(names.select(f));
        rules.push(Rule::new(
            names.domain(Term::app(f.name.clone(), xs)),
            body,
            vec![],
        ));
    }

    for f in &functions {
        if omega.fresh.contains(f) {
            rules.push(Rule::new(names.select(f), vec![], vec![names.deselect(f)]));
            rules.push(Rule::new(names.deselect(f), vec![], vec![names.select(f)]));
        } else {
            rules.push(Rule::fact(names.select(f)));
        }
    }

    for p in &omega.open {
        let xs = numbered_vars(p.arity);
        let guards: Vec<Atom> = xs.iter().cloned().map(|x| names.domain(x)).collect();
        let atom = Atom::new(p.name.clone(), xs.clone());
        let dual = Atom::new(names.open_dual[p].clone(), xs);
        rules.push(Rule::new(atom.clone(), guards.clone(), vec![dual.clone()]));
        rules.push(Rule::new(dual, guards, vec![atom]));
    }

    Ok(PiProgram {
        program: Program::new(rules),
        names,
        origin: omega.clone(),
    })
}

/// `M|_{P,F,O}`: atoms of original predicates whose arguments all lie in
/// the activated domain.
pub fn restrict_model(m: &Interpretation, pi: &PiProgram) -> Interpretation {
    let preds = pi.origin.predicates();
    let generated = pi.names.generated_predicates();
    let domain: BTreeSet<&Term> = m
        .iter()
        .filter(|a| a.predicate == pi.names.domain_pred && a.args.len() == 1)
        .map(|a| &a.args[0])
        .collect();
    m.iter()
        .filter(|a| preds.contains(&a.symbol()) && !generated.contains(a.predicate.as_str()))
        .filter(|a| a.args.iter().all(|t| domain.contains(t)))
        .cloned()
        .collect()
}

/// Grounding of the translation over its Herbrand universe up to
/// `depth_bound`. Exact when the signature is function-free.
pub fn ground_translate(pi: &PiProgram, depth_bound: usize, cfg: &SolveConfig) -> Result<Program> {
    let domain = herbrand_universe(&signature(&pi.program), depth_bound);
    check_ground_size(&pi.program, domain.len(), cfg.max_ground_rules)?;
    Ok(ground_program(&pi.program, &domain))
}

/// Stable models of the ground translation.
pub fn pi_models(
    pi: &PiProgram,
    depth_bound: usize,
    cfg: &SolveConfig,
) -> Result<Vec<Interpretation>> {
    ground_models(&ground_translate(pi, depth_bound, cfg)?, cfg)
}

/// Restricted stable models of the translation of `omega`.
pub fn restricted_models(
    omega: &OpenProgram,
    depth_bound: usize,
    cfg: &SolveConfig,
) -> Result<BTreeSet<Interpretation>> {
    let pi = translate(omega)?;
    Ok(pi_models(&pi, depth_bound, cfg)?
        .iter()
        .map(|m| restrict_model(m, &pi))
        .collect())
}

/// Credulous or skeptical open inference through the translation.
pub fn open_entails_via_pi(
    omega: &OpenProgram,
    mode: OpenMode,
    q: &Query,
    depth_bound: usize,
    cfg: &SolveConfig,
) -> Result<bool> {
    if matches!(mode, OpenMode::Cs | OpenMode::Sc) {
        return Err(Error::UnsupportedMode(mode.to_string()));
    }
    if let Some(a) = q
        .atoms()
        .into_iter()
        .find(|a| a.predicate.starts_with(RESERVED_PREFIX))
    {
        return Err(Error::GeneratedPredicate(a.predicate.clone()));
    }
    let models = restricted_models(omega, depth_bound, cfg)?;
    Ok(match mode {
        OpenMode::Crd => models.iter().any(|m| eval_query(m, q)),
        _ => models.iter().all(|m| eval_query(m, q)),
    })
}

/// Partial evaluation of the domain machinery when there are no fresh
/// symbols: the domain is fixed, so guards are resolved at translation
/// time. `depth_bound` limits the domain when `P` has proper function
/// symbols.
pub fn unfold(pi: &PiProgram, depth_bound: usize) -> Result<Program> {
    let omega = &pi.origin;
    if !omega.fresh.is_empty() {
        return Err(Error::UnfoldWithFresh);
    }
    let sig = Signature {
        predicates: BTreeSet::new(),
        functions: omega.program.functions().into_iter().collect(),
    };
    let domain = herbrand_universe(&sig, depth_bound);
    let domain_refs: Vec<&Term> = domain.iter().collect();
    let domain_vec: Vec<Term> = domain.iter().cloned().collect();

    let mut rules = Vec::new();
    for r in omega.program.iter() {
        ground_rule_into(r, &domain_refs, &mut rules);
    }
    for p in &omega.open {
        for args in crate::herbrand::tuples(&domain_vec, p.arity) {
            let atom = Atom::new(p.name.clone(), args.clone());
            let dual = Atom::new(pi.names.open_dual[p].clone(), args);
            rules.push(Rule::new(atom.clone(), vec![], vec![dual.clone()]));
            rules.push(Rule::new(dual, vec![], vec![atom]));
        }
    }
    Ok(Program::new(rules))
}

/// One rule per line, duplicates dropped, in program order.
pub fn export_text(g: &Program) -> Result<String> {
    if let Some(r) = g.iter().find(|r| !r.is_ground()) {
        return Err(Error::NonGround(r.to_string()));
    }
    Ok(g.normalized().to_string())
}
