//! Signatures, bounded Herbrand universes and rule instantiation.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::syntax::{Program, Rule, Signature, Symbol, Term};

/// Exactly the predicate and function symbols occurring in `p`.
pub fn signature(p: &Program) -> Signature {
    Signature {
        predicates: p.predicates().into_iter().collect(),
        functions: p.functions().into_iter().collect(),
    }
}

/// All ground terms over `sig` of nesting depth at most `depth_bound`.
pub fn herbrand_universe(sig: &Signature, depth_bound: usize) -> BTreeSet<Term> {
    let mut universe: BTreeSet<Term> = sig.constants().map(Term::constant).collect();
    let proper: Vec<&Symbol> = sig.functions.iter().filter(|s| s.arity > 0).collect();
    if universe.is_empty() || proper.is_empty() {
        return universe;
    }
    for _ in 0..depth_bound {
        let layer: Vec<Term> = universe.iter().cloned().collect();
        let mut next = universe.clone();
        for f in &proper {
            for args in tuples(&layer, f.arity) {
                next.insert(Term::app(f.name.clone(), args));
            }
        }
        if next.len() == universe.len() {
            break;
        }
        universe = next;
    }
    universe
}

/// All `len`-tuples over `items`, in lexicographic index order.
pub(crate) fn tuples<T: Clone>(items: &[T], len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |item| {
                    let mut t = prefix.clone();
                    t.push(item.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Number of instances `ground_program` will produce.
pub fn ground_size(p: &Program, domain_len: usize) -> u128 {
    p.iter()
        .map(|r| {
            let vars = r.variables().len() as u32;
            (domain_len as u128).checked_pow(vars).unwrap_or(u128::MAX)
        })
        .fold(0u128, u128::saturating_add)
}

pub(crate) fn check_ground_size(p: &Program, domain_len: usize, limit: u128) -> Result<()> {
    let needed = ground_size(p, domain_len);
    if needed > limit {
        return Err(Error::GroundingLimit { needed, limit });
    }
    Ok(())
}

/// Instantiates every rule with every substitution of its variables into
/// `domain`. Variables occurring only under negation are grounded too.
pub fn ground_program(p: &Program, domain: &BTreeSet<Term>) -> Program {
    let domain: Vec<&Term> = domain.iter().collect();
    let mut out = Vec::new();
    for rule in p.iter() {
        ground_rule_into(rule, &domain, &mut out);
    }
    Program::new(out)
}

pub(crate) fn ground_rule_into(rule: &Rule, domain: &[&Term], out: &mut Vec<Rule>) {
    let vars = rule.variables();
    if vars.is_empty() {
        out.push(rule.clone());
        return;
    }
    for values in tuples(domain, vars.len()) {
        let binding: BTreeMap<&str, &Term> = vars.iter().copied().zip(values).collect();
        out.push(rule.substitute(&binding));
    }
}
