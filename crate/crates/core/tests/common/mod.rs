//! Shared generators and independent oracles for the integration suites.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use openlp::syntax::{Atom, OpenProgram, Program, Query, Rule, Symbol, Term};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Brute-force stable models of a ground program, written without any of
/// the crate's solver code: every subset of the occurring atoms is checked
/// against the least model of its reduct.
pub fn oracle_stable_models(pg: &Program) -> BTreeSet<BTreeSet<Atom>> {
    let base: Vec<Atom> = pg
        .iter()
        .flat_map(|r| r.atoms().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(base.len() <= 16, "oracle base too large: {}", base.len());
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << base.len()) {
        let candidate: BTreeSet<Atom> = base
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect();
        let reduct: Vec<&Rule> = pg
            .iter()
            .filter(|r| r.neg.iter().all(|a| !candidate.contains(a)))
            .collect();
        let mut lm: BTreeSet<Atom> = BTreeSet::new();
        loop {
            let before = lm.len();
            for r in &reduct {
                if r.pos.iter().all(|a| lm.contains(a)) {
                    lm.insert(r.head.clone());
                }
            }
            if lm.len() == before {
                break;
            }
        }
        if lm == candidate {
            out.insert(candidate);
        }
    }
    out
}

/// Random propositional program over at most `max_atoms` atoms.
pub fn random_ground_program(rng: &mut ChaCha8Rng, max_atoms: usize) -> Program {
    let n = rng.gen_range(1..=max_atoms);
    let atoms: Vec<Atom> = (0..n).map(|i| Atom::prop(format!("a{i}"))).collect();
    let rules = rng.gen_range(1..=2 * n);
    let mut out = Vec::new();
    for _ in 0..rules {
        let head = atoms.choose(rng).unwrap().clone();
        let body = rng.gen_range(0..=3);
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for _ in 0..body {
            let a = atoms.choose(rng).unwrap().clone();
            if rng.gen_bool(0.5) {
                pos.push(a);
            } else {
                neg.push(a);
            }
        }
        out.push(Rule::new(head, pos, neg));
    }
    Program::new(out)
}

pub const PREDICATES: [(&str, usize); 4] = [("p", 1), ("q", 0), ("r", 1), ("s", 0)];
pub const CONSTANTS: [&str; 2] = ["a", "b"];
pub const FRESH: &str = "c";

fn random_atom(rng: &mut ChaCha8Rng, constants: &[&str], vars: &[&str]) -> Atom {
    let (name, arity) = *PREDICATES.choose(rng).unwrap();
    let args = (0..arity)
        .map(|_| {
            let use_var = constants.is_empty() || rng.gen_bool(0.5);
            if use_var {
                Term::var(*vars.choose(rng).unwrap())
            } else {
                Term::constant(*constants.choose(rng).unwrap())
            }
        })
        .collect();
    Atom::new(name, args)
}

/// Random function-free program: at most `max_rules` rules, predicates of
/// arity at most one, constants drawn from `a`, `b`.
pub fn random_program(rng: &mut ChaCha8Rng, max_rules: usize) -> Program {
    let k = rng.gen_range(0..=CONSTANTS.len());
    let constants: Vec<&str> = CONSTANTS[..k].to_vec();
    let n = rng.gen_range(1..=max_rules);
    let mut rules = Vec::new();
    for _ in 0..n {
        let head = random_atom(rng, &constants, &["X"]);
        let body = rng.gen_range(0..=2);
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for _ in 0..body {
            let a = random_atom(rng, &constants, &["X"]);
            if rng.gen_bool(0.5) {
                pos.push(a);
            } else {
                neg.push(a);
            }
        }
        rules.push(Rule::new(head, pos, neg));
    }
    Program::new(rules)
}

pub fn random_open_set(rng: &mut ChaCha8Rng, nonempty: bool) -> BTreeSet<Symbol> {
    loop {
        let set: BTreeSet<Symbol> = PREDICATES
            .iter()
            .filter(|_| rng.gen_bool(0.35))
            .map(|(n, a)| Symbol::new(*n, *a))
            .collect();
        if !nonempty || !set.is_empty() {
            return set;
        }
    }
}

/// Random open program in the scope of the randomized suites: at most two
/// constants in `P`, at most one fresh constant, at most three rules,
/// arity at most one.
pub fn random_open_program(rng: &mut ChaCha8Rng, open_nonempty: bool) -> OpenProgram {
    let program = random_program(rng, 3);
    let fresh: Vec<Symbol> = if rng.gen_bool(0.5) {
        vec![Symbol::new(FRESH, 0)]
    } else {
        vec![]
    };
    let open = random_open_set(rng, open_nonempty);
    OpenProgram::new(program, fresh, open)
}

/// Random ground query over the vocabulary of the generators.
pub fn random_query(rng: &mut ChaCha8Rng, depth: usize) -> Query {
    if depth == 0 || rng.gen_bool(0.4) {
        let (name, arity) = *PREDICATES.choose(rng).unwrap();
        let pool = [CONSTANTS[0], CONSTANTS[1], FRESH];
        let args = (0..arity)
            .map(|_| Term::constant(*pool.choose(rng).unwrap()))
            .collect();
        return Query::Atom(Atom::new(name, args));
    }
    match rng.gen_range(0..3) {
        0 => Query::not(random_query(rng, depth - 1)),
        1 => Query::and(random_query(rng, depth - 1), random_query(rng, depth - 1)),
        _ => Query::or(random_query(rng, depth - 1), random_query(rng, depth - 1)),
    }
}

/// Renames generated names to the short forms used in printed listings:
/// `o_u` → `u`, `o_s` → `s`, `o_ns` → `sbar`, `o_neg_p` → `pbar`,
/// `o_sym_f_n` → `f`, `o_skN` → `sN`; variables become `V1, V2, ...` in order
/// of first occurrence within each rule.
pub fn canonical(p: &Program) -> Program {
    fn name(n: &str) -> String {
        match n {
            "o_u" => "u".into(),
            "o_s" => "s".into(),
            "o_ns" => "sbar".into(),
            _ => {
                if let Some(rest) = n.strip_prefix("o_neg_") {
                    format!("{rest}bar")
                } else if let Some(rest) = n.strip_prefix("o_sym_") {
                    rest.rsplit_once('_').map(|(f, _)| f.to_string()).unwrap()
                } else if let Some(rest) = n.strip_prefix("o_sk") {
                    format!("s{rest}")
                } else {
                    n.to_string()
                }
            }
        }
    }
    fn term(t: &Term, vars: &mut BTreeMap<String, String>) -> Term {
        match t {
            Term::Var(v) => {
                let next = format!("V{}", vars.len() + 1);
                Term::Var(vars.entry(v.clone()).or_insert(next).clone())
            }
            Term::App(f, args) => Term::App(name(f), args.iter().map(|a| term(a, vars)).collect()),
        }
    }
    fn atom(a: &Atom, vars: &mut BTreeMap<String, String>) -> Atom {
        Atom::new(
            name(&a.predicate),
            a.args.iter().map(|t| term(t, vars)).collect(),
        )
    }
    p.iter()
        .map(|r| {
            let mut vars = BTreeMap::new();
            let head = atom(&r.head, &mut vars);
            let neg: Vec<Atom> = r.neg.iter().map(|a| atom(a, &mut vars)).collect();
            let pos: Vec<Atom> = r.pos.iter().map(|a| atom(a, &mut vars)).collect();
            Rule::new(head, pos, neg)
        })
        .collect()
}

/// Two naive choice encodings of `p(a). q :- not p(X).`: a pair over the
/// open predicate for `a`, and additionally for `b`.
pub fn naive_translations() -> (Program, Program) {
    let base = openlp::parse_program("p(a). q :- not p(X).").unwrap();
    let pair = |c: &str| {
        vec![
            Rule::new(
                Atom::ground("r", &[c]),
                vec![],
                vec![Atom::ground("rbar", &[c])],
            ),
            Rule::new(
                Atom::ground("rbar", &[c]),
                vec![],
                vec![Atom::ground("r", &[c])],
            ),
        ]
    };
    let mut p1 = base.clone();
    p1.rules.extend(pair("a"));
    let mut p2 = p1.clone();
    p2.rules.extend(pair("b"));
    (p1, p2)
}
