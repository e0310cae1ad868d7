//! Shared oracle machinery for the integration tests: evaluation in
//! term-algebra models, finite-model enumeration, and seeded random
//! generators for terms, clauses and formulas.

#![allow(dead_code)]

use prover::fol::{Atom, Clause, Formula, Literal};
use prover::sig::{Role, Signature, SortId, SortKind, SymbolId};
use prover::ta::is_constructor_subterm;
use prover::term::{Term, Var};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------
// term-algebra models
//
// Values are canonical ground terms: constructor applications evaluate
// to themselves, elements of plain sorts are encoded as low-index
// variables of that sort, and uninterpreted symbols are interpreted by
// a fixed pseudorandom (hash-seeded) choice from the universe. This
// gives an honest term-algebra model in which soundness of inferences
// can be checked by ground evaluation.

pub struct TaModel<'a> {
    pub sig: &'a Signature,
    pub seed: u64,
    universes: HashMap<SortId, Vec<Term>>,
}

const PLAIN_ELEMS: u32 = 3;
const UNIVERSE_CAP: usize = 60;

impl<'a> TaModel<'a> {
    pub fn new(sig: &'a Signature, seed: u64) -> Self {
        let mut universes = HashMap::new();
        for (sort_id, sort) in sig.sorts() {
            let u = match sort.kind {
                SortKind::Plain => (0..PLAIN_ELEMS).map(|i| Term::var(i, sort_id)).collect(),
                SortKind::Constructor => Vec::new(),
            };
            universes.insert(sort_id, u);
        }
        // grow constructor universes to depth 3 by fixpoint rounds
        for _ in 0..3 {
            let snapshot = universes.clone();
            for (sort_id, sort) in sig.sorts() {
                if sort.kind != SortKind::Constructor {
                    continue;
                }
                let mut u = snapshot[&sort_id].clone();
                for ctor in sig.constructors_of(sort_id) {
                    let arg_sorts = sig.symbol(ctor).arg_sorts.clone();
                    let mut combos: Vec<Vec<Term>> = vec![vec![]];
                    for s in &arg_sorts {
                        let pool = &snapshot[s];
                        let mut next = Vec::new();
                        for c in &combos {
                            for t in pool {
                                let mut c = c.clone();
                                c.push(t.clone());
                                next.push(c);
                                if next.len() > UNIVERSE_CAP {
                                    break;
                                }
                            }
                        }
                        combos = next;
                    }
                    for args in combos {
                        let t = Term::App(ctor, args);
                        if !u.contains(&t) {
                            u.push(t);
                        }
                        if u.len() >= UNIVERSE_CAP {
                            break;
                        }
                    }
                }
                universes.insert(sort_id, u);
            }
        }
        TaModel {
            sig,
            seed,
            universes,
        }
    }

    pub fn universe(&self, sort: SortId) -> &[Term] {
        &self.universes[&sort]
    }

    fn choice(&self, sym: SymbolId, args: &[Term], modulus: usize) -> usize {
        let mut h = DefaultHasher::new();
        self.seed.hash(&mut h);
        sym.hash(&mut h);
        args.hash(&mut h);
        (h.finish() as usize) % modulus.max(1)
    }

    /// Evaluates a ground-under-`env` term to a canonical value.
    pub fn eval_term(&self, t: &Term, env: &HashMap<Var, Term>) -> Term {
        match t {
            Term::Var(v) => env
                .get(v)
                .unwrap_or_else(|| panic!("unbound variable in evaluation: {v:?}"))
                .clone(),
            Term::App(f, args) => {
                let vals: Vec<Term> = args.iter().map(|a| self.eval_term(a, env)).collect();
                let sym = self.sig.symbol(*f);
                match sym.role {
                    Role::Constructor => Term::App(*f, vals),
                    Role::Destructor { constructor, index } => match &vals[0] {
                        Term::App(c, cargs) if *c == constructor => cargs[index].clone(),
                        other => {
                            // fixed arbitrary value off the matching case
                            let u = self.universe(sym.result_sort.unwrap());
                            u[self.choice(*f, std::slice::from_ref(other), u.len())].clone()
                        }
                    },
                    _ => {
                        let u = self.universe(sym.result_sort.expect("term head is a function"));
                        u[self.choice(*f, &vals, u.len())].clone()
                    }
                }
            }
        }
    }

    pub fn eval_literal(&self, l: &Literal, env: &HashMap<Var, Term>) -> bool {
        let truth = match &l.atom {
            Atom::Eq(s, t) => self.eval_term(s, env) == self.eval_term(t, env),
            Atom::Pred(p, args) => {
                let vals: Vec<Term> = args.iter().map(|a| self.eval_term(a, env)).collect();
                match self.sig.symbol(*p).role {
                    Role::SubtermPredicate => {
                        is_constructor_subterm(&vals[0], &vals[1], self.sig)
                    }
                    _ => self.choice(*p, &vals, 2) == 1,
                }
            }
        };
        truth == l.positive
    }

    pub fn eval_clause(&self, c: &Clause, env: &HashMap<Var, Term>) -> bool {
        c.literals.iter().any(|l| self.eval_literal(l, env))
    }

    /// A random assignment of universe values to the given variables.
    pub fn random_env(&self, vars: &[Var], r: &mut ChaCha8Rng) -> HashMap<Var, Term> {
        vars.iter()
            .map(|v| {
                let u = self.universe(v.sort);
                (*v, u[r.gen_range(0..u.len())].clone())
            })
            .collect()
    }
}

/// Checks one recorded inference by ground evaluation: under every
/// sampled assignment in which all premise instances are true, the
/// conclusion must be true. Returns a violating description on failure.
pub fn check_inference_sound(
    inf: &prover::calculus::Inference,
    sig: &Signature,
    seed: u64,
    samples: usize,
) -> Result<(), String> {
    let model = TaModel::new(sig, seed);
    let mut vars = Vec::new();
    for p in &inf.premise_instances {
        for v in p.vars() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    for v in inf.conclusion.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    let mut r = rng(seed ^ 0x1234_5678);
    for _ in 0..samples {
        let env = model.random_env(&vars, &mut r);
        let premises_hold = inf
            .premise_instances
            .iter()
            .all(|p| model.eval_clause(p, &env));
        if premises_hold && !model.eval_clause(&inf.conclusion, &env) {
            return Err(format!(
                "unsound {:?} inference: premises hold, conclusion fails under {:?}",
                inf.rule, env
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// random term / clause generators over a constructor signature

pub struct TermGen<'a> {
    pub sig: &'a Signature,
    pub max_depth: usize,
    pub num_vars: u32,
}

impl<'a> TermGen<'a> {
    pub fn term(&self, sort: SortId, depth: usize, r: &mut ChaCha8Rng) -> Term {
        let candidates: Vec<SymbolId> = self
            .sig
            .symbols()
            .filter(|(_, s)| {
                s.result_sort == Some(sort)
                    && !matches!(s.role, Role::Destructor { .. })
                    && (depth > 0 || s.arity() == 0)
            })
            .map(|(id, _)| id)
            .collect();
        let use_var = candidates.is_empty() || (self.num_vars > 0 && r.gen_bool(0.35));
        if use_var {
            return Term::var(r.gen_range(0..self.num_vars.max(1)), sort);
        }
        let f = candidates[r.gen_range(0..candidates.len())];
        let args = self
            .sig
            .symbol(f)
            .arg_sorts
            .clone()
            .into_iter()
            .map(|s| self.term(s, depth.saturating_sub(1), r))
            .collect();
        Term::App(f, args)
    }

    pub fn literal(&self, sort: SortId, r: &mut ChaCha8Rng) -> Literal {
        let s = self.term(sort, self.max_depth, r);
        let t = self.term(sort, self.max_depth, r);
        if r.gen_bool(0.5) {
            Literal::eq(s, t)
        } else {
            Literal::neq(s, t)
        }
    }

    pub fn clause(&self, sort: SortId, max_lits: usize, r: &mut ChaCha8Rng) -> Clause {
        let n = r.gen_range(1..=max_lits);
        Clause::new((0..n).map(|_| self.literal(sort, r)).collect())
    }
}

/// The nat signature with two uninterpreted constants and one
/// uninterpreted unary function, shared by several oracles.
pub fn nat_signature() -> (Signature, SortId) {
    let mut sig = Signature::new();
    let nat = sig.add_sort("Nat", SortKind::Constructor).unwrap();
    sig.add_symbol("z", vec![], Some(nat), Role::Constructor)
        .unwrap();
    sig.add_symbol("s", vec![nat], Some(nat), Role::Constructor)
        .unwrap();
    sig.add_symbol("a", vec![], Some(nat), Role::Function)
        .unwrap();
    sig.add_symbol("b", vec![], Some(nat), Role::Function)
        .unwrap();
    sig.add_symbol("h", vec![nat], Some(nat), Role::Function)
        .unwrap();
    (sig, nat)
}

/// Binary-tree signature over a parameter sort: leaf and ternary node.
pub fn bin_signature() -> (Signature, SortId, SortId) {
    let mut sig = Signature::new();
    let tau = sig.add_sort("tau", SortKind::Plain).unwrap();
    let bin = sig.add_sort("Bin", SortKind::Constructor).unwrap();
    sig.add_symbol("leaf", vec![tau], Some(bin), Role::Constructor)
        .unwrap();
    sig.add_symbol("node", vec![bin, tau, bin], Some(bin), Role::Constructor)
        .unwrap();
    (sig, tau, bin)
}

// ---------------------------------------------------------------------
// finite models over a two-element domain, for the clausifier oracle

const DOMAIN: usize = 2;

/// One interpretation of every symbol over the two-element domain,
/// decoded from the bits of `index`.
pub struct FiniteModel {
    tables: HashMap<SymbolId, Vec<usize>>,
}

/// Number of interpretation bits for the given symbols. Each table
/// entry of a symbol with arity a takes one bit; there are 2^a entries.
pub fn model_bits(sig: &Signature) -> u32 {
    sig.symbols().map(|(_, s)| 1u32 << s.arity()).sum()
}

impl FiniteModel {
    pub fn decode(sig: &Signature, mut index: u64) -> FiniteModel {
        let mut tables = HashMap::new();
        for (id, sym) in sig.symbols() {
            let entries = 1usize << sym.arity();
            let mut table = Vec::with_capacity(entries);
            for _ in 0..entries {
                table.push((index & 1) as usize);
                index >>= 1;
            }
            tables.insert(id, table);
        }
        FiniteModel { tables }
    }

    fn lookup(&self, sym: SymbolId, args: &[usize]) -> usize {
        let mut i = 0;
        for &a in args {
            i = i * DOMAIN + a;
        }
        self.tables[&sym][i]
    }

    pub fn eval_term(&self, t: &Term, env: &HashMap<Var, usize>) -> usize {
        match t {
            Term::Var(v) => env[v],
            Term::App(f, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.eval_term(a, env)).collect();
                self.lookup(*f, &vals)
            }
        }
    }

    fn eval_atom(&self, a: &Atom, env: &HashMap<Var, usize>) -> bool {
        match a {
            Atom::Eq(s, t) => self.eval_term(s, env) == self.eval_term(t, env),
            Atom::Pred(p, args) => {
                let vals: Vec<usize> = args.iter().map(|x| self.eval_term(x, env)).collect();
                self.lookup(*p, &vals) == 1
            }
        }
    }

    pub fn eval_formula(&self, f: &Formula, env: &mut HashMap<Var, usize>) -> bool {
        match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => self.eval_atom(a, env),
            Formula::Not(g) => !self.eval_formula(g, env),
            Formula::And(gs) => gs.iter().all(|g| self.eval_formula(g, env)),
            Formula::Or(gs) => gs.iter().any(|g| self.eval_formula(g, env)),
            Formula::Implies(a, b) => {
                !self.eval_formula(a, env) || self.eval_formula(b, env)
            }
            Formula::Iff(a, b) => self.eval_formula(a, env) == self.eval_formula(b, env),
            Formula::Forall(v, g) => (0..DOMAIN).all(|d| {
                let old = env.insert(*v, d);
                let ok = self.eval_formula(g, env);
                match old {
                    Some(o) => {
                        env.insert(*v, o);
                    }
                    None => {
                        env.remove(v);
                    }
                }
                ok
            }),
            Formula::Exists(v, g) => (0..DOMAIN).any(|d| {
                let old = env.insert(*v, d);
                let ok = self.eval_formula(g, env);
                match old {
                    Some(o) => {
                        env.insert(*v, o);
                    }
                    None => {
                        env.remove(v);
                    }
                }
                ok
            }),
        }
    }

    /// Universally quantified clause truth: all assignments.
    pub fn eval_clause(&self, c: &Clause) -> bool {
        let vars = c.vars();
        let n = vars.len();
        let mut assignment = vec![0usize; n];
        loop {
            let env: HashMap<Var, usize> =
                vars.iter().copied().zip(assignment.iter().copied()).collect();
            if !c
                .literals
                .iter()
                .any(|l| self.eval_atom(&l.atom, &env) == l.positive)
            {
                return false;
            }
            // increment the mixed-radix counter
            let mut i = 0;
            while i < n {
                assignment[i] += 1;
                if assignment[i] < DOMAIN {
                    break;
                }
                assignment[i] = 0;
                i += 1;
            }
            if i == n {
                return true;
            }
        }
    }
}

/// Whether the formula is satisfiable over the two-element domain,
/// enumerating every interpretation of every signature symbol.
pub fn finite_sat_formula(f: &Formula, sig: &Signature) -> bool {
    let bits = model_bits(sig);
    assert!(bits <= 22, "model space too large: {bits} bits");
    for index in 0..(1u64 << bits) {
        let m = FiniteModel::decode(sig, index);
        if m.eval_formula(f, &mut HashMap::new()) {
            return true;
        }
    }
    false
}

/// Whether the clause set is satisfiable over the two-element domain.
pub fn finite_sat_clauses(cs: &[Clause], sig: &Signature) -> bool {
    let bits = model_bits(sig);
    assert!(bits <= 22, "model space too large: {bits} bits");
    for index in 0..(1u64 << bits) {
        let m = FiniteModel::decode(sig, index);
        if cs.iter().all(|c| m.eval_clause(c)) {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------
// random closed formulas over a tiny one-sorted signature

pub struct FormulaGen {
    pub sort: SortId,
    pub pred: SymbolId,
    pub cnst: SymbolId,
    pub func: SymbolId,
    next_var: u32,
}

/// A fresh signature for the clausifier oracle: plain sort D, unary
/// predicate p, constant c, unary function f.
pub fn formula_signature() -> (Signature, FormulaGen) {
    let mut sig = Signature::new();
    let d = sig.add_sort("D", SortKind::Plain).unwrap();
    let p = sig.add_symbol("p", vec![d], None, Role::Predicate).unwrap();
    let c = sig.add_symbol("c", vec![], Some(d), Role::Function).unwrap();
    let f = sig
        .add_symbol("f", vec![d], Some(d), Role::Function)
        .unwrap();
    (
        sig,
        FormulaGen {
            sort: d,
            pred: p,
            cnst: c,
            func: f,
            next_var: 0,
        },
    )
}

impl FormulaGen {
    fn term(&self, scope: &[Var], r: &mut ChaCha8Rng) -> Term {
        let base = if !scope.is_empty() && r.gen_bool(0.7) {
            Term::Var(scope[r.gen_range(0..scope.len())])
        } else {
            Term::constant(self.cnst)
        };
        if r.gen_bool(0.3) {
            Term::App(self.func, vec![base])
        } else {
            base
        }
    }

    fn atom(&self, scope: &[Var], r: &mut ChaCha8Rng) -> Formula {
        if r.gen_bool(0.6) {
            Formula::Atom(Atom::Pred(self.pred, vec![self.term(scope, r)]))
        } else {
            Formula::Atom(Atom::Eq(self.term(scope, r), self.term(scope, r)))
        }
    }

    /// A random closed formula with at most `quants` quantifiers.
    pub fn formula(
        &mut self,
        depth: usize,
        quants: usize,
        scope: &mut Vec<Var>,
        r: &mut ChaCha8Rng,
    ) -> Formula {
        if depth == 0 {
            return self.atom(scope, r);
        }
        match r.gen_range(0..10) {
            0 | 1 => Formula::not(self.formula(depth - 1, quants, scope, r)),
            2 | 3 => Formula::And(vec![
                self.formula(depth - 1, quants, scope, r),
                self.formula(depth - 1, quants, scope, r),
            ]),
            4 | 5 => Formula::Or(vec![
                self.formula(depth - 1, quants, scope, r),
                self.formula(depth - 1, quants, scope, r),
            ]),
            6 => Formula::implies(
                self.formula(depth - 1, quants, scope, r),
                self.formula(depth - 1, quants, scope, r),
            ),
            7 => Formula::iff(
                self.formula(depth - 1, quants, scope, r),
                self.formula(depth - 1, quants, scope, r),
            ),
            _ if quants > 0 => {
                let v = Var {
                    index: self.next_var,
                    sort: self.sort,
                };
                self.next_var += 1;
                scope.push(v);
                let body = self.formula(depth - 1, quants - 1, scope, r);
                scope.pop();
                if r.gen_bool(0.5) {
                    Formula::forall(v, body)
                } else {
                    Formula::exists(v, body)
                }
            }
            _ => self.atom(scope, r),
        }
    }
}

// ---------------------------------------------------------------------
// one-way matching, reimplemented independently for the mgu oracle

pub fn oracle_match(pat: &Term, tgt: &Term, subst: &mut HashMap<Var, Term>) -> bool {
    match pat {
        Term::Var(v) => match subst.get(v) {
            Some(b) => b == tgt,
            None => {
                subst.insert(*v, tgt.clone());
                true
            }
        },
        Term::App(f, fargs) => match tgt {
            Term::App(g, gargs) if f == g => fargs
                .iter()
                .zip(gargs)
                .all(|(a, b)| oracle_match(a, b, subst)),
            _ => false,
        },
    }
}
