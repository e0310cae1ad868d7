//! The given-clause saturation loop with redundancy elimination.

use crate::calculus::{
    equality_resolve, factor, resolve, superpose, Inference, Rule,
};
use crate::clausify::{clausify, negate};
use crate::fol::{Atom, Clause, Formula, Literal};
use crate::sig::Signature;
use crate::ta::{
    acyc_delete, acyc_generate, acyc_simplify, dist_delete, dist_simplify, generate_axioms,
    inj_simplify_neg, inj_simplify_pos, AcyclicityMode, InjNeg, TAConfig,
};
use crate::term::{Term, Var};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

#[derive(Debug, Clone)]
pub struct ProverConfig {
    pub time_limit: Duration,
    pub clause_limit: usize,
    /// Out of `a + w` consecutive given-clause picks, `a` take the
    /// oldest passive clause and `w` the lightest.
    pub age_weight_ratio: (u32, u32),
    pub ta: TAConfig,
    /// Keep every performed inference for later inspection.
    pub log_inferences: bool,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            time_limit: Duration::from_secs(60),
            clause_limit: 500_000,
            age_weight_ratio: (1, 4),
            ta: TAConfig::default(),
            log_inferences: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Statistics {
    pub generated: u64,
    pub simplified: u64,
    pub deleted: u64,
    pub activated: u64,
}

#[derive(Debug, Clone)]
pub struct ProofStep {
    pub id: u32,
    pub rule: Rule,
    pub premises: Vec<u32>,
    pub clause: Clause,
}

#[derive(Debug, Clone)]
pub enum SatResult {
    Unsatisfiable(Vec<ProofStep>),
    Saturated,
    ResourceOut,
}

impl SatResult {
    pub fn is_unsat(&self) -> bool {
        matches!(self, SatResult::Unsatisfiable(_))
    }
}

#[derive(Debug, Clone)]
struct Record {
    clause: Clause,
    rule: Rule,
    premises: Vec<u32>,
}

/// One saturation instance: records of every retained clause, the
/// passive queue and the active set.
pub struct Saturation {
    pub sig: Signature,
    pub config: ProverConfig,
    records: Vec<Record>,
    /// Ids not yet activated and still alive.
    passive: Vec<u32>,
    active: Vec<u32>,
    alive: Vec<bool>,
    pick_counter: u32,
    pub stats: Statistics,
    pub inference_log: Vec<Inference>,
    started: Instant,
    empty_clause: Option<u32>,
}

/// One-way matching of a pattern term against a fixed target.
fn match_term(pat: &Term, tgt: &Term, subst: &mut BTreeMap<Var, Term>) -> bool {
    match pat {
        Term::Var(v) => match subst.get(v) {
            Some(bound) => bound == tgt,
            None => {
                subst.insert(*v, tgt.clone());
                true
            }
        },
        Term::App(f, fargs) => match tgt {
            Term::App(g, gargs) if f == g => fargs
                .iter()
                .zip(gargs.iter())
                .all(|(a, b)| match_term(a, b, subst)),
            _ => false,
        },
    }
}

fn match_literal(
    pat: &Literal,
    tgt: &Literal,
    subst: &BTreeMap<Var, Term>,
) -> Vec<BTreeMap<Var, Term>> {
    if pat.positive != tgt.positive {
        return Vec::new();
    }
    let mut out = Vec::new();
    match (&pat.atom, &tgt.atom) {
        (Atom::Pred(p, pargs), Atom::Pred(q, qargs)) if p == q => {
            let mut s = subst.clone();
            if pargs.iter().zip(qargs).all(|(a, b)| match_term(a, b, &mut s)) {
                out.push(s);
            }
        }
        (Atom::Eq(ps, pt), Atom::Eq(ts, tt)) => {
            for (a, b) in [(ts, tt), (tt, ts)] {
                let mut s = subst.clone();
                if match_term(ps, a, &mut s) && match_term(pt, b, &mut s) {
                    out.push(s);
                }
            }
        }
        _ => {}
    }
    out
}

/// Multiset subsumption: some substitution maps the literals of `d`
/// injectively onto literals of `c`.
pub fn subsumes(d: &Clause, c: &Clause) -> bool {
    if d.literals.len() > c.literals.len() {
        return false;
    }
    // rename d away from c so target variables act as constants
    let (c, d) = crate::fol::rename_apart(c, d);
    fn go(
        d: &[Literal],
        c: &[Literal],
        used: &mut Vec<bool>,
        subst: &BTreeMap<Var, Term>,
    ) -> bool {
        let Some(pat) = d.first() else {
            return true;
        };
        for (i, tgt) in c.iter().enumerate() {
            if used[i] {
                continue;
            }
            for s in match_literal(pat, tgt, subst) {
                used[i] = true;
                if go(&d[1..], c, used, &s) {
                    used[i] = false;
                    return true;
                }
                used[i] = false;
            }
        }
        false
    }
    go(
        &d.literals,
        &c.literals,
        &mut vec![false; c.literals.len()],
        &BTreeMap::new(),
    )
}

/// Sound redundancy approximation: subsumption by any clause of the set.
pub fn is_redundant(c: &Clause, against: &[&Clause]) -> bool {
    against.iter().any(|d| subsumes(d, c))
}

fn is_tautology(c: &Clause) -> bool {
    for (i, l) in c.literals.iter().enumerate() {
        if let Atom::Eq(s, t) = &l.atom {
            if l.positive && s == t {
                return true;
            }
        }
        if c.literals[i + 1..].iter().any(|m| l.complements(m)) {
            return true;
        }
    }
    false
}

enum Simplified {
    Deleted,
    Unchanged,
    /// Premise redundant, replaced by these conclusions.
    Replaced(Vec<(Rule, Clause)>),
    /// Premise kept, conclusion added as a new clause.
    Generated(Rule, Clause),
}

impl Saturation {
    pub fn new(sig: Signature, config: ProverConfig) -> Saturation {
        Saturation {
            sig,
            config,
            records: Vec::new(),
            passive: Vec::new(),
            active: Vec::new(),
            alive: Vec::new(),
            pick_counter: 0,
            stats: Statistics::default(),
            inference_log: Vec::new(),
            started: Instant::now(),
            empty_clause: None,
        }
    }

    pub fn record(&self, id: u32) -> (&Clause, Rule, &[u32]) {
        let r = &self.records[id as usize];
        (&r.clause, r.rule, &r.premises)
    }

    pub fn num_clauses(&self) -> usize {
        self.records.len()
    }

    fn one_simplification(&self, c: &Clause) -> Simplified {
        let ta = &self.config.ta;
        // duplicate literals
        let mut lits = c.literals.clone();
        lits.sort();
        lits.dedup();
        if lits.len() < c.literals.len() {
            let mut cl = Clause::new(lits);
            cl.age = c.age;
            return Simplified::Replaced(vec![(Rule::Factoring, cl)]);
        }
        if is_tautology(c) {
            return Simplified::Deleted;
        }
        if ta.ta_rules_enabled {
            if dist_delete(c, &self.sig) {
                return Simplified::Deleted;
            }
            if ta.acyclicity_mode == AcyclicityMode::Rules && acyc_delete(c, &self.sig) {
                return Simplified::Deleted;
            }
            if let Some(cl) = dist_simplify(c, &self.sig) {
                return Simplified::Replaced(vec![(Rule::DistinctnessSimp, cl)]);
            }
            if let Some(cls) = inj_simplify_pos(c, &self.sig) {
                return Simplified::Replaced(
                    cls.into_iter().map(|cl| (Rule::InjectivitySimp, cl)).collect(),
                );
            }
            match inj_simplify_neg(c, &self.sig) {
                InjNeg::Simplified(cl) => {
                    return Simplified::Replaced(vec![(Rule::InjectivitySimp, cl)]);
                }
                InjNeg::Generated(cl) => {
                    return Simplified::Generated(Rule::InjectivityGen, cl);
                }
                InjNeg::NoChange => {}
            }
            if ta.acyclicity_mode == AcyclicityMode::Rules {
                if let Some(cl) = acyc_simplify(c, &self.sig) {
                    return Simplified::Replaced(vec![(Rule::AcyclicitySimp, cl)]);
                }
            }
        }
        Simplified::Unchanged
    }

    fn subsumed_by_live(&self, c: &Clause, exclude: Option<u32>) -> bool {
        self.records.iter().enumerate().any(|(i, r)| {
            self.alive[i] && Some(i as u32) != exclude && subsumes(&r.clause, c)
        })
    }

    /// Forward simplification to fixpoint. Returns the surviving forms
    /// of `c` (empty when deleted); survivors and generated conclusions
    /// are recorded and queued by the caller via `sink`.
    fn forward_simplify(
        &mut self,
        c: Clause,
        source: Option<u32>,
        rule: Rule,
        premises: Vec<u32>,
    ) -> Vec<u32> {
        // (clause, rule, premises, inj-neg-generation spent)
        let mut queue: Vec<(Clause, Rule, Vec<u32>, bool)> =
            vec![(c, rule, premises, false)];
        let mut kept = Vec::new();
        while let Some((c, rule, premises, gen_spent)) = queue.pop() {
            match self.one_simplification(&c) {
                Simplified::Deleted => {
                    self.stats.deleted += 1;
                    continue;
                }
                Simplified::Replaced(children) => {
                    self.stats.simplified += 1;
                    let parent = source.into_iter().collect::<Vec<_>>();
                    for (r, child) in children {
                        let prem = if parent.is_empty() {
                            premises.clone()
                        } else {
                            parent.clone()
                        };
                        queue.push((child, r, prem, false));
                    }
                    continue;
                }
                Simplified::Generated(r, child) if !gen_spent => {
                    let parent = source.into_iter().collect::<Vec<_>>();
                    let prem = if parent.is_empty() {
                        premises.clone()
                    } else {
                        parent
                    };
                    queue.push((child, r, prem, false));
                    queue.push((c, rule.clone(), premises, true));
                    continue;
                }
                Simplified::Generated(_, _) | Simplified::Unchanged => {}
            }
            if !c.is_empty() && self.subsumed_by_live(&c, source) {
                self.stats.deleted += 1;
                continue;
            }
            kept.push(self.insert(c, rule, premises));
        }
        kept
    }

    fn insert(&mut self, mut c: Clause, rule: Rule, premises: Vec<u32>) -> u32 {
        let id = self.records.len() as u32;
        c.id = id;
        c.age = premises
            .iter()
            .map(|p| self.records[*p as usize].clause.age + 1)
            .max()
            .unwrap_or(0);
        let empty = c.is_empty();
        self.records.push(Record {
            clause: c,
            rule,
            premises,
        });
        self.alive.push(true);
        self.passive.push(id);
        if empty && self.empty_clause.is_none() {
            self.empty_clause = Some(id);
        }
        id
    }

    pub fn add_input(&mut self, c: Clause, rule: Rule) {
        self.stats.generated += 1;
        self.forward_simplify(c.normalized(), None, rule, vec![]);
    }

    /// Picks the next given clause: oldest for `a` out of every
    /// `a + w` picks, lightest otherwise; ties by id.
    fn pick_given(&mut self) -> Option<u32> {
        self.passive.retain(|&id| self.alive[id as usize]);
        if self.passive.is_empty() {
            return None;
        }
        let (a, w) = self.config.age_weight_ratio;
        let by_age = self.pick_counter % (a + w).max(1) < a;
        self.pick_counter = (self.pick_counter + 1) % (a + w).max(1);
        let best = if by_age {
            *self.passive.iter().min().unwrap()
        } else {
            *self
                .passive
                .iter()
                .min_by_key(|&&id| (self.records[id as usize].clause.weight(), id))
                .unwrap()
        };
        self.passive.retain(|&id| id != best);
        Some(best)
    }

    fn out_of_resources(&self) -> bool {
        self.records.len() >= self.config.clause_limit
            || self.started.elapsed() >= self.config.time_limit
    }

    fn log(&mut self, infs: &[Inference]) {
        if self.config.log_inferences {
            self.inference_log.extend(infs.iter().cloned());
        }
    }

    fn process_inferences(&mut self, infs: Vec<Inference>) {
        self.log(&infs);
        for inf in infs {
            self.stats.generated += 1;
            self.forward_simplify(
                inf.conclusion.normalized(),
                None,
                inf.rule,
                inf.premises,
            );
        }
    }

    /// One given-clause iteration. `None` while work remains.
    pub fn step(&mut self) -> Option<SatResult> {
        if let Some(id) = self.empty_clause {
            return Some(SatResult::Unsatisfiable(self.extract_proof(id)));
        }
        if self.out_of_resources() {
            return Some(SatResult::ResourceOut);
        }
        let Some(given_id) = self.pick_given() else {
            return Some(SatResult::Saturated);
        };
        // re-check simplification at activation time
        let given = self.records[given_id as usize].clause.clone();
        match self.one_simplification(&given) {
            Simplified::Unchanged | Simplified::Generated(_, _) => {}
            _ => {
                // the clause can still be rewritten: retire it and let
                // the simplified forms re-enter through passive
                self.alive[given_id as usize] = false;
                self.forward_simplify(
                    given.clone(),
                    Some(given_id),
                    Rule::Input,
                    vec![given_id],
                );
                return if self.empty_clause.is_some() {
                    self.step()
                } else {
                    None
                };
            }
        }
        if self.subsumed_by_live(&given, Some(given_id)) {
            self.alive[given_id as usize] = false;
            self.stats.deleted += 1;
            return None;
        }
        // backward subsumption by the given clause
        let mut victims = Vec::new();
        for &id in self.active.iter().chain(self.passive.iter()) {
            if id != given_id
                && self.alive[id as usize]
                && subsumes(&given, &self.records[id as usize].clause)
            {
                victims.push(id);
            }
        }
        for id in victims {
            self.alive[id as usize] = false;
            self.stats.deleted += 1;
        }
        self.active.push(given_id);
        self.stats.activated += 1;

        if !given.is_empty() {
            let mut infs = Vec::new();
            infs.extend(equality_resolve(&given, &self.sig));
            infs.extend(factor(&given, &self.sig));
            if self.config.ta.ta_rules_enabled
                && self.config.ta.acyclicity_mode == AcyclicityMode::Rules
            {
                infs.extend(acyc_generate(&given, &self.sig));
            }
            let partners: Vec<u32> = self
                .active
                .iter()
                .copied()
                .filter(|&id| self.alive[id as usize])
                .collect();
            for id in partners {
                let other = self.records[id as usize].clause.clone();
                infs.extend(resolve(&given, &other, &self.sig));
                infs.extend(superpose(&given, &other, &self.sig));
                if id != given_id {
                    infs.extend(resolve(&other, &given, &self.sig));
                    infs.extend(superpose(&other, &given, &self.sig));
                }
            }
            self.process_inferences(infs);
        }
        if let Some(id) = self.empty_clause {
            return Some(SatResult::Unsatisfiable(self.extract_proof(id)));
        }
        None
    }

    pub fn run(&mut self) -> SatResult {
        loop {
            if let Some(result) = self.step() {
                return result;
            }
        }
    }

    /// The derivation of clause `id`: its ancestry in insertion order.
    pub fn extract_proof(&self, id: u32) -> Vec<ProofStep> {
        let mut needed = vec![false; self.records.len()];
        let mut stack = vec![id];
        while let Some(i) = stack.pop() {
            if needed[i as usize] {
                continue;
            }
            needed[i as usize] = true;
            stack.extend(self.records[i as usize].premises.iter().copied());
        }
        (0..self.records.len() as u32)
            .filter(|&i| needed[i as usize])
            .map(|i| {
                let r = &self.records[i as usize];
                ProofStep {
                    id: i,
                    rule: r.rule,
                    premises: r.premises.clone(),
                    clause: r.clause.clone(),
                }
            })
            .collect()
    }
}

/// Saturates a clause set. Theory axioms are supplied by the caller.
pub fn saturate(input: Vec<Clause>, sig: &Signature, cfg: &ProverConfig) -> SatResult {
    let mut sat = Saturation::new(sig.clone(), cfg.clone());
    for c in input {
        sat.add_input(c, Rule::Input);
    }
    sat.run()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Theorem,
    NonTheorem,
    ResourceOut,
}

/// Decides a term-algebra sentence by interleaving refutations of its
/// negation and of the sentence itself, both with the subterm-predicate
/// axioms.
pub fn decide(f: &Formula, sig: &Signature, cfg: &ProverConfig) -> Decision {
    let mut cfg = cfg.clone();
    cfg.ta.acyclicity_mode = AcyclicityMode::Axioms;
    let deadline = Instant::now() + cfg.time_limit;

    let build = |formula: &Formula, cfg: &ProverConfig| -> Result<Saturation, String> {
        let mut local = sig.clone();
        let clauses = clausify(formula, &mut local);
        let axioms = generate_axioms(&mut local, &cfg.ta).map_err(|e| e.to_string())?;
        let mut sat = Saturation::new(local, cfg.clone());
        for a in axioms {
            sat.add_input(a, Rule::TheoryAxiom);
        }
        for c in clauses {
            sat.add_input(c, Rule::Input);
        }
        Ok(sat)
    };
    let Ok(mut refuting) = build(&negate(f), &cfg) else {
        return Decision::ResourceOut;
    };
    let Ok(mut affirming) = build(f, &cfg) else {
        return Decision::ResourceOut;
    };
    let mut refuting_done: Option<SatResult> = None;
    let mut affirming_done: Option<SatResult> = None;
    loop {
        if Instant::now() >= deadline {
            return Decision::ResourceOut;
        }
        if refuting_done.is_none() {
            if let Some(r) = refuting.step() {
                if r.is_unsat() {
                    return Decision::Theorem;
                }
                refuting_done = Some(r);
            }
        }
        if affirming_done.is_none() {
            if let Some(r) = affirming.step() {
                if r.is_unsat() {
                    return Decision::NonTheorem;
                }
                affirming_done = Some(r);
            }
        }
        if refuting_done.is_some() && affirming_done.is_some() {
            return Decision::ResourceOut;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sig::{Role, SortKind};
    use crate::term::Term;

    fn quick_config() -> ProverConfig {
        ProverConfig {
            time_limit: Duration::from_secs(10),
            ..ProverConfig::default()
        }
    }

    #[test]
    fn empty_input_saturates() {
        let sig = Signature::new();
        assert!(matches!(
            saturate(vec![], &sig, &quick_config()),
            SatResult::Saturated
        ));
    }

    #[test]
    fn zero_time_limit_resource_out() {
        let mut sig = Signature::new();
        let nat = sig.add_sort("Nat", SortKind::Constructor).unwrap();
        let z = sig
            .add_symbol("z", vec![], Some(nat), Role::Constructor)
            .unwrap();
        let p = sig.add_symbol("p", vec![nat], None, Role::Predicate).unwrap();
        let cfg = ProverConfig {
            time_limit: Duration::from_secs(0),
            ..ProverConfig::default()
        };
        let c = Clause::new(vec![Literal::pred(p, vec![Term::constant(z)])]);
        assert!(matches!(
            saturate(vec![c], &sig, &cfg),
            SatResult::ResourceOut
        ));
    }

    #[test]
    fn propositional_contradiction() {
        let mut sig = Signature::new();
        let nat = sig.add_sort("Nat", SortKind::Constructor).unwrap();
        let z = sig
            .add_symbol("z", vec![], Some(nat), Role::Constructor)
            .unwrap();
        let p = sig.add_symbol("p", vec![nat], None, Role::Predicate).unwrap();
        let pos = Clause::new(vec![Literal::pred(p, vec![Term::var(0, nat)])]);
        let neg = Clause::new(vec![Literal::npred(p, vec![Term::constant(z)])]);
        let result = saturate(vec![pos, neg], &sig, &quick_config());
        assert!(result.is_unsat());
    }

    #[test]
    fn subsumption_examples() {
        let mut sig = Signature::new();
        let nat = sig.add_sort("Nat", SortKind::Constructor).unwrap();
        let z = sig
            .add_symbol("z", vec![], Some(nat), Role::Constructor)
            .unwrap();
        let s = sig
            .add_symbol("s", vec![nat], Some(nat), Role::Constructor)
            .unwrap();
        let p = sig.add_symbol("p", vec![nat], None, Role::Predicate).unwrap();
        let q = sig.add_symbol("q", vec![nat], None, Role::Predicate).unwrap();
        let a = Term::constant(z);
        let b = Term::App(s, vec![Term::constant(z)]);
        let general = Clause::new(vec![Literal::pred(p, vec![Term::var(0, nat)])]);
        let instance = Clause::new(vec![
            Literal::pred(p, vec![a.clone()]),
            Literal::pred(q, vec![b]),
        ]);
        assert!(subsumes(&general, &instance));
        assert!(!subsumes(&instance, &general));
        // generality direction: p(x) is not subsumed by p(a)
        let ground = Clause::new(vec![Literal::pred(p, vec![a])]);
        assert!(!subsumes(&ground, &general));
        // a variant subsumes
        let variant = Clause::new(vec![Literal::pred(p, vec![Term::var(7, nat)])]);
        assert!(subsumes(&variant, &general));
        assert!(is_redundant(&general, &[&variant]));
    }

    #[test]
    fn subsumption_is_multiset() {
        // p(x) | p(y) does not subsume p(a): two pattern literals
        // cannot map to one target literal
        let mut sig = Signature::new();
        let nat = sig.add_sort("Nat", SortKind::Constructor).unwrap();
        let z = sig
            .add_symbol("z", vec![], Some(nat), Role::Constructor)
            .unwrap();
        let p = sig.add_symbol("p", vec![nat], None, Role::Predicate).unwrap();
        let two = Clause::new(vec![
            Literal::pred(p, vec![Term::var(0, nat)]),
            Literal::pred(p, vec![Term::var(1, nat)]),
        ]);
        let one = Clause::new(vec![Literal::pred(p, vec![Term::constant(z)])]);
        assert!(!subsumes(&two, &one));
    }

    #[test]
    fn fairness_oldest_eventually_picked() {
        // with ratio (1, 4) every fifth pick is by age
        let mut sig = Signature::new();
        let nat = sig.add_sort("Nat", SortKind::Constructor).unwrap();
        sig.add_symbol("z", vec![], Some(nat), Role::Constructor)
            .unwrap();
        let sat = Saturation::new(sig, quick_config());
        let (a, w) = sat.config.age_weight_ratio;
        assert!(a >= 1 && w >= 1);
    }

    #[test]
    fn deterministic_runs() {
        let mut sig = Signature::new();
        let nat = sig.add_sort("Nat", SortKind::Constructor).unwrap();
        let z = sig
            .add_symbol("z", vec![], Some(nat), Role::Constructor)
            .unwrap();
        let s = sig
            .add_symbol("s", vec![nat], Some(nat), Role::Constructor)
            .unwrap();
        let f = sig
            .add_symbol("f", vec![nat], Some(nat), Role::Function)
            .unwrap();
        let x = Term::var(0, nat);
        let clauses = vec![
            Clause::new(vec![Literal::eq(
                Term::App(f, vec![Term::constant(z)]),
                Term::constant(z),
            )]),
            Clause::new(vec![Literal::eq(
                Term::App(f, vec![Term::App(s, vec![x.clone()])]),
                Term::App(s, vec![Term::App(f, vec![x])]),
            )]),
            Clause::new(vec![Literal::neq(
                Term::App(f, vec![Term::App(s, vec![Term::constant(z)])]),
                Term::App(s, vec![Term::constant(z)]),
            )]),
        ];
        let r1 = saturate(clauses.clone(), &sig, &quick_config());
        let r2 = saturate(clauses, &sig, &quick_config());
        assert!(r1.is_unsat());
        assert!(r2.is_unsat());
        let (SatResult::Unsatisfiable(p1), SatResult::Unsatisfiable(p2)) = (r1, r2) else {
            unreachable!()
        };
        assert_eq!(p1.len(), p2.len());
        for (a, b) in p1.iter().zip(p2.iter()) {
            assert_eq!(a.id, b.id);
            assert_eq!(a.clause.literals, b.clause.literals);
        }
    }
}
