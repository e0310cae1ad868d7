//! Term-algebra specific reasoning: axiom instantiation from the
//! signature, the constructor-subterm relation, and the distinctness,
//! injectivity and acyclicity rules.

use crate::calculus::{Inference, Rule};
use crate::fol::{Atom, Clause, Literal};
use crate::order::{compare_literal_multisets, Verdict};
use crate::sig::{Role, SigError, Signature, SortId, SortKind, SymbolId};
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcyclicityMode {
    Off,
    /// Subterm predicate with its axioms; complete for pure problems.
    Axioms,
    /// Light-weight simplification and generating rules; incomplete.
    Rules,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitivityVariant {
    /// One transitivity clause per sort.
    Transitive,
    /// Stepwise closure through each constructor argument.
    Stepwise,
}

#[derive(Debug, Clone, Copy)]
pub struct TAConfig {
    pub acyclicity_mode: AcyclicityMode,
    pub ta_rules_enabled: bool,
    pub transitivity_variant: TransitivityVariant,
}

impl Default for TAConfig {
    fn default() -> Self {
        TAConfig {
            acyclicity_mode: AcyclicityMode::Rules,
            ta_rules_enabled: true,
            transitivity_variant: TransitivityVariant::Stepwise,
        }
    }
}

fn sub_predicate(sig: &mut Signature, sort: SortId) -> SymbolId {
    let name = format!("Sub${}", sig.sort(sort).name);
    if let Some(id) = sig.symbol_by_name(&name) {
        return id;
    }
    sig.add_symbol(&name, vec![sort, sort], None, Role::SubtermPredicate)
        .expect("subterm predicate name collision")
}

/// Instantiates the theory axioms for every constructor sort: domain
/// closure in destructor form, distinctness, injectivity, destructor
/// definitions, and (in axioms mode) the subterm predicate axioms.
pub fn generate_axioms(sig: &mut Signature, cfg: &TAConfig) -> Result<Vec<Clause>, SigError> {
    sig.check_inhabited()?;
    let ctor_sorts: Vec<SortId> = sig
        .sorts()
        .filter(|(_, s)| s.kind == SortKind::Constructor)
        .map(|(id, _)| id)
        .collect();
    let mut out = Vec::new();
    for tau in ctor_sorts {
        let ctors = sig.constructors_of(tau);
        if ctors.is_empty() {
            return Err(SigError::UninhabitedSort(sig.sort(tau).name.clone()));
        }
        // domain closure: x = f1(projections(x)) | ... | x = fk(...)
        let x = Term::var(0, tau);
        let mut closure = Vec::new();
        for &f in &ctors {
            let arity = sig.symbol(f).arity();
            let projected: Vec<Term> = (0..arity)
                .map(|i| {
                    let d = sig.ensure_destructor(f, i);
                    Term::App(d, vec![x.clone()])
                })
                .collect();
            closure.push(Literal::eq(x.clone(), Term::App(f, projected)));
        }
        out.push(Clause::new(closure));
        // distinctness, one clause per unordered constructor pair
        for (i, &f) in ctors.iter().enumerate() {
            for &g in &ctors[i + 1..] {
                let fargs: Vec<Term> = sig
                    .symbol(f)
                    .arg_sorts
                    .iter()
                    .enumerate()
                    .map(|(k, s)| Term::var(k as u32, *s))
                    .collect();
                let offset = fargs.len() as u32;
                let gargs: Vec<Term> = sig
                    .symbol(g)
                    .arg_sorts
                    .iter()
                    .enumerate()
                    .map(|(k, s)| Term::var(offset + k as u32, *s))
                    .collect();
                out.push(Clause::new(vec![Literal::neq(
                    Term::App(f, fargs),
                    Term::App(g, gargs),
                )]));
            }
        }
        // injectivity: f(xs) != f(ys) | x_i = y_i
        for &f in &ctors {
            let arg_sorts = sig.symbol(f).arg_sorts.clone();
            let n = arg_sorts.len();
            if n == 0 {
                continue;
            }
            let xs: Vec<Term> = arg_sorts
                .iter()
                .enumerate()
                .map(|(k, s)| Term::var(k as u32, *s))
                .collect();
            let ys: Vec<Term> = arg_sorts
                .iter()
                .enumerate()
                .map(|(k, s)| Term::var((n + k) as u32, *s))
                .collect();
            for i in 0..n {
                out.push(Clause::new(vec![
                    Literal::neq(Term::App(f, xs.clone()), Term::App(f, ys.clone())),
                    Literal::eq(xs[i].clone(), ys[i].clone()),
                ]));
            }
            // destructor definitions: p_f^i(f(xs)) = x_i
            for i in 0..n {
                let d = sig.ensure_destructor(f, i);
                out.push(Clause::new(vec![Literal::eq(
                    Term::App(d, vec![Term::App(f, xs.clone())]),
                    xs[i].clone(),
                )]));
            }
        }
        if cfg.acyclicity_mode == AcyclicityMode::Axioms {
            let sub = sub_predicate(sig, tau);
            // subterm base: Sub(x_i, f(xs)) for arguments of this sort
            for &f in &ctors {
                let arg_sorts = sig.symbol(f).arg_sorts.clone();
                let xs: Vec<Term> = arg_sorts
                    .iter()
                    .enumerate()
                    .map(|(k, s)| Term::var(k as u32, *s))
                    .collect();
                for (i, s) in arg_sorts.iter().enumerate() {
                    if *s != tau {
                        continue;
                    }
                    out.push(Clause::new(vec![Literal::pred(
                        sub,
                        vec![xs[i].clone(), Term::App(f, xs.clone())],
                    )]));
                }
            }
            // irreflexivity
            out.push(Clause::new(vec![Literal::npred(
                sub,
                vec![Term::var(0, tau), Term::var(0, tau)],
            )]));
            match cfg.transitivity_variant {
                TransitivityVariant::Transitive => {
                    let (x, y, z) = (Term::var(0, tau), Term::var(1, tau), Term::var(2, tau));
                    out.push(Clause::new(vec![
                        Literal::npred(sub, vec![x.clone(), y.clone()]),
                        Literal::npred(sub, vec![y, z.clone()]),
                        Literal::pred(sub, vec![x, z]),
                    ]));
                }
                TransitivityVariant::Stepwise => {
                    // Sub(x, x_i) -> Sub(x, f(..., x_i, ...))
                    for &f in &ctors {
                        let arg_sorts = sig.symbol(f).arg_sorts.clone();
                        let xs: Vec<Term> = arg_sorts
                            .iter()
                            .enumerate()
                            .map(|(k, s)| Term::var(1 + k as u32, *s))
                            .collect();
                        let x = Term::var(0, tau);
                        for (i, s) in arg_sorts.iter().enumerate() {
                            if *s != tau {
                                continue;
                            }
                            out.push(Clause::new(vec![
                                Literal::npred(sub, vec![x.clone(), xs[i].clone()]),
                                Literal::pred(sub, vec![x.clone(), Term::App(f, xs.clone())]),
                            ]));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// True iff `s` is reachable from `t` by descending only through
/// constructor applications, with at least one step.
pub fn is_constructor_subterm(s: &Term, t: &Term, sig: &Signature) -> bool {
    match t {
        Term::App(f, args) if sig.is_constructor(*f) => args
            .iter()
            .any(|a| a == s || is_constructor_subterm(s, a, sig)),
        _ => false,
    }
}

/// All proper constructor subterms of `t`.
pub fn constructor_subterms<'a>(t: &'a Term, sig: &Signature) -> Vec<&'a Term> {
    let mut out = Vec::new();
    fn go<'a>(t: &'a Term, sig: &Signature, out: &mut Vec<&'a Term>) {
        if let Term::App(f, args) = t {
            if sig.is_constructor(*f) {
                for a in args {
                    if !out.contains(&a) {
                        out.push(a);
                    }
                    go(a, sig, out);
                }
            }
        }
    }
    go(t, sig, &mut out);
    out
}

fn distinct_ctor_heads(s: &Term, t: &Term, sig: &Signature) -> bool {
    match (s, t) {
        (Term::App(f, _), Term::App(g, _)) => {
            f != g && sig.is_constructor(*f) && sig.is_constructor(*g)
        }
        _ => false,
    }
}

fn acyclic_conflict(s: &Term, t: &Term, sig: &Signature) -> bool {
    // equality orientation-insensitive
    is_constructor_subterm(s, t, sig) || is_constructor_subterm(t, s, sig)
}

/// Removes positive literals equating terms with distinct constructor
/// heads. `None` when nothing applies.
pub fn dist_simplify(c: &Clause, sig: &Signature) -> Option<Clause> {
    let kept: Vec<Literal> = c
        .literals
        .iter()
        .filter(|l| match (&l.atom, l.positive) {
            (Atom::Eq(s, t), true) => !distinct_ctor_heads(s, t, sig),
            _ => true,
        })
        .cloned()
        .collect();
    if kept.len() == c.literals.len() {
        None
    } else {
        let mut out = Clause::new(kept);
        out.age = c.age;
        Some(out)
    }
}

/// A clause with a disequality of distinct constructor heads is a
/// theory tautology.
pub fn dist_delete(c: &Clause, sig: &Signature) -> bool {
    c.literals.iter().any(|l| match (&l.atom, l.positive) {
        (Atom::Eq(s, t), false) => distinct_ctor_heads(s, t, sig),
        _ => false,
    })
}

/// Replaces `f(ss) = f(ts) | C` by the clauses `s_i = t_i | C`.
pub fn inj_simplify_pos(c: &Clause, sig: &Signature) -> Option<Vec<Clause>> {
    for (i, l) in c.literals.iter().enumerate() {
        let (s, t) = match (&l.atom, l.positive) {
            (Atom::Eq(s, t), true) => (s, t),
            _ => continue,
        };
        if let (Term::App(f, sargs), Term::App(g, targs)) = (s, t) {
            if f == g && sig.is_constructor(*f) && !sargs.is_empty() {
                let rest: Vec<Literal> = c
                    .literals
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, l)| l.clone())
                    .collect();
                let mut out = Vec::new();
                for (sa, ta) in sargs.iter().zip(targs.iter()) {
                    let mut lits = vec![Literal::eq(sa.clone(), ta.clone())];
                    lits.extend(rest.iter().cloned());
                    let mut cl = Clause::new(lits);
                    cl.age = c.age;
                    out.push(cl);
                }
                return Some(out);
            }
        }
    }
    None
}

#[derive(Debug, Clone)]
pub enum InjNeg {
    /// Premise replaced by the conclusion.
    Simplified(Clause),
    /// Ordering condition failed: conclusion added, premise kept.
    Generated(Clause),
    NoChange,
}

/// Negative injectivity: `f(ss) != f(ts) | C` yields
/// `s_1 != t_1 | ... | s_n != t_n | C`. A simplification when the new
/// literals are smaller than `C` as a multiset (vacuously for unit
/// premises), otherwise a generating inference.
pub fn inj_simplify_neg(c: &Clause, sig: &Signature) -> InjNeg {
    for (i, l) in c.literals.iter().enumerate() {
        let (s, t) = match (&l.atom, l.positive) {
            (Atom::Eq(s, t), false) => (s, t),
            _ => continue,
        };
        if let (Term::App(f, sargs), Term::App(g, targs)) = (s, t) {
            if f == g && sig.is_constructor(*f) && !sargs.is_empty() {
                let rest: Vec<Literal> = c
                    .literals
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, l)| l.clone())
                    .collect();
                let new_lits: Vec<Literal> = sargs
                    .iter()
                    .zip(targs.iter())
                    .map(|(sa, ta)| Literal::neq(sa.clone(), ta.clone()))
                    .collect();
                let mut lits = new_lits.clone();
                lits.extend(rest.iter().cloned());
                let mut cl = Clause::new(lits);
                cl.age = c.age;
                let simplifying = rest.is_empty()
                    || compare_literal_multisets(&new_lits, &rest, sig) == Verdict::Less;
                return if simplifying {
                    InjNeg::Simplified(cl)
                } else {
                    InjNeg::Generated(cl)
                };
            }
        }
    }
    InjNeg::NoChange
}

/// Removes positive literals equating a term with one of its
/// constructor subterms (checked in both orientations).
pub fn acyc_simplify(c: &Clause, sig: &Signature) -> Option<Clause> {
    let kept: Vec<Literal> = c
        .literals
        .iter()
        .filter(|l| match (&l.atom, l.positive) {
            (Atom::Eq(s, t), true) => !acyclic_conflict(s, t, sig),
            _ => true,
        })
        .cloned()
        .collect();
    if kept.len() == c.literals.len() {
        None
    } else {
        let mut out = Clause::new(kept);
        out.age = c.age;
        Some(out)
    }
}

/// A clause with a disequality between a term and its constructor
/// subterm is a theory tautology.
pub fn acyc_delete(c: &Clause, sig: &Signature) -> bool {
    c.literals.iter().any(|l| match (&l.atom, l.positive) {
        (Atom::Eq(s, t), false) => acyclic_conflict(s, t, sig),
        _ => false,
    })
}

/// The one-step acyclicity inference: from `t = u | A`, for each
/// constructor subterm `s` of `t`, derive `s != u | A`. Not a
/// simplification; the premise is kept.
pub fn acyc_generate(c: &Clause, sig: &Signature) -> Vec<Inference> {
    let mut out = Vec::new();
    for (i, l) in c.literals.iter().enumerate() {
        let (s, t) = match (&l.atom, l.positive) {
            (Atom::Eq(s, t), true) => (s, t),
            _ => continue,
        };
        let rest: Vec<Literal> = c
            .literals
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, l)| l.clone())
            .collect();
        for (side, other) in [(s, t), (t, s)] {
            for sub in constructor_subterms(side, sig) {
                let mut lits = vec![Literal::neq(sub.clone(), other.clone())];
                lits.extend(rest.iter().cloned());
                out.push(Inference {
                    rule: Rule::AcyclicityGen,
                    premises: vec![c.id],
                    premise_instances: vec![c.clone()],
                    conclusion: Clause::new(lits),
                });
            }
        }
    }
    out
}
