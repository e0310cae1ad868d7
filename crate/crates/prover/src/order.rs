//! The Knuth-Bendix simplification ordering, its multiset extensions
//! to literals and clauses, and well-behaved literal selection.

use crate::fol::{Atom, Clause, Literal};
use crate::sig::Signature;
use crate::term::{Term, Var};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Less,
    Greater,
    Equal,
    Incomparable,
}

impl Verdict {
    pub fn flip(self) -> Verdict {
        match self {
            Verdict::Less => Verdict::Greater,
            Verdict::Greater => Verdict::Less,
            v => v,
        }
    }
}

fn var_counts(t: &Term, out: &mut BTreeMap<Var, i64>) {
    match t {
        Term::Var(v) => *out.entry(*v).or_insert(0) += 1,
        Term::App(_, args) => {
            for a in args {
                var_counts(a, out);
            }
        }
    }
}

fn kbo_weight(t: &Term, sig: &Signature) -> u64 {
    match t {
        Term::Var(_) => 1,
        Term::App(f, args) => {
            sig.weight(*f) + args.iter().map(|a| kbo_weight(a, sig)).sum::<u64>()
        }
    }
}

/// Compares `s` and `t` under KBO with unit weights and the
/// signature's precedence. `Equal` only for identical terms.
pub fn kbo_compare(s: &Term, t: &Term, sig: &Signature) -> Verdict {
    if s == t {
        return Verdict::Equal;
    }
    let mut balance: BTreeMap<Var, i64> = BTreeMap::new();
    var_counts(s, &mut balance);
    let mut tvars: BTreeMap<Var, i64> = BTreeMap::new();
    var_counts(t, &mut tvars);
    for (v, n) in tvars {
        *balance.entry(v).or_insert(0) -= n;
    }
    // s can only dominate t if it covers t's variables, and vice versa
    let can_gt = balance.values().all(|&n| n >= 0);
    let can_lt = balance.values().all(|&n| n <= 0);
    if !can_gt && !can_lt {
        return Verdict::Incomparable;
    }
    let gate = |v: Verdict| match v {
        Verdict::Greater if can_gt => Verdict::Greater,
        Verdict::Less if can_lt => Verdict::Less,
        _ => Verdict::Incomparable,
    };
    let ws = kbo_weight(s, sig);
    let wt = kbo_weight(t, sig);
    if ws > wt {
        return gate(Verdict::Greater);
    }
    if ws < wt {
        return gate(Verdict::Less);
    }
    match (s, t) {
        // equal weight, at least one variable: x vs t with x in t is
        // impossible here (t would be heavier), so incomparable
        (Term::Var(_), _) | (_, Term::Var(_)) => Verdict::Incomparable,
        (Term::App(f, fargs), Term::App(g, gargs)) => {
            if f != g {
                let v = if sig.precedence(*f) > sig.precedence(*g) {
                    Verdict::Greater
                } else {
                    Verdict::Less
                };
                gate(v)
            } else {
                // same head: first differing argument decides
                for (a, b) in fargs.iter().zip(gargs.iter()) {
                    match kbo_compare(a, b, sig) {
                        Verdict::Equal => continue,
                        Verdict::Incomparable => return Verdict::Incomparable,
                        v => return gate(v),
                    }
                }
                Verdict::Equal
            }
        }
    }
}

/// Multiset extension of a partial order: `xs > ys` iff after removing
/// common elements, every remaining y is dominated by some remaining x.
pub fn multiset_compare<T, F>(xs: &[T], ys: &[T], mut cmp: F) -> Verdict
where
    T: Clone + PartialEq,
    F: FnMut(&T, &T) -> Verdict,
{
    let mut xs: Vec<&T> = xs.iter().collect();
    let mut ys: Vec<&T> = ys.iter().collect();
    // cancel equal elements pairwise
    let mut i = 0;
    while i < xs.len() {
        if let Some(j) = ys.iter().position(|y| *y == xs[i]) {
            xs.remove(i);
            ys.remove(j);
        } else {
            i += 1;
        }
    }
    if xs.is_empty() && ys.is_empty() {
        return Verdict::Equal;
    }
    let dominates = |bigs: &[&T], smalls: &[&T], cmp: &mut F| {
        smalls
            .iter()
            .all(|s| bigs.iter().any(|b| cmp(b, s) == Verdict::Greater))
    };
    let gt = !xs.is_empty() && dominates(&xs, &ys, &mut cmp);
    if gt {
        return Verdict::Greater;
    }
    let lt = !ys.is_empty() && dominates(&ys, &xs, &mut cmp);
    if lt {
        return Verdict::Less;
    }
    Verdict::Incomparable
}

/// The term multiset encoding a literal: `s = t` as {s,t},
/// `s != t` as {s,s,t,t}; predicate atoms as the atom term, doubled
/// when negative.
fn literal_multiset(l: &Literal) -> Vec<Term> {
    match &l.atom {
        Atom::Eq(s, t) => {
            if l.positive {
                vec![s.clone(), t.clone()]
            } else {
                vec![s.clone(), s.clone(), t.clone(), t.clone()]
            }
        }
        Atom::Pred(p, args) => {
            let a = Term::App(*p, args.clone());
            if l.positive {
                vec![a]
            } else {
                vec![a.clone(), a]
            }
        }
    }
}

pub fn compare_literals(l1: &Literal, l2: &Literal, sig: &Signature) -> Verdict {
    multiset_compare(
        &literal_multiset(l1),
        &literal_multiset(l2),
        |a, b| kbo_compare(a, b, sig),
    )
}

/// Clause order: multiset extension of the literal order.
pub fn compare_clauses(c1: &Clause, c2: &Clause, sig: &Signature) -> Verdict {
    compare_literal_multisets(&c1.literals, &c2.literals, sig)
}

pub fn compare_literal_multisets(
    ls1: &[Literal],
    ls2: &[Literal],
    sig: &Signature,
) -> Verdict {
    multiset_compare(ls1, ls2, |a, b| compare_literals(a, b, sig))
}

/// Indices of the literals selected in a clause. Well-behaved: either
/// one negative literal, or exactly the maximal literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionResult {
    pub indices: Vec<usize>,
}

/// Selects one maximal negative literal when the clause has negative
/// literals (ties broken by position), otherwise all maximal literals.
pub fn select(c: &Clause, sig: &Signature) -> SelectionResult {
    assert!(!c.literals.is_empty(), "selection on the empty clause");
    let negatives: Vec<usize> = c
        .literals
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.positive)
        .map(|(i, _)| i)
        .collect();
    if !negatives.is_empty() {
        // maximal among the negative literals, first by position
        let mut best = negatives[0];
        for &i in &negatives[1..] {
            if compare_literals(&c.literals[i], &c.literals[best], sig) == Verdict::Greater {
                best = i;
            }
        }
        return SelectionResult { indices: vec![best] };
    }
    let mut maximal = Vec::new();
    for i in 0..c.literals.len() {
        let dominated = (0..c.literals.len()).any(|j| {
            j != i
                && compare_literals(&c.literals[j], &c.literals[i], sig) == Verdict::Greater
        });
        if !dominated {
            maximal.push(i);
        }
    }
    SelectionResult { indices: maximal }
}
