//! The generating inferences of the superposition calculus,
//! parametrized by the ordering and selection of [`crate::order`].

use crate::fol::{rename_apart, Atom, Clause, Literal};
use crate::order::{kbo_compare, select, Verdict};
use crate::sig::Signature;
use crate::term::{mgu, mgu_many, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Input,
    TheoryAxiom,
    Resolution,
    EqualityResolution,
    Superposition,
    Factoring,
    EqualityFactoring,
    DistinctnessSimp,
    InjectivitySimp,
    InjectivityGen,
    AcyclicitySimp,
    AcyclicityGen,
    Definition,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Input => "input",
            Rule::TheoryAxiom => "theory axiom",
            Rule::Resolution => "resolution",
            Rule::EqualityResolution => "equality resolution",
            Rule::Superposition => "superposition",
            Rule::Factoring => "factoring",
            Rule::EqualityFactoring => "equality factoring",
            Rule::DistinctnessSimp => "distinctness",
            Rule::InjectivitySimp => "injectivity",
            Rule::InjectivityGen => "injectivity (generating)",
            Rule::AcyclicitySimp => "acyclicity",
            Rule::AcyclicityGen => "acyclicity (generating)",
            Rule::Definition => "definition folding",
        }
    }
}

/// One performed inference. `premise_instances` are the premises after
/// renaming apart and unifier application; their variables are shared
/// with the conclusion, which makes the record checkable by ground
/// evaluation.
#[derive(Debug, Clone)]
pub struct Inference {
    pub rule: Rule,
    pub premises: Vec<u32>,
    pub premise_instances: Vec<Clause>,
    pub conclusion: Clause,
}

fn not_dominated(s: &Term, t: &Term, sig: &Signature) -> bool {
    // s not-preceq t
    !matches!(kbo_compare(s, t, sig), Verdict::Less | Verdict::Equal)
}

fn without(c: &Clause, skip: usize) -> Vec<Literal> {
    c.literals
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != skip)
        .map(|(_, l)| l.clone())
        .collect()
}

/// Binary resolution on non-equality atoms.
pub fn resolve(c1: &Clause, c2: &Clause, sig: &Signature) -> Vec<Inference> {
    let (r1, r2) = rename_apart(c1, c2);
    let sel1 = select(&r1, sig);
    let sel2 = select(&r2, sig);
    let mut out = Vec::new();
    for &i in &sel1.indices {
        let l1 = &r1.literals[i];
        let (p, args1) = match (&l1.atom, l1.positive) {
            (Atom::Pred(p, args), true) => (*p, args),
            _ => continue,
        };
        for &j in &sel2.indices {
            let l2 = &r2.literals[j];
            let args2 = match (&l2.atom, l2.positive) {
                (Atom::Pred(q, args), false) if *q == p => args,
                _ => continue,
            };
            let Ok(theta) = mgu_many(args1, args2) else {
                continue;
            };
            let mut lits = without(&r1, i);
            lits.extend(without(&r2, j));
            let conclusion = Clause::new(lits).apply(&theta);
            out.push(Inference {
                rule: Rule::Resolution,
                premises: vec![c1.id, c2.id],
                premise_instances: vec![r1.apply(&theta), r2.apply(&theta)],
                conclusion,
            });
        }
    }
    out
}

/// Reflexivity resolution on a selected negative equality.
pub fn equality_resolve(c: &Clause, sig: &Signature) -> Vec<Inference> {
    if c.literals.is_empty() {
        return Vec::new();
    }
    let sel = select(c, sig);
    let mut out = Vec::new();
    for &i in &sel.indices {
        let l = &c.literals[i];
        let (s, t) = match (&l.atom, l.positive) {
            (Atom::Eq(s, t), false) => (s, t),
            _ => continue,
        };
        let Ok(theta) = mgu(s, t) else {
            continue;
        };
        let conclusion = Clause::new(without(c, i)).apply(&theta);
        out.push(Inference {
            rule: Rule::EqualityResolution,
            premises: vec![c.id],
            premise_instances: vec![c.apply(&theta)],
            conclusion,
        });
    }
    out
}

/// Subterm positions of `t` paired with the subterm, excluding
/// variable positions.
fn rewrite_positions(t: &Term) -> Vec<(Vec<usize>, &Term)> {
    fn go<'a>(t: &'a Term, pos: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, &'a Term)>) {
        match t {
            Term::Var(_) => {}
            Term::App(_, args) => {
                out.push((pos.clone(), t));
                for (i, a) in args.iter().enumerate() {
                    pos.push(i);
                    go(a, pos, out);
                    pos.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

fn replace_at(t: &Term, pos: &[usize], replacement: &Term) -> Term {
    if pos.is_empty() {
        return replacement.clone();
    }
    match t {
        Term::Var(_) => unreachable!("rewrite position inside a variable"),
        Term::App(f, args) => {
            let mut args = args.clone();
            args[pos[0]] = replace_at(&args[pos[0]], &pos[1..], replacement);
            Term::App(*f, args)
        }
    }
}

/// Both orientations of a positive equality that are not ordered
/// against the rule's side condition a priori.
fn orientations<'a>(s: &'a Term, t: &'a Term, sig: &Signature) -> Vec<(&'a Term, &'a Term)> {
    match kbo_compare(s, t, sig) {
        Verdict::Greater => vec![(s, t)],
        Verdict::Less => vec![(t, s)],
        Verdict::Equal => vec![],
        Verdict::Incomparable => vec![(s, t), (t, s)],
    }
}

/// Superposition from a selected positive equality of `c1` into a
/// selected literal of `c2`.
pub fn superpose(c1: &Clause, c2: &Clause, sig: &Signature) -> Vec<Inference> {
    let (r1, r2) = rename_apart(c1, c2);
    let sel1 = select(&r1, sig);
    let sel2 = select(&r2, sig);
    let mut out = Vec::new();
    for &i in &sel1.indices {
        let lit1 = &r1.literals[i];
        let (s, t) = match (&lit1.atom, lit1.positive) {
            (Atom::Eq(s, t), true) => (s, t),
            _ => continue,
        };
        for (l, r) in orientations(s, t, sig) {
            for &j in &sel2.indices {
                let lit2 = &r2.literals[j];
                match &lit2.atom {
                    Atom::Pred(p, args) => {
                        for (ai, arg) in args.iter().enumerate() {
                            for (pos, sub) in rewrite_positions(arg) {
                                let Ok(theta) = mgu(l, sub) else {
                                    continue;
                                };
                                if !not_dominated(&theta.apply_term(l), &theta.apply_term(r), sig)
                                {
                                    continue;
                                }
                                let mut new_args = args.clone();
                                new_args[ai] = replace_at(arg, &pos, r);
                                let new_lit = Literal {
                                    positive: lit2.positive,
                                    atom: Atom::Pred(*p, new_args),
                                };
                                let mut lits = without(&r1, i);
                                lits.push(new_lit);
                                lits.extend(without(&r2, j));
                                out.push(Inference {
                                    rule: Rule::Superposition,
                                    premises: vec![c1.id, c2.id],
                                    premise_instances: vec![
                                        r1.apply(&theta),
                                        r2.apply(&theta),
                                    ],
                                    conclusion: Clause::new(lits).apply(&theta),
                                });
                            }
                        }
                    }
                    Atom::Eq(u, v) => {
                        for (target, other) in [(u, v), (v, u)] {
                            for (pos, sub) in rewrite_positions(target) {
                                let Ok(theta) = mgu(l, sub) else {
                                    continue;
                                };
                                if !not_dominated(&theta.apply_term(l), &theta.apply_term(r), sig)
                                {
                                    continue;
                                }
                                if !not_dominated(
                                    &theta.apply_term(target),
                                    &theta.apply_term(other),
                                    sig,
                                ) {
                                    continue;
                                }
                                let rewritten = replace_at(target, &pos, r);
                                let new_lit = Literal {
                                    positive: lit2.positive,
                                    atom: Atom::Eq(rewritten, other.clone()),
                                };
                                let mut lits = without(&r1, i);
                                lits.push(new_lit);
                                lits.extend(without(&r2, j));
                                out.push(Inference {
                                    rule: Rule::Superposition,
                                    premises: vec![c1.id, c2.id],
                                    premise_instances: vec![
                                        r1.apply(&theta),
                                        r2.apply(&theta),
                                    ],
                                    conclusion: Clause::new(lits).apply(&theta),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Factoring on selected literals: the predicate form unifies two
/// selected positive atoms; the equality form factors a positive
/// equality against another positive equality of the clause.
pub fn factor(c: &Clause, sig: &Signature) -> Vec<Inference> {
    if c.literals.is_empty() {
        return Vec::new();
    }
    let sel = select(c, sig);
    let mut out = Vec::new();
    // predicate factoring: both literals selected
    for (a, &i) in sel.indices.iter().enumerate() {
        for &j in &sel.indices[a + 1..] {
            let (l1, l2) = (&c.literals[i], &c.literals[j]);
            if !(l1.positive && l2.positive) {
                continue;
            }
            let (args1, args2) = match (&l1.atom, &l2.atom) {
                (Atom::Pred(p, x), Atom::Pred(q, y)) if p == q => (x, y),
                _ => continue,
            };
            let Ok(theta) = mgu_many(args1, args2) else {
                continue;
            };
            let conclusion = Clause::new(without(c, j)).apply(&theta);
            out.push(Inference {
                rule: Rule::Factoring,
                premises: vec![c.id],
                premise_instances: vec![c.apply(&theta)],
                conclusion,
            });
        }
    }
    // equality factoring: s=t kept, the partner s'=t' replaced by t!=t'
    for &i in &sel.indices {
        let li = &c.literals[i];
        let (s0, t0) = match (&li.atom, li.positive) {
            (Atom::Eq(s, t), true) => (s, t),
            _ => continue,
        };
        for j in 0..c.literals.len() {
            if j == i {
                continue;
            }
            let lj = &c.literals[j];
            let (s1, t1) = match (&lj.atom, lj.positive) {
                (Atom::Eq(s, t), true) => (s, t),
                _ => continue,
            };
            for (s, t) in [(s0, t0), (t0, s0)] {
                for (sp, tp) in [(s1, t1), (t1, s1)] {
                    let Ok(theta) = mgu(s, sp) else {
                        continue;
                    };
                    if !not_dominated(&theta.apply_term(s), &theta.apply_term(t), sig) {
                        continue;
                    }
                    if !not_dominated(&theta.apply_term(t), &theta.apply_term(tp), sig) {
                        continue;
                    }
                    let mut lits = vec![
                        Literal::eq(s.clone(), t.clone()),
                        Literal::neq(t.clone(), tp.clone()),
                    ];
                    for (k, lk) in c.literals.iter().enumerate() {
                        if k != i && k != j {
                            lits.push(lk.clone());
                        }
                    }
                    out.push(Inference {
                        rule: Rule::EqualityFactoring,
                        premises: vec![c.id],
                        premise_instances: vec![c.apply(&theta)],
                        conclusion: Clause::new(lits).apply(&theta),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sig::{Role, Signature, SortId, SortKind, SymbolId};

    struct Fix {
        sig: Signature,
        nat: SortId,
        a: SymbolId,
        b: SymbolId,
        c: SymbolId,
        f: SymbolId,
        g: SymbolId,
        p: SymbolId,
        q: SymbolId,
        r: SymbolId,
    }

    fn fixture() -> Fix {
        let mut sig = Signature::new();
        let nat = sig.add_sort("Nat", SortKind::Constructor).unwrap();
        let a = sig
            .add_symbol("a", vec![], Some(nat), Role::Constructor)
            .unwrap();
        let b = sig
            .add_symbol("b", vec![], Some(nat), Role::Function)
            .unwrap();
        let c = sig
            .add_symbol("c", vec![], Some(nat), Role::Function)
            .unwrap();
        let f = sig
            .add_symbol("f", vec![nat], Some(nat), Role::Function)
            .unwrap();
        let g = sig
            .add_symbol("g", vec![nat], Some(nat), Role::Function)
            .unwrap();
        // q and r before p: the resolution examples resolve on p
        // literals, so p must be precedence-maximal among predicates
        let q = sig.add_symbol("q", vec![nat], None, Role::Predicate).unwrap();
        let r = sig.add_symbol("r", vec![nat], None, Role::Predicate).unwrap();
        let p = sig.add_symbol("p", vec![nat], None, Role::Predicate).unwrap();
        Fix {
            sig,
            nat,
            a,
            b,
            c,
            f,
            g,
            p,
            q,
            r,
        }
    }

    #[test]
    fn unit_resolution() {
        let fx = fixture();
        let x = Term::var(0, fx.nat);
        let c1 = Clause::new(vec![
            Literal::pred(fx.p, vec![x.clone()]),
            Literal::pred(fx.q, vec![x]),
        ]);
        let c2 = Clause::new(vec![Literal::npred(fx.p, vec![Term::constant(fx.a)])]);
        let infs = resolve(&c1, &c2, &fx.sig);
        assert_eq!(infs.len(), 1);
        assert_eq!(
            infs[0].conclusion.literals,
            vec![Literal::pred(fx.q, vec![Term::constant(fx.a)])]
        );
    }

    #[test]
    fn resolution_needs_mgu() {
        let fx = fixture();
        let c1 = Clause::new(vec![Literal::pred(fx.p, vec![Term::constant(fx.a)])]);
        let c2 = Clause::new(vec![Literal::npred(fx.p, vec![Term::constant(fx.b)])]);
        assert!(resolve(&c1, &c2, &fx.sig).is_empty());
    }

    #[test]
    fn resolution_applies_unifier_to_side_literals() {
        let fx = fixture();
        let x = Term::var(0, fx.nat);
        let y = Term::var(0, fx.nat);
        let c1 = Clause::new(vec![
            Literal::pred(fx.p, vec![x.clone()]),
            Literal::pred(fx.q, vec![x]),
        ]);
        let c2 = Clause::new(vec![
            Literal::npred(fx.p, vec![Term::App(fx.f, vec![y.clone()])]),
            Literal::pred(fx.r, vec![y]),
        ]);
        let infs = resolve(&c1, &c2, &fx.sig);
        assert_eq!(infs.len(), 1);
        let lits = &infs[0].conclusion.literals;
        assert_eq!(lits.len(), 2);
        // q(f(y)) | r(y)
        assert!(lits.iter().any(|l| matches!(
            &l.atom,
            Atom::Pred(s, args) if *s == fx.q && matches!(&args[0], Term::App(h, _) if *h == fx.f)
        )));
    }

    #[test]
    fn equality_resolution_unit() {
        let fx = fixture();
        let x = Term::var(0, fx.nat);
        let c = Clause::new(vec![
            Literal::neq(x.clone(), Term::constant(fx.a)),
            Literal::pred(fx.p, vec![x]),
        ]);
        let infs = equality_resolve(&c, &fx.sig);
        assert_eq!(infs.len(), 1);
        assert_eq!(
            infs[0].conclusion.literals,
            vec![Literal::pred(fx.p, vec![Term::constant(fx.a)])]
        );
    }

    #[test]
    fn equality_resolution_derives_empty_clause() {
        let fx = fixture();
        let x = Term::var(0, fx.nat);
        let c = Clause::new(vec![Literal::neq(x.clone(), x)]);
        let infs = equality_resolve(&c, &fx.sig);
        assert_eq!(infs.len(), 1);
        assert!(infs[0].conclusion.is_empty());
    }

    #[test]
    fn equality_resolution_needs_mgu() {
        let fx = fixture();
        let x = Term::var(0, fx.nat);
        let y = Term::var(1, fx.nat);
        let c = Clause::new(vec![Literal::neq(
            Term::App(fx.f, vec![x]),
            Term::App(fx.g, vec![y]),
        )]);
        assert!(equality_resolve(&c, &fx.sig).is_empty());
    }

    #[test]
    fn superposition_ground_rewrite() {
        // f(a)=b into g(f(a))=c gives g(b)=c
        let fx = fixture();
        let fa = Term::App(fx.f, vec![Term::constant(fx.a)]);
        let c1 = Clause::new(vec![Literal::eq(fa.clone(), Term::constant(fx.b))]);
        let c2 = Clause::new(vec![Literal::eq(
            Term::App(fx.g, vec![fa]),
            Term::constant(fx.c),
        )]);
        let infs = superpose(&c1, &c2, &fx.sig);
        let expected = vec![Literal::eq(
            Term::App(fx.g, vec![Term::constant(fx.b)]),
            Term::constant(fx.c),
        )];
        assert!(infs.iter().any(|i| i.conclusion.literals == expected));
    }

    #[test]
    fn superposition_into_negative_with_unifier() {
        // f(a)=b into f(x)!=c | p(x) gives b!=c | p(a)
        let fx = fixture();
        let fa = Term::App(fx.f, vec![Term::constant(fx.a)]);
        let c1 = Clause::new(vec![Literal::eq(fa, Term::constant(fx.b))]);
        let x = Term::var(0, fx.nat);
        let c2 = Clause::new(vec![
            Literal::neq(Term::App(fx.f, vec![x.clone()]), Term::constant(fx.c)),
            Literal::pred(fx.p, vec![x]),
        ]);
        let infs = superpose(&c1, &c2, &fx.sig);
        let hit = infs.iter().any(|i| {
            let lits = &i.conclusion.literals;
            lits.len() == 2
                && lits.contains(&Literal::neq(Term::constant(fx.b), Term::constant(fx.c)))
                && lits.contains(&Literal::pred(fx.p, vec![Term::constant(fx.a)]))
        });
        assert!(hit, "got {:?}", infs);
    }

    #[test]
    fn no_superposition_into_variables() {
        let fx = fixture();
        let c1 = Clause::new(vec![Literal::eq(Term::constant(fx.a), Term::constant(fx.b))]);
        let x = Term::var(0, fx.nat);
        let c2 = Clause::new(vec![Literal::neq(x, Term::constant(fx.c))]);
        assert!(superpose(&c1, &c2, &fx.sig).is_empty());
    }

    #[test]
    fn predicate_factoring() {
        let fx = fixture();
        let x = Term::var(0, fx.nat);
        let c = Clause::new(vec![
            Literal::pred(fx.p, vec![x]),
            Literal::pred(fx.p, vec![Term::constant(fx.a)]),
        ]);
        let infs = factor(&c, &fx.sig);
        assert!(infs
            .iter()
            .any(|i| i.conclusion.literals
                == vec![Literal::pred(fx.p, vec![Term::constant(fx.a)])]));
    }

    #[test]
    fn no_factoring_on_distinct_predicates() {
        let fx = fixture();
        let c = Clause::new(vec![
            Literal::pred(fx.p, vec![Term::constant(fx.a)]),
            Literal::pred(fx.q, vec![Term::constant(fx.a)]),
        ]);
        assert!(factor(&c, &fx.sig).is_empty());
    }

    #[test]
    fn equality_factoring_example() {
        // x=b | x=c factors to x=c | c!=b (c is the heavier constant,
        // declared after b)
        let fx = fixture();
        let x = Term::var(0, fx.nat);
        let c = Clause::new(vec![
            Literal::eq(x.clone(), Term::constant(fx.b)),
            Literal::eq(x, Term::constant(fx.c)),
        ]);
        let infs = factor(&c, &fx.sig);
        let hit = infs.iter().any(|i| {
            let lits = &i.conclusion.literals;
            lits.len() == 2
                && lits[0] == Literal::eq(Term::var(0, fx.nat), Term::constant(fx.c))
                && lits[1] == Literal::neq(Term::constant(fx.c), Term::constant(fx.b))
        });
        assert!(hit, "got {:?}", infs);
    }
}
