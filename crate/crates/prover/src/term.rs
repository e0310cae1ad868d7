//! Terms, substitutions and syntactic unification.

use crate::sig::{Signature, SortId, SymbolId};
use std::collections::BTreeMap;
use std::fmt;

/// A sorted variable. Variables are identified by index; sorts are
/// intrinsic, there is no untyped mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub index: u32,
    pub sort: SortId,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(SymbolId, Vec<Term>),
}

impl Term {
    pub fn var(index: u32, sort: SortId) -> Term {
        Term::Var(Var { index, sort })
    }

    pub fn constant(sym: SymbolId) -> Term {
        Term::App(sym, vec![])
    }

    pub fn sort(&self, sig: &Signature) -> SortId {
        match self {
            Term::Var(v) => v.sort,
            Term::App(f, _) => sig
                .symbol(*f)
                .result_sort
                .expect("predicate symbol used as a term head"),
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match self {
            Term::Var(u) => *u == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::App(_, args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    /// All proper and improper subterms, outermost first.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            if let Term::App(_, args) = t {
                for a in args {
                    stack.push(a);
                }
            }
        }
        out
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> TermDisplay<'a> {
        TermDisplay { term: self, sig }
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    sig: &'a Signature,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            Term::Var(v) => write!(f, "X{}", v.index),
            Term::App(sym, args) => {
                write!(f, "{}", self.sig.symbol(*sym).name)?;
                if !args.is_empty() {
                    write!(f, "(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{}", a.display(self.sig))?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

/// A finite, sort-preserving mapping from variables to terms.
/// Substitutions produced by [`mgu`] are idempotent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    bindings: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.bindings.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.bindings.iter()
    }

    /// Inserts a binding without composing with existing ones. For
    /// building simultaneous maps such as variable renamings.
    pub fn insert(&mut self, v: Var, t: Term) {
        self.bindings.insert(v, t);
    }

    /// Binds `v` to `t` and composes: existing bindings are rewritten
    /// with the new pair so the result stays idempotent. `t` must not
    /// contain `v`.
    pub fn bind(&mut self, v: Var, t: Term) {
        debug_assert!(!t.contains_var(v), "binding violates occurs check");
        let single = Substitution {
            bindings: BTreeMap::from([(v, t.clone())]),
        };
        for image in self.bindings.values_mut() {
            *image = single.apply_term(image);
        }
        self.bindings.insert(v, t);
    }

    /// Simultaneous replacement of bound variables.
    pub fn apply_term(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => match self.bindings.get(v) {
                Some(image) => image.clone(),
                None => t.clone(),
            },
            Term::App(f, args) => {
                Term::App(*f, args.iter().map(|a| self.apply_term(a)).collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnifyError {
    /// Top symbols differ.
    Clash(SymbolId, SymbolId),
    /// A variable would occur in its own image.
    OccursCheck(Var),
    /// A variable against a term of a different sort, or a variable
    /// against a symbol of a different sort.
    SortMismatch,
}

/// Robinson unification with explicit occurs check.
pub fn mgu(t1: &Term, t2: &Term) -> Result<Substitution, UnifyError> {
    mgu_many(std::slice::from_ref(t1), std::slice::from_ref(t2))
}

/// Unifies two equal-length argument lists simultaneously.
pub fn mgu_many(ts1: &[Term], ts2: &[Term]) -> Result<Substitution, UnifyError> {
    assert_eq!(ts1.len(), ts2.len());
    let mut subst = Substitution::new();
    let mut work: Vec<(Term, Term)> = ts1
        .iter()
        .cloned()
        .zip(ts2.iter().cloned())
        .rev()
        .collect();
    while let Some((a, b)) = work.pop() {
        let a = subst.apply_term(&a);
        let b = subst.apply_term(&b);
        match (a, b) {
            (Term::Var(x), Term::Var(y)) if x == y => {}
            (Term::Var(x), t) | (t, Term::Var(x)) => {
                if let Term::Var(y) = t {
                    if x.sort != y.sort {
                        return Err(UnifyError::SortMismatch);
                    }
                }
                if t.contains_var(x) {
                    return Err(UnifyError::OccursCheck(x));
                }
                subst.bind(x, t);
            }
            (Term::App(f, fargs), Term::App(g, gargs)) => {
                if f != g {
                    return Err(UnifyError::Clash(f, g));
                }
                for pair in fargs.into_iter().zip(gargs).rev() {
                    work.push(pair);
                }
            }
        }
    }
    Ok(subst)
}
