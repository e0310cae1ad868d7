//! Literals, clauses and quantified formulas.

use crate::sig::{Signature, SymbolId};
use crate::term::{Substitution, Term, Var};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Pred(SymbolId, Vec<Term>),
    Eq(Term, Term),
}

impl Atom {
    pub fn apply(&self, theta: &Substitution) -> Atom {
        match self {
            Atom::Pred(p, args) => {
                Atom::Pred(*p, args.iter().map(|t| theta.apply_term(t)).collect())
            }
            Atom::Eq(s, t) => Atom::Eq(theta.apply_term(s), theta.apply_term(t)),
        }
    }

    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Atom::Pred(_, args) => {
                for t in args {
                    t.collect_vars(out);
                }
            }
            Atom::Eq(s, t) => {
                s.collect_vars(out);
                t.collect_vars(out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn eq(s: Term, t: Term) -> Literal {
        Literal {
            positive: true,
            atom: Atom::Eq(s, t),
        }
    }

    pub fn neq(s: Term, t: Term) -> Literal {
        Literal {
            positive: false,
            atom: Atom::Eq(s, t),
        }
    }

    pub fn pred(p: SymbolId, args: Vec<Term>) -> Literal {
        Literal {
            positive: true,
            atom: Atom::Pred(p, args),
        }
    }

    pub fn npred(p: SymbolId, args: Vec<Term>) -> Literal {
        Literal {
            positive: false,
            atom: Atom::Pred(p, args),
        }
    }

    pub fn negated(&self) -> Literal {
        Literal {
            positive: !self.positive,
            atom: self.atom.clone(),
        }
    }

    pub fn is_equality(&self) -> bool {
        matches!(self.atom, Atom::Eq(_, _))
    }

    pub fn apply(&self, theta: &Substitution) -> Literal {
        Literal {
            positive: self.positive,
            atom: self.atom.apply(theta),
        }
    }

    pub fn size(&self) -> usize {
        match &self.atom {
            Atom::Pred(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Atom::Eq(s, t) => s.size() + t.size(),
        }
    }

    /// Complementary modulo symmetry of equality.
    pub fn complements(&self, other: &Literal) -> bool {
        if self.positive == other.positive {
            return false;
        }
        match (&self.atom, &other.atom) {
            (Atom::Eq(s1, t1), Atom::Eq(s2, t2)) => {
                (s1 == s2 && t1 == t2) || (s1 == t2 && t1 == s2)
            }
            _ => self.atom == other.atom,
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> LiteralDisplay<'a> {
        LiteralDisplay { lit: self, sig }
    }
}

pub struct LiteralDisplay<'a> {
    lit: &'a Literal,
    sig: &'a Signature,
}

impl fmt::Display for LiteralDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lit.atom {
            Atom::Eq(s, t) => {
                let op = if self.lit.positive { "=" } else { "!=" };
                write!(f, "{} {} {}", s.display(self.sig), op, t.display(self.sig))
            }
            Atom::Pred(p, args) => {
                if !self.lit.positive {
                    write!(f, "~")?;
                }
                write!(f, "{}", self.sig.symbol(*p).name)?;
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

/// A disjunction of literals; the empty clause is the contradiction.
/// `id` and `age` are bookkeeping filled in by the saturation loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub literals: Vec<Literal>,
    pub id: u32,
    pub age: u32,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Clause {
        Clause {
            literals,
            id: 0,
            age: 0,
        }
    }

    pub fn empty() -> Clause {
        Clause::new(vec![])
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn apply(&self, theta: &Substitution) -> Clause {
        Clause {
            literals: self.literals.iter().map(|l| l.apply(theta)).collect(),
            id: self.id,
            age: self.age,
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        for l in &self.literals {
            l.atom.collect_vars(&mut out);
        }
        out
    }

    /// Symbol-count weight used by clause selection.
    pub fn weight(&self) -> usize {
        self.literals.iter().map(Literal::size).sum()
    }

    /// Renames variables to 0.. in order of first occurrence.
    pub fn normalized(&self) -> Clause {
        let vars = self.vars();
        let mut theta = Substitution::new();
        for (i, v) in vars.iter().enumerate() {
            theta.insert(*v, Term::var(i as u32, v.sort));
        }
        self.apply(&theta)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> ClauseDisplay<'a> {
        ClauseDisplay { clause: self, sig }
    }
}

pub struct ClauseDisplay<'a> {
    clause: &'a Clause,
    sig: &'a Signature,
}

impl fmt::Display for ClauseDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clause.literals.is_empty() {
            return write!(f, "$false");
        }
        for (i, l) in self.clause.literals.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{}", l.display(self.sig))?;
        }
        Ok(())
    }
}

/// Renames two clauses apart so that they share no variables.
pub fn rename_apart(c1: &Clause, c2: &Clause) -> (Clause, Clause) {
    let c1 = c1.normalized();
    let offset = c1
        .vars()
        .iter()
        .map(|v| v.index + 1)
        .max()
        .unwrap_or(0);
    let c2 = c2.normalized();
    let mut shift = Substitution::new();
    for v in c2.vars() {
        shift.insert(v, Term::var(v.index + offset, v.sort));
    }
    (c1, c2.apply(&shift))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: Var, f: Formula) -> Formula {
        Formula::Forall(v, Box::new(f))
    }

    pub fn exists(v: Var, f: Formula) -> Formula {
        Formula::Exists(v, Box::new(f))
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(Formula::size).sum::<usize>(),
            Formula::Implies(a, b) | Formula::Iff(a, b) => 1 + a.size() + b.size(),
            Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.size(),
        }
    }

    pub fn free_vars(&self) -> Vec<Var> {
        fn go(f: &Formula, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
            match f {
                Formula::True | Formula::False => {}
                Formula::Atom(a) => {
                    let mut vs = Vec::new();
                    a.collect_vars(&mut vs);
                    for v in vs {
                        if !bound.contains(&v) && !out.contains(&v) {
                            out.push(v);
                        }
                    }
                }
                Formula::Not(g) => go(g, bound, out),
                Formula::And(gs) | Formula::Or(gs) => {
                    for g in gs {
                        go(g, bound, out);
                    }
                }
                Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Forall(v, g) | Formula::Exists(v, g) => {
                    bound.push(*v);
                    go(g, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }
}
