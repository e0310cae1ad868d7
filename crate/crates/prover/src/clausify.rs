//! NNF, skolemization and CNF transformation.

use crate::fol::{Atom, Clause, Formula, Literal};
use crate::sig::Signature;
use crate::term::{Substitution, Term, Var};

/// Logical negation; no simplification performed.
pub fn negate(f: &Formula) -> Formula {
    Formula::not(f.clone())
}

/// Quantifier-free negation normal form over literals.
#[derive(Debug, Clone)]
enum Matrix {
    True,
    False,
    Lit(Literal),
    And(Vec<Matrix>),
    Or(Vec<Matrix>),
}

struct Clausifier<'a> {
    sig: &'a mut Signature,
    next_var: u32,
    /// Distribution guard: naming kicks in past this many clauses.
    clause_limit: usize,
}

impl<'a> Clausifier<'a> {
    fn fresh_var(&mut self, sort: crate::sig::SortId) -> Var {
        let v = Var {
            index: self.next_var,
            sort,
        };
        self.next_var += 1;
        v
    }

    /// Alpha-renames bound variables to globally fresh indices.
    fn rename_bound(&mut self, f: &Formula, map: &Substitution) -> Formula {
        match f {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => Formula::Atom(a.apply(map)),
            Formula::Not(g) => Formula::not(self.rename_bound(g, map)),
            Formula::And(gs) => {
                Formula::And(gs.iter().map(|g| self.rename_bound(g, map)).collect())
            }
            Formula::Or(gs) => {
                Formula::Or(gs.iter().map(|g| self.rename_bound(g, map)).collect())
            }
            Formula::Implies(a, b) => {
                Formula::implies(self.rename_bound(a, map), self.rename_bound(b, map))
            }
            Formula::Iff(a, b) => {
                Formula::iff(self.rename_bound(a, map), self.rename_bound(b, map))
            }
            Formula::Forall(v, g) => {
                let fresh = self.fresh_var(v.sort);
                let mut inner = map.clone();
                inner.insert(*v, Term::Var(fresh));
                Formula::forall(fresh, self.rename_bound(g, &inner))
            }
            Formula::Exists(v, g) => {
                let fresh = self.fresh_var(v.sort);
                let mut inner = map.clone();
                inner.insert(*v, Term::Var(fresh));
                Formula::exists(fresh, self.rename_bound(g, &inner))
            }
        }
    }

    /// Expands equivalences; run before NNF.
    fn expand_iff(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Iff(a, b) => {
                let a = self.expand_iff(a);
                let b = self.expand_iff(b);
                Formula::And(vec![
                    Formula::implies(a.clone(), b.clone()),
                    Formula::implies(b, a),
                ])
            }
            Formula::Not(g) => Formula::not(self.expand_iff(g)),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| self.expand_iff(g)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| self.expand_iff(g)).collect()),
            Formula::Implies(a, b) => {
                Formula::implies(self.expand_iff(a), self.expand_iff(b))
            }
            Formula::Forall(v, g) => Formula::forall(*v, self.expand_iff(g)),
            Formula::Exists(v, g) => Formula::exists(*v, self.expand_iff(g)),
            _ => f.clone(),
        }
    }

    /// NNF with outside-in skolemization. `univ` is the list of
    /// universal variables in scope; `positive` tracks polarity.
    fn skolemize(
        &mut self,
        f: &Formula,
        positive: bool,
        univ: &mut Vec<Var>,
        subst: &mut Substitution,
    ) -> Matrix {
        match f {
            Formula::True => {
                if positive {
                    Matrix::True
                } else {
                    Matrix::False
                }
            }
            Formula::False => {
                if positive {
                    Matrix::False
                } else {
                    Matrix::True
                }
            }
            Formula::Atom(a) => Matrix::Lit(Literal {
                positive,
                atom: a.apply(subst),
            }),
            Formula::Not(g) => self.skolemize(g, !positive, univ, subst),
            Formula::And(gs) => {
                let parts = gs
                    .iter()
                    .map(|g| self.skolemize(g, positive, univ, subst))
                    .collect();
                if positive {
                    Matrix::And(parts)
                } else {
                    Matrix::Or(parts)
                }
            }
            Formula::Or(gs) => {
                let parts = gs
                    .iter()
                    .map(|g| self.skolemize(g, positive, univ, subst))
                    .collect();
                if positive {
                    Matrix::Or(parts)
                } else {
                    Matrix::And(parts)
                }
            }
            Formula::Implies(a, b) => {
                let na = self.skolemize(a, !positive, univ, subst);
                let nb = self.skolemize(b, positive, univ, subst);
                if positive {
                    Matrix::Or(vec![na, nb])
                } else {
                    Matrix::And(vec![na, nb])
                }
            }
            Formula::Iff(_, _) => unreachable!("equivalences expanded before NNF"),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                let universal =
                    matches!(f, Formula::Forall(_, _)) == positive;
                if universal {
                    univ.push(*v);
                    let m = self.skolemize(g, positive, univ, subst);
                    univ.pop();
                    m
                } else {
                    let args: Vec<Term> = univ.iter().map(|u| Term::Var(*u)).collect();
                    let arg_sorts = univ.iter().map(|u| u.sort).collect();
                    let sk = self.sig.fresh_skolem(arg_sorts, v.sort);
                    subst.insert(*v, Term::App(sk, args));
                    let m = self.skolemize(g, positive, univ, subst);
                    m
                }
            }
        }
    }

    fn clause_count(m: &Matrix) -> usize {
        match m {
            Matrix::True => 0,
            Matrix::False | Matrix::Lit(_) => 1,
            Matrix::And(ms) => ms.iter().map(Self::clause_count).sum(),
            Matrix::Or(ms) => ms
                .iter()
                .map(Self::clause_count)
                .fold(1usize, |a, b| a.saturating_mul(b)),
        }
    }

    fn matrix_vars(m: &Matrix, out: &mut Vec<Var>) {
        match m {
            Matrix::True | Matrix::False => {}
            Matrix::Lit(l) => {
                let mut vs = Vec::new();
                l.atom.collect_vars(&mut vs);
                for v in vs {
                    if !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            Matrix::And(ms) | Matrix::Or(ms) => {
                for g in ms {
                    Self::matrix_vars(g, out);
                }
            }
        }
    }

    /// CNF by distribution; disjunctions that would exceed the clause
    /// guard get their conjunctive children named by fresh predicates.
    fn cnf(&mut self, m: Matrix, out: &mut Vec<Vec<Literal>>) {
        match m {
            Matrix::True => {}
            Matrix::False => out.push(vec![]),
            Matrix::Lit(l) => out.push(vec![l]),
            Matrix::And(ms) => {
                for g in ms {
                    self.cnf(g, out);
                }
            }
            Matrix::Or(ms) => {
                let mut ms = ms;
                if Self::clause_count(&Matrix::Or(ms.clone())) > self.clause_limit {
                    // name each conjunctive child occurring under the
                    // disjunction (positive polarity, one implication)
                    for g in ms.iter_mut() {
                        if Self::clause_count(g) > 1 {
                            let mut vars = Vec::new();
                            Self::matrix_vars(g, &mut vars);
                            let p = self
                                .sig
                                .fresh_definition(vars.iter().map(|v| v.sort).collect());
                            let args: Vec<Term> =
                                vars.iter().map(|v| Term::Var(*v)).collect();
                            let def_lit = Literal::npred(p, args.clone());
                            let mut defined = Vec::new();
                            let body = std::mem::replace(g, Matrix::True);
                            self.cnf(body, &mut defined);
                            for mut d in defined {
                                d.push(def_lit.clone());
                                out.push(d);
                            }
                            *g = Matrix::Lit(Literal::pred(p, args));
                        }
                    }
                }
                // plain distribution
                let mut acc: Vec<Vec<Literal>> = vec![vec![]];
                for g in ms {
                    let mut sub = Vec::new();
                    self.cnf(g, &mut sub);
                    if sub.is_empty() {
                        // disjunct is true: the whole disjunction is
                        acc.clear();
                        break;
                    }
                    let mut next = Vec::new();
                    for base in &acc {
                        for d in &sub {
                            let mut c = base.clone();
                            c.extend(d.iter().cloned());
                            next.push(c);
                        }
                    }
                    acc = next;
                }
                out.extend(acc);
            }
        }
    }
}

fn is_tautology(lits: &[Literal]) -> bool {
    for (i, l) in lits.iter().enumerate() {
        if let Atom::Eq(s, t) = &l.atom {
            if l.positive && s == t {
                return true;
            }
        }
        if lits[i + 1..].iter().any(|m| l.complements(m)) {
            return true;
        }
    }
    false
}

/// Transforms a formula into an equisatisfiable set of clauses,
/// registering skolem and naming symbols in the signature. Free
/// variables are universally closed first.
pub fn clausify(f: &Formula, sig: &mut Signature) -> Vec<Clause> {
    let mut closed = f.clone();
    for v in f.free_vars() {
        closed = Formula::forall(v, closed);
    }
    let guard = 10 * closed.size().max(4);
    let mut cl = Clausifier {
        sig,
        next_var: 0,
        clause_limit: guard,
    };
    let renamed = cl.rename_bound(&closed, &Substitution::new());
    let expanded = cl.expand_iff(&renamed);
    let mut univ = Vec::new();
    let mut subst = Substitution::new();
    let matrix = cl.skolemize(&expanded, true, &mut univ, &mut subst);
    let mut raw = Vec::new();
    cl.cnf(matrix, &mut raw);
    let mut clauses = Vec::new();
    for mut lits in raw {
        lits.sort();
        lits.dedup();
        if is_tautology(&lits) {
            continue;
        }
        clauses.push(Clause::new(lits).normalized());
    }
    clauses
}
