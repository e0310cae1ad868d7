//! Parser and printer for the SMTLIB subset: datatype declarations,
//! sort and function declarations, and quantified assertions.

use crate::fol::{Atom, Formula};
use crate::sig::{Role, Signature, SortId, SortKind};
use crate::term::{Term, Var};
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

#[derive(Debug, Clone)]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.pos.line, self.pos.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone)]
enum SExpr {
    Atom(String, Pos),
    List(Vec<SExpr>, Pos),
}

impl SExpr {
    fn pos(&self) -> Pos {
        match self {
            SExpr::Atom(_, p) | SExpr::List(_, p) => *p,
        }
    }

    fn as_atom(&self) -> Result<&str, ParseError> {
        match self {
            SExpr::Atom(s, _) => Ok(s),
            SExpr::List(_, p) => err(*p, "expected a symbol, found a list"),
        }
    }

    fn as_list(&self) -> Result<&[SExpr], ParseError> {
        match self {
            SExpr::List(items, _) => Ok(items),
            SExpr::Atom(s, p) => err(*p, format!("expected a list, found `{s}`")),
        }
    }
}

struct Lexer<'a> {
    input: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    col: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    LParen,
    RParen,
    Word(String),
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            input: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.input.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn next_token(&mut self) -> Option<(Token, Pos)> {
        loop {
            let &c = self.input.peek()?;
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(&c) = self.input.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
        let pos = Pos {
            line: self.line,
            col: self.col,
        };
        let c = self.bump()?;
        match c {
            '(' => Some((Token::LParen, pos)),
            ')' => Some((Token::RParen, pos)),
            _ => {
                let mut word = String::from(c);
                while let Some(&c) = self.input.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    word.push(c);
                    self.bump();
                }
                Some((Token::Word(word), pos))
            }
        }
    }
}

fn parse_sexprs(text: &str) -> Result<Vec<SExpr>, ParseError> {
    let mut lexer = Lexer::new(text);
    let mut stack: Vec<(Vec<SExpr>, Pos)> = Vec::new();
    let mut top = Vec::new();
    while let Some((tok, pos)) = lexer.next_token() {
        match tok {
            Token::LParen => stack.push((Vec::new(), pos)),
            Token::RParen => {
                let Some((items, open)) = stack.pop() else {
                    return err(pos, "unmatched `)`");
                };
                let e = SExpr::List(items, open);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(e),
                    None => top.push(e),
                }
            }
            Token::Word(w) => {
                let e = SExpr::Atom(w, pos);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(e),
                    None => top.push(e),
                }
            }
        }
    }
    if let Some((_, open)) = stack.last() {
        return err(*open, "unclosed `(`");
    }
    Ok(top)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogicNote {
    Datatypes,
    Codatatypes,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Sat,
    Unsat,
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub sig: Signature,
    pub assertions: Vec<Formula>,
    pub expected: Option<Expected>,
    pub logic_note: LogicNote,
    pub check_sat: bool,
}

impl Problem {
    /// Any sort declared through `declare-codatatypes`, suppressing
    /// acyclicity reasoning for the whole problem.
    pub fn has_codatatypes(&self) -> bool {
        matches!(self.logic_note, LogicNote::Codatatypes | LogicNote::Mixed)
    }
}

struct Parser {
    sig: Signature,
    assertions: Vec<Formula>,
    expected: Option<Expected>,
    saw_data: bool,
    saw_codata: bool,
    check_sat: bool,
    next_var: u32,
}

impl Parser {
    fn resolve_sort(&self, e: &SExpr) -> Result<SortId, ParseError> {
        let name = e.as_atom()?;
        self.sig
            .sort_by_name(name)
            .ok_or(ParseError {
                pos: e.pos(),
                msg: format!("unknown sort: {name}"),
            })
    }

    fn declare_datatypes(&mut self, args: &[SExpr], pos: Pos) -> Result<(), ParseError> {
        if args.len() != 2 {
            return err(pos, "declare-datatypes takes a parameter list and a sort list");
        }
        if !args[0].as_list()?.is_empty() {
            return err(args[0].pos(), "parametric datatypes are not supported");
        }
        let decls = args[1].as_list()?;
        // all sort names first so constructors can be mutually recursive
        let mut sort_ids = Vec::new();
        for d in decls {
            let items = d.as_list()?;
            let Some(name) = items.first() else {
                return err(d.pos(), "empty datatype declaration");
            };
            let id = self
                .sig
                .add_sort(name.as_atom()?, SortKind::Constructor)
                .map_err(|e| ParseError {
                    pos: name.pos(),
                    msg: e.to_string(),
                })?;
            sort_ids.push(id);
        }
        for (d, &sort) in decls.iter().zip(&sort_ids) {
            let items = d.as_list()?;
            for ctor in &items[1..] {
                let parts = ctor.as_list()?;
                let Some(cname) = parts.first() else {
                    return err(ctor.pos(), "empty constructor declaration");
                };
                let mut proj_names = Vec::new();
                let mut arg_sorts = Vec::new();
                for field in &parts[1..] {
                    let pair = field.as_list()?;
                    if pair.len() != 2 {
                        return err(field.pos(), "expected (projection Sort)");
                    }
                    proj_names.push(pair[0].as_atom()?.to_string());
                    arg_sorts.push(self.resolve_sort(&pair[1])?);
                }
                let cid = self
                    .sig
                    .add_symbol(cname.as_atom()?, arg_sorts.clone(), Some(sort), Role::Constructor)
                    .map_err(|e| ParseError {
                        pos: cname.pos(),
                        msg: e.to_string(),
                    })?;
                for (i, (pname, &psort)) in proj_names.iter().zip(&arg_sorts).enumerate() {
                    self.sig
                        .add_symbol(
                            pname,
                            vec![sort],
                            Some(psort),
                            Role::Destructor {
                                constructor: cid,
                                index: i,
                            },
                        )
                        .map_err(|e| ParseError {
                            pos: ctor.pos(),
                            msg: e.to_string(),
                        })?;
                }
            }
        }
        Ok(())
    }

    fn parse_term(
        &mut self,
        e: &SExpr,
        env: &HashMap<String, Var>,
    ) -> Result<Term, ParseError> {
        match e {
            SExpr::Atom(name, pos) => {
                if let Some(&v) = env.get(name) {
                    return Ok(Term::Var(v));
                }
                let Some(id) = self.sig.symbol_by_name(name) else {
                    return err(*pos, format!("unknown symbol: {name}"));
                };
                let sym = self.sig.symbol(id);
                if sym.is_predicate() {
                    return err(*pos, format!("predicate {name} used as a term"));
                }
                if sym.arity() != 0 {
                    return err(*pos, format!("{name} expects {} arguments", sym.arity()));
                }
                Ok(Term::constant(id))
            }
            SExpr::List(items, pos) => {
                let Some(head) = items.first() else {
                    return err(*pos, "empty application");
                };
                let name = head.as_atom()?;
                let Some(id) = self.sig.symbol_by_name(name) else {
                    return err(head.pos(), format!("unknown symbol: {name}"));
                };
                let sym = self.sig.symbol(id).clone();
                if sym.is_predicate() {
                    return err(head.pos(), format!("predicate {name} used as a term"));
                }
                if sym.arity() != items.len() - 1 {
                    return err(
                        *pos,
                        format!("{name} expects {} arguments, got {}", sym.arity(), items.len() - 1),
                    );
                }
                let mut args = Vec::new();
                for (arg, &want) in items[1..].iter().zip(&sym.arg_sorts) {
                    let t = self.parse_term(arg, env)?;
                    if t.sort(&self.sig) != want {
                        return err(
                            arg.pos(),
                            format!(
                                "sort mismatch: argument of {name} must be {}",
                                self.sig.sort(want).name
                            ),
                        );
                    }
                    args.push(t);
                }
                Ok(Term::App(id, args))
            }
        }
    }

    fn parse_bindings(
        &mut self,
        e: &SExpr,
        env: &mut HashMap<String, Var>,
    ) -> Result<Vec<(String, Var, Option<Var>)>, ParseError> {
        let mut bound = Vec::new();
        for b in e.as_list()? {
            let pair = b.as_list()?;
            if pair.len() != 2 {
                return err(b.pos(), "expected (variable Sort)");
            }
            let name = pair[0].as_atom()?.to_string();
            let sort = self.resolve_sort(&pair[1])?;
            let v = Var {
                index: self.next_var,
                sort,
            };
            self.next_var += 1;
            let shadowed = env.insert(name.clone(), v);
            bound.push((name, v, shadowed));
        }
        Ok(bound)
    }

    fn parse_formula(
        &mut self,
        e: &SExpr,
        env: &mut HashMap<String, Var>,
    ) -> Result<Formula, ParseError> {
        match e {
            SExpr::Atom(name, pos) => match name.as_str() {
                "true" => Ok(Formula::True),
                "false" => Ok(Formula::False),
                _ => {
                    let Some(id) = self.sig.symbol_by_name(name) else {
                        return err(*pos, format!("unknown symbol: {name}"));
                    };
                    let sym = self.sig.symbol(id);
                    if !sym.is_predicate() || sym.arity() != 0 {
                        return err(*pos, format!("expected a nullary predicate, got {name}"));
                    }
                    Ok(Formula::Atom(Atom::Pred(id, vec![])))
                }
            },
            SExpr::List(items, pos) => {
                let Some(head) = items.first() else {
                    return err(*pos, "empty formula");
                };
                match head.as_atom()? {
                    "not" => {
                        if items.len() != 2 {
                            return err(*pos, "not takes one argument");
                        }
                        Ok(Formula::not(self.parse_formula(&items[1], env)?))
                    }
                    "and" => Ok(Formula::And(
                        items[1..]
                            .iter()
                            .map(|g| self.parse_formula(g, env))
                            .collect::<Result<_, _>>()?,
                    )),
                    "or" => Ok(Formula::Or(
                        items[1..]
                            .iter()
                            .map(|g| self.parse_formula(g, env))
                            .collect::<Result<_, _>>()?,
                    )),
                    "=>" => {
                        if items.len() < 3 {
                            return err(*pos, "=> takes at least two arguments");
                        }
                        // right-associative chain
                        let mut f = self.parse_formula(items.last().unwrap(), env)?;
                        for g in items[1..items.len() - 1].iter().rev() {
                            f = Formula::implies(self.parse_formula(g, env)?, f);
                        }
                        Ok(f)
                    }
                    "=" => {
                        if items.len() != 3 {
                            return err(*pos, "= takes two arguments");
                        }
                        let s = self.parse_term(&items[1], env)?;
                        let t = self.parse_term(&items[2], env)?;
                        if s.sort(&self.sig) != t.sort(&self.sig) {
                            return err(*pos, "sort mismatch between equality sides");
                        }
                        Ok(Formula::Atom(Atom::Eq(s, t)))
                    }
                    q @ ("exists" | "forall") => {
                        if items.len() != 3 {
                            return err(*pos, format!("{q} takes bindings and a body"));
                        }
                        let bound = self.parse_bindings(&items[1], env)?;
                        if bound.is_empty() {
                            return err(items[1].pos(), "empty binding list");
                        }
                        let mut f = self.parse_formula(&items[2], env)?;
                        for (name, v, shadowed) in bound.into_iter().rev() {
                            f = if q == "exists" {
                                Formula::exists(v, f)
                            } else {
                                Formula::forall(v, f)
                            };
                            match shadowed {
                                Some(old) => {
                                    env.insert(name, old);
                                }
                                None => {
                                    env.remove(&name);
                                }
                            }
                        }
                        Ok(f)
                    }
                    name => {
                        let Some(id) = self.sig.symbol_by_name(name) else {
                            return err(head.pos(), format!("unknown symbol: {name}"));
                        };
                        let sym = self.sig.symbol(id).clone();
                        if !sym.is_predicate() {
                            return err(head.pos(), format!("{name} is not a predicate"));
                        }
                        if sym.arity() != items.len() - 1 {
                            return err(
                                *pos,
                                format!(
                                    "{name} expects {} arguments, got {}",
                                    sym.arity(),
                                    items.len() - 1
                                ),
                            );
                        }
                        let mut args = Vec::new();
                        for (arg, &want) in items[1..].iter().zip(&sym.arg_sorts) {
                            let t = self.parse_term(arg, env)?;
                            if t.sort(&self.sig) != want {
                                return err(
                                    arg.pos(),
                                    format!(
                                        "sort mismatch: argument of {name} must be {}",
                                        self.sig.sort(want).name
                                    ),
                                );
                            }
                            args.push(t);
                        }
                        Ok(Formula::Atom(Atom::Pred(id, args)))
                    }
                }
            }
        }
    }

    fn command(&mut self, e: &SExpr) -> Result<(), ParseError> {
        let items = e.as_list()?;
        let Some(head) = items.first() else {
            return err(e.pos(), "empty command");
        };
        match head.as_atom()? {
            "declare-datatypes" => {
                self.saw_data = true;
                self.declare_datatypes(&items[1..], e.pos())
            }
            "declare-codatatypes" => {
                self.saw_codata = true;
                self.declare_datatypes(&items[1..], e.pos())
            }
            "declare-sort" => {
                if items.len() != 3 || items[2].as_atom()? != "0" {
                    return err(e.pos(), "declare-sort takes a name and arity 0");
                }
                self.sig
                    .add_sort(items[1].as_atom()?, SortKind::Plain)
                    .map_err(|er| ParseError {
                        pos: items[1].pos(),
                        msg: er.to_string(),
                    })?;
                Ok(())
            }
            "declare-fun" => {
                if items.len() != 4 {
                    return err(e.pos(), "declare-fun takes a name, argument sorts and a result");
                }
                let name = items[1].as_atom()?;
                let args = items[2]
                    .as_list()?
                    .iter()
                    .map(|s| self.resolve_sort(s))
                    .collect::<Result<Vec<_>, _>>()?;
                let (result, role) = if items[3].as_atom()? == "Bool" {
                    (None, Role::Predicate)
                } else {
                    (Some(self.resolve_sort(&items[3])?), Role::Function)
                };
                self.sig
                    .add_symbol(name, args, result, role)
                    .map_err(|er| ParseError {
                        pos: items[1].pos(),
                        msg: er.to_string(),
                    })?;
                Ok(())
            }
            "declare-const" => {
                if items.len() != 3 {
                    return err(e.pos(), "declare-const takes a name and a sort");
                }
                let name = items[1].as_atom()?;
                let sort = self.resolve_sort(&items[2])?;
                self.sig
                    .add_symbol(name, vec![], Some(sort), Role::Function)
                    .map_err(|er| ParseError {
                        pos: items[1].pos(),
                        msg: er.to_string(),
                    })?;
                Ok(())
            }
            "assert" => {
                if items.len() != 2 {
                    return err(e.pos(), "assert takes one formula");
                }
                let mut env = HashMap::new();
                let f = self.parse_formula(&items[1], &mut env)?;
                self.assertions.push(f);
                Ok(())
            }
            "check-sat" => {
                self.check_sat = true;
                Ok(())
            }
            "set-logic" => Ok(()),
            "set-info" => {
                if items.len() == 3 && items[1].as_atom().ok() == Some(":status") {
                    self.expected = match items[2].as_atom()? {
                        "sat" => Some(Expected::Sat),
                        "unsat" => Some(Expected::Unsat),
                        _ => None,
                    };
                }
                Ok(())
            }
            other => err(head.pos(), format!("unknown command: {other}")),
        }
    }
}

pub fn parse_smtlib(text: &str) -> Result<Problem, ParseError> {
    let exprs = parse_sexprs(text)?;
    let mut p = Parser {
        sig: Signature::new(),
        assertions: Vec::new(),
        expected: None,
        saw_data: false,
        saw_codata: false,
        check_sat: false,
        next_var: 0,
    };
    for e in &exprs {
        p.command(e)?;
    }
    let logic_note = match (p.saw_data, p.saw_codata) {
        (true, true) => LogicNote::Mixed,
        (false, true) => LogicNote::Codatatypes,
        _ => LogicNote::Datatypes,
    };
    Ok(Problem {
        sig: p.sig,
        assertions: p.assertions,
        expected: p.expected,
        logic_note,
        check_sat: p.check_sat,
    })
}

fn print_term(t: &Term, sig: &Signature, names: &HashMap<Var, String>, out: &mut String) {
    match t {
        Term::Var(v) => out.push_str(&names[v]),
        Term::App(f, args) => {
            let name = &sig.symbol(*f).name;
            if args.is_empty() {
                out.push_str(name);
            } else {
                out.push('(');
                out.push_str(name);
                for a in args {
                    out.push(' ');
                    print_term(a, sig, names, out);
                }
                out.push(')');
            }
        }
    }
}

fn print_formula(
    f: &Formula,
    sig: &Signature,
    names: &mut HashMap<Var, String>,
    counter: &mut u32,
    out: &mut String,
) {
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Atom(Atom::Eq(s, t)) => {
            out.push_str("(= ");
            print_term(s, sig, names, out);
            out.push(' ');
            print_term(t, sig, names, out);
            out.push(')');
        }
        Formula::Atom(Atom::Pred(p, args)) => {
            let name = &sig.symbol(*p).name;
            if args.is_empty() {
                out.push_str(name);
            } else {
                out.push('(');
                out.push_str(name);
                for a in args {
                    out.push(' ');
                    print_term(a, sig, names, out);
                }
                out.push(')');
            }
        }
        Formula::Not(g) => {
            out.push_str("(not ");
            print_formula(g, sig, names, counter, out);
            out.push(')');
        }
        Formula::And(gs) | Formula::Or(gs) => {
            let conj = matches!(f, Formula::And(_));
            if gs.is_empty() {
                // empty junctions normalize to constants
                out.push_str(if conj { "true" } else { "false" });
                return;
            }
            out.push('(');
            out.push_str(if conj { "and" } else { "or" });
            for g in gs {
                out.push(' ');
                print_formula(g, sig, names, counter, out);
            }
            out.push(')');
        }
        Formula::Implies(a, b) => {
            out.push_str("(=> ");
            print_formula(a, sig, names, counter, out);
            out.push(' ');
            print_formula(b, sig, names, counter, out);
            out.push(')');
        }
        Formula::Iff(a, b) => {
            // the input grammar has no equivalence form
            out.push_str("(and (=> ");
            print_formula(a, sig, names, counter, out);
            out.push(' ');
            print_formula(b, sig, names, counter, out);
            out.push_str(") (=> ");
            print_formula(b, sig, names, counter, out);
            out.push(' ');
            print_formula(a, sig, names, counter, out);
            out.push_str("))");
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let q = if matches!(f, Formula::Forall(_, _)) { "forall" } else { "exists" };
            let name = format!("x{}", counter);
            *counter += 1;
            out.push('(');
            out.push_str(q);
            out.push_str(" ((");
            out.push_str(&name);
            out.push(' ');
            out.push_str(&sig.sort(v.sort).name);
            out.push_str(")) ");
            let shadowed = names.insert(*v, name.clone());
            print_formula(g, sig, names, counter, out);
            match shadowed {
                Some(old) => {
                    names.insert(*v, old);
                }
                None => {
                    names.remove(v);
                }
            }
            out.push(')');
        }
    }
}

/// Prints a problem back to SMTLIB text. Declaration order follows the
/// signature, so a parse/print/parse round trip is stable.
pub fn print_problem(p: &Problem) -> String {
    let mut out = String::new();
    let data_cmd = match p.logic_note {
        LogicNote::Codatatypes => "declare-codatatypes",
        _ => "declare-datatypes",
    };
    for (sort_id, sort) in p.sig.sorts() {
        match sort.kind {
            SortKind::Plain => {
                out.push_str(&format!("(declare-sort {} 0)\n", sort.name));
            }
            SortKind::Constructor => {
                out.push_str(&format!("({data_cmd} () (({}", sort.name));
                for ctor in p.sig.constructors_of(sort_id) {
                    let sym = p.sig.symbol(ctor);
                    out.push_str(&format!(" ({}", sym.name));
                    for (i, &arg) in sym.arg_sorts.iter().enumerate() {
                        let proj = p
                            .sig
                            .destructor(ctor, i)
                            .expect("datatype fields carry named projections");
                        out.push_str(&format!(
                            " ({} {})",
                            p.sig.symbol(proj).name,
                            p.sig.sort(arg).name
                        ));
                    }
                    out.push(')');
                }
                out.push_str(")))\n");
            }
        }
    }
    for (_, sym) in p.sig.symbols() {
        match sym.role {
            Role::Function => {
                if sym.arity() == 0 {
                    out.push_str(&format!(
                        "(declare-const {} {})\n",
                        sym.name,
                        p.sig.sort(sym.result_sort.unwrap()).name
                    ));
                } else {
                    let args: Vec<&str> = sym
                        .arg_sorts
                        .iter()
                        .map(|&s| p.sig.sort(s).name.as_str())
                        .collect();
                    out.push_str(&format!(
                        "(declare-fun {} ({}) {})\n",
                        sym.name,
                        args.join(" "),
                        p.sig.sort(sym.result_sort.unwrap()).name
                    ));
                }
            }
            Role::Predicate => {
                let args: Vec<&str> = sym
                    .arg_sorts
                    .iter()
                    .map(|&s| p.sig.sort(s).name.as_str())
                    .collect();
                out.push_str(&format!(
                    "(declare-fun {} ({}) Bool)\n",
                    sym.name,
                    args.join(" ")
                ));
            }
            _ => {}
        }
    }
    for f in &p.assertions {
        out.push_str("(assert ");
        let mut names = HashMap::new();
        let mut counter = 0;
        print_formula(f, &p.sig, &mut names, &mut counter, &mut out);
        out.push_str(")\n");
    }
    if p.check_sat {
        out.push_str("(check-sat)\n");
    }
    out
}

/// Structural equality of formulas up to consistent renaming of bound
/// variables.
pub fn alpha_eq(f1: &Formula, f2: &Formula) -> bool {
    fn terms_eq(t1: &Term, t2: &Term, map: &HashMap<Var, Var>) -> bool {
        match (t1, t2) {
            (Term::Var(a), Term::Var(b)) => map.get(a) == Some(b),
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g && xs.iter().zip(ys).all(|(x, y)| terms_eq(x, y, map))
            }
            _ => false,
        }
    }
    fn go(f1: &Formula, f2: &Formula, map: &mut HashMap<Var, Var>) -> bool {
        match (f1, f2) {
            (Formula::True, Formula::True) | (Formula::False, Formula::False) => true,
            (Formula::Atom(Atom::Eq(s1, t1)), Formula::Atom(Atom::Eq(s2, t2))) => {
                terms_eq(s1, s2, map) && terms_eq(t1, t2, map)
            }
            (Formula::Atom(Atom::Pred(p, xs)), Formula::Atom(Atom::Pred(q, ys))) => {
                p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| terms_eq(x, y, map))
            }
            (Formula::Not(a), Formula::Not(b)) => go(a, b, map),
            (Formula::And(xs), Formula::And(ys)) | (Formula::Or(xs), Formula::Or(ys)) => {
                xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| go(x, y, map))
            }
            (Formula::Implies(a1, b1), Formula::Implies(a2, b2))
            | (Formula::Iff(a1, b1), Formula::Iff(a2, b2)) => {
                go(a1, a2, map) && go(b1, b2, map)
            }
            (Formula::Forall(v1, g1), Formula::Forall(v2, g2))
            | (Formula::Exists(v1, g1), Formula::Exists(v2, g2)) => {
                if v1.sort != v2.sort {
                    return false;
                }
                let shadowed = map.insert(*v1, *v2);
                let ok = go(g1, g2, map);
                match shadowed {
                    Some(old) => {
                        map.insert(*v1, old);
                    }
                    None => {
                        map.remove(v1);
                    }
                }
                ok
            }
            _ => false,
        }
    }
    go(f1, f2, &mut HashMap::new())
}
