//! Sorted signatures: sorts, symbols, precedence and weights.

use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SortId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortKind {
    /// Sort inhabited exactly by its constructor terms.
    Constructor,
    /// Uninterpreted sort with no constructors.
    Plain,
}

#[derive(Debug, Clone)]
pub struct Sort {
    pub name: String,
    pub kind: SortKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Constructor,
    /// Projection inverting `constructor` at argument `index`.
    Destructor {
        constructor: SymbolId,
        index: usize,
    },
    Function,
    Predicate,
    Skolem,
    /// Fresh predicate introduced while naming subformulas during CNF.
    Definition,
    /// The proper-subterm predicate of one constructor sort.
    SubtermPredicate,
}

impl Role {
    /// Precedence group: constructors < destructors < uninterpreted < skolems.
    fn rank(self) -> u32 {
        match self {
            Role::Constructor => 0,
            Role::Destructor { .. } => 1,
            Role::Function | Role::Predicate | Role::SubtermPredicate => 2,
            Role::Skolem | Role::Definition => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Symbol {
    pub name: String,
    pub arg_sorts: Vec<SortId>,
    /// `None` for predicates.
    pub result_sort: Option<SortId>,
    pub role: Role,
}

impl Symbol {
    pub fn arity(&self) -> usize {
        self.arg_sorts.len()
    }

    pub fn is_predicate(&self) -> bool {
        self.result_sort.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SigError {
    DuplicateSort(String),
    DuplicateSymbol(String),
    UnknownSort(String),
    UnknownSymbol(String),
    /// A constructor sort with no well-founded constructor.
    UninhabitedSort(String),
}

impl fmt::Display for SigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigError::DuplicateSort(n) => write!(f, "duplicate sort declaration: {n}"),
            SigError::DuplicateSymbol(n) => write!(f, "duplicate symbol declaration: {n}"),
            SigError::UnknownSort(n) => write!(f, "unknown sort: {n}"),
            SigError::UnknownSymbol(n) => write!(f, "unknown symbol: {n}"),
            SigError::UninhabitedSort(n) => {
                write!(f, "constructor sort {n} has no ground terms")
            }
        }
    }
}

impl std::error::Error for SigError {}

/// A many-sorted signature. Symbols carry a total precedence (by role
/// group, then declaration order) and unit weights for the ordering.
#[derive(Debug, Clone, Default)]
pub struct Signature {
    sorts: Vec<Sort>,
    symbols: Vec<Symbol>,
    sort_names: HashMap<String, SortId>,
    symbol_names: HashMap<String, SymbolId>,
    fresh_counter: u32,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn add_sort(&mut self, name: &str, kind: SortKind) -> Result<SortId, SigError> {
        if self.sort_names.contains_key(name) {
            return Err(SigError::DuplicateSort(name.to_string()));
        }
        let id = SortId(self.sorts.len() as u32);
        self.sorts.push(Sort {
            name: name.to_string(),
            kind,
        });
        self.sort_names.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_symbol(
        &mut self,
        name: &str,
        arg_sorts: Vec<SortId>,
        result_sort: Option<SortId>,
        role: Role,
    ) -> Result<SymbolId, SigError> {
        if self.symbol_names.contains_key(name) {
            return Err(SigError::DuplicateSymbol(name.to_string()));
        }
        let id = SymbolId(self.symbols.len() as u32);
        self.symbols.push(Symbol {
            name: name.to_string(),
            arg_sorts,
            result_sort,
            role,
        });
        self.symbol_names.insert(name.to_string(), id);
        Ok(id)
    }

    /// Registers a fresh skolem function `sk$n`.
    pub fn fresh_skolem(&mut self, arg_sorts: Vec<SortId>, result_sort: SortId) -> SymbolId {
        loop {
            let name = format!("sk${}", self.fresh_counter);
            self.fresh_counter += 1;
            if !self.symbol_names.contains_key(&name) {
                return self
                    .add_symbol(&name, arg_sorts, Some(result_sort), Role::Skolem)
                    .expect("fresh name cannot collide");
            }
        }
    }

    /// Registers a fresh naming predicate `df$n`.
    pub fn fresh_definition(&mut self, arg_sorts: Vec<SortId>) -> SymbolId {
        loop {
            let name = format!("df${}", self.fresh_counter);
            self.fresh_counter += 1;
            if !self.symbol_names.contains_key(&name) {
                return self
                    .add_symbol(&name, arg_sorts, None, Role::Definition)
                    .expect("fresh name cannot collide");
            }
        }
    }

    pub fn sort(&self, id: SortId) -> &Sort {
        &self.sorts[id.0 as usize]
    }

    pub fn symbol(&self, id: SymbolId) -> &Symbol {
        &self.symbols[id.0 as usize]
    }

    pub fn sort_by_name(&self, name: &str) -> Option<SortId> {
        self.sort_names.get(name).copied()
    }

    pub fn symbol_by_name(&self, name: &str) -> Option<SymbolId> {
        self.symbol_names.get(name).copied()
    }

    pub fn sorts(&self) -> impl Iterator<Item = (SortId, &Sort)> {
        self.sorts
            .iter()
            .enumerate()
            .map(|(i, s)| (SortId(i as u32), s))
    }

    pub fn symbols(&self) -> impl Iterator<Item = (SymbolId, &Symbol)> {
        self.symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (SymbolId(i as u32), s))
    }

    pub fn constructors_of(&self, sort: SortId) -> Vec<SymbolId> {
        self.symbols()
            .filter(|(_, s)| s.role == Role::Constructor && s.result_sort == Some(sort))
            .map(|(id, _)| id)
            .collect()
    }

    pub fn is_constructor(&self, id: SymbolId) -> bool {
        self.symbol(id).role == Role::Constructor
    }

    /// The projection inverting `ctor` at `index`, if declared.
    pub fn destructor(&self, ctor: SymbolId, index: usize) -> Option<SymbolId> {
        self.symbols()
            .find(|(_, s)| s.role == Role::Destructor { constructor: ctor, index })
            .map(|(id, _)| id)
    }

    /// Looks up or auto-declares the projection for `ctor` at `index`.
    pub fn ensure_destructor(&mut self, ctor: SymbolId, index: usize) -> SymbolId {
        if let Some(id) = self.destructor(ctor, index) {
            return id;
        }
        let sym = self.symbol(ctor).clone();
        let name = format!("p${}${}", sym.name, index);
        self.add_symbol(
            &name,
            vec![sym.result_sort.expect("constructor has a result sort")],
            Some(sym.arg_sorts[index]),
            Role::Destructor {
                constructor: ctor,
                index,
            },
        )
        .expect("auto destructor name collision")
    }

    /// Unit weight for every symbol; variables also weigh 1.
    pub fn weight(&self, _id: SymbolId) -> u64 {
        1
    }

    /// Total precedence key: role group first, then declaration order.
    pub fn precedence(&self, id: SymbolId) -> (u32, u32) {
        (self.symbol(id).role.rank(), id.0)
    }

    /// Checks that every constructor sort has a ground term: some
    /// constructor with all argument sorts already known inhabited.
    /// Plain sorts are assumed nonempty.
    pub fn check_inhabited(&self) -> Result<(), SigError> {
        let n = self.sorts.len();
        let mut inhabited: Vec<bool> = self
            .sorts
            .iter()
            .map(|s| s.kind == SortKind::Plain)
            .collect();
        let mut changed = true;
        while changed {
            changed = false;
            for (_, sym) in self.symbols() {
                if sym.role != Role::Constructor {
                    continue;
                }
                let res = sym.result_sort.expect("constructor has a result sort");
                if !inhabited[res.0 as usize]
                    && sym.arg_sorts.iter().all(|a| inhabited[a.0 as usize])
                {
                    inhabited[res.0 as usize] = true;
                    changed = true;
                }
            }
        }
        for i in 0..n {
            let sort = &self.sorts[i];
            if sort.kind == SortKind::Constructor && !inhabited[i] {
                return Err(SigError::UninhabitedSort(sort.name.clone()));
            }
        }
        Ok(())
    }
}
