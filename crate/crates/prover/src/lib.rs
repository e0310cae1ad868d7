//! A saturation theorem prover for first-order logic with equality
//! over algebraic data types: superposition with a Knuth-Bendix
//! ordering, constructor-aware simplification rules, and an SMTLIB
//! frontend.

pub mod calculus;
pub mod clausify;
pub mod fol;
pub mod game;
pub mod order;
pub mod saturation;
pub mod sig;
pub mod smtlib;
pub mod ta;
pub mod term;

use calculus::Rule;
use saturation::{ProverConfig, Saturation};
use sig::SigError;
use smtlib::Problem;
use ta::AcyclicityMode;

/// Builds a saturation instance for a parsed problem: theory axioms
/// from the declared datatypes first, then the clausified assertions.
/// Codatatype declarations suppress acyclicity reasoning.
pub fn build_saturation(problem: &Problem, cfg: &ProverConfig) -> Result<Saturation, SigError> {
    let mut cfg = cfg.clone();
    if problem.has_codatatypes() {
        cfg.ta.acyclicity_mode = AcyclicityMode::Off;
    }
    let mut sig = problem.sig.clone();
    let axioms = ta::generate_axioms(&mut sig, &cfg.ta)?;
    let mut clauses = Vec::new();
    for f in &problem.assertions {
        clauses.extend(clausify::clausify(f, &mut sig));
    }
    let mut sat = Saturation::new(sig, cfg);
    for a in axioms {
        sat.add_input(a, Rule::TheoryAxiom);
    }
    for c in clauses {
        sat.add_input(c, Rule::Input);
    }
    Ok(sat)
}
