//! Generator for the pebble-game benchmark family: decide whether the
//! position s(z) admits a winning strategy within k moves, where a move
//! subtracts one or two.

/// The SMTLIB text asserting the negation of `winning_k(s(z))`.
/// `winning_0(p)` is false; `winning_k(p)` says some move from `p`
/// leads to a position from which every opponent move loses in k-1.
/// The assertion carries 2k alternating quantifiers.
pub fn generate_game(k: u32) -> Result<String, String> {
    if k < 1 {
        return Err("game parameter must be at least 1".to_string());
    }
    let mut out = String::new();
    out.push_str("(declare-datatypes ()\n  ((Nat (z) (s (pred Nat)))))\n\n");
    out.push_str("(assert\n  (not\n");
    let body = winning(k, "(s z)", 4);
    out.push_str(&body);
    out.push_str("))\n\n(check-sat)\n");
    Ok(out)
}

fn indent(depth: usize) -> String {
    " ".repeat(depth)
}

/// `winning_j(pos)`, indented for readability.
fn winning(j: u32, pos: &str, depth: usize) -> String {
    if j == 0 {
        return format!("{}false", indent(depth));
    }
    let w = format!("w{j}");
    let l = format!("l{}", j - 1);
    let pad = indent(depth);
    let pad2 = indent(depth + 2);
    let pad4 = indent(depth + 4);
    let inner = winning(j - 1, &l, depth + 6);
    format!(
        "{pad}(exists\n\
         {pad2}(({w} Nat))\n\
         {pad2}(and\n\
         {pad4}(or\n\
         {pad4}  (= {pos} (s {w}))\n\
         {pad4}  (= {pos} (s (s {w}))))\n\
         {pad4}(forall\n\
         {pad4}  (({l} Nat))\n\
         {pad4}  (=>\n\
         {pad4}    (or\n\
         {pad4}      (= {w} (s {l}))\n\
         {pad4}      (= {w} (s (s {l}))))\n\
         {inner}))))"
    )
}
