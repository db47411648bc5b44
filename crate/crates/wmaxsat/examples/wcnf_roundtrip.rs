//! Instance I/O: the two accepted input syntaxes, parse warnings, and the
//! canonical DIMACS serialization.
//!
//! Run with: `cargo run --example wcnf_roundtrip`

use wmaxsat::formula::{parse_wcnf, serialize_wcnf};

fn main() {
    // DIMACS WCNF: `p wcnf <vars> <clauses>`, clauses as `w lits... 0`.
    let dimacs = "\
c a three-variable example
p wcnf 3 4
5 1 2 0
4 -1 3 0
3 -2 -3 0
2 1 -3 0
";
    // The same instance in the plain benchmark syntax: a `<vars> <clauses>`
    // first line, clauses as `w <len> lits...`.
    let plain = "\
3 4
5 2 1 2
4 2 -1 3
3 2 -2 -3
2 2 1 -3
";
    let a = parse_wcnf(dimacs).expect("valid DIMACS");
    let b = parse_wcnf(plain).expect("valid benchmark syntax");
    assert_eq!(a.instance, b.instance, "both syntaxes parse identically");
    println!(
        "parsed the same instance from both syntaxes: {} variables, {} clauses",
        a.instance.num_variables(),
        a.instance.clauses().len()
    );

    // Serialization is canonical DIMACS; parsing it back is the identity.
    let canonical = serialize_wcnf(&a.instance);
    println!("\ncanonical DIMACS:\n{canonical}");
    let reparsed = parse_wcnf(&canonical).expect("own output parses");
    assert_eq!(reparsed.instance, a.instance);

    // Tautological clauses are kept (they contribute their weight to every
    // assignment) but flagged, and duplicate literals are dropped.
    let noisy = "\
p wcnf 2 2
7 1 -1 0
3 2 2 1 0
";
    let parsed = parse_wcnf(noisy).expect("parses with warnings");
    println!("warnings for a tautology + duplicate literals:");
    for warning in &parsed.warnings {
        println!("  {warning}");
    }
    assert_eq!(parsed.warnings.len(), 1);
    assert_eq!(parsed.instance.clauses()[1].literals().len(), 2);

    // Errors carry the line and what went wrong.
    let err = parse_wcnf("p wcnf 2 1\n4 1 3 0\n").unwrap_err();
    println!("\na malformed file reports: {err}");
}
