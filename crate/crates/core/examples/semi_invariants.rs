// Eigen coordinates, semi-invariants sigma(p) = c * p and sigma-invariant
// polynomials.
//
//     cargo run --example semi_invariants

use bidiff::bipoly::BiPoly;
use bidiff::difffield::DiffField;
use bidiff::parse::parse_expr;

pub fn run_example() -> Vec<String> {
    let fib = DiffField::fibonacci();
    let mut out = vec![
        format!("h1 = {}", fib.h1()),
        format!("h2 = {}", fib.h2()),
        format!("C = h1*h2 = {}", fib.norm_form()),
    ];
    for (name, p) in [("h1", fib.h1().clone()), ("h2", fib.h2().clone()), ("C", fib.norm_form().clone())] {
        let (c, _) = fib.classify_semi_invariant(&p, &BiPoly::one()).unwrap().expect("semi-invariant");
        assert_eq!(fib.apply_sigma(&p, 1), p.scale(&c));
        out.push(format!("sigma({name}) = ({c}) * {name}"));
    }
    let p = parse_expr("alpha^2 + beta^2").unwrap();
    assert!(fib.classify_semi_invariant(&p, &BiPoly::one()).unwrap().is_none());
    out.push(format!("{p} is not semi-invariant"));

    let x = parse_expr("alpha^3").unwrap();
    let coords: Vec<String> = fib.to_eigen(&x).unwrap().iter().map(|c| c.to_string()).collect();
    assert_eq!(fib.from_eigen(&fib.to_eigen(&x).unwrap()), x);
    out.push(format!("alpha^3 in the basis h1^k*h2^(3-k): [{}]", coords.join(", ")));

    for w in fib.invariant_generators(8) {
        assert_eq!(fib.apply_sigma(&w, 1), w);
        out.push(format!("invariant: {w}"));
    }
    out
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
