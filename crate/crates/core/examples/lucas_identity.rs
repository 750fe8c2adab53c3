// Sum of squares of Fibonacci numbers, found by solving sigma(g) - g = beta^2.
//
//     cargo run --example lucas_identity

use bidiff::parse::parse_expr;
use bidiff::solver::SolveOptions;
use bidiff::telescope::{numeric_verify, telescope_sum, Recurrence};

pub fn run_example() -> Vec<String> {
    let f = parse_expr("beta^2").unwrap();
    let res = telescope_sum(&Recurrence::fibonacci(), &f, &SolveOptions::default(), 200).unwrap();
    let id = res.identity.expect("beta^2 telescopes");
    assert_eq!(id.telescoper, parse_expr("alpha*beta").unwrap());
    assert!(numeric_verify(&id, 500));

    let mut out = vec![
        format!("telescoper g = {}", id.telescoper),
        id.closed_form.clone(),
    ];
    let fib = Recurrence::fibonacci().terms(12);
    let partial: Vec<String> = (0..10)
        .map(|m| {
            let sum: bidiff::qfield::Rat = (0..=m).map(|n| &fib[n + 1] * &fib[n + 1]).sum();
            format!("{sum}")
        })
        .collect();
    out.push(format!("partial sums: {}", partial.join(", ")));
    out
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
