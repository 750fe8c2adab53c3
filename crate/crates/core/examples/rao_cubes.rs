// Sum of cubes of Fibonacci numbers, compared with the classical closed form
// (F(m+2)^3 - 3*F(m+1)^3 + 3*(-1)^m*F(m) + 2)/4.
//
//     cargo run --example rao_cubes

use bidiff::parse::parse_expr;
use bidiff::qfield::{rat, Rat};
use bidiff::solver::SolveOptions;
use bidiff::telescope::{telescope_sum, Recurrence};

pub fn run_example() -> Vec<String> {
    let rec = Recurrence::fibonacci();
    let f = parse_expr("alpha^3").unwrap();
    let res = telescope_sum(&rec, &f, &SolveOptions::default(), 200).unwrap();
    let id = res.identity.expect("alpha^3 telescopes");

    let fib = rec.terms(64);
    let mut acc = Rat::from(rat(0));
    for m in 0..60 {
        acc += &fib[m] * &fib[m] * &fib[m];
        let sign = if m % 2 == 0 { rat(1) } else { rat(-1) };
        let classical = (fib[m + 2].pow(3) - rat(3) * fib[m + 1].pow(3) + rat(3) * sign * &fib[m] + rat(2)) / rat(4);
        assert_eq!(acc, classical, "m = {m}");
    }

    vec![
        format!("telescoper g = {}", id.telescoper),
        id.closed_form.clone(),
        format!("kernel basis up to degree {}: {}", res.solution.cap_used, res.solution.kernel_basis.len()),
        "agrees with (F(m+2)^3 - 3F(m+1)^3 + 3(-1)^m F(m) + 2)/4 for m < 60".to_string(),
    ]
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
