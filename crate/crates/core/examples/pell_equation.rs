// A full equation over the Pell field (u = 1, v = 2) with polynomial
// coefficients: particular solution, kernel and the support set of kernel
// degrees.
//
//     cargo run --example pell_equation

use bidiff::difffield::DiffField;
use bidiff::parse::parse_expr;
use bidiff::solver::{solve_full, solve_homogeneous, support_set, verify_solution, SolveOptions};

pub fn run_example() -> Vec<String> {
    let pell = DiffField::pell();
    let a = parse_expr("alpha^2 + alpha + 2*beta").unwrap();
    let b = parse_expr("beta^2 + 2*beta").unwrap();
    let f = parse_expr("alpha^3 + beta^3 + alpha^2*beta - alpha*beta^2 + alpha^2 + 4*beta^2 + alpha*beta").unwrap();

    let sol = solve_full(&a, &b, &f, &pell, &SolveOptions::default()).unwrap();
    let g = sol.particular.clone().expect("solvable");
    assert!(verify_solution(&a, &b, &f, &g, &pell));
    assert!(sol.kernel_basis.is_empty());

    let (support, _) = support_set(&parse_expr("alpha^2").unwrap(), &parse_expr("beta^2").unwrap(), &pell).unwrap();
    let pruned = solve_homogeneous(
        &a,
        &b,
        &pell,
        &SolveOptions {
            component_pruning: true,
            ..Default::default()
        },
    )
    .unwrap();

    let mut out = vec![
        format!("field: D = {}, lambda1 = {}", pell.discriminant(), pell.lambda1()),
        format!("g = {g}"),
        format!("leading support set: {support}"),
        format!("kernel up to degree {}: {{0}}", sol.cap_used),
    ];
    out.extend(pruned.diagnostics.iter().map(|d| format!("pruned: {d}")));
    out
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
