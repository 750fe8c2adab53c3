// Telescoping sums over Jacobsthal-type sequences s(n+2) = 2*s(n) + s(n+1),
// with both standard and Lucas-type initial values.
//
//     cargo run --example jacobsthal_sums

use bidiff::parse::parse_expr;
use bidiff::qfield::rat;
use bidiff::solver::SolveOptions;
use bidiff::telescope::{telescope_sum, Recurrence};

pub fn run_example() -> Vec<String> {
    let mut out = Vec::new();
    let seqs = [
        ("J", Recurrence::jacobsthal()),
        ("j", Recurrence::new(rat(2), rat(1), rat(2), rat(1), 0)),
        ("J from n = 3", Recurrence::jacobsthal().starting_at(3)),
    ];
    for (name, rec) in &seqs {
        for f in ["alpha", "beta^2", "alpha*beta", "alpha^2 + alpha*beta"] {
            let res = telescope_sum(rec, &parse_expr(f).unwrap(), &SolveOptions::default(), 100).unwrap();
            match res.identity {
                Some(id) => out.push(format!("{name}: {}", id.closed_form)),
                None => out.push(format!("{name}: {f} has no polynomial telescoper")),
            }
        }
    }
    out
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
