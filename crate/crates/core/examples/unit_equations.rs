// Exponent sets {(i, j) : lambda1^i * lambda2^j = mu} and the relation
// lattice of the eigenvalues for a few fields.
//
//     cargo run --example unit_equations

use bidiff::difffield::{DiffField, ExpSolSet};
use bidiff::qfield::{rat, QElem};

pub fn run_example() -> Vec<String> {
    let mut out = Vec::new();
    let fields = [
        ("Fibonacci", DiffField::fibonacci()),
        ("Pell", DiffField::pell()),
        ("Jacobsthal", DiffField::jacobsthal()),
        ("u = 3, v = 1", DiffField::new(rat(3), rat(1)).unwrap()),
    ];
    for (name, fld) in &fields {
        out.push(format!("{name}: lattice generator {:?}", fld.lattice().generator));
        let (l1, l2) = (fld.lambda1().clone(), fld.lambda2().clone());
        let probes = [
            ("1", QElem::one()),
            ("-1", QElem::from_int(-1)),
            ("lambda1^3", l1.pow(3)),
            ("lambda1^2*lambda2^5", &l1.pow(2) * &l2.pow(5)),
            ("2", QElem::from_int(2)),
        ];
        for (label, mu) in probes {
            let sols = fld.solve_unit_eq(&mu).unwrap();
            if let ExpSolSet::Single(i, j) | ExpSolSet::Coset { base: (i, j), .. } = sols {
                assert_eq!(&l1.powi(i).unwrap() * &l2.powi(j).unwrap(), mu);
            }
            out.push(format!("  mu = {label}: {sols:?}"));
        }
    }
    out
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
