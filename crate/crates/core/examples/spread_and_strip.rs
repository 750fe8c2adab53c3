// Spread sets and the strip reduction of a pair of coefficients.
//
//     cargo run --example spread_and_strip

use bidiff::difffield::DiffField;
use bidiff::parse::parse_expr;
use bidiff::spread::{spread_set, strip, DEFAULT_MAX_SHIFT};

pub fn run_example() -> Vec<String> {
    let pell = DiffField::pell();
    let fib = DiffField::fibonacci();
    let mut out = Vec::new();

    let pairs = [
        (&pell, "alpha*(alpha + 2*beta)", "beta"),
        (&pell, "alpha^2", "beta^2"),
        (&fib, "alpha*(alpha + beta)", "beta^2"),
    ];
    for (fld, p, q) in pairs {
        let (pp, qq) = (parse_expr(p).unwrap(), parse_expr(q).unwrap());
        let fwd = spread_set(&pp, &qq, fld, DEFAULT_MAX_SHIFT).unwrap();
        let s = strip(&pp, &qq, fld).unwrap();
        out.push(format!("Spr({p}, {q}) = {fwd:?}"));
        out.push(format!(
            "  strip: a' = {}, b' = {}, t = {}, h = {}, ratio = {}",
            s.a_final,
            s.b_final,
            s.t,
            s.h,
            s.ratio.map_or("none".to_string(), |r| r.to_string())
        ));
    }

    // far shifts are found even though sigma^70 alpha has huge coefficients
    let far = &fib.apply_sigma(&parse_expr("alpha").unwrap(), 70) * &parse_expr("alpha").unwrap();
    let spr = spread_set(&far, &parse_expr("beta").unwrap(), &fib, DEFAULT_MAX_SHIFT).unwrap();
    assert_eq!(spr.into_iter().collect::<Vec<_>>(), vec![69]);
    out.push("Spr(alpha*sigma^70(alpha), beta) = {69}".to_string());
    out
}

fn main() {
    for line in run_example() {
        println!("{line}");
    }
}
