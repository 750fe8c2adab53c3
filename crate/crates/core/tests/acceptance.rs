// Acceptance suite: ten criteria, each printed as one PASS/FAIL line.
// All comparisons are exact.
//
//     cargo test --test acceptance

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use bidiff::bipoly::{BiPoly, Monomial};
use bidiff::difffield::{DiffField, ExpSolSet};
use bidiff::parse::parse_expr;
use bidiff::qfield::{rat, QElem, Rat};
use bidiff::solver::{kernel_up_to, solve_full, solve_homogeneous, support_set, verify_solution, SolveOptions};
use bidiff::spread::{spread_set, strip, DEFAULT_MAX_SHIFT};
use bidiff::telescope::{telescope_sum, Recurrence};

const SEED: u64 = 0x5eed_b1d1ff;

fn p(s: &str) -> BiPoly {
    parse_expr(s).unwrap()
}

fn bidiff(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bidiff")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn fibonacci(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::zero(), BigInt::one()];
    while f.len() <= n {
        let k = f.len();
        let next = &f[k - 1] + &f[k - 2];
        f.push(next);
    }
    f
}

fn value(g: &BiPoly, x: &BigInt, y: &BigInt) -> Rat {
    let q = g.eval(&Rat::from_integer(x.clone()), &Rat::from_integer(y.clone()));
    q.as_rational().cloned().unwrap()
}

// Dense bivariate polynomials over Q, independent of the library types.
mod oracle {
    use super::*;

    pub type Dense = BTreeMap<(u32, u32), BigRational>;

    pub fn add_into(acc: &mut Dense, p: &Dense, scale: &BigRational) {
        for (m, c) in p {
            let e = acc.entry(*m).or_insert_with(BigRational::zero);
            *e += c * scale;
        }
        acc.retain(|_, c| !c.is_zero());
    }

    pub fn mul(p: &Dense, q: &Dense) -> Dense {
        let mut out = Dense::new();
        for ((a1, b1), c1) in p {
            for ((a2, b2), c2) in q {
                *out.entry((a1 + a2, b1 + b2)).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn mono(i: u32, j: u32) -> Dense {
        Dense::from([((i, j), BigRational::one())])
    }

    /// `σ(αⁱβʲ) = βⁱ(uα + vβ)ʲ`.
    pub fn sigma_mono(i: u32, j: u32, u: &BigRational, v: &BigRational) -> Dense {
        let lin = Dense::from([((1, 0), u.clone()), ((0, 1), v.clone())]);
        let mut out = mono(0, i);
        for _ in 0..j {
            out = mul(&out, &lin);
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn sigma(p: &Dense, u: &BigRational, v: &BigRational) -> Dense {
        let mut out = Dense::new();
        for ((i, j), c) in p {
            add_into(&mut out, &sigma_mono(*i, *j, u, v), c);
        }
        out
    }

    pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut r = 0;
        for col in 0..ncols {
            let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, piv);
            let pivot = rows[r].clone();
            let inv = pivot[col].recip();
            for row in rows.iter_mut().skip(r + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] * &inv;
                for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &factor * y;
                }
            }
            r += 1;
        }
        r
    }

    pub struct Verdict {
        pub particular: bool,
        /// dim of the kernel within degree ≤ d, for d = 0..=6.
        pub kernel_dims: Vec<usize>,
    }

    pub fn solve(a: &Dense, b: &Dense, f: &Dense, u: &BigRational, v: &BigRational, top: u32) -> Verdict {
        let monos: Vec<(u32, u32)> = (0..=top).flat_map(|d| (0..=d).map(move |i| (d - i, i))).collect();
        let images: Vec<Dense> = monos
            .iter()
            .map(|&(i, j)| {
                let mut img = mul(a, &sigma_mono(i, j, u, v));
                add_into(&mut img, &mul(b, &mono(i, j)), &BigRational::one());
                img
            })
            .collect();
        let mut row_keys: Vec<(u32, u32)> = images.iter().chain([f]).flat_map(|p| p.keys().copied()).collect();
        row_keys.sort();
        row_keys.dedup();
        let matrix = |ncols: usize, with_f: bool| -> Vec<Vec<BigRational>> {
            row_keys
                .iter()
                .map(|k| {
                    let mut row: Vec<BigRational> = images[..ncols]
                        .iter()
                        .map(|img| img.get(k).cloned().unwrap_or_else(BigRational::zero))
                        .collect();
                    if with_f {
                        row.push(f.get(k).cloned().unwrap_or_else(BigRational::zero));
                    }
                    row
                })
                .collect()
        };
        let kernel_dims = (0..=top)
            .map(|d| {
                let ncols = monos.iter().filter(|(i, j)| i + j <= d).count();
                ncols - rank(matrix(ncols, false))
            })
            .collect();
        let full = rank(matrix(monos.len(), false));
        let particular = rank(matrix(monos.len(), true)) == full;
        Verdict { particular, kernel_dims }
    }

    pub fn render(p: &Dense) -> String {
        if p.is_empty() {
            return "0".into();
        }
        p.iter()
            .map(|((i, j), c)| format!("({c})*alpha^{i}*beta^{j}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

use oracle::Dense;

fn random_dense(rng: &mut StdRng, max_deg: u32, max_terms: usize) -> Dense {
    loop {
        let mut out = Dense::new();
        let deg = rng.gen_range(0..=max_deg);
        let n = rng.gen_range(1..=max_terms);
        for _ in 0..n {
            let d = rng.gen_range(0..=deg);
            let i = rng.gen_range(0..=d);
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                *out.entry((i, d - i)).or_insert_with(BigRational::zero) += BigRational::from_integer(c.into());
            }
        }
        out.retain(|_, c| !c.is_zero());
        if !out.is_empty() {
            return out;
        }
    }
}

fn dense_degree(p: &Dense) -> u32 {
    p.keys().map(|(i, j)| i + j).max().unwrap_or(0)
}

fn random_poly(rng: &mut StdRng, max_deg: u32, max_terms: usize) -> BiPoly {
    let mut out = BiPoly::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let d = rng.gen_range(0..=max_deg);
        let i = rng.gen_range(0..=d);
        let num = rng.gen_range(-9i64..=9);
        let den = rng.gen_range(1i64..=4);
        out.add_term(Monomial::new(i, d - i), QElem::from(Rat::new(num.into(), den.into())));
    }
    out
}

fn random_homogeneous(rng: &mut StdRng, deg: u32) -> BiPoly {
    loop {
        let mut out = BiPoly::zero();
        for i in 0..=deg {
            let c = rng.gen_range(-3i64..=3);
            out.add_term(Monomial::new(i, deg - i), QElem::from_int(c));
        }
        if !out.is_zero() {
            return out;
        }
    }
}

fn fields() -> Vec<DiffField> {
    vec![DiffField::fibonacci(), DiffField::pell(), DiffField::jacobsthal()]
}

fn criterion_1() {
    let res = telescope_sum(&Recurrence::fibonacci(), &p("beta^2"), &SolveOptions::default(), 200).unwrap();
    let id = res.identity.expect("a telescoper");
    assert_eq!(id.telescoper.coeff(Monomial::new(1, 1)), QElem::one());
    assert_eq!(id.closed_form, "sum_{n=0}^{m} s(n+1)^2 = s(m+1)*s(m+2)");
    let f = fibonacci(203);
    let mut acc = BigInt::zero();
    for m in 0..=200 {
        acc += &f[m + 1] * &f[m + 1];
        assert_eq!(acc, &f[m + 1] * &f[m + 2], "m = {m}");
        let closed = value(&id.telescoper, &f[m + 1], &f[m + 2]) - value(&id.telescoper, &f[0], &f[1]);
        assert_eq!(Rat::from_integer(acc.clone()), closed);
    }
    let (code, out) = bidiff(&["sum", "--u", "1", "--v", "1", "--s0", "0", "--s1", "1", "--f", "beta^2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["particular"].as_str().unwrap().contains("alpha*beta"));
    assert_eq!(v["identity"]["verified_up_to"], 200);
}

fn criterion_2() {
    let fib = DiffField::fibonacci();
    let sol = solve_full(&BiPoly::one(), &BiPoly::from_int(-1), &p("alpha^3"), &fib, &SolveOptions::default()).unwrap();
    let g = sol.particular.unwrap();
    let reference = p("(-3*alpha^3 - beta^3 + 3*alpha*beta^2)/2");
    let diff = &g - &reference;
    assert_eq!(fib.apply_sigma(&diff, 1), diff, "difference lies in the kernel");
    assert!(verify_solution(&BiPoly::one(), &BiPoly::from_int(-1), &p("alpha^3"), &reference, &fib));

    let f = fibonacci(203);
    let base = value(&g, &f[0], &f[1]);
    let mut acc = BigInt::zero();
    for m in 0..=200usize {
        acc += &f[m] * &f[m] * &f[m];
        let closed = value(&g, &f[m + 1], &f[m + 2]) - &base;
        assert_eq!(Rat::from_integer(acc.clone()), closed);
        if m >= 1 {
            let sign = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let rao: BigInt = (f[m + 2].pow(3) - 3 * f[m + 1].pow(3) + 3 * sign * &f[m] + 2) / 4;
            assert_eq!(acc, rao, "m = {m}");
        }
    }
}

fn criterion_3() {
    let fib = DiffField::fibonacci();
    let (support, _) = support_set(&BiPoly::one(), &BiPoly::from_int(-1), &fib).unwrap();
    for d in 0..=64 {
        assert_eq!(support.contains(d), d % 4 == 0, "degree {d}");
    }
    let c2 = p("(alpha^2 + alpha*beta - beta^2)^2");
    let kernel = kernel_up_to(&BiPoly::one(), &BiPoly::from_int(-1), &fib, 4);
    assert_eq!(kernel.len(), 2);
    let degree4: Vec<&BiPoly> = kernel.iter().filter(|k| k.degree() == Some(4)).collect();
    assert_eq!(degree4.len(), 1);
    assert_eq!(degree4[0].monic(), c2.monic());
    assert!(degree4[0].is_homogeneous());
    // no invariants in degrees 1..=3
    assert!(kernel.iter().all(|k| matches!(k.degree(), Some(0) | Some(4))));
}

fn criterion_4() {
    let pell = DiffField::pell();
    let a = p("alpha^2 + alpha + 2*beta");
    let b = p("beta^2 + 2*beta");
    let f = p("alpha^3 + beta^3 + alpha^2*beta - alpha*beta^2 + alpha^2 + 4*beta^2 + alpha*beta");
    let sol = solve_full(&a, &b, &f, &pell, &SolveOptions::default()).unwrap();
    let g = sol.particular.unwrap();
    let printed = p("alpha - beta");
    assert!(g == printed || g == -&printed);
    assert!(verify_solution(&a, &b, &f, &g, &pell));
    assert!(!verify_solution(&a, &b, &f, &printed, &pell), "substitution fixes the sign");
    assert_eq!(sol.cap_used, 12);
    assert!(sol.kernel_basis.is_empty());
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
    assert!(pruned.kernel_basis.is_empty());
    assert!(pruned.diagnostics.iter().any(|d| d == "after component pruning: {}"));
}

fn criterion_5() {
    let pell = DiffField::pell();
    let (a2, b2) = (p("alpha^2"), p("beta^2"));
    assert_eq!(spread_set(&b2, &a2, &pell, DEFAULT_MAX_SHIFT).unwrap().into_iter().collect::<Vec<_>>(), vec![1]);
    assert!(spread_set(&a2, &b2, &pell, DEFAULT_MAX_SHIFT).unwrap().is_empty());
    let s = strip(&a2, &b2, &pell).unwrap();
    assert_eq!(s.h, a2);
    assert_eq!(s.ratio, Some(QElem::from_int(-1)));
}

fn criterion_6() {
    let pell = DiffField::pell();
    assert_eq!(pell.solve_unit_eq(&QElem::from_int(-2)).unwrap(), ExpSolSet::Empty);
}

fn criterion_7() {
    let mut rng = StdRng::seed_from_u64(SEED);
    for fld in fields() {
        for _ in 0..1000 {
            let x = random_poly(&mut rng, 4, 5);
            let y = random_poly(&mut rng, 3, 4);
            let sx = fld.apply_sigma(&x, 1);
            assert_eq!(fld.apply_sigma(&(&x * &y), 1), &sx * &fld.apply_sigma(&y, 1));
            assert_eq!(sx.degree(), x.degree());
            assert_eq!(fld.apply_sigma(&sx, -1), x);
            assert_eq!(fld.apply_sigma(&fld.apply_sigma(&x, -1), 1), x);
            for (h, l) in [(fld.h1(), fld.lambda1()), (fld.h2(), fld.lambda2())] {
                let hx = h * &x;
                assert_eq!(fld.apply_sigma(&hx, 1), (&fld.apply_sigma(&x, 1) * h).scale(l));
            }
        }
        for (h, l) in [(fld.h1(), fld.lambda1()), (fld.h2(), fld.lambda2())] {
            assert_eq!(fld.apply_sigma(h, 1), h.scale(l));
        }
    }
}

fn criterion_8() {
    let mut rng = StdRng::seed_from_u64(SEED ^ 8);
    let mut fs = fields();
    fs.push(DiffField::new(rat(3), rat(1)).unwrap());
    fs.push(DiffField::new(rat(-1), rat(3)).unwrap());
    let (mut with_particular, mut with_kernel) = (0, 0);
    let instances = 240;
    for n in 0..instances {
        let fld = &fs[n % fs.len()];
        let u = fld.u().clone();
        let v = fld.v().clone();
        let (a, b, f) = match n % 4 {
            0 => (random_dense(&mut rng, 3, 4), random_dense(&mut rng, 3, 4), random_dense(&mut rng, 3, 4)),
            1 => {
                let w = random_dense(&mut rng, 2, 3);
                let r = random_dense(&mut rng, 3 - dense_degree(&w).clamp(1, 3), 2);
                let a = oracle::mul(&r, &w);
                let mut b = Dense::new();
                oracle::add_into(&mut b, &oracle::mul(&r, &oracle::sigma(&w, &u, &v)), &-BigRational::one());
                (a, b, random_dense(&mut rng, 3, 4))
            }
            2 => {
                let a = random_dense(&mut rng, 3, 4);
                let b = random_dense(&mut rng, 3, 4);
                let room = 3 - dense_degree(&a).max(dense_degree(&b));
                let g0 = random_dense(&mut rng, room, 3);
                let mut f = oracle::mul(&a, &oracle::sigma(&g0, &u, &v));
                oracle::add_into(&mut f, &oracle::mul(&b, &g0), &BigRational::one());
                if f.is_empty() {
                    f = random_dense(&mut rng, 3, 4);
                }
                (a, b, f)
            }
            _ => {
                let c = rng.gen_range(1i64..=3);
                let e = [-c, c, -2 * c, 1][rng.gen_range(0..4)];
                let a = Dense::from([((0, 0), BigRational::from_integer(c.into()))]);
                let b = Dense::from([((0, 0), BigRational::from_integer(e.into()))]);
                (a, b, random_dense(&mut rng, 3, 4))
            }
        };
        let want = oracle::solve(&a, &b, &f, &u, &v, 6);
        let (pa, pb, pf) = (p(&oracle::render(&a)), p(&oracle::render(&b)), p(&oracle::render(&f)));
        let opts = SolveOptions {
            cap: Some(6),
            ..Default::default()
        };
        let sol = solve_full(&pa, &pb, &pf, fld, &opts).unwrap();
        let ctx = format!("a = {pa}, b = {pb}, f = {pf}, u = {u}, v = {v}");
        assert_eq!(sol.particular.is_some(), want.particular, "particular verdict: {ctx}");
        assert_eq!(sol.kernel_dims(6), want.kernel_dims, "kernel dimensions: {ctx}");
        with_particular += usize::from(want.particular);
        with_kernel += usize::from(want.kernel_dims[6] > 0);
    }
    // the sample exercises both verdicts and nontrivial kernels
    assert!(with_particular >= 40 && instances - with_particular >= 40, "{with_particular}");
    assert!(with_kernel >= 20, "{with_kernel}");
}

fn criterion_9() {
    let mut rng = StdRng::seed_from_u64(SEED ^ 9);
    let mut fs = fields();
    fs.push(DiffField::new(rat(3), rat(1)).unwrap());
    for n in 0..150 {
        let fld = &fs[n % fs.len()];
        let e: Vec<u32> = (0..4).map(|_| rng.gen_range(0..=3)).collect();
        let rd = rng.gen_range(0..=2);
        let r = random_homogeneous(&mut rng, rd);
        let c1 = QElem::from(Rat::new(rng.gen_range(1i64..=7).into(), rng.gen_range(1i64..=5).into()));
        let c2 = QElem::from_int(rng.gen_range(-4i64..=-1));
        let num = (&(&fld.h1().pow(e[0]) * &fld.h2().pow(e[1])) * &r).scale(&c1);
        let den = (&(&fld.h1().pow(e[2]) * &fld.h2().pow(e[3])) * &r).scale(&c2);

        // σg/g for g = num/den, computed directly
        let lhs = &fld.apply_sigma(&num, 1) * &den;
        let rhs = &num * &fld.apply_sigma(&den, 1);
        let mu = lhs.leading_term().unwrap().1 / rhs.leading_term().unwrap().1;
        assert_eq!(lhs, rhs.scale(&mu));

        let (got, i) = fld.classify_semi_invariant(&num, &den).unwrap().expect("semi-invariant");
        let j = i64::from(num.degree().unwrap()) - i64::from(den.degree().unwrap()) - i;
        assert_eq!(i, i64::from(e[0]) - i64::from(e[2]));
        assert_eq!(j, i64::from(e[1]) - i64::from(e[3]));
        assert_eq!(got, mu);
        assert_eq!(&fld.lambda1().powi(i).unwrap() * &fld.lambda2().powi(j).unwrap(), mu);
    }
}

fn criterion_10() {
    let c2 = "(alpha^2 + alpha*beta - beta^2)^2";
    let res = telescope_sum(&Recurrence::fibonacci(), &p(c2), &SolveOptions::default(), 200).unwrap();
    assert!(res.identity.is_none());
    assert!(res.solution.diagnostics.iter().any(|d| d == "no polynomial telescoper"));
    let (code, out) = bidiff(&["sum", "--u", "1", "--v", "1", "--f", c2, "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["identity"].is_null());
    let diags: Vec<&str> = v["diagnostics"].as_array().unwrap().iter().map(|d| d.as_str().unwrap()).collect();
    assert!(diags.iter().any(|d| d.contains("sigma-invariant") && d.contains("obstruction")), "{diags:?}");
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("Lucas identity for sums of squared Fibonacci numbers", criterion_1),
        ("sum of Fibonacci cubes against the classical closed form", criterion_2),
        ("support set and degree-4 kernel of sigma(g) = g", criterion_3),
        ("Pell equation with a unique polynomial solution", criterion_4),
        ("spread and strip goldens over Pell", criterion_5),
        ("unit equation lambda1^i*lambda2^j = -2 over Pell is empty", criterion_6),
        ("automorphism laws on random polynomials", criterion_7),
        ("agreement with a dense brute-force solver", criterion_8),
        ("classification of semi-invariant ratios", criterion_9),
        ("negative control: sigma-invariant summand", criterion_10),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(run)).is_ok();
        let secs = start.elapsed().as_secs_f64();
        println!("{} criterion {:>2}: {name} ({secs:.2}s)", if ok { "PASS" } else { "FAIL" }, n + 1);
        failed += usize::from(!ok);
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
