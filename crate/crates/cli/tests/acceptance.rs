//! Acceptance suite: one pass/fail line per criterion, nonzero exit if any
//! criterion fails. All comparisons are exact.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linperm::{
    associate_product, build_special, conj_prod, conj_sum, dickson_of, generic_inverse, invert_table, is_permutation,
    p1_inverse, p1_inverse_weighted_form, table_of, BidiagOnesRowMatrix, Felt, FieldSpec, IndexSet, LinPoly, SpecialPP,
};
use linperm_cli::sample_special;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn field(n: usize) -> FieldSpec {
    FieldSpec::new(n).unwrap()
}

fn all_special(n: usize) -> Vec<SpecialPP> {
    let f = field(n);
    (1..1u64 << n).filter_map(|v| build_special(&f, &f.element(v).unwrap()).ok()).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const SMALL_N: [usize; 5] = [3, 5, 7, 9, 11];

fn closed_form_correctness() -> Outcome {
    let expected_counts = [4usize, 16, 64, 256, 1024];
    let mut total = 0;
    for (&n, &want) in SMALL_N.iter().zip(&expected_counts) {
        let ps = all_special(n);
        ensure(ps.len() == want, || format!("n = {n}: {} valid a, expected {want}", ps.len()))?;
        for p in &ps {
            let inv = p.closed_inverse_b();
            ensure(p.poly().compose(&inv).unwrap().is_identity(), || format!("P∘P⁻¹ ≠ x at n = {n}, a = {}", p.a()))?;
            ensure(inv.compose(p.poly()).unwrap().is_identity(), || format!("P⁻¹∘P ≠ x at n = {n}, a = {}", p.a()))?;
        }
        total += ps.len();
    }
    Ok(format!("{total} parameters, both composition orders give x"))
}

fn triple_agreement() -> Outcome {
    let check = |p: &SpecialPP| -> Result<(), String> {
        let b = p.closed_inverse_b();
        ensure(p.closed_inverse_c() == b, || format!("B ≠ C at n = {}, a = {}", p.n(), p.a()))?;
        ensure(generic_inverse(p.poly()).unwrap() == b, || format!("B ≠ cofactor at n = {}, a = {}", p.n(), p.a()))
    };
    let mut count = 0;
    for n in SMALL_N {
        for p in all_special(n) {
            check(&p)?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xac02);
    for n in [13, 17, 21, 31] {
        let f = field(n);
        for _ in 0..50 {
            check(&sample_special(&f, &mut rng))?;
            count += 1;
        }
    }
    Ok(format!("{count} cases, B = C = cofactor"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xac03);
    let mut count = 0;
    for n in [3usize, 5, 7, 9, 11, 13] {
        let f = field(n);
        let ps: Vec<SpecialPP> =
            if n <= 7 { all_special(n) } else { (0..10).map(|_| sample_special(&f, &mut rng)).collect() };
        for p in ps {
            let expect = invert_table(&table_of(p.poly()).unwrap()).map_err(|e| e.to_string())?;
            let got = table_of(&p.closed_inverse_b()).unwrap();
            ensure(expect == got, || format!("table mismatch at n = {n}, a = {}", p.a()))?;
            count += 1;
        }
    }
    Ok(format!("{count} tables match pointwise"))
}

fn tilde_determinant() -> Outcome {
    let mut count = 0;
    for n in SMALL_N {
        for p in all_special(n) {
            let det = dickson_of(&p.tilde_poly()).det();
            ensure(det.is_one(), || format!("det D(P~) = {det} at n = {n}, a = {}", p.a()))?;
            count += 1;
        }
    }
    Ok(format!("det D(P~) = 1 in all {count} cases"))
}

fn cofactor_formulas() -> Outcome {
    let mut count = 0;
    for n in SMALL_N {
        let f = field(n);
        for p in all_special(n) {
            let d = dickson_of(&p.tilde_poly());
            let inv = p.closed_inverse_b();
            for i in 0..n {
                let formula = p.ptilde_cofactor(i).unwrap();
                let matrix = d.cofactor_col0(i).unwrap();
                ensure(formula == matrix, || format!("p~_{i}: {formula} vs {matrix} at n = {n}, a = {}", p.a()))?;
                let scaled = f.mul(&p.a(), &formula).unwrap();
                ensure(scaled == inv.coeffs()[i], || format!("a·p~_{i} ≠ inverse coefficient at n = {n}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} cofactors match the matrix and the inverse"))
}

fn p1_inverse_suite() -> Outcome {
    for n in (3..=31).step_by(2) {
        let f = field(n);
        // Two-case formula written out independently of the library.
        let ones: Vec<usize> = if n % 4 == 1 {
            (0..=(n - 1) / 2).map(|i| 2 * i).collect()
        } else {
            (0..=(n - 3) / 2).map(|i| 2 * i + 1).collect()
        };
        let mut mask = vec![false; n];
        ones.iter().for_each(|&e| mask[e] = true);
        let formula = LinPoly::from_bits(&f, &mask).unwrap();
        let inv = p1_inverse(&f).unwrap();
        ensure(inv == formula, || format!("two-case formula mismatch at n = {n}"))?;
        ensure(p1_inverse_weighted_form(&f).unwrap() == inv, || format!("weighted form mismatch at n = {n}"))?;
        let p1 = build_special(&f, &f.one()).unwrap();
        ensure(generic_inverse(p1.poly()).unwrap() == inv, || format!("cofactor route mismatch at n = {n}"))?;
        let prod =
            associate_product(&p1.poly().conventional_associate().unwrap(), &inv.conventional_associate().unwrap())
                .unwrap();
        ensure(prod.is_one(), || format!("p·p̄ ≠ 1 mod x^n + 1 at n = {n}"))?;
        let expected_assoc: Vec<usize> = (2..n).collect();
        ensure(p1.poly().conventional_associate().unwrap().exponents() == expected_assoc, || {
            format!("associate of P1 is not x^2 + ... + x^(n-1) at n = {n}")
        })?;
    }
    Ok("odd n = 3..31: formula = weighted = cofactor, p·p̄ = 1".into())
}

fn structured_determinant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xac07);
    for n in [5usize, 7] {
        let f = field(n);
        for _ in 0..1000 {
            let m = rng.gen_range(2..=12);
            let mut el = || f.element(rng.gen_range(0..1u64 << n)).unwrap();
            let diag: Vec<Felt> = (0..m).map(|_| el()).collect();
            let sup: Vec<Felt> = (0..m - 1).map(|_| el()).collect();
            let b = BidiagOnesRowMatrix::new(&f, diag, sup).unwrap();
            ensure(b.structured_det(&f) == b.to_dense(&f).det(), || format!("mismatch at n = {n}, m = {m}"))?;
        }
    }
    Ok("2000 instances agree with Gaussian elimination".into())
}

fn random_set(rng: &mut ChaCha8Rng, n: usize) -> (IndexSet, Vec<usize>) {
    let mut list: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    // Shuffle to exercise order independence.
    for i in (1..list.len()).rev() {
        list.swap(i, rng.gen_range(0..=i));
    }
    (IndexSet::from_indices(n, list.iter().copied()), list)
}

fn symbol_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xac08);
    for n in [5usize, 11] {
        let f = field(n);
        for _ in 0..200 {
            let c = f.element(rng.gen_range(1..1u64 << n)).unwrap();
            let (i, list) = random_set(&mut rng, n);
            let (j, _) = random_set(&mut rng, n);
            let k = rng.gen_range(0..2 * n);
            let sum = |s: &IndexSet| conj_sum(&f, &c, s).unwrap();
            let prod = |s: &IndexSet| conj_prod(&f, &c, s).unwrap();
            // sum in list order
            let ordered = list.iter().fold(f.zero(), |acc, &e| f.add(&acc, &f.frob(&c, e).unwrap()).unwrap());
            ensure(ordered == sum(&i), || "order dependence in c<I>".into())?;
            ensure(f.add(&sum(&i), &sum(&j)).unwrap() == sum(&i.symmetric_difference(&j)), || {
                "c<I> + c<J> law".into()
            })?;
            ensure(f.frob(&sum(&i), k).unwrap() == sum(&i.shift(k)), || "c<I>^(2^k) shift law".into())?;
            let meet = prod(&i.intersection(&j));
            let lhs = f.mul(&prod(&i), &prod(&j)).unwrap();
            ensure(lhs == f.mul(&prod(&i.union(&j)), &meet).unwrap(), || "c[I]c[J] = c[I∪J]c[I∩J]".into())?;
            let sq = f.mul(&meet, &meet).unwrap();
            ensure(lhs == f.mul(&prod(&i.symmetric_difference(&j)), &sq).unwrap(), || {
                "c[I]c[J] = c[I△J]c[I∩J]²".into()
            })?;
            ensure(f.frob(&prod(&i), k).unwrap() == prod(&i.shift(k)), || "c[I]^(2^k) shift law".into())?;
            let single = IndexSet::from_indices(n, [k % n]);
            ensure(prod(&single) == sum(&single), || "c[i] = c<i>".into())?;
        }
    }
    let f = field(5);
    for v in 0..32 {
        let c = f.element(v).unwrap();
        ensure(conj_sum(&f, &c, &IndexSet::full(5)).unwrap() == f.trace(&c).unwrap(), || "c<Z> ≠ tr(c)".into())?;
        if v != 0 {
            ensure(conj_prod(&f, &c, &IndexSet::full(5)).unwrap().is_one(), || "c[Z] ≠ 1".into())?;
        }
    }
    Ok("400 random tuples plus exhaustive n = 5".into())
}

fn dickson_criterion() -> Outcome {
    let f = field(3);
    let mut pps = 0;
    for mask in 0..512u32 {
        let vals: Vec<u64> = (0..3).map(|i| ((mask >> (3 * i)) & 7) as u64).collect();
        let l = LinPoly::new(&f, vals.iter().map(|&v| f.element(v).unwrap()).collect()).unwrap();
        let bij = table_of(&l).unwrap().is_bijective();
        ensure(is_permutation(&l) == bij, || format!("criterion fails for {l:?}"))?;
        pps += bij as usize;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xac09);
    let mut counts = Vec::new();
    for n in [5usize, 7, 9] {
        let f = field(n);
        let mut hits = 0;
        for _ in 0..500 {
            let coeffs = (0..n).map(|_| f.element(rng.gen_range(0..1u64 << n)).unwrap()).collect();
            let l = LinPoly::new(&f, coeffs).unwrap();
            let bij = table_of(&l).unwrap().is_bijective();
            ensure(is_permutation(&l) == bij, || format!("criterion fails at n = {n} for {l:?}"))?;
            hits += bij as usize;
        }
        counts.push(hits);
    }
    Ok(format!("n = 3: {pps}/512 PPs; n = 5, 7, 9: {counts:?}/500 PPs; all agree"))
}

fn bench_sanity() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_linperm"))
        .args(["--json", "bench", "--n", "31", "--samples", "5", "--methods", "closed,cofactor"])
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    ensure(code == 0, || format!("exit {code}: {}", String::from_utf8_lossy(&out.stderr)))?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<serde_json::Value> = stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    ensure(rows.len() == 2, || format!("expected 2 rows, got {}", rows.len()))?;
    ensure(rows.iter().all(|r| r["agree"] == true), || "methods disagree".into())?;
    let timings: Vec<String> = rows.iter().map(|r| format!("{} {} ns", r["method"], r["median_ns"])).collect();
    Ok(format!("exit 0, outputs identical; {}", timings.join(", ")))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1 closed-form correctness", closed_form_correctness),
        ("AC2 triple agreement", triple_agreement),
        ("AC3 oracle equivalence", oracle_equivalence),
        ("AC4 det D(P~) = 1", tilde_determinant),
        ("AC5 cofactor formulas", cofactor_formulas),
        ("AC6 P1 inverse suite", p1_inverse_suite),
        ("AC7 structured determinant", structured_determinant),
        ("AC8 symbol-calculus laws", symbol_laws),
        ("AC9 Dickson criterion", dickson_criterion),
        ("AC10 bench sanity", bench_sanity),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let res = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS  {name} ({secs:.2}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} ({secs:.2}s): {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
