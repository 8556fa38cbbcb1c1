//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line for
//! each and exits non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use num_traits::One;
use rand::Rng;

use weylmod::algebra::{default_eps, Mat, Scalar};
use weylmod::families::{
    purity_scan, rigidity_check, specialize, trace_link_check, trace_linked_rigidity, FamilyWDRep, RigidityVerdict,
    TraceLink,
};
use weylmod::schur::{
    factorial, hook_content_dim, schur_basis, schur_of_matrix, schur_trace_oracle, young_symmetrizer, Partition,
};
use weylmod::wd::{
    frss_signature, monodromy_filtration, purity_check, sp_construct, wd_direct_sum, wd_tensor, PurityVerdict,
    WeightSpec,
};

type Outcome = Result<String, String>;

/// Number, name, check and optional time limit.
type Criterion = (u32, &'static str, fn() -> Outcome, Option<Duration>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn scan_points() -> Vec<weylmod::algebra::Q> {
    ints(-25, 24)
}

fn family(name: &str) -> FamilyWDRep {
    FamilyWDRep::new(load(name)).unwrap()
}

/// Group algebra product written independently of the library: elements
/// are maps from permutation image vectors to integer coefficients and
/// `(σ·τ)(i) = σ(τ(i))`. The identity `c² = n c` does not depend on the
/// composition order, since the opposite algebra has the same squares.
fn ga_mul(x: &BTreeMap<Vec<usize>, i64>, y: &BTreeMap<Vec<usize>, i64>) -> BTreeMap<Vec<usize>, i64> {
    let mut out: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for (s, a) in x {
        for (t, b) in y {
            let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
            *out.entry(st).or_default() += a * b;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn criterion_1() -> Outcome {
    let mut count = 0;
    for d in 1..=5 {
        for mu in Partition::all(d) {
            let y = young_symmetrizer(&mu);
            let c: BTreeMap<Vec<usize>, i64> = y
                .c
                .terms()
                .iter()
                .map(|(p, q)| (p.images().to_vec(), i64::try_from(q.to_integer()).unwrap()))
                .collect();
            let n = y.n_mu as i64;
            let scaled: BTreeMap<Vec<usize>, i64> = c.iter().map(|(p, v)| (p.clone(), n * v)).collect();
            ensure!(ga_mul(&c, &c) == scaled, "c^2 != n c for {mu}");
            ensure!(y.c.mul(&y.c) == y.c.scale(&weylmod::algebra::q_int(n)), "library product disagrees for {mu}");
            let specht = mu.specht_dim();
            ensure!(specht == count_syt(mu.parts()).into(), "hook-length Specht dimension wrong for {mu}");
            ensure!(specht * y.n_mu == factorial(d), "n_mu * dim Specht != d! for {mu}");
            count += 1;
        }
    }
    ensure!(count == 18, "expected 18 partitions, saw {count}");
    Ok(format!("{count} partitions"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for d in 1..=5 {
        for mu in Partition::all(d) {
            for n in 1..=4usize {
                if n.pow(d as u32) > 4096 {
                    continue;
                }
                let basis = schur_basis(&mu, n).map_err(|e| e.to_string())?;
                let dim = basis.pivots().len();
                ensure!(dim == hook_content_dim(&mu, n), "{mu}, n = {n}: basis dim {dim} != hook-content");
                ensure!(dim == count_ssyt(mu.parts(), n), "{mu}, n = {n}: hook-content != tableau count");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (partition, n) pairs"))
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    for case in 0..100 {
        let n = r.gen_range(1..=3);
        let d = r.gen_range(1..=4);
        let mu = Partition::new(rand_partition(&mut r, d)).unwrap();
        let a = rand_mat(&mut r, n, n);
        let power_sums: Vec<Scalar> = (1..=d).map(|k| a.pow(k).trace()).collect();
        let got = schur_of_matrix(&a, &mu).map_err(|e| e.to_string())?.trace();
        let want = schur_trace_oracle(&power_sums, &mu);
        ensure!(got == want, "case {case}: {mu}, n = {n}: trace {got} != oracle {want}");
    }
    Ok("100 random matrices".into())
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    for case in 0..50 {
        let n = r.gen_range(1..=3);
        let d = r.gen_range(1..=4);
        let mu = Partition::new(rand_partition(&mut r, d)).unwrap();
        let a = rand_mat(&mut r, n, n);
        let b = rand_mat(&mut r, n, n);
        let s = |m: &Mat| schur_of_matrix(m, &mu).map_err(|e| e.to_string());
        ensure!(s(&a.mul(&b))? == s(&a)?.mul(&s(&b)?), "case {case}: S(AB) != S(A)S(B) for {mu}");
        ensure!(s(&Mat::identity(n, qf()))?.is_identity(), "case {case}: S(I) != I for {mu}");
    }
    Ok("50 random pairs".into())
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    for case in 0..100 {
        let n = r.gen_range(1..=8);
        let nilp = rand_nilpotent(&mut r, n);
        let f = monodromy_filtration(&nilp).map_err(|e| e.to_string())?;
        let s = n as i64;
        for k in -s - 1..=s {
            let oracle = kernel_sum_filtration_step(&nilp, k);
            ensure!(same_span(&f.step(k), &oracle), "case {case}: M_{k} disagrees with the kernel-sum oracle");
            ensure!(
                span_contains(&f.step(k - 2), &nilp.mul(&f.step(k))),
                "case {case}: N M_{k} not in M_{}",
                k - 2
            );
        }
        for k in 1..=s {
            let mapped = nilp.pow(k as usize).mul(&f.step(k));
            let joint = span_sum(n, &[mapped, f.step(-k - 1)]);
            ensure!(
                f.graded_dim(k) == f.graded_dim(-k) && joint.cols() == f.step(-k).cols(),
                "case {case}: N^{k} is not an isomorphism gr_{k} -> gr_-{k}"
            );
        }
    }
    Ok("100 random nilpotents".into())
}

fn criterion_6() -> Outcome {
    let eps = default_eps();
    for q in [2u64, 3, 5, 7] {
        for t in 1..=4usize {
            let sp = sp_construct(t, &character(q, Scalar::one())).map_err(|e| e.to_string())?;
            let w = -(t as i64 - 1);
            let given = purity_check(&sp, WeightSpec::Given(w), &eps).map_err(|e| e.to_string())?;
            ensure!(given.is_pure(), "Sp_{t}(1), q = {q}: not pure of weight {w}");
            let inferred = purity_check(&sp, WeightSpec::Infer, &eps).map_err(|e| e.to_string())?;
            ensure!(inferred.weight == Some(w), "Sp_{t}(1), q = {q}: inferred {:?}", inferred.weight);
        }
    }
    let mut r = rng(6);
    for case in 0..20 {
        let q = [2u64, 3, 5][r.gen_range(0..3)];
        let (w1, w2) = (r.gen_range(-2..=2), r.gen_range(-2..=2));
        let a = rand_pure(&mut r, q, w1, 3);
        let b = rand_pure(&mut r, q, w2, 3);
        let ab = wd_tensor(&a, &b).map_err(|e| e.to_string())?;
        let rep = purity_check(&ab, WeightSpec::Given(w1 + w2), &eps).map_err(|e| e.to_string())?;
        ensure!(rep.verdict == PurityVerdict::Pure, "case {case}: tensor of weights {w1}, {w2} not pure");
    }
    Ok("Sp_t(1) for t <= 4, 20 tensor products".into())
}

const FLAGSHIP_PARTITIONS: [&str; 4] = ["1", "2", "1,1", "2,1"];

fn criterion_7() -> Outcome {
    let fam = family("flagship");
    let zero = weylmod::algebra::q_int(0);
    let mut notes = Vec::new();
    for m in FLAGSHIP_PARTITIONS {
        let mu = partition(m);
        let report = rigidity_check(
            &purity_scan(&fam, &mu, &scan_points(), WeightSpec::Infer, &default_eps()).map_err(|e| e.to_string())?,
        );
        ensure!(report.points.len() == 50, "({m}): {} points", report.points.len());
        ensure!(report.verdict == Some(RigidityVerdict::Pass), "({m}): verdict {:?}", report.verdict);
        let at_zero = report.points.iter().find(|p| p.a == zero).unwrap();
        let purity = at_zero.purity.as_ref().unwrap();
        ensure!(purity.verdict == PurityVerdict::Impure, "({m}): a = 0 not flagged impure");
        let generic_at_zero = report.generic_signature.specialize(&zero).map_err(|e| e.to_string())?;
        let differs = at_zero.signature.as_ref() != Some(&generic_at_zero);
        if m == "1,1" {
            // The exterior square of diag(1, 1/5) with N = 0 is (1/5) with
            // N = 0, whose signature is that of the generic fiber.
            ensure!(!differs, "(1,1): a = 0 signature unexpectedly differs");
            notes.push("(1,1) a=0 signature equals generic");
        } else {
            ensure!(differs, "({m}): a = 0 signature equals the generic one");
        }
        let pure = report.points.iter().filter(|p| p.is_pure()).count();
        ensure!(pure == 49, "({m}): {pure} pure points, expected 49");
    }
    Ok(format!("4 partitions x 50 points; {}", notes.join("; ")))
}

fn criterion_8() -> Outcome {
    let f1 = family("flagship");
    let f2 = family("flagship_constant");
    let link = trace_link_check(&f1, &f2, 4).map_err(|e| e.to_string())?;
    ensure!(link == TraceLink::Equal, "traces differ: {link:?}");
    let mut common = Vec::new();
    for m in FLAGSHIP_PARTITIONS {
        let mu = partition(m);
        let tl = trace_linked_rigidity(&f1, &f2, &mu, &scan_points(), WeightSpec::Infer, &default_eps(), 4)
            .map_err(|e| e.to_string())?;
        ensure!(tl.disagreements.is_empty(), "({m}): signatures differ at {:?}", tl.disagreements);
        ensure!(tl.agrees(), "({m}): scans do not both pass");
        ensure!(tl.common_pure_points == 49, "({m}): {} common pure points", tl.common_pure_points);
        common.push(tl.common_pure_points);
    }
    Ok(format!("traces equal to word length 4; common pure points {common:?}"))
}

fn criterion_9() -> Outcome {
    let names = [
        "flagship",
        "flagship_constant",
        "twisted",
        "inertia_family",
        "companion_family",
        "sp3_family",
        "unipotent_frobenius",
    ];
    let mu = partition("1");
    let eps = default_eps();
    let mut pairs = 0;
    for (i, a) in names.iter().enumerate() {
        for b in &names[i..] {
            let (fa, fb) = (family(a), family(b));
            if fa.rep().q() != fb.rep().q() {
                continue;
            }
            let sum = FamilyWDRep::new(wd_direct_sum(fa.rep(), fb.rep()).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let scan = |f: &FamilyWDRep| purity_scan(f, &mu, &scan_points(), WeightSpec::Infer, &eps);
            let (ra, rb, rs) = (
                scan(&fa).map_err(|e| e.to_string())?,
                scan(&fb).map_err(|e| e.to_string())?,
                scan(&sum).map_err(|e| e.to_string())?,
            );
            ensure!(
                rs.generic_signature == ra.generic_signature.union(&rb.generic_signature),
                "{a} + {b}: generic signatures"
            );
            for ((pa, pb), ps) in ra.points.iter().zip(&rb.points).zip(&rs.points) {
                ensure!(ps.defined == (pa.defined && pb.defined), "{a} + {b}: definedness at {}", ps.a);
                if !ps.defined {
                    continue;
                }
                let union = pa.signature.as_ref().unwrap().union(pb.signature.as_ref().unwrap());
                ensure!(ps.signature.as_ref() == Some(&union), "{a} + {b}: signature at {}", ps.a);
                // The sum's signature equals the signature of the specialized sum.
                let direct = frss_signature(&specialize(sum.rep(), &ps.a).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                ensure!(direct == union, "{a} + {b}: specialized sum at {}", ps.a);
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} corpus pairs x 50 points"))
}

fn criterion_10() -> Outcome {
    let input = corpus("flagship");
    let input = input.to_str().unwrap();
    let mut runs = 0;
    for m in FLAGSHIP_PARTITIONS {
        let envelope = || {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = weylmod::cli::run(
                ["weylmod", "scan", "--partition", m, "--points", "-25..24", input],
                &mut out,
                &mut err,
            );
            (code, out)
        };
        let (c1, first) = envelope();
        let (c2, second) = envelope();
        ensure!(c1 == 0 && c2 == 0, "({m}): exit codes {c1}, {c2}");
        ensure!(!first.is_empty() && first == second, "({m}): envelopes differ");
        runs += 2;
    }
    Ok(format!("{runs} runs, identical envelopes"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "symmetrizer law", criterion_1, Some(Duration::from_secs(5))),
        (2, "dimension law", criterion_2, Some(Duration::from_secs(30))),
        (3, "trace oracle", criterion_3, None),
        (4, "functoriality", criterion_4, None),
        (5, "filtration oracle", criterion_5, None),
        (6, "purity calculus", criterion_6, None),
        (7, "rigidity scan", criterion_7, Some(Duration::from_secs(60))),
        (8, "trace-linked rigidity", criterion_8, None),
        (9, "direct-sum scan", criterion_9, None),
        (10, "determinism", criterion_10, None),
    ];
    let mut failed = 0;
    for (n, name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {n:>2} {name}: PASS ({detail}; {elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} {name}: FAIL ({why}; {elapsed:.2?})");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
