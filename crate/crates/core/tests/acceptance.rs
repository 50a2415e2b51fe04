//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Reference values come from oracles written here, independent of the
//! library's decoders and rank machinery: a plain Gaussian elimination, a
//! direct XOR encoder for the binary example, and pair counting.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{seq::index::sample, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lrc_core::analysis::{
    asymptotic_report, bound_lemma1, bound_thm1, bound_thm2, dmin_exact, subcode_bound, Codebook, DminMode,
    DminOptions, Family, Method,
};
use lrc_core::designs::{
    build_affine_design, build_kirkman15, build_zigzag_membership, check_assumption1, design_to_membership,
    lemma1_counts, MembershipMatrix, ZigzagSpec,
};
use lrc_core::gf::GaloisField;
use lrc_core::lrc::{
    construction1, construction2, decode_generic, decode_thm3, decode_thm4, example1_code, repair_symbol,
    verify_availability, Codeword, DecodeOutcome, LrcCode, LrcError,
};
use lrc_core::mds::{gabidulin, systematic_rs};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Rank of the chosen columns of G by straightforward elimination.
fn oracle_rank(code: &LrcCode, cols: &[usize]) -> usize {
    let f = code.field();
    let g = code.generator();
    // rows = chosen columns, as vectors of length k
    let mut m: Vec<Vec<u64>> = cols.iter().map(|&c| (0..code.k()).map(|i| g.get(i, c)).collect()).collect();
    let mut rank = 0;
    for col in 0..code.k() {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = f.inv(m[rank][col]).unwrap();
        let pivot: Vec<u64> = m[rank].iter().map(|&v| f.mul(v, inv)).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (a, &b) in row.iter_mut().zip(&pivot) {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

fn survivors(n: usize, erased: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !erased.contains(i)).collect()
}

fn random_message(rng: &mut ChaCha8Rng, code: &LrcCode) -> Vec<u64> {
    (0..code.k()).map(|_| rng.gen_range(0..code.field().order())).collect()
}

fn all_subsets(n: usize, e: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, e: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == e {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, e, cur, out);
            cur.pop();
        }
    }
    rec(0, n, e, &mut cur, &mut out);
    out
}

fn field(p: u64, m: u32) -> Arc<GaloisField> {
    GaloisField::with_default(p, m).unwrap().shared()
}

fn code_c3() -> LrcCode {
    let rm = design_to_membership(&build_affine_design(3).unwrap(), 2).unwrap();
    construction1(&systematic_rs(field(2, 4), 13, 9).unwrap(), &rm, 3, 2).unwrap()
}

fn code_c4() -> LrcCode {
    let rm = design_to_membership(&build_kirkman15(), 2).unwrap();
    construction1(&systematic_rs(field(2, 5), 22, 15).unwrap(), &rm, 3, 2).unwrap()
}

fn code_c5() -> LrcCode {
    let rm = design_to_membership(&build_affine_design(2).unwrap(), 2).unwrap();
    construction2(&gabidulin(field(2, 7), 2, 7, 4).unwrap(), &rm, 2, 2).unwrap()
}

fn exhaustive() -> DminOptions {
    DminOptions {
        mode: DminMode::ErasureRank,
        ..DminOptions::default()
    }
}

/// Erasing the witness support of a minimum-weight codeword must defeat
/// every decoder.
fn check_witness(code: &LrcCode, support: &[usize], expected: usize) -> Result<(), String> {
    let erased: Vec<usize> = support.iter().map(|s| s - 1).collect();
    ensure!(erased.len() == expected, "witness weight {} != {expected}", erased.len());
    let rank = oracle_rank(code, &survivors(code.n(), &erased));
    ensure!(rank < code.k(), "witness erasure set leaves rank {rank}");
    let cw = code.encode(&vec![1; code.k()]).unwrap().with_erasures(&erased);
    ensure!(
        matches!(decode_generic(code, &cw), Err(LrcError::Unrecoverable { .. })),
        "generic decoder did not report the witness pattern as unrecoverable"
    );
    Ok(())
}

fn c1_example_reproduction() -> Outcome {
    let code = example1_code();
    for idx in 0..8u64 {
        let m = [idx & 1, (idx >> 1) & 1, (idx >> 2) & 1];
        let expect = vec![m[0], m[1], m[2], m[0], m[0] ^ m[1], m[1] ^ m[2], m[0] ^ m[2]];
        let cw = code.encode(&m).unwrap();
        ensure!(cw.values().unwrap() == expect, "encoding of {m:?}");
        for s in 0..3 {
            for g in 0..2 {
                let got = repair_symbol(&code, &cw.with_erasures(&[s]), s, g).map_err(|e| e.to_string())?;
                ensure!(got == expect[s], "repair of symbol {} via group {}", s + 1, g + 1);
            }
        }
    }
    let printed: [[&[usize]; 2]; 3] = [[&[4], &[2, 5]], [&[1, 5], &[3, 6]], [&[2, 6], &[1, 7]]];
    let rep = verify_availability(&code);
    ensure!(rep.ok() && rep.t_achieved == 2, "availability failures {:?}", rep.failures);
    for (s, groups) in printed.iter().enumerate() {
        let got: Vec<Vec<usize>> = rep.symbols[s].groups.iter().map(|g| g.members.clone()).collect();
        ensure!(got == groups.map(<[usize]>::to_vec), "groups of symbol {}: {got:?}", s + 1);
        ensure!(rep.symbols[s].groups.iter().all(|g| g.recovers), "group check of symbol {}", s + 1);
    }
    Ok("8 messages encode as printed; 6 groups certified; 48 repairs exact".into())
}

fn c2_fixture_bounds() -> Outcome {
    ensure!(bound_thm1(7, 3, 2, 2) == 4, "bound_thm1");
    ensure!(bound_thm2(7, 3, 2, 2) == 4, "bound_thm2");
    let code = example1_code();
    let rep = dmin_exact(
        &code,
        &DminOptions {
            mode: DminMode::WeightEnum,
            ..DminOptions::default()
        },
    )
    .map_err(|e| e.to_string())?;
    ensure!(rep.method == Method::WeightEnumeration && rep.exhaustive, "method {:?}", rep.method);
    // independent oracle: minimum weight over the 7 nonzero codewords
    let oracle = (1..8u64)
        .map(|i| {
            let m = [i & 1, (i >> 1) & 1, (i >> 2) & 1];
            code.encode(&m).unwrap().values().unwrap().iter().filter(|&&v| v != 0).count()
        })
        .min()
        .unwrap();
    ensure!(rep.d_min == Some(3) && oracle == 3, "d_min {:?}, oracle {oracle}", rep.d_min);
    ensure!(rep.optimal_thm1 == Some(false), "fixture flagged optimal");
    Ok("bound_thm1 = bound_thm2 = 4; d_min = 3 by weight enumeration; non-optimal".into())
}

fn c3_construction1_small() -> Outcome {
    let code = code_c3();
    ensure!((code.n(), code.k()) == (17, 9), "shape {:?}", code.params());
    let patterns = all_subsets(17, 4);
    ensure!(patterns.len() == 2380, "pattern count");
    for e in &patterns {
        let rank = oracle_rank(&code, &survivors(17, e));
        ensure!(rank == 9, "4-erasure pattern {e:?} has rank {rank}");
    }
    let rep = dmin_exact(&code, &exhaustive()).map_err(|e| e.to_string())?;
    let bound = bound_thm1(17, 9, 3, 2);
    ensure!(bound == 5 && rep.d_min == Some(5), "d_min {:?}, bound {bound}", rep.d_min);
    ensure!(rep.optimal_thm1 == Some(true), "optimal flag");
    check_witness(&code, &rep.witness.unwrap().support, 5)?;
    Ok("n = 17; all 2380 4-erasure patterns rank 9; 5-erasure witness fails; d_min = 5 = bound".into())
}

fn c4_construction1_kirkman() -> Outcome {
    let code = code_c4();
    ensure!((code.n(), code.k()) == (30, 15), "shape {:?}", code.params());
    let rep = dmin_exact(&code, &exhaustive()).map_err(|e| e.to_string())?;
    ensure!(rep.exhaustive && rep.method == Method::ErasureRank, "not exhaustive: {:?}", rep.method);
    ensure!(rep.d_min == Some(8) && bound_thm1(30, 15, 3, 2) == 8, "d_min {:?}", rep.d_min);
    let checks = rep.checks;
    check_witness(&code, &rep.witness.unwrap().support, 8)?;

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = 0;
    for _ in 0..100_000 {
        let msg = random_message(&mut rng, &code);
        let erased = sample(&mut rng, 30, 7).into_vec();
        let cw = code.encode(&msg).unwrap().with_erasures(&erased);
        match decode_thm3(&code, &cw) {
            Ok(DecodeOutcome { message, .. }) if message == msg => {}
            _ => failures += 1,
        }
    }
    ensure!(failures == 0, "{failures} decode failures");
    Ok(format!(
        "n = 30; d_min = 8 exhaustively ({checks} rank checks); 1e5 random 7-erasure decodes, 0 failures; 8-erasure witness fails"
    ))
}

fn c5_construction2() -> Outcome {
    let code = code_c5();
    ensure!((code.n(), code.k()) == (11, 4), "shape {:?}", code.params());
    let rep = verify_availability(&code);
    ensure!(rep.ok() && rep.all_symbol && rep.max_group_size <= 2, "availability {:?}", rep.failures);
    let big_n = 6;
    let eq11 = big_n + big_n / 2 - 4 - 4 / 2 + 2 + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let patterns = all_subsets(11, 5);
    ensure!(patterns.len() == 462, "pattern count");
    for e in &patterns {
        let msg = random_message(&mut rng, &code);
        let cw = code.encode(&msg).unwrap().with_erasures(e);
        let out = decode_thm4(&code, &cw).map_err(|err| format!("{e:?}: {err}"))?;
        ensure!(out.message == msg && out.within_guarantee, "pattern {e:?}");
    }
    let d = dmin_exact(&code, &exhaustive()).map_err(|e| e.to_string())?;
    ensure!(eq11 == 6 && d.d_min == Some(6), "d_min {:?}", d.d_min);
    check_witness(&code, &d.witness.unwrap().support, 6)?;
    Ok("n = 11; all-symbol locality, groups <= 2; all 462 5-erasure patterns decode; d_min = 6".into())
}

fn c6_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut summary = Vec::new();
    for (name, code, thm4) in [("c3", code_c3(), false), ("c4", code_c4(), false), ("c5", code_c5(), true)] {
        let guarantee = code.erasure_guarantee().unwrap();
        let (mut done, mut structured) = (0, 0);
        while done < 10_000 {
            let e = rng.gen_range(1..=guarantee + 2);
            let erased = sample(&mut rng, code.n(), e).into_vec();
            if oracle_rank(&code, &survivors(code.n(), &erased)) < code.k() {
                continue;
            }
            let msg = random_message(&mut rng, &code);
            let cw: Codeword = code.encode(&msg).unwrap().with_erasures(&erased);
            let generic = decode_generic(&code, &cw).map_err(|err| err.to_string())?;
            let fast = if thm4 { decode_thm4(&code, &cw) } else { decode_thm3(&code, &cw) }
                .map_err(|err| format!("{name} {erased:?}: {err}"))?;
            ensure!(fast.message == generic && generic == msg, "{name}: disagreement on {erased:?}");
            if fast.path != lrc_core::lrc::DecodePath::Generic {
                structured += 1;
            }
            done += 1;
        }
        summary.push(format!("{name}: 10000 agree ({structured} structured)"));
    }
    Ok(summary.join("; "))
}

/// Any two points share at most one block across all classes.
fn pairs_unique(m: &MembershipMatrix) -> bool {
    let k = m.k();
    let mut seen = vec![0u8; k * k];
    for col in m.columns() {
        for (a, &x) in col.iter().enumerate() {
            for &y in &col[a + 1..] {
                seen[x * k + y] += 1;
                if seen[x * k + y] > 1 {
                    return false;
                }
            }
        }
    }
    true
}

fn c7_design_properties() -> Outcome {
    let d = build_kirkman15();
    let mut pairs = vec![0usize; 15 * 15];
    for b in d.blocks() {
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                pairs[x.min(y) * 15 + x.max(y)] += 1;
            }
        }
    }
    let covered = (0..15).flat_map(|x| (x + 1..15).map(move |y| (x, y))).filter(|&(x, y)| pairs[x * 15 + y] == 1).count();
    ensure!(covered == 105, "{covered} of 105 pairs covered once");
    ensure!(d.classes().len() == 7, "class count");
    for class in d.classes() {
        let mut pts: Vec<usize> = class.iter().flatten().copied().collect();
        pts.sort_unstable();
        ensure!(pts == (0..15).collect::<Vec<_>>(), "class is not a partition");
    }
    ensure!(d.verify().is_valid(), "design self-check");
    for (r, t) in [(2, 2), (3, 2), (2, 3)] {
        let spec = ZigzagSpec::new(r, t).unwrap();
        let m = build_zigzag_membership(spec).unwrap();
        let rep = check_assumption1(&m, spec.k(), r, t).unwrap();
        ensure!(rep.conformant, "zigzag ({r},{t}): {:?}", rep.violations);
        ensure!(pairs_unique(&m), "zigzag ({r},{t}) repeats a pair");
    }
    Ok("Kirkman: 105 pairs once, 7 parallel classes; zigzag (2,2), (3,2), (2,3) conformant with unique pairs".into())
}

fn c8_lemma1() -> Outcome {
    let mut built: Vec<(String, MembershipMatrix, usize, usize)> = Vec::new();
    let kts = build_kirkman15();
    for t in 1..=7 {
        built.push((format!("kirkman t={t}"), design_to_membership(&kts, t).unwrap(), 3, t));
    }
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let d = build_affine_design(q).unwrap();
        for t in 1..=d.classes().len() {
            built.push((format!("affine q={q} t={t}"), design_to_membership(&d, t).unwrap(), q as usize, t));
        }
    }
    for (r, t) in [(2, 1), (2, 2), (3, 2), (2, 3), (3, 3), (4, 2)] {
        built.push((
            format!("zigzag r={r} t={t}"),
            build_zigzag_membership(ZigzagSpec::new(r, t).unwrap()).unwrap(),
            r,
            t,
        ));
    }
    let mut conformant = 0;
    for (name, m, r, t) in &built {
        let rep = check_assumption1(m, m.k(), *r, *t).unwrap();
        ensure!(rep.conformant, "{name} not conformant");
        let lb = bound_lemma1(m.k(), *r, *t) as usize;
        ensure!(m.column_count() == lb, "{name}: {} columns, bound {lb}", m.column_count());
        ensure!(lemma1_counts(m).holds(), "{name}: inequality");
        conformant += 1;
    }
    let ex = example1_code();
    let c = lemma1_counts(ex.membership().unwrap());
    ensure!(c.holds(), "example matrix violates the inequality");
    Ok(format!("{conformant} conformant matrices meet ceil(kt/r) exactly; inequality holds for all, example included"))
}

fn c9_subcode() -> Outcome {
    let code = example1_code();
    let cb = Codebook::from_code(&code).map_err(|e| e.to_string())?;
    let tr = subcode_bound(&cb, code.all_groups(), 2, 2).map_err(|e| e.to_string())?;
    ensure!(tr.steps.iter().all(|s| s.a_size <= 4 && s.a_ok), "a_j > tr");
    // |C_j| * q^(a_j - 1) >= |C_{j-1}|, recomputed here
    for s in &tr.steps {
        ensure!(s.size_after * 2usize.pow(s.a_size as u32 - 1) >= s.size_before, "shrink at step {}", s.j);
    }
    let ell_lower = (3usize - 1).div_ceil(2 * 2 - 2 + 1);
    ensure!(ell_lower == 1 && tr.ell >= ell_lower, "ell = {}", tr.ell);
    ensure!(tr.implied_bound >= 3, "implied bound {}", tr.implied_bound);
    Ok(format!("ell = {}, implied bound {} >= d_min = 3", tr.ell, tr.implied_bound))
}

fn c10_asymptotics() -> Outcome {
    let mut lines = Vec::new();
    for (t, range) in [(2usize, vec![2usize, 3, 4, 5, 6, 7]), (3, vec![3, 4, 5, 6])] {
        let (rows, increasing) = asymptotic_report(Family::Zigzag, t, &range).map_err(|e| e.to_string())?;
        // recompute each ratio and the ordering by cross-multiplication
        for w in rows.windows(2) {
            let (a, b) = (w[0].ratio, w[1].ratio);
            ensure!((a.num as i128) * (b.den as i128) < (b.num as i128) * (a.den as i128), "not increasing at r = {}", w[1].r);
        }
        ensure!(increasing, "report flag");
        ensure!(rows.iter().all(|r| r.ratio.num < r.ratio.den), "ratio reached 1");
        lines.push(rows.iter().map(|r| r.ratio.to_string()).collect::<Vec<_>>().join(" < "));
    }
    Ok(lines.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("1 example reproduction", c1_example_reproduction, Duration::from_secs(1)),
        ("2 fixture bounds", c2_fixture_bounds, Duration::from_secs(1)),
        ("3 construction I (17,9,3,2)", c3_construction1_small, Duration::from_secs(5)),
        ("4 construction I (30,15,3,2)", c4_construction1_kirkman, Duration::from_secs(15 * 60)),
        ("5 construction II (11,4,2,2)", c5_construction2, Duration::from_secs(10)),
        ("6 oracle equivalence", c6_oracle_equivalence, Duration::MAX),
        ("7 design properties", c7_design_properties, Duration::from_secs(5)),
        ("8 column-count bound equality", c8_lemma1, Duration::MAX),
        ("9 subcode trace", c9_subcode, Duration::from_secs(1)),
        ("10 asymptotic monotonicity", c10_asymptotics, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|msg| {
            if elapsed > limit {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            } else {
                Ok(msg)
            }
        });
        match result {
            Ok(msg) => println!("criterion {name}: PASS ({elapsed:.2?}) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({elapsed:.2?}) {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
