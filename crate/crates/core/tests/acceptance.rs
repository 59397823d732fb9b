//! Acceptance run: one PASS/FAIL line per criterion. Oracles here are
//! written independently of the library code they check.
//!
//! The process exits nonzero on any failure other than the replay sign
//! mismatches recorded in the decisions ledger.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permut3::polyring::{res_subresultant, resultant_with, MPoly, MPolyRing, ResultantStrategy};
use permut3::ppcheck::sweep::{case22_family, run_sweep, Bruteforce, SweepConfig, SweepMode};
use permut3::ppcheck::{square_decompose, williams_predicate};
use permut3::replay::{all_steps, run_all, run_steps, FixtureSet, StepKind};
use permut3::{make_tower, Fq, GfTable};

/// Steps whose displayed value differs from the computed one by a sign.
const KNOWN_SIGN_CONFLICTS: [&str; 5] = ["3.15", "3.56-res-S1", "3.56-res-S2", "after-3.135-P11", "after-3.135-Q11"];

struct Verdict {
    pass: bool,
    /// A failure that is documented and does not block the run.
    known: bool,
    detail: String,
}

fn ok(pass: bool, detail: String) -> Verdict {
    Verdict { pass, known: false, detail }
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("full sweeps n=1, n=2: brute force == condition", crit1),
        ("full sweep n=3 via mu_{q+1}, 10^4 brute-force subsample", crit2),
        ("sampled sweep n=5 with family representatives", crit3),
        ("symbolic replay, exact equality", crit4),
        ("irreducibility battery", crit5),
        ("Williams criterion, exhaustive at q=9 and q=27", crit6),
        ("PRS resultant == Sylvester determinant", crit7),
        ("square decomposition at q=27", crit8),
    ];
    let mut blocking = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = f();
        let tag = match (v.pass, v.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        if !v.pass && !v.known {
            blocking += 1;
        }
        println!("criterion {}: {tag}: {name} [{:.1}s] {}", i + 1, start.elapsed().as_secs_f64(), v.detail);
    }
    if blocking > 0 {
        std::process::exit(1);
    }
}

fn sweep(n: u32, cfg: SweepConfig) -> (usize, usize, usize) {
    let ctx = make_tower(n).unwrap();
    let out = run_sweep(&ctx, &cfg).unwrap();
    // agree covers bruteforce == pp where it ran
    let brute_vs_cond = out.rows.iter().filter(|r| r.bruteforce.is_some_and(|b| b != r.cond14)).count();
    (out.summary.pairs_tested, out.summary.mismatches + brute_vs_cond, out.summary.bruteforce_checked)
}

fn crit1() -> Verdict {
    let mut details = Vec::new();
    let mut pass = true;
    for (n, expected) in [(1u32, 64usize), (2, 6400)] {
        let (pairs, bad, brute) = sweep(n, SweepConfig::standard(n, SweepMode::Full));
        pass &= pairs == expected && brute == expected && bad == 0;
        details.push(format!("n={n}: {pairs} pairs, {bad} mismatches"));
    }
    ok(pass, details.join("; "))
}

fn crit2() -> Verdict {
    let cfg = SweepConfig {
        mode: SweepMode::Full,
        bruteforce: Bruteforce::Sample { size: 10_000, seed: 3 },
        orbit_dedup: false,
        with_family: false,
    };
    let start = Instant::now();
    let (pairs, bad, brute) = sweep(3, cfg);
    let secs = start.elapsed().as_secs_f64();
    ok(
        pairs == 728 * 728 && brute == 10_000 && bad == 0 && secs < 600.0,
        format!("{pairs} pairs, {brute} brute-forced, {bad} mismatches"),
    )
}

fn crit3() -> Verdict {
    let ctx = make_tower(5).unwrap();
    let family = case22_family(&ctx);
    let cfg = SweepConfig::standard(5, SweepMode::Sample { size: 100_000, seed: 5 });
    let out = run_sweep(&ctx, &cfg).unwrap();
    // every family member's representative is in the sweep and passes
    let fam: BTreeSet<(String, String)> = permut3::ppcheck::sweep::orbit_representatives(&ctx, &family)
        .into_iter()
        .map(|(a, b)| (ctx.format(a), ctx.format(b)))
        .collect();
    let fam_rows: Vec<_> = out.rows.iter().filter(|r| fam.contains(&(r.a.clone(), r.b.clone()))).collect();
    let fam_ok = fam_rows.len() == fam.len() && fam_rows.iter().all(|r| r.pp && r.cond14);
    ok(
        out.summary.pairs_tested >= 100_000 && out.summary.mismatches == 0 && !fam.is_empty() && fam_ok,
        format!(
            "{} pairs ({} family representatives, all PP), {} mismatches",
            out.summary.pairs_tested,
            fam.len(),
            out.summary.mismatches
        ),
    )
}

fn crit4() -> Verdict {
    let fx = FixtureSet::embedded().unwrap();
    let report = run_all(&fx, true);
    let failed: Vec<&str> = report.failed().map(|s| s.step.as_str()).collect();
    let known = failed.iter().all(|s| KNOWN_SIGN_CONFLICTS.contains(s))
        && report.failed().all(|s| s.diff_terms_count > 0);
    let mut detail = format!("{} steps, {} failed", report.steps.len(), failed.len());
    if !failed.is_empty() {
        detail += &format!(": {}", failed.join(", "));
        if known {
            detail += " (displayed values off by a sign; see decisions ledger)";
        }
    }
    Verdict { pass: failed.is_empty(), known, detail }
}

// ---- criterion 5 ----

/// Dense F_3 polynomial, lowest coefficient first, no trailing zeros.
type P3 = Vec<u8>;

fn trim(mut p: P3) -> P3 {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn rem3(a: &[u8], m: &[u8]) -> P3 {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    let inv = m[dm]; // 1 and 2 are self-inverse mod 3
    while a.len() > dm {
        let c = a.pop().unwrap() * inv % 3;
        let shift = a.len() - dm;
        for (i, &mi) in m[..dm].iter().enumerate() {
            a[shift + i] = (a[shift + i] + 3 * 3 - c * mi) % 3;
        }
        a = trim(a);
    }
    trim(a)
}

fn gcd3(a: &[u8], b: &[u8]) -> P3 {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem3(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Berlekamp: f is irreducible iff it is squarefree and Q - I has nullity 1.
fn berlekamp_irreducible(f: &[u8]) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    let deriv: P3 = trim(f.iter().enumerate().skip(1).map(|(i, &c)| (i as u8 % 3) * c % 3).collect());
    if deriv.is_empty() || gcd3(f, &deriv).len() > 1 {
        return false;
    }
    // row i: x^(3i) mod f
    let mut rows = Vec::with_capacity(n);
    let mut cur: P3 = vec![1];
    for i in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        row[i] = (row[i] + 2) % 3;
        rows.push(row);
        let mut shifted = vec![0, 0, 0];
        shifted.extend_from_slice(&cur);
        cur = rem3(&shifted, f);
    }
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col];
        let pivot = rows[rank].clone();
        for r in 0..n {
            if r != rank && rows[r][col] != 0 {
                let c = rows[r][col] * inv % 3;
                for (x, &y) in rows[r].iter_mut().zip(&pivot) {
                    *x = (*x + 9 - c * y) % 3;
                }
            }
        }
        rank += 1;
    }
    n - rank == 1
}

fn dense(p: &MPoly, var: usize) -> P3 {
    let mut out = vec![0u8; p.degree(var) as usize + 1];
    for (m, c) in p.terms() {
        out[p.exps(*m)[var] as usize] = *c % 3;
    }
    out
}

fn crit5() -> Verdict {
    let fx = FixtureSet::embedded().unwrap();
    let steps: Vec<_> = all_steps().into_iter().filter(|s| s.kind == StepKind::Irreducible).collect();
    let report = run_steps(&fx, &steps, true);
    let step_fail: Vec<&str> = report.failed().map(|s| s.step.as_str()).collect();
    // every univariate written factor of the inputs, rechecked by Berlekamp
    let mut inputs = BTreeSet::new();
    for s in &report.steps {
        inputs.extend(s.inputs.iter().cloned());
    }
    let (mut checked, mut wrong) = (0, Vec::new());
    for id in &inputs {
        for (p, _) in &fx.get(id).unwrap().factors {
            if let [var] = p.support()[..] {
                checked += 1;
                if !berlekamp_irreducible(&dense(p, var)) {
                    wrong.push(id.clone());
                }
            }
        }
    }
    // the oracle itself: x^2+1 and x^7-x^5-1 irreducible, x^3+x^2+x+1 and x^4-1 not
    let sane = berlekamp_irreducible(&[1, 0, 1])
        && berlekamp_irreducible(&[2, 0, 0, 0, 0, 2, 0, 1])
        && !berlekamp_irreducible(&[1, 1, 1, 1])
        && !berlekamp_irreducible(&[2, 0, 0, 0, 1]);
    ok(
        sane && step_fail.is_empty() && wrong.is_empty() && checked > 0,
        format!(
            "{} steps, failed: {:?}; {checked} factors rechecked by Berlekamp, reducible: {:?}",
            report.steps.len(),
            step_fail,
            wrong
        ),
    )
}

// ---- criterion 6 ----

fn eval(t: &GfTable, hi_first: &[Fq], x: Fq) -> Fq {
    hi_first.iter().fold(Fq(0), |acc, &c| t.add(t.mul(acc, x), c))
}

fn roots(t: &GfTable, hi_first: &[Fq]) -> usize {
    t.elements().filter(|&x| eval(t, hi_first, x).0 == 0).count()
}

fn crit6() -> Verdict {
    let mut details = Vec::new();
    let mut pass = true;
    for n in [2, 3] {
        let t = GfTable::new(3, n).unwrap();
        let els: Vec<Fq> = t.elements().collect();
        let squares: BTreeSet<u32> = els.iter().filter(|x| x.0 != 0).map(|&x| t.mul(x, x).0).collect();
        let (mut admissible, mut bad) = (0u64, 0u64);
        for &c3 in &els[1..] {
            for &c2 in &els[1..] {
                for &c1 in &els {
                    for &c0 in &els {
                        let c1_2 = t.mul(c1, c1);
                        let c2_2 = t.mul(c2, c2);
                        let delta = t.add(
                            t.sub(t.mul(t.mul(c1_2, c1), c3), t.mul(c1_2, c2_2)),
                            t.mul(c0, t.mul(c2_2, c2)),
                        );
                        if delta.0 == 0 {
                            continue;
                        }
                        admissible += 1;
                        // x2^3 + (c2^4/Δ) x2 + c2^3 c3/Δ
                        let depressed = [
                            t.from_prime(1),
                            Fq(0),
                            t.div(t.mul(c2_2, c2_2), delta),
                            t.div(t.mul(t.mul(c2_2, c2), c3), delta),
                        ];
                        let unique = roots(&t, &depressed) == 1;
                        let unique_orig = roots(&t, &[c3, c2, c1, c0]) == 1;
                        let nonsquare = !squares.contains(&t.neg(delta).0);
                        let pred = williams_predicate(&t, [c3, c2, c1, c0]).unwrap();
                        if !(unique == nonsquare && pred == nonsquare && unique_orig == unique) {
                            bad += 1;
                        }
                    }
                }
            }
        }
        pass &= bad == 0 && admissible > 0;
        details.push(format!("q={}: {admissible} admissible, {bad} disagreements", t.order()));
    }
    ok(pass, details.join("; "))
}

// ---- criterion 7 ----

/// Determinant by cofactor expansion along rows, memoised on the set of
/// columns already used.
fn det(m: &[Vec<MPoly>], nvars: usize) -> MPoly {
    fn go(m: &[Vec<MPoly>], row: usize, used: u32, memo: &mut HashMap<u32, MPoly>, nvars: usize) -> MPoly {
        if row == m.len() {
            return MPoly::one(nvars);
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = MPoly::zero(nvars);
        let mut sign = 1;
        for col in 0..m.len() {
            if used & (1 << col) != 0 {
                continue;
            }
            if !m[row][col].is_zero() {
                let minor = go(m, row + 1, used | (1 << col), memo, nvars);
                let t = m[row][col].mul(&minor);
                acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            sign = -sign;
        }
        memo.insert(used, acc.clone());
        acc
    }
    go(m, 0, 0, &mut HashMap::new(), nvars)
}

fn sylvester(p: &MPoly, q: &MPoly, var: usize) -> MPoly {
    let nv = p.nvars();
    let (a, b) = (p.coeffs_in(var), q.coeffs_in(var));
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = vec![vec![MPoly::zero(nv); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    det(&rows, nv)
}

fn random_poly(rng: &mut ChaCha8Rng, nv: usize, var: usize, deg: u32) -> MPoly {
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=6) {
        let exps: Vec<u32> = (0..nv).map(|j| if j == var { rng.gen_range(0..=deg) } else { rng.gen_range(0..=2) }).collect();
        terms.push(MPoly::monomial(nv, &exps, rng.gen_range(1..=2)));
    }
    let mut exps = vec![0; nv];
    exps[var] = deg;
    let lead = MPoly::monomial(nv, &exps, 1);
    terms.into_iter().fold(lead, |acc, t| acc.add(&t))
}

fn crit7() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut bad, mut instances) = (0, 0);
    while instances < 100 {
        let nv = rng.gen_range(1..=3);
        let var = rng.gen_range(0..nv);
        let dp = rng.gen_range(1..=4);
        let p = random_poly(&mut rng, nv, var, dp);
        let dq = rng.gen_range(1..=4);
        let q = random_poly(&mut rng, nv, var, dq);
        if p.degree(var) == 0 || q.degree(var) == 0 {
            continue;
        }
        instances += 1;
        let oracle = sylvester(&p, &q, var);
        let ring = MPolyRing { nvars: nv };
        let prs = res_subresultant(&ring, &p.coeffs_in(var), &q.coeffs_in(var));
        let via_api = resultant_with(&p, &q, var, ResultantStrategy::Prs).unwrap();
        if prs != oracle || via_api != oracle {
            bad += 1;
        }
    }
    ok(bad == 0, format!("{instances} instances, {bad} disagreements"))
}

// ---- criterion 8 ----

struct Quartic<'a> {
    t: &'a GfTable,
    squares: BTreeSet<u32>,
}

impl Quartic<'_> {
    fn mul(&self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        let mut out = vec![Fq(0); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.t.add(out[i + j], self.t.mul(x, y));
            }
        }
        out
    }

    fn add(&self, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        let mut out = vec![Fq(0); a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(Fq(0));
            let y = b.get(i).copied().unwrap_or(Fq(0));
            *o = self.t.add(x, y);
        }
        out
    }

    fn scale(&self, a: &[Fq], c: Fq) -> Vec<Fq> {
        a.iter().map(|&x| self.t.mul(x, c)).collect()
    }

    fn at(&self, lo_first: &[Fq], y: Fq) -> Fq {
        lo_first.iter().rev().fold(Fq(0), |acc, &c| self.t.add(self.t.mul(acc, y), c))
    }

    /// E(y) is a nonzero square wherever C2(y) E(y) != 0.
    fn hypothesis(&self, e: &[Fq], c2: &[Fq]) -> bool {
        self.t.elements().all(|y| {
            let v = self.at(e, y);
            v.0 == 0 || self.at(c2, y).0 == 0 || self.squares.contains(&v.0)
        })
    }

    /// e0..e4 as D(Y)^2, with the coefficient relations and the two
    /// eliminated identities checked in characteristic 3 sign conventions.
    fn decomposes(&self, e: [Fq; 5]) -> bool {
        let t = self.t;
        let d = square_decompose(t, e);
        if !d.exists {
            return false;
        }
        let [e0, e1, e2, e3, e4] = e;
        let (d0, d1, d2) = (d.d0, d.d1, d.d2);
        let rel = e0 == t.mul(d0, d0)
            && e1 == t.neg(t.mul(d0, d1))
            && e2 == t.sub(t.mul(d1, d1), t.mul(d0, d2))
            && e3 == t.neg(t.mul(d1, d2))
            && e4 == t.mul(d2, d2);
        let i1 = t.sub(t.mul(e0, t.mul(e3, e3)), t.mul(t.mul(e1, e1), e4));
        let i2 = t.sub(t.sub(t.mul(e3, t.mul(e3, e3)), t.mul(e1, t.mul(e4, e4))), t.mul(e2, t.mul(e3, e4)));
        rel && i1.0 == 0 && i2.0 == 0
    }
}

/// C3 and C0, C1, C2 of degree ≤ 1 (lowest first), built so the squareness
/// hypothesis holds with C2 = c (Y - r): with Y' = Y - r the low three
/// coefficients of -D^2/k - C1^3 C3 + C1^2 C2^2 must vanish, which fixes C3
/// and D2 once D1 = 0.
fn structured_instance(q: &Quartic<'_>, rng: &mut ChaCha8Rng, k: Fq) -> (Fq, [Vec<Fq>; 3]) {
    let t = q.t;
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let x = t.random(rng);
        if x.0 != 0 {
            break x;
        }
    };
    let (d0, alpha, c) = (nonzero(rng), nonzero(rng), nonzero(rng));
    let (beta, r) = (t.random(rng), t.random(rng));
    let c3 = t.neg(t.div(t.mul(d0, d0), t.mul(k, t.mul(alpha, t.mul(alpha, alpha)))));
    let d2 = t.div(t.mul(t.mul(alpha, alpha), t.mul(t.mul(c, c), k)), t.mul(t.from_prime(2), d0));
    // in Y': C1 = alpha + beta Y', C2 = c Y', D = d0 + d2 Y'^2
    let c1 = vec![alpha, beta];
    let c2 = vec![Fq(0), c];
    let dd = [d0, Fq(0), d2];
    let minus_inv_k = t.neg(t.inv(k));
    let rhs = q.add(
        &q.add(&q.scale(&q.mul(&dd, &dd), minus_inv_k), &q.scale(&q.mul(&q.mul(&c1, &c1), &c1), t.neg(c3))),
        &q.mul(&q.mul(&c1, &c1), &q.mul(&c2, &c2)),
    );
    // divide by c^3 Y'^3
    let c0: Vec<Fq> = rhs[3..].iter().map(|&x| t.div(x, t.mul(c, t.mul(c, c)))).collect();
    // back to Y: Y' = Y - r
    let shift = |p: &[Fq]| -> Vec<Fq> {
        let lin = [t.neg(r), t.from_prime(1)];
        let mut out = vec![Fq(0)];
        let mut pow = vec![t.from_prime(1)];
        for &coef in p {
            out = q.add(&out, &q.scale(&pow, coef));
            pow = q.mul(&pow, &lin);
        }
        out
    };
    (c3, [shift(&c0), shift(&c1), shift(&c2)])
}

fn e_poly(q: &Quartic<'_>, k: Fq, c3: Fq, [c0, c1, c2]: &[Vec<Fq>; 3]) -> [Fq; 5] {
    let t = q.t;
    let c1sq = q.mul(c1, c1);
    let delta = q.add(
        &q.add(&q.scale(&q.mul(&c1sq, c1), c3), &q.scale(&q.mul(&c1sq, &q.mul(c2, c2)), t.neg(t.from_prime(1)))),
        &q.mul(c0, &q.mul(&q.mul(c2, c2), c2)),
    );
    let e = q.scale(&delta, t.neg(k));
    let mut out = [Fq(0); 5];
    for (o, x) in out.iter_mut().zip(e) {
        *o = x;
    }
    out
}

fn crit8() -> Verdict {
    let t = GfTable::new(3, 3).unwrap();
    let squares: BTreeSet<u32> = t.elements().filter(|x| x.0 != 0).map(|x| t.mul(x, x).0).collect();
    let q = Quartic { t: &t, squares };
    let k = t.elements().find(|x| x.0 != 0 && !q.squares.contains(&x.0)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);

    // 100 instances of E = -k (C1^3 C3 - C1^2 C2^2 + C0 C2^3) that satisfy the
    // hypothesis; half drawn blindly and kept if they happen to, half built
    let (mut instances, mut blind_hits, mut blind_tries, mut failed) = (0, 0, 0u64, 0);
    while instances < 100 {
        let blind = instances % 2 == 0 && blind_tries < 200_000;
        let (c3, cs) = if blind {
            blind_tries += 1;
            let c3 = loop {
                let x = t.random(&mut rng);
                if x.0 != 0 {
                    break x;
                }
            };
            (c3, [0, 1, 2].map(|_| vec![t.random(&mut rng), t.random(&mut rng)]))
        } else {
            structured_instance(&q, &mut rng, k)
        };
        if cs[2].iter().all(|x| x.0 == 0) {
            continue;
        }
        let e = e_poly(&q, k, c3, &cs);
        if !q.hypothesis(&e, &cs[2]) {
            if !blind {
                failed += 1; // construction bug
                instances += 1;
            }
            continue;
        }
        if blind {
            blind_hits += 1;
        }
        instances += 1;
        if !q.decomposes(e) {
            failed += 1;
        }
    }

    // every quartic over F_27 that is a square or zero at all but at most one
    // point of F_27 must be a square
    let els: Vec<Fq> = t.elements().collect();
    let (mut hyp, mut exhaustive_bad) = (0u64, 0u64);
    for &e0 in &els {
        for &e1 in &els {
            for &e2 in &els {
                for &e3 in &els {
                    for &e4 in &els {
                        let e = [e0, e1, e2, e3, e4];
                        let mut misses = 0;
                        for &y in &els {
                            let v = q.at(&e, y);
                            if v.0 != 0 && !q.squares.contains(&v.0) {
                                misses += 1;
                                if misses > 1 {
                                    break;
                                }
                            }
                        }
                        if misses <= 1 {
                            hyp += 1;
                            if !q.decomposes(e) {
                                exhaustive_bad += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    ok(
        failed == 0 && exhaustive_bad == 0,
        format!(
            "100 instances ({blind_hits} found blindly in {blind_tries} draws), {failed} failures; \
             exhaustive: {hyp} quartics satisfy the hypothesis, {exhaustive_bad} not squares"
        ),
    )
}
