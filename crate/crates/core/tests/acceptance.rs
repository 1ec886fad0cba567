//! End-to-end acceptance criteria. Runs as a plain binary and prints one
//! line per criterion; exits nonzero if any fails.
//!
//! Values marked as oracles below are recomputed here from definitions,
//! without going through the library's own closed forms or checkers.

use std::time::{Duration, Instant};

use splice_rank::cfk::{corpus, corpus_names, random_complex, random_geometric, BifilteredComplex};
use splice_rank::duality::{geometric_package, random_synthetic, ByIndex, SurgeryPackage};
use splice_rank::filtration::{lemma_suite, profile};
use splice_rank::gf2::{Gf2Matrix, Subspace};
use splice_rank::report::case_seed;
use splice_rank::splice::{build_d, mirror_invariance, splice_rank, witness_vectors};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_260_314;
const SYNTHETIC_PACKAGES: usize = 500;
const RANDOM_COMPLEXES: usize = 200;
const GEOMETRIC_PAIRS: usize = 100;
/// random knot pairs on top of all corpus pairs
const RANDOM_KNOT_PAIRS: usize = 50;
const SYNTHETIC_PAIRS: usize = 500;
const MIRROR_PAIRS: usize = 20;
const CANCEL_MATRICES: usize = 1000;
const SYNTHETIC_MAX: usize = 4;
const RANDOM_MAX_GEN: usize = 8;

struct Outcome {
    ok: bool,
    summary: String,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            ok: true,
            summary: String::new(),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.ok = false;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }

    fn within(&mut self, elapsed: Duration, limit: Duration) {
        self.check(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"));
    }
}

fn pkg(c: &BifilteredComplex) -> SurgeryPackage {
    geometric_package(c).unwrap_or_else(|e| panic!("{}: {e}", c.name()))
}

fn corpus_knots() -> Vec<BifilteredComplex> {
    corpus_names()
        .iter()
        .map(|n| corpus(n).expect("catalog entry"))
        .collect()
}

/// Catalog entries and their mirrors.
fn corpus_with_mirrors() -> Vec<BifilteredComplex> {
    let mut out = corpus_knots();
    let mirrors: Vec<_> = out
        .iter()
        .filter(|c| c.name() != "unknot")
        .map(|c| corpus(&format!("mirror:{}", c.name())).expect("mirror entry"))
        .collect();
    out.extend(mirrors);
    out
}

// ---- oracles ----

/// Rank by plain elimination on rows of booleans.
fn naive_rank(m: &Gf2Matrix) -> usize {
    let mut rows: Vec<Vec<bool>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn is_zero_product(m: &Gf2Matrix, v: &[bool]) -> bool {
    (0..m.rows()).all(|r| (0..m.cols()).filter(|&c| m.get(r, c) && v[c]).count() % 2 == 0)
}

/// `(0 0; I 0)` checked entry by entry.
fn in_block_form(m: &Gf2Matrix, top: usize, id: usize, right: usize) -> bool {
    m.shape() == (top + id, id + right)
        && (0..m.rows()).all(|r| (0..m.cols()).all(|c| m.get(r, c) == (r >= top && c < id && r - top == c)))
}

/// `Im f = Ker g` through subspaces.
fn exact(f: &Gf2Matrix, g: &Gf2Matrix) -> bool {
    let im = Subspace::image(f);
    let ker = Subspace::kernel(g);
    im.dim() == ker.dim() && im.intersect(&ker).dim() == im.dim()
}

/// The upper-right block of a duality map split after `p` rows/columns.
fn b_block(tau: &Gf2Matrix, p: usize) -> Gf2Matrix {
    tau.submatrix(0, p, p, tau.cols())
}

/// Every axiom of a normalized package, recomputed from the stored maps.
fn axiom_violations(p: &SurgeryPackage) -> Vec<String> {
    let a = p.a;
    let m = &p.maps;
    let mut out = Vec::new();
    for (name, f, top, id, right) in [
        ("f_inf", &m.f_inf, a.zero, a.inf, a.one),
        ("f0", &m.f0, a.one, a.zero, a.inf),
        ("f1", &m.f1, a.inf, a.one, a.zero),
    ] {
        if !in_block_form(f, top, id, right) {
            out.push(format!("{name} not in block form"));
        }
    }
    let taus = [(&p.tau.tau0, a.inf), (&p.tau.tau1, a.zero), (&p.tau.tau_inf, a.one)];
    for (k, (t, split)) in taus.iter().enumerate() {
        let n = t.rows();
        match t.inverse() {
            None => out.push(format!("tau #{k} singular")),
            Some(inv) => {
                let same = |r0, r1, c0, c1| t.submatrix(r0, r1, c0, c1) == inv.submatrix(r0, r1, c0, c1);
                if !(same(0, *split, 0, *split) && same(0, *split, *split, n) && same(*split, n, *split, n)) {
                    out.push(format!("tau #{k} inverse has different A, B or D"));
                }
            }
        }
    }
    let b0 = b_block(&p.tau.tau0, a.inf);
    let b1 = b_block(&p.tau.tau1, a.zero);
    let bi = b_block(&p.tau.tau_inf, a.one);
    for (name, b, want) in [
        ("B0", &b0, (a.inf, a.one)),
        ("B1", &b1, (a.zero, a.inf)),
        ("B_inf", &bi, (a.one, a.zero)),
    ] {
        if b.shape() != want {
            out.push(format!("{name} shape {:?}, want {want:?}", b.shape()));
        }
    }
    if out.is_empty() {
        let x0 = &(&b1 * &b0) * &bi;
        let x1 = &(&bi * &b1) * &b0;
        let xi = &(&b0 * &bi) * &b1;
        for (name, x) in [("X0", x0), ("X1", x1), ("X_inf", xi)] {
            if !(&x * &x).is_zero() {
                out.push(format!("{name}^2 != 0"));
            }
        }
    }
    for (barred, (fi, f0, f1)) in [
        (false, (&m.f_inf, &m.f0, &m.f1)),
        (true, (&m.bar_f_inf, &m.bar_f0, &m.bar_f1)),
    ] {
        if !(exact(fi, f0) && exact(f0, f1) && exact(f1, fi)) {
            out.push(format!("triangle not exact (barred: {barred})"));
        }
    }
    out
}

/// `(k, l, c, d)` from kernels, images and their sums and intersections.
fn subspace_dims(f: &Gf2Matrix, bar: &Gf2Matrix) -> [i64; 4] {
    let k = Subspace::kernel(f).intersect(&Subspace::kernel(bar)).dim();
    let l = Subspace::kernel(&(f + bar)).dim() - k;
    let images = Subspace::image(f).sum(&Subspace::image(bar));
    let c = f.rows() - images.dim();
    let d = images.dim() - Subspace::image(&(f + bar)).dim();
    [k as i64, l as i64, c as i64, d as i64]
}

struct OracleStats {
    k: ByIndex<i64>,
    l: ByIndex<i64>,
    c: ByIndex<i64>,
    d: ByIndex<i64>,
}

fn oracle_stats(p: &SurgeryPackage) -> OracleStats {
    let m = &p.maps;
    let [k0, l0, c0, d0] = subspace_dims(&m.f0, &m.bar_f0);
    let [k1, l1, c1, d1] = subspace_dims(&m.f1, &m.bar_f1);
    let [ki, li, ci, di] = subspace_dims(&m.f_inf, &m.bar_f_inf);
    OracleStats {
        k: ByIndex::new(k0, k1, ki),
        l: ByIndex::new(l0, l1, li),
        c: ByIndex::new(c0, c1, ci),
        d: ByIndex::new(d0, d1, di),
    }
}

/// The twelve closed forms in `a`, the `B` ranks and `delta`, where `delta`
/// must be one number per coefficient serving both its `l` and `d` forms.
fn closed_form_mismatches(p: &SurgeryPackage) -> Vec<String> {
    let a = p.a.map(|&x| x as i64);
    let r0 = naive_rank(&b_block(&p.tau.tau0, p.a.inf)) as i64;
    let r1 = naive_rank(&b_block(&p.tau.tau1, p.a.zero)) as i64;
    let ri = naive_rank(&b_block(&p.tau.tau_inf, p.a.one)) as i64;
    let o = oracle_stats(p);
    let delta0 = a.zero - ri - o.l.zero;
    let delta1 = a.one - r0 - o.l.one;
    let delta_inf = a.inf - r1 - o.l.inf;
    let forms = [
        ("k0", o.k.zero, a.inf - r1),
        ("k1", o.k.one, a.zero - ri),
        ("k_inf", o.k.inf, a.one - r0),
        ("c0", o.c.zero, a.one - ri),
        ("c1", o.c.one, a.inf - r0),
        ("c_inf", o.c.inf, a.zero - r1),
        ("l0", o.l.zero, a.zero - ri - delta0),
        ("l1", o.l.one, a.one - r0 - delta1),
        ("l_inf", o.l.inf, a.inf - r1 - delta_inf),
        ("d0", o.d.zero, a.zero - r1 - delta0),
        ("d1", o.d.one, a.one - ri - delta1),
        ("d_inf", o.d.inf, a.inf - r0 - delta_inf),
    ];
    let mut out: Vec<String> = forms
        .iter()
        .filter(|(_, direct, closed)| direct != closed)
        .map(|(n, direct, closed)| format!("{n}: direct {direct}, closed {closed}"))
        .collect();
    for (n, v, hi) in [
        ("delta0", delta0, a.zero - r1.max(ri)),
        ("delta1", delta1, a.one - ri.max(r0)),
        ("delta_inf", delta_inf, a.inf - r0.max(r1)),
    ] {
        if !(0..=hi).contains(&v) {
            out.push(format!("{n} = {v} outside [0, {hi}]"));
        }
    }
    match p.stats() {
        Ok(s) => {
            let lib = [s.k, s.l, s.c, s.d].map(|t| t.map(|&x| x as i64));
            let ours = [o.k, o.l, o.c, o.d];
            if lib != ours {
                out.push("library stats differ from the oracle".into());
            }
        }
        Err(e) => out.push(format!("library stats: {e}")),
    }
    out
}

/// The two six-term lower bounds from the oracle dimensions.
fn oracle_bounds(p1: &SurgeryPackage, p2: &SurgeryPackage) -> (i64, i64) {
    let (x, y) = (oracle_stats(p1), oracle_stats(p2));
    let ker = x.k.zero * y.k.zero
        + x.k.inf * y.k.one
        + x.k.one * y.k.inf
        + x.l.inf * y.l.zero
        + x.l.zero * y.l.inf
        + x.l.one * y.l.one;
    let coker = x.c.inf * y.c.inf
        + x.c.zero * y.c.one
        + x.c.one * y.c.zero
        + x.d.inf * y.d.zero
        + x.d.zero * y.d.inf
        + x.d.one * y.d.one;
    (ker, coker)
}

fn synthetic(i: usize, salt: u64) -> SurgeryPackage {
    let s = case_seed(SEED ^ salt, i);
    random_synthetic(s, SYNTHETIC_MAX).unwrap_or_else(|e| panic!("synthetic {i}: {e}"))
}

/// `h` with the rank taken by the oracle matrix rank.
fn oracle_h(p1: &SurgeryPackage, p2: &SurgeryPackage) -> usize {
    let d = build_d(p1, p2).expect("matrix").assembled;
    let r = naive_rank(&d);
    (d.cols() - r) + (d.rows() - r)
}

// ---- criteria ----

fn unknot_identity() -> Outcome {
    let mut o = Outcome::new();
    let t = Instant::now();
    let u = pkg(&corpus("unknot").unwrap());
    let h = splice_rank(&u, &u).expect("splice").h;
    let elapsed = t.elapsed();
    o.check(h == 1, || format!("h = {h}"));
    o.check(oracle_h(&u, &u) == 1, || "oracle rank disagrees".into());
    o.within(elapsed, Duration::from_secs(1));
    o.summary = format!("h = {h} in {elapsed:.2?} (limit 1 s)");
    o
}

fn meridian_filling() -> Outcome {
    let mut o = Outcome::new();
    let knots = corpus_with_mirrors();
    let t = Instant::now();
    let u = pkg(&corpus("unknot").unwrap());
    let mut hs = Vec::new();
    for c in &knots {
        let h = splice_rank(&pkg(c), &u).expect("splice").h;
        let ambient = c.ambient_rank().expect("homology");
        let total = profile(c).expect("profile").total();
        o.check(h == ambient && h == total, || {
            format!("{}: h {h}, ambient {ambient}, sum of e {total}", c.name())
        });
        hs.push(h);
    }
    let elapsed = t.elapsed();
    o.within(elapsed, Duration::from_secs(5));
    o.summary = format!("{} knots, h = {hs:?}, {elapsed:.2?} (limit 5 s)", knots.len());
    o
}

fn package_axioms() -> Outcome {
    let mut o = Outcome::new();
    let knots = corpus_with_mirrors();
    for c in &knots {
        let p = pkg(c);
        let bad = axiom_violations(&p);
        o.check(bad.is_empty(), || format!("{}: {bad:?}", c.name()));
        o.check(p.axiom_failures().is_empty(), || {
            format!("{}: library disagrees", c.name())
        });
        let a = p.a;
        o.check(a.one % 2 == a.inf % 2 && a.inf % 2 == (a.zero + 1) % 2, || {
            format!("{}: parity of {a:?}", c.name())
        });
    }
    for i in 0..SYNTHETIC_PACKAGES {
        let p = synthetic(i, 3);
        let bad = axiom_violations(&p);
        o.check(bad.is_empty(), || format!("synthetic {i}: {bad:?}"));
    }
    o.summary = format!("{} corpus packages, {SYNTHETIC_PACKAGES} synthetic", knots.len());
    o
}

fn random_complexes() -> impl Iterator<Item = BifilteredComplex> {
    (0..RANDOM_COMPLEXES).map(|i| {
        let s = case_seed(SEED ^ 4, i);
        if i % 2 == 0 {
            random_complex(s, RANDOM_MAX_GEN)
        } else {
            random_geometric(s)
        }
    })
}

fn stats_oracle() -> Outcome {
    let mut o = Outcome::new();
    let mut n = 0;
    for c in corpus_with_mirrors().into_iter().chain(random_complexes()) {
        match geometric_package(&c) {
            Ok(p) => {
                let bad = closed_form_mismatches(&p);
                o.check(bad.is_empty(), || format!("{}: {bad:?}", c.name()));
            }
            Err(e) => o.check(false, || format!("{}: {e}", c.name())),
        }
        n += 1;
    }
    o.summary = format!("12 closed forms on {n} complexes");
    o
}

fn witness_soundness() -> Outcome {
    let mut o = Outcome::new();
    let mut pairs: Vec<(String, SurgeryPackage, SurgeryPackage)> = Vec::new();
    let knots = corpus_with_mirrors();
    for a in &knots {
        for b in &knots {
            pairs.push((format!("{} x {}", a.name(), b.name()), pkg(a), pkg(b)));
        }
    }
    for i in 0..RANDOM_KNOT_PAIRS {
        let s = case_seed(SEED ^ 5, i);
        let (a, b) = (random_geometric(s), random_geometric(s ^ 1));
        pairs.push((format!("geometric {i}"), pkg(&a), pkg(&b)));
    }
    let geometric = pairs.len();
    for i in 0..SYNTHETIC_PAIRS {
        pairs.push((format!("synthetic {i}"), synthetic(i, 6), synthetic(i, 7)));
    }
    let mut vectors = 0;
    for (name, p1, p2) in &pairs {
        let d = build_d(p1, p2).expect("matrix").assembled;
        for w in witness_vectors(p1, p2) {
            vectors += 1;
            let v: Vec<bool> = (0..w.vector.len()).map(|i| w.vector.get(i)).collect();
            o.check(v.len() == d.cols() && is_zero_product(&d, &v), || {
                format!("{name}: {:?} ({}, {}) not in the kernel", w.family, w.left, w.right)
            });
        }
        let r = naive_rank(&d) as i64;
        let (ker, coker) = (d.cols() as i64 - r, d.rows() as i64 - r);
        let (kb, cb) = oracle_bounds(p1, p2);
        o.check(kb <= ker && cb <= coker, || {
            format!("{name}: ker {ker} >= {kb}, coker {coker} >= {cb}")
        });
    }
    o.check(geometric >= GEOMETRIC_PAIRS, || {
        format!("only {geometric} geometric pairs")
    });
    o.summary = format!("{geometric} geometric + {SYNTHETIC_PAIRS} synthetic pairs, {vectors} witness vectors");
    o
}

fn lemma_equalities() -> Outcome {
    let mut o = Outcome::new();
    let mut n = 0;
    let mut checks = 0;
    for c in corpus_with_mirrors().into_iter().chain(random_complexes()) {
        let p = pkg(&c);
        let prof = profile(&c).expect("profile");
        match lemma_suite(&c, &p, &prof) {
            Ok(reports) => {
                for r in &reports {
                    checks += r.checks.len();
                    let bad = r.mismatches();
                    o.check(bad.is_empty(), || format!("{} {}: {bad:?}", c.name(), r.name));
                }
            }
            Err(e) => o.check(false, || format!("{}: {e}", c.name())),
        }
        n += 1;
    }
    o.summary = format!("{checks} equalities on {n} complexes");
    o
}

fn rank_inequality() -> Outcome {
    let mut o = Outcome::new();
    let t = Instant::now();
    let knots: Vec<_> = corpus_with_mirrors()
        .into_iter()
        .map(|c| {
            let e = profile(&c).expect("profile").total();
            let p = pkg(&c);
            (c, p, e)
        })
        .collect();
    let mut applicable = 0;
    let mut total = 0;
    for (c1, p1, e1) in &knots {
        for (c2, p2, _) in &knots {
            let h = splice_rank(p1, p2).expect("splice").h;
            total += 1;
            o.check(h % 2 == 1, || format!("{} x {}: h = {h} is even", c1.name(), c2.name()));
            let y_inf = p2.stats().expect("stats").y.inf;
            if y_inf == 1 {
                applicable += 1;
                o.check(h >= *e1, || format!("{} x {}: h = {h} < {e1}", c1.name(), c2.name()));
            }
        }
    }
    let t3 = pkg(&corpus("trefoil_staircase").unwrap());
    let h33 = splice_rank(&t3, &t3).expect("splice").h;
    o.check(h33 >= 3, || format!("trefoil x trefoil h = {h33}"));
    let elapsed = t.elapsed();
    o.within(elapsed, Duration::from_secs(30));
    o.summary = format!(
        "{total} pairs odd, inequality on {applicable} with y_inf = 1, trefoil x trefoil h = {h33}, {elapsed:.2?} (limit 30 s)"
    );
    o
}

fn mirror_invariance_check() -> Outcome {
    let mut o = Outcome::new();
    let knots = corpus_knots();
    let mut pairs = 0;
    for (i, a) in knots.iter().enumerate() {
        for b in &knots[i..] {
            let v = mirror_invariance(a, b).expect("mirror");
            o.check(v.h == v.h_mirror, || format!("{} x {}: {v:?}", a.name(), b.name()));
            pairs += 1;
        }
    }
    o.check(pairs >= MIRROR_PAIRS, || format!("only {pairs} pairs"));
    for c in &knots {
        let (e, m) = (profile(c).expect("profile"), profile(&c.mirror()).expect("profile"));
        let (lo, hi) = e.window();
        let (mlo, mhi) = m.window();
        let range = lo.min(-mhi)..=hi.max(-mlo);
        o.check(range.clone().all(|s| m.e_at(-s) == e.e_at(s)), || {
            format!("{}: e {:?}, mirror e {:?}", c.name(), e.e(), m.e())
        });
    }
    o.summary = format!("{pairs} pairs, e of {} mirrors", knots.len());
    o
}

fn cancel_invariance() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for i in 0..CANCEL_MATRICES {
        let (rows, cols) = (rng.gen_range(1..=16), rng.gen_range(1..=16));
        let mut m = Gf2Matrix::random(&mut rng, rows, cols);
        let (r, c) = (rng.gen_range(0..rows), rng.gen_range(0..cols));
        m.set(r, c, true);
        let before = naive_rank(&m);
        match m.cancel(r, c) {
            Ok(n) => {
                let after = naive_rank(&n);
                let same = n.shape() == (rows - 1, cols - 1)
                    && (cols - before) == (n.cols() - after)
                    && (rows - before) == (n.rows() - after);
                o.check(same, || format!("matrix {i}: rank {before} -> {after}"));
            }
            Err(e) => o.check(false, || format!("matrix {i}: {e}")),
        }
    }
    o.summary = format!("{CANCEL_MATRICES} random matrices");
    o
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("unknot identity", unknot_identity),
        ("meridian filling", meridian_filling),
        ("package axioms", package_axioms),
        ("stats oracle", stats_oracle),
        ("kernel witnesses and six-term bounds", witness_soundness),
        ("lemma equalities", lemma_equalities),
        ("rank inequality, oddness, trefoil", rank_inequality),
        ("mirror invariance", mirror_invariance_check),
        ("cancellation keeps ker and coker", cancel_invariance),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!(
            "{} {}. {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            k + 1,
            o.summary
        );
        for f in &o.failures {
            println!("       {f}");
        }
        failed += usize::from(!o.ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
