//! Named invariant suites. Each suite re-checks the structural properties
//! its module promises, and returns a list of [`kq::CheckReport`]s so the
//! CLI can fail loudly with coordinates on the first violation.

use crate::comodule::{
    self, brown_gitler, restrict_coaction, ses, BrownGitlerKind, SesParity,
};
use crate::ext::{ext_chart, ext_chart_with_base, Window};
use crate::kq::{self, CheckReport};
use crate::linalg::MatrixF2;
use crate::steenrod::{
    basis, coproduct, parse_monomial, AlgebraSpec, Monomial, RawMonomial, TensorTerm,
};
use std::collections::BTreeSet;
use std::sync::Arc;

/// A deterministic little xorshift so suites need no external randomness.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.max(1))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

fn report(name: &str, ok: bool, detail: &str) -> CheckReport {
    let mut r = CheckReport {
        name: name.into(),
        pass: true,
        violations: Vec::new(),
    };
    if !ok {
        r.pass = false;
        r.violations.push(detail.into());
    }
    r
}

/// steenrod: normal-form confluence, degree/weight additivity, Hopf axioms.
pub fn suite_steenrod() -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut rng = Rng::new(0x5eed);

    // confluence: single-step rewriting in a random order agrees with
    // normalize, and normalize is idempotent
    let mut ok = true;
    for _ in 0..1000 {
        let tau_power = rng.below(3) as u32;
        let xi: Vec<u32> = (0..4).map(|_| rng.below(3) as u32).collect();
        let taus: Vec<u32> = (0..4).map(|_| rng.below(4) as u32).collect();
        let build = |tau_power: u32, xi: &[u32], taus: &[u32]| {
            let mut raw = RawMonomial::default();
            raw.tau_power = tau_power;
            for (i, &e) in xi.iter().enumerate() {
                raw.add_xi(i as u32 + 1, e);
            }
            for (j, &e) in taus.iter().enumerate() {
                raw.add_taubar(j as u32, e);
            }
            raw
        };
        let normal = build(tau_power, &xi, &taus).normalize();
        // rewrite taubar_j^2 -> tau xi_{j+1} one random step at a time
        let (mut tp, mut xs, mut ts) = (tau_power, xi.clone(), taus.clone());
        loop {
            let candidates: Vec<usize> =
                (0..ts.len()).filter(|&j| ts[j] >= 2).collect();
            if candidates.is_empty() {
                break;
            }
            let j = candidates[rng.below(candidates.len())];
            // taubar_j^2 -> tau xi_{j+1}; xs[k] holds the exponent of xi_{k+1}
            ts[j] -= 2;
            tp += 1;
            if xs.len() <= j {
                xs.resize(j + 1, 0);
            }
            xs[j] += 1;
        }
        let stepwise = build(tp, &xs, &ts).normalize();
        if stepwise != normal {
            ok = false;
            break;
        }
        // idempotence: re-normalizing the normal form changes nothing
        let again = {
            let mut raw = RawMonomial::default();
            raw.tau_power = normal.tau_power();
            for (i, e) in normal.xi_exponents() {
                raw.add_xi(i, e);
            }
            for j in normal.tau_indices() {
                raw.add_taubar(j, 1);
            }
            raw.normalize()
        };
        if again != normal {
            ok = false;
            break;
        }
    }
    out.push(report("normal_form_confluence", ok, "rewrite order changed the result"));

    // degree and weight additivity over products, t <= 20
    let pool = basis(AlgebraSpec::ADual, 10, 0);
    let mut ok = true;
    for _ in 0..500 {
        let a = &pool[rng.below(pool.len())];
        let b = &pool[rng.below(pool.len())];
        let p = a.multiply(b);
        if p.degree() != a.degree() + b.degree() || p.weight() != a.weight() + b.weight() {
            ok = false;
            break;
        }
    }
    out.push(report("degree_weight_additive", ok, "product degree/weight mismatch"));

    // coassociativity and counit on A^v truncations, t <= 14
    let pool = basis(AlgebraSpec::ADual, 14, 0);
    let mut coassoc_ok = true;
    let mut counit_ok = true;
    for m in &pool {
        let psi = coproduct(m);
        // counit: the terms with left = 1 must reproduce m exactly once, and
        // likewise with right = 1
        let left_units: Vec<&TensorTerm> = psi.iter().filter(|t| t.left.is_one()).collect();
        if left_units.len() != 1 || left_units[0].right != *m {
            counit_ok = false;
        }
        let right_units: Vec<&TensorTerm> = psi
            .iter()
            .filter(|t| t.right.tau_free_part().is_one())
            .collect();
        if right_units.len() != 1
            || right_units[0].left.multiply(&Monomial::tau(right_units[0].right.tau_power())) != *m
        {
            counit_ok = false;
        }
        // coassociativity in A^v: compare triple expansions
        let mut lhs: BTreeSet<(Monomial, Monomial, Monomial)> = BTreeSet::new();
        for t in &psi {
            for tt in coproduct(&t.left) {
                let trip = (
                    tt.left.clone(),
                    tt.right.tau_free_part(),
                    t.right
                        .clone()
                        .with_extra_tau(tt.right.tau_power()),
                );
                if !lhs.remove(&trip) {
                    lhs.insert(trip);
                }
            }
        }
        let mut rhs: BTreeSet<(Monomial, Monomial, Monomial)> = BTreeSet::new();
        for t in &psi {
            for tt in coproduct(&t.right.tau_free_part()) {
                let trip = (
                    t.left.clone(),
                    tt.left.clone(),
                    tt.right.clone().with_extra_tau(t.right.tau_power()),
                );
                if !rhs.remove(&trip) {
                    rhs.insert(trip);
                }
            }
        }
        if lhs != rhs {
            coassoc_ok = false;
        }
    }
    out.push(report("coassociativity", coassoc_ok, "psi not coassociative"));
    out.push(report("counit", counit_ok, "counit axiom failed"));

    // bialgebra compatibility on random pairs, t <= 10
    let pool = basis(AlgebraSpec::ADual, 10, 0);
    let mut ok = true;
    for _ in 0..200 {
        let a = &pool[rng.below(pool.len())];
        let b = &pool[rng.below(pool.len())];
        let mut lhs = coproduct(&a.multiply(b));
        for t in coproduct_product(a, b) {
            if !lhs.remove(&t) {
                lhs.insert(t);
            }
        }
        if !lhs.is_empty() {
            ok = false;
            break;
        }
    }
    out.push(report("bialgebra", ok, "psi(ab) != psi(a) psi(b)"));
    out
}

fn coproduct_product(a: &Monomial, b: &Monomial) -> Vec<TensorTerm> {
    let mut out: Vec<TensorTerm> = Vec::new();
    for x in coproduct(a) {
        for y in coproduct(b) {
            let t = TensorTerm {
                left: x.left.multiply(&y.left),
                right: x.right.multiply(&y.right),
            };
            // canonicalize tau to the right
            let k = t.left.tau_power();
            let t = TensorTerm {
                left: t.left.tau_free_part(),
                right: t.right.with_extra_tau(k),
            };
            if let Some(pos) = out.iter().position(|u| *u == t) {
                out.remove(pos);
            } else {
                out.push(t);
            }
        }
    }
    out
}

/// comodule: axioms of the standard constructions, weight preservation,
/// phi intertwining, the direct-sum law, and both SES families.
pub fn suite_comodule() -> Vec<CheckReport> {
    let mut out = Vec::new();

    let akq = restrict_coaction(AlgebraSpec::AModANDual(1), 20, -2);
    out.push(report(
        "comodule_axioms",
        akq.check_axioms().is_ok()
            && brown_gitler(BrownGitlerKind::Integral, 3).check_axioms().is_ok()
            && brown_gitler(BrownGitlerKind::Kq, 2).check_axioms().is_ok(),
        "coassociativity/counit/degree checks failed",
    ));
    out.push(report(
        "weight_preservation",
        akq.check_weight_preservation().is_ok(),
        "A//A(1)^v coaction does not preserve Mahowald weight",
    ));

    // phi intertwines coactions ungraded on basis monomials with t <= 20
    let mut ok = true;
    'outer: for b in &akq.basis {
        let m = parse_monomial(&b.label).unwrap();
        let image = comodule::phi(&m).unwrap();
        // coaction of phi(m) in A//A(0)^v
        let mut lhs: BTreeSet<(Monomial, Monomial, u32)> = BTreeSet::new();
        for TensorTerm { left, right } in coproduct(&image) {
            if !AlgebraSpec::ANDual(1).contains(&left) {
                continue;
            }
            let key = (left, right.tau_free_part(), right.tau_power());
            if !lhs.remove(&key) {
                lhs.insert(key);
            }
        }
        // (1 (x) phi) applied to the coaction of m
        let mut rhs: BTreeSet<(Monomial, Monomial, u32)> = BTreeSet::new();
        for TensorTerm { left, right } in coproduct(&m) {
            if !AlgebraSpec::ANDual(1).contains(&left) {
                continue;
            }
            let phi_right = match comodule::phi(&right.tau_free_part()) {
                Ok(p) => p,
                Err(_) => {
                    ok = false;
                    break 'outer;
                }
            };
            let key = (left, phi_right, right.tau_power());
            if !rhs.remove(&key) {
                rhs.insert(key);
            }
        }
        if lhs != rhs {
            ok = false;
            break;
        }
    }
    out.push(report("phi_intertwines", ok, "phi is not a comodule map"));

    // direct-sum law for t <= 16
    let dec = comodule::verify_decomposition(4, 16, -2);
    out.push(report(
        "decomposition_direct_sum",
        dec.pass,
        "A//A(1)^v does not split as suspended Brown-Gitler modules",
    ));

    // both SES families exact for j <= 4 (the constructor verifies)
    let mut ok = true;
    let mut detail = String::new();
    for j in 1..=4 {
        for parity in [SesParity::Even, SesParity::Odd] {
            if let Err(e) = ses(parity, j) {
                ok = false;
                detail = format!("{parity:?} j={j}: {e}");
            }
        }
    }
    out.push(report("ses_exactness", ok, &detail));
    out
}

/// linalg: rank-plus-nullity on random matrices, homology versus a dense
/// elimination oracle on random small complexes.
pub fn suite_linalg() -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut rng = Rng::new(0xa11a);

    let mut ok = true;
    for &(r, c) in &[(5usize, 7usize), (64, 64), (130, 257), (2000, 2000)] {
        let mut m = MatrixF2::zero(r, c);
        for i in 0..r {
            for j in 0..c {
                if rng.next() % 3 == 0 {
                    m.set(i, j, true);
                }
            }
        }
        if m.rank() + m.kernel_basis().len() != r {
            ok = false;
        }
    }
    out.push(report("rank_nullity", ok, "rank + nullity != rows"));

    // homology vs dense oracle on random complexes up to 64 dims
    let mut ok = true;
    for _ in 0..30 {
        let (nu, nv, nw) = (
            1 + rng.below(20),
            1 + rng.below(30),
            1 + rng.below(20),
        );
        // random outgoing B, then random incoming A built inside ker B
        let mut b = MatrixF2::zero(nv, nw);
        for i in 0..nv {
            for j in 0..nw {
                if rng.next() % 4 == 0 {
                    b.set(i, j, true);
                }
            }
        }
        let kernel = b.kernel_basis();
        let mut a = MatrixF2::zero(nu, nv);
        for i in 0..nu {
            if kernel.is_empty() {
                continue;
            }
            let mut acc = vec![false; nv];
            for kv in &kernel {
                if rng.next() % 2 == 0 {
                    for (c, &v) in kv.iter().enumerate() {
                        acc[c] ^= v;
                    }
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                a.set(i, c, v);
            }
        }
        let fast = crate::linalg::image_quotient(&a, &b).dim;
        let slow = dense_homology_oracle(&a, &b);
        if fast != slow {
            ok = false;
            break;
        }
    }
    out.push(report("image_quotient_oracle", ok, "homology dim mismatch vs dense oracle"));
    out
}

/// Naive dense elimination over Vec<Vec<bool>>, structurally unrelated to
/// the bit-packed path.
fn dense_homology_oracle(a: &MatrixF2, b: &MatrixF2) -> usize {
    let to_dense = |m: &MatrixF2| -> Vec<Vec<bool>> {
        (0..m.rows()).map(|r| m.row_to_vec(r)).collect()
    };
    fn rank_dense(mut rows: Vec<Vec<bool>>, cols: usize) -> usize {
        let mut rank = 0;
        for col in 0..cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] {
                    for c in 0..cols {
                        row[c] ^= pivot_row[c];
                    }
                }
            }
            rank += 1;
        }
        rank
    }
    let dim_v = b.rows();
    let rank_b = rank_dense(to_dense(b), b.cols());
    let rank_a = rank_dense(to_dense(a), a.cols());
    // dim ker B - rank A
    (dim_v - rank_b) - rank_a
}

/// ext engine: d^2 = 0, the IS11 dimension table, tau-action laws, chart
/// relations, LES exactness, the weight law, and the collapse precondition.
pub fn suite_ext(deep: bool) -> Vec<CheckReport> {
    let mut out = Vec::new();

    // d^2 = 0 on the cobar complex for a sample of comodules
    let mut ok = true;
    for module in [
        comodule::Comodule::unit(),
        brown_gitler(BrownGitlerKind::Integral, 2),
    ] {
        let c = crate::cobar::CobarComplex::new(module);
        for s in 0..3 {
            for t in 0..=8 {
                for w in -2..=4 {
                    if c.check_d_squared(s, t, w).is_err() {
                        ok = false;
                    }
                }
            }
        }
    }
    out.push(report("cobar_d_squared", ok, "d^2 != 0 in the cobar complex"));

    // resolution agrees with the cobar oracle on a small window, and its
    // differential squares to zero
    let mut ok = true;
    for module in [
        comodule::Comodule::unit(),
        brown_gitler(BrownGitlerKind::Integral, 1),
        brown_gitler(BrownGitlerKind::Kq, 1),
    ] {
        let res = crate::resolution::Resolution::build(Arc::clone(&module), 4, 9);
        ok &= res.check_complex().is_ok();
        let cob = crate::cobar::CobarComplex::new(module);
        for s in 0..=3 {
            for t in 0..=7 {
                for w in -2..=4 {
                    if res.ext_cell(s, t, w).0 != cob.ext_dim(s, t, w) {
                        ok = false;
                    }
                }
            }
        }
    }
    out.push(report(
        "resolution_vs_cobar",
        ok,
        "resolution and cobar disagree on a small window",
    ));

    // IS11 presentation of Ext(M2) over the acceptance window
    let window = Window::new(8, 20, -4, 0);
    let chart = ext_chart(comodule::Comodule::unit(), window);
    let oracle = crate::oracle::is11_dims(8, 20, -4);
    let mut ok = true;
    let mut detail = String::new();
    let mut keys: BTreeSet<(i32, i32, i32)> = oracle.keys().cloned().collect();
    for (&k, &d) in &chart.dims {
        if chart.window.contains_reported(k.0, k.1, k.2) && d > 0 {
            keys.insert(k);
        }
    }
    for k in keys {
        if !chart.window.contains_reported(k.0, k.1, k.2) {
            continue;
        }
        let got = chart.dim(k.0, k.1, k.2);
        let expect = oracle.get(&k).copied().unwrap_or(0);
        if got != expect {
            ok = false;
            detail = format!("Ext(M2) at {k:?}: computed {got}, oracle {expect}");
            break;
        }
    }
    out.push(report("ext_m2_is11", ok, &detail));

    // tau-action: injective on h0 towers, kills h1^b (b >= 3) exactly once
    let mut ok = true;
    for s in 0..=6 {
        if let Some(m) = chart.action_matrix("tau", s, s, 0) {
            if m.rank() != chart.dim(s, s, 0) {
                ok = false;
            }
        }
    }
    for b in 3..=8 {
        if chart.dim(b, 2 * b, b) > 0 {
            if let Some(m) = chart.action_matrix("tau", b, 2 * b, b) {
                if !m.is_zero() {
                    ok = false;
                }
            }
        }
    }
    out.push(report("tau_action_laws", ok, "tau action violates tower/torsion laws"));

    // chart relations: h0 h1 = 0, tau h1^3 = 0, h1 alpha = 0, alpha^2 = h0^2 beta
    let mut ok = true;
    if let Some(m) = chart.action_matrix("h0", 1, 2, 1) {
        ok &= m.is_zero();
    }
    if let Some(m) = chart.action_matrix("h1", 3, 7, 2) {
        ok &= m.is_zero();
    }
    // alpha^2 = h0^2 beta on the unit: follow alpha twice vs h0 twice then beta
    let a2 = chart
        .action_matrix("alpha", 0, 0, 0)
        .zip(chart.action_matrix("alpha", 3, 7, 2))
        .map(|(a, b)| a.mul(&b));
    let h0h0b = chart
        .action_matrix("h0", 0, 0, 0)
        .zip(chart.action_matrix("h0", 1, 1, 0))
        .zip(chart.action_matrix("beta", 2, 2, 0))
        .map(|((a, b), c)| a.mul(&b).mul(&c));
    match (a2, h0h0b) {
        (Some(x), Some(y)) => ok &= x == y && !x.is_zero(),
        _ => ok = false,
    }
    out.push(report("chart_relations", ok, "IS11 relations fail in the chart"));

    if deep {
        // LES exactness for both SES families, j <= 3, via cobar lift
        let mut ok = true;
        let mut detail = String::new();
        for j in 1..=3u32 {
            for parity in [SesParity::Even, SesParity::Odd] {
                let s = ses(parity, j).expect("ses construction");
                if let Err(e) = crate::cobar::check_les_exactness(&s, 3, 11, -2) {
                    ok = false;
                    detail = format!("{parity:?} j={j}: {e}");
                }
            }
        }
        out.push(report("les_exactness", ok, &detail));

        // weight law and collapse precondition for HZ_n, n <= 4
        let base = shared_base(Window::new(6, 20, -4, 12));
        for n in 1..=4u32 {
            let hz = brown_gitler(BrownGitlerKind::Integral, n);
            let w = Window::new(6, 20, -4, 12);
            let chart = ext_chart_with_base(hz, w, Arc::clone(&base));
            out.push(kq::check_weight_law(&chart, w));
            out.push(collapse_precondition(&chart, w));
        }
    }
    out
}

/// Collapse precondition: within the window, every tau-torsion class is
/// h1-torsion free as far as the window can see.
pub fn collapse_precondition(chart: &crate::ext::ExtChart, window: Window) -> CheckReport {
    let mut rep = CheckReport {
        name: format!("collapse_precondition({})", chart.module),
        pass: true,
        violations: Vec::new(),
    };
    for (&(s, t, w), &dim) in &chart.dims {
        if dim == 0 || !window.contains_reported(s, t, w) {
            continue;
        }
        // tau-torsion subspace: kernel of the tau matrix
        let Some(tau) = chart.action_matrix("tau", s, t, w) else {
            continue;
        };
        let torsion = tau.kernel_basis();
        if torsion.is_empty() {
            continue;
        }
        let Some(h1) = chart.action_matrix("h1", s, t, w) else {
            continue;
        };
        for v in torsion {
            // image of the torsion class under h1 must be nonzero when the
            // target cell is inside the reported window
            if !window.contains_reported(s + 1, t + 2, w + 1) {
                continue;
            }
            let mut image = vec![false; h1.cols()];
            for (i, &b) in v.iter().enumerate() {
                if b {
                    for c in 0..h1.cols() {
                        if h1.get(i, c) {
                            image[c] ^= true;
                        }
                    }
                }
            }
            if image.iter().all(|&x| !x) {
                rep.pass = false;
                rep.violations.push(format!(
                    "tau-torsion class at ({s},{t},{w}) killed by h1 inside the window"
                ));
            }
        }
    }
    rep
}

/// Build (or reuse) a base resolution of the unit comodule for a window.
pub fn shared_base(window: Window) -> Arc<crate::resolution::Resolution> {
    Arc::new(crate::resolution::Resolution::build(
        comodule::Comodule::unit(),
        window.computed_s() + 1,
        window.computed_t(),
    ))
}

/// kq suites: Kuenneth symmetry, naive vanishing, h0 divisibility, closed
/// forms and consistency guards.
pub fn suite_kq(deep: bool) -> Vec<CheckReport> {
    let mut out = Vec::new();

    // zero-line d1 orders vs classical image-of-J
    let expect = [8u64, 16, 8, 32, 8, 16, 8, 64];
    let mut ok = true;
    for (k, &e) in expect.iter().enumerate() {
        if kq::d1_zero_line(k as u32 + 1) != e {
            ok = false;
        }
    }
    out.push(report("d1_zero_line_orders", ok, "2^rho(k) disagrees with image of J"));

    out.push(kq::check_e2_vanishing_consistency(40));

    if deep {
        let window = Window::new(5, 16, -4, 0);
        let base = shared_base(window);
        // Kuenneth symmetry at n = 2, entries <= 2: tensor factors commute
        let hz1 = brown_gitler(BrownGitlerKind::Integral, 1);
        let hz2 = brown_gitler(BrownGitlerKind::Integral, 2);
        let ab = ext_chart_with_base(
            comodule::tensor(&hz1, &hz2),
            Window::new(4, 12, -3, 0),
            Arc::clone(&base),
        );
        let ba = ext_chart_with_base(
            comodule::tensor(&hz2, &hz1),
            Window::new(4, 12, -3, 0),
            Arc::clone(&base),
        );
        let mut ok = true;
        for s in 0..=4 {
            for t in 0..=12 {
                for w in -3..=8 {
                    if ab.dim(s, t, w) != ba.dim(s, t, w) {
                        ok = false;
                    }
                }
            }
        }
        out.push(report("kuenneth_symmetry", ok, "tensor order changed the chart"));

        // naive vanishing (n <= 3, t <= 20) and h0 divisibility (n <= 2)
        let vw = Window::new(6, 20, -4, 0);
        let vbase = shared_base(vw);
        for n in 1..=3usize {
            let line = kq::e1_line(n, vw, Arc::clone(&vbase));
            out.push(kq::check_naive_vanishing(&line));
            if n <= 2 {
                out.push(kq::check_h0_divisibility(&line));
            }
        }

        // weight law on assembled E1 lines, n <= 2, t <= 16
        let lw = Window::new(5, 16, -4, 12);
        let lbase = shared_base(lw);
        for n in 1..=2usize {
            let line = kq::e1_line(n, lw, Arc::clone(&lbase));
            for (index, chart) in &line.charts {
                let mut rep = kq::check_weight_law(chart, chart.window);
                rep.name = format!("weight_law(line {n}, I={:?})", index.0);
                out.push(rep);
            }
        }
    }
    out
}

/// Aggregate runner used by the CLI `verify` subcommand.
pub fn run_suite(name: &str) -> Vec<CheckReport> {
    match name {
        "steenrod" => suite_steenrod(),
        "comodule" => suite_comodule(),
        "linalg" => suite_linalg(),
        "ext" => suite_ext(true),
        "ext-fast" => suite_ext(false),
        "kq" => suite_kq(true),
        "kq-fast" => suite_kq(false),
        "all" => {
            let mut out = suite_steenrod();
            out.extend(suite_comodule());
            out.extend(suite_linalg());
            out.extend(suite_ext(true));
            out.extend(suite_kq(true));
            out
        }
        _ => vec![report("unknown_suite", false, &format!("no suite named {name}"))],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steenrod_suite_passes() {
        for r in suite_steenrod() {
            assert!(r.pass, "{}: {:?}", r.name, r.violations);
        }
    }

    #[test]
    fn linalg_suite_passes() {
        for r in suite_linalg() {
            assert!(r.pass, "{}: {:?}", r.name, r.violations);
        }
    }
}
