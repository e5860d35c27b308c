//! The mod-2 motivic dual Steenrod algebra over `M2 = F2[tau]` and its
//! sub/quotient Hopf algebras, at the level of monomials.
//!
//! A monomial is `tau^k * prod xi_i^{a_i} * prod taubar_j` with the
//! `taubar_j` square-free: the relation `taubar_j^2 = tau * xi_{j+1}` has
//! been applied exhaustively (this is the normal form). Degrees:
//!
//! ```text
//! |tau|       = (0, -1)
//! |xi_i|      = (2^{i+1} - 2, 2^i - 1)
//! |taubar_j|  = (2^{j+1} - 1, 2^j - 1)
//! ```
//!
//! and the Mahowald weight is `wt(xi_i) = wt(taubar_i) = 2^i`, `wt(tau) = 0`.

use crate::Error;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Internal bidegree `(t, w)`: topological degree and motivic weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiDegree {
    pub t: i32,
    pub w: i32,
}

impl BiDegree {
    pub const ZERO: BiDegree = BiDegree { t: 0, w: 0 };

    pub fn new(t: i32, w: i32) -> Self {
        BiDegree { t, w }
    }
}

impl std::ops::Add for BiDegree {
    type Output = BiDegree;
    fn add(self, rhs: BiDegree) -> BiDegree {
        BiDegree::new(self.t + rhs.t, self.w + rhs.w)
    }
}

impl std::ops::Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, rhs: BiDegree) -> BiDegree {
        BiDegree::new(self.t - rhs.t, self.w - rhs.w)
    }
}

/// A normal-form monomial of the dual motivic Steenrod algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    tau_power: u32,
    /// Exponent of `xi_i` at index `i - 1`; trailing zeros trimmed.
    xi: Vec<u32>,
    /// Square-free occurrences of `taubar_j`.
    taus: BTreeSet<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            tau_power: 0,
            xi: Vec::new(),
            taus: BTreeSet::new(),
        }
    }

    pub fn tau(k: u32) -> Self {
        Monomial {
            tau_power: k,
            xi: Vec::new(),
            taus: BTreeSet::new(),
        }
    }

    /// `xi_i^e`, `i >= 1`.
    pub fn xi(i: u32, e: u32) -> Self {
        assert!(i >= 1, "xi index starts at 1");
        let mut xi = vec![0; i as usize];
        xi[i as usize - 1] = e;
        let mut m = Monomial {
            tau_power: 0,
            xi,
            taus: BTreeSet::new(),
        };
        m.trim();
        m
    }

    /// `taubar_j`, `j >= 0`.
    pub fn taubar(j: u32) -> Self {
        Monomial {
            tau_power: 0,
            xi: Vec::new(),
            taus: [j].into_iter().collect(),
        }
    }

    fn trim(&mut self) {
        while self.xi.last() == Some(&0) {
            self.xi.pop();
        }
    }

    pub fn is_one(&self) -> bool {
        self.tau_power == 0 && self.xi.is_empty() && self.taus.is_empty()
    }

    pub fn tau_power(&self) -> u32 {
        self.tau_power
    }

    pub fn xi_exponent(&self, i: u32) -> u32 {
        self.xi.get(i as usize - 1).copied().unwrap_or(0)
    }

    pub fn xi_exponents(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.xi
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i as u32 + 1, e))
    }

    pub fn tau_indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.taus.iter().copied()
    }

    pub fn has_taubar(&self, j: u32) -> bool {
        self.taus.contains(&j)
    }

    /// The monomial with the `tau`-power stripped.
    pub fn tau_free_part(&self) -> Monomial {
        Monomial {
            tau_power: 0,
            xi: self.xi.clone(),
            taus: self.taus.clone(),
        }
    }

    pub fn with_extra_tau(&self, k: u32) -> Monomial {
        Monomial {
            tau_power: self.tau_power + k,
            xi: self.xi.clone(),
            taus: self.taus.clone(),
        }
    }

    pub fn degree(&self) -> BiDegree {
        let mut t: i32 = 0;
        let mut w: i32 = -(self.tau_power as i32);
        for (i, e) in self.xi_exponents() {
            t += e as i32 * ((1 << (i + 1)) - 2);
            w += e as i32 * ((1 << i) - 1);
        }
        for j in self.taus.iter() {
            t += (1 << (j + 1)) - 1;
            w += (1 << j) - 1;
        }
        BiDegree::new(t, w)
    }

    /// Mahowald weight; additive over products, zero on `tau`.
    pub fn weight(&self) -> u64 {
        let mut wt: u64 = 0;
        for (i, e) in self.xi_exponents() {
            wt += (e as u64) << i;
        }
        for j in self.taus.iter() {
            wt += 1 << j;
        }
        wt
    }

    /// Product of two normal forms, renormalized.
    pub fn multiply(&self, rhs: &Monomial) -> Monomial {
        let mut raw = RawMonomial::default();
        raw.tau_power = self.tau_power + rhs.tau_power;
        for (i, e) in self.xi_exponents().chain(rhs.xi_exponents()) {
            raw.add_xi(i, e);
        }
        for j in self.taus.iter().chain(rhs.taus.iter()) {
            raw.add_taubar(*j, 1);
        }
        raw.normalize()
    }

    /// Deterministic order: (t, w, exponent vector lexicographically).
    fn key(&self) -> (i32, i32, u32, Vec<u32>, Vec<u32>) {
        let d = self.degree();
        (
            d.t,
            d.w,
            self.tau_power,
            self.xi.clone(),
            self.taus.iter().copied().collect(),
        )
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        if self.tau_power == 1 {
            parts.push("t".to_string());
        } else if self.tau_power > 1 {
            parts.push(format!("t^{}", self.tau_power));
        }
        for (i, e) in self.xi_exponents() {
            if e == 1 {
                parts.push(format!("xi{i}"));
            } else {
                parts.push(format!("xi{i}^{e}"));
            }
        }
        for j in self.taus.iter() {
            parts.push(format!("tau{j}"));
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse the CLI/JSON monomial syntax, e.g. `t^2 xi1^2 tau2` or `1`.
pub fn parse_monomial(input: &str) -> Result<Monomial, Error> {
    let mut raw = RawMonomial::default();
    let trimmed = input.trim();
    if trimmed == "1" {
        return Ok(Monomial::one());
    }
    for tok in trimmed.split_whitespace() {
        let (head, exp) = match tok.split_once('^') {
            Some((h, e)) => {
                let e: u32 = e
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                (h, e)
            }
            None => (tok, 1),
        };
        if head == "t" {
            raw.tau_power += exp;
        } else if let Some(i) = head.strip_prefix("xi") {
            let i: u32 = i
                .parse()
                .map_err(|_| Error::Parse(format!("bad xi index in `{tok}`")))?;
            if i == 0 {
                return Err(Error::Parse("xi index starts at 1".into()));
            }
            raw.add_xi(i, exp);
        } else if let Some(j) = head.strip_prefix("tau") {
            let j: u32 = j
                .parse()
                .map_err(|_| Error::Parse(format!("bad tau index in `{tok}`")))?;
            raw.add_taubar(j, exp);
        } else {
            return Err(Error::Parse(format!("unknown token `{tok}`")));
        }
    }
    Ok(raw.normalize())
}

/// An unnormalized formal product of generators; `taubar` exponents may
/// exceed one before `normalize` is called.
#[derive(Default, Clone)]
pub struct RawMonomial {
    pub tau_power: u32,
    xi: Vec<u32>,
    taubar: Vec<u32>,
}

impl RawMonomial {
    pub fn add_xi(&mut self, i: u32, e: u32) {
        assert!(i >= 1);
        if self.xi.len() < i as usize {
            self.xi.resize(i as usize, 0);
        }
        self.xi[i as usize - 1] += e;
    }

    pub fn add_taubar(&mut self, j: u32, e: u32) {
        if self.taubar.len() <= j as usize {
            self.taubar.resize(j as usize + 1, 0);
        }
        self.taubar[j as usize] += e;
    }

    /// Exhaustively rewrite `taubar_j^2 -> tau * xi_{j+1}`. Each step strictly
    /// reduces the total taubar exponent, so this terminates; the result is
    /// independent of rewrite order because the rewrites at distinct indices
    /// commute and never create new taubar factors.
    pub fn normalize(mut self) -> Monomial {
        for j in 0..self.taubar.len() {
            let e = self.taubar[j];
            if e >= 2 {
                let pairs = e / 2;
                self.taubar[j] = e % 2;
                self.tau_power += pairs;
                self.add_xi(j as u32 + 1, pairs);
            }
        }
        let mut m = Monomial {
            tau_power: self.tau_power,
            xi: self.xi,
            taus: self
                .taubar
                .iter()
                .enumerate()
                .filter(|(_, &e)| e == 1)
                .map(|(j, _)| j as u32)
                .collect(),
        };
        m.trim();
        m
    }
}

/// An F2-linear combination of normal-form monomials (presence = 1).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeSet<Monomial>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: Monomial) -> Self {
        AlgebraElement {
            terms: [m].into_iter().collect(),
        }
    }

    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for m in rhs.terms.iter() {
            out.toggle(m.clone());
        }
        out
    }

    /// Bilinear F2 product with characteristic-2 cancellation.
    pub fn multiply(&self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for a in self.terms.iter() {
            for b in rhs.terms.iter() {
                out.toggle(a.multiply(b));
            }
        }
        out
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The (sub/quotient) Hopf algebras of the dual Steenrod algebra in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraSpec {
    /// The full dual Steenrod algebra.
    ADual,
    /// `A(n)` dual, `n <= 1`.
    ANDual(u8),
    /// `A//A(n)` dual, `n <= 1`.
    AModANDual(u8),
    /// `(A(1)//A(0))` dual `= E(xi1, taubar1)`.
    A1ModA0Dual,
}

impl AlgebraSpec {
    pub fn name(&self) -> String {
        match self {
            AlgebraSpec::ADual => "A^v".into(),
            AlgebraSpec::ANDual(n) => format!("A({n})^v"),
            AlgebraSpec::AModANDual(n) => format!("A//A({n})^v"),
            AlgebraSpec::A1ModA0Dual => "A(1)//A(0)^v".into(),
        }
    }

    /// Membership of a normal-form monomial (ignoring its `tau` power).
    pub fn contains(&self, m: &Monomial) -> bool {
        match self {
            AlgebraSpec::ADual => true,
            AlgebraSpec::ANDual(0) => m.xi.iter().all(|&e| e == 0) && m.taus.iter().all(|&j| j == 0),
            AlgebraSpec::ANDual(1) => {
                m.xi_exponent(1) <= 1
                    && m.xi.iter().skip(1).all(|&e| e == 0)
                    && m.taus.iter().all(|&j| j <= 1)
            }
            AlgebraSpec::AModANDual(0) => m.taus.iter().all(|&j| j >= 1),
            AlgebraSpec::AModANDual(1) => {
                m.xi_exponent(1) % 2 == 0 && m.taus.iter().all(|&j| j >= 2)
            }
            AlgebraSpec::A1ModA0Dual => {
                m.xi_exponent(1) <= 1
                    && m.xi.iter().skip(1).all(|&e| e == 0)
                    && m.taus.iter().all(|&j| j == 1)
            }
            AlgebraSpec::ANDual(n) | AlgebraSpec::AModANDual(n) => {
                unimplemented!("A({n}) beyond n = 1 is out of scope")
            }
        }
    }

    /// Project an `A^v` monomial into this algebra: the identity on members,
    /// zero on monomials containing a killed generator power.
    pub fn project(&self, m: &Monomial) -> Option<Monomial> {
        self.contains(m).then(|| m.clone())
    }
}

/// One term `left (x) tau^shift * right` of a coproduct; the convention puts
/// every `tau` emitted by normalization on the right tensor factor, so `left`
/// is always `tau`-free.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorTerm {
    pub left: Monomial,
    pub right: Monomial,
}

impl TensorTerm {
    fn canonicalize(mut self) -> Self {
        let k = self.left.tau_power;
        if k > 0 {
            self.left.tau_power = 0;
            self.right.tau_power += k;
        }
        self
    }
}

/// An F2 sum of tensor terms.
pub type TensorElement = BTreeSet<TensorTerm>;

fn tensor_toggle(set: &mut TensorElement, t: TensorTerm) {
    let t = t.canonicalize();
    if !set.remove(&t) {
        set.insert(t);
    }
}

fn tensor_multiply(a: &TensorElement, b: &TensorElement) -> TensorElement {
    let mut out = TensorElement::new();
    for x in a {
        for y in b {
            tensor_toggle(
                &mut out,
                TensorTerm {
                    left: x.left.multiply(&y.left),
                    right: x.right.multiply(&y.right),
                },
            );
        }
    }
    out
}

/// Full coproduct of a generator in `A^v`:
/// `psi(xi_k) = sum_{i+j=k} xi_i (x) xi_j^{2^i}` and
/// `psi(taubar_k) = sum_{i+j=k} taubar_i (x) xi_j^{2^i} + 1 (x) taubar_k`.
fn coproduct_generator(gen: &Monomial) -> TensorElement {
    let mut out = TensorElement::new();
    if let Some((i, _)) = gen.xi_exponents().next() {
        let k = i;
        for i in 0..=k {
            let j = k - i;
            let left = if i == 0 { Monomial::one() } else { Monomial::xi(i, 1) };
            let right = if j == 0 { Monomial::one() } else { Monomial::xi(j, 1 << i) };
            tensor_toggle(&mut out, TensorTerm { left, right });
        }
    } else {
        let k = gen.taus.iter().next().copied().expect("generator");
        for i in 0..=k {
            let j = k - i;
            let right = if j == 0 { Monomial::one() } else { Monomial::xi(j, 1 << i) };
            tensor_toggle(
                &mut out,
                TensorTerm {
                    left: Monomial::taubar(i),
                    right,
                },
            );
        }
        tensor_toggle(
            &mut out,
            TensorTerm {
                left: Monomial::one(),
                right: Monomial::taubar(k),
            },
        );
    }
    out
}

/// Full coproduct of a normal-form monomial in `A^v`, extended
/// multiplicatively from the generator formulas. `tau` is grouplike and
/// carried on the right factor.
pub fn coproduct(m: &Monomial) -> TensorElement {
    let mut acc: TensorElement = [TensorTerm {
        left: Monomial::one(),
        right: Monomial::tau(m.tau_power),
    }]
    .into_iter()
    .collect();
    for (i, e) in m.xi_exponents() {
        let gen = coproduct_generator(&Monomial::xi(i, 1));
        // square-and-multiply on the exponent
        let mut pow = e;
        let mut base = gen;
        while pow > 0 {
            if pow & 1 == 1 {
                acc = tensor_multiply(&acc, &base);
            }
            pow >>= 1;
            if pow > 0 {
                base = tensor_multiply(&base, &base);
            }
        }
    }
    for j in m.taus.iter() {
        let gen = coproduct_generator(&Monomial::taubar(*j));
        acc = tensor_multiply(&acc, &gen);
    }
    acc
}

/// Coproduct with a membership check against `spec`.
pub fn coproduct_in(m: &Monomial, spec: AlgebraSpec) -> Result<TensorElement, Error> {
    if !spec.contains(m) {
        return Err(Error::NotInAlgebra {
            monomial: m.to_string(),
            algebra: spec.name(),
        });
    }
    Ok(coproduct(m))
}

/// All `tau`-free normal-form monomials of `spec` (its `M2`-module basis)
/// with `t <= t_max` and `w >= w_min`, sorted by `(t, w, exponents)`.
pub fn basis(spec: AlgebraSpec, t_max: i32, w_min: i32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if t_max < 0 {
        return out;
    }
    // xi_i enters while its degree fits; same for taubar_j.
    let mut max_xi = 0u32;
    while (1i64 << (max_xi + 2)) - 2 <= t_max as i64 {
        max_xi += 1;
    }
    let mut max_tau: i32 = -1;
    while (1i64 << (max_tau + 2)) - 1 <= t_max as i64 {
        max_tau += 1;
    }
    let mut stack: Vec<Monomial> = vec![Monomial::one()];
    // Enumerate xi exponents first, then taubar subsets, pruning on degree.
    fn extend_xi(
        spec: AlgebraSpec,
        cur: &Monomial,
        next_i: u32,
        max_xi: u32,
        t_max: i32,
        out: &mut Vec<Monomial>,
    ) {
        if next_i > max_xi {
            out.push(cur.clone());
            return;
        }
        let step = ((1i64 << (next_i + 1)) - 2) as i32;
        let mut e = 0u32;
        loop {
            let t = cur.degree().t + e as i32 * step;
            if t > t_max {
                break;
            }
            let allowed = match spec {
                AlgebraSpec::ADual => true,
                AlgebraSpec::ANDual(0) => e == 0,
                AlgebraSpec::ANDual(1) | AlgebraSpec::A1ModA0Dual => next_i > 1 && e == 0 || next_i == 1 && e <= 1,
                AlgebraSpec::AModANDual(0) => true,
                AlgebraSpec::AModANDual(1) => next_i != 1 || e % 2 == 0,
                _ => unreachable!(),
            };
            if allowed {
                let mut m = cur.clone();
                if e > 0 {
                    m = m.multiply(&Monomial::xi(next_i, e));
                }
                extend_xi(spec, &m, next_i + 1, max_xi, t_max, out);
            }
            e += 1;
        }
    }
    let mut xi_part = Vec::new();
    extend_xi(spec, &stack.pop().unwrap(), 1, max_xi, t_max, &mut xi_part);
    for base in xi_part {
        // choose a subset of taubar indices
        let taus: Vec<u32> = (0..=max_tau.max(-1))
            .filter_map(|j| {
                let j = j as u32;
                let ok = match spec {
                    AlgebraSpec::ADual => true,
                    AlgebraSpec::ANDual(0) => j == 0,
                    AlgebraSpec::ANDual(1) => j <= 1,
                    AlgebraSpec::AModANDual(0) => j >= 1,
                    AlgebraSpec::AModANDual(1) => j >= 2,
                    AlgebraSpec::A1ModA0Dual => j == 1,
                    _ => unreachable!("A(n) beyond n = 1 is out of scope"),
                };
                ok.then_some(j)
            })
            .collect();
        let n = taus.len();
        'subset: for mask in 0u64..(1 << n) {
            let mut m = base.clone();
            for (bit, &j) in taus.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    m = m.multiply(&Monomial::taubar(j));
                    if m.degree().t > t_max {
                        continue 'subset;
                    }
                }
            }
            if m.degree().t <= t_max && m.degree().w >= w_min {
                out.push(m);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        // taubar1 * taubar1 -> tau xi2
        let m = Monomial::taubar(1).multiply(&Monomial::taubar(1));
        assert_eq!(m, parse_monomial("t xi2").unwrap());
        // xi1 * 1 -> xi1
        assert_eq!(Monomial::xi(1, 1).multiply(&Monomial::one()), Monomial::xi(1, 1));
        // taubar0^2 * taubar1 -> tau xi1 taubar1
        let mut raw = RawMonomial::default();
        raw.add_taubar(0, 2);
        raw.add_taubar(1, 1);
        assert_eq!(raw.normalize(), parse_monomial("t xi1 tau1").unwrap());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Monomial::xi(2, 1).degree(), BiDegree::new(6, 3));
        assert_eq!(Monomial::taubar(0).degree(), BiDegree::new(1, 0));
        assert_eq!(Monomial::tau(1).degree(), BiDegree::new(0, -1));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(Monomial::taubar(3).weight(), 8);
        assert_eq!(Monomial::tau(5).weight(), 0);
        let m = parse_monomial("xi1^2 tau2").unwrap();
        assert_eq!(m.weight(), 8);
    }

    #[test]
    fn multiply_examples() {
        let xi1 = AlgebraElement::from_monomial(Monomial::xi(1, 1));
        assert_eq!(
            xi1.multiply(&xi1),
            AlgebraElement::from_monomial(Monomial::xi(1, 2))
        );
        let t1 = AlgebraElement::from_monomial(Monomial::taubar(1));
        assert_eq!(
            t1.multiply(&t1),
            AlgebraElement::from_monomial(parse_monomial("t xi2").unwrap())
        );
        // (xi1 + taubar0)^2 = xi1^2 + tau xi1 in characteristic 2
        let mut s = xi1.clone();
        s.toggle(Monomial::taubar(0));
        let sq = s.multiply(&s);
        let mut expect = AlgebraElement::from_monomial(Monomial::xi(1, 2));
        expect.toggle(parse_monomial("t xi1").unwrap());
        assert_eq!(sq, expect);
    }

    #[test]
    fn coproduct_examples() {
        // psi(xi1) = xi1 (x) 1 + 1 (x) xi1
        let c = coproduct(&Monomial::xi(1, 1));
        assert_eq!(c.len(), 2);
        assert!(c.contains(&TensorTerm {
            left: Monomial::xi(1, 1),
            right: Monomial::one()
        }));
        // psi(taubar1) = taubar1 (x) 1 + taubar0 (x) xi1 + 1 (x) taubar1
        let c = coproduct(&Monomial::taubar(1));
        assert_eq!(c.len(), 3);
        assert!(c.contains(&TensorTerm {
            left: Monomial::taubar(0),
            right: Monomial::xi(1, 1)
        }));
        // psi(1) = 1 (x) 1
        let c = coproduct(&Monomial::one());
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn basis_examples() {
        let b = basis(AlgebraSpec::ANDual(1), 6, 0);
        assert_eq!(b.len(), 8);
        let b = basis(AlgebraSpec::AModANDual(0), 3, 0);
        let names: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, vec!["1", "xi1", "tau1"]);
        assert!(basis(AlgebraSpec::ADual, -1, 0).is_empty());
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["1", "t^2 xi1^2 tau2", "xi1 tau0 tau3", "t xi2"] {
            let m = parse_monomial(s).unwrap();
            assert_eq!(parse_monomial(&m.to_string()).unwrap(), m);
        }
    }
}
