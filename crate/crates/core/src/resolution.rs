//! Minimal free resolutions over the finite dual of the motivic `A(1)`.
//!
//! The `A(1)` dual is free of rank 8 over `M2`, so its comodules (free and
//! finite type over `M2`) dualize to modules over the `M2`-algebra
//! `A(1) = Hom_{M2}(A(1)^v, M2)`, and
//! `Ext_comod(M2, M) = Ext_{A(1)}(D(M), M2)` where `D(M)` is the dual
//! module. The right-hand side is computed from a minimal free resolution
//! `F_* -> D(M)` by taking cohomology of `Hom_{A(1)}(F_*, M2)`.
//!
//! Gradings are stored with the dual orientation throughout this module:
//! the dual basis element `theta_b` of the monomial `m_b` raises stored
//! degree by `deg(m_b)`, and `tau` raises stored weight by one. A chart
//! class of `Ext^{s,t,w}` corresponds to a Hom-cochain supported on
//! generators `g` of `F_s` with `t_g = t` and value `tau^{w_g - w}`; the
//! stored degree of a generator is therefore literally its chart `(t, w)`.
//!
//! Every piece of linear algebra happens on finite `(t, w)` slices over
//! GF(2). For a fixed `t` the slices stabilize above the largest basis
//! weight (multiplication by `tau` becomes a slice isomorphism), so
//! generator discovery terminates; the construction is complete, not
//! truncated, in the weight direction.

use crate::comodule::Comodule;
use crate::linalg::{image_quotient, Echelon, MatrixF2};
use crate::steenrod::{basis as algebra_basis, coproduct, AlgebraSpec, BiDegree, Monomial};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Multiplication table of `A(1)`, the `M2`-linear dual of the `A(1)` dual.
pub struct A1 {
    /// the 8 monomials of the `A(1)` dual in (t, w, lex) order; index 0 is 1
    pub monomials: Vec<Monomial>,
    /// `mult[i][j]` = terms of `theta_i * theta_j` as `(k, tau_power)`
    mult: Vec<Vec<Vec<(u8, u32)>>>,
}

fn toggle<T: PartialEq>(acc: &mut Vec<T>, x: T) {
    if let Some(pos) = acc.iter().position(|y| *y == x) {
        acc.remove(pos);
    } else {
        acc.push(x);
    }
}

impl A1 {
    pub fn new() -> Self {
        let monomials = algebra_basis(AlgebraSpec::ANDual(1), 6, 0);
        assert_eq!(monomials.len(), 8);
        assert!(monomials[0].is_one());
        let index: BTreeMap<Monomial, usize> = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        // <theta_i * theta_j, m> = coefficient of m_i (x) tau^e m_j in the
        // A(1)-dual coproduct of m (both slots projected to A(1) dual).
        let mut mult = vec![vec![Vec::new(); 8]; 8];
        for (k, m) in monomials.iter().enumerate() {
            for t in coproduct(m) {
                let right_free = t.right.tau_free_part();
                let (Some(&i), Some(&j)) = (index.get(&t.left), index.get(&right_free)) else {
                    continue;
                };
                toggle(&mut mult[i][j], (k as u8, t.right.tau_power()));
            }
        }
        for row in &mut mult {
            for cell in row.iter_mut() {
                cell.sort();
            }
        }
        let a1 = A1 { monomials, mult };
        a1.self_check();
        a1
    }

    pub fn degree(&self, b: u8) -> BiDegree {
        self.monomials[b as usize].degree()
    }

    /// `theta_i * theta_j` as `(basis, tau)` terms.
    pub fn multiply(&self, i: u8, j: u8) -> &[(u8, u32)] {
        &self.mult[i as usize][j as usize]
    }

    fn self_check(&self) {
        for j in 0..8u8 {
            assert_eq!(self.multiply(0, j), &[(j, 0)], "theta_0 not a left unit");
            assert_eq!(self.multiply(j, 0), &[(j, 0)], "theta_0 not a right unit");
        }
        for i in 0..8u8 {
            for j in 0..8u8 {
                for k in 0..8u8 {
                    let mut lhs: Vec<(u8, u32)> = Vec::new();
                    for &(p, e1) in self.multiply(i, j) {
                        for &(q, e2) in self.multiply(p, k) {
                            toggle(&mut lhs, (q, e1 + e2));
                        }
                    }
                    let mut rhs: Vec<(u8, u32)> = Vec::new();
                    for &(p, e1) in self.multiply(j, k) {
                        for &(q, e2) in self.multiply(i, p) {
                            toggle(&mut rhs, (q, e1 + e2));
                        }
                    }
                    lhs.sort();
                    rhs.sort();
                    assert_eq!(lhs, rhs, "A(1) associativity failure at ({i},{j},{k})");
                }
            }
        }
    }
}

impl Default for A1 {
    fn default() -> Self {
        Self::new()
    }
}

/// The dual module `D(M)` of a comodule: same `tau`-free basis labels and
/// stored degrees, with the transposed action
/// `theta_b . z_i = sum tau^k z_j` over coaction terms
/// `psi(y_j) = ... + m_b (x) tau^k y_i + ...`.
pub struct DualModule {
    pub name: String,
    pub degrees: Vec<BiDegree>,
    /// `action[b][i]` = terms of `theta_b . z_i` as `(target, tau)`
    action: Vec<Vec<Vec<(usize, u32)>>>,
}

impl DualModule {
    pub fn of(alg: &A1, module: &Comodule) -> Self {
        let n = module.basis.len();
        let mut action = vec![vec![Vec::new(); n]; 8];
        for (j, terms) in module.coaction.iter().enumerate() {
            for t in terms {
                let b = alg
                    .monomials
                    .iter()
                    .position(|m| *m == t.left)
                    .expect("coaction letter outside A(1) dual");
                toggle(&mut action[b][t.target], (j, t.tau_shift));
            }
        }
        let dual = DualModule {
            name: module.name.clone(),
            degrees: module.basis.iter().map(|b| b.degree).collect(),
            action,
        };
        dual.self_check(alg);
        dual
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn act(&self, b: u8, i: usize) -> &[(usize, u32)] {
        &self.action[b as usize][i]
    }

    /// Module law `(theta_i * theta_j) . z = theta_i . (theta_j . z)`.
    fn self_check(&self, alg: &A1) {
        for i in 0..8u8 {
            for j in 0..8u8 {
                for z in 0..self.rank() {
                    let mut lhs: Vec<(usize, u32)> = Vec::new();
                    for &(p, e1) in alg.multiply(i, j) {
                        for &(q, e2) in self.act(p, z) {
                            toggle(&mut lhs, (q, e1 + e2));
                        }
                    }
                    let mut rhs: Vec<(usize, u32)> = Vec::new();
                    for &(p, e1) in self.act(j, z) {
                        for &(q, e2) in self.act(i, p) {
                            toggle(&mut rhs, (q, e1 + e2));
                        }
                    }
                    lhs.sort();
                    rhs.sort();
                    assert_eq!(
                        lhs, rhs,
                        "dual module law failure for {} at ({i},{j},{z})",
                        self.name
                    );
                }
            }
        }
    }
}

/// One term `theta_b tau^e g` of an element of a free module (or, for
/// `s = 0` images, `tau^e z` of the dual module with `theta` unused = 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ResTerm {
    pub theta: u8,
    pub tau: u32,
    pub gen: u32,
}

/// A generator of some `F_s`, with its differential into `F_{s-1}` (into
/// `D(M)` for `s = 0`).
#[derive(Debug, Clone)]
pub struct Gen {
    pub degree: BiDegree,
    pub image: Vec<ResTerm>,
}

/// A minimal free resolution of the dual module of a comodule, complete for
/// internal degrees `t <= t_max` and homological degrees `s <= s_max`.
pub struct Resolution {
    pub alg: A1,
    pub module: Arc<Comodule>,
    pub dual: DualModule,
    /// `gens[s]` are the generators of `F_s`.
    pub gens: Vec<Vec<Gen>>,
    pub s_max: i32,
    pub t_max: i32,
}

/// A `(t, w)` slice basis of a free module: triples `(gen, theta, tau)`.
pub type SliceBasis = Vec<(u32, u8, u32)>;

impl Resolution {
    pub fn build(module: Arc<Comodule>, s_max: i32, t_max: i32) -> Resolution {
        let alg = A1::new();
        let dual = DualModule::of(&alg, &module);
        let mut res = Resolution {
            alg,
            module,
            dual,
            gens: Vec::new(),
            s_max,
            t_max,
        };
        for s in 0..=s_max {
            res.extend_level(s);
        }
        res.check_complex().expect("resolution differential broken");
        res
    }

    pub fn gen_degree(&self, s: i32, g: u32) -> BiDegree {
        self.gens[s as usize][g as usize].degree
    }

    /// Slice basis of `F_s` at `(t, w)`, ordered by (gen, theta).
    pub fn slice(&self, s: i32, t: i32, w: i32) -> SliceBasis {
        if s < 0 || s as usize >= self.gens.len() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (gi, g) in self.gens[s as usize].iter().enumerate() {
            for b in 0..8u8 {
                let d = self.alg.degree(b) + g.degree;
                if d.t == t && d.w <= w {
                    out.push((gi as u32, b, (w - d.w) as u32));
                }
            }
        }
        out
    }

    /// Slice basis of the dual module at `(t, w)`: pairs `(index, tau)`.
    pub fn module_slice(&self, t: i32, w: i32) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for (i, d) in self.dual.degrees.iter().enumerate() {
            if d.t == t && d.w <= w {
                out.push((i, (w - d.w) as u32));
            }
        }
        out
    }

    /// Left-multiply the stored image of generator `gen` of `F_s` by
    /// `theta_b tau^e`, accumulating `ResTerm`s (mod 2).
    fn push_forward(&self, s: i32, b: u8, e: u32, gen: u32, out: &mut Vec<ResTerm>) {
        for term in &self.gens[s as usize][gen as usize].image {
            if s == 0 {
                // image lives in the dual module
                for &(z, extra) in self.dual.act(b, term.gen as usize) {
                    toggle(
                        out,
                        ResTerm {
                            theta: 0,
                            tau: e + extra + term.tau,
                            gen: z as u32,
                        },
                    );
                }
            } else {
                for &(k, extra) in self.alg.multiply(b, term.theta) {
                    toggle(
                        out,
                        ResTerm {
                            theta: k,
                            tau: e + extra + term.tau,
                            gen: term.gen,
                        },
                    );
                }
            }
        }
    }

    /// Matrix of `d_s : F_s(t,w) -> target(t,w)` on slice bases, where the
    /// target is `F_{s-1}` for `s >= 1` and the dual module for `s = 0`.
    pub fn differential_slice(&self, s: i32, t: i32, w: i32) -> (SliceBasis, MatrixF2) {
        let src = self.slice(s, t, w);
        let (cols, lookup): (usize, BTreeMap<(u32, u8, u32), usize>) = if s == 0 {
            let dst = self.module_slice(t, w);
            (
                dst.len(),
                dst.iter()
                    .enumerate()
                    .map(|(i, &(z, e))| ((z as u32, 0u8, e), i))
                    .collect(),
            )
        } else {
            let dst = self.slice(s - 1, t, w);
            (
                dst.len(),
                dst.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect(),
            )
        };
        let mut m = MatrixF2::zero(src.len(), cols);
        for (r, &(gen, b, e)) in src.iter().enumerate() {
            let mut image = Vec::new();
            self.push_forward(s, b, e, gen, &mut image);
            for term in image {
                let c = lookup[&(term.gen, term.theta, term.tau)];
                m.set(r, c, !m.get(r, c));
            }
        }
        (src, m)
    }

    /// Weight range (inclusive) in which new generators can appear at level
    /// `s`, internal degree `t`: between the extreme weights of the slice
    /// bases; outside, slices are `tau`-shift isomorphic.
    fn weight_range(&self, s: i32, t: i32) -> Option<(i32, i32)> {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        if s == 0 {
            for d in &self.dual.degrees {
                if d.t == t {
                    lo = lo.min(d.w);
                    hi = hi.max(d.w);
                }
            }
        } else {
            for g in &self.gens[s as usize - 1] {
                for b in 0..8u8 {
                    let d = self.alg.degree(b) + g.degree;
                    if d.t == t {
                        lo = lo.min(d.w);
                        hi = hi.max(d.w);
                    }
                }
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// Discover the generators of `F_s` (a minimal cover of `ker d_{s-1}`,
    /// or of the dual module itself for `s = 0`).
    fn extend_level(&mut self, s: i32) {
        self.gens.push(Vec::new());
        for t in 0..=self.t_max {
            let Some((w_lo, w_hi)) = self.weight_range(s, t) else {
                continue;
            };
            for w in w_lo..=w_hi {
                // target space of the minimal cover at this slice
                let (covered_basis, kernel): (SliceBasis, Vec<Vec<bool>>) = if s == 0 {
                    let dst = self.module_slice(t, w);
                    let n = dst.len();
                    let basis: SliceBasis = dst
                        .iter()
                        .map(|&(z, e)| (z as u32, 0u8, e))
                        .collect();
                    let full: Vec<Vec<bool>> = (0..n)
                        .map(|i| (0..n).map(|j| i == j).collect())
                        .collect();
                    (basis, full)
                } else {
                    let (src, d_here) = self.differential_slice(s - 1, t, w);
                    (src, d_here.kernel_basis())
                };
                if kernel.is_empty() {
                    continue;
                }
                let lookup: BTreeMap<(u32, u8, u32), usize> = covered_basis
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, k)| (k, i))
                    .collect();
                // span of d_s(F_s so far) in this slice
                let mut span = Echelon::new(covered_basis.len());
                for (gen, b, e) in self.slice(s, t, w) {
                    let mut image = Vec::new();
                    self.push_forward(s, b, e, gen, &mut image);
                    let mut row = vec![false; covered_basis.len()];
                    for term in image {
                        let c = lookup[&(term.gen, term.theta, term.tau)];
                        row[c] ^= true;
                    }
                    span.insert(&row);
                }
                for kv in kernel {
                    if !span.insert(&kv) {
                        continue;
                    }
                    let image: Vec<ResTerm> = kv
                        .iter()
                        .enumerate()
                        .filter(|(_, &v)| v)
                        .map(|(i, _)| {
                            let (gen, theta, tau) = covered_basis[i];
                            ResTerm { theta, tau, gen }
                        })
                        .collect();
                    self.gens[s as usize].push(Gen {
                        degree: BiDegree::new(t, w),
                        image,
                    });
                }
            }
        }
    }

    /// Number of generators of `F_s` at stored degree `(t, w)`.
    pub fn gen_count(&self, s: i32, t: i32, w: i32) -> usize {
        self.gens
            .get(s as usize)
            .map(|v| {
                v.iter()
                    .filter(|g| g.degree == BiDegree::new(t, w))
                    .count()
            })
            .unwrap_or(0)
    }

    /// `d o d = 0` on every generator.
    pub fn check_complex(&self) -> Result<(), crate::Error> {
        for s in 1..self.gens.len() as i32 {
            for g in &self.gens[s as usize] {
                let mut acc: Vec<ResTerm> = Vec::new();
                for term in &g.image {
                    self.push_forward(s - 1, term.theta, term.tau, term.gen, &mut acc);
                }
                if !acc.is_empty() {
                    return Err(crate::Error::DifferentialSquare {
                        s,
                        t: g.degree.t,
                        w: g.degree.w,
                    });
                }
            }
        }
        Ok(())
    }

    /// Basis of `Hom_{A(1)}(F_s, M2)` at chart tridegree `(s, t, w)`: pairs
    /// `(gen, e)` with `t_g = t`, `e = w_g - w >= 0`; the cochain sends `g`
    /// to `tau^e`.
    pub fn hom_basis(&self, s: i32, t: i32, w: i32) -> Vec<(u32, u32)> {
        if s < 0 || s as usize >= self.gens.len() {
            return Vec::new();
        }
        self.gens[s as usize]
            .iter()
            .enumerate()
            .filter(|(_, g)| g.degree.t == t && g.degree.w >= w)
            .map(|(i, g)| (i as u32, (g.degree.w - w) as u32))
            .collect()
    }

    /// Matrix of the Hom differential `delta^s : Hom^s -> Hom^{s+1}` at
    /// chart degree `(t, w)`: `(delta f)(g') = f(d g')`, which picks up the
    /// `theta_0 tau^c` entries of the differential.
    pub fn hom_differential(&self, s: i32, t: i32, w: i32) -> MatrixF2 {
        let src = self.hom_basis(s, t, w);
        let dst = self.hom_basis(s + 1, t, w);
        let lookup: BTreeMap<(u32, u32), usize> = dst
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        let mut m = MatrixF2::zero(src.len(), dst.len());
        if s + 1 >= self.gens.len() as i32 {
            return m;
        }
        for (r, &(g, e)) in src.iter().enumerate() {
            for (gi, gen) in self.gens[s as usize + 1].iter().enumerate() {
                if gen.degree.t != t {
                    continue;
                }
                for term in &gen.image {
                    if term.gen == g && term.theta == 0 {
                        let key = (gi as u32, e + term.tau);
                        let c = lookup[&key];
                        m.set(r, c, !m.get(r, c));
                    }
                }
            }
        }
        m
    }

    /// `Ext^{s,t,w}(M2, M)`: dimension plus representative cochains over
    /// [`Resolution::hom_basis`].
    pub fn ext_cell(&self, s: i32, t: i32, w: i32) -> (usize, Vec<Vec<bool>>) {
        let outgoing = self.hom_differential(s, t, w);
        let incoming = if s == 0 {
            MatrixF2::zero(0, outgoing.rows())
        } else {
            self.hom_differential(s - 1, t, w)
        };
        let h = image_quotient(&incoming, &outgoing);
        (h.dim, h.representatives)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule;

    #[test]
    fn a1_tables_consistent() {
        let _ = A1::new(); // self_check runs inside
    }

    #[test]
    fn resolution_of_unit_low_degrees() {
        let res = Resolution::build(comodule::Comodule::unit(), 4, 12);
        res.check_complex().unwrap();
        assert_eq!(res.gens[0].len(), 1);
        // duals of taubar0 and xi1: the h0 and h1 generators
        assert_eq!(res.gen_count(1, 1, 0), 1, "h0 generator");
        assert_eq!(res.gen_count(1, 2, 1), 1, "h1 generator");
        // Ext^{0,0,0} = F2 and the tau tower below it
        assert_eq!(res.ext_cell(0, 0, 0).0, 1);
        assert_eq!(res.ext_cell(0, 0, -3).0, 1);
        assert_eq!(res.ext_cell(0, 1, 0).0, 0);
    }

    #[test]
    fn ext_m2_matches_cobar_oracle() {
        let res = Resolution::build(comodule::Comodule::unit(), 5, 12);
        res.check_complex().unwrap();
        let cob = crate::cobar::CobarComplex::new(comodule::Comodule::unit());
        for s in 0..=4 {
            for t in 0..=10 {
                for w in -3..=6 {
                    let dim = res.ext_cell(s, t, w).0;
                    let expect = cob.ext_dim(s, t, w);
                    assert_eq!(
                        dim, expect,
                        "Ext(M2) mismatch resolution vs cobar at ({s},{t},{w})"
                    );
                }
            }
        }
    }

    #[test]
    fn ext_hz1_matches_cobar_oracle() {
        let hz1 = comodule::brown_gitler(comodule::BrownGitlerKind::Integral, 1);
        let res = Resolution::build(Arc::clone(&hz1), 4, 10);
        let cob = crate::cobar::CobarComplex::new(hz1);
        for s in 0..=3 {
            for t in 0..=8 {
                for w in -3..=5 {
                    let dim = res.ext_cell(s, t, w).0;
                    let expect = cob.ext_dim(s, t, w);
                    assert_eq!(
                        dim, expect,
                        "Ext(HZ1) mismatch resolution vs cobar at ({s},{t},{w})"
                    );
                }
            }
        }
    }
}
