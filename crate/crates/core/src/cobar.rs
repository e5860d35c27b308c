//! The reduced cobar complex of the `A(1)` dual with coefficients in a
//! comodule.
//!
//! `C^s(M) = Abar^{(x)s} (x) M` where `Abar` is the coaugmentation coideal.
//! Tensor products are over `M2`, so the total `tau`-power of a word is
//! carried canonically on the coefficient slot. The differential inserts the
//! reduced coproduct into each slot and appends the reduced coaction of the
//! coefficient; signs are trivial in characteristic two.
//!
//! This is the definitional model: small windows only. Production charts go
//! through [`crate::resolution`], which this module cross-validates.

use crate::comodule::Comodule;
use crate::linalg::{image_quotient, MatrixF2};
use crate::steenrod::{basis as algebra_basis, coproduct, AlgebraSpec, Monomial};
use std::collections::BTreeMap;
use std::sync::Arc;

/// The seven coideal letters of the `A(1)` dual, in (t, w, lex) order.
pub fn letters() -> Vec<Monomial> {
    algebra_basis(AlgebraSpec::ANDual(1), 6, 0)
        .into_iter()
        .filter(|m| !m.is_one())
        .collect()
}

/// A cobar word `l_1 | ... | l_s (x) tau^k x_coef`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CobarWord {
    pub letters: Vec<u8>,
    pub coef: usize,
    pub tau: u32,
}

pub struct CobarComplex {
    pub module: Arc<Comodule>,
    pub letters: Vec<Monomial>,
    /// reduced coproduct per letter: (left letter, right letter, tau emitted)
    reduced: Vec<Vec<(u8, u8, u32)>>,
    /// reduced coaction of each coefficient: (letter, target, tau shift)
    coaction: Vec<Vec<(u8, usize, u32)>>,
}

impl CobarComplex {
    pub fn new(module: Arc<Comodule>) -> Self {
        let letters = letters();
        let index: BTreeMap<Monomial, u8> = letters
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i as u8))
            .collect();
        let reduced = letters
            .iter()
            .map(|l| {
                let mut terms: Vec<(u8, u8, u32)> = Vec::new();
                for t in coproduct(l) {
                    let right_free = t.right.tau_free_part();
                    if t.left.is_one() || right_free.is_one() {
                        continue; // killed in the coideal
                    }
                    let (Some(&a), Some(&b)) = (index.get(&t.left), index.get(&right_free)) else {
                        continue; // projected away from A(1) dual
                    };
                    terms.push((a, b, t.right.tau_power()));
                }
                terms.sort();
                // characteristic 2: cancel duplicate pairs
                let mut out = Vec::new();
                let mut i = 0;
                while i < terms.len() {
                    if i + 1 < terms.len() && terms[i] == terms[i + 1] {
                        i += 2;
                    } else {
                        out.push(terms[i]);
                        i += 1;
                    }
                }
                out
            })
            .collect();
        let coaction = module
            .coaction
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .filter(|t| !t.left.is_one())
                    .map(|t| {
                        let a = *index
                            .get(&t.left)
                            .expect("coaction letter outside A(1) dual");
                        (a, t.target, t.tau_shift)
                    })
                    .collect()
            })
            .collect();
        CobarComplex {
            module,
            letters,
            reduced,
            coaction,
        }
    }

    fn letter_degree(&self, l: u8) -> (i32, i32) {
        let d = self.letters[l as usize].degree();
        (d.t, d.w)
    }

    /// All cobar words at tridegree `(s, t, w)`, deterministically ordered.
    pub fn basis(&self, s: i32, t: i32, w: i32) -> Vec<CobarWord> {
        assert!(s >= 0);
        let mut out = Vec::new();
        let mut stack: Vec<u8> = Vec::new();
        self.enumerate(s as usize, t, &mut stack, &mut out, w);
        out.sort();
        out
    }

    fn enumerate(
        &self,
        slots: usize,
        t_left: i32,
        stack: &mut Vec<u8>,
        out: &mut Vec<CobarWord>,
        w: i32,
    ) {
        if slots == 0 {
            for (i, b) in self.module.basis.iter().enumerate() {
                if b.degree.t == t_left {
                    let w0: i32 = stack
                        .iter()
                        .map(|&l| self.letter_degree(l).1)
                        .sum::<i32>()
                        + b.degree.w;
                    if w0 >= w {
                        out.push(CobarWord {
                            letters: stack.clone(),
                            coef: i,
                            tau: (w0 - w) as u32,
                        });
                    }
                }
            }
            return;
        }
        for l in 0..self.letters.len() as u8 {
            let (lt, _) = self.letter_degree(l);
            if lt <= t_left {
                stack.push(l);
                self.enumerate(slots - 1, t_left - lt, stack, out, w);
                stack.pop();
            }
        }
    }

    /// Differential of a single word, as index pairs into the `(s+1)`-basis.
    fn differential_word(&self, word: &CobarWord, target: &BTreeMap<CobarWord, usize>) -> Vec<usize> {
        let mut acc: Vec<usize> = Vec::new();
        let mut toggle = |w: CobarWord| {
            let idx = *target
                .get(&w)
                .unwrap_or_else(|| panic!("differential left the window: {w:?}"));
            if let Some(pos) = acc.iter().position(|&x| x == idx) {
                acc.remove(pos);
            } else {
                acc.push(idx);
            }
        };
        for (slot, &l) in word.letters.iter().enumerate() {
            for &(a, b, tau) in &self.reduced[l as usize] {
                let mut letters = word.letters.clone();
                letters[slot] = a;
                letters.insert(slot + 1, b);
                toggle(CobarWord {
                    letters,
                    coef: word.coef,
                    tau: word.tau + tau,
                });
            }
        }
        for &(a, y, shift) in &self.coaction[word.coef] {
            let mut letters = word.letters.clone();
            letters.push(a);
            toggle(CobarWord {
                letters,
                coef: y,
                tau: word.tau + shift,
            });
        }
        acc
    }

    /// The matrix of `d : C^s(t, w) -> C^{s+1}(t, w)` on the given bases.
    pub fn differential(&self, s: i32, t: i32, w: i32) -> MatrixF2 {
        let src = self.basis(s, t, w);
        let dst = self.basis(s + 1, t, w);
        let lookup: BTreeMap<CobarWord, usize> =
            dst.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m = MatrixF2::zero(src.len(), dst.len());
        for (r, word) in src.iter().enumerate() {
            for c in self.differential_word(word, &lookup) {
                m.set(r, c, true);
            }
        }
        m
    }

    /// `Ext^{s,t,w}` as cobar cohomology; small windows only.
    pub fn ext_dim(&self, s: i32, t: i32, w: i32) -> usize {
        let outgoing = self.differential(s, t, w);
        let incoming = if s == 0 {
            MatrixF2::zero(0, outgoing.rows())
        } else {
            self.differential(s - 1, t, w)
        };
        image_quotient(&incoming, &outgoing).dim
    }

    /// Check `d o d = 0` at a tridegree; a failure is an implementation bug.
    pub fn check_d_squared(&self, s: i32, t: i32, w: i32) -> Result<(), crate::Error> {
        let d1 = self.differential(s, t, w);
        let d2 = self.differential(s + 1, t, w);
        if d1.mul(&d2).is_zero() {
            Ok(())
        } else {
            Err(crate::Error::DifferentialSquare { s, t, w })
        }
    }
}

/// Matrix of the cochain map `C^s(source) -> C^s(target)` induced by a
/// comodule map, at a tridegree.
pub fn induced_map(
    src: &CobarComplex,
    dst: &CobarComplex,
    map: &crate::comodule::ComoduleMap,
    s: i32,
    t: i32,
    w: i32,
) -> MatrixF2 {
    let src_basis = src.basis(s, t, w);
    let dst_basis = dst.basis(s, t, w);
    let lookup: BTreeMap<CobarWord, usize> = dst_basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let mut m = MatrixF2::zero(src_basis.len(), dst_basis.len());
    for (r, word) in src_basis.iter().enumerate() {
        for &(shift, target) in &map.values[word.coef] {
            let image = CobarWord {
                letters: word.letters.clone(),
                coef: target,
                tau: word.tau + shift,
            };
            let c = lookup[&image];
            m.set(r, c, !m.get(r, c));
        }
    }
    m
}

/// Verify exactness of the long exact sequence in `Ext` induced by a short
/// exact sequence of comodules, per tridegree, with the connecting map
/// computed by an explicit cobar lift (preimage, differential, inclusion
/// solve). Checked for `s < s_max` so that every map in sight is computed.
pub fn check_les_exactness(
    ses: &crate::comodule::ShortExactSeq,
    s_max: i32,
    t_max: i32,
    w_min: i32,
) -> Result<(), crate::Error> {
    let ca = CobarComplex::new(std::sync::Arc::clone(&ses.sub));
    let cb = CobarComplex::new(std::sync::Arc::clone(&ses.total));
    let cc = CobarComplex::new(std::sync::Arc::clone(&ses.quotient));
    for t in 0..=t_max {
        for w in w_min..=t {
            // homology data per complex per s, plus the three maps
            let mut h: Vec<Vec<crate::linalg::Homology>> = Vec::new();
            for (ci, c) in [&ca, &cb, &cc].into_iter().enumerate() {
                let mut per_s = Vec::new();
                for s in 0..=s_max {
                    let outgoing = c.differential(s, t, w);
                    let incoming = if s == 0 {
                        MatrixF2::zero(0, outgoing.rows())
                    } else {
                        c.differential(s - 1, t, w)
                    };
                    per_s.push(image_quotient(&incoming, &outgoing));
                }
                let _ = ci;
                h.push(per_s);
            }
            for s in 0..s_max {
                let su = s as usize;
                // induced maps on homology at filtration s
                let i_star = homology_map(&ca, &cb, &ses.inclusion, s, t, w, &h[0][su], &h[1][su]);
                let p_star = homology_map(&cb, &cc, &ses.projection, s, t, w, &h[1][su], &h[2][su]);
                let delta = connecting_map(
                    &ca,
                    &cb,
                    &cc,
                    ses,
                    s,
                    t,
                    w,
                    &h[2][su],
                    &h[0][su + 1],
                );
                // exactness at H^s(total): im i* = ker p*
                check_node(&i_star, &p_star, "H(total)", s, t, w)?;
                // exactness at H^s(quotient): im p* = ker delta
                check_node(&p_star, &delta, "H(quotient)", s, t, w)?;
                // exactness at H^{s+1}(sub): im delta = ker i*(s+1)
                if s + 1 < s_max {
                    let i_next =
                        homology_map(&ca, &cb, &ses.inclusion, s + 1, t, w, &h[0][su + 1], &h[1][su + 1]);
                    check_node(&delta, &i_next, "H(sub)", s + 1, t, w)?;
                }
            }
        }
    }
    Ok(())
}

fn check_node(
    incoming: &MatrixF2,
    outgoing: &MatrixF2,
    node: &str,
    s: i32,
    t: i32,
    w: i32,
) -> Result<(), crate::Error> {
    let dim = outgoing.rows();
    debug_assert_eq!(incoming.cols(), dim);
    if !incoming.mul(outgoing).is_zero() {
        return Err(crate::Error::Inexact {
            t,
            w,
            detail: format!("LES composite nonzero at {node}, s={s}"),
        });
    }
    if incoming.rank() + outgoing.rank() != dim {
        return Err(crate::Error::Inexact {
            t,
            w,
            detail: format!(
                "LES not exact at {node}, s={s}: {} + {} != {}",
                incoming.rank(),
                outgoing.rank(),
                dim
            ),
        });
    }
    Ok(())
}

/// Matrix of an induced map on cobar cohomology, rows = source homology
/// basis, columns = target homology basis.
#[allow(clippy::too_many_arguments)]
fn homology_map(
    src: &CobarComplex,
    dst: &CobarComplex,
    map: &crate::comodule::ComoduleMap,
    s: i32,
    t: i32,
    w: i32,
    h_src: &crate::linalg::Homology,
    h_dst: &crate::linalg::Homology,
) -> MatrixF2 {
    let chain = induced_map(src, dst, map, s, t, w);
    let mut out = MatrixF2::zero(h_src.dim, h_dst.dim);
    for (r, rep) in h_src.representatives.iter().enumerate() {
        let mut image = vec![false; chain.cols()];
        for (i, &b) in rep.iter().enumerate() {
            if b {
                for c in 0..chain.cols() {
                    if chain.get(i, c) {
                        image[c] ^= true;
                    }
                }
            }
        }
        let coords = express_in_homology(dst, s, t, w, h_dst, &image);
        for (c, &v) in coords.iter().enumerate() {
            if v {
                out.set(r, c, true);
            }
        }
    }
    out
}

/// Connecting map `H^s(quotient) -> H^{s+1}(sub)` by cobar lift: choose a
/// cochain preimage through the projection, apply the cobar differential,
/// and pull the result back through the inclusion.
#[allow(clippy::too_many_arguments)]
fn connecting_map(
    ca: &CobarComplex,
    cb: &CobarComplex,
    cc: &CobarComplex,
    ses: &crate::comodule::ShortExactSeq,
    s: i32,
    t: i32,
    w: i32,
    h_quot: &crate::linalg::Homology,
    h_sub_next: &crate::linalg::Homology,
) -> MatrixF2 {
    let proj = induced_map(cb, cc, &ses.projection, s, t, w);
    let incl_next = induced_map(ca, cb, &ses.inclusion, s + 1, t, w);
    let d_total = cb.differential(s, t, w);
    let mut out = MatrixF2::zero(h_quot.dim, h_sub_next.dim);
    for (r, rep) in h_quot.representatives.iter().enumerate() {
        // preimage through the projection
        let x = proj
            .solve(rep)
            .expect("projection not surjective on cobar cochains");
        // differential of the preimage
        let mut dx = vec![false; d_total.cols()];
        for (i, &b) in x.iter().enumerate() {
            if b {
                for c in 0..d_total.cols() {
                    if d_total.get(i, c) {
                        dx[c] ^= true;
                    }
                }
            }
        }
        // pull back through the inclusion
        let y = incl_next
            .solve(&dx)
            .expect("connecting lift left the sub complex");
        let coords = express_in_homology(ca, s + 1, t, w, h_sub_next, &y);
        for (c, &v) in coords.iter().enumerate() {
            if v {
                out.set(r, c, true);
            }
        }
    }
    out
}

fn express_in_homology(
    complex: &CobarComplex,
    s: i32,
    t: i32,
    w: i32,
    h: &crate::linalg::Homology,
    cocycle: &[bool],
) -> Vec<bool> {
    // rows: boundaries then representatives; solve and read the tail
    let incoming = if s == 0 {
        MatrixF2::zero(0, cocycle.len())
    } else {
        complex.differential(s - 1, t, w)
    };
    let mut rows: Vec<Vec<bool>> = (0..incoming.rows()).map(|r| incoming.row_to_vec(r)).collect();
    let nb = rows.len();
    rows.extend(h.representatives.iter().cloned());
    let m = MatrixF2::from_rows(&rows, cocycle.len());
    let x = m
        .solve(&cocycle.to_vec())
        .expect("vector not a cocycle modulo boundaries");
    x[nb..].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule;

    #[test]
    fn letter_set() {
        let ls = letters();
        assert_eq!(ls.len(), 7);
        let names: Vec<String> = ls.iter().map(|m| m.to_string()).collect();
        assert_eq!(
            names,
            vec!["tau0", "xi1", "tau1", "xi1 tau0", "tau0 tau1", "xi1 tau1", "xi1 tau0 tau1"]
        );
    }

    #[test]
    fn basis_examples() {
        let c = CobarComplex::new(comodule::Comodule::unit());
        // (M2, 0, 0, 0) -> the empty word
        assert_eq!(c.basis(0, 0, 0).len(), 1);
        // (M2, 1, 1, 0) -> { tau0 (x) 1 }
        let b = c.basis(1, 1, 0);
        assert_eq!(b.len(), 1);
        assert_eq!(c.letters[b[0].letters[0] as usize], Monomial::taubar(0));
        // (M2, 1, 2, 1) -> { xi1 (x) 1 }
        let b = c.basis(1, 2, 1);
        assert_eq!(b.len(), 1);
        assert_eq!(c.letters[b[0].letters[0] as usize], Monomial::xi(1, 1));
    }

    #[test]
    fn differential_examples() {
        let c = CobarComplex::new(comodule::Comodule::unit());
        // d(tau1 (x) 1) = tau0 | xi1 (x) 1 at (t,w) = (3,1)
        let src = c.basis(1, 3, 1);
        let tau1 = c
            .letters
            .iter()
            .position(|m| *m == Monomial::taubar(1))
            .unwrap() as u8;
        let r = src.iter().position(|w| w.letters == vec![tau1]).unwrap();
        let d = c.differential(1, 3, 1);
        let dst = c.basis(2, 3, 1);
        let hits: Vec<&CobarWord> = (0..dst.len()).filter(|&j| d.get(r, j)).map(|j| &dst[j]).collect();
        assert_eq!(hits.len(), 1);
        let tau0 = c.letters.iter().position(|m| *m == Monomial::taubar(0)).unwrap() as u8;
        let xi1 = c.letters.iter().position(|m| *m == Monomial::xi(1, 1)).unwrap() as u8;
        assert_eq!(hits[0].letters, vec![tau0, xi1]);
        // d(tau0 (x) 1) = 0: tau0 is primitive
        let d = c.differential(1, 1, 0);
        assert!(d.is_zero());
    }

    #[test]
    fn d_squared_zero_small() {
        let hz1 = comodule::brown_gitler(comodule::BrownGitlerKind::Integral, 1);
        for module in [comodule::Comodule::unit(), hz1] {
            let c = CobarComplex::new(module);
            for s in 0..4 {
                for t in 0..10 {
                    for w in -2..6 {
                        c.check_d_squared(s, t, w).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn ext_m2_low_degrees() {
        let c = CobarComplex::new(comodule::Comodule::unit());
        assert_eq!(c.ext_dim(0, 0, 0), 1);
        // h1 in Ext^{1,2,1}
        assert_eq!(c.ext_dim(1, 2, 1), 1);
        // tau h1^3 = 0: Ext^{3,6,2} = 0 while Ext^{3,6,3} = F2{h1^3}
        assert_eq!(c.ext_dim(3, 6, 2), 0);
        assert_eq!(c.ext_dim(3, 6, 3), 1);
    }
}
