//! Independent classical engine: `Ext` over the classical `A(1)` dual
//! `F2[x]/(x^4) (x) E(y)` (`x` in degree 1, `y` in degree 3), used as the
//! Betti-realization oracle for tau-inverted motivic charts.
//!
//! Coefficients are the field `F2`, so the machinery is simpler than the
//! motivic resolution: a minimal free resolution has a zero Hom-differential
//! into `F2` and `Ext` dimensions are generator counts per `(s, t)`.
//! The code here deliberately shares nothing with [`crate::resolution`]
//! beyond the GF(2) matrix layer.

use crate::comodule::Comodule;
use crate::linalg::{Echelon, MatrixF2};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Monomial index of the classical `A(1)` dual basis `x^a y^eps`:
/// `idx = a + 4 * eps`, degrees `a + 3 * eps`.
fn cl_degree(idx: usize) -> i32 {
    (idx % 4) as i32 + 3 * (idx / 4) as i32
}

fn cl_mul(i: usize, j: usize) -> Option<usize> {
    let (a1, e1) = (i % 4, i / 4);
    let (a2, e2) = (j % 4, j / 4);
    if a1 + a2 >= 4 || e1 + e2 >= 2 {
        return None;
    }
    Some(a1 + a2 + 4 * (e1 + e2))
}

/// Coproduct of the classical `A(1)` dual in the tau = 1 specialization of
/// the motivic formulas: `x` is primitive and
/// `psi(y) = y (x) 1 + x (x) x^2 + 1 (x) y`.
fn cl_coproduct(idx: usize) -> Vec<(usize, usize)> {
    let (a, e) = (idx % 4, idx / 4);
    let mut acc: Vec<(usize, usize)> = vec![(0, 0)];
    let mul_into = |acc: &Vec<(usize, usize)>, factor: &[(usize, usize)]| {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &(l1, r1) in acc {
            for &(l2, r2) in factor {
                let (Some(l), Some(r)) = (cl_mul(l1, l2), cl_mul(r1, r2)) else {
                    continue;
                };
                if let Some(pos) = out.iter().position(|&p| p == (l, r)) {
                    out.remove(pos);
                } else {
                    out.push((l, r));
                }
            }
        }
        out
    };
    let psi_x = [(1, 0), (0, 1)];
    for _ in 0..a {
        acc = mul_into(&acc, &psi_x);
    }
    if e == 1 {
        let psi_y = [(4, 0), (1, 2), (0, 4)];
        acc = mul_into(&acc, &psi_y);
    }
    acc
}

/// A classical `A(1)`-dual comodule over `F2`: degrees plus a coaction table
/// with entries `(algebra monomial, target index)`.
pub struct ClassicalComodule {
    pub name: String,
    pub degrees: Vec<i32>,
    pub coaction: Vec<Vec<(usize, usize)>>,
}

impl ClassicalComodule {
    pub fn unit() -> Self {
        ClassicalComodule {
            name: "F2".into(),
            degrees: vec![0],
            coaction: vec![vec![(0, 0)]],
        }
    }

    /// tau = 1 specialization of a motivic comodule: weights and tau-shifts
    /// are forgotten; terms that collide after specialization cancel mod 2.
    /// The motivic `A(1)`-dual monomials map by `taubar0 -> x`,
    /// `xi1 -> x^2`, `taubar1 -> y`.
    pub fn specialize(module: &Arc<Comodule>) -> Self {
        let degrees = module.basis.iter().map(|b| b.degree.t).collect();
        let coaction = module
            .coaction
            .iter()
            .map(|terms| {
                let mut out: Vec<(usize, usize)> = Vec::new();
                for t in terms {
                    let a = t.left.has_taubar(0) as usize
                        + 2 * t.left.xi_exponent(1) as usize
                        + 4 * t.left.has_taubar(1) as usize;
                    debug_assert!(a < 8);
                    let key = (a, t.target);
                    if let Some(pos) = out.iter().position(|&p| p == key) {
                        out.remove(pos);
                    } else {
                        out.push(key);
                    }
                }
                out
            })
            .collect();
        ClassicalComodule {
            name: format!("{}|tau=1", module.name),
            degrees,
            coaction,
        }
    }
}

/// Multiplication table of the dual of the classical `A(1)` dual, from the
/// pairing `<theta_i theta_j, m> = coeff of m_i (x) m_j in psi(m)`.
fn cl_dual_mult() -> Vec<Vec<Vec<usize>>> {
    let mut mult = vec![vec![Vec::new(); 8]; 8];
    for m in 0..8usize {
        for (l, r) in cl_coproduct(m) {
            let cell: &mut Vec<usize> = &mut mult[l][r];
            if let Some(pos) = cell.iter().position(|&k| k == m) {
                cell.remove(pos);
            } else {
                cell.push(m);
            }
        }
    }
    mult
}

struct ClGen {
    degree: i32,
    /// image in `F_{s-1}` (or the dual module for s = 0): `(theta, gen)`
    image: Vec<(usize, usize)>,
}

/// Minimal resolution of the dual of a classical comodule over the
/// classical `A(1)`; `Ext^{s,t}(F2, M) = #` generators of `F_s` in degree t.
pub struct ClassicalResolution {
    gens: Vec<Vec<ClGen>>,
    dual_action: Vec<Vec<Vec<usize>>>,
    dual_degrees: Vec<i32>,
    mult: Vec<Vec<Vec<usize>>>,
    pub t_max: i32,
}

impl ClassicalResolution {
    pub fn build(module: &ClassicalComodule, s_max: i32, t_max: i32) -> Self {
        let mult = cl_dual_mult();
        // transposed action on the dual module
        let n = module.degrees.len();
        let mut dual_action = vec![vec![Vec::new(); n]; 8];
        for (j, terms) in module.coaction.iter().enumerate() {
            for &(b, i) in terms {
                let cell: &mut Vec<usize> = &mut dual_action[b][i];
                if let Some(pos) = cell.iter().position(|&k| k == j) {
                    cell.remove(pos);
                } else {
                    cell.push(j);
                }
            }
        }
        let mut res = ClassicalResolution {
            gens: Vec::new(),
            dual_action,
            dual_degrees: module.degrees.clone(),
            mult,
            t_max,
        };
        for s in 0..=s_max {
            res.extend(s);
        }
        res
    }

    /// `(theta, gen)` pairs of `F_s` in degree `t`; the same pair shape is
    /// used for dual-module coordinates `(0, z)`.
    fn slice(&self, s: i32, t: i32) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if s < 0 || s as usize >= self.gens.len() {
            return out;
        }
        for (gi, g) in self.gens[s as usize].iter().enumerate() {
            for b in 0..8 {
                if g.degree + cl_degree(b) == t {
                    out.push((b, gi));
                }
            }
        }
        out
    }

    fn module_slice(&self, t: i32) -> Vec<usize> {
        (0..self.dual_degrees.len())
            .filter(|&i| self.dual_degrees[i] == t)
            .collect()
    }

    /// Apply `theta_b` to an image list, pushing into the next target.
    fn push(&self, s: i32, b: usize, image: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        let mut tog = |x: (usize, usize)| {
            if let Some(pos) = out.iter().position(|&p| p == x) {
                out.remove(pos);
            } else {
                out.push(x);
            }
        };
        for &(theta, gen) in image {
            if s == 0 {
                for &z in &self.dual_action[b][gen] {
                    tog((0, z));
                }
            } else {
                for &k in &self.mult[b][theta] {
                    tog((k, gen));
                }
            }
        }
        out
    }

    fn extend(&mut self, s: i32) {
        self.gens.push(Vec::new());
        for t in 0..=self.t_max {
            // kernel slice of d_{s-1} (or the module slice for s = 0)
            let (cover_basis, kernel): (Vec<(usize, usize)>, Vec<Vec<bool>>) = if s == 0 {
                let dst = self.module_slice(t);
                let basis: Vec<(usize, usize)> = dst.iter().map(|&z| (0, z)).collect();
                let full = (0..basis.len())
                    .map(|i| (0..basis.len()).map(|j| i == j).collect())
                    .collect();
                (basis, full)
            } else {
                let src = self.slice(s - 1, t);
                let dst: Vec<(usize, usize)> = if s == 1 {
                    self.module_slice(t).iter().map(|&z| (0, z)).collect()
                } else {
                    self.slice(s - 2, t)
                };
                let lookup: BTreeMap<(usize, usize), usize> = dst
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, k)| (k, i))
                    .collect();
                let mut m = MatrixF2::zero(src.len(), dst.len());
                for (r, &(b, gen)) in src.iter().enumerate() {
                    let img = self.push(
                        s - 1,
                        b,
                        &self.gens[s as usize - 1][gen].image.clone(),
                    );
                    for term in img {
                        let c = lookup[&term];
                        m.set(r, c, !m.get(r, c));
                    }
                }
                (src, m.kernel_basis())
            };
            if kernel.is_empty() {
                continue;
            }
            // span of images of F_s-so-far in this slice
            let lookup: BTreeMap<(usize, usize), usize> = cover_basis
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, k)| (k, i))
                .collect();
            let mut span = Echelon::new(cover_basis.len());
            for (b, gen) in self.slice(s, t) {
                let img = self.push(s, b, &self.gens[s as usize][gen].image.clone());
                let mut row = vec![false; cover_basis.len()];
                for term in img {
                    row[lookup[&term]] ^= true;
                }
                span.insert(&row);
            }
            for kv in kernel {
                if !span.insert(&kv) {
                    continue;
                }
                let image: Vec<(usize, usize)> = kv
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v)
                    .map(|(i, _)| cover_basis[i])
                    .collect();
                self.gens[s as usize].push(ClGen { degree: t, image });
            }
        }
    }

    /// `Ext^{s,t}` dimension: generators of the minimal resolution.
    pub fn ext_dims(&self) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for (s, level) in self.gens.iter().enumerate() {
            for g in level {
                *out.entry((s as i32, g.degree)).or_insert(0) += 1;
            }
        }
        out
    }
}

/// Classical `Ext` dims of the tau = 1 specialization of a comodule.
pub fn classical_ext_dims(
    module: &Arc<Comodule>,
    s_max: i32,
    t_max: i32,
) -> BTreeMap<(i32, i32), usize> {
    let cl = ClassicalComodule::specialize(module);
    let res = ClassicalResolution::build(&cl, s_max, t_max);
    res.ext_dims()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coproduct_sanity() {
        // x primitive: 3 terms minus counit leaves x(x)1 + 1(x)x
        assert_eq!(cl_coproduct(1).len(), 2);
        // psi(y) has three terms
        assert_eq!(cl_coproduct(4).len(), 3);
        // psi(x^2) = x^2 (x) 1 + 1 (x) x^2 in characteristic two
        let c = cl_coproduct(2);
        assert_eq!(c.len(), 2);
        assert!(c.contains(&(2, 0)) && c.contains(&(0, 2)));
    }

    #[test]
    fn classical_ext_f2_low_degrees() {
        let res = ClassicalResolution::build(&ClassicalComodule::unit(), 6, 14);
        let dims = res.ext_dims();
        // classical A(1) chart: h0 at (1,1), h1 at (1,2), h1^2 at (2,4),
        // h1^3 = 0, alpha at (3,7), beta at (4,12)
        assert_eq!(dims.get(&(0, 0)), Some(&1));
        assert_eq!(dims.get(&(1, 1)), Some(&1));
        assert_eq!(dims.get(&(1, 2)), Some(&1));
        assert_eq!(dims.get(&(2, 4)), Some(&1));
        assert_eq!(dims.get(&(3, 6)), None, "h1^3 vanishes classically");
        assert_eq!(dims.get(&(3, 7)), Some(&1));
        assert_eq!(dims.get(&(4, 12)), Some(&1));
    }
}
