//! Trigraded `Ext` charts over the `A(1)` dual: dimensions, named
//! generators, and the actions of `tau`, `h0`, `h1`, `alpha`, `beta`;
//! beta-power-torsion splitting, Margolis homology, and tau-inversion.

use crate::comodule::Comodule;
use crate::linalg::{image_quotient, MatrixF2};
use crate::resolution::{ResTerm, Resolution};
use crate::steenrod::BiDegree;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Computation window. The reported region is `s <= s_max`, `t <= t_max`,
/// `w >= w_min`; the computed region is padded by `pad` in `t` and by
/// derived amounts in `s` and `w` so that action targets stay inside.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub s_max: i32,
    pub t_max: i32,
    pub w_min: i32,
    pub pad: i32,
}

impl Window {
    pub fn new(s_max: i32, t_max: i32, w_min: i32, pad: i32) -> Self {
        assert!(pad >= 0 && s_max >= 0);
        Window {
            s_max,
            t_max,
            w_min,
            pad,
        }
    }

    /// Extra filtration columns: four per beta step the `t`-pad can hold.
    pub fn pad_s(&self) -> i32 {
        self.pad.min(4) + (self.pad - 12).max(0) / 3
    }

    pub fn pad_w(&self) -> i32 {
        (self.pad / 4).max(2.min(self.pad))
    }

    pub fn computed_s(&self) -> i32 {
        self.s_max + self.pad_s()
    }

    pub fn computed_t(&self) -> i32 {
        self.t_max + self.pad
    }

    pub fn computed_w_min(&self) -> i32 {
        self.w_min - self.pad_w()
    }

    pub fn contains_reported(&self, s: i32, t: i32, w: i32) -> bool {
        s >= 0 && s <= self.s_max && t <= self.t_max && w >= self.w_min
    }

    pub fn contains_computed(&self, s: i32, t: i32, w: i32) -> bool {
        s >= 0 && s <= self.computed_s() && t <= self.computed_t() && w >= self.computed_w_min()
    }
}

/// The five chart actions with their `(s, t, w)` degrees.
pub const ACTIONS: [(&str, (i32, i32, i32)); 5] = [
    ("tau", (0, 0, -1)),
    ("h0", (1, 1, 0)),
    ("h1", (1, 2, 1)),
    ("alpha", (3, 7, 2)),
    ("beta", (4, 12, 4)),
];

pub fn action_degree(name: &str) -> (i32, i32, i32) {
    ACTIONS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|&(_, d)| d)
        .unwrap_or_else(|| panic!("unknown action {name}"))
}

/// A chart generator: one F2 basis class of one tridegree cell.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChartGen {
    pub name: String,
    pub s: i32,
    pub t: i32,
    pub w: i32,
    pub index: usize,
    /// cocycle over the minimal resolution of the module's dual, as a
    /// readable `tau^e g<i>` sum
    pub representative: String,
}

/// Trigraded chart with named generators and action tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtChart {
    pub module: String,
    pub window: Window,
    /// dims over the computed region (zero cells omitted)
    pub dims: BTreeMap<(i32, i32, i32), usize>,
    pub generators: Vec<ChartGen>,
    /// action name -> list of (from generator id, to generator id)
    pub actions: BTreeMap<String, Vec<(usize, usize)>>,
    /// generator ids whose action target fell outside the computed window
    pub action_unknown: BTreeMap<String, Vec<usize>>,
}

impl ExtChart {
    pub fn dim(&self, s: i32, t: i32, w: i32) -> usize {
        self.dims.get(&(s, t, w)).copied().unwrap_or(0)
    }

    pub fn gens_at(&self, s: i32, t: i32, w: i32) -> Vec<&ChartGen> {
        self.generators
            .iter()
            .filter(|g| (g.s, g.t, g.w) == (s, t, w))
            .collect()
    }

    pub fn gen_id(&self, s: i32, t: i32, w: i32, index: usize) -> Option<usize> {
        self.generators
            .iter()
            .position(|g| (g.s, g.t, g.w, g.index) == (s, t, w, index))
    }

    /// Action matrix between two cells (rows = source basis classes), or
    /// `None` when the action was not determined inside the window.
    pub fn action_matrix(&self, action: &str, s: i32, t: i32, w: i32) -> Option<MatrixF2> {
        let (ds, dt, dw) = action_degree(action);
        let n = self.dim(s, t, w);
        let (s2, t2, w2) = (s + ds, t + dt, w + dw);
        let m2 = self.dim(s2, t2, w2);
        let unknown = self.action_unknown.get(action);
        let mut m = MatrixF2::zero(n, m2);
        for r in 0..n {
            let id = self.gen_id(s, t, w, r)?;
            if unknown.is_some_and(|u| u.contains(&id)) {
                return None;
            }
            for &(from, to) in self.actions.get(action)? {
                if from == id {
                    let gt = &self.generators[to];
                    debug_assert_eq!((gt.s, gt.t, gt.w), (s2, t2, w2));
                    m.set(r, gt.index, true);
                }
            }
        }
        Some(m)
    }
}

struct CellData {
    reps: Vec<Vec<bool>>,
    basis_len: usize,
    boundaries: Vec<Vec<bool>>,
}

fn compute_cells(
    resolution: &Resolution,
    s_top: i32,
    w_floor: i32,
) -> BTreeMap<(i32, i32, i32), CellData> {
    let mut cells = BTreeMap::new();
    for s in 0..=s_top.min(resolution.gens.len() as i32 - 1) {
        for t in 0..=resolution.t_max {
            let w_top = resolution.gens[s as usize]
                .iter()
                .filter(|g| g.degree.t == t)
                .map(|g| g.degree.w)
                .max();
            let Some(w_top) = w_top else { continue };
            for w in w_floor..=w_top {
                let outgoing = resolution.hom_differential(s, t, w);
                let incoming = if s == 0 {
                    MatrixF2::zero(0, outgoing.rows())
                } else {
                    resolution.hom_differential(s - 1, t, w)
                };
                let boundaries: Vec<Vec<bool>> =
                    (0..incoming.rows()).map(|r| incoming.row_to_vec(r)).collect();
                let h = image_quotient(&incoming, &outgoing);
                if h.dim > 0 {
                    cells.insert(
                        (s, t, w),
                        CellData {
                            reps: h.representatives,
                            basis_len: outgoing.rows(),
                            boundaries,
                        },
                    );
                }
            }
        }
    }
    cells
}

/// Chart engine for one module: owns the module resolution, the base
/// resolution of the unit comodule (for product cocycles), and the homology
/// data of every computed cell.
pub struct ChartBuilder {
    pub resolution: Arc<Resolution>,
    pub base: Arc<Resolution>,
    pub window: Window,
    cells: BTreeMap<(i32, i32, i32), CellData>,
    /// cocycles of h0, h1, alpha, beta on the base resolution; `None` when
    /// the window cannot host the representative (actions then stay unknown)
    base_classes: [(String, (i32, i32, i32), Option<Vec<(u32, u32)>>); 4],
}

impl ChartBuilder {
    /// Build the engine. `base` (the resolution of the unit comodule) may be
    /// shared across builders; it must cover the same window.
    pub fn new(module: Arc<Comodule>, window: Window, base: Option<Arc<Resolution>>) -> Self {
        let s_comp = window.computed_s() + 1;
        let t_comp = window.computed_t();
        let base = base.unwrap_or_else(|| {
            Arc::new(Resolution::build(
                crate::comodule::Comodule::unit(),
                s_comp,
                t_comp,
            ))
        });
        assert!(
            base.s_max >= s_comp && base.t_max >= t_comp,
            "base resolution does not cover the window"
        );
        let resolution = if module.name == "M2" {
            Arc::clone(&base)
        } else {
            Arc::new(Resolution::build(Arc::clone(&module), s_comp, t_comp))
        };
        let cells = compute_cells(&resolution, window.computed_s(), window.computed_w_min());
        // canonical cocycles of the four product actions on the base; their
        // cells are one-dimensional, which pins the representative.
        let base_cells = if Arc::ptr_eq(&resolution, &base) {
            None
        } else {
            Some(compute_cells(&base, window.computed_s(), window.computed_w_min()))
        };
        let pick = |deg: (i32, i32, i32),
                    name: &str|
         -> (String, (i32, i32, i32), Option<Vec<(u32, u32)>>) {
            let data = match &base_cells {
                Some(c) => c.get(&deg),
                None => cells.get(&deg),
            };
            let Some(data) = data else {
                // window too small to host the representative
                return (name.to_string(), deg, None);
            };
            assert_eq!(data.reps.len(), 1, "{name} cell not one-dimensional");
            let basis = base.hom_basis(deg.0, deg.1, deg.2);
            let value = data.reps[0]
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| basis[i])
                .collect();
            (name.to_string(), deg, Some(value))
        };
        let base_classes = [
            pick((1, 1, 0), "h0"),
            pick((1, 2, 1), "h1"),
            pick((3, 7, 2), "alpha"),
            pick((4, 12, 4), "beta"),
        ];
        ChartBuilder {
            resolution,
            base,
            window,
            cells,
            base_classes,
        }
    }

    pub fn dim(&self, s: i32, t: i32, w: i32) -> usize {
        self.cells.get(&(s, t, w)).map(|c| c.reps.len()).unwrap_or(0)
    }

    /// Representative cocycle of a basis class, as `(generator, tau)` pairs.
    pub fn rep(&self, s: i32, t: i32, w: i32, index: usize) -> Vec<(u32, u32)> {
        let cell = &self.cells[&(s, t, w)];
        let basis = self.resolution.hom_basis(s, t, w);
        cell.reps[index]
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| basis[i])
            .collect()
    }

    /// Coordinates of a cocycle in the homology basis of a cell. `None` when
    /// the cell holds no classes (the cocycle must then be a boundary or
    /// zero; asserted by the caller). Panics if the vector is not a cocycle
    /// modulo the stored spans.
    fn express(&self, s: i32, t: i32, w: i32, cochain: &[bool]) -> Option<Vec<bool>> {
        let cell = self.cells.get(&(s, t, w))?;
        let n = cell.basis_len;
        let rows: Vec<Vec<bool>> = cell
            .boundaries
            .iter()
            .chain(cell.reps.iter())
            .cloned()
            .collect();
        let m = MatrixF2::from_rows(&rows, n);
        let x = m
            .solve(&cochain.to_vec())
            .expect("express: vector is not a cycle modulo boundaries");
        Some(x[cell.boundaries.len()..].to_vec())
    }

    /// Lift the cocycle of a chart class to a chain map into the base
    /// resolution, to the given depth. Level `k` maps each generator of
    /// `F^{module}_{s+k}` to `F^{base}_k`; omitted generators map to zero.
    fn lift_class(
        &self,
        s: i32,
        t: i32,
        w: i32,
        value: &[(u32, u32)],
        depth: i32,
    ) -> Vec<BTreeMap<u32, Vec<ResTerm>>> {
        let res = &self.resolution;
        let base = &self.base;
        let mut levels: Vec<BTreeMap<u32, Vec<ResTerm>>> = Vec::new();
        let mut l0 = BTreeMap::new();
        for &(g, e) in value {
            l0.insert(
                g,
                vec![ResTerm {
                    theta: 0,
                    tau: e,
                    gen: 0,
                }],
            );
        }
        levels.push(l0);
        for k in 1..=depth {
            let mut lk: BTreeMap<u32, Vec<ResTerm>> = BTreeMap::new();
            let sk = s + k;
            if sk as usize >= res.gens.len() {
                levels.push(lk);
                continue;
            }
            for (gi, gen) in res.gens[sk as usize].iter().enumerate() {
                let mut rhs: Vec<ResTerm> = Vec::new();
                for term in &gen.image {
                    let Some(imgs) = levels[k as usize - 1].get(&term.gen) else {
                        continue;
                    };
                    for img in imgs {
                        for &(q, e2) in base.alg.multiply(term.theta, img.theta) {
                            toggle_term(
                                &mut rhs,
                                ResTerm {
                                    theta: q,
                                    tau: term.tau + img.tau + e2,
                                    gen: img.gen,
                                },
                            );
                        }
                    }
                }
                if rhs.is_empty() {
                    continue;
                }
                let target = BiDegree::new(gen.degree.t - t, gen.degree.w - w);
                assert!(
                    target.t >= 0 && target.t <= base.t_max,
                    "chain lift left the base window at t = {}",
                    target.t
                );
                let (src, d_here) = base.differential_slice(k, target.t, target.w);
                let dst_basis = if k == 1 {
                    base.slice(0, target.t, target.w)
                } else {
                    base.slice(k - 1, target.t, target.w)
                };
                let lookup: BTreeMap<(u32, u8, u32), usize> = dst_basis
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, key)| (key, i))
                    .collect();
                let mut b = vec![false; dst_basis.len()];
                for term in &rhs {
                    let c = lookup[&(term.gen, term.theta, term.tau)];
                    b[c] ^= true;
                }
                let x = d_here
                    .solve(&b)
                    .expect("chain lift failed: resolution not exact?");
                let v: Vec<ResTerm> = x
                    .iter()
                    .enumerate()
                    .filter(|(_, &set)| set)
                    .map(|(i, _)| {
                        let (gen, theta, tau) = src[i];
                        ResTerm { theta, tau, gen }
                    })
                    .collect();
                if !v.is_empty() {
                    lk.insert(gi as u32, v);
                }
            }
            levels.push(lk);
        }
        levels
    }

    /// Evaluate `u o Lambda_p`: the product cochain on `F^{module}_{s+p}`.
    fn compose_with_base_class(
        &self,
        lift: &[BTreeMap<u32, Vec<ResTerm>>],
        u_s: i32,
        u_deg: (i32, i32, i32),
        u_value: &[(u32, u32)],
        s: i32,
        t: i32,
        w: i32,
    ) -> Vec<bool> {
        let (s2, t2, w2) = (s + u_s, t + u_deg.1, w + u_deg.2);
        let basis = self.resolution.hom_basis(s2, t2, w2);
        let lookup: BTreeMap<(u32, u32), usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        let mut out = vec![false; basis.len()];
        let Some(level) = lift.get(u_s as usize) else {
            return out;
        };
        for (&g, terms) in level {
            let gd = self.resolution.gen_degree(s2, g);
            if gd.t != t2 || gd.w < w2 {
                continue;
            }
            let mut val = false;
            for term in terms {
                if term.theta != 0 {
                    continue;
                }
                for &(ug, ue) in u_value {
                    if ug == term.gen {
                        debug_assert_eq!(term.tau + ue, (gd.w - w2) as u32);
                        val ^= true;
                    }
                }
            }
            if val {
                out[lookup[&(g, (gd.w - w2) as u32)]] ^= true;
            }
        }
        out
    }

    /// Assemble the chart: dims, named generators, action tables.
    pub fn chart(&self, name: &str) -> ExtChart {
        let window = self.window;
        let mut dims = BTreeMap::new();
        let mut generators = Vec::new();
        for (&(s, t, w), cell) in &self.cells {
            dims.insert((s, t, w), cell.reps.len());
            for index in 0..cell.reps.len() {
                let rep = self.rep(s, t, w, index);
                let rep_str = rep
                    .iter()
                    .map(|&(g, e)| {
                        if e == 0 {
                            format!("g{g}")
                        } else {
                            format!("t^{e} g{g}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" + ");
                generators.push(ChartGen {
                    name: format!("{name}:{s}.{t}.{w}.{index}"),
                    s,
                    t,
                    w,
                    index,
                    representative: rep_str,
                });
            }
        }
        let mut actions: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
        let mut action_unknown: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (aname, _) in ACTIONS {
            actions.insert(aname.to_string(), Vec::new());
            action_unknown.insert(aname.to_string(), Vec::new());
        }
        let gen_ids: BTreeMap<(i32, i32, i32, usize), usize> = generators
            .iter()
            .enumerate()
            .map(|(id, g)| ((g.s, g.t, g.w, g.index), id))
            .collect();

        for g in &generators {
            if !window.contains_reported(g.s, g.t, g.w) {
                continue;
            }
            let value = self.rep(g.s, g.t, g.w, g.index);
            let src_id = gen_ids[&(g.s, g.t, g.w, g.index)];
            // tau action: shift every value exponent by one
            let (s2, t2, w2) = (g.s, g.t, g.w - 1);
            if w2 >= window.computed_w_min() {
                let basis = self.resolution.hom_basis(s2, t2, w2);
                let lookup: BTreeMap<(u32, u32), usize> = basis
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, k)| (k, i))
                    .collect();
                let mut cochain = vec![false; basis.len()];
                for &(gen, e) in &value {
                    cochain[lookup[&(gen, e + 1)]] ^= true;
                }
                self.record_action(
                    &mut actions,
                    "tau",
                    src_id,
                    s2,
                    t2,
                    w2,
                    &cochain,
                    &gen_ids,
                );
            } else {
                action_unknown.get_mut("tau").unwrap().push(src_id);
            }
            // product actions via one chain lift to depth 4
            let depth = self
                .base_classes
                .iter()
                .filter(|(_, _, v)| v.is_some())
                .map(|&(_, (ds, _, _), _)| ds)
                .max()
                .unwrap_or(0);
            let lift = self.lift_class(g.s, g.t, g.w, &value, depth);
            for (aname, deg, uval) in &self.base_classes {
                let (ds, dt, dw) = *deg;
                let (s2, t2, w2) = (g.s + ds, g.t + dt, g.w + dw);
                let Some(uval) = uval else {
                    action_unknown.get_mut(aname.as_str()).unwrap().push(src_id);
                    continue;
                };
                if !window.contains_computed(s2, t2, w2) {
                    action_unknown.get_mut(aname.as_str()).unwrap().push(src_id);
                    continue;
                }
                let cochain =
                    self.compose_with_base_class(&lift, ds, *deg, uval, g.s, g.t, g.w);
                self.record_action(
                    &mut actions,
                    aname,
                    src_id,
                    s2,
                    t2,
                    w2,
                    &cochain,
                    &gen_ids,
                );
            }
        }
        ExtChart {
            module: name.to_string(),
            window,
            dims,
            generators,
            actions,
            action_unknown,
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn record_action(
        &self,
        actions: &mut BTreeMap<String, Vec<(usize, usize)>>,
        aname: &str,
        src_id: usize,
        s2: i32,
        t2: i32,
        w2: i32,
        cochain: &[bool],
        gen_ids: &BTreeMap<(i32, i32, i32, usize), usize>,
    ) {
        match self.express(s2, t2, w2, cochain) {
            Some(coords) => {
                for (i, &c) in coords.iter().enumerate() {
                    if c {
                        let dst = gen_ids[&(s2, t2, w2, i)];
                        actions.get_mut(aname).unwrap().push((src_id, dst));
                    }
                }
            }
            None => {
                // no cell there: the image must be the zero class
                assert!(
                    cochain.iter().all(|&b| !b) || self.is_boundary(s2, t2, w2, cochain),
                    "{aname} action image missed the chart at ({s2},{t2},{w2})"
                );
            }
        }
    }

    fn is_boundary(&self, s: i32, t: i32, w: i32, cochain: &[bool]) -> bool {
        let incoming = if s == 0 {
            return false;
        } else {
            self.resolution.hom_differential(s - 1, t, w)
        };
        incoming.contains_in_rowspace(cochain)
    }
}

fn toggle_term(acc: &mut Vec<ResTerm>, t: ResTerm) {
    if let Some(pos) = acc.iter().position(|x| *x == t) {
        acc.remove(pos);
    } else {
        acc.push(t);
    }
}

/// `ext_chart(M, window)`: the public entry point.
pub fn ext_chart(module: Arc<Comodule>, window: Window) -> ExtChart {
    let name = module.name.clone();
    let builder = ChartBuilder::new(module, window, None);
    builder.chart(&name)
}

/// Same, reusing a prebuilt base resolution covering the window.
pub fn ext_chart_with_base(
    module: Arc<Comodule>,
    window: Window,
    base: Arc<Resolution>,
) -> ExtChart {
    let name = module.name.clone();
    let builder = ChartBuilder::new(module, window, Some(base));
    builder.chart(&name)
}

/// Split of chart dims into beta-torsion-free and beta-power-torsion parts.
/// Cells whose beta-orbit leaves the computed region before a verdict are
/// `undetermined`, never guessed.
#[derive(Debug, Clone, Serialize)]
pub struct TorsionSplit {
    pub free: BTreeMap<(i32, i32, i32), usize>,
    pub torsion: BTreeMap<(i32, i32, i32), usize>,
    pub undetermined: Vec<(i32, i32, i32)>,
}

pub fn beta_torsion_split(chart: &ExtChart) -> TorsionSplit {
    assert!(
        chart.window.pad >= 12,
        "beta torsion split requires pad >= 12 in t (and 4 in s)"
    );
    let mut free = BTreeMap::new();
    let mut torsion = BTreeMap::new();
    let mut undetermined = Vec::new();
    for (&(s, t, w), &dim) in &chart.dims {
        if !chart.window.contains_reported(s, t, w) || dim == 0 {
            continue;
        }
        if !chart.window.contains_computed(s + 4, t + 12, w + 4) {
            undetermined.push((s, t, w));
            continue;
        }
        let Some(m) = chart.action_matrix("beta", s, t, w) else {
            undetermined.push((s, t, w));
            continue;
        };
        let rank = m.rank();
        free.insert((s, t, w), rank);
        torsion.insert((s, t, w), dim - rank);
    }
    TorsionSplit {
        free,
        torsion,
        undetermined,
    }
}

/// Margolis operator `Q0` or `Q1` on a comodule, acting per `(t, w)` slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MargolisWhich {
    Q0,
    Q1,
}

pub struct MargolisOperator {
    pub which: MargolisWhich,
    pub module: Arc<Comodule>,
    /// per basis index: (target, tau shift) terms of `Q(x)`
    pub table: Vec<Vec<(usize, u32)>>,
}

impl MargolisOperator {
    pub fn new(module: Arc<Comodule>, which: MargolisWhich) -> Self {
        let dual = match which {
            MargolisWhich::Q0 => crate::steenrod::Monomial::taubar(0),
            MargolisWhich::Q1 => crate::steenrod::Monomial::taubar(1),
        };
        let table: Vec<Vec<(usize, u32)>> = module
            .coaction
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .filter(|t| t.left == dual)
                    .map(|t| (t.target, t.tau_shift))
                    .collect()
            })
            .collect();
        let op = MargolisOperator {
            which,
            module,
            table,
        };
        op.check_square_zero().expect("Q^2 != 0");
        op
    }

    pub fn degree(&self) -> BiDegree {
        match self.which {
            MargolisWhich::Q0 => BiDegree::new(-1, 0),
            MargolisWhich::Q1 => BiDegree::new(-3, -1),
        }
    }

    pub fn check_square_zero(&self) -> Result<(), crate::Error> {
        for i in 0..self.table.len() {
            let mut acc: Vec<(usize, u32)> = Vec::new();
            for &(j, k1) in &self.table[i] {
                for &(l, k2) in &self.table[j] {
                    let term = (l, k1 + k2);
                    if let Some(pos) = acc.iter().position(|&x| x == term) {
                        acc.remove(pos);
                    } else {
                        acc.push(term);
                    }
                }
            }
            if !acc.is_empty() {
                let d = self.module.basis[i].degree;
                return Err(crate::Error::DifferentialSquare {
                    s: 0,
                    t: d.t,
                    w: d.w,
                });
            }
        }
        Ok(())
    }

    fn slice_matrix(&self, t: i32, w: i32) -> MatrixF2 {
        let src = slice_of(&self.module, t, w);
        let d = self.degree();
        let dst = slice_of(&self.module, t + d.t, w + d.w);
        let lookup: BTreeMap<(usize, u32), usize> = dst
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        let mut m = MatrixF2::zero(src.len(), dst.len());
        for (r, &(i, e)) in src.iter().enumerate() {
            for &(j, k) in &self.table[i] {
                let c = lookup[&(j, e + k)];
                m.set(r, c, !m.get(r, c));
            }
        }
        m
    }

    /// Margolis homology dims per `(t, w)` for `t <= t_max`, `w >= w_min`.
    /// Correct at the top of the `t` range only when the module extends past
    /// `t_max + |deg Q|`; finite comodules are always complete.
    pub fn homology(&self, t_max: i32, w_min: i32) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        let d = self.degree();
        for t in 0..=t_max {
            let w_top = self
                .module
                .basis
                .iter()
                .filter(|b| b.degree.t == t)
                .map(|b| b.degree.w)
                .max();
            let Some(w_top) = w_top else { continue };
            for w in w_min..=w_top {
                let outgoing = self.slice_matrix(t, w);
                let incoming = self.slice_matrix(t - d.t, w - d.w);
                let h = image_quotient(&incoming, &outgoing);
                if h.dim > 0 {
                    out.insert((t, w), h.dim);
                }
            }
        }
        out
    }
}

fn slice_of(module: &Comodule, t: i32, w: i32) -> Vec<(usize, u32)> {
    module
        .basis
        .iter()
        .enumerate()
        .filter(|(_, b)| b.degree.t == t && b.degree.w >= w)
        .map(|(i, b)| (i, (b.degree.w - w) as u32))
        .collect()
}

/// Margolis homology of a comodule: the public entry point.
pub fn margolis(
    module: Arc<Comodule>,
    which: MargolisWhich,
    t_max: i32,
    w_min: i32,
) -> BTreeMap<(i32, i32), usize> {
    MargolisOperator::new(module, which).homology(t_max, w_min)
}

/// Classical (tau = 1) chart obtained from a motivic chart by identifying
/// classes that differ by `tau` powers: per `(s, t)` the stabilized slice
/// dimension, with stabilization certified by comparing the two lowest
/// weights below every relevant generator.
#[derive(Debug, Clone, Serialize)]
pub struct ClassicalChart {
    pub module: String,
    pub dims: BTreeMap<(i32, i32), usize>,
}

pub fn invert_tau(builder: &ChartBuilder) -> ClassicalChart {
    let res = &builder.resolution;
    let mut dims = BTreeMap::new();
    for s in 0..=builder.window.s_max {
        for t in 0..=builder.window.t_max {
            let mut w_lo = i32::MAX;
            for ss in [s - 1, s, s + 1] {
                if ss < 0 || ss as usize >= res.gens.len() {
                    continue;
                }
                for g in &res.gens[ss as usize] {
                    if g.degree.t == t {
                        w_lo = w_lo.min(g.degree.w);
                    }
                }
            }
            if w_lo == i32::MAX {
                continue;
            }
            let (d1, _) = res.ext_cell(s, t, w_lo - 1);
            let (d2, _) = res.ext_cell(s, t, w_lo - 2);
            assert_eq!(d1, d2, "tau-inversion failed to stabilize at ({s},{t})");
            if d1 > 0 {
                dims.insert((s, t), d1);
            }
        }
    }
    ClassicalChart {
        module: res.module.name.clone(),
        dims,
    }
}

/// JSON shape `{module, window, cells:[{s,t,w,dim,gens}], actions:{g:[{from,to}]}}`.
#[derive(Serialize, Deserialize)]
pub struct ExtChartJson {
    pub module: String,
    pub window: Window,
    pub cells: Vec<CellJson>,
    pub actions: BTreeMap<String, Vec<ActionEdgeJson>>,
}

#[derive(Serialize, Deserialize)]
pub struct CellJson {
    pub s: i32,
    pub t: i32,
    pub w: i32,
    pub dim: usize,
    pub gens: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub struct ActionEdgeJson {
    pub from: String,
    pub to: String,
}

impl ExtChart {
    pub fn to_json(&self) -> ExtChartJson {
        let cells = self
            .dims
            .iter()
            .map(|(&(s, t, w), &dim)| CellJson {
                s,
                t,
                w,
                dim,
                gens: self.gens_at(s, t, w).iter().map(|g| g.name.clone()).collect(),
            })
            .collect();
        let actions = self
            .actions
            .iter()
            .map(|(name, pairs)| {
                (
                    name.clone(),
                    pairs
                        .iter()
                        .map(|&(f, t)| ActionEdgeJson {
                            from: self.generators[f].name.clone(),
                            to: self.generators[t].name.clone(),
                        })
                        .collect(),
                )
            })
            .collect();
        ExtChartJson {
            module: self.module.clone(),
            window: self.window,
            cells,
            actions,
        }
    }

    /// Flat TSV dump `s t w dim gens`, reported region only.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("s\tt\tw\tdim\tgens\n");
        for (&(s, t, w), &dim) in &self.dims {
            if !self.window.contains_reported(s, t, w) {
                continue;
            }
            let gens: Vec<String> = self
                .gens_at(s, t, w)
                .iter()
                .map(|g| g.name.clone())
                .collect();
            out.push_str(&format!("{s}\t{t}\t{w}\t{dim}\t{}\n", gens.join(",")));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule;

    fn small_window() -> Window {
        Window::new(4, 13, -3, 0)
    }

    #[test]
    fn chart_m2_small() {
        let chart = ext_chart(comodule::Comodule::unit(), small_window());
        assert_eq!(chart.dim(0, 0, 0), 1);
        assert_eq!(chart.dim(1, 2, 1), 1); // h1
        assert_eq!(chart.dim(3, 6, 3), 1); // h1^3
        assert_eq!(chart.dim(3, 6, 2), 0); // tau h1^3 = 0
        assert_eq!(chart.dim(1, 1, 0), 1); // h0
        assert_eq!(chart.dim(2, 2, 0), 1); // h0^2
        assert_eq!(chart.dim(3, 7, 2), 1); // alpha
        assert_eq!(chart.dim(4, 12, 4), 1); // beta
    }

    #[test]
    fn h0_tower_action() {
        let chart = ext_chart(comodule::Comodule::unit(), small_window());
        for s in 0..3 {
            let m = chart.action_matrix("h0", s, s, 0).unwrap();
            assert_eq!(m.rank(), 1, "h0 tower broken at s={s}");
        }
        // h0 h1 = 0
        let m = chart.action_matrix("h0", 1, 2, 1).unwrap();
        assert!(m.is_zero(), "h0 h1 should vanish");
        // h1 alpha = 0
        let m = chart.action_matrix("h1", 3, 7, 2).unwrap();
        assert!(m.is_zero(), "h1 alpha should vanish");
    }

    #[test]
    fn tau_kills_h1_cube() {
        let chart = ext_chart(comodule::Comodule::unit(), small_window());
        let m = chart.action_matrix("tau", 3, 6, 3).unwrap();
        assert!(m.is_zero());
        let m = chart.action_matrix("tau", 1, 2, 1).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn h1_cubed_is_beta_free_but_its_beta_multiple_is_tau_torsion() {
        let chart = ext_chart(comodule::Comodule::unit(), Window::new(8, 20, -2, 12));
        let split = beta_torsion_split(&chart);
        assert_eq!(split.free.get(&(3, 6, 3)), Some(&1));
        assert_eq!(split.torsion.get(&(3, 6, 3)), Some(&0));
        // beta h1^3 lives at (7, 18, 7) and is killed by tau
        assert_eq!(chart.dim(7, 18, 7), 1);
        let m = chart.action_matrix("tau", 7, 18, 7).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn margolis_unit() {
        let q0 = margolis(comodule::Comodule::unit(), MargolisWhich::Q0, 4, -2);
        assert_eq!(q0.get(&(0, 0)), Some(&1));
        assert_eq!(q0.len(), 3); // (0,0), (0,-1), (0,-2): the M2 tower
    }
}
