//! Bit-packed exact linear algebra over GF(2).
//!
//! Vectors are rows; a linear map `f : V -> W` is stored as the matrix whose
//! `i`-th row is `f(v_i)` in the target basis, so `f(x) = x * M`. Pivoting is
//! deterministic (lowest column, then lowest row), which makes every kernel
//! basis, homology representative and generator name reproducible.

/// Dense bit-packed matrix over GF(2), row-major, 64 columns per word.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixF2 {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl MatrixF2 {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        MatrixF2 {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>], cols: usize) -> Self {
        let mut m = Self::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &b) in r.iter().enumerate() {
                if b {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words_per_row + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// target row ^= source row
    #[inline]
    pub fn xor_rows(&mut self, target: usize, source: usize) {
        let (lo, hi) = if target < source {
            (target, source)
        } else {
            (source, target)
        };
        let (a, b) = self.data.split_at_mut(hi * self.words_per_row);
        let lo_slice = &mut a[lo * self.words_per_row..lo * self.words_per_row + self.words_per_row];
        let hi_slice = &mut b[..self.words_per_row];
        if target < source {
            for (t, s) in lo_slice.iter_mut().zip(hi_slice.iter()) {
                *t ^= s;
            }
        } else {
            for (t, s) in hi_slice.iter_mut().zip(lo_slice.iter()) {
                *t ^= s;
            }
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words_per_row {
            self.data.swap(a * self.words_per_row + k, b * self.words_per_row + k);
        }
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    pub fn set_row_from(&mut self, r: usize, v: &[u64]) {
        let start = r * self.words_per_row;
        self.data[start..start + self.words_per_row].copy_from_slice(v);
    }

    pub fn row_to_vec(&self, r: usize) -> Vec<bool> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    /// Matrix product, composing maps written on rows: `x (AB) = (x A) B`.
    pub fn mul(&self, rhs: &MatrixF2) -> MatrixF2 {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in mul");
        let mut out = MatrixF2::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for c in 0..self.cols {
                if self.get(i, c) {
                    let (dst, src) = (i * out.words_per_row, c * rhs.words_per_row);
                    for k in 0..out.words_per_row {
                        out.data[dst + k] ^= rhs.data[src + k];
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// In-place reduction to row echelon form. Returns the pivot columns in
    /// order; the `i`-th returned column has its pivot in row `i`.
    pub fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(row, p);
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.xor_rows(r, row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        self.clone().echelonize().len()
    }

    /// Basis of `{ x : x M = 0 }` in the deterministic echelon-derived form:
    /// one vector per free column, sorted by free column index.
    pub fn kernel_basis(&self) -> Vec<Vec<bool>> {
        // Kernel of x -> x M is the kernel of the transpose acting on columns;
        // augment with an identity to track row operations.
        let n = self.rows;
        let mut work = MatrixF2::zero(n, self.cols + n);
        for r in 0..n {
            for c in 0..self.cols {
                if self.get(r, c) {
                    work.set(r, c, true);
                }
            }
            work.set(r, self.cols + r, true);
        }
        // Eliminate only on the first `cols` columns.
        let mut row = 0;
        for col in 0..self.cols {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&r| work.get(r, col)) else {
                continue;
            };
            work.swap_rows(row, p);
            for r in 0..n {
                if r != row && work.get(r, col) {
                    work.xor_rows(r, row);
                }
            }
            row += 1;
        }
        let mut basis = Vec::new();
        for r in row..n {
            basis.push((0..n).map(|c| work.get(r, self.cols + c)).collect());
        }
        basis
    }

    /// Solve `x M = b`. Returns a solution of minimal support w.r.t. the
    /// deterministic pivots, or `None` if `b` is not in the row space.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(b.len(), self.cols);
        let n = self.rows;
        let mut work = MatrixF2::zero(n + 1, self.cols + n + 1);
        for r in 0..n {
            for c in 0..self.cols {
                if self.get(r, c) {
                    work.set(r, c, true);
                }
            }
            work.set(r, self.cols + r, true);
        }
        for (c, &v) in b.iter().enumerate() {
            if v {
                work.set(n, c, true);
            }
        }
        work.set(n, self.cols + n, true);
        let mut row = 0;
        for col in 0..self.cols {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&r| work.get(r, col)) else {
                continue;
            };
            work.swap_rows(row, p);
            for r in 0..=n {
                if r != row && work.get(r, col) {
                    work.xor_rows(r, row);
                }
            }
            row += 1;
        }
        // The last row now holds b reduced by the row space.
        if (0..self.cols).any(|c| work.get(n, c)) {
            return None;
        }
        Some((0..n).map(|c| work.get(n, self.cols + c)).collect())
    }

    /// Row space membership.
    pub fn contains_in_rowspace(&self, b: &[bool]) -> bool {
        self.solve(b).is_some()
    }
}

impl std::fmt::Debug for MatrixF2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MatrixF2 {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows.min(40) {
            for c in 0..self.cols.min(80) {
                write!(f, "{}", self.get(r, c) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Incremental echelon accumulator over GF(2): feed vectors, learn which are
/// independent of everything seen so far. Deterministic (pivot = lowest set
/// column of the reduced vector).
pub struct Echelon {
    dim: usize,
    words: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            words: dim.div_ceil(64),
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pack(&self, bits: &[bool]) -> Vec<u64> {
        let mut v = vec![0u64; self.words];
        for (c, &b) in bits.iter().enumerate() {
            if b {
                v[c / 64] |= 1 << (c % 64);
            }
        }
        v
    }

    fn reduce(&self, v: &mut [u64]) -> Option<usize> {
        for (p, row) in &self.rows {
            if v[p / 64] >> (p % 64) & 1 == 1 {
                for k in 0..self.words {
                    v[k] ^= row[k];
                }
            }
        }
        (0..self.dim).find(|&c| v[c / 64] >> (c % 64) & 1 == 1)
    }

    /// Insert a vector; returns true when it enlarges the span.
    pub fn insert(&mut self, bits: &[bool]) -> bool {
        assert_eq!(bits.len(), self.dim);
        let mut v = self.pack(bits);
        let Some(pivot) = self.reduce(&mut v) else {
            return false;
        };
        let pos = self.rows.binary_search_by_key(&pivot, |(p, _)| *p).unwrap_err();
        self.rows.insert(pos, (pivot, v));
        true
    }

    /// Membership in the accumulated span.
    pub fn contains(&self, bits: &[bool]) -> bool {
        let mut v = self.pack(bits);
        self.reduce(&mut v).is_none()
    }
}

/// Homology data of a two-step complex `U -A-> V -B-> W` at `V`.
pub struct Homology {
    pub dim: usize,
    /// Representative vectors in `V`, completing a basis of `im A` inside
    /// `ker B`; deterministic.
    pub representatives: Vec<Vec<bool>>,
}

/// Compute `ker B / im A` where `A` is the incoming map (rows = images of the
/// source basis) and `B` the outgoing one. Panics if `A * B != 0`, which in a
/// chain complex signals a differential-square bug upstream.
pub fn image_quotient(incoming: &MatrixF2, outgoing: &MatrixF2) -> Homology {
    assert_eq!(incoming.cols(), outgoing.rows(), "complex dimension mismatch");
    assert!(
        incoming.mul(outgoing).is_zero(),
        "image_quotient: composite is nonzero (d^2 != 0)"
    );
    let dim_v = outgoing.rows();
    // Insert image rows first, then try each kernel vector; a vector
    // surviving reduction represents a new homology class.
    let mut echelon = Echelon::new(dim_v);
    for r in 0..incoming.rows() {
        echelon.insert(&incoming.row_to_vec(r));
    }
    let mut reps = Vec::new();
    for kv in outgoing.kernel_basis() {
        if echelon.insert(&kv) {
            reps.push(kv);
        }
    }
    Homology {
        dim: reps.len(),
        representatives: reps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(MatrixF2::identity(5).rank(), 5);
        assert_eq!(MatrixF2::zero(3, 7).rank(), 0);
        let m = MatrixF2::from_rows(&[vec![true, true], vec![true, true]], 2);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(MatrixF2::identity(4).kernel_basis().is_empty());
        let z = MatrixF2::zero(3, 3);
        assert_eq!(z.kernel_basis().len(), 3);
        // single row (1,1): map F2^1 -> F2^2? Rows are domain basis images;
        // here domain has one basis vector mapping to (1,1): kernel is 0.
        let m = MatrixF2::from_rows(&[vec![true, true]], 2);
        assert!(m.kernel_basis().is_empty());
        // domain F2^2, both basis vectors map to the same nonzero vector:
        // kernel is spanned by (1,1).
        let m = MatrixF2::from_rows(&[vec![true], vec![true]], 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![true, true]);
    }

    #[test]
    fn solve_roundtrip() {
        let m = MatrixF2::from_rows(
            &[
                vec![true, false, true],
                vec![false, true, true],
                vec![true, true, false],
            ],
            3,
        );
        let b = vec![true, true, false];
        let x = m.solve(&b).unwrap();
        // check x * M == b
        let mut acc = vec![false; 3];
        for (i, &xi) in x.iter().enumerate() {
            if xi {
                for (c, a) in acc.iter_mut().enumerate() {
                    *a ^= m.get(i, c);
                }
            }
        }
        assert_eq!(acc, b);
        // rows sum to zero, so the row space has rank 2 and misses (1,1,1)
        assert!(m.solve(&vec![true, true, true]).is_none());
    }

    #[test]
    fn homology_examples() {
        // A = 0, B = 0 on F2^3: H = 3.
        let h = image_quotient(&MatrixF2::zero(0, 3), &MatrixF2::zero(3, 0));
        assert_eq!(h.dim, 3);
        // A = identity, B = 0: H = 0.
        let h = image_quotient(&MatrixF2::identity(3), &MatrixF2::zero(3, 0));
        assert_eq!(h.dim, 0);
        // A : F2 -> F2^2, 1 |-> (1,1); B : F2^2 -> F2, (x,y) |-> x+y.
        let a = MatrixF2::from_rows(&[vec![true, true]], 2);
        let b = MatrixF2::from_rows(&[vec![true], vec![true]], 1);
        let h = image_quotient(&a, &b);
        assert_eq!(h.dim, 0);
    }
}
