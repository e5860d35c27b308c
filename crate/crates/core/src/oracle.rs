//! Independent verification oracles.
//!
//! These enumerate closed-form answers without touching the cobar or
//! resolution engines, so chart output can be checked against them.

use std::collections::BTreeMap;

/// Dimensions of `M2[h0, h1, alpha, beta] / (h0 h1, tau h1^3, h1 alpha,
/// alpha^2 = h0^2 beta)` per `(s, t, w)` over a window, by enumerating the
/// admissible monomial basis
///
/// ```text
/// h0^a alpha^eps beta^c tau^k           (a, c, k >= 0, eps in {0,1})
/// h1^b beta^c tau^k                     (b >= 1; k = 0 when b >= 3)
/// ```
///
/// with `|h0| = (1,1,0)`, `|h1| = (1,2,1)`, `|alpha| = (3,7,2)`,
/// `|beta| = (4,12,4)`, `|tau| = (0,0,-1)`.
pub fn is11_dims(s_max: i32, t_max: i32, w_min: i32) -> BTreeMap<(i32, i32, i32), usize> {
    let mut out = BTreeMap::new();
    let mut add = |s: i32, t: i32, w: i32| {
        if s <= s_max && t <= t_max && w >= w_min {
            *out.entry((s, t, w)).or_insert(0) += 1;
        }
    };
    // h0-alpha-beta branch
    for c in 0..=(t_max / 12) {
        for eps in 0..=1 {
            for a in 0.. {
                let s = a + 3 * eps + 4 * c;
                let t = a + 7 * eps + 12 * c;
                if t > t_max || s > s_max {
                    break;
                }
                let w_top = 2 * eps + 4 * c;
                for k in 0..=(w_top - w_min).max(0) {
                    add(s, t, w_top - k);
                }
            }
        }
    }
    // h1 branch
    for c in 0..=(t_max / 12) {
        for b in 1.. {
            let s = b + 4 * c;
            let t = 2 * b + 12 * c;
            if t > t_max || s > s_max {
                break;
            }
            let w_top = b + 4 * c;
            if b >= 3 {
                add(s, t, w_top);
            } else {
                for k in 0..=(w_top - w_min).max(0) {
                    add(s, t, w_top - k);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_cells() {
        let dims = is11_dims(8, 20, -4);
        assert_eq!(dims.get(&(0, 0, 0)), Some(&1));
        assert_eq!(dims.get(&(1, 1, 0)), Some(&1)); // h0
        assert_eq!(dims.get(&(1, 2, 1)), Some(&1)); // h1
        assert_eq!(dims.get(&(3, 6, 3)), Some(&1)); // h1^3
        assert_eq!(dims.get(&(3, 6, 2)), None); // tau h1^3 = 0
        assert_eq!(dims.get(&(3, 7, 2)), Some(&1)); // alpha
        assert_eq!(dims.get(&(4, 12, 4)), Some(&1)); // beta
        assert_eq!(dims.get(&(6, 14, 4)), Some(&1)); // h0^2 beta = alpha^2
        // no cell holds two classes in this window
        assert!(dims.values().all(|&d| d == 1));
    }
}
