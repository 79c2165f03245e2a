//! Guarantee constants of the constructive bounds.

use num_bigint::BigUint;

/// `a_k = (8k)^k`, the per-round shrink factor of the tree embedder.
pub fn tree_shrink(k: u32) -> BigUint {
    BigUint::from(8 * k).pow(k)
}

/// Exponent `x_1 + ... + x_l + (k - l)(2a + 1)` of `f_{k,l}`.
fn tree_exponent(k: u32, leaves: &[usize]) -> BigUint {
    let l = leaves.len() as u32;
    assert!(l <= k, "at most k leaf-tracked trees");
    let a = tree_shrink(k);
    let untracked = BigUint::from(k - l) * (BigUint::from(2u32) * &a + 1u32);
    leaves.iter().fold(untracked, |acc, &x| acc + x)
}

/// `f_{k,l}(x_1..x_l) = (2a)^{x_1 + ... + x_l + (k-l)(2a+1)}` with
/// `l = leaves.len()`.
pub fn tree_factor(k: u32, leaves: &[usize]) -> BigUint {
    let base = BigUint::from(2u32) * tree_shrink(k);
    let exp = tree_exponent(k, leaves);
    let exp: u32 = exp.try_into().expect("exponent fits in u32");
    base.pow(exp)
}

/// `log2 f_{k,l}` in floating point, for cheap comparisons with host sizes.
pub fn tree_factor_log2(k: u32, leaves: &[usize]) -> f64 {
    let a = 8f64 * k as f64;
    let a = a.powi(k as i32);
    let l = leaves.len() as f64;
    let exp = leaves.iter().sum::<usize>() as f64 + (k as f64 - l) * (2.0 * a + 1.0);
    exp * (2.0 * a).log2()
}

/// Host order from which the tree embedder is guaranteed:
/// `f_{k,l}(leaf(T_1)..leaf(T_l)) * |T_1| * ... * |T_k|`, or `None` when it
/// exceeds `u128`.
pub fn tree_threshold(k: u32, leaves: &[usize], orders: &[usize]) -> Option<u128> {
    let log2 = tree_factor_log2(k, leaves) + orders.iter().map(|&o| (o as f64).log2()).sum::<f64>();
    if log2 > 126.0 {
        return None;
    }
    let f: u128 = tree_factor(k, leaves).try_into().ok()?;
    orders.iter().try_fold(f, |acc, &o| acc.checked_mul(o as u128))
}

/// Stated path constant `c_k = 8^k * k!`.
pub fn path_constant(k: u32) -> u128 {
    8u128.pow(k) * factorial(k)
}

/// Induction constant `(8^k - 2) * k!` actually used by the path embedder.
pub fn path_induction_constant(k: u32) -> u128 {
    (8u128.pow(k) - 2) * factorial(k)
}

/// Host order from which the path embedder is guaranteed:
/// `(8^k - 2) k! * n * l^(k-1)` for a path of length `n` with `l(P) = l`.
pub fn path_threshold(k: u32, length: usize, l: usize) -> u128 {
    path_induction_constant(k) * length as u128 * (l as u128).pow(k.saturating_sub(1))
}

/// Absolute constant of the directed-path versus out-tree bound.
pub const PATH_VS_OUT_TREE: u64 = 79;

/// `c_l` for trees with `l` out-leaves versus independent sets:
/// `c_1 = 1`, `c_l = c_{l-1} + 2l`, i.e. `l(l+1) - 1`.
pub fn tree_vs_independent(l: usize) -> usize {
    assert!(l >= 1);
    l * (l + 1) - 1
}

fn factorial(k: u32) -> u128 {
    (1..=k as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(tree_shrink(1), BigUint::from(8u32));
        assert_eq!(tree_shrink(2), BigUint::from(256u32));
        assert_eq!(path_constant(1), 8);
        assert_eq!(path_constant(2), 128);
        assert_eq!(path_induction_constant(1), 6);
        assert_eq!(path_induction_constant(2), 124);
        assert_eq!(path_threshold(2, 3, 2), 744);
        assert_eq!(tree_vs_independent(1), 1);
        assert_eq!(tree_vs_independent(2), 5);
        assert_eq!(tree_vs_independent(3), 11);
        // f_{1,1}(x) = 16^x
        assert_eq!(tree_factor(1, &[2]), BigUint::from(256u32));
        assert_eq!(tree_threshold(1, &[2], &[3]), Some(768));
        assert_eq!(tree_threshold(2, &[], &[2, 2]), None);
    }

    #[test]
    fn induction_step_inequality() {
        // (a_k / 8k - 1) >= a_{k-1}
        for k in 2..=6u32 {
            let a = path_induction_constant(k);
            let eight_k = 8 * k as u128;
            assert!(a - eight_k >= eight_k * path_induction_constant(k - 1));
        }
    }

    #[test]
    fn monotone() {
        for k in 1..5 {
            assert!(tree_shrink(k + 1) > tree_shrink(k));
            assert!(path_constant(k + 1) > path_constant(k));
        }
        for k in 1..=2u32 {
            for x in 1..4usize {
                let lo = tree_factor(k, &[x]);
                let hi = tree_factor(k, &[x + 1]);
                assert!(hi > lo);
                if k == 2 {
                    assert!(tree_factor(k, &[x, 2]) < tree_factor(k, &[x, 3]));
                }
            }
        }
        let logs: Vec<f64> = (2..6).map(|x| tree_factor_log2(2, &[x])).collect();
        assert!(logs.windows(2).all(|w| w[1] > w[0]));
    }
}
