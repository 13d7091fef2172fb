//! Small floating-point helpers shared by the numerical modules.

use num_complex::Complex64;

/// Seed for sub-stream `index` of a master seed (splitmix64 finalizer), so
/// that parallel shards are reproducible independently of scheduling.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting. Returns
/// `None` for a numerically singular system.
pub fn solve_complex(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))?;
        if a[p][k].norm() < 1e-300 {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let factor = a[i][k] / a[k][k];
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in k..n {
                let t = a[k][j];
                a[i][j] -= factor * t;
            }
            let t = b[k];
            b[i] -= factor * t;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for k in (0..n).rev() {
        let s: Complex64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_differ_per_index() {
        let s: std::collections::BTreeSet<u64> = (0..1000).map(|i| derive_seed(7, i)).collect();
        assert_eq!(s.len(), 1000);
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }

    #[test]
    fn complex_solve() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let a = vec![vec![one, i], vec![i, 2.0 * one]];
        let x = solve_complex(a.clone(), vec![one, 0.0 * one]).unwrap();
        for r in 0..2 {
            let v: Complex64 = (0..2).map(|c| a[r][c] * x[c]).sum();
            let want = if r == 0 { one } else { 0.0 * one };
            assert!((v - want).norm() < 1e-14);
        }
        assert!(solve_complex(vec![vec![one, one], vec![one, one]], vec![one, one]).is_none());
    }
}
