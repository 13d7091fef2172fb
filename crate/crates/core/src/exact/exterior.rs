//! Exterior algebra over ℚ(i)ⁿ with the ascending-wedge basis
//! `e_I = e_{i_1} ∧ … ∧ e_{i_p}`, `i_1 < … < i_p` (zero-based indices).

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::GaussianRational;
use crate::error::{Error, Result};

/// Merges two ascending index sets. Returns `None` when they overlap, otherwise
/// the merged set and the sign of the shuffle taking `a ++ b` to ascending order.
pub fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut inversions = 0usize;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => return None,
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // b[j] jumps over the remaining a[i..]
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((out, sign))
}

/// All ascending `p`-subsets of `0..n`, in lexicographic order.
pub fn index_sets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(0, n, p, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiVector {
    nvars: usize,
    grade: usize,
    components: BTreeMap<Vec<usize>, GaussianRational>,
}

impl MultiVector {
    pub fn zero(nvars: usize, grade: usize) -> Self {
        Self {
            nvars,
            grade,
            components: BTreeMap::new(),
        }
    }

    /// The basis blade `e_I`; `indices` may be in any order, the sign of the
    /// sorting permutation is absorbed into the coefficient.
    pub fn blade(nvars: usize, indices: &[usize]) -> Result<Self> {
        let mut out = Self::zero(nvars, indices.len());
        let mut acc: Vec<usize> = Vec::new();
        let mut sign = 1;
        for &i in indices {
            if i >= nvars {
                return Err(Error::IndexOutOfRange { index: i, nvars });
            }
            match merge_sign(&acc, &[i]) {
                Some((m, s)) => {
                    acc = m;
                    sign *= s;
                }
                None => return Ok(out),
            }
        }
        out.add(acc, GaussianRational::from_integer(sign as i64));
        Ok(out)
    }

    pub fn add(&mut self, idx: Vec<usize>, c: GaussianRational) {
        debug_assert_eq!(idx.len(), self.grade);
        if c.is_zero() {
            return;
        }
        let slot = self.components.entry(idx.clone()).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.components.remove(&idx);
        }
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &GaussianRational)> {
        self.components.iter()
    }

    pub fn scalar_part(&self) -> GaussianRational {
        self.components
            .get(&Vec::new())
            .cloned()
            .unwrap_or_default()
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        let mut out = Self::zero(self.nvars, self.grade);
        for (i, c) in &self.components {
            out.add(i.clone(), c * k);
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars, self.grade + other.grade);
        for (a, ca) in &self.components {
            for (b, cb) in &other.components {
                if let Some((m, s)) = merge_sign(a, b) {
                    out.add(m, (ca * cb).scale(&BigRational::from_integer(s.into())));
                }
            }
        }
        out
    }

    /// Interior product `i_v`: `i_v(e_{i_1}∧…∧e_{i_p}) = Σ_k (-1)^k v(e_{i_k}) e_{…î_k…}`.
    pub fn contract(&self, v: &[BigRational]) -> Result<Self> {
        if v.len() != self.nvars {
            return Err(Error::CovectorLength {
                len: v.len(),
                nvars: self.nvars,
            });
        }
        if self.grade == 0 {
            return Err(Error::GradeUnderflow {
                grade: 0,
                count: 1,
            });
        }
        let mut out = Self::zero(self.nvars, self.grade - 1);
        for (idx, c) in &self.components {
            for (k, &i) in idx.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(k);
                let mut coeff = c.scale(&v[i]);
                if k % 2 == 1 {
                    coeff = -coeff;
                }
                out.add(rest, coeff);
            }
        }
        Ok(out)
    }
}

/// `i_{v_1} ∘ i_{v_2} ∘ ⋯ ∘ i_{v_r}` applied to `omega`: the last covector is
/// contracted first and `v_1` last.
pub fn iterated_contraction(vs: &[Vec<BigRational>], omega: &MultiVector) -> Result<MultiVector> {
    if vs.len() > omega.grade {
        return Err(Error::GradeUnderflow {
            grade: omega.grade,
            count: vs.len(),
        });
    }
    let mut cur = omega.clone();
    for v in vs.iter().rev() {
        cur = cur.contract(v)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn covec(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    /// Leibniz expansion, independent of any elimination code.
    fn leibniz_det(a: &[Vec<i64>]) -> i64 {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0i64;
        fn heap(k: usize, perm: &mut Vec<usize>, a: &[Vec<i64>], total: &mut i64) {
            if k == 1 {
                let n = perm.len();
                let mut inv = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if perm[i] > perm[j] {
                            inv += 1;
                        }
                    }
                }
                let sign = if inv % 2 == 0 { 1 } else { -1 };
                *total += sign * (0..n).map(|i| a[i][perm[i]]).product::<i64>();
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, a, total);
                if k.is_multiple_of(2) {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut perm, a, &mut total);
        total
    }

    #[test]
    fn merge_sign_basics() {
        assert_eq!(merge_sign(&[0], &[1]), Some((vec![0, 1], 1)));
        assert_eq!(merge_sign(&[1], &[0]), Some((vec![0, 1], -1)));
        assert_eq!(merge_sign(&[1, 2], &[0]), Some((vec![0, 1, 2], 1)));
        assert_eq!(merge_sign(&[0, 1], &[1]), None);
    }

    #[test]
    fn basis_case_sign() {
        // i_{e1*} ∘ i_{e2*} (e1∧e2) = i_{e1*}(-e1) = -1
        let w = MultiVector::blade(2, &[0, 1]).unwrap();
        let r = iterated_contraction(&[covec(&[1, 0]), covec(&[0, 1])], &w).unwrap();
        assert_eq!(r.scalar_part(), GaussianRational::from_integer(-1));
    }

    #[test]
    fn dependent_covectors_annihilate() {
        let w = MultiVector::blade(3, &[0, 1, 2]).unwrap();
        let r = iterated_contraction(&[covec(&[1, 0, 0]), covec(&[1, 0, 0])], &w).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn underflow_is_error() {
        let w = MultiVector::blade(3, &[0]).unwrap();
        let r = iterated_contraction(&[covec(&[1, 0, 0]), covec(&[0, 1, 0])], &w);
        assert!(matches!(r, Err(Error::GradeUnderflow { grade: 1, count: 2 })));
    }

    #[test]
    fn kernel_annihilates() {
        // covectors vanishing on e1, e2 kill e1∧e2
        let w = MultiVector::blade(4, &[0, 1]).unwrap();
        let r = iterated_contraction(&[covec(&[0, 0, 1, 2])], &w).unwrap();
        assert!(r.is_zero());
    }

    fn general_multivector(n: usize, p: usize, coeffs: &[i64]) -> MultiVector {
        let mut w = MultiVector::zero(n, p);
        for (idx, c) in index_sets(n, p).into_iter().zip(coeffs.iter().cycle()) {
            w.add(idx, GaussianRational::from_integer(*c));
        }
        w
    }

    #[test]
    fn determinant_law_3x3_on_lambda3_q4() {
        let v = [vec![1, 2, 0, -1], vec![0, 1, 3, 1], vec![2, -1, 1, 0]];
        let a = vec![vec![2, -1, 3], vec![1, 0, 4], vec![-2, 5, 1]];
        let omega = general_multivector(4, 3, &[3, -1, 2, 5]);
        check_det_law(&v, &a, &omega);
    }

    fn check_det_law(v: &[Vec<i64>], a: &[Vec<i64>], omega: &MultiVector) {
        let r = v.len();
        let n = v[0].len();
        // w_k = Σ_j a_{jk} v_j
        let w: Vec<Vec<i64>> = (0..r)
            .map(|k| (0..n).map(|i| (0..r).map(|j| a[j][k] * v[j][i]).sum()).collect())
            .collect();
        let vq: Vec<_> = v.iter().map(|x| covec(x)).collect();
        let wq: Vec<_> = w.iter().map(|x| covec(x)).collect();
        let lhs = iterated_contraction(&wq, omega).unwrap();
        let rhs = iterated_contraction(&vq, omega)
            .unwrap()
            .scale(&GaussianRational::from_integer(leibniz_det(a)));
        assert_eq!(lhs, rhs);
    }

    proptest! {
        #[test]
        fn determinant_law_random(
            n in 2usize..=5,
            seed in proptest::collection::vec(-3i64..=3, 80),
        ) {
            let r = 1 + (seed[0].unsigned_abs() as usize) % n;
            let p = r + (seed[1].unsigned_abs() as usize) % (n - r + 1);
            let mut it = seed.iter().cycle().skip(2);
            let v: Vec<Vec<i64>> = (0..r).map(|_| (0..n).map(|_| *it.next().unwrap()).collect()).collect();
            let a: Vec<Vec<i64>> = (0..r).map(|_| (0..r).map(|_| *it.next().unwrap()).collect()).collect();
            let coeffs: Vec<i64> = (0..7).map(|_| *it.next().unwrap()).collect();
            let omega = general_multivector(n, p, &coeffs);
            check_det_law(&v, &a, &omega);
        }
    }
}
