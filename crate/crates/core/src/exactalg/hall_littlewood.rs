use itertools::Itertools;

use super::symmetrize::sum_over_permutations;
use super::{AlgebraError, LaurentQ, MultiLaurent, RationalFn};
use crate::par::Exec;

/// Checks that `lambda` is weakly decreasing with at most `n` nonzero parts and
/// returns it padded with zeros to length `n`.
pub fn padded_partition(lambda: &[u32], n: usize) -> Result<Vec<u32>, AlgebraError> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(AlgebraError::InvalidPartition(format!("{lambda:?} is not weakly decreasing")));
    }
    let parts: Vec<u32> = lambda.iter().copied().filter(|&p| p > 0).collect();
    if parts.len() > n {
        return Err(AlgebraError::InvalidPartition(format!(
            "{lambda:?} has more than {n} parts"
        )));
    }
    let mut out = parts;
    out.resize(n, 0);
    Ok(out)
}

/// `[m]_t! = Π_{j=1..m} (1 + t + .. + t^{j-1})` at `t = q^2`.
pub fn t_factorial(m: u32) -> LaurentQ {
    let mut out = LaurentQ::one();
    for j in 1..=m {
        let tj = LaurentQ::from_terms((0..j as i32).map(|k| (2 * k, 1)));
        out = &out * &tj;
    }
    out
}

/// `v_λ(t) = Π_{i ≥ 0} [m_i]_t!` where `m_i` counts parts equal to `i` (zeros included).
pub fn v_lambda(lambda: &[u32], n: usize) -> Result<LaurentQ, AlgebraError> {
    let padded = padded_partition(lambda, n)?;
    Ok(padded
        .iter()
        .chunk_by(|p| **p)
        .into_iter()
        .map(|(_, g)| t_factorial(g.count() as u32))
        .fold(LaurentQ::one(), |acc, f| &acc * &f))
}

/// Hall–Littlewood `P_λ(x_1..x_n; t)` at `t = q^2`, monic in `x^λ`.
pub fn hall_littlewood(lambda: &[u32], n: usize) -> Result<MultiLaurent, AlgebraError> {
    hall_littlewood_with(Exec::default(), lambda, n)
}

pub fn hall_littlewood_with(exec: Exec, lambda: &[u32], n: usize) -> Result<MultiLaurent, AlgebraError> {
    let padded = padded_partition(lambda, n)?;
    if n == 0 {
        return Ok(MultiLaurent::one(0));
    }
    let exps: Vec<i32> = padded.iter().map(|&p| p as i32).collect();
    let mut num = MultiLaurent::monomial(n, exps, LaurentQ::one());
    let mut den = MultiLaurent::one(n);
    let t = LaurentQ::monomial(-1, 2);
    for (i, j) in (0..n).tuple_combinations() {
        num = &num * &MultiLaurent::linear2(n, i, LaurentQ::one(), j, t.clone());
        den = &den * &MultiLaurent::difference(n, i, j);
    }
    let f = RationalFn::new(num, den)?;
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let total = sum_over_permutations(exec, &f, &perms)?;
    total.div_exact_coeff(&v_lambda(lambda, n)?)
}

/// Monomial symmetric function `m_λ(x_1..x_n)`.
pub fn monomial_symmetric(lambda: &[u32], n: usize) -> Result<MultiLaurent, AlgebraError> {
    let padded = padded_partition(lambda, n)?;
    let mut out = MultiLaurent::zero(n);
    let exps: Vec<i32> = padded.iter().map(|&p| p as i32).collect();
    for perm in exps.iter().copied().permutations(n).unique() {
        out.add_term(perm, &LaurentQ::one());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiLaurent {
        MultiLaurent::var(n, i)
    }

    #[test]
    fn small_cases() {
        let n = 2;
        assert_eq!(hall_littlewood(&[1], n).unwrap(), &x(n, 0) + &x(n, 1));
        assert_eq!(hall_littlewood(&[1, 1], n).unwrap(), &x(n, 0) * &x(n, 1));
        let mixed = (&x(n, 0) * &x(n, 1)).scale(&LaurentQ::from_terms([(0, 1), (2, -1)]));
        let expect = &(&(&x(n, 0) * &x(n, 0)) + &(&x(n, 1) * &x(n, 1))) + &mixed;
        assert_eq!(hall_littlewood(&[2], n).unwrap(), expect);
    }

    #[test]
    fn empty_partition_is_one() {
        assert_eq!(hall_littlewood(&[], 3).unwrap(), MultiLaurent::one(3));
        assert_eq!(hall_littlewood(&[0, 0], 2).unwrap(), MultiLaurent::one(2));
    }

    #[test]
    fn invalid_partitions() {
        assert!(hall_littlewood(&[1, 2], 2).is_err());
        assert!(hall_littlewood(&[1, 1, 1], 2).is_err());
    }

    #[test]
    fn v_lambda_counts_zero_parts() {
        // λ = (1) in 3 variables: m_1 = 1, m_0 = 2.
        assert_eq!(v_lambda(&[1], 3).unwrap(), LaurentQ::from_terms([(0, 1), (2, 1)]));
    }
}
