use std::fmt;

use super::AlgebraError;

/// Ordered splitting `I = (I1, I2)` of the variable indices `{0, .., n-1}`.
///
/// `S_I` is the Young subgroup `S_{I1} x S_{I2}`. Indices are zero based;
/// [`fmt::Display`] prints them one based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition2 {
    n: usize,
    first: Vec<usize>,
    second: Vec<usize>,
}

impl Partition2 {
    /// `first` becomes `I1`; `I2` is its complement.
    pub fn new(n: usize, first: impl IntoIterator<Item = usize>) -> Result<Self, AlgebraError> {
        let mut seen = vec![false; n];
        for i in first {
            if i >= n {
                return Err(AlgebraError::IndexOutOfRange { index: i, n });
            }
            if seen[i] {
                return Err(AlgebraError::InvalidPartition(format!("index {} repeated", i + 1)));
            }
            seen[i] = true;
        }
        Ok(Self::from_mask(&seen))
    }

    /// Both blocks given explicitly; they must be disjoint and cover `0..n`.
    pub fn from_blocks(n: usize, first: &[usize], second: &[usize]) -> Result<Self, AlgebraError> {
        let p = Self::new(n, first.iter().copied())?;
        let mut s = second.to_vec();
        s.sort_unstable();
        if s != p.second {
            return Err(AlgebraError::InvalidPartition(
                "blocks are not complementary".to_string(),
            ));
        }
        Ok(p)
    }

    fn from_mask(mask: &[bool]) -> Self {
        let first = (0..mask.len()).filter(|&i| mask[i]).collect();
        let second = (0..mask.len()).filter(|&i| !mask[i]).collect();
        Self { n: mask.len(), first, second }
    }

    /// `[v] = ({1..v}, {v+1..n})`.
    pub fn level(n: usize, v: usize) -> Result<Self, AlgebraError> {
        if v > n {
            return Err(AlgebraError::IndexOutOfRange { index: v, n });
        }
        Self::new(n, 0..v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn first(&self) -> &[usize] {
        &self.first
    }

    pub fn second(&self) -> &[usize] {
        &self.second
    }

    /// `(I1 ∪ {k}, I2 \ {k})` for `k ∈ I2`.
    pub fn tau_plus(&self, k: usize) -> Result<Self, AlgebraError> {
        if !self.second.contains(&k) {
            return Err(AlgebraError::InvalidPartition(format!("{} not in I2", k + 1)));
        }
        Self::new(self.n, self.first.iter().copied().chain([k]))
    }

    /// `(I1 \ {k}, I2 ∪ {k})` for `k ∈ I1`.
    pub fn tau_minus(&self, k: usize) -> Result<Self, AlgebraError> {
        if !self.first.contains(&k) {
            return Err(AlgebraError::InvalidPartition(format!("{} not in I1", k + 1)));
        }
        Self::new(self.n, self.first.iter().copied().filter(|&i| i != k))
    }

    /// Permutation `p` with `f(x_I) = f.permute(p)`: the first `|I1|` variables go to
    /// `I1` and the rest to `I2`, both in increasing order.
    pub fn substitution(&self) -> Vec<usize> {
        let mut perm = vec![0; self.n];
        for (pos, &i) in self.first.iter().chain(self.second.iter()).enumerate() {
            perm[pos] = i;
        }
        perm
    }

    /// The four blocks `I_a ∩ J_b` of the intersection `S_I ∩ S_J`.
    pub fn meet(&self, other: &Partition2) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(4);
        for a in [&self.first, &self.second] {
            for b in [&other.first, &other.second] {
                out.push(a.iter().copied().filter(|i| b.contains(i)).collect());
            }
        }
        out
    }
}

impl fmt::Display for Partition2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({{{}}},{{{}}})", show(&self.first), show(&self.second))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_and_moves() {
        let p = Partition2::level(4, 2).unwrap();
        assert_eq!(p.first(), &[0, 1]);
        assert_eq!(p.second(), &[2, 3]);
        let t = p.tau_plus(3).unwrap();
        assert_eq!(t.first(), &[0, 1, 3]);
        assert_eq!(t.tau_minus(3).unwrap(), p);
        assert!(p.tau_minus(3).is_err());
        assert_eq!(t.to_string(), "({1,2,4},{3})");
        assert_eq!(t.substitution(), vec![0, 1, 3, 2]);
    }

    #[test]
    fn invalid_input() {
        assert!(Partition2::new(2, [0, 0]).is_err());
        assert!(Partition2::new(2, [2]).is_err());
        assert!(Partition2::from_blocks(3, &[0], &[1]).is_err());
        assert!(Partition2::from_blocks(3, &[0], &[2, 1]).is_ok());
    }
}
