use itertools::Itertools;

use super::{AlgebraError, MultiLaurent, Partition2, RationalFn};
use crate::par::{self, Exec};

/// Invariance under adjacent transpositions inside `I1` and inside `I2`.
pub fn is_symmetric(f: &MultiLaurent, i: &Partition2) -> bool {
    f.nvars() == i.n() && invariant_under_blocks(&[i.first(), i.second()], |a, b| f.swap(a, b) == *f)
}

fn invariant_under_blocks(blocks: &[&[usize]], same_after_swap: impl Fn(usize, usize) -> bool) -> bool {
    blocks
        .iter()
        .all(|b| b.windows(2).all(|w| same_after_swap(w[0], w[1])))
}

fn rational_invariant(f: &RationalFn, blocks: &[Vec<usize>]) -> bool {
    let refs: Vec<&[usize]> = blocks.iter().map(|b| b.as_slice()).collect();
    let n = f.nvars();
    invariant_under_blocks(&refs, |a, b| {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(a, b);
        f.permute(&perm).equals(f)
    })
}

/// Representatives of `S_J / (S_I ∩ S_J)` as substitutions `x_i -> x_{perm[i]}`.
pub fn coset_representatives(i: &Partition2, j: &Partition2) -> Result<Vec<Vec<usize>>, AlgebraError> {
    if i.n() != j.n() {
        return Err(AlgebraError::NvarsMismatch(i.n(), j.n()));
    }
    let n = i.n();
    let mut per_block: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    for block in [j.first(), j.second()] {
        let inner: Vec<usize> = block.iter().copied().filter(|x| i.first().contains(x)).collect();
        let outer: Vec<usize> = block.iter().copied().filter(|x| !i.first().contains(x)).collect();
        let mut choices = Vec::new();
        for t in block.iter().copied().combinations(inner.len()) {
            let rest: Vec<usize> = block.iter().copied().filter(|x| !t.contains(x)).collect();
            let mut moves: Vec<(usize, usize)> = inner.iter().copied().zip(t.iter().copied()).collect();
            moves.extend(outer.iter().copied().zip(rest));
            choices.push(moves);
        }
        per_block.push(choices);
    }
    let mut out = Vec::new();
    for (a, b) in per_block[0].iter().cartesian_product(per_block[1].iter()) {
        let mut perm: Vec<usize> = (0..n).collect();
        for &(from, to) in a.iter().chain(b.iter()) {
            perm[from] = to;
        }
        out.push(perm);
    }
    Ok(out)
}

/// `S_I^J f = Σ_{σ ∈ S_J/(S_I ∩ S_J)} σ(f)`, asserted to be a Laurent polynomial.
pub fn symmetrize(f: &RationalFn, i: &Partition2, j: &Partition2) -> Result<MultiLaurent, AlgebraError> {
    symmetrize_with(Exec::default(), f, i, j)
}

pub fn symmetrize_with(
    exec: Exec,
    f: &RationalFn,
    i: &Partition2,
    j: &Partition2,
) -> Result<MultiLaurent, AlgebraError> {
    if f.nvars() != i.n() {
        return Err(AlgebraError::NvarsMismatch(f.nvars(), i.n()));
    }
    let blocks = i.meet(j);
    if !rational_invariant(f, &blocks) {
        return Err(AlgebraError::NotSymmetric(format!("S_I ∩ S_J for I={i}, J={j}")));
    }
    let reps = coset_representatives(i, j)?;
    sum_over_permutations(exec, f, &reps)
}

pub fn symmetrize_poly(f: &MultiLaurent, i: &Partition2, j: &Partition2) -> Result<MultiLaurent, AlgebraError> {
    symmetrize(&RationalFn::from_poly(f.clone()), i, j)
}

/// `Σ_σ σ(f)` over the given substitutions, cleared over a Vandermonde denominator.
pub(crate) fn sum_over_permutations(
    exec: Exec,
    f: &RationalFn,
    perms: &[Vec<usize>],
) -> Result<MultiLaurent, AlgebraError> {
    let n = f.nvars();
    if let Some(inv) = f.den().unit_inverse() {
        let g = f.num() * &inv;
        return Ok(par::map_reduce(
            exec,
            perms,
            |p| g.permute(p),
            || MultiLaurent::zero(n),
            |a, b| a + b,
        ));
    }
    let mut moved = f.den().support_vars();
    for p in perms {
        moved.extend((0..n).filter(|&i| p[i] != i));
    }
    moved.sort_unstable();
    moved.dedup();
    let pairs: Vec<(usize, usize)> = moved.iter().copied().tuple_combinations().collect();
    let vandermonde = pairs
        .iter()
        .fold(MultiLaurent::one(n), |acc, &(a, b)| &acc * &MultiLaurent::difference(n, a, b));
    let total = par::map_reduce(
        exec,
        perms,
        |p| -> Result<MultiLaurent, AlgebraError> {
            let cofactor = vandermonde.div_exact(&f.den().permute(p))?;
            Ok(&f.num().permute(p) * &cofactor)
        },
        || Ok(MultiLaurent::zero(n)),
        |a, b| Ok(a? + b?),
    )?;
    pairs
        .iter()
        .try_fold(total, |acc, &(a, b)| acc.div_by_difference(a, b))
}
