//! Permutations, shuffles, Koszul signs and basis enumeration for exterior
//! and graded-symmetric powers.

use num_bigint::BigUint;

/// Ordered list of basis indices.
pub type MultiIndex = Vec<usize>;

/// Sign of a permutation given as the list `p[i] = σ(i)`.
pub fn permutation_sign(p: &[usize]) -> i32 {
    let mut inv = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A shuffle permutation `perm[slot] = σ(slot)` together with its sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shuffle {
    pub perm: Vec<usize>,
    pub sign: i32,
}

/// All `(b_1, ..., b_m)`-shuffles of `b_1 + ... + b_m` letters: permutations
/// increasing on each consecutive block of slots. Enumerated in lexicographic
/// order of `perm`.
pub fn shuffles(blocks: &[usize]) -> Vec<Shuffle> {
    let n: usize = blocks.iter().sum();
    let mut out = Vec::new();
    let mut owner = vec![usize::MAX; n];
    let mut remaining = blocks.to_vec();
    assign(0, n, &mut owner, &mut remaining, blocks, &mut out);
    out.sort_by(|a, b| a.perm.cmp(&b.perm));
    out
}

fn assign(
    value: usize,
    n: usize,
    owner: &mut Vec<usize>,
    remaining: &mut Vec<usize>,
    blocks: &[usize],
    out: &mut Vec<Shuffle>,
) {
    if value == n {
        let mut perm = Vec::with_capacity(n);
        for (b, _) in blocks.iter().enumerate() {
            perm.extend((0..n).filter(|&v| owner[v] == b));
        }
        let sign = permutation_sign(&perm);
        out.push(Shuffle { perm, sign });
        return;
    }
    for b in 0..blocks.len() {
        if remaining[b] > 0 {
            remaining[b] -= 1;
            owner[value] = b;
            assign(value + 1, n, owner, remaining, blocks, out);
            remaining[b] += 1;
        }
    }
}

/// Koszul sign `ε(σ)` defined by `v_1 ⊙ ... ⊙ v_n = ε(σ) v_σ(1) ⊙ ... ⊙ v_σ(n)`
/// where `degrees[i]` is the degree of `v_i`.
pub fn koszul_sign(sigma: &[usize], degrees: &[i32]) -> i32 {
    let mut odd = 0i64;
    for p in 0..sigma.len() {
        for q in p + 1..sigma.len() {
            if sigma[p] > sigma[q] {
                odd += (degrees[sigma[p]] as i64) * (degrees[sigma[q]] as i64);
            }
        }
    }
    if odd.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sorts indices of an exterior monomial. Returns `None` on a repeated index.
pub fn sort_with_sign(indices: &[usize]) -> Option<(MultiIndex, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Sorts a graded-symmetric monomial of basis vectors with the given basis
/// degrees. Returns `None` when an odd vector repeats.
pub fn sort_koszul(indices: &[usize], basis_degrees: &[i32]) -> Option<(MultiIndex, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            if basis_degrees[v[j - 1]].rem_euclid(2) == 1 && basis_degrees[v[j]].rem_euclid(2) == 1 {
                sign = -sign;
            }
            v.swap(j - 1, j);
            j -= 1;
        }
    }
    if v
        .windows(2)
        .any(|w| w[0] == w[1] && basis_degrees[w[0]].rem_euclid(2) == 1)
    {
        return None;
    }
    Some((v, sign))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Strictly increasing `k`-tuples from `0..dim`, in lexicographic order.
pub fn exterior_basis(k: usize, dim: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(binomial(dim, k));
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, k: usize, dim: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            if dim - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, k, dim, cur, out);
            cur.pop();
        }
    }
    rec(0, k, dim, &mut cur, &mut out);
    out
}

/// Position of a strictly increasing tuple in [`exterior_basis`].
pub fn exterior_rank(idx: &[usize], dim: usize) -> usize {
    let k = idx.len();
    let mut rank = 0;
    let mut prev: isize = -1;
    for (i, &c) in idx.iter().enumerate() {
        for j in (prev + 1) as usize..c {
            rank += binomial(dim - 1 - j, k - 1 - i);
        }
        prev = c as isize;
    }
    rank
}

/// Weakly increasing `k`-tuples in which odd basis vectors do not repeat.
pub fn graded_sym_basis(k: usize, basis_degrees: &[i32]) -> Vec<MultiIndex> {
    let dim = basis_degrees.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(
        start: usize,
        k: usize,
        dim: usize,
        deg: &[i32],
        cur: &mut Vec<usize>,
        out: &mut Vec<MultiIndex>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            let next = if deg[i].rem_euclid(2) == 1 { i + 1 } else { i };
            rec(next, k, dim, deg, cur, out);
            cur.pop();
        }
    }
    rec(0, k, dim, basis_degrees, &mut cur, &mut out);
    out
}

/// `(k_1 + ... + k_m)! / (k_1! ... k_m!)`.
pub fn multinomial(parts: &[usize]) -> BigUint {
    let mut acc = BigUint::from(1u32);
    let mut total = 0usize;
    for &p in parts {
        for i in 1..=p {
            total += 1;
            acc = acc * BigUint::from(total) / BigUint::from(i);
        }
    }
    acc
}

/// Ordered compositions of `n` into `m` positive parts.
pub fn compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for first in 1..=left {
            if left - first < parts - 1 {
                break;
            }
            cur.push(first);
            rec(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    rec(n, m, &mut cur, &mut out);
    out
}
