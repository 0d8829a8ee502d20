//! Independent oracles: direct transcriptions of the definitions, sharing no
//! code with the library beyond table and block accessors.

#![allow(dead_code)]

use qdf_core::design::Block;
use qdf_core::CayleyTable;

/// True when every row and column of `t` is a permutation.
pub fn is_latin(t: &CayleyTable) -> bool {
    let n = t.order();
    (0..n).all(|a| {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        (0..n)
            .all(|b| !std::mem::replace(&mut row[t.get(a, b)], true) && !std::mem::replace(&mut col[t.get(b, a)], true))
    })
}

/// The DFBQ axioms checked literally.
pub fn is_dfbq(add: &CayleyTable, sub: &CayleyTable) -> bool {
    let n = add.order();
    if !is_latin(add) || !is_latin(sub) {
        return false;
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if sub.get(add.get(a, c), add.get(b, c)) != sub.get(a, b) {
                    return false;
                }
            }
        }
    }
    let e = sub.get(0, 0);
    (0..n).all(|a| sub.get(a, a) == e) && (0..n).any(|o| (0..n).all(|a| add.get(a, o) == a))
}

/// `(k, lambda)` when every pair of distinct points lies in the same number
/// of blocks and all blocks have size `k`.
pub fn pair_count_design(v: usize, blocks: &[Block]) -> Option<(usize, usize)> {
    let k = blocks.first()?.len();
    if k < 2 || blocks.iter().any(|b| b.len() != k) {
        return None;
    }
    let mut counts = vec![vec![0usize; v]; v];
    for b in blocks {
        let el: Vec<usize> = b.elements().collect();
        for &x in &el {
            for &y in &el {
                if x != y {
                    counts[x][y] += 1;
                }
            }
        }
    }
    let lambda = counts[0][1];
    let uniform = (0..v).all(|x| (0..v).all(|y| x == y || counts[x][y] == lambda));
    (uniform && lambda > 0).then_some((k, lambda))
}

/// Number of reduced Latin squares of order `n` (first row and column in
/// natural order), counted row by row over whole permutations.
pub fn reduced_latin_count(n: usize) -> u64 {
    let perms = permutations(n);
    fn extend(rows: &mut Vec<Vec<usize>>, n: usize, perms: &[Vec<usize>]) -> u64 {
        let r = rows.len();
        if r == n {
            return 1;
        }
        let mut total = 0;
        for p in perms.iter().filter(|p| p[0] == r) {
            if rows.iter().all(|row| (0..n).all(|c| row[c] != p[c])) {
                rows.push(p.clone());
                total += extend(rows, n, perms);
                rows.pop();
            }
        }
        total
    }
    if n == 0 {
        return 0;
    }
    extend(&mut vec![(0..n).collect()], n, &perms)
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Every permutation of `0..n` as an image vector, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

/// The Ward identity `(x∘z)∘(y∘z) = x∘y` checked literally.
pub fn is_ward_literal(t: &CayleyTable) -> bool {
    let n = t.order();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t.get(t.get(x, z), t.get(y, z)) == t.get(x, y))))
}
