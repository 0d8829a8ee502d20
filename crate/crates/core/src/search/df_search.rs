use std::collections::HashSet;

use crate::design::{develop, verify_qdf, Block, BlockFamily};
use crate::dfbq::Dfbq;

use super::SearchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dedup {
    None,
    /// Keep only the first family for each distinct development.
    ByDevelopment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchParams {
    k: usize,
    lambda: usize,
    max_blocks: usize,
    dedup: Dedup,
}

impl SearchParams {
    pub fn new(k: usize, lambda: usize, max_blocks: usize, dedup: Dedup) -> Result<Self, SearchError> {
        if k < 2 {
            return Err(SearchError::InvalidParameters(format!("block size k = {k} must be at least 2")));
        }
        if lambda < 1 {
            return Err(SearchError::InvalidParameters("lambda must be at least 1".into()));
        }
        Ok(SearchParams { k, lambda, max_blocks, dedup })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn max_blocks(&self) -> usize {
        self.max_blocks
    }

    pub fn dedup(&self) -> Dedup {
        self.dedup
    }
}

/// Families found, or the counting reason none can exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub families: Vec<BlockFamily>,
    pub infeasible: Option<String>,
    /// Number of blocks every family must have: `lambda (n - 1) / (k (k - 1))`.
    pub family_size: Option<usize>,
}

impl SearchOutcome {
    fn infeasible(reason: String) -> Self {
        SearchOutcome { families: Vec::new(), infeasible: Some(reason), family_size: None }
    }
}

/// Depth-first search for difference families over `d`.
///
/// `s` blocks with `k(k-1)` ordered differences each must cover the `n - 1`
/// values `x != e` exactly `lambda` times, so `s = lambda (n - 1) / (k (k - 1))`.
/// Blocks are tried in lexicographic order with strictly increasing index,
/// pruning as soon as any difference count exceeds `lambda`; each complete
/// family must then pass [`verify_qdf`] (translate distinctness).
pub fn find_difference_families(d: &Dfbq, params: &SearchParams) -> SearchOutcome {
    let n = d.order();
    let SearchParams { k, lambda, max_blocks, dedup } = *params;
    if k > n {
        return SearchOutcome::infeasible(format!("block size k = {k} exceeds the order {n}"));
    }
    let pairs_per_block = k * (k - 1);
    let required = lambda * (n - 1);
    if required == 0 {
        return SearchOutcome::infeasible("order 1 has no nonzero differences".into());
    }
    if !required.is_multiple_of(pairs_per_block) {
        return SearchOutcome::infeasible(format!(
            "lambda*(n-1) = {required} is not divisible by k*(k-1) = {pairs_per_block}"
        ));
    }
    let size = required / pairs_per_block;
    if size > max_blocks {
        return SearchOutcome::infeasible(format!(
            "a family needs lambda*(n-1)/(k*(k-1)) = {size} blocks, more than max_blocks = {max_blocks}"
        ));
    }

    let candidates: Vec<(Block, Vec<u8>)> = k_subsets(n, k)
        .into_iter()
        .map(|set| {
            let diffs = set
                .iter()
                .flat_map(|&a| set.iter().filter(move |&&b| b != a).map(move |&b| d.sub(a, b) as u8))
                .collect();
            (Block::new(set).expect("distinct subset"), diffs)
        })
        .collect();

    let mut search = Search {
        d,
        candidates: &candidates,
        lambda,
        size,
        counts: vec![0; n],
        chosen: Vec::with_capacity(size),
        found: Vec::new(),
    };
    search.descend(0);

    let mut families = search.found;
    if dedup == Dedup::ByDevelopment {
        let mut seen = HashSet::new();
        families.retain(|fam| seen.insert(develop(fam, d.add_table()).expect("quasigroup").block_vec()));
    }
    SearchOutcome { families, infeasible: None, family_size: Some(size) }
}

struct Search<'a> {
    d: &'a Dfbq,
    candidates: &'a [(Block, Vec<u8>)],
    lambda: usize,
    size: usize,
    counts: Vec<usize>,
    chosen: Vec<usize>,
    found: Vec<BlockFamily>,
}

impl Search<'_> {
    fn descend(&mut self, from: usize) {
        if self.chosen.len() == self.size {
            let blocks = self.chosen.iter().map(|&i| self.candidates[i].0.clone()).collect();
            let fam = BlockFamily::new(self.d.order(), blocks).expect("distinct candidates");
            if verify_qdf(self.d, &fam).is_ok() {
                self.found.push(fam);
            }
            return;
        }
        let remaining = self.size - self.chosen.len();
        for i in from..self.candidates.len().saturating_sub(remaining - 1) {
            let diffs = &self.candidates[i].1;
            let mut ok = true;
            for &x in diffs {
                self.counts[x as usize] += 1;
                ok &= self.counts[x as usize] <= self.lambda;
            }
            if ok {
                self.chosen.push(i);
                self.descend(i + 1);
                self.chosen.pop();
            }
            for &x in diffs {
                self.counts[x as usize] -= 1;
            }
        }
    }
}

/// All `k`-subsets of `{0..n-1}` in lexicographic order.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(current.clone());
        let Some(i) = (0..k).rev().find(|&i| current[i] < n - k + i) else { break };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::CayleyTable;
    use crate::design::is_2design;
    use crate::dfbq::GroupPresentation;

    fn zgroup(n: usize) -> Dfbq {
        GroupPresentation::new(CayleyTable::cyclic(n)).unwrap().subtraction_dfbq()
    }

    fn contains(out: &SearchOutcome, sets: &[&[usize]]) -> bool {
        let n = out.families.first().map_or(0, |f| f.order());
        let target = BlockFamily::from_sets(n, sets).unwrap();
        out.families.contains(&target)
    }

    #[test]
    fn subsets() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(4, 2)[0], vec![0, 1]);
        assert_eq!(k_subsets(4, 2)[5], vec![2, 3]);
        assert_eq!(k_subsets(13, 4).len(), 715);
    }

    #[test]
    fn fano_difference_sets() {
        let p = SearchParams::new(3, 1, 1, Dedup::None).unwrap();
        let out = find_difference_families(&zgroup(7), &p);
        assert!(contains(&out, &[&[1, 2, 4]]));
        // 7 translates of {1,2,4} and 7 of {3,5,6}
        assert_eq!(out.families.len(), 14);
        let dedup = find_difference_families(&zgroup(7), &SearchParams::new(3, 1, 1, Dedup::ByDevelopment).unwrap());
        assert_eq!(dedup.families.len(), 2);
    }

    #[test]
    fn z5_pairs_and_z13() {
        let out = find_difference_families(&zgroup(5), &SearchParams::new(2, 1, 2, Dedup::None).unwrap());
        assert_eq!(out.family_size, Some(2));
        assert!(contains(&out, &[&[0, 1], &[0, 2]]));

        let out = find_difference_families(&zgroup(13), &SearchParams::new(4, 1, 1, Dedup::None).unwrap());
        assert!(contains(&out, &[&[0, 1, 3, 9]]));
    }

    #[test]
    fn infeasible() {
        let out = find_difference_families(&zgroup(4), &SearchParams::new(3, 1, 5, Dedup::None).unwrap());
        assert!(out.families.is_empty());
        assert!(out.infeasible.unwrap().contains("not divisible"));
        let out = find_difference_families(&zgroup(5), &SearchParams::new(2, 1, 1, Dedup::None).unwrap());
        assert!(out.infeasible.unwrap().contains("max_blocks"));
        assert!(SearchParams::new(1, 1, 1, Dedup::None).is_err());
        assert!(SearchParams::new(2, 0, 1, Dedup::None).is_err());
    }

    #[test]
    fn emitted_families_develop_to_designs() {
        for (n, k, lambda) in [(7, 3, 1), (5, 2, 1), (7, 3, 2), (9, 3, 3), (7, 4, 2)] {
            let p = SearchParams::new(k, lambda, 10, Dedup::ByDevelopment).unwrap();
            let d = zgroup(n);
            let out = find_difference_families(&d, &p);
            for fam in &out.families {
                let cert = verify_qdf(&d, fam).unwrap();
                assert_eq!((cert.k, cert.lambda), (k, lambda));
                let dev = develop(fam, d.add_table()).unwrap();
                assert_eq!(is_2design(n, &dev.block_vec()), Ok((k, lambda)));
            }
        }
    }
}
