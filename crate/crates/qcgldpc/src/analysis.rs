//! Tanner-graph girth and minimum-distance bounds.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitmatrix::{pack_bits, popcount, unpack_bits, BitMatrix};
use crate::error::{Error, Result};
use crate::gf2poly::{BinaryPoly, RingModulus};
use crate::polymat::PolyMatrix;

/// Default message budget for exhaustive distance computation.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub exact: Option<usize>,
    pub upper: usize,
    pub lower: usize,
    /// Codeword of weight `upper` (empty when degenerate).
    pub witness: Vec<u8>,
    /// Set when the code has no nonzero codeword.
    pub degenerate: bool,
    pub notes: Vec<String>,
}

impl DistanceReport {
    pub fn witness_string(&self) -> String {
        self.witness
            .iter()
            .map(|b| if *b != 0 { '1' } else { '0' })
            .collect()
    }

    /// The witness split into N-bit blocks, block j read as c_j(x).
    pub fn witness_poly(&self, m: RingModulus) -> Vec<BinaryPoly> {
        self.witness
            .chunks(m.n())
            .map(|c| {
                BinaryPoly::from_exponents(
                    c.iter()
                        .enumerate()
                        .filter(|(_, b)| **b != 0)
                        .map(|(k, _)| k),
                )
            })
            .collect()
    }
}

struct Tanner {
    var_adj: Vec<Vec<u32>>,
    chk_adj: Vec<Vec<u32>>,
}

impl Tanner {
    fn new(hb: &BitMatrix) -> Self {
        let mut var_adj = vec![Vec::new(); hb.cols()];
        let mut chk_adj = vec![Vec::new(); hb.rows()];
        for i in 0..hb.rows() {
            for j in hb.row_support(i) {
                var_adj[j].push(i as u32);
                chk_adj[i].push(j as u32);
            }
        }
        Tanner { var_adj, chk_adj }
    }

    fn neighbours(&self, node: usize) -> &[u32] {
        let n = self.var_adj.len();
        if node < n {
            &self.var_adj[node]
        } else {
            &self.chk_adj[node - n]
        }
    }

    fn node_id(&self, node: usize, adj: u32) -> usize {
        if node < self.var_adj.len() {
            self.var_adj.len() + adj as usize
        } else {
            adj as usize
        }
    }

    /// Shortest cycle through `start`, ignoring cycles of length ≥ `bound`.
    fn cycle_through(
        &self,
        start: usize,
        bound: usize,
        dist: &mut [u32],
        parent: &mut [u32],
        touched: &mut Vec<usize>,
    ) -> usize {
        let mut best = bound;
        let mut queue = VecDeque::new();
        dist[start] = 0;
        parent[start] = u32::MAX;
        touched.push(start);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let du = dist[u] as usize;
            if 2 * du + 2 >= best {
                break;
            }
            for &a in self.neighbours(u) {
                let v = self.node_id(u, a);
                if parent[u] == v as u32 {
                    continue;
                }
                if dist[v] == u32::MAX {
                    dist[v] = du as u32 + 1;
                    parent[v] = u as u32;
                    touched.push(v);
                    queue.push_back(v);
                } else {
                    best = best.min(du + dist[v] as usize + 1);
                }
            }
        }
        for &t in touched.iter() {
            dist[t] = u32::MAX;
        }
        touched.clear();
        best
    }

    fn girth_from(&self, starts: &[usize]) -> Option<usize> {
        let total = self.var_adj.len() + self.chk_adj.len();
        let best = starts
            .par_chunks(64.max(starts.len() / 64 + 1))
            .map(|chunk| {
                let mut dist = vec![u32::MAX; total];
                let mut parent = vec![u32::MAX; total];
                let mut touched = Vec::new();
                let mut best = usize::MAX;
                for &s in chunk {
                    best =
                        best.min(self.cycle_through(s, best, &mut dist, &mut parent, &mut touched));
                    if best == 4 {
                        break;
                    }
                }
                best
            })
            .min()
            .unwrap_or(usize::MAX);
        (best != usize::MAX).then_some(best)
    }
}

/// Length of the shortest cycle of the Tanner graph; `None` if acyclic.
pub fn girth(hb: &BitMatrix) -> Option<usize> {
    let t = Tanner::new(hb);
    let starts: Vec<usize> = (0..hb.cols()).collect();
    t.girth_from(&starts)
}

/// Girth of `circulant_expand(h)`, searching from one variable per block
/// column (the graph is invariant under the cyclic shift).
pub fn girth_qc(h: &PolyMatrix) -> Result<Option<usize>> {
    let n = h.require_modulus()?.n();
    let hb = h.circulant_expand()?;
    let t = Tanner::new(&hb);
    let starts: Vec<usize> = (0..h.cols()).map(|j| j * n).collect();
    Ok(t.girth_from(&starts))
}

/// Exact minimum distance by Gray-code enumeration of all messages.
pub fn min_distance_exact(gb: &BitMatrix, budget: u64) -> Result<usize> {
    Ok(exact_with_witness(gb, budget)?.0)
}

fn exact_with_witness(gb: &BitMatrix, budget: u64) -> Result<(usize, Vec<u8>)> {
    let basis = gb.independent_rows();
    let k = basis.rows();
    if k == 0 {
        return Err(Error::InvalidInput(
            "the code has no nonzero codeword".into(),
        ));
    }
    if k >= 64 || (1u64 << k) > budget {
        return Err(Error::BudgetExceeded {
            log2_messages: k,
            budget,
        });
    }
    let words = basis.row_words(0).len();
    let mut cur = vec![0u64; words];
    let mut best = usize::MAX;
    let mut best_word = cur.clone();
    for step in 1u64..(1u64 << k) {
        let bit = step.trailing_zeros() as usize;
        for (c, r) in cur.iter_mut().zip(basis.row_words(bit)) {
            *c ^= r;
        }
        let w = popcount(&cur);
        if w < best {
            best = w;
            best_word.copy_from_slice(&cur);
        }
    }
    Ok((best, unpack_bits(&best_word, gb.cols())))
}

fn mix(seed: u64, idx: u64) -> u64 {
    let mut z = seed ^ idx.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Lowest-weight word among single rows and pairs of rows.
fn scan_rows_and_pairs(rows: &[Vec<u64>]) -> Option<(usize, Vec<u64>)> {
    let mut best: Option<(usize, usize, usize)> = None;
    let better =
        |w: usize, best: &Option<(usize, usize, usize)>| w > 0 && best.is_none_or(|b| w < b.0);
    for (i, a) in rows.iter().enumerate() {
        let w = popcount(a);
        if better(w, &best) {
            best = Some((w, i, i));
        }
        for (j, b) in rows.iter().enumerate().skip(i + 1) {
            let w: usize = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x ^ y).count_ones() as usize)
                .sum();
            if better(w, &best) {
                best = Some((w, i, j));
            }
        }
    }
    best.map(|(w, i, j)| {
        let v = if i == j {
            rows[i].clone()
        } else {
            rows[i].iter().zip(&rows[j]).map(|(x, y)| x ^ y).collect()
        };
        (w, v)
    })
}

/// Systematic form over a random information set: column order shuffled,
/// pivots taken greedily in that order.
fn random_systematic(basis: &[Vec<u64>], n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let mut rows = basis.to_vec();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut done = vec![false; rows.len()];
    let mut pivots = 0;
    for &c in &order {
        if pivots == rows.len() {
            break;
        }
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (0..rows.len()).find(|&r| !done[r] && rows[r][w] & b != 0) else {
            continue;
        };
        done[p] = true;
        pivots += 1;
        let pr = rows[p].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != p && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x ^= y;
                }
            }
        }
    }
    rows
}

/// Randomized search for low-weight codewords: the rows of G and their
/// pairs, then `iterations` random information sets, each scanned over
/// single rows and row pairs. Iteration i uses a stream derived from
/// (seed, i), so a longer run never reports a larger upper bound.
pub fn low_weight_search(gb: &BitMatrix, iterations: usize, seed: u64) -> DistanceReport {
    let basis_m = gb.independent_rows();
    let basis: Vec<Vec<u64>> = (0..basis_m.rows())
        .map(|i| basis_m.row_words(i).to_vec())
        .collect();
    if basis.is_empty() {
        return DistanceReport {
            exact: None,
            upper: 0,
            lower: 0,
            witness: Vec::new(),
            degenerate: true,
            notes: vec!["generator spans only the zero word".into()],
        };
    }
    let all_rows: Vec<Vec<u64>> = (0..gb.rows())
        .map(|i| gb.row_words(i).to_vec())
        .filter(|r| popcount(r) > 0)
        .collect();
    let mut best = scan_rows_and_pairs(&all_rows).expect("nonzero row exists");
    let n = gb.cols();
    let chunk = 256;
    let mut start = 0;
    while start < iterations {
        let end = (start + chunk).min(iterations);
        let found = (start..end)
            .into_par_iter()
            .filter_map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, i as u64));
                scan_rows_and_pairs(&random_systematic(&basis, n, &mut rng)).map(|b| (b.0, i, b.1))
            })
            .min_by_key(|(w, i, _)| (*w, *i));
        if let Some((w, _, v)) = found {
            if w < best.0 {
                best = (w, v);
            }
        }
        start = end;
    }
    DistanceReport {
        exact: None,
        upper: best.0,
        lower: 1,
        witness: unpack_bits(&best.1, n),
        degenerate: false,
        notes: vec![format!(
            "best of G rows, row pairs and {iterations} random information sets (seed {seed})"
        )],
    }
}

/// Exact distance when 2^k fits the budget, otherwise a search report.
pub fn distance_report(
    gb: &BitMatrix,
    budget: u64,
    iterations: usize,
    seed: u64,
) -> DistanceReport {
    match exact_with_witness(gb, budget) {
        Ok((d, w)) => DistanceReport {
            exact: Some(d),
            upper: d,
            lower: d,
            witness: w,
            degenerate: false,
            notes: vec!["exhaustive enumeration".into()],
        },
        Err(_) => low_weight_search(gb, iterations, seed),
    }
}

/// Lower bound in the style of Brouwer–Zimmermann: with `m` pairwise
/// disjoint information sets, every codeword not produced by combining at
/// most w rows of some systematic form has weight ≥ m·(w+1) on those sets.
/// Enumeration stops at the first w where the bound meets the best word,
/// or when the next round would exceed `budget` combinations.
pub fn lower_bound_bz(gb: &BitMatrix, budget: u64) -> Result<DistanceReport> {
    let basis_m = gb.independent_rows();
    let k = basis_m.rows();
    if k == 0 {
        return Err(Error::InvalidInput(
            "the code has no nonzero codeword".into(),
        ));
    }
    let n = gb.cols();
    // Disjoint information sets, found greedily on the remaining columns.
    let mut forms: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut used = vec![false; n];
    loop {
        let mut rows: Vec<Vec<u64>> = (0..k).map(|i| basis_m.row_words(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut done = vec![false; k];
        for c in (0..n).filter(|&c| !used[c]) {
            let (w, b) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (0..k).find(|&r| !done[r] && rows[r][w] & b != 0) else {
                continue;
            };
            done[p] = true;
            pivots.push(c);
            let pr = rows[p].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != p && row[w] & b != 0 {
                    for (x, y) in row.iter_mut().zip(&pr) {
                        *x ^= y;
                    }
                }
            }
            if pivots.len() == k {
                break;
            }
        }
        if pivots.len() < k {
            break;
        }
        for &c in &pivots {
            used[c] = true;
        }
        forms.push(rows);
    }
    if forms.is_empty() {
        return Err(Error::InvalidInput("no information set found".into()));
    }
    let m = forms.len();
    let mut best: (usize, Vec<u64>) = (usize::MAX, Vec::new());
    let mut lower = 1;
    let mut spent: u64 = 0;
    for w in 1..=k {
        let round = binomial(k as u64, w as u64).saturating_mul(m as u64);
        if spent.saturating_add(round) > budget {
            break;
        }
        spent += round;
        for form in &forms {
            enumerate_combinations(form, w, &mut |v| {
                let wt = popcount(v);
                if wt > 0 && wt < best.0 {
                    best = (wt, v.to_vec());
                }
            });
        }
        lower = (m * (w + 1)).min(best.0);
        if lower >= best.0 {
            break;
        }
    }
    if best.0 == usize::MAX {
        // No round fitted the budget: fall back to the rows themselves.
        let (w, v) = scan_rows_and_pairs(&forms[0]).expect("nonzero rows");
        best = (w, v);
    }
    let exact = (lower == best.0).then_some(lower);
    Ok(DistanceReport {
        exact,
        upper: best.0,
        lower,
        witness: unpack_bits(&best.1, n),
        degenerate: false,
        notes: vec![format!(
            "{m} disjoint information sets, {spent} combinations"
        )],
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

fn enumerate_combinations(rows: &[Vec<u64>], w: usize, f: &mut dyn FnMut(&[u64])) {
    fn rec(
        rows: &[Vec<u64>],
        start: usize,
        left: usize,
        acc: &mut Vec<u64>,
        f: &mut dyn FnMut(&[u64]),
    ) {
        if left == 0 {
            f(acc);
            return;
        }
        for i in start..=rows.len() - left {
            for (a, r) in acc.iter_mut().zip(&rows[i]) {
                *a ^= r;
            }
            rec(rows, i + 1, left - 1, acc, f);
            for (a, r) in acc.iter_mut().zip(&rows[i]) {
                *a ^= r;
            }
        }
    }
    let mut acc = vec![0u64; rows[0].len()];
    rec(rows, 0, w, &mut acc, f);
}

/// Combines an upper-bound report with the distance of a shortened code,
/// which bounds the distance from below.
pub fn bounds_combine(upper: &DistanceReport, short_distance: usize) -> Result<DistanceReport> {
    if short_distance == 0 {
        return Err(Error::InvalidInput(
            "shortened-code distance must be positive".into(),
        ));
    }
    if !upper.degenerate && short_distance > upper.upper {
        return Err(Error::InvalidInput(format!(
            "lower bound {short_distance} exceeds the witness weight {}",
            upper.upper
        )));
    }
    let mut out = upper.clone();
    out.lower = short_distance.max(upper.lower);
    if out.lower == out.upper {
        out.exact = Some(out.upper);
    }
    out.notes.push(format!(
        "lower bound {short_distance} from the shortened code"
    ));
    Ok(out)
}

/// True when `word` has zero syndrome under `hb`.
pub fn is_codeword(hb: &BitMatrix, word: &[u8]) -> Result<bool> {
    Ok(hb.mul_vec(word)?.iter().all(|b| *b == 0))
}

/// Binary weight of a packed or unpacked word.
pub fn weight(word: &[u8]) -> usize {
    popcount(&pack_bits(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn girth_of_small_graphs() {
        // Two checks sharing two variables: a 4-cycle.
        let h = BitMatrix::from_bit_strings(&["1100", "1101"]).unwrap();
        assert_eq!(girth(&h), Some(4));
        let tree = BitMatrix::from_bit_strings(&["1100", "0011"]).unwrap();
        assert_eq!(girth(&tree), None);
        // 3 checks in a ring through 3 variables: a 6-cycle.
        let ring = BitMatrix::from_bit_strings(&["110", "011", "101"]).unwrap();
        assert_eq!(girth(&ring), Some(6));
    }

    #[test]
    fn repetition_distance() {
        let g = BitMatrix::from_bit_strings(&["11"]).unwrap();
        assert_eq!(min_distance_exact(&g, DEFAULT_BUDGET).unwrap(), 2);
        let big = BitMatrix::identity(30);
        assert!(matches!(
            min_distance_exact(&big, 1 << 20),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn degenerate_search() {
        let z = BitMatrix::zeros(3, 10);
        let r = low_weight_search(&z, 5, 1);
        assert!(r.degenerate);
        assert_eq!(r.upper, 0);
    }

    #[test]
    fn bz_on_hamming() {
        // Generator of the [7,4,3] Hamming code.
        let g = BitMatrix::from_bit_strings(&["1000110", "0100101", "0010011", "0001111"]).unwrap();
        let r = lower_bound_bz(&g, 1 << 20).unwrap();
        assert_eq!(r.upper, 3);
        assert!(r.lower <= 3);
    }

    #[test]
    fn combine_bounds() {
        let up = DistanceReport {
            exact: None,
            upper: 88,
            lower: 1,
            witness: vec![],
            degenerate: false,
            notes: vec![],
        };
        let r = bounds_combine(&up, 34).unwrap();
        assert_eq!((r.lower, r.upper), (34, 88));
        assert!(bounds_combine(&up, 0).is_err());
        assert!(bounds_combine(&up, 90).is_err());
    }
}
