//! Codewords from minors and polynomial generator matrices.
//!
//! Rows of a generator G(x) are stored so that `G · transpose_entrywise(H)
//! = 0`; the binary codeword of a row is the first row of its circulant
//! expansion, i.e. the coefficients of the transposed entries.

use serde::{Deserialize, Serialize};

use crate::bitmatrix::Echelon;
use crate::error::{Error, Result};
use crate::gf2poly::{BinaryPoly, RingModulus};
use crate::polymat::{combinations, IndexSet, MinorCache, PolyMatrix};
use crate::rank::{code_dimension, rank_scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RowProvenance {
    Lemma1 {
        s: IndexSet,
    },
    Lemma1Reduced {
        s: IndexSet,
        a: BinaryPoly,
    },
    Lemma2 {
        t: IndexSet,
        s: IndexSet,
        f: BinaryPoly,
    },
    /// Diagonal row of the single-row shortened form, pivot column `pivot`.
    ShortPivot {
        pivot: usize,
        divided_by: BinaryPoly,
    },
    /// `f^T` in column `col`, with f·g = x^N+1.
    ShortF {
        col: usize,
        f: BinaryPoly,
    },
    /// A row of a shortened generator, lifted through the elimination.
    Shortened {
        inner: Box<RowProvenance>,
    },
    Explicit,
}

impl RowProvenance {
    /// The provenance of the row before any shortening lifts.
    pub fn innermost(&self) -> &RowProvenance {
        match self {
            RowProvenance::Shortened { inner } => inner.innermost(),
            p => p,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorResult {
    #[serde(rename = "G")]
    pub g: PolyMatrix,
    pub row_provenance: Vec<RowProvenance>,
    pub rank: usize,
    pub target_dimension: usize,
    pub complete: bool,
    pub min_row_weight: usize,
    pub row_weights: Vec<usize>,
}

impl GeneratorResult {
    /// Wraps `g`, computing the rank of its binary expansion.
    pub fn new(
        g: PolyMatrix,
        row_provenance: Vec<RowProvenance>,
        target_dimension: usize,
    ) -> Result<Self> {
        let rank = rank_scalar(&g.circulant_expand()?);
        let row_weights: Vec<usize> = (0..g.rows()).map(|i| g.row_weight(i)).collect();
        Ok(GeneratorResult {
            min_row_weight: row_weights.iter().copied().min().unwrap_or(0),
            complete: rank == target_dimension,
            g,
            row_provenance,
            rank,
            target_dimension,
            row_weights,
        })
    }

    pub fn total_weight(&self) -> usize {
        self.row_weights.iter().sum()
    }

    /// Binary codeword of row `i`.
    pub fn row_bits(&self, i: usize) -> Result<Vec<u8>> {
        row_codeword_bits(self.g.row(i), self.g.require_modulus()?)
    }

    pub fn count_rows(&self, pred: impl Fn(&RowProvenance) -> bool) -> usize {
        self.row_provenance
            .iter()
            .filter(|p| pred(p.innermost()))
            .count()
    }

    pub fn require_complete(self) -> Result<Self> {
        if self.complete {
            Ok(self)
        } else {
            Err(Error::Incomplete {
                rank: self.rank,
                target: self.target_dimension,
            })
        }
    }
}

/// Binary codeword of a generator row: block j holds the coefficients of
/// transpose(g_j).
pub fn row_codeword_bits(row: &[BinaryPoly], m: RingModulus) -> Result<Vec<u8>> {
    let n = m.n();
    let mut out = vec![0u8; row.len() * n];
    for (j, p) in row.iter().enumerate() {
        for k in m.transpose(p).exponents() {
            out[j * n + k] = 1;
        }
    }
    Ok(out)
}

/// Binary word of a vector written with H(x)c(x)^T = 0: block j holds the
/// coefficients of c_j.
pub fn vector_bits(c: &[BinaryPoly], m: RingModulus) -> Vec<u8> {
    let n = m.n();
    let mut out = vec![0u8; c.len() * n];
    for (j, p) in c.iter().enumerate() {
        for k in m.reduce(p).exponents() {
            out[j * n + k] = 1;
        }
    }
    out
}

/// Converts between the two vector conventions (an involution).
pub fn transpose_vector(c: &[BinaryPoly], m: RingModulus) -> Vec<BinaryPoly> {
    c.iter().map(|p| m.transpose(p)).collect()
}

/// Packed binary rows spanned by one polynomial row (its N cyclic shifts).
fn expanded_rows(row: &[BinaryPoly], m: RingModulus) -> Vec<Vec<u64>> {
    let g = PolyMatrix::from_rows(vec![row.to_vec()], Some(m)).expect("single row");
    let b = g.circulant_expand().expect("modulus present");
    (0..b.rows()).map(|i| b.row_words(i).to_vec()).collect()
}

fn check_lemma1_size(h: &PolyMatrix, s: &IndexSet) -> Result<()> {
    if s.len() != h.rows() + 1 || s.as_slice().last().is_none_or(|&c| c >= h.cols()) {
        return Err(Error::DimensionMismatch(format!(
            "codeword_lemma1 needs {} columns within 1..={}, got {s}",
            h.rows() + 1,
            h.cols()
        )));
    }
    Ok(())
}

fn lemma1_minors(cache: &mut MinorCache, h: &PolyMatrix, s: &IndexSet) -> Vec<BinaryPoly> {
    let rows = IndexSet::range(h.rows());
    s.as_slice()
        .iter()
        .map(|&i| cache.det_sets(&rows, &s.without(i)))
        .collect()
}

fn place(h: &PolyMatrix, s: &IndexSet, vals: Vec<BinaryPoly>, m: RingModulus) -> Vec<BinaryPoly> {
    let mut out = vec![BinaryPoly::zero(); h.cols()];
    for (&i, v) in s.as_slice().iter().zip(vals) {
        out[i] = m.transpose(&m.reduce(&v));
    }
    out
}

/// Minor codeword: position i ∈ S carries transpose(det H_{S∖i}).
pub fn codeword_lemma1(h: &PolyMatrix, s: &IndexSet) -> Result<Vec<BinaryPoly>> {
    let m = h.require_modulus()?;
    check_lemma1_size(h, s)?;
    let mut cache = MinorCache::new(h)?;
    let minors = lemma1_minors(&mut cache, h, s);
    Ok(place(h, s, minors, m))
}

/// `codeword_lemma1` divided by a(x), the GF(2)[x] gcd of the minors (division
/// happens before reduction).
pub fn codeword_lemma1_reduced(
    h: &PolyMatrix,
    s: &IndexSet,
) -> Result<(Vec<BinaryPoly>, BinaryPoly)> {
    let m = h.require_modulus()?;
    check_lemma1_size(h, s)?;
    let mut cache = MinorCache::new(h)?;
    let minors = lemma1_minors(&mut cache, h, s);
    let a = minors.iter().fold(BinaryPoly::zero(), |g, d| g.gcd(d));
    if a.is_zero() {
        return Err(Error::InvalidInput(format!(
            "every minor vanishes for S = {s}"
        )));
    }
    let divided = minors
        .iter()
        .map(|d| d.div_exact(&a))
        .collect::<Result<Vec<_>>>()?;
    Ok((place(h, s, divided, m), a))
}

fn check_lemma2(h: &PolyMatrix, t: &IndexSet, s: &IndexSet) -> Result<()> {
    if s.len() != t.len() + 1
        || t.as_slice().last().is_some_and(|&r| r >= h.rows())
        || s.as_slice().last().is_none_or(|&c| c >= h.cols())
    {
        return Err(Error::DimensionMismatch(format!(
            "codeword_lemma2 needs |S| = |T|+1 within range, got T={t}, S={s}"
        )));
    }
    Ok(())
}

fn lemma2_valid(
    cache: &mut MinorCache,
    h: &PolyMatrix,
    t: &IndexSet,
    s: &IndexSet,
    f: &BinaryPoly,
    m: RingModulus,
) -> bool {
    (0..h.rows())
        .filter(|&j| !t.contains(j))
        .all(|j| m.mul(f, &cache.det_sets(&t.with(j), s)).is_zero())
}

fn lemma2_vector(
    cache: &mut MinorCache,
    h: &PolyMatrix,
    t: &IndexSet,
    s: &IndexSet,
    f: &BinaryPoly,
    m: RingModulus,
) -> Vec<BinaryPoly> {
    let vals = s
        .as_slice()
        .iter()
        .map(|&i| f.mul(&cache.det_sets(t, &s.without(i))))
        .collect();
    place(h, s, vals, m)
}

/// Scaled minor codeword: f·Δ_{T,S∖i} on S, returned only when f·Δ_{T∪j,S} ≡ 0 for all
/// rows j outside T.
pub fn codeword_lemma2(
    h: &PolyMatrix,
    t: &IndexSet,
    s: &IndexSet,
    f: &BinaryPoly,
) -> Result<Option<Vec<BinaryPoly>>> {
    let m = h.require_modulus()?;
    check_lemma2(h, t, s)?;
    let mut cache = MinorCache::new(h)?;
    if !lemma2_valid(&mut cache, h, t, s, f, m) {
        return Ok(None);
    }
    Ok(Some(lemma2_vector(&mut cache, h, t, s, f, m)))
}

fn assemble(
    h: &PolyMatrix,
    rows: Vec<(Vec<BinaryPoly>, RowProvenance)>,
    target: usize,
) -> Result<GeneratorResult> {
    let m = h.require_modulus()?;
    let (vecs, prov): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let g = if vecs.is_empty() {
        PolyMatrix::zeros(0, h.cols(), Some(m))
    } else {
        PolyMatrix::from_rows(vecs, Some(m))?
    };
    GeneratorResult::new(g, prov, target)
}

/// When Δ_S is a unit, the Lemma-1 rows for S ∪ {j}, j ∉ S,
/// generate ker(H).
pub fn generator_case1(h: &PolyMatrix, s: &IndexSet) -> Result<GeneratorResult> {
    let m = h.require_modulus()?;
    if s.len() != h.rows() {
        return Err(Error::DimensionMismatch(format!(
            "S must have {} columns, got {s}",
            h.rows()
        )));
    }
    let mut cache = MinorCache::new(h)?;
    let delta = cache.det_sets(&IndexSet::range(h.rows()), s);
    if !m.is_unit(&delta) {
        return Err(Error::NotInvertible {
            poly: m.reduce(&delta).to_string(),
            modulus: m.n(),
        });
    }
    let mut rows = Vec::new();
    for j in s.complement(h.cols()).as_slice() {
        let sj = s.with(*j);
        let v = place(h, &sj, lemma1_minors(&mut cache, h, &sj), m);
        rows.push((v, RowProvenance::Lemma1 { s: sj }));
    }
    assemble(h, rows, code_dimension(h)?)
}

/// Scales the rows of a case-1 generator by (Δ_S^T)^{-1}, making the
/// non-S columns an identity block.
pub fn standard_form(h: &PolyMatrix, s: &IndexSet, g: &PolyMatrix) -> Result<PolyMatrix> {
    let m = h.require_modulus()?;
    let delta = h.minor_det(&IndexSet::range(h.rows()), s)?;
    let inv = m.inverse(&m.transpose(&m.reduce(&delta)))?;
    Ok(g.scale(&inv))
}

/// Size-|rows| column set whose minor has the smallest gcd with x^N+1.
fn best_column_set(
    cache: &mut MinorCache,
    h: &PolyMatrix,
    m: RingModulus,
) -> Option<(IndexSet, usize)> {
    let rows = IndexSet::range(h.rows());
    let mut best: Option<(IndexSet, usize)> = None;
    for s in combinations(h.cols(), h.rows()) {
        let d = cache.det_sets(&rows, &s);
        let score = m.gcd_with_modulus(&d).degree().unwrap_or(0);
        if best.as_ref().is_none_or(|(_, b)| score < *b) {
            best = Some((s, score));
            if score == 0 {
                break;
            }
        }
    }
    best
}

struct Candidate {
    row: Vec<BinaryPoly>,
    prov: RowProvenance,
    bits: Vec<Vec<u64>>,
}

impl Candidate {
    fn new(row: Vec<BinaryPoly>, prov: RowProvenance, m: RingModulus) -> Self {
        let bits = expanded_rows(&row, m);
        Candidate { row, prov, bits }
    }
}

struct Builder {
    target: usize,
    basis: Echelon,
    rows: Vec<(Vec<BinaryPoly>, RowProvenance)>,
}

impl Builder {
    fn done(&self) -> bool {
        self.basis.rank() >= self.target
    }

    fn push(&mut self, c: Candidate) {
        for r in &c.bits {
            self.basis.insert(r);
        }
        self.rows.push((c.row, c.prov));
    }

    /// Greedy: repeatedly add the candidate with the largest rank gain
    /// (first one on ties) until nothing helps.
    fn greedy(&mut self, mut pool: Vec<Candidate>) {
        while !self.done() && !pool.is_empty() {
            let gains: Vec<usize> = pool
                .iter()
                .map(|c| self.basis.gain(c.bits.iter().map(Vec::as_slice)))
                .collect();
            let (best, &gain) =
                gains.iter().enumerate().fold(
                    (0, &0),
                    |acc, (i, g)| if *g > *acc.1 { (i, g) } else { acc },
                );
            if gain == 0 {
                break;
            }
            let c = pool.remove(best);
            self.push(c);
        }
    }
}

fn build_variant(h: &PolyMatrix, target: usize, divided: bool) -> Result<GeneratorResult> {
    let m = h.require_modulus()?;
    let (nc, nv) = (h.rows(), h.cols());
    let mut cache = MinorCache::new(h)?;
    let mut b = Builder {
        target,
        basis: Echelon::new(nv * m.n()),
        rows: Vec::new(),
    };

    let lemma1_candidate = |cache: &mut MinorCache, s: &IndexSet| -> Option<Candidate> {
        let minors = lemma1_minors(cache, h, s);
        if divided {
            let a = minors.iter().fold(BinaryPoly::zero(), |g, d| g.gcd(d));
            if a.is_zero() {
                return None;
            }
            let q: Vec<BinaryPoly> = minors
                .iter()
                .map(|d| d.div_exact(&a).expect("gcd divides"))
                .collect();
            let v = place(h, s, q, m);
            Some(Candidate::new(
                v,
                RowProvenance::Lemma1Reduced { s: s.clone(), a },
                m,
            ))
        } else {
            let v = place(h, s, minors, m);
            if v.iter().all(BinaryPoly::is_zero) {
                return None;
            }
            Some(Candidate::new(v, RowProvenance::Lemma1 { s: s.clone() }, m))
        }
    };

    // Unit-minor rows around the best column set.
    if nc < nv {
        if let Some((s, _)) = best_column_set(&mut cache, h, m) {
            for j in s.complement(nv).as_slice() {
                if b.done() {
                    break;
                }
                if let Some(c) = lemma1_candidate(&mut cache, &s.with(*j)) {
                    if b.basis.gain(c.bits.iter().map(Vec::as_slice)) > 0 {
                        b.push(c);
                    }
                }
            }
        }
    }

    // Completion with f = (x^N+1)/gcd(γ, x^N+1).
    let top = nc.min(nv);
    if !b.done() && top > 0 {
        let gamma = cache.minors_gcd(top);
        let g = m.gcd_with_modulus(&gamma);
        let f = m.poly().div_exact(&g)?;
        let mut pool = Vec::new();
        for t in combinations(nc, top - 1) {
            for s in combinations(nv, top) {
                if lemma2_valid(&mut cache, h, &t, &s, &f, m) {
                    let v = lemma2_vector(&mut cache, h, &t, &s, &f, m);
                    if v.iter().any(|p| !p.is_zero()) {
                        pool.push(Candidate::new(
                            v,
                            RowProvenance::Lemma2 {
                                t: t.clone(),
                                s,
                                f: f.clone(),
                            },
                            m,
                        ));
                    }
                }
            }
        }
        b.greedy(pool);
    }

    // Fallback: per-candidate minimal f, all subset sizes.
    if !b.done() {
        let mut pool = Vec::new();
        for size in (0..top).rev() {
            for t in combinations(nc, size) {
                for s in combinations(nv, size + 1) {
                    let g = (0..nc)
                        .filter(|&j| !t.contains(j))
                        .fold(m.poly(), |g, j| g.gcd(&cache.det_sets(&t.with(j), &s)));
                    let f = m.poly().div_exact(&g)?;
                    let v = lemma2_vector(&mut cache, h, &t, &s, &f, m);
                    if v.iter().any(|p| !p.is_zero()) {
                        pool.push(Candidate::new(
                            v,
                            RowProvenance::Lemma2 { t: t.clone(), s, f },
                            m,
                        ));
                    }
                }
            }
        }
        b.greedy(pool);
    }

    // Last resort: Lemma-1 rows of every column set.
    if !b.done() && nc < nv {
        let pool: Vec<Candidate> = combinations(nv, nc + 1)
            .iter()
            .filter_map(|s| lemma1_candidate(&mut cache, s))
            .collect();
        b.greedy(pool);
    }

    assemble(h, b.rows, target)
}

/// Both pipeline variants: undivided Lemma-1 rows, and rows divided by
/// their gcd.
pub fn generator_variants(h: &PolyMatrix) -> Result<Vec<GeneratorResult>> {
    let target = code_dimension(h)?;
    Ok(vec![
        build_variant(h, target, false)?,
        build_variant(h, target, true)?,
    ])
}

/// Generator for ker(H) by the greedy minors pipeline. Incomplete results
/// are returned with `complete == false`; see `require_complete`.
pub fn generator_general(h: &PolyMatrix) -> Result<GeneratorResult> {
    let variants = generator_variants(h)?;
    Ok(pick_best(variants))
}

/// Complete first, then lower total weight, then fewer rows.
pub fn pick_best(variants: Vec<GeneratorResult>) -> GeneratorResult {
    variants
        .into_iter()
        .min_by_key(|r| (!r.complete, r.total_weight(), r.g.rows()))
        .expect("at least one variant")
}

/// `[G_short | G_short · A^T]` with A^T the block transpose.
pub fn shorten_compose(g_short: &PolyMatrix, a: &PolyMatrix) -> Result<PolyMatrix> {
    if g_short.cols() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "G_short has {} columns, A has {}",
            g_short.cols(),
            a.cols()
        )));
    }
    let right = g_short.matmul_mod(&a.transpose_entrywise()?)?;
    g_short.hstack(&right)
}

/// G·H^T = 0 and the expansion of G has rank dim ker(H).
pub fn verify_generator(h: &PolyMatrix, g: &PolyMatrix) -> Result<bool> {
    let m = h.require_modulus()?;
    if g.cols() != h.cols() {
        return Ok(false);
    }
    let g = g.with_modulus(m);
    if !g.matmul_mod(&h.transpose_entrywise()?)?.is_zero() {
        return Ok(false);
    }
    Ok(rank_scalar(&g.circulant_expand()?) == code_dimension(h)?)
}

/// True when a generator row (G convention) has zero syndrome.
pub fn is_codeword_row(h: &PolyMatrix, row: &[BinaryPoly]) -> Result<bool> {
    let m = h.require_modulus()?;
    let g = PolyMatrix::from_rows(vec![row.to_vec()], Some(m))?;
    Ok(g.matmul_mod(&h.transpose_entrywise()?)?.is_zero())
}

/// True when a vector in the H(x)c(x)^T = 0 convention is a codeword.
pub fn is_codeword_vector(h: &PolyMatrix, c: &[BinaryPoly]) -> Result<bool> {
    let m = h.require_modulus()?;
    is_codeword_row(h, &transpose_vector(c, m))
}
