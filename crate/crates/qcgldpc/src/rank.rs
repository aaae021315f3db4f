//! Rank of a QC matrix from the determinantal divisors of H(x).

use serde::{Deserialize, Serialize};

use crate::bitmatrix::BitMatrix;
use crate::error::Result;
use crate::gf2poly::{BinaryPoly, RingModulus};
use crate::polymat::{MinorCache, PolyMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub gammas: Vec<BinaryPoly>,
    pub d_polys: Vec<BinaryPoly>,
    pub smith_diagonal: Vec<BinaryPoly>,
    pub rank: usize,
    pub dimension: usize,
}

/// Binary rank of `circulant_expand(H)` computed from the gcds of the
/// minors of H(x). Minors are taken over GF(2)[x] on the entries exactly
/// as stored; any representative mod x^N+1 gives the same d_i.
pub fn rank_qc(h: &PolyMatrix, m: RingModulus) -> Result<RankReport> {
    let n = m.n();
    let k = h.rows().min(h.cols());
    let modulus = m.poly();
    let mut cache = MinorCache::new(h)?;
    let mut gammas = Vec::with_capacity(k);
    let mut d_polys = Vec::with_capacity(k);
    let mut smith = Vec::with_capacity(k);
    let mut prev = BinaryPoly::one();
    for i in 1..=k {
        let g = cache.minors_gcd(i);
        // Once the minor chain vanishes it stays dead: 0/0 -> d_i = x^N+1.
        let (ratio, d) = if g.is_zero() || prev.is_zero() {
            (BinaryPoly::zero(), modulus.clone())
        } else {
            let r = g.div_exact(&prev)?;
            let d = r.gcd(&modulus);
            (r, d)
        };
        gammas.push(g.clone());
        d_polys.push(d);
        smith.push(ratio);
        prev = g;
    }
    let deficiency: usize = d_polys.iter().map(|d| d.degree().unwrap_or(0)).sum();
    let rank = h.rows() * n - deficiency - h.rows().saturating_sub(k) * n;
    Ok(RankReport {
        n,
        gammas,
        d_polys,
        smith_diagonal: smith,
        rank,
        dimension: h.cols() * n - rank,
    })
}

/// GF(2) Gaussian-elimination rank; the oracle for `rank_qc`.
pub fn rank_scalar(hb: &BitMatrix) -> usize {
    hb.rank()
}

/// Dimension of ker(H) for a matrix that carries its modulus.
pub fn code_dimension(h: &PolyMatrix) -> Result<usize> {
    Ok(rank_qc(h, h.require_modulus()?)?.dimension)
}
