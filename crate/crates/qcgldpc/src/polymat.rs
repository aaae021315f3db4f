//! Matrices over GF(2)[x], optionally living in GF(2)[x]/(x^N+1).

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::gf2poly::{BinaryPoly, RingModulus};

/// Sorted distinct indices. Stored 0-based; printed and serialized 1-based
/// to match the usual notation for minors (Δ_{123} etc).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut idx: Vec<usize>) -> Result<Self> {
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("repeated index in {idx:?}")));
        }
        Ok(IndexSet(idx))
    }

    pub fn from_one_based(idx: &[usize]) -> Result<Self> {
        if idx.contains(&0) {
            return Err(Error::InvalidInput("1-based index set contains 0".into()));
        }
        Self::new(idx.iter().map(|i| i - 1).collect())
    }

    pub fn range(n: usize) -> Self {
        IndexSet((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn without(&self, i: usize) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&j| j != i).collect())
    }

    pub fn with(&self, i: usize) -> IndexSet {
        let mut v = self.0.clone();
        if let Err(at) = v.binary_search(&i) {
            v.insert(at, i);
        }
        IndexSet(v)
    }

    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet((0..n).filter(|&i| !self.contains(i)).collect())
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | (1 << i))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for IndexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        IndexSet::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

/// All size-`k` subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<IndexSet> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(IndexSet(c.clone()));
        let Some(i) = (0..k).rev().find(|&i| c[i] != i + n - k) else {
            break;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BinaryPoly>,
    modulus: Option<RingModulus>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: Option<RingModulus>) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![BinaryPoly::zero(); rows * cols],
            modulus,
        }
    }

    pub fn identity(n: usize, modulus: Option<RingModulus>) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.set(i, i, BinaryPoly::one());
        }
        m
    }

    /// Builds from rows; entries are reduced when a modulus is given.
    pub fn from_rows(rows: Vec<Vec<BinaryPoly>>, modulus: Option<RingModulus>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c, modulus);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    /// Parses rows of polynomial strings in the given ring.
    pub fn parse_rows<S: AsRef<str>>(
        rows: &[Vec<S>],
        modulus: Option<RingModulus>,
    ) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| BinaryPoly::parse_in(s.as_ref(), modulus))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed, modulus)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> Option<RingModulus> {
        self.modulus
    }

    pub fn require_modulus(&self) -> Result<RingModulus> {
        self.modulus.ok_or(Error::ModulusMissing)
    }

    /// Same entries, placed in the ring `m` (entries get reduced).
    pub fn with_modulus(&self, m: RingModulus) -> PolyMatrix {
        let mut out = self.clone();
        out.modulus = Some(m);
        for e in &mut out.entries {
            *e = m.reduce(e);
        }
        out
    }

    pub fn get(&self, i: usize, j: usize) -> &BinaryPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: BinaryPoly) {
        let p = match self.modulus {
            Some(m) => m.reduce(&p),
            None => p,
        };
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[BinaryPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BinaryPoly::is_zero)
    }

    /// Number of ones in the binary expansion of row `i`.
    pub fn row_weight(&self, i: usize) -> usize {
        self.row(i).iter().map(BinaryPoly::weight).sum()
    }

    /// Number of nonzero entries in row `i`.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        (0..self.cols)
            .filter(|&j| !self.get(i, j).is_zero())
            .collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(rows.len(), cols.len(), self.modulus);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.entries[a * m.cols + b] = self.get(i, j).clone();
            }
        }
        m
    }

    fn shared_modulus(&self, other: &PolyMatrix) -> Result<Option<RingModulus>> {
        match (self.modulus, other.modulus) {
            (Some(a), Some(b)) if a != b => Err(Error::ModulusMismatch(a.n(), b.n())),
            (a, b) => Ok(a.or(b)),
        }
    }

    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut m = PolyMatrix::zeros(
            self.rows,
            self.cols + other.cols,
            self.shared_modulus(other)?,
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    pub fn vstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let modulus = self.shared_modulus(other)?;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        let mut m = PolyMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
            modulus,
        };
        if let Some(md) = modulus {
            m = m.with_modulus(md);
        }
        Ok(m)
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = PolyMatrix::zeros(self.rows, self.cols, self.shared_modulus(other)?);
        for k in 0..self.entries.len() {
            let s = &self.entries[k] + &other.entries[k];
            m.set(k / self.cols, k % self.cols, s);
        }
        Ok(m)
    }

    /// Product with entries reduced mod x^N+1.
    pub fn matmul_mod(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let modulus = self.shared_modulus(other)?.ok_or(Error::ModulusMissing)?;
        let mut m = PolyMatrix::zeros(self.rows, other.cols, Some(modulus));
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BinaryPoly::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc += &a.mul(b);
                    }
                }
                m.set(i, j, acc);
            }
        }
        Ok(m)
    }

    /// Multiplies every entry by `p` (mod x^N+1 when a modulus is present).
    pub fn scale(&self, p: &BinaryPoly) -> PolyMatrix {
        let mut m = self.clone();
        for k in 0..m.entries.len() {
            let v = m.entries[k].mul(p);
            m.set(k / m.cols, k % m.cols, v);
        }
        m
    }

    /// Block transpose under the circulant isomorphism: shape transpose plus
    /// entrywise polynomial transpose.
    pub fn transpose_entrywise(&self) -> Result<PolyMatrix> {
        let md = self.require_modulus()?;
        let mut t = PolyMatrix::zeros(self.cols, self.rows, Some(md));
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, md.transpose(self.get(i, j)));
            }
        }
        Ok(t)
    }

    /// Each entry p becomes the N×N circulant with first column p.
    pub fn circulant_expand(&self) -> Result<BitMatrix> {
        let n = self.require_modulus()?.n();
        let mut b = BitMatrix::zeros(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for k in self.get(i, j).exponents() {
                    for a in 0..n {
                        b.flip(i * n + a, j * n + (a + n - k) % n);
                    }
                }
            }
        }
        Ok(b)
    }

    /// Binary expansion of one polynomial row vector (length cols·N).
    pub fn expand_row_bits(&self, i: usize) -> Result<Vec<u8>> {
        let n = self.require_modulus()?.n();
        let mut out = vec![0u8; self.cols * n];
        for j in 0..self.cols {
            for k in self.get(i, j).exponents() {
                out[j * n + k] = 1;
            }
        }
        Ok(out)
    }

    /// Determinant of the sub-matrix on rows `rows`, columns `cols`, in
    /// GF(2)[x] (never reduced).
    pub fn minor_det(&self, rows: &IndexSet, cols: &IndexSet) -> Result<BinaryPoly> {
        if rows.len() != cols.len() {
            return Err(Error::DimensionMismatch(format!(
                "minor with {} rows and {} columns",
                rows.len(),
                cols.len()
            )));
        }
        if rows.as_slice().last().is_some_and(|&r| r >= self.rows)
            || cols.as_slice().last().is_some_and(|&c| c >= self.cols)
        {
            return Err(Error::DimensionMismatch(format!(
                "index set {rows}/{cols} out of range"
            )));
        }
        Ok(MinorCache::new(self)?.det(rows.mask(), cols.mask()))
    }

    /// gcd of all i×i minors; 0 if they all vanish.
    pub fn all_minors_gcd(&self, i: usize) -> Result<BinaryPoly> {
        let mut cache = MinorCache::new(self)?;
        Ok(cache.minors_gcd(i))
    }

    /// Parses the `.pmx` text format: one matrix row per line, entries
    /// separated by ';', '#' starts a comment.
    pub fn from_pmx(text: &str, modulus: Option<RingModulus>) -> Result<PolyMatrix> {
        let rows: Vec<Vec<&str>> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| l.split(';').map(str::trim).collect())
            .collect();
        if rows.is_empty() {
            return Err(Error::Parse("matrix text has no rows".into()));
        }
        Self::parse_rows(&rows, modulus)
    }

    pub fn to_pmx(&self) -> String {
        let mut s = String::new();
        if let Some(m) = self.modulus {
            s.push_str(&format!(
                "# {}x{} over GF(2)[x]/(x^{}+1)\n",
                self.rows,
                self.cols,
                m.n()
            ));
        }
        for i in 0..self.rows {
            let parts: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            s.push_str(&parts.join("; "));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> PolyMatrixJson {
        PolyMatrixJson {
            rows: self.rows,
            cols: self.cols,
            n: self.modulus.map(|m| m.n()),
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(|p| p.exponents()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &PolyMatrixJson) -> Result<PolyMatrix> {
        let modulus = j.n.map(RingModulus::new).transpose()?;
        let rows: Vec<Vec<BinaryPoly>> = j
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| BinaryPoly::from_exponents(e.iter().copied()))
                    .collect()
            })
            .collect();
        let m = Self::from_rows(rows, modulus)?;
        if (m.rows, m.cols) != (j.rows, j.cols) {
            return Err(Error::DimensionMismatch(format!(
                "declared {}x{}, found {}x{}",
                j.rows, j.cols, m.rows, m.cols
            )));
        }
        Ok(m)
    }
}

/// JSON form: exponent list per entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyMatrixJson {
    pub rows: usize,
    pub cols: usize,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub entries: Vec<Vec<Vec<usize>>>,
}

impl Serialize for PolyMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyMatrixJson::deserialize(d)?;
        PolyMatrix::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix {}x{}", self.rows, self.cols)?;
        if let Some(m) = self.modulus {
            write!(f, " mod x^{}+1", m.n())?;
        }
        writeln!(f)?;
        for i in 0..self.rows {
            let parts: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pmx())
    }
}

/// Memoized Laplace expansion over (row mask, column mask) pairs. Always
/// expands along the lowest remaining row, so a fixed row set only ever
/// visits its suffixes.
pub struct MinorCache<'a> {
    m: &'a PolyMatrix,
    memo: HashMap<(u64, u64), BinaryPoly>,
}

impl<'a> MinorCache<'a> {
    pub fn new(m: &'a PolyMatrix) -> Result<Self> {
        if m.rows > 64 || m.cols > 64 {
            return Err(Error::InvalidInput(
                "minor computation supports at most 64 rows and columns".into(),
            ));
        }
        Ok(MinorCache {
            m,
            memo: HashMap::new(),
        })
    }

    pub fn det(&mut self, rows: u64, cols: u64) -> BinaryPoly {
        if rows == 0 {
            return BinaryPoly::one();
        }
        if let Some(d) = self.memo.get(&(rows, cols)) {
            return d.clone();
        }
        let r = rows.trailing_zeros() as usize;
        let rest = rows & (rows - 1);
        let mut acc = BinaryPoly::zero();
        let mut cm = cols;
        while cm != 0 {
            let j = cm.trailing_zeros() as usize;
            cm &= cm - 1;
            let e = self.m.get(r, j);
            if e.is_zero() {
                continue;
            }
            let sub = self.det(rest, cols & !(1 << j));
            if !sub.is_zero() {
                acc += &e.mul(&sub);
            }
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }

    pub fn det_sets(&mut self, rows: &IndexSet, cols: &IndexSet) -> BinaryPoly {
        self.det(rows.mask(), cols.mask())
    }

    /// gcd of all i×i minors, stopping early at 1.
    pub fn minors_gcd(&mut self, i: usize) -> BinaryPoly {
        let mut g = BinaryPoly::zero();
        if i == 0 {
            return BinaryPoly::one();
        }
        for rs in combinations(self.m.rows, i) {
            for cs in combinations(self.m.cols, i) {
                let d = self.det(rs.mask(), cs.mask());
                if !d.is_zero() {
                    g = g.gcd(&d);
                    if g.is_one() {
                        return g;
                    }
                }
            }
        }
        g
    }
}

/// `A^{↑{x^e_1,...}}`: a one in column j becomes x^(e_j mod N).
pub fn lifted_expand(a: &BitMatrix, exps: &[i64], m: RingModulus) -> Result<PolyMatrix> {
    if exps.len() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{} exponents for {} columns",
            exps.len(),
            a.cols()
        )));
    }
    let mut out = PolyMatrix::zeros(a.rows(), a.cols(), Some(m));
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.get(i, j) {
                out.set(i, j, m.monomial(exps[j]));
            }
        }
    }
    Ok(out)
}

/// Scalar (0/1) binary matrix viewed as a polynomial matrix.
pub fn scalar_matrix(a: &BitMatrix, m: Option<RingModulus>) -> PolyMatrix {
    let mut out = PolyMatrix::zeros(a.rows(), a.cols(), m);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.get(i, j) {
                out.set(i, j, BinaryPoly::one());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> Option<RingModulus> {
        Some(RingModulus::new(n).unwrap())
    }

    fn ar4ja() -> PolyMatrix {
        PolyMatrix::parse_rows(
            &[
                vec!["0", "0", "1", "0", "1+x"],
                vec!["1", "1", "0", "1", "x+x^2+x^3"],
                vec!["1", "x+x^2", "0", "1+x^3", "1"],
            ],
            ring(4),
        )
        .unwrap()
    }

    fn p(s: &str) -> BinaryPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ar4ja_minors() {
        let h = ar4ja();
        let all = IndexSet::range(3);
        let d123 = h
            .minor_det(&all, &IndexSet::from_one_based(&[1, 2, 3]).unwrap())
            .unwrap();
        assert_eq!(d123, p("x^2+x+1"));
        let d245 = h
            .minor_det(&all, &IndexSet::from_one_based(&[2, 4, 5]).unwrap())
            .unwrap();
        // (1+x)^4 over GF(2)[x], zero in the ring.
        assert_eq!(d245, p("1+x^4"));
        assert!(RingModulus::new(4).unwrap().reduce(&d245).is_zero());
        let id = PolyMatrix::identity(4, None);
        let s = IndexSet::new(vec![1, 3]).unwrap();
        assert!(id.minor_det(&s, &s).unwrap().is_one());
        assert!(h.minor_det(&all, &IndexSet::range(2)).is_err());
    }

    #[test]
    fn minors_gcd_with_unit_entry() {
        assert!(ar4ja().all_minors_gcd(1).unwrap().is_one());
    }

    #[test]
    fn entrywise_transpose() {
        let m = PolyMatrix::parse_rows(&[vec!["x^2+x+1"]], ring(4)).unwrap();
        assert_eq!(m.transpose_entrywise().unwrap().get(0, 0), &p("x^3+x^2+1"));
        let col = PolyMatrix::parse_rows(&[vec!["x"], vec!["x^2"]], ring(5)).unwrap();
        let t = col.transpose_entrywise().unwrap();
        assert_eq!((t.rows(), t.cols()), (1, 2));
        assert_eq!(t.row(0), &[p("x^4"), p("x^3")]);
        let id = PolyMatrix::identity(3, ring(6));
        assert_eq!(id.transpose_entrywise().unwrap(), id);
        assert!(matches!(
            PolyMatrix::identity(2, None).transpose_entrywise(),
            Err(Error::ModulusMissing)
        ));
    }

    #[test]
    fn circulants() {
        let n = 5;
        let m = PolyMatrix::parse_rows(&[vec!["x^2"]], ring(n)).unwrap();
        let b = m.circulant_expand().unwrap();
        for a in 0..n {
            for c in 0..n {
                assert_eq!(b.get(a, c), (a + n - c) % n == 2);
            }
        }
        let z = PolyMatrix::zeros(1, 1, ring(4)).circulant_expand().unwrap();
        assert!(z.is_zero() && z.rows() == 4);
        let b = PolyMatrix::parse_rows(&[vec!["1+x"]], ring(3))
            .unwrap()
            .circulant_expand()
            .unwrap();
        assert!((0..3).all(|i| b.row_weight(i) == 2));
    }

    #[test]
    fn lifting() {
        let m = ring(45).unwrap();
        let l = lifted_expand(&BitMatrix::identity(3), &[0, 27, 33], m).unwrap();
        assert_eq!(l.get(1, 1), &p("x^27"));
        assert!(l.get(0, 1).is_zero());
        let neg = lifted_expand(&BitMatrix::identity(1), &[-36], m).unwrap();
        assert_eq!(neg.get(0, 0), &p("x^9"));
        assert!(lifted_expand(&BitMatrix::zeros(2, 2), &[1, 2], m)
            .unwrap()
            .is_zero());
        assert!(lifted_expand(&BitMatrix::zeros(2, 2), &[1], m).is_err());
    }

    #[test]
    fn products() {
        let h = ar4ja();
        let id = PolyMatrix::identity(5, ring(4));
        assert_eq!(h.matmul_mod(&id).unwrap(), h);
        assert!(h.matmul_mod(&h).is_err());
    }

    #[test]
    fn pmx_round_trip() {
        let h = ar4ja();
        let text = h.to_pmx();
        assert_eq!(PolyMatrix::from_pmx(&text, ring(4)).unwrap(), h);
        let json = serde_json::to_string(&h).unwrap();
        assert_eq!(serde_json::from_str::<PolyMatrix>(&json).unwrap(), h);
    }

    #[test]
    fn index_sets() {
        let s = IndexSet::from_one_based(&[3, 1]).unwrap();
        assert_eq!(s.as_slice(), &[0, 2]);
        assert_eq!(s.to_string(), "{1,3}");
        assert!(IndexSet::new(vec![1, 1]).is_err());
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![IndexSet::default()]);
        assert!(combinations(2, 3).is_empty());
    }
}
