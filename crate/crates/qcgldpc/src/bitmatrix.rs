//! Dense bit-packed matrices over GF(2) and the alist interchange format.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Packs a 0/1 slice into limbs.
pub fn pack_bits(bits: &[u8]) -> Vec<u64> {
    let mut out = vec![0u64; words_for(bits.len())];
    for (i, &b) in bits.iter().enumerate() {
        if b & 1 == 1 {
            out[i / 64] |= 1 << (i % 64);
        }
    }
    out
}

pub fn unpack_bits(words: &[u64], len: usize) -> Vec<u8> {
    (0..len)
        .map(|i| ((words[i / 64] >> (i % 64)) & 1) as u8)
        .collect()
}

pub fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// From rows of 0/1 values; all rows must share a length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, &b) in r.iter().enumerate() {
                if b > 1 {
                    return Err(Error::InvalidInput(format!(
                        "entry ({i},{j}) = {b} is not a bit"
                    )));
                }
                if b == 1 {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    /// Parses rows written as bit strings such as "1110100".
    pub fn from_bit_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let parsed: Result<Vec<Vec<u8>>> = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => Err(Error::Parse(format!("bad bit {c:?} in {:?}", r.as_ref()))),
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(&parsed?)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row_bits(i)).collect()
    }

    pub fn to_bit_strings(&self) -> Vec<String> {
        self.to_rows()
            .iter()
            .map(|r| r.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.stride + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.stride + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i * self.stride + j / 64] ^= 1 << (j % 64);
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_bits(&self, i: usize) -> Vec<u8> {
        unpack_bits(self.row_words(i), self.cols)
    }

    pub fn set_row_words(&mut self, i: usize, words: &[u64]) {
        let s = self.stride;
        self.row_words_mut(i).copy_from_slice(&words[..s]);
    }

    pub fn row_weight(&self, i: usize) -> usize {
        popcount(self.row_words(i))
    }

    pub fn col_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    /// Column indices of the ones in row `i`.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &w) in self.row_words(i).iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(k * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_support(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; out.stride];
            for k in self.row_support(i) {
                xor_into(&mut acc, other.row_words(k));
            }
            out.row_words_mut(i).copy_from_slice(&acc);
        }
        Ok(out)
    }

    /// Syndrome `self · v^T` for a 0/1 vector of length `cols`.
    pub fn mul_vec(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} vs {} columns",
                v.len(),
                self.cols
            )));
        }
        let packed = pack_bits(v);
        Ok((0..self.rows)
            .map(|i| {
                let par: u32 = self
                    .row_words(i)
                    .iter()
                    .zip(&packed)
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
                (par & 1) as u8
            })
            .collect())
    }

    /// `v · self` for a 0/1 vector of length `rows`.
    pub fn vec_mul(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} vs {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut acc = vec![0u64; self.stride];
        for (i, &b) in v.iter().enumerate() {
            if b & 1 == 1 {
                xor_into(&mut acc, self.row_words(i));
            }
        }
        Ok(unpack_bits(&acc, self.cols))
    }

    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            if p != r {
                for k in 0..self.stride {
                    self.data.swap(p * self.stride + k, r * self.stride + k);
                }
            }
            let pivot_row = self.row_words(r).to_vec();
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    xor_into(self.row_words_mut(i), &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// GF(2) rank.
    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(self.row_words(i));
        }
        e.rank()
    }

    /// Keeps a maximal linearly independent subset of rows, in order.
    pub fn independent_rows(&self) -> BitMatrix {
        let mut e = Echelon::new(self.cols);
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&i| e.insert(self.row_words(i)))
            .collect();
        let mut out = BitMatrix::zeros(keep.len(), self.cols);
        for (k, &i) in keep.iter().enumerate() {
            out.set_row_words(k, self.row_words(i));
        }
        out
    }

    /// Basis of the right kernel {v : self·v^T = 0}, one vector per row.
    pub fn kernel(&self) -> BitMatrix {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| pivots.binary_search(c).is_err())
            .collect();
        let mut out = BitMatrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, true);
            for (r, &p) in pivots.iter().enumerate() {
                if m.get(r, f) {
                    out.set(k, p, true);
                }
            }
        }
        out
    }

    /// Serializes in MacKay's alist format.
    pub fn to_alist(&self) -> String {
        let col_lists: Vec<Vec<usize>> = {
            let t = self.transpose();
            (0..self.cols).map(|j| t.row_support(j)).collect()
        };
        let row_lists: Vec<Vec<usize>> = (0..self.rows).map(|i| self.row_support(i)).collect();
        let max_col = col_lists.iter().map(Vec::len).max().unwrap_or(0);
        let max_row = row_lists.iter().map(Vec::len).max().unwrap_or(0);
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.cols, self.rows);
        let _ = writeln!(s, "{max_col} {max_row}");
        let join = |v: Vec<String>| v.join(" ");
        let _ = writeln!(
            s,
            "{}",
            join(col_lists.iter().map(|l| l.len().to_string()).collect())
        );
        let _ = writeln!(
            s,
            "{}",
            join(row_lists.iter().map(|l| l.len().to_string()).collect())
        );
        for (lists, width) in [(&col_lists, max_col), (&row_lists, max_row)] {
            for l in lists {
                let mut items: Vec<String> = l.iter().map(|x| (x + 1).to_string()).collect();
                items.resize(width, "0".to_string());
                let _ = writeln!(s, "{}", join(items));
            }
        }
        s
    }

    /// Parses an alist file; zero padding in the neighbour lists is accepted.
    pub fn from_alist(text: &str) -> Result<BitMatrix> {
        let mut nums = text.split_whitespace().map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("alist: bad integer {t:?}")))
        });
        let mut next = || {
            nums.next()
                .unwrap_or_else(|| Err(Error::Parse("alist: unexpected end of input".into())))
        };
        let n = next()?;
        let m = next()?;
        let max_col = next()?;
        let max_row = next()?;
        let col_deg: Vec<usize> = (0..n).map(|_| next()).collect::<Result<_>>()?;
        let row_deg: Vec<usize> = (0..m).map(|_| next()).collect::<Result<_>>()?;
        let mut h = BitMatrix::zeros(m, n);
        for (j, &d) in col_deg.iter().enumerate() {
            let entries: Vec<usize> = (0..max_col).map(|_| next()).collect::<Result<_>>()?;
            let nonzero: Vec<usize> = entries.into_iter().filter(|&x| x != 0).collect();
            if nonzero.len() != d {
                return Err(Error::Parse(format!(
                    "alist: column {} lists {} checks, degree says {d}",
                    j + 1,
                    nonzero.len()
                )));
            }
            for i in nonzero {
                if i > m {
                    return Err(Error::Parse(format!("alist: check index {i} out of range")));
                }
                h.set(i - 1, j, true);
            }
        }
        for (i, &d) in row_deg.iter().enumerate() {
            let entries: Vec<usize> = (0..max_row).map(|_| next()).collect::<Result<_>>()?;
            let nonzero: Vec<usize> = entries.into_iter().filter(|&x| x != 0).collect();
            if nonzero.len() != d || nonzero.iter().any(|&j| j > n || !h.get(i, j - 1)) {
                return Err(Error::Parse(format!(
                    "alist: row {} disagrees with the column lists",
                    i + 1
                )));
            }
        }
        Ok(h)
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in self.to_bit_strings() {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

/// Incrementally maintained row-echelon basis, used for rank gains.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    // (pivot column, row); the pivot is the lowest set bit of the row.
    basis: Vec<(usize, Vec<u64>)>,
}

fn lowest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn reduce(&self, v: &mut [u64]) {
        for (p, row) in &self.basis {
            if (v[p / 64] >> (p % 64)) & 1 == 1 {
                xor_into(v, row);
            }
        }
    }

    /// Inserts a row; returns whether it increased the rank.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        match lowest_bit(&v) {
            None => false,
            Some(p) => {
                let at = self.basis.partition_point(|(q, _)| *q < p);
                self.basis.insert(at, (p, v));
                true
            }
        }
    }

    /// Rank increase that inserting all `rows` would produce.
    pub fn gain<'a, I: IntoIterator<Item = &'a [u64]>>(&self, rows: I) -> usize {
        let mut local = Echelon::new(self.cols);
        let mut g = 0;
        for r in rows {
            let mut v = r.to_vec();
            self.reduce(&mut v);
            if local.insert(&v) {
                g += 1;
            }
        }
        g
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|&w| w == 0)
    }
}
