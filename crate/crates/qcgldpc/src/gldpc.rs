//! GLDPC specifications: assembly of H_GC, Schur-style reduction to a
//! short matrix, pre-lifting, and end-to-end generator synthesis.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bitmatrix::BitMatrix;
use crate::construct::{
    generator_variants, pick_best, shorten_compose, GeneratorResult, RowProvenance,
};
use crate::error::{Error, Result};
use crate::gf2poly::{BinaryPoly, RingModulus};
use crate::polymat::{
    combinations, lifted_expand, scalar_matrix, IndexSet, MinorCache, PolyMatrix,
};
use crate::rank::{code_dimension, rank_scalar};

/// Parity-check matrix of a constraint code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCode {
    parity: BitMatrix,
}

/// Identity columns of a component in `[M | I]`-like form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystematicSplit {
    /// Column holding the unit vector e_r, for each row r.
    pub identity_cols: Vec<usize>,
    /// Remaining columns, in order.
    pub info_cols: Vec<usize>,
    /// The parity matrix restricted to `info_cols`.
    pub m: BitMatrix,
}

impl ComponentCode {
    pub fn new(parity: BitMatrix) -> Result<Self> {
        if parity.rows() == 0 || parity.cols() == 0 {
            return Err(Error::InvalidSpec(
                "component parity-check matrix is empty".into(),
            ));
        }
        Ok(ComponentCode { parity })
    }

    pub fn from_bit_strings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        Self::new(BitMatrix::from_bit_strings(rows)?)
    }

    pub fn spc(q: usize) -> Self {
        let mut h = BitMatrix::zeros(1, q);
        for j in 0..q {
            h.set(0, j, true);
        }
        ComponentCode { parity: h }
    }

    pub fn parity(&self) -> &BitMatrix {
        &self.parity
    }

    /// Number of parity checks p.
    pub fn p(&self) -> usize {
        self.parity.rows()
    }

    /// Code length q.
    pub fn q(&self) -> usize {
        self.parity.cols()
    }

    pub fn is_spc(&self) -> bool {
        self.p() == 1 && self.parity.row_weight(0) == self.q()
    }

    /// For each row, the last column equal to that unit vector.
    pub fn systematic_split(&self) -> Option<SystematicSplit> {
        let t = self.parity.transpose();
        let mut identity_cols = Vec::with_capacity(self.p());
        for r in 0..self.p() {
            let c = (0..self.q())
                .rev()
                .find(|&c| t.row_weight(c) == 1 && t.get(c, r))?;
            identity_cols.push(c);
        }
        let info_cols: Vec<usize> = (0..self.q())
            .filter(|c| !identity_cols.contains(c))
            .collect();
        let mut m = BitMatrix::zeros(self.p(), info_cols.len());
        for r in 0..self.p() {
            for (k, &c) in info_cols.iter().enumerate() {
                m.set(r, k, self.parity.get(r, c));
            }
        }
        Some(SystematicSplit {
            identity_cols,
            info_cols,
            m,
        })
    }
}

/// Pre-lift parameters: N = N1·N2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prelift {
    pub n1: usize,
    /// Parity columns for the second elimination stage (else searched).
    pub stage2_parity: Option<IndexSet>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    /// Components generalize the listed base rows as given.
    #[default]
    Canonical,
    /// Two-row base whose component generalizes the monomial row; it is
    /// column-equivalent to the canonical form with negated exponents.
    Alternative,
}

/// Base constraint matrix, lifting size and per-row component codes.
/// `components[i] = None` means row i stays single-parity. With a pre-lift,
/// components refer to the rows of the pre-lifted base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GldpcSpec {
    pub name: String,
    pub base: PolyMatrix,
    pub modulus: RingModulus,
    pub components: Vec<Option<ComponentCode>>,
    pub prelift: Option<Prelift>,
    pub form: Form,
}

/// `[1 ... 1; x^{e_1} ... x^{e_n}]`.
pub fn two_row_base(exponents: &[i64], m: RingModulus) -> PolyMatrix {
    let ones = vec![BinaryPoly::one(); exponents.len()];
    let monos = exponents.iter().map(|&e| m.monomial(e)).collect();
    PolyMatrix::from_rows(vec![ones, monos], Some(m)).expect("rows of equal length")
}

impl GldpcSpec {
    pub fn new(
        name: impl Into<String>,
        base: PolyMatrix,
        components: Vec<Option<ComponentCode>>,
        prelift: Option<Prelift>,
        form: Form,
    ) -> Result<Self> {
        let modulus = base.require_modulus()?;
        let spec = GldpcSpec {
            name: name.into(),
            base,
            modulus,
            components,
            prelift,
            form,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Two-row `[1...1; x^e]` base with the given components.
    pub fn two_row(
        name: impl Into<String>,
        n: usize,
        exponents: &[i64],
        components: Vec<Option<ComponentCode>>,
    ) -> Result<Self> {
        let m = RingModulus::new(n)?;
        Self::new(
            name,
            two_row_base(exponents, m),
            components,
            None,
            Form::Canonical,
        )
    }

    fn validate(&self) -> Result<()> {
        if let Some(pl) = &self.prelift {
            if pl.n1 < 2 || !self.modulus.n().is_multiple_of(pl.n1) {
                return Err(Error::InvalidSpec(format!(
                    "N = {} is not divisible by N1 = {}",
                    self.modulus.n(),
                    pl.n1
                )));
            }
        }
        if self.form == Form::Alternative
            && (self.prelift.is_some() || !is_two_row_form(&self.base))
        {
            return Err(Error::InvalidSpec(
                "the alternative form needs a two-row base without pre-lift".into(),
            ));
        }
        let base = self.effective_base()?;
        if self.components.len() != base.rows() {
            return Err(Error::InvalidSpec(format!(
                "{} component entries for {} constraint rows",
                self.components.len(),
                base.rows()
            )));
        }
        for (i, c) in self.components.iter().enumerate() {
            let support = base.row_support(i);
            if let Some(c) = c {
                if c.q() != support.len() {
                    return Err(Error::InvalidSpec(format!(
                        "component of row {} has length {}, row weight is {}",
                        i + 1,
                        c.q(),
                        support.len()
                    )));
                }
                if !c.is_spc()
                    && support
                        .iter()
                        .any(|&j| base.get(i, j).as_monomial().is_none())
                {
                    return Err(Error::InvalidSpec(format!(
                        "generalized row {} has a non-monomial entry",
                        i + 1
                    )));
                }
            }
        }
        let r = self.design_rate();
        if r <= Ratio::from_integer(0) || r >= Ratio::from_integer(1) {
            return Err(Error::InvalidSpec(format!(
                "design rate {r} is outside (0, 1)"
            )));
        }
        Ok(())
    }

    /// Circulant size of the effective (possibly pre-lifted) base.
    pub fn effective_modulus(&self) -> RingModulus {
        match &self.prelift {
            Some(pl) => RingModulus::new(self.modulus.n() / pl.n1).expect("validated"),
            None => self.modulus,
        }
    }

    /// The base the components apply to: pre-lifted when requested.
    pub fn effective_base(&self) -> Result<PolyMatrix> {
        match &self.prelift {
            None => Ok(self.base.clone()),
            Some(pl) if pl.n1 == 2 => split_even_odd(&self.base),
            Some(pl) => prelift_matrix(&self.base, pl.n1),
        }
    }

    pub fn n_v(&self) -> usize {
        self.base.cols() * self.prelift.as_ref().map_or(1, |p| p.n1)
    }

    /// Code length n_v·N.
    pub fn length(&self) -> usize {
        self.base.cols() * self.modulus.n()
    }

    /// 1 − Σ p_i / n_v (p_i = 1 for single-parity rows).
    pub fn design_rate(&self) -> Ratio<i64> {
        let checks: usize = self
            .components
            .iter()
            .map(|c| c.as_ref().map_or(1, ComponentCode::p))
            .sum();
        Ratio::from_integer(1) - Ratio::new(checks as i64, self.n_v() as i64)
    }

    /// The canonical spec and the column exponents relating the two.
    fn canonical(&self) -> Result<GldpcSpec> {
        match self.form {
            Form::Canonical => Ok(self.clone()),
            Form::Alternative => {
                let m = self.modulus;
                let exps: Vec<i64> = self
                    .base
                    .row(1)
                    .iter()
                    .map(|p| -(p.as_monomial().expect("validated") as i64))
                    .collect();
                let comps = vec![self.components[1].clone(), self.components[0].clone()];
                GldpcSpec::new(
                    self.name.clone(),
                    two_row_base(&exps, m),
                    comps,
                    None,
                    Form::Canonical,
                )
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: SpecFile = serde_json::from_str(text)?;
        f.into_spec()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&SpecFile::from_spec(self))?)
    }
}

fn is_two_row_form(h: &PolyMatrix) -> bool {
    h.rows() == 2
        && h.row(0).iter().all(BinaryPoly::is_one)
        && h.row(1).iter().all(|p| p.as_monomial().is_some())
}

/// On-disk JSON form of a spec.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecFile {
    #[serde(default)]
    pub name: String,
    #[serde(rename = "N")]
    pub n: usize,
    /// Exponents of the monomial row of a `[1...1; x^e]` base.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<i64>>,
    /// Explicit base rows as polynomial strings (instead of `exponents`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<Vec<String>>>,
    /// Per constraint row: null for single parity, else bit-string rows.
    pub components: Vec<Option<Vec<String>>>,
    #[serde(rename = "N1", default, skip_serializing_if = "Option::is_none")]
    pub n1: Option<usize>,
    /// 1-based parity columns for the second elimination stage.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage2_parity: Option<Vec<usize>>,
    #[serde(default)]
    pub form: Form,
}

impl SpecFile {
    pub fn into_spec(self) -> Result<GldpcSpec> {
        let m = RingModulus::new(self.n)?;
        let base = match (&self.exponents, &self.base) {
            (Some(e), None) => two_row_base(e, m),
            (None, Some(rows)) => PolyMatrix::parse_rows(rows, Some(m))?,
            _ => {
                return Err(Error::InvalidSpec(
                    "give exactly one of `exponents` and `base`".into(),
                ))
            }
        };
        let components = self
            .components
            .iter()
            .map(|c| {
                c.as_ref()
                    .map(|rows| ComponentCode::from_bit_strings(rows))
                    .transpose()
            })
            .collect::<Result<Vec<_>>>()?;
        let prelift = match self.n1 {
            Some(n1) => Some(Prelift {
                n1,
                stage2_parity: self
                    .stage2_parity
                    .as_deref()
                    .map(IndexSet::from_one_based)
                    .transpose()?,
            }),
            None if self.stage2_parity.is_some() => {
                return Err(Error::InvalidSpec("stage2_parity needs N1".into()));
            }
            None => None,
        };
        GldpcSpec::new(self.name, base, components, prelift, self.form)
    }

    pub fn from_spec(s: &GldpcSpec) -> SpecFile {
        let (exponents, base) = if is_two_row_form(&s.base) {
            (
                Some(
                    s.base
                        .row(1)
                        .iter()
                        .map(|p| p.as_monomial().unwrap_or(0) as i64)
                        .collect(),
                ),
                None,
            )
        } else {
            let rows = (0..s.base.rows())
                .map(|i| s.base.row(i).iter().map(|p| p.to_string()).collect())
                .collect();
            (None, Some(rows))
        };
        SpecFile {
            name: s.name.clone(),
            n: s.modulus.n(),
            exponents,
            base,
            components: s
                .components
                .iter()
                .map(|c| c.as_ref().map(|c| c.parity.to_bit_strings()))
                .collect(),
            n1: s.prelift.as_ref().map(|p| p.n1),
            stage2_parity: s
                .prelift
                .as_ref()
                .and_then(|p| p.stage2_parity.as_ref().map(IndexSet::one_based)),
            form: s.form,
        }
    }
}

/// H_GC: each generalized row is replaced by its component, column k of
/// the component landing on the k-th nonzero entry of the row (scaled by
/// that entry's monomial). Rows are stacked in base-row order.
pub fn assemble(spec: &GldpcSpec) -> Result<PolyMatrix> {
    Ok(assemble_groups(spec)?.0)
}

/// H_GC together with the row range of each base row.
fn assemble_groups(spec: &GldpcSpec) -> Result<(PolyMatrix, Vec<std::ops::Range<usize>>)> {
    let base = spec.effective_base()?;
    let m = spec.effective_modulus();
    let mut out: Option<PolyMatrix> = None;
    let mut groups = Vec::new();
    for i in 0..base.rows() {
        let block = match &spec.components[i] {
            None => base.submatrix(&[i], &(0..base.cols()).collect::<Vec<_>>()),
            Some(c) => generalize_row(&base, i, c, m)?,
        };
        let start = out.as_ref().map_or(0, PolyMatrix::rows);
        groups.push(start..start + block.rows());
        out = Some(match out {
            None => block,
            Some(acc) => acc.vstack(&block)?,
        });
    }
    Ok((out.expect("at least one row"), groups))
}

fn generalize_row(
    base: &PolyMatrix,
    i: usize,
    c: &ComponentCode,
    m: RingModulus,
) -> Result<PolyMatrix> {
    let support = base.row_support(i);
    if support.len() != c.q() {
        return Err(Error::InvalidSpec(format!(
            "component length {} vs row weight {}",
            c.q(),
            support.len()
        )));
    }
    let exps = support
        .iter()
        .map(|&j| {
            base.get(i, j)
                .as_monomial()
                .map(|e| e as i64)
                .ok_or_else(|| {
                    Error::InvalidSpec(format!(
                        "generalized row {} has a non-monomial entry",
                        i + 1
                    ))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let lifted = lifted_expand(c.parity(), &exps, m)?;
    let mut block = PolyMatrix::zeros(c.p(), base.cols(), Some(m));
    for r in 0..c.p() {
        for (k, &j) in support.iter().enumerate() {
            block.set(r, j, lifted.get(r, k).clone());
        }
    }
    Ok(block)
}

/// Full binary parity-check matrix (Σp_i·N)×(n_v·N). Rows come grouped by
/// component row within each base row; this is a row permutation of the
/// check-by-check expansion.
pub fn expand_binary(spec: &GldpcSpec) -> Result<BitMatrix> {
    assemble(spec)?.circulant_expand()
}

/// `[x^{e} row ; M I]` for a two-row base and a systematic component
/// generalizing the all-ones row.
pub fn assemble_partial(h: &PolyMatrix, comp: &ComponentCode) -> Result<PolyMatrix> {
    check_two_row(h, comp)?;
    let top = h.submatrix(&[1], &(0..h.cols()).collect::<Vec<_>>());
    if comp.is_spc() {
        return Ok(h.clone());
    }
    if comp.systematic_split().is_none() {
        return Err(Error::InvalidInput(
            "component is not in systematic form".into(),
        ));
    }
    top.vstack(&scalar_matrix(comp.parity(), h.modulus()))
}

fn check_two_row(h: &PolyMatrix, comp: &ComponentCode) -> Result<()> {
    if !is_two_row_form(h) {
        return Err(Error::InvalidInput("expected a [1...1; x^e] base".into()));
    }
    if comp.q() != h.cols() {
        return Err(Error::DimensionMismatch(format!(
            "component length {} vs {} columns",
            comp.q(),
            h.cols()
        )));
    }
    Ok(())
}

/// Eliminates the identity block of the component: the single row
/// `[f_1 ... f_m]` and the matrix M with H_GC ~ [H_short 0; M I].
pub fn reduce_partial(h: &PolyMatrix, comp: &ComponentCode) -> Result<(PolyMatrix, BitMatrix)> {
    let hgc = assemble_partial(h, comp)?;
    let split = comp
        .systematic_split()
        .ok_or_else(|| Error::InvalidInput("component is not systematic".into()))?;
    let rows = IndexSet::new((1..=comp.p()).collect())?;
    let parity = IndexSet::new(split.identity_cols.clone())?;
    let red = schur_reduce(&hgc, &rows, &parity, false)?;
    Ok((red.h_short, split.m))
}

/// Both rows generalized: `comp_top` on the monomial row (lifted), the
/// systematic `comp_bottom` on the all-ones row.
pub fn assemble_full(
    h: &PolyMatrix,
    comp_top: &ComponentCode,
    comp_bottom: &ComponentCode,
) -> Result<PolyMatrix> {
    check_two_row(h, comp_bottom)?;
    if comp_top.q() != h.cols() {
        return Err(Error::DimensionMismatch(format!(
            "component length {} vs {} columns",
            comp_top.q(),
            h.cols()
        )));
    }
    let m = h.require_modulus()?;
    let exps: Vec<i64> = h
        .row(1)
        .iter()
        .map(|p| p.as_monomial().expect("checked") as i64)
        .collect();
    lifted_expand(comp_top.parity(), &exps, m)?
        .vstack(&scalar_matrix(comp_bottom.parity(), Some(m)))
}

/// `M1^↑ + M2^↑·M`, the short matrix of the doubly generalized code.
pub fn reduce_full(
    h: &PolyMatrix,
    comp_top: &ComponentCode,
    comp_bottom: &ComponentCode,
) -> Result<PolyMatrix> {
    let hgc = assemble_full(h, comp_top, comp_bottom)?;
    let split = comp_bottom
        .systematic_split()
        .ok_or_else(|| Error::InvalidInput("bottom component is not systematic".into()))?;
    let rows = IndexSet::new((comp_top.p()..comp_top.p() + comp_bottom.p()).collect())?;
    let parity = IndexSet::new(split.identity_cols)?;
    Ok(schur_reduce(&hgc, &rows, &parity, false)?.h_short)
}

/// One elimination step H ~ [A' I; H_short 0] (columns permuted).
#[derive(Clone, Debug)]
pub struct Reduction {
    pub h_short: PolyMatrix,
    /// A' = B^{-1}·H[pivot rows, info], indexed by parity column × info column.
    pub a: PolyMatrix,
    pub info_cols: IndexSet,
    pub parity_cols: IndexSet,
    pub pivot_rows: IndexSet,
    /// det B computed in GF(2)[x].
    pub block_det: BinaryPoly,
    pub cols: usize,
}

impl Reduction {
    /// Generator of the larger code from one of ker(H_short):
    /// `[G_short | G_short·A'^T]` with columns put back in place.
    pub fn lift(&self, g_short: &PolyMatrix) -> Result<PolyMatrix> {
        let composed = shorten_compose(g_short, &self.a)?;
        let mut g = PolyMatrix::zeros(g_short.rows(), self.cols, g_short.modulus());
        let order: Vec<usize> = self
            .info_cols
            .as_slice()
            .iter()
            .chain(self.parity_cols.as_slice())
            .copied()
            .collect();
        for i in 0..g.rows() {
            for (k, &c) in order.iter().enumerate() {
                g.set(i, c, composed.get(i, k).clone());
            }
        }
        Ok(g)
    }
}

fn adjugate_inverse(b: &PolyMatrix, m: RingModulus) -> Result<(PolyMatrix, BinaryPoly)> {
    let n = b.rows();
    let mut cache = MinorCache::new(b)?;
    let all = IndexSet::range(n);
    let det = cache.det_sets(&all, &all);
    let inv_det = m.inverse(&det)?;
    let mut inv = PolyMatrix::zeros(n, n, Some(m));
    for i in 0..n {
        for j in 0..n {
            // adj(B)[i][j] = cofactor of (j, i); signs vanish in characteristic 2.
            let c = cache.det_sets(&all.without(j), &all.without(i));
            inv.set(i, j, m.mul(&c, &inv_det));
        }
    }
    Ok((inv, det))
}

/// Eliminates the parity columns using the given pivot rows. With
/// `normalize`, a row whose parity part is a single repeated monomial x^e
/// is first divided by x^e.
pub fn schur_reduce(
    h: &PolyMatrix,
    rows: &IndexSet,
    parity: &IndexSet,
    normalize: bool,
) -> Result<Reduction> {
    let m = h.require_modulus()?;
    if rows.len() != parity.len() || rows.len() > h.rows() {
        return Err(Error::DimensionMismatch(format!(
            "pivot rows {rows} vs parity columns {parity}"
        )));
    }
    let h = if normalize {
        normalize_rows(h, parity, m)
    } else {
        h.clone()
    };
    let info = parity.complement(h.cols());
    let rest = rows.complement(h.rows());
    let b = h.submatrix(rows.as_slice(), parity.as_slice());
    let (b_inv, det) = adjugate_inverse(&b, m)?;
    let a = b_inv.matmul_mod(&h.submatrix(rows.as_slice(), info.as_slice()))?;
    let h_rest_info = h.submatrix(rest.as_slice(), info.as_slice());
    let h_short = if rest.is_empty() {
        h_rest_info
    } else {
        h_rest_info.add(
            &h.submatrix(rest.as_slice(), parity.as_slice())
                .matmul_mod(&a)?,
        )?
    };
    Ok(Reduction {
        h_short,
        a,
        info_cols: info,
        parity_cols: parity.clone(),
        pivot_rows: rows.clone(),
        block_det: det,
        cols: h.cols(),
    })
}

fn normalize_rows(h: &PolyMatrix, parity: &IndexSet, m: RingModulus) -> PolyMatrix {
    let mut out = h.clone();
    for i in 0..h.rows() {
        let part: Vec<&BinaryPoly> = parity
            .as_slice()
            .iter()
            .map(|&j| h.get(i, j))
            .filter(|p| !p.is_zero())
            .collect();
        let Some(first) = part.first() else { continue };
        let Some(e) = first.as_monomial() else {
            continue;
        };
        if e == 0 || part.iter().any(|p| p != first) {
            continue;
        }
        let inv = m.monomial(-(e as i64));
        for j in 0..h.cols() {
            out.set(i, j, m.mul(h.get(i, j), &inv));
        }
    }
    out
}

/// First row subset (lexicographic) giving an invertible parity block.
pub fn reduce_with_parity(
    h: &PolyMatrix,
    parity: &IndexSet,
    normalize: bool,
) -> Result<Option<Reduction>> {
    let m = h.require_modulus()?;
    let hn = if normalize {
        normalize_rows(h, parity, m)
    } else {
        h.clone()
    };
    let mut cache = MinorCache::new(&hn)?;
    for rows in combinations(h.rows(), parity.len()) {
        if m.is_unit(&cache.det_sets(&rows, parity)) {
            return schur_reduce(h, &rows, parity, normalize).map(Some);
        }
    }
    Ok(None)
}

/// Second-stage reduction of an r-row matrix down to one row: the given
/// parity columns, or the first (lexicographic) r−1 columns that admit an
/// invertible block.
pub fn reduce_to_single_row(
    h: &PolyMatrix,
    parity: Option<&IndexSet>,
) -> Result<Option<Reduction>> {
    if h.rows() < 2 {
        return Ok(None);
    }
    if let Some(p) = parity {
        if p.len() != h.rows() - 1 || p.as_slice().last().is_some_and(|&c| c >= h.cols()) {
            return Err(Error::InvalidSpec(format!(
                "stage-2 parity columns {p} must be {} columns",
                h.rows() - 1
            )));
        }
        return reduce_with_parity(h, p, true);
    }
    for p in combinations(h.cols(), h.rows() - 1) {
        if let Some(r) = reduce_with_parity(h, &p, true)? {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Stage one: eliminate identity blocks of systematic components, taking
/// groups in row order while they stay disjoint, invertible and leave at
/// least one row.
fn stage_one(
    spec: &GldpcSpec,
    h: &PolyMatrix,
    groups: &[std::ops::Range<usize>],
) -> Result<Option<Reduction>> {
    let base = spec.effective_base()?;
    let m = spec.effective_modulus();
    let mut rows: Vec<usize> = Vec::new();
    let mut cols: Vec<usize> = Vec::new();
    for (i, comp) in spec.components.iter().enumerate() {
        let Some(comp) = comp else { continue };
        if comp.p() < 2 {
            continue;
        }
        let Some(split) = comp.systematic_split() else {
            continue;
        };
        let support = base.row_support(i);
        let pc: Vec<usize> = split.identity_cols.iter().map(|&k| support[k]).collect();
        if pc.iter().any(|c| cols.contains(c)) {
            continue;
        }
        let mut r2 = rows.clone();
        r2.extend(groups[i].clone());
        let mut c2 = cols.clone();
        c2.extend(&pc);
        if r2.len() >= h.rows() {
            continue;
        }
        let (ri, ci) = (IndexSet::new(r2.clone())?, IndexSet::new(c2.clone())?);
        let b = h.submatrix(ri.as_slice(), ci.as_slice());
        let all = IndexSet::range(b.rows());
        if !m.is_unit(&b.minor_det(&all, &all)?) {
            continue;
        }
        rows = r2;
        cols = c2;
    }
    if rows.is_empty() {
        return Ok(None);
    }
    schur_reduce(h, &IndexSet::new(rows)?, &IndexSet::new(cols)?, false).map(Some)
}

/// Two G_short forms for a single-row H_short = [f_1 ... f_m].
pub fn gshort_forms(h_short: &PolyMatrix) -> Result<(GeneratorResult, GeneratorResult)> {
    let m = h_short.require_modulus()?;
    if h_short.rows() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected one row, got {}",
            h_short.rows()
        )));
    }
    let f_row = h_short.row(0);
    let cols = f_row.len();
    if f_row.iter().all(BinaryPoly::is_zero) {
        return Err(Error::InvalidInput("every entry of H_short is zero".into()));
    }
    let g = f_row.iter().fold(m.poly(), |acc, f| acc.gcd(f));
    let pivot = if m.gcd_with_modulus(&f_row[cols - 1]) == g {
        cols - 1
    } else {
        (0..cols)
            .find(|&i| m.gcd_with_modulus(&f_row[i]) == g)
            .ok_or_else(|| Error::InvalidInput("no entry of H_short has gcd equal to g".into()))?
    };
    let f = m.poly().div_exact(&g)?;
    let target = code_dimension(h_short)?;
    let build = |div: &BinaryPoly, f_rows: Vec<usize>| -> Result<GeneratorResult> {
        let mut rows = Vec::new();
        let mut prov = Vec::new();
        let fp = f_row[pivot].div_exact(div)?;
        for j in (0..cols).filter(|&j| j != pivot) {
            let mut r = vec![BinaryPoly::zero(); cols];
            r[j] = m.transpose(&fp);
            r[pivot] = m.transpose(&f_row[j].div_exact(div)?);
            rows.push(r);
            prov.push(RowProvenance::ShortPivot {
                pivot: pivot + 1,
                divided_by: div.clone(),
            });
        }
        if !g.is_one() {
            for col in f_rows {
                let mut r = vec![BinaryPoly::zero(); cols];
                r[col] = m.transpose(&f);
                rows.push(r);
                prov.push(RowProvenance::ShortF {
                    col: col + 1,
                    f: f.clone(),
                });
            }
        }
        let gm = if rows.is_empty() {
            PolyMatrix::zeros(0, cols, Some(m))
        } else {
            PolyMatrix::from_rows(rows, Some(m))?
        };
        GeneratorResult::new(gm, prov, target)
    };
    Ok((
        build(&BinaryPoly::one(), (0..cols).collect())?,
        build(&g, vec![pivot])?,
    ))
}

/// Everything produced on the way from a spec to its generator.
#[derive(Clone, Debug)]
pub struct Construction {
    pub h_gc: PolyMatrix,
    pub stage1: Option<Reduction>,
    pub stage2: Option<Reduction>,
    /// Generator chosen for the innermost short matrix.
    pub short: GeneratorResult,
    pub generator: GeneratorResult,
}

impl Construction {
    /// The innermost matrix handed to the generator synthesis.
    pub fn innermost(&self) -> &PolyMatrix {
        match (&self.stage2, &self.stage1) {
            (Some(r), _) | (None, Some(r)) => &r.h_short,
            (None, None) => &self.h_gc,
        }
    }

    pub fn intermediate(&self) -> &PolyMatrix {
        self.stage1.as_ref().map_or(&self.h_gc, |r| &r.h_short)
    }
}

fn lift_through(
    result: &GeneratorResult,
    stages: &[&Reduction],
    target: usize,
) -> Result<GeneratorResult> {
    let mut g = result.g.clone();
    for st in stages {
        g = st.lift(&g)?;
    }
    let prov = result
        .row_provenance
        .iter()
        .map(|p| {
            if stages.is_empty() {
                p.clone()
            } else {
                RowProvenance::Shortened {
                    inner: Box::new(p.clone()),
                }
            }
        })
        .collect();
    GeneratorResult::new(g, prov, target)
}

/// End-to-end synthesis: reduce, build a short generator, compose back up.
pub fn construct(spec: &GldpcSpec) -> Result<Construction> {
    if spec.form == Form::Alternative {
        return construct_alternative(spec);
    }
    let (h_gc, groups) = assemble_groups(spec)?;
    let target =
        h_gc.cols() * spec.effective_modulus().n() - rank_scalar(&h_gc.circulant_expand()?);
    let stage1 = stage_one(spec, &h_gc, &groups)?;
    let h1 = stage1.as_ref().map_or(&h_gc, |r| &r.h_short);
    let stage2 = match &spec.prelift {
        Some(pl) => reduce_to_single_row(h1, pl.stage2_parity.as_ref())?,
        None => None,
    };
    let inner = stage2.as_ref().map_or(h1, |r| &r.h_short);

    let mut candidates = Vec::new();
    if inner.rows() == 1 {
        if let Ok((a, b)) = gshort_forms(inner) {
            candidates.push(a);
            candidates.push(b);
        }
    }
    candidates.extend(generator_variants(inner)?);

    let stages: Vec<&Reduction> = stage2.iter().chain(stage1.iter()).collect();
    let mut lifted = Vec::new();
    for c in &candidates {
        lifted.push((lift_through(c, &stages, target)?, c.clone()));
    }
    let best_idx = {
        let results: Vec<GeneratorResult> = lifted.iter().map(|(l, _)| l.clone()).collect();
        let best = pick_best(results);
        lifted
            .iter()
            .position(|(l, _)| l.g == best.g)
            .expect("best is among candidates")
    };
    let (generator, short) = lifted.swap_remove(best_idx);
    Ok(Construction {
        h_gc,
        stage1,
        stage2,
        short,
        generator,
    })
}

fn construct_alternative(spec: &GldpcSpec) -> Result<Construction> {
    let canon = spec.canonical()?;
    let inner = construct(&canon)?;
    let m = spec.modulus;
    let h_gc = assemble(spec)?;
    // H = H'·D with D = diag(x^{-e_j}), so G' = G·D^T = G·diag(x^{e_j}).
    let exps: Vec<usize> = spec
        .base
        .row(1)
        .iter()
        .map(|p| p.as_monomial().expect("validated"))
        .collect();
    let mut g = inner.generator.g.clone();
    for i in 0..g.rows() {
        for (j, &e) in exps.iter().enumerate() {
            let v = m.mul(g.get(i, j), &BinaryPoly::monomial(e));
            g.set(i, j, v);
        }
    }
    let generator = GeneratorResult::new(
        g,
        inner.generator.row_provenance.clone(),
        inner.generator.target_dimension,
    )?;
    Ok(Construction {
        h_gc,
        stage1: inner.stage1,
        stage2: inner.stage2,
        short: inner.short,
        generator,
    })
}

/// Generator for the spec, verified against its full parity-check matrix.
pub fn construct_generator(spec: &GldpcSpec) -> Result<GeneratorResult> {
    let c = construct(spec)?;
    let g = c.generator.require_complete()?;
    let hb = expand_binary(spec)?;
    let gb = g.g.circulant_expand()?;
    if !hb.mul(&gb.transpose())?.is_zero() {
        return Err(Error::InvalidInput(
            "constructed generator fails the parity checks".into(),
        ));
    }
    Ok(g)
}

/// The N1×N1 block of g(x) = Σ x^t g_t(x^{N1}) over x^{N2}+1: g_{r−c} on
/// and below the diagonal, x·g_{N1+r−c} above it.
pub fn prelift_entry(g: &BinaryPoly, n1: usize, m2: RingModulus) -> Result<PolyMatrix> {
    if n1 == 0 {
        return Err(Error::InvalidInput("N1 must be positive".into()));
    }
    let n = n1 * m2.n();
    let g = RingModulus::new(n)?.reduce(g);
    let mut parts = vec![BinaryPoly::zero(); n1];
    for k in g.exponents() {
        parts[k % n1].flip(k / n1);
    }
    let mut out = PolyMatrix::zeros(n1, n1, Some(m2));
    for r in 0..n1 {
        for c in 0..n1 {
            let v = if r >= c {
                parts[r - c].clone()
            } else {
                parts[n1 + r - c].shl(1)
            };
            out.set(r, c, v);
        }
    }
    Ok(out)
}

/// Replaces every entry by its N1×N1 pre-lift block (row (i, r) at
/// i·N1 + r, column (j, c) at j·N1 + c), over N2 = N/N1.
pub fn prelift_matrix(h: &PolyMatrix, n1: usize) -> Result<PolyMatrix> {
    let m = h.require_modulus()?;
    if n1 == 0 || m.n() % n1 != 0 {
        return Err(Error::InvalidInput(format!(
            "N = {} is not divisible by N1 = {n1}",
            m.n()
        )));
    }
    let m2 = RingModulus::new(m.n() / n1)?;
    let mut out = PolyMatrix::zeros(h.rows() * n1, h.cols() * n1, Some(m2));
    for i in 0..h.rows() {
        for j in 0..h.cols() {
            let blk = prelift_entry(h.get(i, j), n1, m2)?;
            for r in 0..n1 {
                for c in 0..n1 {
                    out.set(i * n1 + r, j * n1 + c, blk.get(r, c).clone());
                }
            }
        }
    }
    Ok(out)
}

/// Column order used by `split_even_odd`: (base column, block offset).
pub fn even_odd_order(h: &PolyMatrix) -> Vec<(usize, usize)> {
    let even = |j: usize| (0..h.rows()).all(|i| h.get(i, j).exponents().iter().all(|e| e % 2 == 0));
    let (ev, od): (Vec<usize>, Vec<usize>) = (0..h.cols()).partition(|&j| even(j));
    let mut order = Vec::new();
    for group in [&ev, &od] {
        for t in 0..2 {
            order.extend(group.iter().map(|&j| (j, t)));
        }
    }
    order
}

/// Pre-lift with N1 = 2, columns grouped as [even·0, even·1, odd·0, odd·1]
/// where a column is even when all its exponents are.
pub fn split_even_odd(h: &PolyMatrix) -> Result<PolyMatrix> {
    let p = prelift_matrix(h, 2)?;
    let cols: Vec<usize> = even_odd_order(h)
        .into_iter()
        .map(|(j, t)| 2 * j + t)
        .collect();
    Ok(p.submatrix(&(0..p.rows()).collect::<Vec<_>>(), &cols))
}
