//! Encoding, BPSK over AWGN, constraint-graph belief propagation with
//! BCJR at generalized constraints, and Monte Carlo error counting.
//!
//! LLRs are log P(0)/P(1); BPSK maps 0 to +1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitmatrix::BitMatrix;
use crate::construct::row_codeword_bits;
use crate::error::{Error, Result};
use crate::gf2poly::BinaryPoly;
use crate::gldpc::{expand_binary, ComponentCode, GldpcSpec};
use crate::polymat::PolyMatrix;

/// Codeword m(x)·G(x), as bits.
pub fn encode(g: &PolyMatrix, message: &[BinaryPoly]) -> Result<Vec<u8>> {
    let m = g.require_modulus()?;
    if message.len() != g.rows() {
        return Err(Error::DimensionMismatch(format!(
            "message has {} entries, G has {} rows",
            message.len(),
            g.rows()
        )));
    }
    let mut acc = vec![BinaryPoly::zero(); g.cols()];
    for (i, mi) in message.iter().enumerate() {
        if mi.is_zero() {
            continue;
        }
        for (a, gij) in acc.iter_mut().zip(g.row(i)) {
            *a += &m.mul(mi, gij);
        }
    }
    row_codeword_bits(&acc, m)
}

/// Noise variance for unit-energy BPSK at the given Es/N0.
pub fn noise_variance(es_n0_db: f64) -> f64 {
    1.0 / (2.0 * 10f64.powf(es_n0_db / 10.0))
}

fn awgn_with(codeword: &[u8], es_n0_db: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let var = noise_variance(es_n0_db);
    let normal = Normal::new(0.0, var.sqrt()).expect("finite variance");
    codeword
        .iter()
        .map(|&b| {
            let y = if b == 0 { 1.0 } else { -1.0 } + normal.sample(rng);
            2.0 * y / var
        })
        .collect()
}

/// Channel LLRs 2y/σ² for the BPSK-modulated codeword.
pub fn awgn_llrs(codeword: &[u8], es_n0_db: f64, seed: u64) -> Vec<f64> {
    awgn_with(codeword, es_n0_db, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Syndrome trellis of a component code: state = partial syndrome.
#[derive(Clone, Debug)]
pub struct Trellis {
    states: usize,
    cols: Vec<usize>,
}

impl Trellis {
    pub fn new(comp: &ComponentCode) -> Self {
        let h = comp.parity();
        let cols = (0..h.cols())
            .map(|j| {
                (0..h.rows())
                    .filter(|&r| h.get(r, j))
                    .fold(0usize, |acc, r| acc | 1 << r)
            })
            .collect();
        Trellis {
            states: 1 << h.rows(),
            cols,
        }
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    /// Extrinsic LLRs; finite state metrics are clamped to ±`threshold`.
    pub fn extrinsic(&self, priors: &[f64], threshold: f64, out: &mut [f64]) {
        let q = self.cols.len();
        let s = self.states;
        let clamp = |v: f64| {
            if v.is_finite() {
                v.clamp(-threshold, threshold)
            } else {
                v
            }
        };
        let mut alpha = vec![f64::NEG_INFINITY; (q + 1) * s];
        alpha[0] = 0.0;
        for j in 0..q {
            let (h, g) = (self.cols[j], priors[j] / 2.0);
            for st in 0..s {
                let a = alpha[j * s + st];
                if a == f64::NEG_INFINITY {
                    continue;
                }
                let i0 = (j + 1) * s + st;
                alpha[i0] = log_add(alpha[i0], a + g);
                let i1 = (j + 1) * s + (st ^ h);
                alpha[i1] = log_add(alpha[i1], a - g);
            }
            for v in &mut alpha[(j + 1) * s..(j + 2) * s] {
                *v = clamp(*v);
            }
        }
        let mut beta = vec![f64::NEG_INFINITY; (q + 1) * s];
        beta[q * s] = 0.0;
        for j in (0..q).rev() {
            let (h, g) = (self.cols[j], priors[j] / 2.0);
            for st in 0..s {
                let b0 = beta[(j + 1) * s + st] + g;
                let b1 = beta[(j + 1) * s + (st ^ h)] - g;
                beta[j * s + st] = clamp(log_add(b0, b1));
            }
        }
        for j in 0..q {
            let h = self.cols[j];
            let (mut l0, mut l1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
            for st in 0..s {
                let a = alpha[j * s + st];
                if a == f64::NEG_INFINITY {
                    continue;
                }
                l0 = log_add(l0, a + beta[(j + 1) * s + st]);
                l1 = log_add(l1, a + beta[(j + 1) * s + (st ^ h)]);
            }
            out[j] = clamp(l0 - l1);
        }
    }
}

/// Default clamp of BCJR state metrics.
pub const BCJR_THRESHOLD: f64 = 2.5e4;

/// Per-bit extrinsic LLRs of a component code (exact log-domain BCJR).
pub fn bcjr_component(comp: &ComponentCode, priors: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; priors.len()];
    Trellis::new(comp).extrinsic(priors, BCJR_THRESHOLD, &mut out);
    out
}

/// Sum-product single-parity update: 2·atanh(Π_{k≠j} tanh(L_k/2)).
pub fn spc_update(priors: &[f64], out: &mut [f64]) {
    let q = priors.len();
    let t: Vec<f64> = priors.iter().map(|l| (l / 2.0).tanh()).collect();
    let mut prefix = vec![1.0; q + 1];
    for j in 0..q {
        prefix[j + 1] = prefix[j] * t[j];
    }
    let mut suffix = 1.0;
    for j in (0..q).rev() {
        let p = (prefix[j] * suffix).clamp(-1.0 + 1e-15, 1.0 - 1e-15);
        out[j] = 2.0 * p.atanh();
        suffix *= t[j];
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    #[default]
    Flooding,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecoderConfig {
    pub max_iterations: usize,
    pub llr_clip: f64,
    pub bcjr_metric_threshold: f64,
    pub schedule: Schedule,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig {
            max_iterations: 100,
            llr_clip: 20.0,
            bcjr_metric_threshold: BCJR_THRESHOLD,
            schedule: Schedule::Flooding,
        }
    }
}

impl DecoderConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 || !(self.llr_clip > 0.0) || !(self.bcjr_metric_threshold > 0.0)
        {
            return Err(Error::InvalidInput(
                "decoder needs max_iterations ≥ 1 and positive clamps".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum Rule {
    Spc,
    Trellis(usize),
}

/// Constraint graph of a spec: one node per (base row, shift).
pub struct Decoder {
    n: usize,
    check_start: Vec<usize>,
    rules: Vec<Rule>,
    edge_var: Vec<usize>,
    var_edges: Vec<Vec<usize>>,
    trellises: Vec<Trellis>,
    hb: BitMatrix,
}

impl Decoder {
    pub fn new(spec: &GldpcSpec) -> Result<Self> {
        let base = spec.effective_base()?;
        let n_circ = spec.effective_modulus().n();
        let n = base.cols() * n_circ;
        let mut check_start = vec![0];
        let mut rules = Vec::new();
        let mut edge_var = Vec::new();
        let mut trellises = Vec::new();
        for i in 0..base.rows() {
            let rule = match &spec.components[i] {
                Some(c) if !c.is_spc() => {
                    trellises.push(Trellis::new(c));
                    Rule::Trellis(trellises.len() - 1)
                }
                _ => Rule::Spc,
            };
            let support = base.row_support(i);
            for s in 0..n_circ {
                rules.push(rule);
                for &j in &support {
                    for e in base.get(i, j).exponents() {
                        edge_var.push(j * n_circ + (s + n_circ - e) % n_circ);
                    }
                }
                check_start.push(edge_var.len());
            }
        }
        let mut var_edges = vec![Vec::new(); n];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[v].push(e);
        }
        Ok(Decoder {
            n,
            check_start,
            rules,
            edge_var,
            var_edges,
            trellises,
            hb: expand_binary(spec)?,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.hb
    }

    /// Flooding BP. Returns (hard decisions, converged, iterations run).
    pub fn decode(&self, llrs: &[f64], cfg: &DecoderConfig) -> Result<(Vec<u8>, bool, usize)> {
        cfg.validate()?;
        if llrs.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{} LLRs for length {}",
                llrs.len(),
                self.n
            )));
        }
        let m = self.edge_var.len();
        let mut c2v = vec![0.0; m];
        let mut v2c = vec![0.0; m];
        let mut bits = vec![0u8; self.n];
        let mut scratch_in = Vec::new();
        let mut scratch_out = Vec::new();
        for it in 1..=cfg.max_iterations {
            for (v, edges) in self.var_edges.iter().enumerate() {
                let total: f64 = llrs[v] + edges.iter().map(|&e| c2v[e]).sum::<f64>();
                for &e in edges {
                    v2c[e] = (total - c2v[e]).clamp(-cfg.llr_clip, cfg.llr_clip);
                }
            }
            for (c, rule) in self.rules.iter().enumerate() {
                let (a, b) = (self.check_start[c], self.check_start[c + 1]);
                scratch_in.clear();
                scratch_in.extend_from_slice(&v2c[a..b]);
                scratch_out.resize(b - a, 0.0);
                match rule {
                    Rule::Spc => spc_update(&scratch_in, &mut scratch_out),
                    Rule::Trellis(t) => self.trellises[*t].extrinsic(
                        &scratch_in,
                        cfg.bcjr_metric_threshold,
                        &mut scratch_out,
                    ),
                }
                c2v[a..b].copy_from_slice(&scratch_out);
            }
            for (v, edges) in self.var_edges.iter().enumerate() {
                let total: f64 = llrs[v] + edges.iter().map(|&e| c2v[e]).sum::<f64>();
                bits[v] = u8::from(total < 0.0);
            }
            if self.hb.mul_vec(&bits)?.iter().all(|s| *s == 0) {
                return Ok((bits, true, it));
            }
        }
        Ok((bits, false, cfg.max_iterations))
    }
}

/// Decodes one received block on the constraint graph of `spec`.
pub fn gldpc_decode(
    spec: &GldpcSpec,
    llrs: &[f64],
    cfg: &DecoderConfig,
) -> Result<(Vec<u8>, bool, usize)> {
    Decoder::new(spec)?.decode(llrs, cfg)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub snr_es_n0_db: f64,
    pub trials: u64,
    pub bit_errors: u64,
    pub block_errors: u64,
    pub seed: u64,
}

impl TrialResult {
    pub fn ber(&self, n: usize) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.bit_errors as f64 / (self.trials as f64 * n as f64)
        }
    }

    pub fn bler(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.block_errors as f64 / self.trials as f64
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StopRule {
    pub min_block_errors: u64,
    pub max_trials: u64,
}

/// Stream seed for one trial, from (master, SNR index, trial index).
pub fn trial_seed(master: u64, snr_index: u64, trial: u64) -> u64 {
    let mut z = master
        ^ snr_index.wrapping_mul(0xD1B5_4A32_D192_ED03)
        ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Trials run in batches of this size; the stop rule is checked between
/// batches, so results do not depend on the thread count.
pub const BATCH: u64 = 32;

/// Error counts per SNR point: random messages encoded with G, sent over
/// BPSK-AWGN and decoded on the constraint graph.
pub fn monte_carlo(
    spec: &GldpcSpec,
    g: &PolyMatrix,
    snr_list: &[f64],
    stop: StopRule,
    seed: u64,
    cfg: &DecoderConfig,
) -> Result<Vec<TrialResult>> {
    if stop.max_trials == 0 {
        return Ok(Vec::new());
    }
    let decoder = Decoder::new(spec)?;
    let gb = g.circulant_expand()?;
    if gb.cols() != decoder.len() {
        return Err(Error::DimensionMismatch(format!(
            "G has length {}, spec {}",
            gb.cols(),
            decoder.len()
        )));
    }
    let mut out = Vec::with_capacity(snr_list.len());
    for (si, &snr) in snr_list.iter().enumerate() {
        let mut res = TrialResult {
            snr_es_n0_db: snr,
            trials: 0,
            bit_errors: 0,
            block_errors: 0,
            seed,
        };
        while res.trials < stop.max_trials && res.block_errors < stop.min_block_errors.max(1) {
            let end = (res.trials + BATCH).min(stop.max_trials);
            let batch: Vec<(u64, u64)> = (res.trials..end)
                .into_par_iter()
                .map(|t| -> Result<(u64, u64)> {
                    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, si as u64, t));
                    let msg: Vec<u8> = (0..gb.rows()).map(|_| rng.gen_range(0..2u8)).collect();
                    let cw = gb.vec_mul(&msg)?;
                    let llrs = awgn_with(&cw, snr, &mut rng);
                    let (bits, _, _) = decoder.decode(&llrs, cfg)?;
                    let errs = bits.iter().zip(&cw).filter(|(a, b)| a != b).count() as u64;
                    Ok((errs, u64::from(errs > 0)))
                })
                .collect::<Result<_>>()?;
            for (e, b) in batch {
                res.bit_errors += e;
                res.block_errors += b;
            }
            res.trials = end;
        }
        out.push(res);
    }
    Ok(out)
}

/// CSV with one line per SNR point.
pub fn results_csv(results: &[TrialResult], n: usize) -> String {
    let mut s = String::from("snr_db,trials,bit_errors,block_errors,ber,bler\n");
    for r in results {
        s.push_str(&format!(
            "{},{},{},{},{:.6e},{:.6e}\n",
            r.snr_es_n0_db,
            r.trials,
            r.bit_errors,
            r.block_errors,
            r.ber(n),
            r.bler()
        ));
    }
    s
}
