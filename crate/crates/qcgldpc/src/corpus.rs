//! Embedded worked examples: polynomial matrices and GLDPC specs.

use crate::analysis::{girth_qc, is_codeword, min_distance_exact, DEFAULT_BUDGET};
use crate::construct::{generator_case1, vector_bits};
use crate::error::{Error, Result};
use crate::gf2poly::{BinaryPoly, RingModulus};
use crate::gldpc::{construct, construct_generator, expand_binary, ComponentCode, GldpcSpec};
use crate::polymat::{IndexSet, PolyMatrix};
use crate::rank::{code_dimension, rank_qc};

pub const EX1_PMX: &str = include_str!("../data/ex1.pmx");
pub const AR4JA_PMX: &str = include_str!("../data/ar4ja.pmx");
pub const EX3_PMX: &str = include_str!("../data/ex3.pmx");

/// (name, JSON text) of every embedded spec.
pub const SPECS: &[(&str, &str)] = &[
    ("ex4", include_str!("../data/ex4.json")),
    ("c1", include_str!("../data/c1.json")),
    ("c2", include_str!("../data/c2.json")),
    ("c2_alt1", include_str!("../data/c2_alt1.json")),
    ("c2_alt2", include_str!("../data/c2_alt2.json")),
    ("c2_alt3", include_str!("../data/c2_alt3.json")),
    ("ex4_prelift", include_str!("../data/ex4_prelift.json")),
    (
        "ex4_prelift_mixed",
        include_str!("../data/ex4_prelift_mixed.json"),
    ),
    ("appb", include_str!("../data/appb.json")),
    ("appa", include_str!("../data/appa.json")),
];

/// 3×5 matrix over GF(2)[x] with no modulus attached; its rank over
/// x^N+1 depends on the parity of N.
pub fn ex1() -> PolyMatrix {
    PolyMatrix::from_pmx(EX1_PMX, None).expect("embedded matrix parses")
}

/// The AR4JA protograph matrix over N = 4.
pub fn ar4ja() -> PolyMatrix {
    PolyMatrix::from_pmx(AR4JA_PMX, Some(RingModulus::new(4).expect("N > 0")))
        .expect("embedded matrix parses")
}

/// The single-row example with common factors, over x^n+1.
pub fn ex3(n: usize) -> Result<PolyMatrix> {
    PolyMatrix::from_pmx(EX3_PMX, Some(RingModulus::new(n)?))
}

pub fn spec_json(name: &str) -> Result<&'static str> {
    SPECS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::InvalidInput(format!("no embedded spec named {name:?}")))
}

pub fn spec(name: &str) -> Result<GldpcSpec> {
    GldpcSpec::from_json(spec_json(name)?)
}

/// [M | I] parity-check matrix of the shortened [6,3] Hamming code.
pub fn hamming_6_3() -> ComponentCode {
    ComponentCode::from_bit_strings(&["110100", "101010", "011001"]).expect("valid")
}

/// [M | I] parity-check matrix of the [7,4] Hamming code.
pub fn hamming_7_4() -> ComponentCode {
    ComponentCode::from_bit_strings(&["1110100", "1101010", "1011001"]).expect("valid")
}

/// Outcome of one embedded check.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SelfCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn polys(list: &[&str], m: RingModulus) -> Vec<BinaryPoly> {
    list.iter()
        .map(|s| m.parse(s).expect("embedded literal"))
        .collect()
}

fn check_ranks() -> Result<String> {
    let h = ex1();
    let got: Vec<(usize, usize)> = [45, 46, 44]
        .iter()
        .map(|&n| rank_qc(&h, RingModulus::new(n)?).map(|r| (r.rank, r.dimension)))
        .collect::<Result<_>>()?;
    if got != [(132, 93), (132, 98), (126, 94)] {
        return Err(Error::InvalidInput(format!("{got:?}")));
    }
    Ok(format!("{got:?}"))
}

fn check_ar4ja() -> Result<String> {
    let h = ar4ja();
    let g = generator_case1(&h, &IndexSet::range(3))?;
    let d = min_distance_exact(&g.g.circulant_expand()?, DEFAULT_BUDGET)?;
    if (h.cols() * 4, g.rank, d) != (20, 8, 4) {
        return Err(Error::InvalidInput(format!("[20, {}, {d}]", g.rank)));
    }
    Ok("[20, 8, 4]".into())
}

fn check_dimension(name: &str, k: usize) -> Result<String> {
    let s = spec(name)?;
    let g = construct_generator(&s)?;
    if g.rank != k {
        return Err(Error::InvalidInput(format!(
            "dimension {} instead of {k}",
            g.rank
        )));
    }
    Ok(format!(
        "[{}, {}], min row weight {}",
        s.length(),
        g.rank,
        g.min_row_weight
    ))
}

fn check_appb() -> Result<String> {
    let s = spec("appb")?;
    let c = construct(&s)?;
    let m = RingModulus::new(34)?;
    let (Some(s1), Some(s2)) = (&c.stage1, &c.stage2) else {
        return Err(Error::InvalidInput("reduction stages missing".into()));
    };
    let f = polys(
        &[
            "x^24+x^18+x^15+x^14+x^9+1",
            "x^33+x^32+x^27+x^15+x^9+x^8+x^5+x^4+x^3+x^2+x+1",
            "x^33+x^32+x^31+x^27+x^25+x^22+x^15+x^8+x^5+x^4+x^2",
            "x^33+x^27+x^25+x^23+x^21+x^9+x^8+x^5+x^4+x^3+x",
            "x^32+x^31+x^21+x^15+x^9+x^7+x^3+x^2+x",
        ],
        m,
    );
    let w = vector_bits(
        &polys(&["0", "x^12+x^31", "x", "x^3+x^17+x^18", "x^14+x^16"], m),
        m,
    );
    let ok = code_dimension(&s1.h_short)? == 136
        && s2.h_short.row(0) == f.as_slice()
        && is_codeword(&s2.h_short.circulant_expand()?, &w)?;
    if !ok {
        return Err(Error::InvalidInput("shortened matrices differ".into()));
    }
    Ok("f_1..f_5 exact, weight-8 witness verifies".into())
}

fn check_witness88() -> Result<String> {
    let s = spec("c2")?;
    let w = polys(
        &[
            "x^64+x^59+x^53+x^51+x^41+x^40+x^38+x^36+x^28+x^23+x^20+x^18+x^8+x^3",
            "x^64+x^63+x^60+x^47+x^45+x^39+x^36+x^28+x^25+x^23+x^15+x^3",
            "x^60+x^59+x^51+x^47+x^45+x^40+x^39+x^38+x^37+x^36+x^22+x^15+x^8+x^7",
            "x^64+x^60+x^53+x^50+x^47+x^43+x^42+x^41+x^40+x^20+x^15+x^7",
            "x^63+x^53+x^41+x^37+x^36+x^25+x^22+x^20+x^18+x^7",
            "x^64+x^63+x^59+x^51+x^50+x^45+x^43+x^42+x^39+x^38+x^25+x^18+x^8+x^7",
            "x^50+x^45+x^43+x^42+x^40+x^39+x^37+x^28+x^23+x^22+x^18+x^3",
        ],
        s.modulus,
    );
    let bits = vector_bits(&w, s.modulus);
    let wt = bits.iter().filter(|b| **b == 1).count();
    if wt != 88 || !is_codeword(&expand_binary(&s)?, &bits)? {
        return Err(Error::InvalidInput(format!(
            "weight {wt} word is not a codeword"
        )));
    }
    Ok("weight 88".into())
}

fn check_girth() -> Result<String> {
    let got: Vec<Option<usize>> = ["ex4", "c1", "appa"]
        .iter()
        .map(|n| girth_qc(&spec(n)?.base))
        .collect::<Result<_>>()?;
    if got.iter().any(|g| *g != Some(12)) {
        return Err(Error::InvalidInput(format!("{got:?}")));
    }
    Ok("12, 12, 12".into())
}

type Check = Box<dyn Fn() -> Result<String>>;

/// Runs the fast embedded example checks.
pub fn selftest() -> Vec<SelfCheck> {
    let checks: Vec<(&'static str, Check)> = vec![
        ("rank of ex1 at N = 45, 46, 44", Box::new(check_ranks)),
        ("AR4JA [20,8,4]", Box::new(check_ar4ja)),
        ("ex4 [474,158]", Box::new(|| check_dimension("ex4", 158))),
        ("c1 [476,204]", Box::new(|| check_dimension("c1", 204))),
        ("c2 [476,72]", Box::new(|| check_dimension("c2", 72))),
        ("c2 weight-88 witness", Box::new(check_witness88)),
        (
            "pre-lift [540,91]",
            Box::new(|| check_dimension("ex4_prelift", 91)),
        ),
        ("appb [476,136]", Box::new(|| check_dimension("appb", 136))),
        ("appb shortened matrices", Box::new(check_appb)),
        ("girth of ex4, c1, appa", Box::new(check_girth)),
    ];
    checks
        .into_iter()
        .map(|(name, f)| match f() {
            Ok(detail) => SelfCheck {
                name,
                passed: true,
                detail,
            },
            Err(e) => SelfCheck {
                name,
                passed: false,
                detail: e.to_string(),
            },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_spec_parses() {
        for (name, _) in SPECS {
            let s = spec(name).unwrap();
            assert_eq!(&s.name, name);
        }
        assert!(spec("nope").is_err());
    }

    #[test]
    fn matrices_parse() {
        assert_eq!((ex1().rows(), ex1().cols()), (3, 5));
        assert!(ex1().modulus().is_none());
        assert_eq!(ar4ja().cols(), 5);
        assert_eq!(ex3(45).unwrap().cols(), 4);
    }

    #[test]
    fn selftest_passes() {
        for c in selftest() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
