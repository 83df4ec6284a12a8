//! JSON wire formats. Rationals travel as strings such as `"-3/4"`.

use serde::{Deserialize, Serialize};

use crate::annihil::{AlgebraicWitness, AnnihilatorReport, PencilParameter};
use crate::elemop::ElemOp;
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, Matrix, Polynomial, Rational};
use crate::invert::{Classification, Decomposition2, DecompositionKind, DerivationInverse, InverseReport, SideConditions};
use crate::pencil::CanonicalForm;
use crate::shiftspace::RelationReport;

/// Row-major matrix of rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixJson(pub Vec<Vec<String>>);

impl From<&Matrix> for MatrixJson {
    fn from(m: &Matrix) -> Self {
        MatrixJson(m.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect())
    }
}

impl TryFrom<&MatrixJson> for Matrix {
    type Error = Error;

    fn try_from(m: &MatrixJson) -> Result<Matrix> {
        let rows = m
            .0
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(Error::Parse("matrix has no rows".into()));
        }
        Matrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn rational_json(r: &Rational) -> String {
    format_rational(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "B")]
    pub b: MatrixJson,
}

impl TermJson {
    pub fn new(a: &Matrix, b: &Matrix) -> Self {
        TermJson { a: a.into(), b: b.into() }
    }

    pub fn to_pair(&self) -> Result<(Matrix, Matrix)> {
        Ok(((&self.a).try_into()?, (&self.b).try_into()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemOpJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

impl From<&ElemOp> for ElemOpJson {
    fn from(op: &ElemOp) -> Self {
        ElemOpJson {
            n: op.n(),
            terms: op.terms().iter().map(|(a, b)| TermJson::new(a, b)).collect(),
        }
    }
}

impl TryFrom<&ElemOpJson> for ElemOp {
    type Error = Error;

    fn try_from(j: &ElemOpJson) -> Result<ElemOp> {
        let terms = j.terms.iter().map(TermJson::to_pair).collect::<Result<Vec<_>>>()?;
        ElemOp::new(j.n, terms).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInput {
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "B")]
    pub b: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApplyInput {
    pub op: ElemOpJson,
    #[serde(rename = "T")]
    pub t: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeInput {
    pub left: ElemOpJson,
    pub right: ElemOpJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilInput {
    #[serde(rename = "B1")]
    pub b1: MatrixJson,
    #[serde(rename = "B2")]
    pub b2: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseJson {
    pub invertible: bool,
    pub inverse: Option<ElemOpJson>,
    pub inverse_length: Option<usize>,
    pub predicted_length: Option<usize>,
    pub provenance: Option<String>,
    pub lambda: Option<String>,
}

impl From<&InverseReport> for InverseJson {
    fn from(r: &InverseReport) -> Self {
        InverseJson {
            invertible: r.invertible,
            inverse: r.inverse.as_ref().map(Into::into),
            inverse_length: r.inverse_length,
            predicted_length: r.predicted_length,
            provenance: r.provenance.map(str::to_owned),
            lambda: r.lambda.as_ref().map(rational_json),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationInverseJson {
    pub lambda: String,
    pub alpha: String,
    pub beta: String,
    #[serde(rename = "C")]
    pub c: MatrixJson,
    #[serde(rename = "D")]
    pub d: MatrixJson,
}

impl From<&DerivationInverse> for DerivationInverseJson {
    fn from(d: &DerivationInverse) -> Self {
        DerivationInverseJson {
            lambda: rational_json(&d.lambda),
            alpha: rational_json(&d.alpha),
            beta: rational_json(&d.beta),
            c: (&d.c).into(),
            d: (&d.d).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorJson {
    pub status: String,
    pub witness: Option<ElemOpJson>,
    /// Rational string or `"infinity"`.
    pub pencil_parameter: Option<String>,
    pub chain_length: Option<usize>,
    pub case: Option<String>,
    pub algebraic_witness: Option<AlgebraicWitnessJson>,
}

/// Polynomials as ascending coefficient lists in `z`, reduced modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicWitnessJson {
    pub modulus: Vec<String>,
    pub row: Vec<Vec<String>>,
    pub col: Vec<Vec<String>>,
}

fn poly_json(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

impl From<&AlgebraicWitness> for AlgebraicWitnessJson {
    fn from(w: &AlgebraicWitness) -> Self {
        AlgebraicWitnessJson {
            modulus: poly_json(&w.modulus),
            row: w.row.iter().map(poly_json).collect(),
            col: w.col.iter().map(poly_json).collect(),
        }
    }
}

impl From<&AnnihilatorReport> for AnnihilatorJson {
    fn from(r: &AnnihilatorReport) -> Self {
        AnnihilatorJson {
            status: r.status.to_string(),
            witness: r.witness.as_ref().map(Into::into),
            pencil_parameter: r.pencil_parameter.as_ref().map(|p| match p {
                PencilParameter::Finite(c) => rational_json(c),
                PencilParameter::Infinity => "infinity".into(),
            }),
            chain_length: r.chain_length,
            case: r.case.map(str::to_owned),
            algebraic_witness: r.algebraic.as_ref().map(Into::into),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalFormJson {
    pub block_sizes: Vec<usize>,
    #[serde(rename = "P")]
    pub p: MatrixJson,
    #[serde(rename = "Q")]
    pub q: MatrixJson,
    #[serde(rename = "R1")]
    pub r1: MatrixJson,
    #[serde(rename = "R2")]
    pub r2: MatrixJson,
    pub residual_rank: usize,
}

impl From<&CanonicalForm> for CanonicalFormJson {
    fn from(f: &CanonicalForm) -> Self {
        CanonicalFormJson {
            block_sizes: f.block_sizes.clone(),
            p: (&f.p).into(),
            q: (&f.q).into(),
            r1: (&f.residual.0).into(),
            r2: (&f.residual.1).into(),
            residual_rank: f.residual_rank,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub kind: String,
    #[serde(rename = "M1")]
    pub m1: TermJson,
    #[serde(rename = "M2")]
    pub m2: TermJson,
    pub inverse_split: Option<[TermJson; 2]>,
}

pub fn kind_name(kind: DecompositionKind) -> &'static str {
    match kind {
        DecompositionKind::TwoInvertible => "two_invertible",
        DecompositionKind::Biorthogonal => "biorthogonal",
    }
}

impl From<&Decomposition2> for DecompositionJson {
    fn from(d: &Decomposition2) -> Self {
        DecompositionJson {
            kind: kind_name(d.kind).into(),
            m1: TermJson::new(&d.m1.0, &d.m1.1),
            m2: TermJson::new(&d.m2.0, &d.m2.1),
            inverse_split: d
                .inverse_split
                .as_ref()
                .map(|[g1, g2]| [TermJson::new(&g1.0, &g1.1), TermJson::new(&g2.0, &g2.1)]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideJson {
    pub product_dim: usize,
    pub dim_bound: bool,
    pub zero_divisors: bool,
    pub inverses: bool,
    pub holds: bool,
}

impl From<&SideConditions> for SideJson {
    fn from(s: &SideConditions) -> Self {
        SideJson {
            product_dim: s.product_dim,
            dim_bound: s.dim_bound,
            zero_divisors: s.zero_divisors,
            inverses: s.inverses,
            holds: s.holds(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationJson {
    pub inverse_length: usize,
    pub holding: Vec<u8>,
    pub case1: Option<DecompositionJson>,
    pub case1_predicted: Option<usize>,
    pub case2: SideJson,
    pub case3: SideJson,
}

impl From<&Classification> for ClassificationJson {
    fn from(c: &Classification) -> Self {
        ClassificationJson {
            inverse_length: c.inverse_length,
            holding: c.holding(),
            case1: c.case1.as_ref().map(Into::into),
            case1_predicted: c.case1_predicted,
            case2: (&c.case2).into(),
            case3: (&c.case3).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftJson {
    pub max_index: usize,
    pub b1f1_identity: bool,
    pub b2f2_identity: bool,
    pub b1f2_zero: bool,
    pub b2f1_zero: bool,
    pub resolution_of_identity: bool,
    pub delta_after_inverse: bool,
    pub inverse_after_delta: bool,
    pub max_support: usize,
    /// `[N, det vanishes identically]` per truncation size.
    pub nonregular: Vec<(usize, bool)>,
}

impl ShiftJson {
    pub fn new(r: &RelationReport, nonregular: Vec<(usize, bool)>) -> Self {
        ShiftJson {
            max_index: r.max_index,
            b1f1_identity: r.b1f1_identity,
            b2f2_identity: r.b2f2_identity,
            b1f2_zero: r.b1f2_zero,
            b2f1_zero: r.b2f1_zero,
            resolution_of_identity: r.resolution_of_identity,
            delta_after_inverse: r.delta_after_inverse,
            inverse_after_delta: r.inverse_after_delta,
            max_support: r.max_support,
            nonregular,
        }
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("wire types serialize")
}
