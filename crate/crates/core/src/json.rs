//! Serializable report shapes shared by the CLI and the test suites.
//!
//! Schema conventions, kept deliberately small and stable:
//! - valuations and slopes are exact rationals `{num, den}`, never floats;
//! - field elements are little-endian base-p digit lists;
//! - series are `{p, residue_degree, ram_index, v0, prec, coeffs}` with
//!   `coeffs` the digit lists at π-exponents v0, v0+1, ...; exponents from
//!   the end of `coeffs` up to `prec` are known zeros, and `prec: null`
//!   marks an exact series;
//! - polynomials in θ are digit lists from the constant term up.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::algebra::field::FieldElement;
use crate::algebra::poly::Polynomial;
use crate::localfield::series::LaurentSeries;
use crate::newton::{NewtonPolygon, ReconstructionReport, RhCheck, Verdict, ZeroReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDto {
    pub num: i64,
    pub den: i64,
}

impl From<Ratio<i64>> for RationalDto {
    fn from(r: Ratio<i64>) -> Self {
        RationalDto {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

impl From<(i64, i64)> for RationalDto {
    fn from((num, den): (i64, i64)) -> Self {
        RationalDto { num, den }
    }
}

fn digits(e: &FieldElement) -> Vec<u32> {
    e.coeffs().to_vec()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolynomialDto {
    pub p: u32,
    pub residue_degree: u32,
    /// Little-endian digit lists, constant θ-coefficient first.
    pub coeffs: Vec<Vec<u32>>,
    /// Human-readable rendering in the CLI grammar.
    pub text: String,
}

impl From<&Polynomial> for PolynomialDto {
    fn from(poly: &Polynomial) -> Self {
        PolynomialDto {
            p: poly.field().characteristic(),
            residue_degree: poly.field().degree(),
            coeffs: poly.coeffs().iter().map(digits).collect(),
            text: poly.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesDto {
    pub p: u32,
    pub residue_degree: u32,
    pub ram_index: u32,
    pub v0: i64,
    pub prec: Option<i64>,
    pub coeffs: Vec<Vec<u32>>,
}

impl From<&LaurentSeries> for SeriesDto {
    fn from(s: &LaurentSeries) -> Self {
        let desc = s.descriptor();
        let v0 = s.valuation().unwrap_or_else(|| s.prec().unwrap_or(0));
        let hi = s.support().last().copied().unwrap_or(v0 - 1);
        let coeffs = (v0..=hi)
            .map(|exp| digits(&s.coeff_at(exp).expect("window coefficient")))
            .collect();
        SeriesDto {
            p: desc.residue().characteristic(),
            residue_degree: desc.residue().degree(),
            ram_index: desc.ram_index(),
            v0,
            prec: s.prec(),
            coeffs,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroReportDto {
    pub valuation: RationalDto,
    pub count: u32,
    pub verdict: Verdict,
    pub residue_field_degree: Option<u32>,
    pub witness: Option<SeriesDto>,
    pub iterations: Vec<i64>,
}

impl From<&ZeroReport> for ZeroReportDto {
    fn from(r: &ZeroReport) -> Self {
        ZeroReportDto {
            valuation: r.valuation.into(),
            count: r.count,
            verdict: r.verdict.clone(),
            residue_field_degree: r.residue_field_degree,
            witness: r.witness.as_ref().map(SeriesDto::from),
            iterations: r.iterations.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexDto {
    pub index: usize,
    pub valuation: RationalDto,
}

#[derive(Debug, Clone, Serialize)]
pub struct SegmentDto {
    pub start_index: usize,
    pub length: usize,
    pub slope: RationalDto,
}

#[derive(Debug, Clone, Serialize)]
pub struct NewtonPolygonDto {
    pub input_len: usize,
    pub ram_index: u32,
    pub vertices: Vec<VertexDto>,
    pub segments: Vec<SegmentDto>,
    pub rh_check: RhCheck,
}

impl From<&NewtonPolygon> for NewtonPolygonDto {
    fn from(np: &NewtonPolygon) -> Self {
        NewtonPolygonDto {
            input_len: np.input_len(),
            ram_index: np.ram_index(),
            vertices: np
                .vertices_theta()
                .into_iter()
                .map(|(index, v)| VertexDto {
                    index,
                    valuation: v.into(),
                })
                .collect(),
            segments: np
                .segments()
                .iter()
                .map(|s| SegmentDto {
                    start_index: s.start_index,
                    length: s.length,
                    slope: s.slope.into(),
                })
                .collect(),
            rh_check: np.rh_check(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionDto {
    pub matches: bool,
    pub checked_prec: i64,
    pub first_mismatch: Option<usize>,
}

impl From<&ReconstructionReport> for ReconstructionDto {
    fn from(r: &ReconstructionReport) -> Self {
        ReconstructionDto {
            matches: r.matches,
            checked_prec: r.checked_prec,
            first_mismatch: r.first_mismatch,
        }
    }
}
