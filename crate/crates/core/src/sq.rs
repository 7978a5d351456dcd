//! The digit-permutation group acting on Z_p by permuting base-q digits,
//! a pinned monomial action on Laurent polynomials, and the exploratory
//! zero-orbit comparison.
//!
//! A finitely supported permutation ρ of {0,1,2,...} acts by
//! ρ_*(Σ c_i q^i) = Σ c_i q^{ρ(i)}. Constant tails are blind to the
//! action, so nonnegative integers map to nonnegative integers and
//! negative to negative.
//!
//! Two candidate F_q-linear monomial actions on K are exposed, because no
//! single one is pinned by the theory: `InverseExponents` transports the
//! expansion index of θ^{-1} (θ^{-n} ↦ θ^{-ρ_*(n)}, n ≥ 0), while
//! `DirectExponents` transports the θ-exponent itself through the p-adic
//! action (θ^{m} ↦ θ^{ρ_*(m)}, any integer m, negative m via the all-(q−1)
//! tail). The orbit experiment reports both and asserts nothing.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::field::FieldDescriptor;
use crate::algebra::poly::DEFAULT_ENUM_BUDGET;
use crate::error::{Error, Result};
use crate::localfield::digits::PAdicDigits;
use crate::localfield::series::{LaurentSeries, LocalFieldDescriptor};
use crate::newton::{classify_zeroes, SeriesPolynomial, Verdict};
use crate::zeta::special_polynomial_with_budget;

/// A permutation of digit positions, identity off its finite support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitPermutation {
    map: BTreeMap<u32, u32>,
}

impl DigitPermutation {
    pub fn identity() -> Self {
        DigitPermutation {
            map: BTreeMap::new(),
        }
    }

    /// Builds from (i, ρ(i)) pairs; the support must be a bijection of a
    /// set onto itself.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(i, j) in pairs {
            if map.insert(i, j).is_some() {
                return Err(Error::Parse(format!("position {i} mapped twice")));
            }
        }
        let mut domain: Vec<u32> = map.keys().copied().collect();
        let mut image: Vec<u32> = map.values().copied().collect();
        domain.sort_unstable();
        image.sort_unstable();
        image.dedup();
        if domain != image {
            return Err(Error::Parse(
                "support is not a permutation: domain and image differ".into(),
            ));
        }
        map.retain(|i, j| i != j);
        Ok(DigitPermutation { map })
    }

    /// A transposition (i j).
    pub fn transposition(i: u32, j: u32) -> Self {
        if i == j {
            return Self::identity();
        }
        Self::from_pairs(&[(i, j), (j, i)]).unwrap()
    }

    /// Parses "0>1,1>0".
    pub fn parse(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (a, b) = part
                .split_once('>')
                .ok_or_else(|| Error::Parse(format!("expected i>j, got {part:?}")))?;
            let i = a.trim().parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?;
            let j = b.trim().parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?;
            pairs.push((i, j));
        }
        Self::from_pairs(&pairs)
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.map.get(&i).copied().unwrap_or(i)
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Self) -> Self {
        let mut support: Vec<u32> = self.map.keys().chain(other.map.keys()).copied().collect();
        support.sort_unstable();
        support.dedup();
        let pairs: Vec<(u32, u32)> = support
            .iter()
            .map(|&i| (i, self.apply(other.apply(i))))
            .collect();
        Self::from_pairs(&pairs).expect("composition of bijections")
    }

    /// One past the largest moved position (0 for the identity).
    pub fn window(&self) -> u32 {
        self.map.keys().copied().max().map_or(0, |m| m + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }
}

/// Hard cap on digit windows, against absurd supports.
const MAX_WINDOW: u32 = 1 << 20;

/// ρ_*(y): permutes the base-q digits, the tail unchanged.
pub fn act_padic(rho: &DigitPermutation, y: &PAdicDigits) -> Result<PAdicDigits> {
    let window = rho.window().max(y.explicit_digits().len() as u32);
    if window > MAX_WINDOW {
        return Err(Error::WindowExceeded);
    }
    let padded = y.padded(window as usize);
    let mut out = vec![0u32; window as usize];
    for (i, &d) in padded.iter().enumerate() {
        out[rho.apply(i as u32) as usize] = d;
    }
    PAdicDigits::new(y.base(), out, y.tail())
}

/// ρ_* on an integer, through its base-q digits.
pub fn act_integer(rho: &DigitPermutation, q: u32, y: i64) -> Result<i64> {
    act_padic(rho, &PAdicDigits::from_int(q, y))?.to_int()
}

/// Which exponent bookkeeping the monomial action transports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MonomialAction {
    /// θ^{-n} ↦ θ^{-ρ_*(n)} on series in θ^{-1} (n ≥ 0).
    InverseExponents,
    /// θ^{m} ↦ θ^{ρ_*(m)} for any integer θ-exponent m.
    DirectExponents,
}

/// The F_q-linear monomial action on a finite (exact) series over K.
pub fn act_laurent(
    rho: &DigitPermutation,
    s: &LaurentSeries,
    mode: MonomialAction,
) -> Result<LaurentSeries> {
    if !s.is_exact() {
        return Err(Error::TruncationRequired);
    }
    let desc = s.descriptor();
    if desc.ram_index() != 1 {
        return Err(Error::DescriptorMismatch);
    }
    let q = u32::try_from(desc.residue().order()).map_err(|_| Error::Overflow)?;
    let mut terms = Vec::new();
    for n in s.support() {
        let c = s.coeff_at(n).unwrap();
        let image = match mode {
            MonomialAction::InverseExponents => {
                if n < 0 {
                    return Err(Error::ExponentOutsideWindow);
                }
                act_integer(rho, q, n)?
            }
            // π-exponent n is θ-exponent −n
            MonomialAction::DirectExponents => -act_integer(rho, q, -n)?,
        };
        terms.push((image, c));
    }
    Ok(LaurentSeries::from_terms(desc, &terms))
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitDistance {
    /// θ-valuation of the source zero of z_k.
    pub source_valuation: (i64, i64),
    /// Best (largest) valuation of image − candidate over the zeroes of
    /// the target polynomial; None when they agree through the whole
    /// comparison window.
    pub nearest_distance: Option<(i64, i64)>,
    /// True when some target zero matches through the window.
    pub matched_to_precision: bool,
    /// Absolute π-precision of the comparison window.
    pub window: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitModeReport {
    pub mode: MonomialAction,
    pub distances: Vec<OrbitDistance>,
}

/// Data-only comparison of the zeroes of z_k and z_{ρ_*(k)}.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub k: u64,
    pub k_image: u64,
    /// θ-valuations of the zeroes on both sides, in polygon order.
    pub source_valuations: Vec<(i64, i64)>,
    pub target_valuations: Vec<(i64, i64)>,
    pub valuations_agree: bool,
    pub modes: Vec<OrbitModeReport>,
}

/// Computes zero witnesses of z_k and z_{ρ_*(k)} and reports, for both
/// monomial actions, how close each transported zero lands to the target
/// zero set. Purely observational: nothing here asserts the action maps
/// zeroes to zeroes.
pub fn zero_orbit_experiment(
    field: &FieldDescriptor,
    k: u64,
    rho: &DigitPermutation,
    prec: i64,
    depth: u32,
) -> Result<OrbitReport> {
    let q = u32::try_from(field.order()).map_err(|_| Error::Overflow)?;
    let k_image_i = act_integer(rho, q, i64::try_from(k).map_err(|_| Error::Overflow)?)?;
    let k_image = u64::try_from(k_image_i).map_err(|_| Error::Overflow)?;

    let witnesses = |kk: u64| -> Result<Vec<LaurentSeries>> {
        let z = special_polynomial_with_budget(field, kk, DEFAULT_ENUM_BUDGET)?;
        let sp = SeriesPolynomial::from_special(&z, field);
        let reports = classify_zeroes(&sp, prec, depth)?;
        Ok(reports
            .into_iter()
            .filter(|r| {
                matches!(r.verdict, Verdict::UnramifiedSimple | Verdict::Unramified)
            })
            .filter_map(|r| r.witness)
            .collect())
    };
    let source = witnesses(k)?;
    let target = witnesses(k_image)?;

    let vals = |ws: &[LaurentSeries]| -> Vec<(i64, i64)> {
        ws.iter()
            .filter_map(|w| w.valuation_theta())
            .map(|r| (*r.numer(), *r.denom()))
            .collect()
    };
    let source_valuations = vals(&source);
    let target_valuations = vals(&target);

    let desc = LocalFieldDescriptor::unramified(field);
    let mut modes = Vec::new();
    for mode in [MonomialAction::InverseExponents, MonomialAction::DirectExponents] {
        let mut distances = Vec::new();
        for w in &source {
            let window = w.prec().unwrap_or(prec);
            // act on the known expansion as a finite sum of monomials
            let finite = LaurentSeries::from_terms(
                &desc,
                &w.support()
                    .into_iter()
                    .map(|n| (n, w.coeff_at(n).unwrap()))
                    .collect::<Vec<_>>(),
            );
            let image = act_laurent(rho, &finite, mode)?.truncated(window);
            let mut nearest: Option<i64> = None;
            let mut matched = false;
            for cand in &target {
                let diff = image.sub(cand);
                match diff.valuation() {
                    None => {
                        matched = true;
                        nearest = None;
                        break;
                    }
                    Some(v) => {
                        if nearest.map_or(true, |b| v > b) {
                            nearest = Some(v);
                        }
                    }
                }
            }
            let v_src = w.valuation_theta().unwrap();
            distances.push(OrbitDistance {
                source_valuation: (*v_src.numer(), *v_src.denom()),
                nearest_distance: nearest.map(|v| (v, desc.ram_index() as i64)),
                matched_to_precision: matched,
                window,
            });
        }
        modes.push(OrbitModeReport { mode, distances });
    }
    Ok(OrbitReport {
        k,
        k_image,
        valuations_agree: source_valuations == target_valuations,
        source_valuations,
        target_valuations,
        modes,
    })
}
