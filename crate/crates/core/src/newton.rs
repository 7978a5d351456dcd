//! Newton polygons over the local fields, zero extraction by Newton
//! iteration, and the ramification classifier.
//!
//! The polygon of Σ c_i x^i is the lower convex hull of the points
//! (i, v(c_i)) with v(θ^{-1}) = 1. A segment of slope λ and horizontal
//! length h certifies exactly h zeroes of valuation −λ (θ-normalized).
//! Integral slopes admit residual polynomials over the residue field;
//! fractional slopes are classified by their denominator alone: prime to p
//! means tame ramification of that index, divisible by p raises the wild
//! flag.
//!
//! Precision discipline: the hull is computed from coefficients whose
//! valuations are certain. A coefficient that is zero to precision N is
//! tolerated only when N is at or above the hull, where it cannot change
//! any segment; otherwise the polygon is refused rather than guessed.

use num_rational::Ratio;
use serde::Serialize;

use crate::algebra::field::{Embedding, FieldDescriptor, FieldElement, DEGREE_BOUND, ORDER_BOUND};
use crate::algebra::poly::Polynomial;
use crate::error::{Error, Result};
use crate::localfield::series::{LaurentSeries, LocalFieldDescriptor};
use crate::zeta::SpecialPolynomial;

/// A polynomial in x with Laurent-series coefficients over one local field.
#[derive(Debug, Clone)]
pub struct SeriesPolynomial {
    desc: LocalFieldDescriptor,
    coeffs: Vec<LaurentSeries>,
}

impl SeriesPolynomial {
    pub fn new(desc: &LocalFieldDescriptor, mut coeffs: Vec<LaurentSeries>) -> Self {
        for c in &coeffs {
            assert_eq!(c.descriptor(), desc, "descriptor mismatch");
        }
        while coeffs
            .last()
            .map_or(false, |c| c.is_exact() && c.is_zero_window())
        {
            coeffs.pop();
        }
        SeriesPolynomial {
            desc: desc.clone(),
            coeffs,
        }
    }

    /// Exact input: x-coefficients that are polynomials in θ.
    pub fn from_polynomials(desc: &LocalFieldDescriptor, polys: &[Polynomial]) -> Self {
        let coeffs = polys
            .iter()
            .map(|p| LaurentSeries::from_polynomial(desc, p))
            .collect();
        Self::new(desc, coeffs)
    }

    /// The special polynomial z(x,−k) over K = F_q((1/θ)).
    pub fn from_special(z: &SpecialPolynomial, field: &FieldDescriptor) -> Self {
        let desc = LocalFieldDescriptor::unramified(field);
        Self::from_polynomials(&desc, z.coeffs())
    }

    pub fn descriptor(&self) -> &LocalFieldDescriptor {
        &self.desc
    }

    pub fn coeffs(&self) -> &[LaurentSeries] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &LaurentSeries) -> LaurentSeries {
        let mut acc = LaurentSeries::zero(&self.desc);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = self.desc.residue();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let s = f.from_prime_subfield((i as u64 % f.characteristic() as u64) as u32);
                c.mul_scalar(&s)
            })
            .collect();
        SeriesPolynomial {
            desc: self.desc.clone(),
            coeffs,
        }
    }

    pub fn truncate_coeffs(&self, prec: i64) -> Self {
        SeriesPolynomial {
            desc: self.desc.clone(),
            coeffs: self.coeffs.iter().map(|c| c.truncated(prec)).collect(),
        }
    }

    pub fn map_residue(&self, emb: &Embedding, target: &LocalFieldDescriptor) -> Self {
        SeriesPolynomial {
            desc: target.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.map_residue(emb, target))
                .collect(),
        }
    }

    /// f(x + a) by repeated synthetic division: round r divides the
    /// running quotient by (x − a) and keeps the remainder as the r-th
    /// output coefficient.
    pub fn shift_arg(&self, a: &LaurentSeries) -> Self {
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        let mut out = Vec::with_capacity(n);
        for round in 0..n {
            let mut carry = LaurentSeries::zero(&self.desc);
            for i in (round..n).rev() {
                let q = rem[i].add(&carry);
                carry = q.mul(a);
                rem[i] = q;
            }
            out.push(rem[round].clone());
        }
        SeriesPolynomial {
            desc: self.desc.clone(),
            coeffs: out,
        }
    }
}

/// One segment of the lower hull: slope in θ-normalized units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub start_index: usize,
    pub length: usize,
    /// Δv_π per x-index (exact rational, π-units).
    pub slope_pi: Ratio<i64>,
    /// θ-normalized slope = slope_pi / e.
    pub slope: Ratio<i64>,
}

#[derive(Debug, Clone)]
pub struct NewtonPolygon {
    input_len: usize,
    ram_index: u32,
    /// (index, valuation in π-units) of hull vertices.
    vertices: Vec<(usize, i64)>,
    segments: Vec<Segment>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RhCheck {
    pub all_lengths_one: bool,
    pub all_slopes_integral: bool,
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[(usize, i64)] {
        &self.vertices
    }

    /// Vertices with θ-normalized valuations.
    pub fn vertices_theta(&self) -> Vec<(usize, Ratio<i64>)> {
        self.vertices
            .iter()
            .map(|&(i, v)| (i, Ratio::new(v, self.ram_index as i64)))
            .collect()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn input_len(&self) -> usize {
        self.input_len
    }

    pub fn ram_index(&self) -> u32 {
        self.ram_index
    }

    /// Theorem-style summary: every zero determined by its absolute value
    /// (all lengths one), and all slopes integral.
    pub fn rh_check(&self) -> RhCheck {
        RhCheck {
            all_lengths_one: self.segments.iter().all(|s| s.length == 1),
            all_slopes_integral: self.segments.iter().all(|s| s.slope.is_integer()),
        }
    }
}

/// Valuation evidence for one coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CoeffVal {
    /// Exactly zero: the point does not exist.
    Zero,
    /// Known valuation in π-units.
    Known(i64),
    /// Zero to precision N: true valuation ≥ N.
    AtLeast(i64),
}

fn coeff_val(c: &LaurentSeries) -> CoeffVal {
    match c.valuation() {
        Some(v) => CoeffVal::Known(v),
        None => match c.prec() {
            None => CoeffVal::Zero,
            Some(n) => CoeffVal::AtLeast(n),
        },
    }
}

/// Lower convex hull of the coefficient valuations.
pub fn newton_polygon(poly: &SeriesPolynomial) -> Result<NewtonPolygon> {
    let coeffs = poly.coeffs();
    if coeffs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let vals: Vec<CoeffVal> = coeffs.iter().map(coeff_val).collect();
    match vals[0] {
        CoeffVal::Known(_) => {}
        CoeffVal::Zero => return Err(Error::VanishingConstantTerm),
        CoeffVal::AtLeast(_) => return Err(Error::InsufficientPrecision(0)),
    }
    let last = vals.len() - 1;
    if vals.len() > 1 {
        match vals[last] {
            CoeffVal::Known(_) => {}
            // an unknown top coefficient leaves the degree uncertain
            CoeffVal::AtLeast(_) => return Err(Error::InsufficientPrecision(last)),
            CoeffVal::Zero => unreachable!("constructor trims exact zero leads"),
        }
    }
    let points: Vec<(usize, i64)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| match v {
            CoeffVal::Known(val) => Some((i, *val)),
            _ => None,
        })
        .collect();
    // monotone chain, keeping the lower hull; collinear points are dropped
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &(x, y) in &points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // pop if (x2,y2) is not strictly below the chord (x1,y1)-(x,y)
            let lhs = (y2 - y1) as i128 * (x - x1) as i128;
            let rhs = (y - y1) as i128 * (x2 - x1) as i128;
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    // certify: every unknown point must sit at or above the hull
    for (i, v) in vals.iter().enumerate() {
        if let CoeffVal::AtLeast(n) = v {
            let h = hull_height(&hull, i);
            if let Some(h) = h {
                // n ≥ h ⟺ n·den ≥ num
                if Ratio::from_integer(*n) < h {
                    return Err(Error::InsufficientPrecision(i));
                }
            }
        }
    }
    let e = poly.descriptor().ram_index();
    let mut segments = Vec::new();
    for w in hull.windows(2) {
        let (i0, v0) = w[0];
        let (i1, v1) = w[1];
        let slope_pi = Ratio::new(v1 - v0, (i1 - i0) as i64);
        segments.push(Segment {
            start_index: i0,
            length: i1 - i0,
            slope_pi,
            slope: slope_pi / Ratio::from_integer(e as i64),
        });
    }
    Ok(NewtonPolygon {
        input_len: coeffs.len(),
        ram_index: e,
        vertices: hull,
        segments,
    })
}

/// Height of the hull above index i (None outside the hull's span).
fn hull_height(hull: &[(usize, i64)], i: usize) -> Option<Ratio<i64>> {
    if hull.is_empty() {
        return None;
    }
    for w in hull.windows(2) {
        let (x0, y0) = w[0];
        let (x1, y1) = w[1];
        if x0 <= i && i <= x1 {
            return Some(
                Ratio::from_integer(y0)
                    + Ratio::new((y1 - y0) * (i - x0) as i64, (x1 - x0) as i64),
            );
        }
    }
    if hull.len() == 1 && hull[0].0 == i {
        return Some(Ratio::from_integer(hull[0].1));
    }
    None
}

/// Residue-field polynomial carried by a segment with integral θ-slope:
/// the residues of the on-line coefficients after scaling each to
/// valuation zero.
pub fn residual_polynomial(poly: &SeriesPolynomial, segment: &Segment) -> Result<Polynomial> {
    if !segment.slope.is_integer() {
        return Err(Error::FractionalSlope);
    }
    let f = poly.descriptor().residue();
    let s_pi = *segment.slope_pi.numer(); // den = 1 for integral θ-slopes
    let base = coeff_val(&poly.coeffs()[segment.start_index]);
    let v_start = match base {
        CoeffVal::Known(v) => v,
        _ => return Err(Error::InsufficientPrecision(segment.start_index)),
    };
    let mut out = Vec::with_capacity(segment.length + 1);
    for t in 0..=segment.length {
        let idx = segment.start_index + t;
        let line = v_start + s_pi * t as i64;
        let c = poly.coeffs()[idx]
            .coeff_at(line)
            .ok_or(Error::InsufficientPrecision(idx))?;
        out.push(c);
    }
    let _ = f;
    Ok(Polynomial::from_coeffs(f, out))
}

/// Refines an approximate simple root by Newton iteration until
/// v(f(x)) ≥ prec (π-units). Returns the witness and the log of residual
/// valuations; the witness is truncated to its certified digits.
pub fn newton_refine(
    poly: &SeriesPolynomial,
    start: &LaurentSeries,
    prec: i64,
) -> Result<(LaurentSeries, Vec<i64>)> {
    let deriv = poly.derivative();
    let mut x = start.clone();
    let mut log = Vec::new();
    let mut last: Option<i64> = None;
    for _ in 0..128 {
        let fx = poly.eval(&x);
        match fx.valuation() {
            None => {
                let n = fx.prec().unwrap_or(i64::MAX);
                if n >= prec {
                    return finish_root(poly, &deriv, x, prec, log);
                }
                // residual invisible inside the window: cannot certify
                return Err(Error::Stalled(n));
            }
            Some(v) => {
                log.push(v);
                if v >= prec {
                    return finish_root(poly, &deriv, x, prec, log);
                }
                if let Some(prev) = last {
                    if v <= prev {
                        return Err(Error::Stalled(v));
                    }
                }
                last = Some(v);
                let dfx = deriv.eval(&x);
                if dfx.is_zero_window() {
                    return Err(Error::Stalled(v));
                }
                let step = fx.mul(&dfx.inv()?);
                x = x.sub(&step);
            }
        }
    }
    Err(Error::Stalled(last.unwrap_or(0)))
}

fn finish_root(
    poly: &SeriesPolynomial,
    deriv: &SeriesPolynomial,
    x: LaurentSeries,
    prec: i64,
    log: Vec<i64>,
) -> Result<(LaurentSeries, Vec<i64>)> {
    // v(f(x)) ≥ prec is already certified by the caller. A perturbation δ
    // of the root moves f by f'(ρ)·δ, so the witness keeps prec − v(f'(ρ))
    // digits. Re-evaluation can only narrow the visible window, so only a
    // definite nonzero residual below prec counts as a failure.
    let dv = deriv.eval(&x).valuation().unwrap_or(0);
    let witness = x.truncated(prec - dv);
    let check = poly.eval(&witness);
    if let Some(v) = check.valuation() {
        if v < prec {
            return Err(Error::Stalled(v));
        }
    }
    Ok((witness, log))
}

/// Extracts the unique root of a length-one segment with integral slope.
pub fn extract_root(
    poly: &SeriesPolynomial,
    segment: &Segment,
    prec: i64,
) -> Result<(LaurentSeries, Vec<i64>)> {
    assert_eq!(segment.length, 1, "segment must have length one");
    if !segment.slope.is_integer() {
        return Err(Error::FractionalSlope);
    }
    let work = working_precision(poly, prec);
    let poly = poly.truncate_coeffs(work);
    let i0 = segment.start_index;
    let c0 = &poly.coeffs()[i0];
    let c1 = &poly.coeffs()[i0 + 1];
    let start = c0.mul(&c1.inv()?).neg();
    newton_refine(&poly, &start, prec)
}

/// Working absolute precision: the target plus slack for coefficient
/// spread and slope, so that division losses never eat into the target.
fn working_precision(poly: &SeriesPolynomial, prec: i64) -> i64 {
    let mut lo = 0i64;
    let mut hi = 0i64;
    for c in poly.coeffs() {
        if let Some(v) = c.valuation() {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    prec + (hi - lo) + 2 * poly.coeffs().len() as i64 + 24
}

/// Ramification verdict for a group of zeroes sharing one valuation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index")]
pub enum Verdict {
    /// Length-one integral segment: the zero is simple and lies in the
    /// coefficient field.
    UnramifiedSimple,
    /// Hensel-lifted from a separable residual root, possibly in an
    /// unramified extension.
    Unramified,
    /// Fractional slope with denominator prime to p.
    TameRamified(u32),
    /// Fractional slope with denominator divisible by p.
    WildFlag,
    /// Recursion or precision budget exhausted.
    Undetermined,
}

#[derive(Debug, Clone)]
pub struct ZeroReport {
    /// θ-normalized valuation of the zeroes.
    pub valuation: Ratio<i64>,
    /// Zeroes accounted for by this report (with multiplicity). Reports of
    /// one segment sum to its length.
    pub count: u32,
    pub verdict: Verdict,
    /// Degree over F_p of the witness residue field, for unramified verdicts.
    pub residue_field_degree: Option<u32>,
    pub witness: Option<LaurentSeries>,
    /// v_π(f(x_n)) along the Newton iteration.
    pub iterations: Vec<i64>,
}

/// Classifies every zero of the polynomial by Newton polygon segment.
///
/// Per segment: length-one integral slopes yield witnesses in the
/// coefficient field; longer integral segments factor through the residual
/// polynomial, lifting separable roots in their splitting fields and
/// recursing (up to `depth`) on repeated ones; fractional slopes are
/// classified by their denominator.
pub fn classify_zeroes(
    poly: &SeriesPolynomial,
    prec: i64,
    depth: u32,
) -> Result<Vec<ZeroReport>> {
    let mut coeffs = poly.coeffs().to_vec();
    // zeroes at x = 0 are not zeroes of the entire function; strip them
    let mut lead = 0usize;
    while lead < coeffs.len() && coeffs[lead].is_exact() && coeffs[lead].is_zero_window() {
        lead += 1;
    }
    coeffs.drain(..lead);
    if coeffs.len() <= 1 {
        return Ok(Vec::new());
    }
    let poly = SeriesPolynomial::new(poly.descriptor(), coeffs);
    classify_inner(&poly, prec, depth)
}

fn classify_inner(poly: &SeriesPolynomial, prec: i64, depth: u32) -> Result<Vec<ZeroReport>> {
    let np = newton_polygon(poly)?;
    let p = poly.descriptor().residue().characteristic();
    let mut reports = Vec::new();
    for segment in np.segments() {
        if !segment.slope.is_integer() {
            let denom = *segment.slope.denom() as u32;
            let verdict = if denom % p == 0 {
                Verdict::WildFlag
            } else {
                Verdict::TameRamified(denom)
            };
            reports.push(ZeroReport {
                valuation: -segment.slope,
                count: segment.length as u32,
                verdict,
                residue_field_degree: None,
                witness: None,
                iterations: Vec::new(),
            });
            continue;
        }
        if segment.length == 1 {
            let (witness, iterations) = extract_root(poly, segment, prec)?;
            reports.push(ZeroReport {
                valuation: -segment.slope,
                count: 1,
                verdict: Verdict::UnramifiedSimple,
                residue_field_degree: Some(poly.descriptor().residue().degree()),
                witness: Some(witness),
                iterations,
            });
            continue;
        }
        classify_long_segment(poly, segment, prec, depth, &mut reports)?;
    }
    Ok(reports)
}

/// Distinct roots of a residue-field polynomial across unramified
/// extensions, with multiplicities: (extension, embedding, root, mult).
fn residue_roots(
    res: &Polynomial,
) -> Result<Vec<(FieldDescriptor, Embedding, FieldElement, u32)>> {
    let base = res.field().clone();
    let h = res.degree().unwrap_or(0);
    let mut found = Vec::new();
    let mut accounted = 0u32;
    for r in 1..=h.max(1) as u32 {
        let n_ext = base.degree() * r;
        if n_ext > DEGREE_BOUND || (base.characteristic() as u128).pow(n_ext) > ORDER_BOUND as u128
        {
            break;
        }
        let ext = FieldDescriptor::new(base.characteristic(), n_ext)?;
        let emb = Embedding::new(&base, &ext)?;
        let res_ext = res.map_coeffs(&emb);
        let sub_steps = base.degree(); // Frobenius steps generating Gal(ext/base)
        for x in ext.elements()? {
            if !res_ext.eval(&x).is_zero() {
                continue;
            }
            // keep only roots of degree exactly r over the base
            let mut deg = r;
            for r2 in 1..r {
                if r % r2 == 0 && ext.frobenius_iter(&x, sub_steps * r2) == x {
                    deg = r2;
                    break;
                }
            }
            if deg != r {
                continue;
            }
            // multiplicity by repeated division by (u − x)
            let mut m = 0u32;
            let linear = Polynomial::from_coeffs(&ext, vec![ext.neg(&x), ext.one()]);
            let mut g = res_ext.clone();
            loop {
                let (q, rem) = g.divrem(&linear);
                if !rem.is_zero() {
                    break;
                }
                m += 1;
                g = q;
            }
            debug_assert!(m > 0);
            found.push((ext.clone(), emb.clone(), x, m));
            accounted += m * r;
        }
        if accounted as usize >= h {
            break;
        }
    }
    Ok(found)
}

fn classify_long_segment(
    poly: &SeriesPolynomial,
    segment: &Segment,
    prec: i64,
    depth: u32,
    reports: &mut Vec<ZeroReport>,
) -> Result<()> {
    let residual = residual_polynomial(poly, segment)?;
    let desc = poly.descriptor();
    let valuation = -segment.slope;
    let v_root_pi = -*segment.slope_pi.numer();
    let roots = residue_roots(&residual)?;
    let accounted: u32 = roots.iter().map(|(_, _, _, m)| *m).sum::<u32>()
        * 1;
    let h = segment.length as u32;
    let mut emitted = 0u32;
    for (ext, emb, root, mult) in &roots {
        let target = if ext.degree() == desc.residue().degree() {
            desc.clone()
        } else {
            LocalFieldDescriptor::tame(ext, desc.ram_index(), emb.apply(desc.twist()))
                .unwrap_or_else(|_| LocalFieldDescriptor::unramified(ext))
        };
        let lifted_poly;
        let local: &SeriesPolynomial = if *ext == *desc.residue() {
            poly
        } else {
            lifted_poly = poly.map_residue(emb, &target);
            &lifted_poly
        };
        let approx = LaurentSeries::monomial(&target, root.clone(), v_root_pi);
        if *mult == 1 {
            let work = working_precision(local, prec);
            match newton_refine(&local.truncate_coeffs(work), &approx, prec) {
                Ok((witness, iterations)) => {
                    reports.push(ZeroReport {
                        valuation,
                        count: 1,
                        verdict: Verdict::Unramified,
                        residue_field_degree: Some(ext.degree()),
                        witness: Some(witness),
                        iterations,
                    });
                    emitted += 1;
                }
                Err(e) if e.is_precision_failure() => {
                    reports.push(ZeroReport {
                        valuation,
                        count: 1,
                        verdict: Verdict::Undetermined,
                        residue_field_degree: Some(ext.degree()),
                        witness: None,
                        iterations: Vec::new(),
                    });
                    emitted += 1;
                }
                Err(e) => return Err(e),
            }
            continue;
        }
        // repeated residual root: shift to the naive lift and recurse on
        // the strictly finer part of the shifted polygon
        if depth == 0 {
            reports.push(ZeroReport {
                valuation,
                count: *mult,
                verdict: Verdict::Undetermined,
                residue_field_degree: Some(ext.degree()),
                witness: Some(approx.clone()),
                iterations: Vec::new(),
            });
            emitted += mult;
            continue;
        }
        // the naive lift is an exact monomial: shifting exact coefficients
        // keeps them exact, which the x^j detection below depends on
        let mut shifted = local.shift_arg(&approx);
        // roots exactly equal to the lift show up as powers of x
        let mut exact_at_lift = 0u32;
        {
            let mut cs = shifted.coeffs().to_vec();
            let mut strip = 0usize;
            while strip < cs.len() && cs[strip].is_exact() && cs[strip].is_zero_window() {
                strip += 1;
            }
            if strip > 0 {
                cs.drain(..strip);
                exact_at_lift = strip as u32;
                shifted = SeriesPolynomial::new(&target, cs);
            }
        }
        if exact_at_lift > 0 {
            reports.push(ZeroReport {
                valuation,
                count: exact_at_lift,
                verdict: Verdict::Unramified,
                residue_field_degree: Some(ext.degree()),
                witness: Some(approx.clone()),
                iterations: Vec::new(),
            });
            emitted += exact_at_lift;
        }
        let remaining = mult - exact_at_lift;
        if remaining == 0 {
            continue;
        }
        match classify_inner(&shifted, prec, depth - 1) {
            Ok(subreports) => {
                let mut got = 0u32;
                for sub in subreports {
                    if sub.valuation <= valuation {
                        continue; // the other clusters, already handled
                    }
                    got += sub.count;
                    reports.push(ZeroReport {
                        valuation,
                        count: sub.count,
                        verdict: sub.verdict,
                        residue_field_degree: sub.residue_field_degree,
                        witness: sub.witness.map(|w| w.add(&approx)),
                        iterations: sub.iterations,
                    });
                }
                if got < remaining {
                    reports.push(ZeroReport {
                        valuation,
                        count: remaining - got,
                        verdict: Verdict::Undetermined,
                        residue_field_degree: Some(ext.degree()),
                        witness: Some(approx.clone()),
                        iterations: Vec::new(),
                    });
                }
                emitted += remaining.max(got);
            }
            Err(e) if e.is_precision_failure() => {
                reports.push(ZeroReport {
                    valuation,
                    count: remaining,
                    verdict: Verdict::Undetermined,
                    residue_field_degree: Some(ext.degree()),
                    witness: Some(approx.clone()),
                    iterations: Vec::new(),
                });
                emitted += remaining;
            }
            Err(e) => return Err(e),
        }
    }
    let _ = accounted;
    if emitted < h {
        // splitting field out of reach: report the rest untouched
        reports.push(ZeroReport {
            valuation,
            count: h - emitted,
            verdict: Verdict::Undetermined,
            residue_field_degree: None,
            witness: None,
            iterations: Vec::new(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionReport {
    pub matches: bool,
    /// Absolute π-precision through which every coefficient was compared.
    pub checked_prec: i64,
    pub first_mismatch: Option<usize>,
}

/// Rebuilds c_0·Π(1 − x/ρ_i) from the witnesses and compares it with the
/// input coefficientwise to the witnesses' precision.
pub fn reconstruct(poly: &SeriesPolynomial, reports: &[ZeroReport]) -> Result<ReconstructionReport> {
    let desc = poly.descriptor();
    let witness_count: u32 = reports.iter().map(|r| r.count).sum();
    if reports.iter().any(|r| r.witness.is_none())
        || witness_count as usize != poly.degree().unwrap_or(0)
    {
        return Err(Error::Parse(
            "reconstruction needs a witness for every zero".into(),
        ));
    }
    // compositum of all witness residue fields
    let p = desc.residue().characteristic();
    let mut n_top = desc.residue().degree();
    for r in reports {
        let w = r.witness.as_ref().unwrap();
        n_top = lcm_u32(n_top, w.descriptor().residue().degree());
    }
    let top_field = FieldDescriptor::new(p, n_top)?;
    let top = if n_top == desc.residue().degree() {
        desc.clone()
    } else {
        let emb = Embedding::new(desc.residue(), &top_field)?;
        LocalFieldDescriptor::tame(&top_field, desc.ram_index(), emb.apply(desc.twist()))
            .unwrap_or_else(|_| LocalFieldDescriptor::unramified(&top_field))
    };
    let up = |s: &LaurentSeries| -> Result<LaurentSeries> {
        if s.descriptor() == &top {
            Ok(s.clone())
        } else {
            let emb = Embedding::new(s.descriptor().residue(), &top_field)?;
            Ok(s.map_residue(&emb, &top))
        }
    };
    let mut product = vec![LaurentSeries::one(&top)];
    for r in reports {
        let w = up(r.witness.as_ref().unwrap())?;
        let w_inv = if w.is_exact() && w.support().len() > 1 {
            w.truncated(w.valuation().unwrap_or(0) + 64).inv()?
        } else {
            w.inv()?
        };
        for _ in 0..r.count {
            // multiply by (1 − x/ρ)
            let neg_inv = w_inv.neg();
            let mut next = vec![LaurentSeries::zero(&top); product.len() + 1];
            for (i, c) in product.iter().enumerate() {
                next[i] = next[i].add(c);
                next[i + 1] = next[i + 1].add(&c.mul(&neg_inv));
            }
            product = next;
        }
    }
    let c0 = up(&poly.coeffs()[0])?;
    let mut checked_prec = i64::MAX;
    let mut first_mismatch = None;
    for (i, got) in product.iter().enumerate() {
        let got = got.mul(&c0);
        let want = up(&poly.coeffs()[i])?;
        if let Some(n) = got.prec().into_iter().chain(want.prec()).min() {
            checked_prec = checked_prec.min(n);
        }
        if !got.agrees_with(&want) && first_mismatch.is_none() {
            first_mismatch = Some(i);
        }
    }
    Ok(ReconstructionReport {
        matches: first_mismatch.is_none(),
        checked_prec,
        first_mismatch,
    })
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}
