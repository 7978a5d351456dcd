//! The Carlitz exponential, its period, and the arithmetic of
//! K_1 = K(ξ̃), the totally tamely ramified extension of degree q−1 with
//! uniformizer relation π^{q−1} = −θ^{-1}.
//!
//! The period is the product formula ξ̃ = θ_1·θ·Π_{i≥1}(1 − θ^{1−q^i})^{-1}
//! with θ_1 = π^{-1} a fixed (q−1)-st root of −θ. The exponential is
//! exp_C(z) = Σ_i z^{q^i}/D_i with D_0 = 1 and D_i = (θ^{q^i} − θ)·D_{i-1}^q,
//! so deg D_i = i·q^i. Since v(ξ̃) = −q/(q−1) < 0, the early terms of
//! exp_C(ξ̃) have negative valuation and the vanishing of the sum is pure
//! cancellation; truncation indices therefore come from exact valuation
//! bookkeeping of z^{q^i}/D_i, never from "terms shrink" heuristics.
//!
//! All precisions in this module are θ-normalized; internally everything
//! runs in π-digits (e π-digits per θ-digit).

use num_rational::Ratio;
use serde::Serialize;

use crate::algebra::field::FieldDescriptor;
use crate::algebra::poly::Polynomial;
use crate::error::{Error, Result};
use crate::localfield::series::{LaurentSeries, LocalFieldDescriptor};

/// The base field F_q together with the descriptor of K_1.
#[derive(Debug, Clone)]
pub struct PeriodContext {
    field: FieldDescriptor,
    desc: LocalFieldDescriptor,
}

impl PeriodContext {
    pub fn new(field: &FieldDescriptor) -> Self {
        let q = field.order();
        let e = (q - 1).max(1) as u32;
        let minus_one = field.neg(&field.one());
        let desc = if e == 1 {
            LocalFieldDescriptor::unramified(field)
        } else {
            LocalFieldDescriptor::tame(field, e, minus_one).expect("q-1 is prime to p")
        };
        PeriodContext {
            field: field.clone(),
            desc,
        }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    /// K_1 = F_q((π)) with π^{q−1} = −θ^{-1} (π = θ^{-1} when q = 2).
    pub fn descriptor(&self) -> &LocalFieldDescriptor {
        &self.desc
    }

    /// θ_1 = π^{-1}, the pinned (q−1)-st root of −θ.
    pub fn theta_one(&self) -> LaurentSeries {
        LaurentSeries::monomial(&self.desc, self.field.one(), -1)
    }
}

/// The period ξ̃ to the requested θ-precision. Its valuation is exactly
/// −q/(q−1).
pub fn carlitz_period(ctx: &PeriodContext, prec: i64) -> Result<LaurentSeries> {
    if prec < 1 {
        return Err(Error::PrecisionUnderflow {
            requested: prec,
            achievable: 1,
        });
    }
    let e = ctx.desc.ram_index() as i64;
    let q = ctx.field.order() as i64;
    // relative π-precision; factor i is 1 + O(θ^{-(q^i−1)})
    let rel = e * (prec + q + 1);
    let theta = LaurentSeries::theta(&ctx.desc);
    let mut acc = ctx.theta_one().mul(&theta);
    let mut qi = q;
    loop {
        let drop = qi - 1; // θ-valuation of the factor's tail
        if e * drop > rel {
            break;
        }
        let factor = LaurentSeries::one(&ctx.desc)
            .sub(&LaurentSeries::theta_inv(&ctx.desc).pow(drop)?)
            .truncated(e * drop + rel);
        acc = acc.mul(&factor.inv()?);
        qi = qi.checked_mul(q).ok_or(Error::Overflow)?;
    }
    let v0 = acc.valuation().expect("period is nonzero");
    Ok(acc.truncated(v0 + rel).truncated(e * prec))
}

/// D_0, ..., D_max of the exponential's denominator recursion.
pub fn carlitz_denominators(field: &FieldDescriptor, max_index: u32) -> Vec<Polynomial> {
    let q = field.order();
    let m0 = field.degree();
    let mut out = vec![Polynomial::one(field)];
    for i in 1..=max_index {
        let qi = q.checked_pow(i).expect("q^i fits in u64");
        let theta_qi = Polynomial::monomial(field, field.one(), qi as usize);
        let head = theta_qi.sub(&Polynomial::x(field));
        let prev_q = out[i as usize - 1].frobenius_power(m0);
        out.push(head.mul(&prev_q));
    }
    out
}

/// exp_C(z) = Σ z^{q^i}/D_i to the requested θ-precision.
///
/// Terms are included while v(z^{q^i}/D_i) = q^i·(v(z) + i) can still
/// reach the target; once v(z) + i > 0 the term valuations grow
/// monotonically and the tail is certified.
pub fn carlitz_exp(
    ctx: &PeriodContext,
    z: &LaurentSeries,
    prec: i64,
) -> Result<LaurentSeries> {
    assert_eq!(
        z.descriptor().residue(),
        &ctx.field,
        "argument must live over the context's base field"
    );
    let e = z.descriptor().ram_index() as i64;
    let q = ctx.field.order() as i64;
    let m0 = ctx.field.degree();
    let target = e * prec;
    let vz = match z.valuation() {
        Some(v) => v,
        None => return Ok(z.clone()), // exp(0) = 0 to the same window
    };
    // collect the included indices first
    let mut included = Vec::new();
    let mut qi: i64 = 1;
    let mut i = 0u32;
    loop {
        let term_v = qi
            .checked_mul(vz + e * i as i64)
            .ok_or(Error::Overflow)?;
        let rising = vz + e * i as i64 > 0;
        if rising && term_v > target {
            break;
        }
        included.push((i, qi, term_v));
        if i > 30 {
            // valid arguments cannot keep terms low this long
            return Err(Error::PrecisionUnderflow {
                requested: prec,
                achievable: term_v / e,
            });
        }
        i += 1;
        qi = qi.checked_mul(q).ok_or(Error::Overflow)?;
    }
    let denominators = carlitz_denominators(&ctx.field, included.last().map_or(0, |t| t.0));
    let mut acc = LaurentSeries::zero_to_prec(z.descriptor(), target + 1);
    for &(i, _qi, term_v) in &included {
        let zq = z.frobenius_iter(m0 * i);
        let d_series = LaurentSeries::from_polynomial(z.descriptor(), &denominators[i as usize]);
        let dv = d_series.valuation().unwrap();
        // relative precision needed so the term is exact through target
        let rel = (target - term_v).max(0) + 2;
        let d_inv = d_series.truncated(dv + rel).inv()?;
        acc = acc.add(&zq.mul(&d_inv));
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodReport {
    /// v(ξ̃) = −q/(q−1), exactly.
    pub valuation_ok: bool,
    pub valuation_expected: (i64, i64),
    pub valuation_got: Option<(i64, i64)>,
    /// ξ̃^{q−1} has only π-exponents divisible by q−1, i.e. lies in K.
    pub power_lands_in_base: bool,
    /// v(exp_C(ξ̃)) at least the requested precision.
    pub exp_vanishes: bool,
    pub exp_certified_theta_prec: i64,
}

/// The three period checks at the given θ-precision.
pub fn period_checks(ctx: &PeriodContext, prec: i64) -> Result<PeriodReport> {
    let q = ctx.field.order() as i64;
    let e = ctx.desc.ram_index() as i64;
    let period = carlitz_period(ctx, prec + 2 * q)?;

    let expected = Ratio::new(-q, q - 1).reduced();
    let got = period.valuation_theta();
    let valuation_ok = got == Some(expected);

    let power = period.pow(q - 1)?;
    let power_lands_in_base = power.support().iter().all(|exp| exp % e == 0);

    let exp_val = carlitz_exp(ctx, &period, prec)?;
    let (exp_vanishes, certified) = match exp_val.valuation() {
        Some(v) => (v >= e * prec, v / e),
        None => {
            let n = exp_val.prec().unwrap_or(i64::MAX);
            (n >= e * prec, n / e)
        }
    };
    Ok(PeriodReport {
        valuation_ok,
        valuation_expected: (*expected.numer(), *expected.denom()),
        valuation_got: got.map(|r| (*r.numer(), *r.denom())),
        power_lands_in_base,
        exp_vanishes,
        exp_certified_theta_prec: certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32, n: u32) -> PeriodContext {
        PeriodContext::new(&FieldDescriptor::new(p, n).unwrap())
    }

    #[test]
    fn denominator_degrees() {
        let c = ctx(2, 1);
        let ds = carlitz_denominators(c.field(), 4);
        for (i, d) in ds.iter().enumerate() {
            let expect = if i == 0 { 0 } else { i * 2usize.pow(i as u32) };
            assert_eq!(d.degree(), Some(expect), "i={i}");
            assert!(d.is_monic() || i == 0);
        }
        // D_1 = θ^q − θ
        let f = c.field();
        let d1 = Polynomial::monomial(f, f.one(), 2).sub(&Polynomial::x(f));
        assert_eq!(ds[1], d1);
    }

    #[test]
    fn period_valuation_all_q() {
        for (p, n) in [(2u32, 1u32), (3, 1), (2, 2)] {
            let c = ctx(p, n);
            let q = c.field().order() as i64;
            let period = carlitz_period(&c, 30).unwrap();
            assert_eq!(
                period.valuation_theta(),
                Some(Ratio::new(-q, q - 1)),
                "q={q}"
            );
        }
    }

    #[test]
    fn period_coefficients_against_counting_oracle() {
        // q=2: ξ̃ = θ²·Π_{i≥1}(1−θ^{1−2^i})^{-1}; the coefficient of θ^{2−n}
        // counts representations n = Σ m_i(2^i − 1) mod 2
        let c = ctx(2, 1);
        let period = carlitz_period(&c, 40).unwrap();
        let parts: Vec<i64> = (1..7).map(|i| (1i64 << i) - 1).collect();
        let max_n = 30usize;
        let mut reps = vec![0u64; max_n + 1];
        reps[0] = 1;
        for &part in &parts {
            for n in part as usize..=max_n {
                reps[n] += reps[n - part as usize];
            }
        }
        for n in 0..=max_n {
            let want = (reps[n] % 2) as u32;
            let got = period.coeff_at(n as i64 - 2).unwrap();
            assert_eq!(got.coeffs()[0], want, "coefficient of θ^{}", 2 - n as i64);
        }
        // spot examples: coefficients of θ², θ, 1 are all 1
        assert_eq!(period.valuation(), Some(-2));
    }

    #[test]
    fn exp_is_identity_to_first_order() {
        let c = ctx(3, 1);
        let desc = LocalFieldDescriptor::unramified(c.field());
        // v(z) = 2: exp(z) ≡ z up to the z^q/D_1 term at valuation 3·2−3 = 3
        let z = LaurentSeries::theta_inv(&desc).pow(2).unwrap().truncated(40);
        let e = carlitz_exp(&c, &z, 12).unwrap();
        assert!(e.truncated(3).agrees_with(&z.truncated(3)));
        assert_ne!(e.truncated(12).support(), z.truncated(12).support());
    }

    #[test]
    fn exp_is_additive() {
        let c = ctx(2, 1);
        let desc = LocalFieldDescriptor::unramified(c.field());
        let f = c.field();
        let z1 = LaurentSeries::from_terms(&desc, &[(1, f.one()), (3, f.one())]).truncated(32);
        let z2 = LaurentSeries::from_terms(&desc, &[(2, f.one())]).truncated(32);
        let lhs = carlitz_exp(&c, &z1.add(&z2), 20).unwrap();
        let rhs = carlitz_exp(&c, &z1, 20).unwrap().add(&carlitz_exp(&c, &z2, 20).unwrap());
        assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn carlitz_module_functional_identity() {
        // exp(θz) = θ·exp(z) + exp(z)^q for v(z) ≥ 1
        for (p, n) in [(2u32, 1u32), (3, 1)] {
            let c = ctx(p, n);
            let q = c.field().order();
            let desc = LocalFieldDescriptor::unramified(c.field());
            let f = c.field();
            let z = LaurentSeries::from_terms(&desc, &[(1, f.one()), (2, f.one())]).truncated(48);
            let theta = LaurentSeries::theta(&desc);
            let lhs = carlitz_exp(&c, &theta.mul(&z), 20).unwrap();
            let ez = carlitz_exp(&c, &z, 24).unwrap();
            let rhs = theta.mul(&ez).add(&ez.pow(q as i64).unwrap());
            assert!(lhs.agrees_with(&rhs.truncated(lhs.prec().unwrap())), "q={q}");
        }
    }

    #[test]
    fn period_checks_pass() {
        for (p, n, q) in [(2u32, 1u32, 2i64), (3, 1, 3), (2, 2, 4)] {
            let c = ctx(p, n);
            let rep = period_checks(&c, 50).unwrap();
            assert!(rep.valuation_ok, "q={q}");
            assert_eq!(rep.valuation_expected, (-q, q - 1));
            assert!(rep.power_lands_in_base, "q={q}");
            assert!(rep.exp_vanishes, "q={q}: certified {}", rep.exp_certified_theta_prec);
        }
    }

    #[test]
    fn exp_of_period_cancels_negative_terms() {
        // the two leading terms of exp_C(ξ̃) have equal negative valuation
        // −q/(q−1) and must cancel exactly
        let c = ctx(3, 1);
        let period = carlitz_period(&c, 60).unwrap();
        let e = carlitz_exp(&c, &period, 40).unwrap();
        match e.valuation() {
            None => assert!(e.prec().unwrap() >= 2 * 40),
            Some(v) => panic!("exp period should vanish, found valuation {v}"),
        }
    }
}
