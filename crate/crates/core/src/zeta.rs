//! Power sums over monic polynomials, the special polynomials z(x,−k),
//! and truncations of the two-variable zeta family.
//!
//! The degree-d stratum sum is S_d(k) = Σ_{a monic, deg a = d} a^k ∈ A.
//! For k ≥ 1 the polynomial z(x,−k) = Σ_d S_d(k)·x^d is finite: S_d(k)
//! vanishes once d(q−1) exceeds the q-ary digit sum of k, so its degree is
//! bounded by B(k) = ⌊l_q(k)/(q−1)⌋.
//!
//! Conventions pinned here and used everywhere downstream:
//! ζ(x,y) = Σ_d A_d(y)·x^d with A_d(y) = Σ ⟨a⟩^{-y}, so that
//! A_d(−k) = S_d(k)·θ^{-dk} exactly, and positive integers y = k give the
//! convergent value Σ a^{-k} ∈ K under the specialization x = 1 of the
//! rescaled family.

use crate::algebra::field::FieldDescriptor;
use crate::algebra::poly::{monic_by_index, monic_count, Polynomial, DEFAULT_ENUM_BUDGET};
use crate::error::{Error, Result};
use crate::localfield::digits::PAdicDigits;
use crate::localfield::series::{bracket, one_unit_power, LaurentSeries, LocalFieldDescriptor};
use crate::par;

/// z(x,−k): the coefficient sequence S_0(k), ..., S_B(k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialPolynomial {
    k: u64,
    coeffs: Vec<Polynomial>,
}

impl SpecialPolynomial {
    pub fn k(&self) -> u64 {
        self.k
    }

    /// S_0(k), ..., S_B(k); S_0 = 1.
    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// Degree bound B(k) actually realized (length − 1).
    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// q-ary digit sum l_q(k).
pub fn digit_sum(q: u64, mut k: u64) -> u64 {
    let mut s = 0;
    while k > 0 {
        s += k % q;
        k /= q;
    }
    s
}

/// B(k) = ⌊l_q(k)/(q−1)⌋, the degree bound of z(x,−k).
pub fn degree_bound(field: &FieldDescriptor, k: u64) -> usize {
    let q = field.order();
    (digit_sum(q, k) / (q - 1)) as usize
}

fn power_sum_kernel(
    field: &FieldDescriptor,
    d: usize,
    k: u64,
    budget: u64,
    sequential: bool,
) -> Result<Polynomial> {
    let count = monic_count(field, d, budget)?;
    let id = || Polynomial::zero(field);
    let f = |i: u64| monic_by_index(field, d, i).pow(k);
    let merge = |a: Polynomial, b: Polynomial| a.add(&b);
    Ok(if sequential {
        par::reduce_indexed_seq(count, id, f, merge)
    } else {
        par::reduce_indexed(count, id, f, merge)
    })
}

/// S_d(k) by plain enumeration (parallel under the `parallel` feature).
pub fn power_sum(field: &FieldDescriptor, d: usize, k: u64) -> Result<Polynomial> {
    power_sum_with_budget(field, d, k, DEFAULT_ENUM_BUDGET)
}

pub fn power_sum_with_budget(
    field: &FieldDescriptor,
    d: usize,
    k: u64,
    budget: u64,
) -> Result<Polynomial> {
    power_sum_kernel(field, d, k, budget, false)
}

/// The sequential reference path: plain enumeration, one monic at a time.
pub fn power_sum_seq(field: &FieldDescriptor, d: usize, k: u64) -> Result<Polynomial> {
    power_sum_kernel(field, d, k, DEFAULT_ENUM_BUDGET, true)
}

/// Accelerated path: strips the p-part of k via S_d(pk) = S_d(k)^p, then
/// enumerates at the p-free part. Must agree with [`power_sum`].
pub fn power_sum_accelerated(field: &FieldDescriptor, d: usize, k: u64) -> Result<Polynomial> {
    if k == 0 {
        return power_sum(field, d, 0);
    }
    let p = field.characteristic() as u64;
    let mut v = 0u32;
    let mut k0 = k;
    while k0 % p == 0 {
        k0 /= p;
        v += 1;
    }
    Ok(power_sum(field, d, k0)?.frobenius_power(v))
}

/// S_d(k) for every k in 0..=k_max by one incremental sweep per monic.
pub fn power_sums_up_to(
    field: &FieldDescriptor,
    d: usize,
    k_max: u64,
    budget: u64,
) -> Result<Vec<Polynomial>> {
    let count = monic_count(field, d, budget)?;
    let id = || vec![Polynomial::zero(field); k_max as usize + 1];
    let f = |i: u64| {
        let a = monic_by_index(field, d, i);
        let mut out = Vec::with_capacity(k_max as usize + 1);
        let mut pw = Polynomial::one(field);
        out.push(pw.clone());
        for _ in 1..=k_max {
            pw = pw.mul(&a);
            out.push(pw.clone());
        }
        out
    };
    let merge = |mut acc: Vec<Polynomial>, part: Vec<Polynomial>| {
        for (a, b) in acc.iter_mut().zip(part) {
            *a = a.add(&b);
        }
        acc
    };
    Ok(par::reduce_indexed(count, id, f, merge))
}

/// z(x,−k) with the enumeration guard S_{B+1}(k) = 0 when affordable.
pub fn special_polynomial(field: &FieldDescriptor, k: u64) -> Result<SpecialPolynomial> {
    special_polynomial_with_budget(field, k, DEFAULT_ENUM_BUDGET)
}

pub fn special_polynomial_with_budget(
    field: &FieldDescriptor,
    k: u64,
    budget: u64,
) -> Result<SpecialPolynomial> {
    assert!(k >= 1, "special polynomials need k >= 1");
    let b = degree_bound(field, k);
    let mut coeffs = Vec::with_capacity(b + 1);
    for d in 0..=b {
        coeffs.push(power_sum_with_budget(field, d, k, budget)?);
    }
    if monic_count(field, b + 1, budget).is_ok() {
        let guard = power_sum_with_budget(field, b + 1, k, budget)?;
        assert!(
            guard.is_zero(),
            "vanishing bound violated at q={}, k={k}, d={}",
            field.order(),
            b + 1
        );
    }
    Ok(SpecialPolynomial { k, coeffs })
}

/// Special polynomials for every k in 1..=k_max via the batch kernel; each
/// entry agrees with [`special_polynomial`].
pub fn special_polynomials_up_to(
    field: &FieldDescriptor,
    k_max: u64,
    budget: u64,
) -> Result<Vec<SpecialPolynomial>> {
    let max_b = (1..=k_max)
        .map(|k| degree_bound(field, k))
        .max()
        .unwrap_or(0);
    let mut strata = Vec::with_capacity(max_b + 2);
    for d in 0..=max_b + 1 {
        if monic_count(field, d, budget).is_err() {
            break;
        }
        strata.push(power_sums_up_to(field, d, k_max, budget)?);
    }
    let mut out = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let b = degree_bound(field, k);
        let coeffs: Vec<Polynomial> = (0..=b)
            .map(|d| {
                strata
                    .get(d)
                    .map(|row| row[k as usize].clone())
                    .ok_or(Error::BudgetExceeded {
                        needed: (field.order() as u128).pow(d as u32),
                        budget,
                    })
            })
            .collect::<Result<_>>()?;
        if let Some(row) = strata.get(b + 1) {
            assert!(
                row[k as usize].is_zero(),
                "vanishing bound violated at q={}, k={k}",
                field.order()
            );
        }
        out.push(SpecialPolynomial { k, coeffs });
    }
    Ok(out)
}

/// Truncated coefficients A_0(y), ..., A_D(y) of ζ(x,y), each
/// A_d(y) = Σ_{deg a = d} ⟨a⟩^{-y}. Exact when y ≤ 0; otherwise computed
/// at the requested precision.
pub fn zeta_series(
    field: &FieldDescriptor,
    y: &PAdicDigits,
    max_degree: usize,
    prec: i64,
    budget: u64,
) -> Result<Vec<LaurentSeries>> {
    guard_prec(prec)?;
    let desc = LocalFieldDescriptor::unramified(field);
    let neg_y = y.negated();
    let mut out = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        let count = monic_count(field, d, budget)?;
        let id = || LaurentSeries::zero(&desc);
        let f = |i: u64| -> LaurentSeries {
            let a = monic_by_index(field, d, i);
            let u = bracket(&desc, &a).expect("enumerated monics are monic");
            let u = if neg_y.is_negative() { u.truncated(prec) } else { u };
            one_unit_power(&u, &neg_y).expect("brackets are one-units")
        };
        let merge = |a: LaurentSeries, b: LaurentSeries| a.add(&b);
        out.push(par::reduce_indexed(count, id, f, merge));
    }
    Ok(out)
}

fn guard_prec(prec: i64) -> Result<()> {
    if prec < 1 {
        return Err(Error::PrecisionUnderflow {
            requested: prec,
            achievable: 1,
        });
    }
    Ok(())
}

/// The convergent value ζ(k) = Σ_{a monic} a^{-k} ∈ K for integer k ≥ 1,
/// summed over degrees d ≤ D with the tail bound v(tail) ≥ (D+1)k ≥ prec.
pub fn zeta_value_positive(
    field: &FieldDescriptor,
    k: u64,
    prec: i64,
    budget: u64,
) -> Result<LaurentSeries> {
    assert!(k >= 1);
    guard_prec(prec)?;
    let desc = LocalFieldDescriptor::unramified(field);
    let max_d = ((prec as u64 + k - 1) / k).saturating_sub(1) as usize;
    let mut acc = LaurentSeries::zero_to_prec(&desc, prec);
    for d in 0..=max_d {
        let count = monic_count(field, d, budget)?;
        let id = || LaurentSeries::zero_to_prec(&desc, prec);
        let f = |i: u64| -> LaurentSeries {
            let a = monic_by_index(field, d, i);
            let s = LaurentSeries::from_polynomial(&desc, &a).truncated(prec);
            s.inv()
                .expect("monic polynomials are invertible")
                .pow(k as i64)
                .expect("positive power")
        };
        let merge = |a: LaurentSeries, b: LaurentSeries| a.add(&b);
        acc = acc.add(&par::reduce_indexed(count, id, f, merge));
    }
    Ok(acc.truncated(prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldDescriptor {
        FieldDescriptor::new(2, 1).unwrap()
    }
    fn f3() -> FieldDescriptor {
        FieldDescriptor::new(3, 1).unwrap()
    }

    fn poly(field: &FieldDescriptor, cs: &[u32]) -> Polynomial {
        Polynomial::from_coeffs(
            field,
            cs.iter().map(|&c| field.from_prime_subfield(c)).collect(),
        )
    }

    #[test]
    fn power_sum_examples() {
        let f = f2();
        assert_eq!(power_sum(&f, 1, 1).unwrap(), Polynomial::one(&f));
        assert_eq!(power_sum(&f, 2, 3).unwrap(), poly(&f, &[0, 1, 1])); // θ²+θ
        assert!(power_sum(&f, 3, 0).unwrap().is_zero());
        assert_eq!(power_sum(&f, 0, 7).unwrap(), Polynomial::one(&f));
    }

    #[test]
    fn sequential_matches_parallel() {
        let f = f3();
        for d in 0..=3 {
            for k in [1u64, 4, 9] {
                assert_eq!(
                    power_sum_seq(&f, d, k).unwrap(),
                    power_sum(&f, d, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn accelerated_matches_oracle() {
        for field in [f2(), f3()] {
            for d in 0..=3 {
                for k in 1..=20u64 {
                    assert_eq!(
                        power_sum_accelerated(&field, d, k).unwrap(),
                        power_sum_seq(&field, d, k).unwrap(),
                        "q={} d={d} k={k}",
                        field.order()
                    );
                }
            }
        }
    }

    #[test]
    fn frobenius_relation_on_strata() {
        for field in [f2(), f3()] {
            let p = field.characteristic() as u64;
            for d in 0..=3 {
                for k in 1..=12u64 {
                    let lhs = power_sum(&field, d, p * k).unwrap();
                    let rhs = power_sum(&field, d, k).unwrap().frobenius_power(1);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn special_polynomial_examples() {
        let f = f2();
        let z1 = special_polynomial(&f, 1).unwrap();
        assert_eq!(z1.coeffs(), &[Polynomial::one(&f), Polynomial::one(&f)]);

        let z3 = special_polynomial(&f, 3).unwrap();
        assert_eq!(
            z3.coeffs(),
            &[Polynomial::one(&f), poly(&f, &[1, 1, 1]), poly(&f, &[0, 1, 1])]
        );

        let g = f3();
        let z2 = special_polynomial(&g, 2).unwrap();
        assert_eq!(z2.coeffs(), &[Polynomial::one(&g), poly(&g, &[2])]);
    }

    #[test]
    fn batch_agrees_with_single() {
        for field in [f2(), f3()] {
            let batch = special_polynomials_up_to(&field, 12, DEFAULT_ENUM_BUDGET).unwrap();
            for k in 1..=12u64 {
                let single = special_polynomial(&field, k).unwrap();
                assert_eq!(batch[k as usize - 1], single, "q={} k={k}", field.order());
            }
        }
    }

    #[test]
    fn vanishing_bound_guard() {
        let f = f2();
        for k in 1..=16u64 {
            let b = degree_bound(&f, k) as u64;
            assert_eq!(b, digit_sum(2, k));
            let beyond = power_sum(&f, b as usize + 2, k).unwrap();
            assert!(beyond.is_zero(), "k={k}");
        }
    }

    #[test]
    fn zeta_series_negative_integers_match_power_sums() {
        let f = f2();
        let desc = LocalFieldDescriptor::unramified(&f);
        for k in [1u64, 3, 5] {
            let y = PAdicDigits::from_int(2, -(k as i64));
            let series = zeta_series(&f, &y, 2, 32, DEFAULT_ENUM_BUDGET).unwrap();
            assert_eq!(series[0], LaurentSeries::one(&desc));
            for (d, a_d) in series.iter().enumerate() {
                assert!(a_d.is_exact(), "k={k} d={d}");
                let s_d = power_sum(&f, d, k).unwrap();
                let expected = LaurentSeries::from_polynomial(&desc, &s_d)
                    .mul(&LaurentSeries::theta_inv(&desc).pow((d as u64 * k) as i64).unwrap());
                assert_eq!(*a_d, expected, "k={k} d={d}");
            }
        }
    }

    #[test]
    fn zeta_series_example_values() {
        let f = f2();
        let desc = LocalFieldDescriptor::unramified(&f);
        // y = −1, d = 1 → θ^{-1}
        let s = zeta_series(&f, &PAdicDigits::from_int(2, -1), 1, 16, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(s[1], LaurentSeries::theta_inv(&desc));
        // y = −3, d = 2 → θ^{-4} + θ^{-5}
        let s = zeta_series(&f, &PAdicDigits::from_int(2, -3), 2, 16, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(s[2].support(), vec![4, 5]);
    }

    #[test]
    fn zeta_value_leading_term_is_one() {
        for (field, k) in [(f2(), 1u64), (f2(), 2), (f3(), 2)] {
            let v = zeta_value_positive(&field, k, 6, DEFAULT_ENUM_BUDGET).unwrap();
            assert_eq!(v.valuation(), Some(0));
            assert_eq!(v.coeff_at(0), Some(field.one()));
        }
    }

    #[test]
    fn zeta_value_against_rational_oracle() {
        // Exact check over F_3, k = 2: the degree-one stratum sums to
        // 1/(θ³−θ)², so ζ(2) = 1 + θ^{-6} + 2θ^{-8} + 0θ^{-10} + ... through
        // the d ≤ 1 strata, with the d ≥ 2 tail at valuation ≥ 4 pushed out
        // by requesting enough precision.
        let g = f3();
        let v = zeta_value_positive(&g, 2, 7, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(v.coeff_at(0), Some(g.one()));
        for exp in 1..6 {
            assert_eq!(v.coeff_at(exp), Some(g.zero()), "exp={exp}");
        }
        assert_eq!(v.coeff_at(6), Some(g.one()));

        // independent oracle: sum 1/a² over monics of degree ≤ 2 as an exact
        // rational function, then long-divide
        let monics: Vec<Polynomial> = (0..=2usize)
            .flat_map(|d| {
                (0..3u64.pow(d as u32)).map(move |i| (d, i))
            })
            .map(|(d, i)| monic_by_index(&g, d, i))
            .collect();
        let mut num = Polynomial::zero(&g);
        let mut den = Polynomial::one(&g);
        for a in &monics {
            let a2 = a.mul(a);
            num = num.mul(&a2).add(&den);
            den = den.mul(&a2);
        }
        // expand num/den as a series and compare against the implementation
        let desc = LocalFieldDescriptor::unramified(&g);
        let prec = 10;
        let series_num = LaurentSeries::from_polynomial(&desc, &num).truncated(prec);
        let series_den = LaurentSeries::from_polynomial(&desc, &den).truncated(prec);
        let oracle = series_num.mul(&series_den.inv().unwrap());
        let impl_value = zeta_value_positive(&g, 2, 5, DEFAULT_ENUM_BUDGET).unwrap();
        assert!(impl_value.agrees_with(&oracle.truncated(5)));
    }
}
