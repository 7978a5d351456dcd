//! Dirichlet characters on (A/f)^*, their L-series at negative integers,
//! Dedekind-zeta analogs as Euler products over monic irreducibles, and
//! the factorization identities connecting the two.
//!
//! The modulus f is monic irreducible, so (A/f)^* is cyclic of order
//! M = q^{deg f} − 1. The canonical generator is the first monic (by
//! degree, then counting order) whose class has order M, and characters
//! are indexed by j ∈ [0, M): ψ_j(g^t) = ω^{(jt mod M)·n/M} with n the
//! character order and ω a canonical primitive n-th root of unity in the
//! value field F_{q^m}, m the multiplicative order of q mod n.
//!
//! Products over primes are taken in a fixed order (degree, then counting
//! order), so output bytes are reproducible; coefficient sums over monic
//! strata are parallel and order-independent.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::field::{Embedding, FieldDescriptor, FieldElement, ORDER_BOUND};
use crate::algebra::poly::{
    irreducibles_up_to, monic_by_index, monic_count, Polynomial, DEFAULT_ENUM_BUDGET,
};
use crate::error::{Error, Result};
use crate::par;
use crate::zeta::{degree_bound, power_sum_with_budget};

/// Shared modulus context: the cyclic group (A/f)^* with its canonical
/// generator and a full discrete-log table.
#[derive(Debug)]
pub struct CharacterFamily {
    field: FieldDescriptor,
    modulus: Polynomial,
    group_order: u64,
    generator: Polynomial,
    dlog: HashMap<Vec<u32>, u64>,
}

impl CharacterFamily {
    pub fn new(modulus: &Polynomial) -> Result<Arc<Self>> {
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        if !modulus.is_irreducible()? {
            return Err(Error::NotIrreducible);
        }
        let field = modulus.field().clone();
        let q = field.order();
        let d = modulus.degree().unwrap() as u32;
        let group_order = (q as u128).pow(d) - 1;
        if group_order > ORDER_BOUND as u128 {
            return Err(Error::OrderBoundExceeded(group_order, ORDER_BOUND));
        }
        let group_order = group_order as u64;
        let generator = find_generator(modulus, group_order);
        let mut dlog = HashMap::with_capacity(group_order as usize);
        let mut cur = Polynomial::one(&field);
        for t in 0..group_order {
            dlog.entry(cur.digit_key()).or_insert(t);
            cur = cur.mul(&generator).rem(modulus);
        }
        Ok(Arc::new(CharacterFamily {
            field,
            modulus: modulus.clone(),
            group_order,
            generator,
            dlog,
        }))
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    /// M = q^{deg f} − 1.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn generator(&self) -> &Polynomial {
        &self.generator
    }

    /// Discrete log of a mod f; None when f divides a.
    pub fn dlog(&self, a: &Polynomial) -> Option<u64> {
        let r = a.rem(&self.modulus);
        if r.is_zero() {
            return None;
        }
        Some(*self.dlog.get(&r.digit_key()).expect("full dlog table"))
    }

    /// ψ_j in its canonical minimal value field.
    pub fn character(self: &Arc<Self>, j: u64) -> Result<CharacterSpec> {
        let n = self.character_order(j)?;
        let m = multiplicative_order_mod(self.field.order(), n);
        let value_field = FieldDescriptor::new(
            self.field.characteristic(),
            self.field.degree() * m as u32,
        )?;
        self.character_in(j, &value_field)
    }

    /// ψ_j realized in a chosen value field (whose order ≡ 1 mod n), so
    /// several characters can share one field for coefficientwise work.
    pub fn character_in(self: &Arc<Self>, j: u64, value_field: &FieldDescriptor) -> Result<CharacterSpec> {
        let n = self.character_order(j)?;
        if (value_field.order() - 1) % n != 0 {
            return Err(Error::Parse(format!(
                "value field of order {} has no elements of order {n}",
                value_field.order()
            )));
        }
        let embed = Embedding::new(&self.field, value_field)?;
        let omega = if n == 1 {
            value_field.one()
        } else {
            let prim = value_field.primitive_element()?;
            value_field.pow(&prim, (value_field.order() - 1) / n)
        };
        Ok(CharacterSpec {
            family: self.clone(),
            j,
            order: n,
            value_field: value_field.clone(),
            omega,
            embed,
        })
    }

    fn character_order(&self, j: u64) -> Result<u64> {
        if j >= self.group_order {
            return Err(Error::CharacterIndexOutOfRange(j, self.group_order));
        }
        Ok(self.group_order / gcd_u64(j, self.group_order))
    }
}

fn find_generator(modulus: &Polynomial, group_order: u64) -> Polynomial {
    let field = modulus.field();
    if group_order == 1 {
        return Polynomial::one(field);
    }
    let factors = crate::algebra::field::prime_factors(group_order);
    for d in 1.. {
        for idx in 0..field.order().pow(d) {
            let cand = monic_by_index(field, d as usize, idx);
            let r = cand.rem(modulus);
            if r.is_zero() {
                continue;
            }
            let full_order = factors
                .iter()
                .all(|&l| !r.powmod(group_order / l, modulus).sub(&Polynomial::one(field)).is_zero());
            if full_order {
                return cand.rem(modulus);
            }
        }
    }
    unreachable!("cyclic groups have generators among monic representatives")
}

/// A Dirichlet character ψ_j mod f with values in F_{q^m}.
#[derive(Debug, Clone)]
pub struct CharacterSpec {
    family: Arc<CharacterFamily>,
    j: u64,
    order: u64,
    value_field: FieldDescriptor,
    omega: FieldElement,
    embed: Embedding,
}

impl CharacterSpec {
    pub fn family(&self) -> &Arc<CharacterFamily> {
        &self.family
    }

    pub fn index(&self) -> u64 {
        self.j
    }

    /// Multiplicative order n of the character.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn value_field(&self) -> &FieldDescriptor {
        &self.value_field
    }

    /// The canonical primitive n-th root of unity carrying the values.
    pub fn omega(&self) -> &FieldElement {
        &self.omega
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }

    /// ψ(a) ∈ F_{q^m}; zero exactly when f | a.
    pub fn eval(&self, a: &Polynomial) -> FieldElement {
        match self.family.dlog(a) {
            None => self.value_field.zero(),
            Some(t) => {
                let m_ord = self.family.group_order as u128;
                let w = (self.j as u128 * t as u128 % m_ord) * self.order as u128 / m_ord;
                self.value_field.pow(&self.omega, w as u64)
            }
        }
    }
}

/// Truncated power series in x with polynomial coefficients, used for the
/// Euler-product side of every identity here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XSeries {
    field: FieldDescriptor,
    coeffs: Vec<Polynomial>,
}

impl XSeries {
    pub fn one(field: &FieldDescriptor, max_degree: usize) -> Self {
        let mut coeffs = vec![Polynomial::zero(field); max_degree + 1];
        coeffs[0] = Polynomial::one(field);
        XSeries {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_coeffs(field: &FieldDescriptor, mut coeffs: Vec<Polynomial>, max_degree: usize) -> Self {
        coeffs.resize(max_degree + 1, Polynomial::zero(field));
        XSeries {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field);
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![Polynomial::zero(&self.field); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        XSeries {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.field, self.coeffs.len() - 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// (1 − u·x^j)^{-1} = Σ_i u^i x^{ij}, truncated.
    pub fn geometric(field: &FieldDescriptor, u: &Polynomial, j: usize, max_degree: usize) -> Self {
        let mut coeffs = vec![Polynomial::zero(field); max_degree + 1];
        let mut pw = Polynomial::one(field);
        let mut idx = 0usize;
        loop {
            coeffs[idx] = pw.clone();
            idx += j;
            if idx > max_degree || j == 0 {
                break;
            }
            pw = pw.mul(u);
        }
        XSeries {
            field: field.clone(),
            coeffs,
        }
    }

    /// (1 − u·x^j)^{-count}.
    pub fn inverse_factor(
        field: &FieldDescriptor,
        u: &Polynomial,
        j: usize,
        count: u64,
        max_degree: usize,
    ) -> Self {
        Self::geometric(field, u, j, max_degree).pow(count)
    }

    /// (1 − u·x^j) as a truncated series.
    pub fn binomial(field: &FieldDescriptor, u: &Polynomial, j: usize, max_degree: usize) -> Self {
        let mut s = Self::one(field, max_degree);
        if j <= max_degree {
            s.coeffs[j] = u.neg();
        }
        s
    }

    pub fn map_coeffs(&self, emb: &Embedding) -> XSeries {
        XSeries {
            field: emb.superfield().clone(),
            coeffs: self.coeffs.iter().map(|c| c.map_coeffs(emb)).collect(),
        }
    }
}

/// L(ψ; x, −k) mod x^{D+1}: coefficient c_d = Σ_{a monic, deg a = d} ψ(a)·a^k.
pub fn l_polynomial(spec: &CharacterSpec, k: u64, max_degree: usize) -> Result<XSeries> {
    l_polynomial_with_budget(spec, k, max_degree, DEFAULT_ENUM_BUDGET)
}

pub fn l_polynomial_with_budget(
    spec: &CharacterSpec,
    k: u64,
    max_degree: usize,
    budget: u64,
) -> Result<XSeries> {
    let base = spec.family.field();
    let vf = &spec.value_field;
    let mut coeffs = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        let count = monic_count(base, d, budget)?;
        let id = || Polynomial::zero(vf);
        let f = |i: u64| -> Polynomial {
            let a = monic_by_index(base, d, i);
            let chi = spec.eval(&a);
            if chi.is_zero() {
                return Polynomial::zero(vf);
            }
            a.pow(k).map_coeffs(&spec.embed).mul_scalar(&chi)
        };
        let merge = |x: Polynomial, y: Polynomial| x.add(&y);
        coeffs.push(par::reduce_indexed(count, id, f, merge));
    }
    Ok(XSeries::from_coeffs(vf, coeffs, max_degree))
}

/// Σ_{d ≤ D} S_d(k)·x^d, the full zeta side of the factorizations.
pub fn zeta_x_series(
    field: &FieldDescriptor,
    k: u64,
    max_degree: usize,
    budget: u64,
) -> Result<XSeries> {
    let b = degree_bound(field, k);
    let mut coeffs = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree.min(b) {
        coeffs.push(power_sum_with_budget(field, d, k, budget)?);
    }
    Ok(XSeries::from_coeffs(field, coeffs, max_degree))
}

/// ζ as an Euler product over monic irreducibles: an independent route to
/// [`zeta_x_series`], by unique factorization.
pub fn zeta_euler_product(
    field: &FieldDescriptor,
    k: u64,
    max_degree: usize,
    budget: u64,
) -> Result<XSeries> {
    let mut acc = XSeries::one(field, max_degree);
    for prime in irreducibles_up_to(field, max_degree, budget)? {
        let dp = prime.degree().unwrap();
        let factor = XSeries::geometric(field, &prime.pow(k), dp, max_degree);
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// A subgroup H = ⟨g^β⟩ of index β in (A/f)^*, defining the degree-β
/// abelian extension cut out by the characters trivial on H.
#[derive(Debug, Clone)]
pub struct SubgroupSpec {
    family: Arc<CharacterFamily>,
    beta: u64,
}

impl SubgroupSpec {
    pub fn new(family: &Arc<CharacterFamily>, beta: u64) -> Result<Self> {
        let m_ord = family.group_order();
        if beta == 0 || m_ord % beta != 0 {
            return Err(Error::IndexDoesNotDivide(beta, m_ord));
        }
        let p = family.field().characteristic();
        if beta % p as u64 == 0 {
            return Err(Error::IndexDivisibleByP(beta, p));
        }
        Ok(SubgroupSpec {
            family: family.clone(),
            beta,
        })
    }

    pub fn family(&self) -> &Arc<CharacterFamily> {
        &self.family
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    /// Indices of the β characters trivial on H.
    pub fn character_indices(&self) -> Vec<u64> {
        let step = self.family.group_order() / self.beta;
        (0..self.beta).map(|i| i * step).collect()
    }

    /// Order of P·H in the quotient (A/f)^*/H ≅ Z/β.
    pub fn splitting_order(&self, prime: &Polynomial) -> Option<u64> {
        let t = self.family.dlog(prime)?;
        let r = t % self.beta;
        Some(self.beta / gcd_u64(r, self.beta))
    }
}

/// The Dedekind-zeta analog of the degree-β abelian extension, as an Euler
/// product over monic irreducibles: an unramified P with splitting order t
/// carries β/t primes of norm P^t; the conductor prime is totally ramified
/// with a single norm-f factor.
pub fn subgroup_dedekind(
    sub: &SubgroupSpec,
    k: u64,
    max_degree: usize,
    budget: u64,
) -> Result<XSeries> {
    let field = sub.family.field();
    let f_mod = sub.family.modulus();
    let mut acc = XSeries::one(field, max_degree);
    for prime in irreducibles_up_to(field, max_degree, budget)? {
        let dp = prime.degree().unwrap();
        let factor = match sub.splitting_order(&prime) {
            None => {
                debug_assert_eq!(&prime, f_mod);
                XSeries::geometric(field, &prime.pow(k), dp, max_degree)
            }
            Some(t) => {
                if (t as usize) * dp > max_degree {
                    continue;
                }
                let norm_pow = prime.pow(t * k);
                XSeries::inverse_factor(field, &norm_pow, t as usize * dp, sub.beta / t, max_degree)
            }
        };
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub equal: bool,
    /// x-degree of the first differing coefficient.
    pub first_mismatch: Option<usize>,
    pub lhs_mismatch: Option<String>,
    pub rhs_mismatch: Option<String>,
}

fn compare_series(lhs: &XSeries, rhs: &XSeries) -> IdentityReport {
    let n = lhs.coeffs.len().min(rhs.coeffs.len());
    for d in 0..n {
        if lhs.coeffs[d] != rhs.coeffs[d] {
            return IdentityReport {
                equal: false,
                first_mismatch: Some(d),
                lhs_mismatch: Some(lhs.coeffs[d].to_string()),
                rhs_mismatch: Some(rhs.coeffs[d].to_string()),
            };
        }
    }
    IdentityReport {
        equal: true,
        first_mismatch: None,
        lhs_mismatch: None,
        rhs_mismatch: None,
    }
}

/// Checks ζ_O = Π_ψ L(ψ) coefficientwise in a common value field.
///
/// Both sides are independent code paths: the left expands splitting-order
/// Euler factors, the right multiplies character coefficient sums. The
/// trivial character contributes the full zeta (its primitive L-function
/// has conductor 1, so the conductor's Euler factor stays in).
pub fn verify_factorization(
    sub: &SubgroupSpec,
    k: u64,
    max_degree: usize,
    budget: u64,
) -> Result<IdentityReport> {
    let family = &sub.family;
    let base = family.field();
    let q = base.order();
    // one value field for every character: F_{q^lcm}
    let mut m_lcm = 1u64;
    for j in sub.character_indices() {
        let n = family.group_order() / gcd_u64(j, family.group_order());
        m_lcm = lcm_u64(m_lcm, multiplicative_order_mod(q, n));
    }
    let value_field = FieldDescriptor::new(base.characteristic(), base.degree() * m_lcm as u32)?;
    let embed = Embedding::new(base, &value_field)?;

    let mut rhs = zeta_x_series(base, k, max_degree, budget)?.map_coeffs(&embed);
    for j in sub.character_indices() {
        if j == 0 {
            continue;
        }
        let psi = family.character_in(j, &value_field)?;
        rhs = rhs.mul(&l_polynomial_with_budget(&psi, k, max_degree, budget)?);
    }
    let lhs = subgroup_dedekind(sub, k, max_degree, budget)?.map_coeffs(&embed);
    Ok(compare_series(&lhs, &rhs))
}

/// True when the degree-p cover W^p − W = 1/f splits completely at P, i.e.
/// the absolute trace of 1/f in the residue field of P vanishes.
pub fn artin_schreier_splits(f_mod: &Polynomial, prime: &Polynomial) -> Result<bool> {
    let field = f_mod.field();
    let p = field.characteristic();
    let dp = prime.degree().ok_or(Error::EmptyInput)? as u32;
    let f_red = f_mod.rem(prime);
    if f_red.is_zero() {
        return Err(Error::DivisionByZero);
    }
    // inverse of f mod P via the group order of the residue field
    let res_order = (field.order() as u128).pow(dp);
    let inv = f_red.powmod(u64::try_from(res_order - 2).map_err(|_| Error::Overflow)?, prime);
    // absolute trace to F_p: Σ x^{p^i} over all p-power Frobenius shifts
    let steps = field.degree() * dp;
    let mut acc = inv.clone();
    let mut cur = inv;
    for _ in 1..steps {
        cur = cur.powmod(p as u64, prime);
        acc = acc.add(&cur).rem(prime);
    }
    let trace_is_zero = acc.is_zero();
    if !trace_is_zero {
        // the trace lands in the prime field
        debug_assert_eq!(acc.degree(), Some(0));
        debug_assert!(acc.coeff(0).coeffs().iter().skip(1).all(|&c| c == 0));
    }
    Ok(trace_is_zero)
}

/// Dedekind-zeta analog of the Artin–Schreier cover W^p − W = 1/f: split
/// primes carry p norm-P factors, inert primes one norm-P^p factor, and
/// the conductor prime is totally ramified.
pub fn artin_schreier_dedekind(
    f_mod: &Polynomial,
    k: u64,
    max_degree: usize,
    budget: u64,
) -> Result<XSeries> {
    if !f_mod.is_monic() {
        return Err(Error::NotMonic);
    }
    if !f_mod.is_irreducible()? {
        return Err(Error::NotIrreducible);
    }
    let field = f_mod.field();
    let p = field.characteristic() as u64;
    let mut acc = XSeries::one(field, max_degree);
    for prime in irreducibles_up_to(field, max_degree, budget)? {
        let dp = prime.degree().unwrap();
        let factor = if prime == *f_mod {
            XSeries::geometric(field, &prime.pow(k), dp, max_degree)
        } else if artin_schreier_splits(f_mod, &prime)? {
            XSeries::inverse_factor(field, &prime.pow(k), dp, p, max_degree)
        } else {
            if p as usize * dp > max_degree {
                continue;
            }
            XSeries::geometric(field, &prime.pow(p * k), p as usize * dp, max_degree)
        };
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// Checks ζ_O = ζ_A^p · (1 − f^k x^{deg f})^{p−1} for the order-p cover.
pub fn caveat_identity_check(
    f_mod: &Polynomial,
    k: u64,
    max_degree: usize,
    budget: u64,
) -> Result<IdentityReport> {
    let field = f_mod.field();
    let p = field.characteristic() as u64;
    let lhs = artin_schreier_dedekind(f_mod, k, max_degree, budget)?;
    let zeta = zeta_x_series(field, k, max_degree, budget)?;
    let conductor = XSeries::binomial(
        field,
        &f_mod.pow(k),
        f_mod.degree().unwrap(),
        max_degree,
    );
    let rhs = zeta.pow(p).mul(&conductor.pow(p - 1));
    Ok(compare_series(&lhs, &rhs))
}

/// Separability analysis of the conductor factor 1 − f^k x^{deg f}: with
/// deg f = p^s·d′, its zeroes have valuation k, fall into d′ distinct
/// points of multiplicity p^s each, and the separable part is unramified
/// with residue degree the order of q mod d′.
#[derive(Debug, Clone, Serialize)]
pub struct EulerFactorZeroReport {
    pub valuation: i64,
    pub count: u32,
    pub separable_degree: u32,
    pub inseparable_degree: u32,
    pub inseparable: bool,
    pub unramified_residue_degree: u32,
}

pub fn euler_factor_zero_report(f_mod: &Polynomial, k: u64) -> Result<EulerFactorZeroReport> {
    if !f_mod.is_monic() {
        return Err(Error::NotMonic);
    }
    let field = f_mod.field();
    let p = field.characteristic();
    let d = f_mod.degree().ok_or(Error::EmptyInput)? as u32;
    let mut sep = d;
    let mut insep = 1u32;
    while sep % p == 0 {
        sep /= p;
        insep *= p;
    }
    Ok(EulerFactorZeroReport {
        valuation: k as i64,
        count: d,
        separable_degree: sep,
        inseparable_degree: insep,
        inseparable: insep > 1,
        unramified_residue_degree: multiplicative_order_mod(field.order(), sep as u64) as u32,
    })
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

/// Multiplicative order of q modulo n (n = 1 gives 1).
fn multiplicative_order_mod(q: u64, n: u64) -> u64 {
    if n <= 1 {
        return 1;
    }
    let q = q % n;
    assert!(gcd_u64(q, n) == 1, "q must be invertible mod n");
    let mut cur = q;
    let mut ord = 1;
    while cur != 1 {
        cur = cur * q % n;
        ord += 1;
    }
    ord
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

    fn family_f2() -> Arc<CharacterFamily> {
        CharacterFamily::new(&poly(&f2(), &[1, 1, 1])).unwrap()
    }

    fn family_f3() -> Arc<CharacterFamily> {
        CharacterFamily::new(&poly(&f3(), &[1, 0, 1])).unwrap()
    }

    #[test]
    fn family_basics() {
        let fam = family_f2();
        assert_eq!(fam.group_order(), 3);
        // θ generates: θ³ ≡ 1 mod θ²+θ+1
        assert_eq!(fam.generator(), &poly(&f2(), &[0, 1]));
        assert_eq!(fam.dlog(&Polynomial::one(&f2())), Some(0));
        assert_eq!(fam.dlog(&poly(&f2(), &[1, 1, 1])), None);

        let fam3 = family_f3();
        // A/(θ²+1) = F_9, so the unit group has order 8
        assert_eq!(fam3.group_order(), 8);
        let g = fam3.generator().clone();
        // generator order is exactly 80
        let mut cur = Polynomial::one(&f3());
        let mut order = 0;
        loop {
            cur = cur.mul(&g).rem(fam3.modulus());
            order += 1;
            if cur == Polynomial::one(&f3()) {
                break;
            }
        }
        assert_eq!(order, 8);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(
            CharacterFamily::new(&poly(&f2(), &[1, 0, 1])).unwrap_err(),
            Error::NotIrreducible
        );
        let nonmonic = poly(&f3(), &[1, 2]);
        assert_eq!(CharacterFamily::new(&nonmonic).unwrap_err(), Error::NotMonic);
    }

    #[test]
    fn trivial_character_is_one_on_coprime() {
        let fam = family_f3();
        let psi = fam.character(0).unwrap();
        assert!(psi.is_trivial());
        assert_eq!(psi.order(), 1);
        for idx in 0..30u64 {
            let a = monic_by_index(&f3(), 2, idx % 9);
            let v = psi.eval(&a);
            if a.rem(fam.modulus()).is_zero() {
                assert!(v.is_zero());
            } else {
                assert_eq!(v, psi.value_field().one());
            }
        }
        assert_eq!(psi.eval(&Polynomial::one(&f3())), psi.value_field().one());
    }

    #[test]
    fn quadratic_character_mod_theta2_plus_1() {
        let fam = family_f3();
        let psi = fam.character(fam.group_order() / 2).unwrap();
        assert_eq!(psi.order(), 2);
        // order 2 forces values in F_3 itself and ψ(g) = −1
        assert_eq!(psi.value_field().order(), 3);
        let vf = psi.value_field().clone();
        assert_eq!(psi.eval(fam.generator()), vf.from_prime_subfield(2));
    }

    #[test]
    fn character_multiplicativity_and_orthogonality() {
        for (fam, q) in [(family_f2(), 2u64), (family_f3(), 3u64)] {
            let m_ord = fam.group_order();
            for j in [1u64, m_ord / 2, m_ord - 1] {
                let psi = fam.character(j % m_ord).unwrap();
                let vf = psi.value_field().clone();
                // multiplicativity over sampled pairs
                for i1 in 0..6u64 {
                    for i2 in 0..6u64 {
                        let a = monic_by_index(fam.field(), 1, i1 % q);
                        let b = monic_by_index(fam.field(), 2, i2 % (q * q));
                        let lhs = psi.eval(&a.mul(&b));
                        let rhs = vf.mul(&psi.eval(&a), &psi.eval(&b));
                        assert_eq!(lhs, rhs);
                    }
                }
                // orthogonality: sum over all residues vanishes
                if psi.is_trivial() {
                    continue;
                }
                let mut sum = vf.zero();
                let mut cur = Polynomial::one(fam.field());
                for _ in 0..m_ord {
                    sum = vf.add(&sum, &psi.eval(&cur));
                    cur = cur.mul(fam.generator()).rem(fam.modulus());
                }
                assert!(sum.is_zero(), "j={j}");
            }
        }
    }

    #[test]
    fn l_polynomial_trivial_character_inclusion_exclusion() {
        // trivial ψ: c_d = S_d(k) − f^k·S_{d−deg f}(k)
        let fam = family_f3();
        let psi = fam.character(0).unwrap();
        let k = 2u64;
        let l = l_polynomial(&psi, k, 5).unwrap();
        assert_eq!(l.coeffs()[0], Polynomial::one(&f3()));
        let fk = fam.modulus().pow(k);
        for d in 0..=5usize {
            let mut expected = power_sum_with_budget(&f3(), d, k, 1 << 20).unwrap();
            if d >= 2 {
                let lower = power_sum_with_budget(&f3(), d - 2, k, 1 << 20).unwrap();
                expected = expected.sub(&fk.mul(&lower));
            }
            assert_eq!(l.coeffs()[d], expected, "d={d}");
        }
    }

    #[test]
    fn quadratic_l_coefficient_by_hand() {
        // q=3, f=θ²+1, quadratic ψ, k=2, d=1: c_1 = Σ_c ψ(θ+c)(θ+c)²
        let fam = family_f3();
        let psi = fam.character(fam.group_order() / 2).unwrap();
        let l = l_polynomial(&psi, 2, 1).unwrap();
        let mut expected = Polynomial::zero(&f3());
        for c in 0..3u64 {
            let a = monic_by_index(&f3(), 1, c);
            expected = expected.add(&a.pow(2).mul_scalar(&psi.eval(&a)));
        }
        assert_eq!(l.coeffs()[1], expected);
    }

    #[test]
    fn local_splitting_identity() {
        // Π_{ψ trivial on H}(1 − ψ(P)T) = (1 − T^t)^{β/t} for each prime
        let fam = family_f3();
        for beta in [2u64, 4, 8] {
            let sub = SubgroupSpec::new(&fam, beta).unwrap();
            let q = fam.field().order();
            let mut m_lcm = 1u64;
            for j in sub.character_indices() {
                let n = fam.group_order() / gcd_u64(j, fam.group_order());
                m_lcm = lcm_u64(m_lcm, multiplicative_order_mod(q, n));
            }
            let vf = FieldDescriptor::new(3, m_lcm as u32).unwrap();
            for pidx in 0..9u64 {
                let prime = monic_by_index(&f3(), 2, pidx);
                if !prime.is_irreducible().unwrap() || prime == *fam.modulus() {
                    continue;
                }
                let t = sub.splitting_order(&prime).unwrap();
                // lhs: Π (1 − ψ(P)·T) over characters trivial on H
                let mut lhs = XSeries::one(&vf, beta as usize);
                for j in sub.character_indices() {
                    let psi = fam.character_in(j, &vf).unwrap();
                    let val = Polynomial::constant(&vf, psi.eval(&prime));
                    lhs = lhs.mul(&XSeries::binomial(&vf, &val, 1, beta as usize));
                }
                // rhs: (1 − T^t)^{β/t}
                let rhs = XSeries::binomial(&vf, &Polynomial::one(&vf), t as usize, beta as usize)
                    .pow(beta / t);
                assert_eq!(lhs, rhs, "beta={beta} P={prime}");
            }
        }
    }

    #[test]
    fn dedekind_with_trivial_subgroup_is_zeta() {
        let fam = family_f3();
        let sub = SubgroupSpec::new(&fam, 1).unwrap();
        for k in [1u64, 2] {
            let lhs = subgroup_dedekind(&sub, k, 6, 1 << 20).unwrap();
            let rhs = zeta_x_series(&f3(), k, 6, 1 << 20).unwrap();
            assert_eq!(lhs, rhs, "k={k}");
        }
    }

    #[test]
    fn euler_product_matches_power_sums() {
        for (field, kmax) in [(f2(), 10u64), (f3(), 6u64)] {
            for k in 1..=kmax {
                let lhs = zeta_euler_product(&field, k, 6, 1 << 22).unwrap();
                let rhs = zeta_x_series(&field, k, 6, 1 << 22).unwrap();
                assert_eq!(lhs, rhs, "q={} k={k}", field.order());
            }
        }
    }

    #[test]
    fn factorization_small_cases() {
        let fam2 = family_f2();
        let sub = SubgroupSpec::new(&fam2, 3).unwrap();
        let rep = verify_factorization(&sub, 1, 6, 1 << 22).unwrap();
        assert!(rep.equal, "mismatch at {:?}", rep.first_mismatch);

        let fam3 = family_f3();
        let sub = SubgroupSpec::new(&fam3, 2).unwrap();
        let rep = verify_factorization(&sub, 2, 6, 1 << 22).unwrap();
        assert!(rep.equal, "mismatch at {:?}", rep.first_mismatch);

        // β = 1 is trivially equal
        let sub = SubgroupSpec::new(&fam3, 1).unwrap();
        assert!(verify_factorization(&sub, 1, 6, 1 << 22).unwrap().equal);
    }

    #[test]
    fn subgroup_rejects_bad_indices() {
        let fam = family_f3();
        assert!(matches!(
            SubgroupSpec::new(&fam, 7),
            Err(Error::IndexDoesNotDivide(7, 8))
        ));
        assert!(matches!(
            SubgroupSpec::new(&fam, 5),
            Err(Error::IndexDoesNotDivide(5, 8))
        ));
        let fam2 = family_f2();
        // β = 3 = M is fine for q=2; divisible-by-p check needs an even β
        assert!(SubgroupSpec::new(&fam2, 3).is_ok());
        let fam_theta = CharacterFamily::new(&poly(&f3(), &[0, 1])).unwrap();
        // M = 2, β = 2 over F_3 is allowed; over F_2 with θ²+θ+1, β=2 ∤ 3
        assert_eq!(fam_theta.group_order(), 2);
        assert!(SubgroupSpec::new(&fam_theta, 2).is_ok());
    }

    #[test]
    fn artin_schreier_trace_examples() {
        // q=2, f=θ²+θ+1: at P=θ, 1/f ≡ 1 and the trace is 1 → inert
        let f_mod = poly(&f2(), &[1, 1, 1]);
        let p_theta = poly(&f2(), &[0, 1]);
        assert!(!artin_schreier_splits(&f_mod, &p_theta).unwrap());
        // P = θ+1: 1/f mod P: f(1) = 1 → trace 1 → inert
        let p_theta1 = poly(&f2(), &[1, 1]);
        assert!(!artin_schreier_splits(&f_mod, &p_theta1).unwrap());
    }

    #[test]
    fn caveat_identity_examples() {
        let f_mod2 = poly(&f2(), &[1, 1, 1]);
        for k in [1u64, 2] {
            let rep = caveat_identity_check(&f_mod2, k, 8, 1 << 22).unwrap();
            assert!(rep.equal, "q=2 k={k} mismatch {:?}", rep.first_mismatch);
        }
        let f_mod3 = poly(&f3(), &[1, 0, 1]);
        let rep = caveat_identity_check(&f_mod3, 2, 6, 1 << 22).unwrap();
        assert!(rep.equal, "q=3 mismatch {:?}", rep.first_mismatch);
        // x^0 coefficient is 1 = 1 by construction
        let lhs = artin_schreier_dedekind(&f_mod3, 1, 4, 1 << 22).unwrap();
        assert_eq!(lhs.coeffs()[0], Polynomial::one(&f3()));
    }

    #[test]
    fn euler_factor_zero_reports() {
        // q=3, f=θ, k=1: one separable zero in K
        let rep = euler_factor_zero_report(&poly(&f3(), &[0, 1]), 1).unwrap();
        assert_eq!(rep.valuation, 1);
        assert_eq!(rep.count, 1);
        assert!(!rep.inseparable);
        assert_eq!(rep.unramified_residue_degree, 1);

        // q=2, deg f = 2 = p: inseparable double zero
        let rep = euler_factor_zero_report(&poly(&f2(), &[1, 1, 1]), 1).unwrap();
        assert!(rep.inseparable);
        assert_eq!(rep.separable_degree, 1);
        assert_eq!(rep.inseparable_degree, 2);
        assert_eq!(rep.count, 2);

        // q=3, deg f = 2: two distinct unramified zeroes (roots ±1 in F_3)
        let rep = euler_factor_zero_report(&poly(&f3(), &[1, 0, 1]), 1).unwrap();
        assert!(!rep.inseparable);
        assert_eq!(rep.separable_degree, 2);
        assert_eq!(rep.unramified_residue_degree, 1);
    }
}
