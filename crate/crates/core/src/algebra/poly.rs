//! Dense univariate polynomials over a finite field: the ring A = F_q[θ]
//! and its extensions F_{q^m}[θ].
//!
//! Coefficients are stored constant term first with no trailing zeros; the
//! zero polynomial is the empty vector. The printed variable is `t`.

use std::fmt;

use crate::algebra::field::{Embedding, FieldDescriptor, FieldElement};
use crate::error::{Error, Result};

/// Default per-call enumeration budget (number of monic polynomials).
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldDescriptor,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero(field: &FieldDescriptor) -> Self {
        Polynomial {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldDescriptor) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &FieldDescriptor, c: FieldElement) -> Self {
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    /// The variable θ.
    pub fn x(field: &FieldDescriptor) -> Self {
        Polynomial {
            field: field.clone(),
            coeffs: vec![field.zero(), field.one()],
        }
    }

    pub fn monomial(field: &FieldDescriptor, c: FieldElement, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero(field);
        }
        let mut coeffs = vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_coeffs(field: &FieldDescriptor, coeffs: Vec<FieldElement>) -> Self {
        let mut p = Polynomial {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(&self.field.one())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "mixed coefficient fields");
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for i in 0..len {
            coeffs.push(self.field.add(&self.coeff(i), &other.coeff(i)));
        }
        Self::from_coeffs(&self.field, coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Polynomial {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "mixed coefficient fields");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Self::from_coeffs(f, coeffs)
    }

    pub fn mul_scalar(&self, c: &FieldElement) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    /// Multiplies by θ^j.
    pub fn shifted(&self, j: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); j];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let f = &self.field;
        let dd = divisor.degree().unwrap();
        if self.degree().map_or(true, |d| d < dd) {
            return (Self::zero(f), self.clone());
        }
        let lead_inv = f
            .inv(divisor.leading_coeff().unwrap())
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let dq = rem.len() - 1 - dd;
        let mut quot = vec![f.zero(); dq + 1];
        for k in (0..=dq).rev() {
            let c = f.mul(&rem[k + dd], &lead_inv);
            if !c.is_zero() {
                for (j, m) in divisor.coeffs.iter().enumerate() {
                    let t = f.mul(&c, m);
                    rem[k + j] = f.sub(&rem[k + j], &t);
                }
            }
            quot[k] = c;
        }
        (Self::from_coeffs(f, quot), Self::from_coeffs(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.leading_coeff() {
            let inv = self.field.inv(lead).unwrap();
            a = a.mul_scalar(&inv);
        }
        a
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
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

    /// a ↦ a^{p^t}: coefficients to the p^t and exponents times p^t.
    pub fn frobenius_power(&self, t: u32) -> Self {
        if t == 0 || self.is_zero() {
            return self.clone();
        }
        let f = &self.field;
        let stride = (f.characteristic() as u64).pow(t) as usize;
        let mut coeffs = vec![f.zero(); (self.coeffs.len() - 1) * stride + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut cc = c.clone();
                for _ in 0..t {
                    cc = f.frobenius(&cc);
                }
                coeffs[i * stride] = cc;
            }
        }
        Polynomial {
            field: f.clone(),
            coeffs,
        }
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.mul(&acc, x);
            acc = f.add(&acc, c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let scalar = f.from_prime_subfield((i as u64 % f.characteristic() as u64) as u32);
                f.mul(c, &scalar)
            })
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    /// Applies an embedding to every coefficient.
    pub fn map_coeffs(&self, emb: &Embedding) -> Polynomial {
        assert_eq!(*emb.subfield(), self.field, "embedding domain mismatch");
        let coeffs = self.coeffs.iter().map(|c| emb.apply(c)).collect();
        Polynomial {
            field: emb.superfield().clone(),
            coeffs,
        }
    }

    /// Distinct-degree irreducibility: θ^{q^d} ≡ θ (mod f) and
    /// gcd(θ^{q^{d/ℓ}} − θ, f) = 1 for each prime ℓ | d.
    pub fn is_irreducible(&self) -> Result<bool> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = self.degree().unwrap();
        if d == 0 {
            return Ok(false);
        }
        if d == 1 {
            return Ok(true);
        }
        let q = self.field.order();
        let xq_end = self.qth_power_mod(&Self::x(&self.field), d as u32);
        if xq_end != Self::x(&self.field).rem(self) {
            return Ok(false);
        }
        for l in crate::algebra::field::prime_factors(d as u64) {
            let reps = d as u32 / l as u32;
            let xr = self.qth_power_mod(&Self::x(&self.field), reps);
            let diff = xr.sub(&Self::x(&self.field));
            let g = diff.gcd(self);
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
        let _ = q;
        Ok(true)
    }

    /// base^{q^reps} mod self, q the coefficient field order.
    fn qth_power_mod(&self, base: &Self, reps: u32) -> Self {
        let q = self.field.order();
        let mut cur = base.rem(self);
        for _ in 0..reps {
            cur = cur.powmod(q, self);
        }
        cur
    }

    /// self^e mod `modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(modulus);
            }
        }
        acc
    }

    /// Flat digit key for hashing residues.
    pub fn digit_key(&self) -> Vec<u32> {
        let mut key = Vec::with_capacity(self.coeffs.len() * self.field.degree() as usize);
        for c in &self.coeffs {
            key.extend_from_slice(c.coeffs());
        }
        key
    }
}

impl fmt::Display for Polynomial {
    /// Prints in the CLI grammar: terms `c*t^e` joined by `+`, highest
    /// degree first; unit coefficients print as bare `t^e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = self.field.one();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let unit = *c == one;
            match (i, unit) {
                (0, _) => write!(f, "{}", self.field.format_element(c))?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{}*t", self.field.format_element(c))?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{}*t^{i}", self.field.format_element(c))?,
            }
        }
        Ok(())
    }
}

/// The i-th monic polynomial of degree `d` in base-q counting order of the
/// non-leading coefficients (constant term least significant).
pub fn monic_by_index(field: &FieldDescriptor, d: usize, mut idx: u64) -> Polynomial {
    let q = field.order();
    let mut coeffs = Vec::with_capacity(d + 1);
    for _ in 0..d {
        coeffs.push(field.element_from_index(idx % q));
        idx /= q;
    }
    debug_assert_eq!(idx, 0, "monic index out of range");
    coeffs.push(field.one());
    Polynomial {
        field: field.clone(),
        coeffs,
    }
}

/// Number of monic polynomials of degree d, if within `budget`.
pub fn monic_count(field: &FieldDescriptor, d: usize, budget: u64) -> Result<u64> {
    let needed = (field.order() as u128).pow(d as u32);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed as u64)
}

/// Iterates all q^d monic polynomials of degree d in counting order.
pub fn monic_enumerate(
    field: &FieldDescriptor,
    d: usize,
    budget: u64,
) -> Result<impl Iterator<Item = Polynomial> + '_> {
    let count = monic_count(field, d, budget)?;
    let field = field.clone();
    Ok((0..count).map(move |i| monic_by_index(&field, d, i)))
}

/// Every monic irreducible of degree ≤ D, ordered by degree then index.
pub fn irreducibles_up_to(
    field: &FieldDescriptor,
    max_degree: usize,
    budget: u64,
) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        for f in monic_enumerate(field, d, budget)? {
            if f.is_irreducible()? {
                out.push(f);
            }
        }
    }
    Ok(out)
}
