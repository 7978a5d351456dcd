//! Precision-tracked Laurent series in the local fields K = F_q((1/θ)),
//! their unramified extensions F_{q^m}((1/θ)), and tame totally ramified
//! extensions with uniformizer relation π^e = c·θ^{-1}.
//!
//! A series stores its leading exponent v0 (in π-units), a dense
//! coefficient window, and an absolute precision N: exponents ≥ N are
//! unknown. `prec = None` marks an exact series (every unstored
//! coefficient is zero). Arithmetic is exact on the known window and
//! propagates precision explicitly: addition keeps min(N₁, N₂),
//! multiplication and inversion keep the minimum relative precision.
//! The normalized θ-valuation of a series is v0/e; v(θ^{-1}) = 1.

use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::algebra::field::{Embedding, FieldDescriptor, FieldElement};
use crate::algebra::poly::Polynomial;
use crate::error::{Error, Result};
use crate::localfield::digits::{PAdicDigits, Tail};

/// Default relative precision, in π-digits, for truncating exact series.
pub const DEFAULT_REL_PREC: i64 = 64;

#[derive(Debug, PartialEq, Eq)]
struct LfInner {
    residue: FieldDescriptor,
    e: u32,
    twist: FieldElement,
}

/// A local field F_{q^m}((π)) with π^e = twist·θ^{-1}. Cheap to clone.
#[derive(Clone)]
pub struct LocalFieldDescriptor(Arc<LfInner>);

impl PartialEq for LocalFieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for LocalFieldDescriptor {}

impl fmt::Debug for LocalFieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{{{}^{}}}((pi)), pi^{} = c/theta",
            self.0.residue.characteristic(),
            self.0.residue.degree(),
            self.0.e
        )
    }
}

impl LocalFieldDescriptor {
    /// The unramified field F_{q^m}((1/θ)): e = 1, π = θ^{-1}.
    pub fn unramified(residue: &FieldDescriptor) -> Self {
        LocalFieldDescriptor(Arc::new(LfInner {
            residue: residue.clone(),
            e: 1,
            twist: residue.one(),
        }))
    }

    /// A tame totally ramified extension with π^e = twist·θ^{-1}.
    pub fn tame(residue: &FieldDescriptor, e: u32, twist: FieldElement) -> Result<Self> {
        if e == 0 || e % residue.characteristic() == 0 && e > 1 {
            return Err(Error::WildRamification(e, residue.characteristic()));
        }
        if twist.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if e == 1 && twist != residue.one() {
            return Err(Error::Parse("e = 1 forces twist 1".into()));
        }
        Ok(LocalFieldDescriptor(Arc::new(LfInner {
            residue: residue.clone(),
            e,
            twist,
        })))
    }

    pub fn residue(&self) -> &FieldDescriptor {
        &self.0.residue
    }

    pub fn ram_index(&self) -> u32 {
        self.0.e
    }

    pub fn twist(&self) -> &FieldElement {
        &self.0.twist
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    desc: LocalFieldDescriptor,
    v0: i64,
    /// Coefficients at exponents v0, v0+1, ...; first is nonzero unless the
    /// window is empty.
    coeffs: Vec<FieldElement>,
    /// Absolute precision: exponents ≥ N unknown. None = exact.
    prec: Option<i64>,
}

impl LaurentSeries {
    fn normalized(desc: LocalFieldDescriptor, mut v0: i64, mut coeffs: Vec<FieldElement>, prec: Option<i64>) -> Self {
        if let Some(n) = prec {
            let keep = (n - v0).max(0) as usize;
            coeffs.truncate(keep.min(coeffs.len()));
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(k) => {
                coeffs.drain(..k);
                v0 += k as i64;
                while coeffs.last().map_or(false, |c| c.is_zero()) {
                    coeffs.pop();
                }
            }
            None => {
                coeffs.clear();
                v0 = match prec {
                    Some(n) => n,
                    None => 0,
                };
            }
        }
        LaurentSeries {
            desc,
            v0,
            coeffs,
            prec,
        }
    }

    pub fn zero(desc: &LocalFieldDescriptor) -> Self {
        Self::normalized(desc.clone(), 0, Vec::new(), None)
    }

    pub fn zero_to_prec(desc: &LocalFieldDescriptor, prec: i64) -> Self {
        Self::normalized(desc.clone(), prec, Vec::new(), Some(prec))
    }

    pub fn one(desc: &LocalFieldDescriptor) -> Self {
        Self::monomial(desc, desc.residue().one(), 0)
    }

    /// c·π^exp, exact.
    pub fn monomial(desc: &LocalFieldDescriptor, c: FieldElement, exp: i64) -> Self {
        Self::normalized(desc.clone(), exp, vec![c], None)
    }

    /// Exact series from (π-exponent, coefficient) terms.
    pub fn from_terms(desc: &LocalFieldDescriptor, terms: &[(i64, FieldElement)]) -> Self {
        if terms.is_empty() {
            return Self::zero(desc);
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![desc.residue().zero(); (hi - lo + 1) as usize];
        let f = desc.residue();
        for (exp, c) in terms {
            let slot = (exp - lo) as usize;
            coeffs[slot] = f.add(&coeffs[slot], c);
        }
        Self::normalized(desc.clone(), lo, coeffs, None)
    }

    /// Exact image of a θ-polynomial: θ^j = twist^j · π^{-ej}.
    pub fn from_polynomial(desc: &LocalFieldDescriptor, poly: &Polynomial) -> Self {
        assert_eq!(poly.field(), desc.residue(), "coefficient field mismatch");
        let terms: Vec<(i64, FieldElement)> = poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let scaled = desc
                    .residue()
                    .mul(c, &desc.residue().pow(desc.twist(), j as u64));
                (-(desc.ram_index() as i64) * j as i64, scaled)
            })
            .collect();
        Self::from_terms(desc, &terms)
    }

    /// Exact image of a Laurent polynomial in θ given as (θ-exponent, coeff)
    /// terms; θ^j = twist^j·π^{-ej} also for negative j.
    pub fn from_theta_terms(desc: &LocalFieldDescriptor, terms: &[(i64, FieldElement)]) -> Self {
        let f = desc.residue();
        let e = desc.ram_index() as i64;
        let pi_terms: Vec<(i64, FieldElement)> = terms
            .iter()
            .map(|(j, c)| {
                let tw = if *j >= 0 {
                    f.pow(desc.twist(), *j as u64)
                } else {
                    f.pow(&f.inv(desc.twist()).unwrap(), (-j) as u64)
                };
                (-e * j, f.mul(c, &tw))
            })
            .collect();
        Self::from_terms(desc, &pi_terms)
    }

    /// θ as an exact series: twist·π^{-e}.
    pub fn theta(desc: &LocalFieldDescriptor) -> Self {
        Self::monomial(desc, desc.twist().clone(), -(desc.ram_index() as i64))
    }

    /// θ^{-1} as an exact series.
    pub fn theta_inv(desc: &LocalFieldDescriptor) -> Self {
        let inv = desc.residue().inv(desc.twist()).unwrap();
        Self::monomial(desc, inv, desc.ram_index() as i64)
    }

    pub fn descriptor(&self) -> &LocalFieldDescriptor {
        &self.desc
    }

    /// Absolute precision; None for exact series.
    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// True if no nonzero coefficient is known (exact zero or zero window).
    pub fn is_zero_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// π-adic valuation, None when no nonzero coefficient is known.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.v0)
        }
    }

    /// Normalized θ-valuation v0/e.
    pub fn valuation_theta(&self) -> Option<Ratio<i64>> {
        self.valuation()
            .map(|v| Ratio::new(v, self.desc.ram_index() as i64))
    }

    /// Coefficient at a π-exponent; None when beyond the precision window.
    pub fn coeff_at(&self, exp: i64) -> Option<FieldElement> {
        if let Some(n) = self.prec {
            if exp >= n {
                return None;
            }
        }
        if exp < self.v0 {
            return Some(self.desc.residue().zero());
        }
        let idx = (exp - self.v0) as usize;
        Some(
            self.coeffs
                .get(idx)
                .cloned()
                .unwrap_or_else(|| self.desc.residue().zero()),
        )
    }

    /// Nonzero exponents of the known window, ascending.
    pub fn support(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| self.v0 + i as i64)
            .collect()
    }

    pub fn truncated(&self, prec: i64) -> Self {
        let new_prec = match self.prec {
            Some(n) => n.min(prec),
            None => prec,
        };
        Self::normalized(
            self.desc.clone(),
            self.v0,
            self.coeffs.clone(),
            Some(new_prec),
        )
    }

    pub fn neg(&self) -> Self {
        let f = self.desc.residue();
        let coeffs = self.coeffs.iter().map(|c| f.neg(c)).collect();
        Self::normalized(self.desc.clone(), self.v0, coeffs, self.prec)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.desc, other.desc, "descriptor mismatch");
        let f = self.desc.residue();
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(i64::MAX).min(b.unwrap_or(i64::MAX))),
        };
        let lo = self
            .valuation()
            .unwrap_or(i64::MAX)
            .min(other.valuation().unwrap_or(i64::MAX));
        if lo == i64::MAX {
            return match prec {
                Some(n) => Self::zero_to_prec(&self.desc, n),
                None => Self::zero(&self.desc),
            };
        }
        let hi_known = |s: &Self| s.v0 + s.coeffs.len() as i64;
        let hi = match prec {
            Some(n) => n,
            None => hi_known(self).max(hi_known(other)),
        };
        let mut coeffs = Vec::with_capacity((hi - lo).max(0) as usize);
        for exp in lo..hi {
            let a = self.coeff_at(exp).unwrap_or_else(|| f.zero());
            let b = other.coeff_at(exp).unwrap_or_else(|| f.zero());
            coeffs.push(f.add(&a, &b));
        }
        Self::normalized(self.desc.clone(), lo, coeffs, prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.desc, other.desc, "descriptor mismatch");
        let f = self.desc.residue();
        // error terms a·O(π^{N_b}) and b·O(π^{N_a}); a zero window counts
        // with its precision as the valuation bound
        let vb = |s: &Self| s.valuation().unwrap_or_else(|| s.prec.unwrap_or(0));
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            _ => {
                let pa = self
                    .prec
                    .map(|n| n.saturating_add(vb(other)))
                    .unwrap_or(i64::MAX);
                let pb = other
                    .prec
                    .map(|n| n.saturating_add(vb(self)))
                    .unwrap_or(i64::MAX);
                Some(pa.min(pb))
            }
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return match prec {
                Some(n) => Self::zero_to_prec(&self.desc, n),
                None => Self::zero(&self.desc),
            };
        }
        let v0 = self.v0 + other.v0;
        let out_len = match prec {
            Some(n) => (n - v0).max(0) as usize,
            None => self.coeffs.len() + other.coeffs.len() - 1,
        };
        let mut coeffs = vec![f.zero(); out_len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if i >= out_len {
                break;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= out_len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Self::normalized(self.desc.clone(), v0, coeffs, prec)
    }

    pub fn mul_scalar(&self, c: &FieldElement) -> Self {
        let f = self.desc.residue();
        let coeffs = self.coeffs.iter().map(|a| f.mul(a, c)).collect();
        Self::normalized(self.desc.clone(), self.v0, coeffs, self.prec)
    }

    /// Multiplies by π^k.
    pub fn shift(&self, k: i64) -> Self {
        Self::normalized(
            self.desc.clone(),
            self.v0 + k,
            self.coeffs.clone(),
            self.prec.map(|n| n + k),
        )
    }

    /// Inverse to the operand's relative precision. Exact inputs must be
    /// monomials or truncated first.
    pub fn inv(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Err(if self.is_exact() {
                Error::DivisionByZero
            } else {
                Error::InvertZeroSeries
            });
        }
        let f = self.desc.residue();
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                return Ok(Self::monomial(&self.desc, f.inv(&self.coeffs[0])?, -self.v0));
            }
            return Err(Error::TruncationRequired);
        }
        let rel = (self.prec.unwrap() - self.v0) as usize;
        let lead_inv = f.inv(&self.coeffs[0])?;
        let mut out = vec![f.zero(); rel];
        out[0] = lead_inv.clone();
        let a = |j: usize| -> FieldElement {
            self.coeffs.get(j).cloned().unwrap_or_else(|| f.zero())
        };
        for k in 1..rel {
            let mut s = f.zero();
            for j in 1..=k {
                let aj = a(j);
                if aj.is_zero() || out[k - j].is_zero() {
                    continue;
                }
                s = f.add(&s, &f.mul(&aj, &out[k - j]));
            }
            out[k] = f.neg(&f.mul(&lead_inv, &s));
        }
        Ok(Self::normalized(
            self.desc.clone(),
            -self.v0,
            out,
            Some(-self.v0 + rel as i64),
        ))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut e = n as u64;
        let mut base = self.clone();
        let mut acc = Self::one(&self.desc);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// The p-power Frobenius: coefficients^p, exponents×p, precision×p.
    pub fn frobenius(&self) -> Self {
        let f = self.desc.residue();
        let p = f.characteristic() as i64;
        if self.coeffs.is_empty() {
            return Self::normalized(
                self.desc.clone(),
                self.v0 * p,
                Vec::new(),
                self.prec.map(|n| n * p),
            );
        }
        let len = (self.coeffs.len() - 1) * p as usize + 1;
        let mut coeffs = vec![f.zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * p as usize] = f.frobenius(c);
            }
        }
        Self::normalized(
            self.desc.clone(),
            self.v0 * p,
            coeffs,
            self.prec.map(|n| n * p),
        )
    }

    /// x ↦ x^{p^t} by iterated Frobenius.
    pub fn frobenius_iter(&self, t: u32) -> Self {
        let mut s = self.clone();
        for _ in 0..t {
            s = s.frobenius();
        }
        s
    }

    /// Coefficientwise a ↦ a^{p^t}, exponents unchanged (Galois conjugation
    /// over the subfield fixed by that power of Frobenius).
    pub fn coeff_frobenius(&self, t: u32) -> Self {
        let f = self.desc.residue();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| f.frobenius_iter(c, t))
            .collect();
        Self::normalized(self.desc.clone(), self.v0, coeffs, self.prec)
    }

    /// Embeds coefficients into a larger residue field with the same
    /// uniformizer relation.
    pub fn map_residue(&self, emb: &Embedding, target: &LocalFieldDescriptor) -> Self {
        assert_eq!(emb.subfield(), self.desc.residue());
        assert_eq!(emb.superfield(), target.residue());
        assert_eq!(self.desc.ram_index(), target.ram_index());
        assert_eq!(emb.apply(self.desc.twist()), *target.twist());
        let coeffs = self.coeffs.iter().map(|c| emb.apply(c)).collect();
        Self::normalized(target.clone(), self.v0, coeffs, self.prec)
    }

    /// Exact equality of all coefficients on the common known window.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.desc != other.desc {
            return false;
        }
        let hi = match (self.prec, other.prec) {
            (None, None) => {
                return self.v0 == other.v0 && self.coeffs == other.coeffs;
            }
            (a, b) => a.unwrap_or(i64::MAX).min(b.unwrap_or(i64::MAX)),
        };
        let lo = self.v0.min(other.v0).min(hi);
        for exp in lo..hi {
            if self.coeff_at(exp) != other.coeff_at(exp) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            write!(
                f,
                "({})pi^{}",
                self.desc.residue().format_element(c),
                self.v0 + i as i64
            )?;
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        if let Some(n) = self.prec {
            write!(f, " + O(pi^{n})")?;
        }
        Ok(())
    }
}

/// The one-unit ⟨a⟩ = a·θ^{-deg a} of a monic polynomial, exact.
pub fn bracket(desc: &LocalFieldDescriptor, a: &Polynomial) -> Result<LaurentSeries> {
    if !a.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = a.degree().unwrap() as i64;
    let theta_inv_pow = LaurentSeries::theta_inv(desc).pow(d)?;
    Ok(LaurentSeries::from_polynomial(desc, a).mul(&theta_inv_pow))
}

/// u^y for a one-unit u and integer y given by base-q digits:
/// u^y = Π_i (u^{q^i})^{c_i}, with an all-(q-1) tail handled exactly via
/// Σ_{i≥L}(q-1)q^i = -q^L, i.e. a final division by u^{q^L}.
pub fn one_unit_power(u: &LaurentSeries, y: &PAdicDigits) -> Result<LaurentSeries> {
    let f = u.descriptor().residue();
    let p = f.characteristic();
    let q = y.base();
    let mut m0 = 0u32;
    let mut t = 1u64;
    while t < q as u64 {
        t *= p as u64;
        m0 += 1;
    }
    if t != q as u64 {
        return Err(Error::Parse(format!(
            "digit base {q} is not a power of the characteristic {p}"
        )));
    }
    if u.valuation() != Some(0)
        || u.coeff_at(0) != Some(f.one())
        || u.prec().map_or(false, |n| n < 1)
    {
        return Err(Error::NotOneUnit);
    }
    let mut acc = LaurentSeries::one(u.descriptor());
    let mut power = u.clone();
    for &c in y.explicit_digits() {
        if c > 0 {
            acc = acc.mul(&power.pow(c as i64)?);
        }
        power = power.frobenius_iter(m0);
    }
    if y.tail() == Tail::Nines {
        acc = acc.mul(&power.inv()?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> LocalFieldDescriptor {
        LocalFieldDescriptor::unramified(&FieldDescriptor::new(2, 1).unwrap())
    }
    fn k3() -> LocalFieldDescriptor {
        LocalFieldDescriptor::unramified(&FieldDescriptor::new(3, 1).unwrap())
    }

    #[test]
    fn geometric_series_inverse() {
        let k = k2();
        let f = k.residue();
        // 1 - θ^{-1}, truncated at precision 8
        let s = LaurentSeries::from_terms(&k, &[(0, f.one()), (1, f.one())]).truncated(8);
        let inv = s.inv().unwrap();
        for exp in 0..8 {
            assert_eq!(inv.coeff_at(exp), Some(f.one()), "exp={exp}");
        }
        assert_eq!(inv.coeff_at(8), None);
        assert!(s.mul(&inv).agrees_with(&LaurentSeries::one(&k)));
    }

    #[test]
    fn theta_times_theta_inv_is_one() {
        for desc in [k2(), k3()] {
            let prod = LaurentSeries::theta(&desc).mul(&LaurentSeries::theta_inv(&desc));
            assert_eq!(prod, LaurentSeries::one(&desc));
        }
    }

    #[test]
    fn frobenius_squares_over_f2() {
        let k = k2();
        let f = k.residue();
        let s = LaurentSeries::from_terms(&k, &[(0, f.one()), (1, f.one())]);
        let sq = s.mul(&s);
        assert_eq!(sq, s.frobenius());
        assert_eq!(sq.support(), vec![0, 2]);
    }

    #[test]
    fn precision_propagation() {
        let k = k2();
        let f = k.residue();
        let a = LaurentSeries::from_terms(&k, &[(0, f.one())]).truncated(10);
        let b = LaurentSeries::from_terms(&k, &[(2, f.one())]).truncated(5);
        assert_eq!(a.add(&b).prec(), Some(5));
        // mul: min(v_a + N_b, v_b + N_a) = min(0+5, 2+10) = 5
        assert_eq!(a.mul(&b).prec(), Some(5));
        // relative precision of the inverse matches the input
        let inv = b.inv().unwrap();
        assert_eq!(inv.valuation(), Some(-2));
        assert_eq!(inv.prec(), Some(1)); // relative 3 digits kept
    }

    #[test]
    fn valuation_laws() {
        let k = k3();
        let f = k.residue();
        let a = LaurentSeries::from_terms(&k, &[(1, f.one()), (3, f.from_prime_subfield(2))]);
        let b = LaurentSeries::from_terms(&k, &[(2, f.from_prime_subfield(2))]);
        assert_eq!(a.mul(&b).valuation(), Some(3));
        assert_eq!(a.add(&b).valuation(), Some(1));
        // equal valuations may cancel
        let c = a.neg();
        assert!(a.add(&c).is_zero_window());
    }

    #[test]
    fn bracket_examples() {
        let k = k2();
        let f2 = FieldDescriptor::new(2, 1).unwrap();
        let theta = Polynomial::x(&f2);
        assert_eq!(bracket(&k, &theta).unwrap(), LaurentSeries::one(&k));
        let theta_plus_1 = Polynomial::from_coeffs(&f2, vec![f2.one(), f2.one()]);
        let b = bracket(&k, &theta_plus_1).unwrap();
        assert_eq!(b.support(), vec![0, 1]);

        let k3 = k3();
        let f3 = FieldDescriptor::new(3, 1).unwrap();
        // θ² + θ over F_3: ⟨a⟩ = 1 + θ^{-1}
        let a = Polynomial::from_coeffs(&f3, vec![f3.zero(), f3.one(), f3.one()]);
        let b = bracket(&k3, &a).unwrap();
        assert_eq!(b.support(), vec![0, 1]);
        let nonmonic = Polynomial::from_coeffs(&f3, vec![f3.one(), f3.from_prime_subfield(2)]);
        assert_eq!(bracket(&k3, &nonmonic).unwrap_err(), Error::NotMonic);
    }

    #[test]
    fn one_unit_power_matches_pow() {
        let k = k2();
        let f2 = FieldDescriptor::new(2, 1).unwrap();
        let theta_plus_1 = Polynomial::from_coeffs(&f2, vec![f2.one(), f2.one()]);
        let u = bracket(&k, &theta_plus_1).unwrap().truncated(24);

        // u^0 = 1
        let one = one_unit_power(&u, &PAdicDigits::from_int(2, 0)).unwrap();
        assert!(one.agrees_with(&LaurentSeries::one(&k)));

        // u^{-1} via all-ones digits equals the series inverse
        let inv_digits = one_unit_power(&u, &PAdicDigits::from_int(2, -1)).unwrap();
        assert!(inv_digits.agrees_with(&u.inv().unwrap()));

        // u^{2}·u^{3} = u^{5}
        let u2 = one_unit_power(&u, &PAdicDigits::from_int(2, 2)).unwrap();
        let u3 = one_unit_power(&u, &PAdicDigits::from_int(2, 3)).unwrap();
        assert!(u2.mul(&u3).agrees_with(&u.pow(5).unwrap()));

        // negative integers match ls_pow with a negative exponent
        for y in [-2i64, -3, -5] {
            let via_digits = one_unit_power(&u, &PAdicDigits::from_int(2, y)).unwrap();
            assert!(via_digits.agrees_with(&u.pow(y).unwrap()), "y={y}");
        }
    }

    #[test]
    fn one_unit_power_rejects_non_units() {
        let k = k2();
        let theta = LaurentSeries::theta(&k);
        assert_eq!(
            one_unit_power(&theta, &PAdicDigits::from_int(2, 3)).unwrap_err(),
            Error::NotOneUnit
        );
    }

    #[test]
    fn exact_powers_stay_exact() {
        let k = k3();
        let f = k.residue();
        let u = LaurentSeries::from_terms(&k, &[(0, f.one()), (1, f.from_prime_subfield(2))]);
        let r = one_unit_power(&u, &PAdicDigits::from_int(3, 7)).unwrap();
        assert!(r.is_exact());
        assert_eq!(r, u.pow(7).unwrap());
    }

    #[test]
    fn tame_descriptor_constraints() {
        let f3 = FieldDescriptor::new(3, 1).unwrap();
        let minus_one = f3.from_prime_subfield(2);
        let k1 = LocalFieldDescriptor::tame(&f3, 2, minus_one).unwrap();
        assert_eq!(k1.ram_index(), 2);
        // θ = twist·π^{-2}
        let theta = LaurentSeries::theta(&k1);
        assert_eq!(theta.valuation(), Some(-2));
        assert!(LocalFieldDescriptor::tame(&f3, 3, f3.one()).is_err());
        assert!(LocalFieldDescriptor::tame(&f3, 1, f3.from_prime_subfield(2)).is_err());
    }

    #[test]
    fn ramified_theta_relation() {
        let f3 = FieldDescriptor::new(3, 1).unwrap();
        let k1 = LocalFieldDescriptor::tame(&f3, 2, f3.from_prime_subfield(2)).unwrap();
        // π^2 = -θ^{-1}: check θ·π^2 = -1
        let pi_sq = LaurentSeries::monomial(&k1, f3.one(), 2);
        let prod = LaurentSeries::theta(&k1).mul(&pi_sq);
        assert_eq!(
            prod,
            LaurentSeries::monomial(&k1, f3.from_prime_subfield(2), 0)
        );
    }
}
