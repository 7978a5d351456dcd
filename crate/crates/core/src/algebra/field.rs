//! Finite fields F_{p^n} with canonical moduli, embeddings, and discrete logs.
//!
//! A field is described by its characteristic `p`, its degree `n` over the
//! prime field, and a monic irreducible modulus over Z/p. The modulus is
//! canonical: among all monic irreducibles of degree `n` it minimizes the
//! integer Σ c_i p^i formed from the non-leading coefficients (c_0 least
//! significant). Elements are coefficient vectors of length `n` in the
//! basis 1, u, ..., u^{n-1}, where u is the class of the modulus variable.
//! The same base-p integer key orders elements, picks primitive elements,
//! and picks embedding roots, so every downstream coefficient is
//! reproducible bit for bit.

use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Hard bound on extension degrees accepted by [`FieldDescriptor::new`].
pub const DEGREE_BOUND: u32 = 12;
/// Hard bound on field orders for exhaustive operations (dlog, primitive
/// element search, embedding root search).
pub const ORDER_BOUND: u64 = 1 << 20;

type Coeffs = SmallVec<[u32; 4]>;

/// An element of a finite field, as coefficients over Z/p (length = degree).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Coeffs,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Debug, PartialEq, Eq)]
struct FieldInner {
    p: u32,
    n: u32,
    /// Monic modulus over Z/p, length n+1, constant term first.
    modulus: Vec<u32>,
}

/// A finite field F_{p^n} with its canonical modulus. Cheap to clone.
#[derive(Clone)]
pub struct FieldDescriptor(Arc<FieldInner>);

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for FieldDescriptor {}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{}^{}}}", self.0.p, self.0.n)
    }
}

impl FieldDescriptor {
    /// Builds the canonical descriptor of F_{p^n}.
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !is_prime_u32(p) {
            return Err(Error::NotPrime(p));
        }
        if n < 1 || n > DEGREE_BOUND {
            return Err(Error::DegreeOutOfRange(n, DEGREE_BOUND));
        }
        let order = (p as u128).checked_pow(n).filter(|&o| o <= 1 << 63);
        if order.is_none() {
            return Err(Error::OrderBoundExceeded((p as u128).pow(n), 1 << 63));
        }
        let modulus = canonical_modulus(p, n);
        Ok(FieldDescriptor(Arc::new(FieldInner { p, n, modulus })))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.n
    }

    /// p^n as a u64 (construction guarantees it fits).
    pub fn order(&self) -> u64 {
        (self.0.p as u64).pow(self.0.n)
    }

    /// The canonical modulus over Z/p, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: smallvec::smallvec![0; self.0.n as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_prime_subfield(1)
    }

    /// The class of the modulus variable u (zero in the prime field).
    pub fn generator(&self) -> FieldElement {
        if self.0.n == 1 {
            return self.zero();
        }
        let mut coeffs: Coeffs = smallvec::smallvec![0; self.0.n as usize];
        coeffs[1] = 1;
        FieldElement { coeffs }
    }

    /// Embeds an integer constant via Z/p.
    pub fn from_prime_subfield(&self, c: u32) -> FieldElement {
        let mut coeffs: Coeffs = smallvec::smallvec![0; self.0.n as usize];
        coeffs[0] = c % self.0.p;
        FieldElement { coeffs }
    }

    pub fn from_coeffs(&self, cs: &[u32]) -> FieldElement {
        assert!(cs.len() <= self.0.n as usize, "too many coefficients");
        let mut coeffs: Coeffs = smallvec::smallvec![0; self.0.n as usize];
        for (i, &c) in cs.iter().enumerate() {
            assert!(c < self.0.p, "coefficient {c} out of range");
            coeffs[i] = c;
        }
        FieldElement { coeffs }
    }

    /// Element whose coefficient vector is the base-p expansion of `idx`.
    pub fn element_from_index(&self, mut idx: u64) -> FieldElement {
        let p = self.0.p as u64;
        let mut coeffs: Coeffs = smallvec::smallvec![0; self.0.n as usize];
        for c in coeffs.iter_mut() {
            *c = (idx % p) as u32;
            idx /= p;
        }
        debug_assert_eq!(idx, 0, "index out of range");
        FieldElement { coeffs }
    }

    /// The base-p integer key Σ c_i p^i of an element.
    pub fn index_of(&self, a: &FieldElement) -> u64 {
        let p = self.0.p as u64;
        a.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + c as u64)
    }

    /// All elements in key order. Guarded by [`ORDER_BOUND`].
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement> + '_> {
        if self.order() > ORDER_BOUND {
            return Err(Error::OrderBoundExceeded(self.order() as u128, ORDER_BOUND));
        }
        Ok((0..self.order()).map(move |i| self.element_from_index(i)))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.0.p;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.0.p;
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { p - x })
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.0.p as u64;
        let n = self.0.n as usize;
        if n == 1 {
            let prod = (a.coeffs[0] as u64 * b.coeffs[0] as u64) % p;
            return FieldElement {
                coeffs: smallvec::smallvec![prod as u32],
            };
        }
        // Schoolbook product then reduction by the monic modulus.
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &m) in self.0.modulus.iter().enumerate().take(n) {
                // u^i = u^{i-n} * (u^n mod f) with u^n = -Σ m_j u^j
                let idx = i - n + j;
                prod[idx] = (prod[idx] + c * (p - m as u64) % p) % p;
            }
        }
        let coeffs = prod.iter().take(n).map(|&c| c as u32).collect();
        FieldElement { coeffs }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The p-power Frobenius a ↦ a^p.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.0.p as u64)
    }

    /// a ↦ a^{p^t}.
    pub fn frobenius_iter(&self, a: &FieldElement, t: u32) -> FieldElement {
        let mut x = a.clone();
        for _ in 0..(t % self.0.n.max(1)) {
            x = self.frobenius(&x);
        }
        x
    }

    /// The unique p-th root (inverse Frobenius).
    pub fn pth_root(&self, a: &FieldElement) -> FieldElement {
        self.frobenius_iter(a, self.0.n - 1 + if self.0.n == 1 { 1 } else { 0 })
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DlogOfZero);
        }
        let m = self.order() - 1;
        let mut ord = m;
        for q in prime_factors(m) {
            while ord % q == 0 && self.pow(a, ord / q) == self.one() {
                ord /= q;
            }
        }
        Ok(ord)
    }

    /// The element of order p^n - 1 with minimal base-p key.
    pub fn primitive_element(&self) -> Result<FieldElement> {
        if self.order() > ORDER_BOUND {
            return Err(Error::OrderBoundExceeded(self.order() as u128, ORDER_BOUND));
        }
        let target = self.order() - 1;
        for i in 1..self.order() {
            let a = self.element_from_index(i);
            if self.multiplicative_order(&a)? == target {
                return Ok(a);
            }
        }
        unreachable!("finite field has a primitive element")
    }

    /// Discrete log base `g` (g primitive) by baby-step giant-step.
    pub fn dlog(&self, g: &FieldElement, a: &FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DlogOfZero);
        }
        let m = self.order() - 1;
        if self.order() > ORDER_BOUND {
            return Err(Error::OrderBoundExceeded(self.order() as u128, ORDER_BOUND));
        }
        if self.multiplicative_order(g)? != m {
            return Err(Error::NotPrimitive);
        }
        let step = (m as f64).sqrt().ceil() as u64 + 1;
        let mut baby = std::collections::HashMap::with_capacity(step as usize);
        let mut cur = self.one();
        for j in 0..step {
            baby.entry(cur.clone()).or_insert(j);
            cur = self.mul(&cur, g);
        }
        // giant steps: a * (g^{-step})^i
        let giant = self.inv(&self.pow(g, step))?;
        let mut cur = a.clone();
        for i in 0..=m / step {
            if let Some(&j) = baby.get(&cur) {
                return Ok((i * step + j) % m);
            }
            cur = self.mul(&cur, &giant);
        }
        unreachable!("dlog exists for every nonzero element under a primitive base")
    }

    /// Renders an element: a plain integer over prime fields, a
    /// little-endian colon list of digits otherwise ("1:1" = 1 + u).
    pub fn format_element(&self, a: &FieldElement) -> String {
        if self.0.n == 1 {
            return a.coeffs[0].to_string();
        }
        a.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(":")
    }
}

/// The canonical ring embedding of one finite field into another.
///
/// Sends the subfield generator to the root of the subfield modulus whose
/// coefficient vector has minimal base-p key in the target field.
#[derive(Debug, Clone)]
pub struct Embedding {
    sub: FieldDescriptor,
    sup: FieldDescriptor,
    image_of_generator: FieldElement,
}

impl Embedding {
    pub fn new(sub: &FieldDescriptor, sup: &FieldDescriptor) -> Result<Self> {
        if sub.characteristic() != sup.characteristic() {
            return Err(Error::CharacteristicMismatch(
                sub.characteristic(),
                sup.characteristic(),
            ));
        }
        if sup.degree() % sub.degree() != 0 {
            return Err(Error::NonDivisibleDegrees(sub.degree(), sup.degree()));
        }
        let image_of_generator = if sub.degree() == 1 {
            sup.zero()
        } else {
            let mut found = None;
            for x in sup.elements()? {
                if eval_zp_poly(sup, sub.modulus(), &x).is_zero() {
                    found = Some(x);
                    break;
                }
            }
            found.expect("subfield modulus splits in the extension")
        };
        Ok(Embedding {
            sub: sub.clone(),
            sup: sup.clone(),
            image_of_generator,
        })
    }

    pub fn subfield(&self) -> &FieldDescriptor {
        &self.sub
    }

    pub fn superfield(&self) -> &FieldDescriptor {
        &self.sup
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        // Horner in the image of the generator.
        let mut acc = self.sup.zero();
        for &c in a.coeffs().iter().rev() {
            acc = self.sup.mul(&acc, &self.image_of_generator);
            acc = self.sup.add(&acc, &self.sup.from_prime_subfield(c));
        }
        acc
    }
}

/// Evaluates a Z/p-coefficient polynomial at a field element.
fn eval_zp_poly(f: &FieldDescriptor, poly: &[u32], x: &FieldElement) -> FieldElement {
    let mut acc = f.zero();
    for &c in poly.iter().rev() {
        acc = f.mul(&acc, x);
        acc = f.add(&acc, &f.from_prime_subfield(c));
    }
    acc
}

pub(crate) fn is_prime_u32(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    let p = p as u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= x {
        if x % d == 0 {
            out.push(d);
            while x % d == 0 {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

// ---- canonical modulus search (dense Z/p polynomial arithmetic) ----

fn zp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn zp_rem(p: u64, mut a: Vec<u32>, m: &[u32]) -> Vec<u32> {
    // m monic
    let dm = m.len() - 1;
    while a.len() > dm {
        let c = *a.last().unwrap() as u64;
        let k = a.len() - 1 - dm;
        if c != 0 {
            for (j, &mj) in m.iter().enumerate().take(dm) {
                let t = (a[k + j] as u64 + c * ((p - mj as u64) % p)) % p;
                a[k + j] = t as u32;
            }
        }
        a.pop();
        zp_trim(&mut a);
        if a.is_empty() {
            break;
        }
    }
    a
}

fn zp_mulmod(p: u64, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
        }
    }
    zp_trim(&mut prod);
    zp_rem(p, prod, m)
}

/// x^{p^reps} mod m, starting from `base` (a polynomial mod m).
fn zp_pth_power_iterate(p: u64, base: &[u32], reps: u32, m: &[u32]) -> Vec<u32> {
    let mut cur = base.to_vec();
    for _ in 0..reps {
        // cur^p by square-and-multiply
        let mut acc = vec![1u32];
        let mut b = cur.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = zp_mulmod(p, &acc, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = zp_mulmod(p, &b, &b, m);
            }
        }
        cur = acc;
    }
    cur
}

fn zp_gcd(p: u64, mut a: Vec<u32>, mut b: Vec<u32>) -> Vec<u32> {
    zp_trim(&mut a);
    zp_trim(&mut b);
    while !b.is_empty() {
        // make b monic for zp_rem
        let lead = *b.last().unwrap() as u64;
        let inv = mod_inv(lead, p);
        let monic: Vec<u32> = b.iter().map(|&c| ((c as u64 * inv) % p) as u32).collect();
        let r = zp_rem(p, a, &monic);
        a = b;
        b = r;
        zp_trim(&mut b);
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Rabin irreducibility for a monic polynomial over Z/p.
fn zp_is_irreducible(p: u64, m: &[u32]) -> bool {
    let n = (m.len() - 1) as u32;
    if n == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    // x^{p^n} == x (mod m)
    let xq = zp_pth_power_iterate(p, &x, n, m);
    let mut diff = xq.clone();
    diff.resize(diff.len().max(2), 0);
    diff[1] = ((diff[1] as u64 + p - 1) % p) as u32;
    let mut diff = diff;
    zp_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    for q in prime_factors(n as u64) {
        let reps = n / q as u32;
        let xr = zp_pth_power_iterate(p, &x, reps, m);
        let mut d = xr;
        d.resize(d.len().max(2), 0);
        d[1] = ((d[1] as u64 + p - 1) % p) as u32;
        let mut d = d;
        zp_trim(&mut d);
        let g = zp_gcd(p, m.to_vec(), d);
        if !(g.len() == 1) {
            return false;
        }
    }
    true
}

/// The monic irreducible of degree n over Z/p minimizing the base-p key of
/// its non-leading coefficients.
fn canonical_modulus(p: u32, n: u32) -> Vec<u32> {
    let pu = p as u64;
    let count = (pu as u128).pow(n);
    let mut key: u128 = 0;
    loop {
        debug_assert!(key < count, "no irreducible of degree {n} found");
        let mut m = vec![0u32; n as usize + 1];
        let mut k = key;
        for c in m.iter_mut().take(n as usize) {
            *c = (k % pu as u128) as u32;
            k /= pu as u128;
        }
        m[n as usize] = 1;
        if zp_is_irreducible(pu, &m) {
            return m;
        }
        key += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli_of_small_fields() {
        let f2 = FieldDescriptor::new(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]); // u
        let f4 = FieldDescriptor::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]); // u^2+u+1
        let f3 = FieldDescriptor::new(3, 1).unwrap();
        assert_eq!(f3.modulus(), &[0, 1]);
        let f8 = FieldDescriptor::new(2, 3).unwrap();
        // u^3+u+1 has key 3; u^3+1 = (u+1)(u^2+u+1) reducible
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldDescriptor::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            FieldDescriptor::new(2, 13),
            Err(Error::DegreeOutOfRange(13, _))
        ));
        assert!(matches!(
            FieldDescriptor::new(2, 0),
            Err(Error::DegreeOutOfRange(0, _))
        ));
    }

    #[test]
    fn deterministic_across_calls() {
        let a = FieldDescriptor::new(3, 4).unwrap();
        let b = FieldDescriptor::new(3, 4).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a, b);
    }

    #[test]
    fn f4_arithmetic() {
        let f4 = FieldDescriptor::new(2, 2).unwrap();
        let u = f4.generator();
        // u^2 = u + 1 under u^2+u+1
        let u2 = f4.mul(&u, &u);
        assert_eq!(u2, f4.add(&u, &f4.one()));
        assert_eq!(f4.pow(&u, 3), f4.one());
        assert_eq!(f4.inv(&u).unwrap(), u2);
    }

    #[test]
    fn frobenius_is_additive() {
        for (p, n) in [(2u32, 4u32), (3, 3), (5, 2)] {
            let f = FieldDescriptor::new(p, n).unwrap();
            let elems: Vec<_> = f.elements().unwrap().collect();
            for a in elems.iter().step_by(3) {
                for b in elems.iter().step_by(5) {
                    let lhs = f.frobenius(&f.add(a, b));
                    let rhs = f.add(&f.frobenius(a), &f.frobenius(b));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f = FieldDescriptor::new(3, 3).unwrap();
        for a in f.elements().unwrap() {
            assert_eq!(f.pth_root(&f.frobenius(&a)), a);
        }
    }

    #[test]
    fn primitive_element_of_f5_is_2() {
        let f5 = FieldDescriptor::new(5, 1).unwrap();
        let g = f5.primitive_element().unwrap();
        assert_eq!(g, f5.from_prime_subfield(2));
        assert_eq!(f5.multiplicative_order(&g).unwrap(), 4);
    }

    #[test]
    fn dlog_in_f4() {
        let f4 = FieldDescriptor::new(2, 2).unwrap();
        let g = f4.generator();
        let u_plus_1 = f4.add(&g, &f4.one());
        assert_eq!(f4.dlog(&g, &u_plus_1).unwrap(), 2);
        assert_eq!(f4.dlog(&g, &f4.one()).unwrap(), 0);
    }

    #[test]
    fn dlog_pow_round_trip() {
        for (p, n) in [(2u32, 6u32), (3, 4), (7, 2)] {
            let f = FieldDescriptor::new(p, n).unwrap();
            let g = f.primitive_element().unwrap();
            for i in 1..f.order().min(200) {
                let a = f.element_from_index(i);
                let t = f.dlog(&g, &a).unwrap();
                assert_eq!(f.pow(&g, t), a, "p={p} n={n} i={i}");
            }
        }
    }

    #[test]
    fn dlog_rejects_zero_and_nonprimitive() {
        let f4 = FieldDescriptor::new(2, 2).unwrap();
        let g = f4.generator();
        assert_eq!(f4.dlog(&g, &f4.zero()).unwrap_err(), Error::DlogOfZero);
        assert_eq!(
            f4.dlog(&f4.one(), &g).unwrap_err(),
            Error::NotPrimitive
        );
    }

    #[test]
    fn embedding_prime_field_fixes_constants() {
        let f2 = FieldDescriptor::new(2, 1).unwrap();
        let f4 = FieldDescriptor::new(2, 2).unwrap();
        let emb = Embedding::new(&f2, &f4).unwrap();
        assert_eq!(emb.apply(&f2.one()), f4.one());
        assert_eq!(emb.apply(&f2.zero()), f4.zero());
    }

    #[test]
    fn embedding_f4_into_f16_image_satisfies_modulus() {
        let f4 = FieldDescriptor::new(2, 2).unwrap();
        let f16 = FieldDescriptor::new(2, 4).unwrap();
        let emb = Embedding::new(&f4, &f16).unwrap();
        let g = emb.apply(&f4.generator());
        // g^2 + g + 1 = 0
        let val = f16.add(&f16.add(&f16.mul(&g, &g), &g), &f16.one());
        assert!(val.is_zero());
    }

    #[test]
    fn embedding_rejects_non_divisible() {
        let f4 = FieldDescriptor::new(2, 2).unwrap();
        let f8 = FieldDescriptor::new(2, 3).unwrap();
        assert_eq!(
            Embedding::new(&f4, &f8).unwrap_err(),
            Error::NonDivisibleDegrees(2, 3)
        );
        let f9 = FieldDescriptor::new(3, 2).unwrap();
        assert!(matches!(
            Embedding::new(&f4, &f9),
            Err(Error::CharacteristicMismatch(2, 3))
        ));
    }

    #[test]
    fn embedding_is_a_ring_map_exhaustively() {
        for (p, n, m) in [(2u32, 2u32, 4u32), (2, 3, 6), (3, 1, 2), (3, 2, 4)] {
            let sub = FieldDescriptor::new(p, n).unwrap();
            let sup = FieldDescriptor::new(p, m).unwrap();
            let emb = Embedding::new(&sub, &sup).unwrap();
            let elems: Vec<_> = sub.elements().unwrap().collect();
            for a in &elems {
                for b in &elems {
                    assert_eq!(
                        emb.apply(&sub.add(a, b)),
                        sup.add(&emb.apply(a), &emb.apply(b))
                    );
                    assert_eq!(
                        emb.apply(&sub.mul(a, b)),
                        sup.mul(&emb.apply(a), &emb.apply(b))
                    );
                }
            }
        }
    }

    #[test]
    fn towers_commute_on_prime_constants() {
        for p in [2u32, 3] {
            let base = FieldDescriptor::new(p, 1).unwrap();
            let mid = FieldDescriptor::new(p, 2).unwrap();
            let top = FieldDescriptor::new(p, 4).unwrap();
            let lo = Embedding::new(&base, &mid).unwrap();
            let hi = Embedding::new(&mid, &top).unwrap();
            let direct = Embedding::new(&base, &top).unwrap();
            for c in base.elements().unwrap() {
                assert_eq!(hi.apply(&lo.apply(&c)), direct.apply(&c));
            }
        }
    }
}
