//! Base-q digit expansions of p-adic integers with an eventually-constant
//! tail.
//!
//! A value is Σ c_i q^i over the explicit digits plus a constant tail of
//! either all zeros or all (q-1)s. An all-(q-1) tail after L explicit
//! digits contributes Σ_{i≥L} (q-1)q^i = -q^L, so the representable values
//! are exactly the rational integers inside Z_p: nonnegative with the zero
//! tail, negative with the (q-1) tail.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    /// All digits beyond the explicit ones are 0.
    Zero,
    /// All digits beyond the explicit ones are q-1.
    Nines,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicDigits {
    q: u32,
    digits: Vec<u32>,
    tail: Tail,
}

impl PAdicDigits {
    /// Canonical form: trailing digits equal to the tail digit are absorbed.
    pub fn new(q: u32, mut digits: Vec<u32>, tail: Tail) -> Result<Self> {
        if q < 2 {
            return Err(Error::Parse(format!("digit base {q} < 2")));
        }
        if digits.iter().any(|&d| d >= q) {
            return Err(Error::Parse("digit out of range".into()));
        }
        let td = tail_digit(q, tail);
        while digits.last() == Some(&td) {
            digits.pop();
        }
        Ok(PAdicDigits { q, digits, tail })
    }

    pub fn from_int(q: u32, y: i64) -> Self {
        assert!(q >= 2);
        if y >= 0 {
            let mut digits = Vec::new();
            let mut m = y as u64;
            while m > 0 {
                digits.push((m % q as u64) as u32);
                m /= q as u64;
            }
            PAdicDigits {
                q,
                digits,
                tail: Tail::Zero,
            }
        } else {
            Self::from_int(q, y.checked_neg().expect("i64::MIN unsupported")).negated()
        }
    }

    pub fn zero(q: u32) -> Self {
        Self::from_int(q, 0)
    }

    pub fn base(&self) -> u32 {
        self.q
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn explicit_digits(&self) -> &[u32] {
        &self.digits
    }

    /// The digit at position i, tail included.
    pub fn digit(&self, i: usize) -> u32 {
        self.digits
            .get(i)
            .copied()
            .unwrap_or_else(|| tail_digit(self.q, self.tail))
    }

    /// Digits padded with the tail digit out to `len` positions.
    pub fn padded(&self, len: usize) -> Vec<u32> {
        (0..len.max(self.digits.len())).map(|i| self.digit(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.tail == Tail::Zero && self.digits.is_empty()
    }

    pub fn is_negative(&self) -> bool {
        self.tail == Tail::Nines
    }

    /// Digit sum l_q(y) of a nonnegative value.
    pub fn digit_sum(&self) -> Option<u64> {
        match self.tail {
            Tail::Zero => Some(self.digits.iter().map(|&d| d as u64).sum()),
            Tail::Nines => None,
        }
    }

    /// −y, computed digitwise (complement all digits, flip the tail, add 1).
    pub fn negated(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let q = self.q;
        let mut digits: Vec<u32> = self.digits.iter().map(|&d| q - 1 - d).collect();
        let tail = match self.tail {
            Tail::Zero => Tail::Nines,
            Tail::Nines => Tail::Zero,
        };
        // add one; the carry stops inside the explicit digits except for the
        // -q^L case, where it lands exactly on a fresh zero-tail digit
        let mut carry = true;
        for d in digits.iter_mut() {
            if !carry {
                break;
            }
            *d += 1;
            if *d == q {
                *d = 0;
            } else {
                carry = false;
            }
        }
        if carry {
            debug_assert_eq!(tail, Tail::Zero);
            digits.push(1);
        }
        PAdicDigits::new(q, digits, tail).expect("digits stay in range")
    }

    pub fn to_int(&self) -> Result<i64> {
        let q = self.q as i128;
        let mut acc: i128 = 0;
        let mut pw: i128 = 1;
        for &d in &self.digits {
            acc += d as i128 * pw;
            pw = pw.checked_mul(q).ok_or(Error::Overflow)?;
        }
        if self.tail == Tail::Nines {
            acc -= pw;
        }
        i64::try_from(acc).map_err(|_| Error::Overflow)
    }
}

fn tail_digit(q: u32, tail: Tail) -> u32 {
    match tail {
        Tail::Zero => 0,
        Tail::Nines => q - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_small_integers() {
        for q in [2u32, 3, 4, 5] {
            for y in -300i64..=300 {
                let d = PAdicDigits::from_int(q, y);
                assert_eq!(d.to_int().unwrap(), y, "q={q} y={y}");
            }
        }
    }

    #[test]
    fn canonical_negative_forms() {
        let m1 = PAdicDigits::from_int(2, -1);
        assert!(m1.explicit_digits().is_empty());
        assert_eq!(m1.tail(), Tail::Nines);
        let m2 = PAdicDigits::from_int(2, -2);
        assert_eq!(m2.explicit_digits(), &[0]);
        assert_eq!(m2.digit(5), 1);
    }

    #[test]
    fn negation_is_involutive() {
        for q in [2u32, 3, 7] {
            for y in -60i64..=60 {
                let d = PAdicDigits::from_int(q, y);
                assert_eq!(d.negated().negated(), d);
                assert_eq!(d.negated().to_int().unwrap(), -y);
            }
        }
    }

    #[test]
    fn digit_sum_of_nonnegative() {
        let d = PAdicDigits::from_int(2, 5);
        assert_eq!(d.digit_sum(), Some(2));
        assert_eq!(PAdicDigits::from_int(3, 8).digit_sum(), Some(4)); // 22_3
        assert_eq!(PAdicDigits::from_int(2, -1).digit_sum(), None);
    }

    #[test]
    fn rejects_out_of_range_digits() {
        assert!(PAdicDigits::new(2, vec![2], Tail::Zero).is_err());
    }

    #[test]
    fn new_absorbs_tail_digits() {
        let d = PAdicDigits::new(3, vec![1, 2, 2], Tail::Nines).unwrap();
        assert_eq!(d.explicit_digits(), &[1]);
        assert_eq!(d.to_int().unwrap(), 1 - 3);
    }
}
