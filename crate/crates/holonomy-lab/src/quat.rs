//! Exact quaternions over the rationals.
//!
//! The Hamilton relations are `i·j = k`, `j·k = i`, `k·i = j`, `i² = j² = k² = -1`.
//! Quaternions multiply vectors of `ℍⁿ` from the left and matrix entries act on
//! coordinates from the right; see [`crate::qmatrix`] for the conventions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// A quaternion `c0 + c1·i + c2·j + c3·k` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[Scalar; 4]", into = "[Scalar; 4]")]
pub struct Quat {
    pub c0: Scalar,
    pub c1: Scalar,
    pub c2: Scalar,
    pub c3: Scalar,
}

impl Quat {
    pub fn new(c0: Scalar, c1: Scalar, c2: Scalar, c3: Scalar) -> Self {
        Quat { c0, c1, c2, c3 }
    }

    pub fn zero() -> Self {
        Quat::new(Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero())
    }

    pub fn one() -> Self {
        Quat::real(Scalar::one())
    }

    pub fn i() -> Self {
        Quat::new(Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero())
    }

    pub fn j() -> Self {
        Quat::new(Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::zero())
    }

    pub fn k() -> Self {
        Quat::new(Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one())
    }

    /// The unit `1, i, j, k` for `r = 0..4`.
    pub fn unit(r: usize) -> Self {
        match r {
            0 => Quat::one(),
            1 => Quat::i(),
            2 => Quat::j(),
            3 => Quat::k(),
            _ => panic!("quaternion unit index {r} out of range"),
        }
    }

    pub fn real(c0: Scalar) -> Self {
        Quat::new(c0, Scalar::zero(), Scalar::zero(), Scalar::zero())
    }

    pub fn from_ints(c0: i64, c1: i64, c2: i64, c3: i64) -> Self {
        Quat::new(
            Scalar::from_int(c0),
            Scalar::from_int(c1),
            Scalar::from_int(c2),
            Scalar::from_int(c3),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero() && self.c3.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero() && self.c3.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.c0.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quat::new(self.c0.clone(), -&self.c1, -&self.c2, -&self.c3)
    }

    pub fn re(&self) -> Self {
        Quat::real(self.c0.clone())
    }

    pub fn im(&self) -> Self {
        Quat::new(Scalar::zero(), self.c1.clone(), self.c2.clone(), self.c3.clone())
    }

    /// `|q|² = c0² + c1² + c2² + c3²`, always a non-negative rational.
    pub fn norm_sq(&self) -> Scalar {
        &(&self.c0 * &self.c0) + &(&self.c1 * &self.c1)
            + &(&self.c2 * &self.c2)
            + &(&self.c3 * &self.c3)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Quat::new(s * &self.c0, s * &self.c1, s * &self.c2, s * &self.c3)
    }

    pub fn component(&self, r: usize) -> &Scalar {
        match r {
            0 => &self.c0,
            1 => &self.c1,
            2 => &self.c2,
            3 => &self.c3,
            _ => panic!("quaternion component index {r} out of range"),
        }
    }

    pub fn components(&self) -> [&Scalar; 4] {
        [&self.c0, &self.c1, &self.c2, &self.c3]
    }
}

impl From<[Scalar; 4]> for Quat {
    fn from([c0, c1, c2, c3]: [Scalar; 4]) -> Self {
        Quat::new(c0, c1, c2, c3)
    }
}

impl From<Quat> for [Scalar; 4] {
    fn from(q: Quat) -> Self {
        [q.c0, q.c1, q.c2, q.c3]
    }
}

impl Add for &Quat {
    type Output = Quat;
    fn add(self, rhs: &Quat) -> Quat {
        Quat::new(
            &self.c0 + &rhs.c0,
            &self.c1 + &rhs.c1,
            &self.c2 + &rhs.c2,
            &self.c3 + &rhs.c3,
        )
    }
}

impl Sub for &Quat {
    type Output = Quat;
    fn sub(self, rhs: &Quat) -> Quat {
        Quat::new(
            &self.c0 - &rhs.c0,
            &self.c1 - &rhs.c1,
            &self.c2 - &rhs.c2,
            &self.c3 - &rhs.c3,
        )
    }
}

impl Neg for &Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(-&self.c0, -&self.c1, -&self.c2, -&self.c3)
    }
}

impl Mul for &Quat {
    type Output = Quat;
    fn mul(self, rhs: &Quat) -> Quat {
        let (x0, x1, x2, x3) = (&self.c0, &self.c1, &self.c2, &self.c3);
        let (y0, y1, y2, y3) = (&rhs.c0, &rhs.c1, &rhs.c2, &rhs.c3);
        Quat::new(
            &(&(x0 * y0) - &(x1 * y1)) - &(&(x2 * y2) + &(x3 * y3)),
            &(&(x0 * y1) + &(x1 * y0)) + &(&(x2 * y3) - &(x3 * y2)),
            &(&(x0 * y2) - &(x1 * y3)) + &(&(x2 * y0) + &(x3 * y1)),
            &(&(x0 * y3) + &(x1 * y2)) - &(&(x2 * y1) - &(x3 * y0)),
        )
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.c0, self.c1, self.c2, self.c3)
    }
}

impl fmt::Debug for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relations() {
        let (i, j, k) = (Quat::i(), Quat::j(), Quat::k());
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&i * &i, -&Quat::one());
    }

    #[test]
    fn conjugation() {
        let q = Quat::from_ints(1, 2, 0, 0);
        assert_eq!(q.conj(), Quat::from_ints(1, -2, 0, 0));
        assert_eq!(q.conj().conj(), q);
        // q·conj(q) = |q|²·1
        assert_eq!(&q * &q.conj(), Quat::real(q.norm_sq()));
    }

    #[test]
    fn re_im_projections() {
        let q = Quat::from_ints(3, 1, -1, 0);
        assert_eq!(q.im(), Quat::from_ints(0, 1, -1, 0));
        assert_eq!(&q.re() + &q.im(), q);
    }

    #[test]
    fn antihomomorphism_of_conjugation() {
        let x = Quat::from_ints(1, -2, 3, 5);
        let y = Quat::from_ints(-4, 1, 0, 2);
        assert_eq!((&x * &y).conj(), &y.conj() * &x.conj());
    }
}
