//! Sparse integer Laurent polynomials in one variable `A`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(coeff, exp);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i32)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    /// The loop value `d = -A^2 - A^-2`.
    pub fn loop_value() -> Self {
        LaurentPoly::from_terms([(-1, 2), (-1, -2)])
    }

    pub fn add_term(&mut self, coeff: i64, exp: i32) {
        if coeff == 0 {
            return;
        }
        let e = self.terms.entry(exp).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn span(&self) -> Option<i32> {
        Some(self.max_degree()? - self.min_degree()?)
    }

    /// Terms as `(coeff, exp)`, highest exponent first.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i32)> + '_ {
        self.terms.iter().rev().map(|(&e, &c)| (c, e))
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        LaurentPoly::from_terms(self.terms().map(|(c, e)| (c * k, e)))
    }

    /// Substitutes `A -> A^k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        LaurentPoly::from_terms(self.terms().map(|(c, e)| (c, e * k)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = LaurentPoly::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// `(-A^3)^k` for any integer `k`.
    pub fn minus_a_cubed_pow(k: i32) -> Self {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        LaurentPoly::monomial(sign, 3 * k)
    }

    /// Exact quotient, if `divisor` divides `self` in `Z[A, A^-1]`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let dmax = divisor.max_degree()?;
        let dmin = divisor.min_degree()?;
        let dlead = divisor.coeff(dmax);
        let mut rem = self.clone();
        let mut q = LaurentPoly::zero();
        while let (Some(rmax), Some(rmin)) = (rem.max_degree(), rem.min_degree()) {
            if rmax - dmax < rmin - dmin {
                return None;
            }
            let c = rem.coeff(rmax);
            if c % dlead != 0 {
                return None;
            }
            let t = LaurentPoly::monomial(c / dlead, rmax - dmax);
            rem = &rem - &(&t * divisor);
            q = &q + &t;
        }
        Some(q)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r += rhs;
        r
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (c, e) in rhs.terms() {
            self.add_term(c, e);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (c, e) in rhs.terms() {
            r.add_term(-c, e);
        }
        r
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                r.add_term(c1 * c2, e1 + e2);
            }
        }
        r
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl fmt::Display for LaurentPoly {
    /// `coeff A^exp` terms joined by `+`, highest exponent first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0A^0");
        }
        let parts: Vec<String> = self.terms().map(|(c, e)| format!("{c}A^{e}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-5i64..=5, -8i32..=8), 0..6).prop_map(LaurentPoly::from_terms)
    }

    #[test]
    fn display_format() {
        let p = LaurentPoly::from_terms([(1, 3), (-2, -1)]);
        assert_eq!(p.to_string(), "1A^3+-2A^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0A^0");
        assert_eq!(LaurentPoly::one().to_string(), "1A^0");
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = LaurentPoly::from_terms([(2, 1), (-2, 1)]);
        assert!(p.is_zero());
        assert_eq!(p.max_degree(), None);
    }

    #[test]
    fn loop_value_squared() {
        let d2 = LaurentPoly::loop_value().pow(2);
        assert_eq!(d2, LaurentPoly::from_terms([(1, 4), (2, 0), (1, -4)]));
        assert_eq!(d2.div_exact(&LaurentPoly::loop_value()), Some(LaurentPoly::loop_value()));
        assert_eq!(LaurentPoly::one().div_exact(&LaurentPoly::loop_value()), None);
    }

    #[test]
    fn minus_a_cubed_powers() {
        let m = LaurentPoly::monomial(-1, 3);
        assert_eq!(LaurentPoly::minus_a_cubed_pow(2), m.pow(2));
        assert_eq!(&LaurentPoly::minus_a_cubed_pow(-1) * &m, LaurentPoly::one());
    }

    proptest! {
        #[test]
        fn ring_laws(p in poly(), q in poly(), r in poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn division_inverts_multiplication(p in poly(), q in poly()) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!((&p * &q).div_exact(&q), Some(p));
        }
    }
}
