//! Exact arithmetic on integer sums of roots of unity.
//!
//! A [`CycSum`] of order `m` is a vector `c` of length `m` standing for
//! `Σ c[i] ζ_m^i`. The representation is redundant: many vectors describe
//! the same cyclotomic integer. Equality is decided on the canonical form,
//! i.e. the coefficient polynomial reduced modulo `x^m − 1` and then modulo
//! the cyclotomic polynomial `Φ_m`.

mod numtheory;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use numtheory::{
    divisors, euler_phi, factorize, gcd, is_prime, lcm, mobius, prime_power, residue,
};

use crate::{from_i64, Error, Result, Scalar};

/// `Tr_{Q(ζ_m)/Q}(ζ_m^k)`.
///
/// With `d = m / gcd(m, k)` the element `ζ_m^k` is a primitive `d`-th root of
/// unity and its trace is `μ(d)·φ(m)/φ(d)`.
pub fn trace_root(m: u64, k: i64) -> i64 {
    assert!(m >= 1, "trace_root: m must be positive");
    let k = residue(k, m);
    let d = m / gcd(m, k);
    mobius(d) * (euler_phi(m) / euler_phi(d)) as i64
}

/// `Σ_{i=0}^{k-1} ζ_k^{-id}`: `k` when `k | d`, otherwise `0`.
pub fn geometric_sum_check(k: u64, d: i64) -> i64 {
    assert!(k >= 1, "geometric_sum_check: k must be positive");
    if residue(d, k) == 0 {
        k as i64
    } else {
        0
    }
}

/// Coefficients of `Φ_m`, constant term first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic_polynomial: m must be positive");
    // x^m - 1
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in divisors(m).into_iter().filter(|&d| d < m) {
        num = div_exact_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

// Quotient of `num` by the monic polynomial `den`; the remainder must vanish.
fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An integer linear combination of `m`-th roots of unity.
#[derive(Clone, Debug)]
pub struct CycSum<T> {
    order: u64,
    coeffs: Vec<T>,
}

impl<T: Scalar> CycSum<T> {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1, "CycSum order must be positive");
        CycSum {
            order,
            coeffs: vec![T::zero(); order as usize],
        }
    }

    pub fn from_int(order: u64, value: T) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = value;
        z
    }

    pub fn one(order: u64) -> Self {
        Self::from_int(order, T::one())
    }

    /// `ζ_order^k`; negative exponents are reduced modulo the order.
    pub fn root(order: u64, k: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[residue(k, order) as usize] = T::one();
        z
    }

    pub fn from_coeffs(order: u64, coeffs: Vec<T>) -> Result<Self> {
        if order == 0 || coeffs.len() as u64 != order {
            return Err(Error::Precondition(format!(
                "CycSum of order {order} needs exactly {order} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(CycSum { order, coeffs })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Add `c·ζ^k` in place.
    pub fn add_term(&mut self, k: i64, c: T) {
        let i = residue(k, self.order) as usize;
        self.coeffs[i] = self.coeffs[i].clone() + c;
    }

    pub fn scalar_mul(&self, a: &T) -> Self {
        CycSum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.clone() * a.clone()).collect(),
        }
    }

    /// Multiply by `ζ_m^k`.
    pub fn mul_by_root(&self, k: i64) -> Self {
        let m = self.order;
        let shift = residue(k, m) as usize;
        let mut coeffs = vec![T::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(i + shift) % m as usize] = c.clone();
        }
        CycSum { order: m, coeffs }
    }

    /// Complex conjugation, `ζ^i ↦ ζ^{-i}`.
    pub fn conjugate(&self) -> Self {
        let m = self.order as usize;
        let mut coeffs = vec![T::zero(); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(m - i) % m] = c.clone();
        }
        CycSum {
            order: self.order,
            coeffs,
        }
    }

    /// The Galois automorphism `ζ ↦ ζ^j`, `gcd(j, m) = 1`.
    pub fn galois(&self, j: i64) -> Self {
        let m = self.order;
        debug_assert_eq!(gcd(residue(j, m), m), 1);
        let mut z = Self::zero(m);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                z.add_term(i as i64 * j, c.clone());
            }
        }
        z
    }

    /// Re-express over the `target`-th roots of unity, `ζ_m^i = ζ_M^{iM/m}`.
    pub fn rescale(&self, target: u64) -> Result<Self> {
        if target == 0 || target % self.order != 0 {
            return Err(Error::IncompatibleOrders {
                from: self.order,
                to: target,
            });
        }
        let step = (target / self.order) as usize;
        let mut coeffs = vec![T::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        Ok(CycSum {
            order: target,
            coeffs,
        })
    }

    /// Inverse of [`rescale`](Self::rescale): move to order `sub | m`.
    /// Fails unless every non-zero coefficient sits at an index divisible by
    /// `m / sub`.
    pub fn descend(&self, sub: u64) -> Result<Self> {
        if sub == 0 || self.order % sub != 0 {
            return Err(Error::IncompatibleOrders {
                from: sub,
                to: self.order,
            });
        }
        let step = (self.order / sub) as usize;
        let mut coeffs = vec![T::zero(); sub as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i % step != 0 {
                return Err(Error::Precondition(format!(
                    "ζ_{}^{i} does not lie in Q(ζ_{sub})",
                    self.order
                )));
            }
            coeffs[i / step] = c.clone();
        }
        Ok(CycSum { order: sub, coeffs })
    }

    /// `Tr_{Q(ζ_m)/Q}` of the represented element.
    pub fn trace(&self) -> T {
        let m = self.order;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(T::zero(), |acc, (i, c)| {
                acc + c.clone() * from_i64::<T>(trace_root(m, i as i64))
            })
    }

    /// `Tr_{Q(ζ_sub)/Q}` for an element known to lie in `Q(ζ_sub)`, `sub | m`.
    ///
    /// Uses `Tr_{Q(ζ_m)/Q} = [Q(ζ_m):Q(ζ_sub)]·Tr_{Q(ζ_sub)/Q}` on that
    /// subfield, so it does not depend on how the element is written.
    pub fn trace_over(&self, sub: u64) -> Result<T> {
        if sub == 0 || self.order % sub != 0 {
            return Err(Error::IncompatibleOrders {
                from: sub,
                to: self.order,
            });
        }
        let degree = from_i64::<T>((euler_phi(self.order) / euler_phi(sub)) as i64);
        let (quot, rem) = self.trace().div_rem(&degree);
        if !rem.is_zero() {
            return Err(Error::Precondition(format!(
                "element of Q(ζ_{}) does not lie in Q(ζ_{sub})",
                self.order
            )));
        }
        Ok(quot)
    }

    /// Coefficients of the canonical form: the polynomial `Σ c_i x^i` reduced
    /// modulo `Φ_m`, of length `φ(m)`.
    pub fn canonical(&self) -> Vec<T> {
        let phi = cyclotomic_polynomial(self.order);
        let deg = phi.len() - 1;
        let mut c = self.coeffs.clone();
        for i in (deg..c.len()).rev() {
            let lead = std::mem::replace(&mut c[i], T::zero());
            if lead.is_zero() {
                continue;
            }
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                let k = i - deg + j;
                c[k] = c[k].clone() - lead.clone() * from_i64::<T>(pj);
            }
        }
        c.truncate(deg);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(|c| c.is_zero())
    }

    /// `Some(n)` when the element is the rational integer `n`.
    pub fn as_integer(&self) -> Option<T> {
        let c = self.canonical();
        if c.iter().skip(1).all(|x| x.is_zero()) {
            Some(c.into_iter().next().unwrap_or_else(T::zero))
        } else {
            None
        }
    }

    fn lifted_pair(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let m = lcm(self.order, other.order);
        (
            self.rescale(m).expect("lcm is a multiple"),
            other.rescale(m).expect("lcm is a multiple"),
        )
    }
}

impl<T: Scalar> PartialEq for CycSum<T> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.lifted_pair(other);
        (&a - &b).is_zero()
    }
}

impl<T: Scalar> Eq for CycSum<T> {}

impl<T: Scalar> Add for &CycSum<T> {
    type Output = CycSum<T>;

    fn add(self, rhs: Self) -> CycSum<T> {
        let (mut a, b) = self.lifted_pair(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x = x.clone() + y;
        }
        a
    }
}

impl<T: Scalar> Sub for &CycSum<T> {
    type Output = CycSum<T>;

    fn sub(self, rhs: Self) -> CycSum<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Neg for &CycSum<T> {
    type Output = CycSum<T>;

    fn neg(self) -> CycSum<T> {
        CycSum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Scalar> Mul for &CycSum<T> {
    type Output = CycSum<T>;

    fn mul(self, rhs: Self) -> CycSum<T> {
        let (a, b) = self.lifted_pair(rhs);
        let m = a.order as usize;
        let mut out = CycSum::<T>::zero(a.order);
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let k = (i + j) % m;
                out.coeffs[k] = out.coeffs[k].clone() + x.clone() * y.clone();
            }
        }
        out
    }
}

impl<T: Scalar> fmt::Display for CycSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            if !a.is_one() || i == 0 {
                write!(f, "{a}")?;
            }
            if i > 0 {
                write!(f, "z{}^{i}", self.order)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    // Independent oracle: apply every Galois automorphism and read off the
    // rational integer from the canonical form of the sum.
    fn galois_trace(z: &CycSum<i64>) -> i64 {
        let m = z.order();
        let mut acc = CycSum::zero(m);
        for j in (1..=m).filter(|&j| gcd(j, m) == 1) {
            acc = &acc + &z.galois(j as i64);
        }
        acc.as_integer().expect("a trace is rational")
    }

    #[test]
    fn trace_root_examples() {
        assert_eq!(trace_root(12, 0), 4);
        assert_eq!(trace_root(10, 5), -4);
        assert_eq!(trace_root(10, 2), -1);
        assert_eq!(trace_root(12, 2), 2);
        assert_eq!(trace_root(1, 7), 1);
        assert_eq!(trace_root(10, -5), -4);
    }

    #[test]
    fn trace_root_matches_galois_oracle() {
        for m in 1..=30 {
            for k in 0..m as i64 {
                let z = CycSum::<i64>::root(m, k);
                assert_eq!(trace_root(m, k), galois_trace(&z), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn trace_examples() {
        let one = CycSum::<i64>::one(10);
        assert_eq!(one.trace(), 4);
        let pair = &CycSum::<i64>::root(10, 1) + &CycSum::root(10, -1);
        assert_eq!(pair.trace(), 2);
        let mut s = CycSum::<i64>::zero(10);
        for e in -2..=2 {
            s.add_term(e, 1);
        }
        assert_eq!(s.trace(), 4);
        assert_eq!(galois_trace(&s), 4);
    }

    #[test]
    fn geometric_sums() {
        assert_eq!(geometric_sum_check(5, 10), 5);
        assert_eq!(geometric_sum_check(5, 3), 0);
        assert_eq!(geometric_sum_check(1, 0), 1);
        for k in 1..=30u64 {
            for d in -60..=60i64 {
                let mut acc = CycSum::<i64>::zero(k);
                for i in 0..k as i64 {
                    acc = &acc + &CycSum::one(k).mul_by_root(-i * d);
                }
                assert_eq!(
                    acc.as_integer(),
                    Some(geometric_sum_check(k, d)),
                    "k={k} d={d}"
                );
            }
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(10), vec![1, -1, 1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for m in 1..=60 {
            let p = cyclotomic_polynomial(m);
            assert_eq!(p.len() as u64 - 1, euler_phi(m));
            assert_eq!(*p.last().unwrap(), 1);
        }
    }

    #[test]
    fn structural_ops() {
        let z = CycSum::<i64>::root(10, 1);
        assert_eq!(z.conjugate().coeffs()[9], 1);
        assert_eq!(z.conjugate(), CycSum::root(10, 9));
        let five = CycSum::<i64>::root(5, 1);
        let up = five.rescale(10).unwrap();
        assert_eq!(up.coeffs()[2], 1);
        assert_eq!(up.descend(5).unwrap().coeffs(), five.coeffs());
        assert!(matches!(
            five.rescale(12),
            Err(Error::IncompatibleOrders { from: 5, to: 12 })
        ));
        assert!(z.descend(5).is_err());
        // 1 + ζ_2 = 0
        let zero = &CycSum::<i64>::one(2) + &CycSum::root(2, 1);
        assert!(zero.is_zero());
        // Σ ζ_5^i = 0 is a non-trivial relation the redundant form must absorb.
        let mut s = CycSum::<i64>::zero(5);
        for i in 0..5 {
            s.add_term(i, 1);
        }
        assert_eq!(s, CycSum::zero(5));
        assert_eq!(s, CycSum::zero(10));
    }

    #[test]
    fn bigint_and_i64_agree() {
        let mut a = CycSum::<i64>::zero(12);
        let mut b = CycSum::<BigInt>::zero(12);
        for (k, c) in [(1, 3), (5, -2), (7, 4), (11, 1)] {
            a.add_term(k, c);
            b.add_term(k, BigInt::from(c));
        }
        assert_eq!(BigInt::from(a.trace()), b.trace());
        assert_eq!(
            a.canonical()
                .into_iter()
                .map(BigInt::from)
                .collect::<Vec<_>>(),
            b.canonical()
        );
    }

    fn cycsum(max_order: u64) -> impl Strategy<Value = CycSum<i64>> {
        (1..=max_order).prop_flat_map(|m| {
            prop::collection::vec(-5i64..=5, m as usize)
                .prop_map(move |c| CycSum::from_coeffs(m, c).unwrap())
        })
    }

    proptest! {
        #[test]
        fn trace_is_linear(z1 in cycsum(24), k in -3i64..=3, a in -4i64..=4, b in -4i64..=4) {
            let z2 = CycSum::<i64>::root(z1.order(), k).scalar_mul(&7);
            let lhs = (&z1.scalar_mul(&a) + &z2.scalar_mul(&b)).trace();
            prop_assert_eq!(lhs, a * z1.trace() + b * z2.trace());
        }

        #[test]
        fn trace_agrees_with_galois(z in cycsum(20)) {
            prop_assert_eq!(z.trace(), galois_trace(&z));
        }

        #[test]
        fn conjugation_preserves_trace(z in cycsum(30)) {
            prop_assert_eq!(z.conjugate().trace(), z.trace());
        }

        #[test]
        fn rescale_scales_trace(z in cycsum(20), mult in 1u64..=3) {
            let big = z.order() * mult;
            let lifted = z.rescale(big).unwrap();
            prop_assert_eq!(&lifted, &z);
            let ratio = (euler_phi(big) / euler_phi(z.order())) as i64;
            prop_assert_eq!(lifted.trace(), ratio * z.trace());
            prop_assert_eq!(lifted.trace_over(z.order()).unwrap(), z.trace());
        }

        #[test]
        fn canonical_form_absorbs_phi_multiples(z in cycsum(24), shift in 0i64..24, c in -3i64..=3) {
            let m = z.order();
            let phi = cyclotomic_polynomial(m);
            let mut w = z.clone();
            for (j, &pj) in phi.iter().enumerate() {
                w.add_term(shift + j as i64, c * pj);
            }
            prop_assert_eq!(w.canonical(), z.canonical());
            prop_assert_eq!(&w, &z);
            prop_assert_eq!(w.trace(), z.trace());
        }

        #[test]
        fn multiplication_respects_conjugation(a in cycsum(12), b in cycsum(12)) {
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        }
    }
}
