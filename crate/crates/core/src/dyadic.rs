//! Dyadic rationals `a/2^k` in the unit interval, and the standard dyadic
//! intervals they bound.
//!
//! Values are always held in canonical form: the numerator is odd, except for
//! the endpoints `0/2^0` and `1/2^0`. Numerators are arbitrary-precision
//! (repeated composition of PL maps halves and doubles without bound); the
//! exponent is a machine word, which suffices because a numerator below
//! `2^k` needs `k` bits of storage — memory runs out long before `k` can
//! overflow a `u64`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::Result;

/// A dyadic rational in `[0, 1]`, canonical form enforced on construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigUint,
    exp: u64,
}

impl Dyadic {
    /// Build `num/2^exp`, reducing to lowest terms. Errors if the value
    /// exceeds 1.
    pub fn new(num: BigUint, exp: u64) -> Result<Dyadic> {
        if num > (BigUint::one() << exp) {
            return Err(Error::domain(format!(
                "dyadic {num}/2^{exp} lies outside [0, 1]"
            )));
        }
        Ok(Dyadic::reduce(num, exp))
    }

    /// Convenience constructor from machine integers.
    pub fn from_ints(num: u64, exp: u64) -> Result<Dyadic> {
        Dyadic::new(BigUint::from(num), exp)
    }

    fn reduce(mut num: BigUint, mut exp: u64) -> Dyadic {
        if num.is_zero() {
            return Dyadic {
                num,
                exp: 0,
            };
        }
        let tz = num.trailing_zeros().unwrap_or(0).min(exp);
        if tz > 0 {
            num >>= tz;
            exp -= tz;
        }
        Dyadic { num, exp }
    }

    pub fn zero() -> Dyadic {
        Dyadic {
            num: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Dyadic {
        Dyadic {
            num: BigUint::one(),
            exp: 0,
        }
    }

    pub fn half() -> Dyadic {
        Dyadic {
            num: BigUint::one(),
            exp: 1,
        }
    }

    pub fn num(&self) -> &BigUint {
        &self.num
    }

    pub fn exp(&self) -> u64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.exp == 0 && self.num.is_one()
    }

    /// True for 0 and 1, the fixed endpoints of every map in this crate.
    pub fn is_endpoint(&self) -> bool {
        self.exp == 0
    }

    /// True for dyadics strictly between 0 and 1.
    pub fn is_interior(&self) -> bool {
        self.exp > 0
    }

    /// Exact sum; errors if the result exceeds 1.
    pub fn add(&self, rhs: &Dyadic) -> Result<Dyadic> {
        let exp = self.exp.max(rhs.exp);
        let num = (&self.num << (exp - self.exp)) + (&rhs.num << (exp - rhs.exp));
        Dyadic::new(num, exp)
    }

    /// Exact difference; errors if `rhs > self`.
    pub fn sub(&self, rhs: &Dyadic) -> Result<Dyadic> {
        if rhs > self {
            return Err(Error::domain(format!(
                "dyadic subtraction {self} - {rhs} would be negative"
            )));
        }
        let exp = self.exp.max(rhs.exp);
        let num = (&self.num << (exp - self.exp)) - (&rhs.num << (exp - rhs.exp));
        Ok(Dyadic::reduce(num, exp))
    }

    /// Multiply by `2^k` for `k` of either sign; errors if the result
    /// exceeds 1.
    pub fn mul_pow2(&self, k: i64) -> Result<Dyadic> {
        if self.num.is_zero() {
            return Ok(Dyadic::zero());
        }
        if k >= 0 {
            let k = k as u64;
            if k <= self.exp {
                // dropping exponent bits can still push the value past 1
                return Dyadic::new(self.num.clone(), self.exp - k);
            }
            Dyadic::new(&self.num << (k - self.exp), 0)
        } else {
            let k = k.unsigned_abs();
            let exp = self.exp.checked_add(k).ok_or_else(|| {
                Error::domain("dyadic exponent overflow while halving".to_string())
            })?;
            Ok(Dyadic { num: self.num.clone(), exp })
        }
    }

    /// Exact midpoint `(self + rhs) / 2`; never leaves `[0, 1]`.
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let exp = a.exp.max(b.exp);
        let num = (&a.num << (exp - a.exp)) + (&b.num << (exp - b.exp));
        Dyadic::reduce(num, exp + 1)
    }

    /// Order by the positions in the fixed enumeration of interior dyadics:
    /// exponent first, then numerator. This is **not** the value order; it is
    /// the order every "least element" in this crate refers to.
    pub fn s_cmp(&self, other: &Dyadic) -> Ordering {
        (self.exp, &self.num).cmp(&(other.exp, &other.num))
    }

    /// 1-based position of an interior dyadic in the fixed enumeration
    /// `1/2, 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, ...`. Errors on endpoints and on
    /// positions too deep to index with a machine word.
    pub fn s_index(&self) -> Result<u64> {
        if !self.is_interior() {
            return Err(Error::domain(format!("{self} is not an interior dyadic")));
        }
        let base = 1u64
            .checked_shl(
                u32::try_from(self.exp - 1)
                    .map_err(|_| Error::domain("enumeration index overflow".to_string()))?,
            )
            .ok_or_else(|| Error::domain("enumeration index overflow".to_string()))?;
        let num = u64::try_from(&self.num)
            .map_err(|_| Error::domain("enumeration index overflow".to_string()))?;
        Ok(base - 1 + (num + 1) / 2)
    }
}

/// The interior dyadic sitting at 1-based position `idx` of the fixed
/// enumeration; inverse of [`Dyadic::s_index`].
pub fn s_from_index(idx: u64) -> Result<Dyadic> {
    if idx == 0 {
        return Err(Error::domain("enumeration positions start at 1".to_string()));
    }
    let exp = 64 - idx.leading_zeros() as u64; // idx in [2^(exp-1), 2^exp - 1]
    let num = 2 * (idx - ((1u64 << (exp - 1)) - 1)) - 1;
    Dyadic::from_ints(num, exp)
}

/// The first `n` interior dyadics in the fixed enumeration.
pub fn enumerate_s(n: usize) -> Vec<Dyadic> {
    s_iter().take(n).collect()
}

/// Infinite iterator over the fixed enumeration of interior dyadics.
pub fn s_iter() -> impl Iterator<Item = Dyadic> {
    (1u64..).flat_map(|exp| {
        (1u64..(1u64 << exp)).step_by(2).map(move |num| Dyadic {
            num: BigUint::from(num),
            exp,
        })
    })
}

impl Ord for Dyadic {
    /// Value order, obtained by cross-multiplying the two fractions.
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let exp = self.exp.max(other.exp);
        let lhs = &self.num << (exp - self.exp);
        let rhs = &other.num << (exp - other.exp);
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else if self.is_one() {
            write!(f, "1")
        } else if self.exp == 1 {
            write!(f, "{}/2", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    // the textual form is already the most useful debug view
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A standard dyadic interval `[a/2^k, (a+1)/2^k]` inside `[0, 1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StdInterval {
    a: BigUint,
    k: u64,
}

impl StdInterval {
    pub fn new(a: BigUint, k: u64) -> Result<StdInterval> {
        if a >= (BigUint::one() << k) {
            return Err(Error::domain(format!(
                "standard interval [{a}/2^{k}, ...] escapes the unit interval"
            )));
        }
        Ok(StdInterval { a, k })
    }

    pub fn from_ints(a: u64, k: u64) -> Result<StdInterval> {
        StdInterval::new(BigUint::from(a), k)
    }

    pub fn lo(&self) -> Dyadic {
        Dyadic::reduce(self.a.clone(), self.k)
    }

    pub fn hi(&self) -> Dyadic {
        Dyadic::reduce(&self.a + 1u32, self.k)
    }

    pub fn depth(&self) -> u64 {
        self.k
    }

    /// The two standard halves of this interval.
    pub fn split(&self) -> (StdInterval, StdInterval) {
        let left = StdInterval {
            a: &self.a << 1u32,
            k: self.k + 1,
        };
        let right = StdInterval {
            a: (&self.a << 1u32) + 1u32,
            k: self.k + 1,
        };
        (left, right)
    }
}

impl fmt::Display for StdInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo(), self.hi())
    }
}

/// Greedy decomposition of `[lo, hi]` into consecutive standard dyadic
/// intervals: at every step take the largest standard interval that starts at
/// the current left end and stays inside `[lo, hi]`.
pub fn decompose_std(lo: &Dyadic, hi: &Dyadic) -> Result<Vec<StdInterval>> {
    if lo >= hi {
        return Err(Error::domain(format!(
            "cannot decompose degenerate interval [{lo}, {hi}]"
        )));
    }
    let mut out = Vec::new();
    let mut p = lo.clone();
    while &p < hi {
        let mut k = p.exp;
        // smallest depth (largest width) with p + 2^-k <= hi
        loop {
            let step = Dyadic {
                num: BigUint::one(),
                exp: k,
            };
            match p.add(&step) {
                Ok(q) if &q <= hi => {
                    out.push(StdInterval {
                        a: &p.num << (k - p.exp),
                        k,
                    });
                    p = q;
                    break;
                }
                _ => k += 1,
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(num: u64, exp: u64) -> Dyadic {
        Dyadic::from_ints(num, exp).unwrap()
    }

    #[test]
    fn canonicalization_strips_factors_of_two() {
        // 6/2^3 = 3/4
        let x = d(6, 3);
        assert_eq!(x.num(), &BigUint::from(3u32));
        assert_eq!(x.exp(), 2);
        assert_eq!(x, d(3, 2));
        // endpoints collapse to exponent zero
        assert_eq!(d(0, 5), Dyadic::zero());
        assert_eq!(d(32, 5), Dyadic::one());
    }

    #[test]
    fn construction_rejects_values_above_one() {
        assert!(Dyadic::from_ints(5, 2).is_err());
        assert!(Dyadic::from_ints(9, 3).is_err());
        assert!(Dyadic::from_ints(8, 3).is_ok());
    }

    #[test]
    fn value_order_is_cross_multiplication() {
        // independent oracle: compare through u128 fractions
        let samples = [(0u64, 0u64), (1, 0), (1, 1), (1, 2), (3, 2), (1, 3), (5, 3), (7, 3)];
        for &(an, ae) in &samples {
            for &(bn, be) in &samples {
                let lhs = (an as u128) << be;
                let rhs = (bn as u128) << ae;
                assert_eq!(d(an, ae).cmp(&d(bn, be)), lhs.cmp(&rhs));
            }
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        assert_eq!(d(1, 2).add(&d(1, 2)).unwrap(), Dyadic::half());
        assert_eq!(d(3, 2).sub(&d(1, 2)).unwrap(), Dyadic::half());
        assert!(d(3, 2).add(&Dyadic::half()).is_err()); // 5/4 > 1
        assert!(d(1, 2).sub(&d(1, 1)).is_err());
        assert_eq!(d(1, 2).mul_pow2(1).unwrap(), Dyadic::half());
        assert_eq!(d(1, 1).mul_pow2(-2).unwrap(), d(1, 3));
        assert!(d(3, 2).mul_pow2(1).is_err()); // 3/2 > 1
        assert_eq!(Dyadic::midpoint(&d(1, 2), &Dyadic::half()), d(3, 3));
    }

    #[test]
    fn enumeration_matches_generate_and_sort() {
        // oracle: generate all interior dyadics of exponent <= 3, sort by
        // (exponent, numerator), compare with the streamed enumeration
        let mut oracle = Vec::new();
        for exp in 1..=3u64 {
            for num in (1..(1u64 << exp)).step_by(2) {
                oracle.push(d(num, exp));
            }
        }
        oracle.sort_by(|a, b| a.s_cmp(b));
        assert_eq!(enumerate_s(7), oracle);
        assert_eq!(
            enumerate_s(3),
            vec![Dyadic::half(), d(1, 2), d(3, 2)]
        );
        assert!(enumerate_s(0).is_empty());
    }

    #[test]
    fn s_index_round_trips() {
        for (i, s) in s_iter().take(64).enumerate() {
            let idx = (i + 1) as u64;
            assert_eq!(s.s_index().unwrap(), idx);
            assert_eq!(s_from_index(idx).unwrap(), s);
        }
        assert!(Dyadic::zero().s_index().is_err());
        assert!(Dyadic::one().s_index().is_err());
        assert!(s_from_index(0).is_err());
    }

    #[test]
    fn split_halves_a_standard_interval() {
        // [1/4, 1/2] splits into [1/4, 3/8] and [3/8, 1/2]
        let iv = StdInterval::from_ints(1, 2).unwrap();
        let (l, r) = iv.split();
        assert_eq!(l.lo(), d(1, 2));
        assert_eq!(l.hi(), d(3, 3));
        assert_eq!(r.lo(), d(3, 3));
        assert_eq!(r.hi(), d(1, 1));
    }

    #[test]
    fn std_interval_rejects_out_of_range() {
        assert!(StdInterval::from_ints(4, 2).is_err());
        assert!(StdInterval::from_ints(3, 2).is_ok());
    }

    #[test]
    fn decompose_std_is_a_partition_into_standard_pieces() {
        // [1/8, 1] = [1/8,1/4] [1/4,1/2] [1/2,1]
        let leaves = decompose_std(&d(1, 3), &Dyadic::one()).unwrap();
        let descr: Vec<String> = leaves.iter().map(|iv| iv.to_string()).collect();
        assert_eq!(
            descr,
            vec!["[1/2^3, 1/2^2]", "[1/2^2, 1/2]", "[1/2, 1]"]
        );
        // consecutive and covering
        assert_eq!(leaves.first().unwrap().lo(), d(1, 3));
        assert_eq!(leaves.last().unwrap().hi(), Dyadic::one());
        for w in leaves.windows(2) {
            assert_eq!(w[0].hi(), w[1].lo());
        }
        // a non-trivial case: [3/8, 3/4] = [3/8,1/2] [1/2,3/4]
        let leaves = decompose_std(&d(3, 3), &d(3, 2)).unwrap();
        assert_eq!(leaves.len(), 2);
        assert_eq!(leaves[0].lo(), d(3, 3));
        assert_eq!(leaves[0].hi(), Dyadic::half());
        assert_eq!(leaves[1].hi(), d(3, 2));
        assert!(decompose_std(&Dyadic::half(), &Dyadic::half()).is_err());
    }

    #[test]
    fn display_round_trips_the_three_shapes() {
        assert_eq!(Dyadic::zero().to_string(), "0");
        assert_eq!(Dyadic::one().to_string(), "1");
        assert_eq!(d(3, 2).to_string(), "3/2^2");
    }
}
