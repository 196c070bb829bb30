//! Finitely supported integer vectors and matrices indexed by the interior
//! dyadics, together with the relabelling action of the PL group.
//!
//! A matrix here is a finite set of integer entries keyed by (row, column)
//! pairs of interior dyadics; almost every entry is zero. The PL group acts
//! by permuting indices: `perm_left` relabels rows by `g`, `perm_right`
//! relabels columns by `g^-1`, so that the two together implement
//! multiplication by the (never materialized) permutation matrix of `g` on
//! either side.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::dyadic::Dyadic;
use crate::error::Error;
use crate::thompson::PLMap;
use crate::Result;

/// A finitely supported map from interior dyadics to integers. Zero values
/// are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct SVector {
    entries: BTreeMap<Dyadic, BigInt>,
}

impl SVector {
    pub fn zero() -> SVector {
        SVector::default()
    }

    /// The basis vector supported at `s` with coefficient 1.
    pub fn delta(s: &Dyadic) -> Result<SVector> {
        let mut v = SVector::zero();
        v.set(s.clone(), BigInt::from(1))?;
        Ok(v)
    }

    /// Overwrite the coefficient at `s`; keys must be interior dyadics.
    pub fn set(&mut self, s: Dyadic, value: BigInt) -> Result<()> {
        if !s.is_interior() {
            return Err(Error::domain(format!(
                "vector index {s} is not an interior dyadic"
            )));
        }
        if value.is_zero() {
            self.entries.remove(&s);
        } else {
            self.entries.insert(s, value);
        }
        Ok(())
    }

    pub fn get(&self, s: &Dyadic) -> BigInt {
        self.entries.get(s).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Dyadic, &BigInt)> {
        self.entries.iter()
    }

    pub fn add(&self, rhs: &SVector) -> SVector {
        let mut out = self.clone();
        for (s, v) in &rhs.entries {
            out.add_assign_at(s, v.clone());
        }
        out
    }

    pub fn neg(&self) -> SVector {
        SVector {
            entries: self.entries.iter().map(|(s, v)| (s.clone(), -v)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> SVector {
        if k.is_zero() {
            return SVector::zero();
        }
        SVector {
            entries: self.entries.iter().map(|(s, v)| (s.clone(), v * k)).collect(),
        }
    }

    /// In-place `self[s] += v`, dropping the entry if it cancels. Only used
    /// internally on keys that are already known to be interior.
    fn add_assign_at(&mut self, s: &Dyadic, v: BigInt) {
        if v.is_zero() {
            return;
        }
        let cur = self.entries.entry(s.clone()).or_insert_with(BigInt::zero);
        *cur += v;
        if cur.is_zero() {
            self.entries.remove(s);
        }
    }
}

impl fmt::Display for SVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{{")?;
        let mut first = true;
        for (s, v) in &self.entries {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{s}:{v}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finitely supported integer matrix over (interior dyadic) × (interior
/// dyadic). Zero entries are never stored, so structural equality is
/// equality of matrices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct FinMat {
    entries: BTreeMap<(Dyadic, Dyadic), BigInt>,
}

/// The matrix unit with a single 1 at row `s`, column `t`.
pub fn elem(s: &Dyadic, t: &Dyadic) -> Result<FinMat> {
    let mut m = FinMat::zero();
    m.set(s.clone(), t.clone(), BigInt::from(1))?;
    Ok(m)
}

impl FinMat {
    pub fn zero() -> FinMat {
        FinMat::default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn set(&mut self, row: Dyadic, col: Dyadic, value: BigInt) -> Result<()> {
        if !row.is_interior() || !col.is_interior() {
            return Err(Error::domain(format!(
                "matrix index ({row}, {col}) is not a pair of interior dyadics"
            )));
        }
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
        Ok(())
    }

    pub fn get(&self, row: &Dyadic, col: &Dyadic) -> BigInt {
        self.entries
            .get(&(row.clone(), col.clone()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Dyadic, Dyadic), &BigInt)> {
        self.entries.iter()
    }

    pub fn add(&self, rhs: &FinMat) -> FinMat {
        let mut out = self.clone();
        for ((r, c), v) in &rhs.entries {
            out.add_assign_at(r, c, v.clone());
        }
        out
    }

    pub fn neg(&self) -> FinMat {
        FinMat {
            entries: self.entries.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> FinMat {
        if k.is_zero() {
            return FinMat::zero();
        }
        FinMat {
            entries: self.entries.iter().map(|(key, v)| (key.clone(), v * k)).collect(),
        }
    }

    /// Matrix product; cost is proportional to the number of matching
    /// (column, row) pairs, found by range scans over the sorted entries.
    pub fn mul(&self, rhs: &FinMat) -> FinMat {
        let mut out = FinMat::zero();
        for ((r, c), a) in &self.entries {
            let lo = (c.clone(), Dyadic::zero());
            let hi = (c.clone(), Dyadic::one());
            for ((_, d), b) in rhs.entries.range(lo..=hi) {
                out.add_assign_at(r, d, a * b);
            }
        }
        out
    }

    fn add_assign_at(&mut self, r: &Dyadic, c: &Dyadic, v: BigInt) {
        if v.is_zero() {
            return;
        }
        let cur = self
            .entries
            .entry((r.clone(), c.clone()))
            .or_insert_with(BigInt::zero);
        *cur += v;
        if cur.is_zero() {
            self.entries.remove(&(r.clone(), c.clone()));
        }
    }
}

impl fmt::Display for FinMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for ((r, c), v) in &self.entries {
            if !first {
                write!(f, ";")?;
            }
            write!(f, "({r},{c})={v}")?;
            first = false;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FinMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multiply by the permutation matrix of `g` on the left: every entry at
/// `(r, c)` moves to `(g(r), c)`.
pub fn perm_left(g: &PLMap, m: &FinMat) -> FinMat {
    FinMat {
        entries: m
            .entries
            .iter()
            .map(|((r, c), v)| ((g.apply(r), c.clone()), v.clone()))
            .collect(),
    }
}

/// Multiply by the permutation matrix of `g` on the right: every entry at
/// `(r, c)` moves to `(r, g^-1(c))`.
pub fn perm_right(m: &FinMat, g: &PLMap) -> FinMat {
    FinMat {
        entries: m
            .entries
            .iter()
            .map(|((r, c), v)| ((r.clone(), g.apply_inverse(c)), v.clone()))
            .collect(),
    }
}

/// Apply a finitely supported matrix to a finitely supported vector.
pub fn act_mat(m: &FinMat, v: &SVector) -> SVector {
    let mut out = SVector::zero();
    for ((r, c), a) in &m.entries {
        let b = v.get(c);
        if !b.is_zero() {
            out.add_assign_at(r, a * b);
        }
    }
    out
}

/// Apply the permutation matrix of `g` to a vector: the coefficient that
/// sat at `s` moves to `g(s)`, i.e. `(g . v)(t) = v(g^-1 t)`.
pub fn act_perm(g: &PLMap, v: &SVector) -> SVector {
    SVector {
        entries: v
            .entries
            .iter()
            .map(|(s, a)| (g.apply(s), a.clone()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(num: u64, exp: u64) -> Dyadic {
        Dyadic::from_ints(num, exp).unwrap()
    }

    fn e(s: (u64, u64), t: (u64, u64)) -> FinMat {
        elem(&d(s.0, s.1), &d(t.0, t.1)).unwrap()
    }

    #[test]
    fn matrix_units_multiply_by_the_delta_rule() {
        // E_{s,t} E_{u,v} = [t = u] E_{s,v}
        let a = e((1, 1), (1, 2));
        let b = e((1, 2), (3, 3));
        assert_eq!(a.mul(&b), e((1, 1), (3, 3)));
        assert!(a.mul(&a).is_zero()); // 1/4 != 1/2
        let idem = e((1, 1), (1, 1));
        assert_eq!(idem.mul(&idem), idem);
    }

    #[test]
    fn endpoints_are_rejected_as_indices() {
        assert!(elem(&Dyadic::zero(), &d(1, 1)).is_err());
        assert!(elem(&d(1, 1), &Dyadic::one()).is_err());
        assert!(SVector::delta(&Dyadic::one()).is_err());
    }

    #[test]
    fn addition_cancels_to_structural_zero() {
        let a = e((1, 1), (1, 2));
        let sum = a.add(&a.neg());
        assert!(sum.is_zero());
        assert_eq!(sum, FinMat::zero());
        // scaling by zero collapses
        assert!(a.scale(&BigInt::from(0)).is_zero());
    }

    #[test]
    fn multiplication_matches_a_dense_oracle() {
        // dense oracle over the four dyadics 1/2, 1/4, 3/4, 1/8
        let idx: Vec<Dyadic> = crate::dyadic::enumerate_s(4);
        let mut a = FinMat::zero();
        let mut b = FinMat::zero();
        let coeffs_a = [(0, 1, 2i64), (1, 2, -3), (3, 0, 1), (2, 2, 5)];
        let coeffs_b = [(1, 3, 4i64), (2, 0, -1), (0, 0, 7), (3, 2, 2)];
        for &(r, c, v) in &coeffs_a {
            a.set(idx[r].clone(), idx[c].clone(), BigInt::from(v)).unwrap();
        }
        for &(r, c, v) in &coeffs_b {
            b.set(idx[r].clone(), idx[c].clone(), BigInt::from(v)).unwrap();
        }
        let prod = a.mul(&b);
        let mut dense = vec![vec![0i64; 4]; 4];
        let mut da = vec![vec![0i64; 4]; 4];
        let mut db = vec![vec![0i64; 4]; 4];
        for &(r, c, v) in &coeffs_a {
            da[r][c] = v;
        }
        for &(r, c, v) in &coeffs_b {
            db[r][c] = v;
        }
        for r in 0..4 {
            for c in 0..4 {
                for k in 0..4 {
                    dense[r][c] += da[r][k] * db[k][c];
                }
            }
        }
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(prod.get(&idx[r], &idx[c]), BigInt::from(dense[r][c]));
            }
        }
    }

    #[test]
    fn permutation_action_relabels_indices() {
        let x0 = PLMap::generator(0).unwrap();
        // rows move forward: (1/2, 1/4) -> (x0(1/2), 1/4) = (1/4, 1/4)
        assert_eq!(perm_left(&x0, &e((1, 1), (1, 2))), e((1, 2), (1, 2)));
        // columns move backward: (1/2, 1/4) -> (1/2, x0^-1(1/4)) = (1/2, 1/2)
        assert_eq!(perm_right(&e((1, 1), (1, 2)), &x0), e((1, 1), (1, 1)));
    }

    #[test]
    fn perm_left_and_right_commute_and_compose() {
        let x0 = PLMap::generator(0).unwrap();
        let x1 = PLMap::generator(1).unwrap();
        let m = e((1, 1), (5, 3)).add(&e((3, 2), (1, 2)).scale(&BigInt::from(-2)));
        // left action is a homomorphism
        assert_eq!(
            perm_left(&x0, &perm_left(&x1, &m)),
            perm_left(&x0.compose(&x1), &m)
        );
        // right action is an anti-action made into an action by the inverse
        assert_eq!(
            perm_right(&perm_right(&m, &x0), &x1),
            perm_right(&m, &x0.compose(&x1))
        );
        // the two sides act independently
        assert_eq!(
            perm_left(&x0, &perm_right(&m, &x1)),
            perm_right(&perm_left(&x0, &m), &x1)
        );
    }

    #[test]
    fn vector_action_follows_the_support() {
        let x0 = PLMap::generator(0).unwrap();
        let v = SVector::delta(&d(1, 1)).unwrap();
        assert_eq!(act_perm(&x0, &v), SVector::delta(&d(1, 2)).unwrap());
        // (E_{1/2,1/4} v)(1/2) = v(1/4)
        let m = e((1, 1), (1, 2));
        let w = SVector::delta(&d(1, 2)).unwrap();
        assert_eq!(act_mat(&m, &w), SVector::delta(&d(1, 1)).unwrap());
        assert!(act_mat(&m, &v).is_zero());
    }

    #[test]
    fn actions_are_compatible_with_multiplication() {
        let idx = crate::dyadic::enumerate_s(3);
        let mut m = FinMat::zero();
        m.set(idx[0].clone(), idx[1].clone(), BigInt::from(2)).unwrap();
        m.set(idx[2].clone(), idx[0].clone(), BigInt::from(-1)).unwrap();
        let mut n = FinMat::zero();
        n.set(idx[1].clone(), idx[2].clone(), BigInt::from(3)).unwrap();
        n.set(idx[0].clone(), idx[0].clone(), BigInt::from(1)).unwrap();
        let mut v = SVector::zero();
        v.set(idx[0].clone(), BigInt::from(5)).unwrap();
        v.set(idx[2].clone(), BigInt::from(-2)).unwrap();
        assert_eq!(act_mat(&m.mul(&n), &v), act_mat(&m, &act_mat(&n, &v)));
        let x0 = PLMap::generator(0).unwrap();
        // g E_{s,t} relabels the row, matching the action route
        assert_eq!(
            act_mat(&perm_left(&x0, &m), &v),
            act_perm(&x0, &act_mat(&m, &v))
        );
    }

    #[test]
    fn display_forms_are_canonical() {
        assert_eq!(SVector::zero().to_string(), "0");
        let mut v = SVector::zero();
        v.set(d(3, 2), BigInt::from(-2)).unwrap();
        v.set(d(1, 1), BigInt::from(1)).unwrap();
        assert_eq!(v.to_string(), "{1/2:1,3/2^2:-2}");
        assert_eq!(FinMat::zero().to_string(), "[]");
        assert_eq!(
            e((1, 1), (1, 2)).to_string(),
            "[(1/2,1/2^2)=1]"
        );
    }
}
