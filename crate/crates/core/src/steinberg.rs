//! Words in the elementary symbols e_ij(r) over the combined ring for n = 4,
//! their evaluation as 4×4 ring matrices, the distinguished 12-letter word
//! built from an idempotent, and the integer shadow obtained by replacing
//! every ring element with its coefficient sum.
//!
//! Words are kept free: no rewriting is attempted, and every identity is
//! verified in the matrix image, where equality is decidable entry by entry.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dyadic::s_from_index;
use crate::error::Error;
use crate::finmat::elem;
use crate::report::Report;
use crate::ring::CrazyRingElt;
use crate::sample;
use crate::Result;

/// One symbol e_ij(r), possibly formally inverted. The inverse of e_ij(r)
/// evaluates like e_ij(-r).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StLetter {
    i: usize,
    j: usize,
    r: CrazyRingElt,
    inverted: bool,
}

impl StLetter {
    pub fn new(i: usize, j: usize, r: CrazyRingElt) -> Result<StLetter> {
        if !(1..=4).contains(&i) || !(1..=4).contains(&j) {
            return Err(Error::domain(format!(
                "letter indices must lie in 1..4, got ({i}, {j})"
            )));
        }
        if i == j {
            return Err(Error::domain(format!(
                "letter indices must differ, got ({i}, {j})"
            )));
        }
        Ok(StLetter {
            i,
            j,
            r,
            inverted: false,
        })
    }

    pub fn row(&self) -> usize {
        self.i
    }

    pub fn col(&self) -> usize {
        self.j
    }

    pub fn ring_elt(&self) -> &CrazyRingElt {
        &self.r
    }

    pub fn is_inverted(&self) -> bool {
        self.inverted
    }

    pub fn inverse(&self) -> StLetter {
        let mut out = self.clone();
        out.inverted = !out.inverted;
        out
    }

    /// The ring element actually placed at (i, j) on evaluation.
    fn effective(&self) -> CrazyRingElt {
        if self.inverted {
            self.r.neg()
        } else {
            self.r.clone()
        }
    }
}

impl fmt::Display for StLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({},{};{})", self.i, self.j, self.r)?;
        if self.inverted {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// A free word in the letters.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct StWord {
    letters: Vec<StLetter>,
}

impl StWord {
    pub fn empty() -> StWord {
        StWord::default()
    }

    pub fn single(letter: StLetter) -> StWord {
        StWord {
            letters: vec![letter],
        }
    }

    pub fn from_letters(letters: Vec<StLetter>) -> StWord {
        StWord { letters }
    }

    pub fn letters(&self) -> &[StLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, rhs: &StWord) -> StWord {
        let mut letters = self.letters.clone();
        letters.extend(rhs.letters.iter().cloned());
        StWord { letters }
    }

    pub fn inverse(&self) -> StWord {
        StWord {
            letters: self.letters.iter().rev().map(StLetter::inverse).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> StWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = StWord::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn commutator(&self, rhs: &StWord) -> StWord {
        self.concat(rhs).concat(&self.inverse()).concat(&rhs.inverse())
    }

    /// The first half of the word (length must be even).
    pub fn half(&self) -> Result<StWord> {
        if self.letters.len() % 2 != 0 {
            return Err(Error::domain(format!(
                "cannot halve a word of odd length {}",
                self.letters.len()
            )));
        }
        Ok(StWord {
            letters: self.letters[..self.letters.len() / 2].to_vec(),
        })
    }
}

impl fmt::Display for StWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// A 4×4 matrix over the combined ring, always a product of elementary
/// matrices in practice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EL4Matrix {
    entries: [[CrazyRingElt; 4]; 4],
}

impl EL4Matrix {
    pub fn identity() -> EL4Matrix {
        let mut m = EL4Matrix {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| CrazyRingElt::zero())),
        };
        for i in 0..4 {
            m.entries[i][i] = CrazyRingElt::one();
        }
        m
    }

    /// 1-based access.
    pub fn get(&self, i: usize, j: usize) -> &CrazyRingElt {
        &self.entries[i - 1][j - 1]
    }

    pub fn is_identity(&self) -> bool {
        *self == EL4Matrix::identity()
    }

    pub fn mul(&self, rhs: &EL4Matrix) -> EL4Matrix {
        let mut out = EL4Matrix {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| CrazyRingElt::zero())),
        };
        for i in 0..4 {
            for k in 0..4 {
                let mut acc = CrazyRingElt::zero();
                for j in 0..4 {
                    acc = acc.add(&self.entries[i][j].mul(&rhs.entries[j][k]));
                }
                out.entries[i][k] = acc;
            }
        }
        out
    }

    /// Right-multiply in place by the elementary matrix of `letter`:
    /// column j gains column i times the letter's ring element.
    fn apply_letter(&mut self, letter: &StLetter) {
        let r = letter.effective();
        if r.is_zero() {
            return;
        }
        let (i, j) = (letter.i - 1, letter.j - 1);
        for t in 0..4 {
            let shifted = self.entries[t][i].mul(&r);
            self.entries[t][j] = self.entries[t][j].add(&shifted);
        }
    }
}

impl fmt::Display for EL4Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..4 {
            write!(f, "[")?;
            for j in 0..4 {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[i][j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// The elementary matrix with `r` at (i, j) (1-based) and ones on the
/// diagonal.
pub fn elementary(i: usize, j: usize, r: CrazyRingElt) -> Result<EL4Matrix> {
    let letter = StLetter::new(i, j, r)?;
    let mut m = EL4Matrix::identity();
    m.apply_letter(&letter);
    Ok(m)
}

/// Evaluate a word as the product of its letters' elementary matrices.
pub fn eval(w: &StWord) -> EL4Matrix {
    let mut m = EL4Matrix::identity();
    for letter in &w.letters {
        m.apply_letter(letter);
    }
    m
}

/// The 12-letter word (e12(-E) e21(E) e12(-E))^4 for an idempotent E. Its
/// evaluation is the identity, while its half evaluates to the diagonal
/// matrix with 1-2E twice and then ones.
pub fn r_tilde(e: &CrazyRingElt) -> Result<StWord> {
    if !e.is_idempotent() {
        return Err(Error::domain(format!("r_tilde requires an idempotent, got {e}")));
    }
    let base = StWord::from_letters(vec![
        StLetter::new(1, 2, e.neg())?,
        StLetter::new(2, 1, e.clone())?,
        StLetter::new(1, 2, e.neg())?,
    ]);
    Ok(base.pow(4))
}

/// A 4×4 integer matrix: the shadow of an EL4 matrix under the coefficient
/// sum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat4 {
    entries: [[BigInt; 4]; 4],
}

impl IntMat4 {
    pub fn identity() -> IntMat4 {
        let mut m = IntMat4 {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| BigInt::zero())),
        };
        for i in 0..4 {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i - 1][j - 1]
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMat4::identity()
    }

    /// Exact determinant by permutation expansion (24 terms).
    pub fn det(&self) -> BigInt {
        const PERMS: [([usize; 4], i8); 24] = [
            ([0, 1, 2, 3], 1),
            ([0, 1, 3, 2], -1),
            ([0, 2, 1, 3], -1),
            ([0, 2, 3, 1], 1),
            ([0, 3, 1, 2], 1),
            ([0, 3, 2, 1], -1),
            ([1, 0, 2, 3], -1),
            ([1, 0, 3, 2], 1),
            ([1, 2, 0, 3], 1),
            ([1, 2, 3, 0], -1),
            ([1, 3, 0, 2], -1),
            ([1, 3, 2, 0], 1),
            ([2, 0, 1, 3], 1),
            ([2, 0, 3, 1], -1),
            ([2, 1, 0, 3], -1),
            ([2, 1, 3, 0], 1),
            ([2, 3, 0, 1], 1),
            ([2, 3, 1, 0], -1),
            ([3, 0, 1, 2], -1),
            ([3, 0, 2, 1], 1),
            ([3, 1, 0, 2], 1),
            ([3, 1, 2, 0], -1),
            ([3, 2, 0, 1], -1),
            ([3, 2, 1, 0], 1),
        ];
        let mut det = BigInt::zero();
        for (perm, sign) in PERMS {
            let mut term = BigInt::from(sign);
            for (row, &col) in perm.iter().enumerate() {
                term *= &self.entries[row][col];
            }
            det += term;
        }
        det
    }
}

impl fmt::Display for IntMat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..4 {
            write!(f, "[")?;
            for j in 0..4 {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[i][j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Evaluate a word over the integers, replacing every letter's ring element
/// by its coefficient sum. The result always has determinant 1.
pub fn map_to_sl4(w: &StWord) -> IntMat4 {
    let mut m = IntMat4::identity();
    for letter in &w.letters {
        let mut a = letter.r.augmentation();
        if letter.inverted {
            a = -a;
        }
        if a.is_zero() {
            continue;
        }
        let (i, j) = (letter.i - 1, letter.j - 1);
        for t in 0..4 {
            let shifted = &m.entries[t][i] * &a;
            m.entries[t][j] += shifted;
        }
    }
    m
}

/// Entrywise coefficient sum of an evaluated matrix — used to confirm that
/// the integer evaluation is the shadow of the ring evaluation.
pub fn augment_matrix(m: &EL4Matrix) -> IntMat4 {
    let mut out = IntMat4::identity();
    for i in 0..4 {
        for j in 0..4 {
            out.entries[i][j] = m.entries[i][j].augmentation();
        }
    }
    out
}

/// The generator of the doubly-indexed elementary subgroup for row label
/// (i, s_p) and column label (j, s_q), both 1-based. Distinct labels with
/// i = j cannot be written as one letter, so they come out as the
/// commutator [e_{i,j'}(E_{s_p,s_p}), e_{j',i}(E_{s_p,s_q})] with j' the
/// least index different from i.
pub fn delta0_generator(i: usize, j: usize, p: u64, q: u64) -> Result<StWord> {
    if !(1..=4).contains(&i) || !(1..=4).contains(&j) {
        return Err(Error::domain(format!(
            "component indices must lie in 1..4, got ({i}, {j})"
        )));
    }
    if p == 0 || q == 0 {
        return Err(Error::domain("enumeration indices are 1-based".to_string()));
    }
    if i == j && p == q {
        return Err(Error::domain(format!(
            "row and column labels coincide: ({i}, s_{p})"
        )));
    }
    let sp = s_from_index(p)?;
    let sq = s_from_index(q)?;
    let unit = CrazyRingElt::embed_mat(elem(&sp, &sq)?);
    if i != j {
        return Ok(StWord::single(StLetter::new(i, j, unit)?));
    }
    let pivot = CrazyRingElt::embed_mat(elem(&sp, &sp)?);
    let jp = if i == 1 { 2 } else { 1 };
    let a = StWord::single(StLetter::new(i, jp, pivot)?);
    let b = StWord::single(StLetter::new(jp, i, unit)?);
    Ok(a.commutator(&b))
}

/// The expected image of the doubly-indexed generator taken to the k-th
/// power: identity plus k·E_{s_p,s_q} at block (i, j).
fn delta0_image(i: usize, j: usize, p: u64, q: u64, k: i64) -> Result<EL4Matrix> {
    let sp = s_from_index(p)?;
    let sq = s_from_index(q)?;
    let unit = CrazyRingElt::embed_mat(elem(&sp, &sq)?.scale(&BigInt::from(k)));
    let mut m = EL4Matrix::identity();
    let (bi, bj) = (i - 1, j - 1);
    let cur = m.entries[bi][bj].add(&unit);
    m.entries[bi][bj] = cur;
    Ok(m)
}

/// Verify the three relation schemas on sampled ring elements across all
/// applicable 4×4 index tuples.
pub fn check_steinberg_relations(samples: u64, seed: u64) -> Report {
    let mut report = Report::default();
    let mut rng = sample::rng(seed);

    let mut add_ok = true;
    let mut add_detail = String::from("e_ij(r1)·e_ij(r2) = e_ij(r1+r2) on all 12 positions");
    let mut comm_ok = true;
    let mut comm_detail =
        String::from("[e_ij(r1), e_jk(r2)] = e_ik(r1·r2) on all 24 index triples");
    let mut disj_ok = true;
    let mut disj_detail =
        String::from("[e_ij(r1), e_pq(r2)] = 1 whenever j ≠ p and i ≠ q");

    for n in 0..samples {
        let r1 = sample::ring_elt(&mut rng);
        let r2 = sample::ring_elt(&mut rng);

        for i in 1..=4 {
            for j in 1..=4 {
                if i == j {
                    continue;
                }
                let lhs = StWord::from_letters(vec![
                    StLetter::new(i, j, r1.clone()).unwrap(),
                    StLetter::new(i, j, r2.clone()).unwrap(),
                ]);
                let rhs = elementary(i, j, r1.add(&r2)).unwrap();
                if eval(&lhs) != rhs {
                    add_ok = false;
                    add_detail = format!("failed at sample {n}, position ({i},{j})");
                }
            }
        }

        for i in 1..=4usize {
            for j in 1..=4usize {
                for k in 1..=4usize {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let a = StWord::single(StLetter::new(i, j, r1.clone()).unwrap());
                    let b = StWord::single(StLetter::new(j, k, r2.clone()).unwrap());
                    let rhs = elementary(i, k, r1.mul(&r2)).unwrap();
                    if eval(&a.commutator(&b)) != rhs {
                        comm_ok = false;
                        comm_detail = format!("failed at sample {n}, triple ({i},{j},{k})");
                    }
                }
            }
        }

        for i in 1..=4usize {
            for j in 1..=4usize {
                if i == j {
                    continue;
                }
                for p in 1..=4usize {
                    for q in 1..=4usize {
                        if p == q || j == p || i == q {
                            continue;
                        }
                        let a = StWord::single(StLetter::new(i, j, r1.clone()).unwrap());
                        let b = StWord::single(StLetter::new(p, q, r2.clone()).unwrap());
                        if !eval(&a.commutator(&b)).is_identity() {
                            disj_ok = false;
                            disj_detail =
                                format!("failed at sample {n}, pair ({i},{j}) vs ({p},{q})");
                        }
                    }
                }
            }
        }
    }

    report.push("steinberg.additivity", add_ok, &add_detail, samples, seed);
    report.push("steinberg.commutator", comm_ok, &comm_detail, samples, seed);
    report.push("steinberg.disjoint", disj_ok, &disj_detail, samples, seed);
    report
}

/// Verify that a single off-diagonal unit reaches every position through
/// commutation: [e12(1), e2j(r)] = e1j(r) and [e_i1(1), e_1j(r)] = e_ij(r).
pub fn check_normal_generation_identities(samples: u64, seed: u64) -> Report {
    let mut report = Report::default();
    let mut rng = sample::rng(seed);
    let one = CrazyRingElt::one();

    let mut ok = true;
    let mut detail = String::from(
        "[e12(1), e2j(r)] = e1j(r) for j in 3..4 and [e_i1(1), e_1j(r)] = e_ij(r) for i,j ≥ 2",
    );
    for n in 0..samples {
        let r = sample::ring_elt(&mut rng);
        for j in 3..=4usize {
            let a = StWord::single(StLetter::new(1, 2, one.clone()).unwrap());
            let b = StWord::single(StLetter::new(2, j, r.clone()).unwrap());
            if eval(&a.commutator(&b)) != elementary(1, j, r.clone()).unwrap() {
                ok = false;
                detail = format!("first identity failed at sample {n}, j = {j}");
            }
        }
        for i in 2..=4usize {
            for j in 2..=4usize {
                if i == j {
                    continue;
                }
                let a = StWord::single(StLetter::new(i, 1, one.clone()).unwrap());
                let b = StWord::single(StLetter::new(1, j, r.clone()).unwrap());
                if eval(&a.commutator(&b)) != elementary(i, j, r.clone()).unwrap() {
                    ok = false;
                    detail = format!("second identity failed at sample {n}, (i,j) = ({i},{j})");
                }
            }
        }
    }
    report.push("steinberg.normal_generation", ok, &detail, samples, seed);
    report
}

/// Verify that the doubly-indexed generators satisfy the integer Steinberg
/// schemas for all labels in {1..4} × {s_1..s_n}.
pub fn check_delta0_steinberg(n: u64, seed: u64) -> Report {
    let mut report = Report::default();
    let mut labels: Vec<(usize, u64)> = Vec::new();
    for c in 1..=4usize {
        for p in 1..=n {
            labels.push((c, p));
        }
    }

    let mut img_ok = true;
    let mut img_detail =
        String::from("every generator evaluates to identity + unit at its label pair");
    let mut add_ok = true;
    let mut add_detail = String::from("squared generator equals the doubled image");
    for &(i, p) in &labels {
        for &(j, q) in &labels {
            if (i, p) == (j, q) {
                continue;
            }
            let w = delta0_generator(i, j, p, q).unwrap();
            if eval(&w) != delta0_image(i, j, p, q, 1).unwrap() {
                img_ok = false;
                img_detail = format!("image failed at ({i},s_{p}) -> ({j},s_{q})");
            }
            if eval(&w.pow(2)) != delta0_image(i, j, p, q, 2).unwrap() {
                add_ok = false;
                add_detail = format!("additivity failed at ({i},s_{p}) -> ({j},s_{q})");
            }
        }
    }
    report.push("steinberg.delta0_images", img_ok, &img_detail, 0, seed);
    report.push("steinberg.delta0_additivity", add_ok, &add_detail, 0, seed);

    let mut prod_ok = true;
    let mut prod_detail =
        String::from("[gen(A,B), gen(B,C)] matches gen(A,C) in the image for distinct labels");
    for &a in &labels {
        for &b in &labels {
            if a == b {
                continue;
            }
            for &c in &labels {
                if c == a || c == b {
                    continue;
                }
                let ab = delta0_generator(a.0, b.0, a.1, b.1).unwrap();
                let bc = delta0_generator(b.0, c.0, b.1, c.1).unwrap();
                if eval(&ab.commutator(&bc)) != delta0_image(a.0, c.0, a.1, c.1, 1).unwrap() {
                    prod_ok = false;
                    prod_detail = format!(
                        "product rule failed at ({},s_{}) -> ({},s_{}) -> ({},s_{})",
                        a.0, a.1, b.0, b.1, c.0, c.1
                    );
                }
            }
        }
    }
    report.push("steinberg.delta0_product", prod_ok, &prod_detail, 0, seed);

    let mut disj_ok = true;
    let mut disj_detail =
        String::from("generators on label pairs sharing no endpoint commute in the image");
    for (u, &a) in labels.iter().enumerate() {
        for &b in &labels {
            if a == b {
                continue;
            }
            for &c in labels.iter().skip(u) {
                for &d in &labels {
                    if c == d || b == c || a == d {
                        continue;
                    }
                    let ab = delta0_generator(a.0, b.0, a.1, b.1).unwrap();
                    let cd = delta0_generator(c.0, d.0, c.1, d.1).unwrap();
                    if !eval(&ab.commutator(&cd)).is_identity() {
                        disj_ok = false;
                        disj_detail = format!(
                            "commutation failed at ({},s_{})->({},s_{}) vs ({},s_{})->({},s_{})",
                            a.0, a.1, b.0, b.1, c.0, c.1, d.0, d.1
                        );
                    }
                }
            }
        }
    }
    report.push("steinberg.delta0_disjoint", disj_ok, &disj_detail, 0, seed);
    report
}

/// Structural checks around the distinguished word: the ring identity
/// (1-2E)^2 = 1, the diagonal value of the half word, triviality of the full
/// word in the matrix group, and triviality of its integer shadow.
pub fn check_k2(seed: u64) -> Report {
    let mut report = Report::default();
    let e = CrazyRingElt::embed_mat(crate::ring::standard_unit());

    let u = CrazyRingElt::one().sub(&e.add(&e));
    report.push(
        "k2.one_minus_2e_squares_to_one",
        u.mul(&u) == CrazyRingElt::one(),
        "(1-2E)^2 = 1 holds directly in the ring",
        0,
        seed,
    );

    match r_tilde(&e) {
        Ok(word) => {
            let half = word.half().expect("12-letter word halves");
            let mut expected = EL4Matrix::identity();
            expected.entries[0][0] = u.clone();
            expected.entries[1][1] = u.clone();
            let half_val = eval(&half);
            report.push(
                "k2.half_square_diag",
                half_val == expected,
                "half word evaluates to diag(1-2E, 1-2E, 1, 1); the entry 1-2E is its own inverse",
                0,
                seed,
            );
            report.push(
                "k2.r_tilde_identity",
                eval(&word).is_identity(),
                "the full 12-letter word evaluates to the identity matrix",
                0,
                seed,
            );
            let shadow = map_to_sl4(&word);
            report.push(
                "k2.sl4_image_identity",
                shadow.is_identity() && shadow.det() == BigInt::one(),
                "the integer shadow of the word is the identity (unit augments to 0)",
                0,
                seed,
            );
        }
        Err(err) => {
            report.push("k2.half_square_diag", false, &err.to_string(), 0, seed);
            report.push("k2.r_tilde_identity", false, &err.to_string(), 0, seed);
            report.push("k2.sl4_image_identity", false, &err.to_string(), 0, seed);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;
    use crate::thompson::PLMap;

    fn unit_e() -> CrazyRingElt {
        CrazyRingElt::embed_mat(crate::ring::standard_unit())
    }

    fn mixed_elt() -> CrazyRingElt {
        let half = Dyadic::half();
        let quarter = Dyadic::from_ints(1, 2).unwrap();
        CrazyRingElt::embed_group(&PLMap::generator(0).unwrap())
            .add(&CrazyRingElt::embed_mat(elem(&half, &quarter).unwrap()))
    }

    #[test]
    fn single_letter_evaluates_to_an_elementary_matrix() {
        let r = mixed_elt();
        let w = StWord::single(StLetter::new(1, 2, r.clone()).unwrap());
        let m = eval(&w);
        assert_eq!(*m.get(1, 2), r);
        assert_eq!(*m.get(1, 1), CrazyRingElt::one());
        assert_eq!(*m.get(2, 1), CrazyRingElt::zero());
        assert!(eval(&StWord::empty()).is_identity());
    }

    #[test]
    fn letters_require_distinct_small_indices() {
        assert!(StLetter::new(1, 1, unit_e()).is_err());
        assert!(StLetter::new(0, 2, unit_e()).is_err());
        assert!(StLetter::new(2, 5, unit_e()).is_err());
    }

    #[test]
    fn inverse_words_cancel() {
        let r = mixed_elt();
        let w = StWord::from_letters(vec![
            StLetter::new(1, 2, r.clone()).unwrap(),
            StLetter::new(3, 1, unit_e()).unwrap(),
            StLetter::new(2, 4, r).unwrap(),
        ]);
        assert!(eval(&w.concat(&w.inverse())).is_identity());
        assert!(eval(&w.inverse().concat(&w)).is_identity());
    }

    #[test]
    fn eval_is_a_monoid_homomorphism() {
        let u = StWord::from_letters(vec![
            StLetter::new(1, 2, mixed_elt()).unwrap(),
            StLetter::new(2, 3, unit_e()).unwrap(),
        ]);
        let v = StWord::from_letters(vec![
            StLetter::new(3, 4, mixed_elt()).unwrap(),
            StLetter::new(4, 1, unit_e()).unwrap(),
        ]);
        assert_eq!(eval(&u.concat(&v)), eval(&u).mul(&eval(&v)));
    }

    #[test]
    fn shared_index_commutator_contracts_indices() {
        let r1 = mixed_elt();
        let r2 = unit_e();
        let a = StWord::single(StLetter::new(1, 2, r1.clone()).unwrap());
        let b = StWord::single(StLetter::new(2, 3, r2.clone()).unwrap());
        assert_eq!(
            eval(&a.commutator(&b)),
            elementary(1, 3, r1.mul(&r2)).unwrap()
        );
    }

    #[test]
    fn additivity_holds_with_integer_letters() {
        let one = CrazyRingElt::one();
        let two = CrazyRingElt::from_int(2);
        let w = StWord::from_letters(vec![
            StLetter::new(1, 2, one.clone()).unwrap(),
            StLetter::new(1, 2, one).unwrap(),
        ]);
        assert_eq!(eval(&w), elementary(1, 2, two).unwrap());
    }

    #[test]
    fn disjoint_letters_commute() {
        let a = StWord::single(StLetter::new(1, 2, mixed_elt()).unwrap());
        let b = StWord::single(StLetter::new(3, 4, unit_e()).unwrap());
        assert!(eval(&a.commutator(&b)).is_identity());
    }

    #[test]
    fn r_tilde_demands_an_idempotent() {
        assert!(r_tilde(&CrazyRingElt::from_int(2)).is_err());
        assert!(r_tilde(&CrazyRingElt::zero()).is_ok());
        assert!(eval(&r_tilde(&CrazyRingElt::zero()).unwrap()).is_identity());
    }

    #[test]
    fn integer_specialization_reproduces_the_weyl_square() {
        // With the idempotent 1 the half word is the squared Weyl element:
        // diag(-1, -1, 1, 1).
        let word = r_tilde(&CrazyRingElt::one()).unwrap();
        let half_val = eval(&word.half().unwrap());
        let minus_one = CrazyRingElt::from_int(-1);
        assert_eq!(*half_val.get(1, 1), minus_one);
        assert_eq!(*half_val.get(2, 2), minus_one);
        assert_eq!(*half_val.get(3, 3), CrazyRingElt::one());
        assert_eq!(*half_val.get(1, 2), CrazyRingElt::zero());
        assert!(eval(&word).is_identity());
    }

    #[test]
    fn half_word_gives_the_self_inverse_diagonal() {
        let e = unit_e();
        let word = r_tilde(&e).unwrap();
        assert_eq!(word.len(), 12);
        let u = CrazyRingElt::one().sub(&e.add(&e));
        assert_eq!(u.mul(&u), CrazyRingElt::one());
        let half_val = eval(&word.half().unwrap());
        for i in 1..=4 {
            for j in 1..=4 {
                let expected = if i != j {
                    CrazyRingElt::zero()
                } else if i <= 2 {
                    u.clone()
                } else {
                    CrazyRingElt::one()
                };
                assert_eq!(*half_val.get(i, j), expected, "entry ({i},{j})");
            }
        }
        assert!(eval(&word).is_identity());
        assert!(half_val.mul(&half_val).is_identity());
    }

    #[test]
    fn integer_shadow_is_the_augmented_evaluation() {
        let w = StWord::from_letters(vec![
            StLetter::new(1, 2, mixed_elt()).unwrap(),
            StLetter::new(2, 3, CrazyRingElt::from_int(-2)).unwrap(),
            StLetter::new(3, 1, mixed_elt()).unwrap().inverse(),
        ]);
        assert_eq!(map_to_sl4(&w), augment_matrix(&eval(&w)));
        assert_eq!(map_to_sl4(&w).det(), BigInt::one());
        // single integer letter lands on the integer elementary matrix
        let single = StWord::single(StLetter::new(1, 2, CrazyRingElt::one()).unwrap());
        let m = map_to_sl4(&single);
        assert_eq!(*m.get(1, 2), BigInt::one());
        assert_eq!(*m.get(1, 1), BigInt::one());
        assert_eq!(*m.get(2, 1), BigInt::zero());
        // the distinguished word augments away entirely
        let word = r_tilde(&unit_e()).unwrap();
        assert!(map_to_sl4(&word).is_identity());
    }

    #[test]
    fn determinant_expansion_is_correct_on_known_matrices() {
        assert_eq!(IntMat4::identity().det(), BigInt::one());
        let mut m = IntMat4::identity();
        m.entries[0][0] = BigInt::from(2);
        m.entries[1][1] = BigInt::from(3);
        assert_eq!(m.det(), BigInt::from(6));
        let mut swap = IntMat4::identity();
        swap.entries[0][0] = BigInt::zero();
        swap.entries[1][1] = BigInt::zero();
        swap.entries[0][1] = BigInt::one();
        swap.entries[1][0] = BigInt::one();
        assert_eq!(swap.det(), BigInt::from(-1));
    }

    #[test]
    fn doubly_indexed_generators_take_the_expected_images() {
        // off-component: one letter
        let w = delta0_generator(1, 2, 1, 1).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(eval(&w), delta0_image(1, 2, 1, 1, 1).unwrap());
        // same component, distinct enumeration indices: a 4-letter commutator
        let w = delta0_generator(1, 1, 1, 2).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(eval(&w), delta0_image(1, 1, 1, 2, 1).unwrap());
        // coincident labels are rejected
        assert!(delta0_generator(2, 2, 3, 3).is_err());
        assert!(delta0_generator(1, 2, 0, 1).is_err());
    }

    #[test]
    fn doubly_indexed_product_rule_crosses_components() {
        let ab = delta0_generator(1, 2, 1, 2).unwrap();
        let bc = delta0_generator(2, 3, 2, 1).unwrap();
        assert_eq!(
            eval(&ab.commutator(&bc)),
            delta0_image(1, 3, 1, 1, 1).unwrap()
        );
    }

    #[test]
    fn word_display_round_trips_the_letter_grammar() {
        let w = StWord::from_letters(vec![
            StLetter::new(1, 2, unit_e()).unwrap(),
            StLetter::new(3, 4, CrazyRingElt::one()).unwrap().inverse(),
        ]);
        let text = w.to_string();
        assert!(text.starts_with("e(1,2;["));
        assert!(text.contains(")^-1"));
        assert_eq!(StWord::empty().to_string(), "1");
    }

    #[test]
    fn relation_checks_pass_on_a_small_run() {
        assert!(check_steinberg_relations(5, 0).all_pass());
        assert!(check_normal_generation_identities(5, 0).all_pass());
        assert!(check_delta0_steinberg(2, 0).all_pass());
        assert!(check_k2(0).all_pass());
    }
}
