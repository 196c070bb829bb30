//! The combined ring: integer group-ring combinations of PL maps glued to
//! finitely supported matrices by a semidirect multiplication.
//!
//! An element is a pair (f, m) with f an integer combination of PL maps and
//! m a finitely supported matrix. Multiplication is
//!
//! ```text
//! (f, m) · (f', m') = (f f', f·m' + m·f' + m m')
//! ```
//!
//! where a group-ring element acts on a matrix by relabelling rows (from the
//! left) or columns (from the right), weighted by its coefficients. The pure
//! matrices form a two-sided ideal; the group ring is a subring; projecting a
//! group-ring element to the sum of its coefficients (dropping the matrix
//! part) is a ring homomorphism to the integers.
//!
//! The module also emits the finite presentation of this ring on the five
//! symbols x0, x1, their inverses, and the matrix unit E supported at
//! (1/2, 1/2): the two defining relations of the PL group, absorption of the
//! four stabilizer generators of 1/2 into E, idempotency of E, and the
//! vanishing of E·t·E for the two translation witnesses t that move 1/2 off
//! itself.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dyadic::Dyadic;
use crate::finmat::{self, elem, FinMat, SVector};
use crate::report::Report;
use crate::sample;
use crate::thompson::{stabilizer_generators, PLMap};
use crate::Result;

/// An integer combination of canonical PL maps; no zero coefficients are
/// stored, so structural equality is equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupRingElt {
    terms: BTreeMap<PLMap, BigInt>,
}

impl GroupRingElt {
    pub fn zero() -> GroupRingElt {
        GroupRingElt::default()
    }

    pub fn one() -> GroupRingElt {
        GroupRingElt::term(PLMap::identity(), BigInt::one())
    }

    pub fn term(f: PLMap, coeff: BigInt) -> GroupRingElt {
        let mut out = GroupRingElt::zero();
        out.add_term(f, coeff);
        out
    }

    pub fn add_term(&mut self, f: PLMap, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let cur = self.terms.entry(f.clone()).or_insert_with(BigInt::zero);
        *cur += coeff;
        if cur.is_zero() {
            self.terms.remove(&f);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PLMap, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, f: &PLMap) -> BigInt {
        self.terms.get(f).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, rhs: &GroupRingElt) -> GroupRingElt {
        let mut out = self.clone();
        for (f, c) in &rhs.terms {
            out.add_term(f.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> GroupRingElt {
        GroupRingElt {
            terms: self.terms.iter().map(|(f, c)| (f.clone(), -c)).collect(),
        }
    }

    /// Convolution product: composition of maps on keys, integer product on
    /// coefficients.
    pub fn mul(&self, rhs: &GroupRingElt) -> GroupRingElt {
        let mut out = GroupRingElt::zero();
        for (f, a) in &self.terms {
            for (g, b) in &rhs.terms {
                out.add_term(f.compose(g), a * b);
            }
        }
        out
    }

    /// Sum of coefficients — the image under the homomorphism to ℤ.
    pub fn coeff_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Left action on a matrix: each group term relabels rows forward.
    fn mul_mat_left(&self, m: &FinMat) -> FinMat {
        let mut out = FinMat::zero();
        for (f, a) in &self.terms {
            out = out.add(&finmat::perm_left(f, m).scale(a));
        }
        out
    }

    /// Right action on a matrix: each group term relabels columns backward.
    fn mul_mat_right(m: &FinMat, rhs: &GroupRingElt) -> FinMat {
        let mut out = FinMat::zero();
        for (g, b) in &rhs.terms {
            out = out.add(&finmat::perm_right(m, g).scale(b));
        }
        out
    }

    /// Action on a finitely supported vector by relabelling supports.
    pub fn act(&self, v: &SVector) -> SVector {
        let mut out = SVector::zero();
        for (f, a) in &self.terms {
            out = out.add(&finmat::act_perm(f, v).scale(a));
        }
        out
    }
}

impl fmt::Display for GroupRingElt {
    // single generators and their inverses print in re-parseable word form;
    // longer products fall back to an angle-bracketed breakpoint list
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let x0 = PLMap::generator(0).expect("generator 0 exists");
        let x1 = PLMap::generator(1).expect("generator 1 exists");
        let mut first = true;
        for (g, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            if g.is_identity() {
                write!(f, "{c}")?;
            } else if *g == x0 {
                write!(f, "{c}*x0")?;
            } else if *g == x1 {
                write!(f, "{c}*x1")?;
            } else if *g == x0.invert() {
                write!(f, "{c}*x0^-1")?;
            } else if *g == x1.invert() {
                write!(f, "{c}*x1^-1")?;
            } else {
                write!(f, "{c}*<{g}>")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element (f, m) of the combined ring.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CrazyRingElt {
    grp: GroupRingElt,
    mat: FinMat,
}

impl CrazyRingElt {
    pub fn zero() -> CrazyRingElt {
        CrazyRingElt::default()
    }

    pub fn one() -> CrazyRingElt {
        CrazyRingElt {
            grp: GroupRingElt::one(),
            mat: FinMat::zero(),
        }
    }

    pub fn from_parts(grp: GroupRingElt, mat: FinMat) -> CrazyRingElt {
        CrazyRingElt { grp, mat }
    }

    pub fn embed_group(f: &PLMap) -> CrazyRingElt {
        CrazyRingElt::from_parts(GroupRingElt::term(f.clone(), BigInt::one()), FinMat::zero())
    }

    pub fn embed_group_ring(grp: GroupRingElt) -> CrazyRingElt {
        CrazyRingElt::from_parts(grp, FinMat::zero())
    }

    pub fn embed_mat(m: FinMat) -> CrazyRingElt {
        CrazyRingElt::from_parts(GroupRingElt::zero(), m)
    }

    pub fn from_int(n: i64) -> CrazyRingElt {
        CrazyRingElt::from_parts(
            GroupRingElt::term(PLMap::identity(), BigInt::from(n)),
            FinMat::zero(),
        )
    }

    pub fn group_part(&self) -> &GroupRingElt {
        &self.grp
    }

    pub fn matrix_part(&self) -> &FinMat {
        &self.mat
    }

    pub fn is_zero(&self) -> bool {
        self.grp.is_zero() && self.mat.is_zero()
    }

    pub fn add(&self, rhs: &CrazyRingElt) -> CrazyRingElt {
        CrazyRingElt {
            grp: self.grp.add(&rhs.grp),
            mat: self.mat.add(&rhs.mat),
        }
    }

    pub fn neg(&self) -> CrazyRingElt {
        CrazyRingElt {
            grp: self.grp.neg(),
            mat: self.mat.neg(),
        }
    }

    pub fn sub(&self, rhs: &CrazyRingElt) -> CrazyRingElt {
        self.add(&rhs.neg())
    }

    /// The semidirect product: (f, m)(f', m') = (ff', f·m' + m·f' + mm').
    pub fn mul(&self, rhs: &CrazyRingElt) -> CrazyRingElt {
        let grp = self.grp.mul(&rhs.grp);
        let mat = self
            .grp
            .mul_mat_left(&rhs.mat)
            .add(&GroupRingElt::mul_mat_right(&self.mat, &rhs.grp))
            .add(&self.mat.mul(&rhs.mat));
        CrazyRingElt { grp, mat }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    /// The homomorphism to ℤ: sum of group coefficients, matrix part dies.
    pub fn augmentation(&self) -> BigInt {
        self.grp.coeff_sum()
    }

    /// The module action on finitely supported vectors.
    pub fn act_vector(&self, v: &SVector) -> SVector {
        self.grp.act(v).add(&finmat::act_mat(&self.mat, v))
    }
}

impl fmt::Display for CrazyRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.grp.is_zero(), self.mat.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.grp),
            (true, false) => write!(f, "{}", self.mat),
            (false, false) => write!(f, "({};{})", self.grp, self.mat),
        }
    }
}

impl fmt::Debug for CrazyRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The generating symbols of the emitted presentation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RingSymbol {
    X0,
    X0Inv,
    X1,
    X1Inv,
    E,
}

impl RingSymbol {
    pub const ALL: [RingSymbol; 5] = [
        RingSymbol::X0,
        RingSymbol::X1,
        RingSymbol::X0Inv,
        RingSymbol::X1Inv,
        RingSymbol::E,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RingSymbol::X0 => "x0",
            RingSymbol::X0Inv => "x0^-1",
            RingSymbol::X1 => "x1",
            RingSymbol::X1Inv => "x1^-1",
            RingSymbol::E => "E",
        }
    }

    pub fn eval(self) -> CrazyRingElt {
        match self {
            RingSymbol::X0 => CrazyRingElt::embed_group(&PLMap::generator(0).unwrap()),
            RingSymbol::X0Inv => {
                CrazyRingElt::embed_group(&PLMap::generator(0).unwrap().invert())
            }
            RingSymbol::X1 => CrazyRingElt::embed_group(&PLMap::generator(1).unwrap()),
            RingSymbol::X1Inv => {
                CrazyRingElt::embed_group(&PLMap::generator(1).unwrap().invert())
            }
            RingSymbol::E => CrazyRingElt::embed_mat(standard_unit()),
        }
    }
}

/// The distinguished matrix unit with a single 1 at (1/2, 1/2).
pub fn standard_unit() -> FinMat {
    elem(&Dyadic::half(), &Dyadic::half()).expect("1/2 is interior")
}

/// Right-hand side of a relation: a word in the symbols (empty = the ring
/// identity) or the ring zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RelationRhs {
    Word(Vec<RingSymbol>),
    Zero,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingRelation {
    pub name: String,
    pub lhs: Vec<RingSymbol>,
    pub rhs: RelationRhs,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingPresentation {
    pub generators: Vec<RingSymbol>,
    pub relations: Vec<RingRelation>,
}

/// Render a symbol word in the presentation grammar: symbols joined by `*`,
/// empty word printed as `1`.
pub fn word_text(word: &[RingSymbol]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter().map(|s| s.name()).collect::<Vec<_>>().join("*")
}

/// Evaluate a symbol word to a concrete ring element (left-to-right product).
pub fn word_element(word: &[RingSymbol]) -> CrazyRingElt {
    let mut out = CrazyRingElt::one();
    for s in word {
        out = out.mul(&s.eval());
    }
    out
}

impl RingRelation {
    fn new(name: &str, lhs: Vec<RingSymbol>, rhs: RelationRhs) -> RingRelation {
        RingRelation {
            name: name.to_string(),
            lhs,
            rhs,
        }
    }

    pub fn rhs_text(&self) -> String {
        match &self.rhs {
            RelationRhs::Word(w) => word_text(w),
            RelationRhs::Zero => "0".to_string(),
        }
    }

    /// Re-check the relation by evaluating both sides in the concrete model.
    pub fn holds(&self) -> bool {
        let lhs = word_element(&self.lhs);
        let rhs = match &self.rhs {
            RelationRhs::Word(w) => word_element(w),
            RelationRhs::Zero => CrazyRingElt::zero(),
        };
        lhs == rhs
    }
}

/// Express a PL map known to be a short product of the generators as a
/// symbol word. Bounded breadth-first search over products of the four
/// letters; each stabilizer generator is found within 8 letters.
fn symbol_word_for(target: &PLMap) -> Option<Vec<RingSymbol>> {
    use RingSymbol::{X0, X0Inv, X1, X1Inv};
    let letters: [(RingSymbol, PLMap); 4] = [
        (X0, PLMap::generator(0).ok()?),
        (X1, PLMap::generator(1).ok()?),
        (X0Inv, PLMap::generator(0).ok()?.invert()),
        (X1Inv, PLMap::generator(1).ok()?.invert()),
    ];
    let mut frontier: Vec<(Vec<RingSymbol>, PLMap)> = vec![(Vec::new(), PLMap::identity())];
    let mut seen: std::collections::BTreeSet<PLMap> = std::collections::BTreeSet::new();
    seen.insert(PLMap::identity());
    for _depth in 0..8 {
        let mut next = Vec::new();
        for (word, map) in &frontier {
            for (sym, gen) in &letters {
                let m2 = map.compose(gen);
                if m2 == *target {
                    let mut w = word.clone();
                    w.push(*sym);
                    return Some(w);
                }
                if seen.insert(m2.clone()) {
                    let mut w = word.clone();
                    w.push(*sym);
                    next.push((w, m2));
                }
            }
        }
        frontier = next;
    }
    None
}

/// Emit the finite presentation on {x0, x1, x0^-1, x1^-1, E}: the two
/// defining relations of the PL group, absorption y·E = E·y = E for the four
/// stabilizer generators y of 1/2, E·E = E, and E·t·E = 0 for the two
/// witnesses t carrying 1/2 to each side of itself.
pub fn emit_presentation() -> Result<RingPresentation> {
    use RingSymbol::{E, X0, X0Inv, X1, X1Inv};

    let commutator = |a: &[RingSymbol], b: &[RingSymbol]| -> Vec<RingSymbol> {
        let inv = |w: &[RingSymbol]| -> Vec<RingSymbol> {
            w.iter()
                .rev()
                .map(|s| match s {
                    X0 => X0Inv,
                    X0Inv => X0,
                    X1 => X1Inv,
                    X1Inv => X1,
                    E => E,
                })
                .collect()
        };
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        w.extend(inv(a));
        w.extend(inv(b));
        w
    };

    let a = [X0, X1Inv];
    let b1 = [X0Inv, X1, X0];
    let b2 = [X0Inv, X0Inv, X1, X0, X0];

    let mut relations = vec![
        RingRelation::new("group-relation-1", commutator(&a, &b1), RelationRhs::Word(vec![])),
        RingRelation::new("group-relation-2", commutator(&a, &b2), RelationRhs::Word(vec![])),
    ];

    for (i, y) in stabilizer_generators(&Dyadic::half())?.iter().enumerate() {
        let word = symbol_word_for(y).ok_or_else(|| {
            crate::Error::domain("stabilizer generator has no short word".to_string())
        })?;
        let mut left = word.clone();
        left.push(E);
        relations.push(RingRelation::new(
            &format!("stabilizer-{}-absorbed-left", i + 1),
            left,
            RelationRhs::Word(vec![E]),
        ));
        let mut right = vec![E];
        right.extend_from_slice(&word);
        relations.push(RingRelation::new(
            &format!("stabilizer-{}-absorbed-right", i + 1),
            right,
            RelationRhs::Word(vec![E]),
        ));
    }

    relations.push(RingRelation::new(
        "unit-idempotent",
        vec![E, E],
        RelationRhs::Word(vec![E]),
    ));
    // x0^-1 carries 1/2 to 3/4 and x0 carries it to 1/4; either way the
    // displaced column misses the unit's row, so the sandwich vanishes.
    relations.push(RingRelation::new(
        "unit-separated-1",
        vec![E, X0Inv, E],
        RelationRhs::Zero,
    ));
    relations.push(RingRelation::new(
        "unit-separated-2",
        vec![E, X0, E],
        RelationRhs::Zero,
    ));

    Ok(RingPresentation {
        generators: RingSymbol::ALL.to_vec(),
        relations,
    })
}

/// Run the randomized and structural checks for this module.
pub fn check(samples: u64, seed: u64) -> Report {
    let mut report = Report::default();
    let mut rng = sample::rng(seed);

    let mut axioms_ok = true;
    let mut axioms_detail = String::from("associativity and distributivity on random triples");
    for i in 0..samples {
        let u = sample::ring_elt(&mut rng);
        let v = sample::ring_elt(&mut rng);
        let w = sample::ring_elt(&mut rng);
        let assoc = u.mul(&v).mul(&w) == u.mul(&v.mul(&w));
        let dist_l = u.mul(&v.add(&w)) == u.mul(&v).add(&u.mul(&w));
        let dist_r = u.add(&v).mul(&w) == u.mul(&w).add(&v.mul(&w));
        if !(assoc && dist_l && dist_r) {
            axioms_ok = false;
            axioms_detail = format!("failed at sample {i}: u={u}, v={v}, w={w}");
            break;
        }
    }
    report.push("ring.axioms", axioms_ok, &axioms_detail, samples, seed);

    let mut ideal_ok = true;
    let mut ideal_detail =
        String::from("products with pure-matrix elements stay pure-matrix on both sides");
    for i in 0..samples {
        let u = sample::ring_elt(&mut rng);
        let m = CrazyRingElt::embed_mat(sample::finmat(&mut rng));
        if !(u.mul(&m).group_part().is_zero() && m.mul(&u).group_part().is_zero()) {
            ideal_ok = false;
            ideal_detail = format!("failed at sample {i}: u={u}, m={m}");
            break;
        }
    }
    report.push("ring.ideal", ideal_ok, &ideal_detail, samples, seed);

    match emit_presentation() {
        Ok(pres) => {
            let count_ok = pres.relations.len() == 13 && pres.generators.len() == 5;
            report.push(
                "ring.presentation_count",
                count_ok,
                &format!(
                    "{} generators, {} relations (expected 5 and 13)",
                    pres.generators.len(),
                    pres.relations.len()
                ),
                0,
                seed,
            );
            let failing: Vec<&str> = pres
                .relations
                .iter()
                .filter(|r| !r.holds())
                .map(|r| r.name.as_str())
                .collect();
            report.push(
                "ring.presentation_relations",
                failing.is_empty(),
                &if failing.is_empty() {
                    "all emitted relations re-evaluate to identities".to_string()
                } else {
                    format!("failing relations: {}", failing.join(", "))
                },
                0,
                seed,
            );
        }
        Err(e) => {
            report.push("ring.presentation_count", false, &e.to_string(), 0, seed);
            report.push("ring.presentation_relations", false, &e.to_string(), 0, seed);
        }
    }

    let mut aug_ok = CrazyRingElt::one().augmentation() == BigInt::one();
    let mut aug_detail = String::from("multiplicative and additive on random pairs; one maps to 1");
    for i in 0..samples {
        if !aug_ok {
            break;
        }
        let u = sample::ring_elt(&mut rng);
        let v = sample::ring_elt(&mut rng);
        let mul_ok = u.mul(&v).augmentation() == u.augmentation() * v.augmentation();
        let add_ok = u.add(&v).augmentation() == u.augmentation() + v.augmentation();
        if !(mul_ok && add_ok) {
            aug_ok = false;
            aug_detail = format!("failed at sample {i}: u={u}, v={v}");
        }
    }
    report.push("ring.augmentation_hom", aug_ok, &aug_detail, samples, seed);

    let mut act_ok = true;
    let mut act_detail =
        String::from("module laws: compatibility with multiplication and addition, unit acts as identity");
    for i in 0..samples {
        let u = sample::ring_elt(&mut rng);
        let w = sample::ring_elt(&mut rng);
        let v = sample::svector(&mut rng);
        let compat = u.mul(&w).act_vector(&v) == u.act_vector(&w.act_vector(&v));
        let additive = u.add(&w).act_vector(&v) == u.act_vector(&v).add(&w.act_vector(&v));
        let unit = CrazyRingElt::one().act_vector(&v) == v;
        if !(compat && additive && unit) {
            act_ok = false;
            act_detail = format!("failed at sample {i}: u={u}, w={w}, v={v}");
            break;
        }
    }
    report.push("ring.module_action", act_ok, &act_detail, samples, seed);

    report
}
