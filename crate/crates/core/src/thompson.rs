//! Piecewise-linear homeomorphisms of `[0, 1]` with dyadic breakpoints and
//! power-of-two slopes: the classical group generated by the two maps
//! usually written `x0` and `x1`.
//!
//! Elements are represented by their canonical breakpoint sequence, so
//! structural equality is equality of maps. Composition is written
//! `f.compose(&g)` and means `x -> f(g(x))`; the group acts on dyadics from
//! the left via [`PLMap::apply`].

use std::fmt;

use crate::dyadic::{decompose_std, Dyadic, StdInterval};
use crate::error::Error;
use crate::report::Report;
use crate::Result;

/// A PL homeomorphism of the unit interval in canonical form: breakpoints
/// strictly increasing in both coordinates, every slope an exact power of
/// two, no breakpoint removable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PLMap {
    pts: Vec<(Dyadic, Dyadic)>,
}

impl PLMap {
    /// Validate a breakpoint list and canonicalize it (collinear interior
    /// breakpoints are dropped).
    pub fn new(pts: Vec<(Dyadic, Dyadic)>) -> Result<PLMap> {
        if pts.len() < 2 {
            return Err(Error::domain("a PL map needs at least two breakpoints"));
        }
        let first = &pts[0];
        let last = &pts[pts.len() - 1];
        if !(first.0.is_zero() && first.1.is_zero() && last.0.is_one() && last.1.is_one()) {
            return Err(Error::domain(
                "breakpoints must run from (0,0) to (1,1)".to_string(),
            ));
        }
        let mut slopes = Vec::with_capacity(pts.len() - 1);
        for w in pts.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::domain(
                    "breakpoints must be strictly increasing in both coordinates".to_string(),
                ));
            }
            slopes.push(slope_exp(&w[0], &w[1])?);
        }
        let mut canon = vec![pts[0].clone()];
        for i in 1..pts.len() - 1 {
            if slopes[i - 1] != slopes[i] {
                canon.push(pts[i].clone());
            }
        }
        canon.push(pts[pts.len() - 1].clone());
        Ok(PLMap { pts: canon })
    }

    pub fn identity() -> PLMap {
        PLMap {
            pts: vec![(Dyadic::zero(), Dyadic::zero()), (Dyadic::one(), Dyadic::one())],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.pts.len() == 2
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.pts
    }

    /// The two standard generators: `generator(0)` halves `[0, 1/2]`,
    /// `generator(1)` is the identity below `1/2` glued with a half-scale
    /// copy of `generator(0)` above it.
    pub fn generator(i: usize) -> Result<PLMap> {
        let d = |n, e| Dyadic::from_ints(n, e).expect("literal dyadic");
        match i {
            0 => PLMap::new(vec![
                (Dyadic::zero(), Dyadic::zero()),
                (d(1, 1), d(1, 2)),
                (d(3, 2), d(1, 1)),
                (Dyadic::one(), Dyadic::one()),
            ]),
            1 => PLMap::new(vec![
                (Dyadic::zero(), Dyadic::zero()),
                (d(1, 1), d(1, 1)),
                (d(3, 2), d(5, 3)),
                (d(7, 3), d(3, 2)),
                (Dyadic::one(), Dyadic::one()),
            ]),
            _ => Err(Error::domain(format!("no generator with index {i}"))),
        }
    }

    /// Evaluate the map at a dyadic point.
    pub fn apply(&self, x: &Dyadic) -> Dyadic {
        segment_eval(&self.pts, x, |p| &p.0, |p| &p.1, false)
    }

    /// Evaluate the inverse map at a dyadic point.
    pub fn apply_inverse(&self, y: &Dyadic) -> Dyadic {
        segment_eval(&self.pts, y, |p| &p.1, |p| &p.0, true)
    }

    /// `self` after `g`: the map `x -> self(g(x))`.
    pub fn compose(&self, g: &PLMap) -> PLMap {
        let mut xs: Vec<Dyadic> = g.pts.iter().map(|(x, _)| x.clone()).collect();
        for (fx, _) in &self.pts {
            xs.push(g.apply_inverse(fx));
        }
        xs.sort();
        xs.dedup();
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = self.apply(&g.apply(&x));
                (x, y)
            })
            .collect();
        PLMap::new(pts).expect("composition of valid PL maps is valid")
    }

    pub fn invert(&self) -> PLMap {
        let pts = self.pts.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        PLMap::new(pts).expect("inverse of a valid PL map is valid")
    }

    /// Integer power, negative exponents via the inverse.
    pub fn pow(&self, k: i64) -> PLMap {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut acc = PLMap::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(a: &PLMap, b: &PLMap) -> PLMap {
        a.compose(b).compose(&a.invert()).compose(&b.invert())
    }
}

/// Evaluate a breakpoint sequence at `x`, reading the abscissa with `xc` and
/// the ordinate with `yc`; `inverse` controls the slope direction.
fn segment_eval(
    pts: &[(Dyadic, Dyadic)],
    x: &Dyadic,
    xc: impl for<'b> Fn(&'b (Dyadic, Dyadic)) -> &'b Dyadic,
    yc: impl for<'b> Fn(&'b (Dyadic, Dyadic)) -> &'b Dyadic,
    inverse: bool,
) -> Dyadic {
    if x.is_one() {
        return Dyadic::one();
    }
    let i = pts.partition_point(|p| xc(p) <= x);
    // x in [0, 1) and the abscissas start at 0, so 1 <= i < len
    let (p0, p1) = (&pts[i - 1], &pts[i]);
    let m = slope_exp(p0, p1).expect("canonical maps have power-of-two slopes");
    let m = if inverse { -m } else { m };
    let dx = x.sub(xc(p0)).expect("x is to the right of its segment start");
    yc(p0)
        .add(&dx.mul_pow2(m).expect("segment image stays in [0,1]"))
        .expect("segment image stays in [0,1]")
}

/// The base-2 logarithm of the slope between two breakpoints, or an error if
/// the slope is not an exact power of two.
fn slope_exp(p0: &(Dyadic, Dyadic), p1: &(Dyadic, Dyadic)) -> Result<i64> {
    let dx = p1.0.sub(&p0.0)?;
    let dy = p1.1.sub(&p0.1)?;
    // dy = p/2^a and dx = q/2^b in lowest terms with p, q odd;
    // dy/dx = (p/q) * 2^(b-a) is a power of two exactly when p = q
    if dy.num() != dx.num() {
        return Err(Error::domain(format!(
            "slope between ({}, {}) and ({}, {}) is not a power of two",
            p0.0, p0.1, p1.0, p1.1
        )));
    }
    i64::try_from(i128::from(dx.exp()) - i128::from(dy.exp()))
        .map_err(|_| Error::domain("slope exponent overflow".to_string()))
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (x, y) in &self.pts {
            if !first {
                write!(f, ";")?;
            }
            write!(f, "({x},{y})")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A map sending `a -> x` and `b -> y` for interior dyadics `a < b`,
/// `x < y`: witnesses that the group moves any ordered pair of interior
/// dyadics onto any other.
///
/// The three segments cut out by `{a, b}` and `{x, y}` are each decomposed
/// into standard dyadic intervals; leaf counts are equalized by splitting the
/// shallowest leaf (leftmost on ties) of the shorter side, and leaves are
/// then matched up affinely in order.
pub fn two_transitive_witness(a: &Dyadic, b: &Dyadic, x: &Dyadic, y: &Dyadic) -> Result<PLMap> {
    for v in [a, b, x, y] {
        if !v.is_interior() {
            return Err(Error::domain(format!("{v} is not an interior dyadic")));
        }
    }
    if a >= b || x >= y {
        return Err(Error::domain(
            "witness endpoints must satisfy a < b and x < y".to_string(),
        ));
    }
    let cuts_src = [
        (Dyadic::zero(), a.clone()),
        (a.clone(), b.clone()),
        (b.clone(), Dyadic::one()),
    ];
    let cuts_dst = [
        (Dyadic::zero(), x.clone()),
        (x.clone(), y.clone()),
        (y.clone(), Dyadic::one()),
    ];
    let mut pts = vec![(Dyadic::zero(), Dyadic::zero())];
    for (src, dst) in cuts_src.iter().zip(&cuts_dst) {
        let mut ls = decompose_std(&src.0, &src.1)?;
        let mut ld = decompose_std(&dst.0, &dst.1)?;
        while ls.len() < ld.len() {
            split_shallowest(&mut ls);
        }
        while ld.len() < ls.len() {
            split_shallowest(&mut ld);
        }
        for (s, t) in ls.iter().zip(&ld) {
            pts.push((s.hi(), t.hi()));
        }
    }
    PLMap::new(pts)
}

fn split_shallowest(leaves: &mut Vec<StdInterval>) {
    let i = leaves
        .iter()
        .enumerate()
        .min_by_key(|(_, iv)| iv.depth())
        .map(|(i, _)| i)
        .expect("leaf lists are never empty");
    let (l, r) = leaves[i].split();
    leaves.splice(i..=i, [l, r]);
}

/// Generators for the subgroup fixing `1/2`: the two standard generators
/// rescaled into `[0, 1/2]` (extended by the identity above) and into
/// `[1/2, 1]` (extended by the identity below). Only the point `1/2` is
/// supported, matching everything downstream that is anchored there.
pub fn stabilizer_generators(s0: &Dyadic) -> Result<Vec<PLMap>> {
    if *s0 != Dyadic::half() {
        return Err(Error::domain(format!(
            "stabilizer generators are only provided at 1/2, not {s0}"
        )));
    }
    let x0 = PLMap::generator(0)?;
    let x1 = PLMap::generator(1)?;
    Ok(vec![
        rescale_lower(&x0),
        rescale_lower(&x1),
        rescale_upper(&x0),
        rescale_upper(&x1),
    ])
}

fn rescale_lower(f: &PLMap) -> PLMap {
    let mut pts: Vec<(Dyadic, Dyadic)> = f
        .breakpoints()
        .iter()
        .map(|(x, y)| {
            (
                x.mul_pow2(-1).expect("halving stays in range"),
                y.mul_pow2(-1).expect("halving stays in range"),
            )
        })
        .collect();
    pts.push((Dyadic::one(), Dyadic::one()));
    PLMap::new(pts).expect("rescaled copy is valid")
}

fn rescale_upper(f: &PLMap) -> PLMap {
    let half = Dyadic::half();
    let mut pts = vec![(Dyadic::zero(), Dyadic::zero())];
    pts.extend(f.breakpoints().iter().map(|(x, y)| {
        (
            half.add(&x.mul_pow2(-1).expect("halving stays in range"))
                .expect("shift stays in range"),
            half.add(&y.mul_pow2(-1).expect("halving stays in range"))
                .expect("shift stays in range"),
        )
    }));
    PLMap::new(pts).expect("rescaled copy is valid")
}

/// Check the two defining relations of the group presentation
/// `[x0 x1^-1, x0^-1 x1 x0] = [x0 x1^-1, x0^-2 x1 x0^2] = 1`
/// by exact PL composition.
pub fn check_f_presentation() -> Report {
    let x0 = PLMap::generator(0).expect("generator 0");
    let x1 = PLMap::generator(1).expect("generator 1");
    let a = x0.compose(&x1.invert());
    let mut report = Report::new();
    for (k, name) in [(1i64, "thompson.relation1"), (2, "thompson.relation2")] {
        let b = x0.pow(-k).compose(&x1).compose(&x0.pow(k));
        let c = PLMap::commutator(&a, &b);
        report.push(
            name,
            c.is_identity(),
            format!("[x0*x1^-1, x0^-{k}*x1*x0^{k}] evaluates to a map with {} breakpoints", c.breakpoints().len()),
            0,
            0,
        );
    }
    report
}

/// Full suite: the two defining relations, sampled two-transitivity with
/// exact image constraints, and the stabilizer generators fixing 1/2.
pub fn check_thompson(samples: u64, seed: u64) -> Report {
    use rand::Rng;

    let mut report = check_f_presentation();
    let mut rng = crate::sample::rng(seed);
    let interior = |rng: &mut rand_chacha::ChaCha8Rng| {
        let exp = rng.gen_range(1..=5u64);
        let num = 2 * rng.gen_range(0..1u64 << (exp - 1)) + 1;
        Dyadic::from_ints(num, exp).expect("odd numerator below 2^exp")
    };

    let mut trans_ok = true;
    let mut trans_detail =
        String::from("witness maps (a,b) to (x,y) exactly on seeded interior quadruples");
    for n in 0..samples {
        let (a, b) = loop {
            let u = interior(&mut rng);
            let v = interior(&mut rng);
            if u != v {
                break if u < v { (u, v) } else { (v, u) };
            }
        };
        let (x, y) = loop {
            let u = interior(&mut rng);
            let v = interior(&mut rng);
            if u != v {
                break if u < v { (u, v) } else { (v, u) };
            }
        };
        match two_transitive_witness(&a, &b, &x, &y) {
            Ok(f) if f.apply(&a) == x && f.apply(&b) == y => {}
            _ => {
                trans_ok = false;
                trans_detail = format!("witness failed at sample {n}: ({a},{b}) to ({x},{y})");
                break;
            }
        }
    }
    report.push("thompson.two_transitive", trans_ok, trans_detail, samples, seed);

    let half = Dyadic::half();
    let gens = stabilizer_generators(&half).expect("generators at 1/2");
    let stab_ok = gens.len() == 4
        && gens
            .iter()
            .all(|f| f.apply(&half) == half && !f.is_identity());
    report.push(
        "thompson.stabilizer_fixes",
        stab_ok,
        "all four nontrivial stabilizer generators fix 1/2 exactly".to_string(),
        0,
        seed,
    );

    report
}
