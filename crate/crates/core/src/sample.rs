//! Seeded sample generators shared by every randomized check.
//!
//! One convention everywhere: group parts are sums of at most two positive
//! words of length at most two in the generators, matrix parts have at most
//! two entries indexed by the first four interior dyadics, and all
//! coefficients lie in [-3, 3] with zero excluded. Small supports keep exact
//! arithmetic fast while still exercising both ring components.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dyadic::{enumerate_s, Dyadic};
use crate::finmat::{FinMat, SVector};
use crate::ring::{CrazyRingElt, GroupRingElt};
use crate::thompson::PLMap;

/// The deterministic generator used by all checks; a fixed seed fixes every
/// report byte-for-byte.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One of the first four interior dyadics: 1/2, 1/4, 3/4, 1/8.
pub fn dyadic(rng: &mut ChaCha8Rng) -> Dyadic {
    let pool = enumerate_s(4);
    pool[rng.gen_range(0..pool.len())].clone()
}

/// A nonzero integer in [-3, 3].
pub fn coeff(rng: &mut ChaCha8Rng) -> BigInt {
    let mut c = 0i64;
    while c == 0 {
        c = rng.gen_range(-3..=3);
    }
    BigInt::from(c)
}

/// A positive word of length at most two in the two generators.
pub fn group_word(rng: &mut ChaCha8Rng) -> PLMap {
    let len = rng.gen_range(0..=2);
    let mut out = PLMap::identity();
    for _ in 0..len {
        let g = PLMap::generator(rng.gen_range(0..=1)).expect("generator index in range");
        out = out.compose(&g);
    }
    out
}

/// A sum of at most two sampled words with sampled coefficients.
pub fn group_ring(rng: &mut ChaCha8Rng) -> GroupRingElt {
    let terms = rng.gen_range(0..=2);
    let mut out = GroupRingElt::zero();
    for _ in 0..terms {
        out.add_term(group_word(rng), coeff(rng));
    }
    out
}

/// A matrix with at most two sampled entries.
pub fn finmat(rng: &mut ChaCha8Rng) -> FinMat {
    let entries = rng.gen_range(0..=2);
    let mut out = FinMat::zero();
    for _ in 0..entries {
        out.set(dyadic(rng), dyadic(rng), coeff(rng))
            .expect("sampled indices are interior");
    }
    out
}

/// A vector with at most two sampled entries.
pub fn svector(rng: &mut ChaCha8Rng) -> SVector {
    let entries = rng.gen_range(0..=2);
    let mut out = SVector::zero();
    for _ in 0..entries {
        out.set(dyadic(rng), coeff(rng))
            .expect("sampled indices are interior");
    }
    out
}

/// A full ring element: sampled group part plus sampled matrix part.
pub fn ring_elt(rng: &mut ChaCha8Rng) -> CrazyRingElt {
    CrazyRingElt::from_parts(group_ring(rng), finmat(rng))
}

/// A point of V: four sampled vectors.
pub fn vpoint(rng: &mut ChaCha8Rng) -> crate::gamma0::VPoint {
    crate::gamma0::VPoint::from_components([
        svector(rng),
        svector(rng),
        svector(rng),
        svector(rng),
    ])
}
