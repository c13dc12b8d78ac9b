//! Deterministic random cochains.
//!
//! Entry `i` of a cochain drawn with key `k` is `mix64(k + (i + 1) * GAMMA)`
//! reduced to the field: `(x mod 5) - 2` over Q, `x mod p` over F_p. The key
//! folds in group order, degree and seed, so output depends on nothing else
//! (thread count and platform included).

use crate::algebra::GroupAlgebra;
use crate::cochain::{norm_evaluation, Cochain};
use crate::error::Result;
use crate::par;
use crate::scalar::{FieldSpec, Scalar};

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sequential SplitMix64, for small draws such as tuples and trial seeds.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Uniform-ish in `0..n` (modulo bias is irrelevant at these sizes).
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn tuple(&mut self, order: usize, len: usize) -> Vec<usize> {
        (0..len).map(|_| self.below(order)).collect()
    }
}

/// Derives an independent seed from a base seed, a text tag and an index.
pub fn derive_seed(seed: u64, tag: &str, index: u64) -> u64 {
    // FNV-1a over the tag
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    mix64(mix64(seed ^ h).wrapping_add(index.wrapping_mul(GAMMA)))
}

pub fn scalar_from_bits(field: FieldSpec, x: u64) -> Scalar {
    match field {
        FieldSpec::Rationals => field.from_i64((x % 5) as i64 - 2),
        FieldSpec::Prime(p) => field.from_i64((x % p as u64) as i64),
    }
}

fn key(alg: &GroupAlgebra, degree: usize, seed: u64) -> u64 {
    mix64(seed ^ mix64(((alg.order() as u64) << 32) ^ (degree as u64 + 1)))
}

/// A random element of `W_degree`.
pub fn random_cochain(alg: &GroupAlgebra, degree: usize, seed: u64) -> Result<Cochain> {
    let k = key(alg, degree, seed);
    let field = alg.field();
    let len = alg.space_len(degree + 1)?;
    let values = par::tabulate(len, |i| scalar_from_bits(field, mix64(k.wrapping_add((i as u64 + 1).wrapping_mul(GAMMA)))));
    Cochain::from_values(alg, degree, values)
}

/// A random cochain supported on tuples with product `e`.
pub fn random_e_supported(alg: &GroupAlgebra, degree: usize, seed: u64) -> Result<Cochain> {
    Ok(random_cochain(alg, degree, seed)?.restrict_to_e(alg))
}

/// A random element of `V_degree`: a random cochain corrected on the
/// `(h, e, ..., e)` entries so every `a(h, N..N)` vanishes.
pub fn random_v_element(alg: &GroupAlgebra, degree: usize, seed: u64) -> Result<Cochain> {
    let a = random_cochain(alg, degree, seed)?;
    let sums = norm_evaluation(alg, &a);
    let block = a.values().len() / alg.order();
    let mut values = a.into_values();
    let e = alg.group().identity();
    let offset = alg.encode(&vec![e; degree]);
    for (h, s) in sums.iter().enumerate() {
        values[h * block + offset] -= s;
    }
    Cochain::from_values(alg, degree, values)
}
