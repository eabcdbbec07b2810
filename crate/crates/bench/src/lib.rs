//! Seeded inputs shared by the benchmarks.

use ncdiv_core::algebra::{AlgebraKind, Trace};
use ncdiv_core::bracket::PairingTable;
use ncdiv_core::calculus::Derivation;
use ncdiv_core::sample::Sampler;
use ncdiv_core::Q;

/// `k` random derivations of a rank-`rank` algebra with values of length ≤ `len`.
pub fn derivations(kind: AlgebraKind, rank: usize, len: usize, k: usize, seed: u64) -> Vec<Derivation> {
    let mut s = Sampler::new(seed);
    (0..k).map(|_| s.derivation(kind, rank, len)).collect()
}

/// `k` random cyclic words of length `len`.
pub fn words(kind: AlgebraKind, rank: usize, len: usize, k: usize, seed: u64) -> Vec<Trace> {
    let mut s = Sampler::new(seed);
    (0..k).map(|_| Trace::basis(s.cyclic_word(kind, rank, len, len))).collect()
}

/// The skew pairing with `⟨w_i, w_j⟩ = 1` for `i < j`.
pub fn pairing(rank: usize) -> PairingTable {
    let v = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Less => Q::one(),
                    std::cmp::Ordering::Greater => -Q::one(),
                    std::cmp::Ordering::Equal => Q::zero(),
                })
                .collect()
        })
        .collect();
    PairingTable::new(v).expect("square")
}
