#![allow(dead_code)]

use pstneps::reproduce::{example2, example3};
use pstneps::{BasisVector, NepsSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every nonzero vector of length `m`.
pub fn all_nonzero(m: usize) -> Vec<BasisVector> {
    (1..1u32 << m)
        .map(|k| BasisVector::new((0..m).rev().map(|i| ((k >> i) & 1) as u8).collect()))
        .collect()
}

/// Random basis of `size` distinct vectors drawn from `pool`.
pub fn random_basis(rng: &mut ChaCha8Rng, pool: &[BasisVector], size: usize) -> Vec<BasisVector> {
    pool.choose_multiple(rng, size.min(pool.len())).cloned().collect()
}

pub fn random_spec(rng: &mut ChaCha8Rng, factors: &[usize]) -> NepsSpec {
    let pool = all_nonzero(factors.len());
    let size = rng.gen_range(1..=pool.len().min(6));
    NepsSpec::new(factors.to_vec(), random_basis(rng, &pool, size)).unwrap()
}

const FACTOR_POOL: &[&[usize]] = &[
    &[3, 2],
    &[4, 2],
    &[5, 2],
    &[6, 2],
    &[8, 2],
    &[3, 2, 2],
    &[4, 2, 2],
    &[6, 2, 2],
    &[2, 3, 2],
    &[2, 4, 2],
    &[3, 3, 2],
    &[4, 4, 2],
    &[3, 6],
    &[2, 2, 2],
    &[2, 2, 2, 2],
    &[4, 2, 2, 2],
    &[3, 2, 2, 2],
    &[2, 2, 2, 2, 2],
    &[4, 8],
    &[6, 2, 2, 2],
];

/// Deterministic corpus of specs with at most 256 vertices.
pub fn corpus() -> Vec<(String, NepsSpec)> {
    let mut out: Vec<(String, NepsSpec)> = Vec::new();
    for f in [
        &[3][..],
        &[4],
        &[5],
        &[6],
        &[7],
        &[2, 2],
        &[2, 2, 2],
        &[3, 2],
        &[6, 2],
        &[4, 2, 2],
        &[3, 3],
        &[2, 2, 2, 2],
        &[3, 6, 2, 2],
    ] {
        out.push((format!("hamming{f:?}"), NepsSpec::hamming(f).unwrap()));
    }
    let mut r = rng(0x5eed);
    for k in 0..45 {
        let factors = FACTOR_POOL[k % FACTOR_POOL.len()];
        out.push((format!("random{k}{factors:?}"), random_spec(&mut r, factors)));
    }
    out.push(("hamming[8, 4, 2, 2]".into(), NepsSpec::hamming(&[8, 4, 2, 2]).unwrap()));
    out.push(("example2".into(), example2().unwrap()));
    out.push(("example3".into(), example3().unwrap()));
    out
}
