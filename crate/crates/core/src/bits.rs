//! Packed GF(2) bit-vector helpers. Bit `i` of a vector lives in word `i / 64`, position `i % 64`.

#[inline]
pub fn words_for(n_bits: usize) -> usize {
    n_bits.div_ceil(64)
}

#[inline]
pub fn get(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
pub fn set(words: &mut [u64], i: usize, value: bool) {
    let mask = 1u64 << (i % 64);
    if value {
        words[i / 64] |= mask;
    } else {
        words[i / 64] &= !mask;
    }
}

#[inline]
pub fn flip(words: &mut [u64], i: usize) {
    words[i / 64] ^= 1u64 << (i % 64);
}

#[inline]
pub fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
pub fn popcount(words: &[u64]) -> u32 {
    words.iter().map(|w| w.count_ones()).sum()
}

#[inline]
pub fn and_popcount(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

#[inline]
pub fn is_zero(words: &[u64]) -> bool {
    words.iter().all(|&w| w == 0)
}

/// Rank over GF(2) of a list of equal-length packed vectors.
pub fn gf2_rank(vectors: &[Vec<u64>]) -> usize {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        for (pivot, b) in &basis {
            if get(&v, *pivot) {
                xor_into(&mut v, b);
            }
        }
        if let Some(pivot) = first_set(&v) {
            // keep the basis fully reduced on pivot columns
            for (_, b) in basis.iter_mut() {
                if get(b, pivot) {
                    xor_into(b, &v);
                }
            }
            basis.push((pivot, v));
        }
    }
    basis.len()
}

pub fn first_set(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}
