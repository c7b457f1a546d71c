//! Counter-based random streams.
//!
//! A [`RandomStream`] names a ChaCha8 keystream: the key is derived from the
//! seed and the stream id selects the 64-bit ChaCha stream. Work is split into
//! fixed-size chunks and chunk `c` starts at word offset `c << CHUNK_SHIFT` of
//! the same keystream, so the sample sequence depends only on
//! `(seed, stream_id, chunk size)` and never on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Words reserved per chunk (2^40 32-bit words).
const CHUNK_SHIFT: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RandomStream {
    pub seed: u64,
    pub stream_id: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RandomStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// A generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }

    /// A generator positioned at the start of chunk `chunk` of this stream.
    pub fn chunk_rng(&self, chunk: u64) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_word_pos((chunk as u128) << CHUNK_SHIFT);
        rng
    }

    /// An independent stream derived from this one, e.g. for a sub-task.
    pub fn child(&self, tag: u64) -> Self {
        Self {
            seed: self.seed,
            stream_id: splitmix64(self.stream_id ^ splitmix64(tag.wrapping_add(1))),
        }
    }
}

/// Samples per chunk in [`par_samples`].
pub const DEFAULT_CHUNK: usize = 256;

/// Draw `n` samples of `f` in parallel, returned in sample order.
///
/// Sample `i` always comes from chunk `i / chunk` of `stream`, so the output
/// is identical for every thread-pool size.
pub fn par_samples<T, F>(stream: &RandomStream, n: usize, chunk: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    par_chunks(stream, n, chunk, |rng, len| (0..len).map(|_| f(rng)).collect::<Vec<T>>())
        .into_iter()
        .flatten()
        .collect()
}

/// Run `f(rng, len)` once per chunk of `n` samples and return the per-chunk
/// results in chunk order. Reductions over the returned vector are therefore
/// independent of the thread count.
pub fn par_chunks<T, F>(stream: &RandomStream, n: usize, chunk: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, usize) -> T + Sync,
{
    let chunk = chunk.max(1);
    let n_chunks = n.div_ceil(chunk);
    (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream.chunk_rng(c as u64);
            f(&mut rng, chunk.min(n - c * chunk))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn same_stream_same_sequence() {
        let s = RandomStream::new(42, 7);
        let a: Vec<u64> = (0..100).map({
            let mut r = s.rng();
            move |_| r.random()
        }).collect();
        let b: Vec<u64> = (0..100).map({
            let mut r = s.rng();
            move |_| r.random()
        }).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn distinct_streams_differ() {
        let mut a = RandomStream::new(42, 0).rng();
        let mut b = RandomStream::new(42, 1).rng();
        let xa: Vec<u64> = (0..8).map(|_| a.random()).collect();
        let xb: Vec<u64> = (0..8).map(|_| b.random()).collect();
        assert_ne!(xa, xb);
    }

    #[test]
    fn streams_are_uncorrelated() {
        let mut a = RandomStream::new(1, 3).rng();
        let mut b = RandomStream::new(1, 4).rng();
        let n = 200_000;
        let mut s = 0.0;
        for _ in 0..n {
            let u: f64 = a.random::<f64>() - 0.5;
            let v: f64 = b.random::<f64>() - 0.5;
            s += u * v;
        }
        // Var(u v) = 1/144
        let z = (s / n as f64) / ((1.0 / 144.0) / n as f64).sqrt();
        assert!(z.abs() < 4.0, "z = {z}");
    }

    #[test]
    fn par_samples_independent_of_pool_size() {
        let s = RandomStream::new(9, 2);
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| par_samples(&s, 1000, 64, |r| r.random::<u64>()))
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn chunks_do_not_overlap() {
        let s = RandomStream::new(5, 0);
        let mut r0 = s.chunk_rng(0);
        let mut r1 = s.chunk_rng(1);
        let a: Vec<u32> = (0..16).map(|_| r0.random()).collect();
        let b: Vec<u32> = (0..16).map(|_| r1.random()).collect();
        assert_ne!(a, b);
    }
}
