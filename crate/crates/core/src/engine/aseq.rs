use std::sync::RwLock;

use crate::model::{Support3, SupportKind};
use crate::numeric::Rational;

use super::EngineError;

/// The sequence `A_j = (c^j − a^j) / (c^j − b^j)` of a positive support,
/// computed lazily into an append-only cache.
#[derive(Debug)]
pub struct ASequence {
    support: Support3,
    cache: RwLock<Vec<Rational>>,
}

impl Clone for ASequence {
    fn clone(&self) -> Self {
        ASequence { support: self.support.clone(), cache: RwLock::new(self.cache.read().expect("cache lock").clone()) }
    }
}

impl ASequence {
    pub fn new(support: &Support3) -> Result<Self, EngineError> {
        if support.kind() != SupportKind::PositiveOrdered {
            return Err(EngineError::NotPositive(support.kind()));
        }
        Ok(ASequence { support: support.clone(), cache: RwLock::new(Vec::new()) })
    }

    pub fn support(&self) -> &Support3 {
        &self.support
    }

    fn direct(&self, j: u32) -> Rational {
        let [a, b, c] = self.support.points();
        let e = j as i64;
        let cj = c.pow(e);
        (&cj - a.pow(e)) / (&cj - b.pow(e))
    }

    /// Makes sure `A_1..=A_n` are cached.
    pub fn prefill(&self, n: u32) {
        if self.cache.read().expect("cache lock").len() >= n as usize {
            return;
        }
        let mut cache = self.cache.write().expect("cache lock");
        while cache.len() < n as usize {
            let j = cache.len() as u32 + 1;
            let v = self.direct(j);
            if let Some(prev) = cache.last() {
                // strict decrease holds for every 0 < a < b < c
                assert!(&v < prev, "A sequence not decreasing at j = {j}");
            }
            cache.push(v);
        }
    }

    /// `A_j` for `j ≥ 1`.
    pub fn get(&self, j: u32) -> Rational {
        assert!(j >= 1, "A_j is indexed from 1");
        if let Some(v) = self.cache.read().expect("cache lock").get(j as usize - 1) {
            return v.clone();
        }
        self.prefill(j);
        self.cache.read().expect("cache lock")[j as usize - 1].clone()
    }
}

/// Operation-style accessor for `A_j`.
pub fn compute_a(seq: &ASequence, j: u32) -> Rational {
    seq.get(j)
}
