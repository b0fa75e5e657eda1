use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Number of 64-bit words needed to hold `n` bits.
#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// A set of vertices stored as a fixed-capacity bitset.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    cap: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn new(cap: usize) -> Self {
        VertexSet {
            cap,
            bits: vec![0; words_for(cap)],
        }
    }

    pub fn full(cap: usize) -> Self {
        let mut s = VertexSet::new(cap);
        for v in 0..cap {
            s.insert(v);
        }
        s
    }

    pub fn from_slice(cap: usize, vs: &[usize]) -> Self {
        let mut s = VertexSet::new(cap);
        for &v in vs {
            s.insert(v);
        }
        s
    }

    pub(crate) fn from_words(cap: usize, words: &[u64]) -> Self {
        VertexSet {
            cap,
            bits: words.to_vec(),
        }
    }

    pub fn capacity(&self) -> usize {
        self.cap
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        debug_assert!(v < self.cap);
        let (w, b) = (v / 64, v % 64);
        let had = self.bits[w] >> b & 1 == 1;
        self.bits[w] |= 1 << b;
        !had
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.cap {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let had = self.bits[w] >> b & 1 == 1;
        self.bits[w] &= !(1 << b);
        had
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.cap && self.bits[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> SetIter<'_> {
        SetIter {
            words: &self.bits,
            idx: 0,
            cur: self.bits[0],
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= *b;
        }
    }

    pub fn intersect_words(&mut self, other: &[u64]) {
        for (a, b) in self.bits.iter_mut().zip(other) {
            *a &= *b;
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= *b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= !*b;
        }
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        count_and(&self.bits, &other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

#[inline]
pub(crate) fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct SetIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for SetIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Iterate the set bits of a raw word slice.
pub(crate) fn iter_words(words: &[u64]) -> SetIter<'_> {
    SetIter {
        words,
        idx: 0,
        cur: words.first().copied().unwrap_or(0),
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(d)?;
        let cap = vs.iter().max().map_or(0, |m| m + 1);
        Ok(VertexSet::from_slice(cap, &vs))
    }
}
