//! Holographic reduced representations and binary spatter codes, enough of
//! each to run the same memory and questions as the geometric model.

use std::collections::HashMap;

use rand::RngCore;
use rand_distr::{Distribution, Normal};

use crate::encoding::{AtomKind, Construction, SentenceSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Self(values))
    }

    /// Entries i.i.d. `N(0, 1/d)`.
    pub fn random<R: RngCore + ?Sized>(d: usize, rng: &mut R) -> Result<Self> {
        if d == 0 {
            return Err(Error::EmptyVector);
        }
        let normal = Normal::new(0.0, 1.0 / (d as f64).sqrt()).expect("finite deviation");
        Ok(Self((0..d).map(|_| normal.sample(rng)).collect()))
    }

    /// Unit impulse at index 0, the convolution identity.
    pub fn impulse(d: usize) -> Result<Self> {
        let mut v = vec![0.0; d];
        *v.first_mut().ok_or(Error::EmptyVector)? = 1.0;
        Ok(Self(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `q*_j = q_{-j mod d}`.
    pub fn involution(&self) -> Self {
        let d = self.0.len();
        Self((0..d).map(|j| self.0[(d - j) % d]).collect())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }
}

/// Circular convolution `(a ⊛ b)_j = Σ_k a_k b_{(j-k) mod d}`.
pub fn hrr_bind(a: &RealVector, b: &RealVector) -> Result<RealVector> {
    a.check(b)?;
    let d = a.len();
    let mut out = vec![0.0; d];
    for (k, &ak) in a.0.iter().enumerate() {
        if ak == 0.0 {
            continue;
        }
        // out[j] += a[k] b[j-k mod d], split at the wrap so both halves vectorize.
        let (head, tail) = out.split_at_mut(k);
        for (o, &bj) in tail.iter_mut().zip(&b.0[..d - k]) {
            *o += ak * bj;
        }
        for (o, &bj) in head.iter_mut().zip(&b.0[d - k..]) {
            *o += ak * bj;
        }
    }
    Ok(RealVector(out))
}

/// `s ⊛ q*`.
pub fn hrr_unbind(s: &RealVector, q: &RealVector) -> Result<RealVector> {
    hrr_bind(s, &q.involution())
}

pub fn hrr_similarity(a: &RealVector, b: &RealVector) -> Result<f64> {
    a.check(b)?;
    Ok(a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum())
}

/// Entrywise sum scaled by `1/√(#chunks)`.
pub fn hrr_bundle(chunks: &[RealVector]) -> Result<RealVector> {
    let first = chunks.first().ok_or(Error::EmptyBundle)?;
    let mut out = vec![0.0; first.len()];
    for c in chunks {
        first.check(c)?;
        for (o, x) in out.iter_mut().zip(&c.0) {
            *o += x;
        }
    }
    let scale = 1.0 / (chunks.len() as f64).sqrt();
    out.iter_mut().for_each(|x| *x *= scale);
    Ok(RealVector(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyVector);
        }
        Ok(Self {
            len,
            words: vec![0; len.div_ceil(64)],
        })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let mut v = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        Ok(v)
    }

    pub fn random<R: RngCore + ?Sized>(len: usize, rng: &mut R) -> Result<Self> {
        let mut v = Self::zeros(len)?;
        for w in &mut v.words {
            *w = rng.next_u64();
        }
        v.clear_tail();
        Ok(v)
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            *self.words.last_mut().expect("nonempty") &= (1u64 << rem) - 1;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index out of range");
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index out of range");
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }
}

pub fn bsc_bind(a: &BitVector, b: &BitVector) -> Result<BitVector> {
    a.check(b)?;
    Ok(BitVector {
        len: a.len,
        words: a.words.iter().zip(&b.words).map(|(x, y)| x ^ y).collect(),
    })
}

/// Per-position majority. An even number of chunks gets a random extra chunk
/// so that no ties remain.
pub fn bsc_bundle<R: RngCore + ?Sized>(chunks: &[BitVector], rng: &mut R) -> Result<BitVector> {
    let first = chunks.first().ok_or(Error::EmptyBundle)?;
    for c in chunks {
        first.check(c)?;
    }
    let tie_break;
    let mut all: Vec<&BitVector> = chunks.iter().collect();
    if chunks.len().is_multiple_of(2) {
        tie_break = BitVector::random(first.len, rng)?;
        all.push(&tie_break);
    }
    let half = all.len() / 2;
    let mut out = BitVector::zeros(first.len)?;
    for i in 0..first.len {
        let ones = all.iter().filter(|c| c.get(i)).count();
        out.set(i, ones > half);
    }
    Ok(out)
}

/// Fraction of agreeing positions.
pub fn bsc_similarity(a: &BitVector, b: &BitVector) -> Result<f64> {
    let diff = bsc_bind(a, b)?.count_ones();
    Ok(1.0 - diff as f64 / a.len as f64)
}

/// Operations shared by the two vector models.
pub trait VectorModel {
    type Vector: Clone;

    fn name(&self) -> &'static str;
    fn random_atom(&self, rng: &mut dyn RngCore) -> Result<Self::Vector>;
    fn bind(&self, a: &Self::Vector, b: &Self::Vector) -> Result<Self::Vector>;
    fn unbind(&self, s: &Self::Vector, q: &Self::Vector) -> Result<Self::Vector>;
    fn bundle(&self, chunks: &[Self::Vector], rng: &mut dyn RngCore) -> Result<Self::Vector>;
    fn similarity(&self, a: &Self::Vector, b: &Self::Vector) -> Result<f64>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hrr {
    pub dimension: usize,
}

impl VectorModel for Hrr {
    type Vector = RealVector;

    fn name(&self) -> &'static str {
        "hrr"
    }

    fn random_atom(&self, rng: &mut dyn RngCore) -> Result<RealVector> {
        RealVector::random(self.dimension, rng)
    }

    fn bind(&self, a: &RealVector, b: &RealVector) -> Result<RealVector> {
        hrr_bind(a, b)
    }

    fn unbind(&self, s: &RealVector, q: &RealVector) -> Result<RealVector> {
        hrr_unbind(s, q)
    }

    fn bundle(&self, chunks: &[RealVector], _rng: &mut dyn RngCore) -> Result<RealVector> {
        hrr_bundle(chunks)
    }

    fn similarity(&self, a: &RealVector, b: &RealVector) -> Result<f64> {
        hrr_similarity(a, b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bsc {
    pub dimension: usize,
}

impl VectorModel for Bsc {
    type Vector = BitVector;

    fn name(&self) -> &'static str {
        "bsc"
    }

    fn random_atom(&self, rng: &mut dyn RngCore) -> Result<BitVector> {
        BitVector::random(self.dimension, rng)
    }

    fn bind(&self, a: &BitVector, b: &BitVector) -> Result<BitVector> {
        bsc_bind(a, b)
    }

    fn unbind(&self, s: &BitVector, q: &BitVector) -> Result<BitVector> {
        bsc_bind(s, q)
    }

    fn bundle(&self, chunks: &[BitVector], rng: &mut dyn RngCore) -> Result<BitVector> {
        bsc_bundle(chunks, rng)
    }

    fn similarity(&self, a: &BitVector, b: &BitVector) -> Result<f64> {
        bsc_similarity(a, b)
    }
}

/// Clean-up memory of a vector model.
#[derive(Clone, Debug)]
pub struct VectorMemory<M: VectorModel> {
    model: M,
    names: Vec<String>,
    vectors: Vec<M::Vector>,
    kinds: HashMap<String, AtomKind>,
    index: HashMap<String, usize>,
}

impl<M: VectorModel> VectorMemory<M> {
    /// Draws atoms in order, then encodes sentences. Odding has no analogue
    /// here and is rejected.
    pub fn build(
        model: M,
        atoms: &[(&str, AtomKind)],
        sentences: &[SentenceSpec],
        construction: Construction,
        rng: &mut dyn RngCore,
    ) -> Result<Self> {
        if construction == Construction::AgentObjectOdd {
            return Err(Error::UnsupportedConstruction {
                construction: construction.as_str(),
                model: model.name(),
            });
        }
        let mut memory = Self {
            model,
            names: Vec::new(),
            vectors: Vec::new(),
            kinds: HashMap::new(),
            index: HashMap::new(),
        };
        for &(name, kind) in atoms {
            let v = memory.model.random_atom(rng)?;
            memory.push(name, v)?;
            memory.kinds.insert(name.to_string(), kind);
        }
        for spec in sentences {
            let v = memory.encode(spec, construction, rng)?;
            memory.push(&spec.name, v)?;
        }
        Ok(memory)
    }

    fn push(&mut self, name: &str, v: M::Vector) -> Result<()> {
        if self.index.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        self.index.insert(name.to_string(), self.vectors.len());
        self.names.push(name.to_string());
        self.vectors.push(v);
        Ok(())
    }

    fn lookup(&self, name: &str) -> Result<&M::Vector> {
        self.index
            .get(name)
            .map(|&i| &self.vectors[i])
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))
    }

    /// `verb + Σ role ⊛ filler`, bundled.
    pub fn encode(
        &self,
        spec: &SentenceSpec,
        construction: Construction,
        rng: &mut dyn RngCore,
    ) -> Result<M::Vector> {
        if spec.pairs.is_empty() {
            return Err(Error::EmptySentence(spec.name.clone()));
        }
        let mut chunks = Vec::with_capacity(spec.pairs.len() + 1);
        if construction == Construction::Plate {
            if let Some(verb) = &spec.verb {
                chunks.push(self.lookup(verb)?.clone());
            }
        }
        for (role, filler) in &spec.pairs {
            if self.kinds.get(role) != Some(&AtomKind::Role) {
                return Err(if self.index.contains_key(role) {
                    Error::NotARole(role.clone())
                } else {
                    Error::UnresolvedReference(role.clone())
                });
            }
            if self.kinds.get(filler) == Some(&AtomKind::Role) {
                return Err(Error::RoleAsFiller(filler.clone()));
            }
            chunks.push(self.model.bind(self.lookup(role)?, self.lookup(filler)?)?);
        }
        self.model.bundle(&chunks, rng)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&M::Vector> {
        self.lookup(name).ok()
    }

    /// Names of the items most similar to `noisy`; ties are all kept.
    pub fn cleanup(&self, noisy: &M::Vector) -> Result<Vec<&str>> {
        let mut best = f64::NEG_INFINITY;
        let mut winners = Vec::new();
        for (name, v) in self.names.iter().zip(&self.vectors) {
            let s = self.model.similarity(noisy, v)?;
            if s > best {
                best = s;
                winners.clear();
                winners.push(name.as_str());
            } else if s == best {
                winners.push(name.as_str());
            }
        }
        Ok(winners)
    }

    /// Unbinds `question` from `item` and checks `expected` is among the winners.
    pub fn recognize(&self, item: &str, question: &str, expected: &str) -> Result<bool> {
        self.lookup(expected)?;
        let noisy = self.model.unbind(self.lookup(item)?, self.lookup(question)?)?;
        Ok(self.cleanup(&noisy)?.contains(&expected))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rv(v: &[f64]) -> RealVector {
        RealVector::new(v.to_vec()).unwrap()
    }

    fn bits(s: &str) -> BitVector {
        BitVector::from_bits(&s.chars().map(|c| c == '1').collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn convolution_small() {
        let got = hrr_bind(&rv(&[1.0, 2.0, 3.0]), &rv(&[1.0, 0.0, 1.0])).unwrap();
        assert_eq!(got, rv(&[3.0, 5.0, 4.0]));
        let b = rv(&[0.5, -1.0, 2.0, 7.0]);
        assert_eq!(hrr_bind(&RealVector::impulse(4).unwrap(), &b).unwrap(), b);
        assert_eq!(hrr_unbind(&b, &RealVector::impulse(4).unwrap()).unwrap(), b);
        assert_eq!(b.involution().involution(), b);
        assert!(hrr_bind(&b, &rv(&[1.0])).is_err());
        assert!(RealVector::new(vec![]).is_err());
    }

    #[test]
    fn convolution_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = RealVector::random(17, &mut rng).unwrap();
            let b = RealVector::random(17, &mut rng).unwrap();
            let ab = hrr_bind(&a, &b).unwrap();
            let ba = hrr_bind(&b, &a).unwrap();
            for (x, y) in ab.as_slice().iter().zip(ba.as_slice()) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unbind_recovers_filler() {
        let d = 1300;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut hits = 0;
        for _ in 0..200 {
            let atoms: Vec<_> = (0..40).map(|_| RealVector::random(d, &mut rng).unwrap()).collect();
            let noisy = hrr_unbind(&hrr_bind(&atoms[0], &atoms[1]).unwrap(), &atoms[0]).unwrap();
            let best = (0..40)
                .max_by(|&i, &j| {
                    let si = hrr_similarity(&noisy, &atoms[i]).unwrap();
                    let sj = hrr_similarity(&noisy, &atoms[j]).unwrap();
                    si.total_cmp(&sj)
                })
                .unwrap();
            hits += usize::from(best == 1);
        }
        assert!(hits >= 190, "{hits}");
    }

    #[test]
    fn plate_sentence_norm() {
        let d = 1300;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let trials = 50;
        let mut total = 0.0;
        for _ in 0..trials {
            let v: Vec<_> = (0..5).map(|_| RealVector::random(d, &mut rng).unwrap()).collect();
            let chunks = [
                v[0].clone(),
                hrr_bind(&v[1], &v[2]).unwrap(),
                hrr_bind(&v[3], &v[4]).unwrap(),
            ];
            total += hrr_bundle(&chunks).unwrap().norm();
        }
        assert!((total / trials as f64 - 1.0).abs() < 0.1);
    }

    #[test]
    fn xor_binding() {
        let a = bits("1011001");
        let b = bits("0110101");
        assert_eq!(bsc_bind(&a, &a).unwrap().count_ones(), 0);
        assert_eq!(bsc_bind(&a, &b).unwrap(), bsc_bind(&b, &a).unwrap());
        assert_eq!(bsc_bind(&a, &bsc_bind(&a, &b).unwrap()).unwrap(), b);
        assert!(bsc_bind(&a, &bits("1")).is_err());
    }

    #[test]
    fn majority_bundle() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = bits("110");
        assert_eq!(bsc_bundle(std::slice::from_ref(&a), &mut rng).unwrap(), a);
        let chunks = [bits("110"), bits("100"), bits("101")];
        assert_eq!(bsc_bundle(&chunks, &mut rng).unwrap(), bits("100"));
        let x = BitVector::random(300, &mut rng).unwrap();
        assert_eq!(bsc_bundle(&[x.clone(), x.clone()], &mut rng).unwrap(), x);
        assert_eq!(bsc_bundle(&[], &mut rng), Err(Error::EmptyBundle));
    }

    #[test]
    fn bundle_resembles_chunks() {
        let d = 1300;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut total = 0.0;
        for _ in 0..200 {
            let chunks: Vec<_> = (0..4).map(|_| BitVector::random(d, &mut rng).unwrap()).collect();
            let s = bsc_bundle(&chunks, &mut rng).unwrap();
            total += bsc_similarity(&s, &chunks[0]).unwrap();
        }
        assert!(total / 200.0 > 0.5);
    }

    #[test]
    fn similarity_extremes() {
        let a = bits("1100101");
        let mut c = a.clone();
        for i in 0..c.len() {
            c.set(i, !a.get(i));
        }
        assert_eq!(bsc_similarity(&a, &a).unwrap(), 1.0);
        assert_eq!(bsc_similarity(&a, &c).unwrap(), 0.0);
        let v = rv(&[1.0, 2.0, 2.0]);
        assert_eq!(hrr_similarity(&v, &v).unwrap(), 9.0);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let x = BitVector::random(1300, &mut rng).unwrap();
        let y = BitVector::random(1300, &mut rng).unwrap();
        assert!((bsc_similarity(&x, &y).unwrap() - 0.5).abs() < 0.05);
    }

    #[test]
    fn memory_encoding() {
        use AtomKind::*;
        let atoms = [("r", Role), ("f", Filler), ("g", Filler), ("v", Filler)];
        let single = [SentenceSpec::new("s", Some("v"), &[("r", "f")])];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = VectorMemory::build(Hrr { dimension: 64 }, &atoms, &single, Construction::AgentObject, &mut rng)
            .unwrap();
        let direct = hrr_bind(m.get("r").unwrap(), m.get("f").unwrap()).unwrap();
        assert_eq!(m.get("s").unwrap(), &direct);
        assert_eq!(m.len(), 5);

        let nested = [
            SentenceSpec::new("s", None, &[("r", "f"), ("r", "g")]),
            SentenceSpec::new("t", None, &[("r", "s")]),
        ];
        let m = VectorMemory::build(Hrr { dimension: 64 }, &atoms, &nested, Construction::AgentObject, &mut rng)
            .unwrap();
        let direct = hrr_bind(m.get("r").unwrap(), m.get("s").unwrap()).unwrap();
        assert_eq!(m.get("t").unwrap(), &direct);

        let err = VectorMemory::build(Bsc { dimension: 64 }, &atoms, &single, Construction::AgentObjectOdd, &mut rng);
        assert!(matches!(err, Err(Error::UnsupportedConstruction { .. })));
        let bad = [SentenceSpec::new("s", None, &[("f", "r")])];
        let err = VectorMemory::build(Bsc { dimension: 64 }, &atoms, &bad, Construction::Plate, &mut rng);
        assert_eq!(err.err(), Some(Error::NotARole("f".into())));
    }

    #[test]
    fn bsc_memory_recognizes_at_large_length() {
        use AtomKind::*;
        let atoms = [("name", Role), ("sex", Role), ("Pat", Filler), ("male", Filler)];
        let s = [SentenceSpec::new("P", None, &[("name", "Pat"), ("sex", "male")])];
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let m = VectorMemory::build(Bsc { dimension: 1000 }, &atoms, &s, Construction::AgentObject, &mut rng)
            .unwrap();
        assert!(m.recognize("P", "name", "Pat").unwrap());
        assert!(m.recognize("P", "name", "ghost").is_err());
    }
}
