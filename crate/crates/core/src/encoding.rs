//! Vocabularies, sentence encoding, questions, clean-up memory and recognition.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::RngCore;

use crate::algebra::{BladeMask, Multivector};
use crate::analysis::MemoryProfile;
use crate::cartan::{
    euclidean_measure, hamming_measure, hamming_support_measure, signature, Signature,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AtomKind {
    Role,
    Filler,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub name: String,
    pub kind: AtomKind,
    pub mask: BladeMask,
}

/// Named random blades. Distinct atoms may share a mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vocabulary {
    dim: u32,
    atoms: Vec<Atom>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    /// Checks that names are unique and every mask has width `dim`.
    pub fn from_atoms(dim: u32, atoms: Vec<Atom>) -> Result<Self> {
        BladeMask::scalar(dim)?;
        let mut index = HashMap::with_capacity(atoms.len());
        for (i, atom) in atoms.iter().enumerate() {
            if atom.mask.dimension() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: atom.mask.dimension(),
                });
            }
            if index.insert(atom.name.clone(), i).is_some() {
                return Err(Error::DuplicateName(atom.name.clone()));
            }
        }
        Ok(Self { dim, atoms, index })
    }

    pub fn dimension(&self) -> u32 {
        self.dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn get(&self, name: &str) -> Option<&Atom> {
        self.index.get(name).map(|&i| &self.atoms[i])
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

/// Draws one uniform mask per atom, in spec order.
pub fn draw_vocabulary<S, R>(spec: &[(S, AtomKind)], dim: u32, rng: &mut R) -> Result<Vocabulary>
where
    S: AsRef<str>,
    R: RngCore + ?Sized,
{
    let atoms = spec
        .iter()
        .map(|(name, kind)| {
            Ok(Atom {
                name: name.as_ref().to_string(),
                kind: *kind,
                mask: BladeMask::random(dim, rng)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Vocabulary::from_atoms(dim, atoms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Construction {
    /// Bound chunks plus a standalone verb blade.
    Plate,
    /// Bound chunks only.
    AgentObject,
    /// Bound chunks plus a random blade whenever the blade count is even.
    AgentObjectOdd,
}

impl Construction {
    pub const ALL: [Construction; 3] = [
        Construction::Plate,
        Construction::AgentObject,
        Construction::AgentObjectOdd,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Construction::Plate => "plate",
            Construction::AgentObject => "ao",
            Construction::AgentObjectOdd => "ao-odd",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plate" => Ok(Self::Plate),
            "ao" => Ok(Self::AgentObject),
            "ao-odd" => Ok(Self::AgentObjectOdd),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected plate, ao or ao-odd".to_string(),
            }),
        }
    }
}

/// Grammar of one sentence: `verb + Σ role ∗ filler`.
///
/// A filler names either an atom or an already encoded item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SentenceSpec {
    pub name: String,
    pub verb: Option<String>,
    pub pairs: Vec<(String, String)>,
}

impl SentenceSpec {
    pub fn new(name: &str, verb: Option<&str>, pairs: &[(&str, &str)]) -> Self {
        Self {
            name: name.to_string(),
            verb: verb.map(str::to_string),
            pairs: pairs
                .iter()
                .map(|(r, f)| (r.to_string(), f.to_string()))
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ItemKind {
    Role,
    Filler,
    Sentence,
}

impl From<AtomKind> for ItemKind {
    fn from(kind: AtomKind) -> Self {
        match kind {
            AtomKind::Role => ItemKind::Role,
            AtomKind::Filler => ItemKind::Filler,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedItem {
    pub name: String,
    pub kind: ItemKind,
    pub value: Multivector,
    /// Structural count: filler blades + verb + odding blade. Collisions that
    /// merge terms in `value` do not lower it.
    pub blade_count: usize,
    pub odding_mask: Option<BladeMask>,
}

impl EncodedItem {
    pub fn atom(atom: &Atom) -> Self {
        Self {
            name: atom.name.clone(),
            kind: atom.kind.into(),
            value: Multivector::from_blade(atom.mask),
            blade_count: 1,
            odding_mask: None,
        }
    }
}

/// Auto-associative store of atoms and sentences.
#[derive(Clone, Debug, Default)]
pub struct CleanupMemory {
    dim: u32,
    items: Vec<EncodedItem>,
    index: HashMap<String, usize>,
}

impl CleanupMemory {
    pub fn new(dim: u32) -> Result<Self> {
        BladeMask::scalar(dim)?;
        Ok(Self {
            dim,
            ..Self::default()
        })
    }

    /// Every atom wrapped as a one-blade item, in vocabulary order.
    pub fn from_vocabulary(vocab: &Vocabulary) -> Self {
        let mut memory = Self {
            dim: vocab.dimension(),
            ..Self::default()
        };
        for atom in vocab.atoms() {
            memory.index.insert(atom.name.clone(), memory.items.len());
            memory.items.push(EncodedItem::atom(atom));
        }
        memory
    }

    pub fn insert(&mut self, item: EncodedItem) -> Result<()> {
        if item.value.dimension() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: item.value.dimension(),
            });
        }
        if self.index.contains_key(&item.name) {
            return Err(Error::DuplicateName(item.name));
        }
        self.index.insert(item.name.clone(), self.items.len());
        self.items.push(item);
        Ok(())
    }

    pub fn dimension(&self) -> u32 {
        self.dim
    }

    pub fn items(&self) -> &[EncodedItem] {
        &self.items
    }

    pub fn get(&self, name: &str) -> Option<&EncodedItem> {
        self.index.get(name).map(|&i| &self.items[i])
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// `|S_k|` by structural blade count.
    pub fn profile(&self) -> MemoryProfile {
        MemoryProfile::new(self.dim, self.items.iter().map(|it| (it.blade_count, 1)))
    }

    fn lookup(&self, name: &str) -> Result<&EncodedItem> {
        self.get(name)
            .ok_or_else(|| Error::UnresolvedReference(name.to_string()))
    }
}

fn resolve_filler<'a>(
    name: &str,
    memory: &'a CleanupMemory,
    vocab: &Vocabulary,
) -> Result<(Multivector, usize, Option<&'a EncodedItem>)> {
    if let Some(atom) = vocab.get(name) {
        return match atom.kind {
            AtomKind::Role => Err(Error::RoleAsFiller(name.to_string())),
            AtomKind::Filler => Ok((Multivector::from_blade(atom.mask), 1, None)),
        };
    }
    let item = memory
        .get(name)
        .ok_or_else(|| Error::UnresolvedReference(name.to_string()))?;
    if item.kind == ItemKind::Role {
        return Err(Error::RoleAsFiller(name.to_string()));
    }
    Ok((item.value.clone(), item.blade_count, Some(item)))
}

/// Encodes `Σ role ∗ filler` under the given construction.
///
/// Nested fillers use the already encoded multivector of the referenced item,
/// so odding blades of inner sentences carry over.
pub fn encode<R: RngCore + ?Sized>(
    spec: &SentenceSpec,
    memory: &CleanupMemory,
    vocab: &Vocabulary,
    construction: Construction,
    rng: &mut R,
) -> Result<EncodedItem> {
    let dim = vocab.dimension();
    if memory.dimension() != dim {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: memory.dimension(),
        });
    }
    if spec.pairs.is_empty() {
        return Err(Error::EmptySentence(spec.name.clone()));
    }

    let mut value = Multivector::zero(dim)?;
    let mut blade_count = 0;
    for (role_name, filler_name) in &spec.pairs {
        let role = vocab
            .get(role_name)
            .ok_or_else(|| Error::UnresolvedReference(role_name.clone()))?;
        if role.kind != AtomKind::Role {
            return Err(Error::NotARole(role_name.clone()));
        }
        let (filler, count, _) = resolve_filler(filler_name, memory, vocab)?;
        let chunk = Multivector::from_blade(role.mask).geometric_product(&filler)?;
        value = value.try_add(&chunk)?;
        blade_count += count;
    }

    if construction == Construction::Plate {
        if let Some(verb) = &spec.verb {
            let atom = vocab
                .get(verb)
                .ok_or_else(|| Error::UnresolvedReference(verb.clone()))?;
            value = value.try_add(&Multivector::from_blade(atom.mask))?;
            blade_count += 1;
        }
    }

    let mut odding_mask = None;
    if construction == Construction::AgentObjectOdd && blade_count % 2 == 0 {
        let mask = BladeMask::random(dim, rng)?;
        value = value.try_add(&Multivector::from_blade(mask))?;
        blade_count += 1;
        odding_mask = Some(mask);
    }

    Ok(EncodedItem {
        name: spec.name.clone(),
        kind: ItemKind::Sentence,
        value,
        blade_count,
        odding_mask,
    })
}

impl CleanupMemory {
    /// Encodes `spec` against the current contents and stores the result.
    pub fn encode_and_insert<R: RngCore + ?Sized>(
        &mut self,
        spec: &SentenceSpec,
        vocab: &Vocabulary,
        construction: Construction,
        rng: &mut R,
    ) -> Result<&EncodedItem> {
        let item = encode(spec, self, vocab, construction, rng)?;
        self.insert(item)?;
        Ok(self.items.last().expect("just inserted"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuestionMode {
    /// `S ∗ Q`.
    RightHandSide,
    /// `Q⁺ ∗ S` for roles, `S ∗ Q⁺` for fillers and sentences.
    AppropriateReversed,
}

impl QuestionMode {
    pub fn as_str(self) -> &'static str {
        match self {
            QuestionMode::RightHandSide => "rhs",
            QuestionMode::AppropriateReversed => "reversed",
        }
    }
}

impl fmt::Display for QuestionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QuestionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rhs" => Ok(Self::RightHandSide),
            "reversed" => Ok(Self::AppropriateReversed),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected rhs or reversed".to_string(),
            }),
        }
    }
}

/// The noisy answer `S ♯ Q`, unnormalized.
pub fn ask(item: &EncodedItem, question: &EncodedItem, mode: QuestionMode) -> Result<Multivector> {
    let s = &item.value;
    let q = &question.value;
    match (mode, question.kind) {
        (QuestionMode::RightHandSide, _) => s.geometric_product(q),
        (QuestionMode::AppropriateReversed, ItemKind::Role) => q.reversion().geometric_product(s),
        (QuestionMode::AppropriateReversed, ItemKind::Filler | ItemKind::Sentence) => {
            s.geometric_product(&q.reversion())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    InnerOnly,
    Hamming,
    /// Hamming ratio with doubly-zero positions left out.
    HammingSupport,
    Euclidean,
}

impl Measure {
    pub fn as_str(self) -> &'static str {
        match self {
            Measure::InnerOnly => "inner",
            Measure::Hamming => "hamming",
            Measure::HammingSupport => "hamming-support",
            Measure::Euclidean => "euclid",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inner" => Ok(Self::InnerOnly),
            "hamming" => Ok(Self::Hamming),
            "hamming-support" => Ok(Self::HammingSupport),
            "euclid" => Ok(Self::Euclidean),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected inner, hamming, hamming-support or euclid".to_string(),
            }),
        }
    }
}

/// Inner-product ranking of a noisy answer against every memory item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CleanupRanking {
    /// `|⟨noisy | item⟩|`, indexed like `memory.items()`.
    pub scores: Vec<u64>,
    /// Items with nonzero score (`𝒜`).
    pub potential: Vec<usize>,
    /// Largest score (`m`), 0 when `𝒜` is empty.
    pub top_score: u64,
    /// Items reaching `m` (`T`), empty when `𝒜` is empty.
    pub top: Vec<usize>,
}

pub fn cleanup_query(memory: &CleanupMemory, noisy: &Multivector) -> Result<CleanupRanking> {
    let scores = memory
        .items
        .iter()
        .map(|it| Ok(noisy.inner_product(&it.value)?.unsigned_abs()))
        .collect::<Result<Vec<u64>>>()?;
    let potential: Vec<usize> = (0..scores.len()).filter(|&i| scores[i] != 0).collect();
    let top_score = potential.iter().map(|&i| scores[i]).max().unwrap_or(0);
    let top = potential
        .iter()
        .copied()
        .filter(|&i| scores[i] == top_score)
        .collect();
    Ok(CleanupRanking {
        scores,
        potential,
        top_score,
        top,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecognitionOptions {
    pub measure: Measure,
    /// Apply the matrix measure within `T` instead of all of `𝒜`.
    pub restrict_to_top: bool,
}

impl From<Measure> for RecognitionOptions {
    fn from(measure: Measure) -> Self {
        Self {
            measure,
            restrict_to_top: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub correct: bool,
    pub potential_count: usize,
    pub top_set_size: usize,
    pub measure_used: Measure,
    pub correct_in_potential: bool,
}

/// Indices attaining the maximum; ties are all kept.
fn argmax_set<T: PartialOrd>(scored: Vec<(usize, T)>) -> Vec<usize> {
    let mut best: Vec<usize> = Vec::new();
    let mut best_value: Option<T> = None;
    for (i, v) in scored {
        match &best_value {
            Some(b) if v < *b => {}
            Some(b) if v == *b => best.push(i),
            _ => {
                best.clear();
                best.push(i);
                best_value = Some(v);
            }
        }
    }
    best
}

/// Recognition of an already decoded noisy answer.
///
/// With a matrix measure and more than one potential answer, the measure
/// between the signatures of the noisy answer and each candidate decides;
/// otherwise membership in `T` decides.
pub fn recognize_noisy(
    memory: &CleanupMemory,
    noisy: &Multivector,
    expected: &str,
    options: RecognitionOptions,
) -> Result<TrialOutcome> {
    let expected = memory
        .position(expected)
        .ok_or_else(|| Error::UnresolvedReference(expected.to_string()))?;
    let ranking = cleanup_query(memory, noisy)?;
    let correct_in_potential = ranking.scores[expected] != 0;
    let in_top = ranking.top.contains(&expected);

    let matrix = options.measure != Measure::InnerOnly && ranking.potential.len() > 1;
    let (correct, measure_used) = if matrix {
        let candidates = if options.restrict_to_top {
            &ranking.top
        } else {
            &ranking.potential
        };
        let noisy_sig = signature(noisy)?;
        let sigs = candidates
            .iter()
            .map(|&i| Ok((i, signature(&memory.items[i].value)?)))
            .collect::<Result<Vec<(usize, Signature)>>>()?;
        let winners = match options.measure {
            Measure::Hamming => argmax_set(
                sigs.iter()
                    .map(|(i, s)| Ok((*i, hamming_measure(&noisy_sig, s)?)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            Measure::HammingSupport => argmax_set(
                sigs.iter()
                    .map(|(i, s)| Ok((*i, hamming_support_measure(&noisy_sig, s)?)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            Measure::Euclidean => argmax_set(
                sigs.iter()
                    .map(|(i, s)| Ok((*i, euclidean_measure(&noisy_sig, s)?)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            Measure::InnerOnly => unreachable!(),
        };
        (winners.contains(&expected), options.measure)
    } else {
        (in_top, Measure::InnerOnly)
    };

    Ok(TrialOutcome {
        correct,
        potential_count: ranking.potential.len(),
        top_set_size: ranking.top.len(),
        measure_used,
        correct_in_potential,
    })
}

/// Asks `item ♯ question` and checks whether `expected` is recognized.
pub fn recognize(
    memory: &CleanupMemory,
    item: &str,
    question: &str,
    expected: &str,
    mode: QuestionMode,
    options: impl Into<RecognitionOptions>,
) -> Result<TrialOutcome> {
    let noisy = ask(memory.lookup(item)?, memory.lookup(question)?, mode)?;
    recognize_noisy(memory, &noisy, expected, options.into())
}
