//! The standard test memory: 42 atoms, two records and seventeen nested
//! sentences, plus the questions asked of it.

use std::fmt::Write as _;

use rand::RngCore;

use crate::analysis::AnswerProfile;
use crate::encoding::{
    draw_vocabulary, AtomKind, CleanupMemory, Construction, QuestionMode, SentenceSpec, Vocabulary,
};
use crate::error::{Error, Result};

pub const ROLES: [&str; 15] = [
    "name",
    "sex",
    "age",
    "class",
    "type",
    "taste",
    "occupation",
    "bite_agt",
    "bite_obj",
    "flee_agt",
    "flee_obj",
    "see_agt",
    "see_obj",
    "cause_agt",
    "cause_obj",
];

pub const FILLERS: [&str; 19] = [
    "Pat",
    "male",
    "66",
    "Fido",
    "John",
    "animal",
    "dog",
    "chickenlike",
    "7",
    "pet",
    "filler_1",
    "filler_2",
    "filler_3",
    "filler_4",
    "filler_5",
    "filler_6",
    "filler_7",
    "filler_8",
    "filler_9",
];

/// Padding that brings the atom count to 42. The first four double as verb
/// blades under the Plate construction.
pub const EXTRAS: [&str; 8] = [
    "bite", "flee", "see", "cause", "extra_1", "extra_2", "extra_3", "extra_4",
];

/// Atom names and kinds in draw order.
pub fn atom_specs() -> Vec<(&'static str, AtomKind)> {
    ROLES
        .iter()
        .map(|&r| (r, AtomKind::Role))
        .chain(FILLERS.iter().map(|&f| (f, AtomKind::Filler)))
        .chain(EXTRAS.iter().map(|&e| (e, AtomKind::Filler)))
        .collect()
}

/// Sentences in dependency order.
pub fn sentence_specs() -> Vec<SentenceSpec> {
    let s = SentenceSpec::new;
    vec![
        s("(1a)", Some("bite"), &[("bite_agt", "Fido"), ("bite_obj", "Pat")]),
        s("(2a)", Some("flee"), &[("flee_agt", "Pat"), ("flee_obj", "Fido")]),
        s("(3a)", Some("see"), &[("see_agt", "John"), ("see_obj", "(1a)")]),
        s(
            "PSmith",
            None,
            &[("name", "Pat"), ("sex", "male"), ("age", "66")],
        ),
        s("(1b)", Some("bite"), &[("bite_agt", "Fido"), ("bite_obj", "PSmith")]),
        s("(2c)", Some("flee"), &[("flee_agt", "PSmith"), ("flee_obj", "Fido")]),
        s("(4a)", Some("cause"), &[("cause_agt", "(1a)"), ("cause_obj", "(2a)")]),
        s("(3b)", Some("see"), &[("see_agt", "John"), ("see_obj", "(1b)")]),
        s("(5a)", Some("see"), &[("see_agt", "John"), ("see_obj", "(4a)")]),
        s("(4c)", Some("cause"), &[("cause_agt", "(1b)"), ("cause_obj", "(2a)")]),
        s(
            "DogFido",
            None,
            &[
                ("class", "animal"),
                ("type", "dog"),
                ("taste", "chickenlike"),
                ("name", "Fido"),
                ("age", "7"),
                ("sex", "male"),
                ("occupation", "pet"),
            ],
        ),
        s("(1c)", Some("bite"), &[("bite_agt", "DogFido"), ("bite_obj", "Pat")]),
        s("(2b)", Some("flee"), &[("flee_agt", "Pat"), ("flee_obj", "DogFido")]),
        s("(4b)", Some("cause"), &[("cause_agt", "(1b)"), ("cause_obj", "(2c)")]),
        s("(3c)", Some("see"), &[("see_agt", "John"), ("see_obj", "(1c)")]),
        s("(5b)", Some("see"), &[("see_agt", "John"), ("see_obj", "(4b)")]),
        s(
            "(1d)",
            Some("bite"),
            &[("bite_agt", "DogFido"), ("bite_obj", "PSmith")],
        ),
        s(
            "(2d)",
            Some("flee"),
            &[("flee_agt", "PSmith"), ("flee_obj", "DogFido")],
        ),
        s("(3d)", Some("see"), &[("see_agt", "John"), ("see_obj", "(1d)")]),
    ]
}

/// Draws the vocabulary, then encodes every sentence in order.
pub fn build_table1<R: RngCore + ?Sized>(
    rng: &mut R,
    n: u32,
    construction: Construction,
) -> Result<(Vocabulary, CleanupMemory)> {
    let vocab = draw_vocabulary(&atom_specs(), n, rng)?;
    let mut memory = CleanupMemory::from_vocabulary(&vocab);
    for spec in sentence_specs() {
        memory.encode_and_insert(&spec, &vocab, construction, rng)?;
    }
    Ok((vocab, memory))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuestionCase {
    pub id: &'static str,
    pub item: &'static str,
    pub question: &'static str,
    pub expected: &'static str,
    pub mode: QuestionMode,
    /// Meaningful and noisy blade counts under the agent-object construction.
    pub meaningful_blades: usize,
    pub noisy_blades: usize,
    /// Known potential answers for the closed-form estimate, agent-object.
    pub estimator: Option<AnswerProfile>,
}

impl QuestionCase {
    /// Meaningful and noisy blades of the decoded answer in a built memory.
    pub fn ratio_in(&self, memory: &CleanupMemory) -> Result<(usize, usize)> {
        let get = |name: &str| {
            memory
                .get(name)
                .ok_or_else(|| Error::UnresolvedReference(name.to_string()))
        };
        let meaningful = get(self.expected)?.blade_count;
        let total = get(self.item)?.blade_count;
        Ok((meaningful, total - meaningful))
    }
}

pub fn question_catalog() -> Vec<QuestionCase> {
    use QuestionMode::*;
    let q = |id, item, question, expected, mode, ratio: (usize, usize), estimator| QuestionCase {
        id,
        item,
        question,
        expected,
        mode,
        meaningful_blades: ratio.0,
        noisy_blades: ratio.1,
        estimator,
    };
    vec![
        q("PSmith#name", "PSmith", "name", "Pat", RightHandSide, (1, 2), None),
        q("(3a)#see_obj", "(3a)", "see_obj", "(1a)", RightHandSide, (2, 1), None),
        q("(5a)#see_agt", "(5a)", "see_agt", "John", RightHandSide, (1, 4), None),
        q("(5a)#see_obj", "(5a)", "see_obj", "(4a)", RightHandSide, (4, 1), None),
        q(
            "(1b)#bite_agt",
            "(1b)",
            "bite_agt",
            "Fido",
            AppropriateReversed,
            (1, 3),
            Some(AnswerProfile::new([(1, 1)], 4)),
        ),
        q(
            "(1b)#bite_obj",
            "(1b)",
            "bite_obj",
            "PSmith",
            AppropriateReversed,
            (3, 1),
            Some(AnswerProfile::new([(3, 1), (7, 1)], 4)),
        ),
        q(
            "(4a)#cause_obj",
            "(4a)",
            "cause_obj",
            "(2a)",
            RightHandSide,
            (2, 2),
            Some(AnswerProfile::new([(2, 1), (4, 1), (8, 1)], 4)),
        ),
        q("(3b)#see_obj", "(3b)", "see_obj", "(1b)", RightHandSide, (4, 1), None),
        q("(5b)#see_obj", "(5b)", "see_obj", "(4b)", RightHandSide, (8, 1), None),
        q("(3d)#see_obj", "(3d)", "see_obj", "(1d)", RightHandSide, (10, 1), None),
    ]
}

pub fn find_question(id: &str) -> Result<QuestionCase> {
    question_catalog()
        .into_iter()
        .find(|q| q.id == id)
        .ok_or_else(|| Error::UnresolvedReference(id.to_string()))
}

/// Plain-text listing of atoms and encoded sentences, one per line.
pub fn dump(vocab: &Vocabulary, memory: &CleanupMemory) -> String {
    let mut out = String::new();
    for atom in vocab.atoms() {
        let kind = match atom.kind {
            AtomKind::Role => "role",
            AtomKind::Filler => "filler",
        };
        writeln!(out, "atom {} {} {}", atom.name, kind, atom.mask).unwrap();
    }
    for item in memory.items().iter().filter(|it| vocab.get(&it.name).is_none()) {
        writeln!(out, "item {} {} {}", item.name, item.blade_count, item.value).unwrap();
    }
    out
}
