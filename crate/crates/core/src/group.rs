//! Finite generator sets and words over them.
//!
//! Group elements used for sampling are words of bounded length in a fixed
//! set of rotation and boost generators and their inverses. Words are kept
//! symbolic so that the spinor lift of each element is well defined.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lorentz::{boost, rotation, LorentzTransform, TransformKind};

const AXES: [[f64; 3]; 3] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
const AXIS_NAMES: [&str; 3] = ["x", "y", "z"];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Generator {
    Rotation { axis: usize, angle: f64 },
    Boost { axis: usize, rapidity: f64 },
}

impl Generator {
    pub fn transform(&self) -> Result<LorentzTransform> {
        match *self {
            Generator::Rotation { axis, angle } => rotation(AXES[axis % 3], angle),
            Generator::Boost { axis, rapidity } => boost(AXES[axis % 3], rapidity),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Generator::Rotation { axis, .. } => format!("R{}", AXIS_NAMES[axis % 3]),
            Generator::Boost { axis, .. } => format!("B{}", AXIS_NAMES[axis % 3]),
        }
    }

    pub fn is_rotation(&self) -> bool {
        matches!(self, Generator::Rotation { .. })
    }
}

/// Generators with their transforms precomputed.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    generators: Vec<Generator>,
    transforms: Vec<LorentzTransform>,
    inverses: Vec<LorentzTransform>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        let transforms = generators
            .iter()
            .map(Generator::transform)
            .collect::<Result<Vec<_>>>()?;
        let inverses = transforms.iter().map(LorentzTransform::inverse).collect();
        Ok(Self {
            generators,
            transforms,
            inverses,
        })
    }

    /// Rotations about x, y, z by `angle` followed by boosts along x, y, z
    /// with `rapidity`.
    pub fn rotations_and_boosts(angle: f64, rapidity: f64) -> Result<Self> {
        let mut g: Vec<Generator> = (0..3).map(|axis| Generator::Rotation { axis, angle }).collect();
        g.extend((0..3).map(|axis| Generator::Boost { axis, rapidity }));
        Self::new(g)
    }

    /// Rotations at π/7 and boosts at rapidity 0.3.
    pub fn standard() -> Self {
        Self::rotations_and_boosts(std::f64::consts::PI / 7.0, 0.3)
            .expect("coordinate axes are unit vectors")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn rotation_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.generators[i].is_rotation()).collect()
    }

    pub fn boost_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.generators[i].is_rotation()).collect()
    }

    pub fn letter_transform(&self, letter: Letter) -> &LorentzTransform {
        if letter.inverse {
            &self.inverses[letter.index]
        } else {
            &self.transforms[letter.index]
        }
    }

    pub fn evaluate(&self, word: &GroupWord) -> LorentzTransform {
        word.0.iter().fold(LorentzTransform::identity(), |acc, &l| {
            acc.compose(self.letter_transform(l))
        })
    }

    pub fn display(&self, word: &GroupWord) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        word.0
            .iter()
            .map(|l| {
                let name = self.generators[l.index].name();
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Uniform random word of length `1..=max_len` over the letters in
    /// `allowed` (generator indices) and their inverses.
    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, allowed: &[usize], max_len: usize) -> GroupWord {
        let len = rng.gen_range(1..=max_len.max(1));
        let letters = (0..len)
            .map(|_| Letter {
                index: allowed[rng.gen_range(0..allowed.len())],
                inverse: rng.gen_bool(0.5),
            })
            .collect();
        GroupWord(letters)
    }

    pub fn all_indices(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    pub fn kind_of(&self, word: &GroupWord) -> TransformKind {
        self.evaluate(word).kind()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: usize) -> Self {
        Self { index, inverse: false }
    }

    pub fn inv(index: usize) -> Self {
        Self { index, inverse: true }
    }
}

/// Product of letters, read left to right as matrix products.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Self(vec![l])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(
            self.0
                .iter()
                .rev()
                .map(|l| Letter {
                    index: l.index,
                    inverse: !l.inverse,
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| format!("g{}{}", l.index, if l.inverse { "^-1" } else { "" }))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses `"Rx Bz^-1 Ry"` against the generator names of `set`.
pub fn parse_word(set: &GeneratorSet, text: &str) -> Option<GroupWord> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        if token == "e" {
            continue;
        }
        let (name, inverse) = match token.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (token, false),
        };
        let index = set.generators().iter().position(|g| g.name() == name)?;
        letters.push(Letter { index, inverse });
    }
    Some(GroupWord(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_inverse_evaluates_to_inverse() {
        let set = GeneratorSet::standard();
        let w = GroupWord(vec![Letter::new(0), Letter::inv(4), Letter::new(2), Letter::new(5)]);
        let g = set.evaluate(&w).compose(&set.evaluate(&w.inverse()));
        assert!(g.deviation(&LorentzTransform::identity()) < 1e-12);
        assert!(g.spinor_deviation(&LorentzTransform::identity()) < 1e-12);
    }

    #[test]
    fn display_and_parse_round_trip() {
        let set = GeneratorSet::standard();
        let w = GroupWord(vec![Letter::new(0), Letter::inv(4)]);
        let text = set.display(&w);
        assert_eq!(text, "Rx By^-1");
        assert_eq!(parse_word(&set, &text), Some(w));
        assert_eq!(parse_word(&set, "e"), Some(GroupWord::identity()));
        assert_eq!(parse_word(&set, "Qx"), None);
    }

    #[test]
    fn fourteen_small_turns_make_a_full_turn() {
        let set = GeneratorSet::standard();
        let w = GroupWord(vec![Letter::new(2); 14]);
        let g = set.evaluate(&w);
        assert!(g.deviation(&LorentzTransform::identity()) < 1e-12);
        assert_eq!(g.kind(), TransformKind::Rotation);
    }
}
