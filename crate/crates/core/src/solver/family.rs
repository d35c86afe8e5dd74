use std::fmt;

use crate::psl2::{brauer_irreducibles, brauer_up_to_degree, CharRestriction, CyclicFrame};
use crate::{Error, Result};

/// A named, duplicate-free list of characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    pub characters: Vec<CharRestriction>,
}

impl Family {
    pub fn new(name: impl Into<String>, chars: impl IntoIterator<Item = CharRestriction>) -> Self {
        let mut characters: Vec<CharRestriction> = Vec::new();
        for c in chars {
            if !characters.contains(&c) {
                characters.push(c);
            }
        }
        Family {
            name: name.into(),
            characters,
        }
    }

    /// `{1_G, χ_2, χ_4, φ_h (1 ≤ h ≤ ⌊n/2⌋), ψ_1}`.
    pub fn paper(frame: &CyclicFrame) -> Self {
        let n = frame.m();
        let mut chars = vec![
            CharRestriction::Trivial,
            CharRestriction::BrauerChi(vec![2]),
            CharRestriction::BrauerChi(vec![4]),
        ];
        if n > 1 {
            chars.extend((1..=n / 2).map(CharRestriction::Phi));
            chars.push(CharRestriction::Psi(1));
        }
        Family::new("paper", chars)
    }

    /// All irreducible Brauer characters modulo `p`.
    pub fn brauer(frame: &CyclicFrame) -> Self {
        Family::new("brauer-p", brauer_irreducibles(&frame.ctx()))
    }

    /// Parses a comma-separated list of presets (`paper`, `brauer-p`,
    /// `brauer-p:D`) and character ids (`trivial`, `phi:H`, `psi:H`,
    /// `chi:R0.R1…`).
    pub fn parse(spec: &str, frame: &CyclicFrame) -> Result<Self> {
        let tokens: Vec<&str> = spec
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        Family::from_tokens(&tokens, frame)
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: &[S], frame: &CyclicFrame) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::Parse("empty character family".into()));
        }
        let mut chars = Vec::new();
        let mut names = Vec::new();
        for token in tokens {
            let token = token.as_ref().trim();
            names.push(token.to_string());
            match token {
                "paper" => chars.extend(Family::paper(frame).characters),
                "brauer-p" => chars.extend(Family::brauer(frame).characters),
                _ if token.starts_with("brauer-p:") => {
                    let d = token["brauer-p:".len()..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad degree bound in `{token}`")))?;
                    chars.extend(brauer_up_to_degree(&frame.ctx(), d));
                }
                _ => {
                    let c = CharRestriction::parse(token)?;
                    c.validate(frame)?;
                    chars.push(c);
                }
            }
        }
        Ok(Family::new(names.join(","), chars))
    }

    pub fn ids(&self) -> Vec<String> {
        self.characters.iter().map(CharRestriction::id).collect()
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// Union with `other`, named `self+other`.
    pub fn union(&self, other: &Family) -> Family {
        Family::new(
            format!("{}+{}", self.name, other.name),
            self.characters.iter().chain(&other.characters).cloned(),
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.name)?;
        for (i, c) in self.characters.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
