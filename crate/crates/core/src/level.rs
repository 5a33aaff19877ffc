//! The three strengths of orientation certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::EdgeRole;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Level {
    Three,
    Four,
    Five,
}

impl Level {
    /// Largest out-degree allowed.
    pub fn out_cap(self) -> usize {
        match self {
            Level::Five => 4,
            Level::Four => 3,
            Level::Three => 2,
        }
    }

    /// Role of the removed edge set; level 5 removes nothing.
    pub fn removed_role(self) -> Option<EdgeRole> {
        match self {
            Level::Five => None,
            Level::Four => Some(EdgeRole::Matching),
            Level::Three => Some(EdgeRole::Forest),
        }
    }

    /// Required out-degrees of the pinned pair `(u, v)`.
    pub fn pinned_degrees(self) -> (usize, usize) {
        match self {
            Level::Five => (0, 1),
            Level::Four | Level::Three => (0, 0),
        }
    }
}

impl From<Level> for u8 {
    fn from(l: Level) -> u8 {
        match l {
            Level::Five => 5,
            Level::Four => 4,
            Level::Three => 3,
        }
    }
}

impl TryFrom<u8> for Level {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            5 => Ok(Level::Five),
            4 => Ok(Level::Four),
            3 => Ok(Level::Three),
            other => Err(format!("level must be 5, 4 or 3, not {other}")),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(*self))
    }
}
