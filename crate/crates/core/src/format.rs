//! The JSON wire format for sets.
//!
//! One object per file:
//!
//! ```json
//! { "group": [19], "lambda": 2, "P": [[1],[5]], "N": [[3]] }
//! ```
//!
//! Elements are coordinate arrays matching the group's factor list. Catalog
//! records extend this object; see [`crate::catalog`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::sds::SignedDiffSet;

/// Serde image of a signed difference set.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SetFile {
    pub group: Vec<u64>,
    pub lambda: i64,
    #[serde(rename = "P")]
    pub p: Vec<Vec<u64>>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<u64>>,
}

impl SetFile {
    pub fn from_set(set: &SignedDiffSet) -> Self {
        Self {
            group: set.group().orders().to_vec(),
            lambda: set.lambda(),
            p: set
                .p_elements()
                .iter()
                .map(|e| e.coords().to_vec())
                .collect(),
            n: set
                .n_elements()
                .iter()
                .map(|e| e.coords().to_vec())
                .collect(),
        }
    }

    /// Validates coordinates, membership, and disjointness.
    pub fn to_set(&self) -> Result<SignedDiffSet> {
        let group = AbelianGroup::new(&self.group)
            .map_err(|e| Error::Format(format!("bad group literal: {e}")))?;
        let parse = |coords: &[Vec<u64>], which: &str| -> Result<Vec<crate::group::GroupElement>> {
            coords
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    group
                        .element(c)
                        .map_err(|e| Error::Format(format!("{which}[{i}]: {e}")))
                })
                .collect()
        };
        let p = parse(&self.p, "P")?;
        let n = parse(&self.n, "N")?;
        SignedDiffSet::new(group, &p, &n, self.lambda)
            .map_err(|e| Error::Format(format!("invalid set: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Parses a CLI group literal: "19" or "2x3x3".
pub fn parse_group_literal(s: &str) -> Result<AbelianGroup> {
    let orders: Vec<u64> = s
        .split('x')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Error::Format(format!("bad group literal component {part:?}")))
        })
        .collect::<Result<_>>()?;
    AbelianGroup::new(&orders)
}
