//! JSON interchange form of a distribution:
//! `{"q": 19, "n": 10, "entries": [{"d": 1, "order": 10, "exp": 1, "value": 1}, …]}`
//! with non-zero entries only, sorted by `(d, exp)`.

use serde::{Deserialize, Serialize};

use crate::help::PADistribution;
use crate::psl2::{CyclicFrame, GroupContext};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub d: u64,
    pub order: u64,
    pub exp: u64,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionJson {
    pub q: u64,
    pub n: u64,
    pub entries: Vec<EntryJson>,
}

impl From<&PADistribution> for DistributionJson {
    fn from(pa: &PADistribution) -> Self {
        DistributionJson {
            q: pa.q(),
            n: pa.n(),
            entries: pa
                .entries()
                .map(|(d, c, value)| EntryJson {
                    d,
                    order: c.order,
                    exp: c.exp,
                    value,
                })
                .collect(),
        }
    }
}

impl TryFrom<&DistributionJson> for PADistribution {
    type Error = Error;

    fn try_from(js: &DistributionJson) -> Result<Self> {
        let frame = CyclicFrame::new(GroupContext::new(js.q)?, js.n)?;
        let mut pa = PADistribution::empty(frame);
        for e in &js.entries {
            let class = frame.class(e.exp as i64);
            if class.exp != e.exp || class.order != e.order {
                return Err(Error::InvalidDistribution(format!(
                    "entry (d={}, order={}, exp={}) is not a canonical class of a frame of order {}",
                    e.d, e.order, e.exp, js.n
                )));
            }
            if pa.get(e.d, e.exp as i64) != 0 {
                return Err(Error::InvalidDistribution(format!(
                    "duplicate entry (d={}, exp={})",
                    e.d, e.exp
                )));
            }
            pa.set(e.d, e.exp as i64, e.value)?;
        }
        Ok(pa)
    }
}

impl PADistribution {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DistributionJson::from(self)).expect("plain data serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&DistributionJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let js: DistributionJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        PADistribution::try_from(&js)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let js: DistributionJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        PADistribution::try_from(&js)
    }
}
