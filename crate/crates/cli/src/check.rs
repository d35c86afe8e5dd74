//! Checking distributions read from JSON.

use serde_json::Value;

use helpzc::help::{tabulate, verify_v4, PADistribution, Violation};
use helpzc::solver::Family;
use helpzc::{BigInt, Error, Result, V4Report};

/// Result of checking one distribution.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub distribution: PADistribution,
    pub violations: Vec<Violation>,
    /// `None` when a linear condition already fails.
    pub v4: Option<V4Report>,
}

impl CheckOutcome {
    pub fn condition_ok(&self, name: &str) -> bool {
        self.violations.iter().all(|v| v.condition() != name)
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.v4.as_ref().is_some_and(V4Report::passed)
    }
}

/// Accepts one distribution, an array of them, or an object with `solutions`.
pub fn parse_input(text: &str) -> Result<Vec<PADistribution>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let items = match &value {
        Value::Array(items) => items.clone(),
        Value::Object(map) if map.contains_key("solutions") => match &map["solutions"] {
            Value::Array(items) => items.clone(),
            _ => return Err(Error::Parse("`solutions` must be an array".into())),
        },
        Value::Object(_) => vec![value.clone()],
        _ => {
            return Err(Error::Parse(
                "expected a distribution object or array".into(),
            ))
        }
    };
    if items.is_empty() {
        return Err(Error::Parse("no distributions in input".into()));
    }
    items.iter().map(PADistribution::from_json_value).collect()
}

pub fn check_one(pa: &PADistribution, family: &str) -> Result<CheckOutcome> {
    let violations = pa.violations();
    let v4 = if violations.is_empty() {
        let fam = Family::parse(family, pa.frame())?;
        let tables = tabulate::<BigInt>(pa.frame(), &fam.characters)?;
        Some(verify_v4(pa, &tables)?)
    } else {
        None
    };
    Ok(CheckOutcome {
        distribution: pa.clone(),
        violations,
        v4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use helpzc::help::{exceptional, tpa};
    use helpzc::psl2::{CyclicFrame, GroupContext};

    fn frame(q: u64, m: u64) -> CyclicFrame {
        CyclicFrame::new(GroupContext::new(q).unwrap(), m).unwrap()
    }

    #[test]
    fn input_shapes() {
        let f = frame(19, 10);
        let a = tpa(&f, 1).unwrap();
        let single = a.to_json_string();
        assert_eq!(parse_input(&single).unwrap(), std::slice::from_ref(&a));
        let array = format!("[{single},{single}]");
        assert_eq!(parse_input(&array).unwrap().len(), 2);
        let wrapped = format!("{{\"count\": 1, \"solutions\": [{single}]}}");
        assert_eq!(parse_input(&wrapped).unwrap(), [a]);
        assert!(parse_input("[]").is_err());
        assert!(parse_input("3").is_err());
        assert!(parse_input("{\"q\": 19}").is_err());
    }

    #[test]
    fn outcomes() {
        let f = frame(19, 10);
        let good = check_one(&exceptional(&f, 5, 1).unwrap(), "paper,brauer-p").unwrap();
        assert!(good.passed());
        let bad = tpa(&f, 1).unwrap().with(1, 1, 2).unwrap();
        let out = check_one(&bad, "paper").unwrap();
        assert!(!out.passed());
        assert!(!out.condition_ok("V1"));
        assert!(out.condition_ok("V2"));
        assert!(out.v4.is_none());
    }
}
