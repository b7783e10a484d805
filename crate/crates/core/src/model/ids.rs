use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Agent architecture label. Unknown labels are kept verbatim so new agents
/// flow through the pipeline without code changes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AgentId {
    ReAct,
    CoT,
    ToolAugmented,
    Hybrid,
    Other(String),
}

/// Evaluation domain label; open in the same way as [`AgentId`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DomainId {
    Healthcare,
    Finance,
    Marketing,
    Legal,
    CustomerService,
    Other(String),
}

impl AgentId {
    pub const BUILTIN: [AgentId; 4] = [
        AgentId::ReAct,
        AgentId::CoT,
        AgentId::ToolAugmented,
        AgentId::Hybrid,
    ];

    pub fn as_str(&self) -> &str {
        match self {
            AgentId::ReAct => "ReAct",
            AgentId::CoT => "CoT",
            AgentId::ToolAugmented => "Tool-Augmented",
            AgentId::Hybrid => "Hybrid",
            AgentId::Other(s) => s,
        }
    }
}

impl DomainId {
    pub const BUILTIN: [DomainId; 5] = [
        DomainId::Healthcare,
        DomainId::Finance,
        DomainId::Marketing,
        DomainId::Legal,
        DomainId::CustomerService,
    ];

    pub fn as_str(&self) -> &str {
        match self {
            DomainId::Healthcare => "Healthcare",
            DomainId::Finance => "Finance",
            DomainId::Marketing => "Marketing",
            DomainId::Legal => "Legal",
            DomainId::CustomerService => "Customer Service",
            DomainId::Other(s) => s,
        }
    }
}

/// Error for an empty or whitespace-only identifier.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("identifier must not be empty")]
pub struct EmptyId;

impl FromStr for AgentId {
    type Err = EmptyId;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Ok(match s {
            "" => return Err(EmptyId),
            "ReAct" | "ReAct Agent" => AgentId::ReAct,
            "CoT" | "CoT Agent" | "Chain-of-Thought" => AgentId::CoT,
            "Tool-Augmented" | "Tool-Aug." | "ToolAugmented" | "Tool-Aug. Agent" => {
                AgentId::ToolAugmented
            }
            "Hybrid" | "Hybrid Agent" => AgentId::Hybrid,
            other => AgentId::Other(other.to_string()),
        })
    }
}

impl FromStr for DomainId {
    type Err = EmptyId;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Ok(match s {
            "" => return Err(EmptyId),
            "Healthcare" => DomainId::Healthcare,
            "Finance" => DomainId::Finance,
            "Marketing" => DomainId::Marketing,
            "Legal" => DomainId::Legal,
            "Customer Service" | "CustomerService" => DomainId::CustomerService,
            other => DomainId::Other(other.to_string()),
        })
    }
}

macro_rules! label_impls {
    ($ty:ty) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(self.as_str())
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

label_impls!(AgentId);
label_impls!(DomainId);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_labels_round_trip() {
        for a in AgentId::BUILTIN {
            assert_eq!(a.as_str().parse::<AgentId>().unwrap(), a);
        }
        for d in DomainId::BUILTIN {
            assert_eq!(d.as_str().parse::<DomainId>().unwrap(), d);
        }
    }

    #[test]
    fn unknown_labels_are_kept() {
        assert_eq!(
            "Planner".parse::<AgentId>().unwrap(),
            AgentId::Other("Planner".into())
        );
        assert_eq!(
            "Education".parse::<DomainId>().unwrap(),
            DomainId::Other("Education".into())
        );
        assert!("  ".parse::<AgentId>().is_err());
    }

    #[test]
    fn builtins_sort_before_custom_labels() {
        let mut v = [
            AgentId::Other("Aardvark".into()),
            AgentId::Hybrid,
            AgentId::ReAct,
        ];
        v.sort();
        assert_eq!(v[0], AgentId::ReAct);
        assert_eq!(v[2], AgentId::Other("Aardvark".into()));
    }
}
