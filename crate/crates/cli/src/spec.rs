//! Parsing of the `--x`, `--q` and `--suites` arguments.

use std::fmt;
use std::str::FromStr;

use asmdet_core::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XSpec {
    Symbolic,
    Value(Rational),
}

impl FromStr for XSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "symbolic" {
            return Ok(XSpec::Symbolic);
        }
        s.parse::<Rational>()
            .map(XSpec::Value)
            .map_err(|e| format!("expected `symbolic` or a rational such as -3/2, got {s:?} ({e})"))
    }
}

impl fmt::Display for XSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XSpec::Symbolic => f.write_str("symbolic"),
            XSpec::Value(r) => write!(f, "{r}"),
        }
    }
}

/// Substitution for `q`: kept symbolic, the primitive root `e^{2 pi i / l}`,
/// or a rational number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QSpec {
    Symbolic,
    Root(u32),
    Value(Rational),
}

impl FromStr for QSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "symbolic" {
            return Ok(QSpec::Symbolic);
        }
        if let Some(order) = s.strip_prefix("zeta") {
            return match order.parse::<u32>() {
                Ok(l @ 1..=6) => Ok(QSpec::Root(l)),
                _ => Err(format!("root of unity must be zeta1 .. zeta6, got {s:?}")),
            };
        }
        s.parse::<Rational>()
            .map(QSpec::Value)
            .map_err(|e| format!("expected `symbolic`, `zeta1` .. `zeta6` or a rational, got {s:?} ({e})"))
    }
}

impl fmt::Display for QSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSpec::Symbolic => f.write_str("symbolic"),
            QSpec::Root(l) => write!(f, "zeta{l}"),
            QSpec::Value(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Deletion,
    Condensation,
    Structural,
    Recursions,
    Closedforms,
    MainTheorem,
    Connection,
    Appendix,
    Corollaries,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Deletion,
        Suite::Condensation,
        Suite::Structural,
        Suite::Recursions,
        Suite::Closedforms,
        Suite::MainTheorem,
        Suite::Connection,
        Suite::Appendix,
        Suite::Corollaries,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Deletion => "deletion",
            Suite::Condensation => "condensation",
            Suite::Structural => "structural",
            Suite::Recursions => "recursions",
            Suite::Closedforms => "closedforms",
            Suite::MainTheorem => "main-theorem",
            Suite::Connection => "connection",
            Suite::Appendix => "appendix",
            Suite::Corollaries => "corollaries",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
            format!("unknown suite {s:?}; expected one of {}", names.join(", "))
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
