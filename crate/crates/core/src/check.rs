//! Named pass/fail records collected by the verifiers.

use std::fmt;

use num_rational::Ratio;

/// Exact rationals; all logarithmic quantities are base `q`.
pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Ratio::new(n, d)
}

pub fn int(n: i128) -> Rational {
    Ratio::from_integer(n)
}

/// `num/den` text form, `n` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.pass { "ok" } else { "FAIL" };
        write!(f, "[{mark}] {}: {}", self.name, self.detail)
    }
}

/// An ordered list of checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub checks: Vec<Check>,
}

impl Trace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check::new(name, pass, detail));
        pass
    }

    pub fn extend(&mut self, other: Trace) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
