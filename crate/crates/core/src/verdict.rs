//! Three-valued verdicts with witnesses and rule tags.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Degree window `[lo, hi]` applied to every grading axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Window {
        assert!(lo <= hi, "empty degree window");
        Window { lo, hi }
    }

    /// Symmetric window `[-r, r]`.
    pub fn radius(r: i64) -> Window {
        Window::new(-r, r)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Value {
    Yes,
    No,
    Unknown,
    WindowYes,
}

impl Value {
    pub fn exit_code(self) -> i32 {
        match self {
            Value::Yes | Value::WindowYes => 0,
            Value::No => 1,
            Value::Unknown => 2,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Value::Yes => "Yes",
            Value::No => "No",
            Value::Unknown => "Unknown",
            Value::WindowYes => "WindowYes",
        };
        f.write_str(s)
    }
}

/// The concrete datum a verdict is about: points (an edge, a pair), a
/// cohomological degree and, for graded data, a multidegree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub points: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomological_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graded_degree: Option<Vec<(String, i64)>>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Witness {
    pub fn points<S: AsRef<str>>(pts: &[S]) -> Witness {
        Witness { points: pts.iter().map(|s| s.as_ref().to_string()).collect(), ..Default::default() }
    }

    pub fn with_degree(mut self, i: usize) -> Witness {
        self.cohomological_degree = Some(i);
        self
    }

    pub fn with_graded(mut self, d: Option<Vec<(String, i64)>>) -> Witness {
        self.graded_degree = d;
        self
    }

    pub fn with_detail(mut self, s: impl Into<String>) -> Witness {
        self.detail = s.into();
        self
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.points.join(", "))?;
        if let Some(i) = self.cohomological_degree {
            write!(f, " H^{}", i)?;
        }
        if let Some(d) = &self.graded_degree {
            let s: Vec<String> = d.iter().map(|(a, e)| format!("{}={}", a, e)).collect();
            write!(f, " degree ({})", s.join(","))?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub rule: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
}

impl Verdict {
    pub fn yes(rule: impl Into<String>) -> Verdict {
        Verdict { value: Value::Yes, witness: None, rule: rule.into(), window: None }
    }

    pub fn window_yes(rule: impl Into<String>, window: Window) -> Verdict {
        Verdict { value: Value::WindowYes, witness: None, rule: rule.into(), window: Some(window) }
    }

    pub fn no(rule: impl Into<String>, witness: Witness) -> Verdict {
        Verdict { value: Value::No, witness: Some(witness), rule: rule.into(), window: None }
    }

    pub fn unknown(rule: impl Into<String>, detail: impl Into<String>) -> Verdict {
        let w = Witness { detail: detail.into(), ..Default::default() };
        Verdict { value: Value::Unknown, witness: Some(w), rule: rule.into(), window: None }
    }

    /// Yes or WindowYes.
    pub fn holds(&self) -> bool {
        matches!(self.value, Value::Yes | Value::WindowYes)
    }

    pub fn is_no(&self) -> bool {
        self.value == Value::No
    }

    /// Positive verdict from a run of checks that may have been windowed.
    pub fn positive(rule: impl Into<String>, window: Option<Window>) -> Verdict {
        match window {
            Some(w) => Verdict::window_yes(rule, w),
            None => Verdict::yes(rule),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        if let Some(w) = &self.window {
            write!(f, " (verified on window {})", w)?;
        }
        write!(f, " [{}]", self.rule)?;
        if let Some(w) = &self.witness {
            write!(f, " witness {}", w)?;
        }
        Ok(())
    }
}

/// Outcome of an exact comparison: decided, or decided only inside a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Yes,
    WindowYes(Window),
    /// Fails; for graded data the first failing multidegree.
    No(Option<Vec<(String, i64)>>),
}

impl Check {
    pub fn holds(&self) -> bool {
        !matches!(self, Check::No(_))
    }

    pub fn window(&self) -> Option<Window> {
        match self {
            Check::WindowYes(w) => Some(*w),
            _ => None,
        }
    }
}
