//! Tri-state verdicts with certificates.

use std::fmt;

use serde_json::{json, Value};

use crate::scalar::{format_scalar, format_vector, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Undecided,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }

    pub fn is_definite(self) -> bool {
        self != Answer::Undecided
    }

    /// True when both answers are definite and disagree.
    pub fn contradicts(self, other: Answer) -> bool {
        self.is_definite() && other.is_definite() && self != other
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Undecided => "undecided",
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Theorem-level characterizations and the oracle's decision rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Triangular: Q iff positive diagonal.
    T3_1,
    /// Upper triangular block plus a nonnegative last row.
    T3_2,
    /// bdsw Type I, last row with `a_n1 >= 0`, `a_nn > 0`.
    T5_1,
    /// bdsw Type I, `a_n1 > 0`, `a_nn = 0`.
    T5_2,
    /// bdsw Type I, `a_n1 < 0`, `a_nn > 0`.
    T5_3,
    /// bdsw Type I, `a_n1 > 0`, `a_nn < 0`: never Q.
    T5_4,
    /// Type I necessary condition: Q implies nonnegative diagonal.
    C5_5,
    T6_1,
    T7_1,
    T8_1,
    /// Complete 2x2 characterization.
    T9_1,
    /// Rank-one transformation on a Euclidean Jordan algebra.
    T10_8,
    /// A Q-matrix has a positive entry in every row.
    NonpositiveRow,
    /// Q is contained in S.
    NotS,
    /// Exhibited q with empty solution set.
    UnsolvableQ,
    /// Nonzero LCP degree of an R0-matrix.
    NonzeroDegree,
    /// R* is contained in Q.
    RStar,
    /// Exact LP over complementary supports.
    SupportLp,
    /// Enumeration of principal minors.
    PrincipalMinors,
    /// Entrywise sign scan.
    SignScan,
    /// Order-one base case `[a]` in Q iff `a > 0`.
    Scalar,
    /// No rule decided the question.
    Inconclusive,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::T3_1 => "T3.1",
            Rule::T3_2 => "T3.2",
            Rule::T5_1 => "T5.1",
            Rule::T5_2 => "T5.2",
            Rule::T5_3 => "T5.3",
            Rule::T5_4 => "T5.4",
            Rule::C5_5 => "C5.5",
            Rule::T6_1 => "T6.1",
            Rule::T7_1 => "T7.1",
            Rule::T8_1 => "T8.1",
            Rule::T9_1 => "T9.1",
            Rule::T10_8 => "T10.8",
            Rule::NonpositiveRow => "nonpositive-row",
            Rule::NotS => "not-S",
            Rule::UnsolvableQ => "unsolvable-q",
            Rule::NonzeroDegree => "nonzero-degree",
            Rule::RStar => "R*",
            Rule::SupportLp => "support-lp",
            Rule::PrincipalMinors => "principal-minors",
            Rule::SignScan => "sign-scan",
            Rule::Scalar => "scalar",
            Rule::Inconclusive => "inconclusive",
        }
    }

    pub fn is_theorem(self) -> bool {
        matches!(
            self,
            Rule::T3_1
                | Rule::T3_2
                | Rule::T5_1
                | Rule::T5_2
                | Rule::T5_3
                | Rule::T5_4
                | Rule::C5_5
                | Rule::T6_1
                | Rule::T7_1
                | Rule::T8_1
                | Rule::T9_1
                | Rule::T10_8
        )
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// A nonnegative vector violating (or certifying) the property.
    Vector(Vec<Scalar>),
    /// A right-hand side `q` for which `LCP(A, q)` has no solution.
    UnsolvableQ(Vec<Scalar>),
    /// 1-based row index.
    Row(usize),
    /// A principal minor on the (1-based) index set.
    Minor { indices: Vec<usize>, value: Scalar },
    Degree(i64),
    /// A floating-point element, e.g. from a Jordan algebra sampler.
    Point(Vec<f64>),
}

impl Witness {
    pub fn to_json(&self) -> Value {
        match self {
            Witness::Vector(v) => json!({ "kind": "vector", "values": format_vector(v) }),
            Witness::UnsolvableQ(q) => json!({ "kind": "unsolvable-q", "q": format_vector(q) }),
            Witness::Row(i) => json!({ "kind": "row", "row": i }),
            Witness::Minor { indices, value } => {
                json!({ "kind": "minor", "indices": indices, "value": format_scalar(value) })
            }
            Witness::Degree(d) => json!({ "kind": "degree", "degree": d }),
            Witness::Point(p) => json!({ "kind": "point", "coords": p }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub rule: Rule,
    pub condition: String,
    pub witness: Option<Witness>,
    pub determinant: Option<Scalar>,
    pub k: Option<usize>,
}

impl Certificate {
    pub fn new(rule: Rule, condition: impl Into<String>) -> Self {
        Certificate {
            rule,
            condition: condition.into(),
            witness: None,
            determinant: None,
            k: None,
        }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_determinant(mut self, det: Scalar) -> Self {
        self.determinant = Some(det);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassVerdict {
    pub answer: Answer,
    pub certificate: Certificate,
}

impl ClassVerdict {
    pub fn new(answer: Answer, certificate: Certificate) -> Self {
        ClassVerdict { answer, certificate }
    }

    pub fn yes(certificate: Certificate) -> Self {
        Self::new(Answer::Yes, certificate)
    }

    pub fn no(certificate: Certificate) -> Self {
        Self::new(Answer::No, certificate)
    }

    pub fn undecided(certificate: Certificate) -> Self {
        Self::new(Answer::Undecided, certificate)
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.answer == Answer::No
    }

    pub fn rule(&self) -> Rule {
        self.certificate.rule
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.certificate.witness.as_ref()
    }

    /// `{"answer", "theorem", "condition", "witness", ...}`.
    pub fn to_json(&self) -> Value {
        let c = &self.certificate;
        let mut v = json!({
            "answer": self.answer.as_str(),
            "theorem": c.rule.id(),
            "condition": c.condition,
            "witness": c.witness.as_ref().map_or(Value::Null, Witness::to_json),
        });
        if let Some(det) = &c.determinant {
            v["determinant"] = Value::String(format_scalar(det));
        }
        if let Some(k) = c.k {
            v["k"] = json!(k);
        }
        v
    }
}

impl fmt::Display for ClassVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.certificate;
        if c.rule.is_theorem() {
            write!(f, "{} ({} {}", self.answer, c.rule, c.condition)?;
        } else {
            write!(f, "{} ({}", self.answer, c.condition)?;
        }
        if let Some(det) = &c.determinant {
            write!(f, ", det={}", format_scalar(det))?;
        }
        if let Some(k) = c.k {
            write!(f, ", k={k}")?;
        }
        match &c.witness {
            Some(Witness::UnsolvableQ(q)) => write!(f, ", q=({})", format_vector(q).join(","))?,
            Some(Witness::Vector(x)) => write!(f, ", x=({})", format_vector(x).join(","))?,
            Some(Witness::Degree(d)) => write!(f, ", deg={d}")?,
            _ => {}
        }
        write!(f, ")")
    }
}
