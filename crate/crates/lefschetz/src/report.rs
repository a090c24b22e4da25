//! Pass/fail records for identity checks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graded::GradedOperator;
use crate::linalg::{fmt_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub identities: Vec<IdentityResult>,
    pub parameters: BTreeMap<String, serde_json::Value>,
}

pub fn fmt_vec(v: &[Q]) -> String {
    format!("[{}]", v.iter().map(fmt_q).collect::<Vec<_>>().join(", "))
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), ..Default::default() }
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.identities.push(IdentityResult { name: name.into(), status: Status::Pass, witness: None });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: Witness) {
        self.identities.push(IdentityResult { name: name.into(), status: Status::Fail, witness: Some(witness) });
    }

    /// Records a boolean check; the witness is only built on failure.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> Witness) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, witness());
        }
    }

    pub fn check_eq<T: PartialEq + std::fmt::Debug>(&mut self, name: impl Into<String>, lhs: T, rhs: T) {
        let ok = lhs == rhs;
        self.check(name, ok, || Witness {
            location: "value".into(),
            lhs: format!("{lhs:?}"),
            rhs: format!("{rhs:?}"),
        });
    }

    /// Exact operator equality, with the first differing basis column as witness.
    pub fn check_ops(&mut self, name: impl Into<String>, lhs: &GradedOperator, rhs: &GradedOperator, labels: &[Vec<String>]) {
        let name = name.into();
        match lhs.first_difference(rhs) {
            None => self.pass(name),
            Some((deg, idx, a, b)) => {
                let label = labels.get(deg).and_then(|l| l.get(idx)).cloned().unwrap_or_default();
                self.fail(
                    name,
                    Witness { location: format!("H^{deg} basis {idx} ({label})"), lhs: fmt_vec(&a), rhs: fmt_vec(&b) },
                )
            }
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    /// Appends another report's identities under `prefix/` and its parameters
    /// under `prefix.`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut id in other.identities {
            id.name = format!("{prefix}/{}", id.name);
            self.identities.push(id);
        }
        for (k, v) in other.parameters {
            self.parameters.insert(format!("{prefix}.{k}"), v);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.identities.iter().all(|i| i.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&IdentityResult> {
        self.identities.iter().filter(|i| i.status == Status::Fail).collect()
    }

    pub fn find(&self, name: &str) -> Option<&IdentityResult> {
        self.identities.iter().find(|i| i.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
