//! Membership scripts: straight-line programs that build a field out of
//! certified complete fields using brackets and linear combinations. Every
//! step carries its claimed value; verification recomputes all of them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::derivation::{Derivation, RingAutomorphism};
use crate::error::{Error, Result};
use crate::polyring::{format_rational, parse_rational, Polynomial, Rational, SurfaceParameters};
use crate::torus::is_invariant_field;

use super::certificate::{verify_completeness, CompletenessCertificate};

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOp {
    Leaf(CompletenessCertificate),
    /// `[steps[left], steps[right]]`
    Bracket { left: usize, right: usize },
    /// `Σ c · steps[i]`
    LinComb(Vec<(Rational, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptStep {
    pub label: String,
    pub op: StepOp,
    pub claimed: Derivation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipScript {
    pub params: SurfaceParameters,
    pub target_label: String,
    pub target: Derivation,
    pub steps: Vec<ScriptStep>,
}

/// First step whose recomputation disagrees with its claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptFailure {
    pub step: usize,
    pub label: String,
    pub reason: String,
    /// `recomputed - claimed`, when both sides exist.
    pub difference: Option<Derivation>,
}

impl fmt::Display for ScriptFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {} ({}): {}", self.step, self.label, self.reason)?;
        if let Some(d) = &self.difference {
            write!(f, "; difference {d}")?;
        }
        Ok(())
    }
}

impl MembershipScript {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s.op, StepOp::Leaf(_))).count()
    }

    pub fn bracket_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s.op, StepOp::Bracket { .. })).count()
    }

    pub fn result(&self) -> Option<&Derivation> {
        self.steps.last().map(|s| &s.claimed)
    }
}

#[allow(clippy::result_large_err)]
pub fn verify_script(script: &MembershipScript) -> std::result::Result<(), ScriptFailure> {
    let fail = |i: usize, reason: &str, difference: Option<Derivation>| ScriptFailure {
        step: i,
        label: script.steps.get(i).map(|s| s.label.clone()).unwrap_or_default(),
        reason: reason.to_string(),
        difference,
    };
    for (i, step) in script.steps.iter().enumerate() {
        if step.claimed.params() != &script.params {
            return Err(fail(i, "parameter mismatch", None));
        }
        let earlier = |j: usize| -> std::result::Result<&Derivation, ScriptFailure> {
            if j < i {
                Ok(&script.steps[j].claimed)
            } else {
                Err(fail(i, &format!("reference to step {j} is not earlier"), None))
            }
        };
        let recomputed = match &step.op {
            StepOp::Leaf(cert) => {
                if !verify_completeness(cert) {
                    return Err(fail(i, "completeness certificate does not verify", None));
                }
                if !is_invariant_field(&step.claimed) {
                    return Err(fail(i, "leaf is not torus-invariant", None));
                }
                cert.field().clone()
            }
            StepOp::Bracket { left, right } => {
                let (l, r) = (earlier(*left)?, earlier(*right)?);
                l.bracket(r).map_err(|e| fail(i, &e.to_string(), None))?
            }
            StepOp::LinComb(terms) => {
                let mut acc = Derivation::zero(script.params);
                for (c, j) in terms {
                    acc = &acc + &earlier(*j)?.scale(c);
                }
                acc
            }
        };
        if recomputed != step.claimed {
            let diff = &recomputed - &step.claimed;
            return Err(fail(i, "recomputed value differs from claim", Some(diff)));
        }
    }
    match script.result() {
        None => Err(fail(0, "empty script", None)),
        Some(r) if *r != script.target => {
            let last = script.steps.len() - 1;
            Err(fail(last, "final step is not the target", Some(r - &script.target)))
        }
        Some(_) => Ok(()),
    }
}

pub fn is_valid_script(script: &MembershipScript) -> bool {
    verify_script(script).is_ok()
}

// ---- JSON --------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ScriptJson {
    n: u32,
    target: String,
    target_field: String,
    steps: Vec<StepJson>,
}

#[derive(Serialize, Deserialize)]
struct StepJson {
    id: usize,
    label: String,
    kind: StepKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    refs: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    scalars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    certificate: Option<CertJson>,
    claimed_field: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum StepKind {
    Leaf,
    Bracket,
    Lincomb,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum CertJson {
    Lnd {
        field: String,
        orders: [u32; 4],
    },
    Diagonal {
        field: String,
    },
    FunctionTimesField {
        factor: Polynomial,
        base: Box<CertJson>,
    },
    Conjugated {
        images: [Polynomial; 4],
        inverse_images: [Polynomial; 4],
        base: Box<CertJson>,
    },
}

fn cert_to_json(c: &CompletenessCertificate) -> CertJson {
    match c {
        CompletenessCertificate::Lnd { field, orders } => CertJson::Lnd {
            field: field.to_string(),
            orders: *orders,
        },
        CompletenessCertificate::Diagonal { field } => CertJson::Diagonal {
            field: field.to_string(),
        },
        CompletenessCertificate::FunctionTimesField { factor, base, .. } => CertJson::FunctionTimesField {
            factor: factor.clone(),
            base: Box::new(cert_to_json(base)),
        },
        CompletenessCertificate::Conjugated { automorphism, base, .. } => CertJson::Conjugated {
            images: automorphism.images().clone(),
            inverse_images: automorphism.inverse_images().clone(),
            base: Box::new(cert_to_json(base)),
        },
    }
}

// Derived fields are recomputed rather than read back, so a tampered
// `claimed` survives the round trip but a certificate cannot disagree with
// its own structure.
fn cert_from_json(params: SurfaceParameters, c: CertJson) -> Result<CompletenessCertificate> {
    Ok(match c {
        CertJson::Lnd { field, orders } => CompletenessCertificate::Lnd {
            field: Derivation::parse(params, &field)?,
            orders,
        },
        CertJson::Diagonal { field } => CompletenessCertificate::Diagonal {
            field: Derivation::parse(params, &field)?,
        },
        CertJson::FunctionTimesField { factor, base } => {
            CompletenessCertificate::function_times(factor, cert_from_json(params, *base)?)
        }
        CertJson::Conjugated {
            images,
            inverse_images,
            base,
        } => {
            let alpha = RingAutomorphism::from_images(params, images, inverse_images)?;
            cert_from_json(params, *base)?.conjugate(&alpha)?
        }
    })
}

impl MembershipScript {
    pub fn to_json(&self) -> String {
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(id, s)| {
                let (kind, refs, scalars, certificate) = match &s.op {
                    StepOp::Leaf(c) => (StepKind::Leaf, vec![], vec![], Some(cert_to_json(c))),
                    StepOp::Bracket { left, right } => (StepKind::Bracket, vec![*left, *right], vec![], None),
                    StepOp::LinComb(terms) => (
                        StepKind::Lincomb,
                        terms.iter().map(|(_, i)| *i).collect(),
                        terms.iter().map(|(c, _)| format_rational(c)).collect(),
                        None,
                    ),
                };
                StepJson {
                    id,
                    label: s.label.clone(),
                    kind,
                    refs,
                    scalars,
                    certificate,
                    claimed_field: s.claimed.to_string(),
                }
            })
            .collect();
        let doc = ScriptJson {
            n: self.params.n,
            target: self.target_label.clone(),
            target_field: self.target.to_string(),
            steps,
        };
        serde_json::to_string_pretty(&doc).expect("script serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: ScriptJson = serde_json::from_str(s).map_err(|e| Error::MalformedScript(e.to_string()))?;
        let params = SurfaceParameters::new(doc.n)?;
        let mut steps = Vec::with_capacity(doc.steps.len());
        for (pos, st) in doc.steps.into_iter().enumerate() {
            if st.id != pos {
                return Err(Error::MalformedScript(format!("step {pos} has id {}", st.id)));
            }
            let op = match st.kind {
                StepKind::Leaf => {
                    let cert = st
                        .certificate
                        .ok_or_else(|| Error::MalformedScript(format!("leaf {pos} has no certificate")))?;
                    StepOp::Leaf(cert_from_json(params, cert)?)
                }
                StepKind::Bracket => match st.refs[..] {
                    [left, right] => StepOp::Bracket { left, right },
                    _ => return Err(Error::MalformedScript(format!("bracket {pos} needs two refs"))),
                },
                StepKind::Lincomb => {
                    if st.refs.len() != st.scalars.len() {
                        return Err(Error::MalformedScript(format!("lincomb {pos}: refs and scalars differ in length")));
                    }
                    StepOp::LinComb(
                        st.scalars
                            .iter()
                            .zip(st.refs)
                            .map(|(c, i)| parse_rational(c).map(|c| (c, i)))
                            .collect::<Result<_>>()?,
                    )
                }
            };
            steps.push(ScriptStep {
                label: st.label,
                op,
                claimed: Derivation::parse(params, &st.claimed_field)?,
            });
        }
        Ok(MembershipScript {
            params,
            target_label: doc.target,
            target: Derivation::parse(params, &doc.target_field)?,
            steps,
        })
    }
}
