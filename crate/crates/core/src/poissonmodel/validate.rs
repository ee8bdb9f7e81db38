use std::fmt;

use super::{koszul_blocks, Bidegree, DolbeaultPoissonModel, KoszulDifferential, Operator};
use crate::exactla::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    DelSquared,
    DelbarSquared,
    DelDelbar,
    KoszulSquared,
    KoszulDelbar,
}

impl Identity {
    pub const ALL: [Identity; 5] = [
        Identity::DelSquared,
        Identity::DelbarSquared,
        Identity::DelDelbar,
        Identity::KoszulSquared,
        Identity::KoszulDelbar,
    ];

    /// Stable ASCII key used in reports.
    pub fn key(self) -> &'static str {
        match self {
            Identity::DelSquared => "del^2",
            Identity::DelbarSquared => "delbar^2",
            Identity::DelDelbar => "del.delbar+delbar.del",
            Identity::KoszulSquared => "delpi^2",
            Identity::KoszulDelbar => "delbar.delpi+delpi.delbar",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::DelSquared => "∂² = 0",
            Identity::DelbarSquared => "∂̄² = 0",
            Identity::DelDelbar => "∂∂̄ + ∂̄∂ = 0",
            Identity::KoszulSquared => "∂_π² = 0",
            Identity::KoszulDelbar => "∂̄∂_π + ∂_π∂̄ = 0",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub passed: bool,
    /// Source bidegree of the first nonzero residual block.
    pub at: Option<Bidegree>,
    pub residual: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<IdentityCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn check(&self, id: Identity) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.identity == id)
    }
}

fn add(a: Bidegree, b: Bidegree) -> Bidegree {
    (a.0 + b.0, a.1 + b.1)
}

fn compose(second: Matrix, first: Matrix) -> Matrix {
    second.mul(&first).expect("model blocks have consistent shapes")
}

fn scan<F>(m: &DolbeaultPoissonModel, identity: Identity, residual: F) -> IdentityCheck
where
    F: Fn(Bidegree) -> Matrix,
{
    for s in m.bidegrees() {
        if m.dim(s) == 0 {
            continue;
        }
        let r = residual(s);
        if !r.is_zero() {
            return IdentityCheck {
                identity,
                passed: false,
                at: Some(s),
                residual: Some(r),
            };
        }
    }
    IdentityCheck {
        identity,
        passed: true,
        at: None,
        residual: None,
    }
}

fn operator_checks(m: &DolbeaultPoissonModel) -> Vec<IdentityCheck> {
    use Operator::*;
    let b = |op: Operator, s: Bidegree| m.block(op, s);
    vec![
        scan(m, Identity::DelSquared, |s| compose(b(Del, add(s, (1, 0))), b(Del, s))),
        scan(m, Identity::DelbarSquared, |s| compose(b(Delbar, add(s, (0, 1))), b(Delbar, s))),
        scan(m, Identity::DelDelbar, |s| {
            compose(b(Del, add(s, (0, 1))), b(Delbar, s))
                .add(&compose(b(Delbar, add(s, (1, 0))), b(Del, s)))
                .expect("same shape")
        }),
    ]
}

pub(crate) fn koszul_checks(m: &DolbeaultPoissonModel, kd: &KoszulDifferential) -> ValidationReport {
    let b = |s: Bidegree| m.block(Operator::Delbar, s);
    ValidationReport {
        checks: vec![
            scan(m, Identity::KoszulSquared, |s| compose(kd.at(add(s, (-1, 0))), kd.at(s))),
            scan(m, Identity::KoszulDelbar, |s| {
                compose(b(add(s, (-1, 0))), kd.at(s))
                    .add(&compose(kd.at(add(s, (0, 1))), b(s)))
                    .expect("same shape")
            }),
        ],
    }
}

/// Checks `∂² = 0`, `∂̄² = 0`, `∂∂̄ + ∂̄∂ = 0`, `∂_π² = 0` and
/// `∂̄∂_π + ∂_π∂̄ = 0`, each reporting the first source bidegree (in
/// lexicographic order) where the composite block is nonzero.
pub fn validate_model(m: &DolbeaultPoissonModel) -> ValidationReport {
    let kd = koszul_blocks(m).expect("model blocks have consistent shapes");
    let mut checks = operator_checks(m);
    checks.extend(koszul_checks(m, &kd).checks);
    ValidationReport { checks }
}
