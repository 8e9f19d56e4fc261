//! Periodic-rigidity classification for groups that are virtually a free
//! product of free groups and surface groups.
//!
//! A group is *periodically rigid* when every weakly aperiodic SFT on it is
//! already strongly aperiodic. For the class handled here the answer is a
//! finite case analysis: the group is periodically rigid exactly when it is
//! virtually cyclic, or torsion-free and virtually Z^2.

use std::fmt;

/// One free factor of the finite-index decomposition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Factor {
    Free { rank: usize },
    Surface { genus: usize },
}

impl Factor {
    /// `Free(0)` and `Surface(0)` (the sphere) are the trivial group.
    pub fn is_trivial_group(&self) -> bool {
        matches!(self, Factor::Free { rank: 0 } | Factor::Surface { genus: 0 })
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Free { rank } => write!(f, "free group of rank {rank}"),
            Factor::Surface { genus } => write!(f, "surface group of genus {genus}"),
        }
    }
}

/// A description of a group `G` as virtually a free product: some finite-index
/// subgroup of `G` is the free product of `factors`.
///
/// `finite_index_supergroup` is true when `G` properly contains that free
/// product (index > 1 is possible); when false, `G` *is* the free product.
/// `torsion_free` records whether `G` itself is torsion-free; it gates the
/// virtually-Z^2 branch, where rigidity holds only for torsion-free groups.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorList {
    pub factors: Vec<Factor>,
    pub finite_index_supergroup: bool,
    pub torsion_free: bool,
}

/// The classification outcome, with a prose reason naming the branch taken.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    PeriodicallyRigid { reason: String },
    NotPeriodicallyRigid { reason: String },
}

impl Verdict {
    pub fn is_rigid(&self) -> bool {
        matches!(self, Verdict::PeriodicallyRigid { .. })
    }

    pub fn reason(&self) -> &str {
        match self {
            Verdict::PeriodicallyRigid { reason } | Verdict::NotPeriodicallyRigid { reason } => {
                reason
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::PeriodicallyRigid { reason } => {
                write!(f, "periodically rigid: {reason}")
            }
            Verdict::NotPeriodicallyRigid { reason } => {
                write!(f, "not periodically rigid: {reason}")
            }
        }
    }
}

fn rigid(reason: impl Into<String>) -> Verdict {
    Verdict::PeriodicallyRigid { reason: reason.into() }
}

fn not_rigid(reason: impl Into<String>) -> Verdict {
    Verdict::NotPeriodicallyRigid { reason: reason.into() }
}

/// Decides periodic rigidity for a group given as virtually a free product of
/// free groups and surface groups.
///
/// The case analysis: with at least two nontrivial factors the free product
/// contains a rank-2 free subgroup and has infinitely many ends, so the group
/// admits a weakly but not strongly aperiodic SFT. With a single nontrivial
/// factor the verdict depends on which group it is — Z and the trivial group
/// are virtually cyclic (rigid); Z^2 is rigid exactly when the ambient group
/// is torsion-free; larger free and surface groups are not rigid.
pub fn classify_quasiplanar(f: &FactorList) -> Verdict {
    let nontrivial: Vec<&Factor> =
        f.factors.iter().filter(|fac| !fac.is_trivial_group()).collect();

    if nontrivial.len() >= 2 {
        return not_rigid(format!(
            "the group is virtually a free product of {} nontrivial groups, so it \
             contains a free group of rank 2 and has infinitely many ends; the free \
             extension of a weakly aperiodic SFT on that subgroup is weakly aperiodic, \
             while infinitely many ends rule out strongly aperiodic SFTs",
            nontrivial.len()
        ));
    }

    let Some(single) = nontrivial.first() else {
        return rigid(
            "every factor is the trivial group, so the group is finite, hence \
             virtually cyclic",
        );
    };

    match single {
        Factor::Free { rank: 1 } => {
            rigid("the group is virtually Z, hence virtually cyclic")
        }
        Factor::Free { rank } => not_rigid(format!(
            "the group is virtually free of rank {rank} >= 2, so it contains a free \
             group of rank 2 and has infinitely many ends; it admits a weakly but not \
             strongly aperiodic SFT"
        )),
        Factor::Surface { genus: 1 } => {
            if f.finite_index_supergroup && !f.torsion_free {
                not_rigid(
                    "the group is virtually Z^2 but has torsion, and only torsion-free \
                     virtually Z^2 groups are periodically rigid",
                )
            } else {
                rigid("the group is torsion-free and virtually Z^2")
            }
        }
        Factor::Surface { genus } => not_rigid(format!(
            "the group is virtually a surface group of genus {genus} >= 2, which is a \
             one-relator group with a zero-exponent-sum generator; it admits a weakly \
             but not strongly aperiodic SFT"
        )),
    }
}
