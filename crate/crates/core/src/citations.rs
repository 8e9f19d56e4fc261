//! Citation records for the classical results that certificates lean on.
//!
//! The verification harness re-checks everything it can at desk scale and
//! reports those facts as PROVED. Results that cannot be re-derived
//! mechanically — freeness of subgroups, aperiodicity of infinite families,
//! end counts — are imported on the authority of the literature and reported
//! as CITED, with the statement quoted closely enough that a reader can
//! locate it in the source.

/// A named classical result together with the statement relied on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Citation {
    /// Stable key naming the result, usable as a cross-reference in reports.
    pub key: &'static str,
    /// The statement, following the source's wording.
    pub statement: &'static str,
}

impl std::fmt::Display for Citation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}] {}", self.key, self.statement)
    }
}

/// Piantadosi's theorem on free groups.
pub const PIANTADOSI_FREE_GROUPS: Citation = Citation {
    key: "piantadosi-free-groups",
    statement: "Any free group of rank at least 2 is not periodically rigid: \
                it admits a weakly aperiodic SFT.",
};

/// Magnus's Freiheitssatz for one-relator groups.
pub const MAGNUS_FREIHEITSSATZ: Citation = Citation {
    key: "magnus-freiheitssatz",
    statement: "Let G = <S | r> be a one-relator group with r cyclically reduced, \
                such that s in S appears in r. Then the subgroup of G generated by \
                S \\ {s} is free of rank |S|-1.",
};

/// Barbieri's criterion for non-strong-aperiodicity of free extensions.
pub const BARBIERI_CRITERION: Citation = Citation {
    key: "barbieri-free-extension",
    statement: "Let H be a subgroup of G and X an SFT on H. If there exists \
                g in G \\ {1} such that for all gamma in G and all n > 0 the \
                conjugate gamma g^n gamma^-1 lies outside H \\ {1}, then the \
                free extension of X is not strongly aperiodic on G.",
};

/// Jeandel: free extensions preserve weak aperiodicity.
pub const JEANDEL_WEAK_APERIODICITY: Citation = Citation {
    key: "jeandel-free-extension",
    statement: "Let H be a subgroup of G and X an SFT on H. If X is weakly \
                aperiodic, then its free extension to G is also weakly aperiodic.",
};

/// Cohen: many-ended groups admit no strongly aperiodic SFT.
pub const COHEN_ENDS: Citation = Citation {
    key: "cohen-two-or-more-ends",
    statement: "A group with infinitely many ends cannot have a strongly \
                aperiodic SFT (nor can any group with two or more ends).",
};

/// Free subgroups of many-ended groups.
pub const MANY_ENDS_FREE_SUBGROUP: Citation = Citation {
    key: "ends-free-subgroup",
    statement: "A finitely generated group with infinitely many ends contains \
                a subgroup isomorphic to the free group of rank 2.",
};

/// Free products of nontrivial groups have infinitely many ends.
pub const FREE_PRODUCT_ENDS: Citation = Citation {
    key: "free-product-ends",
    statement: "A free product of two nontrivial groups, not both of order \
                two, has infinitely many ends.",
};

/// Cohen and Goodman-Strauss on surface groups.
pub const SURFACE_STRONGLY_APERIODIC: Citation = Citation {
    key: "cohen-goodman-strauss-surfaces",
    statement: "Surface groups admit a strongly aperiodic SFT.",
};
