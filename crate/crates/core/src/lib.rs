//! Subshifts of finite type over finitely generated groups.
//!
//! The crate provides the word algebra and presentation toolkit needed to
//! manipulate one-relator groups (Tietze transformations, Magnus-style
//! rewriting, exponent-sum certificates), a small family of group backends
//! with decidable word problem (free, free abelian, direct-with-cyclic,
//! free-by-cyclic, Dehn's algorithm for small-cancellation presentations),
//! coset enumeration, and the two extension constructions that transport an
//! SFT from a finite-index subgroup to the ambient group. On top of that
//! sits a desk-scale verification layer: Cayley-ball tiling, strongly
//! periodic point search over finite quotients, and a certificate pipeline
//! that separates machine-checked facts from cited ones.

pub mod citations;
pub mod extensions;
pub mod groups;
pub mod presentations;
pub mod sft;
pub mod verify;
pub mod words;

pub use citations::Citation;
pub use extensions::{
    coset_color_closure, coset_restriction, cyclic_lift, free_extension, periodic_right_lift,
    periodic_right_lift_quotient, product_alphabet, product_lift, product_lift_quotient,
    product_table, right_extension, CosetAssignment, Embedding, ExtensionError, ProductLetter,
    RightExtension,
};
pub use groups::{
    build_ball, conjugate_generator, coset_decompose, dehn_reduce, exponent_hom_check,
    parse_model_spec, todd_coxeter, Ball, CosetTable, DehnModel, DirectWithCyclicModel, DynModel,
    FreeAbelianModel, FreeByCyclicModel, FreeGroupModel, GroupError, GroupModel, HomCertificate,
};
pub use presentations::{
    analyze_one_relator, apply_tietze, classify_quasiplanar, freiheitssatz_subgroup,
    invert_generator, magnus_moldavansky, replay_log, surface_presentation, Factor, FactorList,
    LogEntry, NonRigidityCertificate, Presentation, PresentationError, RewriteOutcome, TietzePolicy,
    TietzeStep, Verdict,
};
pub use sft::{
    appears, expand_quotient, quotient_stabilizes, quotient_violations, shift, violations,
    Alphabet, Appearance, BallConfig, OrbitStabilizerReport, Pattern, QuotientConfig, Sft,
    SftError,
};
pub use verify::{
    certify_one_relator, check_conjugate_exponents, search_strongly_periodic, stabilizer_scan,
    stabilizer_scan_quotient, tile_ball, CertificateReport, Evidence, PeriodicOutcome,
    PeriodicSearchResult, ProvedFact, TileOutcome, TileResult, VerifyError,
};
pub use words::{Generator, Letter, Sign, Word, WordError};
