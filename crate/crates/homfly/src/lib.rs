//! Exact computational algebra for knot polynomials and graph invariants:
//! multivariate Laurent polynomials over the integers, complete integer
//! polynomial factorization, Tutte polynomials of multigraphs, the
//! transformation from Tutte polynomials to link invariants, and a
//! structural irreducibility certificate for the resulting polynomials.

pub mod bivar;
pub mod enumerate;
pub mod error;
pub mod factor_multi;
pub mod factor_uni;
pub mod graph;
pub mod hensel;
pub mod jaeger;
pub mod knotdb;
pub mod laurent;
pub mod modp;
pub mod tutte;
pub mod unipoly;

pub use bivar::BivarPoly;
pub use enumerate::{enumerate_two_connected, is_planar};
pub use error::Error;
pub use factor_multi::{
    dehomogenize_z, factor_laurent, is_irreducible_laurent, kronecker_factor, rehomogenize,
    BivarFactorization, LaurentFactorization,
};
pub use factor_uni::{factor_univariate, UniFactorization};
pub use graph::{GraphRecord, MultiGraph};
pub use jaeger::{
    boundary_restrictions, graph_id, homfly_from_tutte, irreducibility_certificate, is_square_form,
    search_counterexamples, square_restriction_conditions, tutte_numerator,
    verify_squaring_identity, verify_squaring_identity_at, BiHomogPoly, BinaryForm, Certificate,
    CertificateConditions, RationalMapP1P1, SearchOutcome, SquareConditions, Verdict,
};
pub use knotdb::{
    convert_to_homogeneous, crossing_number_from_name, find_factorizations, load_knots,
    load_knots_csv, load_knots_jsonl, mirror, parse_homfly, to_ki_convention,
    verify_known_factorizations, FactorEntry, FactorReport, FactorStatus, KnotRecord,
    KnownProduct, KnownProductCheck, RowOutcome, KNOWN_PRODUCTS,
};
pub use laurent::{LaurentPoly, Monomial};
pub use tutte::{face_polynomial, forest_counts, tutte, tutte_oracle};
pub use unipoly::{is_square_over_c, squarefree_decomposition, UniPoly};
