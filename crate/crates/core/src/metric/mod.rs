mod decompose;
mod exact;
mod oracle;
mod space;

pub use decompose::{
    det_identity_check, in_matrix_ball, matrix_ball_decompose, CMat2, CVec2,
    MatrixBallDecomposition,
};
pub use exact::{
    ball_beta_integral, check_selection_rules, gram_matrix, ip, mono_ip, mono_ip_ball,
    mono_ip_matrix_ball, normalized_ip, partners, GramMatrix,
};
pub(crate) use exact::mono_coefficient;
pub use oracle::{numeric_ip_oracle, OracleEstimate};
pub use space::{BergmanSpace, Domain, ExactIPValue, Unit};
