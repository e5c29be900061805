//! Bundled seventeen-criterion knowledge-management case study.
//!
//! The fixture carries the study's published inputs and outputs:
//!
//! - one expert's linguistic survey (the only one of the ten that was
//!   published), as a loadable survey document;
//! - the crisp direct-relation matrix aggregated over all ten experts, as a
//!   loadable delimited grid — the pipeline input of record;
//! - the published outputs: influence sums `r`/`c`, initial weights and
//!   ranks from the weighting table ("table 4"), and the global values,
//!   final weights and rankings from the ranking table ("table 5"). These
//!   are regression anchors, not inputs.

use crate::survey::{
    load_crisp_matrix, load_survey, CrispMatrixDocument, MatrixFormatError, SurveyDocument,
    SurveyError,
};

const SURVEY_JSON: &str = include_str!("../fixtures/case_study_survey.json");
const DIRECT_RELATION_CSV: &str = include_str!("../fixtures/case_study_direct_relation.csv");

pub const CRITERIA_COUNT: usize = 17;

/// Published row sums `r` ("direct" column of the weighting table).
pub const TABLE4_R: [f64; 17] = [
    4.830062, 3.489151, 3.340061, 3.242659, 4.244822, 3.500196, 3.747295, 2.95099, 2.914474,
    3.911771, 4.135935, 3.962638, 4.210022, 3.559882, 3.438394, 4.106032, 2.98092,
];

/// Published column sums `c` ("indirect" column of the weighting table).
pub const TABLE4_C: [f64; 17] = [
    2.760723, 1.810724, 1.686741, 1.615606, 2.334578, 1.809355, 1.976808, 1.404065, 1.378189,
    2.089776, 2.247816, 2.136897, 2.314495, 1.849966, 1.773175, 2.238612, 1.428692,
];

/// Published initial weights.
pub const TABLE4_WEIGHTS: [f64; 17] = [
    0.07955, 0.055542, 0.05268, 0.050914, 0.068951, 0.055643, 0.059988, 0.04564, 0.044986,
    0.062895, 0.066901, 0.063922, 0.068376, 0.056694, 0.054616, 0.066491, 0.046212,
];

/// Published initial ranking (1 = heaviest weight).
pub const TABLE4_RANK: [usize; 17] = [1, 11, 13, 14, 2, 10, 8, 16, 17, 7, 4, 6, 3, 9, 12, 5, 15];

/// Published global values `ξ` of the ranking table. Their min/max are not
/// 0/1, they sum to ≈1.009 and smaller is better, so the column behaves as
/// a loss share rather than as the min-max normalized global value.
pub const TABLE5_XI: [f64; 17] = [
    0.0287, 0.0325, 0.0803, 0.0751, 0.0039, 0.0927, 0.0594, 0.1007, 0.0947, 0.0516, 0.0314,
    0.0354, 0.0306, 0.0860, 0.0693, 0.0367, 0.100,
];

/// Published final weights. The first entry is printed as `0.607` in the
/// source; every other value lies in `[0.0562, 0.0628]` and the
/// `(1 - ξ)/16` relation confirms `0.0607`, so the fixture stores the
/// corrected value.
pub const TABLE5_FINAL_WEIGHTS: [f64; 17] = [
    0.0607, 0.0605, 0.0575, 0.0578, 0.0628, 0.0567, 0.0588, 0.0562, 0.0566, 0.0593, 0.0605,
    0.0603, 0.0606, 0.0572, 0.0582, 0.0602, 0.0562,
];

/// Published hybrid ranking (1 = best).
pub const TABLE5_HYBRID_RANK: [usize; 17] =
    [2, 4, 12, 11, 1, 14, 9, 16, 15, 8, 5, 6, 3, 13, 10, 7, 17];

/// Weighting-stage ranking as repeated in the ranking table; identical to
/// [`TABLE4_RANK`].
pub const TABLE5_DEMATEL_RANK: [usize; 17] =
    [1, 11, 13, 14, 2, 10, 8, 16, 17, 7, 4, 6, 3, 9, 12, 5, 15];

/// The single published expert survey, parsed from the bundled document.
pub fn case_study_survey() -> Result<SurveyDocument, SurveyError> {
    load_survey(SURVEY_JSON.as_bytes())
}

/// The aggregated crisp direct-relation matrix, parsed from the bundled grid.
pub fn case_study_direct_relation() -> Result<CrispMatrixDocument, MatrixFormatError> {
    load_crisp_matrix(DIRECT_RELATION_CSV.as_bytes())
}

/// Raw bytes of the bundled survey document.
pub fn case_study_survey_bytes() -> &'static [u8] {
    SURVEY_JSON.as_bytes()
}

/// Raw bytes of the bundled direct-relation grid.
pub fn case_study_direct_relation_bytes() -> &'static [u8] {
    DIRECT_RELATION_CSV.as_bytes()
}

/// Known internal inconsistencies of the published tables, reported verbatim
/// by the verification harness.
pub fn known_discrepancies() -> Vec<String> {
    vec![
        "The source prints the standardization spread as max r - min r; the implementation uses \
         the standard CFCS spread max r - min l, without which the standardized upper bound \
         would exceed 1."
            .to_owned(),
        "Normalization divides by the maximum row sum only, exactly as the source's formula \
         states; some variants also consider the maximum column sum."
            .to_owned(),
        "The published weighting table violates the conservation identity sum(r) = sum(c) \
         (~62.57 vs ~32.86); no single total-relation matrix can produce those columns, so \
         exact end-to-end reproduction from the published data is impossible."
            .to_owned(),
        "The published global-value column cannot be the min-max normalized dominance (its \
         minimum and maximum are not 0 and 1); it is read as a loss share, and final weights \
         follow (1 - loss_share)/16 for at least 16 of 17 entries."
            .to_owned(),
        "The published final weight 0.607 for C1 is read as 0.0607; every other value lies in \
         [0.0562, 0.0628] and the (1 - loss_share)/16 relation confirms the correction."
            .to_owned(),
        "The published hybrid ranking is internally inconsistent with its own global-value \
         column: C17 (0.100) ranks 17 behind C8 (0.1007) at 16, and C2 (0.0325) ranks 4 ahead \
         of C11 (0.0314) at 5."
            .to_owned(),
        "The loss attenuation factor theta is never reported by the source; the harness \
         defaults to 1."
            .to_owned(),
        "Only one of the ten expert matrices was published; the aggregated direct-relation \
         matrix is taken as the input of record rather than re-derived."
            .to_owned(),
    ]
}
