#pragma once

// Printed example matrices, transcribed cell by cell. Three cells differ from
// the printed text because the printed values break the row or column sums;
// the corrected value is the only one consistent with the rest of the matrix.

namespace st_test::golden {

// 11 unit vectors in dimension 4, bound 11/4. Row 3 cells 7, 9 and 10
// (one-based) are corrected.
inline constexpr const char* untf_4_11 =
    "1 1 s3/8 s3/8 0 0 0 0 0 0 0;"
    "0 0 s5/8 -s5/8 1 s2/8 s2/8 0 0 0 0;"
    "0 0 0 0 0 s6/8 -s6/8 1 s1/8 s1/8 0;"
    "0 0 0 0 0 0 0 0 s7/8 -s7/8 1";

inline constexpr const char* untf_4_6 =
    "1 s1/4 s1/4 0 0 0;"
    "0 s3/4 -s3/4 0 0 0;"
    "0 0 0 1 s1/4 s1/4;"
    "0 0 0 0 s3/4 -s3/4";

inline constexpr const char* sfr_3_10 =
    "1 1 1 1 s1/6 s1/6 0 0 0 0;"
    "0 0 0 0 s5/6 -s5/6 1 s1/3 s1/3 0;"
    "0 0 0 0 0 0 0 s2/3 -s2/3 1";

inline constexpr const char* sfr_3_10_reordered =
    "1 1 s1/6 s1/6 0 0 0 0 0 0;"
    "0 0 s5/6 -s5/6 1 1 s1/3 s1/3 0 0;"
    "0 0 0 0 0 0 s2/3 -s2/3 1 1";

inline constexpr const char* pnstc_5_8 =
    "4 1 s2/5 s3/5 0 0 0 0;"
    "0 0 s18/5 -s12/5 0 0 0 0;"
    "0 0 0 0 1 s8/9 s1/9 0;"
    "0 0 0 0 0 s10/9 -s80/9 0;"
    "0 0 0 0 0 0 0 2";

// Last cell corrected: the column must have norm sqrt(2) and the row must
// sum to 8.
inline constexpr const char* pnstc_str_2_6 =
    "s3 2 1 s3/5 s2/5 0;"
    "0 0 0 s12/5 -s18/5 s2";

inline constexpr const char* weighted_5_18 =
    "1 1 1 1 s2 s2/3 s1/3 0 0 0 0 0 0 0 0 0 0 0;"
    "0 0 0 0 0 s4/3 -s8/3 s3 0 0 0 0 0 0 0 0 0 0;"
    "0 0 0 0 0 0 0 0 2 1 1 1 0 0 0 0 0 0;"
    "0 0 0 0 0 0 0 0 0 0 0 0 1 s2 s2 1 1 0;"
    "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 s2 -s2 2";

// Unit norm frame for the spectrum (11/6 x 6) used in the negative fusion
// example. Row 5 cell 11 is corrected from sqrt(5/12) to sqrt(1/12).
inline constexpr const char* untf_6_11 =
    "1 s5/12 s5/12 0 0 0 0 0 0 0 0;"
    "0 s7/12 -s7/12 s1/3 s1/3 0 0 0 0 0 0;"
    "0 0 0 s2/3 -s2/3 s1/4 s1/4 0 0 0 0;"
    "0 0 0 0 0 s3/4 -s3/4 s1/6 s1/6 0 0;"
    "0 0 0 0 0 0 0 s5/6 -s5/6 s1/12 s1/12;"
    "0 0 0 0 0 0 0 0 0 s11/12 -s11/12";

}  // namespace st_test::golden
