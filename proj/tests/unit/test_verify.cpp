#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "goldens.hpp"
#include "spectral_tetris/construct.hpp"
#include "spectral_tetris/errors.hpp"
#include "spectral_tetris/fusion.hpp"
#include "spectral_tetris/verify.hpp"
#include "support.hpp"

using namespace spectral_tetris;
using st_test::matrix;
using st_test::rationals;

namespace {

// Column pairs at distance >= d must all be orthogonal; the smallest such d.
std::size_t distance_oracle(const SynthesisMatrix& s) {
  const std::size_t n = s.cols();
  for (std::size_t d = 1; d < n; ++d) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + d; j < n && ok; ++j) ok = st_test::column_dot(s, i, j).is_zero();
    if (ok) return d;
  }
  return n;
}

SynthesisMatrix identity(std::size_t n) {
  SynthesisMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, i, RadicalScalar(Rational(1)));
  return s;
}

}  // namespace

TEST_CASE("frame operator of printed matrices") {
  const FrameOperator s = frame_operator(matrix(st_test::golden::untf_4_11));
  REQUIRE(s.exact);
  REQUIRE(s.dim == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(s.at(i, j) == (i == j ? RadicalScalar(Rational(11, 4)) : RadicalScalar()));

  const FrameOperator p = frame_operator(matrix(st_test::golden::pnstc_5_8));
  const auto expected = rationals({"18", "6", "2", "10", "4"});
  for (std::size_t i = 0; i < 5; ++i) CHECK(p.at(i, i) == RadicalScalar(expected[i]));

  const FrameOperator c = frame_operator(construct_untf_dft(4, 5));
  CHECK_FALSE(c.exact);
  CHECK((c.numeric - Eigen::MatrixXcd::Identity(4, 4) * 1.25).norm() < 1e-12);
}

TEST_CASE("verification report for a tight frame") {
  const auto r = verify_frame(matrix(st_test::golden::untf_4_11), Spectrum::flat(4, Rational(11, 4)), NormSequence::ones(11));
  CHECK(r.is_frame);
  CHECK(r.rows_orthogonal);
  CHECK(r.is_tight);
  REQUIRE(r.tight_bound.has_value());
  CHECK(*r.tight_bound == RadicalScalar(Rational(11, 4)));
  CHECK(r.nonzero_count == 17);
  CHECK(r.optimal_sparsity_bound == std::optional<std::size_t>(17));
  CHECK(r.spectrum_matches == std::optional<bool>(true));
  CHECK(r.norms_match == std::optional<bool>(true));
  CHECK(r.exact);

  const auto wrong = verify_frame(matrix(st_test::golden::untf_4_11), Spectrum::flat(4, Rational(3)));
  CHECK(wrong.spectrum_matches == std::optional<bool>(false));
}

TEST_CASE("a zeroed entry breaks orthogonality") {
  SynthesisMatrix tampered = matrix(st_test::golden::untf_4_11);
  tampered.set(1, 3, RadicalScalar());
  const auto r = verify_frame(tampered);
  CHECK_FALSE(r.rows_orthogonal);
  CHECK_FALSE(r.is_tight);
  CHECK_FALSE(r.tight_bound.has_value());
  CHECK(r.is_frame);
}

TEST_CASE("non-spanning and empty inputs") {
  const auto degenerate = verify_frame(matrix("1 1; 0 0"));
  CHECK_FALSE(degenerate.is_frame);
  const auto empty = verify_frame(SynthesisMatrix(0, 0));
  CHECK(empty.nonzero_count == 0);
  // non-orthogonal rows that still span
  const auto skew = verify_frame(matrix("1 1; 0 1"));
  CHECK(skew.is_frame);
  CHECK_FALSE(skew.rows_orthogonal);
  CHECK_FALSE(skew.is_tight);
}

TEST_CASE("floating point verification") {
  Eigen::MatrixXd q = Eigen::MatrixXd::Random(5, 5);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(q);
  const Eigen::MatrixXd orth = qr.householderQ();
  const Eigen::MatrixXd parseval = orth.topRows(3);
  const auto r = verify_numeric(parseval);
  CHECK(r.is_frame);
  CHECK(r.rows_orthogonal);
  CHECK(r.is_tight);
  REQUIRE(r.tight_bound_numeric.has_value());
  CHECK(std::abs(*r.tight_bound_numeric - 1.0) < 1e-10);
  CHECK_FALSE(r.exact);
}

TEST_CASE("sparsity bound and report") {
  CHECK(sparsity_lower_bound(Spectrum::flat(4, Rational(11, 4)), 11) == 17);
  CHECK(sparsity_lower_bound(Spectrum::flat(3, Rational(1)), 3) == 3);
  const auto id = sparsity_report(identity(3), Spectrum::flat(3, Rational(1)));
  CHECK(id.count == 3);
  CHECK(id.bound == 3);
  CHECK(id.optimal);
  const auto sf = sparsity_report(matrix(st_test::golden::sfr_3_10), Spectrum(rationals({"13/3", "10/3", "7/3"})));
  CHECK(sf.count == 14);
  CHECK(sf.bound == 14);
  CHECK(sf.optimal);
  CHECK_THROWS_AS(sparsity_report(identity(3), Spectrum::flat(3, Rational(2))), Error);
  try {
    sparsity_report(identity(3), Spectrum::flat(3, Rational(2)));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SpectrumMismatch);
  }
}

TEST_CASE("orthogonality distance") {
  CHECK(orthogonality_distance(identity(4)) == 1);
  CHECK(orthogonality_distance(matrix("1 1 1 1 1")) == 5);
  const SynthesisMatrix f = matrix(st_test::golden::untf_4_11);
  CHECK(orthogonality_distance(f) <= 5);
  for (const char* literal : {st_test::golden::untf_4_11, st_test::golden::untf_4_6, st_test::golden::sfr_3_10,
                              st_test::golden::pnstc_5_8, st_test::golden::weighted_5_18, st_test::golden::untf_6_11}) {
    const SynthesisMatrix m = matrix(literal);
    CHECK(orthogonality_distance(m) == distance_oracle(m));
  }
}

TEST_CASE("fusion verification") {
  const FusionFrame w = weighted_fusion(rationals({"1", "1", "1", "1", "2", "2", "3", "3", "4"}),
                                        std::vector<std::size_t>(9, 2), Spectrum(rationals({"7", "7", "7", "7", "8"})));
  const auto r = verify_fusion(w, Spectrum(rationals({"7", "7", "7", "7", "8"})));
  CHECK(r.partition_valid);
  CHECK(r.is_fusion_frame);
  CHECK(r.dims_match);
  CHECK_FALSE(r.is_tight);
  CHECK(r.spectrum_matches == std::optional<bool>(true));
  CHECK(r.lower_bound == std::optional<Rational>(Rational(7)));
  CHECK(r.upper_bound == std::optional<Rational>(Rational(8)));
  for (bool b : r.subspace_orthogonal) CHECK(b);
  for (bool b : r.weights_match) CHECK(b);

  FusionFrame basis;
  basis.m = 3;
  basis.generator = identity(3);
  basis.partition = {{0}, {1}, {2}};
  basis.dims = {1, 1, 1};
  basis.weights_sq = {1, 1, 1};
  const auto b = verify_fusion(basis);
  CHECK(b.is_fusion_frame);
  CHECK(b.is_tight);
  CHECK(b.tight_bound == std::optional<RadicalScalar>(RadicalScalar(Rational(1))));
  CHECK(b.lower_bound == b.upper_bound);

  // two vectors in one group that are not orthogonal
  FusionFrame bad;
  bad.m = 2;
  bad.generator = matrix("1 s1/2; 0 s1/2");
  bad.partition = {{0, 1}};
  bad.dims = {2};
  bad.weights_sq = {1};
  const auto v = verify_fusion(bad);
  CHECK_FALSE(v.is_fusion_frame);
  REQUIRE(v.subspace_orthogonal.size() == 1);
  CHECK_FALSE(v.subspace_orthogonal[0]);

  // a column in two groups
  FusionFrame overlap = basis;
  overlap.partition = {{0, 1}, {1}, {2}};
  overlap.dims = {2, 1, 1};
  CHECK_FALSE(verify_fusion(overlap).partition_valid);
}
