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

using Groups = std::vector<std::vector<std::size_t>>;

Groups zero_based(const Groups& g) {
  Groups out = g;
  for (auto& group : out)
    for (auto& i : group) --i;
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Internal;
}

// Every group orthogonal with the right squared norms, groups disjoint and
// covering, and the fusion operator has the requested diagonal spectrum.
bool fusion_ok(const FusionFrame& f, const std::vector<Rational>& lambda) {
  std::vector<int> seen(f.generator.cols(), 0);
  if (f.partition.size() != f.dims.size()) return false;
  for (std::size_t g = 0; g < f.partition.size(); ++g) {
    const auto& group = f.partition[g];
    if (group.size() != f.dims[g]) return false;
    for (std::size_t a = 0; a < group.size(); ++a) {
      ++seen.at(group[a]);
      if (st_test::column_dot(f.generator, group[a], group[a]) != RadicalScalar(f.weights_sq[g])) return false;
      for (std::size_t b = a + 1; b < group.size(); ++b)
        if (!st_test::column_dot(f.generator, group[a], group[b]).is_zero()) return false;
    }
  }
  for (int s : seen)
    if (s != 1) return false;
  std::vector<Rational> norms;
  for (std::size_t c = 0; c < f.generator.cols(); ++c) {
    const auto n = st_test::column_dot(f.generator, c, c).as_rational();
    if (!n) return false;
    norms.push_back(*n);
  }
  return st_test::frame_ok(f.generator, lambda, norms);
}

bool majorized_by(std::vector<std::size_t> big, std::vector<std::size_t> small) {
  std::sort(big.rbegin(), big.rend());
  std::sort(small.rbegin(), small.rend());
  std::size_t a = 0, b = 0;
  for (std::size_t i = 0; i < std::max(big.size(), small.size()); ++i) {
    a += i < big.size() ? big[i] : 0;
    b += i < small.size() ? small[i] : 0;
    if (a < b) return false;
  }
  return a == b;
}

}  // namespace

TEST_CASE("maximal chains") {
  const SynthesisMatrix s = matrix("1 s1/2 0; 0 s1/2 0; 0 0 1");
  CHECK(maximal_chains(s, {0, 1, 2}) == Groups{{0, 1}, {2}});
  CHECK(maximal_chains(matrix("1 0 0; 0 1 0; 0 0 1"), {0, 1, 2}) == Groups{{0}, {1}, {2}});
  const SynthesisMatrix f = matrix(st_test::golden::untf_4_11);
  CHECK(maximal_chains(f, {2, 3, 5, 6}) == Groups{{2, 3, 5, 6}});
  CHECK(maximal_chains(f, {0, 10}) == Groups{{0}, {10}});
  CHECK(maximal_chains(f, {}).empty());
}

TEST_CASE("round robin grouping") {
  CHECK(sffr_grouping(5, 2) == Groups{{0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}});
  CHECK(sffr_grouping(2, 3) == Groups{{0, 2, 4}, {1, 3, 5}});
  CHECK(sffr_grouping(1, 1) == Groups{{0}});
}

TEST_CASE("round robin fusion frames") {
  const FusionFrame f = sffr(Spectrum(rationals({"2", "2"})), 2, 2);
  CHECK(f.partition == Groups{{0, 2}, {1, 3}});
  CHECK(f.dims == std::vector<std::size_t>{2, 2});
  CHECK(fusion_ok(f, rationals({"2", "2"})));

  const FusionFrame flat = sffr(Spectrum::flat(4, Rational(5, 2)), 5, 2);
  CHECK(fusion_ok(flat, st_test::repeat(Rational(5, 2), 4)));
  CHECK(verify_fusion(flat).is_tight);

  CHECK(kind_of([] { sffr(Spectrum(rationals({"13/3", "10/3", "7/3"})), 5, 3); }) == ErrorKind::Infeasible);
  CHECK(kind_of([] { sffr(Spectrum(rationals({"3", "1"})), 2, 2); }) == ErrorKind::Infeasible);
  // the floor condition fails here and the round-robin groups are not orthogonal
  CHECK(kind_of([] { sffr(Spectrum(rationals({"13/3", "10/3", "7/3"})), 5, 2); }) == ErrorKind::Infeasible);
}

TEST_CASE("reference fusion frames") {
  const auto r1 = rff(Spectrum::flat(4, Rational(11, 4)), 11);
  CHECK(r1.partition == zero_based({{1, 5, 8, 11}, {2, 6}, {3, 9}, {4, 10}, {7}}));
  CHECK(r1.dims == std::vector<std::size_t>{4, 2, 2, 2, 1});
  CHECK(fusion_ok(r1, st_test::repeat(Rational(11, 4), 4)));

  const auto r2 = rff(Spectrum(rationals({"7/3", "13/3", "10/3"})), 10);
  CHECK(r2.dims == std::vector<std::size_t>{3, 3, 1, 1, 1, 1});
  CHECK(r2.partition == zero_based({{1, 5, 9}, {2, 6, 10}, {3}, {4}, {7}, {8}}));

  const auto id = rff(Spectrum::flat(3, Rational(1)), 3);
  CHECK(id.partition == Groups{{0, 1, 2}});

  // bucket count matches the largest row support of the underlying frame
  for (std::size_t m = 2; m <= 5; ++m) {
    for (std::size_t n = 2 * m; n <= 14; ++n) {
      const auto r = rff(Spectrum::flat(m, Rational(n, m)), n);
      std::size_t widest = 0;
      for (std::size_t row = 0; row < m; ++row) {
        std::size_t count = 0;
        for (std::size_t c = 0; c < n; ++c) count += !entry_is_zero(r.generator.at(row, c));
        widest = std::max(widest, count);
      }
      CHECK(r.partition.size() == widest);
      CHECK(fusion_ok(r, st_test::repeat(Rational(n, m), m)));
    }
  }
}

TEST_CASE("unit weight fusion frames with prescribed dimensions") {
  const Spectrum flat = Spectrum::flat(4, Rational(11, 4));
  const auto u = uff(flat, {3, 3, 2, 1, 1, 1});
  CHECK(u.frame.partition == zero_based({{1, 5, 8}, {2, 6, 11}, {3, 9}, {4}, {7}, {10}}));
  CHECK(fusion_ok(u.frame, st_test::repeat(Rational(11, 4), 4)));
  CHECK(u.deficit_trace.back() == 0);
  for (std::size_t i = 1; i < u.deficit_trace.size(); ++i) CHECK(u.deficit_trace[i] < u.deficit_trace[i - 1]);

  const auto same = uff(flat, {4, 2, 2, 2, 1});
  CHECK(same.deficit_trace == std::vector<std::size_t>{0});
  CHECK(same.frame == rff(flat, 11));

  CHECK(kind_of([] { uff(Spectrum::flat(6, Rational(11, 6)), {4, 2, 2, 2, 1}); }) == ErrorKind::Infeasible);
  CHECK(kind_of([&] { uff(flat, {5, 2, 2, 1, 1}); }) == ErrorKind::Infeasible);
  CHECK_THROWS_AS(uff(flat, {3, 3, 2, 1, 1}), Error);
}

TEST_CASE("tight unit weight feasibility") {
  CHECK(tight_uff_feasible(4, 11, {3, 3, 2, 1, 1, 1}));
  CHECK_FALSE(tight_uff_feasible(4, 11, {5, 2, 2, 1, 1}));
  CHECK(tight_uff_feasible(4, 11, {4, 2, 2, 2, 1}));
  CHECK(kind_of([] { tight_uff_feasible(4, 7, {4, 3}); }) == ErrorKind::OutOfRange);
  // agrees with majorization by the reference dimensions
  for (std::size_t m = 2; m <= 3; ++m) {
    for (std::size_t n = 2 * m; n <= 9; ++n) {
      const auto ref = rff(Spectrum::flat(m, Rational(n, m)), n).dims;
      for (std::size_t first = 1; first <= n; ++first) {
        std::vector<std::size_t> dims{first};
        std::size_t rest = n - first;
        while (rest > 0) {
          const std::size_t step = std::min(rest, std::max<std::size_t>(1, first / 2));
          dims.push_back(step);
          rest -= step;
        }
        std::sort(dims.rbegin(), dims.rend());
        CHECK(tight_uff_feasible(m, n, dims) == majorized_by(ref, dims));
      }
    }
  }
}

TEST_CASE("weighted fusion frames") {
  const auto w = weighted_fusion(rationals({"1", "1", "1", "1", "2", "2", "3", "3", "4"}), std::vector<std::size_t>(9, 2),
                                 Spectrum(rationals({"7", "7", "7", "7", "8"})));
  CHECK(w.generator == matrix(st_test::golden::weighted_5_18));
  CHECK(fusion_ok(w, rationals({"7", "7", "7", "7", "8"})));

  const auto small = weighted_fusion(rationals({"2", "1"}), {2, 1}, Spectrum(rationals({"2", "3"})));
  CHECK(small.generator == matrix("s2 0 0; 0 1 s2"));
  CHECK(small.partition == Groups{{0, 2}, {1}});
  CHECK(fusion_ok(small, rationals({"2", "3"})));

  // unit weights agree with the unweighted constructions
  const auto unit = weighted_fusion(st_test::repeat(Rational(1), 6), {3, 3, 2, 1, 1, 1}, Spectrum::flat(4, Rational(11, 4)));
  const auto ref = uff(Spectrum::flat(4, Rational(11, 4)), {3, 3, 2, 1, 1, 1}).frame;
  CHECK(unit.dims == ref.dims);
  CHECK(unit.weights_sq == ref.weights_sq);
  CHECK(verify_fusion(unit, Spectrum::flat(4, Rational(11, 4))).spectrum_matches == std::optional<bool>(true));
  CHECK(fusion_ok(unit, st_test::repeat(Rational(11, 4), 4)));

  const auto rr = weighted_fusion(st_test::repeat(Rational(1), 2), {2, 2}, Spectrum(rationals({"2", "2"})));
  CHECK(rr.dims == sffr(Spectrum(rationals({"2", "2"})), 2, 2).dims);
  CHECK(fusion_ok(rr, rationals({"2", "2"})));

  CHECK_THROWS_AS(weighted_fusion(rationals({"1"}), {2}, Spectrum(rationals({"1", "3"}))), Error);
}

TEST_CASE("extension to a tight fusion frame") {
  const Spectrum lambda = Spectrum::flat(4, Rational(5, 2));
  const FusionFrame base = sffr(lambda, 5, 2);
  const TightExtension e = extend_to_tight(base, lambda);
  CHECK(e.bound == 6);
  CHECK(e.total_subspaces == 12);
  CHECK(e.residual_spectrum == Spectrum::flat(4, Rational(7, 2)));
  CHECK(e.complement.partition.size() == 7);
  const auto report = verify_fusion(e.combined);
  CHECK(report.is_fusion_frame);
  CHECK(report.is_tight);
  CHECK(report.tight_bound == std::optional<RadicalScalar>(RadicalScalar(Rational(6))));
  for (std::size_t d : e.combined.dims) CHECK(d == 2);

  CHECK_THROWS_AS(extend_to_tight(sffr(Spectrum(rationals({"2", "2"})), 2, 2), Spectrum(rationals({"2", "2"}))), Error);
}

TEST_CASE("tight extension bound scan for a non-flat spectrum") {
  // Scans A = ceil(lambda_1 + 2) upward against the three defining conditions.
  const auto lambda = rationals({"13/3", "10/3", "7/3"});
  const std::size_t m = 3, k = 2, d = 5;
  long long a = 0, n0 = 0;
  for (long long cand = 1; cand < 100; ++cand) {
    if (Rational(cand) < lambda.front() + 2) continue;
    if ((cand * static_cast<long long>(m)) % static_cast<long long>(k) != 0) continue;
    const long long n = cand * static_cast<long long>(m) / static_cast<long long>(k);
    if (Rational(cand) <= lambda.back() + Rational(n) - Rational(static_cast<long long>(d) + 3)) {
      a = cand;
      n0 = n;
      break;
    }
  }
  CHECK(a == 12);
  CHECK(n0 == 18);
  std::vector<Rational> residual;
  for (const auto& l : lambda) residual.push_back(Rational(a) - l);
  CHECK(residual == rationals({"23/3", "26/3", "29/3"}));

  // the round-robin grouping over this spectrum is not a fusion frame, so
  // there is nothing valid to extend
  FusionFrame grouped;
  grouped.m = 3;
  grouped.generator = sfr(Spectrum(lambda), 10);
  grouped.partition = sffr_grouping(5, 2);
  grouped.dims = std::vector<std::size_t>(5, 2);
  grouped.weights_sq = st_test::repeat(Rational(1), 5);
  CHECK_FALSE(verify_fusion(grouped).is_fusion_frame);
  CHECK_THROWS_AS(extend_to_tight(grouped, Spectrum(lambda)), Error);
}

TEST_CASE("spatial complement bounds") {
  FusionFrame five;
  five.weights_sq = st_test::repeat(Rational(1), 5);
  const auto b = spatial_complement_bounds(five, Rational(10, 3), Rational(10, 3));
  CHECK(b.feasible);
  CHECK(b.lower == Rational(5, 3));
  CHECK(b.upper == Rational(5, 3));

  CHECK_FALSE(spatial_complement_bounds(five, Rational(2), Rational(5)).feasible);

  FusionFrame whole;
  whole.m = 2;
  whole.generator = matrix("1 0; 0 1");
  whole.partition = {{0, 1}};
  whole.dims = {2};
  whole.weights_sq = {1};
  const auto v = verify_fusion(whole);
  REQUIRE(v.lower_bound.has_value());
  CHECK_FALSE(spatial_complement_bounds(whole, *v.lower_bound, *v.upper_bound).feasible);
  CHECK_THROWS_AS(spatial_complement_bounds(five, Rational(3), Rational(2)), Error);
}

TEST_CASE("Naimark complement of a Parseval fusion frame") {
  FusionFrame lines;
  lines.m = 1;
  lines.generator = matrix("s1/2 s1/2");
  lines.partition = {{0}, {1}};
  lines.dims = {1, 1};
  lines.weights_sq = {Rational(1, 2), Rational(1, 2)};
  const NumericFusionFrame c = naimark_complement_fusion(lines);
  CHECK(c.m == 1);
  CHECK(c.dims == std::vector<std::size_t>{1, 1});
  CHECK(c.weights_sq == rationals({"1/2", "1/2"}));
  CHECK(c.partition == lines.partition);
  CHECK(std::abs((c.generator * c.generator.transpose())(0, 0) - 1.0) < 1e-10);
  CHECK(std::abs(c.generator.col(0).squaredNorm() - 0.5) < 1e-10);

  FusionFrame basis;
  basis.m = 2;
  basis.generator = matrix("1 0; 0 1");
  basis.partition = {{0}, {1}};
  basis.dims = {1, 1};
  basis.weights_sq = {1, 1};
  CHECK(kind_of([&] { naimark_complement_fusion(basis); }) == ErrorKind::NotApplicable);

  FusionFrame loose = lines;
  loose.generator = matrix("s1/3 s1/3");
  loose.weights_sq = {Rational(1, 3), Rational(1, 3)};
  CHECK(kind_of([&] { naimark_complement_fusion(loose); }) == ErrorKind::NotApplicable);
}
