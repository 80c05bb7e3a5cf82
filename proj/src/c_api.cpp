#include "spectral_tetris/spectral_tetris.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "spectral_tetris/construct.hpp"
#include "spectral_tetris/errors.hpp"
#include "spectral_tetris/fusion.hpp"
#include "spectral_tetris/serialize.hpp"
#include "spectral_tetris/verify.hpp"

using namespace spectral_tetris;

struct st_frame {
  std::variant<SynthesisMatrix, Eigen::MatrixXd> matrix;
  bool fusion = false;
  std::vector<std::vector<std::size_t>> partition;
  std::vector<Rational> weights_sq;

  bool exact() const { return std::holds_alternative<SynthesisMatrix>(matrix); }
  const SynthesisMatrix& synthesis() const { return std::get<SynthesisMatrix>(matrix); }

  FusionFrame as_fusion() const {
    FusionFrame f;
    f.generator = synthesis();
    f.m = f.generator.rows();
    f.partition = partition;
    f.weights_sq = weights_sq;
    for (const auto& g : partition) f.dims.push_back(g.size());
    return f;
  }
};

namespace {

thread_local std::string g_last_error;

st_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainError: return ST_ERR_DOMAIN;
    case ErrorKind::InvalidPartition: return ST_ERR_INVALID_PARTITION;
    case ErrorKind::SearchBudgetExceeded: return ST_ERR_SEARCH_BUDGET;
    case ErrorKind::Underdetermined: return ST_ERR_UNDERDETERMINED;
    case ErrorKind::OutOfRange: return ST_ERR_OUT_OF_RANGE;
    case ErrorKind::SumMismatch: return ST_ERR_SUM_MISMATCH;
    case ErrorKind::BlockDomain: return ST_ERR_BLOCK_DOMAIN;
    case ErrorKind::NoSuchBlock: return ST_ERR_NO_SUCH_BLOCK;
    case ErrorKind::Infeasible: return ST_ERR_INFEASIBLE;
    case ErrorKind::DftPathStuck: return ST_ERR_DFT_PATH_STUCK;
    case ErrorKind::NotSTReady: return ST_ERR_NOT_ST_READY;
    case ErrorKind::ReorderFailed: return ST_ERR_REORDER_FAILED;
    case ErrorKind::SpectrumMismatch: return ST_ERR_SPECTRUM_MISMATCH;
    case ErrorKind::NotParseval: return ST_ERR_NOT_PARSEVAL;
    case ErrorKind::NotApplicable: return ST_ERR_NOT_APPLICABLE;
    case ErrorKind::NoExtension: return ST_ERR_NO_EXTENSION;
    case ErrorKind::InvalidArgument: return ST_ERR_INVALID_ARGUMENT;
    case ErrorKind::ParseError: return ST_ERR_PARSE;
    case ErrorKind::Internal: return ST_ERR_INTERNAL;
  }
  return ST_ERR_INTERNAL;
}

template <class Fn>
st_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return ST_OK;
  } catch (const Error& e) {
    g_last_error = std::string(to_string(e.kind())) + ": " + e.what();
    return status_of(e.kind());
  } catch (const nlohmann::ordered_json::exception& e) {
    g_last_error = std::string("ParseError: ") + e.what();
    return ST_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "Internal: out of memory";
    return ST_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string("Internal: ") + e.what();
    return ST_ERR_INTERNAL;
  }
}

char* duplicate(const std::string& text) {
  char* copy = static_cast<char*>(std::malloc(text.size() + 1));
  if (copy == nullptr) throw std::bad_alloc();
  std::memcpy(copy, text.c_str(), text.size() + 1);
  return copy;
}

void require(const void* pointer, const char* name) {
  if (pointer == nullptr) fail(ErrorKind::InvalidArgument, std::string(name) + " must not be null");
}

std::vector<Rational> rationals(const char* text, const char* name) {
  require(text, name);
  return parse_rational_list(text);
}

std::vector<std::size_t> counts(const char* text, const char* name) {
  std::vector<std::size_t> values;
  for (const auto& r : rationals(text, name)) {
    if (boost::multiprecision::denominator(r) != 1 || r < 0) {
      fail(ErrorKind::ParseError, std::string(name) + " must list nonnegative integers");
    }
    values.push_back(boost::multiprecision::numerator(r).convert_to<std::size_t>());
  }
  return values;
}

void emit(st_frame** out, SynthesisMatrix matrix) {
  require(out, "out");
  *out = new st_frame{std::move(matrix), false, {}, {}};
}

void emit(st_frame** out, const FusionFrame& frame) {
  require(out, "out");
  *out = new st_frame{frame.generator, true, frame.partition, frame.weights_sq};
}

}  // namespace

extern "C" {

const char* st_last_error(void) { return g_last_error.c_str(); }

const char* st_status_name(st_status status) {
  switch (status) {
    case ST_OK: return "OK";
    case ST_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case ST_ERR_PARSE: return "ParseError";
    case ST_ERR_IO: return "IoError";
    case ST_ERR_DOMAIN: return "DomainError";
    case ST_ERR_INVALID_PARTITION: return "InvalidPartition";
    case ST_ERR_SEARCH_BUDGET: return "SearchBudgetExceeded";
    case ST_ERR_UNDERDETERMINED: return "Underdetermined";
    case ST_ERR_OUT_OF_RANGE: return "OutOfRange";
    case ST_ERR_SUM_MISMATCH: return "SumMismatch";
    case ST_ERR_BLOCK_DOMAIN: return "BlockDomain";
    case ST_ERR_NO_SUCH_BLOCK: return "NoSuchBlock";
    case ST_ERR_INFEASIBLE: return "Infeasible";
    case ST_ERR_DFT_PATH_STUCK: return "DftPathStuck";
    case ST_ERR_NOT_ST_READY: return "NotSTReady";
    case ST_ERR_REORDER_FAILED: return "ReorderFailed";
    case ST_ERR_SPECTRUM_MISMATCH: return "SpectrumMismatch";
    case ST_ERR_NOT_PARSEVAL: return "NotParseval";
    case ST_ERR_NOT_APPLICABLE: return "NotApplicable";
    case ST_ERR_NO_EXTENSION: return "NoExtension";
    case ST_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

int st_status_is_infeasibility(st_status status) {
  switch (status) {
    case ST_ERR_UNDERDETERMINED:
    case ST_ERR_SUM_MISMATCH:
    case ST_ERR_INFEASIBLE:
    case ST_ERR_DFT_PATH_STUCK:
    case ST_ERR_NOT_ST_READY:
    case ST_ERR_REORDER_FAILED:
    case ST_ERR_SPECTRUM_MISMATCH:
    case ST_ERR_NOT_PARSEVAL:
    case ST_ERR_NOT_APPLICABLE:
    case ST_ERR_NO_EXTENSION:
    case ST_ERR_SEARCH_BUDGET:
    case ST_ERR_NO_SUCH_BLOCK:
    case ST_ERR_BLOCK_DOMAIN:
    case ST_ERR_OUT_OF_RANGE:
    case ST_ERR_DOMAIN:
    case ST_ERR_INVALID_PARTITION:
      return 1;
    default:
      return 0;
  }
}

void st_frame_free(st_frame* frame) { delete frame; }
void st_string_free(char* text) { std::free(text); }

st_status st_frame_shape(const st_frame* frame, size_t* rows, size_t* cols) {
  return guarded([&] {
    require(frame, "frame");
    require(rows, "rows");
    require(cols, "cols");
    if (frame->exact()) {
      *rows = frame->synthesis().rows();
      *cols = frame->synthesis().cols();
    } else {
      const auto& dense = std::get<Eigen::MatrixXd>(frame->matrix);
      *rows = static_cast<size_t>(dense.rows());
      *cols = static_cast<size_t>(dense.cols());
    }
  });
}

int st_frame_is_fusion(const st_frame* frame) { return frame != nullptr && frame->fusion ? 1 : 0; }
int st_frame_is_exact(const st_frame* frame) { return frame != nullptr && frame->exact() ? 1 : 0; }

st_status st_untf_feasible(size_t m, size_t n, int* feasible) {
  return guarded([&] {
    require(feasible, "feasible");
    *feasible = untf_feasible(m, n) ? 1 : 0;
  });
}

st_status st_feasibility_grid(size_t max_dim, size_t max_count, char** csv) {
  return guarded([&] {
    require(csv, "csv");
    if (max_dim == 0) fail(ErrorKind::DomainError, "max_dim must be positive");
    std::ostringstream out;
    out << "m,n,lambda,untf_feasible,floor_condition\n";
    for (size_t m = 1; m <= max_dim; ++m) {
      for (size_t n = m; n <= max_count; ++n) {
        out << m << ',' << n << ',' << to_string(Rational(static_cast<long long>(n), static_cast<long long>(m))) << ','
            << (untf_feasible(m, n) ? "true" : "false") << ',';
        if (m < n && n < 2 * m) out << (untf_floor_condition(m, n) ? "true" : "false");
        out << '\n';
      }
    }
    *csv = duplicate(out.str());
  });
}

st_status st_untf(size_t m, size_t n, st_frame** out) {
  return guarded([&] { emit(out, construct_untf(m, n)); });
}

st_status st_untf_dft(size_t m, size_t n, st_frame** out) {
  return guarded([&] { emit(out, construct_untf_dft(m, n)); });
}

st_status st_sfr(const char* spectrum, size_t n, st_frame** out) {
  return guarded([&] { emit(out, sfr(Spectrum(rationals(spectrum, "spectrum")), n)); });
}

st_status st_pnstc(const char* norms_sq, const char* spectrum, st_frame** out) {
  return guarded([&] {
    emit(out, pnstc(NormSequence(rationals(norms_sq, "norms_sq")), Spectrum(rationals(spectrum, "spectrum"))));
  });
}

st_status st_pnstc_str(const char* norms_sq, const char* spectrum, st_frame** out, char** swaps_json) {
  return guarded([&] {
    auto result = pnstc_str(NormSequence(rationals(norms_sq, "norms_sq")), Spectrum(rationals(spectrum, "spectrum")));
    if (swaps_json != nullptr) {
      nlohmann::ordered_json swaps = nlohmann::ordered_json::array();
      for (const auto& s : result.swaps) swaps.push_back({s.first, s.second});
      *swaps_json = duplicate(swaps.dump());
    }
    emit(out, std::move(result.matrix));
  });
}

st_status st_equal_norm(const char* spectrum, size_t n, st_frame** out) {
  return guarded([&] { emit(out, equal_norm_frame(Spectrum(rationals(spectrum, "spectrum")), n)); });
}

st_status st_equal_norm_scan(const char* spectrum, size_t n_min, size_t n_max, st_frame** out, size_t* n_used) {
  return guarded([&] {
    const Spectrum s(rationals(spectrum, "spectrum"));
    if (n_min == 0 || n_max < n_min) fail(ErrorKind::DomainError, "scan range must satisfy 1 <= n_min <= n_max");
    for (size_t n = n_min; n <= n_max; ++n) {
      try {
        SynthesisMatrix matrix = equal_norm_frame(s, n);
        if (n_used != nullptr) *n_used = n;
        emit(out, std::move(matrix));
        return;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Infeasible && e.kind() != ErrorKind::NotSTReady) throw;
      }
    }
    fail(ErrorKind::Infeasible, "no equal norm tiling for " + std::to_string(n_min) + " <= N <= " + std::to_string(n_max));
  });
}

st_status st_naimark(const st_frame* frame, int normalize, st_frame** out) {
  return guarded([&] {
    require(frame, "frame");
    require(out, "out");
    if (!frame->exact()) {
      if (frame->fusion) fail(ErrorKind::NotApplicable, "fusion completion needs an exact input");
      *out = new st_frame{naimark_complement(std::get<Eigen::MatrixXd>(frame->matrix)), false, {}, {}};
      return;
    }
    SynthesisMatrix matrix = frame->synthesis();
    std::vector<Rational> weights = frame->weights_sq;
    if (normalize != 0) {
      const VerificationReport report = verify_frame(matrix);
      const auto bound = report.tight_bound ? report.tight_bound->as_rational() : std::nullopt;
      if (!report.is_tight || !bound) fail(ErrorKind::NotParseval, "only tight frames with rational bound can be normalized");
      matrix = matrix.scaled(sqrt_of(1 / *bound));
      for (auto& w : weights) w /= *bound;
    }
    if (frame->fusion) {
      FusionFrame f = frame->as_fusion();
      f.generator = matrix;
      f.weights_sq = weights;
      const NumericFusionFrame c = naimark_complement_fusion(f);
      *out = new st_frame{c.generator, true, c.partition, c.weights_sq};
    } else {
      *out = new st_frame{naimark_complement(matrix), false, {}, {}};
    }
  });
}

st_status st_sffr(const char* spectrum, size_t d, size_t k, st_frame** out) {
  return guarded([&] { emit(out, sffr(Spectrum(rationals(spectrum, "spectrum")), d, k)); });
}

st_status st_rff(const char* spectrum, size_t n, st_frame** out) {
  return guarded([&] { emit(out, rff(Spectrum(rationals(spectrum, "spectrum")), n)); });
}

st_status st_uff(const char* spectrum, const char* dims, st_frame** out) {
  return guarded([&] { emit(out, uff(Spectrum(rationals(spectrum, "spectrum")), counts(dims, "dims")).frame); });
}

st_status st_weighted_fusion(const char* weights_sq, const char* dims, const char* spectrum, st_frame** out) {
  return guarded([&] {
    emit(out, weighted_fusion(rationals(weights_sq, "weights_sq"), counts(dims, "dims"),
                              Spectrum(rationals(spectrum, "spectrum"))));
  });
}

st_status st_extend_tight(const st_frame* fusion, const char* spectrum, st_frame** combined, char** info_json) {
  return guarded([&] {
    require(fusion, "fusion");
    if (!fusion->fusion || !fusion->exact()) fail(ErrorKind::NotApplicable, "input must be an exact fusion frame");
    const TightExtension ext = extend_to_tight(fusion->as_fusion(), Spectrum(rationals(spectrum, "spectrum")));
    if (info_json != nullptr) {
      nlohmann::ordered_json info{{"bound", to_string(ext.bound)},
                          {"total_subspaces", ext.total_subspaces},
                          {"added_subspaces", ext.complement.subspace_count()},
                          {"construction", ext.construction}};
      nlohmann::ordered_json residual = nlohmann::ordered_json::array();
      for (const auto& r : ext.residual_spectrum.values()) residual.push_back(to_string(r));
      info["residual_spectrum"] = residual;
      *info_json = duplicate(info.dump());
    }
    emit(combined, ext.combined);
  });
}

st_status st_frame_from_json(const char* text, st_frame** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    const nlohmann::ordered_json doc = nlohmann::ordered_json::parse(text);
    const bool fusion = doc.is_object() && doc.contains("partition");
    if (doc.is_object() && doc.value("numeric", false)) {
      auto* frame = new st_frame{numeric_from_json(doc), fusion, {}, {}};
      if (fusion) {
        try {
          const FusionFrame shape = [&] {
            nlohmann::ordered_json stripped = doc;
            stripped["numeric"] = false;
            stripped["entries"] = nlohmann::ordered_json::array();
            return fusion_from_json(stripped);
          }();
          frame->partition = shape.partition;
          frame->weights_sq = shape.weights_sq;
        } catch (...) {
          delete frame;
          throw;
        }
      }
      *out = frame;
    } else if (fusion) {
      emit(out, fusion_from_json(doc));
    } else {
      emit(out, matrix_from_json(doc));
    }
  });
}

st_status st_frame_to_json(const st_frame* frame, char** json) {
  return guarded([&] {
    require(frame, "frame");
    require(json, "json");
    nlohmann::ordered_json doc;
    if (frame->exact()) {
      doc = frame->fusion ? fusion_to_json(frame->as_fusion()) : matrix_to_json(frame->synthesis());
    } else {
      const auto& dense = std::get<Eigen::MatrixXd>(frame->matrix);
      if (frame->fusion) {
        NumericFusionFrame f{static_cast<std::size_t>(dense.rows()), frame->weights_sq, {}, dense, frame->partition};
        doc = numeric_fusion_to_json(f);
      } else {
        doc = numeric_to_json(dense);
      }
    }
    *json = duplicate(doc.dump());
  });
}

st_status st_frame_to_csv(const st_frame* frame, char** csv) {
  return guarded([&] {
    require(frame, "frame");
    require(csv, "csv");
    *csv = duplicate(frame->exact() ? matrix_to_csv(frame->synthesis())
                                    : numeric_to_csv(std::get<Eigen::MatrixXd>(frame->matrix)));
  });
}

st_status st_frame_verify(const st_frame* frame, const char* spectrum, const char* norms_sq, char** report_json) {
  return guarded([&] {
    require(frame, "frame");
    require(report_json, "report_json");
    std::optional<Spectrum> s;
    std::optional<NormSequence> a;
    if (spectrum != nullptr) s = Spectrum(parse_rational_list(spectrum));
    if (norms_sq != nullptr) a = NormSequence(parse_rational_list(norms_sq));
    nlohmann::ordered_json doc;
    if (!frame->exact()) {
      doc = report_to_json(verify_numeric(std::get<Eigen::MatrixXd>(frame->matrix)));
    } else if (frame->fusion) {
      doc = fusion_report_to_json(verify_fusion(frame->as_fusion(), s));
      if (a) doc["norms_match"] = verify_frame(frame->synthesis(), s, a).norms_match.value_or(false);
    } else {
      doc = report_to_json(verify_frame(frame->synthesis(), s, a));
    }
    *report_json = duplicate(doc.dump());
  });
}

}  // extern "C"
