// Command line front end. Talks to the toolkit exclusively through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <unistd.h>

#include "spectral_tetris/spectral_tetris.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

struct FrameDeleter {
  void operator()(st_frame* f) const { st_frame_free(f); }
};
using FramePtr = std::unique_ptr<st_frame, FrameDeleter>;

struct StringDeleter {
  void operator()(char* s) const { st_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

class CliFailure : public std::runtime_error {
 public:
  CliFailure(int code, const std::string& message) : std::runtime_error(message), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

void check(st_status status) {
  if (status == ST_OK) return;
  const int code = st_status_is_infeasibility(status) ? kExitInfeasible : kExitUsage;
  throw CliFailure(code, st_last_error());
}

std::string take(char* raw) {
  StringPtr owned(raw);
  return owned ? std::string(owned.get()) : std::string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure(kExitUsage, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Writes through a sibling temporary file so a failed run never leaves a
// truncated artifact behind.
void write_atomically(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  const fs::path target(path);
  const fs::path temp = target.parent_path() / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw CliFailure(kExitUsage, "cannot write " + temp.string());
    out << content;
    if (!content.empty() && content.back() != '\n') out << '\n';
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw CliFailure(kExitUsage, "write failed for " + temp.string());
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw CliFailure(kExitUsage, "cannot move output into place at " + path);
  }
}

FramePtr load_frame(const std::string& path) {
  st_frame* raw = nullptr;
  check(st_frame_from_json(read_file(path).c_str(), &raw));
  return FramePtr(raw);
}

struct Options {
  std::string format = "json";
  std::string output;
};

std::string default_output(const std::string& command, const std::string& format) {
  return command + "." + format;
}

// Serializes the frame, writes it, then prints the verification report.
void finish(const std::string& command, const Options& options, const st_frame* frame,
            const char* spectrum = nullptr, const char* norms_sq = nullptr, const std::string& extra = {}) {
  char* raw = nullptr;
  check(options.format == "csv" ? st_frame_to_csv(frame, &raw) : st_frame_to_json(frame, &raw));
  const std::string body = take(raw);
  const std::string path = options.output.empty() ? default_output(command, options.format) : options.output;
  write_atomically(path, body);
  check(st_frame_verify(frame, spectrum, norms_sq, &raw));
  std::ostream& report_stream = path == "-" ? std::cerr : std::cout;
  report_stream << take(raw) << '\n';
  if (!extra.empty()) report_stream << extra << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral tetris frame and fusion frame constructions"};
  app.require_subcommand(1);
  Options options;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", options.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--output", options.output, "Output path; '-' writes to stdout");
  };

  std::size_t dim = 0;
  std::size_t count = 0;
  std::size_t min_count = 0;
  std::size_t max_count = 0;
  std::size_t max_dim = 0;
  std::size_t subspaces = 0;
  std::size_t subspace_dim = 0;
  std::string spectrum;
  std::string norms_sq;
  std::string dims;
  std::string weights_sq;
  std::string input;
  bool normalize = false;

  auto* untf = app.add_subcommand("untf", "Unit norm tight frame");
  untf->add_option("--dim,-m", dim, "Dimension M")->required();
  untf->add_option("--count,-n", count, "Number of vectors N")->required();
  add_common(untf);

  auto* untf_dft = app.add_subcommand("untf-dft", "Unit norm tight frame from Fourier blocks");
  untf_dft->add_option("--dim,-m", dim, "Dimension M")->required();
  untf_dft->add_option("--count,-n", count, "Number of vectors N")->required();
  add_common(untf_dft);

  auto* sfr = app.add_subcommand("sfr", "Unit norm frame with prescribed spectrum");
  sfr->add_option("--spectrum", spectrum, "Eigenvalues, e.g. 13/3,10/3,7/3")->required();
  sfr->add_option("--count,-n", count, "Number of vectors N")->required();
  add_common(sfr);

  auto* pn = app.add_subcommand("pnstc", "Frame with prescribed norms and spectrum");
  pn->add_option("--norms-sq", norms_sq, "Squared norms")->required();
  pn->add_option("--spectrum", spectrum, "Eigenvalues")->required();
  add_common(pn);

  auto* pn_str = app.add_subcommand("pnstc-str", "Prescribed norms with neighbour re-ordering");
  pn_str->add_option("--norms-sq", norms_sq, "Squared norms")->required();
  pn_str->add_option("--spectrum", spectrum, "Eigenvalues")->required();
  add_common(pn_str);

  auto* equal = app.add_subcommand("equal-norm", "Equal norm frame with prescribed spectrum");
  equal->add_option("--spectrum", spectrum, "Eigenvalues")->required();
  equal->add_option("--count,-n", count, "Number of vectors N");
  equal->add_option("--min-count", min_count, "Scan start for N");
  equal->add_option("--max-count", max_count, "Scan end for N");
  add_common(equal);

  auto* naimark = app.add_subcommand("naimark", "Orthogonal completion of a Parseval (fusion) frame");
  naimark->add_option("--input,-i", input, "Frame JSON")->required();
  naimark->add_flag("--normalize", normalize, "Rescale a tight input to Parseval first");
  add_common(naimark);

  auto* sffr = app.add_subcommand("sffr", "Unit weight fusion frame from the round-robin grouping");
  sffr->add_option("--spectrum", spectrum, "Eigenvalues, non-increasing")->required();
  sffr->add_option("--subspaces,-d", subspaces, "Number of subspaces D")->required();
  sffr->add_option("--subspace-dim,-k", subspace_dim, "Dimension k of every subspace")->required();
  add_common(sffr);

  auto* rff = app.add_subcommand("rff", "Reference fusion frame by first-fit packing");
  rff->add_option("--spectrum", spectrum, "Eigenvalues")->required();
  rff->add_option("--count,-n", count, "Number of vectors N")->required();
  add_common(rff);

  auto* uff = app.add_subcommand("uff", "Unit weight fusion frame with prescribed dimensions");
  uff->add_option("--spectrum", spectrum, "Eigenvalues")->required();
  uff->add_option("--dims", dims, "Subspace dimensions, non-increasing")->required();
  add_common(uff);

  auto* weighted = app.add_subcommand("weighted-fusion", "Weighted fusion frame");
  weighted->add_option("--weights-sq", weights_sq, "Squared weights, one per subspace")->required();
  weighted->add_option("--dims", dims, "Subspace dimensions")->required();
  weighted->add_option("--spectrum", spectrum, "Eigenvalues")->required();
  add_common(weighted);

  auto* extend = app.add_subcommand("extend-tight", "Extend a fusion frame to a tight one");
  extend->add_option("--input,-i", input, "Fusion frame JSON")->required();
  extend->add_option("--spectrum", spectrum, "Eigenvalues of the input, non-increasing")->required();
  add_common(extend);

  auto* verify = app.add_subcommand("verify", "Verify a frame file");
  verify->add_option("--input,-i", input, "Frame JSON")->required();
  verify->add_option("--spectrum", spectrum, "Expected eigenvalues");
  verify->add_option("--norms-sq", norms_sq, "Expected squared norms");
  verify->add_option("-o,--output", options.output, "Write the report here as well");

  auto* grid = app.add_subcommand("feasibility-grid", "CSV of unit norm tight frame feasibility");
  grid->add_option("--max-dim", max_dim, "Largest dimension M")->required();
  grid->add_option("--max-count", max_count, "Largest vector count N")->required();
  grid->add_option("-o,--output", options.output, "Output path; '-' writes to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto opt = [](const std::string& s) { return s.empty() ? nullptr : s.c_str(); };

  try {
    st_frame* raw = nullptr;
    if (untf->parsed()) {
      check(st_untf(dim, count, &raw));
      FramePtr f(raw);
      finish("untf", options, f.get());
    } else if (untf_dft->parsed()) {
      check(st_untf_dft(dim, count, &raw));
      FramePtr f(raw);
      finish("untf-dft", options, f.get());
    } else if (sfr->parsed()) {
      check(st_sfr(spectrum.c_str(), count, &raw));
      FramePtr f(raw);
      finish("sfr", options, f.get(), spectrum.c_str());
    } else if (pn->parsed()) {
      check(st_pnstc(norms_sq.c_str(), spectrum.c_str(), &raw));
      FramePtr f(raw);
      finish("pnstc", options, f.get(), spectrum.c_str(), norms_sq.c_str());
    } else if (pn_str->parsed()) {
      char* swaps = nullptr;
      check(st_pnstc_str(norms_sq.c_str(), spectrum.c_str(), &raw, &swaps));
      FramePtr f(raw);
      finish("pnstc-str", options, f.get(), spectrum.c_str(), nullptr, "{\"swaps\":" + take(swaps) + "}");
    } else if (equal->parsed()) {
      if (count != 0) {
        check(st_equal_norm(spectrum.c_str(), count, &raw));
        FramePtr f(raw);
        finish("equal-norm", options, f.get(), spectrum.c_str());
      } else {
        if (min_count == 0 || max_count == 0) throw CliFailure(kExitUsage, "give --count or both --min-count and --max-count");
        std::size_t used = 0;
        check(st_equal_norm_scan(spectrum.c_str(), min_count, max_count, &raw, &used));
        FramePtr f(raw);
        finish("equal-norm", options, f.get(), spectrum.c_str(), nullptr, "{\"count\":" + std::to_string(used) + "}");
      }
    } else if (naimark->parsed()) {
      FramePtr in = load_frame(input);
      check(st_naimark(in.get(), normalize ? 1 : 0, &raw));
      FramePtr f(raw);
      finish("naimark", options, f.get());
    } else if (sffr->parsed()) {
      check(st_sffr(spectrum.c_str(), subspaces, subspace_dim, &raw));
      FramePtr f(raw);
      finish("sffr", options, f.get(), spectrum.c_str());
    } else if (rff->parsed()) {
      check(st_rff(spectrum.c_str(), count, &raw));
      FramePtr f(raw);
      finish("rff", options, f.get(), spectrum.c_str());
    } else if (uff->parsed()) {
      check(st_uff(spectrum.c_str(), dims.c_str(), &raw));
      FramePtr f(raw);
      finish("uff", options, f.get(), spectrum.c_str());
    } else if (weighted->parsed()) {
      check(st_weighted_fusion(weights_sq.c_str(), dims.c_str(), spectrum.c_str(), &raw));
      FramePtr f(raw);
      finish("weighted-fusion", options, f.get(), spectrum.c_str());
    } else if (extend->parsed()) {
      FramePtr in = load_frame(input);
      char* info = nullptr;
      check(st_extend_tight(in.get(), spectrum.c_str(), &raw, &info));
      FramePtr f(raw);
      finish("extend-tight", options, f.get(), nullptr, nullptr, take(info));
    } else if (verify->parsed()) {
      FramePtr in = load_frame(input);
      char* report = nullptr;
      check(st_frame_verify(in.get(), opt(spectrum), opt(norms_sq), &report));
      const std::string text = take(report);
      std::cout << text << '\n';
      if (!options.output.empty() && options.output != "-") write_atomically(options.output, text);
    } else if (grid->parsed()) {
      char* csv = nullptr;
      check(st_feasibility_grid(max_dim, max_count, &csv));
      write_atomically(options.output.empty() ? "feasibility-grid.csv" : options.output, take(csv));
    }
  } catch (const CliFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
