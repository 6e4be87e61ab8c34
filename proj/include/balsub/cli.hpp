#pragma once

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chambers.hpp"
#include "combinatorics.hpp"
#include "construct.hpp"
#include "enumerate.hpp"
#include "graphmap.hpp"
#include "sign.hpp"

namespace balsub::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kSweepHeader = "b,a,c,formula,enumerated,signed_sum,mod4,mod8";

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kNonGeneric = 3,
  kNumericalFailure = 4,
  kTheoremViolation = 5,
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InvalidA:
      return kParseError;
    case ErrorKind::NonGeneric:
    case ErrorKind::NotTransversal:
      return kNonGeneric;
    case ErrorKind::NumericalFailure:
    case ErrorKind::SamplingFailure:
      return kNumericalFailure;
  }
  return kNumericalFailure;
}

// ---------------------------------------------------------------------------
// ConfigFile
// ---------------------------------------------------------------------------

struct ConfigFile {
  std::size_t b = 0;
  std::array<Mat, 4> bases;  // 2b x b each
  Tolerances tolerances;     // defaults overridden by the file's "tolerances" object
  bool has_tolerances = false;

  Configuration configuration() const { return Configuration::from_bases(bases, tolerances); }
};

namespace detail {

[[noreturn]] inline void field_error(const std::string& source, const std::string& pointer, const std::string& what) {
  fail(ErrorKind::InvalidInput, source + ": field " + (pointer.empty() ? "/" : pointer) + ": " + what);
}

inline double positive_number(const json& j, const std::string& source, const std::string& pointer) {
  if (!j.is_number()) field_error(source, pointer, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v) || v <= 0.0) field_error(source, pointer, "expected a positive finite number");
  return v;
}

}  // namespace detail

/// Parses the ConfigFile JSON text. Syntax errors carry line and column; schema errors
/// carry the JSON pointer of the offending field.
inline ConfigFile parse_config(const std::string& text, const std::string& source = "<config>") {
  using detail::field_error;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidInput, source + ": " + e.what());
  }
  if (!doc.is_object()) field_error(source, "", "expected an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "schema_version" && key != "b" && key != "matrices" && key != "tolerances") {
      field_error(source, "/" + key, "unknown field");
    }
  }

  if (!doc.contains("schema_version")) field_error(source, "/schema_version", "missing");
  if (!doc["schema_version"].is_string() || doc["schema_version"].get<std::string>() != kSchemaVersion) {
    field_error(source, "/schema_version", std::string("expected \"") + kSchemaVersion + "\"");
  }

  if (!doc.contains("b")) field_error(source, "/b", "missing");
  const json& jb = doc["b"];
  if (!jb.is_number_integer() || jb.get<long long>() < 1) field_error(source, "/b", "expected a positive integer");
  if (jb.get<long long>() > 64) field_error(source, "/b", "b > 64 is not supported");
  ConfigFile cfg;
  cfg.b = jb.get<std::size_t>();
  const auto b = static_cast<Eigen::Index>(cfg.b);

  if (!doc.contains("matrices")) field_error(source, "/matrices", "missing");
  const json& jm = doc["matrices"];
  if (!jm.is_array() || jm.size() != 4) field_error(source, "/matrices", "expected an array of 4 matrices");
  for (std::size_t i = 0; i < 4; ++i) {
    const std::string ptr = "/matrices/" + std::to_string(i);
    const json& entries = jm[i];
    const std::size_t expected = 2 * cfg.b * cfg.b;
    if (!entries.is_array() || entries.size() != expected) {
      field_error(source, ptr, "expected " + std::to_string(expected) + " numbers (column-major " +
                                   std::to_string(2 * cfg.b) + "x" + std::to_string(cfg.b) + ")");
    }
    Mat m(2 * b, b);
    for (std::size_t k = 0; k < expected; ++k) {
      const json& v = entries[k];
      if (!v.is_number()) field_error(source, ptr + "/" + std::to_string(k), "expected a number");
      const double x = v.get<double>();
      if (!std::isfinite(x)) field_error(source, ptr + "/" + std::to_string(k), "non-finite value");
      m(static_cast<Eigen::Index>(k) % (2 * b), static_cast<Eigen::Index>(k) / (2 * b)) = x;
    }
    cfg.bases[i] = std::move(m);
  }

  if (doc.contains("tolerances")) {
    const json& jt = doc["tolerances"];
    if (!jt.is_object()) field_error(source, "/tolerances", "expected an object");
    cfg.has_tolerances = true;
    for (const auto& [key, value] : jt.items()) {
      const std::string ptr = "/tolerances/" + key;
      if (key == "rank_rel") {
        cfg.tolerances.rank_rel = detail::positive_number(value, source, ptr);
      } else if (key == "eig_sep_rel") {
        cfg.tolerances.eig_sep_rel = detail::positive_number(value, source, ptr);
      } else if (key == "det_rel") {
        cfg.tolerances.det_rel = detail::positive_number(value, source, ptr);
      } else {
        field_error(source, ptr, "unknown tolerance");
      }
    }
  }

  for (std::size_t i = 0; i < 4; ++i) {
    const std::size_t rank = orthonormalize(cfg.bases[i], cfg.tolerances).dim();
    if (rank != cfg.b) {
      field_error(source, "/matrices/" + std::to_string(i),
                  "columns have rank " + std::to_string(rank) + ", expected " + std::to_string(cfg.b));
    }
  }
  return cfg;
}

inline json tolerances_json(const Tolerances& tol) {
  return json{{"rank_rel", tol.rank_rel}, {"eig_sep_rel", tol.eig_sep_rel}, {"det_rel", tol.det_rel}};
}

inline json config_json(const Configuration& config) {
  json matrices = json::array();
  for (const auto& s : config.spaces()) {
    json flat = json::array();
    const Mat& m = s.basis();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i) flat.push_back(m(i, j));
    matrices.push_back(std::move(flat));
  }
  return json{{"schema_version", kSchemaVersion},
              {"b", config.b()},
              {"matrices", std::move(matrices)},
              {"tolerances", tolerances_json(config.tol())}};
}

// ---------------------------------------------------------------------------
// Spectrum strings: "2,3,1+2i" (reals and μ±νi tokens, one token per conjugate pair)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace detail

inline Spectrum parse_spectrum(const std::string& text) {
  Spectrum s;
  std::size_t start = 0;
  std::size_t index = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view token =
        detail::trim(std::string_view(text).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    const std::string where = "spectrum token " + std::to_string(index + 1) + " \"" + std::string(token) + "\"";
    if (token.empty()) fail(ErrorKind::InvalidInput, where + ": empty");
    if (token.back() == 'i') {
      std::string_view body = token.substr(0, token.size() - 1);
      // The imaginary part starts at the last sign that is not an exponent sign or leading.
      std::size_t split = std::string_view::npos;
      for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
          split = k;
          break;
        }
      }
      double mu = 0.0;
      std::string_view im = body;
      if (split != std::string_view::npos) {
        const auto re = detail::parse_real(body.substr(0, split));
        if (!re) fail(ErrorKind::InvalidInput, where + ": bad real part");
        mu = *re;
        im = body.substr(split);
      }
      double nu = 0.0;
      if (im.empty() || im == "+") {
        nu = 1.0;
      } else if (im == "-") {
        nu = -1.0;
      } else {
        const auto v = detail::parse_real(im);
        if (!v) fail(ErrorKind::InvalidInput, where + ": bad imaginary part");
        nu = *v;
      }
      if (nu == 0.0) fail(ErrorKind::InvalidInput, where + ": imaginary part must be non-zero");
      s.pairs.push_back({mu, std::abs(nu)});
    } else {
      const auto v = detail::parse_real(token);
      if (!v) fail(ErrorKind::InvalidInput, where + ": not a number");
      s.reals.push_back(*v);
    }
    ++index;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  s.canonicalize();
  return s;
}

// ---------------------------------------------------------------------------
// SolutionReport
// ---------------------------------------------------------------------------

inline json spectrum_json(const Spectrum& s) {
  json pairs = json::array();
  for (const auto& p : s.pairs) pairs.push_back(json{{"mu", p.mu}, {"nu", p.nu}});
  return json{{"reals", s.reals}, {"pairs", std::move(pairs)}};
}

inline json chamber_json(const ChamberLabel& label) {
  return json{{"c", label.c},
              {"x", label.x},
              {"y", label.y},
              {"z", label.z},
              {"orientation", label.orientation},
              {"label", label.to_string()}};
}

struct SolutionRow {
  BalancedSolution solution;
  IndexSet index_set;
  int sign_real = 0;
  int sign_splitting = 0;
  int sign_combinatorial = 0;
  double resultant_sylvester = 0.0;
};

struct SolutionReport {
  std::string input_digest;
  std::size_t b = 0;
  std::size_t a = 0;
  Tolerances tolerances;
  ChamberLabel chamber;
  Spectrum eigenvalues;
  std::vector<SolutionRow> rows;
  long long signed_sum = 0;
  BigInt formula_count;
  BigInt expected_signed_sum;

  std::size_t count() const { return rows.size(); }
  bool count_matches_formula() const { return BigInt(count()) == formula_count; }
  bool signed_sum_matches_theorem() const { return BigInt(signed_sum) == expected_signed_sum; }
  bool signs_agree() const {
    for (const auto& r : rows) {
      const int s = to_int(r.solution.sign);
      if (s != r.sign_real || s != r.sign_splitting || s != r.sign_combinatorial) return false;
      if (std::signbit(r.resultant_sylvester) != (s < 0) || r.resultant_sylvester == 0.0) return false;
    }
    return true;
  }
  bool consistent() const { return count_matches_formula() && signed_sum_matches_theorem() && signs_agree(); }
};

/// Throws NonGeneric (with the violated clauses) or NotTransversal before any solving.
inline SolutionReport solve(const Configuration& config, std::size_t a) {
  const SpectralData spectral = phi_of(config);
  if (!spectral.genericity.generic()) fail(ErrorKind::NonGeneric, spectral.genericity.summary());
  const std::size_t b = config.b();
  if (a == 0 || a >= b) fail(ErrorKind::InvalidA, "need 0 < a < b (a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");

  SolutionReport report;
  report.input_digest = digest(config);
  report.b = b;
  report.a = a;
  report.tolerances = config.tol();
  report.chamber = classify(config, spectral);
  report.eigenvalues = spectral.spectrum();
  const int bi = static_cast<int>(b), ai = static_cast<int>(a), ci = static_cast<int>(spectral.pair_count());
  report.formula_count = count_real(bi, ai, ci);
  report.expected_signed_sum = expected_signed_sum(ai, bi);

  const SolutionList list = enumerate_balanced(config, spectral, a);
  for (const auto& sol : list.solutions) {
    SolutionRow row;
    row.solution = sol;
    row.index_set = solution_index_set(sol, spectral);
    row.sign_real = to_int(sign_real(sol.front_eigs.reals, sol.back_eigs.reals, config.tol().eig_sep_rel));
    row.sign_splitting = to_int(sign_by_splitting(sol, spectral));
    row.sign_combinatorial = to_int(sign_of_H(row.index_set, bi, ci));
    const auto [chi_c, chi_d] = char_polys_of_solution(sol, spectral);
    row.resultant_sylvester = resultant(chi_c, chi_d);
    report.rows.push_back(std::move(row));
  }
  report.signed_sum = list.signed_sum();
  return report;
}

inline json basis_json(const Mat& m) {
  json cols = json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    json col = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) col.push_back(m(i, j));
    cols.push_back(std::move(col));
  }
  return cols;
}

inline json to_json(const SolutionReport& r) {
  json solutions = json::array();
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    const SolutionRow& row = r.rows[k];
    const BalancedSolution& s = row.solution;
    solutions.push_back(json{{"index", k},
                             {"blocks", s.selected_blocks},
                             {"index_set", row.index_set},
                             {"front", spectrum_json(s.front_eigs)},
                             {"back", spectrum_json(s.back_eigs)},
                             {"basis", basis_json(s.W.basis())},
                             {"sign", to_int(s.sign)},
                             {"sign_real", row.sign_real},
                             {"sign_splitting", row.sign_splitting},
                             {"sign_combinatorial", row.sign_combinatorial},
                             {"resultant", s.resultant},
                             {"resultant_sylvester", row.resultant_sylvester},
                             {"order_dependent", s.order_dependent}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"input_digest", r.input_digest},
              {"b", r.b},
              {"a", r.a},
              {"tolerances", tolerances_json(r.tolerances)},
              {"chamber", chamber_json(r.chamber)},
              {"eigenvalues", spectrum_json(r.eigenvalues)},
              {"solutions", std::move(solutions)},
              {"count", r.count()},
              {"signed_sum", r.signed_sum},
              {"formula_count", r.formula_count.convert_to<long long>()},
              {"expected_signed_sum", r.expected_signed_sum.convert_to<long long>()},
              {"agreement",
               json{{"count_matches_formula", r.count_matches_formula()},
                    {"signed_sum_matches_theorem", r.signed_sum_matches_theorem()},
                    {"signs_agree", r.signs_agree()}}}};
}

/// RFC 4180: quote fields holding a comma, quote or line break; double embedded quotes.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string format_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline std::string join_spectrum(const Spectrum& s) {
  std::string out;
  for (const Complex& z : s.values()) {
    if (z.imag() < 0.0) continue;
    if (!out.empty()) out += ',';
    out += format_complex(z);
  }
  return out;
}

inline std::string to_csv(const SolutionReport& r) {
  std::string out = "index,blocks,index_set,front,back,sign,resultant,order_dependent\r\n";
  for (std::size_t k = 0; k < r.rows.size(); ++k) {
    const SolutionRow& row = r.rows[k];
    std::string blocks, hset;
    for (std::size_t i : row.solution.selected_blocks) blocks += (blocks.empty() ? "" : " ") + std::to_string(i);
    for (int i : row.index_set) hset += (hset.empty() ? "" : " ") + std::to_string(i);
    out += std::to_string(k) + ',' + csv_field(blocks) + ',' + csv_field(hset) + ',' +
           csv_field(join_spectrum(row.solution.front_eigs)) + ',' + csv_field(join_spectrum(row.solution.back_eigs)) +
           ',' + std::to_string(to_int(row.solution.sign)) + ',' + format_double(row.solution.resultant) + ',' +
           (row.solution.order_dependent ? "true" : "false") + "\r\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

struct SweepRow {
  int b = 0, a = 0, c = 0;
  BigInt formula;
  BigInt enumerated;
  BigInt signed_sum;
  bool geometric = false;  // enumerated and signed_sum come from configurations
  int mod4 = 0, mod8 = 0;
};

struct SweepOptions {
  int b_max = 8;
  int geometric_b_max = 8;
  bool mods = false;
  bool signed_sums = false;
  std::uint64_t seed = 0;
  Tolerances tol;
};

inline std::uint64_t cell_seed(std::uint64_t seed, int b, int c) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

/// Grid over b <= b_max, 0 < a < b, 0 <= c <= b/2 in canonical order. One configuration per
/// (b, c) serves every a on the geometric path; beyond it sol(a, b, c) is enumerated.
inline std::vector<SweepRow> sweep(const SweepOptions& opt) {
  std::vector<SweepRow> rows;
  for (int b = 1; b <= opt.b_max; ++b) {
    std::vector<std::vector<SweepRow>> by_c;
    for (int c = 0; 2 * c <= b; ++c) {
      std::vector<SweepRow> cells;
      const bool geometric = b <= opt.geometric_b_max;
      std::optional<Configuration> config;
      std::optional<SpectralData> spectral;
      if (geometric) {
        std::mt19937_64 rng(cell_seed(opt.seed, b, c));
        const Spectrum spectrum = random_spectrum(static_cast<std::size_t>(b), static_cast<std::size_t>(c), rng);
        config = from_spectrum(spectrum, rng(), opt.tol);
        spectral = phi_of(*config);
      }
      for (int a = 1; a < b; ++a) {
        SweepRow row;
        row.b = b;
        row.a = a;
        row.c = c;
        row.formula = count_real(b, a, c);
        row.geometric = geometric;
        if (geometric) {
          const SolutionList list = enumerate_balanced(*config, *spectral, static_cast<std::size_t>(a));
          row.enumerated = list.count();
          row.signed_sum = list.signed_sum();
        } else {
          const SolSet sol = enumerate_sol(a, b, c);
          row.enumerated = sol.members.size();
          long long sum = 0;
          for (const auto& h : sol.members) sum += to_int(sign_of_H(h, b, c));
          row.signed_sum = sum;
        }
        row.mod4 = static_cast<int>(row.formula % 4);
        row.mod8 = static_cast<int>(row.formula % 8);
        cells.push_back(std::move(row));
      }
      by_c.push_back(std::move(cells));
    }
    // Canonical order: a outer, c inner.
    for (int a = 1; a < b; ++a)
      for (const auto& cells : by_c) rows.push_back(cells[static_cast<std::size_t>(a - 1)]);
  }
  return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kSweepHeader) + "\r\n";
  for (const auto& r : rows) {
    out += std::to_string(r.b) + ',' + std::to_string(r.a) + ',' + std::to_string(r.c) + ',' + r.formula.str() + ',' +
           r.enumerated.str() + ',' + r.signed_sum.str() + ',' + std::to_string(r.mod4) + ',' +
           std::to_string(r.mod8) + "\r\n";
  }
  return out;
}

/// Offending cells, one message each. Counts are always checked; signed sums and modular
/// theorems only when requested.
inline std::vector<std::string> sweep_violations(const std::vector<SweepRow>& rows, const SweepOptions& opt) {
  std::vector<std::string> out;
  auto cell = [](int b, int a, int c) {
    return "(b=" + std::to_string(b) + ",a=" + std::to_string(a) + (c >= 0 ? ",c=" + std::to_string(c) : "") + ")";
  };
  for (const auto& r : rows) {
    if (r.enumerated != r.formula) {
      out.push_back(cell(r.b, r.a, r.c) + " enumerated " + r.enumerated.str() + " != formula " + r.formula.str());
    }
    if (opt.signed_sums) {
      const BigInt expected = expected_signed_sum(r.a, r.b);
      if (r.signed_sum != expected) {
        out.push_back(cell(r.b, r.a, r.c) + " signed sum " + r.signed_sum.str() + " != " + expected.str());
      }
    }
  }
  if (opt.mods) {
    for (int b = 2; b <= opt.b_max; ++b) {
      for (int a = 1; a < b; ++a) {
        for (int k = 1; k <= 2; ++k) {
          const ModReport m = mod_theorem_check(a, b, k);
          if (!m.holds()) {
            out.push_back(cell(b, a, -1) + " mod " + m.modulus.str() + " theorem fails (constant=" +
                          (m.constant ? "true" : "false") + ", matches |C_0|=" + (m.matches_c_empty ? "true" : "false") +
                          ")");
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Determinant identities
// ---------------------------------------------------------------------------

struct DetCaseResult {
  SplitCase split_case;
  std::size_t trials = 0;
  double max_rel_error = 0.0;
  bool pass = false;
};

struct DetVerification {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double det_rel = 0.0;
  std::vector<DetCaseResult> cases;
  double example_22 = 0.0;  // α = 2, β = 3
  double example_42 = 0.0;  // μ = 1, ν = 2, β = 2

  bool pass() const {
    for (const auto& c : cases)
      if (!c.pass) return false;
    return true;
  }
};

inline double splitting_relative_error(const BlockEigen& front, const BlockEigen& back) {
  const double numeric = determinant(splitting_matrix(front, back).matrix);
  const double closed = splitting_determinant_closed_form(front, back);
  return std::abs(numeric - closed) / std::abs(closed);
}

/// Draws block parameters with every front/back eigenvalue difference at least 0.1, so
/// each closed form stays away from zero.
inline DetVerification verify_determinants(std::size_t trials, std::uint64_t seed, const Tolerances& tol = {}) {
  if (trials == 0) fail(ErrorKind::InvalidInput, "trials must be at least 1");
  DetVerification out;
  out.trials = trials;
  out.seed = seed;
  out.det_rel = tol.det_rel;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> real_dist(-5.0, 5.0);
  std::uniform_real_distribution<double> nu_dist(0.1, 5.0);
  auto draw = [&](bool pair) {
    return pair ? BlockEigen::complex(real_dist(rng), nu_dist(rng)) : BlockEigen::real(real_dist(rng));
  };
  auto separated = [](const BlockEigen& f, const BlockEigen& b) {
    const Complex lf = f.is_pair ? f.pair.upper() : Complex(f.alpha, 0.0);
    const Complex lb = b.is_pair ? b.pair.upper() : Complex(b.alpha, 0.0);
    return std::abs(lf - lb) >= 0.1 && std::abs(lf - std::conj(lb)) >= 0.1;
  };
  for (SplitCase sc : {SplitCase::TwoTwo, SplitCase::TwoFour, SplitCase::FourFour, SplitCase::FourTwo}) {
    const bool front_pair = sc == SplitCase::FourFour || sc == SplitCase::FourTwo;
    const bool back_pair = sc == SplitCase::TwoFour || sc == SplitCase::FourFour;
    DetCaseResult r{sc, trials, 0.0, false};
    for (std::size_t t = 0; t < trials; ++t) {
      BlockEigen f = draw(front_pair), b = draw(back_pair);
      while (!separated(f, b)) {
        f = draw(front_pair);
        b = draw(back_pair);
      }
      r.max_rel_error = std::max(r.max_rel_error, splitting_relative_error(f, b));
    }
    r.pass = r.max_rel_error < tol.det_rel;
    out.cases.push_back(r);
  }
  out.example_22 = determinant(splitting_matrix(BlockEigen::real(2.0), BlockEigen::real(3.0)).matrix);
  out.example_42 = determinant(splitting_matrix(BlockEigen::complex(1.0, 2.0), BlockEigen::real(2.0)).matrix);
  return out;
}

inline json to_json(const DetVerification& v) {
  json cases = json::array();
  for (const auto& c : v.cases) {
    cases.push_back(json{{"case", to_string(c.split_case)},
                         {"trials", c.trials},
                         {"max_rel_error", c.max_rel_error},
                         {"pass", c.pass}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"trials", v.trials},
              {"seed", v.seed},
              {"det_rel", v.det_rel},
              {"cases", std::move(cases)},
              {"examples", json{{"2-2 alpha=2 beta=3", v.example_22}, {"4-2 mu=1 nu=2 beta=2", v.example_42}}},
              {"pass", v.pass()}};
}

}  // namespace balsub::cli
