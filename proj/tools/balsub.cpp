#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "balsub/cli.hpp"

namespace {

using namespace balsub;
using balsub::cli::json;

struct Globals {
  std::optional<double> tol_rank, tol_eig, tol_det;

  Tolerances apply(Tolerances t) const {
    if (tol_rank) t.rank_rel = *tol_rank;
    if (tol_eig) t.eig_sep_rel = *tol_eig;
    if (tol_det) t.det_rel = *tol_det;
    t.validate();
    return t;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidInput, "cannot write " + out_path);
  out << text;
}

Configuration load_config(const std::string& path, const Globals& g) {
  const cli::ConfigFile file = cli::parse_config(read_file(path), path);
  return Configuration::from_bases(file.bases, g.apply(file.tolerances));
}

std::uint64_t default_seed() {
  const char* env = std::getenv("BALSUB_SEED");
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used, 0);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidInput, std::string("BALSUB_SEED is not an unsigned integer: ") + env);
  }
}

/// Row-major JSON array of b rows, b numbers each.
Mat parse_phi_file(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
  if (!doc.is_array() || doc.empty()) fail(ErrorKind::InvalidInput, path + ": expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(doc.size());
  Mat phi(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = doc[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      fail(ErrorKind::InvalidInput, path + ": row " + std::to_string(i) + " must hold " + std::to_string(n) + " numbers");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) fail(ErrorKind::InvalidInput, path + ": entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not a number");
      phi(i, j) = v.get<double>();
    }
  }
  return phi;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced subspaces of four-subspace configurations"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol-rank", g.tol_rank, "relative rank tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-eig", g.tol_eig, "relative eigenvalue separation")->check(CLI::PositiveNumber);
  app.add_option("--tol-det", g.tol_det, "relative determinant error bound")->check(CLI::PositiveNumber);

  std::string config_path, out_path, format = "json";
  std::size_t a = 0;
  auto* solve = app.add_subcommand("solve", "enumerate the balanced subspaces of a configuration file");
  solve->add_option("config", config_path, "ConfigFile JSON")->required();
  solve->add_option("a", a, "half the dimension of the subspaces")->required();
  solve->add_option("--out", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  solve->add_option("-o,--output", out_path, "write to a file instead of stdout");

  int b_max = 8;
  bool mods = false, signed_sums = false, allow_large = false;
  std::optional<std::uint64_t> seed;
  std::string sweep_format = "csv";
  auto* sweep = app.add_subcommand("sweep", "check formulas and theorems over a parameter grid");
  sweep->add_option("--b-max", b_max, "largest b")->check(CLI::Range(1, 64));
  sweep->add_flag("--mods", mods, "check the modular theorems");
  sweep->add_flag("--signed-sums", signed_sums, "check the signed-sum theorem");
  sweep->add_flag("--allow-large", allow_large, "lift the b-max <= 12 guard");
  sweep->add_option("--out", sweep_format, "csv")->check(CLI::IsMember({"csv"}));
  sweep->add_option("--seed", seed, "seed (default: BALSUB_SEED or 1)");
  sweep->add_option("-o,--output", out_path, "write to a file instead of stdout");

  std::string spectrum_text, phi_path;
  auto* construct = app.add_subcommand("construct", "write a ConfigFile with a prescribed φ");
  auto* spec_opt = construct->add_option("--spectrum", spectrum_text, "e.g. 2,3,1+2i");
  auto* phi_opt = construct->add_option("--phi", phi_path, "JSON file with φ as an array of rows");
  spec_opt->excludes(phi_opt);
  construct->add_option("--seed", seed, "seed (default: BALSUB_SEED or 1)");
  construct->add_option("-o,--output", out_path, "output path (default stdout)");

  auto* classify = app.add_subcommand("classify", "chamber label of a configuration file");
  classify->add_option("config", config_path, "ConfigFile JSON")->required();
  classify->add_option("-o,--output", out_path, "write to a file instead of stdout");

  std::size_t trials = 1000;
  auto* verify = app.add_subcommand("verify-dets", "check the splitting determinant closed forms");
  verify->add_option("--trials", trials, "draws per case")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "seed (default: BALSUB_SEED or 1)");
  verify->add_option("-o,--output", out_path, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kParseError;
  }

  try {
    if (*solve) {
      const Configuration config = load_config(config_path, g);
      const cli::SolutionReport report = cli::solve(config, a);
      emit(format == "csv" ? cli::to_csv(report) : cli::to_json(report).dump(2) + "\n", out_path);
      if (!report.consistent()) {
        std::cerr << "theorem violation: count/formula, signed sum or sign agreement failed\n";
        return cli::kTheoremViolation;
      }
      return cli::kOk;
    }

    if (*sweep) {
      if (b_max > 12 && !allow_large) fail(ErrorKind::InvalidInput, "--b-max above 12 needs --allow-large");
      cli::SweepOptions opt;
      opt.b_max = b_max;
      opt.mods = mods;
      opt.signed_sums = signed_sums;
      opt.seed = seed ? *seed : default_seed();
      opt.tol = g.apply({});
      const auto rows = cli::sweep(opt);
      emit(cli::sweep_csv(rows), out_path);
      const auto violations = cli::sweep_violations(rows, opt);
      for (const auto& v : violations) std::cerr << "violation " << v << "\n";
      return violations.empty() ? cli::kOk : cli::kTheoremViolation;
    }

    if (*construct) {
      if (spectrum_text.empty() == phi_path.empty()) fail(ErrorKind::InvalidInput, "give exactly one of --spectrum, --phi");
      const Tolerances tol = g.apply({});
      std::optional<Configuration> config;
      if (!spectrum_text.empty()) {
        config = from_spectrum(cli::parse_spectrum(spectrum_text), seed ? *seed : default_seed(), tol);
      } else {
        const PhiConstruction pc = from_phi(parse_phi_file(phi_path), tol);
        if (!pc.genericity.generic()) fail(ErrorKind::InvalidInput, "φ is not generic: " + pc.genericity.summary());
        config = pc.config;
      }
      emit(cli::config_json(*config).dump(2) + "\n", out_path);
      return cli::kOk;
    }

    if (*classify) {
      const Configuration config = load_config(config_path, g);
      const ChamberLabel label = balsub::classify(config);
      const json out{{"schema_version", cli::kSchemaVersion},
                     {"input_digest", digest(config)},
                     {"b", config.b()},
                     {"chamber", cli::chamber_json(label)}};
      emit(out.dump(2) + "\n", out_path);
      return cli::kOk;
    }

    if (*verify) {
      const cli::DetVerification v = cli::verify_determinants(trials, seed ? *seed : default_seed(), g.apply({}));
      emit(cli::to_json(v).dump(2) + "\n", out_path);
      if (!v.pass()) {
        std::cerr << "determinant identity failed\n";
        return cli::kTheoremViolation;
      }
      return cli::kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kNumericalFailure;
  }
  return cli::kOk;
}
