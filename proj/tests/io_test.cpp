#include "balsub/cli.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace balsub;
using namespace balsub::cli;

namespace {

json valid_doc(std::size_t b = 2) {
  const Configuration config = from_spectrum(Spectrum{b == 2 ? std::vector<double>{2.0, 3.0} : std::vector<double>{2.0}, {}}, 4);
  return config_json(config);
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "cfg.json");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    return e.what();
  }
  ADD_FAILURE() << "expected a parse error";
  return {};
}

bool contains(const std::string& haystack, const std::string& needle) { return haystack.find(needle) != std::string::npos; }

}  // namespace

TEST(ConfigFileTest, RoundTrip) {
  const Configuration config = from_spectrum(Spectrum{{2.0, 3.0}, {{1.0, 2.0}}}, 4);
  const ConfigFile file = parse_config(config_json(config).dump());
  EXPECT_EQ(file.b, 4u);
  const Configuration again = file.configuration();
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(again.space(i).gap_from(config.space(i)), 1e-14);
  EXPECT_EQ(solve(again, 2).count(), 2u);
}

TEST(ConfigFileTest, SyntaxErrorHasLineAndColumn) {
  const std::string msg = error_of("{\n  \"b\": 2,\n  \"matrices\": [ oops ]\n}");
  EXPECT_TRUE(contains(msg, "cfg.json")) << msg;
  EXPECT_TRUE(contains(msg, "line 3")) << msg;
}

TEST(ConfigFileTest, FieldErrorsNameTheField) {
  json doc = valid_doc();
  doc.erase("b");
  EXPECT_TRUE(contains(error_of(doc.dump()), "/b")) << error_of(doc.dump());

  doc = valid_doc();
  doc["schema_version"] = "2";
  EXPECT_TRUE(contains(error_of(doc.dump()), "/schema_version"));

  doc = valid_doc();
  doc["matrices"][2].erase(doc["matrices"][2].begin());
  EXPECT_TRUE(contains(error_of(doc.dump()), "/matrices/2"));

  doc = valid_doc();
  doc["matrices"][1][3] = "x";
  EXPECT_TRUE(contains(error_of(doc.dump()), "/matrices/1/3"));

  doc = valid_doc();
  doc["extra"] = 1;
  EXPECT_TRUE(contains(error_of(doc.dump()), "/extra"));

  doc = valid_doc();
  doc["tolerances"]["rank_rel"] = -1.0;
  EXPECT_TRUE(contains(error_of(doc.dump()), "/tolerances/rank_rel"));

  doc = valid_doc();
  doc["b"] = 0;
  EXPECT_TRUE(contains(error_of(doc.dump()), "/b"));
}

TEST(ConfigFileTest, RankDeficientMatrix) {
  json doc = valid_doc();
  // V4 with two equal columns.
  for (std::size_t k = 0; k < 4; ++k) doc["matrices"][3][4 + k] = doc["matrices"][3][k];
  const std::string msg = error_of(doc.dump());
  EXPECT_TRUE(contains(msg, "/matrices/3")) << msg;
  EXPECT_TRUE(contains(msg, "rank 1")) << msg;
}

TEST(ConfigFileTest, TolerancesOverride) {
  json doc = valid_doc();
  doc["tolerances"] = json{{"eig_sep_rel", 1e-6}};
  const ConfigFile f = parse_config(doc.dump());
  EXPECT_TRUE(f.has_tolerances);
  EXPECT_EQ(f.tolerances.eig_sep_rel, 1e-6);
  EXPECT_EQ(f.tolerances.rank_rel, Tolerances{}.rank_rel);
}

TEST(SpectrumParser, Grammar) {
  const Spectrum s = parse_spectrum("2,3,1+2i");
  EXPECT_EQ(s.reals, (std::vector<double>{2.0, 3.0}));
  ASSERT_EQ(s.pairs.size(), 1u);
  EXPECT_EQ(s.pairs[0].mu, 1.0);
  EXPECT_EQ(s.pairs[0].nu, 2.0);
  EXPECT_EQ(s.size(), 4u);

  const Spectrum t = parse_spectrum(" -0.5 , 1-2i, 2i, -i, 1e-3+2e+1i ");
  EXPECT_EQ(t.reals, (std::vector<double>{-0.5}));
  ASSERT_EQ(t.pairs.size(), 4u);
  // Sorted by (mu, nu).
  EXPECT_EQ(t.pairs[0].mu, 0.0);
  EXPECT_EQ(t.pairs[0].nu, 1.0);
  EXPECT_EQ(t.pairs[1].nu, 2.0);
  EXPECT_EQ(t.pairs[2].mu, 1e-3);
  EXPECT_EQ(t.pairs[2].nu, 20.0);
  EXPECT_EQ(t.pairs[3].mu, 1.0);
  EXPECT_EQ(t.pairs[3].nu, 2.0);
}

TEST(SpectrumParser, Rejects) {
  for (const char* bad : {"", "abc", "1,,2", "1+0i", "2,", "1+2j", "nan", "1+xi"}) {
    EXPECT_THROW_KIND(parse_spectrum(bad), ErrorKind::InvalidInput);
  }
}

TEST(Csv, Rfc4180Quoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
}

TEST(SolveReport, SixTwoTwo) {
  const std::vector<std::size_t> counts{6, 2, 2};
  const std::vector<Spectrum> spectra{Spectrum{{2, 3, 4, 5}, {}}, Spectrum{{2, 3}, {{1, 2}}},
                                      Spectrum{{}, {{1.5, 0.5}, {-2, 1}}}};
  for (std::size_t c = 0; c < 3; ++c) {
    const SolutionReport r = solve(from_spectrum(spectra[c], 7), 2);
    EXPECT_EQ(r.count(), counts[c]);
    EXPECT_EQ(r.signed_sum, 2);
    EXPECT_EQ(r.chamber.c, static_cast<int>(c));
    EXPECT_TRUE(r.consistent());
  }
}

TEST(SolveReport, JsonShapeAndDeterminism) {
  const Configuration config = from_spectrum(Spectrum{{-1.0, 3.0, 0.5}, {}}, 11);
  const json j = to_json(solve(config, 1));
  std::vector<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "input_digest", "b", "a", "tolerances", "chamber",
                                            "eigenvalues", "solutions", "count", "signed_sum", "formula_count",
                                            "expected_signed_sum", "agreement"}));
  EXPECT_EQ(j["count"], 3);
  EXPECT_EQ(j["signed_sum"], 1);  // b odd: binom(1, 0)
  EXPECT_EQ(j["solutions"][0]["order_dependent"], true);
  EXPECT_EQ(j["eigenvalues"]["reals"].size(), 3u);
  EXPECT_EQ(j["solutions"][0]["basis"].size(), 2u);
  EXPECT_EQ(j.dump(), to_json(solve(from_spectrum(Spectrum{{-1.0, 3.0, 0.5}, {}}, 11), 1)).dump());
}

TEST(SolveReport, NonGenericAndBadA) {
  Mat phi = Mat::Identity(2, 2);
  phi(0, 0) = 1.0 + 1e-9;
  phi(1, 1) = 3.0;
  try {
    solve(from_phi(phi).config, 1);
    FAIL() << "expected NonGeneric";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonGeneric);
    EXPECT_TRUE(contains(e.what(), "eigenvalue ≈ 1")) << e.what();
    EXPECT_EQ(exit_code_for(e.kind()), 3);
  }
  EXPECT_THROW_KIND(solve(from_spectrum(Spectrum{{2, 3}, {}}, 1), 2), ErrorKind::InvalidA);
}

TEST(SolveReport, Csv) {
  const std::string csv = to_csv(solve(from_spectrum(Spectrum{{2, 3}, {{1, 2}}}, 1), 2));
  EXPECT_EQ(csv.substr(0, csv.find("\r\n")), "index,blocks,index_set,front,back,sign,resultant,order_dependent");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Sweep, SmallGridHasNoViolations) {
  SweepOptions opt;
  opt.b_max = 6;
  opt.mods = true;
  opt.signed_sums = true;
  opt.seed = 3;
  const auto rows = sweep(opt);
  EXPECT_TRUE(sweep_violations(rows, opt).empty());
  const std::string csv = sweep_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find("\r\n")), "b,a,c,formula,enumerated,signed_sum,mod4,mod8");
  std::vector<std::string> six_three;
  for (const auto& r : rows)
    if (r.b == 6 && r.a == 3) six_three.push_back(r.enumerated.str());
  EXPECT_EQ(six_three, (std::vector<std::string>{"20", "8", "4", "0"}));
}

TEST(Sweep, CombinatorialPathBeyondGeometricLimit) {
  SweepOptions opt;
  opt.b_max = 10;
  opt.geometric_b_max = 4;
  opt.signed_sums = true;
  opt.mods = true;
  const auto rows = sweep(opt);
  EXPECT_TRUE(sweep_violations(rows, opt).empty());
  EXPECT_FALSE(rows.back().geometric);
}

TEST(Sweep, ViolationsNameTheCell) {
  SweepOptions opt;
  opt.b_max = 4;
  opt.signed_sums = true;
  auto rows = sweep(opt);
  rows[0].enumerated += 1;
  rows[1].signed_sum += 2;
  const auto v = sweep_violations(rows, opt);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_TRUE(contains(v[0], "(b=2,a=1,c=0)")) << v[0];
  EXPECT_TRUE(contains(v[1], "signed sum")) << v[1];
}

TEST(VerifyDets, PassesWithExamples) {
  const DetVerification v = verify_determinants(200, 5);
  EXPECT_TRUE(v.pass());
  EXPECT_EQ(v.cases.size(), 4u);
  EXPECT_NEAR(v.example_22, 1.0, 1e-12);
  EXPECT_NEAR(v.example_42, 5.0, 1e-12);
  EXPECT_THROW_KIND(verify_determinants(0, 5), ErrorKind::InvalidInput);
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(ErrorKind::InvalidInput), 2);
  EXPECT_EQ(exit_code_for(ErrorKind::InvalidA), 2);
  EXPECT_EQ(exit_code_for(ErrorKind::NonGeneric), 3);
  EXPECT_EQ(exit_code_for(ErrorKind::NotTransversal), 3);
  EXPECT_EQ(exit_code_for(ErrorKind::NumericalFailure), 4);
  EXPECT_EQ(exit_code_for(ErrorKind::SamplingFailure), 4);
}
