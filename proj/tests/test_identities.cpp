#include <gtest/gtest.h>

#include <set>

#include "qhyper/errors.hpp"
#include "qhyper/forms.hpp"
#include "qhyper/identities.hpp"
#include "qhyper/schlosser.hpp"

namespace qhyper {
namespace {

QRational R(long p, long r = 1) { return QRational(p, r); }

ParamPoint point(std::initializer_list<std::pair<const char*, QRational>> symbols,
                 std::initializer_list<std::pair<const char*, long>> indices) {
  ParamPoint p;
  for (const auto& [name, value] : symbols) p.set(name, value);
  for (const auto& [name, value] : indices) p.set_index(name, value);
  return p;
}

TEST(Registry, EighteenUniqueIds) {
  const auto& all = list_identities();
  ASSERT_EQ(all.size(), 18u);
  std::set<std::string> ids;
  for (const auto& d : all) ids.insert(d.id);
  EXPECT_EQ(ids.size(), 18u);
  EXPECT_EQ(all.front().id, "jackson_8phi7");
  EXPECT_EQ(all.back().id, "andrews_jain");
  const auto cr = find_identity("schlosser_cr");
  EXPECT_TRUE(std::any_of(cr.indices.begin(), cr.indices.end(), [](const auto& e) { return e.first == "r"; }));
  EXPECT_EQ(find_identity("lebesgue_finite_2").id, "lebesgue_finite_2");
  EXPECT_THROW(find_identity("nope"), ConfigError);
}

TEST(EvalSides, TrivialExamples) {
  const auto j0 = eval_sides("jackson_8phi7", point({{"a", R(3)}, {"b", R(1, 2)}, {"c", R(5)}, {"d", R(1, 7)}, {"q", R(2)}}, {{"n", 0}}));
  EXPECT_EQ(j0.first, R(1));
  EXPECT_EQ(j0.second, R(1));
  for (long n = 0; n <= 4; ++n) {
    ParamPoint p = point({{"a", R(3, 7)}, {"q", R(2, 5)}}, {{"n", n}, {"r", 1}});
    p.set("x1", R(-4, 9));
    const auto [lhs, rhs] = eval_sides("cr_prop_1", p);
    EXPECT_EQ(lhs, R(n + 1));
    EXPECT_EQ(rhs, R(n + 1));
  }
  const auto q0 = eval_sides("quintuple_finite", point({{"z", R(3, 11)}, {"q", R(-5, 2)}}, {{"n", 0}}));
  EXPECT_EQ(q0.first, R(1));
  EXPECT_EQ(q0.second, R(1));
  const auto jf = eval_sides("jacobi_finite", point({{"z", R(3, 11)}, {"q", R(-5, 2)}}, {{"m", 0}, {"n", 0}}));
  EXPECT_EQ(jf.first, R(1));
  EXPECT_EQ(jf.second, R(1));
}

// Reference values from an independent term-by-term summation.
TEST(EvalSides, FrozenValues) {
  const auto j1 = eval_sides("jackson_8phi7", point({{"a", R(3)}, {"b", R(1, 2)}, {"c", R(5)}, {"d", R(1, 7)}, {"q", R(2)}}, {{"n", 1}}));
  EXPECT_EQ(j1.first, QRational::parse("107485/35629"));
  EXPECT_EQ(j1.second, j1.first);
  const auto j3 = eval_sides("jackson_8phi7", point({{"a", R(3)}, {"b", R(1, 2)}, {"c", R(5)}, {"d", R(1, 7)}, {"q", R(2)}}, {{"n", 3}}));
  EXPECT_EQ(j3.first, QRational::parse("2664925/637837"));
  EXPECT_EQ(j3.second, j3.first);

  const auto leb = eval_sides("lebesgue_finite", point({{"a", R(2, 3)}, {"q", R(3, 5)}}, {{"n", 3}}));
  EXPECT_EQ(leb.first, QRational::parse("102000000/8644369"));
  EXPECT_EQ(leb.second, leb.first);
  const auto aj = eval_sides("andrews_jain", point({{"a", R(2, 3)}, {"b", R(-1, 4)}, {"q", R(3, 5)}}, {{"n", 3}}));
  EXPECT_EQ(aj.first, QRational::parse("146908464075069/81508855972544"));
  EXPECT_EQ(aj.second, aj.first);
  const auto jac = eval_sides("jacobi_finite", point({{"z", R(2, 7)}, {"q", R(-3, 5)}}, {{"m", 2}, {"n", 3}}));
  EXPECT_EQ(jac.first, QRational::parse("13559187488/30517578125"));
  EXPECT_EQ(jac.second, jac.first);

  ParamPoint cr = point({{"a", R(3, 7)}, {"q", R(2, 5)}}, {{"r", 3}, {"n", 2}});
  cr.set("x1", R(1, 3)).set("x2", R(4, 9)).set("x3", R(-2, 5));
  const auto c1 = eval_sides("cr_prop_1", cr);
  EXPECT_EQ(c1.first, QRational::parse("86697/64"));
  EXPECT_EQ(c1.second, c1.first);
  const auto c2 = eval_sides("cr_prop_2", cr);
  EXPECT_EQ(c2.first, QRational::parse("10279/64"));
  EXPECT_EQ(c2.second, c2.first);
  cr.set_index("n", 3);
  EXPECT_EQ(eval_sides("cr_prop_1", cr).first, QRational::parse("3773567/128"));
  EXPECT_EQ(eval_sides("cr_prop_2", cr).second, R(0));

  ParamPoint sc = point({{"a", R(3, 7)}, {"b", R(-2, 9)}, {"c", R(5, 4)}, {"d", R(7, 3)}, {"q", R(2, 5)}}, {{"r", 2}, {"n", 2}});
  sc.set("x1", R(1, 3)).set("x2", R(4, 9));
  const auto s2 = eval_sides("schlosser_cr", sc);
  EXPECT_EQ(s2.first, QRational::parse("591929777190723342589406228198967520158997/958702501747633311585389871289100147869242"));
  EXPECT_EQ(s2.second, s2.first);
}

TEST(EvalSides, GuardsAndMissingSymbols) {
  EXPECT_THROW(eval_sides("jackson_8phi7", point({{"a", R(3)}, {"b", R(1, 2)}, {"q", R(2)}}, {{"n", 1}})), MissingSymbol);
  // a x1 x2 = 1 hits a pole guard of the C_r sum
  ParamPoint p = point({{"a", R(1, 2)}, {"b", R(3)}, {"c", R(5)}, {"d", R(7)}, {"q", R(2, 3)}}, {{"r", 2}, {"n", 1}});
  p.set("x1", R(1)).set("x2", R(2));
  EXPECT_THROW(eval_sides("schlosser_cr", p), PoleError);
}

class IdentitySuite : public ::testing::TestWithParam<std::string> {};

TEST_P(IdentitySuite, TwentyRandomPointsPass) {
  const auto d = find_identity(GetParam());
  VerifyOptions options;
  const auto report = verify(d, options);
  EXPECT_EQ(report.status, VerifyStatus::kPass);
  EXPECT_EQ(report.succeeded, 20);
  EXPECT_EQ(report.attempted, 20);
  EXPECT_LE(report.succeeded + report.rejected, report.attempted);
  EXPECT_FALSE(report.first_failure);
}

TEST_P(IdentitySuite, CorruptedRightSideIsCaught) {
  const auto d = find_identity(GetParam());
  VerifyOptions options;
  options.mutate_rhs = true;
  const auto report = verify(d, options);
  EXPECT_EQ(report.status, VerifyStatus::kCounterexample);
  ASSERT_TRUE(report.first_failure);
  EXPECT_EQ(report.first_failure->lhs == report.first_failure->rhs, false);
}

TEST_P(IdentitySuite, ParallelMatchesSerial) {
  const auto d = find_identity(GetParam());
  VerifyOptions options;
  options.trials = 8;
  options.seed = 99;
  const auto a = verify(d, options);
  const auto b = verify_serial(d, options);
  EXPECT_EQ(a.succeeded, b.succeeded);
  EXPECT_EQ(a.resamples, b.resamples);
  EXPECT_EQ(a.max_indices, b.max_indices);
  options.mutate_rhs = true;
  const auto fa = verify(d, options);
  const auto fb = verify_serial(d, options);
  ASSERT_TRUE(fa.first_failure && fb.first_failure);
  EXPECT_EQ(fa.first_failure->point, fb.first_failure->point);
  EXPECT_EQ(fa.first_failure->lhs, fb.first_failure->lhs);
}

std::vector<std::string> all_ids() {
  std::vector<std::string> ids;
  for (const auto& d : list_identities()) ids.push_back(d.id);
  ids.push_back("lebesgue_finite_2");
  return ids;
}

INSTANTIATE_TEST_SUITE_P(Registry, IdentitySuite, ::testing::ValuesIn(all_ids()),
                         [](const auto& info) { return info.param; });

TEST(Verify, JacksonExample) {
  VerifyOptions options;
  options.ranges["n"] = {0, 6};
  const auto report = verify(find_identity("jackson_8phi7"), options);
  EXPECT_EQ(report.status, VerifyStatus::kPass);
  EXPECT_EQ(report.succeeded, 20);
  EXPECT_EQ(report.max_indices.at("n"), 6);
}

TEST(Verify, SecondAlliedIdentityVanishesForOddN) {
  VerifyOptions options;
  options.trials = 10;
  options.seed = 7;
  options.ranges["n"] = {0, 5};
  options.ranges["r"] = {1, 3};
  const auto d = find_identity("cr_prop_2");
  EXPECT_EQ(verify(d, options).status, VerifyStatus::kPass);
  bool saw_odd = false;
  for (const auto& idx : index_grid(d, options.ranges)) {
    if (idx.at("n") % 2 == 0) continue;
    saw_odd = true;
    ParamPoint p;
    p.indices = idx;
    p.set("a", R(3, 7)).set("q", R(-2, 5));
    for (long i = 1; i <= idx.at("r"); ++i) p.set(x_name(i), R(i + 1, 2 * i + 5));
    EXPECT_EQ(eval_sides(d, p).second, R(0));
  }
  EXPECT_TRUE(saw_odd);
}

TEST(Verify, PrintedSignOfSecondAlliedIdentityFailsForOddR) {
  RegistryOptions registry;
  registry.cr_prop_2_as_printed = true;
  const auto d = find_identity("cr_prop_2", registry);
  VerifyOptions options;
  options.ranges["r"] = {3, 3};
  options.ranges["n"] = {1, 3};
  EXPECT_EQ(verify(d, options).status, VerifyStatus::kCounterexample);
  options.ranges["r"] = {2, 2};
  EXPECT_EQ(verify(d, options).status, VerifyStatus::kPass);
}

TEST(EvalSides, PrintedSecondAlliedSignAtROne) {
  RegistryOptions registry;
  registry.cr_prop_2_as_printed = true;
  ParamPoint p = point({{"a", R(3, 7)}, {"q", R(2, 5)}}, {{"r", 1}, {"n", 1}});
  p.set("x1", R(5, 11));
  const auto printed = eval_sides(find_identity("cr_prop_2", registry), p);
  EXPECT_EQ(printed.first, R(2));
  EXPECT_EQ(printed.second, R(0));
  const auto fixed = eval_sides(find_identity("cr_prop_2"), p);
  EXPECT_EQ(fixed.first, R(0));
  EXPECT_EQ(fixed.second, R(0));
}

TEST(Verify, SinghTerminatedThroughC) {
  RegistryOptions registry;
  registry.singh_terminate_c = true;
  EXPECT_EQ(verify(find_identity("singh_quadratic", registry), {}).status, VerifyStatus::kPass);
}

TEST(Verify, DeterministicReports) {
  const auto d = find_identity("bailey_10phi9");
  VerifyOptions options;
  options.seed = 1234;
  options.mutate_rhs = true;
  const auto a = verify(d, options);
  const auto b = verify(d, options);
  ASSERT_TRUE(a.first_failure && b.first_failure);
  EXPECT_EQ(a.first_failure->point, b.first_failure->point);
  EXPECT_EQ(a.first_failure->rhs, b.first_failure->rhs);
  options.seed = 1235;
  const auto c = verify(d, options);
  EXPECT_NE(a.first_failure->point, c.first_failure->point);
}

TEST(Verify, RangeOverridesAndCaps) {
  const auto d = find_identity("schlosser_cr");
  IndexRanges ranges;
  ranges["r"] = {1, 5};
  EXPECT_THROW(index_grid(d, ranges), ConfigError);
  ranges["r"] = {4, 4};
  ranges["n"] = {0, 10};
  for (const auto& idx : index_grid(d, ranges)) {
    EXPECT_LE(schlosser::box_size(idx.at("n"), idx.at("r")), 2500);
  }
  const auto jp = find_identity("jacobi_prefactor_relation");
  for (const auto& idx : index_grid(jp, {})) {
    EXPECT_LE(-idx.at("m"), idx.at("k"));
    EXPECT_LE(idx.at("k"), idx.at("n"));
  }
  VerifyOptions options;
  options.trials = 0;
  EXPECT_THROW(verify(d, options), ConfigError);
}

TEST(Verify, PolesAreResampledNotFailed) {
  // a tiny height makes pole hits common
  VerifyOptions options;
  options.height = 2;
  options.trials = 20;
  const auto report = verify(find_identity("jackson_8phi7"), options);
  EXPECT_NE(report.status, VerifyStatus::kCounterexample);
  EXPECT_GT(report.resamples, 0);
}

TEST(Verify, RetryExhaustionIsReported) {
  VerifyOptions options;
  options.height = 2;
  options.retry_cap = 1;
  options.trials = 30;
  const auto report = verify(find_identity("bailey_10phi9"), options);
  EXPECT_GT(report.rejected, 0);
  EXPECT_EQ(report.status, VerifyStatus::kRetryExhausted);
  EXPECT_EQ(to_string(report.status), "RETRY_EXHAUSTED");
}

// Cross-identity consistency checks.

TEST(Consistency, VwpTransformAgreesWithWatson) {
  for (long trial = 0; trial < 20; ++trial) {
    Sampler s(31, "vwp-watson", static_cast<std::uint64_t>(trial));
    const QRational a = s.rational(), b = s.rational(), c = s.rational(), d = s.rational(), e = s.rational();
    const QRational q = s.q();
    const QRational lambda = a * a * q / (b * c * d);
    const long n = trial % 7;
    try {
      const QRational prefactor = qpoch_multi({a * q, lambda * q / e}, q, n) / qpoch_multi({a * q / e, lambda * q}, q, n);
      const QRational left = forms::watson_4phi3_side(a, b, c, d, e, q, n);
      const QRational right =
          prefactor * forms::watson_4phi3_side(lambda, lambda * b / a, lambda * c / a, lambda * d / a, e, q, n);
      EXPECT_EQ(left, right) << "trial " << trial;
    } catch (const PoleError&) {
    }
  }
}

TEST(Consistency, QuintupleFormsAgree) {
  for (long trial = 0; trial < 20; ++trial) {
    Sampler s(32, "quintuple", static_cast<std::uint64_t>(trial));
    const QRational z = s.rational(), q = s.q();
    const long n = trial % 7;
    EXPECT_EQ(forms::quintuple_finite_lhs(z, q, n), forms::quintuple_ccg_lhs(z, q, n));
    EXPECT_EQ(forms::quintuple_finite_lhs(z, q, n), R(1));
  }
}

TEST(Consistency, SchlosserAtROneIsJackson) {
  for (long trial = 0; trial < 20; ++trial) {
    Sampler s(33, "cr-r1", static_cast<std::uint64_t>(trial));
    const QRational a = s.rational(), b = s.rational(), c = s.rational(), d = s.rational(), q = s.q();
    const QRational x = s.rational();
    const long n = trial % 7;
    ParamPoint cr = point({{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"q", q}}, {{"r", 1}, {"n", n}});
    cr.set("x1", x);
    ParamPoint j = point({{"a", a * x * x}, {"b", b * x}, {"c", c * x}, {"d", d * x}, {"q", q}}, {{"n", n}});
    EXPECT_EQ(eval_sides("schlosser_cr", cr), eval_sides("jackson_8phi7", j)) << "trial " << trial;
  }
}

TEST(Consistency, AlliedSumsDoNotDependOnX) {
  for (long trial = 0; trial < 20; ++trial) {
    Sampler s(34, "cr-x", static_cast<std::uint64_t>(trial));
    const QRational a = s.rational(), q = s.q();
    const long r = 1 + trial % 3, n = trial % 4;
    std::vector<QRational> x1, x2;
    for (long i = 0; i < r; ++i) {
      x1.push_back(s.rational());
      x2.push_back(s.rational());
    }
    for (auto sign : {schlosser::CrSign::kPlus, schlosser::CrSign::kAlternating}) {
      const QRational first = schlosser::cr_prop_lhs(a, q, x1, n, sign);
      EXPECT_EQ(first, schlosser::cr_prop_lhs(a, q, x2, n, sign));
      EXPECT_EQ(first, schlosser::cr_prop_lhs(s.rational(), q, x1, n, sign));
    }
  }
}

TEST(Consistency, SerialAndParallelMultiSums) {
  for (long r = 1; r <= 4; ++r) {
    Sampler s(35, "cr-serial", static_cast<std::uint64_t>(r));
    schlosser::Params p{s.rational(), s.rational(), s.rational(), s.rational(), s.q(), {}};
    for (long i = 0; i < r; ++i) p.x.push_back(s.rational());
    const long n = r == 4 ? 3 : 4;
    EXPECT_EQ(schlosser::lhs(p, n), schlosser::lhs_serial(p, n));
    EXPECT_EQ(schlosser::lhs(p, n), schlosser::rhs(p, n));
    EXPECT_EQ(schlosser::cr_prop_lhs(p.a, p.q, p.x, n, schlosser::CrSign::kAlternating),
              schlosser::cr_prop_lhs_serial(p.a, p.q, p.x, n, schlosser::CrSign::kAlternating));
  }
}

}  // namespace
}  // namespace qhyper
