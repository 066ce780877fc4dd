#include <gtest/gtest.h>

#include "qhyper/certs.hpp"
#include "qhyper/errors.hpp"
#include "qhyper/sampling.hpp"

namespace qhyper {
namespace {

QRational R(long p, long r = 1) { return QRational(p, r); }

ParamPoint random_point(const ProofCertificate& cert, std::uint64_t seed, long trial) {
  Sampler s(seed, "test/" + cert.id, static_cast<std::uint64_t>(trial));
  ParamPoint p;
  for (const auto& name : cert.symbols) p.set(name, name == "q" ? s.q() : s.rational());
  return p;
}

ParamPoint random_cr_point(long r, std::uint64_t seed, long trial) {
  Sampler s(seed, "test/schlosser-r" + std::to_string(r), static_cast<std::uint64_t>(trial));
  ParamPoint p;
  for (const char* name : {"a", "b", "c", "d"}) p.set(name, s.rational());
  p.set("q", s.q());
  p.set_index("r", r);
  for (long i = 1; i <= r; ++i) p.set(x_name(i), s.rational());
  return p;
}

TEST(Certificates, Registry) {
  EXPECT_EQ(single_sum_certificates().size(), 6u);
  const std::vector<std::string> expected{"jackson", "watson", "bailey", "singh", "lebesgue", "quintuple", "schlosser"};
  EXPECT_EQ(proof_ids(), expected);
  EXPECT_THROW(find_certificate("schlosser"), ConfigError);
  EXPECT_THROW(find_certificate("nope"), ConfigError);
  EXPECT_EQ(find_certificate("singh").order(), 2);
  EXPECT_EQ(find_certificate("jackson").order(), 1);
}

TEST(Certificates, Examples) {
  ParamPoint jp;
  jp.set("a", R(3)).set("b", R(1, 2)).set("c", R(5)).set("d", R(1, 7)).set("q", R(2));
  const auto& jackson = find_certificate("jackson");
  EXPECT_EQ(term_recurrence_residual(jackson, jp, 3, 2), R(0));
  EXPECT_EQ(term_recurrence_residual(jackson, jp, 3, -1), R(0));
  EXPECT_EQ(term_recurrence_residual(jackson, jp, 3, 5), R(0));
  EXPECT_TRUE(inductive_replay(jackson, random_point(jackson, 1, 0), 5));

  const auto& singh = find_certificate("singh");
  const auto sp = random_point(singh, 2, 0);
  EXPECT_EQ(term_recurrence_residual(singh, sp, 4, 3), R(0));
  EXPECT_EQ(telescoping_residual(singh, sp, 4, 2), R(0));
  EXPECT_TRUE(boundary_check(singh, sp, 4));
  EXPECT_THROW(term_recurrence_residual(singh, sp, 1, 0), DomainError);

  const auto& watson = find_certificate("watson");
  const auto wp = random_point(watson, 3, 0);
  EXPECT_EQ(telescoping_residual(watson, wp, 2, 1), R(0));
  EXPECT_TRUE(boundary_check(watson, wp, 1));
  EXPECT_TRUE(inductive_replay(watson, wp, 4));

  const auto& bailey = find_certificate("bailey");
  const auto bp = random_point(bailey, 4, 0);
  EXPECT_EQ(telescoping_residual(bailey, bp, 3, 0), R(0));
  EXPECT_TRUE(boundary_check(bailey, bp, 3));

  const auto& quintuple = find_certificate("quintuple");
  const auto qp = random_point(quintuple, 5, 0);
  EXPECT_TRUE(inductive_replay(quintuple, qp, 6));
  for (long n = 0; n <= 6; ++n) EXPECT_EQ(closed_form_value(quintuple, qp, n), R(1));

  EXPECT_THROW(telescoping_residual(jackson, jp, 2, 1), DomainError);
  EXPECT_THROW(inductive_replay(jackson, jp, 9), DomainError);
}

class CertificateSuite : public ::testing::TestWithParam<std::string> {};

TEST_P(CertificateSuite, ResidualsVanishOnTwentyPoints) {
  const auto& cert = find_certificate(GetParam());
  for (long trial = 0; trial < 20; ++trial) {
    const auto p = random_point(cert, 10, trial);
    for (std::size_t w = 0; w < cert.recurrences.size(); ++w) {
      for (long n = cert.recurrences[w].min_n; n <= 6; ++n) {
        for (long k = 0; k <= n; ++k) {
          EXPECT_EQ(term_recurrence_residual(cert, p, n, k, w), R(0)) << cert.recurrences[w].name << " " << n << "," << k;
        }
      }
    }
    const long min_n = cert.recurrences.front().min_n;
    for (long n = min_n; n <= 6; ++n) {
      EXPECT_EQ(closed_form_recurrence_residual(cert, p, n), R(0));
      if (cert.anti_diff) {
        for (long k = 0; k <= n; ++k) EXPECT_EQ(telescoping_residual(cert, p, n, k), R(0)) << n << "," << k;
      }
      if (cert.rhs_term) EXPECT_TRUE(boundary_check(cert, p, n)) << n;
    }
    for (long n = 0; n <= 6; ++n) EXPECT_EQ(sum_side(cert, p, n), closed_form_value(cert, p, n));
    EXPECT_TRUE(inductive_replay(cert, p, 5));
  }
}

INSTANTIATE_TEST_SUITE_P(SingleSums, CertificateSuite,
                         ::testing::Values("jackson", "watson", "bailey", "singh", "lebesgue", "quintuple"));

TEST(Certificates, TelescopingCertificatesWhereExpected) {
  for (const char* id : {"watson", "bailey", "singh"}) EXPECT_TRUE(find_certificate(id).anti_diff) << id;
}

TEST(Certificates, AgreeWithGenericContiguousCoefficients) {
  const auto& jackson = find_certificate("jackson");
  const auto& bailey = find_certificate("bailey");
  const auto& watson = find_certificate("watson");
  for (long trial = 0; trial < 20; ++trial) {
    Sampler s(11, "generic", static_cast<std::uint64_t>(trial));
    ParamPoint p;
    for (const char* name : {"sqrt_a", "b", "c", "d", "e", "f"}) p.set(name, s.rational());
    p.set("q", s.q());
    ParamPoint pa = p;
    pa.set("a", p.sym("sqrt_a") * p.sym("sqrt_a"));
    for (long n = 1; n <= 6; ++n) {
      EXPECT_EQ(generic_alpha_jackson(p, n), jackson.recurrences[0].terms[1].coeff(pa, n));
      EXPECT_EQ(generic_alpha_bailey(p, n), bailey.recurrences[0].terms[1].coeff(pa, n));
      EXPECT_EQ(generic_beta_watson(p, n), watson.recurrences[0].terms[1].coeff(pa, n));
    }
  }
}

TEST(SchlosserProof, SplitExamples) {
  using schlosser_proof::split_residual;
  for (long r = 1; r <= 3; ++r) {
    const auto p = random_cr_point(r, 20, 0);
    for (long n = 0; n <= 3; ++n) {
      for (long i = 1; i <= r; ++i) EXPECT_EQ(split_residual(p, n, r, i, n + 1), R(0));
    }
  }
  EXPECT_EQ(split_residual(random_cr_point(2, 21, 0), 2, 2, 1, 1), R(0));
  EXPECT_EQ(split_residual(random_cr_point(3, 21, 1), 1, 3, 2, 0), R(0));
}

TEST(SchlosserProof, SplitNeedsTheDivisionByA) {
  // the printed left factor (1 - bcd x_i q^{k_i+r-n-2}) differs from the
  // corrected one by (1 - A) B (1 - 1/a)
  const long r = 2, n = 2, i = 1, k = 1;
  const auto p = random_cr_point(r, 25, 0);
  const QRational& a = p.sym("a");
  const QRational& q = p.q();
  const QRational bcd = p.sym("b") * p.sym("c") * p.sym("d");
  const QRational xi = p.sym("x1");
  const QRational A = a * a * xi * q.pow(n + k - r + 2) / bcd;
  const QRational B = bcd * xi * q.pow(k + r - n - 2);
  const QRational printed = schlosser_proof::split_residual(p, n, r, i, k) + (R(1) - A) * B * (R(1) - a.inverse());
  EXPECT_EQ(schlosser_proof::split_residual(p, n, r, i, k), R(0));
  EXPECT_NE(printed, R(0));
}

TEST(SchlosserProof, CoefficientExamples) {
  using schlosser_proof::coeff_residual;
  EXPECT_EQ(coeff_residual(random_cr_point(2, 22, 0), 2, 2, {0, 0}), R(0));
  EXPECT_EQ(coeff_residual(random_cr_point(2, 22, 1), 2, 2, {0, 1}), R(0));
  EXPECT_EQ(coeff_residual(random_cr_point(3, 22, 2), 1, 3, {1, 1, 0}), R(0));
  EXPECT_THROW(coeff_residual(random_cr_point(3, 22, 2), 1, 3, {1, 1}), DomainError);
}

TEST(SchlosserProof, InternalsOnTenPoints) {
  using namespace schlosser_proof;
  for (long r = 1; r <= 3; ++r) {
    for (long trial = 0; trial < 10; ++trial) {
      const auto p = random_cr_point(r, 23, trial);
      for (long n = 0; n <= 3; ++n) {
        for (long i = 1; i <= r; ++i) {
          for (long k = 0; k <= n + 1; ++k) EXPECT_EQ(split_residual(p, n, r, i, k), R(0));
        }
        for (long mask = 0; mask < (1L << r); ++mask) {
          std::vector<long> s;
          for (long i = 0; i < r; ++i) s.push_back((mask >> i) & 1);
          EXPECT_EQ(coeff_residual(p, n, r, s), R(0));
        }
        EXPECT_EQ(relemma_residual(p, n), R(0));
      }
    }
  }
}

TEST(SchlosserProof, InductiveReplay) {
  for (long r = 1; r <= 3; ++r) {
    for (long trial = 0; trial < 3; ++trial) EXPECT_TRUE(schlosser_proof::inductive_replay(random_cr_point(r, 24, trial), 3));
  }
  EXPECT_THROW(schlosser_proof::inductive_replay(random_cr_point(4, 24, 0), 3), DomainError);
}

TEST(Certify, AllProofsPass) {
  CertifyOptions options;
  options.trials = 6;
  options.seed = 7;
  for (const auto& id : proof_ids()) {
    const auto report = certify(id, options);
    EXPECT_EQ(report.status, VerifyStatus::kPass) << id;
    EXPECT_EQ(report.succeeded, 6) << id;
    EXPECT_GT(report.checks, 0) << id;
  }
  EXPECT_THROW(certify("nope", options), ConfigError);
  options.replay_n_max = 9;
  EXPECT_THROW(certify("jackson", options), ConfigError);
}

TEST(Certify, Deterministic) {
  CertifyOptions options;
  options.trials = 4;
  options.seed = 3;
  const auto a = certify("bailey", options);
  const auto b = certify("bailey", options);
  EXPECT_EQ(a.checks, b.checks);
  EXPECT_EQ(a.resamples, b.resamples);
}

}  // namespace
}  // namespace qhyper
