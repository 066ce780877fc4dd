#include <gtest/gtest.h>

#include <vector>

#include "qhyper/errors.hpp"
#include "qhyper/qcore.hpp"
#include "qhyper/sampling.hpp"

namespace qhyper {
namespace {

QRational R(long p, long r = 1) { return QRational(p, r); }

TEST(Rational, ArithmeticIsExact) {
  EXPECT_EQ(R(1, 3) + R(1, 6), R(1, 2));
  EXPECT_EQ(R(2, 3) * R(9, 4), R(3, 2));
  EXPECT_EQ(R(-4, 6), R(2, -3));
  EXPECT_EQ(R(7, 3).pow(-2), R(9, 49));
  EXPECT_EQ(R(5).pow(0), R(1));
}

TEST(Rational, DivisionByZeroIsAnError) {
  EXPECT_THROW(R(1) / R(0), DivisionByZero);
  EXPECT_THROW(R(0).inverse(), PoleError);
  EXPECT_THROW(R(0).pow(-1), PoleError);
  EXPECT_THROW(QRational(1, 0), PoleError);
}

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(QRational::parse("-12/18"), R(-2, 3));
  EXPECT_EQ(QRational::parse("123456789012345678901234567890").str(), "123456789012345678901234567890");
  EXPECT_EQ(R(6, 3).str(), "2");
  EXPECT_EQ(R(-3, 9).str(), "-1/3");
  EXPECT_THROW(QRational::parse("1/0"), PoleError);
  EXPECT_THROW(QRational::parse("x"), DomainError);
}

TEST(ParamPoint, LookupAndMissingSymbol) {
  ParamPoint p;
  p.set("a", R(2)).set("q", R(1, 2)).set_index("n", 3);
  EXPECT_EQ(p.sym("a"), R(2));
  EXPECT_EQ(p.index("n"), 3);
  EXPECT_EQ(p.q(), R(1, 2));
  EXPECT_THROW(p.sym("b"), MissingSymbol);
  EXPECT_THROW(p.index("m"), MissingSymbol);
  p.set("q", R(1));
  EXPECT_THROW(p.q(), DegenerateQ);
  EXPECT_EQ(x_name(3), "x3");
}

TEST(QPoch, Examples) {
  EXPECT_EQ(qpoch(R(7, 3), R(5, 2), 0), R(1));
  EXPECT_EQ(qpoch(R(3), R(2), 2), R(10));
  EXPECT_EQ(qpoch(R(3), R(2), -1), R(-2));
  EXPECT_EQ(qpoch_multi({R(3), R(5)}, R(2), 1), R(8));
  EXPECT_EQ(qpoch_multi({R(3), R(5)}, R(2), 0), R(1));
  EXPECT_EQ(qpoch_multi(std::span<const QRational>{}, R(2), 4), R(1));
}

TEST(QPoch, NegativeIndexPole) {
  // (a;q)_{-1} = 1/(1 - a/q) with a = q
  EXPECT_THROW(qpoch(R(2), R(2), -1), PoleError);
  EXPECT_EQ(qpoch_inv(R(2), R(2), -1), R(0));
  EXPECT_THROW(qpoch_inv(R(1, 4), R(2), 3), PoleError);
}

TEST(QPoch, SplitsAcrossIndices) {
  for (long trial = 0; trial < 20; ++trial) {
    Sampler s(11, "qpoch-split", static_cast<std::uint64_t>(trial));
    const QRational a = s.rational();
    const QRational q = s.q();
    for (long m = -4; m <= 4; ++m) {
      for (long n = -4; n <= 4; ++n) {
        try {
          EXPECT_EQ(qpoch(a, q, m + n), qpoch(a, q, m) * qpoch(a * q.pow(m), q, n)) << m << " " << n;
        } catch (const PoleError&) {
        }
      }
    }
  }
}

TEST(QPoch, NegativeIndexInverse) {
  for (long trial = 0; trial < 20; ++trial) {
    Sampler s(12, "qpoch-inverse", static_cast<std::uint64_t>(trial));
    const QRational a = s.rational();
    const QRational q = s.q();
    for (long n = 1; n <= 6; ++n) {
      EXPECT_EQ(qpoch(a, q, -n) * qpoch(a * q.pow(-n), q, n), R(1));
      EXPECT_EQ(qpoch_inv(a, q, -n), qpoch(a * q.pow(-n), q, n));
    }
  }
}

TEST(QBinom, Examples) {
  EXPECT_EQ(qbinom(5, 0, R(3, 7)), R(1));
  EXPECT_EQ(qbinom(2, 1, R(2)), R(3));
  EXPECT_EQ(qbinom(3, 5, R(2)), R(0));
  EXPECT_EQ(qbinom(3, -1, R(2)), R(0));
  EXPECT_THROW(qbinom(3, 1, R(1)), DegenerateQ);
  EXPECT_THROW(qbinom(3, 1, R(0)), DegenerateQ);
}

TEST(QBinom, SymmetryAndPascalRecurrence) {
  for (long trial = 0; trial < 20; ++trial) {
    Sampler s(13, "qbinom", static_cast<std::uint64_t>(trial));
    const QRational q = s.q();
    for (long n = 0; n <= 9; ++n) {
      for (long k = 0; k <= n; ++k) {
        EXPECT_EQ(qbinom(n, k, q), qbinom(n, n - k, q));
        EXPECT_EQ(qbinom(n, k, q), qpoch(q, q, n) / (qpoch(q, q, k) * qpoch(q, q, n - k)));
        if (n > 0) {
          EXPECT_EQ(qbinom(n, k, q), qbinom(n - 1, k, q) + q.pow(n - k) * qbinom(n - 1, k - 1, q));
        }
      }
    }
  }
}

TEST(Sampler, DeterministicAndBounded) {
  Sampler a(5, "item", 3);
  Sampler b(5, "item", 3);
  Sampler c(5, "item", 4);
  std::vector<QRational> xa, xb, xc;
  for (int i = 0; i < 50; ++i) {
    xa.push_back(a.rational());
    xb.push_back(b.rational());
    xc.push_back(c.rational());
  }
  EXPECT_EQ(xa, xb);
  EXPECT_NE(xa, xc);
  Sampler small(1, "tiny", 0, 2);
  for (int i = 0; i < 200; ++i) {
    const QRational q = small.q();
    EXPECT_FALSE(q.is_zero());
    EXPECT_NE(q, R(1));
    EXPECT_NE(q, R(-1));
    const QRational x = small.rational();
    EXPECT_LE(abs(x.numerator()), 2);
    EXPECT_LE(x.denominator(), 2);
  }
  EXPECT_THROW(Sampler(1, "x", 0, 1), ConfigError);
}

}  // namespace
}  // namespace qhyper
