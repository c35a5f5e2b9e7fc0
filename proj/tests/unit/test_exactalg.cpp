#include <gtest/gtest.h>

#include <random>

#include "wittenlab/errors.hpp"
#include "wittenlab/linear_system.hpp"
#include "wittenlab/multipoly.hpp"
#include "wittenlab/rational.hpp"

using namespace wittenlab;

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(Rational(6, -4).str(), "-3/2");
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_TRUE(Rational(0, 5).is_zero());
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1.5", "1/0", "abc", "1/", "/2", "1e3", " 1"}) {
    EXPECT_THROW(Rational::parse(bad), InputError) << bad;
  }
}

TEST(Rational, DivisionByZeroThrows) { EXPECT_THROW(Rational(1) / Rational(0), PreconditionError); }

TEST(Rational, PowersAndFactorials) {
  EXPECT_EQ(Rational::power_of_two(-3), Rational(1, 8));
  EXPECT_EQ(Rational::power_of_two(10), Rational(1024));
  EXPECT_EQ(Rational::factorial(0), Rational(1));
  EXPECT_EQ(Rational::factorial(20), Rational(BigInt("2432902008176640000")));
  EXPECT_EQ(Rational::factorial(25).str(), "15511210043330985984000000");
}

TEST(Rational, NoOverflowInLongSums) {
  // sum_{k=1}^{60} 1/(k(k+1)) telescopes to 60/61.
  Rational s;
  for (std::int64_t k = 1; k <= 60; ++k) s += Rational(1, k * (k + 1));
  EXPECT_EQ(s, Rational(60, 61));
}

namespace {

MultiPoly random_poly(std::mt19937_64& rng, std::size_t vars, unsigned max_deg) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<unsigned> e(0, max_deg);
  MultiPoly p(vars);
  for (int t = 0; t < 5; ++t) {
    Monomial m(vars);
    for (auto& x : m) x = static_cast<Exponent>(e(rng));
    p.add_term(m, Rational(coef(rng), den(rng)));
  }
  return p;
}

}  // namespace

TEST(MultiPoly, RingAxiomsOnRandomInputs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = random_poly(rng, 3, 3);
    const auto b = random_poly(rng, 3, 3);
    const auto c = random_poly(rng, 3, 3);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(MultiPoly, EvaluationIsAHomomorphism) {
  std::mt19937_64 rng(11);
  const std::vector<Rational> pt{Rational(2, 3), Rational(-1), Rational(5, 2)};
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_poly(rng, 3, 3);
    const auto b = random_poly(rng, 3, 3);
    EXPECT_EQ((a * b).evaluate(pt), a.evaluate(pt) * b.evaluate(pt));
    EXPECT_EQ((a + b).evaluate(pt), a.evaluate(pt) + b.evaluate(pt));
  }
}

TEST(MultiPoly, WeightedDegreeAndRendering) {
  const std::vector<unsigned> w{2, 1};
  const auto q = MultiPoly::variable(w, 0);
  const auto t = MultiPoly::variable(w, 1);
  const auto p = Rational(15) * pow(q, 3) + Rational(-1, 2) * t * t + MultiPoly::constant(w, Rational(3));
  EXPECT_EQ(p.degree(), 6);
  EXPECT_EQ(p.to_string({"Q", "K"}), "15 * Q^3 - 1/2 * K^2 + 3");
  EXPECT_EQ(p.homogeneous_part(2).to_string({"Q", "K"}), "-1/2 * K^2");
  EXPECT_EQ(MultiPoly(2).to_string({"a", "b"}), "0");
}

TEST(MultiPoly, DimensionMismatchThrows) {
  EXPECT_THROW(MultiPoly(2) + MultiPoly(3), DimensionError);
  EXPECT_THROW(MultiPoly(2).coefficient({1}), DimensionError);
  EXPECT_THROW(MultiPoly(std::vector<unsigned>{1}) * MultiPoly(std::vector<unsigned>{2}), DimensionError);
}

TEST(MultiPoly, ExpTruncatedMatchesFactorials) {
  const std::vector<unsigned> w{1};
  const auto x = MultiPoly::variable(w, 0);
  const auto e = exp_truncated(x, 8);
  for (Exponent k = 0; k <= 8; ++k) EXPECT_EQ(e.coefficient({k}), Rational(1) / Rational::factorial(k));
  EXPECT_TRUE(e.coefficient({9}).is_zero());
  EXPECT_THROW(exp_truncated(x + MultiPoly::constant(w, Rational(1)), 3), PreconditionError);
  // exp(a) exp(b) = exp(a + b) through the truncation degree.
  const std::vector<unsigned> w2{1, 1};
  const auto a = MultiPoly::variable(w2, 0);
  const auto b = Rational(3, 2) * MultiPoly::variable(w2, 1);
  EXPECT_EQ(MultiPoly::multiply_truncated(exp_truncated(a, 6), exp_truncated(b, 6), 6), exp_truncated(a + b, 6));
}

TEST(MultiPoly, SubstituteComposesWithEvaluation) {
  std::mt19937_64 rng(3);
  const auto p = random_poly(rng, 2, 3);
  const std::vector<MultiPoly> images{random_poly(rng, 3, 2), random_poly(rng, 3, 2)};
  const std::vector<Rational> pt{Rational(1, 2), Rational(2), Rational(-3)};
  const std::vector<Rational> inner{images[0].evaluate(pt), images[1].evaluate(pt)};
  EXPECT_EQ(p.substitute(images).evaluate(pt), p.evaluate(inner));
}

TEST(MultiPoly, DifferingMonomials) {
  const std::vector<unsigned> w{1, 1};
  const auto x = MultiPoly::variable(w, 0);
  const auto y = MultiPoly::variable(w, 1);
  const auto diff = differing_monomials(x * x + y, x * x + Rational(2) * y);
  ASSERT_EQ(diff.size(), 1U);
  EXPECT_EQ(diff[0], (Monomial{0, 1}));
}

namespace {

LinearSystem hilbert(std::size_t n) {
  LinearSystem s;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Rational> row;
    for (std::size_t c = 0; c < n; ++c) row.emplace_back(1, static_cast<std::int64_t>(r + c + 1));
    s.matrix.push_back(row);
    Rational rhs;
    for (std::size_t c = 0; c < n; ++c) rhs += row[c] * Rational(static_cast<std::int64_t>(c) - 3);
    s.rhs.push_back(rhs);
  }
  for (std::size_t c = 0; c < n; ++c) s.column_labels.push_back("x" + std::to_string(c));
  return s;
}

}  // namespace

TEST(LinearSolve, HilbertSystemRecoversPlantedSolution) {
  const auto s = hilbert(8);
  const auto rep = solve_linear_exact(s);
  ASSERT_EQ(rep.status, SolveStatus::unique);
  EXPECT_EQ(rep.rank, 8U);
  for (std::size_t c = 0; c < 8; ++c) EXPECT_EQ(rep.determined.at("x" + std::to_string(c)), Rational(std::int64_t(c) - 3));
}

TEST(LinearSolve, PartiallyDeterminedSystem) {
  // x + y = 2, z = 5: z is determined, x and y are not.
  LinearSystem s{{{Rational(1), Rational(1), Rational(0)}, {Rational(0), Rational(0), Rational(1)}},
                 {Rational(2), Rational(5)},
                 {"x", "y", "z"}};
  const auto rep = solve_linear_exact(s);
  EXPECT_EQ(rep.status, SolveStatus::underdetermined);
  EXPECT_EQ(rep.determined.size(), 1U);
  EXPECT_EQ(rep.determined.at("z"), Rational(5));
  EXPECT_EQ(rep.undetermined, (std::vector<std::string>{"x", "y"}));
}

TEST(LinearSolve, InconsistencyCertificateIsValid) {
  LinearSystem s{{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}, {Rational(1), Rational(0)}},
                 {Rational(1), Rational(3), Rational(0)},
                 {"a", "b"}};
  const auto rep = solve_linear_exact(s);
  ASSERT_EQ(rep.status, SolveStatus::inconsistent);
  ASSERT_TRUE(rep.inconsistency_certificate.has_value());
  const auto& y = *rep.inconsistency_certificate;
  for (std::size_t c = 0; c < 2; ++c) {
    Rational col;
    for (std::size_t r = 0; r < 3; ++r) col += y[r] * s.matrix[r][c];
    EXPECT_TRUE(col.is_zero());
  }
  Rational rhs;
  for (std::size_t r = 0; r < 3; ++r) rhs += y[r] * s.rhs[r];
  EXPECT_FALSE(rhs.is_zero());
}

TEST(LinearSolve, ShapeErrors) {
  LinearSystem s{{{Rational(1)}}, {}, {"a"}};
  EXPECT_THROW(solve_linear_exact(s), DimensionError);
  LinearSystem dup{{{Rational(1), Rational(1)}}, {Rational(0)}, {"a", "a"}};
  EXPECT_THROW(solve_linear_exact(dup), DimensionError);
}
