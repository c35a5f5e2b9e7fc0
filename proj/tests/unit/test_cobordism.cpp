#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "wittenlab/cobordism.hpp"
#include "wittenlab/donaldson.hpp"
#include "wittenlab/errors.hpp"

using namespace wittenlab;
using wittenlab::testing::fixture;
using wittenlab::testing::unit;

namespace {

const std::vector<unsigned> kOneVar{1};

MultiPoly univariate(const std::vector<Rational>& coeffs) {
  MultiPoly p(kOneVar);
  for (std::size_t e = 0; e < coeffs.size(); ++e) p.add_term({static_cast<Exponent>(e)}, coeffs[e]);
  return p;
}

}  // namespace

TEST(ILambda, Values) {
  const auto k3 = fixture("k3");
  EXPECT_EQ(i_lambda(k3, unit(22, 0, 2) + unit(22, 1, 2)), 18);  // L^2 = 8
  const auto u3 = fixture("u3");
  for (std::int64_t y = -3; y <= 3; ++y) {
    EXPECT_EQ(i_lambda(u3, unit(34, 2, y) + unit(34, 3)), 2 * y + 15);
  }
  EXPECT_EQ(i_lambda(u3, LatticeVector::zero(34)), 15);
}

TEST(SignTildeEps, TrivialAndErrors) {
  const auto h = UnimodularLattice::from_blocks({"H"});
  EXPECT_EQ(sign_tilde_eps(h, 0, {0, 0}, {2, 0}, {0, 0}), 0);
  // w^2 - sigma odd on <1>: names the first half.
  const auto one = UnimodularLattice::from_blocks({"<1>"});
  try {
    sign_tilde_eps(one, 0, {1}, {1}, {1});
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("w^2 - sigma"), std::string::npos);
  }
}

TEST(Differences, Examples) {
  const DifferenceSpec spec{{3}, {1}};
  const auto id = univariate({Rational(0), Rational(1)});
  EXPECT_EQ(nabla_ops(spec, id, Rational(5)), Rational(-3));
  EXPECT_EQ(signed_cube_sum(spec, id, Rational(5)), Rational(-3));
}

TEST(Differences, ConstantCases) {
  const auto c = univariate({Rational(7, 3)});
  EXPECT_EQ(nabla_ops({{1, -2, 5}, {0, 2, 4}}, c, Rational(0)), Rational(8) * Rational(7, 3));
  EXPECT_EQ(nabla_ops({{1, -2, 5}, {0, 1, 4}}, c, Rational(0)), Rational(0));
}

TEST(Differences, CubeSumEqualsOperatorComposition) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> n_dist(0, 6);
  std::uniform_int_distribution<int> p_dist(-5, 5);
  std::uniform_int_distribution<int> q_dist(0, 3);
  std::uniform_int_distribution<int> c_dist(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    DifferenceSpec spec;
    const int n = n_dist(rng);
    for (int u = 0; u < n; ++u) {
      spec.steps.push_back(p_dist(rng));
      spec.signs.push_back(q_dist(rng));
    }
    std::vector<Rational> coeffs;
    for (int e = 0; e <= 4; ++e) coeffs.emplace_back(c_dist(rng), 1 + q_dist(rng));
    const auto f = univariate(coeffs);
    const Rational x0(c_dist(rng), 2);
    EXPECT_EQ(nabla_ops(spec, f, x0), signed_cube_sum(spec, f, x0));
  }
}

TEST(Differences, ShapeErrors) {
  EXPECT_THROW(nabla_ops({{1, 2}, {0}}, univariate({Rational(1)}), Rational(0)), DimensionError);
  EXPECT_THROW(nabla_ops({{1}, {0}}, MultiPoly(2), Rational(0)), DimensionError);
}

TEST(PwFactor, Values) {
  EXPECT_EQ(p_w_factor({1, 1}, {1, 1}), 4);
  EXPECT_EQ(p_w_factor({1, 1}, {0, 1}), 0);
  EXPECT_EQ(p_w_factor({}, {}), 1);
  EXPECT_THROW(p_w_factor({1}, {1, 1}), DimensionError);
}

TEST(HighDegreeFormula, Values) {
  for (std::int64_t y : {-2, 0, 2, 4}) EXPECT_EQ(high_degree_b(3, 1, 0, y, 0, 2, 0, 0), Rational(1, 2));
  for (std::int64_t y : {-1, 1, 3}) EXPECT_EQ(high_degree_b(3, 1, 0, y, 0, 2, 0, 0), Rational(-1, 2));
  EXPECT_EQ(high_degree_b(3, 1, 0, 1, 0, 3, 0, 0), Rational(-1, 2));
  EXPECT_EQ(high_degree_b(3, 1, 0, 1, 0, 2, 1, 0), Rational(0));
  EXPECT_EQ(high_degree_b(3, 2, 1, 1, 1, 3, 0, 2), Rational(7 * 6 * 5 * 4, 2) / Rational(8));
}

TEST(HighDegreeFormula, Errors) {
  EXPECT_THROW(high_degree_b(3, 1, 0, 1, 0, 0, 2, 0), UndeterminedError);
  EXPECT_THROW(high_degree_b(3, 0, 0, 1, 0, 2, 0, 0), DomainError);
  EXPECT_THROW(high_degree_b(1, 1, 0, 1, 0, 2, 0, 0), DomainError);
  EXPECT_THROW(high_degree_b(2, 1, 0, -20, 0, 2, 0, 0), DomainError);
  // Key form: c1^2 must equal chi_h - 3 - n for some n > 0.
  EXPECT_THROW(high_degree_b(CoeffKey{2, 0, 0, {3, 0, 0, 2, 0}}), DomainError);
  EXPECT_EQ(high_degree_b(CoeffKey{2, 0, 0, {3, -1, 0, 2, 0}}), high_degree_b(3, 1, 0, 1, 0, 2, 0, 0));
}

TEST(CoeffTable, SymmetryAndOverwrite) {
  CoeffTable t;
  const CoeffKey key{2, 0, 0, {3, -1, 2, 2, 0}};  // c = 4, i = 2: even
  t.insert(key, Rational(1, 2), Provenance::user);
  EXPECT_THROW(t.insert(key, Rational(1), Provenance::user), PreconditionError);
  EXPECT_THROW(t.insert(key.mirrored(), Rational(-1, 2), Provenance::user), PreconditionError);
  t.insert(key.mirrored(), Rational(1, 2), Provenance::user);
  EXPECT_TRUE(t.symmetry_violations().empty());
  // At L.K = 0 with c + i odd the value is forced to vanish.
  EXPECT_THROW(t.insert(CoeffKey{1, 0, 0, {3, -1, 0, 2, 0}}, Rational(1), Provenance::user), PreconditionError);
}

TEST(CoeffTable, TsvRoundTrip) {
  CoeffTable t;
  EXPECT_EQ(t.to_tsv(), "i\tj\tk\tchi_h\tc1_squared\tlambda_dot_K\tlambda_squared\tm\tvalue\tprovenance\n");
  t.insert({2, 0, 0, {3, -1, 0, 2, 0}}, Rational(-1, 2), Provenance::closed_form);
  t.insert({1, 1, 0, {3, -1, 0, 2, 0}}, Rational(0), Provenance::solved);
  const auto text = t.to_tsv();
  EXPECT_EQ(CoeffTable::from_tsv(text), t);
  EXPECT_EQ(CoeffTable::from_tsv("# note\n" + text).to_tsv(), text);
  EXPECT_THROW(CoeffTable::from_tsv("i\tj\n"), InputError);
  EXPECT_THROW(CoeffTable::from_tsv(text + "1\t2\n"), InputError);
  EXPECT_THROW(CoeffTable::from_tsv(text + "1.5\t0\t0\t3\t-1\t0\t2\t0\t1\tuser\n"), InputError);
}

namespace {

// U3 with w = K, L = 2(-f1 + f2): admissible for delta = 3.
struct U3Setup {
  FourManifold x = fixture("u3");
  LatticeVector w = unit(34, 0, 2);
  LatticeVector lambda = unit(34, 2, -2) + unit(34, 3, 2);
};

}  // namespace

TEST(CobordismSum, SingleEntryTable) {
  U3Setup s;
  ASSERT_TRUE(admissibility(s.x, s.w, s.lambda, 3, 0).passed()) << admissibility(s.x, s.w, s.lambda, 3, 0).failures();
  const CoeffContext ctx{3, 0, 0, -8, 0};
  CoeffTable t;
  for (std::int64_t i = 0; i <= 3; ++i) {
    for (std::int64_t k = 0; i + 2 * k <= 3; ++k) {
      const CoeffKey key{i, 3 - i - 2 * k, k, ctx};
      if ((3 + i) % 2 != 0) continue;  // forced zero; left missing and dropped below
      t.insert(key, i == 3 ? Rational(1) : Rational(0), Provenance::user);
    }
  }
  const Frame f = Frame::reduced(s.x.lattice, {s.w, s.lambda}, {"K", "L"});
  const auto got = cobordism_sum(s.x, s.w, s.lambda, 3, 0, t, f, {0, 2});
  EXPECT_EQ(got, pow(f.linear(s.w), 3));
  EXPECT_THROW(cobordism_sum(s.x, s.w, s.lambda, 3, 0, t, f), UndeterminedError);
}

TEST(CobordismSum, EmptyBasicSetAndInadmissibleInput) {
  U3Setup s;
  auto empty = s.x;
  empty.sw.clear();
  const Frame f = Frame::full(s.x.lattice);
  EXPECT_TRUE(cobordism_sum(empty, s.w, s.lambda, 3, 0, CoeffTable{}, f).is_zero());
  EXPECT_THROW(cobordism_sum(s.x, s.w, s.lambda, 4, 0, CoeffTable{}, f), PreconditionError);
}

TEST(BlowupSolve, U3OneBlowUpDegreeTwo) {
  const auto u3 = fixture("u3");
  const auto setup = high_degree_setup(u3, 1, 0, 1);
  const auto res = blowup_identity_solve(u3, 1, setup.w_tilde, setup.lambda, 2, 0);
  EXPECT_TRUE(res.lhs_routes_agree);
  EXPECT_TRUE(res.rhs_routes_agree);
  for (const auto& key : res.determined) {
    EXPECT_GE(key.i, 1);
    EXPECT_EQ(res.solved.find(key)->value, high_degree_b(key)) << key.str();
  }
  for (const auto& key : res.undetermined) EXPECT_EQ(key.i, 0) << key.str();
  const CoeffKey b200{2, 0, 0, {3, -1, 0, 2, 0}};
  ASSERT_NE(res.solved.find(b200), nullptr);
  EXPECT_EQ(res.solved.find(b200)->value, Rational(-1, 2));
  EXPECT_TRUE(res.solved.symmetry_violations().empty());
}

TEST(BlowupSolve, DegenerateLambdaIsRejectedBeforeSolving) {
  const auto u3 = fixture("u3");
  const auto setup = high_degree_setup(u3, 1, 0, 1);
  const LatticeVector parallel = unit(35, 0, 2);  // L = K
  EXPECT_THROW(blowup_identity_solve(u3, 1, setup.w_tilde, parallel, 2, 0), PreconditionError);
  EXPECT_THROW(blowup_identity_solve(fixture("k3"), 1, unit(23, 22), unit(23, 0, 2), 2, 0), PreconditionError);
}

TEST(Reconstruction, C1sqBranchOnU3) {
  const auto u3 = fixture("u3");
  for (std::int64_t delta : {0, 4, 8}) {
    for (std::int64_t m = 0; 2 * m <= delta && m <= 1; ++m) {
      const auto rep = witten_via_cobordism(u3, unit(34, 0, 2), delta, m, Branch::c1sq);
      EXPECT_EQ(rep.status, ReconstructionStatus::match) << delta << " " << m;
      EXPECT_EQ(rep.manifold, "U3#CP2bar");
    }
  }
}

TEST(Reconstruction, AbundantBranchDropsLowIndices) {
  const auto x = blow_up(fixture("u3"));
  const auto w = fundamental_domain(x).front();
  const auto rep = witten_via_cobordism(x, w, 4, 0, Branch::abundant);
  EXPECT_EQ(rep.status, ReconstructionStatus::match);
  ASSERT_GE(rep.notes.size(), 2U);
  EXPECT_NE(rep.notes[rep.notes.size() - 2].find("i = 0 dropped"), std::string::npos);
  EXPECT_NE(rep.notes.back().find("i = 1 dropped"), std::string::npos);
}

TEST(Reconstruction, GapIsReportedNotFilled) {
  const auto x = blow_up(fixture("u3"));
  const auto rep = witten_via_cobordism(x, fundamental_domain(x).front(), 5, 0, Branch::c1sq);
  EXPECT_EQ(rep.status, ReconstructionStatus::gap);
  EXPECT_FALSE(rep.gaps.empty());
  EXPECT_FALSE(rep.reconstructed.has_value());
}

TEST(Reconstruction, InadmissibleDegreeIsAnError) {
  const auto u3 = fixture("u3");
  EXPECT_THROW(witten_via_cobordism(u3, unit(34, 0, 2), 2, 0, Branch::c1sq), PreconditionError);
  EXPECT_THROW(witten_via_cobordism(u3, unit(34, 0, 1), 4, 0, Branch::c1sq), PreconditionError);
}
