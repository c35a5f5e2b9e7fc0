// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "wittenlab/cli.hpp"
#include "wittenlab/cobordism.hpp"
#include "wittenlab/donaldson.hpp"
#include "wittenlab/errors.hpp"
#include "wittenlab/manifold_io.hpp"

using namespace wittenlab;
using wittenlab::testing::fixture;
using wittenlab::testing::fixture_path;
using wittenlab::testing::unit;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) detail = what;
    ok = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<FourManifold> witten_family() {
  const auto k3 = fixture("k3");
  const auto u3 = fixture("u3");
  return {k3, blow_up(k3, 1), blow_up(k3, 2), blow_up(k3, 3), u3, blow_up(u3, 1), blow_up(u3, 2)};
}

// Characteristic classes: even parts built from the witness pair and the
// basic classes, plus the sum of the exceptional classes.
std::vector<LatticeVector> characteristic_choices(const FourManifold& x, std::size_t base_rank) {
  const std::size_t r = x.lattice.rank();
  LatticeVector odd = LatticeVector::zero(r);
  for (std::size_t u = base_rank; u < r; ++u) odd[u] = 1;
  const auto& pair = *x.hyperbolic_witness;
  std::vector<LatticeVector> out{odd, odd + 2 * pair.f1, odd + 2 * pair.f1 - 2 * pair.f2, odd + 4 * pair.f2};
  for (const auto& k : fundamental_domain(x)) out.push_back(k);
  return out;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  for (const auto& x : witten_family()) {
    const std::size_t base = x.name.rfind("K3", 0) == 0 ? 22 : 34;
    int checked = 0;
    for (const auto& w : characteristic_choices(x, base)) {
      o.require(x.lattice.is_characteristic(w), x.name + ": test w not characteristic");
      const auto rep = verify_witten_consistency(x, w, 10);
      o.require(rep.passed(), x.name + " w=" + w.str() + " fails");
      ++checked;
    }
    o.require(checked >= 3, x.name + ": fewer than three w");
  }
  const double s = seconds_since(t0);
  o.require(s < 30.0, "took " + std::to_string(s) + " s");
  if (o.ok) o.detail = "7 manifolds, degrees <= 10, >= 4 choices of w each, " + std::to_string(s) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto k3 = fixture("k3");
  const Frame f = basic_frame(k3);
  const auto w = LatticeVector::zero(22);
  const auto q = f.quadratic();
  o.require(donaldson_closed_form(k3, w, 2, 0, f) == q, "D(h^2) != Q");
  o.require(donaldson_closed_form(k3, w, 2, 1, f) == f.constant(Rational(2)), "D(x) != 2");
  o.require(donaldson_closed_form(k3, w, 6, 0, f) == Rational(15) * q * q * q, "D(h^6) != 15 Q^3");
  o.require(donaldson_closed_form(k3, w, 6, 1, f) == Rational(6) * q * q, "D(h^4 x) != 6 Q^2");
  o.require(donaldson_closed_form(k3, w, 4, 0, f).is_zero(), "D(h^4) != 0");
  if (o.ok) o.detail = "D(h^2)=Q, D(x)=2, D(h^6)=15Q^3, D(h^4x)=6Q^2, D(h^4)=0";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(20261015);
  std::uniform_int_distribution<int> n_dist(0, 6);
  std::uniform_int_distribution<int> deg_dist(0, 4);
  std::uniform_int_distribution<int> p_dist(-5, 5);
  std::uniform_int_distribution<int> small(-7, 7);
  std::uniform_int_distribution<int> den(1, 5);
  const std::vector<unsigned> one{1};
  for (int trial = 0; trial < 200; ++trial) {
    DifferenceSpec spec;
    const int n = n_dist(rng);
    for (int u = 0; u < n; ++u) {
      spec.steps.push_back(p_dist(rng));
      spec.signs.push_back(small(rng));
    }
    MultiPoly f(one);
    const int deg = deg_dist(rng);
    for (int e = 0; e <= deg; ++e) f.add_term({static_cast<Exponent>(e)}, Rational(small(rng), den(rng)));
    const Rational x0(small(rng), den(rng));
    o.require(nabla_ops(spec, f, x0) == signed_cube_sum(spec, f, x0), "trial " + std::to_string(trial));

    const Rational c(small(rng), den(rng));
    bool all_even = true;
    for (auto q : spec.signs) all_even = all_even && q % 2 == 0;
    const Rational expected = all_even ? Rational::power_of_two(n) * c : Rational(0);
    o.require(nabla_ops(spec, MultiPoly::constant(one, c), x0) == expected, "constant case " + std::to_string(trial));
  }
  if (o.ok) o.detail = "200 random trials plus constant cases";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::vector<FourManifold> family{fixture("k3"), fixture("u3"), fixture("k3_blowup_partial"),
                                   blow_up(fixture("u3"))};
  for (const auto& x : family) {
    const auto b = blow_up(x);
    const std::size_t r = b.lattice.rank();
    const auto e = LatticeVector::basis(r, r - 1);
    std::size_t expected = 0;
    for (const auto& [k, v] : x.sw) {
      const auto kk = k.extended(r);
      expected += 2;
      o.require(b.sw.count(kk + e) && b.sw.at(kk + e) == v, b.name + ": K + e* missing or changed");
      o.require(b.sw.count(kk - e) && b.sw.at(kk - e) == v, b.name + ": K - e* missing or changed");
    }
    o.require(b.sw.size() == expected, b.name + ": extra basic classes");
    o.require(is_sw_simple_type(x) == is_sw_simple_type(b), b.name + ": simple type changed");
    // Consistency holds upstairs and downstairs.
    const auto wx = fundamental_domain(x).front();
    const auto wb = wx.extended(r) + e;
    o.require(verify_witten_consistency(x, wx, 8).passed(), x.name + ": consistency fails");
    o.require(verify_witten_consistency(b, wb, 8).passed(), b.name + ": consistency fails");
  }
  if (o.ok) o.detail = "B(X#CP2bar) = {K +- e*} with values kept; simple type and consistency kept";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto u3 = fixture("u3");
  const auto inv = derived_invariants(u3);
  o.require(u3.euler == 36 && u3.signature == -24, "chi/sigma");
  o.require(inv.chi_h == 3 && inv.c1_squared == 0 && inv.c_defect == 3, "derived invariants");
  o.require(u3.lattice.signature().b_plus == 5, "b+");
  o.require(validate(u3).empty(), "validate");
  o.require(u3.sw.size() == 2 && u3.sw.at(unit(34, 0, 2)) == 1 && u3.sw.at(unit(34, 0, -2)) == -1, "SW values");
  const auto rep = is_useful(u3);
  for (const auto& c : rep.conditions) o.require(c.status == Tristate::yes, c.name + ": " + c.detail);
  o.require(rep.conditions.size() == 4 && rep.passed(), "is_useful");
  if (o.ok) o.detail = "U3 validates and all four usefulness conditions hold";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto u3 = fixture("u3");
  int systems = 0;
  for (int n = 1; n <= 2; ++n) {
    const auto blown = blow_up(u3, n);
    for (std::int64_t delta = 0; delta <= 8; ++delta) {
      for (std::int64_t m = 0; m <= 1 && 2 * m <= delta; ++m) {
        for (std::int64_t xp = 0; xp <= 1; ++xp) {
          // Smallest y with the standard L admissible and inside the formula's domain.
          std::optional<HighDegreeSetup> setup;
          std::int64_t yp = -40;
          for (; yp <= 40; ++yp) {
            const auto s = high_degree_setup(u3, n, xp, yp);
            if (admissibility(blown, s.w_tilde, s.lambda, delta, m).passed() &&
                2 * yp > delta - 4 * 3 - 3 - n) {
              setup = s;
              break;
            }
          }
          if (!setup) continue;  // delta of the wrong parity for this n
          const auto res = blowup_identity_solve(u3, n, setup->w_tilde, setup->lambda, delta, m);
          ++systems;
          const std::string tag = "n=" + std::to_string(n) + " delta=" + std::to_string(delta) +
                                  " m=" + std::to_string(m) + " x=" + std::to_string(xp);
          o.require(res.lhs_routes_agree && res.rhs_routes_agree, tag + ": routes disagree");
          o.require(res.report.status != SolveStatus::inconsistent, tag + ": inconsistent");
          for (const auto& key : res.unknowns) {
            const bool low = key.i < n;
            const bool determined = res.solved.find(key) != nullptr;
            o.require(determined != low, tag + ": " + key.str() + (low ? " determined" : " undetermined"));
            if (determined && !low) o.require(res.solved.find(key)->value == high_degree_b(key), tag + ": " + key.str());
          }
        }
      }
    }
  }
  const double s = seconds_since(t0);
  o.require(systems > 0, "no admissible systems");
  o.require(s < 120.0, "took " + std::to_string(s) + " s");
  if (o.ok) o.detail = std::to_string(systems) + " systems solved, " + std::to_string(s) + " s";
  return o;
}

Outcome criterion7() {
  Outcome o;
  int matched = 0;
  const auto u3 = fixture("u3");
  // (a) c1sq branch: U3 is blown up once and compared on blow_up(U3).
  for (std::int64_t delta = 0; delta <= 9; ++delta) {
    if (delta % 4 != 0) continue;  // admissible degrees on U3#CP2bar with w~ = K + e*
    for (std::int64_t m = 0; m <= 1 && 2 * m <= delta; ++m) {
      const auto rep = witten_via_cobordism(u3, unit(34, 0, 2), delta, m, Branch::c1sq);
      o.require(rep.status == ReconstructionStatus::match,
                "c1sq delta=" + std::to_string(delta) + " m=" + std::to_string(m) + ": " + to_string(rep.status));
      ++matched;
    }
  }
  // (b) abundant branch on blow_up(U3) and its blow-up.
  for (int times = 1; times <= 2; ++times) {
    const auto x = blow_up(u3, times);
    const auto c = derived_invariants(x).c_defect;
    for (const auto& w : fundamental_domain(x)) {
      for (std::int64_t delta = 0; delta <= 9; ++delta) {
        if ((delta - c) % 4 != 0) continue;
        for (std::int64_t m = 0; m <= 1 && 2 * m <= delta; ++m) {
          const auto rep = witten_via_cobordism(x, w, delta, m, Branch::abundant);
          o.require(rep.status == ReconstructionStatus::match, x.name + " delta=" + std::to_string(delta) + ": " +
                                                                   to_string(rep.status));
          ++matched;
        }
      }
    }
  }
  if (o.ok) o.detail = std::to_string(matched) + " reconstructions match the closed form";
  return o;
}

Outcome criterion8() {
  Outcome o;
  int checked = 0;
  for (const auto& x : witten_family()) {
    if (is_abundant(x).abundant != Tristate::yes) continue;
    const auto c = derived_invariants(x).c_defect;
    const Frame f = basic_frame(x);
    for (const auto& w : fundamental_domain(x)) {
      for (std::int64_t i = 0; i <= 10; ++i) {
        const bool must_vanish = i < c - 2 || (c + i) % 2 != 0;
        if (!must_vanish) continue;
        o.require(sw_poly(x, w, static_cast<unsigned>(i), f).is_zero(), x.name + " i=" + std::to_string(i));
        ++checked;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " vanishing polynomials";
  return o;
}

Outcome criterion9() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands{
      {"info", fixture_path("u3.json")},
      {"donaldson", fixture_path("u3.json"), "--w", "0", "--delta", "7", "--m", "1"},
      {"verify", "witten", fixture_path("k3.json"), "--max-degree", "8"},
      {"verify", "cobordism", fixture_path("u3.json"), "--branch", "c1sq", "--delta", "8"},
      {"coeffs", "solve", fixture_path("u3.json"), "--blowups", "2", "--delta", "7", "--x", "1", "--y", "1"},
      {"sw-poly", fixture_path("k3_blowup_partial.json"), "--i", "3"},
  };
  for (const auto& args : commands) {
    std::ostringstream a, b, ea, eb;
    const int ca = run_command(args, a, ea);
    const int cb = run_command(args, b, eb);
    o.require(ca == 0 && cb == 0, args[0] + ": exit " + std::to_string(ca) + " " + ea.str());
    o.require(a.str() == b.str() && !a.str().empty(), args[0] + ": output differs between runs");
  }
  for (const char* name : {"k3", "u3", "k3_blowup_partial"}) {
    const auto x = fixture(name);
    const auto again = manifold_from_json(manifold_to_json(x));
    o.require(again == x, std::string(name) + ": round trip");
    o.require(manifold_to_json(again).dump() == manifold_to_json(x).dump(), std::string(name) + ": serialization");
  }
  // Coefficient tables round-trip through their TSV form.
  std::ostringstream tsv, err;
  run_command({"coeffs", "solve", fixture_path("u3.json"), "--blowups", "1", "--delta", "6", "--x", "1", "--y", "1"},
              tsv, err);
  const auto table = CoeffTable::from_tsv(tsv.str());
  o.require(table.size() > 0 && CoeffTable::from_tsv(table.to_tsv()) == table, "TSV round trip");
  if (o.ok) o.detail = "repeated runs byte-identical; fixtures and tables round-trip";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Witten consistency on K3, K3#kCP2bar, U3 and blow-ups", criterion1},
      {"K3 ground-truth values", criterion2},
      {"finite differences equal signed cube sums", criterion3},
      {"blow-up structure", criterion4},
      {"U3 fixture is useful", criterion5},
      {"coefficient determination on U3", criterion6},
      {"reconstruction via the cobordism sum", criterion7},
      {"low-degree and odd-parity vanishing", criterion8},
      {"CLI determinism and round trips", criterion9},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.ok) ++failures;
    std::cout << "criterion " << (i + 1) << ": " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << o.detail << ")\n";
  }
  return failures == 0 ? 0 : 1;
}
