#include "wittenlab/donaldson.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "wittenlab/errors.hpp"

namespace wittenlab {

namespace {

std::int64_t mod4(std::int64_t v) { return ((v % 4) + 4) % 4; }

void require_simple_type(const FourManifold& x) {
  if (!is_sw_simple_type(x)) {
    throw UnsupportedError("manifold '" + x.name + "' is not of SW simple type; the closed form does not apply");
  }
}

// Powers p^0..p^top, reused across the (i, k) double sum.
std::vector<MultiPoly> powers(const MultiPoly& p, unsigned top) {
  std::vector<MultiPoly> out{MultiPoly::constant(p.weights(), Rational(1))};
  for (unsigned e = 1; e <= top; ++e) out.push_back(out.back() * p);
  return out;
}

// Shared body of both closed forms: classes with weights, and the power of two
// offset (c-3 for the fundamental domain, c-2 for all classes).
MultiPoly closed_form_sum(const FourManifold& x, const LatticeVector& w, std::int64_t delta, std::int64_t m,
                          const Frame& frame, bool fundamental) {
  if (m < 0 || delta - 2 * m < 0) {
    throw PreconditionError("need m >= 0 and delta - 2m >= 0 (delta=" + std::to_string(delta) +
                            ", m=" + std::to_string(m) + ")");
  }
  require_simple_type(x);
  x.lattice.require_member(w, "w");
  if (!degree_parity_ok(x, w, delta)) return frame.zero();
  const auto inv = derived_invariants(x);
  const auto d = static_cast<unsigned>(delta - 2 * m);
  const std::int64_t offset = inv.c_defect - (fundamental ? 3 : 2) - m;
  const auto q_pows = powers(frame.quadratic(), d / 2);
  const Rational d_fact = Rational::factorial(d);

  MultiPoly total = frame.zero();
  const auto classes = fundamental ? fundamental_domain(x) : basic_classes(x);
  for (const auto& k : classes) {
    Rational weight(sign_power(sign_eps(x.lattice, w, k)) * x.sw.at(k));
    if (fundamental && k.is_zero()) weight *= Rational(1, 2);
    const auto k_pows = powers(frame.linear(k), d);
    for (unsigned i = d % 2; i <= d; i += 2) {
      const unsigned kk = (d - i) / 2;
      const Rational coeff = weight * d_fact /
                             (Rational::power_of_two(kk + offset) * Rational::factorial(kk) * Rational::factorial(i));
      total += coeff * (k_pows[i] * q_pows[kk]);
    }
  }
  return total;
}

}  // namespace

unsigned degree_cap() {
  const char* env = std::getenv("WITTENLAB_DEGREE_CAP");
  if (env == nullptr || *env == '\0') return kDefaultDegreeCap;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0) throw InputError(std::string("WITTENLAB_DEGREE_CAP must be a non-negative integer, got '") + env + "'");
  return static_cast<unsigned>(v);
}

void require_within_cap(std::int64_t degree, const char* what) {
  const unsigned cap = degree_cap();
  if (degree > static_cast<std::int64_t>(cap)) {
    throw PreconditionError(std::string(what) + " = " + std::to_string(degree) + " exceeds the degree cap " +
                            std::to_string(cap) + " (set WITTENLAB_DEGREE_CAP to raise it)");
  }
}

bool degree_parity_ok(const FourManifold& x, const LatticeVector& w, std::int64_t delta) {
  const auto chi_h = derived_invariants(x).chi_h;
  return mod4(delta) == mod4(-x.lattice.square(w) - 3 * chi_h);
}

std::int64_t sign_eps(const UnimodularLattice& lattice, const LatticeVector& w, const LatticeVector& k) {
  const std::int64_t s = lattice.square(w) + lattice.pair(w, k);
  if (s % 2 != 0) {
    throw PreconditionError("w^2 + w.K is odd for K = " + k.str() + " (K is not characteristic)");
  }
  return s / 2;
}

MultiPoly donaldson_closed_form(const FourManifold& x, const LatticeVector& w, std::int64_t delta, std::int64_t m,
                                const Frame& frame) {
  require_within_cap(delta, "delta");
  return closed_form_sum(x, w, delta, m, frame, true);
}

MultiPoly donaldson_closed_form(const FourManifold& x, const LatticeVector& w, std::int64_t delta, std::int64_t m) {
  return donaldson_closed_form(x, w, delta, m, basic_frame(x));
}

MultiPoly donaldson_closed_form_all_classes(const FourManifold& x, const LatticeVector& w, std::int64_t delta,
                                            std::int64_t m, const Frame& frame) {
  require_within_cap(delta, "delta");
  return closed_form_sum(x, w, delta, m, frame, false);
}

MultiPoly witten_series_truncated(const FourManifold& x, const LatticeVector& w, unsigned max_degree,
                                  const Frame& frame) {
  require_within_cap(max_degree, "max degree");
  x.lattice.require_member(w, "w");
  const auto inv = derived_invariants(x);
  MultiPoly classes = frame.zero();
  for (const auto& k : basic_classes(x)) {
    const Rational weight(sign_power(sign_eps(x.lattice, w, k)) * x.sw.at(k));
    classes += weight * exp_truncated(frame.linear(k), max_degree);
  }
  const MultiPoly gauss = exp_truncated(frame.quadratic() * Rational(1, 2), max_degree);
  return Rational::power_of_two(2 - inv.c_defect) * MultiPoly::multiply_truncated(gauss, classes, max_degree);
}

bool WittenReport::passed() const {
  return parity_failures.empty() &&
         std::all_of(degrees.begin(), degrees.end(), [](const DegreeCheck& d) { return d.ok; });
}

DegreeCheck compare_degree(unsigned d, const MultiPoly& series_part, const MultiPoly& closed_sum, const Frame& frame) {
  DegreeCheck check;
  check.degree = d;
  for (const auto& mono : differing_monomials(series_part, closed_sum)) {
    const MultiPoly term = MultiPoly::term(frame.weights(), mono, Rational(1));
    std::string text = frame.render(term);
    if (text.rfind("1 * ", 0) == 0) text = text.substr(4);
    check.mismatches.push_back(text + ": series " + series_part.coefficient(mono).str() + ", closed form " +
                               closed_sum.coefficient(mono).str());
  }
  check.ok = check.mismatches.empty();
  return check;
}

WittenReport verify_witten_consistency(const FourManifold& x, const LatticeVector& w, unsigned max_degree,
                                       const Frame& frame) {
  if (!x.witten_verified) {
    throw PreconditionError("manifold '" + x.name + "' does not record Witten's equality (witten_verified is false)");
  }
  require_simple_type(x);
  const MultiPoly series = witten_series_truncated(x, w, max_degree, frame);
  WittenReport report;
  for (unsigned d = 0; d <= max_degree; ++d) {
    const MultiPoly lhs = Rational::factorial(d) * series.homogeneous_part(d);
    const MultiPoly rhs = closed_form_sum(x, w, d, 0, frame, true) +
                          Rational(1, 2) * closed_form_sum(x, w, d + 2, 1, frame, true);
    report.degrees.push_back(compare_degree(d, lhs, rhs, frame));
  }
  for (std::int64_t delta = 0; delta <= static_cast<std::int64_t>(max_degree) + 2; ++delta) {
    if (degree_parity_ok(x, w, delta)) continue;
    for (std::int64_t m = 0; 2 * m <= delta; ++m) {
      if (!closed_form_sum(x, w, delta, m, frame, true).is_zero()) {
        report.parity_failures.push_back("delta=" + std::to_string(delta) + " m=" + std::to_string(m));
      }
    }
  }
  return report;
}

WittenReport verify_witten_consistency(const FourManifold& x, const LatticeVector& w, unsigned max_degree) {
  return verify_witten_consistency(x, w, max_degree, basic_frame(x));
}

namespace {

void require_characteristic_w(const FourManifold& x, const LatticeVector& w) {
  x.lattice.require_member(w, "w");
  if (!x.lattice.is_characteristic(w)) throw PreconditionError("w = " + w.str() + " is not characteristic");
}

}  // namespace

MultiPoly sw_poly(const FourManifold& x, const LatticeVector& w, unsigned i, const Frame& frame) {
  require_characteristic_w(x, w);
  MultiPoly total = frame.zero();
  for (const auto& k : basic_classes(x)) {
    const Rational weight(sign_power(sign_eps(x.lattice, w, k)) * x.sw.at(k));
    total += weight * pow(frame.linear(k), i);
  }
  return total;
}

MultiPoly sw_poly_fundamental(const FourManifold& x, const LatticeVector& w, unsigned i, const Frame& frame) {
  require_characteristic_w(x, w);
  const auto c = derived_invariants(x).c_defect;
  if ((c + i) % 2 != 0) return frame.zero();
  MultiPoly total = frame.zero();
  for (const auto& k : fundamental_domain(x)) {
    Rational weight(sign_power(sign_eps(x.lattice, w, k)) * x.sw.at(k));
    if (k.is_zero()) weight *= Rational(1, 2);
    total += weight * pow(frame.linear(k), i);
  }
  return Rational(2) * total;
}

bool VanishingReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.vanishes; });
}

VanishingReport check_low_degree_vanishing(const FourManifold& x, const LatticeVector& w, const Frame& frame) {
  VanishingReport report;
  const auto c = derived_invariants(x).c_defect;
  for (std::int64_t i = 0; i < c - 2; ++i) {
    report.entries.push_back({static_cast<unsigned>(i), sw_poly(x, w, static_cast<unsigned>(i), frame).is_zero()});
  }
  return report;
}

}  // namespace wittenlab
