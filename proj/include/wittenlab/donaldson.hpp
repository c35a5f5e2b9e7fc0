#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wittenlab/frame.hpp"
#include "wittenlab/manifold.hpp"
#include "wittenlab/multipoly.hpp"

namespace wittenlab {

inline constexpr unsigned kDefaultDegreeCap = 16;

/// WITTENLAB_DEGREE_CAP if set to a non-negative integer, else 16.
unsigned degree_cap();
/// Throws PreconditionError when `degree` exceeds the cap.
void require_within_cap(std::int64_t degree, const char* what);

/// delta = -w^2 - 3 chi_h (mod 4).
bool degree_parity_ok(const FourManifold& x, const LatticeVector& w, std::int64_t delta);

/// (w^2 + w.K) / 2; PreconditionError when the sum is odd.
std::int64_t sign_eps(const UnimodularLattice& lattice, const LatticeVector& w, const LatticeVector& k);

/// D^w(h^(delta-2m) x^m) summed over the fundamental domain with the weight
/// n(0) = 1/2. Zero when the parity condition fails. Requires simple type.
MultiPoly donaldson_closed_form(const FourManifold& x, const LatticeVector& w, std::int64_t delta,
                                std::int64_t m, const Frame& frame);
MultiPoly donaldson_closed_form(const FourManifold& x, const LatticeVector& w, std::int64_t delta,
                                std::int64_t m);

/// Same invariant summed over every basic class with 2^(k+c-2-m) in the
/// denominator.
MultiPoly donaldson_closed_form_all_classes(const FourManifold& x, const LatticeVector& w, std::int64_t delta,
                                            std::int64_t m, const Frame& frame);

/// 2^(2-c) exp(Q/2) sum_K (-1)^eps(w,K) SW'(K) exp(<K,h>) through degree d.
MultiPoly witten_series_truncated(const FourManifold& x, const LatticeVector& w, unsigned max_degree,
                                  const Frame& frame);

struct DegreeCheck {
  unsigned degree = 0;
  bool ok = true;
  /// Monomials whose coefficients disagree, rendered in the frame.
  std::vector<std::string> mismatches;
};

struct WittenReport {
  std::vector<DegreeCheck> degrees;
  /// Degrees delta failing the parity condition whose closed form is nonzero.
  std::vector<std::string> parity_failures;

  bool passed() const;
};

/// Compares d! times the degree-d part of a series with the closed forms at
/// (d, 0) and (d+2, 1), combined as D(h^d) + D(h^d x)/2.
DegreeCheck compare_degree(unsigned d, const MultiPoly& series_part, const MultiPoly& closed_sum, const Frame& frame);

WittenReport verify_witten_consistency(const FourManifold& x, const LatticeVector& w, unsigned max_degree,
                                       const Frame& frame);
WittenReport verify_witten_consistency(const FourManifold& x, const LatticeVector& w, unsigned max_degree);

/// sum over B of (-1)^eps(w,K) SW'(K) <K,h>^i; w must be characteristic.
MultiPoly sw_poly(const FourManifold& x, const LatticeVector& w, unsigned i, const Frame& frame);
/// (1 + (-1)^(c+i)) sum over B' of (-1)^eps(w,K) n(K) SW'(K) <K,h>^i.
MultiPoly sw_poly_fundamental(const FourManifold& x, const LatticeVector& w, unsigned i, const Frame& frame);

struct VanishingReport {
  struct Entry {
    unsigned i = 0;
    bool vanishes = true;
  };
  std::vector<Entry> entries;  // one per i < c - 2
  bool passed() const;
};

VanishingReport check_low_degree_vanishing(const FourManifold& x, const LatticeVector& w, const Frame& frame);

}  // namespace wittenlab
