#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wittenlab/frame.hpp"
#include "wittenlab/lattice.hpp"

namespace wittenlab {

/// SW'(K) for every basic class K; absent classes have value zero.
using SWData = std::map<LatticeVector, std::int64_t>;

struct FourManifold {
  std::string name;
  std::int64_t euler = 0;
  std::int64_t signature = 0;
  UnimodularLattice lattice;
  SWData sw;
  /// Recorded fact that Witten's equality holds; not computed.
  bool witten_verified = false;
  std::optional<HyperbolicPair> hyperbolic_witness;
  /// Free-form note about where the data came from.
  std::string provenance;

  friend bool operator==(const FourManifold&, const FourManifold&);
};

struct DerivedInvariants {
  std::int64_t c1_squared = 0;
  std::int64_t chi_h = 0;
  /// c = chi_h - c1^2.
  std::int64_t c_defect = 0;
};

/// Throws PreconditionError when euler + signature is not divisible by 4.
DerivedInvariants derived_invariants(const FourManifold& x);

/// Every violated invariant, empty when the record is valid.
std::vector<std::string> validate(const FourManifold& x);
/// Throws InputError listing the violations.
void require_valid(const FourManifold& x);

/// Adds -K with value (-1)^chi_h SW'(K) wherever only K is listed.
void complete_conjugates(SWData& sw, std::int64_t chi_h);

std::vector<LatticeVector> basic_classes(const FourManifold& x);
bool is_sw_simple_type(const FourManifold& x);

/// One class per {K, -K}: the one whose first nonzero coordinate is positive,
/// and 0 itself. Ascending coordinate order.
std::vector<LatticeVector> fundamental_domain(const FourManifold& x);

/// Reduced frame on the fundamental domain, labelled K1, K2, ...
Frame basic_frame(const FourManifold& x);

enum class Tristate { yes, no, unknown };
const char* to_string(Tristate t);

struct AbundanceReport {
  Tristate abundant = Tristate::unknown;
  PairSearchResult search;
};

/// Looks for a hyperbolic pair in the orthogonal complement of B(X).
AbundanceReport is_abundant(const FourManifold& x, int search_bound = kDefaultHyperbolicBound);

struct Condition {
  std::string name;
  Tristate status = Tristate::unknown;
  std::string detail;
};

struct UsefulReport {
  std::vector<Condition> conditions;  // four entries
  std::optional<HyperbolicPair> pair;

  bool passed() const;
};

UsefulReport is_useful(const FourManifold& x, int search_bound = kDefaultHyperbolicBound);

/// Nonzero restriction of the form to the joint kernel of pairing with `classes`.
bool form_nonzero_on_kernel(const UnimodularLattice& lattice, const std::vector<LatticeVector>& classes);

/// Connected sum with one reversed projective plane: the new last basis
/// vector is the exceptional class e*, and K + (2n+1)e* receives SW'(K)
/// whenever K^2 - 4(n^2+n) >= c1^2(X).
FourManifold blow_up(const FourManifold& x);
FourManifold blow_up(const FourManifold& x, int times);

}  // namespace wittenlab
