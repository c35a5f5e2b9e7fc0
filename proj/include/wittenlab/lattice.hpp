#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wittenlab/rational.hpp"

namespace wittenlab {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Integer coordinate vector in the fixed basis of a lattice.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  static LatticeVector zero(std::size_t rank) { return LatticeVector(std::vector<std::int64_t>(rank, 0)); }
  static LatticeVector basis(std::size_t rank, std::size_t index);

  std::size_t size() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }

  bool is_zero() const;
  /// True when the first nonzero coordinate is positive.
  bool is_positive() const;
  /// Zero-extends to `rank` coordinates.
  LatticeVector extended(std::size_t rank) const;

  LatticeVector operator-() const;
  LatticeVector& operator+=(const LatticeVector& rhs);
  LatticeVector& operator-=(const LatticeVector& rhs);
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(std::int64_t s, LatticeVector v);

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;

  /// "(a,b,c)".
  std::string str() const;

 private:
  std::vector<std::int64_t> coords_;
};

/// Congruence signature of a symmetric form; b_zero counts the radical.
struct Signature {
  std::size_t b_plus = 0;
  std::size_t b_minus = 0;
  std::size_t b_zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Exact signature of any symmetric integer matrix by diagonalization over Q.
Signature congruence_signature(const IntMatrix& symmetric);

BigInt determinant(const IntMatrix& square);

/// Named standard blocks: "H", "E8", "-E8", "<1>", "<-1>".
IntMatrix standard_block(const std::string& name);
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);

/// Symmetric integer matrix of determinant +-1, i.e. H^2 of a closed four-manifold.
class UnimodularLattice {
 public:
  /// Validates symmetry and |det| = 1; throws InputError naming the violation.
  explicit UnimodularLattice(IntMatrix gram);
  static UnimodularLattice from_blocks(const std::vector<std::string>& blocks);

  std::size_t rank() const { return gram_.size(); }
  const IntMatrix& gram() const { return gram_; }
  const Signature& signature() const { return signature_; }
  bool is_even() const;

  std::int64_t pair(const LatticeVector& u, const LatticeVector& v) const;
  std::int64_t square(const LatticeVector& u) const { return pair(u, u); }
  /// Coefficients of the functional v -> u . v in the lattice basis (gram * u).
  LatticeVector dual(const LatticeVector& u) const;
  bool is_characteristic(const LatticeVector& k) const;

  void require_member(const LatticeVector& v, const char* what) const;

  friend bool operator==(const UnimodularLattice& a, const UnimodularLattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  Signature signature_;
};

/// Signature (b+, b-) of the lattice; b_zero is always 0 for unimodular forms.
Signature congruence_signature(const UnimodularLattice& lattice);

/// Appends an orthogonal <-1> summand; the new last basis vector is e*.
UnimodularLattice blow_up_lattice(const UnimodularLattice& lattice);

/// Basis of the saturated sublattice {v : v . s = 0 for all s in S}.
std::vector<LatticeVector> orthogonal_complement_basis(const UnimodularLattice& lattice,
                                                       std::span<const LatticeVector> constraints);

/// Rank over Q of a family of integer vectors.
std::size_t rational_rank(std::span<const LatticeVector> vectors);

/// Gram matrix of the restriction of the form to span(basis).
IntMatrix restricted_gram(const UnimodularLattice& lattice, std::span<const LatticeVector> basis);

struct HyperbolicPair {
  LatticeVector f1;
  LatticeVector f2;
};

enum class PairSearchStatus {
  found,             ///< search produced a pair
  witness_accepted,  ///< the supplied witness satisfied every condition
  witness_rejected,  ///< the supplied witness failed; see failures
  none_exists,       ///< the restricted form is semidefinite, so no pair can exist
  bound_exhausted,   ///< nothing found within the search bound; existence unknown
};

const char* to_string(PairSearchStatus status);

struct PairSearchResult {
  PairSearchStatus status = PairSearchStatus::bound_exhausted;
  std::optional<HyperbolicPair> pair;
  std::vector<std::string> failures;

  bool has_pair() const { return pair.has_value(); }
};

inline constexpr int kDefaultHyperbolicBound = 2;
inline constexpr std::size_t kDefaultCandidateCap = 200000;

/// Checks f1^2 = 0, f2^2 = 0, f1 . f2 = 1 and membership in span(sub_basis).
std::vector<std::string> hyperbolic_pair_failures(const UnimodularLattice& lattice,
                                                  std::span<const LatticeVector> sub_basis,
                                                  const HyperbolicPair& pair);

/// Witness-first; otherwise enumerates integer combinations of `sub_basis`
/// with coordinates in [-bound, bound], ordered by L1 norm and then
/// lexicographically descending, and returns the first pair found.
PairSearchResult hyperbolic_pair(const UnimodularLattice& lattice,
                                 std::span<const LatticeVector> sub_basis,
                                 const std::optional<HyperbolicPair>& witness,
                                 int search_bound = kDefaultHyperbolicBound,
                                 std::size_t candidate_cap = kDefaultCandidateCap);

/// Solves v = sum c_i * generators[i] over Q; nullopt when v is outside the span.
std::optional<std::vector<Rational>> express_in_span(std::span<const LatticeVector> generators,
                                                     const LatticeVector& v);

}  // namespace wittenlab
