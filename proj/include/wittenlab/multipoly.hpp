#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wittenlab/rational.hpp"

namespace wittenlab {

using Exponent = std::uint16_t;
using Monomial = std::vector<Exponent>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Every variable carries a positive integer weight; "degree" always means
/// weighted total degree. Polynomials with different weight vectors live in
/// different rings and cannot be combined. No stored coefficient is zero.
class MultiPoly {
 public:
  /// Zero polynomial in `variable_count` variables of weight 1.
  explicit MultiPoly(std::size_t variable_count = 0);
  /// Zero polynomial with explicit variable weights.
  explicit MultiPoly(std::vector<unsigned> weights);

  static MultiPoly constant(std::vector<unsigned> weights, const Rational& value);
  static MultiPoly variable(std::vector<unsigned> weights, std::size_t index);
  static MultiPoly term(std::vector<unsigned> weights, Monomial monomial, const Rational& coeff);

  std::size_t variable_count() const { return weights_.size(); }
  const std::vector<unsigned>& weights() const { return weights_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Weighted total degree; -1 for the zero polynomial.
  int degree() const;
  unsigned monomial_degree(const Monomial& m) const;
  bool is_homogeneous() const;

  /// Coefficient of `monomial`, zero if absent. Length mismatch throws DimensionError.
  Rational coefficient(const Monomial& monomial) const;
  Rational constant_term() const;

  MultiPoly homogeneous_part(unsigned degree) const;
  /// Drops every term of degree greater than `max_degree`.
  MultiPoly truncated(unsigned max_degree) const;

  /// Adds `coeff * monomial` in place.
  void add_term(const Monomial& monomial, const Rational& coeff);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);
  MultiPoly& operator*=(const Rational& scalar);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

  /// Product with every term of degree greater than `max_degree` discarded.
  static MultiPoly multiply_truncated(const MultiPoly& a, const MultiPoly& b, unsigned max_degree);

  Rational evaluate(std::span<const Rational> point) const;
  /// Replaces variable i by images[i]; all images must share one ring.
  MultiPoly substitute(std::span<const MultiPoly> images) const;

  /// Terms in graded-lex order: higher degree first, then lexicographically
  /// larger exponent vectors first.
  std::vector<std::pair<Monomial, Rational>> graded_lex_terms() const;

  /// Renders "coeff * x1^a1 x2^a2 + ..." in graded-lex order; "0" when zero.
  std::string to_string(const std::vector<std::string>& names) const;
  /// Same with default names h1, h2, ...
  std::string to_string() const;

 private:
  void require_same_ring(const MultiPoly& other, const char* op) const;
  void require_monomial_length(const Monomial& m) const;

  std::vector<unsigned> weights_;
  std::map<Monomial, Rational> terms_;
};

MultiPoly pow(const MultiPoly& base, unsigned exponent);

/// Sum over k of p^k / k!, keeping only terms of degree at most `max_degree`.
/// The constant term of `p` must vanish (PreconditionError otherwise).
MultiPoly exp_truncated(const MultiPoly& p, unsigned max_degree);

/// Reads one coefficient; DimensionError on a length mismatch.
Rational coefficient_extract(const MultiPoly& p, const Monomial& monomial);

/// Monomials present in `a` or `b` whose coefficients differ, in graded-lex order.
std::vector<Monomial> differing_monomials(const MultiPoly& a, const MultiPoly& b);

}  // namespace wittenlab
