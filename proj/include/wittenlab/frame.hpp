#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wittenlab/lattice.hpp"
#include "wittenlab/multipoly.hpp"

namespace wittenlab {

/// Polynomial ring in which functions of h in H_2 are written.
///
/// The full frame uses the lattice coordinates h1..hr of h, with
/// <v,h> = sum (G v)_i h_i and Q(h) = h^T G h. The reduced frame uses the
/// variables Q (weight 2) and t_u = <u,h> (weight 1) for an independent
/// family of classes u; every function built from Q and pairings with classes
/// in span(u) is a polynomial in these. When the number of t variables is
/// below the rank, Q is not a quadratic form in the t_u, so Q, t_1.. are
/// algebraically independent and polynomial identities in the reduced frame
/// are identities of functions of h.
class Frame {
 public:
  static Frame full(const UnimodularLattice& lattice);
  /// Keeps the classes that are independent of their predecessors as
  /// variables, named by `labels`. Throws PreconditionError when the
  /// independent family is as large as the rank.
  static Frame reduced(const UnimodularLattice& lattice, const std::vector<LatticeVector>& classes,
                       const std::vector<std::string>& labels);
  /// Reduced when possible, otherwise full.
  static Frame automatic(const UnimodularLattice& lattice, const std::vector<LatticeVector>& classes,
                         const std::vector<std::string>& labels);

  bool is_full() const { return full_; }
  std::size_t rank() const { return lattice_->rank(); }
  const std::vector<unsigned>& weights() const { return weights_; }
  const std::vector<std::string>& names() const { return names_; }
  /// Classes represented by the t variables (empty for the full frame).
  const std::vector<LatticeVector>& classes() const { return classes_; }

  MultiPoly zero() const { return MultiPoly(weights_); }
  MultiPoly constant(const Rational& value) const { return MultiPoly::constant(weights_, value); }
  /// Q(h).
  MultiPoly quadratic() const;
  /// <v,h>; PreconditionError when v is outside the span of a reduced frame.
  MultiPoly linear(const LatticeVector& v) const;

  /// Rewrites a polynomial of this frame in the full coordinates h1..hr.
  MultiPoly to_full(const MultiPoly& p) const;

  std::string render(const MultiPoly& p) const { return p.to_string(names_); }
  /// Lines "Q = Q(h)" and "K1 = <(..),h>" describing the variables.
  std::vector<std::string> legend() const;

 private:
  Frame() = default;

  std::shared_ptr<const UnimodularLattice> lattice_;
  bool full_ = true;
  std::vector<unsigned> weights_;
  std::vector<std::string> names_;
  std::vector<LatticeVector> classes_;
};

}  // namespace wittenlab
