#include "wittenlab/frame.hpp"

#include "wittenlab/errors.hpp"

namespace wittenlab {

Frame Frame::full(const UnimodularLattice& lattice) {
  Frame f;
  f.lattice_ = std::make_shared<const UnimodularLattice>(lattice);
  f.full_ = true;
  f.weights_.assign(lattice.rank(), 1U);
  for (std::size_t i = 0; i < lattice.rank(); ++i) f.names_.push_back("h" + std::to_string(i + 1));
  return f;
}

Frame Frame::reduced(const UnimodularLattice& lattice, const std::vector<LatticeVector>& classes,
                     const std::vector<std::string>& labels) {
  if (classes.size() != labels.size()) throw DimensionError("one label per frame class required");
  Frame f;
  f.lattice_ = std::make_shared<const UnimodularLattice>(lattice);
  f.full_ = false;
  f.weights_.push_back(2U);
  f.names_.push_back("Q");
  for (std::size_t c = 0; c < classes.size(); ++c) {
    lattice.require_member(classes[c], "frame class");
    f.classes_.push_back(classes[c]);
    if (rational_rank(f.classes_) < f.classes_.size()) {
      f.classes_.pop_back();
      continue;
    }
    f.weights_.push_back(1U);
    f.names_.push_back(labels[c]);
  }
  if (f.classes_.size() >= lattice.rank()) {
    throw PreconditionError("reduced frame needs fewer independent classes than the rank (" +
                            std::to_string(f.classes_.size()) + " >= " +
                            std::to_string(lattice.rank()) + ")");
  }
  return f;
}

Frame Frame::automatic(const UnimodularLattice& lattice, const std::vector<LatticeVector>& classes,
                       const std::vector<std::string>& labels) {
  try {
    return reduced(lattice, classes, labels);
  } catch (const PreconditionError&) {
    return full(lattice);
  }
}

MultiPoly Frame::quadratic() const {
  if (!full_) return MultiPoly::variable(weights_, 0);
  MultiPoly q(weights_);
  const auto& g = lattice_->gram();
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t j = i; j < rank(); ++j) {
      if (g[i][j] == 0) continue;
      Monomial m(rank(), 0);
      ++m[i];
      ++m[j];
      q.add_term(m, Rational(i == j ? g[i][j] : 2 * g[i][j]));
    }
  }
  return q;
}

MultiPoly Frame::linear(const LatticeVector& v) const {
  lattice_->require_member(v, "class");
  MultiPoly out(weights_);
  if (full_) {
    const LatticeVector d = lattice_->dual(v);
    for (std::size_t i = 0; i < rank(); ++i) {
      if (d[i] == 0) continue;
      Monomial m(rank(), 0);
      m[i] = 1;
      out.add_term(m, Rational(d[i]));
    }
    return out;
  }
  if (v.is_zero()) return out;
  const auto coeffs = express_in_span(classes_, v);
  if (!coeffs) throw PreconditionError("class " + v.str() + " is outside the span of the frame classes");
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    Monomial m(weights_.size(), 0);
    m[c + 1] = 1;
    out.add_term(m, (*coeffs)[c]);
  }
  return out;
}

MultiPoly Frame::to_full(const MultiPoly& p) const {
  if (full_) return p;
  const Frame target = Frame::full(*lattice_);
  std::vector<MultiPoly> images;
  images.push_back(target.quadratic());
  for (const auto& c : classes_) images.push_back(target.linear(c));
  return p.substitute(images);
}

std::vector<std::string> Frame::legend() const {
  std::vector<std::string> lines;
  if (full_) {
    lines.push_back("h = h1..h" + std::to_string(rank()) + " in the lattice basis");
    return lines;
  }
  lines.push_back("Q = Q(h)");
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    lines.push_back(names_[c + 1] + " = <" + classes_[c].str() + ",h>");
  }
  return lines;
}

}  // namespace wittenlab
