#include "wittenlab/multipoly.hpp"

#include <algorithm>
#include <sstream>

#include "wittenlab/errors.hpp"

namespace wittenlab {

MultiPoly::MultiPoly(std::size_t variable_count) : weights_(variable_count, 1U) {}

MultiPoly::MultiPoly(std::vector<unsigned> weights) : weights_(std::move(weights)) {
  for (unsigned w : weights_) {
    if (w == 0) throw PreconditionError("variable weights must be positive");
  }
}

MultiPoly MultiPoly::constant(std::vector<unsigned> weights, const Rational& value) {
  MultiPoly p(std::move(weights));
  p.add_term(Monomial(p.variable_count(), 0), value);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<unsigned> weights, std::size_t index) {
  MultiPoly p(std::move(weights));
  if (index >= p.variable_count()) throw DimensionError("variable index out of range");
  Monomial m(p.variable_count(), 0);
  m[index] = 1;
  p.add_term(m, Rational(1));
  return p;
}

MultiPoly MultiPoly::term(std::vector<unsigned> weights, Monomial monomial, const Rational& coeff) {
  MultiPoly p(std::move(weights));
  p.add_term(monomial, coeff);
  return p;
}

int MultiPoly::degree() const {
  int best = -1;
  for (const auto& [m, c] : terms_) best = std::max(best, static_cast<int>(monomial_degree(m)));
  return best;
}

unsigned MultiPoly::monomial_degree(const Monomial& m) const {
  unsigned d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += weights_[i] * m[i];
  return d;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const unsigned d = monomial_degree(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return monomial_degree(t.first) == d; });
}

void MultiPoly::require_same_ring(const MultiPoly& other, const char* op) const {
  if (weights_ != other.weights_) {
    throw DimensionError(std::string("polynomial ") + op + ": operands live in different rings (" +
                         std::to_string(variable_count()) + " vs " +
                         std::to_string(other.variable_count()) + " variables)");
  }
}

void MultiPoly::require_monomial_length(const Monomial& m) const {
  if (m.size() != weights_.size()) {
    throw DimensionError("monomial of length " + std::to_string(m.size()) + " in a ring of " +
                         std::to_string(weights_.size()) + " variables");
  }
}

Rational MultiPoly::coefficient(const Monomial& monomial) const {
  require_monomial_length(monomial);
  const auto it = terms_.find(monomial);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::constant_term() const { return coefficient(Monomial(weights_.size(), 0)); }

MultiPoly MultiPoly::homogeneous_part(unsigned degree) const {
  MultiPoly out(weights_);
  for (const auto& [m, c] : terms_) {
    if (monomial_degree(m) == degree) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

MultiPoly MultiPoly::truncated(unsigned max_degree) const {
  MultiPoly out(weights_);
  for (const auto& [m, c] : terms_) {
    if (monomial_degree(m) <= max_degree) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

void MultiPoly::add_term(const Monomial& monomial, const Rational& coeff) {
  require_monomial_length(monomial);
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(monomial, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  require_same_ring(rhs, "add");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  require_same_ring(rhs, "subtract");
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

namespace {

MultiPoly multiply_impl(const MultiPoly& a, const MultiPoly& b, long max_degree) {
  MultiPoly out(a.weights());
  Monomial prod(a.variable_count());
  for (const auto& [ma, ca] : a.terms()) {
    const long da = a.monomial_degree(ma);
    if (max_degree >= 0 && da > max_degree) continue;
    for (const auto& [mb, cb] : b.terms()) {
      if (max_degree >= 0 && da + static_cast<long>(b.monomial_degree(mb)) > max_degree) continue;
      for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = static_cast<Exponent>(ma[i] + mb[i]);
      out.add_term(prod, ca * cb);
    }
  }
  return out;
}

}  // namespace

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.require_same_ring(b, "multiply");
  return multiply_impl(a, b, -1);
}

MultiPoly MultiPoly::multiply_truncated(const MultiPoly& a, const MultiPoly& b,
                                        unsigned max_degree) {
  a.require_same_ring(b, "multiply");
  return multiply_impl(a, b, static_cast<long>(max_degree));
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != weights_.size()) throw DimensionError("evaluation point has wrong length");
  Rational total;
  for (const auto& [m, c] : terms_) {
    Rational value = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (Exponent e = 0; e < m[i]; ++e) value *= point[i];
    }
    total += value;
  }
  return total;
}

MultiPoly MultiPoly::substitute(std::span<const MultiPoly> images) const {
  if (images.size() != weights_.size()) throw DimensionError("substitution needs one image per variable");
  if (images.empty()) return *this;
  const auto& target = images.front().weights();
  for (const auto& img : images) {
    if (img.weights() != target) throw DimensionError("substitution images live in different rings");
  }
  // Cache powers per variable; monomials reuse them heavily.
  std::vector<std::vector<MultiPoly>> powers(images.size());
  auto power = [&](std::size_t var, Exponent e) -> const MultiPoly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(MultiPoly::constant(target, Rational(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * images[var]);
    return cache[e];
  };
  MultiPoly out(target);
  for (const auto& [m, c] : terms_) {
    MultiPoly value = MultiPoly::constant(target, c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0) value *= power(i, m[i]);
    }
    out += value;
  }
  return out;
}

std::vector<std::pair<Monomial, Rational>> MultiPoly::graded_lex_terms() const {
  std::vector<std::pair<Monomial, Rational>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [this](const auto& x, const auto& y) {
    const unsigned dx = monomial_degree(x.first);
    const unsigned dy = monomial_degree(y.first);
    if (dx != dy) return dx > dy;
    return x.first > y.first;
  });
  return out;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (names.size() != weights_.size()) throw DimensionError("one name per variable required");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : graded_lex_terms()) {
    if (first) {
      os << c.str();
    } else {
      os << (c.sign() < 0 ? " - " : " + ") << (c.sign() < 0 ? (-c).str() : c.str());
    }
    first = false;
    bool has_variable = false;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      os << (has_variable ? " " : " * ") << names[i];
      if (m[i] > 1) os << '^' << m[i];
      has_variable = true;
    }
  }
  return os.str();
}

std::string MultiPoly::to_string() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < weights_.size(); ++i) names.push_back("h" + std::to_string(i + 1));
  return to_string(names);
}

MultiPoly pow(const MultiPoly& base, unsigned exponent) {
  MultiPoly result = MultiPoly::constant(base.weights(), Rational(1));
  MultiPoly square = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= square;
    exponent >>= 1U;
    if (exponent > 0) square = square * square;
  }
  return result;
}

MultiPoly exp_truncated(const MultiPoly& p, unsigned max_degree) {
  if (!p.constant_term().is_zero()) {
    throw PreconditionError("exp_truncated: argument has nonzero constant term " +
                            p.constant_term().str());
  }
  MultiPoly result = MultiPoly::constant(p.weights(), Rational(1));
  MultiPoly power = result;
  // Every term of p has degree >= 1, so p^k has degree >= k.
  for (unsigned k = 1; k <= max_degree; ++k) {
    power = MultiPoly::multiply_truncated(power, p, max_degree);
    if (power.is_zero()) break;
    power *= Rational(1, static_cast<std::int64_t>(k));
    result += power;
  }
  return result;
}

Rational coefficient_extract(const MultiPoly& p, const Monomial& monomial) {
  return p.coefficient(monomial);
}

std::vector<Monomial> differing_monomials(const MultiPoly& a, const MultiPoly& b) {
  const MultiPoly diff = a - b;
  std::vector<Monomial> out;
  for (const auto& [m, c] : diff.graded_lex_terms()) out.push_back(m);
  return out;
}

}  // namespace wittenlab
