#include "wittenlab/lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "wittenlab/errors.hpp"
#include "wittenlab/linear_system.hpp"

namespace wittenlab {

// ---- LatticeVector ---------------------------------------------------------

LatticeVector LatticeVector::basis(std::size_t rank, std::size_t index) {
  LatticeVector v = zero(rank);
  v.coords_.at(index) = 1;
  return v;
}

bool LatticeVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
}

bool LatticeVector::is_positive() const {
  for (std::int64_t c : coords_) {
    if (c != 0) return c > 0;
  }
  return false;
}

LatticeVector LatticeVector::extended(std::size_t rank) const {
  if (rank < coords_.size()) throw DimensionError("cannot extend a vector to a smaller rank");
  std::vector<std::int64_t> c = coords_;
  c.resize(rank, 0);
  return LatticeVector(std::move(c));
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector v = *this;
  for (auto& c : v.coords_) c = -c;
  return v;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& rhs) {
  if (rhs.size() != size()) throw DimensionError("vector length mismatch in addition");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& rhs) {
  if (rhs.size() != size()) throw DimensionError("vector length mismatch in subtraction");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

LatticeVector operator*(std::int64_t s, LatticeVector v) {
  for (auto& c : v.coords_) c *= s;
  return v;
}

std::string LatticeVector::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
  os << ')';
  return os.str();
}

// ---- forms -----------------------------------------------------------------

Signature congruence_signature(const IntMatrix& symmetric) {
  const std::size_t n = symmetric.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (symmetric[i].size() != n) throw DimensionError("form matrix is not square");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(symmetric[i][j]);
  }
  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][p].is_zero()) ++p;
    if (p == n) {
      // No usable diagonal entry: create one from an off-diagonal pair.
      std::size_t bi = n, bj = n;
      for (std::size_t i = k; i < n && bi == n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (!a[i][j].is_zero()) {
            bi = i;
            bj = j;
            break;
          }
        }
      }
      if (bi == n) {
        sig.b_zero += n - k;
        break;
      }
      // row/col bi += row/col bj; new diagonal is 2 a[bi][bj] != 0.
      for (std::size_t c = 0; c < n; ++c) a[bi][c] += a[bj][c];
      for (std::size_t r = 0; r < n; ++r) a[r][bi] += a[r][bj];
      p = bi;
    }
    if (p != k) {
      std::swap(a[p], a[k]);
      for (auto& row : a) std::swap(row[p], row[k]);
    }
    const Rational pivot = a[k][k];
    (pivot.sign() > 0 ? sig.b_plus : sig.b_minus) += 1;
    // Schur complement on the trailing block.
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      const Rational f = a[i][k] / pivot;
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
    }
    for (std::size_t i = k + 1; i < n; ++i) a[i][k] = a[k][i] = Rational(0);
  }
  return sig;
}

BigInt determinant(const IntMatrix& square) {
  const std::size_t n = square.size();
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (square[i].size() != n) throw DimensionError("determinant of a non-square matrix");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<long>(square[i][j]);
  }
  if (n == 0) return BigInt(1);
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return BigInt(0);
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(v);
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

IntMatrix standard_block(const std::string& name) {
  if (name == "H") return {{0, 1}, {1, 0}};
  if (name == "<1>") return {{1}};
  if (name == "<-1>") return {{-1}};
  if (name == "E8" || name == "-E8") {
    // Cartan matrix of E8 in Bourbaki order: chain 1-3-4-5-6-7-8 with node 2 on node 4.
    const std::int64_t s = name == "E8" ? 1 : -1;
    IntMatrix g(8, std::vector<std::int64_t>(8, 0));
    for (int i = 0; i < 8; ++i) g[i][i] = 2 * s;
    const std::pair<int, int> edges[] = {{0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}};
    for (auto [a, b] : edges) g[a][b] = g[b][a] = -s;
    return g;
  }
  throw InputError("unknown lattice block '" + name + "' (expected H, E8, -E8, <1>, <-1>)");
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size() + b.size();
  IntMatrix g(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) g[i][j] = a[i][j];
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) g[a.size() + i][a.size() + j] = b[i][j];
  return g;
}

// ---- UnimodularLattice -----------------------------------------------------

UnimodularLattice::UnimodularLattice(IntMatrix gram) : gram_(std::move(gram)) {
  const std::size_t n = gram_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (gram_[i].size() != n) throw InputError("gram matrix is not square");
    for (std::size_t j = 0; j < i; ++j) {
      if (gram_[i][j] != gram_[j][i]) {
        throw InputError("gram matrix is not symmetric at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
    }
  }
  const BigInt det = determinant(gram_);
  if (abs(det) != 1) throw InputError("gram matrix is not unimodular: det = " + det.get_str());
  signature_ = congruence_signature(gram_);
}

UnimodularLattice UnimodularLattice::from_blocks(const std::vector<std::string>& blocks) {
  IntMatrix g;
  for (const auto& b : blocks) g = direct_sum(g, standard_block(b));
  return UnimodularLattice(std::move(g));
}

bool UnimodularLattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i) {
    if (gram_[i][i] % 2 != 0) return false;
  }
  return true;
}

void UnimodularLattice::require_member(const LatticeVector& v, const char* what) const {
  if (v.size() != rank()) {
    throw DimensionError(std::string(what) + " has " + std::to_string(v.size()) +
                         " coordinates but the lattice has rank " + std::to_string(rank()));
  }
}

std::int64_t UnimodularLattice::pair(const LatticeVector& u, const LatticeVector& v) const {
  require_member(u, "left vector");
  require_member(v, "right vector");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (u[i] == 0) continue;
    std::int64_t row = 0;
    for (std::size_t j = 0; j < rank(); ++j) row += gram_[i][j] * v[j];
    total += u[i] * row;
  }
  return total;
}

LatticeVector UnimodularLattice::dual(const LatticeVector& u) const {
  require_member(u, "vector");
  LatticeVector out = LatticeVector::zero(rank());
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) out[i] += gram_[i][j] * u[j];
  return out;
}

bool UnimodularLattice::is_characteristic(const LatticeVector& k) const {
  const LatticeVector d = dual(k);
  for (std::size_t i = 0; i < rank(); ++i) {
    if ((d[i] - gram_[i][i]) % 2 != 0) return false;
  }
  return true;
}

Signature congruence_signature(const UnimodularLattice& lattice) { return lattice.signature(); }

UnimodularLattice blow_up_lattice(const UnimodularLattice& lattice) {
  return UnimodularLattice(direct_sum(lattice.gram(), standard_block("<-1>")));
}

// ---- sublattices -----------------------------------------------------------

std::vector<LatticeVector> orthogonal_complement_basis(const UnimodularLattice& lattice,
                                                       std::span<const LatticeVector> constraints) {
  const std::size_t r = lattice.rank();
  std::vector<std::vector<BigInt>> m;  // rows: functionals v -> s . v
  for (const auto& s : constraints) {
    const LatticeVector d = lattice.dual(s);
    std::vector<BigInt> row(r);
    for (std::size_t j = 0; j < r; ++j) row[j] = static_cast<long>(d[j]);
    m.push_back(std::move(row));
  }
  std::vector<std::vector<BigInt>> u(r, std::vector<BigInt>(r));  // columns = new basis
  for (std::size_t i = 0; i < r; ++i) u[i][i] = 1;

  auto column_op = [&](std::size_t c1, std::size_t c2, const BigInt& a, const BigInt& b,
                       const BigInt& c, const BigInt& d) {
    // (col c1, col c2) <- (a*c1 + b*c2, c*c1 + d*c2), ad - bc = 1.
    auto apply = [&](std::vector<BigInt>& row) {
      const BigInt x = row[c1], y = row[c2];
      row[c1] = a * x + b * y;
      row[c2] = c * x + d * y;
    };
    for (auto& row : m) apply(row);
    for (auto& row : u) apply(row);
  };

  std::size_t col = 0;
  for (std::size_t row = 0; row < m.size() && col < r; ++row) {
    for (std::size_t j = col + 1; j < r; ++j) {
      if (m[row][j] == 0) continue;
      const BigInt a = m[row][col], b = m[row][j];
      BigInt g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      // x a + y b = g; new col = x*col + y*j, new j = (-b/g)*col + (a/g)*j.
      column_op(col, j, x, y, BigInt(-b / g), BigInt(a / g));
    }
    if (m[row][col] != 0) ++col;
  }

  std::vector<LatticeVector> basis;
  for (std::size_t c = col; c < r; ++c) {
    std::vector<std::int64_t> coords(r);
    for (std::size_t i = 0; i < r; ++i) {
      if (!u[i][c].fits_slong_p()) throw std::overflow_error("complement basis entry overflow");
      coords[i] = u[i][c].get_si();
    }
    basis.emplace_back(std::move(coords));
  }
  // Prefer positive representatives in a stable order.
  for (auto& v : basis) {
    if (!v.is_positive()) v = -v;
  }
  std::sort(basis.begin(), basis.end(), std::greater<>());
  return basis;
}

std::size_t rational_rank(std::span<const LatticeVector> vectors) {
  if (vectors.empty()) return 0;
  LinearSystem sys;
  const std::size_t n = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != n) throw DimensionError("rational_rank: vectors of different lengths");
    std::vector<Rational> row;
    for (std::int64_t c : v.coords()) row.emplace_back(c);
    sys.matrix.push_back(std::move(row));
    sys.rhs.emplace_back(0);
  }
  for (std::size_t j = 0; j < n; ++j) sys.column_labels.push_back(std::to_string(j));
  return solve_linear_exact(sys).rank;
}

IntMatrix restricted_gram(const UnimodularLattice& lattice, std::span<const LatticeVector> basis) {
  IntMatrix g(basis.size(), std::vector<std::int64_t>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) g[i][j] = g[j][i] = lattice.pair(basis[i], basis[j]);
  return g;
}

std::optional<std::vector<Rational>> express_in_span(std::span<const LatticeVector> generators,
                                                     const LatticeVector& v) {
  LinearSystem sys;
  const std::size_t n = v.size();
  for (std::size_t c = 0; c < generators.size(); ++c) {
    if (generators[c].size() != n) throw DimensionError("express_in_span: length mismatch");
    sys.column_labels.push_back(std::to_string(c));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row;
    for (const auto& g : generators) row.emplace_back(g[i]);
    sys.matrix.push_back(std::move(row));
    sys.rhs.emplace_back(v[i]);
  }
  const SolveReport rep = solve_linear_exact(sys);
  if (rep.status == SolveStatus::inconsistent) return std::nullopt;
  // Any particular solution will do; free columns are set to zero.
  std::vector<Rational> out(generators.size());
  if (rep.status == SolveStatus::unique) {
    for (std::size_t c = 0; c < generators.size(); ++c) out[c] = rep.determined.at(sys.column_labels[c]);
    return out;
  }
  // Rank-deficient generator set: restrict to an independent subset.
  std::vector<LatticeVector> chosen;
  std::vector<std::size_t> index;
  for (std::size_t c = 0; c < generators.size(); ++c) {
    chosen.push_back(generators[c]);
    if (rational_rank(chosen) < chosen.size()) {
      chosen.pop_back();
    } else {
      index.push_back(c);
    }
  }
  const auto sub = express_in_span(chosen, v);
  if (!sub) return std::nullopt;
  for (std::size_t i = 0; i < index.size(); ++i) out[index[i]] = (*sub)[i];
  return out;
}

// ---- hyperbolic pairs ------------------------------------------------------

const char* to_string(PairSearchStatus status) {
  switch (status) {
    case PairSearchStatus::found: return "found";
    case PairSearchStatus::witness_accepted: return "witness accepted";
    case PairSearchStatus::witness_rejected: return "witness rejected";
    case PairSearchStatus::none_exists: return "none exists";
    case PairSearchStatus::bound_exhausted: return "unknown (bound exhausted)";
  }
  return "?";
}

std::vector<std::string> hyperbolic_pair_failures(const UnimodularLattice& lattice,
                                                  std::span<const LatticeVector> sub_basis,
                                                  const HyperbolicPair& pair) {
  std::vector<std::string> failures;
  lattice.require_member(pair.f1, "f1");
  lattice.require_member(pair.f2, "f2");
  if (const auto s = lattice.square(pair.f1); s != 0) failures.push_back("f1^2 = " + std::to_string(s) + " != 0");
  if (const auto s = lattice.square(pair.f2); s != 0) failures.push_back("f2^2 = " + std::to_string(s) + " != 0");
  if (const auto p = lattice.pair(pair.f1, pair.f2); p != 1) {
    failures.push_back("f1.f2 = " + std::to_string(p) + " != 1");
  }
  if (!express_in_span(sub_basis, pair.f1)) failures.push_back("f1 is not in the sublattice");
  if (!express_in_span(sub_basis, pair.f2)) failures.push_back("f2 is not in the sublattice");
  return failures;
}

namespace {

// Calls visit(coeffs) for every vector with entries in [-bound, bound] and the
// given L1 norm, in lexicographically descending order. Stops when visit
// returns false.
bool enumerate_norm(std::size_t dim, int norm, int bound, std::vector<int>& coeffs, std::size_t pos,
                    const std::function<bool(const std::vector<int>&)>& visit) {
  if (pos == dim) return norm == 0 ? visit(coeffs) : true;
  const int top = std::min(norm, bound);
  for (int v = top; v >= -top; --v) {
    const int rest = norm - std::abs(v);
    if (rest > static_cast<int>(dim - pos - 1) * bound) continue;
    coeffs[pos] = v;
    if (!enumerate_norm(dim, rest, bound, coeffs, pos + 1, visit)) return false;
  }
  coeffs[pos] = 0;
  return true;
}

}  // namespace

PairSearchResult hyperbolic_pair(const UnimodularLattice& lattice,
                                 std::span<const LatticeVector> sub_basis,
                                 const std::optional<HyperbolicPair>& witness, int search_bound,
                                 std::size_t candidate_cap) {
  PairSearchResult result;
  if (witness) {
    result.failures = hyperbolic_pair_failures(lattice, sub_basis, *witness);
    if (result.failures.empty()) {
      result.status = PairSearchStatus::witness_accepted;
      result.pair = witness;
    } else {
      result.status = PairSearchStatus::witness_rejected;
    }
    return result;
  }

  const IntMatrix s = restricted_gram(lattice, sub_basis);
  const Signature sig = congruence_signature(s);
  if (sig.b_plus == 0 || sig.b_minus == 0) {
    result.status = PairSearchStatus::none_exists;
    return result;
  }

  const std::size_t dim = sub_basis.size();
  auto form = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) total += a[i] * s[i][j] * b[j];
    }
    return total;
  };

  std::vector<std::vector<int>> isotropic;
  std::size_t seen = 0;
  bool found = false;
  std::vector<int> coeffs(dim, 0);
  const int max_norm = static_cast<int>(dim) * search_bound;
  for (int norm = 1; norm <= max_norm && !found && seen < candidate_cap; ++norm) {
    enumerate_norm(dim, norm, search_bound, coeffs, 0, [&](const std::vector<int>& c) {
      if (++seen > candidate_cap) return false;
      if (form(c, c) != 0) return true;
      for (const auto& prev : isotropic) {
        if (form(prev, c) == 1) {
          auto combine = [&](const std::vector<int>& cc) {
            LatticeVector v = LatticeVector::zero(lattice.rank());
            for (std::size_t i = 0; i < dim; ++i) v += static_cast<std::int64_t>(cc[i]) * sub_basis[i];
            return v;
          };
          result.pair = HyperbolicPair{combine(prev), combine(c)};
          found = true;
          return false;
        }
      }
      isotropic.push_back(c);
      return true;
    });
  }
  result.status = found ? PairSearchStatus::found : PairSearchStatus::bound_exhausted;
  return result;
}

}  // namespace wittenlab
