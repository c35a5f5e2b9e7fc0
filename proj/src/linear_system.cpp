#include "wittenlab/linear_system.hpp"

#include <set>
#include <stdexcept>
#include <utility>

#include "wittenlab/errors.hpp"

namespace wittenlab {

void LinearSystem::check_shape() const {
  if (rhs.size() != matrix.size()) {
    throw DimensionError("linear system: rhs has " + std::to_string(rhs.size()) +
                         " entries for " + std::to_string(matrix.size()) + " rows");
  }
  std::set<std::string> seen;
  for (const auto& label : column_labels) {
    if (!seen.insert(label).second) throw DimensionError("linear system: duplicate column label '" + label + "'");
  }
  for (std::size_t r = 0; r < matrix.size(); ++r) {
    if (matrix[r].size() != column_labels.size()) {
      throw DimensionError("linear system: row " + std::to_string(r) + " has " +
                           std::to_string(matrix[r].size()) + " entries, expected " +
                           std::to_string(column_labels.size()));
    }
  }
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::unique: return "unique";
    case SolveStatus::underdetermined: return "underdetermined";
    case SolveStatus::inconsistent: return "inconsistent";
  }
  return "?";
}

namespace {

using IntMatrix = std::vector<std::vector<BigInt>>;

struct Echelon {
  IntMatrix rows;
  std::vector<std::size_t> pivot_cols;  // one per leading row
};

// Bareiss elimination; pivots are only searched in the first `pivot_limit`
// columns. Every intermediate entry is a minor of the input, so each division
// by the previous pivot is exact.
Echelon bareiss(IntMatrix m, std::size_t pivot_limit) {
  Echelon out;
  const std::size_t n_rows = m.size();
  const std::size_t width = n_rows == 0 ? 0 : m.front().size();
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_limit && r < n_rows; ++c) {
    std::size_t p = r;
    while (p < n_rows && m[p][c] == 0) ++p;
    if (p == n_rows) continue;
    std::swap(m[p], m[r]);
    const BigInt pivot = m[r][c];
    for (std::size_t i = r + 1; i < n_rows; ++i) {
      const BigInt factor = m[i][c];
      for (std::size_t j = c + 1; j < width; ++j) {
        BigInt v = pivot * m[i][j] - factor * m[r][j];
        if (mpz_divisible_p(v.get_mpz_t(), prev.get_mpz_t()) == 0) {
          throw std::logic_error("bareiss: inexact division");
        }
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(v);
      }
      m[i][c] = 0;
    }
    prev = pivot;
    out.pivot_cols.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

}  // namespace

SolveReport solve_linear_exact(const LinearSystem& system) {
  system.check_shape();
  const std::size_t n_rows = system.rows();
  const std::size_t n_cols = system.cols();

  // Clear denominators row by row.
  IntMatrix m(n_rows, std::vector<BigInt>(n_cols + 1));
  std::vector<BigInt> scale(n_rows, BigInt(1));
  for (std::size_t r = 0; r < n_rows; ++r) {
    BigInt l = 1;
    for (const auto& v : system.matrix[r]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.denominator().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), system.rhs[r].denominator().get_mpz_t());
    scale[r] = l;
    for (std::size_t c = 0; c < n_cols; ++c) {
      const Rational& v = system.matrix[r][c];
      m[r][c] = v.numerator() * (l / v.denominator());
    }
    m[r][n_cols] = system.rhs[r].numerator() * (l / system.rhs[r].denominator());
  }

  Echelon ech = bareiss(m, n_cols + 1);
  SolveReport report;
  const bool inconsistent = !ech.pivot_cols.empty() && ech.pivot_cols.back() == n_cols;
  report.rank = ech.pivot_cols.size() - (inconsistent ? 1 : 0);

  if (inconsistent) {
    report.status = SolveStatus::inconsistent;
    // Rerun with an identity block to recover the row combination.
    IntMatrix tracked = m;
    for (std::size_t r = 0; r < n_rows; ++r) {
      tracked[r].resize(n_cols + 1 + n_rows);
      tracked[r][n_cols + 1 + r] = 1;
    }
    const Echelon te = bareiss(std::move(tracked), n_cols + 1);
    const auto& row = te.rows.back();
    std::vector<Rational> cert(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) cert[i] = Rational(BigInt(row[n_cols + 1 + i] * scale[i]));
    report.inconsistency_certificate = std::move(cert);
    for (const auto& label : system.column_labels) report.undetermined.push_back(label);
    std::set<std::size_t> pivots(ech.pivot_cols.begin(), ech.pivot_cols.end());
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (!pivots.count(c)) report.free_columns.push_back(system.column_labels[c]);
    }
    return report;
  }

  // Gauss-Jordan on the (small) echelon block over the rationals.
  const std::size_t rank = report.rank;
  std::vector<std::vector<Rational>> rref(rank, std::vector<Rational>(n_cols + 1));
  for (std::size_t r = 0; r < rank; ++r) {
    const BigInt& lead = ech.rows[r][ech.pivot_cols[r]];
    for (std::size_t c = 0; c <= n_cols; ++c) rref[r][c] = Rational(ech.rows[r][c], lead);
  }
  for (std::size_t r = rank; r-- > 0;) {
    const std::size_t pc = ech.pivot_cols[r];
    for (std::size_t above = 0; above < r; ++above) {
      const Rational factor = rref[above][pc];
      if (factor.is_zero()) continue;
      for (std::size_t c = pc; c <= n_cols; ++c) rref[above][c] -= factor * rref[r][c];
    }
  }

  std::vector<bool> is_pivot(n_cols, false);
  for (std::size_t r = 0; r < rank; ++r) is_pivot[ech.pivot_cols[r]] = true;
  for (std::size_t c = 0; c < n_cols; ++c) {
    if (!is_pivot[c]) report.free_columns.push_back(system.column_labels[c]);
  }
  std::vector<bool> determined(n_cols, false);
  for (std::size_t r = 0; r < rank; ++r) {
    bool depends_on_free = false;
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (!is_pivot[c] && !rref[r][c].is_zero()) {
        depends_on_free = true;
        break;
      }
    }
    if (!depends_on_free) {
      const std::size_t pc = ech.pivot_cols[r];
      determined[pc] = true;
      report.determined.emplace(system.column_labels[pc], rref[r][n_cols]);
    }
  }
  for (std::size_t c = 0; c < n_cols; ++c) {
    if (!determined[c]) report.undetermined.push_back(system.column_labels[c]);
  }
  report.status = rank == n_cols ? SolveStatus::unique : SolveStatus::underdetermined;
  return report;
}

}  // namespace wittenlab
