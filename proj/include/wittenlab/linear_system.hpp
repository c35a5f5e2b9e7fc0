#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wittenlab/rational.hpp"

namespace wittenlab {

/// Exact system matrix * x = rhs with named unknowns.
struct LinearSystem {
  std::vector<std::vector<Rational>> matrix;
  std::vector<Rational> rhs;
  std::vector<std::string> column_labels;

  std::size_t rows() const { return matrix.size(); }
  std::size_t cols() const { return column_labels.size(); }

  /// Throws DimensionError unless rhs and every row have consistent lengths.
  void check_shape() const;
};

enum class SolveStatus { unique, underdetermined, inconsistent };

const char* to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::unique;
  std::size_t rank = 0;
  /// Columns whose value is forced by the system (all columns when unique).
  std::map<std::string, Rational> determined;
  /// Columns left without a pivot after elimination.
  std::vector<std::string> free_columns;
  /// Pivot columns that still depend on a free column, plus the free columns.
  std::vector<std::string> undetermined;
  /// For inconsistent systems: weights y with y^T * matrix = 0 and y^T * rhs != 0.
  std::optional<std::vector<Rational>> inconsistency_certificate;
};

/// Fraction-free (Bareiss) elimination followed by exact back substitution.
/// Never throws on rank deficiency or inconsistency; both are reported.
SolveReport solve_linear_exact(const LinearSystem& system);

}  // namespace wittenlab
