#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wittenlab/frame.hpp"
#include "wittenlab/linear_system.hpp"
#include "wittenlab/manifold.hpp"
#include "wittenlab/multipoly.hpp"

namespace wittenlab {

/// I(L) = L^2 + 5 chi_h - c1^2.
std::int64_t i_lambda(const FourManifold& x, const LatticeVector& lambda);

struct AdmissibilityReport {
  std::vector<Condition> conditions;
  bool passed() const;
  /// Names and details of the failed conditions, "; "-joined.
  std::string failures() const;
};

AdmissibilityReport admissibility(const FourManifold& x, const LatticeVector& w, const LatticeVector& lambda,
                                  std::int64_t delta, std::int64_t m);

/// (w^2 - sigma)/2 + (w^2 + (w - L).K)/2; each half must be an integer.
std::int64_t sign_tilde_eps(const UnimodularLattice& lattice, std::int64_t sigma, const LatticeVector& w,
                            const LatticeVector& lambda, const LatticeVector& k);

/// Composition of signed shifts f -> f(x) + (-1)^q f(x + p).
struct DifferenceSpec {
  std::vector<std::int64_t> steps;
  std::vector<std::int64_t> signs;
};

/// Applies the operators right to left to a polynomial in one variable and
/// evaluates at x0.
Rational nabla_ops(const DifferenceSpec& spec, const MultiPoly& f, const Rational& x0);
/// Sum over subsets S of {1..n} of (-1)^(sum_S q) f(x0 + sum_S p).
Rational signed_cube_sum(const DifferenceSpec& spec, const MultiPoly& f, const Rational& x0);

/// 0 when some w_q + i_q is odd, else 2^n.
std::int64_t p_w_factor(const std::vector<std::int64_t>& w_parities, const std::vector<std::int64_t>& i_exponents);

/// Arguments of a b coefficient besides (i, j, k).
struct CoeffContext {
  std::int64_t chi_h = 0;
  std::int64_t c1_squared = 0;
  std::int64_t lambda_dot_k = 0;
  std::int64_t lambda_squared = 0;
  std::int64_t m = 0;

  std::int64_t c_defect() const { return chi_h - c1_squared; }
  friend auto operator<=>(const CoeffContext&, const CoeffContext&) = default;
};

struct CoeffKey {
  std::int64_t i = 0;
  std::int64_t j = 0;
  std::int64_t k = 0;
  CoeffContext ctx;

  std::int64_t delta() const { return i + j + 2 * k + 2 * ctx.m; }
  /// Same coefficient at -L.K.
  CoeffKey mirrored() const;
  std::string str() const;
  friend auto operator<=>(const CoeffKey&, const CoeffKey&) = default;
};

/// High-degree coefficient for c1^2 = chi_h - 3 - n, L.K = 2x, L^2 = 2y:
/// zero for j > 0, else (-1)^(x+y) (delta-2m)!/(k! i!) 2^(m-k-n).
/// DomainError outside the stated domain, UndeterminedError for i < n.
Rational high_degree_b(std::int64_t chi_h, std::int64_t n, std::int64_t x, std::int64_t y, std::int64_t m,
                  std::int64_t i, std::int64_t j, std::int64_t k);
Rational high_degree_b(const CoeffKey& key);

enum class Provenance { closed_form, solved, user };
const char* to_string(Provenance p);
Provenance parse_provenance(const std::string& text);

class CoeffTable {
 public:
  struct Entry {
    Rational value;
    Provenance provenance = Provenance::user;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  /// Rejects entries that break b(-L.K) = (-1)^(c+i) b(L.K) against an
  /// existing mirror entry, or that overwrite a different value.
  void insert(const CoeffKey& key, const Rational& value, Provenance provenance);
  const Entry* find(const CoeffKey& key) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<CoeffKey, Entry>& entries() const { return entries_; }

  /// Keys whose mirror is present with a value of the wrong sign.
  std::vector<std::string> symmetry_violations() const;

  std::string to_tsv() const;
  static CoeffTable from_tsv(const std::string& text);

  friend bool operator==(const CoeffTable&, const CoeffTable&) = default;

 private:
  std::map<CoeffKey, Entry> entries_;
};

/// sum over i+j+2k = delta-2m and K in B' of
/// n(K) (-1)^eps~(w,L,K) SW'(K) b_{i,j,k}(L,K) <K,h>^i <L,h>^j Q^k.
/// Indices in `dropped_i` are skipped; any other missing entry throws
/// UndeterminedError naming it.
MultiPoly cobordism_sum(const FourManifold& x, const LatticeVector& w, const LatticeVector& lambda,
                        std::int64_t delta, std::int64_t m, const CoeffTable& table, const Frame& frame,
                        const std::set<std::int64_t>& dropped_i = {});

struct BlowupSolveResult {
  FourManifold blown_up;
  std::vector<Condition> preconditions;
  CoeffTable solved;
  std::vector<CoeffKey> unknowns;
  std::vector<CoeffKey> determined;
  std::vector<CoeffKey> undetermined;
  SolveReport report;
  std::size_t equations = 0;
  /// Both routes to each side of the identity agreed.
  bool lhs_routes_agree = false;
  bool rhs_routes_agree = false;
};

/// Builds the blown-up identity on the n-fold blow-up of a useful X (lambda and
/// w_tilde live in the blown-up lattice), one equation per monomial, and solves
/// for the unknown b coefficients exactly. PreconditionError when a
/// precondition fails; no system is built in that case.
BlowupSolveResult blowup_identity_solve(const FourManifold& x, int n, const LatticeVector& w_tilde,
                                        const LatticeVector& lambda, std::int64_t delta, std::int64_t m);

/// L = (y + 2x^2) f1 + f2 + 2x e1 on the n-fold blow-up, with
/// w_tilde = L - K_0 where K_0 = K + e1 + ... + en.
struct HighDegreeSetup {
  LatticeVector lambda;
  LatticeVector w_tilde;
};
HighDegreeSetup high_degree_setup(const FourManifold& x, int n, std::int64_t x_param, std::int64_t y_param);

enum class Branch { abundant, c1sq };
const char* to_string(Branch b);
Branch parse_branch(const std::string& text);

enum class ReconstructionStatus { match, mismatch, gap };
const char* to_string(ReconstructionStatus s);

struct ReconstructionReport {
  ReconstructionStatus status = ReconstructionStatus::gap;
  std::string manifold;  // name of the manifold the comparison runs on
  LatticeVector w;
  LatticeVector lambda;
  std::int64_t delta = 0;
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::vector<std::string> notes;  // dropped terms and their justification
  std::vector<std::string> gaps;
  std::optional<MultiPoly> reconstructed;
  std::optional<MultiPoly> expected;
  std::vector<std::string> mismatches;
  std::vector<std::string> legend;
  std::string reconstructed_text;
  std::string expected_text;
};

/// Rebuilds D^w(h^(delta-2m) x^m) from the cobordism sum with high-degree
/// coefficients and compares it with the closed form. w must be characteristic.
ReconstructionReport witten_via_cobordism(const FourManifold& y, const LatticeVector& w, std::int64_t delta,
                                          std::int64_t m, Branch branch);

}  // namespace wittenlab
