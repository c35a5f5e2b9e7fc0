#include "wittenlab/manifold.hpp"

#include <algorithm>
#include <sstream>

#include "wittenlab/errors.hpp"

namespace wittenlab {

namespace {

bool same_pair(const std::optional<HyperbolicPair>& a, const std::optional<HyperbolicPair>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || (a->f1 == b->f1 && a->f2 == b->f2);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

}  // namespace

bool operator==(const FourManifold& a, const FourManifold& b) {
  return a.name == b.name && a.euler == b.euler && a.signature == b.signature && a.lattice == b.lattice &&
         a.sw == b.sw && a.witten_verified == b.witten_verified &&
         same_pair(a.hyperbolic_witness, b.hyperbolic_witness) && a.provenance == b.provenance;
}

DerivedInvariants derived_invariants(const FourManifold& x) {
  if ((x.euler + x.signature) % 4 != 0) {
    throw PreconditionError("invalid manifold: euler + signature = " + std::to_string(x.euler + x.signature) +
                            " is not divisible by 4");
  }
  DerivedInvariants d;
  d.c1_squared = 2 * x.euler + 3 * x.signature;
  d.chi_h = (x.euler + x.signature) / 4;
  d.c_defect = d.chi_h - d.c1_squared;
  return d;
}

void complete_conjugates(SWData& sw, std::int64_t chi_h) {
  std::vector<std::pair<LatticeVector, std::int64_t>> missing;
  for (const auto& [k, v] : sw) {
    const LatticeVector neg = -k;
    if (!sw.count(neg)) missing.emplace_back(neg, sign_power(chi_h) * v);
  }
  for (auto& [k, v] : missing) sw.emplace(std::move(k), v);
}

std::vector<std::string> validate(const FourManifold& x) {
  std::vector<std::string> out;
  const auto& lat = x.lattice;
  const bool divisible = (x.euler + x.signature) % 4 == 0;
  if (!divisible) out.push_back("euler + signature = " + std::to_string(x.euler + x.signature) + " is not divisible by 4");
  if (static_cast<std::int64_t>(lat.rank()) != x.euler - 2) {
    out.push_back("lattice rank " + std::to_string(lat.rank()) + " != euler - 2 = " + std::to_string(x.euler - 2));
  }
  const Signature sig = lat.signature();
  const auto bp = static_cast<std::int64_t>(sig.b_plus);
  const auto bm = static_cast<std::int64_t>(sig.b_minus);
  if (bp - bm != x.signature) {
    out.push_back("lattice signature b+ - b- = " + std::to_string(bp - bm) + " != " + std::to_string(x.signature));
  }
  if (bp % 2 == 0 || bp < 3) out.push_back("b+ = " + std::to_string(bp) + " must be odd and at least 3");

  const std::int64_t chi_h = divisible ? (x.euler + x.signature) / 4 : 0;
  for (const auto& [k, v] : x.sw) {
    if (k.size() != lat.rank()) {
      out.push_back("basic class " + k.str() + " has the wrong length");
      continue;
    }
    if (!lat.is_characteristic(k)) out.push_back("basic class " + k.str() + " is not characteristic");
    if (v == 0) out.push_back("basic class " + k.str() + " has value 0");
    if (!divisible) continue;
    const auto it = x.sw.find(-k);
    const std::int64_t expected = sign_power(chi_h) * v;
    if (k.is_zero()) {
      if (chi_h % 2 != 0) out.push_back("SW'(0) = -SW'(0) forces SW'(0) = 0 when chi_h is odd");
    } else if (it == x.sw.end()) {
      out.push_back("class " + (-k).str() + " missing; expected value " + std::to_string(expected));
    } else if (it->second != expected) {
      out.push_back("SW'(" + (-k).str() + ") = " + std::to_string(it->second) + " but conjugation requires " +
                    std::to_string(expected));
    }
  }
  if (x.hyperbolic_witness) {
    const auto& w = *x.hyperbolic_witness;
    if (w.f1.size() != lat.rank() || w.f2.size() != lat.rank()) {
      out.push_back("hyperbolic witness has the wrong length");
    } else {
      std::vector<LatticeVector> all = basic_classes(x);
      all.erase(std::remove_if(all.begin(), all.end(), [&](const auto& k) { return k.size() != lat.rank(); }),
                all.end());
      const auto complement = orthogonal_complement_basis(lat, all);
      for (const auto& f : hyperbolic_pair_failures(lat, complement, w)) out.push_back("hyperbolic witness: " + f);
    }
  }
  return out;
}

void require_valid(const FourManifold& x) {
  const auto violations = validate(x);
  if (!violations.empty()) {
    throw InputError("manifold '" + x.name + "' is invalid: " + join(violations, "; "));
  }
}

std::vector<LatticeVector> basic_classes(const FourManifold& x) {
  std::vector<LatticeVector> out;
  for (const auto& [k, v] : x.sw) {
    if (v != 0) out.push_back(k);
  }
  return out;
}

bool is_sw_simple_type(const FourManifold& x) {
  const auto c1sq = derived_invariants(x).c1_squared;
  for (const auto& k : basic_classes(x)) {
    if (x.lattice.square(k) != c1sq) return false;
  }
  return true;
}

std::vector<LatticeVector> fundamental_domain(const FourManifold& x) {
  std::vector<LatticeVector> out;
  for (const auto& k : basic_classes(x)) {
    if (k.is_zero() || k.is_positive()) out.push_back(k);
  }
  return out;
}

Frame basic_frame(const FourManifold& x) {
  const auto reps = fundamental_domain(x);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < reps.size(); ++i) labels.push_back("K" + std::to_string(i + 1));
  return Frame::automatic(x.lattice, reps, labels);
}

const char* to_string(Tristate t) {
  switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    case Tristate::unknown: return "unknown";
  }
  return "?";
}

AbundanceReport is_abundant(const FourManifold& x, int search_bound) {
  AbundanceReport report;
  const auto complement = orthogonal_complement_basis(x.lattice, basic_classes(x));
  if (x.hyperbolic_witness) {
    report.search = hyperbolic_pair(x.lattice, complement, x.hyperbolic_witness, search_bound);
    if (report.search.has_pair()) {
      report.abundant = Tristate::yes;
      return report;
    }
  }
  const auto failures = report.search.failures;
  report.search = hyperbolic_pair(x.lattice, complement, std::nullopt, search_bound);
  report.search.failures.insert(report.search.failures.begin(), failures.begin(), failures.end());
  switch (report.search.status) {
    case PairSearchStatus::found: report.abundant = Tristate::yes; break;
    case PairSearchStatus::none_exists: report.abundant = Tristate::no; break;
    default: report.abundant = Tristate::unknown; break;
  }
  return report;
}

bool UsefulReport::passed() const {
  return !conditions.empty() &&
         std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.status == Tristate::yes; });
}

bool form_nonzero_on_kernel(const UnimodularLattice& lattice, const std::vector<LatticeVector>& classes) {
  const auto kernel = orthogonal_complement_basis(lattice, classes);
  for (const auto& row : restricted_gram(lattice, kernel)) {
    for (std::int64_t v : row) {
      if (v != 0) return true;
    }
  }
  return false;
}

UsefulReport is_useful(const FourManifold& x, int search_bound) {
  UsefulReport report;
  const auto reps = fundamental_domain(x);

  Condition c1{"simple type with one class up to sign", Tristate::no, ""};
  const bool simple = is_sw_simple_type(x);
  c1.detail = std::string("simple type ") + (simple ? "yes" : "no") + ", |B'| = " + std::to_string(reps.size());
  if (simple && reps.size() == 1) c1.status = Tristate::yes;

  Condition c2{"Witten's equality recorded", x.witten_verified ? Tristate::yes : Tristate::no,
               x.witten_verified ? "flag set in the record" : "flag not set"};

  Condition c3{"f1, f2 and B' linearly independent", Tristate::unknown, ""};
  Condition c4{"form nonzero on the joint kernel", Tristate::unknown, ""};
  const AbundanceReport ab = is_abundant(x, search_bound);
  if (ab.search.has_pair()) {
    report.pair = ab.search.pair;
    std::vector<LatticeVector> family{ab.search.pair->f1, ab.search.pair->f2};
    family.insert(family.end(), reps.begin(), reps.end());
    const std::size_t r = rational_rank(family);
    c3.status = r == family.size() ? Tristate::yes : Tristate::no;
    c3.detail = "rank " + std::to_string(r) + " of " + std::to_string(family.size()) + " vectors";
    const bool nz = form_nonzero_on_kernel(x.lattice, family);
    c4.status = nz ? Tristate::yes : Tristate::no;
    c4.detail = nz ? "restricted form has a nonzero entry" : "restricted form vanishes";
  } else {
    const std::string why = std::string("no hyperbolic pair: ") + to_string(ab.search.status);
    c3.status = c4.status = ab.abundant == Tristate::no ? Tristate::no : Tristate::unknown;
    c3.detail = c4.detail = why;
  }
  report.conditions = {c1, c2, c3, c4};
  return report;
}

FourManifold blow_up(const FourManifold& x) {
  const auto inv = derived_invariants(x);
  const UnimodularLattice lattice = blow_up_lattice(x.lattice);
  const std::size_t r = lattice.rank();
  const LatticeVector e = LatticeVector::basis(r, r - 1);
  SWData sw;
  for (const auto& [k, v] : x.sw) {
    if (v == 0) continue;
    const std::int64_t room = x.lattice.square(k) - inv.c1_squared;  // need 4(n^2+n) <= room
    if (room < 0) continue;
    const LatticeVector base = k.extended(r);
    for (std::int64_t n = 0; 4 * (n * n + n) <= room; ++n) {
      // n and -1-n give the same value of n^2+n.
      sw[base + (2 * n + 1) * e] = v;
      sw[base + (-2 * n - 1) * e] = v;
    }
  }
  FourManifold out{x.name + "#CP2bar", x.euler + 1, x.signature - 1, lattice, std::move(sw),
                   x.witten_verified, std::nullopt, x.provenance};
  if (x.hyperbolic_witness) {
    out.hyperbolic_witness = HyperbolicPair{x.hyperbolic_witness->f1.extended(r), x.hyperbolic_witness->f2.extended(r)};
  }
  return out;
}

FourManifold blow_up(const FourManifold& x, int times) {
  if (times < 0) throw PreconditionError("blow-up count must be non-negative");
  FourManifold out = x;
  for (int i = 0; i < times; ++i) out = blow_up(out);
  return out;
}

}  // namespace wittenlab
