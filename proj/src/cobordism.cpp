#include "wittenlab/cobordism.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "wittenlab/donaldson.hpp"
#include "wittenlab/errors.hpp"

namespace wittenlab {

namespace {

std::int64_t mod4(std::int64_t v) { return ((v % 4) + 4) % 4; }

Condition check(std::string name, bool ok, std::string detail) {
  return Condition{std::move(name), ok ? Tristate::yes : Tristate::no, std::move(detail)};
}

std::string failed_conditions(const std::vector<Condition>& conditions) {
  std::string out;
  for (const auto& c : conditions) {
    if (c.status == Tristate::yes) continue;
    if (!out.empty()) out += "; ";
    out += c.name + " (" + c.detail + ")";
  }
  return out;
}

std::vector<MultiPoly> powers(const MultiPoly& p, unsigned top) {
  std::vector<MultiPoly> out{MultiPoly::constant(p.weights(), Rational(1))};
  for (unsigned e = 1; e <= top; ++e) out.push_back(out.back() * p);
  return out;
}

// Calls visit(parts) for every vector of `count` non-negative integers summing to `total`.
template <typename Visit>
void compositions(std::size_t count, std::int64_t total, Visit&& visit) {
  std::vector<std::int64_t> parts(count, 0);
  auto rec = [&](auto&& self, std::size_t pos, std::int64_t left) -> void {
    if (pos + 1 == count) {
      parts[pos] = left;
      visit(parts);
      return;
    }
    for (std::int64_t v = left; v >= 0; --v) {
      parts[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (count == 0) {
    if (total == 0) visit(parts);
    return;
  }
  rec(rec, 0, total);
}

Rational multinomial(const std::vector<std::int64_t>& parts) {
  std::int64_t total = 0;
  Rational denom(1);
  for (auto p : parts) {
    total += p;
    denom *= Rational::factorial(static_cast<unsigned>(p));
  }
  return Rational::factorial(static_cast<unsigned>(total)) / denom;
}

}  // namespace

// ---- admissibility and signs -------------------------------------------------

std::int64_t i_lambda(const FourManifold& x, const LatticeVector& lambda) {
  const auto inv = derived_invariants(x);
  return x.lattice.square(lambda) + 5 * inv.chi_h - inv.c1_squared;
}

bool AdmissibilityReport::passed() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.status == Tristate::yes; });
}

std::string AdmissibilityReport::failures() const { return failed_conditions(conditions); }

AdmissibilityReport admissibility(const FourManifold& x, const LatticeVector& w, const LatticeVector& lambda,
                                  std::int64_t delta, std::int64_t m) {
  x.lattice.require_member(w, "w");
  x.lattice.require_member(lambda, "lambda");
  const auto inv = derived_invariants(x);
  const std::int64_t il = i_lambda(x, lambda);
  const std::int64_t l2 = x.lattice.square(lambda);
  const std::int64_t w2 = x.lattice.square(w);
  AdmissibilityReport r;
  r.conditions.push_back(check("I(L) > delta", il > delta, "I(L) = " + std::to_string(il)));
  r.conditions.push_back(check("w - L characteristic", x.lattice.is_characteristic(w - lambda), "w - L = " + (w - lambda).str()));
  r.conditions.push_back(check("delta = -w^2 - 3 chi_h (mod 4)", mod4(delta) == mod4(-w2 - 3 * inv.chi_h),
                               "-w^2 - 3 chi_h = " + std::to_string(mod4(-w2 - 3 * inv.chi_h)) + " mod 4"));
  r.conditions.push_back(check("delta - 2m >= 0", m >= 0 && delta - 2 * m >= 0,
                               "delta - 2m = " + std::to_string(delta - 2 * m)));
  r.conditions.push_back(check("L^2 + c = delta (mod 4)", mod4(l2 + inv.c_defect) == mod4(delta),
                               "L^2 + c = " + std::to_string(mod4(l2 + inv.c_defect)) + " mod 4"));
  return r;
}

std::int64_t sign_tilde_eps(const UnimodularLattice& lattice, std::int64_t sigma, const LatticeVector& w,
                            const LatticeVector& lambda, const LatticeVector& k) {
  const std::int64_t w2 = lattice.square(w);
  const std::int64_t first = w2 - sigma;
  if (first % 2 != 0) throw PreconditionError("(w^2 - sigma)/2 is not an integer: w^2 - sigma = " + std::to_string(first));
  const std::int64_t second = w2 + lattice.pair(w - lambda, k);
  if (second % 2 != 0) {
    throw PreconditionError("(w^2 + (w-L).K)/2 is not an integer for K = " + k.str());
  }
  return first / 2 + second / 2;
}

// ---- difference operators --------------------------------------------------

namespace {

void require_spec(const DifferenceSpec& spec, const MultiPoly& f) {
  if (spec.steps.size() != spec.signs.size()) throw DimensionError("difference spec: steps and signs differ in length");
  if (f.variable_count() != 1) throw DimensionError("difference operators act on polynomials in one variable");
}

}  // namespace

Rational nabla_ops(const DifferenceSpec& spec, const MultiPoly& f, const Rational& x0) {
  require_spec(spec, f);
  const MultiPoly x = MultiPoly::variable(f.weights(), 0);
  MultiPoly g = f;
  for (std::size_t u = spec.steps.size(); u-- > 0;) {
    const MultiPoly shift = x + MultiPoly::constant(f.weights(), Rational(spec.steps[u]));
    const std::vector<MultiPoly> image{shift};
    g = g + Rational(sign_power(spec.signs[u])) * g.substitute(image);
  }
  const Rational point[] = {x0};
  return g.evaluate(point);
}

Rational signed_cube_sum(const DifferenceSpec& spec, const MultiPoly& f, const Rational& x0) {
  require_spec(spec, f);
  const std::size_t n = spec.steps.size();
  if (n >= 63) throw PreconditionError("too many difference operators");
  Rational total;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::int64_t q = 0;
    Rational at = x0;
    for (std::size_t u = 0; u < n; ++u) {
      if (mask >> u & 1U) {
        q += spec.signs[u];
        at += Rational(spec.steps[u]);
      }
    }
    const Rational point[] = {at};
    total += Rational(sign_power(q)) * f.evaluate(point);
  }
  return total;
}

std::int64_t p_w_factor(const std::vector<std::int64_t>& w_parities, const std::vector<std::int64_t>& i_exponents) {
  if (w_parities.size() != i_exponents.size()) throw DimensionError("p_w_factor: length mismatch");
  for (std::size_t q = 0; q < w_parities.size(); ++q) {
    if ((w_parities[q] + i_exponents[q]) % 2 != 0) return 0;
  }
  return std::int64_t{1} << w_parities.size();
}

// ---- coefficients ----------------------------------------------------------

CoeffKey CoeffKey::mirrored() const {
  CoeffKey out = *this;
  out.ctx.lambda_dot_k = -out.ctx.lambda_dot_k;
  return out;
}

std::string CoeffKey::str() const {
  std::ostringstream os;
  os << "b[" << i << "," << j << "," << k << "](chi_h=" << ctx.chi_h << ", c1^2=" << ctx.c1_squared
     << ", L.K=" << ctx.lambda_dot_k << ", L^2=" << ctx.lambda_squared << ", m=" << ctx.m << ")";
  return os.str();
}

Rational high_degree_b(std::int64_t chi_h, std::int64_t n, std::int64_t x, std::int64_t y, std::int64_t m,
                  std::int64_t i, std::int64_t j, std::int64_t k) {
  if (n <= 0) throw DomainError("high-degree formula needs n > 0, got n = " + std::to_string(n));
  if (chi_h < 2) throw DomainError("high-degree formula needs chi_h >= 2, got " + std::to_string(chi_h));
  if (m < 0 || i < 0 || j < 0 || k < 0) throw DomainError("indices and m must be non-negative");
  const std::int64_t delta = i + j + 2 * k + 2 * m;
  if (!(2 * y > delta - 4 * chi_h - 3 - n)) {
    throw DomainError("high-degree formula needs 2y > delta - 4 chi_h - 3 - n (2y = " + std::to_string(2 * y) +
                      ", bound " + std::to_string(delta - 4 * chi_h - 3 - n) + ")");
  }
  if (i < n) {
    throw UndeterminedError("b[" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                            "] with i < n = " + std::to_string(n) +
                            " is determined only up to a polynomial of degree n-i-1 in L.K");
  }
  if (j > 0) return Rational(0);
  const auto d = static_cast<unsigned>(delta - 2 * m);
  return Rational(sign_power(x + y)) * Rational::factorial(d) /
         (Rational::factorial(static_cast<unsigned>(k)) * Rational::factorial(static_cast<unsigned>(i))) *
         Rational::power_of_two(m - k - n);
}

Rational high_degree_b(const CoeffKey& key) {
  const auto& c = key.ctx;
  const std::int64_t n = c.chi_h - 3 - c.c1_squared;
  if (n <= 0) {
    throw DomainError("context c1^2 = " + std::to_string(c.c1_squared) + " is not of the form chi_h - 3 - n with n > 0");
  }
  if (c.lambda_dot_k % 2 != 0 || c.lambda_squared % 2 != 0) {
    throw DomainError("high-degree formula needs even L.K and L^2");
  }
  return high_degree_b(c.chi_h, n, c.lambda_dot_k / 2, c.lambda_squared / 2, c.m, key.i, key.j, key.k);
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::closed_form: return "closed_form";
    case Provenance::solved: return "solved";
    case Provenance::user: return "user";
  }
  return "?";
}

Provenance parse_provenance(const std::string& text) {
  if (text == "closed_form") return Provenance::closed_form;
  if (text == "solved") return Provenance::solved;
  if (text == "user") return Provenance::user;
  throw InputError("unknown provenance '" + text + "'");
}

namespace {

// Sign relating b at L.K and at -L.K.
int mirror_sign(const CoeffKey& key) { return sign_power(key.ctx.c_defect() + key.i); }

}  // namespace

void CoeffTable::insert(const CoeffKey& key, const Rational& value, Provenance provenance) {
  if (const Entry* e = find(key); e != nullptr) {
    if (e->value != value) {
      throw PreconditionError(key.str() + " already has value " + e->value.str() + ", refusing " + value.str());
    }
    return;
  }
  const CoeffKey mirror = key.mirrored();
  const Rational expected = Rational(mirror_sign(key)) * value;
  if (mirror == key) {
    if (expected != value) {
      throw PreconditionError(key.str() + " = " + value.str() + " but symmetry forces zero at L.K = 0");
    }
  } else if (const Entry* e = find(mirror); e != nullptr && e->value != expected) {
    throw PreconditionError(key.str() + " = " + value.str() + " contradicts " + mirror.str() + " = " + e->value.str());
  }
  entries_.emplace(key, Entry{value, provenance});
}

const CoeffTable::Entry* CoeffTable::find(const CoeffKey& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> CoeffTable::symmetry_violations() const {
  std::vector<std::string> out;
  for (const auto& [key, e] : entries_) {
    const Entry* m = find(key.mirrored());
    if (m != nullptr && m->value != Rational(mirror_sign(key)) * e.value) out.push_back(key.str());
  }
  return out;
}

namespace {

constexpr const char* kTsvHeader =
    "i\tj\tk\tchi_h\tc1_squared\tlambda_dot_K\tlambda_squared\tm\tvalue\tprovenance";

std::int64_t parse_int_field(const std::string& text, std::size_t line) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError("line " + std::to_string(line) + ": '" + text + "' is not an integer");
  }
  return v;
}

}  // namespace

std::string CoeffTable::to_tsv() const {
  std::ostringstream os;
  os << kTsvHeader << '\n';
  for (const auto& [key, e] : entries_) {
    const auto& c = key.ctx;
    os << key.i << '\t' << key.j << '\t' << key.k << '\t' << c.chi_h << '\t' << c.c1_squared << '\t'
       << c.lambda_dot_k << '\t' << c.lambda_squared << '\t' << c.m << '\t' << e.value.str() << '\t'
       << to_string(e.provenance) << '\n';
  }
  return os.str();
}

CoeffTable CoeffTable::from_tsv(const std::string& text) {
  CoeffTable table;
  std::istringstream in(text);
  std::string row;
  std::size_t line = 0;
  bool header_seen = false;
  while (std::getline(in, row)) {
    ++line;
    if (row.empty() || row[0] == '#') continue;
    if (!header_seen) {
      if (row != kTsvHeader) throw InputError("line " + std::to_string(line) + ": expected the column header");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::istringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, '\t')) fields.push_back(cell);
    if (fields.size() != 10) {
      throw InputError("line " + std::to_string(line) + ": expected 10 columns, got " + std::to_string(fields.size()));
    }
    CoeffKey key;
    key.i = parse_int_field(fields[0], line);
    key.j = parse_int_field(fields[1], line);
    key.k = parse_int_field(fields[2], line);
    key.ctx.chi_h = parse_int_field(fields[3], line);
    key.ctx.c1_squared = parse_int_field(fields[4], line);
    key.ctx.lambda_dot_k = parse_int_field(fields[5], line);
    key.ctx.lambda_squared = parse_int_field(fields[6], line);
    key.ctx.m = parse_int_field(fields[7], line);
    table.insert(key, Rational::parse(fields[8]), parse_provenance(fields[9]));
  }
  if (!header_seen) throw InputError("coefficient table has no header");
  return table;
}

// ---- cobordism sum ---------------------------------------------------------

MultiPoly cobordism_sum(const FourManifold& x, const LatticeVector& w, const LatticeVector& lambda,
                        std::int64_t delta, std::int64_t m, const CoeffTable& table, const Frame& frame,
                        const std::set<std::int64_t>& dropped_i) {
  const AdmissibilityReport adm = admissibility(x, w, lambda, delta, m);
  if (!adm.passed()) throw PreconditionError("inadmissible input: " + adm.failures());
  require_within_cap(delta, "delta");
  const auto inv = derived_invariants(x);
  const auto d = static_cast<unsigned>(delta - 2 * m);
  const auto q_pows = powers(frame.quadratic(), d / 2);
  const auto l_pows = powers(frame.linear(lambda), d);
  const std::int64_t l2 = x.lattice.square(lambda);

  MultiPoly total = frame.zero();
  for (const auto& k : fundamental_domain(x)) {
    Rational weight(sign_power(sign_tilde_eps(x.lattice, x.signature, w, lambda, k)) * x.sw.at(k));
    if (k.is_zero()) weight *= Rational(1, 2);
    const auto k_pows = powers(frame.linear(k), d);
    const CoeffContext ctx{inv.chi_h, inv.c1_squared, x.lattice.pair(lambda, k), l2, m};
    for (std::int64_t i = 0; i <= d; ++i) {
      if (dropped_i.count(i)) continue;
      for (std::int64_t kk = 0; i + 2 * kk <= d; ++kk) {
        const std::int64_t j = d - i - 2 * kk;
        const CoeffKey key{i, j, kk, ctx};
        const auto* e = table.find(key);
        if (e == nullptr) throw UndeterminedError("no table entry for " + key.str());
        if (e->value.is_zero()) continue;
        total += (weight * e->value) * (k_pows[i] * l_pows[j] * q_pows[kk]);
      }
    }
  }
  return total;
}

// ---- blown-up identity -----------------------------------------------------

HighDegreeSetup high_degree_setup(const FourManifold& x, int n, std::int64_t x_param, std::int64_t y_param) {
  if (n < 1) throw PreconditionError("the high-degree setup needs at least one blow-up");
  const UsefulReport useful = is_useful(x);
  if (!useful.pair) throw PreconditionError("no hyperbolic pair orthogonal to the basic classes");
  const auto reps = fundamental_domain(x);
  if (reps.size() != 1) throw PreconditionError("the high-degree setup needs exactly one class up to sign");
  const std::size_t r0 = x.lattice.rank();
  const std::size_t r = r0 + static_cast<std::size_t>(n);
  const LatticeVector f1 = useful.pair->f1.extended(r);
  const LatticeVector f2 = useful.pair->f2.extended(r);
  const LatticeVector e1 = LatticeVector::basis(r, r0);
  LatticeVector k0 = reps.front().extended(r);
  for (std::size_t u = 0; u < static_cast<std::size_t>(n); ++u) k0 += LatticeVector::basis(r, r0 + u);
  HighDegreeSetup s;
  s.lambda = (y_param + 2 * x_param * x_param) * f1 + f2 + (2 * x_param) * e1;
  s.w_tilde = s.lambda - k0;
  return s;
}

BlowupSolveResult blowup_identity_solve(const FourManifold& x, int n, const LatticeVector& w_tilde,
                                        const LatticeVector& lambda, std::int64_t delta, std::int64_t m) {
  if (n < 0) throw PreconditionError("blow-up count must be non-negative");
  require_within_cap(delta, "delta");
  BlowupSolveResult out{blow_up(x, n), {}, {}, {}, {}, {}, {}, 0, false, false};
  const FourManifold& xt = out.blown_up;
  const std::size_t r0 = x.lattice.rank();
  const std::size_t r = xt.lattice.rank();
  xt.lattice.require_member(w_tilde, "w_tilde");
  xt.lattice.require_member(lambda, "lambda");

  // Preconditions, all evaluated before anything is built.
  const UsefulReport useful = is_useful(x);
  out.preconditions.push_back(check("X useful", useful.passed(), useful.passed() ? "all four conditions hold" : [&] {
    return failed_conditions(useful.conditions);
  }()));
  bool odd = true;
  for (std::size_t u = r0; u < r; ++u) odd = odd && (w_tilde[u] % 2 != 0);
  out.preconditions.push_back(check("w_tilde odd on every exceptional class", odd, "w_tilde = " + w_tilde.str()));
  for (auto c : admissibility(xt, w_tilde, lambda, delta, m).conditions) out.preconditions.push_back(std::move(c));

  const auto reps = fundamental_domain(x);
  std::vector<LatticeVector> forms;
  std::vector<std::string> labels;
  if (!reps.empty()) {
    forms.push_back(reps.front().extended(r));
    labels.push_back("K");
  }
  for (std::size_t u = 0; u < static_cast<std::size_t>(n); ++u) {
    forms.push_back(LatticeVector::basis(r, r0 + u));
    labels.push_back("e" + std::to_string(u + 1));
  }
  forms.push_back(lambda);
  labels.push_back("L");
  const std::size_t form_rank = rational_rank(forms);
  out.preconditions.push_back(check("K, e1..en, L linearly independent", form_rank == forms.size(),
                                    "rank " + std::to_string(form_rank) + " of " + std::to_string(forms.size())));
  const bool nonzero = form_nonzero_on_kernel(xt.lattice, forms);
  out.preconditions.push_back(check("Q nonzero on the joint kernel of K, e1..en, L", nonzero,
                                    nonzero ? "restricted form has a nonzero entry" : "restricted form vanishes"));
  const std::string failed = failed_conditions(out.preconditions);
  if (!failed.empty()) throw PreconditionError("blown-up identity preconditions fail: " + failed);

  const Frame frame = Frame::reduced(xt.lattice, forms, labels);
  const auto inv_x = derived_invariants(x);
  const auto inv = derived_invariants(xt);
  const auto d = static_cast<unsigned>(delta - 2 * m);
  const LatticeVector k = reps.front();
  const std::int64_t sw_k = x.sw.at(k);
  const std::int64_t l2 = xt.lattice.square(lambda);

  // Left side, directly from the closed form on the blow-up.
  const MultiPoly lhs = donaldson_closed_form(xt, w_tilde, delta, m, frame);

  // Left side again, expanded over powers of K and the e_u.
  LatticeVector k0 = k.extended(r);
  for (std::size_t u = r0; u < r; ++u) k0 += LatticeVector::basis(r, u);
  const auto q_pows = powers(frame.quadratic(), d / 2);
  std::vector<std::vector<MultiPoly>> t_pows;  // K, e1..en
  for (std::size_t f = 0; f + 1 < forms.size(); ++f) t_pows.push_back(powers(frame.linear(forms[f]), d));
  const auto l_pows = powers(frame.linear(lambda), d);
  auto product = [&](const std::vector<std::int64_t>& parts) {
    MultiPoly p = frame.constant(Rational(1));
    for (std::size_t f = 0; f < parts.size(); ++f) p *= t_pows[f][static_cast<std::size_t>(parts[f])];
    return p;
  };
  std::vector<std::int64_t> w_par;
  for (std::size_t u = r0; u < r; ++u) w_par.push_back(w_tilde[u]);
  MultiPoly lhs_expanded = frame.zero();
  if (degree_parity_ok(xt, w_tilde, delta)) {
    const Rational sign(sign_power(sign_eps(xt.lattice, w_tilde, k0)));
    for (std::int64_t i = d % 2; i <= d; i += 2) {
      const std::int64_t kk = (d - i) / 2;
      const Rational scale = sign * Rational(sw_k) * Rational::factorial(d) /
                             (Rational::power_of_two(kk + inv_x.c_defect + n - 3 - m) *
                              Rational::factorial(static_cast<unsigned>(kk)) * Rational::factorial(static_cast<unsigned>(i)));
      compositions(forms.size() - 1, i, [&](const std::vector<std::int64_t>& parts) {
        const std::vector<std::int64_t> tail(parts.begin() + 1, parts.end());
        const std::int64_t p = p_w_factor(w_par, tail);
        if (p == 0) return;
        lhs_expanded += (scale * multinomial(parts) * Rational(p)) * (product(parts) * q_pows[kk]);
      });
    }
  }
  out.lhs_routes_agree = lhs == lhs_expanded;

  // Unknowns: one per (i, j, k) and value of L.K over the fundamental domain.
  std::set<std::int64_t> lk_values;
  const auto reps_t = fundamental_domain(xt);
  for (const auto& kt : reps_t) lk_values.insert(xt.lattice.pair(lambda, kt));
  std::map<CoeffKey, MultiPoly> columns;
  for (std::int64_t i = 0; i <= d; ++i) {
    for (std::int64_t kk = 0; i + 2 * kk <= d; ++kk) {
      for (std::int64_t lk : lk_values) {
        const CoeffKey key{i, static_cast<std::int64_t>(d) - i - 2 * kk, kk, {inv.chi_h, inv.c1_squared, lk, l2, m}};
        columns.emplace(key, frame.zero());
        out.unknowns.push_back(key);
      }
    }
  }
  std::sort(out.unknowns.begin(), out.unknowns.end());

  // Right side column polynomials, summed over the fundamental domain.
  for (const auto& kt : reps_t) {
    Rational weight(sign_power(sign_tilde_eps(xt.lattice, xt.signature, w_tilde, lambda, kt)) * xt.sw.at(kt));
    if (kt.is_zero()) weight *= Rational(1, 2);
    const auto k_pows = powers(frame.linear(kt), d);
    const std::int64_t lk = xt.lattice.pair(lambda, kt);
    for (auto& [key, poly] : columns) {
      if (key.ctx.lambda_dot_k != lk) continue;
      poly += weight * (k_pows[key.i] * l_pows[key.j] * q_pows[key.k]);
    }
  }

  // Same columns from the sign-pattern sum over the cube of orientations.
  bool rhs_agree = true;
  {
    const Rational sign0(sign_power(sign_tilde_eps(xt.lattice, xt.signature, w_tilde, lambda, k0)));
    for (const auto& [key, poly] : columns) {
      MultiPoly alt = frame.zero();
      compositions(forms.size() - 1, key.i, [&](const std::vector<std::int64_t>& parts) {
        Rational cube;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
          LatticeVector kphi = k.extended(r);
          std::int64_t exponent = 0;
          for (std::size_t u = 0; u < static_cast<std::size_t>(n); ++u) {
            const bool flip = mask >> u & 1U;
            kphi += (flip ? -1 : 1) * LatticeVector::basis(r, r0 + u);
            if (flip) exponent += 1 + parts[u + 1];
          }
          if (xt.lattice.pair(lambda, kphi) == key.ctx.lambda_dot_k) cube += Rational(sign_power(exponent));
        }
        if (cube.is_zero()) return;
        alt += (sign0 * Rational(sw_k) * multinomial(parts) * cube) * (product(parts) * l_pows[key.j] * q_pows[key.k]);
      });
      rhs_agree = rhs_agree && alt == poly;
    }
  }
  out.rhs_routes_agree = rhs_agree;

  // One equation per monomial, in graded-lex order.
  std::set<Monomial> monomials;
  for (const auto& [mono, c] : lhs.terms()) monomials.insert(mono);
  for (const auto& [key, poly] : columns) {
    for (const auto& [mono, c] : poly.terms()) monomials.insert(mono);
  }
  MultiPoly all_monomials = frame.zero();
  for (const auto& mono : monomials) all_monomials.add_term(mono, Rational(1));

  LinearSystem sys;
  std::map<std::string, CoeffKey> by_label;
  for (const auto& key : out.unknowns) {
    sys.column_labels.push_back(key.str());
    by_label.emplace(key.str(), key);
  }
  for (const auto& [mono, unused] : all_monomials.graded_lex_terms()) {
    std::vector<Rational> row;
    for (const auto& key : out.unknowns) row.push_back(columns.at(key).coefficient(mono));
    sys.matrix.push_back(std::move(row));
    sys.rhs.push_back(lhs.coefficient(mono));
  }
  out.equations = sys.rows();
  out.report = solve_linear_exact(sys);
  for (const auto& [label, value] : out.report.determined) {
    const CoeffKey& key = by_label.at(label);
    out.determined.push_back(key);
    out.solved.insert(key, value, Provenance::solved);
  }
  for (const auto& label : out.report.undetermined) out.undetermined.push_back(by_label.at(label));
  std::sort(out.determined.begin(), out.determined.end());
  std::sort(out.undetermined.begin(), out.undetermined.end());
  return out;
}

// ---- reconstruction --------------------------------------------------------

const char* to_string(Branch b) { return b == Branch::abundant ? "abundant" : "c1sq"; }

Branch parse_branch(const std::string& text) {
  if (text == "abundant") return Branch::abundant;
  if (text == "c1sq") return Branch::c1sq;
  throw InputError("unknown branch '" + text + "' (expected abundant or c1sq)");
}

const char* to_string(ReconstructionStatus s) {
  switch (s) {
    case ReconstructionStatus::match: return "match";
    case ReconstructionStatus::mismatch: return "mismatch";
    case ReconstructionStatus::gap: return "gap";
  }
  return "?";
}

namespace {

// Smallest integer a with I(2a f1 + 2 f2) > delta; the square of that class is 8a.
std::int64_t smallest_a(const FourManifold& x, std::int64_t delta) {
  const auto inv = derived_invariants(x);
  // 8a + 5 chi_h - c1^2 > delta
  const std::int64_t bound = delta - 5 * inv.chi_h + inv.c1_squared;  // need 8a > bound
  std::int64_t a = bound >= 0 ? bound / 8 : -((-bound) / 8);
  while (8 * a <= bound) ++a;
  while (8 * (a - 1) > bound) --a;
  return a;
}

void blow_up_to(FourManifold& y, LatticeVector& w, std::int64_t target_c, std::vector<std::string>& notes) {
  while (derived_invariants(y).c_defect < target_c) {
    y = blow_up(y);
    w = w.extended(y.lattice.rank()) + LatticeVector::basis(y.lattice.rank(), y.lattice.rank() - 1);
    notes.push_back("blew up to " + y.name + " with w + e*");
  }
}

Frame reconstruction_frame(const FourManifold& y, const LatticeVector& lambda) {
  auto classes = fundamental_domain(y);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < classes.size(); ++i) labels.push_back("K" + std::to_string(i + 1));
  classes.push_back(lambda);
  labels.push_back("L");
  return Frame::automatic(y.lattice, classes, labels);
}

void finish(ReconstructionReport& rep, const FourManifold& y, const LatticeVector& w, const LatticeVector& lambda,
            const CoeffTable& table, const std::set<std::int64_t>& dropped) {
  const Frame frame = reconstruction_frame(y, lambda);
  rep.legend = frame.legend();
  const MultiPoly expected = donaldson_closed_form(y, w, rep.delta, rep.m, frame);
  rep.expected = expected;
  rep.expected_text = frame.render(expected);
  if (!rep.gaps.empty()) {
    rep.status = ReconstructionStatus::gap;
    return;
  }
  const MultiPoly got = cobordism_sum(y, w, lambda, rep.delta, rep.m, table, frame, dropped);
  rep.reconstructed = got;
  rep.reconstructed_text = frame.render(got);
  const DegreeCheck cmp = compare_degree(static_cast<unsigned>(rep.delta - 2 * rep.m), got, expected, frame);
  rep.mismatches = cmp.mismatches;
  rep.status = cmp.ok ? ReconstructionStatus::match : ReconstructionStatus::mismatch;
}

}  // namespace

ReconstructionReport witten_via_cobordism(const FourManifold& y_in, const LatticeVector& w_in, std::int64_t delta,
                                          std::int64_t m, Branch branch) {
  require_within_cap(delta, "delta");
  if (!is_sw_simple_type(y_in)) throw UnsupportedError("manifold '" + y_in.name + "' is not of SW simple type");
  y_in.lattice.require_member(w_in, "w");
  if (!y_in.lattice.is_characteristic(w_in)) throw PreconditionError("w = " + w_in.str() + " is not characteristic");
  if (m < 0 || delta - 2 * m < 0) throw PreconditionError("need m >= 0 and delta - 2m >= 0");

  ReconstructionReport rep;
  rep.delta = delta;
  rep.m = m;
  FourManifold y = y_in;
  LatticeVector w = w_in;
  const std::int64_t d = delta - 2 * m;

  if (branch == Branch::c1sq) {
    blow_up_to(y, w, 3, rep.notes);
    const auto reps = fundamental_domain(y);
    if (reps.empty()) throw PreconditionError("manifold has no basic classes");
    const std::vector<LatticeVector> first{reps.front()};
    const auto complement = orthogonal_complement_basis(y.lattice, first);
    const PairSearchResult pair = hyperbolic_pair(y.lattice, complement, y.hyperbolic_witness);
    const PairSearchResult found = pair.has_pair() ? pair : hyperbolic_pair(y.lattice, complement, std::nullopt);
    if (!found.has_pair()) throw PreconditionError("no hyperbolic pair orthogonal to " + reps.front().str());

    FourManifold yt = blow_up(y);
    const std::size_t r = yt.lattice.rank();
    const LatticeVector e = LatticeVector::basis(r, r - 1);
    const LatticeVector wt = w.extended(r) + e;
    const std::int64_t a = smallest_a(yt, delta);
    const LatticeVector lambda = 2 * (a * found.pair->f1 + found.pair->f2).extended(r);
    rep.manifold = yt.name;
    rep.w = wt;
    rep.lambda = lambda;
    const auto adm = admissibility(yt, wt, lambda, delta, m);
    if (!adm.passed()) throw PreconditionError("inadmissible input: " + adm.failures());
    const auto inv = derived_invariants(yt);
    rep.n = inv.c_defect - 3;
    rep.notes.push_back("L = 2(" + std::to_string(a) + " f1 + f2), L^2 = " + std::to_string(yt.lattice.square(lambda)));

    CoeffTable table;
    std::set<std::int64_t> dropped;
    const auto reps_t = fundamental_domain(yt);
    const std::int64_t l2 = yt.lattice.square(lambda);
    // i = 0: pair K_i + e* with K_i - e* (or its negative) and check the terms cancel.
    {
      bool all_paired = true;
      for (const auto& kt : reps_t) {
        const LatticeVector partner = kt - (2 * kt[r - 1]) * e;
        const auto it = yt.sw.find(partner);
        const bool present = partner.is_positive() && it != yt.sw.end();
        bool cancels = present && partner != kt && std::abs(kt[r - 1]) == 1;
        if (cancels) {
          // With i = 0 the class only enters through n(K), the sign, SW' and L.K.
          const std::int64_t eps_a = sign_tilde_eps(yt.lattice, yt.signature, wt, lambda, kt);
          const std::int64_t eps_b = sign_tilde_eps(yt.lattice, yt.signature, wt, lambda, partner);
          cancels = yt.sw.at(kt) == it->second && yt.lattice.pair(lambda, kt) == yt.lattice.pair(lambda, partner) &&
                    (eps_a - eps_b) % 2 != 0;
        }
        if (!cancels) {
          all_paired = false;
          rep.gaps.push_back("i = 0 term for K = " + kt.str() + " has no cancelling partner");
        }
      }
      if (all_paired) {
        dropped.insert(0);
        rep.notes.push_back("i = 0 terms cancel in pairs K + e*, K - e* (equal SW', L.K; signs opposite)");
      }
    }
    for (const auto& kt : reps_t) {
      const CoeffContext ctx{inv.chi_h, inv.c1_squared, yt.lattice.pair(lambda, kt), l2, m};
      for (std::int64_t i = 1; i <= d; ++i) {
        for (std::int64_t kk = 0; i + 2 * kk <= d; ++kk) {
          const CoeffKey key{i, d - i - 2 * kk, kk, ctx};
          if (i < rep.n) {
            const std::string gap = "undetermined coefficient " + key.str() + " (i < n = " + std::to_string(rep.n) + ")";
            if (std::find(rep.gaps.begin(), rep.gaps.end(), gap) == rep.gaps.end()) rep.gaps.push_back(gap);
            continue;
          }
          table.insert(key, high_degree_b(key), Provenance::closed_form);
        }
      }
    }
    finish(rep, yt, wt, lambda, table, dropped);
    return rep;
  }

  // Abundant branch.
  blow_up_to(y, w, 4, rep.notes);
  const AbundanceReport ab = is_abundant(y);
  if (!ab.search.has_pair()) {
    throw PreconditionError(std::string("no hyperbolic pair orthogonal to the basic classes: ") + to_string(ab.search.status));
  }
  const std::int64_t a = smallest_a(y, delta);
  const LatticeVector lambda = (2 * a) * ab.search.pair->f1 + 2 * ab.search.pair->f2;
  rep.manifold = y.name;
  rep.w = w;
  rep.lambda = lambda;
  const auto adm = admissibility(y, w, lambda, delta, m);
  if (!adm.passed()) throw PreconditionError("inadmissible input: " + adm.failures());
  const auto inv = derived_invariants(y);
  const std::int64_t c = inv.c_defect;
  rep.n = c - 3;
  rep.notes.push_back("L = " + std::to_string(2 * a) + " f1 + 2 f2 with I(L) = " + std::to_string(i_lambda(y, lambda)) +
                      " > delta");

  const auto reps = fundamental_domain(y);
  const std::int64_t l2 = y.lattice.square(lambda);
  std::set<std::int64_t> lk_values;
  bool eps_agree = true;
  for (const auto& k : reps) {
    lk_values.insert(y.lattice.pair(lambda, k));
    const std::int64_t diff = sign_tilde_eps(y.lattice, y.signature, w, lambda, k) - sign_eps(y.lattice, w, k);
    eps_agree = eps_agree && diff % 2 == 0;
  }
  const bool lk_constant = lk_values.size() <= 1;
  const bool lk_zero = lk_constant && (lk_values.empty() || *lk_values.begin() == 0);
  const Frame sw_frame = basic_frame(y);

  CoeffTable table;
  std::set<std::int64_t> dropped;
  for (std::int64_t i = 0; i <= d; ++i) {
    if (i < c - 2) {
      if (lk_zero && (c + i) % 2 != 0) {
        dropped.insert(i);
        rep.notes.push_back("i = " + std::to_string(i) + " dropped: c + i odd and L.K = 0 force b = 0");
        continue;
      }
      if (lk_constant && eps_agree && sw_poly(y, w, static_cast<unsigned>(i), sw_frame).is_zero()) {
        dropped.insert(i);
        rep.notes.push_back("i = " + std::to_string(i) + " dropped: SW^w_i vanishes and L.K is constant on B'");
        continue;
      }
      rep.gaps.push_back("i = " + std::to_string(i) + " < c - 2 but no vanishing argument applies");
      continue;
    }
    for (const auto& k : reps) {
      const CoeffContext ctx{inv.chi_h, inv.c1_squared, y.lattice.pair(lambda, k), l2, m};
      for (std::int64_t kk = 0; i + 2 * kk <= d; ++kk) {
        const CoeffKey key{i, d - i - 2 * kk, kk, ctx};
        table.insert(key, high_degree_b(key), Provenance::closed_form);
      }
    }
  }
  finish(rep, y, w, lambda, table, dropped);
  return rep;
}

}  // namespace wittenlab
