#include "wittenlab/cli.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "wittenlab/cobordism.hpp"
#include "wittenlab/donaldson.hpp"
#include "wittenlab/errors.hpp"
#include "wittenlab/manifold_io.hpp"

namespace wittenlab {

LatticeVector parse_vector(const std::string& text, std::size_t rank) {
  if (text == "0") return LatticeVector::zero(rank);
  std::vector<std::int64_t> coords;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string cell = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw InputError("vector '" + text + "': '" + cell + "' is not an integer");
    }
    coords.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (coords.size() != rank) {
    throw InputError("vector '" + text + "' has " + std::to_string(coords.size()) + " entries, lattice rank is " +
                     std::to_string(rank));
  }
  return LatticeVector(std::move(coords));
}

namespace {

struct Options {
  std::string file;
  std::string out_path;
  std::string w;
  std::string lambda;
  std::string branch = "abundant";
  std::int64_t n = 1;
  std::int64_t delta = 0;
  std::int64_t m = 0;
  std::int64_t max_degree = 8;
  std::int64_t i = 0;
  std::int64_t j = 0;
  std::int64_t k = 0;
  std::int64_t chi_h = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::optional<std::int64_t> x_opt;
  std::optional<std::int64_t> y_opt;
};

void print_poly(std::ostream& out, const Frame& frame, const MultiPoly& p) {
  for (const auto& line : frame.legend()) out << "# " << line << '\n';
  out << frame.render(p) << '\n';
}

// Zero when characteristic, else the first class of the fundamental domain.
LatticeVector default_w(const FourManifold& x) {
  const auto zero = LatticeVector::zero(x.lattice.rank());
  if (x.lattice.is_characteristic(zero)) return zero;
  const auto reps = fundamental_domain(x);
  if (reps.empty()) throw InputError("no default w: 0 is not characteristic and there are no basic classes");
  return reps.front();
}

LatticeVector w_or_default(const Options& o, const FourManifold& x) {
  return o.w.empty() ? default_w(x) : parse_vector(o.w, x.lattice.rank());
}

int cmd_info(const Options& o, std::ostream& out) {
  const FourManifold x = load_manifold(o.file);
  const auto inv = derived_invariants(x);
  const AbundanceReport ab = is_abundant(x);
  out << "chi=" << x.euler << " sigma=" << x.signature << " c1sq=" << inv.c1_squared << " chi_h=" << inv.chi_h
      << " c=" << inv.c_defect << " b_plus=" << x.lattice.signature().b_plus
      << " simple_type=" << (is_sw_simple_type(x) ? "yes" : "no") << " abundant=" << to_string(ab.abundant) << '\n';
  out << "class\tvalue\n";
  for (const auto& [k, v] : x.sw) out << k.str() << '\t' << v << '\n';
  return kExitOk;
}

int cmd_blowup(const Options& o, std::ostream& out) {
  if (o.n < 0) throw InputError("-n must be non-negative");
  const FourManifold x = blow_up(load_manifold(o.file), static_cast<int>(o.n));
  save_manifold(x, o.out_path);
  out << "wrote " << o.out_path << " (" << x.name << ", rank " << x.lattice.rank() << ")\n";
  return kExitOk;
}

int cmd_donaldson(const Options& o, std::ostream& out) {
  const FourManifold x = load_manifold(o.file);
  const LatticeVector w = w_or_default(o, x);
  const Frame frame = basic_frame(x);
  print_poly(out, frame, donaldson_closed_form(x, w, o.delta, o.m, frame));
  return kExitOk;
}

int cmd_verify_witten(const Options& o, std::ostream& out) {
  const FourManifold x = load_manifold(o.file);
  const LatticeVector w = w_or_default(o, x);
  if (o.max_degree < 0) throw InputError("--max-degree must be non-negative");
  const WittenReport rep = verify_witten_consistency(x, w, static_cast<unsigned>(o.max_degree));
  out << "degree\tstatus\n";
  for (const auto& d : rep.degrees) {
    out << d.degree << '\t' << (d.ok ? "ok" : "mismatch") << '\n';
    for (const auto& mono : d.mismatches) out << "# " << mono << '\n';
  }
  for (const auto& p : rep.parity_failures) out << "# parity: " << p << '\n';
  out << (rep.passed() ? "pass" : "fail") << '\n';
  return rep.passed() ? kExitOk : kExitMismatch;
}

int cmd_verify_cobordism(const Options& o, std::ostream& out) {
  const FourManifold x = load_manifold(o.file);
  const LatticeVector w = o.w.empty() ? [&] {
    const auto reps = fundamental_domain(x);
    if (reps.empty()) throw InputError("no basic classes to default --w to");
    return reps.front();
  }() : parse_vector(o.w, x.lattice.rank());
  const ReconstructionReport rep = witten_via_cobordism(x, w, o.delta, o.m, parse_branch(o.branch));
  out << "manifold\t" << rep.manifold << '\n';
  out << "w\t" << rep.w.str() << '\n';
  out << "lambda\t" << rep.lambda.str() << '\n';
  out << "n\t" << rep.n << '\n';
  for (const auto& note : rep.notes) out << "# note: " << note << '\n';
  for (const auto& gap : rep.gaps) out << "# gap: " << gap << '\n';
  for (const auto& line : rep.legend) out << "# " << line << '\n';
  if (rep.reconstructed) out << "reconstructed\t" << rep.reconstructed_text << '\n';
  out << "expected\t" << rep.expected_text << '\n';
  for (const auto& mono : rep.mismatches) out << "# mismatch: " << mono << '\n';
  out << "status\t" << to_string(rep.status) << '\n';
  return rep.status == ReconstructionStatus::match ? kExitOk : kExitMismatch;
}

int cmd_coeffs_solve(const Options& o, std::ostream& out) {
  const FourManifold x = load_manifold(o.file);
  if (o.n < 0) throw InputError("--blowups must be non-negative");
  const int n = static_cast<int>(o.n);
  const std::size_t rank = x.lattice.rank() + o.n;
  LatticeVector lambda;
  LatticeVector w;
  if (o.x_opt || o.y_opt) {
    if (!o.lambda.empty() || !o.w.empty()) throw InputError("give either --x/--y or --lambda/--w");
    const HighDegreeSetup s = high_degree_setup(x, n, o.x_opt.value_or(0), o.y_opt.value_or(0));
    lambda = s.lambda;
    w = s.w_tilde;
  } else {
    if (o.lambda.empty() || o.w.empty()) throw InputError("--lambda and --w are required (or --x/--y)");
    lambda = parse_vector(o.lambda, rank);
    w = parse_vector(o.w, rank);
  }
  const BlowupSolveResult res = blowup_identity_solve(x, n, w, lambda, o.delta, o.m);
  out << "# equations=" << res.equations << " unknowns=" << res.unknowns.size() << " rank=" << res.report.rank
      << " status=" << to_string(res.report.status) << '\n';
  out << "# lhs_routes_agree=" << (res.lhs_routes_agree ? "yes" : "no")
      << " rhs_routes_agree=" << (res.rhs_routes_agree ? "yes" : "no") << '\n';
  for (const auto& key : res.undetermined) out << "# undetermined: " << key.str() << '\n';
  out << res.solved.to_tsv();
  const bool ok = res.lhs_routes_agree && res.rhs_routes_agree && res.report.status != SolveStatus::inconsistent;
  return ok ? kExitOk : kExitMismatch;
}

int cmd_coeffs_formula(const Options& o, std::ostream& out) {
  out << high_degree_b(o.chi_h, o.n, o.x, o.y, o.m, o.i, o.j, o.k).str() << '\n';
  return kExitOk;
}

int cmd_sw_poly(const Options& o, std::ostream& out) {
  const FourManifold x = load_manifold(o.file);
  const LatticeVector w = w_or_default(o, x);
  if (o.i < 0) throw InputError("--i must be non-negative");
  const Frame frame = basic_frame(x);
  print_poly(out, frame, sw_poly(x, w, static_cast<unsigned>(o.i), frame));
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Donaldson invariants from Seiberg-Witten data, exactly", "wittenlab"};
  app.require_subcommand(1);
  Options o;

  auto* info = app.add_subcommand("info", "derived invariants and basic classes");
  info->add_option("file", o.file)->required();

  auto* blowup = app.add_subcommand("blowup", "write the N-fold blow-up");
  blowup->add_option("file", o.file)->required();
  blowup->add_option("-n", o.n, "number of blow-ups")->required();
  blowup->add_option("-o", o.out_path, "output file")->required();

  auto* donaldson = app.add_subcommand("donaldson", "closed-form D^w(h^(delta-2m) x^m)");
  donaldson->add_option("file", o.file)->required();
  donaldson->add_option("--w", o.w);
  donaldson->add_option("--delta", o.delta)->required();
  donaldson->add_option("--m", o.m);

  auto* verify = app.add_subcommand("verify", "consistency checks");
  verify->require_subcommand(1);
  auto* witten = verify->add_subcommand("witten", "series against closed form, degree by degree");
  witten->add_option("file", o.file)->required();
  witten->add_option("--w", o.w);
  witten->add_option("--max-degree", o.max_degree);
  auto* cob = verify->add_subcommand("cobordism", "rebuild the invariant from the cobordism sum");
  cob->add_option("file", o.file)->required();
  cob->add_option("--branch", o.branch)->check(CLI::IsMember({"abundant", "c1sq"}));
  cob->add_option("--delta", o.delta)->required();
  cob->add_option("--m", o.m);
  cob->add_option("--w", o.w);

  auto* coeffs = app.add_subcommand("coeffs", "cobordism coefficients");
  coeffs->require_subcommand(1);
  auto* solve = coeffs->add_subcommand("solve", "solve the blown-up identity");
  solve->add_option("file", o.file)->required();
  solve->add_option("--blowups", o.n)->required();
  solve->add_option("--delta", o.delta)->required();
  solve->add_option("--m", o.m);
  solve->add_option("--lambda", o.lambda, "class in the blown-up lattice");
  solve->add_option("--w", o.w, "class in the blown-up lattice");
  solve->add_option("--x", o.x_opt, "use the standard L with L.K_0 = -2x");
  solve->add_option("--y", o.y_opt, "use the standard L with L^2 = 2y");
  auto* formula = coeffs->add_subcommand("formula", "high-degree closed formula");
  formula->add_option("--chi-h", o.chi_h)->required();
  formula->add_option("--n", o.n)->required();
  formula->add_option("--x", o.x)->required();
  formula->add_option("--y", o.y)->required();
  formula->add_option("--m", o.m)->required();
  formula->add_option("--i", o.i)->required();
  formula->add_option("--j", o.j)->required();
  formula->add_option("--k", o.k)->required();

  auto* swp = app.add_subcommand("sw-poly", "sum over B of signed SW' <K,h>^i");
  swp->add_option("file", o.file)->required();
  swp->add_option("--w", o.w);
  swp->add_option("--i", o.i)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (info->parsed()) return cmd_info(o, out);
    if (blowup->parsed()) return cmd_blowup(o, out);
    if (donaldson->parsed()) return cmd_donaldson(o, out);
    if (witten->parsed()) return cmd_verify_witten(o, out);
    if (cob->parsed()) return cmd_verify_cobordism(o, out);
    if (solve->parsed()) return cmd_coeffs_solve(o, out);
    if (formula->parsed()) return cmd_coeffs_formula(o, out);
    if (swp->parsed()) return cmd_sw_poly(o, out);
  } catch (const UndeterminedError& e) {
    err << "undetermined: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  err << "error: no command\n";
  return kExitInput;
}

}  // namespace wittenlab
