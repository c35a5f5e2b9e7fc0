#include "wittenlab/manifold_io.hpp"

#include <fstream>
#include <set>

#include "wittenlab/errors.hpp"

namespace wittenlab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(path + "." + key, "unknown key");
  }
}

const json& member(const json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer, got " + v.dump());
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    fail(path, "integer out of range");
  }
  return v.get<std::int64_t>();
}

std::vector<std::int64_t> as_int_vector(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

LatticeVector as_class(const json& v, const std::string& path, std::size_t rank) {
  // A bare 0 abbreviates the zero class.
  if (v.is_number_integer() && as_int(v, path) == 0) return LatticeVector::zero(rank);
  LatticeVector out(as_int_vector(v, path));
  if (out.size() != rank) {
    fail(path, "has " + std::to_string(out.size()) + " entries but the lattice has rank " + std::to_string(rank));
  }
  return out;
}

UnimodularLattice parse_gram(const json& g, const std::string& path) {
  check_keys(g, path, {"blocks", "matrix"});
  const bool has_blocks = g.contains("blocks");
  if (has_blocks == g.contains("matrix")) fail(path, "give exactly one of 'blocks' or 'matrix'");
  try {
    if (has_blocks) {
      const json& b = g["blocks"];
      if (!b.is_array()) fail(path + ".blocks", "expected an array of block names");
      std::vector<std::string> names;
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (!b[i].is_string()) fail(path + ".blocks[" + std::to_string(i) + "]", "expected a string");
        names.push_back(b[i].get<std::string>());
      }
      return UnimodularLattice::from_blocks(names);
    }
    const json& m = g["matrix"];
    if (!m.is_array()) fail(path + ".matrix", "expected an array of rows");
    IntMatrix rows;
    for (std::size_t i = 0; i < m.size(); ++i) rows.push_back(as_int_vector(m[i], path + ".matrix[" + std::to_string(i) + "]"));
    return UnimodularLattice(std::move(rows));
  } catch (const InputError& e) {
    if (std::string(e.what()).rfind(path, 0) == 0) throw;
    fail(path, e.what());
  }
}

}  // namespace

FourManifold manifold_from_json(const json& doc) {
  const std::string root = "$";
  check_keys(doc, root, {"name", "euler", "signature", "gram", "sw", "witten_verified", "hyperbolic_witness", "provenance"});
  const json& name = member(doc, root, "name");
  if (!name.is_string()) fail("$.name", "expected a string");
  const std::int64_t euler = as_int(member(doc, root, "euler"), "$.euler");
  const std::int64_t signature = as_int(member(doc, root, "signature"), "$.signature");
  UnimodularLattice lattice = parse_gram(member(doc, root, "gram"), "$.gram");
  const std::size_t rank = lattice.rank();

  SWData sw;
  const json& entries = member(doc, root, "sw");
  if (!entries.is_array()) fail("$.sw", "expected an array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string p = "$.sw[" + std::to_string(i) + "]";
    check_keys(entries[i], p, {"class", "value"});
    LatticeVector k = as_class(member(entries[i], p, "class"), p + ".class", rank);
    const std::int64_t v = as_int(member(entries[i], p, "value"), p + ".value");
    if (!sw.emplace(k, v).second) fail(p + ".class", "class " + k.str() + " listed twice");
  }

  bool verified = false;
  if (doc.contains("witten_verified")) {
    if (!doc["witten_verified"].is_boolean()) fail("$.witten_verified", "expected true or false");
    verified = doc["witten_verified"].get<bool>();
  }
  std::optional<HyperbolicPair> witness;
  if (doc.contains("hyperbolic_witness")) {
    const json& w = doc["hyperbolic_witness"];
    check_keys(w, "$.hyperbolic_witness", {"f1", "f2"});
    witness = HyperbolicPair{as_class(member(w, "$.hyperbolic_witness", "f1"), "$.hyperbolic_witness.f1", rank),
                             as_class(member(w, "$.hyperbolic_witness", "f2"), "$.hyperbolic_witness.f2", rank)};
  }
  std::string provenance;
  if (doc.contains("provenance")) {
    if (!doc["provenance"].is_string()) fail("$.provenance", "expected a string");
    provenance = doc["provenance"].get<std::string>();
  }

  if ((euler + signature) % 4 == 0) complete_conjugates(sw, (euler + signature) / 4);
  return FourManifold{name.get<std::string>(), euler, signature, std::move(lattice), std::move(sw), verified,
                      std::move(witness), std::move(provenance)};
}

json manifold_to_json(const FourManifold& x) {
  json doc;
  doc["name"] = x.name;
  doc["euler"] = x.euler;
  doc["signature"] = x.signature;
  doc["gram"] = {{"matrix", x.lattice.gram()}};
  json sw = json::array();
  for (const auto& [k, v] : x.sw) sw.push_back({{"class", k.coords()}, {"value", v}});
  doc["sw"] = std::move(sw);
  doc["witten_verified"] = x.witten_verified;
  if (x.hyperbolic_witness) {
    doc["hyperbolic_witness"] = {{"f1", x.hyperbolic_witness->f1.coords()}, {"f2", x.hyperbolic_witness->f2.coords()}};
  }
  if (!x.provenance.empty()) doc["provenance"] = x.provenance;
  return doc;
}

FourManifold load_manifold(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  FourManifold x = manifold_from_json(doc);
  require_valid(x);
  return x;
}

void save_manifold(const FourManifold& x, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << manifold_to_json(x).dump() << '\n';
}

}  // namespace wittenlab
