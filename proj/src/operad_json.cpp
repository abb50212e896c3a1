#include <fstream>

#include "treebar/operads.hpp"

namespace treebar {

using nlohmann::json;

namespace {

json matrix_to_json(const SparseMatrix& m) {
  json out = json::array();
  for (const auto& [pos, v] : m.entries()) out.push_back(json::array({pos.first, pos.second, to_string(v)}));
  return out;
}

Rational scalar_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument("scalars must be strings \"p/q\" or integers");
}

SparseMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
  SparseMatrix m(rows, cols);
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("matrix entries are [row, col, value]");
    const auto r = e[0].get<std::size_t>(), c = e[1].get<std::size_t>();
    if (r >= rows || c >= cols) throw std::invalid_argument("matrix entry out of range");
    m.add(r, c, scalar_from_json(e[2]));
  }
  return m;
}

std::size_t basis_index(const Species& s, std::size_t n, const std::string& name) {
  auto i = s.find(n, name);
  if (!i) throw std::invalid_argument("arity " + std::to_string(n) + " has no basis element '" + name + "'");
  return *i;
}

}  // namespace

json species_to_json(const Species& s) {
  json arities = json::array();
  for (std::size_t n = 1; n <= s.max_arity(); ++n) {
    const auto& c = s.component(n);
    json a = {{"n", n}, {"basis", c.basis}, {"degrees", c.degrees}};
    switch (c.action) {
      case ActionKind::trivial: a["action"] = "trivial"; break;
      case ActionKind::regular: a["action"] = "regular"; break;
      case ActionKind::explicit_matrices: {
        json ts = json::array();
        for (const auto& t : c.transpositions) ts.push_back(matrix_to_json(t));
        a["action"] = {{"transpositions", ts}};
        break;
      }
    }
    if (!c.differential.is_zero()) a["differential"] = matrix_to_json(c.differential);
    arities.push_back(std::move(a));
  }
  return {{"max_arity", s.max_arity()}, {"arities", arities}};
}

Species species_from_json(const json& j) {
  const auto max_arity = j.at("max_arity").get<std::size_t>();
  if (max_arity < 1) throw std::invalid_argument("max_arity must be positive");
  std::vector<SpeciesComponent> comps(max_arity);
  std::vector<bool> seen(max_arity, false);
  for (const auto& a : j.at("arities")) {
    const auto n = a.at("n").get<std::size_t>();
    if (n < 1 || n > max_arity) throw std::invalid_argument("arity " + std::to_string(n) + " outside 1..max_arity");
    if (seen[n - 1]) throw std::invalid_argument("arity " + std::to_string(n) + " listed twice");
    seen[n - 1] = true;
    auto& c = comps[n - 1];
    c.basis = a.at("basis").get<std::vector<std::string>>();
    const std::size_t d = c.basis.size();
    if (a.contains("degrees")) c.degrees = a["degrees"].get<std::vector<int>>();
    const json action = a.value("action", json("trivial"));
    if (action == "trivial") {
      c.action = ActionKind::trivial;
    } else if (action == "regular") {
      c.action = ActionKind::regular;
    } else if (action.is_object() && action.contains("transpositions")) {
      c.action = ActionKind::explicit_matrices;
      for (const auto& t : action["transpositions"]) c.transpositions.push_back(matrix_from_json(t, d, d));
    } else {
      throw std::invalid_argument("action must be \"trivial\", \"regular\" or {\"transpositions\": [...]}");
    }
    if (a.contains("differential")) c.differential = matrix_from_json(a["differential"], d, d);
  }
  return Species(std::move(comps));
}

json operad_to_json(const Operad& p) {
  json out = species_to_json(p.species());
  out["name"] = p.name();
  const Species& s = p.species();
  json comps = json::array();
  for (const auto& [key, entries] : p.table()) {
    if (key.m == 1 || key.n == 1) continue;  // unit laws are implied
    for (std::size_t a = 0; a < s.dim(key.m); ++a)
      for (std::size_t b = 0; b < s.dim(key.n); ++b) {
        json terms = json::array();
        for (const auto& [r, c] : entries[a * s.dim(key.n) + b])
          terms.push_back({{"coeff", to_string(c)}, {"result", s.name(key.m + key.n - 1, r)}});
        comps.push_back({{"m", key.m}, {"n", key.n}, {"i", key.i}, {"left", s.name(key.m, a)},
                         {"right", s.name(key.n, b)}, {"terms", terms}});
      }
  }
  out["compositions"] = comps;
  return out;
}

Operad operad_from_json(const json& j) {
  try {
    Species s = species_from_json(j);
    Operad::Table table;
    for (const auto& c : j.value("compositions", json::array())) {
      const auto m = c.at("m").get<std::size_t>(), n = c.at("n").get<std::size_t>(), i = c.at("i").get<std::size_t>();
      if (m < 1 || n < 1 || m + n - 1 > s.max_arity() || i < 1 || i > m)
        throw std::invalid_argument("composition (m=" + std::to_string(m) + ", n=" + std::to_string(n) +
                                    ", i=" + std::to_string(i) + ") outside the truncation");
      auto& entries = table[{m, i, n}];
      if (entries.empty()) {
        entries.resize(s.dim(m) * s.dim(n));
        if (m == 1)
          for (std::size_t b = 0; b < s.dim(n); ++b) entries[b] = {{b, 1}};
        else if (n == 1)
          for (std::size_t a = 0; a < s.dim(m); ++a) entries[a] = {{a, 1}};
      }
      const std::size_t a = basis_index(s, m, c.at("left").get<std::string>());
      const std::size_t b = basis_index(s, n, c.at("right").get<std::string>());
      LinComb value;
      for (const auto& t : c.at("terms"))
        add_terms(value, basis_index(s, m + n - 1, t.at("result").get<std::string>()), scalar_from_json(t.at("coeff")));
      entries[a * s.dim(n) + b] = std::move(value);
    }
    return Operad(j.value("name", std::string("file")), std::move(s), std::move(table));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed operad file: ") + e.what());
  }
}

Operad load_operad(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open operad file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("cannot parse " + path + ": " + e.what());
  }
  return operad_from_json(j);
}

}  // namespace treebar
