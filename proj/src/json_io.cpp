#include "goi/json_io.hpp"

#include <sstream>
#include <stdexcept>

namespace goi {

namespace {

std::string q(const Rational& r) { return format_rational(r); }

Rational rat(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("expected a rational as \"p/q\", got " + j.dump());
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string space_name(Space s) { return s == Space::Line ? "line" : "line*interval"; }

Space space_from(const json& j) {
  auto s = j.get<std::string>();
  if (s == "line") return Space::Line;
  if (s == "line*interval") return Space::LineTimesInterval;
  throw std::invalid_argument("unknown space '" + s + "'");
}

json bits_json(const Bits& b) {
  json o = json::object();
  for (const auto& [k, v] : b) o[std::to_string(k)] = int(v);
  return o;
}

Bits bits_from(const json& j) {
  Bits b;
  for (const auto& [k, v] : j.items()) b[std::stoull(k)] = v.get<int>() != 0;
  return b;
}

json frac_json(const Frac& f) { return f.str(); }

Frac frac_from(const json& j) {
  Rational r = rat(j);
  return Frac(r.get_num().get_si(), r.get_den().get_si());
}

}  // namespace

// ---------------------------------------------------------------- graphs

json to_json(const Graph& g) {
  json j;
  j["vertices"] = json(std::vector<std::string>(g.vertices.begin(), g.vertices.end()));
  j["edges"] = json::array();
  for (const auto& e : g.edges) j["edges"].push_back({{"id", e.id}, {"src", e.src}, {"dst", e.dst}, {"weight", q(e.weight)}});
  return j;
}

Graph graph_from_json(const json& j) {
  Graph g;
  for (const auto& v : field(j, "vertices")) g.add_vertex(v.get<std::string>());
  for (const auto& e : field(j, "edges"))
    g.add_edge(field(e, "id").get<std::string>(), field(e, "src").get<std::string>(), field(e, "dst").get<std::string>(),
               e.contains("weight") ? rat(e["weight"]) : Rational(1));
  g.validate();
  return g;
}

json to_json(const ThickGraph& g) {
  json j;
  j["carrier"] = g.carrier;
  j["dialect"] = g.dialect;
  j["edges"] = json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back(
        {{"id", e.id}, {"src", encode_vertex(e.src)}, {"dst", encode_vertex(e.dst)}, {"weight", q(e.weight)}});
  return j;
}

ThickGraph thick_from_json(const json& j) {
  ThickGraph g(field(j, "carrier").get<std::vector<std::string>>(), field(j, "dialect").get<std::vector<DElem>>());
  for (const auto& e : field(j, "edges"))
    g.add_edge(field(e, "id").get<std::string>(), decode_vertex(field(e, "src").get<std::string>()),
               decode_vertex(field(e, "dst").get<std::string>()), e.contains("weight") ? rat(e["weight"]) : Rational(1));
  g.validate();
  return g;
}

json to_json(const SlicedThickGraph& g) {
  json j;
  j["slices"] = json::array();
  for (const auto& [a, s] : g.slices) j["slices"].push_back({{"coeff", q(a)}, {"graph", to_json(s)}});
  return j;
}

SlicedThickGraph sliced_from_json(const json& j) {
  SlicedThickGraph g;
  for (const auto& s : field(j, "slices")) g.slices.emplace_back(rat(field(s, "coeff")), thick_from_json(field(s, "graph")));
  return g;
}

// ---------------------------------------------------------------- cells and maps

json to_json(const CellSet& s) {
  json j = json::array();
  for (const auto& c : s.cells()) j.push_back(c.str());
  return j;
}

CellSet cellset_from_json(const json& j) {
  std::vector<Cell> cells;
  for (const auto& c : j) cells.push_back(Cell::parse(c.get<std::string>()));
  return CellSet(std::move(cells));
}

json to_json(const PosMap& m) {
  json j;
  j["bound"] = m.bound();
  j["table"] = m.table();
  j["modulus"] = m.modulus();
  j["rules"] = json::array();
  for (const auto& r : m.rules()) {
    if (r) j["rules"].push_back({{"a", frac_json(r->a)}, {"b", frac_json(r->b)}});
    else j["rules"].push_back(nullptr);
  }
  return j;
}

PosMap posmap_from_json(const json& j) {
  uint64_t bound = field(j, "bound").get<uint64_t>(), mod = field(j, "modulus").get<uint64_t>();
  auto table = field(j, "table").get<std::vector<uint64_t>>();
  std::vector<std::optional<Affine>> rules;
  for (const auto& r : field(j, "rules")) {
    if (r.is_null()) rules.push_back(std::nullopt);
    else rules.push_back(Affine{frac_from(field(r, "a")), frac_from(field(r, "b"))});
  }
  if (table.size() + 1 != bound || rules.size() != mod) throw std::invalid_argument("position map: inconsistent sizes");
  return PosMap::from_function(
      [&](uint64_t p) -> std::optional<uint64_t> {
        if (p < bound) return table[p - 1] ? std::optional<uint64_t>(table[p - 1]) : std::nullopt;
        const auto& r = rules[p % mod];
        return r ? r->at(p) : std::nullopt;
      },
      mod, bound);
}

json to_json(const Branch& b) {
  json j;
  j["guard"] = b.guard.str();
  j["out_space"] = space_name(b.out_space);
  j["out_base"] = b.out_base;
  j["out_tag"] = b.out_tag;
  j["writes"] = bits_json(b.writes);
  j["src"] = to_json(b.src);
  return j;
}

Branch branch_from_json(const json& j) {
  Branch b;
  b.guard = Cell::parse(field(j, "guard").get<std::string>());
  b.out_space = j.contains("out_space") ? space_from(j["out_space"]) : b.guard.space;
  b.out_base = field(j, "out_base").get<int64_t>();
  if (j.contains("out_tag")) b.out_tag = j["out_tag"].get<Tag>();
  if (j.contains("writes")) b.writes = bits_from(j["writes"]);
  if (j.contains("src")) b.src = posmap_from_json(j["src"]);
  b.canonicalize();
  return b;
}

json to_json(const BitMap& m) {
  json j = json::array();
  for (const auto& b : m.branches) j.push_back(to_json(b));
  return j;
}

BitMap bitmap_from_json(const json& j) {
  BitMap m;
  for (const auto& b : j) m.branches.push_back(branch_from_json(b));
  return m;
}

// ---------------------------------------------------------------- graphings and projects

json to_json(const Graphing& g) {
  json j;
  j["carrier"] = to_json(g.carrier);
  j["dialect"] = g.dialect;
  j["edges"] = json::array();
  for (const auto& e : g.edges) {
    json b = json::array();
    for (const auto& br : e.branches) b.push_back(to_json(br));
    j["edges"].push_back({{"id", e.id}, {"weight", q(e.weight)}, {"branches", b}});
  }
  return j;
}

Graphing graphing_from_json(const json& j) {
  Graphing g;
  g.carrier = cellset_from_json(field(j, "carrier"));
  if (j.contains("dialect")) g.dialect = j["dialect"].get<Dims>();
  for (const auto& e : field(j, "edges")) {
    auto& edge = g.add_edge(field(e, "id").get<std::string>(), e.contains("weight") ? rat(e["weight"]) : Rational(1));
    for (const auto& b : field(e, "branches")) edge.branches.push_back(branch_from_json(b));
  }
  g.validate();
  return g;
}

json to_json(const Project& p) {
  json j;
  j["wager"] = p.wager.str();
  j["carrier"] = to_json(p.carrier);
  j["slices"] = json::array();
  for (const auto& [a, g] : p.slices) j["slices"].push_back({{"coeff", q(a)}, {"graphing", to_json(g)}});
  return j;
}

Project project_from_json(const json& j) {
  Project p;
  const json& w = field(j, "wager");
  p.wager = w.is_string() ? ExtReal::parse(w.get<std::string>()) : ExtReal(rat(w));
  p.carrier = cellset_from_json(field(j, "carrier"));
  for (const auto& s : field(j, "slices")) p.slices.emplace_back(rat(field(s, "coeff")), graphing_from_json(field(s, "graphing")));
  p.validate();
  return p;
}

// ---------------------------------------------------------------- reports

json to_json(const Diagnostic& d) {
  return {{"rule", d.rule}, {"position", d.position}, {"line", d.line}, {"col", d.col}, {"message", d.message}};
}

json to_json(const SoundnessReport& r) {
  json j;
  j["checked"] = r.checked;
  j["diagnostics"] = json::array();
  for (const auto& d : r.diagnostics) j["diagnostics"].push_back(to_json(d));
  if (!r.checked) {
    j["ok"] = false;
    return j;
  }
  j["conclusion"] = r.conclusion;
  if (!r.error.empty()) j["error"] = r.error;
  j["success"] = to_string(r.success);
  j["uses_with"] = r.uses_with;
  if (r.success == Success::Weak && r.uses_with) j["flag"] = "weak success accepted for a proof using &";
  j["reasons"] = r.reasons;
  j["pairings"] = json::array();
  for (const auto& p : r.pairings) j["pairings"].push_back({{"test", p.test}, {"value", p.value}, {"resource_error", p.error}});
  j["ok"] = r.ok();
  return j;
}

json to_json(const BatteryResult& r) {
  return {{"battery", r.name},     {"total", r.total},   {"passed", r.passed},      {"redrawn", r.redrawn},
          {"infinite", r.infinite}, {"ok", r.ok()},       {"summary", r.summary()}, {"failures", r.failures}};
}

Basis basis_from_json(const json& j) {
  Basis b;
  for (const auto& [name, v] : j.items()) {
    const json& list = v.is_object() ? field(v, "generators") : v;
    std::vector<Project> gens;
    for (const auto& p : list) gens.push_back(project_from_json(p));
    b.generators[uint32_t(std::stoul(name))] = std::move(gens);
  }
  return b;
}

// ---------------------------------------------------------------- DOT

std::string project_to_dot(const Project& p, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  os << "  label=\"wager " << p.wager.str() << "\";\n";
  for (size_t i = 0; i < p.slices.size(); ++i) {
    const auto& [a, g] = p.slices[i];
    os << "  subgraph \"cluster_" << i << "\" {\n    label=\"slice " << i << " (" << q(a) << ")\";\n";
    std::string pre = "s" + std::to_string(i) + ":";
    for (auto b : g.carrier.bases())
      os << "    \"" << pre << b << "\" [label=\"[" << b << "," << b + 1 << ")\"];\n";
    for (const auto& e : g.edges)
      for (const auto& br : e.branches)
        os << "    \"" << pre << br.guard.base << "\" -> \"" << pre << br.out_base << "\" [label=\"" << e.id << " ("
           << q(e.weight) << ") " << br.guard.str() << "\"];\n";
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

std::string thick_to_dot(const ThickGraph& g, const std::string& name) { return to_dot(g.underlying(), name); }

}  // namespace goi
