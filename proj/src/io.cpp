#include "spectralwalk/io.hpp"

#include <fstream>
#include <sstream>

namespace spectralwalk {

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& where, const std::string& what) {
  throw InvalidInput(source + ": " + where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& source,
                  const std::string& where) {
  if (!obj.is_object()) fail(source, where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(source, where, std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& v, const std::string& source, const std::string& where) {
  if (!v.is_number()) fail(source, where, "expected a number");
  return v.get<double>();
}

ExternalId integer(const Json& v, const std::string& source, const std::string& where) {
  if (!v.is_number_integer()) fail(source, where, "expected an integer id");
  return v.get<ExternalId>();
}

std::vector<double> number_list(const Json& v, const std::string& source, const std::string& where) {
  if (!v.is_array()) fail(source, where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number(v[i], source, where + "[" + std::to_string(i) + "]"));
  return out;
}

} // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::size_t ls = text.rfind('\n', end == 0 ? 0 : end - 1);
    ls = (ls == std::string::npos || end == 0) ? 0 : ls + 1;
    std::size_t le = text.find('\n', ls);
    std::string context = text.substr(ls, le == std::string::npos ? std::string::npos : le - ls);
    if (context.size() > 80) context = context.substr(0, 80) + "...";
    throw InvalidInput(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                       ": parse error near '" + context + "'");
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
  if (!out) throw InvalidInput("write failed for " + path.string());
}

Json read_json_file(const std::filesystem::path& path) {
  return parse_json(read_text_file(path), path.string());
}

GraphSpec graph_spec_from_json(const Json& doc, const std::string& source) {
  GraphSpec spec;
  if (!doc.is_object()) fail(source, "document", "expected an object");
  const Json& vs = field(doc, "vertices", source, "document");
  if (!vs.is_array()) fail(source, "vertices", "expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string where = "vertices[" + std::to_string(i) + "]";
    GraphSpec::VertexRecord r;
    r.id = integer(field(vs[i], "id", source, where), source, where + ".id");
    r.weight = number(field(vs[i], "w", source, where), source, where + ".w");
    if (auto c = vs[i].find("coords"); c != vs[i].end())
      r.coords = number_list(*c, source, where + ".coords");
    spec.vertices.push_back(std::move(r));
  }
  const Json& es = field(doc, "edges", source, "document");
  if (!es.is_array()) fail(source, "edges", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    GraphSpec::EdgeRecord r;
    r.tail = integer(field(es[i], "tail", source, where), source, where + ".tail");
    r.head = integer(field(es[i], "head", source, where), source, where + ".head");
    r.weight = number(field(es[i], "w", source, where), source, where + ".w");
    spec.edges.push_back(r);
  }
  if (auto m = doc.find("mode"); m != doc.end()) {
    if (*m == "full") {
      spec.mode = GraphSpec::Mode::Full;
    } else if (*m == "symmetrize") {
      spec.mode = GraphSpec::Mode::Symmetrize;
    } else {
      fail(source, "mode", "expected \"full\" or \"symmetrize\"");
    }
  }
  if (auto o = doc.find("orientation"); o != doc.end()) {
    if (!o->is_array()) fail(source, "orientation", "expected an array of [tail, head] pairs");
    for (std::size_t i = 0; i < o->size(); ++i) {
      const std::string where = "orientation[" + std::to_string(i) + "]";
      const Json& p = (*o)[i];
      if (!p.is_array() || p.size() != 2) fail(source, where, "expected [tail, head]");
      spec.orientation.emplace_back(integer(p[0], source, where), integer(p[1], source, where));
    }
  }
  return spec;
}

GraphWithGeometry graph_from_json(const Json& doc, const std::string& source,
                                  std::optional<GraphSpec::Mode> mode) {
  GraphSpec spec = graph_spec_from_json(doc, source);
  if (mode) spec.mode = *mode;
  return GraphWithGeometry(spec);
}

GraphWithGeometry read_graph(const std::filesystem::path& path,
                             std::optional<GraphSpec::Mode> mode) {
  return graph_from_json(read_json_file(path), path.string(), mode);
}

Json graph_to_json(const GraphWithGeometry& g) {
  const GraphSpec spec = g.to_spec();
  Json doc;
  doc["mode"] = "full";
  Json vs = Json::array();
  for (const auto& v : spec.vertices) {
    Json r;
    r["id"] = v.id;
    r["w"] = v.weight;
    if (!v.coords.empty()) r["coords"] = v.coords;
    vs.push_back(std::move(r));
  }
  doc["vertices"] = std::move(vs);
  Json es = Json::array();
  for (const auto& e : spec.edges) es.push_back({{"tail", e.tail}, {"head", e.head}, {"w", e.weight}});
  doc["edges"] = std::move(es);
  Json os = Json::array();
  for (const auto& [t, h] : spec.orientation) os.push_back(Json::array({t, h}));
  doc["orientation"] = std::move(os);
  return doc;
}

void write_graph(const GraphWithGeometry& g, const std::filesystem::path& path) {
  write_text_file(path, graph_to_json(g).dump(2) + "\n");
}

Domain domain_from_json(const Json& doc, std::shared_ptr<const GraphWithGeometry> parent,
                        const std::filesystem::path& base_dir, const std::string& source) {
  if (!doc.is_object()) fail(source, "document", "expected an object");
  if (!parent) {
    auto g = doc.find("graph");
    if (g == doc.end()) fail(source, "document", "no graph given and no 'graph' field");
    if (g->is_string()) {
      std::filesystem::path p = g->get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      parent = std::make_shared<const GraphWithGeometry>(read_graph(p));
    } else {
      parent = std::make_shared<const GraphWithGeometry>(graph_from_json(*g, source + ": graph"));
    }
  }
  const bool has_vertices = doc.contains("vertices");
  const bool has_box = doc.contains("box");
  if (has_vertices == has_box) fail(source, "document", "expected exactly one of 'vertices' or 'box'");
  if (has_box) {
    const Json& box = doc["box"];
    return make_box_domain(parent, number_list(field(box, "lo", source, "box"), source, "box.lo"),
                           number_list(field(box, "hi", source, "box"), source, "box.hi"));
  }
  const Json& vs = doc["vertices"];
  if (!vs.is_array()) fail(source, "vertices", "expected an array of ids");
  std::vector<ExternalId> ids;
  for (std::size_t i = 0; i < vs.size(); ++i)
    ids.push_back(integer(vs[i], source, "vertices[" + std::to_string(i) + "]"));
  return make_domain_by_id(parent, ids);
}

Domain read_domain(const std::filesystem::path& path,
                   std::shared_ptr<const GraphWithGeometry> parent) {
  return domain_from_json(read_json_file(path), std::move(parent), path.parent_path(), path.string());
}

Json domain_to_json(const Domain& d) {
  Json ids = Json::array();
  for (auto x : d.vertices()) ids.push_back(d.parent().external_id(x));
  Json doc;
  doc["vertices"] = std::move(ids);
  return doc;
}

Vector moments_from_json(const Json& doc, const std::string& source) {
  const Json* arr = &doc;
  if (doc.is_object()) {
    arr = nullptr;
    for (const char* key : {"pspec", "q", "moments", "values"}) {
      if (auto it = doc.find(key); it != doc.end()) {
        arr = &*it;
        break;
      }
    }
    if (!arr) fail(source, "document", "expected an array or one of 'pspec', 'q', 'moments', 'values'");
  }
  const auto values = number_list(*arr, source, "moments");
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

Matrix read_points_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
      continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (rows.empty()) continue; // header
      throw InvalidInput(path.string() + ":" + std::to_string(lineno) + ": non-numeric entry");
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw InvalidInput(path.string() + ":" + std::to_string(lineno) + ": expected " +
                         std::to_string(rows.front().size()) + " coordinates");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInput(path.string() + ": no points");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

Json to_json(const Vector& v) { return to_std(v); }

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

} // namespace spectralwalk
