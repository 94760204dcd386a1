#ifndef SPECTRALWALK_IO_HPP
#define SPECTRALWALK_IO_HPP

#include "spectralwalk/domain.hpp"

#include <json.hpp>

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace spectralwalk {

using Json = nlohmann::ordered_json;

/// Parses a JSON document; syntax errors become InvalidInput naming the
/// source, line and column.
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Graph document:
///   {"vertices":[{"id":int,"w":float,"coords":[...]?}...],
///    "edges":[{"tail":int,"head":int,"w":float}...],
///    "mode":"full"|"symmetrize", "orientation":[[tail,head]...]?}
/// `mode` overrides the document's own mode when given.
GraphSpec graph_spec_from_json(const Json& doc, const std::string& source = "graph");
GraphWithGeometry graph_from_json(const Json& doc, const std::string& source = "graph",
                                  std::optional<GraphSpec::Mode> mode = {});
GraphWithGeometry read_graph(const std::filesystem::path& path,
                             std::optional<GraphSpec::Mode> mode = {});

/// Full-mode document with explicit orientation; read_graph inverts it.
Json graph_to_json(const GraphWithGeometry& g);
void write_graph(const GraphWithGeometry& g, const std::filesystem::path& path);

/// Domain document: {"graph": path-or-inline?, "vertices":[ids]} or
/// {"graph": ..., "box":{"lo":[...],"hi":[...]}}. A relative graph path is
/// resolved against `base_dir`. When `parent` is given it is used and the
/// document's graph entry is ignored.
Domain domain_from_json(const Json& doc, std::shared_ptr<const GraphWithGeometry> parent,
                        const std::filesystem::path& base_dir = {},
                        const std::string& source = "domain");
Domain read_domain(const std::filesystem::path& path,
                   std::shared_ptr<const GraphWithGeometry> parent = nullptr);
Json domain_to_json(const Domain& d);

/// Moment file: a bare array or an object holding one of "pspec", "q",
/// "moments" or "values".
Vector moments_from_json(const Json& doc, const std::string& source = "moments");

/// Point cloud CSV: one point per line, comma separated; '#' lines and an
/// optional non-numeric header are skipped.
Matrix read_points_csv(const std::filesystem::path& path);

Json to_json(const Vector& v);
std::vector<double> to_std(const Vector& v);

} // namespace spectralwalk

#endif // SPECTRALWALK_IO_HPP
