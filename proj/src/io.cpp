#include "hardy/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hardy {

using nlohmann::json;

WeightedGraph graph_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::InvalidInput, std::string("graph JSON parse error: ") + e.what());
  }
  if (!j.is_object()) raise(ErrorCode::InvalidInput, "graph JSON must be an object");

  std::vector<Vertex> vertices;
  if (j.contains("vertices"))
    for (const auto& v : j.at("vertices")) vertices.push_back(v.get<Vertex>());

  std::vector<std::tuple<Vertex, Vertex, double>> edges;
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3)
        raise(ErrorCode::InvalidInput, "each edge must be [i, j, w]");
      edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>(), e[2].get<double>());
    }
  }

  std::map<Vertex, double> potential;
  if (j.contains("potential")) {
    for (const auto& [key, value] : j.at("potential").items())
      potential[static_cast<Vertex>(std::stoull(key))] = value.get<double>();
  }

  std::optional<Vertex> root;
  if (j.contains("root")) root = j.at("root").get<Vertex>();
  return build_finite_graph(edges, potential, root, vertices);
}

WeightedGraph graph_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::InvalidInput, "cannot open graph file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return graph_from_json(buffer.str());
}

std::string graph_to_json(const WeightedGraph& graph) {
  json j;
  j["vertices"] = json::array();
  j["edges"] = json::array();
  j["potential"] = json::object();
  for (Vertex x : graph.vertices()) {
    j["vertices"].push_back(x);
    double q = graph.potential(x);
    if (q != 0.0) j["potential"][std::to_string(x)] = q;
    for (const auto& n : graph.neighbors(x))
      if (x < n.to) j["edges"].push_back({x, n.to, n.weight});
  }
  j["root"] = graph.root();
  return j.dump();
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

CsvWriter::CsvWriter(std::ostream& out, const std::string& config_summary) : out_(out) {
  char hex[20];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(config_summary)));
  out_ << "# config=" << config_summary << " hash=" << hex << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) { row(columns); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ",";
    out_ << cells[i];
  }
  out_ << "\n";
}

namespace {

bool looks_numeric(const std::string& text) {
  if (text.empty()) return false;
  char* end = nullptr;
  std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size();
}

}  // namespace

TableWriter::TableWriter(std::ostream& out, const std::string& config_summary,
                         const std::string& format)
    : out_(out), json_(format == "json") {
  if (format != "csv" && format != "json")
    raise(ErrorCode::InvalidInput, "unknown output format: " + format);
  char hex[20];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(config_summary)));
  if (json_) {
    out_ << "{\n  \"config\": " << json(config_summary).dump() << ",\n  \"hash\": \"" << hex
         << "\",\n";
  } else {
    out_ << "# config=" << config_summary << " hash=" << hex << "\n";
  }
}

void TableWriter::header(const std::vector<std::string>& columns) {
  if (json_) {
    out_ << "  \"columns\": " << json(columns).dump() << ",\n  \"rows\": [";
    return;
  }
  row(columns);
}

void TableWriter::row(const std::vector<std::string>& cells) {
  if (json_) {
    out_ << (first_row_ ? "\n    [" : ",\n    [");
    first_row_ = false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ", ";
      if (looks_numeric(cells[i]))
        out_ << cells[i];
      else
        out_ << json(cells[i]).dump();
    }
    out_ << "]";
    return;
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ",";
    out_ << cells[i];
  }
  out_ << "\n";
}

TableWriter::~TableWriter() {
  if (json_ && !closed_) {
    out_ << "\n  ]\n}\n";
    closed_ = true;
  }
}

}  // namespace hardy
