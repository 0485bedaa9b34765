#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/graph.hpp"

namespace hardy {

/// Finite-graph JSON format:
///   {"vertices":[ids], "edges":[[i,j,w],...], "potential":{"i":q_i,...}, "root":id}
/// Edges appear once per undirected pair; absent potential entries mean 0.
WeightedGraph graph_from_json(const std::string& text);
WeightedGraph graph_from_json_file(const std::string& path);
std::string graph_to_json(const WeightedGraph& graph);

/// 17 significant digits; round-trips exactly through strtod.
std::string format_double(double value);

std::uint64_t fnv1a64(std::string_view text);

/// CSV with a provenance comment line (`# config=... hash=...`) and a header
/// row. Same config + data => byte-identical output.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::string& config_summary);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  static std::string cell(double value) { return format_double(value); }
  static std::string cell(std::uint64_t value) { return std::to_string(value); }
  static std::string cell(long value) { return std::to_string(value); }
  static std::string cell(int value) { return std::to_string(value); }

 private:
  std::ostream& out_;
};

/// Same table, selectable serialization: "csv" (provenance comment + header +
/// rows) or "json" ({config, hash, columns, rows}). Numeric-looking cells are
/// emitted as JSON numbers with their exact 17-digit representation.
class TableWriter {
 public:
  TableWriter(std::ostream& out, const std::string& config_summary, const std::string& format);
  ~TableWriter();
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  static std::string cell(double value) { return format_double(value); }
  static std::string cell(std::uint64_t value) { return std::to_string(value); }
  static std::string cell(long value) { return std::to_string(value); }
  static std::string cell(int value) { return std::to_string(value); }

 private:
  std::ostream& out_;
  bool json_ = false;
  bool first_row_ = true;
  bool closed_ = false;
};

}  // namespace hardy
