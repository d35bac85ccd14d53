#pragma once

// JSON documents for structures, frameworks, scan sets and reports.
//
// Every document is an object with "version": 1 and a "type" tag. Unknown keys
// are rejected; errors carry the line and column of the offending key.

#include <Eigen/Dense>
#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "affrig/errors.hpp"
#include "affrig/hypergraph.hpp"
#include "affrig/registration.hpp"

namespace affrig::io {

inline constexpr int kFormatVersion = 1;

class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& message, int line_, int column_)
      : InvalidInput("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " + message),
        line(line_),
        column(column_) {}
  int line;
  int column;
};

struct GraphDocument {
  Graph graph;
  std::vector<std::string> labels;  // empty, or one per vertex
  friend bool operator==(const GraphDocument&, const GraphDocument&) = default;
};

struct HypergraphDocument {
  Hypergraph hypergraph;
  std::vector<std::string> labels;
  NormalizationLog log;  // what ingestion discarded; not serialized
  friend bool operator==(const HypergraphDocument& a, const HypergraphDocument& b) {
    return a.hypergraph == b.hypergraph && a.labels == b.labels;
  }
};

struct FrameworkDocument {
  Eigen::MatrixXd coordinates;  // v x dim
  friend bool operator==(const FrameworkDocument& a, const FrameworkDocument& b) {
    return a.coordinates.rows() == b.coordinates.rows() && a.coordinates.cols() == b.coordinates.cols() &&
           a.coordinates == b.coordinates;
  }
};

/// Analysis result. `exit_code` mirrors the process exit status.
struct Report {
  std::string command;
  std::string verdict;
  int exit_code = 0;
  std::optional<int> corank;
  std::optional<std::uint64_t> seed;
  nlohmann::ordered_json certificate = nlohmann::ordered_json::object();
  nlohmann::ordered_json residuals = nlohmann::ordered_json::object();
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  nlohmann::ordered_json timings = nlohmann::ordered_json::object();  // wall-clock; excluded from determinism
  friend bool operator==(const Report&, const Report&) = default;
};

/// The "type" tag of a document.
std::string document_type(const std::string& text);

GraphDocument parse_graph(const std::string& text);
HypergraphDocument parse_hypergraph(const std::string& text);
FrameworkDocument parse_framework(const std::string& text);
ScanSet parse_scanset(const std::string& text);
Report parse_report(const std::string& text);

std::string serialize(const GraphDocument& doc);
std::string serialize(const HypergraphDocument& doc);
std::string serialize(const FrameworkDocument& doc);
std::string serialize(const ScanSet& scans);
std::string serialize(const Report& report);

/// Whole file, or stdin for "-".
std::string read_text(const std::string& path);
/// Writes via a temporary file and rename; "-" writes to stdout.
void write_text(const std::string& path, const std::string& text);

}  // namespace affrig::io
