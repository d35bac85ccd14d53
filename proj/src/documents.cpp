#include "affrig/documents.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

namespace affrig::io {

using json = nlohmann::ordered_json;

namespace {

// Parsing context: the raw text is kept so that errors can be located.
class Source {
 public:
  explicit Source(const std::string& text) : text_(text) {
    try {
      root_ = json::parse(text_);
    } catch (const json::parse_error& e) {
      const auto [line, col] = position(e.byte > 0 ? e.byte - 1 : 0);
      throw ParseError(strip_prefix(e.what()), line, col);
    }
    if (!root_.is_object()) fail("", "document must be a JSON object");
  }

  const json& root() const { return root_; }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    const auto [line, col] = position(locate(key));
    throw ParseError(message, line, col);
  }

  // Rejects keys outside `allowed`, checks version and type.
  void check_header(const json& object, const std::set<std::string>& allowed, const std::string& type) const {
    check_keys(object, allowed);
    if (!object.contains("version")) fail("", "missing \"version\"");
    const json& v = object["version"];
    if (!v.is_number_integer() || v.get<long long>() != kFormatVersion)
      fail("version", "unsupported version (expected 1)");
    if (!object.contains("type") || !object["type"].is_string()) fail("", "missing \"type\"");
    if (object["type"].get<std::string>() != type)
      fail("type", "expected type \"" + type + "\", got \"" + object["type"].get<std::string>() + "\"");
  }

  void check_keys(const json& object, const std::set<std::string>& allowed) const {
    for (auto it = object.begin(); it != object.end(); ++it)
      if (!allowed.count(it.key())) fail(it.key(), "unknown field \"" + it.key() + "\"");
  }

  const json& require(const json& object, const std::string& key) const {
    if (!object.contains(key)) fail("", "missing \"" + key + "\"");
    return object[key];
  }

  int integer(const json& value, const std::string& key, long long lo, long long hi) const {
    if (!value.is_number_integer()) fail(key, "\"" + key + "\" must be an integer");
    const long long x = value.get<long long>();
    if (x < lo || x > hi) fail(key, "\"" + key + "\" out of range");
    return static_cast<int>(x);
  }

  double number(const json& value, const std::string& key) const {
    if (!value.is_number()) fail(key, "\"" + key + "\" must contain numbers");
    const double x = value.get<double>();
    if (!std::isfinite(x)) fail(key, "\"" + key + "\" must be finite");
    return x;
  }

  const json& array(const json& value, const std::string& key) const {
    if (!value.is_array()) fail(key, "\"" + key + "\" must be an array");
    return value;
  }

  // rows x dim matrix of finite numbers.
  Eigen::MatrixXd matrix(const json& value, const std::string& key, int dim) const {
    array(value, key);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(value.size()), dim);
    for (std::size_t i = 0; i < value.size(); ++i) {
      const json& row = array(value[i], key);
      if (static_cast<int>(row.size()) != dim)
        fail(key, "\"" + key + "\" row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                      " entries, expected " + std::to_string(dim));
      for (int j = 0; j < dim; ++j) m(static_cast<Eigen::Index>(i), j) = number(row[j], key);
    }
    return m;
  }

  std::vector<Vertex> vertex_list(const json& value, const std::string& key, int vertex_count) const {
    array(value, key);
    std::vector<Vertex> out;
    out.reserve(value.size());
    for (const json& x : value) out.push_back(integer(x, key, 0, vertex_count - 1));
    return out;
  }

  std::vector<std::string> labels(const json& object, int vertex_count) const {
    if (!object.contains("labels")) return {};
    const json& l = array(object["labels"], "labels");
    if (static_cast<int>(l.size()) != vertex_count) fail("labels", "need one label per vertex");
    std::vector<std::string> out;
    for (const json& s : l) {
      if (!s.is_string()) fail("labels", "labels must be strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  }

 private:
  static std::string strip_prefix(const std::string& what) {
    // "[json.exception.parse_error.101] parse error at line 1, column 2: ..."
    const auto p = what.rfind(": ");
    return p == std::string::npos ? what : what.substr(p + 2);
  }

  // Offset of the first occurrence of "key" used as an object key.
  std::size_t locate(const std::string& key) const {
    if (key.empty()) return 0;
    const std::string quoted = "\"" + key + "\"";
    for (std::size_t p = text_.find(quoted); p != std::string::npos; p = text_.find(quoted, p + 1)) {
      std::size_t q = p + quoted.size();
      while (q < text_.size() && std::isspace(static_cast<unsigned char>(text_[q]))) ++q;
      if (q < text_.size() && text_[q] == ':') return p;
    }
    return 0;
  }

  std::pair<int, int> position(std::size_t offset) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  const std::string& text_;
  json root_;
};

json header(const std::string& type) {
  json j = json::object();
  j["version"] = kFormatVersion;
  j["type"] = type;
  return j;
}

json rows(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string document_type(const std::string& text) {
  Source src(text);
  if (!src.root().contains("type") || !src.root()["type"].is_string()) src.fail("", "missing \"type\"");
  return src.root()["type"].get<std::string>();
}

GraphDocument parse_graph(const std::string& text) {
  Source src(text);
  const json& r = src.root();
  src.check_header(r, {"version", "type", "vertex_count", "edges", "labels"}, "graph");
  const int n = src.integer(src.require(r, "vertex_count"), "vertex_count", 0, std::numeric_limits<int>::max());
  std::vector<Edge> edges;
  for (const json& e : src.array(src.require(r, "edges"), "edges")) {
    const auto pair = src.vertex_list(e, "edges", n);
    if (pair.size() != 2) src.fail("edges", "each edge must have two endpoints");
    if (pair[0] == pair[1]) src.fail("edges", "self-loop at vertex " + std::to_string(pair[0]));
    edges.emplace_back(pair[0], pair[1]);
  }
  return {Graph(n, edges), src.labels(r, n)};
}

HypergraphDocument parse_hypergraph(const std::string& text) {
  Source src(text);
  const json& r = src.root();
  src.check_header(r, {"version", "type", "vertex_count", "hyperedges", "labels"}, "hypergraph");
  const int n = src.integer(src.require(r, "vertex_count"), "vertex_count", 0, std::numeric_limits<int>::max());
  std::vector<Hyperedge> hs;
  for (const json& h : src.array(src.require(r, "hyperedges"), "hyperedges"))
    hs.push_back(src.vertex_list(h, "hyperedges", n));
  HypergraphDocument doc;
  doc.hypergraph = Hypergraph(n, std::move(hs), &doc.log).normalized(&doc.log);
  doc.labels = src.labels(r, n);
  return doc;
}

FrameworkDocument parse_framework(const std::string& text) {
  Source src(text);
  const json& r = src.root();
  src.check_header(r, {"version", "type", "dim", "coordinates"}, "framework");
  const int dim = src.integer(src.require(r, "dim"), "dim", 1, 64);
  return {src.matrix(src.require(r, "coordinates"), "coordinates", dim)};
}

ScanSet parse_scanset(const std::string& text) {
  Source src(text);
  const json& r = src.root();
  src.check_header(r, {"version", "type", "dim", "vertex_count", "trust", "scans"}, "scanset");
  ScanSet out;
  out.dim = src.integer(src.require(r, "dim"), "dim", 1, 64);
  out.vertex_count =
      src.integer(src.require(r, "vertex_count"), "vertex_count", 0, std::numeric_limits<int>::max());
  const json& trust = src.require(r, "trust");
  if (trust == "affine") {
    out.trust = Trust::affine;
  } else if (trust == "euclidean") {
    out.trust = Trust::euclidean;
  } else {
    src.fail("trust", "\"trust\" must be \"affine\" or \"euclidean\"");
  }
  for (const json& s : src.array(src.require(r, "scans"), "scans")) {
    if (!s.is_object()) src.fail("scans", "each scan must be an object");
    src.check_keys(s, {"vertices", "coordinates"});
    Scan scan;
    scan.vertices = src.vertex_list(src.require(s, "vertices"), "vertices", out.vertex_count);
    scan.coordinates = src.matrix(src.require(s, "coordinates"), "coordinates", out.dim);
    if (scan.coordinates.rows() != static_cast<Eigen::Index>(scan.vertices.size()))
      src.fail("coordinates", "scan has " + std::to_string(scan.vertices.size()) + " vertices but " +
                                  std::to_string(scan.coordinates.rows()) + " coordinate rows");
    if (std::set<Vertex>(scan.vertices.begin(), scan.vertices.end()).size() != scan.vertices.size())
      src.fail("vertices", "a scan lists a vertex twice");
    out.scans.push_back(std::move(scan));
  }
  return out;
}

Report parse_report(const std::string& text) {
  Source src(text);
  const json& r = src.root();
  src.check_header(r,
                   {"version", "type", "command", "verdict", "exit_code", "corank", "seed", "certificate",
                    "residuals", "details", "timings"},
                   "report");
  Report out;
  const auto str = [&](const char* key) {
    const json& v = src.require(r, key);
    if (!v.is_string()) src.fail(key, std::string("\"") + key + "\" must be a string");
    return v.get<std::string>();
  };
  const auto obj = [&](const char* key) {
    if (!r.contains(key)) return json::object();
    if (!r[key].is_object()) src.fail(key, std::string("\"") + key + "\" must be an object");
    return r[key];
  };
  out.command = str("command");
  out.verdict = str("verdict");
  out.exit_code = src.integer(src.require(r, "exit_code"), "exit_code", 0, 255);
  if (r.contains("corank") && !r["corank"].is_null())
    out.corank = src.integer(r["corank"], "corank", 0, std::numeric_limits<int>::max());
  if (r.contains("seed") && !r["seed"].is_null()) {
    if (!r["seed"].is_number_unsigned() && !(r["seed"].is_number_integer() && r["seed"].get<long long>() >= 0))
      src.fail("seed", "\"seed\" must be a non-negative integer");
    out.seed = r["seed"].get<std::uint64_t>();
  }
  out.certificate = obj("certificate");
  out.residuals = obj("residuals");
  out.details = obj("details");
  out.timings = obj("timings");
  return out;
}

std::string serialize(const GraphDocument& doc) {
  json j = header("graph");
  j["vertex_count"] = doc.graph.vertex_count();
  json edges = json::array();
  for (const auto& [u, w] : doc.graph.edges()) edges.push_back({u, w});
  j["edges"] = std::move(edges);
  if (!doc.labels.empty()) j["labels"] = doc.labels;
  return dump(j);
}

std::string serialize(const HypergraphDocument& doc) {
  json j = header("hypergraph");
  j["vertex_count"] = doc.hypergraph.vertex_count();
  json hs = json::array();
  for (const auto& h : doc.hypergraph.hyperedges()) hs.push_back(h);
  j["hyperedges"] = std::move(hs);
  if (!doc.labels.empty()) j["labels"] = doc.labels;
  return dump(j);
}

std::string serialize(const FrameworkDocument& doc) {
  json j = header("framework");
  j["dim"] = doc.coordinates.cols();
  j["coordinates"] = rows(doc.coordinates);
  return dump(j);
}

std::string serialize(const ScanSet& scans) {
  json j = header("scanset");
  j["dim"] = scans.dim;
  j["vertex_count"] = scans.vertex_count;
  j["trust"] = to_string(scans.trust);
  json list = json::array();
  for (const Scan& s : scans.scans) list.push_back({{"vertices", s.vertices}, {"coordinates", rows(s.coordinates)}});
  j["scans"] = std::move(list);
  return dump(j);
}

std::string serialize(const Report& report) {
  json j = header("report");
  j["command"] = report.command;
  j["verdict"] = report.verdict;
  j["exit_code"] = report.exit_code;
  j["corank"] = report.corank ? json(*report.corank) : json(nullptr);
  j["seed"] = report.seed ? json(*report.seed) : json(nullptr);
  j["certificate"] = report.certificate;
  j["residuals"] = report.residuals;
  j["details"] = report.details;
  j["timings"] = report.timings;
  return dump(j);
}

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (fs::exists(target, ec) && !fs::is_regular_file(target, ec)) {
    // Devices and pipes cannot be replaced by rename.
    std::ofstream out(target, std::ios::binary);
    if (!(out << text)) throw InvalidInput("cannot write " + path);
    return;
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw InvalidInput("write failed for " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InvalidInput("cannot replace " + path);
  }
}

}  // namespace affrig::io
