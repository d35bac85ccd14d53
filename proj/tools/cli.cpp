#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>

#include "affrig/documents.hpp"
#include "affrig/errors.hpp"
#include "affrig/families.hpp"
#include "affrig/hypergraph.hpp"
#include "affrig/prime_field.hpp"
#include "affrig/registration.hpp"
#include "affrig/rigidity.hpp"

namespace affrig::cli {

using json = nlohmann::ordered_json;

namespace {

struct Globals {
  double tol = kDefaultRelTol;
  int trials = 3;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> prime;
  bool quiet = false;
};

class Context {
 public:
  Context(std::ostream& out, std::ostream& err) : out_(out), err_(err), start_(std::chrono::steady_clock::now()) {}

  Globals globals;
  std::string report_path;
  std::string output_path = "-";

  // Summary stream: stderr while stdout carries a document.
  std::ostream& summary() { return output_path == "-" ? err_ : out_; }
  std::ostream& err() { return err_; }

  void say(const std::string& line) {
    if (!globals.quiet) summary() << line << "\n";
  }
  void warn(const std::string& line) {
    if (!globals.quiet) err_ << "warning: " << line << "\n";
  }

  void write_report(io::Report report) {
    if (report_path.empty()) return;
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    report.timings = {{"seconds", seconds}};
    io::write_text(report_path, io::serialize(report));
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
};

// A graph or hypergraph document, whichever the file holds.
struct Structure {
  std::optional<io::GraphDocument> graph;
  std::optional<io::HypergraphDocument> hypergraph;

  int vertex_count() const {
    return graph ? graph->graph.vertex_count() : hypergraph->hypergraph.vertex_count();
  }
  Hypergraph as_hyper() const { return graph ? as_hypergraph(graph->graph) : hypergraph->hypergraph; }
  const std::vector<std::string>& labels() const { return graph ? graph->labels : hypergraph->labels; }
};

Structure load_structure(Context& ctx, const std::string& path) {
  const std::string text = io::read_text(path);
  const std::string type = io::document_type(text);
  Structure s;
  if (type == "graph") {
    s.graph = io::parse_graph(text);
  } else if (type == "hypergraph") {
    s.hypergraph = io::parse_hypergraph(text);
    const NormalizationLog& log = s.hypergraph->log;
    if (!log.empty())
      ctx.warn("normalized input: " + std::to_string(log.repeated_members_removed) + " repeated members, " +
               std::to_string(log.duplicate_hyperedges_removed) + " duplicate hyperedges removed");
  } else {
    throw InvalidInput("expected a graph or hypergraph document, got \"" + type + "\"");
  }
  return s;
}

const Graph& require_graph(const Structure& s, const std::string& what) {
  if (!s.graph) throw InvalidInput(what + " needs a graph document");
  return s.graph->graph;
}

Eigen::MatrixXd load_framework(const std::string& path, int vertex_count, std::optional<int> dim) {
  Eigen::MatrixXd p = io::parse_framework(io::read_text(path)).coordinates;
  if (p.rows() != vertex_count)
    throw InvalidInput("framework has " + std::to_string(p.rows()) + " points, structure has " +
                       std::to_string(vertex_count) + " vertices");
  if (dim && p.cols() != *dim)
    throw InvalidInput("framework dimension " + std::to_string(p.cols()) + " does not match --dim " +
                       std::to_string(*dim));
  return p;
}

std::string sci(double x) {
  std::ostringstream ss;
  ss << std::scientific << std::setprecision(3) << x;
  return ss.str();
}

int require_dim(std::optional<int> dim) {
  if (!dim) throw InvalidInput("--dim is required");
  if (*dim < 1) throw InvalidInput("--dim must be positive");
  return *dim;
}

json certificate_json(const RigidityVerdict& v) {
  const Certificate& c = v.certificate;
  json j = {{"witness", c.witness}, {"rows", c.rows},         {"cols", c.cols},
            {"rel_tol", c.rel_tol}, {"spectral_gap", c.spectral_gap}, {"one_sided", v.one_sided}};
  if (c.modulus != 0) {
    j["modulus"] = c.modulus;
    j["trials"] = c.trials;
    j["failure_bound"] = c.failure_bound;
  }
  return j;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::rigid:
      return kSuccess;
    case Verdict::flexible:
      return kNegative;
    case Verdict::inconclusive:
      break;
  }
  return kInconclusive;
}

json residuals_json(const MatrixResiduals& r) {
  return {{"row_sum", r.row_sum}, {"annihilation", r.annihilation}, {"support", r.support}, {"symmetry", r.symmetry}};
}

json matrix_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct TransformArgs {
  std::string input;
  std::string op;
  int k = 0;
};

int cmd_transform(Context& ctx, const TransformArgs& a) {
  const Structure s = load_structure(ctx, a.input);
  std::string text;
  std::string summary;
  if (a.op == "body") {
    if (!s.hypergraph) throw InvalidInput("body needs a hypergraph document");
    const Graph g = body_graph(s.hypergraph->hypergraph);
    text = io::serialize(io::GraphDocument{g, s.labels()});
    summary = "graph: " + std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) + " edges";
  } else if (a.op == "neighborhood") {
    const Hypergraph h = neighborhood_hypergraph(require_graph(s, "neighborhood"));
    text = io::serialize(io::HypergraphDocument{h, s.labels(), {}});
    summary = "hypergraph: " + std::to_string(h.vertex_count()) + " vertices, " +
              std::to_string(h.hyperedge_count()) + " hyperedges";
  } else if (a.op == "square") {
    const Graph g = squared_graph(require_graph(s, "square"));
    text = io::serialize(io::GraphDocument{g, s.labels()});
    summary = "graph: " + std::to_string(g.vertex_count()) + " vertices, " + std::to_string(g.edge_count()) + " edges";
  } else if (a.op == "truncate") {
    if (a.k < 1) throw InvalidInput("truncate needs --k >= 1");
    const Hypergraph h = truncate_hyperedges(s.as_hyper(), a.k);
    text = io::serialize(io::HypergraphDocument{h, s.labels(), {}});
    summary = "hypergraph: " + std::to_string(h.vertex_count()) + " vertices, " +
              std::to_string(h.hyperedge_count()) + " hyperedges";
  } else {
    throw InvalidInput("unknown transform \"" + a.op + "\"");
  }
  io::write_text(ctx.output_path, text);
  ctx.say(summary);
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct TestArgs {
  std::string input;
  std::string mode = "generic";
  std::string framework;
  std::string route = "affine";
  std::optional<int> dim;
};

int cmd_test(Context& ctx, const TestArgs& a) {
  const Structure s = load_structure(ctx, a.input);
  io::Report report;
  report.command = "test " + a.mode;
  report.details["vertex_count"] = s.vertex_count();

  if (a.mode == "generic") {
    const int d = require_dim(a.dim);
    GenericTestOptions options;
    options.trials = ctx.globals.trials;
    options.seed = ctx.globals.seed;
    if (ctx.globals.prime) options.modulus = *ctx.globals.prime;
    const RigidityVerdict v = generic_affine_rigidity_test(s.as_hyper(), d, options);
    report.verdict = to_string(v.verdict);
    report.corank = v.corank;
    report.seed = ctx.globals.seed;
    report.certificate = certificate_json(v);
    report.details["dim"] = d;
    report.exit_code = verdict_exit(v.verdict);
  } else if (a.mode == "framework") {
    if (a.framework.empty()) throw InvalidInput("framework mode needs --framework");
    const Eigen::MatrixXd p = load_framework(a.framework, s.vertex_count(), a.dim);
    RigidityVerdict v;
    if (s.graph) {
      const GraphFramework f{s.graph->graph, p};
      v = affine_rigidity_test(f, ctx.globals.tol);
    } else {
      const HypergraphFramework f{s.hypergraph->hypergraph, p};
      v = affine_rigidity_test(f, ctx.globals.tol);
      report.residuals = residuals_json(affinity_residuals(strong_affinity_matrix(f, ctx.globals.tol), f));
    }
    report.verdict = to_string(v.verdict);
    report.corank = v.corank;
    report.certificate = certificate_json(v);
    report.details["dim"] = p.cols();
    report.exit_code = verdict_exit(v.verdict);
  } else if (a.mode == "neighborhood") {
    const Graph& g = require_graph(s, "neighborhood mode");
    GraphFramework f;
    if (!a.framework.empty()) {
      f = GraphFramework{g, load_framework(a.framework, g.vertex_count(), a.dim)};
      report.details["framework"] = "file";
    } else {
      RubberBandOptions rb;
      rb.seed = ctx.globals.seed;
      const RubberBand band = rubber_band_embedding(g, require_dim(a.dim), rb);
      for (const std::string& w : band.warnings) ctx.warn(w);
      f = band.framework;
      report.details["framework"] = "rubber band";
      report.details["convex_containment"] = band.convex_containment;
      report.details["exceptional"] = band.exceptional;
      report.details["warnings"] = band.warnings;
    }
    NeighborhoodTestOptions options;
    options.rel_tol = ctx.globals.tol;
    options.seed = ctx.globals.seed;
    const NeighborhoodVerdict nv = neighborhood_affine_rigidity_test(f, options);
    report.verdict = to_string(nv.verdict.verdict);
    report.corank = nv.verdict.corank;
    report.seed = ctx.globals.seed;
    report.certificate = certificate_json(nv.verdict);
    report.details["dim"] = f.dim();
    report.details["stage"] = nv.stage;
    report.details["stage1_corank"] = nv.stage1_corank;
    if (nv.concatenated_corank) report.details["concatenated_corank"] = *nv.concatenated_corank;
    if (nv.affinity_corank) report.details["affinity_corank"] = *nv.affinity_corank;
    report.exit_code = verdict_exit(nv.verdict.verdict);
  } else if (a.mode == "universal") {
    if (a.framework.empty()) throw InvalidInput("universal mode needs --framework");
    const Eigen::MatrixXd p = load_framework(a.framework, s.vertex_count(), a.dim);
    UniversalCertificate u;
    if (s.graph) {
      UniversalRoute route = UniversalRoute::affine_rigidity;
      if (a.route == "psd") {
        route = UniversalRoute::psd_stress;
      } else if (a.route != "affine") {
        throw InvalidInput("--route must be affine or psd");
      }
      u = universal_rigidity_certificate(GraphFramework{s.graph->graph, p}, route, ctx.globals.tol,
                                         ctx.globals.seed);
      report.seed = ctx.globals.seed;
    } else {
      if (a.route != "affine") throw InvalidInput("hypergraph frameworks only support --route affine");
      u = universal_rigidity_certificate(HypergraphFramework{s.hypergraph->hypergraph, p}, ctx.globals.tol);
    }
    report.verdict = u.certified ? "certified" : "inconclusive";
    report.corank = u.corank;
    report.certificate = {{"route", to_string(u.route)}, {"detail", u.detail}};
    if (u.conic) {
      report.certificate["on_conic"] = u.conic->on_conic;
      report.certificate["conic_margin"] = u.conic->margin;
    }
    if (u.psd_stress) {
      report.certificate["psd_min_eigenvalue"] = u.psd_min_eigenvalue;
      report.certificate["psd_rank"] = u.psd_rank;
    }
    report.details["dim"] = p.cols();
    report.exit_code = u.certified ? kSuccess : kInconclusive;
  } else {
    throw InvalidInput("unknown mode \"" + a.mode + "\"");
  }

  ctx.write_report(report);
  ctx.say(report.command + ": " + report.verdict +
          (report.corank ? " (corank " + std::to_string(*report.corank) + ")" : std::string()));
  return report.exit_code;
}

// ---------------------------------------------------------------------------

int cmd_connectivity(Context& ctx, const std::string& input, int k) {
  const Structure s = load_structure(ctx, input);
  const Graph& g = require_graph(s, "connectivity");
  if (k < 0) throw InvalidInput("--k must be non-negative");
  const bool ok = is_k_vertex_connected(g, k);
  io::Report report;
  report.command = "connectivity";
  report.verdict = ok ? "true" : "false";
  report.exit_code = ok ? kSuccess : kNegative;
  report.details = {{"k", k}, {"vertex_count", g.vertex_count()}, {"edge_count", g.edge_count()}};
  ctx.write_report(report);
  ctx.say(std::to_string(k) + "-vertex-connected: " + report.verdict);
  return report.exit_code;
}

int cmd_zz(Context& ctx, const std::string& input, std::optional<int> dim) {
  const int d = require_dim(dim);
  const Structure s = load_structure(ctx, input);
  const bool ok = zha_zhang_condition(s.as_hyper(), d);
  io::Report report;
  report.command = "zz";
  report.verdict = ok ? "true" : "false";
  report.exit_code = ok ? kSuccess : kNegative;
  report.details = {{"dim", d}, {"vertex_count", s.vertex_count()}};
  ctx.write_report(report);
  ctx.say("Zha-Zhang condition (d=" + std::to_string(d) + "): " + report.verdict);
  return report.exit_code;
}

// ---------------------------------------------------------------------------

int cmd_register(Context& ctx, const std::string& input, const std::string& mode) {
  const ScanSet scans = io::parse_scanset(io::read_text(input));
  validate(scans);
  if (mode != "affine" && mode != "euclidean") throw InvalidInput("--mode must be affine or euclidean");
  io::Report report;
  report.command = "register " + mode;
  report.details = {{"dim", scans.dim}, {"vertex_count", scans.vertex_count}, {"scans", scans.scans.size()},
                    {"trust", to_string(scans.trust)}};
  const auto fail = [&](const Error& e, int code, const std::string& verdict, std::optional<int> corank) {
    report.verdict = verdict;
    report.exit_code = code;
    report.corank = corank;
    report.details["error"] = e.what();
    ctx.write_report(report);
    ctx.err() << "error: " << e.what() << "\n";
    return code;
  };
  Registration r;
  try {
    r = mode == "affine" ? affine_register(scans, ctx.globals.tol) : euclidean_register(scans, ctx.globals.tol);
  } catch (const NotAffinelyRigid& e) {
    return fail(e, kNegative, "flexible", e.corank);
  } catch (const InconsistentScans& e) {
    return fail(e, kInconsistent, "inconsistent", e.corank);
  } catch (const NonUniqueGram& e) {
    return fail(e, kInconsistent, "non-unique gram", std::nullopt);
  } catch (const InconsistentLengths& e) {
    return fail(e, kInconsistent, "inconsistent", std::nullopt);
  }

  const RegistrationDiagnostics& diag = r.diagnostics;
  io::write_text(ctx.output_path, io::serialize(io::FrameworkDocument{r.config}));
  report.verdict = "registered";
  report.exit_code = kSuccess;
  report.corank = diag.corank;
  report.certificate = {{"gauge", to_string(r.gauge)}, {"kernel_gap", diag.kernel_gap},
                        {"kernel_inside", diag.kernel_inside}, {"rel_tol", ctx.globals.tol}};
  const double scale = diag.diameter > 0 ? diag.diameter : 1.0;
  report.residuals = {{"max_scan_residual", diag.max_scan_residual},
                      {"relative_scan_residual", diag.max_scan_residual / scale},
                      {"scan_residuals", diag.scan_residuals},
                      {"diameter", diag.diameter}};
  if (diag.gram) {
    report.certificate["gram"] = matrix_json(*diag.gram);
    report.certificate["gram_clipped"] = diag.gram_clipped;
    report.certificate["gram_min_eigenvalue"] = diag.gram_min_eigenvalue;
    report.certificate["conic_margin"] = diag.conic_margin;
    report.residuals["max_relative_length_error"] = diag.max_relative_length_error;
    report.residuals["length_constraints"] = diag.length_constraints;
  }
  ctx.write_report(report);
  ctx.say("registered " + std::to_string(scans.vertex_count) + " vertices (" + to_string(r.gauge) +
          " gauge), relative scan residual " + sci(diag.max_scan_residual / scale));
  return kSuccess;
}

// ---------------------------------------------------------------------------

struct ExamplesArgs {
  std::string name;
  std::vector<int> params;
  std::string framework;
  std::string scans;
  std::optional<int> dim;
  std::string trust = "euclidean";
  double noise = 0;
};

int cmd_examples(Context& ctx, const ExamplesArgs& a) {
  const auto need = [&](std::size_t n) {
    if (a.params.size() != n)
      throw InvalidInput("example \"" + a.name + "\" takes " + std::to_string(n) + " parameter(s)");
  };
  std::optional<Graph> graph;
  std::optional<Hypergraph> hyper;
  int dim = a.dim.value_or(2);
  bool pentagon = false;
  if (a.name == "fig1") {
    need(0);
    hyper = families::six_vertex_hypergraph();
  } else if (a.name == "fig2") {
    need(0);
    graph = families::six_vertex_graph();
  } else if (a.name == "fig3" || a.name == "pentagon") {
    need(0);
    hyper = families::pentagon_hypergraph();
    pentagon = !a.dim || *a.dim == 2;
  } else if (a.name == "hextorus") {
    need(2);
    graph = families::hex_torus(a.params[0], a.params[1]);
  } else if (a.name == "star") {
    need(1);
    graph = families::star(a.params[0]);
  } else if (a.name == "wheel") {
    need(1);
    graph = families::wheel(a.params[0]);
  } else if (a.name == "trilateration") {
    need(2);
    graph = families::trilateration_graph(a.params[0], a.params[1], ctx.globals.seed);
    if (a.dim && *a.dim != a.params[0]) throw InvalidInput("--dim must match the trilateration dimension");
    dim = a.params[0];
  } else {
    throw InvalidInput("unknown example \"" + a.name + "\"");
  }
  if (dim < 1) throw InvalidInput("--dim must be positive");

  const int v = graph ? graph->vertex_count() : hyper->vertex_count();
  io::write_text(ctx.output_path, graph ? io::serialize(io::GraphDocument{*graph, {}})
                                        : io::serialize(io::HypergraphDocument{*hyper, {}, {}}));
  std::string summary = a.name + ": " + std::to_string(v) + " vertices, " +
                        (graph ? std::to_string(graph->edge_count()) + " edges"
                               : std::to_string(hyper->hyperedge_count()) + " hyperedges");

  if (!a.framework.empty() || !a.scans.empty()) {
    const Eigen::MatrixXd p = pentagon ? families::regular_pentagon() : families::random_points(v, dim, ctx.globals.seed);
    if (!a.framework.empty()) io::write_text(a.framework, io::serialize(io::FrameworkDocument{p}));
    if (!a.scans.empty()) {
      Trust trust = Trust::euclidean;
      if (a.trust == "affine") {
        trust = Trust::affine;
      } else if (a.trust != "euclidean") {
        throw InvalidInput("--trust must be affine or euclidean");
      }
      const Hypergraph charts = graph ? neighborhood_hypergraph(*graph) : *hyper;
      io::write_text(a.scans, io::serialize(make_scans(charts, p, trust, ctx.globals.seed, a.noise)));
    }
    summary += ", coordinates in R^" + std::to_string(p.cols());
  }

  io::Report report;
  report.command = "examples " + a.name;
  report.verdict = "generated";
  report.seed = ctx.globals.seed;
  report.details = {{"vertex_count", v}, {"dim", dim}};
  ctx.write_report(report);
  ctx.say(summary);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx(out, err);
  CLI::App app{"Affine rigidity of hypergraph frameworks and scan registration", "affrig"};
  app.require_subcommand(1);
  app.add_option("--tol", ctx.globals.tol, "Relative singular-value cutoff")->capture_default_str();
  app.add_option("--trials", ctx.globals.trials, "Trials of the finite-field tester")->capture_default_str();
  app.add_option("--seed", ctx.globals.seed, "Random seed")->capture_default_str();
  app.add_option("--prime", ctx.globals.prime, "Prime modulus for the finite-field tester");
  app.add_flag("--quiet", ctx.globals.quiet, "Suppress the human summary");

  const auto common = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("--report", ctx.report_path, "Write a JSON report here (- for stdout)");
  };

  TransformArgs ta;
  CLI::App* transform = app.add_subcommand("transform", "Body graph, neighborhood hypergraph, square, truncation");
  common(transform);
  transform->add_option("input", ta.input, "Graph or hypergraph document (- for stdin)")->required();
  transform->add_option("op", ta.op, "body | neighborhood | square | truncate")
      ->required()
      ->check(CLI::IsMember({"body", "neighborhood", "square", "truncate"}));
  transform->add_option("--k", ta.k, "Hyperedge size for truncate");
  transform->add_option("-o,--output", ctx.output_path, "Output document")->capture_default_str();

  TestArgs te;
  CLI::App* test = app.add_subcommand("test", "Affine rigidity tests");
  common(test);
  test->add_option("input", te.input, "Graph or hypergraph document")->required();
  test->add_option("--dim", te.dim, "Ambient dimension d");
  test->add_option("--mode", te.mode, "generic | framework | neighborhood | universal")
      ->check(CLI::IsMember({"generic", "framework", "neighborhood", "universal"}))
      ->capture_default_str();
  test->add_option("--framework", te.framework, "Framework document with coordinates");
  test->add_option("--route", te.route, "Universal certificate route: affine | psd")->capture_default_str();

  std::string conn_input;
  int conn_k = 0;
  CLI::App* connectivity = app.add_subcommand("connectivity", "k-vertex-connectivity of a graph");
  common(connectivity);
  connectivity->add_option("input", conn_input, "Graph document")->required();
  connectivity->add_option("--k", conn_k, "Connectivity to test")->required();

  std::string zz_input;
  std::optional<int> zz_dim;
  CLI::App* zz = app.add_subcommand("zz", "Zha-Zhang hyperedge connectivity condition");
  common(zz);
  zz->add_option("input", zz_input, "Hypergraph document")->required();
  zz->add_option("--dim", zz_dim, "Ambient dimension d")->required();

  std::string reg_input;
  std::string reg_mode = "affine";
  CLI::App* reg = app.add_subcommand("register", "Register local scans into one configuration");
  common(reg);
  reg->add_option("input", reg_input, "Scan set document")->required();
  reg->add_option("--mode", reg_mode, "affine | euclidean")
      ->check(CLI::IsMember({"affine", "euclidean"}))
      ->capture_default_str();
  reg->add_option("-o,--output", ctx.output_path, "Recovered framework document")->capture_default_str();

  ExamplesArgs ex;
  CLI::App* examples = app.add_subcommand("examples", "Emit a named example or family");
  common(examples);
  examples->add_option("name", ex.name, "fig1 | fig2 | fig3 | pentagon | hextorus m n | star k | wheel k | trilateration d n")
      ->required();
  examples->add_option("params", ex.params, "Integer parameters");
  examples->add_option("-o,--output", ctx.output_path, "Structure document")->capture_default_str();
  examples->add_option("--framework", ex.framework, "Also write generic coordinates here");
  examples->add_option("--scans", ex.scans, "Also write one scan per hyperedge (graphs: per neighborhood)");
  examples->add_option("--dim", ex.dim, "Coordinate dimension (default 2)");
  examples->add_option("--trust", ex.trust, "Scan trust: euclidean | affine")->capture_default_str();
  examples->add_option("--noise", ex.noise, "Relative Gaussian noise on scan coordinates");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*transform) return cmd_transform(ctx, ta);
    if (*test) return cmd_test(ctx, te);
    if (*connectivity) return cmd_connectivity(ctx, conn_input, conn_k);
    if (*zz) return cmd_zz(ctx, zz_input, zz_dim);
    if (*reg) return cmd_register(ctx, reg_input, reg_mode);
    if (*examples) return cmd_examples(ctx, ex);
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotAffinelyRigid& e) {
    err << "error: " << e.what() << "\n";
    return kNegative;
  } catch (const InconsistentScans& e) {
    err << "error: " << e.what() << "\n";
    return kInconsistent;
  } catch (const NonUniqueGram& e) {
    err << "error: " << e.what() << "\n";
    return kInconsistent;
  } catch (const InconsistentLengths& e) {
    err << "error: " << e.what() << "\n";
    return kInconsistent;
  } catch (const DegenerateInstance& e) {
    err << "error: " << e.what() << "\n";
    return kInconsistent;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace affrig::cli
