// hardyw: optimal Hardy weights on graphs, spectral diagnostics, Green
// functions, and identity verification.
//
// Exit codes: 0 = all checks passed, 2 = diagnostic failure, 3 = input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardy/coarea.hpp"
#include "hardy/criticality.hpp"
#include "hardy/families.hpp"
#include "hardy/green.hpp"
#include "hardy/hardy_weight.hpp"
#include "hardy/io.hpp"
#include "hardy/schrodinger.hpp"

using namespace hardy;
using nlohmann::json;

namespace {

struct GlobalOptions {
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 1;
  double tol = 1e-10;
};

class OutputStream {
 public:
  explicit OutputStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) raise(ErrorCode::InvalidInput, "cannot open output file: " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stol(item));
  }
  return out;
}

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double unit() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * unit(); }
  std::uint64_t below(std::uint64_t n) { return engine() % n; }
};

WeightedGraph random_graph(Rng& rng, int max_vertices, bool signed_q) {
  const std::uint64_t n = 2 + rng.below(static_cast<std::uint64_t>(max_vertices - 1));
  std::vector<std::tuple<Vertex, Vertex, double>> edges;
  std::set<std::pair<Vertex, Vertex>> seen;
  for (Vertex v = 1; v < n; ++v) {
    Vertex parent = rng.below(v);
    edges.emplace_back(parent, v, 2.0 * (1.0 - rng.unit()));
    seen.insert({parent, v});
  }
  for (std::uint64_t e = rng.below(n); e > 0; --e) {
    Vertex i = rng.below(n), j = rng.below(n);
    if (i == j) continue;
    auto key = std::minmax(i, j);
    if (!seen.insert(key).second) continue;
    edges.emplace_back(key.first, key.second, 2.0 * (1.0 - rng.unit()));
  }
  std::map<Vertex, double> q;
  if (signed_q)
    for (Vertex v = 0; v < n; ++v) q[v] = rng.uniform(-1.0, 1.0);
  return build_finite_graph(edges, q, Vertex{0});
}

GraphFunction positive_function(Rng& rng, const WeightedGraph& g, double lo, double hi) {
  std::unordered_map<Vertex, double> values;
  for (Vertex v : g.vertices()) values[v] = rng.uniform(lo, hi);
  auto map = values;
  return GraphFunction::from_fn([map, lo](Vertex x) {
    auto it = map.find(x);
    return it == map.end() ? lo : it->second;
  });
}

// ---------------------------------------------------------------------------

int cmd_hardy_weight(const GlobalOptions& global, const std::string& family, int dim,
                     const std::string& range, const std::string& points) {
  OutputStream out(global.out);
  if (family == "halfline") {
    long lo = 1, hi = 20;
    if (!range.empty()) {
      auto colon = range.find(':');
      if (colon == std::string::npos)
        raise(ErrorCode::InvalidInput, "--range expects lo:hi");
      lo = std::stol(range.substr(0, colon));
      hi = std::stol(range.substr(colon + 1));
    }
    if (lo < 1) raise(ErrorCode::InvalidInput, "half-line vertices start at 1");
    auto w = halfline_optimal_weight();
    std::ostringstream config;
    config << "cmd=hardy-weight family=halfline range=" << lo << ":" << hi
           << " seed=" << global.seed;
    TableWriter csv(out.get(), config.str(), global.format);
    csv.header({"vertex", "w", "w_edge_formula", "w_closed_form", "abs_Hu", "abs_Hv"});
    for (long n = lo; n <= hi; ++n) {
      auto detail = w.eval_detail(static_cast<Vertex>(n));
      csv.row({TableWriter::cell(n), TableWriter::cell(w(static_cast<Vertex>(n))),
               TableWriter::cell(detail.w_edge),
               TableWriter::cell(halfline_weight(static_cast<double>(n))),
               TableWriter::cell(detail.Hu_abs), TableWriter::cell(detail.Hv_abs)});
    }
    return 0;
  }
  if (family == "lattice") {
    if (dim < 3)
      raise(ErrorCode::UnsupportedFamily,
            "Green-based lattice weights need d >= 3 (recurrent otherwise)");
    std::string spec_points = points.empty() ? "axis:10,20,30" : points;
    if (spec_points.rfind("axis:", 0) != 0)
      raise(ErrorCode::InvalidInput, "--points expects axis:k1,k2,...");
    auto ks = parse_long_list(spec_points.substr(5));
    QuadratureSpec qspec;
    auto rows = green_asymptotic_check(dim, ks, qspec);
    std::ostringstream config;
    config << "cmd=hardy-weight family=lattice dim=" << dim << " points=" << spec_points
           << " seed=" << global.seed;
    TableWriter csv(out.get(), config.str(), global.format);
    csv.header({"k", "green", "w", "w_times_r2", "limit"});
    for (const auto& row : rows)
      csv.row({TableWriter::cell(row.k), TableWriter::cell(row.green_at_x), TableWriter::cell(row.w),
               TableWriter::cell(row.w_times_k2),
               TableWriter::cell(lattice_asymptotic_limit(dim))});
    return 0;
  }
  raise(ErrorCode::UnsupportedFamily, "hardy-weight supports halfline and lattice families");
}

int cmd_verify(const GlobalOptions& global, int trials, const std::string& identity,
               const std::string& f_name, int max_vertices, bool inject_asymmetry) {
  OutputStream out(global.out);
  if (inject_asymmetry) {
    // deliberately contradictory input has to surface AsymmetricInput
    build_finite_graph({{0, 1, 1.0}, {1, 0, 2.0}});
    return 0;  // unreachable
  }

  Integrand f = Integrand::constant(1.0);
  if (f_name == "inverse-t") f = Integrand::inverse_t();
  else if (f_name.rfind("power:", 0) == 0) f = Integrand::power(std::stod(f_name.substr(6)));
  else if (f_name != "one") raise(ErrorCode::InvalidInput, "unknown --f: " + f_name);

  Rng rng(global.seed);
  double worst_product = 0.0, worst_chain = 0.0, worst_gst = 0.0, worst_stokes = 0.0,
         worst_coarea = 0.0;
  bool coarea_example_shown = false;
  bool all = identity == "all";
  for (int trial = 0; trial < trials; ++trial) {
    if (all || identity == "product" || identity == "chain" || identity == "gst") {
      auto g = random_graph(rng, max_vertices, true);
      SchrodingerOperator H{g};
      auto fa = positive_function(rng, g, 0.1, 10.0);
      auto fb = positive_function(rng, g, 0.1, 10.0);
      Vertex x = rng.below(g.vertex_count());
      if (all || identity == "product")
        worst_product = std::max(worst_product, product_rule_residual(H, fa, fb, x));
      if (all || identity == "chain")
        worst_chain = std::max(worst_chain, chain_rule_residual(H, fa, fb, x));
      if (all || identity == "gst") {
        auto v = positive_function(rng, g, 0.1, 10.0);
        std::unordered_map<Vertex, double> values;
        for (Vertex y : g.vertices())
          if (rng.unit() < 0.6) values[y] = rng.uniform(-1.0, 1.0);
        if (values.empty()) values[0] = 1.0;
        auto phi = GraphFunction::from_map(std::move(values));
        double h_phi = H.quadratic_form(phi).total;
        worst_gst = std::max(worst_gst,
                             gst_identity_residual(H, v, phi) / (1.0 + std::abs(h_phi)));
      }
    }
    if (all || identity == "stokes" || identity == "coarea") {
      auto g = random_graph(rng, max_vertices, false);
      auto u = positive_function(rng, g, 0.5, 6.0);
      double lo = 1e300, hi = -1e300;
      for (Vertex y : g.vertices()) {
        lo = std::min(lo, u(y));
        hi = std::max(hi, u(y));
      }
      if (hi - lo < 1e-6) continue;
      if (all || identity == "stokes") {
        double t1 = rng.uniform(lo, hi), t2 = rng.uniform(t1, hi);
        auto stokes = stokes_residual(g, u, t1, t2, g.vertices());
        double scale = 1.0 + std::abs(stokes.g1) + std::abs(stokes.g2) + std::abs(stokes.sum_Lu);
        worst_stokes = std::max(worst_stokes, stokes.residual / scale);
      }
      if (all || identity == "coarea") {
        auto result = coarea_integral(g, u, f, g.vertices());
        worst_coarea = std::max(worst_coarea, result.residual);
        if (!coarea_example_shown) {
          coarea_example_shown = true;
          std::ostringstream config;
          config << "cmd=verify identity=coarea f=" << f_name << " seed=" << global.seed;
          TableWriter csv(out.get(), config.str(), global.format);
          csv.header({"lhs", "rhs", "residual"});
          csv.row({TableWriter::cell(result.lhs), TableWriter::cell(result.rhs),
                   TableWriter::cell(result.residual)});
        }
      }
    }
  }

  std::ostream& os = out.get();
  os << "identity,max_residual,tolerance\n";
  double worst = 0.0;
  auto line = [&](const char* name, double value) {
    os << name << "," << format_double(value) << "," << format_double(global.tol) << "\n";
    worst = std::max(worst, value);
  };
  if (all || identity == "product") line("product_rule", worst_product);
  if (all || identity == "chain") line("chain_rule", worst_chain);
  if (all || identity == "gst") line("ground_state_transform", worst_gst);
  if (all || identity == "stokes") line("stokes", worst_stokes);
  if (all || identity == "coarea") line("coarea", worst_coarea);
  if (worst > global.tol) {
    std::cerr << "verify: residual " << worst << " exceeds tolerance " << global.tol << "\n";
    return 2;
  }
  return 0;
}

json spectral_to_json(const SpectralReport& report) {
  json j;
  j["family"] = report.family == RegionFamily::Balls ? "balls" : "annuli";
  j["weight_scale"] = report.weight_scale;
  j["radii"] = report.radii;
  j["lambda_star"] = report.lambda_star;
  j["classification"] = to_string(report.classification);
  return j;
}

int cmd_sweep(const GlobalOptions& global, const std::string& family,
              const std::string& weight_file, const std::string& graph_file,
              const std::string& balls, double scale, int annulus_inner,
              const std::string& null_list, const std::string& divergence_list) {
  OutputStream out(global.out);
  std::ostringstream config;
  config << "cmd=sweep family=" << family << " balls=" << balls << " scale=" << scale
         << " annulus-inner=" << annulus_inner << " seed=" << global.seed;

  if (!weight_file.empty()) {
    if (graph_file.empty())
      raise(ErrorCode::InvalidInput, "--weight-file needs --graph-file");
    auto graph = graph_from_json_file(graph_file);
    std::ifstream in(weight_file);
    if (!in) raise(ErrorCode::InvalidInput, "cannot open weight file: " + weight_file);
    std::unordered_map<Vertex, double> weights;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || !std::isdigit(static_cast<unsigned char>(line[0]))) continue;
      auto comma = line.find(',');
      if (comma == std::string::npos) continue;
      weights[std::stoull(line.substr(0, comma))] = std::stod(line.substr(comma + 1));
    }
    auto w = GraphFunction::from_map(std::move(weights));
    SchrodingerOperator H{graph};
    SweepConfig sweep;
    int radius = 1;
    while (ball(graph, graph.root(), radius).size() < graph.vertex_count()) ++radius;
    sweep.radii = {radius};
    sweep.weight_scale = scale;
    auto report = rayleigh_sweep(H, w, sweep);
    json j;
    j["sweep"] = spectral_to_json(report);
    j["caveat"] = "custom weight file: spectral sweep only (no construction provenance)";
    out.get() << j.dump(2) << "\n";
    return 0;
  }

  if (family != "halfline")
    raise(ErrorCode::UnsupportedFamily, "sweep families: halfline or --weight-file");
  auto w = halfline_optimal_weight();
  OptimalityConfig opt;
  if (!balls.empty()) {
    opt.ball_radii.clear();
    for (long r : parse_long_list(balls)) opt.ball_radii.push_back(static_cast<int>(r));
    opt.annulus_radii = opt.ball_radii;
  }
  if (!null_list.empty()) {
    opt.null_n.clear();
    for (long n : parse_long_list(null_list)) opt.null_n.push_back(static_cast<double>(n));
  }
  if (!divergence_list.empty()) {
    opt.divergence_radii.clear();
    for (long r : parse_long_list(divergence_list))
      opt.divergence_radii.push_back(static_cast<int>(r));
  }
  opt.annulus_inner = annulus_inner;
  opt.near_infinity_scale = scale == 1.0 ? 1.2 : scale;
  auto report = optimality_report(w, opt);

  json j;
  j["radii"] = report.criticality.radii;
  j["lambda_star"] = report.criticality.lambda_star;
  j["energies"] = report.decay.energies;
  j["null_n"] = report.decay.n_values;
  j["partial_sums"] = report.divergence.partial_sums;
  j["divergence_radii"] = report.divergence.radii;
  j["h_partial_sums"] = report.h_partial.partial_sums;
  j["verdict"] = {
      {"criticality", to_string(report.criticality.classification)},
      {"energies_strictly_decreasing", report.decay.strictly_decreasing},
      {"null_criticality", to_string(report.divergence.verdict)},
      {"near_infinity_witness",
       report.near_infinity_witness ? json(*report.near_infinity_witness) : json(nullptr)},
  };
  j["near_infinity"] = spectral_to_json(report.near_infinity);
  j["caveat"] = report.caveat;
  out.get() << j.dump(2) << "\n";
  return 0;
}

int cmd_green(const GlobalOptions& global, const std::string& family, int dim,
              const std::string& method, long pole_id, const std::string& dirichlet_at,
              int radius, int nodes, const std::string& point, bool paper_normalization,
              const std::string& graph_file, int tree_degree) {
  OutputStream out(global.out);
  std::ostringstream config;
  config << "cmd=green family=" << family << " method=" << method << " radius=" << radius
         << " nodes=" << nodes << " tol=" << global.tol << " seed=" << global.seed;

  if (method == "fourier") {
    if (family != "lattice")
      raise(ErrorCode::UnsupportedFamily, "the Fourier method applies to lattice families");
    if (dim < 3)
      raise(ErrorCode::UnsupportedFamily,
            "Z^1 and Z^2 are recurrent: no positive minimal Green function");
    QuadratureSpec spec;
    if (nodes > 0) spec.nodes_per_axis = nodes;
    auto coords = parse_long_list(point.empty() ? "0,0,0" : point);
    if (static_cast<int>(coords.size()) != dim)
      raise(ErrorCode::InvalidInput, "--point arity must match --dim");
    double g = green_fourier_lattice(dim, coords, spec);
    if (paper_normalization) g *= 2.0 * dim;  // random-walk normalization deg(pole) * G
    TableWriter csv(out.get(), config.str(), global.format);
    csv.header({"point", "green", "normalization"});
    std::string pt;
    for (std::size_t i = 0; i < coords.size(); ++i)
      pt += (i ? ";" : "") + std::to_string(coords[i]);
    csv.row({pt, TableWriter::cell(g), paper_normalization ? "random-walk" : "laplacian"});
    return 0;
  }
  if (method != "dirichlet") raise(ErrorCode::InvalidInput, "--method must be dirichlet|fourier");

  WeightedGraph graph = [&]() -> WeightedGraph {
    if (family == "halfline") return make_halfline();
    if (family == "lattice") {
      if (dim < 3)
        raise(ErrorCode::UnsupportedFamily,
              "Z^1 and Z^2 are recurrent: no positive minimal Green function");
      return make_lattice(dim);
    }
    if (family == "regular-tree") return make_regular_tree(tree_degree);
    if (family == "custom-finite") {
      if (graph_file.empty()) raise(ErrorCode::InvalidInput, "custom-finite needs --graph-file");
      return graph_from_json_file(graph_file);
    }
    raise(ErrorCode::UnsupportedFamily, "unknown family: " + family);
  }();

  std::vector<Vertex> dirichlet;
  if (!dirichlet_at.empty())
    for (long v : parse_long_list(dirichlet_at)) dirichlet.push_back(static_cast<Vertex>(v));

  Vertex pole = static_cast<Vertex>(pole_id);
  if (family == "lattice") {
    std::vector<long> coords(static_cast<std::size_t>(dim), 0);
    coords[0] = pole_id;
    pole = lattice_encode(coords);
  }
  LinearSolveSpec spec;
  spec.tolerance = global.tol;
  auto green = green_dirichlet(graph, pole, radius, spec, dirichlet);

  SchrodingerOperator L{graph};  // residual column uses the potential-free part
  auto gf = green.as_function();
  TableWriter csv(out.get(), config.str(), global.format);
  csv.header({"vertex", "green", "lg_residual"});
  for (Vertex x : green.region) {
    double residual = L.laplacian(gf, x) - (x == pole ? 1.0 : 0.0);
    double value = green(x);
    if (paper_normalization) value *= graph.weighted_degree(pole);
    csv.row({TableWriter::cell(static_cast<std::uint64_t>(x)), TableWriter::cell(value),
             TableWriter::cell(residual)});
  }
  std::cerr << "green: method=dirichlet-exhaustion radius=" << green.radius
            << " solver_residual=" << green.solver_residual
            << " doubling_rel_change=" << green.last_doubling_rel_change
            << " monotone=" << (green.monotone_at_doubling ? "yes" : "no")
            << " assumed_proper=yes\n";
  return 0;
}

int cmd_coarea_check(const GlobalOptions& global, const std::string& family,
                     const std::string& u_name, int radius, double t1, double t2,
                     const std::string& f_name) {
  OutputStream out(global.out);
  if (family != "halfline")
    raise(ErrorCode::UnsupportedFamily, "coarea-check currently ships the halfline family");
  auto graph = halfline_hardy_operator().graph();

  GraphFunction u;
  if (u_name == "linear") {
    u = GraphFunction::from_fn([](Vertex x) { return static_cast<double>(x); });
  } else if (u_name.rfind("min:", 0) == 0) {
    long pole = std::stol(u_name.substr(4));
    u = GraphFunction::from_fn([pole](Vertex x) {
      return static_cast<double>(std::min<long>(static_cast<long>(x), pole));
    });
  } else {
    raise(ErrorCode::InvalidInput, "--u must be linear or min:<pole>");
  }

  auto region = ball(graph, graph.root(), radius);
  auto flux = level_flux(graph, u, region);
  std::ostringstream config;
  config << "cmd=coarea-check family=" << family << " u=" << u_name << " radius=" << radius
         << " seed=" << global.seed;
  TableWriter csv(out.get(), config.str(), global.format);
  csv.header({"interval_lo", "interval_hi", "g_value"});
  for (const auto& iv : flux.intervals)
    csv.row({TableWriter::cell(iv.lo), TableWriter::cell(iv.hi), TableWriter::cell(iv.value)});

  if (t1 < t2) {
    auto stokes = stokes_residual(graph, u, t1, t2, region);
    std::cerr << "stokes: g(t1)=" << format_double(stokes.g1)
              << " g(t2)=" << format_double(stokes.g2)
              << " sum_Lu=" << format_double(stokes.sum_Lu)
              << " residual=" << format_double(stokes.residual)
              << (stokes.boundary_extended ? " (boundary extended harmlessly)" : "") << "\n";
  }
  if (!f_name.empty()) {
    Integrand f = Integrand::constant(1.0);
    if (f_name == "inverse-t") f = Integrand::inverse_t();
    else if (f_name.rfind("power:", 0) == 0) f = Integrand::power(std::stod(f_name.substr(6)));
    else if (f_name != "one") raise(ErrorCode::InvalidInput, "unknown --f: " + f_name);
    auto result = coarea_integral(graph, u, f, region);
    std::cerr << "coarea: lhs=" << format_double(result.lhs)
              << " rhs=" << format_double(result.rhs)
              << " residual=" << format_double(result.residual) << "\n";
    if (result.residual > global.tol) return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal Hardy weights for Schrodinger operators on weighted graphs"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--out", global.out, "Output path (default stdout)");
  app.add_option("--format", global.format, "Output format: csv|json");
  app.add_option("--seed", global.seed, "Random seed");
  app.add_option("--tol", global.tol, "Residual tolerance");

  auto* cw = app.add_subcommand("hardy-weight", "Construct the optimal weight of a family");
  cw->fallthrough();
  std::string cw_family = "halfline", cw_range, cw_points;
  int cw_dim = 3;
  cw->add_option("--family", cw_family, "halfline|lattice");
  cw->add_option("--range", cw_range, "half-line vertex range lo:hi");
  cw->add_option("--dim", cw_dim, "lattice dimension (>= 3)");
  cw->add_option("--points", cw_points, "lattice points: axis:k1,k2,...");

  auto* vf = app.add_subcommand("verify", "Run the algebraic identity suite on random graphs");
  vf->fallthrough();
  int vf_trials = 100, vf_max_vertices = 50;
  std::string vf_identity = "all", vf_f = "one";
  bool vf_inject = false;
  vf->add_option("--trials", vf_trials, "Number of random graphs");
  vf->add_option("--identity", vf_identity, "all|product|chain|gst|stokes|coarea");
  vf->add_option("--f", vf_f, "coarea integrand: one|inverse-t|power:<alpha>");
  vf->add_option("--max-vertices", vf_max_vertices, "Random graph size cap");
  vf->add_flag("--inject-asymmetry", vf_inject, "Feed contradictory edges (must error)");

  auto* sw = app.add_subcommand("sweep", "Three-diagnostic optimality report");
  sw->fallthrough();
  std::string sw_family = "halfline", sw_weight_file, sw_graph_file, sw_balls, sw_null,
      sw_divergence;
  double sw_scale = 1.0;
  int sw_inner = 10;
  sw->add_option("--family", sw_family, "halfline (or use --weight-file)");
  sw->add_option("--weight-file", sw_weight_file, "CSV of vertex,w rows");
  sw->add_option("--graph-file", sw_graph_file, "Finite graph JSON");
  sw->add_option("--balls", sw_balls, "Ball radii, comma separated");
  sw->add_option("--null-n", sw_null, "Null-sequence cutoffs, comma separated");
  sw->add_option("--divergence-radii", sw_divergence, "Partial-sum radii");
  sw->add_option("--scale", sw_scale, "Weight scale (near-infinity factor)");
  sw->add_option("--annulus-inner", sw_inner, "Inner radius of annuli");

  auto* gr = app.add_subcommand("green", "Green functions by Dirichlet solve or Fourier");
  gr->fallthrough();
  std::string gr_family = "halfline", gr_method = "dirichlet", gr_dirichlet, gr_point,
      gr_graph_file;
  int gr_dim = 3, gr_radius = 64, gr_nodes = 0, gr_degree = 3;
  long gr_pole = 0;
  bool gr_paper = false;
  gr->add_option("--family", gr_family, "halfline|lattice|regular-tree|custom-finite");
  gr->add_option("--method", gr_method, "dirichlet|fourier");
  gr->add_option("--dim", gr_dim, "lattice dimension");
  gr->add_option("--pole", gr_pole, "pole vertex id (lattice: axis coordinate)");
  gr->add_option("--dirichlet-at", gr_dirichlet, "Dirichlet vertex ids, comma separated");
  gr->add_option("--radius", gr_radius, "solve radius");
  gr->add_option("--nodes", gr_nodes, "quadrature nodes per axis");
  gr->add_option("--point", gr_point, "lattice point, comma separated");
  gr->add_option("--degree", gr_degree, "tree degree");
  gr->add_option("--graph-file", gr_graph_file, "finite graph JSON");
  gr->add_flag("--paper-normalization", gr_paper, "report deg(pole) * G");

  auto* cc = app.add_subcommand("coarea-check", "Level-set flux and coarea residuals");
  cc->fallthrough();
  std::string cc_family = "halfline", cc_u = "linear", cc_f;
  int cc_radius = 100;
  double cc_t1 = 0.0, cc_t2 = 0.0;
  cc->add_option("--family", cc_family, "halfline");
  cc->add_option("--u", cc_u, "linear|min:<pole>");
  cc->add_option("--radius", cc_radius, "truncation radius");
  cc->add_option("--t1", cc_t1, "stokes level t1");
  cc->add_option("--t2", cc_t2, "stokes level t2");
  cc->add_option("--f", cc_f, "coarea integrand: one|inverse-t|power:<alpha>");

  try {
    app.parse(argc, argv);
    if (cw->parsed())
      return cmd_hardy_weight(global, cw_family, cw_dim, cw_range, cw_points);
    if (vf->parsed())
      return cmd_verify(global, vf_trials, vf_identity, vf_f, vf_max_vertices, vf_inject);
    if (sw->parsed())
      return cmd_sweep(global, sw_family, sw_weight_file, sw_graph_file, sw_balls, sw_scale,
                       sw_inner, sw_null, sw_divergence);
    if (gr->parsed())
      return cmd_green(global, gr_family, gr_dim, gr_method, gr_pole, gr_dirichlet, gr_radius,
                       gr_nodes, gr_point, gr_paper, gr_graph_file, gr_degree);
    if (cc->parsed())
      return cmd_coarea_check(global, cc_family, cc_u, cc_radius, cc_t1, cc_t2, cc_f);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
