// Command-line front end: generators, dichotomy analyzers, verifiers and
// grid search over the stable JSON formats.
//
// Exit codes: 0 success, 2 verification failure, 3 malformed input, 64 usage.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "twwgeo/error.hpp"
#include "twwgeo/json_io.hpp"

using namespace twwgeo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitUsage = 64;

struct GlobalOpts {
  unsigned long long seed = 0;
  bool timing = false;
  std::chrono::steady_clock::time_point start;
};

void emit(const GlobalOpts& g, const std::string& command, Json report) {
  report["command"] = command;
  report["seed"] = g.seed;
  if (g.timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - g.start)
                  .count();
    report["wall_ms"] = ms;
  }
  std::cout << report.dump(2) << "\n";
}

void write_or_print(const std::string& out, const Json& j) {
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    save_json_file(out, j);
}

// FNV-1a over the raw bytes, for the input-digest field of reports.
std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::BadFormat, "cannot read " + path);
  uint64_t h = 1469598103934665603ull;
  char c;
  while (in.get(c)) {
    h ^= (unsigned char)c;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << "fnv1a:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      fail(ErrorCode::BadFormat, "expected a comma-separated integer list, got '" + text + "'");
    }
  }
  if (out.empty()) fail(ErrorCode::BadFormat, "empty integer list");
  return out;
}

int parse_radius(const std::string& text) {
  if (text == "inf") return kRadiusInf;
  try {
    int r = std::stoi(text);
    if (r < 0) throw std::invalid_argument("negative");
    return r;
  } catch (const std::exception&) {
    fail(ErrorCode::BadFormat, "radius must be a non-negative integer or 'inf'");
  }
}

// ---------------------------------------------------------------------------
// Subcommand bodies.  Each returns the process exit code.
// ---------------------------------------------------------------------------

int run_verify_contraction(const GlobalOpts&, const std::string& graph_file,
                           const std::string& seq_file, bool trace) {
  Graph g = graph_from_json(load_json_file(graph_file));
  ContractionSequence seq = contraction_from_json(load_json_file(seq_file));
  auto s = structure_from_graph(g);
  try {
    ContractionTrace tr;
    int w = verify_contraction(s, seq, trace ? &tr : nullptr);
    std::cout << "width=" << w << "\n";
    if (trace)
      for (size_t i = 0; i < tr.step_error_degrees.size(); ++i)
        std::cout << "step " << i << ": error_degree=" << tr.step_error_degrees[i] << "\n";
    return kExitOk;
  } catch (const Error& e) {
    std::cout << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  }
}

int run_verify_construction(const GlobalOpts&, const std::string& graph_file,
                            const std::string& seq_file, const std::string& radius) {
  Graph g = graph_from_json(load_json_file(graph_file));
  ConstructionSequence seq = construction_from_json(load_json_file(seq_file));
  int r = parse_radius(radius);
  try {
    int w = verify_construction(g, seq, r);
    std::cout << "width=" << w << "\n";
    return kExitOk;
  } catch (const Error& e) {
    std::cout << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  }
}

int run_verify_transversal(const GlobalOpts&, const std::string& graph_file,
                           const std::string& witness_file) {
  Graph g = graph_from_json(load_json_file(graph_file));
  TransversalWitness w = transversal_from_json(load_json_file(witness_file));
  try {
    if (verify_transversal(g, w)) {
      std::cout << "ok\n";
      return kExitOk;
    }
    std::cout << "mismatch\n";
    return kExitVerification;
  } catch (const Error& e) {
    std::cout << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  }
}

int run_verify_grid(const GlobalOpts&, const std::string& points_file,
                    const std::string& witness_file) {
  PointSet ps = points_from_json(load_json_file(points_file));
  GridWitness w = grid_witness_from_json(load_json_file(witness_file));
  if (verify_grid(ps, w)) {
    std::cout << "ok\n";
    return kExitOk;
  }
  std::cout << "mismatch\n";
  return kExitVerification;
}

void finish_analysis(const GlobalOpts& g, const std::string& command, const std::string& input,
                     const Graph& graph, const DichotomyResult& r,
                     const std::string& emit_witness, const std::string& emit_graph) {
  Json report;
  report["input_digest"] = file_digest(input);
  if (r.transversal) {
    report["branch"] = "transversal";
    report["k"] = r.transversal->k;
    if (!emit_witness.empty()) save_json_file(emit_witness, transversal_to_json(*r.transversal));
  } else {
    report["branch"] = "contraction";
    report["width"] = r.contraction->verified_width;
    report["merges"] = (int)r.contraction->seq.merges.size();
    if (!emit_witness.empty()) save_json_file(emit_witness, contraction_to_json(r.contraction->seq));
  }
  if (!emit_graph.empty()) save_json_file(emit_graph, graph_to_json(graph));
  emit(g, command, std::move(report));
}

int run_analyze_arcs(const GlobalOpts& g, const std::string& input, int k,
                     const std::string& emit_witness, const std::string& emit_graph) {
  ArcFamily f = arcs_from_json(load_json_file(input));
  DichotomyResult r = analyze_arcs(f, k);
  finish_analysis(g, "analyze arcs", input, arc_intersection_graph(f), r, emit_witness,
                  emit_graph);
  return kExitOk;
}

int run_analyze_apus(const GlobalOpts& g, const std::string& input, int k, bool lengths,
                     const std::string& emit_witness, const std::string& emit_graph) {
  SegmentFamily f = segments_from_json(load_json_file(input));
  if (!is_unit_family(f) && !lengths)
    fail(ErrorCode::BadFormat, "family has mixed lengths; pass --lengths to accept");
  DichotomyResult r = analyze_apus(f, k);
  finish_analysis(g, "analyze apus", input, apus_intersection_graph(f), r, emit_witness,
                  emit_graph);
  return kExitOk;
}

int run_grid_find(const GlobalOpts& g, const std::string& points_file, int t, bool force,
                  const std::string& out) {
  PointSet ps = points_from_json(load_json_file(points_file));
  GridSearchOptions opts;
  opts.force = force;
  auto w = find_grid(ps, t, opts);
  Json report;
  report["input_digest"] = file_digest(points_file);
  report["found"] = w.has_value();
  report["t"] = t;
  if (w) {
    report["witness"] = grid_witness_to_json(*w);
    if (!out.empty()) save_json_file(out, grid_witness_to_json(*w));
  }
  emit(g, "grid find", std::move(report));
  return kExitOk;
}

int run_grid_max(const GlobalOpts& g, const std::string& points_file, bool force,
                 const std::string& out) {
  PointSet ps = points_from_json(load_json_file(points_file));
  GridSearchOptions opts;
  opts.force = force;
  auto r = max_grid(ps, opts);
  Json report;
  report["input_digest"] = file_digest(points_file);
  report["t"] = r.t;
  report["exact"] = r.exact;
  report["witness"] = grid_witness_to_json(r.witness);
  if (!out.empty()) save_json_file(out, grid_witness_to_json(r.witness));
  emit(g, "grid max", std::move(report));
  return kExitOk;
}

int run_vis(const GlobalOpts&, const std::string& terrain_file, const std::string& out) {
  Terrain t = terrain_from_json(load_json_file(terrain_file));
  write_or_print(out, graph_to_json(visibility_graph(t)));
  return kExitOk;
}

int run_plot(const GlobalOpts&, const std::string& witness_file, const std::string& out) {
  GridWitness w = grid_witness_from_json(load_json_file(witness_file));
  long long xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& row : w.cells)
    for (auto [x, y] : row) {
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      }
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  const double pad = 1.0, scale = 24.0;
  auto px = [&](long long x) { return (double)(x - xmin + pad) * scale; };
  auto py = [&](long long y) { return (double)(ymax - y + pad) * scale; };
  double width = px(xmax) + pad * scale, height = py(ymin) + pad * scale;
  std::ofstream svg(out);
  if (!svg) fail(ErrorCode::BadFormat, "cannot write " + out);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
  for (auto [lo, hi] : w.col_blocks)
    svg << "  <rect x=\"" << px(lo) - 6 << "\" y=\"" << py(ymax) - 6 << "\" width=\""
        << px(hi) - px(lo) + 12 << "\" height=\"" << py(ymin) - py(ymax) + 12
        << "\" fill=\"none\" stroke=\"#88f\"/>\n";
  for (auto [lo, hi] : w.row_blocks)
    svg << "  <rect x=\"" << px(xmin) - 6 << "\" y=\"" << py(hi) - 6 << "\" width=\""
        << px(xmax) - px(xmin) + 12 << "\" height=\"" << py(lo) - py(hi) + 12
        << "\" fill=\"none\" stroke=\"#f88\"/>\n";
  for (const auto& row : w.cells)
    for (auto [x, y] : row)
      svg << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"4\" fill=\"#222\"/>\n";
  svg << "</svg>\n";
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts g;
  g.start = std::chrono::steady_clock::now();

  CLI::App app{"twwgeo: contraction sequences, grids and geometric dichotomies"};
  app.footer(
      "Environment: TWWGEO_MAX_EXACT overrides the exact-width vertex cap "
      "(default 12; unsafe above 12).");
  app.require_subcommand(1);
  app.add_option("--seed", g.seed, "seed echoed into reports (all outputs are deterministic)");
  app.add_flag("--timing", g.timing, "include wall_ms in reports");
  app.set_help_all_flag("--help-all");

  int exit_code = kExitOk;
  auto defer = [&](std::function<int()> body) {
    return [&exit_code, body = std::move(body)]() { exit_code = body(); };
  };

  // gen -----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "emit a generated family as JSON");
  gen->require_subcommand(1);
  {
    auto* c = gen->add_subcommand("transversal", "transversal pattern graph T_k");
    auto k = std::make_shared<int>(1);
    auto format = std::make_shared<std::string>("graph");
    auto out = std::make_shared<std::string>();
    c->add_option("--k", *k, "pattern order")->required();
    c->add_option("--format", *format, "graph|witness")
        ->check(CLI::IsMember({"graph", "witness"}));
    c->add_option("--out", *out, "output file (stdout when absent)");
    c->callback(defer([&g, k, format, out] {
      if (*format == "witness")
        write_or_print(*out, transversal_to_json(canonical_transversal_witness(*k)));
      else
        write_or_print(*out, graph_to_json(gen_transversal_graph(*k)));
      return kExitOk;
    }));
  }
  {
    auto* c = gen->add_subcommand("halfgraph", "half-graph HG_n");
    auto n = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>();
    c->add_option("--n", *n, "order")->required();
    c->add_option("--out", *out, "output file");
    c->callback(defer([&g, n, out] {
      write_or_print(*out, graph_to_json(gen_halfgraph(*n)));
      return kExitOk;
    }));
  }
  {
    auto* c = gen->add_subcommand("hsigma", "path-joined double half-graph H_sigma^ell");
    auto sigma = std::make_shared<std::string>();
    auto ell = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>();
    c->add_option("--sigma", *sigma, "0-based permutation, comma separated")->required();
    c->add_option("--ell", *ell, "path length")->required();
    c->add_option("--out", *out, "output file");
    c->callback(defer([&g, sigma, ell, out] {
      write_or_print(*out, graph_to_json(gen_Hsigma(parse_int_list(*sigma), *ell)));
      return kExitOk;
    }));
  }
  {
    auto* c = gen->add_subcommand("biclique-subdiv", "subdivided complete (bipartite) graph");
    auto n = std::make_shared<int>(1);
    auto ell = std::make_shared<int>(1);
    auto bip = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    c->add_option("--n", *n, "hub count")->required();
    c->add_option("--ell", *ell, "subdivision length")->required();
    c->add_flag("--bipartite", *bip, "subdivide K_{n,n} instead of K_n");
    c->add_option("--out", *out, "output file");
    c->callback(defer([&g, n, ell, bip, out] {
      write_or_print(*out, graph_to_json(gen_subdivided_complete(*n, *ell, *bip)));
      return kExitOk;
    }));
  }
  {
    auto* c = gen->add_subcommand("gbullet", "edge-complement gadget of a bipartite graph");
    auto input = std::make_shared<std::string>();
    auto side = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    c->add_option("--input", *input, "bipartite graph JSON")->required();
    c->add_option("--side", *side, "0/1 side per vertex, comma separated")->required();
    c->add_option("--out", *out, "output file");
    c->callback(defer([&g, input, side, out] {
      Graph h = graph_from_json(load_json_file(*input));
      write_or_print(*out, graph_to_json(gen_Gbullet(h, parse_int_list(*side))));
      return kExitOk;
    }));
  }
  {
    auto* c = gen->add_subcommand("terrain", "terrain whose visibility graph encodes sigma");
    auto sigma = std::make_shared<std::string>();
    auto ell = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>();
    c->add_option("--sigma", *sigma, "0-based permutation, comma separated")->required();
    c->add_option("--ell", *ell, "floor path parameter")->required();
    c->add_option("--out", *out, "output file");
    c->callback(defer([&g, sigma, ell, out] {
      write_or_print(*out, terrain_to_json(gen_terrain(parse_int_list(*sigma), *ell)));
      return kExitOk;
    }));
  }
  {
    auto* c = gen->add_subcommand("tk-arcs", "circular-arc family whose graph carries T_k");
    auto k = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>();
    c->add_option("--k", *k, "pattern order")->required();
    c->add_option("--out", *out, "output file");
    c->callback(defer([&g, k, out] {
      write_or_print(*out, arcs_to_json(gen_Tk_arcs(*k)));
      return kExitOk;
    }));
  }
  {
    auto* c = gen->add_subcommand("tk-apus", "unit-segment family whose graph carries T_k");
    auto k = std::make_shared<int>(1);
    auto out = std::make_shared<std::string>();
    c->add_option("--k", *k, "pattern order")->required();
    c->add_option("--out", *out, "output file");
    c->callback(defer([&g, k, out] {
      write_or_print(*out, segments_to_json(gen_Tk_apus(*k)));
      return kExitOk;
    }));
  }

  // analyze --------------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "run a dichotomy analysis");
  analyze->require_subcommand(1);
  {
    auto* c = analyze->add_subcommand("arcs", "circular-arc dichotomy");
    auto input = std::make_shared<std::string>();
    auto k = std::make_shared<int>(1);
    auto witness = std::make_shared<std::string>();
    auto graph = std::make_shared<std::string>();
    c->add_option("--input", *input, "arc family JSON")->required();
    c->add_option("--k", *k, "threshold parameter")->required();
    c->add_option("--emit-witness", *witness, "write the engaged branch's witness here");
    c->add_option("--emit-graph", *graph, "write the intersection graph here");
    c->callback(defer([&g, input, k, witness, graph] {
      return run_analyze_arcs(g, *input, *k, *witness, *graph);
    }));
  }
  {
    auto* c = analyze->add_subcommand("apus", "axis-parallel unit-segment dichotomy");
    auto input = std::make_shared<std::string>();
    auto k = std::make_shared<int>(1);
    auto lengths = std::make_shared<bool>(false);
    auto witness = std::make_shared<std::string>();
    auto graph = std::make_shared<std::string>();
    c->add_option("--input", *input, "segment family JSON")->required();
    c->add_option("--k", *k, "threshold parameter")->required();
    c->add_flag("--lengths", *lengths, "accept mixed-length families");
    c->add_option("--emit-witness", *witness, "write the engaged branch's witness here");
    c->add_option("--emit-graph", *graph, "write the intersection graph here");
    c->callback(defer([&g, input, k, lengths, witness, graph] {
      return run_analyze_apus(g, *input, *k, *lengths, *witness, *graph);
    }));
  }

  // verify ---------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "re-check a witness or sequence");
  verify->require_subcommand(1);
  {
    auto* c = verify->add_subcommand("contraction", "width of a contraction sequence");
    auto graph = std::make_shared<std::string>();
    auto seq = std::make_shared<std::string>();
    auto trace = std::make_shared<bool>(false);
    c->add_option("--graph", *graph, "graph JSON")->required();
    c->add_option("--seq", *seq, "contraction sequence JSON")->required();
    c->add_flag("--trace", *trace, "print per-step error degrees");
    c->callback(defer([&g, graph, seq, trace] {
      return run_verify_contraction(g, *graph, *seq, *trace);
    }));
  }
  {
    auto* c = verify->add_subcommand("construction", "radius width of a construction sequence");
    auto graph = std::make_shared<std::string>();
    auto seq = std::make_shared<std::string>();
    auto radius = std::make_shared<std::string>("inf");
    c->add_option("--graph", *graph, "graph JSON")->required();
    c->add_option("--seq", *seq, "construction sequence JSON")->required();
    c->add_option("--radius", *radius, "radius (integer or 'inf')");
    c->callback(defer([&g, graph, seq, radius] {
      return run_verify_construction(g, *graph, *seq, *radius);
    }));
  }
  {
    auto* c = verify->add_subcommand("transversal", "transversal pattern witness");
    auto graph = std::make_shared<std::string>();
    auto witness = std::make_shared<std::string>();
    c->add_option("--graph", *graph, "graph JSON")->required();
    c->add_option("--witness", *witness, "witness JSON")->required();
    c->callback(defer([&g, graph, witness] {
      return run_verify_transversal(g, *graph, *witness);
    }));
  }
  {
    auto* c = verify->add_subcommand("grid", "grid witness over a point set");
    auto points = std::make_shared<std::string>();
    auto witness = std::make_shared<std::string>();
    c->add_option("--points", *points, "point set JSON")->required();
    c->add_option("--witness", *witness, "witness JSON")->required();
    c->callback(defer([&g, points, witness] {
      return run_verify_grid(g, *points, *witness);
    }));
  }

  // grid -----------------------------------------------------------------
  auto* grid = app.add_subcommand("grid", "t-grid search");
  grid->require_subcommand(1);
  {
    auto* c = grid->add_subcommand("find", "exact t-grid search");
    auto points = std::make_shared<std::string>();
    auto t = std::make_shared<int>(1);
    auto force = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    c->add_option("--points", *points, "point set JSON")->required();
    c->add_option("--t", *t, "grid order")->required();
    c->add_flag("--force", *force, "bypass the size guard");
    c->add_option("--out", *out, "write the witness here");
    c->callback(defer([&g, points, t, force, out] {
      return run_grid_find(g, *points, *t, *force, *out);
    }));
  }
  {
    auto* c = grid->add_subcommand("max", "largest grid order");
    auto points = std::make_shared<std::string>();
    auto force = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    c->add_option("--points", *points, "point set JSON")->required();
    c->add_flag("--force", *force, "bypass the size guard");
    c->add_option("--out", *out, "write the witness here");
    c->callback(defer([&g, points, force, out] {
      return run_grid_max(g, *points, *force, *out);
    }));
  }

  // mw -------------------------------------------------------------------
  auto* mw = app.add_subcommand("mw", "merge-width constructions");
  mw->require_subcommand(1);
  {
    auto* c = mw->add_subcommand("verify", "radius width of a construction sequence");
    auto graph = std::make_shared<std::string>();
    auto seq = std::make_shared<std::string>();
    auto radius = std::make_shared<std::string>("inf");
    c->add_option("--graph", *graph, "graph JSON")->required();
    c->add_option("--seq", *seq, "construction sequence JSON")->required();
    c->add_option("--radius", *radius, "radius (integer or 'inf')");
    c->callback(defer([&g, graph, seq, radius] {
      return run_verify_construction(g, *graph, *seq, *radius);
    }));
  }

  // vis / plot ------------------------------------------------------------
  {
    auto* c = app.add_subcommand("vis", "visibility graph of a terrain");
    auto terrain = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    c->add_option("--terrain", *terrain, "terrain JSON")->required();
    c->add_option("--out", *out, "output file");
    c->callback(defer([&g, terrain, out] { return run_vis(g, *terrain, *out); }));
  }
  {
    auto* c = app.add_subcommand("plot", "render a grid witness as SVG");
    auto witness = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    c->add_option("--witness", *witness, "grid witness JSON")->required();
    c->add_option("--out", *out, "SVG output file")->required();
    c->callback(defer([&g, witness, out] { return run_plot(g, *witness, *out); }));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::BadFormat ? kExitBadInput : kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return exit_code;
}
