#include "twwgeo/json_io.hpp"

#include <fstream>

#include "twwgeo/error.hpp"

namespace twwgeo {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::BadFormat, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

long long as_ll(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<long long>();
}

std::vector<std::pair<int, int>> int_pairs(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<std::pair<int, int>> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) bad(std::string(what) + " entries must be pairs");
    out.emplace_back(as_int(e[0], what), as_int(e[1], what));
  }
  return out;
}

std::vector<std::pair<long long, long long>> ll_pairs(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<std::pair<long long, long long>> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) bad(std::string(what) + " entries must be pairs");
    out.emplace_back(as_ll(e[0], what), as_ll(e[1], what));
  }
  return out;
}

Json pairs_to_json(const std::vector<std::pair<int, int>>& v) {
  Json arr = Json::array();
  for (auto [a, b] : v) arr.push_back({a, b});
  return arr;
}

template <typename Body>
auto reparse(Body&& body, const char* what) {
  try {
    return body();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::BadFormat, std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json graph_to_json(const Graph& g) {
  Json j;
  j["n"] = g.n;
  j["edges"] = pairs_to_json(g.edges);
  if (g.labels) j["labels"] = *g.labels;
  return j;
}

Graph graph_from_json(const Json& j) {
  return reparse(
      [&] {
        Graph g = make_graph(as_int(field(j, "n"), "n"), int_pairs(field(j, "edges"), "edges"));
        if (j.contains("labels")) {
          auto labels = j.at("labels").get<std::vector<std::string>>();
          if ((int)labels.size() != g.n) bad("labels length differs from n");
          g.labels = std::move(labels);
        }
        return g;
      },
      "graph");
}

Json structure_to_json(const OrderedBinaryStructure& s) {
  Json rels = Json::object();
  for (const Relation& r : s.relations) rels[r.name] = pairs_to_json(r.pairs);
  Json j;
  j["n"] = s.n;
  j["relations"] = rels;
  j["order"] = s.order ? Json(*s.order) : Json(nullptr);
  return j;
}

OrderedBinaryStructure structure_from_json(const Json& j) {
  return reparse(
      [&] {
        int n = as_int(field(j, "n"), "n");
        const Json& rels = field(j, "relations");
        if (!rels.is_object()) bad("relations must be an object");
        std::vector<Relation> relations;
        for (const auto& [name, pairs] : rels.items())
          relations.push_back({name, int_pairs(pairs, name.c_str())});
        std::optional<std::vector<int>> order;
        if (j.contains("order") && !j.at("order").is_null())
          order = j.at("order").get<std::vector<int>>();
        return make_structure(n, std::move(relations), std::move(order));
      },
      "structure");
}

Json points_to_json(const PointSet& ps) {
  Json arr = Json::array();
  for (auto [x, y] : ps.points) arr.push_back({x, y});
  return Json{{"points", arr}};
}

PointSet points_from_json(const Json& j) {
  return reparse([&] { return make_point_set(ll_pairs(field(j, "points"), "points")); },
                 "points");
}

Json grid_witness_to_json(const GridWitness& w) {
  Json cells = Json::array();
  for (const auto& row : w.cells) {
    Json r = Json::array();
    for (auto [x, y] : row) r.push_back({x, y});
    cells.push_back(r);
  }
  Json j;
  j["t"] = w.t;
  j["cells"] = cells;
  Json cb = Json::array(), rb = Json::array();
  for (auto [lo, hi] : w.col_blocks) cb.push_back({lo, hi});
  for (auto [lo, hi] : w.row_blocks) rb.push_back({lo, hi});
  j["col_blocks"] = cb;
  j["row_blocks"] = rb;
  return j;
}

GridWitness grid_witness_from_json(const Json& j) {
  return reparse(
      [&] {
        GridWitness w;
        w.t = as_int(field(j, "t"), "t");
        const Json& cells = field(j, "cells");
        if (!cells.is_array()) bad("cells must be an array");
        for (const auto& row : cells) w.cells.push_back(ll_pairs(row, "cells"));
        w.col_blocks = ll_pairs(field(j, "col_blocks"), "col_blocks");
        w.row_blocks = ll_pairs(field(j, "row_blocks"), "row_blocks");
        return w;
      },
      "grid witness");
}

Json contraction_to_json(const ContractionSequence& seq) {
  return Json{{"merges", pairs_to_json(seq.merges)}};
}

ContractionSequence contraction_from_json(const Json& j) {
  return reparse(
      [&] {
        ContractionSequence seq;
        seq.merges = int_pairs(field(j, "merges"), "merges");
        return seq;
      },
      "contraction sequence");
}

Json construction_to_json(const ConstructionSequence& seq) {
  Json ops = Json::array();
  for (const ConstructionOp& op : seq.ops) {
    const char* kind = op.kind == OpKind::Merge      ? "merge"
                       : op.kind == OpKind::ResolvePos ? "pos"
                                                       : "neg";
    ops.push_back({{"op", kind}, {"a", op.a}, {"b", op.b}});
  }
  return Json{{"ops", ops}};
}

ConstructionSequence construction_from_json(const Json& j) {
  return reparse(
      [&] {
        ConstructionSequence seq;
        const Json& ops = field(j, "ops");
        if (!ops.is_array()) bad("ops must be an array");
        for (const auto& o : ops) {
          std::string kind = field(o, "op").get<std::string>();
          OpKind k;
          if (kind == "merge") k = OpKind::Merge;
          else if (kind == "pos") k = OpKind::ResolvePos;
          else if (kind == "neg") k = OpKind::ResolveNeg;
          else bad("op must be merge, pos or neg");
          seq.ops.push_back({k, as_int(field(o, "a"), "a"), as_int(field(o, "b"), "b")});
        }
        return seq;
      },
      "construction sequence");
}

Json arcs_to_json(const ArcFamily& f) {
  Json arcs = Json::array();
  for (const Arc& a : f.arcs)
    arcs.push_back({{"id", a.id}, {"left", a.left}, {"right", a.right}});
  return Json{{"n", f.n}, {"arcs", arcs}};
}

ArcFamily arcs_from_json(const Json& j) {
  return reparse(
      [&] {
        int n = as_int(field(j, "n"), "n");
        const Json& arcs = field(j, "arcs");
        if (!arcs.is_array()) bad("arcs must be an array");
        std::vector<Arc> list;
        for (const auto& a : arcs)
          list.push_back({as_int(field(a, "id"), "id"), as_int(field(a, "left"), "left"),
                          as_int(field(a, "right"), "right")});
        return make_arc_family(n, std::move(list));
      },
      "arc family");
}

Json segments_to_json(const SegmentFamily& f) {
  Json segs = Json::array();
  for (const Segment& s : f.segments)
    segs.push_back({{"id", s.id},
                    {"dir", s.dir == SegDir::H ? "H" : "V"},
                    {"x", s.x},
                    {"y", s.y},
                    {"len", s.len}});
  return Json{
      {"eta_den", f.eta_den}, {"max_len", f.max_len}, {"segments", segs}, {"units", "eta"}};
}

SegmentFamily segments_from_json(const Json& j) {
  return reparse(
      [&] {
        long long eta_den = as_ll(field(j, "eta_den"), "eta_den");
        long long max_len = as_ll(field(j, "max_len"), "max_len");
        if (j.contains("units") && field(j, "units").get<std::string>() != "eta")
          bad("units must be \"eta\"");
        const Json& segs = field(j, "segments");
        if (!segs.is_array()) bad("segments must be an array");
        std::vector<Segment> list;
        for (const auto& s : segs) {
          std::string dir = field(s, "dir").get<std::string>();
          if (dir != "H" && dir != "V") bad("dir must be \"H\" or \"V\"");
          list.push_back({as_int(field(s, "id"), "id"), dir == "H" ? SegDir::H : SegDir::V,
                          as_ll(field(s, "x"), "x"), as_ll(field(s, "y"), "y"),
                          as_ll(field(s, "len"), "len")});
        }
        return make_segment_family(eta_den, max_len, std::move(list));
      },
      "segment family");
}

Json terrain_to_json(const Terrain& t) {
  Json pts = Json::array();
  for (const auto& [x, y] : t.points) {
    long long xn = numerator(x).convert_to<long long>();
    long long xd = denominator(x).convert_to<long long>();
    long long yn = numerator(y).convert_to<long long>();
    long long yd = denominator(y).convert_to<long long>();
    pts.push_back({xn, xd, yn, yd});
  }
  return Json{{"points", pts}};
}

Terrain terrain_from_json(const Json& j) {
  return reparse(
      [&] {
        Terrain t;
        const Json& pts = field(j, "points");
        if (!pts.is_array()) bad("points must be an array");
        for (const auto& p : pts) {
          if (!p.is_array() || p.size() != 4) bad("terrain points are [xn,xd,yn,yd]");
          long long xn = as_ll(p[0], "xn"), xd = as_ll(p[1], "xd");
          long long yn = as_ll(p[2], "yn"), yd = as_ll(p[3], "yd");
          if (xd == 0 || yd == 0) bad("zero denominator");
          t.points.emplace_back(Rational(xn, xd), Rational(yn, yd));
        }
        return t;
      },
      "terrain");
}

Json transversal_to_json(const TransversalWitness& w) {
  Json b = Json::array();
  for (const auto& row : w.B) b.push_back(row);
  return Json{{"k", w.k}, {"A", w.A}, {"B", b}, {"C", w.C}};
}

TransversalWitness transversal_from_json(const Json& j) {
  return reparse(
      [&] {
        TransversalWitness w;
        w.k = as_int(field(j, "k"), "k");
        w.A = field(j, "A").get<std::vector<int>>();
        w.C = field(j, "C").get<std::vector<int>>();
        const Json& b = field(j, "B");
        if (!b.is_array()) bad("B must be an array of rows");
        for (const auto& row : b) w.B.push_back(row.get<std::vector<int>>());
        return w;
      },
      "transversal witness");
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadFormat, "cannot open " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::BadFormat, "invalid JSON in " + path);
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::BadFormat, "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace twwgeo
