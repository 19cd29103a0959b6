#include "tdi/io.hpp"

#include <fstream>
#include <sstream>

namespace tdi {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << text;
}

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& msg) {
  throw InvalidInput(name + ":" + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

Int parse_int_token(const std::string& t, const std::string& name, int line) {
  try {
    return Int(t);
  } catch (const std::invalid_argument&) {
    parse_fail(name, line, "expected an integer, got '" + t + "'");
  }
}

}  // namespace

SystemFile parse_system(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_data_line = [&]() -> std::vector<std::string> {
    while (std::getline(in, line)) {
      ++lineno;
      auto t = tokens(line);
      if (!t.empty()) return t;
    }
    return {};
  };
  auto head = next_data_line();
  if (head.size() != 2) parse_fail(name, lineno, "expected header 'd n'");
  int d = std::stoi(head[0]), n = std::stoi(head[1]);
  if (d < 1 || n < 1) parse_fail(name, lineno, "dimensions must be positive");
  IntMatrix a(d, n);
  for (int i = 0; i < d; ++i) {
    auto row = next_data_line();
    if (static_cast<int>(row.size()) != n)
      parse_fail(name, lineno, "matrix row needs " + std::to_string(n) + " entries");
    for (int j = 0; j < n; ++j) a.at(i, j) = parse_int_token(row[j], name, lineno);
  }
  auto crow = next_data_line();
  if (static_cast<int>(crow.size()) != n)
    parse_fail(name, lineno, "cost line needs " + std::to_string(n) + " rationals");
  RatVec c(n);
  for (int j = 0; j < n; ++j) {
    try {
      c[j] = parse_rat(crow[j]);
    } catch (const InvalidInput& e) {
      parse_fail(name, lineno, e.what());
    }
  }
  return SystemFile{std::move(a), std::move(c)};
}

SystemFile read_system(const std::string& path) { return parse_system(read_file(path), path); }

void write_system(const std::string& path, const IntMatrix& a, const RatVec& c) {
  std::ostringstream out;
  out << a.rows() << " " << a.cols() << "\n";
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out << (j ? " " : "") << a.at(i, j).get_str();
    out << "\n";
  }
  out << vec_str(c) << "\n";
  write_file(path, out.str());
}

IntMatrix parse_matrix_text(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_data_line = [&]() -> std::vector<std::string> {
    while (std::getline(in, line)) {
      ++lineno;
      auto t = tokens(line);
      if (!t.empty()) return t;
    }
    return {};
  };
  auto head = next_data_line();
  if (head.size() != 2) parse_fail(name, lineno, "expected header 'd n'");
  int d = std::stoi(head[0]), n = std::stoi(head[1]);
  if (d < 1 || n < 1) parse_fail(name, lineno, "dimensions must be positive");
  IntMatrix a(d, n);
  for (int i = 0; i < d; ++i) {
    auto row = next_data_line();
    if (static_cast<int>(row.size()) != n)
      parse_fail(name, lineno, "matrix row needs " + std::to_string(n) + " entries");
    for (int j = 0; j < n; ++j) a.at(i, j) = parse_int_token(row[j], name, lineno);
  }
  return a;
}

IntMatrix read_matrix(const std::string& path) { return parse_matrix_text(read_file(path), path); }

Graph parse_graph_text(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  Graph g;
  bool have_header = false;
  int expect_edges = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = tokens(line);
    if (t.empty() || t[0] == "c") continue;
    if (t[0] == "p") {
      if (t.size() != 4 || t[1] != "edge") parse_fail(name, lineno, "expected 'p edge <d> <m>'");
      g.vertex_count = std::stoi(t[2]);
      expect_edges = std::stoi(t[3]);
      if (g.vertex_count < 1) parse_fail(name, lineno, "vertex count must be positive");
      have_header = true;
    } else if (t[0] == "e") {
      if (!have_header) parse_fail(name, lineno, "edge before 'p edge' header");
      if (t.size() != 3) parse_fail(name, lineno, "expected 'e u v'");
      int u = std::stoi(t[1]), v = std::stoi(t[2]);
      if (u < 1 || v < 1 || u > g.vertex_count || v > g.vertex_count)
        parse_fail(name, lineno, "edge endpoint out of range");
      if (u == v) parse_fail(name, lineno, "loops are not allowed");
      g.edges.emplace_back(u - 1, v - 1);
    } else {
      parse_fail(name, lineno, "unknown record '" + t[0] + "'");
    }
  }
  if (!have_header) parse_fail(name, lineno, "missing 'p edge' header");
  if (expect_edges != static_cast<int>(g.edges.size()))
    parse_fail(name, lineno, "edge count does not match header");
  return g;
}

Graph read_graph(const std::string& path) { return parse_graph_text(read_file(path), path); }

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

json ratvec_json(const RatVec& v) {
  json arr = json::array();
  for (const Rat& q : v) arr.push_back(rat_str(q));
  return arr;
}

RatVec ratvec_from(const json& arr) {
  RatVec v;
  for (const auto& s : arr) v.push_back(parse_rat(s.get<std::string>()));
  return v;
}

json intvec_json(const IntVec& v) {
  json arr = json::array();
  for (const Int& q : v) arr.push_back(q.get_str());
  return arr;
}

IntVec intvec_from(const json& arr) {
  IntVec v;
  for (const auto& s : arr) v.push_back(Int(s.get<std::string>()));
  return v;
}

json matrix_json(const IntMatrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(a.at(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

IntMatrix matrix_from(const json& rows) {
  int d = static_cast<int>(rows.size());
  int n = static_cast<int>(rows.at(0).size());
  IntMatrix a(d, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = Int(rows.at(i).at(j).get<std::string>());
  return a;
}

}  // namespace

json subdivision_to_json(const Subdivision& s) {
  json cells = json::array();
  json witnesses = json::array();
  for (const Cell& cell : s.maximal_cells) {
    cells.push_back(cell.indices);
    witnesses.push_back(ratvec_json(cell.witness));
  }
  return json{{"cells", cells}, {"witnesses", witnesses}};
}

Subdivision subdivision_from_json(const json& j, const IntMatrix& a) {
  Subdivision s;
  s.a = a;
  const auto& cells = j.at("cells");
  const auto& wits = j.at("witnesses");
  for (size_t i = 0; i < cells.size(); ++i) {
    Cell c;
    for (const auto& idx : cells[i]) c.indices.push_back(idx.get<int>());
    c.witness = ratvec_from(wits.at(i));
    s.maximal_cells.push_back(std::move(c));
  }
  return s;
}

json test_set_to_json(const TestSet& t) {
  json arr = json::array();
  for (const TaggedVector& tv : t.vectors) {
    json e;
    e["plus"] = intvec_json(tv.vec.plus);
    e["minus"] = intvec_json(tv.vec.minus);
    e["kind"] = tv.kind == Provenance::kWheel ? "wheel" : "independent-tau";
    e["support"] = tv.support;
    if (tv.kind == Provenance::kIndependentTau) {
      e["beta"] = intvec_json(tv.beta);
      e["beta_cell"] = tv.beta_cell;
    }
    arr.push_back(e);
  }
  return json{{"vectors", arr}};
}

TestSet test_set_from_json(const json& j) {
  TestSet t;
  for (const auto& e : j.at("vectors")) {
    TaggedVector tv;
    tv.vec.plus = intvec_from(e.at("plus"));
    tv.vec.minus = intvec_from(e.at("minus"));
    tv.kind = e.at("kind") == "wheel" ? Provenance::kWheel : Provenance::kIndependentTau;
    for (const auto& i : e.at("support")) tv.support.push_back(i.get<int>());
    if (tv.kind == Provenance::kIndependentTau) {
      tv.beta = intvec_from(e.at("beta"));
      for (const auto& i : e.at("beta_cell")) tv.beta_cell.push_back(i.get<int>());
    } else {
      tv.beta.assign(tv.vec.plus.size(), Int(0));
    }
    t.vectors.push_back(std::move(tv));
  }
  return t;
}

json certificate_to_json(const Certificate& cert, const Problem& p) {
  json j;
  j["type"] = "tdi-certificate";
  j["verdict"] = cert.verdict == Verdict::kTdi ? "TDI" : "NOT_TDI";
  j["route"] = cert.route;
  j["system"] = json{{"a", matrix_json(p.matrix())}, {"c", ratvec_json(p.cost())}};
  if (cert.test_set) j["test_set"] = test_set_to_json(*cert.test_set);
  if (cert.gap) {
    json g;
    g["b"] = intvec_json(cert.gap->b);
    g["lp_value"] = rat_str(cert.gap->lp_value);
    if (cert.gap->ip_value)
      g["ip_value"] = rat_str(*cert.gap->ip_value);
    else
      g["ip_value"] = nullptr;
    j["gap"] = g;
  }
  if (cert.failing_cell) {
    j["failing_cell"] = cert.failing_cell->indices;
    j["failing_cell_witness"] = ratvec_json(cert.failing_cell->witness);
  }
  if (cert.hilbert_witness) j["hilbert_witness"] = intvec_json(*cert.hilbert_witness);
  return j;
}

LoadedCertificate certificate_from_json(const json& j) {
  LoadedCertificate out;
  out.a = matrix_from(j.at("system").at("a"));
  out.c = ratvec_from(j.at("system").at("c"));
  out.cert.verdict = j.at("verdict") == "TDI" ? Verdict::kTdi : Verdict::kNotTdi;
  out.cert.route = j.at("route");
  if (j.contains("test_set")) out.cert.test_set = test_set_from_json(j.at("test_set"));
  if (j.contains("gap")) {
    GapWitness g;
    g.b = intvec_from(j.at("gap").at("b"));
    g.lp_value = parse_rat(j.at("gap").at("lp_value").get<std::string>());
    if (!j.at("gap").at("ip_value").is_null())
      g.ip_value = parse_rat(j.at("gap").at("ip_value").get<std::string>());
    out.cert.gap = g;
  }
  if (j.contains("failing_cell")) {
    Cell c;
    for (const auto& i : j.at("failing_cell")) c.indices.push_back(i.get<int>());
    if (j.contains("failing_cell_witness")) c.witness = ratvec_from(j.at("failing_cell_witness"));
    out.cert.failing_cell = std::move(c);
  }
  if (j.contains("hilbert_witness")) out.cert.hilbert_witness = intvec_from(j.at("hilbert_witness"));
  return out;
}

json perfectness_to_json(const PerfectnessCertificate& cert, const Graph& g) {
  json j;
  j["type"] = "perfectness-certificate";
  j["verdict"] = cert.verdict == Perfectness::kPerfect ? "PERFECT" : "IMPERFECT";
  j["vertices"] = g.vertex_count;
  json edges = json::array();
  for (auto [u, v] : g.edges) edges.push_back(json::array({u + 1, v + 1}));
  j["edges"] = edges;
  j["c_prime"] = ratvec_json(cert.c_prime);
  j["refinement"] = subdivision_to_json(cert.refinement);
  if (cert.nonunimodular_cell) j["nonunimodular_cell"] = cert.nonunimodular_cell->indices;
  if (cert.cell_det) j["cell_det"] = cert.cell_det->get_str();
  if (cert.fractional_vertex) j["fractional_vertex"] = ratvec_json(*cert.fractional_vertex);
  return j;
}

}  // namespace tdi
