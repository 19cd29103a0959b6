#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>

#include "tdi/hilbert.hpp"
#include "tdi/io.hpp"
#include "tdi/setpacking.hpp"
#include "tdi/testset.hpp"
#include "tdi/toric.hpp"

using namespace tdi;
using nlohmann::json;

namespace {

struct GlobalOpts {
  unsigned long seed = 0;
  int threads = 1;
  std::string json_path;
};

void emit_json(const GlobalOpts& g, json j) {
  if (g.json_path.empty()) return;
  j["seed"] = g.seed;
  write_file(g.json_path, j.dump(2) + "\n");
}

Problem problem_from(const SystemFile& sf) { return Problem(sf.a, sf.c); }

std::vector<std::string> variable_names(const IntMatrix& a, const RatVec& c) {
  int n = a.cols();
  std::vector<std::string> names;
  if (is_set_packing_shape(a, c)) {
    int k = n - a.rows();
    if (k <= 26) {
      for (int q = 0; q < k; ++q) names.push_back(std::string(1, static_cast<char>('a' + q)));
      for (int v = 1; v <= a.rows(); ++v) names.push_back("v" + std::to_string(v));
      return names;
    }
  }
  for (int j = 1; j <= n; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

std::string monomial_str(const Exp& e, const std::vector<std::string>& names) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string poly_str(const BPoly& f, const std::vector<std::string>& names) {
  std::string s = monomial_str(f.lead, names);
  if (f.trail) s += " - " + monomial_str(*f.trail, names);
  return s;
}

void print_certificate(const Certificate& cert) {
  std::cout << (cert.verdict == Verdict::kTdi ? "TDI" : "NOT_TDI") << " (route: " << cert.route
            << ")\n";
  if (cert.test_set) std::cout << "test set size: " << cert.test_set->vectors.size() << "\n";
  if (cert.gap) {
    std::cout << "witness b = " << vec_str(cert.gap->b) << "\n";
    std::cout << "  LP value = " << rat_str(cert.gap->lp_value) << "\n";
    if (cert.gap->ip_value)
      std::cout << "  IP value = " << rat_str(*cert.gap->ip_value) << "\n";
    else
      std::cout << "  IP infeasible on this fiber\n";
  }
  if (cert.failing_cell) {
    std::cout << "failing cell:";
    for (int i : cert.failing_cell->indices) std::cout << " " << i;
    std::cout << "\n";
  }
  if (cert.hilbert_witness)
    std::cout << "hilbert witness = " << vec_str(*cert.hilbert_witness) << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Exact total dual integrality certification"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "Reproducibility seed recorded in JSON output");
  app.add_option("--threads", g.threads, "Worker threads for enumeration loops");

  std::string input, bspec, emit_path, order = "lex", method = "testset";
  long box = -1;
  bool do_perturb = false, do_mono = false;

  auto* sub = app.add_subcommand("subdivide", "Regular subdivision of a system");
  sub->add_option("system", input)->required();
  sub->add_option("--json", g.json_path);

  auto* hil = app.add_subcommand("hilbert", "Hilbert basis test of a matrix's columns");
  hil->add_option("matrix", input)->required();
  hil->add_option("--json", g.json_path);

  auto* ts = app.add_subcommand("testset", "Explicit test set of the system");
  ts->add_option("system", input)->required();
  ts->add_option("--json", g.json_path);

  auto* ip = app.add_subcommand("ipsolve", "Augmentation-based integer programming");
  ip->add_option("system", input)->required();
  ip->add_option("--b", bspec, "Right-hand side, space separated")->required();
  ip->add_option("--method", method, "auto|testset|brute")->default_val("auto");
  ip->add_option("--box", box, "Search box override");
  ip->add_option("--json", g.json_path);

  auto* gro = app.add_subcommand("groebner", "Toric Groebner basis under the cost order");
  gro->add_option("system", input)->required();
  gro->add_flag("--perturb", do_perturb, "Use the pulling perturbation c'");
  gro->add_flag("--mono", do_mono, "Also compute mono(in_c(I_A))");
  gro->add_option("--order", order, "Tie-break order: lex|grevlex")->default_val("lex");
  gro->add_option("--json", g.json_path);

  auto* perf = app.add_subcommand("perfect", "Perfectness of a graph via the refined fan");
  perf->add_option("graph", input)->required();
  perf->add_option("--emit-system", emit_path, "Write the set packing system file");
  perf->add_option("--json", g.json_path);

  auto* tdi_cmd = app.add_subcommand("tdi", "TDI certification");
  tdi_cmd->add_option("system", input)->required();
  tdi_cmd->add_option("--method", method, "testset|cells|toric|brute")->default_val("testset");
  tdi_cmd->add_option("--box", box, "Box for the brute-force route");
  tdi_cmd->add_option("--json", g.json_path);

  auto* pert = app.add_subcommand("perturb", "Print the perturbed cost vector c'");
  pert->add_option("system", input)->required();
  pert->add_option("--json", g.json_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // input error contract
  }
  set_thread_count(g.threads);

  if (sub->parsed()) {
    SystemFile sf = read_system(input);
    Problem p = problem_from(sf);
    Subdivision s = regular_subdivision(p);
    std::cout << s.maximal_cells.size() << " maximal cells\n";
    for (const Cell& cell : s.maximal_cells) {
      std::cout << "cell:";
      for (int i : cell.indices) std::cout << " " << i;
      std::cout << " | witness: " << vec_str(cell.witness) << "\n";
    }
    emit_json(g, subdivision_to_json(s));
    return 0;
  }

  if (hil->parsed()) {
    IntMatrix m = read_matrix(input);
    HilbertVerdict v = is_hilbert_basis(ConeConfiguration{m});
    std::cout << (v.is_basis ? "HILBERT_BASIS" : "NOT_HILBERT_BASIS") << "\n";
    std::cout << "minimal basis (" << v.minimal_basis.size() << "):\n";
    for (const IntVec& h : v.minimal_basis) std::cout << "  " << vec_str(h) << "\n";
    if (v.witness) std::cout << "witness = " << vec_str(*v.witness) << "\n";
    json j;
    j["is_basis"] = v.is_basis;
    json basis = json::array();
    for (const IntVec& h : v.minimal_basis) {
      json row = json::array();
      for (const Int& x : h) row.push_back(x.get_str());
      basis.push_back(row);
    }
    j["minimal_basis"] = basis;
    if (v.witness) {
      json w = json::array();
      for (const Int& x : *v.witness) w.push_back(x.get_str());
      j["witness"] = w;
    }
    emit_json(g, j);
    return 0;
  }

  if (ts->parsed()) {
    SystemFile sf = read_system(input);
    Problem p = problem_from(sf);
    Certificate cert = tdi_check_via_testset(p);
    print_certificate(cert);
    if (cert.test_set) {
      for (const TaggedVector& tv : cert.test_set->vectors) {
        std::cout << (tv.kind == Provenance::kWheel ? "wheel " : "tau ");
        std::cout << "+" << vec_str(tv.vec.plus) << " -" << vec_str(tv.vec.minus) << "\n";
      }
    }
    emit_json(g, certificate_to_json(cert, p));
    return 0;
  }

  if (ip->parsed()) {
    SystemFile sf = read_system(input);
    Problem p = problem_from(sf);
    std::istringstream ss(bspec);
    IntVec b;
    std::string tok;
    while (ss >> tok) b.push_back(Int(tok));
    if (static_cast<int>(b.size()) != p.dim()) throw InvalidInput("ipsolve: --b needs d entries");
    std::optional<Int> box_override;
    if (box >= 0) box_override = Int(box);
    std::string used;
    std::optional<IpOptimum> opt;
    if (method == "testset" || method == "auto") {
      bool hil_ok = is_hilbert_basis(ConeConfiguration{p.matrix()}).is_basis;
      if (hil_ok) {
        auto res = build_test_set(p);
        if (std::holds_alternative<TestSet>(res)) {
          auto start = find_natural_solution(p.matrix(), b);
          if (start) {
            IntVec u = augment(p, std::get<TestSet>(res), *start);
            opt = IpOptimum{dot(p.cost(), u), u};
            used = "testset";
          } else {
            std::cout << "INFEASIBLE\n";
            return 0;
          }
        }
      }
      if (!opt && method == "testset")
        throw InvalidInput("ipsolve: test-set route unavailable (system not TDI)");
    }
    if (!opt) {
      opt = ip_solve_exhaustive(p.matrix(), p.cost(), b, box_override);
      used = "brute";
      if (!opt) {
        std::cout << "INFEASIBLE\n";
        return 0;
      }
    }
    std::cout << "optimum value = " << rat_str(opt->value) << " (route: " << used << ")\n";
    std::cout << "x = " << vec_str(opt->x) << "\n";
    json j;
    j["value"] = rat_str(opt->value);
    json xs = json::array();
    for (const Int& x : opt->x) xs.push_back(x.get_str());
    j["x"] = xs;
    j["route"] = used;
    emit_json(g, j);
    return 0;
  }

  if (gro->parsed()) {
    SystemFile sf = read_system(input);
    Problem p = problem_from(sf);
    RatVec cost = sf.c;
    if (do_perturb) {
      if (!is_set_packing_shape(sf.a, sf.c))
        throw InvalidInput("groebner --perturb: system is not a set packing system");
      int k = sf.a.cols() - sf.a.rows();
      std::vector<std::vector<int>> cliques(k);
      for (int q = 0; q < k; ++q)
        for (int i = 0; i < sf.a.rows(); ++i)
          if (sf.a.at(i, q) == 1) cliques[q].push_back(i);
      cost = perturb(SetPackingSystem{p, cliques});
    }
    std::vector<BPoly> gens;
    if (is_set_packing_shape(sf.a, sf.c)) {
      int k = sf.a.cols() - sf.a.rows();
      std::vector<std::vector<int>> cliques(k);
      for (int q = 0; q < k; ++q)
        for (int i = 0; i < sf.a.rows(); ++i)
          if (sf.a.at(i, q) == 1) cliques[q].push_back(i);
      gens = setpacking_toric_generators(cliques, sf.a.rows());
    } else {
      if (!toric_route_available(p))
        throw Unsupported("groebner: no toric generating set usable under this cost order");
      gens = toric_ideal_generators(sf.a);
    }
    Order tie = order == "grevlex" ? grevlex_order() : lex_order();
    if (order != "lex" && order != "grevlex") throw InvalidInput("groebner: --order must be lex|grevlex");
    auto gb = buchberger(std::move(gens), weight_order(cost, tie));
    auto names = variable_names(sf.a, sf.c);
    std::cout << "reduced Groebner basis (" << gb.size() << " elements):\n";
    for (const BPoly& f : gb) std::cout << "  " << poly_str(f, names) << "\n";
    auto init = initial_ideal(gb, cost);
    std::cout << "initial ideal generators:\n";
    for (const BPoly& f : init) std::cout << "  " << poly_str(f, names) << "\n";
    json j;
    json gbj = json::array();
    for (const BPoly& f : gb) gbj.push_back(poly_str(f, names));
    j["groebner_basis"] = gbj;
    json initj = json::array();
    for (const BPoly& f : init) initj.push_back(poly_str(f, names));
    j["initial_ideal"] = initj;
    if (do_mono) {
      MonomialIdeal mono = mono_of_initial(init, sf.a.cols());
      std::cout << "mono(in_c(I_A)) minimal generators (" << mono.gens.size() << "):\n";
      for (const Exp& e : mono.gens) std::cout << "  " << monomial_str(e, names) << "\n";
      std::cout << (is_squarefree(mono) ? "square-free" : "not square-free") << "\n";
      json mj = json::array();
      for (const Exp& e : mono.gens) mj.push_back(monomial_str(e, names));
      j["mono"] = mj;
      j["squarefree"] = is_squarefree(mono);
    }
    emit_json(g, j);
    return 0;
  }

  if (perf->parsed()) {
    Graph graph = read_graph(input);
    if (!emit_path.empty()) {
      SetPackingSystem sys = build_system(graph);
      write_system(emit_path, sys.problem.matrix(), sys.problem.cost());
    }
    PerfectnessCertificate cert = perfectness_check(graph);
    std::cout << (cert.verdict == Perfectness::kPerfect ? "PERFECT" : "IMPERFECT") << "\n";
    std::cout << "refined triangulation cells: " << cert.refinement.maximal_cells.size() << "\n";
    if (cert.nonunimodular_cell) {
      std::cout << "non-unimodular cell:";
      for (int i : cert.nonunimodular_cell->indices) std::cout << " " << i;
      std::cout << " (det " << cert.cell_det->get_str() << ")\n";
    }
    if (cert.fractional_vertex)
      std::cout << "fractional vertex of Q_c: " << vec_str(*cert.fractional_vertex) << "\n";
    emit_json(g, perfectness_to_json(cert, graph));
    return 0;
  }

  if (tdi_cmd->parsed()) {
    SystemFile sf = read_system(input);
    Problem p = problem_from(sf);
    Certificate cert;
    if (method == "testset") {
      cert = tdi_check_via_testset(p);
    } else if (method == "cells") {
      cert = tdi_check_via_cells(p);
      std::cout << regular_subdivision(p).maximal_cells.size() << " cells";
      std::cout << (cert.verdict == Verdict::kTdi ? ", all Hilbert\n" : ", a cell fails\n");
    } else if (method == "toric") {
      cert = tdi_check_via_toric(p);
    } else if (method == "brute") {
      cert = brute_force_tdi(p, box >= 0 ? Int(box) : default_tdi_box(p.matrix()));
    } else {
      throw InvalidInput("tdi: --method must be testset|cells|toric|brute");
    }
    print_certificate(cert);
    emit_json(g, certificate_to_json(cert, p));
    return 0;
  }

  if (pert->parsed()) {
    SystemFile sf = read_system(input);
    if (!is_set_packing_shape(sf.a, sf.c))
      throw InvalidInput("perturb: system is not a set packing system");
    Problem p = problem_from(sf);
    int k = sf.a.cols() - sf.a.rows();
    std::vector<std::vector<int>> cliques(k);
    for (int q = 0; q < k; ++q)
      for (int i = 0; i < sf.a.rows(); ++i)
        if (sf.a.at(i, q) == 1) cliques[q].push_back(i);
    RatVec cp = perturb(SetPackingSystem{p, cliques});
    std::cout << vec_str(cp) << "\n";
    json j;
    json arr = json::array();
    for (const Rat& q : cp) arr.push_back(rat_str(q));
    j["c_prime"] = arr;
    emit_json(g, j);
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
