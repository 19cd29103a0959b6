#pragma once

#include <json.hpp>
#include <string>

#include "tdi/setpacking.hpp"
#include "tdi/testset.hpp"

namespace tdi {

/// A linear system file: "d n", d rows of n integers, then one line of n
/// rationals for the cost vector c. Parse errors carry file:line positions.
struct SystemFile {
  IntMatrix a;
  RatVec c;
};

SystemFile read_system(const std::string& path);
void write_system(const std::string& path, const IntMatrix& a, const RatVec& c);
SystemFile parse_system(const std::string& text, const std::string& name);

/// Matrix-only file: "d n" then d rows of n integers.
IntMatrix read_matrix(const std::string& path);
IntMatrix parse_matrix_text(const std::string& text, const std::string& name);

/// DIMACS-like graph file: "p edge <vertices> <edges>" then "e u v" lines
/// (1-based); "c" lines are comments.
Graph read_graph(const std::string& path);
Graph parse_graph_text(const std::string& text, const std::string& name);

nlohmann::json subdivision_to_json(const Subdivision& s);
Subdivision subdivision_from_json(const nlohmann::json& j, const IntMatrix& a);

nlohmann::json test_set_to_json(const TestSet& t);
TestSet test_set_from_json(const nlohmann::json& j);

/// Certificates embed the system so they re-verify standalone.
nlohmann::json certificate_to_json(const Certificate& cert, const Problem& p);
struct LoadedCertificate {
  Certificate cert;
  IntMatrix a;
  RatVec c;
};
LoadedCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json perfectness_to_json(const PerfectnessCertificate& cert, const Graph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace tdi
