#ifndef JACOBI_TESTS_COMMON_HPP
#define JACOBI_TESTS_COMMON_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "jacobi/canonical.hpp"
#include "jacobi/enumeration.hpp"
#include "jacobi/text.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(JACOBI_FIXTURE_DIR) + "/" + name; }

inline std::string read(const std::string& name) {
  std::ifstream in(path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline jacobi::Document load(const std::string& name) { return jacobi::parse_document(read(name)); }

inline jacobi::Diagram diagram(const std::string& name) { return load(name).diagrams.front().second; }

inline const char* kInterval = "skeleton S { interval c1; }\n";

/// First diagram of `skeleton + body`.
inline jacobi::Diagram parse(const std::string& body, const std::string& skeleton = kInterval) {
  return jacobi::parse_document(skeleton + body).diagrams.front().second;
}

inline jacobi::Diagram chord() { return parse("diagram D on S { legs: a@c1, b@c1; edges: a-b; }"); }

inline jacobi::Diagram y_diagram() {
  return parse("diagram D on S { legs: a@c1, b@c1, c@c1; vertices: v(x,y,z); edges: a-x, b-y, c-z; }");
}

inline jacobi::Diagram theta() { return diagram("theta.dg"); }

/// A loop at a vertex with a single leg: degree 1.
inline jacobi::Diagram tadpole() {
  return parse("diagram D on S { legs: a@c1; vertices: v(va,v1,v2); edges: a-va, v1-v2; }");
}

inline jacobi::Diagram from_digest(const jacobi::SkeletonPtr& sk, const std::string& digest) {
  return jacobi::diagram_from_digest(sk, digest);
}

/// Nonzero classes (as diagrams) of a degree, optionally connected only.
inline std::vector<jacobi::Diagram> corpus(const jacobi::SkeletonPtr& sk, int n, unsigned filters) {
  std::vector<jacobi::Diagram> out;
  for (const auto& c : jacobi::enumerate_classes({sk, n, filters | jacobi::kFilterNonzero})) {
    out.push_back(jacobi::diagram_from_digest(sk, c.canonical.digest));
  }
  return out;
}

}  // namespace fixtures

#endif
