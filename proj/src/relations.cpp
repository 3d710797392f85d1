#include "jacobi/relations.hpp"

#include <algorithm>
#include <map>

#include "jacobi/stu.hpp"

namespace jacobi {

int RelationSystem::index_of(std::string_view digest) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), digest,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == basis.end() || *it != digest) return -1;
  return static_cast<int>(it - basis.begin());
}

namespace {

// Rows are scaled so the first coefficient is positive; the serialized form
// is the dedup key and sort order.
std::vector<std::pair<std::string, LinearCombination>> rows_for(const SkeletonPtr& skeleton,
                                                                const std::string& digest) {
  std::vector<std::pair<std::string, LinearCombination>> out;
  Diagram d = diagram_from_digest(skeleton, digest);
  for (int leg : vertex_adjacent_legs(d)) {
    LinearCombination row = stu_row(d, leg);
    if (row.empty()) continue;
    if (sgn(row.terms().begin()->second) < 0) row *= -1;
    out.emplace_back(to_string(row), std::move(row));
  }
  return out;
}

RelationSystem assemble(const SkeletonPtr& skeleton, int degree,
                        const std::vector<EnumeratedClass>& classes,
                        std::vector<std::vector<std::pair<std::string, LinearCombination>>>& per_class) {
  RelationSystem sys;
  sys.skeleton = skeleton;
  sys.degree = degree;
  for (const auto& c : classes) {
    if (c.canonical.sign == 0) continue;
    sys.basis.push_back(c.canonical.digest);
    sys.basis_is_tree.push_back(c.tree ? 1 : 0);
  }
  std::map<std::string, LinearCombination> unique;
  for (auto& rows : per_class) {
    for (auto& [key, row] : rows) unique.emplace(std::move(key), std::move(row));
  }
  sys.rows.reserve(unique.size());
  for (auto& [key, row] : unique) sys.rows.push_back(std::move(row));
  return sys;
}

}  // namespace

RelationSystem generate_relations(const SkeletonPtr& skeleton, int degree,
                                  const RelationOptions& opts) {
  auto classes = enumerate_classes({skeleton, degree, kFilterAll, opts.max_degree});
  std::vector<std::vector<std::pair<std::string, LinearCombination>>> per_class(classes.size());
  const long n = static_cast<long>(classes.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) per_class[i] = rows_for(skeleton, classes[i].canonical.digest);
  return assemble(skeleton, degree, classes, per_class);
}

RelationSystem generate_relations_serial(const SkeletonPtr& skeleton, int degree,
                                         const RelationOptions& opts) {
  auto classes = enumerate_classes_serial({skeleton, degree, kFilterAll, opts.max_degree});
  std::vector<std::vector<std::pair<std::string, LinearCombination>>> per_class(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    per_class[i] = rows_for(skeleton, classes[i].canonical.digest);
  }
  return assemble(skeleton, degree, classes, per_class);
}

std::string serialize_relations(const RelationSystem& sys) {
  std::string out;
  for (const auto& row : sys.rows) {
    out += to_string(row);
    out += '\n';
  }
  return out;
}

}  // namespace jacobi
