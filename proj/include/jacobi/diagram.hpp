#ifndef JACOBI_DIAGRAM_HPP
#define JACOBI_DIAGRAM_HPP

#include <array>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace jacobi {

enum class ComponentKind { interval, circle };

struct SkeletonComponent {
  std::string id;
  ComponentKind kind = ComponentKind::interval;
};

/// The combinatorial shadow of a tangle: an ordered list of interval and
/// circle components. Leg orders live on the diagrams drawn on it.
class Skeleton {
 public:
  Skeleton() = default;
  Skeleton(std::string name, std::vector<SkeletonComponent> components);

  /// Builds an anonymous skeleton from a shape string such as
  /// "interval" or "interval,circle". Component ids are c1, c2, ...
  static Skeleton from_shape(std::string_view shape);

  const std::string& name() const { return name_; }
  const std::vector<SkeletonComponent>& components() const { return components_; }
  int size() const { return static_cast<int>(components_.size()); }
  ComponentKind kind(int c) const { return components_[c].kind; }
  int index_of(std::string_view id) const;

  bool same_shape(const Skeleton& other) const;
  std::string shape() const;

 private:
  std::string name_;
  std::vector<SkeletonComponent> components_;
};

using SkeletonPtr = std::shared_ptr<const Skeleton>;

SkeletonPtr make_skeleton(std::string_view shape);

/// Raw integer form of a diagram. Half-edges are 0..H-1; each is either a
/// leg (listed in exactly one component's slot order) or one entry of a
/// vertex triple. `partner` is the edge matching.
struct DiagramParts {
  SkeletonPtr skeleton;
  std::vector<std::vector<int>> legs;
  std::vector<std::array<int, 3>> vertices;
  std::vector<int> partner;
  /// Optional tokens; empty means synthesized names.
  std::vector<std::string> names;
  std::vector<std::string> vertex_names;
};

/// A validated unitrivalent diagram on a skeleton. Immutable.
class Diagram {
 public:
  /// Validates the parts; throws jacobi::Error on any invariant violation.
  static Diagram from_parts(DiagramParts parts);

  const Skeleton& skeleton() const { return *parts_.skeleton; }
  const SkeletonPtr& skeleton_ptr() const { return parts_.skeleton; }
  const DiagramParts& parts() const { return parts_; }

  int half_edge_count() const { return static_cast<int>(parts_.partner.size()); }
  int leg_count() const { return leg_count_; }
  int vertex_count() const { return static_cast<int>(parts_.vertices.size()); }

  const std::vector<std::vector<int>>& legs() const { return parts_.legs; }
  const std::vector<std::array<int, 3>>& vertices() const { return parts_.vertices; }
  const std::array<int, 3>& vertex(int v) const { return parts_.vertices[v]; }
  int partner(int h) const { return parts_.partner[h]; }

  bool is_leg(int h) const { return vertex_of_[h] < 0; }
  /// Vertex owning half-edge h, or -1 for legs.
  int vertex_of(int h) const { return vertex_of_[h]; }
  /// Position of h inside its vertex triple (0..2), or -1 for legs.
  int position_in_vertex(int h) const { return position_[h]; }
  int leg_component(int h) const { return leg_component_[h]; }
  int leg_slot(int h) const { return leg_slot_[h]; }

  std::string name(int h) const;
  std::string vertex_name(int v) const;
  /// Half-edge with the given token, or -1.
  int find(std::string_view token) const;

  /// Legs in global slot order (component order, then slot order).
  std::vector<int> legs_in_slot_order() const;

 private:
  explicit Diagram(DiagramParts parts);

  DiagramParts parts_;
  int leg_count_ = 0;
  std::vector<int> vertex_of_;
  std::vector<int> position_;
  std::vector<int> leg_component_;
  std::vector<int> leg_slot_;
};

// Token-level construction, as read from text.
struct LegSpec {
  std::string name;
  std::string component;
};
struct VertexSpec {
  std::string name;
  std::vector<std::string> half_edges;
};
struct EdgeSpec {
  std::string a;
  std::string b;
};

Diagram build_diagram(SkeletonPtr skeleton, const std::vector<LegSpec>& legs,
                      const std::vector<VertexSpec>& vertices,
                      const std::vector<EdgeSpec>& edges);

/// An isomorphic copy with shuffled half-edge ids and vertex order, each
/// triple rotated cyclically and each circle's slots rotated. Names dropped.
Diagram relabeled(const Diagram& d, std::mt19937_64& rng);

int degree(const Diagram& d);
int edge_count(const Diagram& d);
/// Edges with both ends on internal vertices (loops included).
int internal_edge_count(const Diagram& d);
/// Cycle rank of the internal graph.
int betti(const Diagram& d);
bool is_tree_diagram(const Diagram& d);

/// Connected components of the internal graph, with each leg assigned to the
/// component of the vertex it touches and each chord forming its own
/// component.
struct ComponentPartition {
  int count = 0;
  std::vector<int> of_half_edge;  // component id per half-edge
  std::vector<int> of_vertex;     // component id per vertex
};

ComponentPartition component_partition(const Diagram& d);
std::vector<Diagram> internal_components(const Diagram& d);
/// The diagram consisting of one component only (other legs dropped).
Diagram restrict_to_component(const Diagram& d, const ComponentPartition& parts, int component);
bool is_connected(const Diagram& d);
bool has_legless_component(const Diagram& d);

/// Degree of a single component: (legs + vertices) / 2 within it.
int component_degree(const Diagram& d, const ComponentPartition& parts, int component);

}  // namespace jacobi

#endif  // JACOBI_DIAGRAM_HPP
