#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace besovtree {

using NodeId = std::uint32_t;

inline constexpr int kMaxDyadicDepth = 20;

// Thrown when an operation needs geometry that only dyadic trees carry.
struct UnsupportedOperation : std::logic_error {
  using std::logic_error::logic_error;
};

enum class TreeKind { dyadic, abstract_tree };

// Polar box {z : r_lo <= |z| <= r_hi, theta_lo <= arg z <= theta_hi}.
// Reported closed; point location elsewhere uses half-open intervals so
// every point of the disc lands in exactly one box.
struct Box {
  double r_lo = 0, r_hi = 0;
  double theta_lo = 0, theta_hi = 0;
  double area() const {  // Euclidean area
    return 0.5 * (r_hi * r_hi - r_lo * r_lo) * (theta_hi - theta_lo);
  }
};

// Closed arc [theta_lo, theta_hi] on the unit circle.
struct Arc {
  double theta_lo = 0, theta_hi = 0;
  double length() const { return theta_hi - theta_lo; }
};

// Rooted tree with dense arrays in level-order numbering.
//
// Dyadic trees index the standard polar decomposition of the unit disc:
// the node at level n, position m (1 <= m <= 2^n) is the box
//   {z : 2^-(n+1) <= 1-|z| <= 2^-n,  (m-1)/2^n <= arg(z)/2pi <= m/2^n},
// stored at heap index 2^n - 1 + (m-1), children at 2i+1 and 2i+2
// (positions 2m-1, 2m on level n+1). The root is the full box at level 0;
// the index set admits no other level-0 node. Depth-D nodes are the leaves
// and stand in for boundary points of the untruncated tree; each carries
// the arc of directions through it.
//
// Abstract trees carry arbitrary parent structure for the combinatorial
// operators; they have no geometry. Immutable after construction.
class Tree {
 public:
  TreeKind kind() const { return kind_; }
  std::size_t size() const { return parent_.size(); }
  int depth_limit() const { return depth_limit_; }
  NodeId root() const { return 0; }

  std::int32_t parent(NodeId v) const { return parent_[v]; }
  int depth(NodeId v) const { return depth_[v]; }

  std::span<const NodeId> children(NodeId v) const {
    return {child_list_.data() + child_start_[v],
            child_list_.data() + child_start_[v + 1]};
  }
  bool is_leaf(NodeId v) const {
    return child_start_[v] == child_start_[v + 1];
  }

  const std::vector<NodeId>& leaves() const { return leaves_; }

  // Nodes sorted by (depth, index); top-down sweeps iterate this order,
  // bottom-up sweeps its reverse. Identity for dyadic trees.
  const std::vector<NodeId>& level_order() const { return level_order_; }

  // Dyadic addressing (n, m), 1-based m.
  std::pair<int, std::uint64_t> level_position(NodeId v) const;
  NodeId node_at(int n, std::uint64_t m) const;

  void check_node(NodeId v) const {
    if (v >= size()) throw std::invalid_argument("node id out of range");
  }

 private:
  friend Tree build_dyadic_tree(int depth, int max_depth);
  friend Tree build_abstract_tree(const std::vector<std::int32_t>& parents);

  TreeKind kind_ = TreeKind::dyadic;
  int depth_limit_ = 0;
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> depth_;
  std::vector<std::uint32_t> child_start_;
  std::vector<NodeId> child_list_;
  std::vector<NodeId> leaves_;
  std::vector<NodeId> level_order_;
};

// Complete binary tree of the given depth over the disc decomposition.
// depth > max_depth (default 20) throws std::length_error.
Tree build_dyadic_tree(int depth, int max_depth = kMaxDyadicDepth);

// parents[i] is the parent index of node i, -1 for the root, which must sit
// at index 0. An empty list yields the 1-node tree. Cycles, out-of-range
// parents or a misplaced root throw std::invalid_argument.
Tree build_abstract_tree(const std::vector<std::int32_t>& parents);

Box box_geometry(const Tree& t, NodeId v);    // dyadic only
Arc boundary_arc(const Tree& t, NodeId v);    // dyadic only

// Unique path [a, ..., b] through the common ancestor.
std::vector<NodeId> geodesic(const Tree& t, NodeId a, NodeId b);
int tree_distance(const Tree& t, NodeId a, NodeId b);

// Reflexive partial order: a lies on the root-to-b path.
bool is_ancestor(const Tree& t, NodeId a, NodeId b);

}  // namespace besovtree
