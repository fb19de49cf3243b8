#include "besovtree/tree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace besovtree {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::pair<int, std::uint64_t> Tree::level_position(NodeId v) const {
  if (kind_ != TreeKind::dyadic)
    throw UnsupportedOperation("level position requires a dyadic tree");
  check_node(v);
  const std::uint64_t h = v + 1;  // heap rank, 1-based
  const int n = std::bit_width(h) - 1;
  return {n, h - (std::uint64_t{1} << n) + 1};
}

NodeId Tree::node_at(int n, std::uint64_t m) const {
  if (kind_ != TreeKind::dyadic)
    throw UnsupportedOperation("level position requires a dyadic tree");
  if (n < 0 || n > depth_limit_ || m < 1 || m > (std::uint64_t{1} << n))
    throw std::invalid_argument("level position out of range");
  return static_cast<NodeId>((std::uint64_t{1} << n) - 1 + (m - 1));
}

Tree build_dyadic_tree(int depth, int max_depth) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  if (depth > max_depth || depth > 30)
    throw std::length_error("dyadic depth exceeds the configured maximum");

  Tree t;
  t.kind_ = TreeKind::dyadic;
  t.depth_limit_ = depth;
  const std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
  const std::size_t internal = (std::size_t{1} << depth) - 1;

  t.parent_.resize(n);
  t.depth_.resize(n);
  t.child_start_.resize(n + 1);
  t.child_list_.resize(n - 1);
  t.level_order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.parent_[i] = i == 0 ? -1 : static_cast<std::int32_t>((i - 1) / 2);
    t.depth_[i] = std::bit_width(std::uint64_t{i + 1}) - 1;
    t.level_order_[i] = static_cast<NodeId>(i);
    t.child_start_[i] = static_cast<std::uint32_t>(std::min(2 * i, n - 1));
  }
  t.child_start_[n] = static_cast<std::uint32_t>(n - 1);
  for (std::size_t i = 0; i < internal; ++i) {
    t.child_list_[2 * i] = static_cast<NodeId>(2 * i + 1);
    t.child_list_[2 * i + 1] = static_cast<NodeId>(2 * i + 2);
  }
  t.leaves_.resize(n - internal);
  for (std::size_t i = internal; i < n; ++i)
    t.leaves_[i - internal] = static_cast<NodeId>(i);
  return t;
}

Tree build_abstract_tree(const std::vector<std::int32_t>& parents) {
  std::vector<std::int32_t> par = parents;
  if (par.empty()) par.push_back(-1);
  const std::size_t n = par.size();
  if (par[0] != -1)
    throw std::invalid_argument("node 0 must be the root (parent -1)");
  for (std::size_t i = 1; i < n; ++i) {
    if (par[i] < 0 || static_cast<std::size_t>(par[i]) >= n)
      throw std::invalid_argument("parent index out of range");
    if (static_cast<std::size_t>(par[i]) == i)
      throw std::invalid_argument("parent list contains a cycle");
  }

  Tree t;
  t.kind_ = TreeKind::abstract_tree;
  t.parent_ = std::move(par);
  t.depth_.assign(n, -1);
  t.depth_[0] = 0;
  std::vector<NodeId> stack;
  for (std::size_t i = 1; i < n; ++i) {
    if (t.depth_[i] >= 0) continue;
    stack.clear();
    NodeId v = static_cast<NodeId>(i);
    while (t.depth_[v] < 0) {
      stack.push_back(v);
      if (stack.size() > n)
        throw std::invalid_argument("parent list contains a cycle");
      v = static_cast<NodeId>(t.parent_[v]);
    }
    int d = t.depth_[v];
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      t.depth_[*it] = ++d;
  }
  t.depth_limit_ = *std::max_element(t.depth_.begin(), t.depth_.end());

  // children grouped per parent, insertion (index) order
  t.child_start_.assign(n + 1, 0);
  for (std::size_t i = 1; i < n; ++i) ++t.child_start_[t.parent_[i] + 1];
  for (std::size_t i = 0; i < n; ++i) t.child_start_[i + 1] += t.child_start_[i];
  t.child_list_.resize(n - 1);
  std::vector<std::uint32_t> cursor(t.child_start_.begin(),
                                    t.child_start_.end() - 1);
  for (std::size_t i = 1; i < n; ++i)
    t.child_list_[cursor[t.parent_[i]]++] = static_cast<NodeId>(i);

  for (std::size_t i = 0; i < n; ++i)
    if (t.is_leaf(static_cast<NodeId>(i)))
      t.leaves_.push_back(static_cast<NodeId>(i));

  t.level_order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.level_order_[i] = static_cast<NodeId>(i);
  std::stable_sort(t.level_order_.begin(), t.level_order_.end(),
                   [&](NodeId a, NodeId b) { return t.depth_[a] < t.depth_[b]; });
  return t;
}

Box box_geometry(const Tree& t, NodeId v) {
  if (t.kind() != TreeKind::dyadic)
    throw UnsupportedOperation("box geometry requires a dyadic tree");
  auto [n, m] = t.level_position(v);
  Box b;
  b.r_lo = 1.0 - std::ldexp(1.0, -n);
  b.r_hi = 1.0 - std::ldexp(1.0, -n - 1);
  const double w = std::ldexp(1.0, -n);
  b.theta_lo = kTwoPi * static_cast<double>(m - 1) * w;
  b.theta_hi = kTwoPi * static_cast<double>(m) * w;
  return b;
}

Arc boundary_arc(const Tree& t, NodeId v) {
  if (t.kind() != TreeKind::dyadic)
    throw UnsupportedOperation("boundary arc requires a dyadic tree");
  auto [n, m] = t.level_position(v);
  const double w = std::ldexp(1.0, -n);
  return {kTwoPi * static_cast<double>(m - 1) * w,
          kTwoPi * static_cast<double>(m) * w};
}

std::vector<NodeId> geodesic(const Tree& t, NodeId a, NodeId b) {
  t.check_node(a);
  t.check_node(b);
  std::vector<NodeId> up_a{a}, up_b{b};
  while (t.depth(up_a.back()) > t.depth(up_b.back()))
    up_a.push_back(static_cast<NodeId>(t.parent(up_a.back())));
  while (t.depth(up_b.back()) > t.depth(up_a.back()))
    up_b.push_back(static_cast<NodeId>(t.parent(up_b.back())));
  while (up_a.back() != up_b.back()) {
    up_a.push_back(static_cast<NodeId>(t.parent(up_a.back())));
    up_b.push_back(static_cast<NodeId>(t.parent(up_b.back())));
  }
  up_a.insert(up_a.end(), up_b.rbegin() + 1, up_b.rend());
  return up_a;
}

int tree_distance(const Tree& t, NodeId a, NodeId b) {
  return static_cast<int>(geodesic(t, a, b).size()) - 1;
}

bool is_ancestor(const Tree& t, NodeId a, NodeId b) {
  t.check_node(a);
  t.check_node(b);
  const int da = t.depth(a), db = t.depth(b);
  if (da > db) return false;
  if (t.kind() == TreeKind::dyadic)
    return ((std::uint64_t{b} + 1) >> (db - da)) == std::uint64_t{a} + 1;
  NodeId v = b;
  for (int d = db; d > da; --d) v = static_cast<NodeId>(t.parent(v));
  return v == a;
}

}  // namespace besovtree
