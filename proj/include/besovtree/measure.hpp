#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "besovtree/tree.hpp"

namespace besovtree {

struct ParseError : std::runtime_error {
  int line;
  ParseError(const std::string& msg, int line_no)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
        line(line_no) {}
};

// Measure on the closed disc: point masses plus the built-in density
// families. Text format, one record per line, '#' starts a comment:
//   depth = <int>                      (optional default tree depth)
//   name = <string>                    (optional)
//   interior_atom <re> <im> <mass>
//   boundary_atom <theta> <mass>
//   boundary_density uniform <total_mass>
//   interior_density power <b> <c>     (density c (1-|z|^2)^b dA, dA = dx dy / pi)
struct MeasureSpec {
  struct InteriorAtom {
    std::complex<double> z;
    double mass;
  };
  struct BoundaryAtom {
    double theta;  // stored reduced to [0, 2pi)
    double mass;
  };
  struct PowerDensity {
    double b;  // exponent, > -1
    double c;  // scale, >= 0
  };

  std::vector<InteriorAtom> interior_atoms;
  std::vector<BoundaryAtom> boundary_atoms;
  double boundary_uniform_total = 0.0;
  std::vector<PowerDensity> interior_densities;
  std::optional<int> depth;
  std::string name;

  double total_mass() const;
};

MeasureSpec parse_measure_spec(std::string_view text);

// Representative point retained for the kernel transform; node is the box
// the mass landed in.
struct MeasureAtom {
  std::complex<double> position;
  double mass;
  NodeId node;
  bool on_boundary;
};

// Measure pulled back to a tree: interior mass per node, boundary mass per
// leaf (leaves proxy their boundary arcs). Subtree masses mu(S-bar(alpha))
// cover the node's whole successor set including the boundary part.
// Immutable once built.
class TreeMeasure {
 public:
  TreeMeasure(const Tree& tree, std::vector<double> interior,
              std::vector<double> boundary);

  const Tree& tree() const { return *tree_; }
  double interior_mass(NodeId v) const { return interior_[v]; }
  double boundary_mass(NodeId v) const { return boundary_[v]; }
  double subtree_mass(NodeId v) const { return subtree_[v]; }
  const std::vector<double>& interior_masses() const { return interior_; }
  const std::vector<double>& boundary_masses() const { return boundary_; }
  const std::vector<double>& subtree_masses() const { return subtree_; }
  double total_mass() const { return subtree_[0]; }

  // Atomic representation, present when built by pull_back.
  bool has_atoms() const { return has_atoms_; }
  const std::vector<MeasureAtom>& atoms() const { return atoms_; }

  // Interior atoms that fell below the leaf level and were attached to the
  // containing depth-D leaf.
  std::uint64_t deep_atom_count() const { return deep_atom_count_; }

 private:
  friend TreeMeasure pull_back(const MeasureSpec& spec, const Tree& tree);

  const Tree* tree_;
  std::vector<double> interior_, boundary_, subtree_;
  std::vector<MeasureAtom> atoms_;
  bool has_atoms_ = false;
  std::uint64_t deep_atom_count_ = 0;
};

// Distribute the spec's mass over the boxes of a dyadic tree. Point
// location is half-open so each atom lands in exactly one box; interior
// atoms deeper than the leaf level attach to the containing leaf (counted);
// density mass below the leaf level is attached to the leaf over the same
// sector, so subtree masses are exact for every retained node.
TreeMeasure pull_back(const MeasureSpec& spec, const Tree& tree);

// Explicit masses, any tree. boundary may be empty (all zero); nonzero
// boundary mass off a leaf is rejected.
TreeMeasure set_masses(const Tree& tree, std::vector<double> interior,
                       std::vector<double> boundary = {});

// Box containing z (|z| < 1), by the half-open convention; depths below
// the leaf level clamp to the containing leaf.
NodeId locate_point(const Tree& tree, std::complex<double> z);

}  // namespace besovtree
