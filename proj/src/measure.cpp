#include "besovtree/measure.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace besovtree {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;  // fmod rounding at the seam
  return t;
}

// Level of the box whose radial band holds 1-|z| = t, before leaf clamping.
int radial_level(double t) {
  int e;
  std::frexp(t, &e);  // t = m * 2^e, m in [0.5, 1)
  return e >= 1 ? 0 : -e;
}

// Position within level n whose half-open arc holds theta in [0, 2pi).
std::uint64_t angular_position(double theta, int n) {
  const double u = theta / kTwoPi;
  auto k = static_cast<std::uint64_t>(u * std::ldexp(1.0, n));
  const std::uint64_t last = (std::uint64_t{1} << n) - 1;
  if (k > last) k = last;
  return k + 1;
}

double parse_number(const std::string& tok, int line) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || tok.empty())
    throw ParseError("malformed number '" + tok + "'", line);
  if (!std::isfinite(v)) throw ParseError("non-finite number", line);
  return v;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

double MeasureSpec::total_mass() const {
  double total = boundary_uniform_total;
  for (const auto& a : interior_atoms) total += a.mass;
  for (const auto& a : boundary_atoms) total += a.mass;
  // integral of c (1-r^2)^b over the disc in normalized area
  for (const auto& d : interior_densities) total += d.c / (d.b + 1.0);
  return total;
}

MeasureSpec parse_measure_spec(std::string_view text) {
  MeasureSpec spec;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos)
      raw.resize(hash);
    const std::string body = trim(raw);
    if (body.empty()) continue;

    if (const auto eq = body.find('='); eq != std::string::npos) {
      const std::string key = trim(body.substr(0, eq));
      const std::string val = trim(body.substr(eq + 1));
      if (key == "depth") {
        const double d = parse_number(val, line);
        if (d != std::floor(d) || d < 0)
          throw ParseError("depth must be a nonnegative integer", line);
        spec.depth = static_cast<int>(d);
      } else if (key == "name") {
        spec.name = val;
      } else {
        throw ParseError("unrecognized key '" + key + "'", line);
      }
      continue;
    }

    std::istringstream rec(body);
    std::string kw;
    rec >> kw;
    std::vector<std::string> toks;
    for (std::string t; rec >> t;) toks.push_back(t);

    if (kw == "interior_atom") {
      if (toks.size() != 3) throw ParseError("interior_atom wants <re> <im> <mass>", line);
      const std::complex<double> z(parse_number(toks[0], line),
                                   parse_number(toks[1], line));
      const double mass = parse_number(toks[2], line);
      if (std::abs(z) >= 1.0)
        throw ParseError("interior atom outside the open disc", line);
      if (mass < 0) throw ParseError("negative mass", line);
      spec.interior_atoms.push_back({z, mass});
    } else if (kw == "boundary_atom") {
      if (toks.size() != 2) throw ParseError("boundary_atom wants <theta> <mass>", line);
      const double theta = parse_number(toks[0], line);
      const double mass = parse_number(toks[1], line);
      if (mass < 0) throw ParseError("negative mass", line);
      spec.boundary_atoms.push_back({reduce_angle(theta), mass});
    } else if (kw == "boundary_density") {
      if (toks.size() != 2 || toks[0] != "uniform")
        throw ParseError("boundary_density wants 'uniform <total_mass>'", line);
      const double total = parse_number(toks[1], line);
      if (total < 0) throw ParseError("negative mass", line);
      spec.boundary_uniform_total += total;
    } else if (kw == "interior_density") {
      if (toks.size() != 3 || toks[0] != "power")
        throw ParseError("interior_density wants 'power <b> <c>'", line);
      const double b = parse_number(toks[1], line);
      const double c = parse_number(toks[2], line);
      if (b <= -1.0) throw ParseError("density exponent must exceed -1", line);
      if (c < 0) throw ParseError("negative mass", line);
      spec.interior_densities.push_back({b, c});
    } else {
      throw ParseError("unrecognized record '" + kw + "'", line);
    }
  }
  return spec;
}

TreeMeasure::TreeMeasure(const Tree& tree, std::vector<double> interior,
                         std::vector<double> boundary)
    : tree_(&tree),
      interior_(std::move(interior)),
      boundary_(std::move(boundary)) {
  const std::size_t n = tree.size();
  if (boundary_.empty()) boundary_.assign(n, 0.0);
  if (interior_.size() != n || boundary_.size() != n)
    throw std::invalid_argument("mass arrays must match the tree size");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(interior_[i] >= 0) || !(boundary_[i] >= 0) ||
        !std::isfinite(interior_[i]) || !std::isfinite(boundary_[i]))
      throw std::invalid_argument("masses must be finite and nonnegative");
    if (boundary_[i] != 0.0 && !tree.is_leaf(static_cast<NodeId>(i)))
      throw std::invalid_argument("boundary mass off a leaf");
  }
  subtree_.assign(n, 0.0);
  const auto& order = tree.level_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    double s = interior_[v] + boundary_[v];
    for (const NodeId c : tree.children(v)) s += subtree_[c];
    subtree_[v] = s;
  }
}

TreeMeasure set_masses(const Tree& tree, std::vector<double> interior,
                       std::vector<double> boundary) {
  return TreeMeasure(tree, std::move(interior), std::move(boundary));
}

NodeId locate_point(const Tree& tree, std::complex<double> z) {
  if (tree.kind() != TreeKind::dyadic)
    throw UnsupportedOperation("point location requires a dyadic tree");
  if (std::abs(z) >= 1.0)
    throw std::domain_error("point outside the open disc");
  const int n = std::min(radial_level(1.0 - std::abs(z)), tree.depth_limit());
  const double theta = reduce_angle(std::arg(z));
  return tree.node_at(n, angular_position(theta, n));
}

TreeMeasure pull_back(const MeasureSpec& spec, const Tree& tree) {
  if (tree.kind() != TreeKind::dyadic)
    throw UnsupportedOperation("pull back requires a dyadic tree");
  const int D = tree.depth_limit();
  const std::size_t n = tree.size();
  std::vector<double> interior(n, 0.0), boundary(n, 0.0);
  std::vector<MeasureAtom> atoms;
  std::uint64_t deep = 0;

  for (const auto& a : spec.interior_atoms) {
    if (std::abs(a.z) >= 1.0)
      throw std::domain_error("interior atom outside the open disc");
    if (radial_level(1.0 - std::abs(a.z)) > D) ++deep;
    const NodeId v = locate_point(tree, a.z);
    interior[v] += a.mass;
    atoms.push_back({a.z, a.mass, v, false});
  }

  for (const auto& a : spec.boundary_atoms) {
    const double theta = reduce_angle(a.theta);
    const NodeId v = tree.node_at(D, angular_position(theta, D));
    boundary[v] += a.mass;
    atoms.push_back({std::polar(1.0, theta), a.mass, v, true});
  }

  if (spec.boundary_uniform_total > 0.0) {
    const double per = std::ldexp(spec.boundary_uniform_total, -D);
    for (const NodeId v : tree.leaves()) {
      boundary[v] += per;
      const Arc arc = boundary_arc(tree, v);
      atoms.push_back(
          {std::polar(1.0, 0.5 * (arc.theta_lo + arc.theta_hi)), per, v, true});
    }
  }

  // Power densities: the radial integral has an elementary antiderivative,
  //   int_box c (1-r^2)^b r dr dtheta / pi
  //     = c 2^-n [(1-r_lo^2)^(b+1) - (1-r_hi^2)^(b+1)] / (b+1),
  // so box masses are exact and subtree sums telescope to the exact total.
  // The annulus below the leaf level goes to the leaf over the same sector.
  for (const auto& d : spec.interior_densities) {
    if (d.c == 0.0) continue;
    for (NodeId v = 0; v < n; ++v) {
      const Box box = box_geometry(tree, v);
      const auto [lvl, m] = tree.level_position(v);
      (void)m;
      const double u_hi = 1.0 - box.r_lo * box.r_lo;   // at the inner radius
      const double u_lo = 1.0 - box.r_hi * box.r_hi;
      double mass = std::ldexp(1.0, -lvl) * d.c *
                    (std::pow(u_hi, d.b + 1.0) - std::pow(u_lo, d.b + 1.0)) /
                    (d.b + 1.0);
      if (tree.is_leaf(v))  // residual annulus 1-|z| < 2^-(D+1)
        mass += std::ldexp(1.0, -lvl) * d.c * std::pow(u_lo, d.b + 1.0) /
                (d.b + 1.0);
      interior[v] += mass;
      const double rc = 0.5 * (box.r_lo + box.r_hi);
      const double tc = 0.5 * (box.theta_lo + box.theta_hi);
      atoms.push_back({std::polar(rc, tc), mass, v, false});
    }
  }

  TreeMeasure tm(tree, std::move(interior), std::move(boundary));
  tm.atoms_ = std::move(atoms);
  tm.has_atoms_ = true;
  tm.deep_atom_count_ = deep;
  return tm;
}

}  // namespace besovtree
