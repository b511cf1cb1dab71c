#include "cusp/eigen_function.hpp"

#include <algorithm>
#include <sstream>

#include "cusp/errors.hpp"

namespace cusp {

EigenFunction::EigenFunction(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2 || nodes_.front().t != 0 || nodes_.back().t != 1)
    fail(Errc::ParseError, "eigenvalue function must have nodes spanning [0,1]");
  for (std::size_t k = 0; k + 1 < nodes_.size(); ++k)
    if (!(nodes_[k].t < nodes_[k + 1].t))
      fail(Errc::ParseError, "eigenvalue function nodes must strictly increase");
  for (const auto& n : nodes_)
    if (n.v < 0 || n.v > 1) fail(Errc::ParseError, "eigenvalue function values must lie in [0,1]");
  // Drop interior nodes that sit on the segment through their neighbors.
  std::vector<Node> out{nodes_.front()};
  for (std::size_t k = 1; k + 1 < nodes_.size(); ++k) {
    const Node& a = out.back();
    const Node& b = nodes_[k];
    const Node& c = nodes_[k + 1];
    if ((b.v - a.v) * (c.t - b.t) == (c.v - b.v) * (b.t - a.t)) continue;
    out.push_back(b);
  }
  out.push_back(nodes_.back());
  nodes_ = std::move(out);
}

EigenFunction EigenFunction::constant(const Rat& v) {
  return EigenFunction({{Rat(0), v}, {Rat(1), v}});
}

EigenFunction EigenFunction::identity() {
  return EigenFunction({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}});
}

Rat EigenFunction::operator()(const Rat& t) const {
  if (t < 0 || t > 1) fail(Errc::IndexOutOfRange, "eigenvalue function argument");
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t,
                             [](const Node& n, const Rat& x) { return n.t < x; });
  if (it != nodes_.end() && it->t == t) return it->v;
  const Node& hi = *it;
  const Node& lo = *(it - 1);
  return lo.v + (t - lo.t) * (hi.v - lo.v) / (hi.t - lo.t);
}

std::string EigenFunction::str() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (k) os << " ";
    os << "(" << rat_to_string(nodes_[k].t) << "," << rat_to_string(nodes_[k].v) << ")";
  }
  return os.str();
}

std::vector<Rat> merged_nodes(const EigenFunction& f, const EigenFunction& g) {
  std::vector<Rat> ts;
  for (const auto& n : f.nodes()) ts.push_back(n.t);
  for (const auto& n : g.nodes()) ts.push_back(n.t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

bool pointwise_leq(const EigenFunction& f, const EigenFunction& g) {
  for (const Rat& t : merged_nodes(f, g))
    if (f(t) > g(t)) return false;
  return true;
}

Rat sup_distance(const EigenFunction& f, const EigenFunction& g) {
  Rat best(0);
  for (const Rat& t : merged_nodes(f, g)) {
    Rat d = f(t) - g(t);
    if (d < 0) d = -d;
    best = std::max(best, d);
  }
  return best;
}

}  // namespace cusp
