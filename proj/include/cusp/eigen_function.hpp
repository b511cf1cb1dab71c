#ifndef CUSP_EIGEN_FUNCTION_HPP
#define CUSP_EIGEN_FUNCTION_HPP

#include <string>
#include <vector>

#include "cusp/rational.hpp"

namespace cusp {

/// Continuous piecewise-linear map [0,1] -> [0,1] with rational nodes.
/// Collinear interior nodes are dropped, so equality is structural.
class EigenFunction {
public:
  struct Node {
    Rat t, v;
    friend bool operator==(const Node& a, const Node& b) { return a.t == b.t && a.v == b.v; }
  };

  explicit EigenFunction(std::vector<Node> nodes);

  static EigenFunction constant(const Rat& v);
  static EigenFunction identity();

  const std::vector<Node>& nodes() const { return nodes_; }
  Rat operator()(const Rat& t) const;

  friend bool operator==(const EigenFunction& f, const EigenFunction& g) {
    return f.nodes_ == g.nodes_;
  }
  friend bool operator!=(const EigenFunction& f, const EigenFunction& g) { return !(f == g); }

  std::string str() const;

private:
  std::vector<Node> nodes_;
};

/// Merged grid of node abscissae.
std::vector<Rat> merged_nodes(const EigenFunction& f, const EigenFunction& g);

/// f <= g everywhere (checked on the merged node grid; linearity does the rest).
bool pointwise_leq(const EigenFunction& f, const EigenFunction& g);

/// sup_t |f(t) - g(t)|, exact.
Rat sup_distance(const EigenFunction& f, const EigenFunction& g);

}  // namespace cusp

#endif
