#ifndef CUSP_SHAPE_HPP
#define CUSP_SHAPE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cusp/errors.hpp"

namespace cusp {

/// Combinatorial signature (m, p-bar, q-bar, r, s) of a splitting interval
/// algebra: matrix size m, with endpoint block sizes p_1..p_r at 0 and
/// q_1..q_s at 1, where sum p_i = sum q_j = m.
struct Shape {
  std::int64_t m = 1;
  std::vector<std::int64_t> p{1};
  std::vector<std::int64_t> q{1};

  std::size_t r() const { return p.size(); }
  std::size_t s() const { return q.size(); }

  friend bool operator==(const Shape& a, const Shape& b) {
    return a.m == b.m && a.p == b.p && a.q == b.q;
  }
  friend bool operator!=(const Shape& a, const Shape& b) { return !(a == b); }

  std::string str() const;
};

/// Validates and returns a Shape. Throws SumMismatch when the block sizes
/// do not add up to m, IndexOutOfRange on empty or non-positive data.
Shape make_shape(std::int64_t m, std::vector<std::int64_t> p, std::vector<std::int64_t> q);

/// The shape of M_m(C[0,1]) seen as a splitting interval algebra (r = s = 1).
Shape interval_shape(std::int64_t m);

}  // namespace cusp

#endif
