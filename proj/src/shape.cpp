#include "cusp/shape.hpp"

#include <numeric>
#include <sstream>

namespace cusp {

std::string Shape::str() const {
  std::ostringstream os;
  os << "S_" << m << "[(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << "),(";
  for (std::size_t j = 0; j < q.size(); ++j) os << (j ? "," : "") << q[j];
  os << ")]";
  return os.str();
}

Shape make_shape(std::int64_t m, std::vector<std::int64_t> p, std::vector<std::int64_t> q) {
  if (m <= 0) fail(Errc::IndexOutOfRange, "matrix size must be positive");
  if (p.empty() || q.empty()) fail(Errc::IndexOutOfRange, "endpoint block lists must be nonempty");
  for (auto v : p)
    if (v <= 0) fail(Errc::IndexOutOfRange, "block sizes must be positive");
  for (auto v : q)
    if (v <= 0) fail(Errc::IndexOutOfRange, "block sizes must be positive");
  auto sp = std::accumulate(p.begin(), p.end(), std::int64_t{0});
  auto sq = std::accumulate(q.begin(), q.end(), std::int64_t{0});
  if (sp != m || sq != m)
    fail(Errc::SumMismatch, "block sizes must sum to m (got " + std::to_string(sp) + " at 0, " +
                                std::to_string(sq) + " at 1, m = " + std::to_string(m) + ")");
  Shape sh;
  sh.m = m;
  sh.p = std::move(p);
  sh.q = std::move(q);
  return sh;
}

Shape interval_shape(std::int64_t m) { return make_shape(m, {m}, {m}); }

}  // namespace cusp
