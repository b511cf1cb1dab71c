#include "cusp/hom.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cusp {

bool leq(const SumElement& a, const SumElement& b) {
  if (a.comps.size() != b.comps.size())
    fail(Errc::ShapeMismatch, "sum elements have different summand counts");
  for (std::size_t c = 0; c < a.comps.size(); ++c)
    if (!leq(a.comps[c], b.comps[c])) return false;
  return true;
}

SumElement add(const SumElement& a, const SumElement& b) {
  if (a.comps.size() != b.comps.size())
    fail(Errc::ShapeMismatch, "sum elements have different summand counts");
  SumElement out;
  for (std::size_t c = 0; c < a.comps.size(); ++c) out.comps.push_back(add(a.comps[c], b.comps[c]));
  return out;
}

bool is_compact(const SumElement& a) {
  return std::all_of(a.comps.begin(), a.comps.end(),
                     [](const RankFunction& f) { return is_compact(f); });
}

bool way_below(const SumElement& a, const SumElement& b) {
  if (a.comps.size() != b.comps.size())
    fail(Errc::ShapeMismatch, "sum elements have different summand counts");
  for (std::size_t c = 0; c < a.comps.size(); ++c)
    if (!way_below(a.comps[c], b.comps[c])) return false;
  return true;
}

SumElement scaled(std::int64_t n, const SumElement& a) {
  SumElement out;
  for (const auto& f : a.comps) out.comps.push_back(scaled(n, f));
  return out;
}

Target Target::sia(Shape sh) {
  Target t;
  t.kind = Kind::Sia;
  t.shape = std::move(sh);
  return t;
}

Target Target::interval_matrix(std::int64_t m) {
  if (m <= 0) fail(Errc::IndexOutOfRange, "matrix size must be positive");
  Target t;
  t.kind = Kind::IntervalMatrix;
  t.m = m;
  t.shape = interval_shape(m);
  return t;
}

Target Target::matrix_sum(std::vector<std::int64_t> sizes) {
  if (sizes.empty()) fail(Errc::IndexOutOfRange, "matrix sum needs at least one summand");
  for (auto k : sizes)
    if (k <= 0) fail(Errc::IndexOutOfRange, "matrix sizes must be positive");
  Target t;
  t.kind = Kind::MatrixSum;
  t.sizes = std::move(sizes);
  return t;
}

std::size_t Target::summand_count() const {
  return kind == Kind::MatrixSum ? sizes.size() : 1;
}

Shape Target::value_shape(std::size_t c) const {
  switch (kind) {
    case Kind::Sia:
      return shape;
    case Kind::IntervalMatrix:
      return interval_shape(m);
    case Kind::MatrixSum:
      if (c >= sizes.size()) fail(Errc::IndexOutOfRange, "summand index");
      return interval_shape(sizes[c]);
  }
  fail(Errc::Internal, "bad target kind");
}

bool Target::constant_summand(std::size_t) const { return kind == Kind::MatrixSum; }

SumElement Target::unit_class() const {
  SumElement u;
  for (std::size_t c = 0; c < summand_count(); ++c) {
    if (kind == Kind::MatrixSum)
      u.comps.push_back(RankFunction::constant(value_shape(c), ExtNat(sizes[c])));
    else
      u.comps.push_back(RankFunction::unit_class(value_shape(c)));
  }
  return u;
}

SumElement Target::zero() const {
  SumElement z;
  for (std::size_t c = 0; c < summand_count(); ++c)
    z.comps.push_back(RankFunction::zero(value_shape(c)));
  return z;
}

bool operator==(const Target& a, const Target& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Target::Kind::Sia:
      return a.shape == b.shape;
    case Target::Kind::IntervalMatrix:
      return a.m == b.m;
    case Target::Kind::MatrixSum:
      return a.sizes == b.sizes;
  }
  return false;
}

std::string Target::str() const {
  switch (kind) {
    case Kind::Sia:
      return shape.str();
    case Kind::IntervalMatrix:
      return "M_" + std::to_string(m) + "(C[0,1])";
    case Kind::MatrixSum: {
      std::string out;
      for (std::size_t c = 0; c < sizes.size(); ++c)
        out += (c ? " + " : "") + ("M_" + std::to_string(sizes[c]));
      return out;
    }
  }
  return "?";
}

std::vector<std::string> validate_value(const SumElement& v, const Target& t) {
  std::vector<std::string> bad;
  if (v.comps.size() != t.summand_count()) {
    bad.push_back("value has " + std::to_string(v.comps.size()) + " components, target has " +
                  std::to_string(t.summand_count()));
    return bad;
  }
  for (std::size_t c = 0; c < v.comps.size(); ++c) {
    if (v.comps[c].shape() != t.value_shape(c))
      bad.push_back("component " + std::to_string(c) + " lives over the wrong shape");
    else {
      for (auto& msg : v.comps[c].validate())
        bad.push_back("component " + std::to_string(c) + ": " + msg);
      if (t.constant_summand(c) && !v.comps[c].is_constant())
        bad.push_back("component " + std::to_string(c) +
                      " must be constant (matrix-algebra summand)");
    }
  }
  return bad;
}

bool operator==(const StandardFormHom& a, const StandardFormHom& b) {
  return a.source == b.source && a.target == b.target && a.unital == b.unital && a.nu == b.nu &&
         a.omega == b.omega && a.lambdas == b.lambdas && a.at0 == b.at0 && a.at1 == b.at1 &&
         a.summands == b.summands;
}

namespace {

std::int64_t tuple_dimension(const Shape& source, const EndpointTuple& t) {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < t.nu.size(); ++i) d += source.p[i] * t.nu[i];
  for (std::size_t j = 0; j < t.omega.size(); ++j) d += source.q[j] * t.omega[j];
  d += static_cast<std::int64_t>(t.lambdas.size()) * source.m;
  return d;
}

void check_tuple(const Shape& source, const EndpointTuple& t, const std::string& where,
                 std::vector<std::string>& bad) {
  if (t.nu.size() != source.r() || t.omega.size() != source.s()) {
    bad.push_back(where + ": multiplicity lists do not match the source shape");
    return;
  }
  for (auto v : t.nu)
    if (v < 0) bad.push_back(where + ": negative nu entry");
  for (auto v : t.omega)
    if (v < 0) bad.push_back(where + ": negative omega entry");
  if (*std::min_element(t.nu.begin(), t.nu.end()) != 0)
    bad.push_back(where + ": no zero nu component (tuple not normalized)");
  if (*std::min_element(t.omega.begin(), t.omega.end()) != 0)
    bad.push_back(where + ": no zero omega component (tuple not normalized)");
  for (std::size_t k = 0; k < t.lambdas.size(); ++k) {
    if (t.lambdas[k] < 0 || t.lambdas[k] > 1) bad.push_back(where + ": eigenvalue outside [0,1]");
    if (k + 1 < t.lambdas.size() && t.lambdas[k] > t.lambdas[k + 1])
      bad.push_back(where + ": eigenvalues not sorted");
  }
}

}  // namespace

EndpointTuple normalize_tuple(std::vector<std::int64_t> nu, std::vector<std::int64_t> omega,
                              std::vector<Rat> lambdas) {
  std::int64_t c0 = *std::min_element(nu.begin(), nu.end());
  std::int64_t c1 = *std::min_element(omega.begin(), omega.end());
  for (auto& v : nu) v -= c0;
  for (auto& v : omega) v -= c1;
  for (std::int64_t k = 0; k < c0; ++k) lambdas.push_back(Rat(0));
  for (std::int64_t k = 0; k < c1; ++k) lambdas.push_back(Rat(1));
  std::sort(lambdas.begin(), lambdas.end());
  return EndpointTuple{std::move(nu), std::move(omega), std::move(lambdas)};
}

EndpointTuple interior_at(const StandardFormHom& h, int side) {
  std::vector<Rat> vals;
  for (const auto& lam : h.lambdas) vals.push_back(lam(Rat(side)));
  return normalize_tuple(h.nu, h.omega, std::move(vals));
}

EndpointTuple aggregate_side(const StandardFormHom& h, int side) {
  const auto& tuples = h.target.kind == Target::Kind::MatrixSum
                           ? h.summands
                           : (side == 0 ? h.at0 : h.at1);
  std::vector<std::int64_t> nu(h.source.r(), 0), omega(h.source.s(), 0);
  std::vector<Rat> lambdas;
  for (const auto& t : tuples) {
    for (std::size_t i = 0; i < t.nu.size(); ++i) nu[i] += t.nu[i];
    for (std::size_t j = 0; j < t.omega.size(); ++j) omega[j] += t.omega[j];
    lambdas.insert(lambdas.end(), t.lambdas.begin(), t.lambdas.end());
  }
  return normalize_tuple(std::move(nu), std::move(omega), std::move(lambdas));
}

std::vector<std::string> validate(const StandardFormHom& h) {
  std::vector<std::string> bad;
  const Shape& A = h.source;
  bool hasInterior = h.target.kind != Target::Kind::MatrixSum;

  if (hasInterior) {
    if (h.nu.size() != A.r() || h.omega.size() != A.s()) {
      bad.push_back("interior multiplicity lists do not match the source shape");
      return bad;
    }
    for (auto v : h.nu)
      if (v < 0) bad.push_back("negative interior nu entry");
    for (auto v : h.omega)
      if (v < 0) bad.push_back("negative interior omega entry");
    if (*std::min_element(h.nu.begin(), h.nu.end()) != 0)
      bad.push_back("no zero nu component (interior data not normalized)");
    if (*std::min_element(h.omega.begin(), h.omega.end()) != 0)
      bad.push_back("no zero omega component (interior data not normalized)");
    for (std::size_t k = 0; k + 1 < h.lambdas.size(); ++k)
      if (!pointwise_leq(h.lambdas[k], h.lambdas[k + 1]))
        bad.push_back("eigenvalue functions are not an increasing chain at index " +
                      std::to_string(k + 1));

    std::int64_t dim = 0;
    for (std::size_t i = 0; i < A.r(); ++i) dim += A.p[i] * h.nu[i];
    for (std::size_t j = 0; j < A.s(); ++j) dim += A.q[j] * h.omega[j];
    dim += static_cast<std::int64_t>(h.mu()) * A.m;
    std::int64_t mTarget =
        h.target.kind == Target::Kind::Sia ? h.target.shape.m : h.target.m;
    if (h.unital ? dim != mTarget : dim > mTarget)
      bad.push_back("dimension identity fails: blocks fill " + std::to_string(dim) + " of " +
                    std::to_string(mTarget));
  }

  if (h.target.kind == Target::Kind::Sia) {
    const Shape& B = h.target.shape;
    if (h.at0.size() != B.r() || h.at1.size() != B.s()) {
      bad.push_back("endpoint tuple lists do not match the target shape");
      return bad;
    }
    for (std::size_t k = 0; k < h.at0.size(); ++k) {
      check_tuple(A, h.at0[k], "tuple at 0_" + std::to_string(k + 1), bad);
      std::int64_t d = tuple_dimension(A, h.at0[k]);
      if (h.unital ? d != B.p[k] : d > B.p[k])
        bad.push_back("dimension identity fails at target endpoint 0_" + std::to_string(k + 1) +
                      ": blocks fill " + std::to_string(d) + " of " + std::to_string(B.p[k]));
    }
    for (std::size_t k = 0; k < h.at1.size(); ++k) {
      check_tuple(A, h.at1[k], "tuple at 1_" + std::to_string(k + 1), bad);
      std::int64_t d = tuple_dimension(A, h.at1[k]);
      if (h.unital ? d != B.q[k] : d > B.q[k])
        bad.push_back("dimension identity fails at target endpoint 1_" + std::to_string(k + 1) +
                      ": blocks fill " + std::to_string(d) + " of " + std::to_string(B.q[k]));
    }
    if (bad.empty()) {
      if (interior_at(h, 0) != aggregate_side(h, 0))
        bad.push_back(
            "boundary compatibility fails at 0: endpoint tuples do not refine the interior data");
      if (interior_at(h, 1) != aggregate_side(h, 1))
        bad.push_back(
            "boundary compatibility fails at 1: endpoint tuples do not refine the interior data");
    }
  } else if (h.target.kind == Target::Kind::MatrixSum) {
    if (h.summands.size() != h.target.sizes.size()) {
      bad.push_back("summand tuple count does not match the target");
      return bad;
    }
    for (std::size_t c = 0; c < h.summands.size(); ++c) {
      check_tuple(A, h.summands[c], "summand " + std::to_string(c), bad);
      std::int64_t d = tuple_dimension(A, h.summands[c]);
      if (h.unital ? d != h.target.sizes[c] : d > h.target.sizes[c])
        bad.push_back("dimension identity fails in summand " + std::to_string(c) +
                      ": blocks fill " + std::to_string(d) + " of " +
                      std::to_string(h.target.sizes[c]));
    }
  }
  return bad;
}

StandardFormHom make_standard_hom(StandardFormHom data) {
  auto bad = validate(data);
  if (!bad.empty()) {
    std::string msg = "standard-form data invalid:";
    for (const auto& b : bad) msg += "\n  - " + b;
    fail(Errc::ValidationFailed, msg);
  }
  return data;
}

namespace {

/// f~ composed with one eigenvalue function, as an Lsc([0,1]) step function
/// (represented over the r = s = 1 interval shape). Breakpoints are the
/// eigenvalue nodes plus the exact crossings with f's grid.
RankFunction compose_step(const EigenFunction& lam, const RankFunction& f) {
  std::vector<Rat> grid;
  for (const auto& n : lam.nodes()) grid.push_back(n.t);
  const auto& ns = lam.nodes();
  for (std::size_t k = 0; k + 1 < ns.size(); ++k) {
    const Rat &t0 = ns[k].t, &v0 = ns[k].v, &t1 = ns[k + 1].t, &v1 = ns[k + 1].v;
    if (v0 == v1) continue;
    Rat lo = std::min(v0, v1), hi = std::max(v0, v1);
    for (const Rat& u : f.breaks()) {
      if (lo < u && u < hi) grid.push_back(t0 + (u - v0) * (t1 - t0) / (v1 - v0));
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  Shape ishape = interval_shape(1);
  std::vector<ExtNat> cells, points;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    Rat mid = (grid[k] + grid[k + 1]) / 2;
    cells.push_back(f.at_extended(lam(mid)));
    if (k + 2 < grid.size()) points.push_back(f.at_extended(lam(grid[k + 1])));
  }
  return RankFunction(ishape, {f.at_extended(lam(Rat(0)))}, {f.at_extended(lam(Rat(1)))},
                      std::move(grid), std::move(cells), std::move(points));
}

ExtNat tuple_value(const EndpointTuple& t, const RankFunction& f) {
  ExtNat out(0);
  for (std::size_t i = 0; i < t.nu.size(); ++i)
    out += scale(t.nu[i], f.at_left(static_cast<int>(i) + 1));
  for (std::size_t j = 0; j < t.omega.size(); ++j)
    out += scale(t.omega[j], f.at_right(static_cast<int>(j) + 1));
  for (const Rat& u : t.lambdas) out += f.at_extended(u);
  return out;
}

/// Interior trace formula as an Lsc([0,1]) value over the interval shape.
RankFunction interior_value(const StandardFormHom& h, const RankFunction& f) {
  ExtNat c(0);
  for (std::size_t i = 0; i < h.nu.size(); ++i)
    c += scale(h.nu[i], f.at_left(static_cast<int>(i) + 1));
  for (std::size_t j = 0; j < h.omega.size(); ++j)
    c += scale(h.omega[j], f.at_right(static_cast<int>(j) + 1));
  RankFunction acc = RankFunction::constant(interval_shape(1), c);
  for (const auto& lam : h.lambdas) acc = add(acc, compose_step(lam, f));
  return acc;
}

}  // namespace

SumElement apply_hom(const StandardFormHom& h, const RankFunction& f) {
  if (f.shape() != h.source)
    fail(Errc::ShapeMismatch, "argument lives over " + f.shape().str() + ", hom expects " +
                                  h.source.str());
  SumElement out;
  switch (h.target.kind) {
    case Target::Kind::IntervalMatrix: {
      out.comps.push_back(interior_value(h, f).rebind(h.target.value_shape(0)));
      return out;
    }
    case Target::Kind::MatrixSum: {
      for (std::size_t c = 0; c < h.summands.size(); ++c)
        out.comps.push_back(
            RankFunction::constant(h.target.value_shape(c), tuple_value(h.summands[c], f)));
      return out;
    }
    case Target::Kind::Sia: {
      RankFunction interior = interior_value(h, f);
      std::vector<ExtNat> lvals, rvals;
      for (const auto& t : h.at0) lvals.push_back(tuple_value(t, f));
      for (const auto& t : h.at1) rvals.push_back(tuple_value(t, f));
      RankFunction g(h.target.shape, std::move(lvals), std::move(rvals), interior.breaks(),
                     interior.cells(), interior.points());
      // Boundary compatibility makes the endpoint sums equal the interior
      // trace at the endpoint, which is what lower semicontinuity needs.
      if (g.sum_left() != interior.at_left(1) || g.sum_right() != interior.at_right(1))
        fail(Errc::Internal, "endpoint tuples disagree with the interior trace (invalid hom?)");
      out.comps.push_back(std::move(g));
      return out;
    }
  }
  fail(Errc::Internal, "bad target kind");
}

PatternDistance eigen_pattern_distance(const StandardFormHom& f, const StandardFormHom& g) {
  if (f.source != g.source || f.target != g.target)
    fail(Errc::ShapeMismatch, "pattern distance needs a common source and target");
  PatternDistance out;
  out.tuplesEqual = f.nu == g.nu && f.omega == g.omega && f.mu() == g.mu() && f.at0 == g.at0 &&
                    f.at1 == g.at1 && f.summands == g.summands;
  if (f.target.kind == Target::Kind::MatrixSum) {
    bool defined = f.summands.size() == g.summands.size();
    if (defined)
      for (std::size_t c = 0; c < f.summands.size(); ++c)
        defined = defined && f.summands[c].lambdas.size() == g.summands[c].lambdas.size();
    if (defined) {
      Rat gap(0);
      for (std::size_t c = 0; c < f.summands.size(); ++c)
        for (std::size_t k = 0; k < f.summands[c].lambdas.size(); ++k) {
          Rat d = f.summands[c].lambdas[k] - g.summands[c].lambdas[k];
          if (d < 0) d = -d;
          gap = std::max(gap, d);
        }
      out.maxGap = gap;
    }
    return out;
  }
  if (f.mu() == g.mu()) {
    Rat gap(0);
    for (std::size_t k = 0; k < f.mu(); ++k)
      gap = std::max(gap, sup_distance(f.lambdas[k], g.lambdas[k]));
    out.maxGap = gap;
  }
  return out;
}

}  // namespace cusp
