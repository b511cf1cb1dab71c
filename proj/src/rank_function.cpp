#include "cusp/rank_function.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace cusp {

namespace {

std::vector<Rat> merge_grids(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::vector<Rat> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void require_same_shape(const RankFunction& f, const RankFunction& g) {
  if (f.shape() != g.shape())
    fail(Errc::ShapeMismatch, "operands live over " + f.shape().str() + " and " + g.shape().str());
}

RankFunction zip(const RankFunction& f, const RankFunction& g,
                 const std::function<ExtNat(ExtNat, ExtNat)>& op) {
  require_same_shape(f, g);
  auto grid = merge_grids(f.breaks(), g.breaks());
  RankFunction fr = f.refined(grid);
  RankFunction gr = g.refined(grid);
  std::vector<ExtNat> left, right, cells, points;
  for (std::size_t i = 0; i < fr.left().size(); ++i) left.push_back(op(fr.left()[i], gr.left()[i]));
  for (std::size_t j = 0; j < fr.right().size(); ++j)
    right.push_back(op(fr.right()[j], gr.right()[j]));
  for (std::size_t k = 0; k < fr.cells().size(); ++k)
    cells.push_back(op(fr.cells()[k], gr.cells()[k]));
  for (std::size_t k = 0; k < fr.points().size(); ++k)
    points.push_back(op(fr.points()[k], gr.points()[k]));
  return RankFunction(f.shape(), std::move(left), std::move(right), grid, std::move(cells),
                      std::move(points));
}

}  // namespace

RankFunction::RankFunction(Shape shape, std::vector<ExtNat> left, std::vector<ExtNat> right,
                           std::vector<Rat> breaks, std::vector<ExtNat> cells,
                           std::vector<ExtNat> points)
    : shape_(std::move(shape)),
      left_(std::move(left)),
      right_(std::move(right)),
      breaks_(std::move(breaks)),
      cells_(std::move(cells)),
      points_(std::move(points)) {
  if (left_.size() != shape_.r() || right_.size() != shape_.s())
    fail(Errc::ShapeMismatch, "endpoint value lists do not match the shape");
  if (breaks_.size() < 2 || breaks_.front() != 0 || breaks_.back() != 1)
    fail(Errc::ParseError, "breakpoint grid must run from 0 to 1");
  for (std::size_t k = 0; k + 1 < breaks_.size(); ++k)
    if (!(breaks_[k] < breaks_[k + 1])) fail(Errc::ParseError, "breakpoints must increase");
  if (cells_.size() != breaks_.size() - 1 || points_.size() != cells_.size() - 1)
    fail(Errc::ParseError, "cell/point value lists do not match the grid");
  canonicalize();
}

void RankFunction::canonicalize() {
  std::vector<Rat> nb{breaks_.front()};
  std::vector<ExtNat> nc{cells_.front()};
  std::vector<ExtNat> np;
  for (std::size_t k = 0; k + 1 < cells_.size(); ++k) {
    // Breakpoint between cells k and k+1 is redundant when it changes nothing.
    if (cells_[k] == cells_[k + 1] && points_[k] == cells_[k]) continue;
    nb.push_back(breaks_[k + 1]);
    np.push_back(points_[k]);
    nc.push_back(cells_[k + 1]);
  }
  nb.push_back(breaks_.back());
  breaks_ = std::move(nb);
  cells_ = std::move(nc);
  points_ = std::move(np);
}

RankFunction RankFunction::refined(const std::vector<Rat>& superGrid) const {
  std::vector<ExtNat> cells, points;
  std::size_t old = 0;
  cells.push_back(cells_[0]);
  for (std::size_t k = 1; k + 1 < superGrid.size(); ++k) {
    const Rat& t = superGrid[k];
    while (old + 1 < breaks_.size() && breaks_[old + 1] < t) ++old;
    if (old + 1 < breaks_.size() && breaks_[old + 1] == t) {
      // existing breakpoint
      points.push_back(points_[old]);
      cells.push_back(cells_[old + 1]);
      ++old;
    } else {
      // inserted inside cell `old`
      points.push_back(cells_[old]);
      cells.push_back(cells_[old]);
    }
  }
  RankFunction out = *this;
  out.breaks_ = superGrid;
  out.cells_ = std::move(cells);
  out.points_ = std::move(points);
  return out;  // no canonicalize: keep the requested grid
}

RankFunction RankFunction::zero(const Shape& shape) { return constant(shape, ExtNat(0)); }

RankFunction RankFunction::constant(const Shape& shape, ExtNat value) {
  // A finite nonzero constant over several endpoint blocks would break the
  // boundary inequalities (infinity saturates them); the constants of
  // Cu(M_k) live over shapes with r = s = 1.
  if (!value.is_zero() && !value.is_infinite() && (shape.r() > 1 || shape.s() > 1))
    fail(Errc::ShapeMismatch, "finite nonzero constant needs r = s = 1");
  std::vector<ExtNat> left(shape.r(), value), right(shape.s(), value);
  return RankFunction(shape, std::move(left), std::move(right), {Rat(0), Rat(1)}, {value}, {});
}

RankFunction RankFunction::indicator(const Shape& shape, const LevelSet& set) {
  return from_levels(shape, {set});
}

RankFunction RankFunction::from_levels(const Shape& shape, const std::vector<LevelSet>& levels) {
  std::vector<Rat> grid{Rat(0), Rat(1)};
  for (const auto& ls : levels) {
    if (!is_open(ls, shape)) fail(Errc::NotOpen, "level is not open: " + ls.str());
    for (const auto& iv : ls.intervals()) {
      grid.push_back(iv.a);
      grid.push_back(iv.b);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  auto count_interior = [&](const Rat& t) {
    std::int64_t c = 0;
    for (const auto& ls : levels)
      if (ls.contains_interior(t)) ++c;
    return ExtNat(c);
  };
  std::vector<ExtNat> left(shape.r()), right(shape.s());
  for (std::size_t i = 0; i < shape.r(); ++i) {
    std::int64_t c = 0;
    for (const auto& ls : levels)
      if (ls.contains_left_tag(static_cast<int>(i) + 1)) ++c;
    left[i] = ExtNat(c);
  }
  for (std::size_t j = 0; j < shape.s(); ++j) {
    std::int64_t c = 0;
    for (const auto& ls : levels)
      if (ls.contains_right_tag(static_cast<int>(j) + 1)) ++c;
    right[j] = ExtNat(c);
  }
  std::vector<ExtNat> cells, points;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    Rat mid = (grid[k] + grid[k + 1]) / 2;
    cells.push_back(count_interior(mid));
    if (k + 2 < grid.size()) points.push_back(count_interior(grid[k + 1]));
  }
  return RankFunction(shape, std::move(left), std::move(right), std::move(grid), std::move(cells),
                      std::move(points));
}

RankFunction RankFunction::unit_class(const Shape& shape) {
  std::vector<ExtNat> left, right;
  for (auto v : shape.p) left.push_back(ExtNat(v));
  for (auto v : shape.q) right.push_back(ExtNat(v));
  return RankFunction(shape, std::move(left), std::move(right), {Rat(0), Rat(1)},
                      {ExtNat(shape.m)}, {});
}

ExtNat RankFunction::at_left(int i) const {
  if (i < 1 || i > static_cast<int>(shape_.r())) fail(Errc::IndexOutOfRange, "left tag index");
  return left_[static_cast<std::size_t>(i) - 1];
}

ExtNat RankFunction::at_right(int j) const {
  if (j < 1 || j > static_cast<int>(shape_.s())) fail(Errc::IndexOutOfRange, "right tag index");
  return right_[static_cast<std::size_t>(j) - 1];
}

ExtNat RankFunction::at_interior(const Rat& t) const {
  if (!(Rat(0) < t && t < Rat(1))) fail(Errc::IndexOutOfRange, "interior coordinate");
  auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t);
  std::size_t idx = static_cast<std::size_t>(it - breaks_.begin());
  if (it != breaks_.end() && *it == t) return points_[idx - 1];
  return cells_[idx - 1];
}

ExtNat RankFunction::at_extended(const Rat& t) const {
  if (t == 0) return sum_left();
  if (t == 1) return sum_right();
  return at_interior(t);
}

ExtNat RankFunction::sum_left() const {
  ExtNat s;
  for (auto v : left_) s += v;
  return s;
}

ExtNat RankFunction::sum_right() const {
  ExtNat s;
  for (auto v : right_) s += v;
  return s;
}

bool RankFunction::is_zero() const {
  auto allZero = [](const std::vector<ExtNat>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](ExtNat x) { return x.is_zero(); });
  };
  return allZero(left_) && allZero(right_) && allZero(cells_) && allZero(points_);
}

bool RankFunction::is_constant() const {
  ExtNat v = cells_[0];
  auto eq = [&](const std::vector<ExtNat>& xs) {
    return std::all_of(xs.begin(), xs.end(), [&](ExtNat x) { return x == v; });
  };
  return eq(left_) && eq(right_) && eq(cells_) && eq(points_);
}

bool RankFunction::has_infinite_value() const {
  auto anyInf = [](const std::vector<ExtNat>& xs) {
    return std::any_of(xs.begin(), xs.end(), [](ExtNat x) { return x.is_infinite(); });
  };
  return anyInf(left_) || anyInf(right_) || anyInf(cells_) || anyInf(points_);
}

std::int64_t RankFunction::max_value() const {
  if (has_infinite_value()) fail(Errc::InfiniteValue, "max_value of an infinite rank function");
  std::int64_t m = 0;
  auto upd = [&](const std::vector<ExtNat>& xs) {
    for (auto x : xs) m = std::max(m, x.finite_value());
  };
  upd(left_);
  upd(right_);
  upd(cells_);
  upd(points_);
  return m;
}

LevelSet RankFunction::level_set(std::int64_t n) const {
  ExtNat lvl(n);
  std::vector<int> lt, rt;
  for (std::size_t i = 0; i < left_.size(); ++i)
    if (lvl <= left_[i]) lt.push_back(static_cast<int>(i) + 1);
  for (std::size_t j = 0; j < right_.size(); ++j)
    if (lvl <= right_[j]) rt.push_back(static_cast<int>(j) + 1);
  std::vector<OpenInterval> ivs;
  bool open = false;
  Rat start;
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    if (!(lvl <= cells_[k])) continue;
    if (!open) {
      start = breaks_[k];
      open = true;
    }
    bool joins = k + 1 < cells_.size() && lvl <= points_[k] && lvl <= cells_[k + 1];
    if (!joins) {
      ivs.push_back({start, breaks_[k + 1]});
      open = false;
    }
  }
  return LevelSet(std::move(lt), std::move(ivs), std::move(rt));
}

std::vector<std::string> RankFunction::validate() const {
  std::vector<std::string> bad;
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!(points_[k] <= min(cells_[k], cells_[k + 1])))
      bad.push_back("lower semicontinuity fails at breakpoint " + rat_to_string(breaks_[k + 1]) +
                    ": point value " + points_[k].str() + " exceeds a neighboring cell");
  }
  if (!(sum_left() <= cells_.front()))
    bad.push_back("left boundary condition fails: lim_{t->0} f(t) = " + cells_.front().str() +
                  " < " + sum_left().str() + " = sum of values at the 0_i");
  if (!(sum_right() <= cells_.back()))
    bad.push_back("right boundary condition fails: lim_{t->1} f(t) = " + cells_.back().str() +
                  " < " + sum_right().str() + " = sum of values at the 1_j");
  return bad;
}

RankFunction RankFunction::rebind(const Shape& shape) const {
  if (shape.r() != shape_.r() || shape.s() != shape_.s())
    fail(Errc::ShapeMismatch, "rebind must preserve (r, s)");
  RankFunction out = *this;
  out.shape_ = shape;
  return out;
}

bool operator==(const RankFunction& f, const RankFunction& g) {
  return f.shape_ == g.shape_ && f.left_ == g.left_ && f.right_ == g.right_ &&
         f.breaks_ == g.breaks_ && f.cells_ == g.cells_ && f.points_ == g.points_;
}

std::string RankFunction::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < left_.size(); ++i) os << (i ? "," : "") << left_[i].str();
  os << " |";
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    os << " " << cells_[k].str();
    if (k + 1 < cells_.size())
      os << " (" << rat_to_string(breaks_[k + 1]) << ":" << points_[k].str() << ")";
  }
  os << " | ";
  for (std::size_t j = 0; j < right_.size(); ++j) os << (j ? "," : "") << right_[j].str();
  os << "]";
  return os.str();
}

RankFunction add(const RankFunction& f, const RankFunction& g) {
  return zip(f, g, [](ExtNat a, ExtNat b) { return a + b; });
}

RankFunction scaled(std::int64_t n, const RankFunction& f) {
  if (n < 0) fail(Errc::Internal, "negative scaling");
  std::vector<ExtNat> left, right, cells, points;
  for (auto v : f.left()) left.push_back(scale(n, v));
  for (auto v : f.right()) right.push_back(scale(n, v));
  for (auto v : f.cells()) cells.push_back(scale(n, v));
  for (auto v : f.points()) points.push_back(scale(n, v));
  return RankFunction(f.shape(), std::move(left), std::move(right), f.breaks(), std::move(cells),
                      std::move(points));
}

bool leq(const RankFunction& f, const RankFunction& g) {
  require_same_shape(f, g);
  auto grid = merge_grids(f.breaks(), g.breaks());
  RankFunction fr = f.refined(grid);
  RankFunction gr = g.refined(grid);
  auto le = [](const std::vector<ExtNat>& xs, const std::vector<ExtNat>& ys) {
    for (std::size_t k = 0; k < xs.size(); ++k)
      if (!(xs[k] <= ys[k])) return false;
    return true;
  };
  return le(fr.left(), gr.left()) && le(fr.right(), gr.right()) && le(fr.cells(), gr.cells()) &&
         le(fr.points(), gr.points());
}

RankFunction pointwise_sup(const std::vector<RankFunction>& fs) {
  if (fs.empty()) fail(Errc::IndexOutOfRange, "sup of an empty family");
  RankFunction out = fs.front();
  for (std::size_t k = 1; k < fs.size(); ++k)
    out = zip(out, fs[k], [](ExtNat a, ExtNat b) { return max(a, b); });
  return out;
}

RankFunction checked_sub(const RankFunction& f, const RankFunction& g, Errc onUnderflow) {
  return zip(f, g, [onUnderflow](ExtNat a, ExtNat b) { return a.checked_sub(b, onUnderflow); });
}

bool way_below(const RankFunction& f, const RankFunction& g) {
  require_same_shape(f, g);
  if (f.has_infinite_value()) return false;
  // Endpoint values compare directly: tags survive every member of the
  // canonical shrinking sequence.
  for (int i = 1; i <= static_cast<int>(f.shape().r()); ++i)
    if (!(f.at_left(i) <= g.at_left(i))) return false;
  for (int j = 1; j <= static_cast<int>(f.shape().s()); ++j)
    if (!(f.at_right(j) <= g.at_right(j))) return false;
  // Interior levels need strict containment at every end the shrinking
  // sequence moves. An end running into 0 is pinned for the first
  // sum_i g(0_i) levels: that is how many levels of the decomposition
  // carry a left tag, and the boundary inequality guarantees the interval
  // reaches 0 there. The cap budget is the total over all tags, not the
  // per-level tag sets: increasing sequences lock all endpoint blocks at
  // once.
  ExtNat capLeft = g.sum_left(), capRight = g.sum_right();
  std::int64_t top = f.max_value();
  for (std::int64_t n = 1; n <= top; ++n) {
    LevelSet uf = f.level_set(n);
    LevelSet ug = g.level_set(n);
    for (const auto& iv : uf.intervals()) {
      const OpenInterval* host = nullptr;
      for (const auto& w : ug.intervals())
        if (w.a <= iv.a && iv.b <= w.b) {
          host = &w;
          break;
        }
      if (!host) return false;
      bool leftOk = (host->a == 0 && ExtNat(n) <= capLeft) || iv.a > host->a;
      bool rightOk = (host->b == 1 && ExtNat(n) <= capRight) || iv.b < host->b;
      if (!leftOk || !rightOk) return false;
    }
  }
  return true;
}

bool is_compact(const RankFunction& f) { return way_below(f, f); }

std::optional<std::string> leq_obstruction(const RankFunction& f, const RankFunction& g) {
  require_same_shape(f, g);
  for (int i = 1; i <= static_cast<int>(f.shape().r()); ++i)
    if (!(f.at_left(i) <= g.at_left(i)))
      return "value at 0_" + std::to_string(i) + ": " + f.at_left(i).str() + " > " +
             g.at_left(i).str();
  for (int j = 1; j <= static_cast<int>(f.shape().s()); ++j)
    if (!(f.at_right(j) <= g.at_right(j)))
      return "value at 1_" + std::to_string(j) + ": " + f.at_right(j).str() + " > " +
             g.at_right(j).str();
  auto grid = merge_grids(f.breaks(), g.breaks());
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    Rat mid = (grid[k] + grid[k + 1]) / 2;
    if (!(f.at_interior(mid) <= g.at_interior(mid)))
      return "value at t = " + rat_to_string(mid) + ": " + f.at_interior(mid).str() + " > " +
             g.at_interior(mid).str();
    if (k + 2 < grid.size() && !(f.at_interior(grid[k + 1]) <= g.at_interior(grid[k + 1])))
      return "value at t = " + rat_to_string(grid[k + 1]);
  }
  return std::nullopt;
}

std::optional<std::string> way_below_obstruction(const RankFunction& f, const RankFunction& g) {
  require_same_shape(f, g);
  if (f.has_infinite_value()) return "left side takes the value infinity";
  if (auto bad = leq_obstruction(f, g)) return bad;
  ExtNat capLeft = g.sum_left(), capRight = g.sum_right();
  for (std::int64_t n = 1; n <= f.max_value(); ++n) {
    LevelSet uf = f.level_set(n);
    LevelSet ug = g.level_set(n);
    for (const auto& iv : uf.intervals()) {
      const OpenInterval* host = nullptr;
      for (const auto& w : ug.intervals())
        if (w.a <= iv.a && iv.b <= w.b) host = &w;
      if (!host) return "level " + std::to_string(n) + " is not dominated";
      if (!((host->a == 0 && ExtNat(n) <= capLeft) || iv.a > host->a))
        return "uncapped left end at " + rat_to_string(iv.a) + " (level " + std::to_string(n) +
               ")";
      if (!((host->b == 1 && ExtNat(n) <= capRight) || iv.b < host->b))
        return "uncapped right end at " + rat_to_string(iv.b) + " (level " + std::to_string(n) +
               ")";
    }
  }
  return std::nullopt;
}

RankFunction generator_x(const Shape& shape, int i, int j) {
  if (i < 1 || i > static_cast<int>(shape.r()) || j < 1 || j > static_cast<int>(shape.s()))
    fail(Errc::IndexOutOfRange, "generator x_{i,j} index out of range");
  return RankFunction::indicator(shape, LevelSet({i}, {{Rat(0), Rat(1)}}, {j}));
}

RankFunction generator_y(const Shape& shape, const Rat& t) {
  if (t < 0 || t > 1) fail(Errc::IndexOutOfRange, "generator y_t needs t in [0,1]");
  if (t == 1) return RankFunction::zero(shape);
  return RankFunction::indicator(shape, LevelSet({}, {{t, Rat(1)}}, {1}));
}

std::vector<LevelSet> decompose(const RankFunction& f) {
  if (f.has_infinite_value())
    fail(Errc::InfiniteValue, "decompose needs a finite-valued rank function");
  if (auto bad = f.validate(); !bad.empty())
    fail(Errc::ValidationFailed, "decompose needs a valid rank function: " + bad.front());
  std::int64_t top = f.max_value();
  // Tag schedules: tag 0_i goes to exactly f(0_i) levels, lowest levels
  // first, so tagged levels always reach the endpoint.
  std::vector<int> leftSchedule, rightSchedule;
  for (std::size_t i = 0; i < f.shape().r(); ++i)
    for (std::int64_t c = 0; c < f.at_left(static_cast<int>(i) + 1).finite_value(); ++c)
      leftSchedule.push_back(static_cast<int>(i) + 1);
  for (std::size_t j = 0; j < f.shape().s(); ++j)
    for (std::int64_t c = 0; c < f.at_right(static_cast<int>(j) + 1).finite_value(); ++c)
      rightSchedule.push_back(static_cast<int>(j) + 1);

  std::vector<LevelSet> out;
  for (std::int64_t n = 1; n <= top; ++n) {
    LevelSet interior = f.level_set(n);
    std::vector<int> lt, rt;
    if (n <= static_cast<std::int64_t>(leftSchedule.size()))
      lt.push_back(leftSchedule[static_cast<std::size_t>(n) - 1]);
    if (n <= static_cast<std::int64_t>(rightSchedule.size()))
      rt.push_back(rightSchedule[static_cast<std::size_t>(n) - 1]);
    LevelSet level(std::move(lt), interior.intervals(), std::move(rt));
    if (!is_open(level, f.shape()))
      fail(Errc::Internal, "decomposition produced a non-open level: " + level.str());
    out.push_back(std::move(level));
  }
  return out;
}

namespace {

LevelSet shrink_level(const LevelSet& ls, const Rat& delta) {
  std::vector<OpenInterval> ivs;
  for (const auto& iv : ls.intervals()) {
    Rat a = iv.a, b = iv.b;
    if (!(a == 0 && !ls.left().empty())) a += delta;
    if (!(b == 1 && !ls.right().empty())) b -= delta;
    if (a < b) ivs.push_back({a, b});
  }
  // Tags survive only while their interval does.
  std::vector<int> lt = ls.left(), rt = ls.right();
  if (ivs.empty() || ivs.front().a != 0) lt.clear();
  if (ivs.empty() || ivs.back().b != 1) rt.clear();
  return LevelSet(std::move(lt), std::move(ivs), std::move(rt));
}

}  // namespace

RankFunction approximant(const RankFunction& g, int k) {
  if (g.has_infinite_value())
    fail(Errc::InfiniteValue, "shrinking sequence needs a finite-valued function");
  if (g.max_value() == 0) return RankFunction::zero(g.shape());
  // Shrink the tagged levels of the decomposition, not the raw level sets:
  // the tag schedule is what keeps every member a valid rank function.
  std::vector<LevelSet> levels = decompose(g);
  Rat minLen(1);
  for (const auto& ls : levels)
    for (const auto& iv : ls.intervals()) minLen = std::min(minLen, Rat(iv.b - iv.a));
  // One uniform shrink for all levels keeps their interiors nested.
  Rat delta = minLen / 2;
  for (int i = 0; i < k; ++i) delta /= 2;
  std::vector<LevelSet> shrunk;
  for (const auto& ls : levels) shrunk.push_back(shrink_level(ls, delta));
  return RankFunction::from_levels(g.shape(), shrunk);
}

}  // namespace cusp
