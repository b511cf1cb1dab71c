#ifndef CUSP_RANK_FUNCTION_HPP
#define CUSP_RANK_FUNCTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cusp/extnat.hpp"
#include "cusp/level_set.hpp"
#include "cusp/rational.hpp"
#include "cusp/shape.hpp"

namespace cusp {

/// An element of Cu(A) for a splitting interval algebra A, represented as a
/// lower semicontinuous step function on sp(A) with values in N u {inf}:
/// values at the split endpoints, a rational breakpoint grid on [0,1] with a
/// value on each open cell, and an explicit value at each interior
/// breakpoint. The two boundary inequalities
///   lim_{t->0} f(t) >= sum_i f(0_i),  lim_{t->1} f(t) >= sum_j f(1_j)
/// single out exactly the rank functions of positive elements.
///
/// The representation is canonical (no redundant breakpoints), so equality
/// is structural.
class RankFunction {
public:
  RankFunction(Shape shape, std::vector<ExtNat> left, std::vector<ExtNat> right,
               std::vector<Rat> breaks, std::vector<ExtNat> cells, std::vector<ExtNat> points);

  static RankFunction zero(const Shape& shape);
  static RankFunction constant(const Shape& shape, ExtNat value);
  /// Indicator of an open set; throws NotOpen otherwise.
  static RankFunction indicator(const Shape& shape, const LevelSet& set);
  /// Pointwise number of levels containing each point; every level must be open.
  static RankFunction from_levels(const Shape& shape, const std::vector<LevelSet>& levels);
  /// The class [1_A]: endpoint values p-bar/q-bar, constant m in between.
  static RankFunction unit_class(const Shape& shape);

  const Shape& shape() const { return shape_; }
  const std::vector<ExtNat>& left() const { return left_; }
  const std::vector<ExtNat>& right() const { return right_; }
  const std::vector<Rat>& breaks() const { return breaks_; }
  const std::vector<ExtNat>& cells() const { return cells_; }
  const std::vector<ExtNat>& points() const { return points_; }

  ExtNat at_left(int i) const;           // value at 0_i, 1-based
  ExtNat at_right(int j) const;          // value at 1_j, 1-based
  ExtNat at_interior(const Rat& t) const;  // value at t in (0,1)
  /// The lsc extension f~ on [0,1]: f~(0) = sum_i f(0_i), f~(1) = sum_j f(1_j).
  ExtNat at_extended(const Rat& t) const;

  ExtNat sum_left() const;
  ExtNat sum_right() const;

  bool is_zero() const;
  bool is_constant() const;
  bool has_infinite_value() const;
  /// Largest finite value attained; 0 for the zero function. Requires no inf.
  std::int64_t max_value() const;

  /// {f >= n} as an open subset of sp(A); n >= 1.
  LevelSet level_set(std::int64_t n) const;

  /// Invariant violations in human-readable form; empty means valid.
  std::vector<std::string> validate() const;

  /// Same function over another shape with equal (r, s); used to move
  /// between M_m(C[0,1]) models of different matrix sizes.
  RankFunction rebind(const Shape& shape) const;

  /// Copy with extra breakpoints inserted (values unchanged).
  RankFunction refined(const std::vector<Rat>& superGrid) const;

  friend bool operator==(const RankFunction& f, const RankFunction& g);
  friend bool operator!=(const RankFunction& f, const RankFunction& g) { return !(f == g); }

  std::string str() const;

private:
  Shape shape_;
  std::vector<ExtNat> left_, right_;
  std::vector<Rat> breaks_;
  std::vector<ExtNat> cells_;
  std::vector<ExtNat> points_;

  void canonicalize();
};

/// Pointwise sum (order and addition in Cu(A) are pointwise).
RankFunction add(const RankFunction& f, const RankFunction& g);
/// n-fold sum.
RankFunction scaled(std::int64_t n, const RankFunction& f);
/// Pointwise order.
bool leq(const RankFunction& f, const RankFunction& g);
/// Pointwise maximum of a nonempty family.
RankFunction pointwise_sup(const std::vector<RankFunction>& fs);
/// Pointwise guarded difference; underflow raises `onUnderflow`.
RankFunction checked_sub(const RankFunction& f, const RankFunction& g, Errc onUnderflow);

/// The way-below relation f << g, decided against the canonical shrinking
/// sequence of g: endpoint values compare directly, and each interior level
/// of f must sit strictly inside the matching level of g at every end the
/// shrinking sequence moves. Ends running into 0 stay pinned for the first
/// sum_i g(0_i) levels (the tag budget of the decomposition) and likewise
/// at 1; this is the combinatorial shadow of the boundary inequalities.
/// A function with an infinite value is way below nothing.
bool way_below(const RankFunction& f, const RankFunction& g);
bool is_compact(const RankFunction& f);

/// First reason f <= g fails (a witness point), if any.
std::optional<std::string> leq_obstruction(const RankFunction& f, const RankFunction& g);
/// First reason f << g fails (a witness point or a missing cap), if any.
std::optional<std::string> way_below_obstruction(const RankFunction& f, const RankFunction& g);

/// Generators of Cu(A): x_{i,j} = 1_{{0_i} u (0,1) u {1_j}} and
/// y_t = 1_{(t,1) u {1_1}} with y_1 = 0.
RankFunction generator_x(const Shape& shape, int i, int j);
RankFunction generator_y(const Shape& shape, const Rat& t);

/// Splits a finite-valued f into open level sets V_1, V_2, ... with
/// sum of indicators equal to f, interior parts nested, and each endpoint
/// tag 0_i used in exactly f(0_i) of the levels (same at 1). Throws
/// InfiniteValue if f takes the value infinity.
std::vector<LevelSet> decompose(const RankFunction& f);

/// k-th member of the canonical shrinking sequence of g: every uncapped
/// component end of every level moves inward by min-length/2^(k+1), tags
/// and tag-capped ends stay. The sequence increases to g and consecutive
/// members are way below each other.
RankFunction approximant(const RankFunction& g, int k);

}  // namespace cusp

#endif
