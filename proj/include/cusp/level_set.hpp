#ifndef CUSP_LEVEL_SET_HPP
#define CUSP_LEVEL_SET_HPP

#include <optional>
#include <string>
#include <vector>

#include "cusp/rational.hpp"
#include "cusp/shape.hpp"

namespace cusp {

/// Open rational interval (a,b) inside [0,1].
struct OpenInterval {
  Rat a, b;
  friend bool operator==(const OpenInterval& x, const OpenInterval& y) {
    return x.a == y.a && x.b == y.b;
  }
};

/// An open subset of the split-endpoint spectrum
/// sp(A) = {0_1..0_r} u (0,1) u {1_1..1_s}: a finite union of disjoint open
/// intervals together with endpoint tags. Normalized on construction:
/// intervals sorted, overlapping ones merged, tags sorted and deduplicated,
/// so equality is structural.
class LevelSet {
public:
  LevelSet() = default;
  LevelSet(std::vector<int> leftTags, std::vector<OpenInterval> intervals,
           std::vector<int> rightTags);

  static LevelSet empty() { return LevelSet(); }

  const std::vector<int>& left() const { return left_; }
  const std::vector<int>& right() const { return right_; }
  const std::vector<OpenInterval>& intervals() const { return intervals_; }

  bool is_empty() const { return left_.empty() && right_.empty() && intervals_.empty(); }
  bool touches_zero() const { return !intervals_.empty() && intervals_.front().a == 0; }
  bool touches_one() const { return !intervals_.empty() && intervals_.back().b == 1; }

  bool contains_interior(const Rat& t) const;
  bool contains_left_tag(int i) const;
  bool contains_right_tag(int j) const;

  /// Set containment (as subsets of sp(A)); tags and interval cover.
  bool subset_of(const LevelSet& other) const;

  friend bool operator==(const LevelSet& x, const LevelSet& y) {
    return x.left_ == y.left_ && x.right_ == y.right_ && x.intervals_ == y.intervals_;
  }
  friend bool operator!=(const LevelSet& x, const LevelSet& y) { return !(x == y); }

  std::string str() const;

private:
  std::vector<int> left_;                  // 1-based tag indices, sorted
  std::vector<OpenInterval> intervals_;    // disjoint, increasing
  std::vector<int> right_;
};

/// True iff `set` is open in sp(A): every tag must come with an interval
/// reaching its endpoint, since the basic neighborhoods of 0_i are
/// {0_i} u (0,t) and those of 1_j are (t,1) u {1_j}.
bool is_open(const LevelSet& set, const Shape& shape);

/// A quasi-compact subset of sp(A): tags plus finitely many intervals with
/// explicitly closed or open ends. Quasi-compact here means every open cover
/// admits a finite subcover; such sets need not be closed.
struct QuasiCompactSet {
  struct Piece {
    Rat a, b;
    bool leftClosed, rightClosed;
  };
  std::vector<int> left;
  std::vector<Piece> pieces;
  std::vector<int> right;

  bool contains(const LevelSet& u) const;
  bool within(const LevelSet& v) const;
};

/// Decision kernel for compact containment: returns a quasi-compact K with
/// U <= K <= V when one exists. The rule is combinatorial end-capping:
/// U inside V, and every open end of every component of U capped inside V
/// (an interior end must lie in V; an end running into 0 or 1 needs a tag
/// of V on that side). Throws NotOpen if either input is not open.
std::optional<QuasiCompactSet> compact_interpolant(const LevelSet& u, const LevelSet& v,
                                                   const Shape& shape);

}  // namespace cusp

#endif
