#include "cusp/level_set.hpp"

#include <algorithm>
#include <sstream>

namespace cusp {

LevelSet::LevelSet(std::vector<int> leftTags, std::vector<OpenInterval> intervals,
                   std::vector<int> rightTags)
    : left_(std::move(leftTags)), intervals_(std::move(intervals)), right_(std::move(rightTags)) {
  std::sort(left_.begin(), left_.end());
  left_.erase(std::unique(left_.begin(), left_.end()), left_.end());
  std::sort(right_.begin(), right_.end());
  right_.erase(std::unique(right_.begin(), right_.end()), right_.end());

  for (const auto& iv : intervals_) {
    if (!(Rat(0) <= iv.a && iv.a < iv.b && iv.b <= Rat(1)))
      fail(Errc::ParseError, "bad interval endpoints in level set");
  }
  std::sort(intervals_.begin(), intervals_.end(),
            [](const OpenInterval& x, const OpenInterval& y) { return x.a < y.a; });
  // Merge overlapping intervals. Endpoint-touching ones stay separate: the
  // shared point is not in the union of the two open intervals.
  std::vector<OpenInterval> merged;
  for (const auto& iv : intervals_) {
    if (!merged.empty() && iv.a < merged.back().b) {
      merged.back().b = std::max(merged.back().b, iv.b);
    } else {
      merged.push_back(iv);
    }
  }
  intervals_ = std::move(merged);
}

bool LevelSet::contains_interior(const Rat& t) const {
  for (const auto& iv : intervals_)
    if (iv.a < t && t < iv.b) return true;
  return false;
}

bool LevelSet::contains_left_tag(int i) const {
  return std::binary_search(left_.begin(), left_.end(), i);
}

bool LevelSet::contains_right_tag(int j) const {
  return std::binary_search(right_.begin(), right_.end(), j);
}

bool LevelSet::subset_of(const LevelSet& other) const {
  if (!std::includes(other.left_.begin(), other.left_.end(), left_.begin(), left_.end()))
    return false;
  if (!std::includes(other.right_.begin(), other.right_.end(), right_.begin(), right_.end()))
    return false;
  for (const auto& iv : intervals_) {
    bool covered = false;
    for (const auto& w : other.intervals_) {
      if (w.a <= iv.a && iv.b <= w.b) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

std::string LevelSet::str() const {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " u ";
    first = false;
  };
  for (int i : left_) {
    sep();
    os << "{0_" << i << "}";
  }
  for (const auto& iv : intervals_) {
    sep();
    os << "(" << rat_to_string(iv.a) << "," << rat_to_string(iv.b) << ")";
  }
  for (int j : right_) {
    sep();
    os << "{1_" << j << "}";
  }
  if (first) os << "{}";
  return os.str();
}

bool is_open(const LevelSet& set, const Shape& shape) {
  for (int i : set.left())
    if (i < 1 || i > static_cast<int>(shape.r())) return false;
  for (int j : set.right())
    if (j < 1 || j > static_cast<int>(shape.s())) return false;
  if (!set.left().empty() && !set.touches_zero()) return false;
  if (!set.right().empty() && !set.touches_one()) return false;
  return true;
}

bool QuasiCompactSet::contains(const LevelSet& u) const {
  for (int i : u.left())
    if (std::find(left.begin(), left.end(), i) == left.end()) return false;
  for (int j : u.right())
    if (std::find(right.begin(), right.end(), j) == right.end()) return false;
  for (const auto& iv : u.intervals()) {
    bool covered = false;
    for (const auto& p : pieces) {
      if (p.a <= iv.a && iv.b <= p.b) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

bool QuasiCompactSet::within(const LevelSet& v) const {
  for (int i : left)
    if (!v.contains_left_tag(i)) return false;
  for (int j : right)
    if (!v.contains_right_tag(j)) return false;
  for (const auto& p : pieces) {
    bool covered = false;
    for (const auto& w : v.intervals()) {
      bool leftOk = p.leftClosed ? (w.a < p.a) : (w.a <= p.a);
      bool rightOk = p.rightClosed ? (p.b < w.b) : (p.b <= w.b);
      if (leftOk && rightOk) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

std::optional<QuasiCompactSet> compact_interpolant(const LevelSet& u, const LevelSet& v,
                                                   const Shape& shape) {
  if (!is_open(u, shape)) fail(Errc::NotOpen, "first argument is not open: " + u.str());
  if (!is_open(v, shape)) fail(Errc::NotOpen, "second argument is not open: " + v.str());

  if (!u.subset_of(v)) return std::nullopt;

  QuasiCompactSet k;
  k.left = u.left();
  k.right = u.right();

  for (const auto& iv : u.intervals()) {
    QuasiCompactSet::Piece piece{iv.a, iv.b, false, false};
    if (iv.a == 0) {
      // End running into the split point 0: only a tag can cap it.
      if (v.left().empty()) return std::nullopt;
      if (u.left().empty() && std::find(k.left.begin(), k.left.end(), v.left().front()) == k.left.end())
        k.left.push_back(v.left().front());
    } else {
      if (!v.contains_interior(iv.a)) return std::nullopt;
      piece.leftClosed = true;
    }
    if (iv.b == 1) {
      if (v.right().empty()) return std::nullopt;
      if (u.right().empty() &&
          std::find(k.right.begin(), k.right.end(), v.right().front()) == k.right.end())
        k.right.push_back(v.right().front());
    } else {
      if (!v.contains_interior(iv.b)) return std::nullopt;
      piece.rightClosed = true;
    }
    k.pieces.push_back(piece);
  }
  std::sort(k.left.begin(), k.left.end());
  std::sort(k.right.begin(), k.right.end());
  return k;
}

}  // namespace cusp
