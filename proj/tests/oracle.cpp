#include "oracle.hpp"

#include <algorithm>
#include <functional>

namespace cusp::oracle {

bool way_below_shrinking(const RankFunction& f, const RankFunction& g) {
  if (f.shape() != g.shape()) fail(Errc::ShapeMismatch, "oracle operands over different shapes");
  if (f.has_infinite_value()) return false;
  if (f.is_zero()) return true;
  // Every member of the sequence sits below g, so f > g settles it early.
  if (!leq(f, g)) return false;
  for (int k = 0; k <= 80; ++k) {
    if (leq(f, approximant(g, k))) return true;
  }
  return false;
}

namespace {

bool covered(const QuasiCompactSet& k, const std::vector<LevelSet>& members) {
  std::vector<int> lt, rt;
  std::vector<OpenInterval> ivs;
  for (const auto& m : members) {
    lt.insert(lt.end(), m.left().begin(), m.left().end());
    rt.insert(rt.end(), m.right().begin(), m.right().end());
    ivs.insert(ivs.end(), m.intervals().begin(), m.intervals().end());
  }
  LevelSet unionSet(std::move(lt), std::move(ivs), std::move(rt));
  return k.within(unionSet);
}

}  // namespace

bool quasi_compact_by_covers(const QuasiCompactSet& k, const Shape& shape, int gridDepth) {
  std::vector<int> allLeft, allRight;
  for (int i = 1; i <= static_cast<int>(shape.r()); ++i) allLeft.push_back(i);
  for (int j = 1; j <= static_cast<int>(shape.s()); ++j) allRight.push_back(j);

  std::vector<Rat> candidates;
  std::int64_t den = std::int64_t{1} << gridDepth;
  for (std::int64_t c = 1; c < den; ++c) candidates.push_back(Rat(c, den));
  for (const auto& p : k.pieces) {
    if (p.a > 0 && p.a < 1) candidates.push_back(p.a);
    if (p.b > 0 && p.b < 1) candidates.push_back(p.b);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const int scanDepth = 40;
  auto demand_finite = [&](const std::vector<LevelSet>& finitePart,
                           const LevelSet& limitMember,
                           const std::function<LevelSet(int)>& member) {
    std::vector<LevelSet> limit = finitePart;
    limit.push_back(limitMember);
    if (!covered(k, limit)) return true;  // not a cover of k, no constraint
    for (int step = 1; step <= scanDepth; ++step) {
      std::vector<LevelSet> attempt = finitePart;
      attempt.push_back(member(step));
      if (covered(k, attempt)) return true;
    }
    return false;
  };

  // Monotone families closing in on an interior point from either side.
  for (const Rat& c : candidates) {
    std::vector<LevelSet> fin;
    for (int i : allLeft) fin.push_back(LevelSet({i}, {{Rat(0), c}}, {}));
    if (!demand_finite(fin, LevelSet({}, {{c, Rat(1)}}, allRight), [&](int step) {
          Rat a = c + Rat(1 - c) / Rat(std::int64_t{1} << std::min(step, 60));
          return LevelSet({}, {{a, Rat(1)}}, allRight);
        }))
      return false;
    std::vector<LevelSet> fin2;
    for (int j : allRight) fin2.push_back(LevelSet({}, {{c, Rat(1)}}, {j}));
    if (!demand_finite(fin2, LevelSet(allLeft, {{Rat(0), c}}, {}), [&](int step) {
          Rat b = c - c / Rat(std::int64_t{1} << std::min(step, 60));
          return LevelSet(allLeft, {{Rat(0), b}}, {});
        }))
      return false;
  }

  // Families closing in on the split endpoints: no finite member reaches a
  // piece that runs openly into 0 (or 1) without a tag.
  if (!demand_finite({}, LevelSet({}, {{Rat(0), Rat(1)}}, allRight), [&](int step) {
        Rat a = Rat(1) / Rat(std::int64_t{1} << std::min(step, 60));
        return LevelSet({}, {{a, Rat(1)}}, allRight);
      }))
    return false;
  if (!demand_finite({}, LevelSet(allLeft, {{Rat(0), Rat(1)}}, {}), [&](int step) {
        Rat b = 1 - Rat(1) / Rat(std::int64_t{1} << std::min(step, 60));
        return LevelSet(allLeft, {{Rat(0), b}}, {});
      }))
    return false;

  return true;
}

}  // namespace cusp::oracle
