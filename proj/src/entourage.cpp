#include "cusp/entourage.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

namespace cusp {

GenKey GenKey::x(int i, int j) {
  GenKey k;
  k.isX = true;
  k.i = i;
  k.j = j;
  return k;
}

GenKey GenKey::y(Rat t) {
  GenKey k;
  k.isX = false;
  k.t = std::move(t);
  return k;
}

std::string GenKey::str() const {
  if (isX) return "x_" + std::to_string(i) + "_" + std::to_string(j);
  return "y_" + rat_to_string(t);
}

bool operator==(const GenKey& a, const GenKey& b) {
  if (a.isX != b.isX) return false;
  if (a.isX) return a.i == b.i && a.j == b.j;
  return a.t == b.t;
}

bool operator<(const GenKey& a, const GenKey& b) {
  if (a.isX != b.isX) return a.isX;
  if (a.isX) return a.i != b.i ? a.i < b.i : a.j < b.j;
  return a.t < b.t;
}

std::vector<std::pair<GenKey, RankFunction>> generator_list(const Shape& shape, int depth) {
  if (depth < 0) fail(Errc::IndexOutOfRange, "generator set depth must be nonnegative");
  std::vector<std::pair<GenKey, RankFunction>> out;
  for (int i = 1; i <= static_cast<int>(shape.r()); ++i)
    for (int j = 1; j <= static_cast<int>(shape.s()); ++j)
      out.emplace_back(GenKey::x(i, j), generator_x(shape, i, j));
  std::int64_t den = std::int64_t{1} << depth;
  for (std::int64_t k = 0; k <= den; ++k) {
    Rat t(k, den);
    out.emplace_back(GenKey::y(t), generator_y(shape, t));
  }
  return out;
}

GeneratorSet make_generator_set(const Shape& shape, int depth) {
  // The same (shape, depth) sets are requested over and over by the lifting
  // postconditions; memoize them. Values are immutable, so sharing is safe.
  static std::mutex mu;
  static std::unordered_map<std::string, GeneratorSet> cache;
  std::string key = shape.str() + "@" + std::to_string(depth);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  GeneratorSet f;
  f.shape = shape;
  f.depth = depth;
  for (auto& [k, e] : generator_list(shape, depth)) {
    f.keys.push_back(k);
    f.elements.push_back(e);
  }
  for (std::size_t a = 0; a < f.elements.size(); ++a)
    for (std::size_t b = 0; b < f.elements.size(); ++b)
      if (way_below(f.elements[a], f.elements[b])) f.wbPairs.emplace_back(a, b);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(f)).first->second;
}

const SumElement& MorphismTable::at(const GenKey& k) const {
  auto it = values.find(k);
  if (it == values.end()) fail(Errc::DomainMismatch, "table has no value for " + k.str());
  return it->second;
}

MorphismTable MorphismTable::summand(std::size_t c) const {
  if (c >= target.summand_count()) fail(Errc::IndexOutOfRange, "summand index");
  MorphismTable out;
  out.source = source;
  out.depth = depth;
  if (target.kind == Target::Kind::MatrixSum)
    out.target = Target::matrix_sum({target.sizes[c]});
  else
    out.target = target;
  for (const auto& [k, v] : values) out.values[k] = SumElement{{v.comps[c]}};
  out.unit = SumElement{{unit.comps[c]}};
  return out;
}

MorphismTable MorphismTable::restricted(int d) const {
  if (d > depth) fail(Errc::DomainMismatch, "cannot refine a table to a deeper grid");
  MorphismTable out;
  out.source = source;
  out.depth = d;
  out.target = target;
  out.unit = unit;
  std::int64_t den = std::int64_t{1} << d;
  for (const auto& [k, v] : values) {
    if (k.isX) {
      out.values[k] = v;
    } else {
      Rat scaledT = k.t * den;
      if (denominator(scaledT) == 1) out.values[k] = v;
    }
  }
  return out;
}

std::vector<std::string> validate_table(const MorphismTable& t) {
  std::vector<std::string> bad;
  for (const auto& [k, elem] : generator_list(t.source, t.depth)) {
    auto it = t.values.find(k);
    if (it == t.values.end()) {
      bad.push_back("missing value for " + k.str());
      continue;
    }
    for (auto& msg : validate_value(it->second, t.target)) bad.push_back(k.str() + ": " + msg);
  }
  for (auto& msg : validate_value(t.unit, t.target)) bad.push_back("unit: " + msg);
  auto y1 = t.values.find(GenKey::y(Rat(1)));
  if (y1 != t.values.end()) {
    bool zero = true;
    for (const auto& c : y1->second.comps) zero = zero && c.is_zero();
    if (!zero) bad.push_back("y_1 is the zero class but its table value is nonzero");
  }
  if (bad.empty() && !is_compact(t.unit))
    bad.push_back("unit value is not compact (no corner to lift into)");
  return bad;
}

MorphismTable restrict_table(const StandardFormHom& h, int depth) {
  MorphismTable out;
  out.source = h.source;
  out.depth = depth;
  out.target = h.target;
  for (const auto& [k, elem] : generator_list(h.source, depth))
    out.values[k] = apply_hom(h, elem);
  out.unit = apply_hom(h, RankFunction::unit_class(h.source));
  return out;
}

CuMorphism CuMorphism::induced(StandardFormHom h) {
  CuMorphism m;
  m.source_ = h.source;
  m.target_ = h.target;
  m.chain_.push_back(std::move(h));
  return m;
}

CuMorphism CuMorphism::from_table(MorphismTable t) {
  CuMorphism m;
  m.source_ = t.source;
  m.target_ = t.target;
  m.head_.push_back(std::move(t));
  return m;
}

SumElement CuMorphism::operator()(const RankFunction& f) const {
  SumElement v;
  std::size_t chainStart = 0;
  if (!head_.empty()) {
    const MorphismTable& t = head_.front();
    bool found = false;
    for (const auto& [key, elem] : generator_list(t.source, t.depth)) {
      if (elem == f) {
        v = t.at(key);
        found = true;
        break;
      }
    }
    if (!found) {
      if (f == RankFunction::unit_class(t.source))
        v = t.unit;
      else
        fail(Errc::DomainMismatch, "table extension is only defined on the generator set");
    }
  } else {
    v = apply_hom(chain_.front(), f);
    chainStart = 1;
  }
  for (std::size_t k = chainStart; k < chain_.size(); ++k) v = apply_hom(chain_[k], v.comps[0]);
  return v;
}

CuMorphism cu_compose(std::vector<CuMorphism> chain) {
  if (chain.empty()) fail(Errc::IndexOutOfRange, "composition of an empty chain");
  CuMorphism out = std::move(chain.front());
  for (std::size_t k = 1; k < chain.size(); ++k) {
    CuMorphism& next = chain[k];
    if (out.target_.kind != Target::Kind::Sia || out.target_.shape != next.source_)
      fail(Errc::ShapeMismatch, "composition chain does not match at link " + std::to_string(k));
    if (!next.head_.empty())
      fail(Errc::ShapeMismatch, "table extensions can only stand first in a composition");
    for (auto& h : next.chain_) out.chain_.push_back(std::move(h));
    out.target_ = next.target_;
  }
  return out;
}

namespace {

bool interleaved(const SumElement& aa, const SumElement& ab, const SumElement& ba,
                 const SumElement& bb) {
  return leq(aa, bb) && leq(ba, ab);
}

}  // namespace

bool in_entourage(const GeneratorSet& f, const MorphismTable& a, const MorphismTable& b) {
  if (a.source != f.shape || b.source != f.shape)
    fail(Errc::DomainMismatch, "tables do not live over the generator set's algebra");
  if (a.target != b.target) fail(Errc::DomainMismatch, "tables have different targets");
  for (auto [ia, ib] : f.wbPairs) {
    const GenKey &ka = f.keys[ia], &kb = f.keys[ib];
    if (!interleaved(a.at(ka), a.at(kb), b.at(ka), b.at(kb))) return false;
  }
  return true;
}

bool in_entourage(const GeneratorSet& f, const CuMorphism& a, const CuMorphism& b) {
  if (a.source() != f.shape || b.source() != f.shape)
    fail(Errc::DomainMismatch, "morphisms do not live over the generator set's algebra");
  if (a.target() != b.target()) fail(Errc::DomainMismatch, "morphisms have different targets");
  std::vector<SumElement> va, vb;
  for (const auto& e : f.elements) {
    va.push_back(a(e));
    vb.push_back(b(e));
  }
  for (auto [ia, ib] : f.wbPairs)
    if (!interleaved(va[ia], va[ib], vb[ia], vb[ib])) return false;
  return true;
}

bool in_entourage(const FinitePairSet& f, const CuMorphism& a, const CuMorphism& b) {
  if (a.target() != b.target()) fail(Errc::DomainMismatch, "morphisms have different targets");
  std::vector<SumElement> va, vb;
  for (const auto& e : f.elements) {
    va.push_back(a(e));
    vb.push_back(b(e));
  }
  for (auto [ia, ib] : f.wbPairs)
    if (!interleaved(va[ia], va[ib], vb[ia], vb[ib])) return false;
  return true;
}

namespace {

/// Smallest n with some dyadic cell [i/2^n, (i+1)/2^n] satisfying
/// lo <= i/2^n (strictly when loStrict) and (i+1)/2^n < hi.
int cell_index(const Rat& lo, const Rat& hi, bool loStrict) {
  Int den = 1;
  for (int n = 0; n <= 256; ++n, den *= 2) {
    // first candidate i: smallest integer with i >= lo * 2^n (or > for strict)
    Rat scaled = lo * Rat(den);
    Int i = rat_floor(scaled);
    if (Rat(i) < scaled || (loStrict && Rat(i) == scaled)) ++i;
    if (i < 0) i = 0;
    if (Rat(i + 1, den) < hi) return n;
  }
  fail(Errc::Internal,
       "no dyadic cell found between " + rat_to_string(lo) + " and " + rat_to_string(hi));
}

/// Is f the indicator of a y-type set (t,1) u {1_1} with dyadic t?
std::optional<int> y_like_depth(const RankFunction& f, Rat* tOut) {
  if (f.has_infinite_value() || f.max_value() != 1) return std::nullopt;
  LevelSet l = f.level_set(1);
  if (!l.left().empty() || l.right() != std::vector<int>{1}) return std::nullopt;
  if (l.intervals().size() != 1 || l.intervals()[0].b != 1) return std::nullopt;
  auto d = dyadic_depth(l.intervals()[0].a);
  if (!d) return std::nullopt;
  if (tOut) *tOut = l.intervals()[0].a;
  return d;
}

bool x_like(const RankFunction& f) {
  if (f.has_infinite_value() || f.max_value() != 1) return false;
  LevelSet l = f.level_set(1);
  return l.left().size() == 1 && l.right().size() == 1 && l.intervals().size() == 1 &&
         l.intervals()[0].a == 0 && l.intervals()[0].b == 1;
}

struct IndicatorComponent {
  bool leftCapped = false, rightCapped = false;
  Rat a, b;
  std::vector<int> ltags, rtags;
};

std::vector<IndicatorComponent> level_components(const LevelSet& l) {
  std::vector<IndicatorComponent> out;
  for (const auto& iv : l.intervals()) {
    IndicatorComponent c;
    c.a = iv.a;
    c.b = iv.b;
    if (iv.a == 0 && !l.left().empty()) {
      c.leftCapped = true;
      c.ltags = l.left();
    }
    if (iv.b == 1 && !l.right().empty()) {
      c.rightCapped = true;
      c.rtags = l.right();
    }
    out.push_back(std::move(c));
  }
  return out;
}

IndicatorComponent shrink_component(const IndicatorComponent& c, const Rat& delta) {
  IndicatorComponent out = c;
  if (!c.leftCapped) out.a = c.a + delta;
  if (!c.rightCapped) out.b = c.b - delta;
  return out;
}

/// Grid index certifying alpha(1_W) <= beta(1_W') from U_{F_n}, for one
/// nested same-form component pair, following the case analysis of the
/// basis theorem's proof.
int component_pair_index(const IndicatorComponent& w, const IndicatorComponent& wp) {
  if (w.leftCapped && w.rightCapped) return 0;  // compact x-form, equal sets
  if (w.leftCapped) return cell_index(w.b, wp.b, false);
  if (w.rightCapped) return cell_index(wp.a, w.a, true);
  return std::max(cell_index(wp.a, w.a, true), cell_index(w.b, wp.b, false));
}

Rat min_component_length(const RankFunction& b) {
  Rat minLen(1);
  for (std::int64_t n = 1; n <= b.max_value(); ++n) {
    LevelSet level = b.level_set(n);
    for (const auto& iv : level.intervals()) minLen = std::min(minLen, Rat(iv.b - iv.a));
  }
  return minLen;
}

int pair_index(const RankFunction& a, const RankFunction& b) {
  if (a.is_zero()) return 0;

  // Pairs already inside some F_n need no reduction.
  Rat ta, tb;
  auto da = y_like_depth(a, &ta);
  auto db = y_like_depth(b, &tb);
  if (da && db) return std::max(*da, *db);
  if (da && x_like(b)) return *da;
  if (x_like(a) && x_like(b) && a == b) return 0;

  // General case: decompose b into interval indicators and chase the
  // canonical shrinking sequence until it dominates a.
  int istar = -1;
  for (int i = 0; i <= 200; ++i) {
    if (leq(a, approximant(b, i))) {
      istar = i;
      break;
    }
  }
  if (istar < 0)
    fail(Errc::Internal, "shrinking sequence failed to dominate a way-below element");

  Rat minLen = min_component_length(b);
  Rat deltaLo = minLen / 2;
  for (int i = 0; i < istar; ++i) deltaLo /= 2;
  Rat deltaHi = deltaLo / 2;

  int best = 0;
  for (const auto& level : decompose(b)) {
    for (const auto& comp : level_components(level)) {
      IndicatorComponent lo = shrink_component(comp, deltaLo);
      IndicatorComponent hi = shrink_component(comp, deltaHi);
      if (!(lo.a < lo.b)) continue;  // fully shrunk away at this stage
      best = std::max(best, component_pair_index(lo, hi));
    }
  }
  return best;
}

}  // namespace

int basis_index(const FinitePairSet& f, const Shape& shape) {
  int best = 0;
  for (auto [ia, ib] : f.wbPairs) {
    const RankFunction& a = f.elements.at(ia);
    const RankFunction& b = f.elements.at(ib);
    if (a.shape() != shape || b.shape() != shape)
      fail(Errc::ShapeMismatch, "finite set elements must live over the given shape");
    if (!way_below(a, b))
      fail(Errc::NotWayBelow, "declared pair is not way below: " + a.str() + " vs " + b.str());
    best = std::max(best, pair_index(a, b));
  }
  return best;
}

}  // namespace cusp
