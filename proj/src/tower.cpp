#include "cusp/tower.hpp"

#include <algorithm>

namespace cusp {

namespace {

Rat gap_bound(int n) {
  // 1/2^(n-2), read as 2^(2-n) so small n stays meaningful.
  if (n >= 2) return Rat(1, std::int64_t{1} << (n - 2));
  return Rat(std::int64_t{1} << (2 - n));
}

}  // namespace

std::vector<std::string> validate(const Tower& t) {
  std::vector<std::string> bad;
  if (t.stages.empty()) {
    bad.push_back("tower has no stages");
    return bad;
  }
  for (std::size_t i = 0; i < t.stages.size(); ++i)
    if (t.stages[i].empty()) bad.push_back("stage " + std::to_string(i) + " has no summands");
  if (t.connects.size() + 1 != t.stages.size())
    bad.push_back("tower needs exactly one connecting layer per stage gap");
  if (t.distinguished.size() != t.stages.size())
    bad.push_back("tower needs one distinguished class per stage");
  if (!bad.empty()) return bad;

  for (std::size_t i = 0; i < t.connects.size(); ++i) {
    for (const auto& e : t.connects[i]) {
      if (e.from >= t.stages[i].size() || e.to >= t.stages[i + 1].size()) {
        bad.push_back("connect " + std::to_string(i) + ": summand index out of range");
        continue;
      }
      if (e.hom.source != t.stages[i][e.from])
        bad.push_back("connect " + std::to_string(i) + ": source shape mismatch");
      if (e.hom.target.kind != Target::Kind::Sia || e.hom.target.shape != t.stages[i + 1][e.to])
        bad.push_back("connect " + std::to_string(i) + ": target shape mismatch");
      for (auto& m : validate(e.hom)) bad.push_back("connect " + std::to_string(i) + ": " + m);
    }
  }
  for (std::size_t i = 0; i < t.stages.size(); ++i) {
    if (t.distinguished[i].comps.size() != t.stages[i].size()) {
      bad.push_back("distinguished class at stage " + std::to_string(i) +
                    " has the wrong summand count");
      continue;
    }
    for (std::size_t l = 0; l < t.stages[i].size(); ++l)
      if (t.distinguished[i].comps[l].shape() != t.stages[i][l])
        bad.push_back("distinguished class at stage " + std::to_string(i) +
                      " lives over the wrong shape");
  }
  if (!bad.empty()) return bad;
  for (std::size_t i = 0; i + 1 < t.stages.size(); ++i) {
    if (!leq(push_forward(t, t.distinguished[i], i, i + 1), t.distinguished[i + 1]))
      bad.push_back("distinguished class does not push forward below stage " +
                    std::to_string(i + 1));
  }
  return bad;
}

SumElement push_forward(const Tower& t, const SumElement& e, std::size_t from, std::size_t to) {
  if (from >= t.stage_count() || to >= t.stage_count() || from > to)
    fail(Errc::StageOutOfRange, "push_forward stages out of range");
  if (e.comps.size() != t.stages[from].size())
    fail(Errc::ShapeMismatch, "element does not match the stage's summands");
  SumElement cur = e;
  for (std::size_t i = from; i < to; ++i) {
    SumElement next;
    for (const auto& sh : t.stages[i + 1]) next.comps.push_back(RankFunction::zero(sh));
    for (const auto& entry : t.connects[i]) {
      SumElement piece = apply_hom(entry.hom, cur.comps[entry.from]);
      next.comps[entry.to] = add(next.comps[entry.to], piece.comps[0]);
    }
    cur = std::move(next);
  }
  return cur;
}

StageWitness limit_leq_compact(const Tower& t, std::size_t stage, const SumElement& x,
                               const SumElement& y) {
  for (std::size_t j = stage; j < t.stage_count(); ++j) {
    if (leq(push_forward(t, x, stage, j), push_forward(t, y, stage, j))) return {true, j};
  }
  return {false, std::nullopt};
}

StageWitness limit_way_below_check(const Tower& t, std::size_t stage, const SumElement& xPrime,
                                   const SumElement& x, const SumElement& y) {
  if (!way_below(xPrime, x))
    fail(Errc::NotWayBelow, "limit comparison requires x' way below x");
  for (std::size_t j = stage; j < t.stage_count(); ++j) {
    if (leq(push_forward(t, xPrime, stage, j), push_forward(t, y, stage, j))) return {true, j};
  }
  return {false, std::nullopt};
}

AlphaFamily AlphaFamily::restricted(int d) const {
  if (d > depth) fail(Errc::DomainMismatch, "cannot refine a family to a deeper grid");
  AlphaFamily out;
  out.source = source;
  out.depth = d;
  out.unit = unit;
  std::int64_t den = std::int64_t{1} << d;
  for (const auto& [k, v] : values) {
    if (k.isX || denominator(Rat(k.t * den)) == 1) out.values[k] = v;
  }
  return out;
}

std::vector<std::string> validate(const AlphaFamily& a, const Tower& t) {
  std::vector<std::string> bad;
  auto checkStaged = [&](const StagedValue& sv, const std::string& where) {
    if (sv.stage >= t.stage_count()) {
      bad.push_back(where + ": stage out of range");
      return;
    }
    if (sv.value.comps.size() != t.stages[sv.stage].size()) {
      bad.push_back(where + ": summand count does not match its stage");
      return;
    }
    for (std::size_t l = 0; l < sv.value.comps.size(); ++l) {
      if (sv.value.comps[l].shape() != t.stages[sv.stage][l])
        bad.push_back(where + ": component " + std::to_string(l) + " over the wrong shape");
      else
        for (auto& m : sv.value.comps[l].validate())
          bad.push_back(where + ": component " + std::to_string(l) + ": " + m);
    }
  };
  for (const auto& [k, elem] : generator_list(a.source, a.depth)) {
    auto it = a.values.find(k);
    if (it == a.values.end()) {
      bad.push_back("missing family value for " + k.str());
      continue;
    }
    checkStaged(it->second, k.str());
    if (k.isX && bad.empty() && !is_compact(it->second.value))
      bad.push_back(k.str() + ": family value must be a compact class");
  }
  checkStaged(a.unit, "unit");
  return bad;
}

namespace {

std::size_t family_floor_stage(const AlphaFamily& a) {
  std::size_t k = a.unit.stage;
  for (const auto& [key, sv] : a.values) k = std::max(k, sv.stage);
  return k;
}

/// The family pushed to one stage, sliced per summand.
std::vector<MorphismTable> stage_tables(const Tower& t, const AlphaFamily& a, std::size_t stage) {
  std::vector<MorphismTable> out;
  const auto& shapes = t.stages[stage];
  for (std::size_t l = 0; l < shapes.size(); ++l) {
    MorphismTable tab;
    tab.source = a.source;
    tab.depth = a.depth;
    tab.target = Target::sia(shapes[l]);
    out.push_back(std::move(tab));
  }
  for (const auto& [key, sv] : a.values) {
    SumElement pushed = push_forward(t, sv.value, sv.stage, stage);
    for (std::size_t l = 0; l < shapes.size(); ++l)
      out[l].values[key] = SumElement{{pushed.comps[l]}};
  }
  SumElement unitPushed = push_forward(t, a.unit.value, a.unit.stage, stage);
  for (std::size_t l = 0; l < shapes.size(); ++l) out[l].unit = SumElement{{unitPushed.comps[l]}};
  return out;
}

void require_valid_inputs(const Tower& t, const AlphaFamily& a) {
  auto badT = validate(t);
  if (!badT.empty()) fail(Errc::ValidationFailed, "tower invalid: " + badT.front());
  auto badA = validate(a, t);
  if (!badA.empty()) fail(Errc::ValidationFailed, "alpha family invalid: " + badA.front());
}

void require_unit_dominated(const Tower& t, const AlphaFamily& a) {
  StageWitness w =
      limit_leq_compact(t, a.unit.stage, a.unit.value, t.distinguished[a.unit.stage]);
  if (!w.holds)
    fail(Errc::ValidationFailed,
         "alpha[1_A] is not below the distinguished class anywhere in the tower");
}

/// First stage (from the family's floor) where every summand table passes
/// the lifting hypotheses at the given depth.
std::size_t find_lift_stage(const Tower& t, const AlphaFamily& a, std::string* lastWitness) {
  for (std::size_t k = family_floor_stage(a); k < t.stage_count(); ++k) {
    bool ok = true;
    for (auto& tab : stage_tables(t, a, k)) {
      ConditionReport rep = check_conditions(tab);
      if (!rep.pass()) {
        ok = false;
        if (lastWitness && !rep.witnesses.empty())
          *lastWitness = "stage " + std::to_string(k) + ": " + rep.witnesses.front();
        break;
      }
    }
    if (ok) return k;
  }
  fail(Errc::StageExhausted,
       "the finite tower never satisfies the lifting hypotheses; last failure: " +
           (lastWitness ? *lastWitness : std::string("unknown")));
}

}  // namespace

TowerLift lift_through_tower(const Tower& t, const AlphaFamily& a, int depth) {
  require_valid_inputs(t, a);
  require_unit_dominated(t, a);
  if (depth > a.depth) fail(Errc::DomainMismatch, "family is too shallow for this depth");
  AlphaFamily fam = a.restricted(depth);
  std::string lastWitness;
  std::size_t stage = find_lift_stage(t, fam, &lastWitness);

  TowerLift out;
  out.stage = stage;
  out.certDepth = depth - 3;
  out.certOk = true;
  GeneratorSet f = make_generator_set(fam.source, depth - 3);
  for (auto& tab : stage_tables(t, fam, stage)) {
    StandardFormHom h = lift_to_sia(tab);
    out.certOk = out.certOk && in_entourage(f, tab, restrict_table(h, depth - 3));
    out.homs.push_back(std::move(h));
  }
  return out;
}

bool IntertwiningCertificate::all_checks_pass() const {
  for (const auto& lvl : levels) {
    if (!lvl.entourageOk) return false;
    if (lvl.n > 1) {
      if (!lvl.tuplesEqualPrev || !lvl.gapPrev) return false;
      if (*lvl.gapPrev > gap_bound(lvl.n)) return false;
    }
  }
  return true;
}

IntertwiningCertificate intertwine(const Tower& t, const AlphaFamily& a, int n) {
  IntertwiningCertificate cert;
  cert.requestedDepth = n;
  if (n == 0) return cert;
  if (a.depth < n + 3)
    fail(Errc::IndexOutOfRange, "intertwining at depth N needs a family of depth at least N+3");
  require_valid_inputs(t, a);
  require_unit_dominated(t, a);

  std::string lastWitness;
  cert.stage = find_lift_stage(t, a, &lastWitness);

  for (int level = 1; level <= n; ++level) {
    AlphaFamily fam = a.restricted(level + 3);
    IntertwiningLevel rec;
    rec.n = level;
    rec.stage = cert.stage;
    GeneratorSet f = make_generator_set(a.source, level);
    bool entOk = true;
    auto tabs = stage_tables(t, fam, cert.stage);
    for (auto& tab : tabs) {
      StandardFormHom h = lift_to_sia(tab);
      entOk = entOk && in_entourage(f, tab, restrict_table(h, level));
      rec.homs.push_back(std::move(h));
    }
    rec.entourageOk = entOk;
    if (!cert.levels.empty()) {
      const auto& prev = cert.levels.back().homs;
      bool tuples = true;
      Rat gap(0);
      bool gapDefined = true;
      for (std::size_t l = 0; l < rec.homs.size(); ++l) {
        PatternDistance pd = eigen_pattern_distance(prev[l], rec.homs[l]);
        tuples = tuples && pd.tuplesEqual;
        if (pd.maxGap)
          gap = std::max(gap, *pd.maxGap);
        else
          gapDefined = false;
      }
      rec.tuplesEqualPrev = tuples;
      if (gapDefined) rec.gapPrev = gap;
    }
    cert.levels.push_back(std::move(rec));
  }
  return cert;
}

bool revalidate(const Tower& t, const AlphaFamily& a, const IntertwiningCertificate& cert) {
  if (!validate(t).empty() || !validate(a, t).empty()) return false;
  const std::vector<StandardFormHom>* prev = nullptr;
  for (const auto& lvl : cert.levels) {
    if (lvl.stage >= t.stage_count() || a.depth < lvl.n + 3) return false;
    AlphaFamily fam = a.restricted(lvl.n + 3);
    auto tabs = stage_tables(t, fam, lvl.stage);
    if (tabs.size() != lvl.homs.size()) return false;
    GeneratorSet f = make_generator_set(a.source, lvl.n);
    for (std::size_t l = 0; l < tabs.size(); ++l) {
      if (!validate(lvl.homs[l]).empty()) return false;
      if (lvl.homs[l].target.kind != Target::Kind::Sia ||
          lvl.homs[l].target.shape != t.stages[lvl.stage][l])
        return false;
      if (!in_entourage(f, tabs[l], restrict_table(lvl.homs[l], lvl.n))) return false;
    }
    if (prev) {
      Rat gap(0);
      for (std::size_t l = 0; l < lvl.homs.size(); ++l) {
        PatternDistance pd = eigen_pattern_distance((*prev)[l], lvl.homs[l]);
        if (!pd.tuplesEqual || !pd.maxGap) return false;
        gap = std::max(gap, *pd.maxGap);
      }
      if (gap > gap_bound(lvl.n)) return false;
    }
    prev = &lvl.homs;
  }
  return true;
}

}  // namespace cusp
