#include "cusp/lifting.hpp"

#include <algorithm>

namespace cusp {

namespace {

Rat dyadic(std::int64_t k, int depth) { return Rat(k, std::int64_t{1} << depth); }

std::string sum_str(const SumElement& v) {
  std::string out;
  for (std::size_t c = 0; c < v.comps.size(); ++c) out += (c ? " | " : "") + v.comps[c].str();
  return out;
}

}  // namespace

ConditionReport check_conditions(const MorphismTable& table) {
  ConditionReport rep;
  auto structuralBad = validate_table(table);
  rep.structural = structuralBad.empty();
  for (auto& b : structuralBad) rep.witnesses.push_back("structural: " + b);
  if (!rep.structural) return rep;

  const Shape& A = table.source;
  const int n = table.depth;
  const std::int64_t levels = std::int64_t{1} << n;
  const int r = static_cast<int>(A.r()), s = static_cast<int>(A.s());
  auto X = [&](int i, int j) -> const SumElement& { return table.at(GenKey::x(i, j)); };
  auto Y = [&](std::int64_t k) -> const SumElement& { return table.at(GenKey::y(dyadic(k, n))); };

  rep.compactX = true;
  for (int i = 1; i <= r && rep.compactX; ++i)
    for (int j = 1; j <= s && rep.compactX; ++j)
      if (!is_compact(X(i, j))) {
        rep.compactX = false;
        rep.witnesses.push_back("(i): alpha(x_" + std::to_string(i) + "_" + std::to_string(j) +
                                ") is not compact");
      }

  rep.interleave = true;
  for (int i = 1; i <= r && rep.interleave; ++i)
    for (int j = 1; j <= s && rep.interleave; ++j)
      for (std::int64_t k = 0; k < levels && rep.interleave; ++k)
        if (!way_below(X(i, 1), add(Y(k), X(i, j)))) {
          rep.interleave = false;
          rep.witnesses.push_back("(ii): alpha(x_" + std::to_string(i) +
                                  "_1) is not way below alpha(y_" + rat_to_string(dyadic(k, n)) +
                                  ") + alpha(x_" + std::to_string(i) + "_" + std::to_string(j) +
                                  ")");
        }

  rep.descendingY = true;
  for (std::int64_t k = 0; k < levels && rep.descendingY; ++k)
    if (!way_below(Y(k + 1), Y(k))) {
      rep.descendingY = false;
      rep.witnesses.push_back("(iii): alpha(y_" + rat_to_string(dyadic(k + 1, n)) +
                              ") is not way below alpha(y_" + rat_to_string(dyadic(k, n)) + ")");
    }

  rep.yBelowX = true;
  for (int i = 1; i <= r && rep.yBelowX; ++i)
    if (!leq(Y(0), X(i, 1))) {
      rep.yBelowX = false;
      rep.witnesses.push_back("(iv): alpha(y_0) exceeds alpha(x_" + std::to_string(i) + "_1)");
    }

  rep.exchange = true;
  for (int i = 1; i <= r && rep.exchange; ++i)
    for (int i2 = i + 1; i2 <= r && rep.exchange; ++i2)
      for (int j = 1; j <= s && rep.exchange; ++j)
        for (int j2 = j + 1; j2 <= s && rep.exchange; ++j2)
          if (add(X(i, j), X(i2, j2)) != add(X(i, j2), X(i2, j))) {
            rep.exchange = false;
            rep.witnesses.push_back("(v): exchange identity fails at (" + std::to_string(i) + "," +
                                    std::to_string(j) + "),(" + std::to_string(i2) + "," +
                                    std::to_string(j2) + ")");
          }

  rep.unitBound = true;
  SumElement unitB = table.target.unit_class();
  if (!leq(table.unit, unitB)) {
    rep.unitBound = false;
    rep.witnesses.push_back("(vi): alpha[1_A] exceeds [1_B]");
  }
  for (int i = 1; i <= r && rep.unitBound; ++i)
    for (int j = 1; j <= s && rep.unitBound; ++j)
      if (!leq(X(i, j), table.unit)) {
        rep.unitBound = false;
        rep.witnesses.push_back("(vi): alpha(x_" + std::to_string(i) + "_" + std::to_string(j) +
                                ") exceeds alpha[1_A]");
      }

  rep.blockCount = true;
  for (int ip = 1; ip <= r && rep.blockCount; ++ip)
    for (int jp = 1; jp <= s && rep.blockCount; ++jp) {
      SumElement lhs = scaled(A.p[0], X(1, jp));
      for (int i = 2; i <= r; ++i) lhs = add(lhs, scaled(A.p[static_cast<std::size_t>(i) - 1], X(i, jp)));
      for (int j = 1; j <= s; ++j) lhs = add(lhs, scaled(A.q[static_cast<std::size_t>(j) - 1], X(ip, j)));
      SumElement rhs = add(table.unit, scaled(A.m, X(ip, jp)));
      if (lhs != rhs) {
        rep.blockCount = false;
        rep.witnesses.push_back("(vii'): block count fails at (i',j') = (" + std::to_string(ip) +
                                "," + std::to_string(jp) + "): " + sum_str(lhs) + " vs " +
                                sum_str(rhs));
      }
    }
  return rep;
}

bool printed_block_count_holds(const MorphismTable& table) {
  const Shape& A = table.source;
  auto X = [&](int i, int j) -> const SumElement& { return table.at(GenKey::x(i, j)); };
  for (int ip = 1; ip <= static_cast<int>(A.r()); ++ip)
    for (int jp = 1; jp <= static_cast<int>(A.s()); ++jp) {
      SumElement lhs = scaled(A.p[0], X(1, jp));
      for (int i = 2; i <= static_cast<int>(A.r()); ++i)
        lhs = add(lhs, scaled(A.p[static_cast<std::size_t>(i) - 1], X(i, jp)));
      for (int j = 1; j <= static_cast<int>(A.s()); ++j)
        lhs = add(lhs, scaled(A.q[static_cast<std::size_t>(j) - 1], X(ip, j)));
      SumElement rhs = add(table.unit, scaled(2 * A.m - 1, X(ip, jp)));
      if (lhs != rhs) return false;
    }
  return true;
}

Extraction extract_tuple(const MorphismTable& table, std::size_t summand) {
  const Shape& A = table.source;
  Shape vs = table.target.value_shape(summand);
  if (vs.r() != 1 || vs.s() != 1)
    fail(Errc::DomainMismatch, "tuple extraction works over matrix or interval targets");
  auto val = [&](int i, int j) -> std::int64_t {
    const RankFunction& v = table.at(GenKey::x(i, j)).comps[summand];
    ExtNat base = v.at_left(1);
    if (base.is_infinite())
      fail(Errc::NegativeMultiplicity, "x-value is infinite; not a compact class");
    return base.finite_value();
  };
  Extraction ex;
  std::int64_t best = val(1, 1);
  ex.iPrime = 1;
  ex.jPrime = 1;
  for (int i = 1; i <= static_cast<int>(A.r()); ++i)
    for (int j = 1; j <= static_cast<int>(A.s()); ++j)
      if (val(i, j) < best) {
        best = val(i, j);
        ex.iPrime = i;
        ex.jPrime = j;
      }
  ex.mu = best;
  for (int i = 1; i <= static_cast<int>(A.r()); ++i) {
    std::int64_t v = val(i, ex.jPrime) - ex.mu;
    if (v < 0) fail(Errc::NegativeMultiplicity, "negative nu multiplicity");
    ex.nu.push_back(v);
  }
  for (int j = 1; j <= static_cast<int>(A.s()); ++j) {
    std::int64_t v = val(ex.iPrime, j) - ex.mu;
    if (v < 0) fail(Errc::NegativeMultiplicity, "negative omega multiplicity");
    ex.omega.push_back(v);
  }
  return ex;
}

ZProfile z_profile(const MorphismTable& table, std::size_t summand, int iPrime, int jPrime) {
  ZProfile zp;
  zp.depth = table.depth;
  const std::int64_t levels = std::int64_t{1} << table.depth;
  const RankFunction& corner = table.at(GenKey::x(iPrime, jPrime)).comps[summand];
  const RankFunction& anchor = table.at(GenKey::x(iPrime, 1)).comps[summand];
  for (std::int64_t k = 0; k < levels; ++k) {
    const RankFunction& yk = table.at(GenKey::y(dyadic(k, table.depth))).comps[summand];
    zp.z.push_back(checked_sub(add(yk, corner), anchor, Errc::NegativeRank));
  }
  return zp;
}

std::vector<EigenFunction> eigenfunctions_from_profile(const ZProfile& zp, std::int64_t mu) {
  const std::int64_t den = std::int64_t{1} << zp.depth;
  if (!zp.z.empty()) {
    RankFunction bound = RankFunction::constant(zp.z[0].shape(), ExtNat(mu));
    if (!leq(zp.z[0], bound))
      fail(Errc::Infeasible, "z_0 exceeds the available eigenvalue count mu = " +
                                 std::to_string(mu));
  }
  if (mu == 0) return {};

  std::vector<Rat> grid{Rat(0), Rat(1)};
  for (const auto& z : zp.z)
    for (const auto& b : z.breaks()) grid.push_back(b);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  Rat minGap = 1;
  for (std::size_t a = 0; a + 1 < grid.size(); ++a)
    minGap = std::min(minGap, Rat(grid[a + 1] - grid[a]));
  Rat w = minGap / 4;

  auto point_count = [&](const Rat& t, std::int64_t i) {
    std::int64_t c = 0;
    for (const auto& z : zp.z) {
      ExtNat v = t == 0 ? z.at_left(1) : (t == 1 ? z.at_right(1) : z.at_interior(t));
      if (ExtNat(i) <= v) ++c;
    }
    return Rat(c, den);
  };
  auto cell_count = [&](std::size_t a, std::int64_t i) {
    Rat mid = (grid[a] + grid[a + 1]) / 2;
    std::int64_t c = 0;
    for (const auto& z : zp.z)
      if (ExtNat(i) <= z.at_interior(mid)) ++c;
    return Rat(c, den);
  };

  std::vector<EigenFunction> out;  // descending: lambda_1 >= lambda_2 >= ...
  for (std::int64_t i = 1; i <= mu; ++i) {
    std::vector<EigenFunction::Node> nodes;
    nodes.push_back({Rat(0), point_count(Rat(0), i)});
    for (std::size_t a = 0; a + 1 < grid.size(); ++a) {
      Rat plateau = cell_count(a, i);
      nodes.push_back({grid[a] + w, plateau});
      nodes.push_back({grid[a + 1] - w, plateau});
      nodes.push_back({grid[a + 1], point_count(grid[a + 1], i)});
    }
    out.emplace_back(std::move(nodes));
  }
  return out;
}

namespace {

StandardFormHom assemble_matrix_lift(const MorphismTable& table) {
  StandardFormHom h;
  h.source = table.source;
  h.target = table.target;
  h.unital = table.unit == table.target.unit_class();

  if (table.target.kind == Target::Kind::IntervalMatrix) {
    Extraction ex = extract_tuple(table, 0);
    ZProfile zp = z_profile(table, 0, ex.iPrime, ex.jPrime);
    std::vector<EigenFunction> lams = eigenfunctions_from_profile(zp, ex.mu);
    std::reverse(lams.begin(), lams.end());  // store ascending
    h.nu = ex.nu;
    h.omega = ex.omega;
    h.lambdas = std::move(lams);
  } else {
    const std::int64_t den = std::int64_t{1} << table.depth;
    for (std::size_t c = 0; c < table.target.summand_count(); ++c) {
      Extraction ex = extract_tuple(table, c);
      ZProfile zp = z_profile(table, c, ex.iPrime, ex.jPrime);
      if (!zp.z.empty()) {
        RankFunction bound = RankFunction::constant(zp.z[0].shape(), ExtNat(ex.mu));
        if (!leq(zp.z[0], bound)) fail(Errc::Infeasible, "z_0 exceeds mu in a matrix summand");
      }
      std::vector<Rat> vals;
      for (std::int64_t i = 1; i <= ex.mu; ++i) {
        std::int64_t cnt = 0;
        for (const auto& z : zp.z)
          if (ExtNat(i) <= z.at_left(1)) ++cnt;
        vals.push_back(Rat(cnt, den));
      }
      std::sort(vals.begin(), vals.end());
      h.summands.push_back(EndpointTuple{ex.nu, ex.omega, std::move(vals)});
    }
  }
  return make_standard_hom(std::move(h));
}

}  // namespace

StandardFormHom lift_to_matrix(const MorphismTable& table) {
  if (table.target.kind == Target::Kind::Sia)
    fail(Errc::DomainMismatch, "matrix lift needs a matrix or interval target");
  ConditionReport rep = check_conditions(table);
  if (!rep.pass()) {
    std::string msg = "lifting hypotheses fail:";
    for (const auto& wtn : rep.witnesses) msg += "\n  - " + wtn;
    fail(Errc::ValidationFailed, msg);
  }
  StandardFormHom h = assemble_matrix_lift(table);
  GeneratorSet f = make_generator_set(table.source, table.depth);
  if (!in_entourage(f, table, restrict_table(h, table.depth)))
    fail(Errc::PostconditionFailure, "matrix lift missed the entourage at its own depth");
  return h;
}

namespace {

RankFunction to_interval_value(const RankFunction& v, const Shape& ishape) {
  return RankFunction(ishape, {v.sum_left()}, {v.sum_right()}, v.breaks(), v.cells(), v.points());
}

MorphismTable project_interior(const MorphismTable& table) {
  MorphismTable out;
  out.source = table.source;
  out.depth = table.depth;
  out.target = Target::interval_matrix(table.target.shape.m);
  Shape ishape = out.target.value_shape(0);
  for (const auto& [k, v] : table.values)
    out.values[k] = SumElement{{to_interval_value(v.comps[0], ishape)}};
  out.unit = SumElement{{to_interval_value(table.unit.comps[0], ishape)}};
  return out;
}

MorphismTable project_fiber(const MorphismTable& table, int side) {
  const Shape& B = table.target.shape;
  MorphismTable out;
  out.source = table.source;
  out.depth = table.depth;
  out.target = Target::matrix_sum(side == 0 ? B.p : B.q);
  auto fiber = [&](const RankFunction& v) {
    SumElement e;
    for (std::size_t c = 0; c < out.target.sizes.size(); ++c) {
      ExtNat val = side == 0 ? v.at_left(static_cast<int>(c) + 1)
                             : v.at_right(static_cast<int>(c) + 1);
      e.comps.push_back(RankFunction::constant(out.target.value_shape(c), val));
    }
    return e;
  };
  for (const auto& [k, v] : table.values) out.values[k] = fiber(v.comps[0]);
  out.unit = fiber(table.unit.comps[0]);
  return out;
}

/// Replace the endpoint values of an ascending family by the target lists:
/// an additive ramp inside the windows [0,h] and [1-h,1], clamped to [0,1],
/// followed by a nodewise sort of the family. Sorting keeps the value
/// multiset at every point (so all rank counts are unchanged), restores the
/// ascending chain, and is 1-Lipschitz against the unpinned family, so the
/// pointwise move stays bounded by the endpoint gaps. When the pins already
/// match the endpoint values, the family is returned unchanged.
std::vector<EigenFunction> pin_endpoints(const std::vector<EigenFunction>& lams,
                                         const std::vector<Rat>& v0, const std::vector<Rat>& v1) {
  const Rat h(1, 4);
  std::vector<Rat> ts{Rat(0), h, 1 - h, Rat(1)};
  for (const auto& lam : lams)
    for (const auto& nd : lam.nodes()) ts.push_back(nd.t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<std::vector<Rat>> vals(ts.size(), std::vector<Rat>(lams.size()));
  for (std::size_t i = 0; i < lams.size(); ++i) {
    Rat c0 = v0[i] - lams[i](Rat(0));
    Rat c1 = v1[i] - lams[i](Rat(1));
    for (std::size_t a = 0; a < ts.size(); ++a) {
      const Rat& t = ts[a];
      Rat v = lams[i](t);
      if (t < h)
        v += c0 * (1 - t / h);
      else if (t > 1 - h)
        v += c1 * (1 - (1 - t) / h);
      if (v < 0) v = 0;
      if (v > 1) v = 1;
      vals[a][i] = v;
    }
  }
  for (auto& row : vals) std::sort(row.begin(), row.end());

  std::vector<EigenFunction> out;
  for (std::size_t i = 0; i < lams.size(); ++i) {
    std::vector<EigenFunction::Node> nodes;
    for (std::size_t a = 0; a < ts.size(); ++a) nodes.push_back({ts[a], vals[a][i]});
    out.emplace_back(std::move(nodes));
  }
  return out;
}

}  // namespace

StandardFormHom lift_to_sia(const MorphismTable& table) {
  if (table.target.kind != Target::Kind::Sia)
    fail(Errc::DomainMismatch, "lift_to_sia needs a splitting interval target");
  if (table.depth < 4)
    fail(Errc::IndexOutOfRange, "lifting through a splitting target needs depth >= 4");
  ConditionReport rep = check_conditions(table);
  if (!rep.pass()) {
    std::string msg = "lifting hypotheses fail:";
    for (const auto& wtn : rep.witnesses) msg += "\n  - " + wtn;
    fail(Errc::ValidationFailed, msg);
  }

  StandardFormHom interior = lift_to_matrix(project_interior(table));
  StandardFormHom fiber0 = lift_to_matrix(project_fiber(table, 0));
  StandardFormHom fiber1 = lift_to_matrix(project_fiber(table, 1));

  Rat tol(1, std::int64_t{1} << (table.depth - 2));
  auto align = [&](int side, const StandardFormHom& fiber) {
    EndpointTuple have = interior_at(interior, side);
    EndpointTuple want = aggregate_side(fiber, side);
    if (have.nu != want.nu || have.omega != want.omega ||
        have.lambdas.size() != want.lambdas.size())
      fail(Errc::BoundaryMisalignment, "classifying tuples of the fiber lift at " +
                                           std::to_string(side) +
                                           " do not match the interior lift");
    for (std::size_t k = 0; k < have.lambdas.size(); ++k) {
      Rat d = have.lambdas[k] - want.lambdas[k];
      if (d < 0) d = -d;
      if (d > tol)
        fail(Errc::BoundaryMisalignment, "fiber eigenvalues at " + std::to_string(side) +
                                             " drift beyond 1/2^(n-2) from the interior lift");
    }
    return want.lambdas;
  };
  std::vector<Rat> v0 = align(0, fiber0);
  std::vector<Rat> v1 = align(1, fiber1);

  StandardFormHom h;
  h.source = table.source;
  h.target = table.target;
  h.unital = table.unit == table.target.unit_class();
  h.nu = interior.nu;
  h.omega = interior.omega;
  h.lambdas = pin_endpoints(interior.lambdas, v0, v1);
  h.at0 = fiber0.summands;
  h.at1 = fiber1.summands;
  StandardFormHom result = make_standard_hom(std::move(h));

  GeneratorSet f = make_generator_set(table.source, table.depth - 3);
  if (!in_entourage(f, table, restrict_table(result, table.depth - 3)))
    fail(Errc::PostconditionFailure, "splitting lift missed the entourage at depth n-3");
  return result;
}

}  // namespace cusp
