#include "cusp/gen.hpp"

#include <algorithm>

#include "cusp/entourage.hpp"

namespace cusp::gen {

namespace {

struct Atom {
  int kind;  // 0: pi_{0_i}, 1: pi_{1_j}, 2: evaluation at u
  int idx = 0;
  Rat u;
  std::size_t src = 0;  // contributing source, for pooled partitions
};

std::int64_t atom_dim(const Shape& src, const Atom& a) {
  if (a.kind == 0) return src.p[static_cast<std::size_t>(a.idx) - 1];
  if (a.kind == 1) return src.q[static_cast<std::size_t>(a.idx) - 1];
  return src.m;
}

struct InteriorData {
  std::vector<std::int64_t> nu, omega;
  std::vector<EigenFunction> lambdas;

  std::int64_t dimension(const Shape& src) const {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < nu.size(); ++i) d += src.p[i] * nu[i];
    for (std::size_t j = 0; j < omega.size(); ++j) d += src.q[j] * omega[j];
    return d + static_cast<std::int64_t>(lambdas.size()) * src.m;
  }
};

std::vector<EigenFunction> random_eigen_family(Rng& rng, std::size_t mu) {
  if (mu == 0) return {};
  // One shared node grid; nodewise-sorted values keep the family a chain.
  std::vector<Rat> ts{Rat(0), Rat(1)};
  std::int64_t pieces = rng.range(1, 3);
  std::vector<std::int64_t> picks;
  for (std::int64_t k = 1; k < pieces; ++k) picks.push_back(rng.range(1, 7));
  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
  for (auto k : picks) ts.push_back(Rat(k, 8));
  std::sort(ts.begin(), ts.end());

  std::vector<std::vector<Rat>> vals(ts.size(), std::vector<Rat>(mu));
  for (auto& row : vals) {
    for (auto& v : row) v = Rat(rng.range(0, 8), 8);
    std::sort(row.begin(), row.end());
  }
  std::vector<EigenFunction> out;
  for (std::size_t i = 0; i < mu; ++i) {
    std::vector<EigenFunction::Node> nodes;
    for (std::size_t a = 0; a < ts.size(); ++a) nodes.push_back({ts[a], vals[a][i]});
    out.emplace_back(std::move(nodes));
  }
  return out;
}

InteriorData random_interior(Rng& rng, const Shape& src, bool allowZero) {
  InteriorData d;
  std::size_t mu = static_cast<std::size_t>(rng.below(3));
  d.nu.assign(src.r(), 0);
  d.omega.assign(src.s(), 0);
  for (auto& v : d.nu) v = rng.below(3);
  for (auto& v : d.omega) v = rng.below(3);
  d.nu[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(src.r())))] = 0;
  d.omega[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(src.s())))] = 0;
  d.lambdas = random_eigen_family(rng, mu);
  if (!allowZero && d.dimension(src) == 0) d.lambdas = random_eigen_family(rng, 1);
  return d;
}

std::vector<Atom> side_atoms(const Shape& src, const InteriorData& d, int side,
                             std::size_t srcIndex) {
  std::int64_t z0 = 0, z1 = 0;
  std::vector<Atom> atoms;
  for (const auto& lam : d.lambdas) {
    Rat v = lam(Rat(side));
    if (v == 0)
      ++z0;
    else if (v == 1)
      ++z1;
    else
      atoms.push_back({2, 0, v, srcIndex});
  }
  for (std::size_t i = 0; i < src.r(); ++i)
    for (std::int64_t c = 0; c < d.nu[i] + z0; ++c)
      atoms.push_back({0, static_cast<int>(i) + 1, Rat(0), srcIndex});
  for (std::size_t j = 0; j < src.s(); ++j)
    for (std::int64_t c = 0; c < d.omega[j] + z1; ++c)
      atoms.push_back({1, static_cast<int>(j) + 1, Rat(0), srcIndex});
  return atoms;
}

/// Group assignment with every group nonempty (needs atoms.size() >= groups).
std::vector<std::size_t> random_partition(Rng& rng, std::size_t count, std::size_t groups) {
  std::vector<std::size_t> assign(count);
  for (auto& g : assign) g = static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(groups)));
  for (std::size_t g = 0; g < groups; ++g) {
    if (std::find(assign.begin(), assign.end(), g) != assign.end()) continue;
    // steal a slot from a group with spares
    for (std::size_t k = 0; k < count; ++k) {
      std::size_t owner = assign[k];
      if (std::count(assign.begin(), assign.end(), owner) > 1) {
        assign[k] = g;
        break;
      }
    }
  }
  return assign;
}

EndpointTuple tuple_from_atoms(const Shape& src, const std::vector<Atom>& atoms) {
  std::vector<std::int64_t> nu(src.r(), 0), omega(src.s(), 0);
  std::vector<Rat> evals;
  for (const auto& a : atoms) {
    if (a.kind == 0)
      ++nu[static_cast<std::size_t>(a.idx) - 1];
    else if (a.kind == 1)
      ++omega[static_cast<std::size_t>(a.idx) - 1];
    else
      evals.push_back(a.u);
  }
  return normalize_tuple(std::move(nu), std::move(omega), std::move(evals));
}

}  // namespace

Shape random_shape(Rng& rng, std::int64_t maxM, std::int64_t maxBlocks) {
  std::int64_t m = rng.range(1, maxM);
  auto blocks = [&](std::int64_t total) {
    std::vector<std::int64_t> out;
    std::int64_t left = total;
    while (left > 0) {
      if (static_cast<std::int64_t>(out.size()) + 1 == maxBlocks) {
        out.push_back(left);
        break;
      }
      std::int64_t take = rng.range(1, left);
      out.push_back(take);
      left -= take;
    }
    return out;
  };
  return make_shape(m, blocks(m), blocks(m));
}

RankFunction random_rank_function(Rng& rng, const Shape& shape, std::int64_t gridDenom,
                                  std::int64_t maxValue) {
  std::vector<Rat> breaks{Rat(0), Rat(1)};
  for (std::int64_t k = 1; k < gridDenom; ++k)
    if (rng.below(3) == 0) breaks.push_back(Rat(k, gridDenom));
  std::sort(breaks.begin(), breaks.end());

  std::vector<ExtNat> cells, points;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) cells.push_back(ExtNat(rng.range(0, maxValue)));
  for (std::size_t k = 0; k + 1 < cells.size(); ++k) {
    std::int64_t cap = std::min(cells[k].finite_value(), cells[k + 1].finite_value());
    points.push_back(ExtNat(rng.range(0, cap)));
  }
  auto split = [&](std::int64_t total, std::size_t parts) {
    std::vector<ExtNat> out(parts, ExtNat(0));
    std::int64_t budget = rng.range(0, total);
    for (std::int64_t c = 0; c < budget; ++c)
      out[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(parts)))] += ExtNat(1);
    return out;
  };
  std::vector<ExtNat> left = split(cells.front().finite_value(), shape.r());
  std::vector<ExtNat> right = split(cells.back().finite_value(), shape.s());
  return RankFunction(shape, std::move(left), std::move(right), std::move(breaks),
                      std::move(cells), std::move(points));
}

StandardFormHom random_unital_hom(Rng& rng, const Shape& source, Target::Kind kind) {
  StandardFormHom h;
  h.source = source;
  h.unital = true;

  if (kind == Target::Kind::IntervalMatrix) {
    InteriorData d = random_interior(rng, source, false);
    h.nu = d.nu;
    h.omega = d.omega;
    h.lambdas = d.lambdas;
    h.target = Target::interval_matrix(d.dimension(source));
    return make_standard_hom(std::move(h));
  }

  if (kind == Target::Kind::MatrixSum) {
    std::size_t count = static_cast<std::size_t>(rng.range(1, 2));
    std::vector<std::int64_t> sizes;
    for (std::size_t c = 0; c < count; ++c) {
      std::vector<std::int64_t> nu(source.r(), 0), omega(source.s(), 0);
      for (auto& v : nu) v = rng.below(2);
      for (auto& v : omega) v = rng.below(2);
      nu[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(source.r())))] = 0;
      omega[static_cast<std::size_t>(rng.below(static_cast<std::int64_t>(source.s())))] = 0;
      std::vector<Rat> evals;
      for (std::int64_t k = rng.below(3); k > 0; --k) evals.push_back(Rat(rng.range(0, 8), 8));
      EndpointTuple t = normalize_tuple(std::move(nu), std::move(omega), std::move(evals));
      std::int64_t dim = 0;
      for (std::size_t i = 0; i < source.r(); ++i) dim += source.p[i] * t.nu[i];
      for (std::size_t j = 0; j < source.s(); ++j) dim += source.q[j] * t.omega[j];
      dim += static_cast<std::int64_t>(t.lambdas.size()) * source.m;
      if (dim == 0) {
        t.lambdas.push_back(Rat(1, 2));
        dim = source.m;
      }
      sizes.push_back(dim);
      h.summands.push_back(std::move(t));
    }
    h.target = Target::matrix_sum(std::move(sizes));
    return make_standard_hom(std::move(h));
  }

  InteriorData d = random_interior(rng, source, false);
  h.nu = d.nu;
  h.omega = d.omega;
  h.lambdas = d.lambdas;
  std::int64_t m = d.dimension(source);

  auto makeSide = [&](int side, std::vector<EndpointTuple>& tuples) {
    std::vector<Atom> atoms = side_atoms(source, d, side, 0);
    std::size_t groups =
        static_cast<std::size_t>(rng.range(1, std::min<std::int64_t>(2, static_cast<std::int64_t>(atoms.size()))));
    auto assign = random_partition(rng, atoms.size(), groups);
    std::vector<std::int64_t> blockSizes(groups, 0);
    for (std::size_t g = 0; g < groups; ++g) {
      std::vector<Atom> mine;
      for (std::size_t k = 0; k < atoms.size(); ++k)
        if (assign[k] == g) {
          mine.push_back(atoms[k]);
          blockSizes[g] += atom_dim(source, atoms[k]);
        }
      tuples.push_back(tuple_from_atoms(source, mine));
    }
    return blockSizes;
  };
  std::vector<std::int64_t> p = makeSide(0, h.at0);
  std::vector<std::int64_t> q = makeSide(1, h.at1);
  h.target = Target::sia(make_shape(m, std::move(p), std::move(q)));
  return make_standard_hom(std::move(h));
}

StandardFormHom perturb_interior(Rng& rng, const StandardFormHom& h, const Rat& maxShift) {
  std::vector<EigenFunction::Node> bumpNodes{{Rat(0), Rat(0)}};
  // Bump profile scaled into [0, maxShift]; the sign flips uniformly.
  bool negate = rng.coin();
  Rat peak = maxShift * Rat(rng.range(1, 2), 2);
  bumpNodes.push_back({Rat(rng.range(1, 3), 4), peak});
  bumpNodes.push_back({Rat(1), Rat(0)});

  auto bump = [&](const Rat& t) {
    const auto& ns = bumpNodes;
    for (std::size_t k = 0; k + 1 < ns.size(); ++k) {
      if (t <= ns[k + 1].t) {
        Rat v =
            ns[k].v + (t - ns[k].t) * (ns[k + 1].v - ns[k].v) / (ns[k + 1].t - ns[k].t);
        return negate ? -v : v;
      }
    }
    return Rat(0);
  };

  StandardFormHom out = h;
  out.lambdas.clear();
  // One shared node grid for the whole family: clamped values stay sorted
  // nodewise, and linear interpolation between shared nodes keeps the chain.
  std::vector<Rat> ts;
  for (const auto& lam : h.lambdas)
    for (const auto& nd : lam.nodes()) ts.push_back(nd.t);
  for (const auto& nd : bumpNodes) ts.push_back(nd.t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  for (const auto& lam : h.lambdas) {
    std::vector<EigenFunction::Node> nodes;
    for (const Rat& t : ts) {
      Rat v = lam(t) + bump(t);
      if (v < 0) v = 0;
      if (v > 1) v = 1;
      nodes.push_back({t, v});
    }
    out.lambdas.emplace_back(std::move(nodes));
  }
  return make_standard_hom(std::move(out));
}

Tower random_tower(Rng& rng, const Shape& first, std::size_t stageCount) {
  Tower t;
  t.stages.push_back({first});
  for (std::size_t gap = 0; gap + 1 < stageCount; ++gap) {
    const auto& fromShapes = t.stages.back();
    std::size_t toCount = static_cast<std::size_t>(rng.range(1, 2));
    std::vector<Shape> toShapes;
    std::vector<ConnectEntry> layer;
    for (std::size_t l = 0; l < toCount; ++l) {
      std::vector<InteriorData> data;
      std::int64_t total = 0;
      for (std::size_t k = 0; k < fromShapes.size(); ++k) {
        data.push_back(random_interior(rng, fromShapes[k], k != 0));
        total += data.back().dimension(fromShapes[k]);
      }
      std::vector<Atom> atoms0, atoms1;
      for (std::size_t k = 0; k < fromShapes.size(); ++k) {
        for (auto& a : side_atoms(fromShapes[k], data[k], 0, k)) atoms0.push_back(a);
        for (auto& a : side_atoms(fromShapes[k], data[k], 1, k)) atoms1.push_back(a);
      }
      auto buildSide = [&](std::vector<Atom>& atoms, std::vector<std::vector<EndpointTuple>>& perSrc) {
        std::size_t groups = static_cast<std::size_t>(
            rng.range(1, std::min<std::int64_t>(2, static_cast<std::int64_t>(atoms.size()))));
        auto assign = random_partition(rng, atoms.size(), groups);
        std::vector<std::int64_t> blocks(groups, 0);
        perSrc.assign(fromShapes.size(), {});
        for (std::size_t k = 0; k < fromShapes.size(); ++k) {
          for (std::size_t g = 0; g < groups; ++g) {
            std::vector<Atom> mine;
            for (std::size_t aIdx = 0; aIdx < atoms.size(); ++aIdx)
              if (assign[aIdx] == g && atoms[aIdx].src == k) mine.push_back(atoms[aIdx]);
            perSrc[k].push_back(tuple_from_atoms(fromShapes[k], mine));
          }
        }
        for (std::size_t aIdx = 0; aIdx < atoms.size(); ++aIdx)
          blocks[assign[aIdx]] += atom_dim(fromShapes[atoms[aIdx].src], atoms[aIdx]);
        return blocks;
      };
      std::vector<std::vector<EndpointTuple>> at0perSrc, at1perSrc;
      std::vector<std::int64_t> p = buildSide(atoms0, at0perSrc);
      std::vector<std::int64_t> q = buildSide(atoms1, at1perSrc);
      Shape target = make_shape(total, std::move(p), std::move(q));
      toShapes.push_back(target);
      for (std::size_t k = 0; k < fromShapes.size(); ++k) {
        StandardFormHom h;
        h.source = fromShapes[k];
        h.target = Target::sia(target);
        h.unital = data[k].dimension(fromShapes[k]) == total;
        h.nu = data[k].nu;
        h.omega = data[k].omega;
        h.lambdas = data[k].lambdas;
        h.at0 = at0perSrc[k];
        h.at1 = at1perSrc[k];
        layer.push_back({k, l, make_standard_hom(std::move(h))});
      }
    }
    t.stages.push_back(std::move(toShapes));
    t.connects.push_back(std::move(layer));
  }
  for (const auto& st : t.stages) {
    SumElement unit;
    for (const auto& sh : st) unit.comps.push_back(RankFunction::unit_class(sh));
    t.distinguished.push_back(std::move(unit));
  }
  return t;
}

AlphaFamily family_from_hom(const StandardFormHom& g, int depth) {
  AlphaFamily a;
  a.source = g.source;
  a.depth = depth;
  for (const auto& [key, elem] : generator_list(g.source, depth))
    a.values[key] = StagedValue{0, apply_hom(g, elem)};
  a.unit = StagedValue{0, apply_hom(g, RankFunction::unit_class(g.source))};
  return a;
}

}  // namespace cusp::gen
