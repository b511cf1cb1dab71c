#ifndef CUSP_GEN_HPP
#define CUSP_GEN_HPP

#include <cstdint>
#include <random>

#include "cusp/hom.hpp"
#include "cusp/tower.hpp"

namespace cusp::gen {

/// Deterministic fixture source. Draws come straight off the engine, so a
/// fixed seed reproduces the same fixtures on every run and platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::int64_t below(std::int64_t n) {
    return n <= 1 ? 0 : static_cast<std::int64_t>(eng_() % static_cast<std::uint64_t>(n));
  }
  std::int64_t range(std::int64_t lo, std::int64_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (eng_() & 1) != 0; }

private:
  std::mt19937_64 eng_;
};

/// Shape with m <= maxM and at most maxBlocks endpoint blocks per side.
Shape random_shape(Rng& rng, std::int64_t maxM, std::int64_t maxBlocks);

/// Valid rank function with breakpoints on the grid k/gridDenom and all
/// values <= maxValue.
RankFunction random_rank_function(Rng& rng, const Shape& shape, std::int64_t gridDenom,
                                  std::int64_t maxValue);

/// Random unital standard-form homomorphism out of `source`; the target is
/// built from the generated block data, so every draw is valid.
StandardFormHom random_unital_hom(Rng& rng, const Shape& source, Target::Kind kind);

/// Interior perturbation: every eigenvalue function moves by the same
/// piecewise-linear bump vanishing at 0 and 1 with |bump| <= maxShift.
/// Tuples and boundary data are untouched.
StandardFormHom perturb_interior(Rng& rng, const StandardFormHom& h, const Rat& maxShift);

/// Tower of splitting interval algebras growing out of `first`, with 1-2
/// summands per stage and unital connecting layers.
Tower random_tower(Rng& rng, const Shape& first, std::size_t stageCount);

/// Family presenting Cu of a genuine homomorphism into stage 0 (which must
/// be a single summand matching g's target).
AlphaFamily family_from_hom(const StandardFormHom& g, int depth);

}  // namespace cusp::gen

#endif
