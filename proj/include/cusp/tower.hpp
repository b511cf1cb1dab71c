#ifndef CUSP_TOWER_HPP
#define CUSP_TOWER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cusp/entourage.hpp"
#include "cusp/hom.hpp"
#include "cusp/lifting.hpp"

namespace cusp {

/// One connecting block of a tower: a standard-form homomorphism from
/// summand `from` of stage i into a corner of summand `to` of stage i+1.
/// Corner sizes are carried by the hom itself (non-unital dimension slack).
struct ConnectEntry {
  std::size_t from = 0, to = 0;
  StandardFormHom hom;
};

/// A finite inductive system of direct sums of splitting interval algebras
/// with standard-form connecting maps and a distinguished class per stage
/// (the class of a strictly positive element; the unit class for unital
/// stages).
struct Tower {
  std::vector<std::vector<Shape>> stages;
  std::vector<std::vector<ConnectEntry>> connects;  // one list per gap
  std::vector<SumElement> distinguished;

  std::size_t stage_count() const { return stages.size(); }
};

std::vector<std::string> validate(const Tower& t);

/// Cu of the composite connecting map from stage `from` to stage `to`,
/// applied to one element; summand contributions are added per target block.
SumElement push_forward(const Tower& t, const SumElement& e, std::size_t from, std::size_t to);

struct StageWitness {
  bool holds = false;
  std::optional<std::size_t> stage;
};

/// Finite-tower semidecision of alpha_{i,inf}(x) <= alpha_{i,inf}(y) for
/// compact x: scans stages j >= i for push(x) <= push(y) and reports the
/// first witness. A negative answer only means the finite prefix shows no
/// witness.
StageWitness limit_leq_compact(const Tower& t, std::size_t stage, const SumElement& x,
                               const SumElement& y);

/// Finite-tower witness for x' << x in the limit order against y: a stage j
/// with push(x') <= push(y). Throws NotWayBelow unless x' << x.
StageWitness limit_way_below_check(const Tower& t, std::size_t stage, const SumElement& xPrime,
                                   const SumElement& x, const SumElement& y);

/// A value of a morphism into the limit, presented at a finite stage.
struct StagedValue {
  std::size_t stage = 0;
  SumElement value;
};

/// A finite presentation of a Cu-morphism Cu(A) -> Cu(lim B_i) on the
/// generator set F_depth: each generator's image is declared at some stage.
struct AlphaFamily {
  Shape source;
  int depth = 0;
  std::map<GenKey, StagedValue> values;
  StagedValue unit;

  AlphaFamily restricted(int depth) const;
};

std::vector<std::string> validate(const AlphaFamily& a, const Tower& t);

/// Result of lifting a family through the tower: per-summand homomorphisms
/// into one stage, with the entourage certificate recomputed at depth n-3.
struct TowerLift {
  std::size_t stage = 0;
  std::vector<StandardFormHom> homs;  // one per summand of that stage
  int certDepth = 0;
  bool certOk = false;
};

/// Descends the family's relations to the first stage where the lifting
/// hypotheses hold on every summand, lifts summandwise, and certifies
/// (alpha, Cu(phi)) in U_{F_{n-3}} against the pushed table. Throws
/// StageExhausted when the finite tower never witnesses the hypotheses.
TowerLift lift_through_tower(const Tower& t, const AlphaFamily& a, int depth);

struct IntertwiningLevel {
  int n = 0;
  std::size_t stage = 0;
  std::vector<StandardFormHom> homs;
  bool entourageOk = false;             // at F_n against the pushed family
  bool tuplesEqualPrev = true;          // against the previous level's homs
  std::optional<Rat> gapPrev;
};

/// Finite-depth certificate of the approximate intertwining: level n holds a
/// homomorphism with (alpha, Cu(phi_n)) in U_{F_n} and the pattern distance
/// to the previous level. Contains no trusted state; revalidate() recomputes
/// every check.
struct IntertwiningCertificate {
  int requestedDepth = 0;
  std::size_t stage = 0;
  std::vector<IntertwiningLevel> levels;

  bool all_checks_pass() const;
};

/// Runs lift_through_tower at depths n+3 for n = 1..N, all anchored at one
/// stage. The family must be given at depth >= N+3.
IntertwiningCertificate intertwine(const Tower& t, const AlphaFamily& a, int n);

/// Recomputes every certificate check from the tower and family alone.
bool revalidate(const Tower& t, const AlphaFamily& a, const IntertwiningCertificate& cert);

}  // namespace cusp

#endif
