#ifndef CUSP_ENTOURAGE_HPP
#define CUSP_ENTOURAGE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cusp/hom.hpp"
#include "cusp/rank_function.hpp"

namespace cusp {

/// Name of a generator of Cu(A): x_{i,j} or y_t.
struct GenKey {
  bool isX = true;
  int i = 1, j = 1;
  Rat t;

  static GenKey x(int i, int j);
  static GenKey y(Rat t);

  std::string str() const;

  friend bool operator==(const GenKey& a, const GenKey& b);
  friend bool operator<(const GenKey& a, const GenKey& b);  // x's first, then y's by t
};

/// The finite set F_n = {x_{i,j}} u {y_{k/2^n} : 0 <= k <= 2^n} together
/// with its precomputed way-below pairs. Both y_0 and y_1 (= 0) are kept;
/// this only strengthens the entourages.
struct GeneratorSet {
  Shape shape;
  int depth = 0;
  std::vector<GenKey> keys;
  std::vector<RankFunction> elements;
  std::vector<std::pair<std::size_t, std::size_t>> wbPairs;  // (a,b) with a << b
};

GeneratorSet make_generator_set(const Shape& shape, int depth);

/// The elements of F_n in canonical order, without the way-below pairs.
std::vector<std::pair<GenKey, RankFunction>> generator_list(const Shape& shape, int depth);

/// A finite partial Cu-morphism: values on all of F_n plus the value on the
/// unit class (the corner the morphism lives in; [1_B] for unital data).
struct MorphismTable {
  Shape source;
  int depth = 0;
  Target target;
  std::map<GenKey, SumElement> values;
  SumElement unit;

  const SumElement& at(const GenKey& k) const;
  /// Slice of one target summand as a table over a single-summand target.
  MorphismTable summand(std::size_t c) const;
  /// Restriction to a coarser dyadic depth.
  MorphismTable restricted(int depth) const;
};

/// Violations of table well-formedness (totality on F_n, value validity,
/// zero at y_1, compact unit).
std::vector<std::string> validate_table(const MorphismTable& t);

/// Tabulates Cu(h) on F_n.
MorphismTable restrict_table(const StandardFormHom& h, int depth);

/// A Cu-morphism as an evaluator: induced by a standard-form homomorphism,
/// the extension of a finite table (defined only on the generators), or a
/// composite chain.
class CuMorphism {
public:
  static CuMorphism induced(StandardFormHom h);
  static CuMorphism from_table(MorphismTable t);

  SumElement operator()(const RankFunction& f) const;
  const Shape& source() const { return source_; }
  const Target& target() const { return target_; }

  friend CuMorphism cu_compose(std::vector<CuMorphism> chain);

private:
  CuMorphism() = default;
  Shape source_;
  Target target_;
  std::vector<MorphismTable> head_;      // at most one
  std::vector<StandardFormHom> chain_;   // applied left to right
};

/// Left-to-right composition; every link but the last must land in a
/// splitting interval algebra. Throws ShapeMismatch on broken chains and
/// IndexOutOfRange on an empty list.
CuMorphism cu_compose(std::vector<CuMorphism> chain);

/// Membership in U_F: alpha(a) <= beta(b) and beta(a) <= alpha(b) for every
/// way-below pair (a,b) of F. Throws DomainMismatch when the two sides do
/// not share source/target or are not defined on all of F.
bool in_entourage(const GeneratorSet& f, const MorphismTable& a, const MorphismTable& b);
bool in_entourage(const GeneratorSet& f, const CuMorphism& a, const CuMorphism& b);

/// An explicit finite subset of Cu(A) with declared way-below pairs.
struct FinitePairSet {
  std::vector<RankFunction> elements;
  std::vector<std::pair<std::size_t, std::size_t>> wbPairs;
};

bool in_entourage(const FinitePairSet& f, const CuMorphism& a, const CuMorphism& b);

/// Constructive basis theorem: an index n with U_{F_n} inside U_F, found by
/// decomposing each dominated element into interval indicators, walking the
/// canonical shrinking sequence until the dominating element is cleared, and
/// solving dyadic grid conditions per indicator pair. Throws NotWayBelow if
/// a declared pair is not in fact way below.
int basis_index(const FinitePairSet& f, const Shape& shape);

}  // namespace cusp

#endif
