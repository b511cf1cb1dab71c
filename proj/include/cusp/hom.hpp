#ifndef CUSP_HOM_HPP
#define CUSP_HOM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cusp/eigen_function.hpp"
#include "cusp/rank_function.hpp"
#include "cusp/shape.hpp"

namespace cusp {

/// Element of Cu of a finite direct sum: one rank function per summand.
struct SumElement {
  std::vector<RankFunction> comps;

  friend bool operator==(const SumElement& a, const SumElement& b) { return a.comps == b.comps; }
  friend bool operator!=(const SumElement& a, const SumElement& b) { return !(a == b); }
};

bool leq(const SumElement& a, const SumElement& b);
SumElement add(const SumElement& a, const SumElement& b);
bool is_compact(const SumElement& a);
bool way_below(const SumElement& a, const SumElement& b);
SumElement scaled(std::int64_t n, const SumElement& a);

/// Codomain of a homomorphism: a splitting interval algebra, a matrix algebra
/// over C[0,1], or a finite direct sum of matrix algebras. Cu-values over a
/// matrix-algebra summand are constant functions (Cu(M_k) = N u {inf}).
struct Target {
  enum class Kind { Sia, IntervalMatrix, MatrixSum };

  Kind kind = Kind::Sia;
  Shape shape;                        // Sia
  std::int64_t m = 0;                 // IntervalMatrix
  std::vector<std::int64_t> sizes;    // MatrixSum

  static Target sia(Shape sh);
  static Target interval_matrix(std::int64_t m);
  static Target matrix_sum(std::vector<std::int64_t> sizes);

  std::size_t summand_count() const;
  /// Shape over which the c-th summand's rank functions are represented.
  Shape value_shape(std::size_t c) const;
  /// True when values over summand c must be constant.
  bool constant_summand(std::size_t c) const;
  SumElement unit_class() const;
  SumElement zero() const;

  friend bool operator==(const Target& a, const Target& b);
  friend bool operator!=(const Target& a, const Target& b) { return !(a == b); }
  std::string str() const;
};

/// Validates a SumElement against a target (component count, shapes,
/// constancy for matrix summands). Returns violations; empty means fine.
std::vector<std::string> validate_value(const SumElement& v, const Target& t);

/// One diagonal block pattern at a point: multiplicities of the source
/// endpoint representations plus finitely many evaluation points. Normalized:
/// some nu_i = 0 and some omega_j = 0, lambdas ascending.
struct EndpointTuple {
  std::vector<std::int64_t> nu, omega;
  std::vector<Rat> lambdas;

  friend bool operator==(const EndpointTuple& a, const EndpointTuple& b) {
    return a.nu == b.nu && a.omega == b.omega && a.lambdas == b.lambdas;
  }
  friend bool operator!=(const EndpointTuple& a, const EndpointTuple& b) { return !(a == b); }
};

/// The classifying data of a standard-form homomorphism out of a splitting
/// interval algebra: interior multiplicities (nu-bar, omega-bar) and ordered
/// continuous eigenvalue functions, plus one EndpointTuple per target
/// endpoint (Sia targets) or per matrix summand (MatrixSum targets). The
/// gluing unitary is not stored; only its effect on the endpoint fibers is.
struct StandardFormHom {
  Shape source;
  Target target;
  bool unital = true;

  std::vector<std::int64_t> nu, omega;   // interior data; unused for MatrixSum
  std::vector<EigenFunction> lambdas;    // ascending chain
  std::vector<EndpointTuple> at0, at1;   // Sia targets: r' and s' tuples
  std::vector<EndpointTuple> summands;   // MatrixSum targets

  std::size_t mu() const { return lambdas.size(); }

  friend bool operator==(const StandardFormHom& a, const StandardFormHom& b);
  friend bool operator!=(const StandardFormHom& a, const StandardFormHom& b) { return !(a == b); }
};

/// Invariant report; empty means valid.
std::vector<std::string> validate(const StandardFormHom& h);

/// Validating constructor; throws ValidationFailed listing every violation.
StandardFormHom make_standard_hom(StandardFormHom data);

/// The induced Cu-morphism on a single element, by the trace formula
///   (Cu(phi) f)(t) = sum_i nu_i f(0_i) + sum_j omega_j f(1_j) + sum_k f~(lambda_k(t)),
/// where f~ extends f to [0,1] by f~(0) = sum f(0_i), f~(1) = sum f(1_j);
/// at target endpoints the same formula runs over that endpoint's tuple.
/// Output breakpoints are computed exactly from the level crossings of the
/// eigenvalue functions against f's grid.
SumElement apply_hom(const StandardFormHom& h, const RankFunction& f);

struct PatternDistance {
  bool tuplesEqual = false;
  std::optional<Rat> maxGap;  // defined when the eigenvalue counts agree
};

/// Compares classifying tuples; maxGap is the exact sup-distance between
/// matching eigenvalue functions.
PatternDistance eigen_pattern_distance(const StandardFormHom& f, const StandardFormHom& g);

/// Canonical form of raw block data: subtracts the common part of the
/// endpoint multiplicities and re-expresses it as eigenvalues at 0 and 1,
/// then sorts. Two descriptions of the same block pattern normalize equally.
EndpointTuple normalize_tuple(std::vector<std::int64_t> nu, std::vector<std::int64_t> omega,
                              std::vector<Rat> lambdas);

/// Aggregated, normalized tuple of the block pattern of h at the target
/// endpoint side (0 or 1): the data of the composite map into M_{m'}.
/// For Sia targets this merges all endpoint tuples on that side.
EndpointTuple aggregate_side(const StandardFormHom& h, int side);

/// Normalized tuple of the evaluation of h's interior data at t = 0 or 1.
EndpointTuple interior_at(const StandardFormHom& h, int side);

}  // namespace cusp

#endif
