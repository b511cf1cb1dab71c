#ifndef CUSP_EXTNAT_HPP
#define CUSP_EXTNAT_HPP

#include <cstdint>
#include <string>

#include "cusp/errors.hpp"

namespace cusp {

/// Value in N u {infinity}. Addition and scaling saturate at infinity;
/// subtraction is checked, never clipped: an underflow is a caller bug or
/// an invalid input document, and must surface as an error.
class ExtNat {
public:
  ExtNat() : inf_(false), v_(0) {}
  explicit ExtNat(std::int64_t v) : inf_(false), v_(v) {
    if (v < 0) fail(Errc::Internal, "negative ExtNat");
  }

  static ExtNat infinity() {
    ExtNat x;
    x.inf_ = true;
    return x;
  }

  bool is_infinite() const { return inf_; }
  bool is_zero() const { return !inf_ && v_ == 0; }

  std::int64_t finite_value() const {
    if (inf_) fail(Errc::InfiniteValue, "finite_value of infinity");
    return v_;
  }

  friend ExtNat operator+(ExtNat a, ExtNat b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtNat(a.v_ + b.v_);
  }
  ExtNat& operator+=(ExtNat b) { return *this = *this + b; }

  /// n * x with the usual Cu convention 0 * infinity = 0.
  friend ExtNat scale(std::int64_t n, ExtNat x) {
    if (n < 0) fail(Errc::Internal, "negative scale");
    if (n == 0) return ExtNat(0);
    if (x.inf_) return infinity();
    return ExtNat(n * x.v_);
  }

  ExtNat checked_sub(ExtNat b, Errc onUnderflow) const {
    if (b.inf_) fail(onUnderflow, "subtracting an infinite rank");
    if (inf_) return infinity();
    if (v_ < b.v_) fail(onUnderflow, "rank subtraction underflow");
    return ExtNat(v_ - b.v_);
  }

  friend bool operator==(ExtNat a, ExtNat b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator!=(ExtNat a, ExtNat b) { return !(a == b); }
  friend bool operator<=(ExtNat a, ExtNat b) {
    if (b.inf_) return true;
    if (a.inf_) return false;
    return a.v_ <= b.v_;
  }
  friend bool operator<(ExtNat a, ExtNat b) { return a <= b && a != b; }

  friend ExtNat max(ExtNat a, ExtNat b) { return a <= b ? b : a; }
  friend ExtNat min(ExtNat a, ExtNat b) { return a <= b ? a : b; }

  std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

private:
  bool inf_;
  std::int64_t v_;
};

}  // namespace cusp

#endif
