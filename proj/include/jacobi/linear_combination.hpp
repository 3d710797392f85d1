#ifndef JACOBI_LINEAR_COMBINATION_HPP
#define JACOBI_LINEAR_COMBINATION_HPP

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>

#include "jacobi/canonical.hpp"

namespace jacobi {

/// Finite rational combination of canonical digests. Zero coefficients are
/// never stored; iteration is in digest order.
class LinearCombination {
 public:
  using Terms = std::map<std::string, mpq_class, std::less<>>;

  LinearCombination() = default;

  static LinearCombination single(const std::string& digest, const mpq_class& c = 1);
  /// sign * [digest]; the zero combination for ZERO classes.
  static LinearCombination of(const CanonicalDiagram& cd, const mpq_class& c = 1);

  void add(const std::string& digest, const mpq_class& c);
  void add(const CanonicalDiagram& cd, const mpq_class& c);
  void add(const LinearCombination& other, const mpq_class& scale = 1);

  LinearCombination& operator+=(const LinearCombination& o) { add(o, 1); return *this; }
  LinearCombination& operator-=(const LinearCombination& o) { add(o, -1); return *this; }
  LinearCombination& operator*=(const mpq_class& s);
  friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
  friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
  friend LinearCombination operator*(const mpq_class& s, LinearCombination a) { return a *= s; }

  mpq_class coefficient(std::string_view digest) const;
  void erase(std::string_view digest);

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  friend bool operator==(const LinearCombination& a, const LinearCombination& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
};

/// "p/q" in lowest terms, q > 0 ("3/1" for integers).
std::string format_rational(const mpq_class& q);
/// Accepts "p/q" or "p"; throws Error(Parse) otherwise.
mpq_class parse_rational(std::string_view text);

/// `digest: p/q, digest: p/q` in digest order; empty string for zero.
std::string to_string(const LinearCombination& lc);
LinearCombination parse_linear_combination(std::string_view text);

}  // namespace jacobi

#endif  // JACOBI_LINEAR_COMBINATION_HPP
