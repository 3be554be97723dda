#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracesys/rational.hpp"

namespace tracesys {

/// Univariate polynomial with exact rational coefficients, constant term
/// first. No trailing zero is stored, so the zero polynomial is empty.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  Polynomial(std::initializer_list<long> coefficients);

  static Polynomial constant(const Rational& c);
  /// c * z^k
  static Polynomial monomial(const Rational& c, int k);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  Rational coeff(int k) const;
  const Rational& leading() const { return coeffs_.back(); }
  bool has_integer_coefficients() const;

  Rational operator()(const Rational& z) const;
  long double eval(long double z) const;
  Polynomial derivative() const;
  Polynomial monic() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator-(const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division: a = q*b + r with deg r < deg b. b must be nonzero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  /// Monic gcd; gcd(0,0) = 0.
  static Polynomial gcd(Polynomial a, Polynomial b);
  /// p / gcd(p, p'), monic.
  Polynomial squarefree_part() const;

  /// Coefficients as exact decimal strings ("1", "-1/2").
  std::vector<std::string> to_strings() const;
  std::string to_string(const std::string& var = "z") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntMatrix = std::vector<std::vector<BigInt>>;
using RealMatrix = std::vector<std::vector<double>>;

/// Square matrix of polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(std::size_t n) : n_(n), entries_(n * n) {}
  static PolyMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  Polynomial& at(std::size_t i, std::size_t j) { return entries_.at(i * n_ + j); }
  const Polynomial& at(std::size_t i, std::size_t j) const { return entries_.at(i * n_ + j); }
  int degree() const;

  /// Coefficient matrix of z^k.
  RationalMatrix coefficient(int k) const;
  RationalMatrix eval(const Rational& z) const;
  RealMatrix eval(long double z) const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Polynomial> entries_;
};

/// Exact determinant by fraction-free (Bareiss) elimination over Q[z].
Polynomial det(const PolyMatrix& m);
/// Laplace expansion along the first row; exponential, for small matrices.
Polynomial det_cofactor(const PolyMatrix& m);

/// Sturm sequence of the square-free part of a polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& p);
  int sign_variations(const Rational& x) const;
  /// Distinct real roots in (lo, hi]; requires p(lo) != 0.
  int count_roots(const Rational& lo, const Rational& hi) const;
  const Polynomial& squarefree() const { return seq_.front(); }

 private:
  std::vector<Polynomial> seq_;
};

struct RootResult {
  bool infinite = false;
  /// Isolating bracket (lower, upper] for the root.
  Rational lower;
  Rational upper;
  /// Set when the root is rational.
  std::optional<Rational> exact;
  /// Decimal value; +inf when infinite.
  double value = 0.0;
  /// |p(value)| evaluated exactly at the double value.
  double residual = 0.0;
  /// Square-free factor of p that the root annihilates (rational linear
  /// factors removed for irrational roots).
  Polynomial defining;
  /// No complex root of strictly smaller modulus (companion eigenvalues).
  bool minimal_modulus_confirmed = true;
  std::string diagnostic;
};

/// Bisection stops once the bracket is at most this wide.
inline constexpr double kRootBracketWidth = 1e-15;

/// Smallest root in (0,1]. A nonzero constant yields `infinite`; throws
/// AnalysisError for the zero polynomial or when no root lies in (0,1].
RootResult smallest_positive_root(const Polynomial& p);

/// All eigenvalue moduli of the companion matrix of p (p nonconstant).
std::vector<double> root_moduli(const Polynomial& p);

/// Unit-norm kernel vector with first nonzero coordinate positive. Ranks are
/// decided by Gaussian elimination with full pivoting: a pivot whose modulus
/// is at most tol counts as zero. Throws AnalysisError when the kernel is
/// trivial or has dimension at least two.
std::vector<double> kernel_vector(const RealMatrix& a, double tol = 1e-9);

/// Exact kernel generator, scaled so that its first nonzero coordinate is 1.
/// Throws AnalysisError unless the kernel has dimension exactly one.
std::vector<Rational> exact_kernel_vector(const RationalMatrix& a);

/// Coefficients G_0..G_n of the formal inverse of m, from G_0 = Id and
/// G_k = -sum_{j<k} G_j M_{k-j}. Requires m(0) = Id and integer coefficients.
std::vector<IntMatrix> series_inverse_coeffs(const PolyMatrix& m, int n);

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace tracesys
