#include "tracesys/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "tracesys/error.hpp"

namespace tracesys {

// ---- Polynomial -----------------------------------------------------------

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Polynomial::Polynomial(std::initializer_list<long> coefficients) {
  for (long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(const Rational& c, int k) {
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  for (auto& c : coeffs_) c.canonicalize();
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

bool Polynomial::has_integer_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

Rational Polynomial::operator()(const Rational& z) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

long double Polynomial::eval(long double z) const {
  long double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * z + static_cast<long double>(it->get_d());
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * static_cast<long>(k));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> v = coeffs_;
  const Rational lead = leading();
  for (auto& c : v) c /= lead;
  return Polynomial(std::move(v));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial operator-(const Polynomial& a) {
  std::vector<Rational> v = a.coeffs_;
  for (auto& c : v) c = -c;
  return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw AnalysisError("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs_;
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial{}, a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1));
  for (int k = a.degree(); k >= db; --k) {
    const Rational c = rem[static_cast<std::size_t>(k)] / b.leading();
    quot[static_cast<std::size_t>(k - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Polynomial Polynomial::squarefree_part() const {
  if (degree() <= 0) return monic();
  const Polynomial g = gcd(*this, derivative());
  return divmod(*this, g).first.monic();
}

std::vector<std::string> Polynomial::to_strings() const {
  std::vector<std::string> out;
  for (const auto& c : coeffs_) out.push_back(tracesys::to_string(c));
  return out;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (s.empty()) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    if (k == 0 || mag != 1) s += tracesys::to_string(mag);
    if (k >= 1) s += var;
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s;
}

// ---- PolyMatrix -----------------------------------------------------------

PolyMatrix PolyMatrix::identity(std::size_t n) {
  PolyMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Polynomial{1};
  return m;
}

int PolyMatrix::degree() const {
  int d = -1;
  for (const auto& p : entries_) d = std::max(d, p.degree());
  return d;
}

RationalMatrix PolyMatrix::coefficient(int k) const {
  RationalMatrix out(n_, std::vector<Rational>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = at(i, j).coeff(k);
  }
  return out;
}

RationalMatrix PolyMatrix::eval(const Rational& z) const {
  RationalMatrix out(n_, std::vector<Rational>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = at(i, j)(z);
  }
  return out;
}

RealMatrix PolyMatrix::eval(long double z) const {
  RealMatrix out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = static_cast<double>(at(i, j).eval(z));
  }
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.size() != b.size()) throw AnalysisError("matrix size mismatch");
  const std::size_t n = a.size();
  PolyMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial acc;
      for (std::size_t k = 0; k < n; ++k) acc += a.at(i, k) * b.at(k, j);
      c.at(i, j) = std::move(acc);
    }
  }
  return c;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.empty() ? 0 : b.front().size();
  RationalMatrix c(n, std::vector<Rational>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

// ---- determinants -----------------------------------------------------------

Polynomial det(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial{1};
  std::vector<std::vector<Polynomial>> a(n, std::vector<Polynomial>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
  }
  Polynomial previous{1};
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a[swap_with][k].is_zero()) ++swap_with;
      if (swap_with == n) return Polynomial{};
      std::swap(a[k], a[swap_with]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const Polynomial num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        auto [q, r] = Polynomial::divmod(num, previous);
        // Bareiss quotients are exact in the polynomial ring.
        if (!r.is_zero()) throw AnalysisError("inexact Bareiss division");
        a[i][j] = std::move(q);
      }
      a[i][k] = Polynomial{};
    }
    previous = a[k][k];
  }
  Polynomial d = a[n - 1][n - 1];
  return negate ? -d : d;
}

Polynomial det_cofactor(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial{1};
  if (n == 1) return m.at(0, 0);
  Polynomial total;
  for (std::size_t col = 0; col < n; ++col) {
    if (m.at(0, col).is_zero()) continue;
    PolyMatrix minor(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == col) continue;
        minor.at(i - 1, jj++) = m.at(i, j);
      }
    }
    Polynomial term = m.at(0, col) * det_cofactor(minor);
    if (col % 2 == 1) term = -term;
    total += term;
  }
  return total;
}

// ---- roots ----------------------------------------------------------------

SturmSequence::SturmSequence(const Polynomial& p) {
  if (p.is_zero()) throw AnalysisError("Sturm sequence of the zero polynomial");
  seq_.push_back(p.squarefree_part());
  if (seq_.front().degree() < 1) return;
  seq_.push_back(seq_.front().derivative());
  while (true) {
    auto r = Polynomial::divmod(seq_[seq_.size() - 2], seq_.back()).second;
    if (r.is_zero()) break;
    seq_.push_back(-r);
  }
}

int SturmSequence::sign_variations(const Rational& x) const {
  int variations = 0;
  int last = 0;
  for (const auto& q : seq_) {
    const int s = sgn(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

int SturmSequence::count_roots(const Rational& lo, const Rational& hi) const {
  return sign_variations(lo) - sign_variations(hi);
}

namespace {

std::vector<BigInt> divisors(const BigInt& n) {
  std::vector<BigInt> out;
  BigInt a = abs(n);
  if (a == 0 || a > BigInt("1000000000000")) return out;
  for (BigInt d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      out.push_back(d);
      if (d * d != a) out.push_back(a / d);
    }
  }
  return out;
}

// Integer polynomial proportional to p.
std::vector<BigInt> integer_coefficients(const Polynomial& p) {
  BigInt lcm = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<BigInt> out;
  for (const auto& c : p.coefficients()) out.push_back(BigInt(c * lcm));
  return out;
}

std::optional<Rational> rational_root_in(const Polynomial& sqfree, const Rational& lo, const Rational& hi) {
  if (sqfree.degree() < 1) return std::nullopt;
  const auto ints = integer_coefficients(sqfree);
  const Rational mid = (lo + hi) / 2;
  for (const BigInt& q : divisors(ints.back())) {
    // Any p/q in the (tiny) bracket is the rounding of mid*q.
    Rational scaled = mid * q;
    BigInt p;
    mpz_fdiv_q(p.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    for (int delta = 0; delta <= 1; ++delta) {
      Rational cand(p + delta, q);
      cand.canonicalize();
      if (cand > lo && cand <= hi && sqfree(cand) == 0) return cand;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<double> root_moduli(const Polynomial& p) {
  const int d = p.degree();
  if (d < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  const double lead = p.leading().get_d();
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -p.coeff(i).get_d() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<double> out;
  for (int i = 0; i < d; ++i) out.push_back(std::abs(solver.eigenvalues()(i)));
  std::sort(out.begin(), out.end());
  return out;
}

RootResult smallest_positive_root(const Polynomial& p) {
  if (p.is_zero()) throw AnalysisError("smallest_positive_root: zero polynomial");
  RootResult result;
  if (p.is_constant()) {
    result.infinite = true;
    result.value = std::numeric_limits<double>::infinity();
    return result;
  }
  // Strip the factor z^k so that the left end of the search interval is not
  // a root.
  std::size_t shift = 0;
  while (p.coefficients()[shift] == 0) ++shift;
  Polynomial q(std::vector<Rational>(p.coefficients().begin() + static_cast<std::ptrdiff_t>(shift), p.coefficients().end()));
  if (q.is_constant()) throw AnalysisError("no root in (0,1] for " + p.to_string());

  const SturmSequence sturm(q);
  Rational lo(0);
  Rational hi(1);
  if (sturm.count_roots(lo, hi) == 0) {
    throw AnalysisError("no root in (0,1] for " + p.to_string());
  }
  const Rational width(kRootBracketWidth);
  while (hi - lo > width) {
    const Rational mid = (lo + hi) / 2;
    if (sturm.count_roots(lo, mid) > 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.lower = lo;
  result.upper = hi;
  const Polynomial& sqfree = sturm.squarefree();
  result.exact = rational_root_in(sqfree, lo, hi);
  if (result.exact) {
    result.value = result.exact->get_d();
    result.defining = Polynomial(std::vector<Rational>{-*result.exact, Rational(1)});
  } else {
    result.value = Rational((lo + hi) / 2).get_d();
    // Remove rational linear factors from the square-free part.
    Polynomial rest = sqfree;
    const auto ints = integer_coefficients(sqfree);
    for (const BigInt& den : divisors(ints.back())) {
      for (const BigInt& num : divisors(ints.front())) {
        for (int sign : {1, -1}) {
          Rational cand(num * sign, den);
          cand.canonicalize();
          if (rest.degree() >= 1 && rest(cand) == 0) {
            rest = Polynomial::divmod(rest, Polynomial(std::vector<Rational>{-cand, Rational(1)})).first;
          }
        }
      }
    }
    result.defining = rest.monic();
  }
  result.residual = std::abs(p(Rational(result.value)).get_d());

  // Cross-check that no complex root has smaller modulus.
  const auto moduli = root_moduli(sqfree);
  if (!moduli.empty() && moduli.front() < result.value - 1e-6) {
    result.minimal_modulus_confirmed = false;
    result.diagnostic = "a complex root of modulus " + to_decimal(moduli.front()) +
                        " is smaller than the positive root " + to_decimal(result.value);
  }
  return result;
}

// ---- kernels ---------------------------------------------------------------

std::vector<double> kernel_vector(const RealMatrix& input, double tol) {
  const std::size_t n = input.size();
  for (const auto& row : input) {
    if (row.size() != n) throw AnalysisError("kernel_vector: matrix is not square");
  }
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = input[i][j];
  }
  std::vector<std::size_t> col(n);
  for (std::size_t j = 0; j < n; ++j) col[j] = j;

  std::size_t rank = 0;
  for (; rank < n; ++rank) {
    std::size_t pi = rank;
    std::size_t pj = rank;
    long double best = 0;
    for (std::size_t i = rank; i < n; ++i) {
      for (std::size_t j = rank; j < n; ++j) {
        if (std::abs(a[i][j]) > best) {
          best = std::abs(a[i][j]);
          pi = i;
          pj = j;
        }
      }
    }
    if (best <= tol) break;
    std::swap(a[rank], a[pi]);
    for (auto& row : a) std::swap(row[rank], row[pj]);
    std::swap(col[rank], col[pj]);
    for (std::size_t i = rank + 1; i < n; ++i) {
      const long double factor = a[i][rank] / a[rank][rank];
      if (factor == 0) continue;
      for (std::size_t j = rank; j < n; ++j) a[i][j] -= factor * a[rank][j];
    }
  }
  if (rank == n) throw AnalysisError("kernel_vector: matrix has full rank at tolerance " + to_decimal(tol));
  if (n - rank >= 2) {
    throw AnalysisError("kernel_vector: kernel has dimension " + std::to_string(n - rank) + " at tolerance " +
                        to_decimal(tol));
  }

  // Permuted unknowns y with y[n-1] = 1, back-substituted through the
  // upper-triangular block.
  std::vector<long double> y(n, 0);
  y[n - 1] = 1;
  for (std::size_t ii = rank; ii-- > 0;) {
    long double s = 0;
    for (std::size_t j = ii + 1; j < n; ++j) s += a[ii][j] * y[j];
    y[ii] = -s / a[ii][ii];
  }
  std::vector<long double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[col[j]] = y[j];
  long double norm = 0;
  for (auto v : x) norm += v * v;
  norm = std::sqrt(norm);
  long double sign = 1;
  for (auto v : x) {
    if (std::abs(v) > 0) {
      sign = v > 0 ? 1 : -1;
      break;
    }
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = static_cast<double>(sign * x[j] / norm);
  return out;
}

std::vector<Rational> exact_kernel_vector(const RationalMatrix& input) {
  const std::size_t n = input.size();
  RationalMatrix a = input;
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < n; ++c) {
    std::size_t p = row;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(a[row], a[p]);
    const Rational inv = 1 / a[row][c];
    for (std::size_t j = c; j < n; ++j) a[row][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_col.push_back(c);
    ++row;
  }
  const std::size_t rank = pivot_col.size();
  if (rank == n) throw AnalysisError("exact_kernel_vector: matrix is nonsingular");
  if (n - rank >= 2) throw AnalysisError("exact_kernel_vector: kernel has dimension " + std::to_string(n - rank));
  std::size_t free_col = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) {
      free_col = c;
      break;
    }
  }
  std::vector<Rational> x(n);
  x[free_col] = 1;
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = -a[r][free_col];
  for (const auto& v : x) {
    if (v != 0) {
      const Rational scale = v;
      for (auto& e : x) e /= scale;
      break;
    }
  }
  return x;
}

std::vector<IntMatrix> series_inverse_coeffs(const PolyMatrix& m, int n) {
  const std::size_t d = m.size();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (!m.at(i, j).has_integer_coefficients()) {
        throw AnalysisError("series_inverse_coeffs: coefficients must be integers");
      }
      if (m.at(i, j).coeff(0) != (i == j ? 1 : 0)) {
        throw AnalysisError("series_inverse_coeffs: matrix at z=0 is not the identity");
      }
    }
  }
  const int deg = m.degree();
  std::vector<IntMatrix> coeff;
  for (int k = 0; k <= deg; ++k) {
    IntMatrix c(d, std::vector<BigInt>(d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) c[i][j] = m.at(i, j).coeff(k).get_num();
    }
    coeff.push_back(std::move(c));
  }
  std::vector<IntMatrix> g;
  IntMatrix id(d, std::vector<BigInt>(d));
  for (std::size_t i = 0; i < d; ++i) id[i][i] = 1;
  g.push_back(id);
  for (int k = 1; k <= n; ++k) {
    IntMatrix gk(d, std::vector<BigInt>(d));
    for (int j = std::max(0, k - deg); j < k; ++j) {
      const IntMatrix& left = g[static_cast<std::size_t>(j)];
      const IntMatrix& right = coeff[static_cast<std::size_t>(k - j)];
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
          if (left[a][b] == 0) continue;
          for (std::size_t c = 0; c < d; ++c) gk[a][c] -= left[a][b] * right[b][c];
        }
      }
    }
    g.push_back(std::move(gk));
  }
  return g;
}

}  // namespace tracesys
