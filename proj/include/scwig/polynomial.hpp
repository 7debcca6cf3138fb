#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

namespace scwig {

struct PhasePoint;

/// Polynomial phase-space symbol  sum_{a,b} c_ab p^a q^b  with complex
/// coefficients. Used for polynomial Hamiltonians, Lindblad channels and the
/// exact Moyal product of polynomial symbols.
class PolynomialSymbol {
 public:
  using Exponents = std::pair<int, int>;  // (power of p, power of q)
  using Complex = std::complex<double>;

  PolynomialSymbol() = default;

  static PolynomialSymbol constant(Complex c);
  static PolynomialSymbol monomial(int p_power, int q_power, Complex c = 1.0);
  static PolynomialSymbol p() { return monomial(1, 0); }
  static PolynomialSymbol q() { return monomial(0, 1); }

  void add_term(int p_power, int q_power, Complex c);
  const std::map<Exponents, Complex>& terms() const { return terms_; }

  Complex operator()(double p, double q) const;
  Complex operator()(const PhasePoint& x) const;
  /// Partial derivatives (d/dp, d/dq) at (p, q).
  std::pair<Complex, Complex> gradient(double p, double q) const;

  /// Mixed partial derivative  d^m/dp^m d^n/dq^n.
  PolynomialSymbol derivative(int m_p, int n_q) const;

  bool is_real(double tol = 0.0) const;
  int degree() const;

  PolynomialSymbol operator+(const PolynomialSymbol& o) const;
  PolynomialSymbol operator-(const PolynomialSymbol& o) const;
  PolynomialSymbol operator*(const PolynomialSymbol& o) const;
  PolynomialSymbol operator*(Complex s) const;

  /// Largest coefficient magnitude of (this - o).
  double distance(const PolynomialSymbol& o) const;

  std::string to_string() const;

 private:
  void prune();
  std::map<Exponents, Complex> terms_;
};

/// Exact Moyal product of polynomial symbols. The bidifferential series
/// terminates at order deg(a)+deg(b); first-order term is (i hbar/2){a,b}
/// with {a,b} = a_q b_p - a_p b_q.
PolynomialSymbol moyal_product(const PolynomialSymbol& a, const PolynomialSymbol& b, double hbar);

}  // namespace scwig
