#include "scwig/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scwig/classical_flow.hpp"

namespace scwig {
namespace {

double falling(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (n - i);
  return r;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

PolynomialSymbol PolynomialSymbol::constant(Complex c) { return monomial(0, 0, c); }

PolynomialSymbol PolynomialSymbol::monomial(int p_power, int q_power, Complex c) {
  PolynomialSymbol s;
  s.add_term(p_power, q_power, c);
  return s;
}

void PolynomialSymbol::add_term(int p_power, int q_power, Complex c) {
  if (p_power < 0 || q_power < 0) return;
  terms_[{p_power, q_power}] += c;
  prune();
}

void PolynomialSymbol::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == Complex(0.0, 0.0)) it = terms_.erase(it);
    else ++it;
  }
}

PolynomialSymbol::Complex PolynomialSymbol::operator()(double p, double q) const {
  Complex acc = 0.0;
  for (const auto& [e, c] : terms_) acc += c * std::pow(p, e.first) * std::pow(q, e.second);
  return acc;
}

PolynomialSymbol::Complex PolynomialSymbol::operator()(const PhasePoint& x) const {
  return (*this)(x.p, x.q);
}

std::pair<PolynomialSymbol::Complex, PolynomialSymbol::Complex> PolynomialSymbol::gradient(
    double p, double q) const {
  Complex dp = 0.0, dq = 0.0;
  for (const auto& [e, c] : terms_) {
    const auto [a, b] = e;
    if (a > 0) dp += c * double(a) * std::pow(p, a - 1) * std::pow(q, b);
    if (b > 0) dq += c * double(b) * std::pow(p, a) * std::pow(q, b - 1);
  }
  return {dp, dq};
}

PolynomialSymbol PolynomialSymbol::derivative(int m_p, int n_q) const {
  PolynomialSymbol out;
  for (const auto& [e, c] : terms_) {
    const auto [a, b] = e;
    if (a < m_p || b < n_q) continue;
    out.terms_[{a - m_p, b - n_q}] += c * falling(a, m_p) * falling(b, n_q);
  }
  out.prune();
  return out;
}

bool PolynomialSymbol::is_real(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const auto& t) { return std::abs(t.second.imag()) <= tol; });
}

int PolynomialSymbol::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

PolynomialSymbol PolynomialSymbol::operator+(const PolynomialSymbol& o) const {
  PolynomialSymbol out = *this;
  for (const auto& [e, c] : o.terms_) out.terms_[e] += c;
  out.prune();
  return out;
}

PolynomialSymbol PolynomialSymbol::operator-(const PolynomialSymbol& o) const {
  return *this + o * Complex(-1.0);
}

PolynomialSymbol PolynomialSymbol::operator*(const PolynomialSymbol& o) const {
  PolynomialSymbol out;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_)
      out.terms_[{e1.first + e2.first, e1.second + e2.second}] += c1 * c2;
  out.prune();
  return out;
}

PolynomialSymbol PolynomialSymbol::operator*(Complex s) const {
  PolynomialSymbol out = *this;
  for (auto& [e, c] : out.terms_) c *= s;
  out.prune();
  return out;
}

double PolynomialSymbol::distance(const PolynomialSymbol& o) const {
  const PolynomialSymbol d = *this - o;
  double m = 0.0;
  for (const auto& [e, c] : d.terms_) m = std::max(m, std::abs(c));
  return m;
}

std::string PolynomialSymbol::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0.0) os << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
    os << ")";
    if (e.first) os << "*p^" << e.first;
    if (e.second) os << "*q^" << e.second;
  }
  return first ? "0" : os.str();
}

PolynomialSymbol moyal_product(const PolynomialSymbol& a, const PolynomialSymbol& b, double hbar) {
  using Complex = PolynomialSymbol::Complex;
  PolynomialSymbol out;
  const int kmax = a.degree() + b.degree();
  Complex factor = 1.0;  // (i hbar / 2)^k / k!
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) factor *= Complex(0.0, hbar / 2.0) / double(k);
    for (int m = 0; m <= k; ++m) {
      const PolynomialSymbol left = a.derivative(m, k - m);   // d_p^m d_q^{k-m} a
      const PolynomialSymbol right = b.derivative(k - m, m);  // d_p^{k-m} d_q^m b
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      out = out + (left * right) * (factor * binomial(k, m) * sign);
    }
  }
  return out;
}

}  // namespace scwig
