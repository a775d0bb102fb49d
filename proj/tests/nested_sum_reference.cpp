#include "nested_sum_reference.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace nested_ref {

namespace {

double choose(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

// P(m detected | n present), binomial thinning. pow(0, 0) = 1 covers the
// η ∈ {0, 1} ends.
double q(int m, int n, double eta) {
  return choose(n, m) * std::pow(eta, m) * std::pow(1.0 - eta, n - m);
}

}  // namespace

Point evaluate(double gamma, double eta, int cutoff, bool renormalized,
               bool literal_weights) {
  const double t = std::tanh(gamma);
  const int n_min = renormalized ? 1 : 0;

  // Sector weights over the truncated range, both conventions.
  std::vector<double> w(static_cast<std::size_t>(cutoff) + 1, 0.0);
  double z = 0.0;
  for (int n = n_min; n <= cutoff; ++n) {
    const double mult = choose(n + 2, 2);
    const double raw = literal_weights ? std::pow(t, 2 * n) / mult
                                       : mult * std::pow(t, 2 * n);
    w[static_cast<std::size_t>(n)] = raw;
    z += raw;
  }

  const std::complex<double> omega =
      std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const std::complex<double> omega2 = omega * omega;

  Point out;
  for (int n = n_min; n <= cutoff; ++n) {
    if (w[static_cast<std::size_t>(n)] == 0.0) continue;
    for (int n1 = 0; n1 <= n; ++n1)
      for (int n2 = 0; n2 + n1 <= n; ++n2) {
        const int n3 = n - n1 - n2;
        const double base = w[static_cast<std::size_t>(n)] / z / choose(n + 2, 2);
        for (int a1 = 0; a1 <= n1; ++a1)
          for (int a2 = 0; a2 <= n2; ++a2)
            for (int a3 = 0; a3 <= n3; ++a3)
              for (int b1 = 0; b1 <= n1; ++b1)
                for (int b2 = 0; b2 <= n2; ++b2)
                  for (int b3 = 0; b3 <= n3; ++b3) {
                    const double prob = base * q(a1, n1, eta) * q(a2, n2, eta) *
                                        q(a3, n3, eta) * q(b1, n1, eta) *
                                        q(b2, n2, eta) * q(b3, n3, eta);
                    if (prob == 0.0) continue;
                    const int ka = a1 + a2 + a3, kb = b1 + b2 + b3;
                    const std::complex<double> Ka =
                        static_cast<double>(a1) + omega * static_cast<double>(a2) +
                        omega2 * static_cast<double>(a3);
                    const std::complex<double> Kb =
                        static_cast<double>(b1) + omega * static_cast<double>(b2) +
                        omega2 * static_cast<double>(b3);
                    const std::complex<double> Ra =
                        ka > 0 ? Ka / static_cast<double>(ka) : 0.0;
                    const std::complex<double> Rb =
                        kb > 0 ? Kb / static_cast<double>(kb) : 0.0;
                    out.lhs_rate += 4.0 * prob * std::norm(Ra - Rb);
                    out.lhs_intensity += 4.0 * prob * std::norm(Ka - Kb);
                    if (ka > 0) out.rhs_rate += 3.0 * prob / ka;
                    if (kb > 0) out.rhs_rate += 3.0 * prob / kb;
                    out.rhs_intensity += 3.0 * prob * (ka + kb);
                  }
      }
  }
  return out;
}

}  // namespace nested_ref
