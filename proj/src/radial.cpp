#include "levykit/radial.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace levykit {
namespace {

constexpr int kGL = 20;

struct GLRule {
  double x[kGL];  // nodes on (-1, 1)
  double w[kGL];
};

// Newton on Legendre P_n: no tabulated constants to mistype.
GLRule make_gl20() {
  GLRule rule{};
  const int n = kGL;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    rule.x[n - 1 - i] = x;
    rule.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GLRule& gl() {
  static const GLRule rule = make_gl20();
  return rule;
}

template <class F>
std::complex<double> gl_panel(const F& f, double a, double b) {
  const GLRule& r = gl();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::complex<double> s{0.0, 0.0};
  for (int i = 0; i < kGL; ++i) s += r.w[i] * f(mid + half * r.x[i]);
  return half * s;
}

// geometric panels keep both power decay and oscillation resolved
template <class F>
std::complex<double> gl_geometric(const F& f, double a, double b) {
  std::complex<double> s{0.0, 0.0};
  double lo = a;
  while (lo < b) {
    const double hi = std::min(b, lo * 2.0);
    s += gl_panel(f, lo, hi);
    lo = hi;
  }
  return s;
}

// e^{iar} - 1 and e^{iar} - 1 - iar without small-argument cancellation
std::complex<double> expm1_i(double x) {
  const double s = std::sin(0.5 * x);
  return {-2.0 * s * s, std::sin(x)};
}
std::complex<double> expm1_i_centered(double x) {
  const double re = expm1_i(x).real();
  double im;
  if (std::abs(x) < 1e-2) {
    const double x3 = x * x * x;
    im = -x3 / 6.0 * (1.0 - x * x / 20.0 * (1.0 - x * x / 42.0));
  } else {
    im = std::sin(x) - x;
  }
  return {re, im};
}

// int_0^d [e^{iar} - 1 - iar 1_centered] r^{-1-alpha} dr by termwise power series;
// requires a*d <= 2 so the series converges fast.
std::complex<double> series_head(double alpha, double a, double d, bool centered) {
  std::complex<double> sum{0.0, 0.0};
  std::complex<double> ia{0.0, a};
  std::complex<double> term{1.0, 0.0};  // (ia)^k / k!
  for (int k = 1; k <= 40; ++k) {
    term *= ia / static_cast<double>(k);
    if (k == 1 && centered) continue;
    const double pow_d = std::pow(d, k - alpha);
    const std::complex<double> add = term * (pow_d / (k - alpha));
    sum += add;
    if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum)) && k > 4) break;
  }
  return sum;
}

}  // namespace

const double* gl20_nodes() { return gl().x; }
const double* gl20_weights() { return gl().w; }

std::complex<double> osc_power_tail(double alpha, double a, double R) {
  if (!(alpha > 0.0) || !(R > 0.0)) throw std::invalid_argument("osc_power_tail: bad arguments");
  if (a == 0.0) return {std::pow(R, -alpha) / alpha, 0.0};
  if (a < 0.0) return std::conj(osc_power_tail(alpha, -a, R));

  const double r1 = std::max(R, 2.0 / a);
  std::complex<double> mid{0.0, 0.0};
  if (r1 > R) {
    mid = gl_geometric(
        [&](double r) { return std::complex<double>{std::cos(a * r), std::sin(a * r)} * std::pow(r, -1.0 - alpha); },
        R, r1);
  }
  // rotate r = r1 + i v/a; the arc at infinity drops out for a > 0
  const std::complex<double> phase{std::cos(a * r1), std::sin(a * r1)};
  const auto integrand = [&](double v) {
    return std::exp(-v) * std::pow(std::complex<double>{r1, v / a}, -1.0 - alpha);
  };
  std::complex<double> rot{0.0, 0.0};
  const double cuts[] = {0.0, 2.0, 5.0, 10.0, 20.0, 32.0, 45.0};
  for (int i = 0; i + 1 < 7; ++i) rot += gl_panel(integrand, cuts[i], cuts[i + 1]);
  rot *= std::complex<double>{0.0, 1.0} * phase / a;
  return mid + rot;
}

std::complex<double> levy_radial(double alpha, double a) {
  if (!(alpha > 0.0) || alpha >= 2.0) throw std::invalid_argument("levy_radial: alpha must be in (0,2)");
  if (a == 0.0) return {0.0, 0.0};
  if (a < 0.0) return std::conj(levy_radial(alpha, -a));

  const bool centered = alpha > 1.0;
  const double delta = std::min(0.1 / a, alpha == 1.0 ? 1.0 : 2.0 / a);
  std::complex<double> total = series_head(alpha, a, delta, centered || alpha == 1.0);

  if (alpha == 1.0) {
    // compensation only below r = 1
    if (delta < 1.0) {
      total += gl_geometric(
          [&](double r) { return expm1_i_centered(a * r) * std::pow(r, -2.0); }, delta, 1.0);
    }
    const double r1 = std::max(1.0, 2.0 / a);
    if (r1 > 1.0) {
      total += gl_geometric([&](double r) { return expm1_i(a * r) * std::pow(r, -2.0); }, 1.0, r1);
    }
    total += osc_power_tail(1.0, a, r1);
    total -= std::pow(r1, -1.0);  // the "-1" part of the tail
    return total;
  }

  const double r1 = 2.0 / a;
  if (delta < r1) {
    const auto f = [&](double r) {
      const std::complex<double> e = centered ? expm1_i_centered(a * r) : expm1_i(a * r);
      return e * std::pow(r, -1.0 - alpha);
    };
    total += gl_geometric(f, delta, r1);
  }
  total += osc_power_tail(alpha, a, r1);
  total -= std::pow(r1, -alpha) / alpha;
  if (centered) total -= std::complex<double>{0.0, a * std::pow(r1, 1.0 - alpha) / (alpha - 1.0)};
  return total;
}

std::complex<double> levy_radial_tail(double alpha, double a, double R) {
  if (!(alpha > 0.0) || alpha >= 2.0) throw std::invalid_argument("levy_radial_tail: alpha in (0,2)");
  if (alpha == 1.0 && R < 1.0)
    throw std::invalid_argument("levy_radial_tail: alpha=1 requires cutoff radius >= 1");
  std::complex<double> t = osc_power_tail(alpha, a, R);
  t -= std::pow(R, -alpha) / alpha;
  if (alpha > 1.0) t -= std::complex<double>{0.0, a * std::pow(R, 1.0 - alpha) / (alpha - 1.0)};
  return t;
}

}  // namespace levykit
