#include "dqw/quartic.hpp"

#include <algorithm>
#include <cmath>

namespace dqw {

namespace {

double cube_root(double v) { return std::cbrt(v); }

// Newton refinement on the full quartic; real coefficients, complex iterate.
cd polish_root(cd z, double a, double b, double c, double d) {
  auto eval = [&](cd w, cd& deriv) {
    deriv = ((4.0 * w + 3.0 * a) * w + 2.0 * b) * w + c;
    return (((w + a) * w + b) * w + c) * w + d;
  };
  cd deriv;
  cd best = z;
  double best_abs = std::abs(eval(z, deriv));
  cd cur = z;
  for (int it = 0; it < 50; ++it) {
    cd f = eval(cur, deriv);
    if (std::abs(deriv) < 1e-14) break;
    cd next = cur - f / deriv;
    cd dtmp;
    double fn = std::abs(eval(next, dtmp));
    if (fn < best_abs) {
      best_abs = fn;
      best = next;
    }
    if (std::abs(next - cur) < 1e-16 * (1.0 + std::abs(next))) break;
    cur = next;
  }
  return best;
}

}  // namespace

int solve_cubic_real(double a, double b, double c, std::array<double, 3>& roots) {
  // depress: t = u - a/3
  double p = b - a * a / 3.0;
  double q = c + (2.0 * a * a * a - 9.0 * a * b) / 27.0;
  double shift = -a / 3.0;
  double disc = -4.0 * p * p * p - 27.0 * q * q;
  const double tiny = 1e-14 * std::max({1.0, std::abs(p), std::abs(q)});
  if (std::abs(p) <= tiny && std::abs(q) <= tiny) {
    roots = {shift, shift, shift};
    return 3;
  }
  if (disc >= 0.0) {
    // three real roots (trig form needs p < 0 here)
    double m = 2.0 * std::sqrt(std::max(0.0, -p / 3.0));
    double arg = (m == 0.0) ? 0.0 : std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    double phi = std::acos(arg);
    for (int k = 0; k < 3; ++k) roots[k] = m * std::cos((phi - 2.0 * pi * k) / 3.0) + shift;
    std::sort(roots.begin(), roots.end());
    return 3;
  }
  double s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  double u = cube_root(-q / 2.0 + s) + cube_root(-q / 2.0 - s);
  roots[0] = u + shift;
  return 1;
}

double quartic_discriminant(double a, double b, double c, double d) {
  // via the depressed form w^4 + p w^2 + q w + r (translation-invariant)
  double p = b - 3.0 * a * a / 8.0;
  double q = c - a * b / 2.0 + a * a * a / 8.0;
  double r = d - a * c / 4.0 + a * a * b / 16.0 - 3.0 * a * a * a * a / 256.0;
  double p2 = p * p, q2 = q * q, r2 = r * r;
  return 16.0 * p2 * p2 * r - 4.0 * p2 * p * q2 - 128.0 * p2 * r2 + 144.0 * p * q2 * r -
         27.0 * q2 * q2 + 256.0 * r2 * r;
}

std::array<cd, 4> solve_quartic(double a, double b, double c, double d) {
  // depress: z = w - a/4
  double p = b - 3.0 * a * a / 8.0;
  double q = c - a * b / 2.0 + a * a * a / 8.0;
  double r = d - a * c / 4.0 + a * a * b / 16.0 - 3.0 * a * a * a * a / 256.0;
  double shift = -a / 4.0;

  std::array<cd, 4> w;
  double scale = std::max({1.0, std::abs(p), std::abs(r)});
  if (std::abs(q) <= 1e-14 * scale) {
    // biquadratic: w^2 solves y^2 + p y + r = 0
    cd disc = std::sqrt(cd(p * p - 4.0 * r, 0.0));
    cd y0 = (-p + disc) / 2.0, y1 = (-p - disc) / 2.0;
    cd s0 = std::sqrt(y0), s1 = std::sqrt(y1);
    w = {s0, -s0, s1, -s1};
  } else {
    // resolvent cubic m^3 + p m^2 + (p^2/4 - r) m - q^2/8 = 0; it always has
    // a positive real root; per policy pick the real root of largest
    // magnitude (complex arithmetic below tolerates a negative choice)
    std::array<double, 3> mroots;
    int mcount = solve_cubic_real(p, p * p / 4.0 - r, -q * q / 8.0, mroots);
    double m = mroots[0];
    for (int i = 1; i < mcount; ++i)
      if (std::abs(mroots[i]) > std::abs(m)) m = mroots[i];
    cd s = std::sqrt(cd(2.0 * m, 0.0));
    cd t = cd(p / 2.0 + m, 0.0);
    cd u = s * cd(q / (4.0 * m), 0.0);
    // (w^2 + t)^2 - (s w - u)^2 = (w^2 - s w + t + u)(w^2 + s w + t - u)
    auto quad = [](cd B, cd C, cd& r1, cd& r2) {
      // monic w^2 + B w + C; larger root by magnitude first, then C/r1
      cd disc = std::sqrt(B * B - 4.0 * C);
      cd big = (std::real(std::conj(B) * disc) >= 0.0) ? (B + disc) : (B - disc);
      if (std::abs(big) < 1e-300) {
        r1 = r2 = -B / 2.0;
        return;
      }
      r1 = -big / 2.0;
      r2 = C / r1;
    };
    quad(-s, t + u, w[0], w[1]);
    quad(s, t - u, w[2], w[3]);
  }

  std::array<cd, 4> z;
  for (int i = 0; i < 4; ++i) z[i] = polish_root(w[i] + shift, a, b, c, d);
  return z;
}

}  // namespace dqw
