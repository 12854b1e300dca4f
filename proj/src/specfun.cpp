#include "specfun.hpp"

#include <array>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bernoulli.hpp>

namespace qvol {

namespace {

constexpr double zeta2 = pi * pi / 6.0;

cplx li2_series(cplx z) {
  cplx term = z, sum = z;
  for (int k = 2; k < 200; ++k) {
    term *= z;
    cplx add = term / double(k * k);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Li2(z) = sum_n B_n u^{n+1}/(n+1)!, u = -log(1-z)
cplx li2_bernoulli(cplx z) {
  static const std::array<double, 24> coef = [] {
    std::array<double, 24> c{};
    double fact = 1.0;  // (2k+1)!
    for (int k = 1; k <= 24; ++k) {
      fact *= double(2 * k) * double(2 * k + 1);
      c[k - 1] = boost::math::bernoulli_b2n<double>(k) / fact;
    }
    return c;
  }();
  cplx u = -std::log(1.0 - z);
  cplx u2 = u * u;
  cplx sum = u - 0.25 * u2;
  cplx pw = u;
  for (double c : coef) {
    pw *= u2;
    cplx add = c * pw;
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// |z| <= 1, Re z <= 1/2
cplx li2_inner(cplx z) {
  if (std::abs(z) <= 0.5) return li2_series(z);
  return li2_bernoulli(z);
}

cplx li2_disk(cplx z) {
  if (z.real() <= 0.5) return li2_inner(z);
  cplx w = 1.0 - z;
  return zeta2 - std::log(z) * std::log(w) - li2_inner(w);
}

}  // namespace

cplx dilog(cplx z) {
  require_finite(z, "dilog");
  if (z == cplx(0.0)) return 0.0;
  if (z == cplx(1.0)) return zeta2;
  if (z.imag() == 0.0 && z.real() > 1.0) {
    double x = z.real(), lx = std::log(x);
    double re = 2.0 * zeta2 - 0.5 * lx * lx - li2_disk(cplx(1.0 / x)).real();
    return {re, -pi * lx};
  }
  if (std::abs(z) > 1.0) {
    cplx l = std::log(-z);
    return -li2_disk(1.0 / z) - zeta2 - 0.5 * l * l;
  }
  return li2_disk(z);
}

double lobachevsky(double theta) {
  if (!std::isfinite(theta)) fail(Status::non_finite, "lobachevsky: non-finite argument");
  double t = std::fmod(theta, pi);
  if (t < 0) t += pi;
  if (t == 0.0) return 0.0;
  return 0.5 * dilog(std::polar(1.0, 2.0 * t)).imag();
}

double bloch_wigner(cplx z) {
  require_finite(z, "bloch_wigner");
  if (z == cplx(0.0) || z == cplx(1.0)) return 0.0;
  if (z.imag() == 0.0) return 0.0;
  return dilog(z).imag() + std::log(std::abs(z)) * std::arg(1.0 - z);
}

double f_asymptote(double t, double X) {
  if (X >= 0) return 0.0;
  return 2.0 * (2.0 * t - pi) * X;
}

cplx unit_root(long long num, long long den) {
  if (den < 0) num = -num, den = -den;
  long long m = 2 * den;
  long long n = num % m;
  if (n < 0) n += m;
  double ang = pi * double(n) / double(den);
  return {std::cos(ang), std::sin(ang)};
}

cplx quantum_dilog(int r, cplx z, double tol) {
  require_finite(z, "quantum_dilog");
  if (r < 3 || r % 2 == 0) fail(Status::domain, "quantum_dilog: r must be odd and >= 3");
  double lo = -pi / r, hi = pi + pi / r;
  if (!(z.real() > lo && z.real() < hi))
    fail(Status::domain, "quantum_dilog: Re z outside (-pi/r, pi + pi/r)");

  const cplx a = 2.0 * z - pi;
  const double b = 2.0 * pi / r;
  const double eps = 0.5;

  // both rays folded onto [eps, inf)
  auto ray = [&](double s) {
    double t = s + eps;
    double den = t * (-std::expm1(-2.0 * pi * t)) * (-std::expm1(-2.0 * b * t));
    return (std::exp((a - pi - b) * t) - std::exp((-a - pi - b) * t)) / den;
  };
  // upper semicircle |x| = eps traversed from -eps to eps
  auto arc = [&](double th) {
    cplx x = std::polar(eps, th);
    cplx f = std::exp(a * x) / (4.0 * x * std::sinh(pi * x) * std::sinh(b * x));
    return -f * I1 * x;
  };

  boost::math::quadrature::exp_sinh<double> es;
  double err_re = 0, err_im = 0, l1 = 0;
  double ray_re = es.integrate([&](double s) { return ray(s).real(); }, tol, &err_re, &l1);
  double ray_im = es.integrate([&](double s) { return ray(s).imag(); }, tol, &err_im, &l1);

  using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
  double e1 = 0, e2 = 0;
  double arc_re = gk::integrate([&](double th) { return arc(th).real(); }, 0.0, pi, 10, tol, &e1);
  double arc_im = gk::integrate([&](double th) { return arc(th).imag(); }, 0.0, pi, 10, tol, &e2);

  cplx total(ray_re + arc_re, ray_im + arc_im);
  double scale = std::max(1.0, std::abs(total));
  if (err_re + err_im + e1 + e2 > 100.0 * tol * scale || !finite(total))
    fail(Status::tolerance, "quantum_dilog: quadrature did not converge");
  return 4.0 * pi * I1 / double(r) * total;
}

cplx QuantumTables::braced(long long n) const {
  // t^{n/2} = e^{2 pi i n / r}
  return 2.0 * I1 * unit_root(2 * n, r).imag();
}

QuantumTables build_quantum_tables(int r) {
  if (r < 3 || r % 2 == 0 || r > max_level)
    fail(Status::domain, "build_quantum_tables: r must be odd, 3 <= r <= " + std::to_string(max_level));
  QuantumTables T;
  T.r = r;
  T.t = unit_root(4, r);
  T.pochhammer.resize(r);
  T.braced_factorial.resize(r);
  T.quantum_int.resize(r);
  T.pochhammer[0] = 1.0;
  for (int n = 1; n < r; ++n) T.pochhammer[n] = T.pochhammer[n - 1] * (1.0 - unit_root(4LL * n, r));
  double s1 = std::sin(2.0 * pi / r);
  for (long long n = 0; n < r; ++n) {
    double sign = (n % 2) ? -1.0 : 1.0;
    T.braced_factorial[n] = sign * unit_root(-n * (n + 1), r) * T.pochhammer[n];
    T.quantum_int[n] = std::sin(2.0 * pi * double(n) / r) / s1;
  }
  return T;
}

}  // namespace qvol
