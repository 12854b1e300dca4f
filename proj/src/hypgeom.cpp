#include "hypgeom.hpp"

#include <algorithm>
#include <cmath>

namespace qvol {

namespace {

using Vec = std::array<cplx, 3>;
using Jac = std::array<Vec, 3>;

SurgerySpec normalized(SurgerySpec s) {
  if (s.q < 0) s.p = -s.p, s.q = -s.q;
  return s;
}

cplx safe_div(cplx n, cplx d, const char* what) {
  if (std::abs(d) < 1e-300) fail(Status::degenerate, std::string(what) + ": vanishing denominator");
  return n / d;
}

cplx lg(cplx w) {
  if (std::abs(w) == 0.0) fail(Status::degenerate, "logarithm of zero");
  return std::log(w);
}

struct System {
  SurgerySpec spec;
  double s = 1.0;  // fraction of the 2 pi i right-hand side

  Vec eval(const Vec& u) const {
    cplx a = std::exp(u[0]), b = std::exp(u[1]), c = -std::exp(u[2]);
    cplx m1 = u[0];
    cplx l1 = 2.0 * u[0] + 2.0 * lg(1.0 - a * b) - 2.0 * lg(1.0 - b / a);
    cplx m2 = 2.0 * u[2] + lg(1.0 - 1.0 / (b * c)) - lg(1.0 - c / b);
    cplx l2 = 2.0 * u[2];
    cplx glue = 2.0 * u[1] - lg(1.0 - a * b) - lg(1.0 - b / a) - lg(1.0 - 1.0 / b) + lg(1.0 - c / b) +
                lg(1.0 - 1.0 / (b * c));
    const cplx rhs = 2.0 * pi * I1 * s;
    return {double(spec.p) * m1 + double(spec.q) * l1 - rhs, m2 - double(spec.twist) * l2 - rhs, glue};
  }

  Jac jacobian(const Vec& u) const {
    cplx a = std::exp(u[0]), b = std::exp(u[1]), c = -std::exp(u[2]);
    cplx gab = a * b / (1.0 - a * b);          // d/dA and d/dB of -log(1-ab)
    cplx gba = (b / a) / (1.0 - b / a);        // d/dB of -log(1-b/a); d/dA is -gba
    cplx gb = (1.0 / b) / (1.0 - 1.0 / b);     // d/dB of log(1-1/b)
    cplx u1 = (1.0 / (b * c)) / (1.0 - 1.0 / (b * c));
    cplx u2 = (c / b) / (1.0 - c / b);
    cplx l1A = 2.0 - 2.0 * gab - 2.0 * gba, l1B = -2.0 * gab + 2.0 * gba;
    cplx m2B = u1 - u2, m2G = 2.0 + u1 + u2;
    double p = double(spec.p), q = double(spec.q), t = double(spec.twist);
    Jac J{};
    J[0] = {p + q * l1A, q * l1B, 0.0};
    J[1] = {0.0, m2B, m2G - 2.0 * t};
    J[2] = {gab - gba, 2.0 + gab + gba - gb + u2 + u1, u1 - u2};
    return J;
  }
};

bool solve3(const Jac& J, const Vec& f, Vec& x) {
  // Gaussian elimination with partial pivoting
  Jac A = J;
  Vec b = f;
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    if (std::abs(A[piv][c]) < 1e-300) return false;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    for (int r = c + 1; r < 3; ++r) {
      cplx m = A[r][c] / A[c][c];
      for (int k = c; k < 3; ++k) A[r][k] -= m * A[c][k];
      b[r] -= m * b[c];
    }
  }
  for (int c = 2; c >= 0; --c) {
    cplx acc = b[c];
    for (int k = c + 1; k < 3; ++k) acc -= A[c][k] * x[k];
    x[c] = acc / A[c][c];
  }
  return true;
}

double maxabs(const Vec& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }

bool newton(const System& sys, Vec& u, const SolveOptions& opt, double& resid) {
  Vec w = u;
  for (int it = 0; it < opt.max_iter; ++it) {
    Vec f;
    Jac J;
    try {
      f = sys.eval(w);
      J = sys.jacobian(w);
    } catch (const Error&) {
      return false;
    }
    Vec du{};
    Vec rhs{-f[0], -f[1], -f[2]};
    if (!solve3(J, rhs, du)) return false;
    if (maxabs(du) > pi / 2) return false;
    for (int i = 0; i < 3; ++i) w[i] += du[i];
    if (!finite(w[0]) || !finite(w[1]) || !finite(w[2])) return false;
    if (maxabs(du) < opt.step_tol) break;
  }
  try {
    resid = maxabs(sys.eval(w));
  } catch (const Error&) {
    return false;
  }
  if (!(resid < opt.residual_tol)) return false;
  u = w;
  return true;
}

Vec continuation(const SurgerySpec& spec, const SolveOptions& opt, double& resid, int& steps) {
  System sys{spec, 0.0};
  Vec u{0.0, std::log(cplx(0.2, 0.4)), 0.0};
  double s = 0, ds = 1.0 / opt.steps;
  int halvings = 0;
  steps = 0;
  while (s < 1.0) {
    double next = std::min(1.0, s + ds);
    sys.s = next;
    Vec trial = u;
    if (newton(sys, trial, opt, resid)) {
      u = trial;
      s = next;
      ++steps;
    } else {
      if (++halvings > opt.max_halvings)
        fail(Status::continuation, "Newton continuation diverged after parameter " + std::to_string(s));
      ds /= 2;
    }
  }
  return u;
}

HyperbolicSolution assemble(const SurgerySpec& spec, const Vec& u) {
  HyperbolicSolution sol;
  sol.spec = spec;
  sol.a = std::exp(u[0]);
  sol.b = std::exp(u[1]);
  sol.c = -std::exp(u[2]);
  sol.shapes = shapes_from_abc(sol.a, sol.b, sol.c);
  sol.wxyz = thurston_shapes(sol.shapes);
  sol.holonomies = holonomies_from_abc(sol.a, sol.b, sol.c);
  sol.geometric = std::all_of(sol.shapes.begin(), sol.shapes.end(), [](cplx z) { return z.imag() > 0; });
  sol.volume = shapes_volume(sol.shapes);
  return sol;
}

double wrap_pi2(double x) {
  double m = std::fmod(x, pi * pi);
  if (m < 0) m += pi * pi;
  return m;
}

}  // namespace

Classification classify(const SurgerySpec& spec) {
  Classification c;
  auto ex = [&](const std::string& why) {
    c.hyperbolic = false;
    c.reason = why;
    return c;
  };
  if (spec.twist == 0 || spec.twist == -1) return ex("twist in {0, -1}");
  if (spec.q == 0) return ex("slope p/q = infinity");
  if (spec.p == 0) return ex("slope p/q = 0");
  if (spec.p % spec.q == 0) {
    long long v = spec.p / spec.q;
    if (v >= 1 && v <= 4) return ex("slope p/q = " + std::to_string(v));
    if (spec.twist == 1 && v >= -4 && v <= -2) return ex("twist 1 with slope p/q = " + std::to_string(v));
  }
  return c;
}

TetraShape tetra_shape(cplx z) {
  if (std::abs(z) < 1e-300 || std::abs(1.0 - z) < 1e-300) fail(Status::degenerate, "tetra_shape: degenerate shape");
  return {z, 1.0 - 1.0 / z, 1.0 / (1.0 - z)};
}

std::array<cplx, 5> shapes_from_abc(cplx a, cplx b, cplx c) {
  return {safe_div(b, b - c, "c1"), safe_div(b - a, b, "c2"), safe_div(b - 1.0, b, "c3"),
          safe_div(a * b - 1.0, a * b, "c4"), safe_div(b * c, b * c - 1.0, "c5")};
}

std::array<cplx, 4> holonomies_from_abc(cplx a, cplx b, cplx c) {
  cplx La = lg(a), Lc = lg(-c);
  return {La, 2.0 * La + 2.0 * lg(1.0 - a * b) - 2.0 * lg(1.0 - b / a),
          2.0 * Lc + lg(1.0 - 1.0 / (b * c)) - lg(1.0 - c / b), 2.0 * Lc};
}

cplx gluing_residual(cplx a, cplx b, cplx c) {
  return 2.0 * lg(b) - lg(1.0 - a * b) - lg(1.0 - b / a) - lg(1.0 - 1.0 / b) + lg(1.0 - c / b) + lg(1.0 - 1.0 / (b * c));
}

std::array<cplx, 4> thurston_shapes(const std::array<cplx, 5>& c) {
  const auto& [c1, c2, c3, c4, c5] = c;
  cplx x = safe_div(1.0 - c1 * c2, c1 * c2 * (c4 - 1.0), "x");
  cplx y = -safe_div(c1 * (c2 - 1.0) * (c3 - 1.0), (c1 - 1.0) * (1.0 / (c4 * c5) - 1.0), "y");
  cplx z = -safe_div(c1 * c2 * (c3 - 1.0) * (c4 - 1.0), (c1 * c2 - 1.0) * (1.0 / c5 - 1.0), "z");
  cplx w = safe_div(1.0 / (c4 * c5) - 1.0, c2 - 1.0, "w");
  return {w, x, y, z};
}

std::array<cplx, 5> cross_ratio_shapes(const std::array<cplx, 4>& t) {
  const auto& [w, x, y, z] = t;
  cplx e1 = y * z + x * z - y - z, e2 = w * y + y * z - y - z;
  return {safe_div(w * y * (y - 1.0) * (z - 1.0), (w * y - 1.0) * e1, "c1"),
          -safe_div((w - 1.0) * e1, w * z * (x - 1.0) * (y - 1.0), "c2"),
          safe_div((w * y - 1.0) * (x * z - 1.0), (y - 1.0) * (z - 1.0), "c3"),
          -safe_div((x - 1.0) * e2, x * y * (z - 1.0) * (w - 1.0), "c4"),
          safe_div(x * z * (y - 1.0) * (z - 1.0), (x * z - 1.0) * e2, "c5")};
}

HyperbolicSolution complete_structure() {
  SurgerySpec s{1, 0, 0};
  Vec u{0.0, std::log(cplx(0.2, 0.4)), 0.0};
  auto sol = assemble(s, u);
  sol.residual = std::abs(gluing_residual(sol.a, sol.b, sol.c));
  return sol;
}

HyperbolicSolution solve_structure(const SurgerySpec& spec_in, const SolveOptions& opt) {
  check_spec(spec_in);
  auto cl = classify(spec_in);
  if (!cl.hyperbolic) fail(Status::exceptional, "solve_structure: exceptional filling (" + cl.reason + ")");
  SurgerySpec spec = normalized(spec_in);
  double resid = 0;
  int steps = 0;
  Vec u = continuation(spec, opt, resid, steps);
  auto sol = assemble(spec, u);
  sol.residual = resid;
  sol.continuation_steps = steps;
  if (sol.geometric) sol.cs = complex_volume(spec).cs_mod_pi2;
  return sol;
}

double shapes_volume(const std::array<cplx, 5>& shapes) {
  double v = 0;
  for (cplx z : shapes) {
    if (std::abs(z.imag()) < 1e-15) fail(Status::degenerate, "volume: flat tetrahedron");
    v += bloch_wigner(z);
  }
  return v;
}

double shapes_volume_lambda(const std::array<cplx, 5>& shapes) {
  double v = 0;
  for (cplx z : shapes) {
    auto t = tetra_shape(z);
    v += lobachevsky(std::arg(t.z1)) + lobachevsky(std::arg(t.z2)) + lobachevsky(std::arg(t.z3));
  }
  return v;
}

double volume(const HyperbolicSolution& sol) { return shapes_volume(sol.shapes); }

cplx second_root(cplx a, cplx b1) {
  cplx inv = a + 1.0 / a - 1.0 / b1;
  if (std::abs(inv) < 1e-300) fail(Status::degenerate, "second_root: b2 at infinity");
  return 1.0 / inv;
}

double dist_mod_pi2(double x) {
  double m = wrap_pi2(x);
  return std::min(m, pi * pi - m);
}

std::array<CriticalPoint, 4> critical_points(const HyperbolicSolution& sol, double tol) {
  const auto& spec = sol.spec;
  auto fd = fourier_maps(expand_slope(spec.p, spec.q));
  cplx b2 = second_root(sol.a, sol.b);
  if (std::abs(b2 - sol.b) < 1e-12) fail(Status::degenerate, "critical_points: double root b1 = b2");
  cplx x0 = std::log(sol.a) / (2.0 * I1);
  cplx y2 = std::log(b2) / (2.0 * I1);
  cplx z0 = std::log(-sol.c) / (2.0 * I1) + pi / 2;
  cplx X = std::conj(x0), Y = -std::conj(y2), Z = std::conj(z0);
  const long long pp = spec.twist;
  auto [sp, mp] = fd.splus;
  auto [sm, mm] = fd.sminus;
  std::array<CriticalPoint, 4> out;
  out[0] = {{-X, Y, pi - Z}, make_index(fd, sm, mm, 0, -pp - 2), 0.0, 0.0};
  out[1] = {{X, Y, pi - Z}, make_index(fd, sp, mp, 0, -pp - 2), 0.0, 0.0};
  out[2] = {{-X, Y, Z}, make_index(fd, sm, mm, 0, -pp), 0.0, 0.0};
  out[3] = {{X, Y, Z}, make_index(fd, sp, mp, 0, -pp), 0.0, 0.0};
  for (auto& cp : out) {
    auto g = grad_V(cp.pt, cp.idx, spec);
    cp.grad_residual = std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
    cp.value = eval_V(cp.pt, cp.idx, spec);
    if (cp.grad_residual > tol)
      fail(Status::consistency, "critical_points: gradient residual " + std::to_string(cp.grad_residual));
  }
  return out;
}

ComplexVolume complex_volume(const SurgerySpec& spec_in, double tol) {
  SurgerySpec spec = normalized(spec_in);
  auto cl = classify(spec);
  if (!cl.hyperbolic) fail(Status::exceptional, "complex_volume: exceptional filling (" + cl.reason + ")");
  double resid = 0;
  int steps = 0;
  HyperbolicSolution sol = assemble(spec, continuation(spec, SolveOptions{}, resid, steps));
  if (!sol.geometric) fail(Status::consistency, "complex_volume: solution is not geometric");
  auto fd = fourier_maps(expand_slope(spec.p, spec.q));
  auto [sp, mp] = fd.splus;
  cplx x0 = std::log(sol.a) / (2.0 * I1);
  cplx y1 = std::log(sol.b) / (2.0 * I1);
  cplx z0 = std::log(-sol.c) / (2.0 * I1) + pi / 2;
  ComplexVolume cv;
  cv.w_value = eval_W({x0, y1, z0}, make_index(fd, sp, mp, 0, -spec.twist + 2), spec);
  cv.vol = cv.w_value.imag();
  cv.cs_mod_pi2 = wrap_pi2(cv.w_value.real());
  auto cps = critical_points(sol);
  for (int i = 0; i < 4; ++i) {
    cv.v_values[i] = cps[i].value;
    // V = i(Vol + i CS) = -conj(W) mod pi^2
    cplx target = -std::conj(cv.w_value);
    double d = std::max(dist_mod_pi2(cv.v_values[i].real() - target.real()),
                        std::abs(cv.v_values[i].imag() - target.imag()));
    cv.max_mismatch = std::max(cv.max_mismatch, d);
  }
  double dvol = std::abs(cv.vol - sol.volume);
  cv.max_mismatch = std::max(cv.max_mismatch, dvol);
  if (cv.max_mismatch > tol)
    fail(Status::consistency, "complex_volume: critical values disagree by " + std::to_string(cv.max_mismatch));
  return cv;
}

SisterSolution sister_solution(const HyperbolicSolution& sol) {
  const auto& spec = sol.spec;
  SisterSolution ss;
  ss.a = sol.a;
  ss.b1 = sol.b;
  ss.c = sol.c;
  ss.b2 = second_root(sol.a, sol.b);
  if (std::abs(ss.b2 - ss.b1) < 1e-12) fail(Status::degenerate, "sister_solution: double root b1 = b2");
  const cplx a = ss.a, c = ss.c, b1 = ss.b1, b2 = ss.b2;
  double v1 = std::abs(1.0 / b1 + 1.0 / b2 - (a + 1.0 / a));
  double v2 = std::abs(1.0 / (b1 * b2) - (1.0 + a + 1.0 / a - c - 1.0 / c));
  ss.vieta_residual = std::max(v1, v2);
  ss.b1b2_residual = std::abs((1.0 - b1 / a) * (1.0 - b2 / a) - (1.0 - a * b1) * (1.0 - a * b2));
  ss.holonomies = holonomies_from_abc(a, b2, c);
  const auto& [m1, l1, m2, l2] = ss.holonomies;
  double p = double(spec.p), q = double(spec.q), t = double(spec.twist);
  cplx e1 = (p + 4 * q) * m1 - q * l1 - 2.0 * pi * I1;
  cplx e2 = m2 + (t - 0.5) * l2 + 2.0 * pi * I1;
  cplx g = gluing_residual(a, b2, c);
  ss.dehn_residual = std::max({std::abs(e1), std::abs(e2), std::abs(g)});
  ss.shapes = shapes_from_abc(a, b2, c);
  ss.volume = shapes_volume(ss.shapes);
  return ss;
}

cplx t_invariant(const HyperbolicSolution& sol) {
  const auto& spec = sol.spec;
  auto cps = critical_points(sol);
  const auto& cp = cps[3];
  auto fd = fourier_maps(expand_slope(spec.p, spec.q));
  double J = fd.Jmap[cp.idx.s].convert_to<double>();
  const auto& [x, y, z] = cp.pt;
  double q = double(spec.q);
  Mat3 H = hessian_V(cp.pt, cp.idx, spec);
  for (auto& row : H)
    for (auto& e : row) e = -e;
  cplx sign = ((fd.splus.second - spec.twist) % 2 == 0) ? 1.0 : -1.0;
  cplx num = 8.0 * sign * std::sin(x / q - J * pi) * std::sin(2.0 * z);
  cplx den = std::sqrt(q * pi * pi * pi * (1.0 - std::exp(2.0 * I1 * (y + z))) * (1.0 - std::exp(2.0 * I1 * (y - z))) *
                       det3(H));
  return num / den;
}

}  // namespace qvol
