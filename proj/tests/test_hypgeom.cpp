#include <doctest.h>

#include <random>

#include "hypgeom.hpp"

using namespace qvol;

TEST_CASE("exceptional fillings") {
  CHECK_FALSE(classify({19, 1, 0}).hyperbolic);
  CHECK_FALSE(classify({19, 1, -1}).hyperbolic);
  CHECK_FALSE(classify({4, 1, 10}).hyperbolic);
  CHECK_FALSE(classify({1, 0, 10}).hyperbolic);
  CHECK_FALSE(classify({-3, 1, 1}).hyperbolic);
  CHECK_FALSE(classify({0, 1, 5}).hyperbolic);
  CHECK(classify({-3, 1, 2}).hyperbolic);
  CHECK(classify({19, 1, 10}).hyperbolic);
  CHECK_FALSE(classify({19, 1, 0}).reason.empty());
}

TEST_CASE("complete structure") {
  auto s = complete_structure();
  cplx c15(0.25, 0.25), c234(0, 2);
  CHECK(std::abs(s.shapes[0] - c15) < 1e-10);
  CHECK(std::abs(s.shapes[4] - c15) < 1e-10);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(s.shapes[i] - c234) < 1e-10);
  for (auto w : s.wxyz) CHECK(std::abs(w - I1) < 1e-10);
  CHECK(std::abs(s.volume - 4 * bloch_wigner(I1)) < 1e-10);
  CHECK(s.volume == doctest::Approx(3.66).epsilon(0.003));
}

TEST_CASE("tetrahedron edge invariants") {
  auto t = tetra_shape(cplx(0.3, 0.8));
  CHECK(std::abs(t.z1 * t.z2 * t.z3 + 1.0) < 1e-14);
  CHECK(std::abs(t.z2 - (1.0 - 1.0 / t.z1)) < 1e-14);
  CHECK(std::abs(t.z3 - 1.0 / (1.0 - t.z1)) < 1e-14);
  CHECK_THROWS_AS(shapes_volume({cplx(0.5, 0.5), 2.0, 1.0, 1.0, 1.0}), Error);
}

TEST_CASE("cross ratios and thurston coordinates are inverse on the gluing variety") {
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> U(-0.3, 0.3);
  for (int i = 0; i < 50; ++i) {
    cplx a = std::polar(1.0 + U(g), 0.4 + U(g)), b = cplx(0.2, 0.4) + cplx(U(g), U(g)) * 0.3;
    // c^2 - c (b + 1/b - R b) + 1 = 0 is the exponentiated gluing equation
    cplx R = (1.0 - a * b) * (1.0 - b / a) * (1.0 - 1.0 / b) / (b * b);
    cplx h = 0.5 * (b + 1.0 / b - R * b);
    cplx c = h + std::sqrt(h * h - 1.0);
    cplx gr = gluing_residual(a, b, c);
    CHECK(std::abs(std::exp(gr) - 1.0) < 1e-12);
    auto sh = shapes_from_abc(a, b, c);
    cplx prod = sh[0] * sh[1] * sh[2] * sh[3] * sh[4];
    CHECK(std::abs(prod - 1.0) < 1e-12);
    auto back = cross_ratio_shapes(thurston_shapes(sh));
    for (int k = 0; k < 5; ++k) CHECK(std::abs(back[k] - sh[k]) < 1e-10 * std::max(1.0, std::abs(sh[k])));
  }
  std::array<cplx, 4> ii{I1, I1, I1, I1};
  auto c = cross_ratio_shapes(ii);
  CHECK(std::abs(c[0] - cplx(0.25, 0.25)) < 1e-14);
  CHECK(std::abs(c[2] - cplx(0, 2)) < 1e-14);
}

TEST_CASE("D2 and Lobachevsky volumes agree") {
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> R(0.2, 3), A(0.1, pi - 0.1);
  for (int i = 0; i < 20; ++i) {
    std::array<cplx, 5> sh;
    for (auto& z : sh) z = std::polar(R(g), A(g));
    CHECK(std::abs(shapes_volume(sh) - shapes_volume_lambda(sh)) < 1e-9);
  }
}

TEST_CASE("solve (19,1,10)") {
  auto s = solve_structure({19, 1, 10});
  REQUIRE(s.geometric);
  CHECK(s.residual < 1e-12);
  CHECK(s.volume > 0);
  CHECK(s.volume < 4 * bloch_wigner(I1));
  CHECK(std::abs(s.volume - shapes_volume_lambda(s.shapes)) < 1e-9);
  auto [m1, l1, m2, l2] = s.holonomies;
  CHECK(std::abs(19.0 * m1 + l1 - 2 * pi * I1) < 1e-12);
  CHECK(std::abs(m2 - 10.0 * l2 - 2 * pi * I1) < 1e-12);
  CHECK(std::abs(gluing_residual(s.a, s.b, s.c)) < 1e-12);
  cplx x0 = std::log(s.a) / (2.0 * I1), z0 = std::log(-s.c) / (2.0 * I1) + pi / 2;
  CHECK(std::abs(x0.real()) < pi / 2);
  CHECK(std::abs(x0.imag()) > 1e-6);
  CHECK(std::abs(z0.imag()) > 1e-6);
  // geodesic lengths are positive
  CHECK(2 * x0.imag() / 1.0 > 0);
  CHECK(-4 * z0.imag() > 0);
  cplx prod = 1;
  for (auto c : s.shapes) {
    prod *= c;
    CHECK(c.imag() > 0);
  }
  CHECK(std::abs(prod - 1.0) < 1e-12);
}

TEST_CASE("solver normalizes negative q") {
  auto a = solve_structure({19, 2, 10}), b = solve_structure({-19, -2, 10});
  CHECK(std::abs(a.volume - b.volume) < 1e-12);
}

TEST_CASE("non-geometric fillings are flagged") {
  auto s = solve_structure({5, 1, 2});
  CHECK_FALSE(s.geometric);
}

TEST_CASE("critical points of V") {
  auto s = solve_structure({19, 1, 10});
  auto cps = critical_points(s);
  for (const auto& cp : cps) {
    CHECK(cp.grad_residual < 1e-9);
    auto g = grad_V(cp.pt, cp.idx, s.spec);
    for (auto v : g) CHECK(std::abs(v) < 1e-9);
    CHECK(region_flags(cp.pt.x.real(), cp.pt.y.real(), cp.pt.z.real()).DH);
    // Im V is the D2 sum at a critical point
    double d2 = 0;
    for (auto [w, sg] : dilog_arguments(cp.pt)) d2 += sg * bloch_wigner(w);
    CHECK(std::abs(cp.value.imag() - d2) < 1e-9);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(dist_mod_pi2(cps[i].value.real() - cps[j].value.real()) < 1e-8);
}

TEST_CASE("critical point approaches (0, arctan2/2, pi/2)") {
  double prev = INFINITY;
  for (long long N : {20, 40, 80}) {
    auto cps = critical_points(solve_structure({N, 1, N}));
    const auto& pt = cps[3].pt;
    double d = std::hypot(pt.x.real(), pt.y.real() - std::atan(2.0) / 2, pt.z.real() - pi / 2);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("complex volume from V and W") {
  auto cv = complex_volume({19, 1, 10});
  auto s = solve_structure({19, 1, 10});
  CHECK(std::abs(cv.vol - s.volume) < 1e-9);
  CHECK(std::abs(cv.w_value.imag() - s.volume) < 1e-9);
  CHECK(cv.max_mismatch < 1e-8);
  for (auto v : cv.v_values) CHECK(std::abs(v.imag() - s.volume) < 1e-8);
  CHECK(cv.cs_mod_pi2 >= 0);
  CHECK(cv.cs_mod_pi2 < pi * pi);
}

TEST_CASE("grad W vanishes at the solution") {
  auto s = solve_structure({19, 1, 10});
  auto fd = fourier_maps(expand_slope(19, 1));
  auto idx = make_index(fd, fd.splus.first, fd.splus.second, 0, -10 + 2);
  PotentialPoint pt{std::log(s.a) / (2.0 * I1), std::log(s.b) / (2.0 * I1), std::log(-s.c) / (2.0 * I1) + pi / 2};
  for (auto v : grad_W(pt, idx, s.spec)) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("sister manifolds") {
  for (SurgerySpec sp : {SurgerySpec{19, 1, 10}, SurgerySpec{25, 1, 12}, SurgerySpec{19, 2, 10}, SurgerySpec{7, 3, -5}}) {
    auto s = solve_structure(sp);
    REQUIRE(s.geometric);
    auto ss = sister_solution(s);
    CHECK(ss.dehn_residual < 1e-9);
    CHECK(ss.vieta_residual < 1e-12);
    CHECK(ss.b1b2_residual < 1e-12);
    CHECK(std::abs(std::abs(ss.volume) - s.volume) < 1e-8);
  }
}

TEST_CASE("second root") {
  cplx a = std::polar(1.0, 0.2), b1(0.2, 0.4);
  cplx b2 = second_root(a, b1);
  CHECK(std::abs(1.0 / b1 + 1.0 / b2 - (a + 1.0 / a)) < 1e-14);
}

TEST_CASE("t invariant of (19,1,10)") {
  auto t = t_invariant(solve_structure({19, 1, 10}));
  CHECK(std::isfinite(std::abs(t)));
  CHECK(std::abs(t) > 0);
}
