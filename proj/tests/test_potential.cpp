#include <doctest.h>

#include "potential.hpp"

using namespace qvol;

namespace {

struct Fixture {
  SurgerySpec sp{19, 1, 10};
  FourierData fd = fourier_maps(expand_slope(19, 1));
  IndexData idx = make_index(fd, 0, fd.splus.second, 0, -10);
};

const PotentialPoint samples[] = {{0.1, cplx(0.6, 0.1), 1.6}, {-0.2, 0.5, 1.3}, {cplx(0.05, 0.02), cplx(0.55, 0.3), cplx(1.5, -0.1)}};

}  // namespace

TEST_CASE("region flags") {
  auto f = region_flags(0, pi / 4, pi / 2);
  CHECK(f.D);
  CHECK(f.D0);
  CHECK(f.D_eps);
  CHECK(classify_region({0.0, pi / 4, pi / 2}) == Region::D_eps);
  CHECK(classify_region({0.0, -0.1, 1.0}) == Region::outside);
  // boundary y = |x| belongs to the closure of D
  CHECK(region_flags(0.3, 0.3, 1.0).D);
  CHECK_FALSE(region_flags(0.3, 0.3, 1.0).D_eps);
  auto h = region_flags(0.0, std::atan(2.0) / 2, pi / 2);
  CHECK(h.DH);
}

TEST_CASE("index data") {
  Fixture F;
  CHECK(F.idx.kvalue == 1);
  CHECK(F.idx.k() == 1.0);
  CHECK_THROWS_AS(make_index(F.fd, 3, 0, 0, 0), Error);
}

TEST_CASE("cut collisions raise branch errors") {
  Fixture F;
  PotentialPoint bad{0.3, cplx(0.3, -0.2), 1.2};  // e^{2i(y-x)} = e^{0.4}
  CHECK_THROWS_AS(eval_V(bad, F.idx, F.sp), Error);
  try {
    eval_V(bad, F.idx, F.sp);
  } catch (const Error& e) {
    CHECK(e.status() == Status::branch);
  }
  CHECK_THROWS_AS(grad_V({0.3, 0.3, 1.2}, F.idx, F.sp), Error);
}

TEST_CASE("hessians are symmetric") {
  Fixture F;
  for (const auto& pt : samples) {
    for (const auto& H : {hessian_V(pt, F.idx, F.sp), hessian_W(pt, F.idx, F.sp)})
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(std::abs(H[i][j] - H[j][i]) < 1e-14);
  }
}

TEST_CASE("quantum potential converges with the explicit 1/r correction") {
  Fixture F;
  for (const auto& pt : samples) {
    cplx V = eval_V(pt, F.idx, F.sp);
    double lo = INFINITY, hi = 0, prev = INFINITY;
    for (int r : {101, 201, 301, 501}) {
      cplx rem = eval_Vr(r, pt, F.idx, F.sp) - V + 2.0 * pi * I1 / double(r) * vr_correction(r, pt);
      double s = double(r) * r * std::abs(rem);
      lo = std::min(lo, s), hi = std::max(hi, s);
      double raw = std::abs(eval_Vr(r, pt, F.idx, F.sp).imag() - V.imag());
      CHECK(raw < prev);
      prev = raw;
    }
    CHECK(hi < 1e3);
    CHECK(hi - lo < 0.01 * hi);
    const int r = 1001;
    cplx Vr = eval_Vr(r, pt, F.idx, F.sp);
    CHECK(std::abs((Vr + 2.0 * pi * I1 / double(r) * vr_correction(r, pt)).imag() - V.imag()) < 1e-4);
  }
}

TEST_CASE("quantum potential rejects the strip boundary") {
  Fixture F;
  CHECK_THROWS_AS(eval_Vr(51, {0.0, 0.5, 3.5}, F.idx, F.sp), Error);
}

TEST_CASE("gradient and potential agree with complex-step directions") {
  Fixture F;
  const double h = 1e-6;
  for (const auto& pt : samples) {
    auto g = grad_V(pt, F.idx, F.sp);
    // holomorphy: the derivative along i*h equals the one along h
    PotentialPoint a = pt, b = pt;
    a.y += cplx(0, h);
    b.y -= cplx(0, h);
    cplx d = (eval_V(a, F.idx, F.sp) - eval_V(b, F.idx, F.sp)) / cplx(0, 2 * h);
    CHECK(std::abs(d - g[1]) < 1e-6 * std::max(1.0, std::abs(g[1])));
  }
}

TEST_CASE("V and W share their dilogarithm part") {
  Fixture F;
  for (const auto& pt : samples) {
    cplx dV = eval_V(pt, F.idx, F.sp), dW = eval_W(pt, F.idx, F.sp);
    const auto& [x, y, z] = pt;
    double pp = double(F.sp.twist), c = double(F.sp.p + 2 * F.sp.q) / F.sp.q, k = F.idx.k(), K = F.idx.K();
    double l = double(F.idx.l), n = double(F.idx.n);
    cplx common = dilog_part(pt, false) - 4.0 * y * y - 4 * pi * n * y - pi * pi / 2;
    CHECK(std::abs(dV - (common - c * x * x - (4 * pp + 2) * z * z + 2 * pi * k * x - 2 * pi * (2 * l + 1) * z + K * pi * pi)) < 1e-11);
    CHECK(std::abs(dW - (common + c * x * x + 4 * (pp - 1) * z * z - 2 * pi * k * x + 4 * pi * l * z - K * pi * pi)) < 1e-11);
  }
}

TEST_CASE("V + W vanishes at the base point") {
  Fixture F;
  const double L = std::log(5.0) / 4, y0 = std::atan(2.0) / 2;
  for (long long l : {-12, -10, 0, 5}) {
    auto iv = make_index(F.fd, 0, F.fd.splus.second, 0, l), iw = make_index(F.fd, 0, F.fd.splus.second, 0, l + 2);
    cplx s = eval_V({0.0, cplx(y0, L), pi / 2}, iv, F.sp) + eval_W({0.0, cplx(-y0, L), pi / 2}, iw, F.sp);
    CHECK(std::abs(s) < 1e-12);
  }
}

TEST_CASE("f(y0) identity") {
  const double L = std::log(5.0) / 4, y0 = std::atan(2.0) / 2;
  for (int sg : {1, -1}) {
    cplx e = -pi * pi / 4 + double(sg) * 4.0 * I1 * bloch_wigner(I1);
    CHECK(std::abs(f_y(cplx(sg * y0, L)) - e) < 1e-10);
  }
}

TEST_CASE("shifted maximum of Im Li2 on the line Im t = log5/4") {
  const double L = std::log(5.0) / 4;
  auto m = golden_max([&](double t) { return dilog(std::exp(2.0 * I1 * cplx(t, L))).imag(); }, 0, pi);
  CHECK(std::abs(m.value - 0.448473) < 1e-5);
  CHECK(std::abs(m.arg - 0.5 * std::acos(1 / (2 * std::sqrt(5.0)))) < 1e-6);
}

TEST_CASE("golden section") {
  auto m = golden_max([](double t) { return -(t - 0.3) * (t - 0.3); }, 0, 1);
  CHECK(std::abs(m.arg - 0.3) < 1e-8);
  auto e = golden_max([](double t) { return -t; }, 0, 1);
  CHECK(e.arg == doctest::Approx(0.0));
}

TEST_CASE("determinants") {
  Mat3 I{};
  for (int i = 0; i < 3; ++i) I[i][i] = 2.0;
  CHECK(std::abs(det3(I) - 8.0) < 1e-15);
  CHECK(det3_abs(I) == 8.0);
}
