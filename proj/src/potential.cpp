#include "potential.hpp"

namespace qvol {

namespace {

constexpr double band = 1e-12;

cplx e2i(cplx w) { return std::exp(2.0 * I1 * w); }

void check_cut(cplx w, int term) {
  if (std::abs(w.imag()) <= band * (1.0 + std::abs(w)) && w.real() > 1.0 + band)
    fail(Status::branch, "dilogarithm argument on the cut [1, inf) in term " + std::to_string(term));
}

cplx li2_term(cplx w, int term) {
  check_cut(w, term);
  return dilog(w);
}

// log(1 - w), singular at w = 1 and discontinuous across w in (1, inf)
cplx log1m(cplx w, int term) {
  check_cut(w, term);
  if (std::abs(1.0 - w) < band) fail(Status::branch, "logarithmic singularity in term " + std::to_string(term));
  return std::log(1.0 - w);
}

cplx g_of(cplx w, int term) {
  if (std::abs(1.0 - w) < band) fail(Status::branch, "pole of h in term " + std::to_string(term));
  return w / (1.0 - w);
}

struct Args {
  cplx A, B, C, Dd, Ey;
};

Args args_of(const PotentialPoint& pt) {
  return {e2i(pt.y + pt.x), e2i(pt.y - pt.x), e2i(pt.z - pt.y), e2i(-pt.y - pt.z), e2i(-pt.y)};
}

double quad_x(const SurgerySpec& s) { return double(s.p + 2 * s.q) / double(s.q); }

}  // namespace

RegionFlags region_flags(double x, double y, double z, double eps) {
  RegionFlags f;
  auto ge = [](double a, double b) { return a >= b - band; };
  auto gt = [](double a, double b) { return a > b - band; };
  f.D = ge(y, std::abs(x)) && y < pi + band && gt(z, 0.0) && z < pi - y + band;
  auto in_eps = [&](double e) {
    return gt(x, -pi / 4 + e) && x < pi / 4 - e + band && gt(y - x, e) && gt(x + y, e) && gt(z - y, e) &&
           y + z < pi - e + band && y + 2 * z < 1.75 * pi - e + band && gt(2 * z - y, pi / 4 - e);
  };
  f.D0 = in_eps(0.0);
  f.D_eps = in_eps(eps);
  auto open_int = [&](double v, double lo, double hi) { return gt(v, lo) && v < hi + band; };
  f.DH = open_int(y - x, 0, pi / 2) && open_int(y + x, 0, pi / 2) && open_int(z + y, pi / 2, pi) &&
         open_int(z - y, 0, pi / 2);
  return f;
}

Region classify_region(const PotentialPoint& pt, double eps) {
  auto f = region_flags(pt.x.real(), pt.y.real(), pt.z.real(), eps);
  if (f.D_eps) return Region::D_eps;
  if (f.D0) return Region::D0;
  if (f.D) return Region::D;
  if (f.DH) return Region::DH;
  return Region::outside;
}

IndexData make_index(const FourierData& f, long long s, long long m, long long n, long long l) {
  if (s < 0 || s >= (long long)f.Imap.size()) fail(Status::domain, "make_index: s out of range");
  IndexData d;
  d.s = s;
  d.m = m;
  d.n = n;
  d.l = l;
  d.kvalue = f.kvalue(s, m);
  d.Jval = f.Jmap[s];
  d.Kval = f.Kmap[s];
  return d;
}

cplx dilog_part(const PotentialPoint& pt, bool with_y2) {
  Args a = args_of(pt);
  cplx v = li2_term(a.A, 1) + li2_term(a.B, 2) + li2_term(a.C, 3) + li2_term(a.Dd, 4) - li2_term(a.Ey, 5);
  if (with_y2) v -= 4.0 * pt.y * pt.y;
  return v;
}

cplx eval_V(const PotentialPoint& pt, const IndexData& idx, const SurgerySpec& spec) {
  const auto& [x, y, z] = pt;
  double pp = double(spec.twist);
  return dilog_part(pt, false) - quad_x(spec) * x * x - 4.0 * y * y - (4 * pp + 2) * z * z + 2 * pi * idx.k() * x -
         4 * pi * double(idx.n) * y - 2 * pi * double(2 * idx.l + 1) * z + idx.K() * pi * pi - pi * pi / 2;
}

cplx eval_W(const PotentialPoint& pt, const IndexData& idx, const SurgerySpec& spec) {
  const auto& [x, y, z] = pt;
  double pp = double(spec.twist);
  return dilog_part(pt, false) + quad_x(spec) * x * x - 4.0 * y * y + 4 * (pp - 1) * z * z - 2 * pi * idx.k() * x -
         4 * pi * double(idx.n) * y + 4 * pi * double(idx.l) * z - pi * pi / 2 - idx.K() * pi * pi;
}

Vec3 grad_V(const PotentialPoint& pt, const IndexData& idx, const SurgerySpec& spec) {
  Args a = args_of(pt);
  cplx lA = log1m(a.A, 1), lB = log1m(a.B, 2), lC = log1m(a.C, 3), lD = log1m(a.Dd, 4), lE = log1m(a.Ey, 5);
  double pp = double(spec.twist);
  return {-2.0 * I1 * lA + 2.0 * I1 * lB - 2.0 * quad_x(spec) * pt.x + 2 * pi * idx.k(),
          -2.0 * I1 * (lA + lB) + 2.0 * I1 * (lC + lD) - 2.0 * I1 * lE - 8.0 * pt.y - 4 * pi * double(idx.n),
          -2.0 * I1 * lC + 2.0 * I1 * lD - 2 * (4 * pp + 2) * pt.z - 2 * pi * double(2 * idx.l + 1)};
}

Vec3 grad_W(const PotentialPoint& pt, const IndexData& idx, const SurgerySpec& spec) {
  Args a = args_of(pt);
  cplx lA = log1m(a.A, 1), lB = log1m(a.B, 2), lC = log1m(a.C, 3), lD = log1m(a.Dd, 4), lE = log1m(a.Ey, 5);
  double pp = double(spec.twist);
  return {-2.0 * I1 * lA + 2.0 * I1 * lB + 2.0 * quad_x(spec) * pt.x - 2 * pi * idx.k(),
          -2.0 * I1 * (lA + lB) + 2.0 * I1 * (lC + lD) - 2.0 * I1 * lE - 8.0 * pt.y - 4 * pi * double(idx.n),
          -2.0 * I1 * lC + 2.0 * I1 * lD + 8 * (pp - 1) * pt.z + 4 * pi * double(idx.l)};
}

namespace {

Mat3 hessian_common(const PotentialPoint& pt, double cxx, double czz) {
  Args a = args_of(pt);
  cplx gA = g_of(a.A, 1), gB = g_of(a.B, 2), gC = g_of(a.C, 3), gD = g_of(a.Dd, 4), gE = g_of(a.Ey, 5);
  Mat3 H{};
  H[0][0] = -4.0 * (gA + gB) + cxx;
  H[0][1] = H[1][0] = -4.0 * gA + 4.0 * gB;
  H[0][2] = H[2][0] = 0.0;
  H[1][1] = -4.0 * (gA + gB + gC + gD) + 4.0 * gE - 8.0;
  H[1][2] = H[2][1] = 4.0 * gC - 4.0 * gD;
  H[2][2] = -4.0 * (gC + gD) + czz;
  return H;
}

}  // namespace

Mat3 hessian_V(const PotentialPoint& pt, const IndexData&, const SurgerySpec& spec) {
  return hessian_common(pt, -2.0 * quad_x(spec), -2.0 * (4.0 * double(spec.twist) + 2.0));
}

Mat3 hessian_W(const PotentialPoint& pt, const IndexData&, const SurgerySpec& spec) {
  return hessian_common(pt, 2.0 * quad_x(spec), 8.0 * (double(spec.twist) - 1.0));
}

cplx eval_Vr(int r, const PotentialPoint& pt, const IndexData& idx, const SurgerySpec& spec) {
  const auto& [x, y, z] = pt;
  const double h = pi / r;
  double pp = double(spec.twist);
  double Iq = (idx.kvalue - 1 + 2 * idx.m).convert_to<double>();  // I(s)/q
  cplx v = quantum_dilog(r, y + x + h) + quantum_dilog(r, y - x + h) + quantum_dilog(r, z - y) +
           quantum_dilog(r, pi - y - z) - quantum_dilog(r, pi - y - h);
  v += -quad_x(spec) * x * x - 4.0 * y * y - (4 * pp + 2) * z * z + 2 * pi * (Iq + 1) * x - 2 * pi * z + idx.K() * pi * pi;
  v += -quantum_dilog(r, cplx(h)) - pi * pi / 3 - 4 * pi / r * (x + y) + 2 * pi * pi / r - pi * pi / (3.0 * r * r);
  v += -4 * pi * (double(idx.m) * x + double(idx.n) * y + double(idx.l) * z);
  return v;
}

cplx vr_correction(int r, const PotentialPoint& pt) {
  Args a = args_of(pt);
  return log1m(a.A, 1) + log1m(a.B, 2) + log1m(a.Ey, 5) - 2.0 * I1 * (pt.x + pt.y) + std::log(double(r)) +
         1.5 * pi * I1 - std::log(2.0);
}

double im_V_surface(double x, double y, double z, double shift, const IndexData& idx, const SurgerySpec& spec) {
  return eval_V({x, cplx(y, shift), z}, idx, spec).imag();
}

cplx f_y(cplx y) {
  return 2.0 * dilog(e2i(y)) + 2.0 * dilog(-e2i(-y)) - dilog(e2i(-y)) - 4.0 * y * y;
}

std::array<std::pair<cplx, int>, 5> dilog_arguments(const PotentialPoint& pt) {
  Args a = args_of(pt);
  return {{{a.A, 1}, {a.B, 1}, {a.C, 1}, {a.Dd, 1}, {a.Ey, -1}}};
}

cplx det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double det3_abs(const Mat3& m) { return std::abs(det3(m)); }

Maximum golden_max(const std::function<double(double)>& f, double a, double b, int scan, double tol) {
  int best = 0;
  double bestv = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= scan; ++i) {
    double t = a + (b - a) * i / scan;
    double v = f(t);
    if (v > bestv) bestv = v, best = i;
  }
  double lo = a + (b - a) * std::max(0, best - 1) / scan;
  double hi = a + (b - a) * std::min(scan, best + 1) / scan;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc > fd) {
      hi = d, d = c, fd = fc;
      c = hi - g * (hi - lo);
      fc = f(c);
    } else {
      lo = c, c = d, fc = fd;
      d = lo + g * (hi - lo);
      fd = f(d);
    }
  }
  Maximum m;
  m.arg = 0.5 * (lo + hi);
  m.value = f(m.arg);
  if (bestv > m.value) m.value = bestv, m.arg = a + (b - a) * best / scan;
  return m;
}

}  // namespace qvol
