#pragma once

#include <array>
#include <functional>

#include "contfrac.hpp"
#include "specfun.hpp"

namespace qvol {

using Vec3 = std::array<cplx, 3>;
using Mat3 = std::array<Vec3, 3>;

struct PotentialPoint {
  cplx x, y, z;
};

struct RegionFlags {
  bool D = false, D0 = false, D_eps = false, DH = false;
};

enum class Region { D_eps, D0, D, DH, outside };

// real parts only; closures with a 1e-12 band
RegionFlags region_flags(double x, double y, double z, double eps = 0.02);
Region classify_region(const PotentialPoint& pt, double eps = 0.02);

struct IndexData {
  long long s = 0, m = 0, n = 0, l = 0;
  Rational kvalue, Jval, Kval;
  double k() const { return kvalue.convert_to<double>(); }
  double K() const { return Kval.convert_to<double>(); }
};

IndexData make_index(const FourierData& f, long long s, long long m, long long n, long long l);

cplx eval_V(const PotentialPoint& pt, const IndexData& idx, const SurgerySpec& spec);
cplx eval_W(const PotentialPoint& pt, const IndexData& idx, const SurgerySpec& spec);
Vec3 grad_V(const PotentialPoint& pt, const IndexData& idx, const SurgerySpec& spec);
Vec3 grad_W(const PotentialPoint& pt, const IndexData& idx, const SurgerySpec& spec);
Mat3 hessian_V(const PotentialPoint& pt, const IndexData& idx, const SurgerySpec& spec);
Mat3 hessian_W(const PotentialPoint& pt, const IndexData& idx, const SurgerySpec& spec);

// quantum potential V_r(x,y,z,s,m,n,l) through phi_r
cplx eval_Vr(int r, const PotentialPoint& pt, const IndexData& idx, const SurgerySpec& spec);

// log(1-e^{2i(y+x)}) + log(1-e^{2i(y-x)}) + log(1-e^{-2iy}) - 2i(x+y) + log r + 3 pi i/2 - log 2
cplx vr_correction(int r, const PotentialPoint& pt);

double im_V_surface(double x, double y, double z, double shift, const IndexData& idx, const SurgerySpec& spec);

// five-dilogarithm part of V, optionally with -4y^2
cplx dilog_part(const PotentialPoint& pt, bool with_y2);

// 2Li2(e^{2iy}) + 2Li2(-e^{-2iy}) - Li2(e^{-2iy}) - 4y^2
cplx f_y(cplx y);

// the five exponentials whose D2 values sum to Im V at a critical point, with signs
std::array<std::pair<cplx, int>, 5> dilog_arguments(const PotentialPoint& pt);

double det3_abs(const Mat3& m);
cplx det3(const Mat3& m);

// golden-section maximization, bracket from a uniform scan
struct Maximum {
  double arg = 0, value = 0;
};
Maximum golden_max(const std::function<double(double)>& f, double a, double b, int scan = 1000, double tol = 1e-10);

}  // namespace qvol
