#pragma once

#include <vector>

#include "common.hpp"

namespace qvol {

// principal branch; on the cut (1, inf) returns the limit from below
cplx dilog(cplx z);

double lobachevsky(double theta);

// D2(z) = Im Li2(z) + log|z| arg(1 - z); zero at 0 and 1
double bloch_wigner(cplx z);

// Faddeev quantum dilogarithm phi_r, strip -pi/r < Re z < pi + pi/r
cplx quantum_dilog(int r, cplx z, double tol = 1e-10);

double f_asymptote(double t, double X);

// e^{i pi num / den}, num reduced modulo 2 den before the trig call
cplx unit_root(long long num, long long den);

struct QuantumTables {
  int r = 0;
  cplx t;
  std::vector<cplx> pochhammer;        // (t)_n, n = 0..r-1
  std::vector<cplx> braced_factorial;  // {n}!, n = 0..r-1
  std::vector<cplx> quantum_int;       // [n], n = 0..r-1

  cplx braced(long long n) const;  // {n} = t^{n/2} - t^{-n/2}
};

inline constexpr int max_level = 2001;

QuantumTables build_quantum_tables(int r);

}  // namespace qvol
