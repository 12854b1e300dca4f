#pragma once

#include <array>
#include <string>

#include "potential.hpp"

namespace qvol {

struct Classification {
  bool hyperbolic = true;
  std::string reason;
};

Classification classify(const SurgerySpec& spec);

struct TetraShape {
  cplx z1, z2, z3;  // z, 1 - 1/z, 1/(1 - z)
};

TetraShape tetra_shape(cplx z);

struct HyperbolicSolution {
  SurgerySpec spec;                 // q > 0 after normalization
  cplx a, b, c;
  std::array<cplx, 5> shapes{};     // c_1..c_5
  std::array<cplx, 4> wxyz{};       // Thurston coordinates w, x, y, z
  std::array<cplx, 4> holonomies{}; // m1, l1, m2, l2
  double volume = 0;
  double cs = 0;                    // mod pi^2, in [0, pi^2)
  bool geometric = false;
  double residual = 0;
  int continuation_steps = 0;
};

struct SolveOptions {
  int steps = 32;
  int max_iter = 50;
  double step_tol = 1e-13;
  double residual_tol = 1e-12;
  int max_halvings = 12;
};

// (a, b, c) to c_1..c_5
std::array<cplx, 5> shapes_from_abc(cplx a, cplx b, cplx c);
std::array<cplx, 4> holonomies_from_abc(cplx a, cplx b, cplx c);
// log-form gluing equation residual
cplx gluing_residual(cplx a, cplx b, cplx c);

std::array<cplx, 4> thurston_shapes(const std::array<cplx, 5>& c);
std::array<cplx, 5> cross_ratio_shapes(const std::array<cplx, 4>& wxyz);

HyperbolicSolution complete_structure();
HyperbolicSolution solve_structure(const SurgerySpec& spec, const SolveOptions& opt = {});

// sum of D2 over the five shapes
double volume(const HyperbolicSolution& sol);
double shapes_volume(const std::array<cplx, 5>& shapes);
// same quantity from dihedral angles and the Lobachevsky function
double shapes_volume_lambda(const std::array<cplx, 5>& shapes);

struct CriticalPoint {
  PotentialPoint pt;
  IndexData idx;
  cplx value;
  double grad_residual = 0;
};

// the four V critical points; order: (-x0*, -y2*, pi-z0*, s-), (x0*, -y2*, pi-z0*, s+), (-x0*, -y2*, z0*, s-), (x0*, -y2*, z0*, s+)
std::array<CriticalPoint, 4> critical_points(const HyperbolicSolution& sol, double tol = 1e-9);

struct ComplexVolume {
  double vol = 0;
  double cs_mod_pi2 = 0;
  cplx w_value;                   // W(x0, y1, z0, s+, m+, 0, -p'+2)
  std::array<cplx, 4> v_values{};
  double max_mismatch = 0;        // distance of the V values to -conj(W) mod pi^2
};

ComplexVolume complex_volume(const SurgerySpec& spec, double tol = 1e-8);

struct SisterSolution {
  cplx a, b1, b2, c;
  std::array<cplx, 4> holonomies{};  // m1', l1', m2', l2'
  std::array<cplx, 5> shapes{};
  double dehn_residual = 0;
  double vieta_residual = 0;
  double b1b2_residual = 0;
  double volume = 0;                 // sum of D2 over the sister shapes
};

SisterSolution sister_solution(const HyperbolicSolution& sol);

// y2 from 1/b1 + 1/b2 = a + 1/a
cplx second_root(cplx a, cplx b1);

// distance of x mod pi^2 to 0
double dist_mod_pi2(double x);

// |t(M)| from the Hessian at (x0*, -y2*, z0*) with (s+, m+, 0, -p')
cplx t_invariant(const HyperbolicSolution& sol);

}  // namespace qvol
