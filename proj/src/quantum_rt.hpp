#pragma once

#include <functional>

#include "contfrac.hpp"
#include "specfun.hpp"

namespace qvol {

enum class Precision { standard, extended };  // double or binary128
enum class Reduction { deterministic, fast };

struct RTOptions {
  Precision precision = Precision::standard;
  Reduction reduction = Reduction::deterministic;
  int threads = 0;  // 0: QVOL_THREADS or hardware concurrency
  ExpansionKind expansion = ExpansionKind::canonical;
  double max_rel_error = 1e-3;  // PrecisionError threshold on the rounding estimate
};

struct RTValue {
  int r = 0;
  cplx value;
  double log_abs = 0;
  long long terms_summed = 0;
  double seconds = 0;
  double condition = 0;  // sum |term| / |sum|
};

int resolve_threads(int requested);

// f_K(n) for the twist knot K_{p'}; simple poles of the termwise formula at n + l + 1 >= r
// are resolved as a first-order limit along t -> e^{4 pi i / r}
cplx habiro_coeff(long long pprime, int n, const QuantumTables& T);
std::vector<cplx> habiro_coeffs(long long pprime, int nmax, const QuantumTables& T);

cplx colored_jones(long long pprime, int N, const QuantumTables& T);

RTValue rt_invariant(const SurgerySpec& spec, int r, const RTOptions& opt = {});

// Habiro-expansion route; differs from rt_invariant by an overall sign
cplx rt_via_habiro(const SurgerySpec& spec, int r, ExpansionKind kind = ExpansionKind::canonical);

struct LatticeTerm {
  long long s;
  int M, N, L;  // m = M/2, n = N/2, l' = L/2
  cplx value;   // c_r times the summand
};

// every summand of the lattice sum in the deterministic order
void rt_terms(const SurgerySpec& spec, int r, const std::function<void(const LatticeTerm&)>& visit,
              ExpansionKind kind = ExpansionKind::canonical);

// sum of rt_terms sorted by increasing magnitude
cplx rt_sorted_sum(const SurgerySpec& spec, int r, ExpansionKind kind = ExpansionKind::canonical);

int b2_mod2(const SurgerySpec& spec);
double tv_invariant(const SurgerySpec& spec, int r, const RTOptions& opt = {});

}  // namespace qvol
