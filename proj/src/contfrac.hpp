#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <utility>
#include <vector>

#include "common.hpp"

namespace qvol {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct SurgerySpec {
  long long p = 0, q = 1, twist = 0;
};

void check_spec(const SurgerySpec& s);

struct Matrix2 {
  long long A = 1, B = 0, C = 0, D = 1;
};

enum class ExpansionKind { canonical, alternate };

struct FractionExpansion {
  long long p = 0, q = 1;
  std::vector<long long> a;   // a_1..a_k
  std::vector<Matrix2> U;     // U_0..U_k
  long long ptilde = 0, qtilde = 0;
  int sigma = 0;

  int k() const { return int(a.size()); }
  long long C(int i) const { return U[i].C; }
};

// p/q = a_k - 1/(a_{k-1} - ...), U_i = T^{a_i} S U_{i-1}
FractionExpansion expand_slope(long long p, long long q, ExpansionKind kind = ExpansionKind::canonical);

// signature of the tridiagonal matrix with diagonal a and unit off-diagonals
int linking_signature(const std::vector<long long>& a);

struct FourierData {
  long long q = 1;
  std::vector<Rational> Kseq;  // K_0..K_k, K_0 = 0
  std::vector<long long> Imap;
  std::vector<Rational> Jmap, Kmap;
  std::pair<long long, long long> splus, sminus;  // (s, m)

  Rational kvalue(long long s, long long m) const;
};

FourierData fourier_maps(const FractionExpansion& e);

// exact congruence checks on the index maps
struct CongruenceReport {
  bool I_parity = true;        // I(s) = 1 - q mod 2
  bool unique_pm = true;       // s+, s- exist and are unique
  bool J_congruence = true;    // J(s+) = p~/q, J(s-) = -p~/q mod Z, J(s+) + J(s-) in 2Z
  bool K_congruence = true;    // K(s+) = K(s-) = -p~/q mod Z; K(s+) - K(s-) in 4Z
  bool pair_J = true;          // J(s) in Z/q, J(s) + J(s') in 2Z
  bool pair_parity = true;     // s - s' or m - m' odd
  bool pair_K = true;          // K(s) - K(s') in 4Z, 1 + m' - m + (K(s)-K(s'))/4 even
  int pairs = 0;
  bool all() const { return I_parity && unique_pm && J_congruence && K_congruence && pair_J && pair_parity && pair_K; }
};

CongruenceReport check_congruences(const FractionExpansion& e, const FourierData& f);

bool is_integer(const Rational& x);

// reduced numerator/denominator as machine integers
std::pair<long long, long long> to_ll(const Rational& x);

}  // namespace qvol
