#include "quantum_rt.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <thread>

namespace qvol {

using f128 = boost::multiprecision::float128;
using i128 = __int128;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QVOL_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

namespace {

template <class F>
void parallel_for(long long count, int threads, F&& fn) {
  threads = int(std::min<long long>(std::max(1, threads), std::max(1LL, count)));
  if (threads == 1) {
    for (long long i = 0; i < count; ++i) fn(i, 0);
    return;
  }
  std::atomic<long long> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (long long i = next++; i < count; i = next++) fn(i, w);
    });
  for (auto& th : pool) th.join();
}

// ---------- scalar helpers ----------

template <class T>
struct Cx {
  T re{}, im{};
};

template <class T>
Cx<T> operator+(const Cx<T>& a, const Cx<T>& b) { return {a.re + b.re, a.im + b.im}; }
template <class T>
Cx<T> operator*(const Cx<T>& a, const Cx<T>& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
template <class T>
Cx<T> operator*(const T& s, const Cx<T>& a) { return {s * a.re, s * a.im}; }
template <class T>
Cx<T> inverse(const Cx<T>& a) {
  T n = a.re * a.re + a.im * a.im;
  return {a.re / n, -a.im / n};
}
template <class T>
T norm(const Cx<T>& a) {
  using std::sqrt;
  return sqrt(a.re * a.re + a.im * a.im);
}

template <class T>
T pi_of() { return boost::math::constants::pi<T>(); }

i128 mod_pos(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

// sin(pi n / d) and e^{i pi n / d} with exact reduction
template <class T>
Cx<T> expi(i128 num, i128 den) {
  using std::cos;
  using std::sin;
  if (den < 0) num = -num, den = -den;
  i128 n = mod_pos(num, 2 * den);
  if (n > den) n -= 2 * den;
  T ang = pi_of<T>() * T(static_cast<long long>(n)) / T(static_cast<long long>(den));
  return {cos(ang), sin(ang)};
}
template <class T>
T sinpi(i128 num, i128 den) {
  return expi<T>(num, den).im;
}

template <class T>
Cx<T> rational_phase(const Rational& x) {
  BigInt n = boost::multiprecision::numerator(x), d = boost::multiprecision::denominator(x);
  BigInt m = n % (2 * d);
  if (m < 0) m += 2 * d;
  if (d > BigInt(std::numeric_limits<long long>::max() / 4)) {
    // fall back to a rounded angle
    using std::cos;
    using std::sin;
    T ang = pi_of<T>() * T(Rational(m, d).convert_to<double>());
    return {cos(ang), sin(ang)};
  }
  return expi<T>(static_cast<i128>(m.convert_to<long long>()), static_cast<i128>(d.convert_to<long long>()));
}

template <class T>
double to_double(const T& x) {
  return static_cast<double>(x);
}

// ---------- shared preparation ----------

struct Prepared {
  long long p = 0, q = 1, twist = 0;
  FractionExpansion e;
  FourierData f;
  std::vector<std::pair<long long, long long>> J, K;
  Rational sum_inv_cc;
  long long sum_a = 0;
};

Prepared prepare(const SurgerySpec& spec, ExpansionKind kind) {
  check_spec(spec);
  Prepared P;
  P.p = spec.q < 0 ? -spec.p : spec.p;
  P.q = spec.q < 0 ? -spec.q : spec.q;
  P.twist = spec.twist;
  P.e = expand_slope(P.p, P.q, kind);
  P.f = fourier_maps(P.e);
  for (long long s = 0; s < P.q; ++s) {
    P.J.push_back(to_ll(P.f.Jmap[s]));
    P.K.push_back(to_ll(P.f.Kmap[s]));
  }
  for (long long a : P.e.a) P.sum_a += a;
  for (int i = 2; i <= P.e.k(); ++i) {
    BigInt prod = BigInt(P.e.C(i - 1)) * P.e.C(i);
    if (prod == 0) fail(Status::internal, "vanishing C_{i-1} C_i in the prefactor");
    if (prod < 0) P.sum_inv_cc -= Rational(BigInt(1), BigInt(-prod));
    else P.sum_inv_cc += Rational(BigInt(1), prod);
  }
  return P;
}

void check_level(int r) {
  if (r < 3 || r % 2 == 0 || r > max_level)
    fail(Status::domain, "r must be odd with 3 <= r <= " + std::to_string(max_level));
}

// c_r phase / pi
Rational cr_phase(const Prepared& P, int r) {
  int k = P.e.k();
  Rational ph = Rational(3 * (k + 1), 4) + P.sum_a + Rational(1, 2);
  ph += (Rational(3 * P.e.sigma - P.sum_a) - P.sum_inv_cc - P.twist - Rational(5, 2)) / r;
  ph += Rational(BigInt(r) * (P.e.sigma + 3 * P.e.a.back() + 2), 4);
  return ph;
}

// kappa_r phase / pi
Rational kappa_phase(const Prepared& P, int r) {
  int k = P.e.k();
  Rational ph = Rational(3 * (k + 1), 4) + P.sum_a;
  ph += (Rational(3 * P.e.sigma - P.sum_a) - P.sum_inv_cc) / r;
  ph += Rational(BigInt(r) * (P.e.sigma + 3 * P.e.a.back()), 4);
  return ph;
}

// phase / pi of the (s, M, N) part of the summand, as numerator over 4 q r Kd
i128 phase_num(const Prepared& P, long long s, int r, int M, int N) {
  i128 q = P.q, Kn = P.K[s].first, Kd = P.K[s].second, I = P.f.Imap[s];
  i128 m = M, n = N, rr = r;
  return i128(P.p) * m * m * Kd + (-4 * m * n + 2 * n * n) * q * Kd - 2 * I * m * rr * Kd + 2 * n * q * rr * Kd -
         Kn * q * rr * rr - 4 * (m + n) * q * Kd;
}

template <class T>
std::vector<Cx<T>> pochhammer_table(int r) {
  std::vector<Cx<T>> P(r);
  P[0] = {T(1), T(0)};
  for (int n = 1; n < r; ++n) {
    Cx<T> tn = expi<T>(4 * n, r);
    P[n] = P[n - 1] * Cx<T>{T(1) - tn.re, -tn.im};
  }
  return P;
}

long long lattice_count(long long q, int r) {
  long long c = 0;
  for (int M = 2 - r; M <= r - 2; M += 2)
    for (int N = std::abs(M); N <= r - 2; N += 2) c += (r - N) / 2;
  return q * c;
}

template <class T>
RTValue rt_kernel(const Prepared& P, int r, const RTOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  const int threads = resolve_threads(opt.threads);
  const auto poch = pochhammer_table<T>(r);
  std::vector<Cx<T>> ipoch(r);
  for (int n = 0; n < r; ++n) ipoch[n] = inverse(poch[n]);

  // inner l' sum depends only on N
  const int nN = (r - 1) / 2;  // N = 1, 3, ..., r - 2
  std::vector<Cx<T>> G(nN);
  std::vector<T> Gabs(nN);
  parallel_for(nN, threads, [&](long long idx, int) {
    int N = 2 * int(idx) + 1;
    Cx<T> acc{};
    T aacc(0);
    for (int L = 1; L <= r - 1 - N; L += 2) {
      T sz = sinpi<T>(2 * L, r);
      Cx<T> w = sz * expi<T>(i128(4 * P.twist + 2) * L * L + i128(2) * L * r, i128(4) * r);
      Cx<T> v = w * ipoch[(r - 1 - N - L) / 2] * ipoch[(r - 1 - N + L) / 2];
      acc = acc + v;
      aacc += norm(v);
    }
    G[idx] = acc;
    Gabs[idx] = aacc;
  });

  const long long nM = r - 1;  // M = 2 - r, ..., r - 2
  const long long rows = P.q * nM;
  std::vector<Cx<T>> row(rows);
  std::vector<T> rowabs(rows);
  auto row_sum = [&](long long idx, Cx<T>& out, T& outabs) {
    long long s = idx / nM;
    int M = 2 - r + 2 * int(idx % nM);
    auto [Jn, Jd] = P.J[s];
    T amp = sinpi<T>(i128(M) * Jd - i128(Jn) * r * P.q, i128(r) * P.q * Jd);
    i128 D = i128(4) * P.q * r * P.K[s].second;
    Cx<T> acc{};
    T aacc(0);
    for (int N = std::abs(M); N <= r - 2; N += 2) {
      Cx<T> v = expi<T>(phase_num(P, s, r, M, N), D) * poch[(2 * r - M - N - 2) / 2] * poch[(r - N - 2) / 2] *
                ipoch[(N - M) / 2];
      acc = acc + v * G[(N - 1) / 2];
      aacc += norm(v) * Gabs[(N - 1) / 2];
    }
    using std::abs;
    out = amp * acc;
    outabs = abs(amp) * aacc;
  };

  Cx<T> total{};
  T total_abs(0);
  if (opt.reduction == Reduction::deterministic) {
    parallel_for(rows, threads, [&](long long i, int) { row_sum(i, row[i], rowabs[i]); });
    // fixed-shape pairwise tree
    std::function<Cx<T>(long long, long long)> tree = [&](long long lo, long long hi) -> Cx<T> {
      if (hi - lo == 1) return row[lo];
      long long mid = lo + (hi - lo) / 2;
      return tree(lo, mid) + tree(mid, hi);
    };
    total = tree(0, rows);
    for (long long i = 0; i < rows; ++i) total_abs += rowabs[i];
  } else {
    std::vector<Cx<T>> part(std::max(1, threads));
    std::vector<T> part_abs(std::max(1, threads), T(0));
    parallel_for(rows, threads, [&](long long i, int w) {
      Cx<T> v;
      T a;
      row_sum(i, v, a);
      part[w] = part[w] + v;
      part_abs[w] += a;
    });
    for (size_t w = 0; w < part.size(); ++w) total = total + part[w], total_abs += part_abs[w];
  }

  using std::log;
  using std::sqrt;
  T mag = norm(total);
  if (!(mag == mag) || !(total_abs == total_abs) || total_abs > T(std::numeric_limits<double>::max()))
    fail(Status::precision, "RT sum overflowed; use the extended-precision backend");

  Cx<T> cr = (T(1) / (T(r) * sqrt(T(P.q)))) * rational_phase<T>(cr_phase(P, r));
  Cx<T> val = cr * total;

  RTValue out;
  out.r = r;
  out.value = {to_double(val.re), to_double(val.im)};
  out.terms_summed = lattice_count(P.q, r);
  out.condition = mag > 0 ? to_double(total_abs / mag) : std::numeric_limits<double>::infinity();
  out.log_abs = mag > 0 ? to_double(log(norm(val))) : -std::numeric_limits<double>::infinity();
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  double eps = to_double(std::numeric_limits<T>::epsilon());
  if (out.condition * eps * 16.0 > opt.max_rel_error)
    fail(Status::precision, "cancellation in the RT sum exceeds the precision of the " +
                                std::string(opt.precision == Precision::standard ? "double" : "extended") +
                                " backend (condition " + std::to_string(out.condition) + ")");
  if (!finite(out.value)) fail(Status::precision, "RT value not representable in double");
  return out;
}

// ---------- jets for the Habiro limit ----------

struct Jet {
  cplx v, d;  // value and derivative along t = w e^{i delta}
};
Jet operator*(const Jet& a, const Jet& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Jet operator/(const Jet& a, const Jet& b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }

// t^{e/4}
Jet tpow4(long long e, int r) {
  cplx w = unit_root(e, r);
  return {w, I1 * (double(e) / 4.0) * w};
}
// 1 - t^j
Jet one_minus(long long j, int r) {
  cplx w = unit_root(4 * j, r);
  return {1.0 - w, -I1 * double(j) * w};
}

}  // namespace

std::vector<cplx> habiro_coeffs(long long pprime, int nmax, const QuantumTables& T) {
  const int r = T.r;
  if (nmax < 0 || nmax > r - 1) fail(Status::domain, "habiro_coeff: n out of range [0, r-1]");
  std::vector<cplx> out(nmax + 1);
  for (long long n = 0; n <= nmax; ++n) {
    Jet num{1.0, 0.0};  // prod_{j=n-l+1}^{n} (1 - t^j)
    Jet den{1.0, 0.0};  // prod_{j=1}^{n+l+1} (1 - t^j), the factor j = r omitted
    bool pole = false;
    for (long long j = 1; j <= n; ++j) den = den * one_minus(j, r);
    cplx regular = 0.0, pole_v = 0.0, pole_d = 0.0;
    double scale = 0.0;
    for (long long l = 0; l <= n; ++l) {
      if (l > 0) num = num * one_minus(n - l + 1, r);
      long long j = n + l + 1;
      if (j % r == 0) pole = true;
      else den = den * one_minus(j, r);
      long long e = n * (n + 3) + 4 * pprime * (l * l + l) - n * (n + 1) + (n - l) * (n - l + 1) +
                    (n + l + 1) * (n + l + 2);
      double sign = ((l + n + 1) % 2) ? -1.0 : 1.0;
      double ang = 2.0 * pi * double(2 * l + 1) / r;
      Jet br{2.0 * I1 * std::sin(ang), I1 * double(2 * l + 1) * std::cos(ang)};
      Jet term = tpow4(e, r) * br * num / den;
      term.v *= sign;
      term.d *= sign;
      if (pole) {
        pole_v += term.v;
        pole_d += term.d;
        scale = std::max(scale, std::abs(term.v));
      } else {
        regular += term.v;
      }
    }
    if (pole && std::abs(pole_v) > 1e-6 * std::max(1.0, scale))
      fail(Status::internal, "habiro_coeff: residues do not cancel");
    out[n] = regular + I1 / double(r) * pole_d;
    if (!finite(out[n])) fail(Status::precision, "habiro_coeff: non-finite value");
  }
  return out;
}

cplx habiro_coeff(long long pprime, int n, const QuantumTables& T) {
  if (n < 0 || n > T.r - 1) fail(Status::domain, "habiro_coeff: n out of range [0, r-1]");
  return habiro_coeffs(pprime, n, T)[n];
}

cplx colored_jones(long long pprime, int N, const QuantumTables& T) {
  if (N < 1 || N > (T.r - 1) / 2) fail(Status::domain, "colored_jones: N out of range [1, (r-1)/2]");
  auto f = habiro_coeffs(pprime, N - 1, T);
  cplx sum = 0.0, prod = 1.0;
  for (int n = 0; n < N; ++n) {
    if (n > 0) prod *= T.braced(N + n) * T.braced(N - n);
    sum += f[n] * prod;
  }
  return sum;
}

RTValue rt_invariant(const SurgerySpec& spec, int r, const RTOptions& opt) {
  check_level(r);
  Prepared P = prepare(spec, opt.expansion);
  if (opt.precision == Precision::extended) return rt_kernel<f128>(P, r, opt);
  return rt_kernel<double>(P, r, opt);
}

cplx rt_via_habiro(const SurgerySpec& spec, int r, ExpansionKind kind) {
  check_level(r);
  Prepared P = prepare(spec, kind);
  QuantumTables T = build_quantum_tables(r);
  auto fK = habiro_coeffs(P.twist, (r - 3) / 2, T);
  const auto& poch = T.pochhammer;
  cplx S = 0.0;
  for (long long s = 0; s < P.q; ++s) {
    auto [Jn, Jd] = P.J[s];
    i128 D = i128(4) * P.q * r * P.K[s].second;
    i128 q = P.q, Kn = P.K[s].first, Kd = P.K[s].second, I = P.f.Imap[s];
    for (int M = 2 - r; M <= r - 2; M += 2) {
      double amp = sinpi<double>(i128(M) * Jd - i128(Jn) * r * P.q, i128(r) * P.q * Jd);
      for (int N = std::abs(M); N <= r - 2; N += 2) {
        i128 m = M, n = N;
        i128 num = -4 * q * Kd * m + i128(P.p) * m * m * Kd - 2 * i128(r) * Kd * I * m - 4 * q * Kd * m * n - Kn * q * r * r;
        auto ph = expi<double>(num, D);
        S += amp * cplx(ph.re, ph.im) * poch[(2 * r - M - N - 2) / 2] / poch[(N - M) / 2] * fK[(r - N - 2) / 2];
      }
    }
  }
  auto k = rational_phase<double>(kappa_phase(P, r));
  return cplx(k.re, k.im) / (2.0 * r * std::sqrt(double(P.q))) * S;
}

void rt_terms(const SurgerySpec& spec, int r, const std::function<void(const LatticeTerm&)>& visit,
              ExpansionKind kind) {
  check_level(r);
  Prepared P = prepare(spec, kind);
  const auto poch = pochhammer_table<double>(r);
  auto crp = rational_phase<double>(cr_phase(P, r));
  cplx cr = cplx(crp.re, crp.im) / (r * std::sqrt(double(P.q)));
  auto C = [](const Cx<double>& z) { return cplx(z.re, z.im); };
  for (long long s = 0; s < P.q; ++s) {
    auto [Jn, Jd] = P.J[s];
    i128 D = i128(4) * P.q * r * P.K[s].second;
    for (int M = 2 - r; M <= r - 2; M += 2) {
      double amp = sinpi<double>(i128(M) * Jd - i128(Jn) * r * P.q, i128(r) * P.q * Jd);
      for (int N = std::abs(M); N <= r - 2; N += 2) {
        cplx base = cr * amp * C(expi<double>(phase_num(P, s, r, M, N), D)) * C(poch[(2 * r - M - N - 2) / 2]) *
                    C(poch[(r - N - 2) / 2]) / C(poch[(N - M) / 2]);
        for (int L = 1; L <= r - 1 - N; L += 2) {
          cplx w = sinpi<double>(2 * L, r) *
                   C(expi<double>(i128(4 * P.twist + 2) * L * L + i128(2) * L * r, i128(4) * r));
          visit({s, M, N, L, base * w / (C(poch[(r - 1 - N - L) / 2]) * C(poch[(r - 1 - N + L) / 2]))});
        }
      }
    }
  }
}

cplx rt_sorted_sum(const SurgerySpec& spec, int r, ExpansionKind kind) {
  std::vector<cplx> terms;
  rt_terms(spec, r, [&](const LatticeTerm& t) { terms.push_back(t.value); }, kind);
  std::sort(terms.begin(), terms.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  cplx s = 0.0;
  for (cplx t : terms) s += t;
  return s;
}

int b2_mod2(const SurgerySpec& spec) { return (spec.p % 2 == 0) ? 1 : 0; }

double tv_invariant(const SurgerySpec& spec, int r, const RTOptions& opt) {
  RTValue v = rt_invariant(spec, r, opt);
  double a = std::abs(v.value);
  return std::ldexp(a * a, b2_mod2(spec) + 1);
}

}  // namespace qvol
