#include "contfrac.hpp"

#include <algorithm>
#include <numeric>

namespace qvol {

namespace {

long long checked_mul(long long x, long long y) {
  long long r;
  if (__builtin_mul_overflow(x, y, &r)) fail(Status::domain, "continued fraction entries overflow");
  return r;
}

long long checked_sub(long long x, long long y) {
  long long r;
  if (__builtin_sub_overflow(x, y, &r)) fail(Status::domain, "continued fraction entries overflow");
  return r;
}

long long floor_div(long long a, long long b) {
  long long d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

Matrix2 step(const Matrix2& u, long long a) {
  // T^a S U: S U = [[-C,-D],[A,B]]
  return {checked_sub(checked_mul(a, u.A), u.C), checked_sub(checked_mul(a, u.B), u.D), u.A, u.B};
}

Rational ratio(BigInt n, BigInt d) {
  if (d < 0) n = -n, d = -d;
  return Rational(n, d);
}

}  // namespace

void check_spec(const SurgerySpec& s) {
  if (s.q == 0) fail(Status::domain, "q must be nonzero");
  if (std::gcd(s.p, s.q) != 1) fail(Status::domain, "p and q must be coprime");
}

FractionExpansion expand_slope(long long p, long long q, ExpansionKind kind) {
  if (q == 0) fail(Status::domain, "expand_slope: q must be nonzero");
  if (std::gcd(p, q) != 1) fail(Status::domain, "expand_slope: p and q must be coprime");
  FractionExpansion e;
  e.p = p;
  e.q = q;
  long long P = p, Q = q;
  if (Q < 0) P = -P, Q = -Q;
  std::vector<long long> a;
  while (true) {
    long long ak = kind == ExpansionKind::canonical ? -floor_div(-P, Q) : floor_div(P, Q);
    a.push_back(ak);
    long long R = checked_sub(checked_mul(ak, Q), P);
    if (R == 0) break;
    P = Q;
    Q = R;
  }
  std::reverse(a.begin(), a.end());
  e.U.push_back(Matrix2{});
  for (long long ai : a) e.U.push_back(step(e.U.back(), ai));
  // S^2 = -1 fixes the overall sign
  if (e.U.back().A == -p && e.U.back().C == -q) {
    for (int i = 0; i < 2; ++i) {
      a.push_back(0);
      e.U.push_back(step(e.U.back(), 0));
    }
  }
  if (e.U.back().A != p || e.U.back().C != q) fail(Status::internal, "expand_slope: expansion does not reproduce p/q");
  e.a = std::move(a);

  long long aq = q < 0 ? -q : q;
  if (aq == 1) {
    e.ptilde = 0;
  } else {
    long long pm = ((p % aq) + aq) % aq;
    long long t = 1;
    while (checked_mul(pm, t) % aq != 1) ++t;
    e.ptilde = t;
  }
  e.qtilde = checked_sub(1, checked_mul(p, e.ptilde)) / q;
  e.sigma = linking_signature(e.a);
  return e;
}

int linking_signature(const std::vector<long long>& a) {
  // leading principal minors d_i; an isolated zero minor has d_{i+1} = -d_{i-1}
  std::vector<BigInt> d{BigInt(1)};
  BigInt prev2 = 0;
  for (long long ai : a) {
    BigInt next = BigInt(ai) * d.back() - prev2;
    prev2 = d.back();
    d.push_back(next);
  }
  int k = int(a.size());
  int nullity = d.back() == 0 ? 1 : 0;
  int changes = 0;
  int last = 1;
  for (size_t i = 1; i + nullity < d.size(); ++i) {
    int sg = d[i].sign();
    if (sg == 0) continue;
    if (sg != last) ++changes;
    last = sg;
  }
  int pos = k - nullity - changes;
  return pos - changes;
}

std::pair<long long, long long> to_ll(const Rational& x) {
  BigInt n = boost::multiprecision::numerator(x), d = boost::multiprecision::denominator(x);
  return {n.convert_to<long long>(), d.convert_to<long long>()};
}

Rational FourierData::kvalue(long long s, long long m) const {
  return ratio(Imap.at(s), q) + 1 - 2 * m;
}

FourierData fourier_maps(const FractionExpansion& e) {
  FourierData f;
  f.q = e.q;
  int k = e.k();
  f.Kseq.assign(k + 1, Rational(0));
  BigInt acc = 0;
  for (int i = 1; i <= k; ++i) {
    acc += BigInt(e.a[i - 1]) * e.C(i);
    if (e.C(i) == 0) fail(Status::internal, "fourier_maps: vanishing C_i");
    Rational v = ratio(acc, BigInt(e.C(i)));
    f.Kseq[i] = (i % 2 == 1) ? v : Rational(-v);
  }
  long long aq = e.q < 0 ? -e.q : e.q;
  const long long Ck1 = e.C(k - 1);
  const Rational& Kk1 = f.Kseq[k - 1];

  Rational jtail = 0, ktail = 0;
  for (int i = 1; i <= k - 1; ++i) {
    if (e.C(i + 1) == 0) fail(Status::internal, "fourier_maps: vanishing C_{i+1}");
    Rational term = f.Kseq[i] / Rational(e.C(i + 1));
    jtail += (i % 2 == 1) ? term : Rational(-term);
  }
  if (k % 2 == 1) jtail = -jtail;
  for (int i = 1; i <= k - 2; ++i) ktail += Rational(e.C(i)) * f.Kseq[i] * f.Kseq[i] / Rational(e.C(i + 1));

  bool have_plus = false, have_minus = false;
  for (long long s = 0; s < aq; ++s) {
    Rational base = Rational(2 * s + 1) + Kk1;
    Rational Iv = -Rational(Ck1) * base;
    if (boost::multiprecision::denominator(Iv) != 1) fail(Status::internal, "fourier_maps: I(s) not integral");
    long long I = boost::multiprecision::numerator(Iv).convert_to<long long>();
    f.Imap.push_back(I);
    f.Jmap.push_back(ratio(2 * s + 1, e.q) + jtail);
    f.Kmap.push_back(Rational(Ck1) * base * base / Rational(e.q) + ktail);
    long long twoq = 2 * e.q;
    if ((I - 1 + e.q) % twoq == 0) {
      if (have_plus) fail(Status::internal, "fourier_maps: s+ not unique");
      f.splus = {s, (I - 1 + e.q) / twoq};
      have_plus = true;
    }
    if ((I + 1 + e.q) % twoq == 0) {
      if (have_minus) fail(Status::internal, "fourier_maps: s- not unique");
      f.sminus = {s, (I + 1 + e.q) / twoq};
      have_minus = true;
    }
  }
  if (!have_plus || !have_minus) fail(Status::internal, "fourier_maps: s+ or s- not found");
  return f;
}

bool is_integer(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

namespace {

bool even(const Rational& x) { return is_integer(x) && boost::multiprecision::numerator(x) % 2 == 0; }

}  // namespace

CongruenceReport check_congruences(const FractionExpansion& e, const FourierData& f) {
  CongruenceReport rep;
  const long long q = e.q, aq = q < 0 ? -q : q;
  int nplus = 0, nminus = 0;
  for (long long s = 0; s < aq; ++s) {
    long long I = f.Imap[s];
    if (((I - 1 + q) % 2 + 2) % 2 != 0) rep.I_parity = false;
    if ((I - 1 + q) % (2 * q) == 0) ++nplus;
    if ((I + 1 + q) % (2 * q) == 0) ++nminus;
  }
  rep.unique_pm = nplus == 1 && nminus == 1;
  const Rational pq = ratio(e.ptilde, q);
  const auto [sp, mp] = f.splus;
  const auto [sm, mm] = f.sminus;
  const Rational &Jp = f.Jmap[sp], &Jm = f.Jmap[sm];
  rep.J_congruence = is_integer(Jp - pq) && is_integer(Jm + pq) && even(Jp + Jm);
  const Rational dK = f.Kmap[sp] - f.Kmap[sm];
  rep.K_congruence = is_integer(dK / 4) && is_integer(f.Kmap[sp] + pq);
  if (f.kvalue(sp, mp) != ratio(1, q) || f.kvalue(sm, mm) != ratio(-1, q)) rep.unique_pm = false;

  for (long long s = 0; s < aq; ++s) {
    for (long long t = 0; t < aq; ++t) {
      long long sum = f.Imap[s] + f.Imap[t];
      if (sum % (2 * q) != 0) continue;
      // k(s,m) + k(t,m') = 0  <=>  m + m' = sum/(2q) + 1; take m = 0
      long long m = 0, mprime = sum / (2 * q) + 1;
      if (f.kvalue(s, m) + f.kvalue(t, mprime) != 0) rep.pair_parity = false;
      ++rep.pairs;
      const Rational Js = f.Jmap[s], Jt = f.Jmap[t];
      if (!is_integer(Js * q) || !even(Js + Jt)) rep.pair_J = false;
      if ((((s - t) % 2) == 0) && (((m - mprime) % 2) == 0)) rep.pair_parity = false;
      Rational dK = f.Kmap[s] - f.Kmap[t];
      if (!is_integer(dK / 4) || !even(Rational(1 + mprime - m) + dK / 4)) rep.pair_K = false;
    }
  }
  return rep;
}

}  // namespace qvol
