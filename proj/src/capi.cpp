#include "qvol/qvol.h"

#include <cstring>
#include <sstream>

#include "verifier.hpp"

using namespace qvol;
using nlohmann::json;

struct qvol_manifold {
  SurgerySpec spec;
};

struct qvol_geometry {
  HyperbolicSolution sol;
  std::string json_text, csv_text;
};

struct qvol_report {
  std::string json_text, csv_text;
  bool passed = false;
};

namespace {

void put(char* buf, size_t len, const std::string& msg) {
  if (!buf || len == 0) return;
  size_t n = std::min(len - 1, msg.size());
  std::memcpy(buf, msg.data(), n);
  buf[n] = '\0';
}

template <class F>
int guarded(char* errmsg, size_t errmsg_len, F&& f) {
  try {
    f();
    put(errmsg, errmsg_len, "");
    return QVOL_OK;
  } catch (const Error& e) {
    put(errmsg, errmsg_len, e.what());
    return int(e.status());
  } catch (const std::bad_alloc&) {
    put(errmsg, errmsg_len, "out of memory");
    return QVOL_E_INTERNAL;
  } catch (const std::exception& e) {
    put(errmsg, errmsg_len, e.what());
    return QVOL_E_INTERNAL;
  }
}

RTOptions convert(const qvol_rt_options* o) {
  RTOptions r;
  r.reduction = Reduction::fast;
  if (!o) return r;
  r.precision = o->precision == QVOL_PRECISION_EXTENDED ? Precision::extended : Precision::standard;
  r.threads = o->threads;
  r.reduction = o->deterministic ? Reduction::deterministic : Reduction::fast;
  r.expansion = o->expansion == QVOL_EXPANSION_ALTERNATE ? ExpansionKind::alternate : ExpansionKind::canonical;
  return r;
}

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

json geometry_json(const HyperbolicSolution& s) {
  json shapes = json::array(), wxyz = json::array(), hol = json::array();
  for (auto c : s.shapes) shapes.push_back(cj(c));
  for (auto c : s.wxyz) wxyz.push_back(cj(c));
  for (auto c : s.holonomies) hol.push_back(cj(c));
  return {{"spec", {{"p", s.spec.p}, {"q", s.spec.q}, {"twist", s.spec.twist}}},
          {"a", cj(s.a)},
          {"b", cj(s.b)},
          {"c", cj(s.c)},
          {"shapes", shapes},
          {"wxyz", wxyz},
          {"holonomies", hol},
          {"volume", s.volume},
          {"cs_mod_pi2", s.cs},
          {"geometric", s.geometric},
          {"residual", s.residual},
          {"continuation_steps", s.continuation_steps}};
}

std::string geometry_csv(const HyperbolicSolution& s) {
  std::ostringstream os;
  os.precision(17);
  os << "name,re,im\n";
  auto row = [&](const std::string& n, cplx z) { os << n << ',' << z.real() << ',' << z.imag() << '\n'; };
  row("a", s.a), row("b", s.b), row("c", s.c);
  for (int i = 0; i < 5; ++i) row("c" + std::to_string(i + 1), s.shapes[i]);
  const char* th[] = {"w", "x", "y", "z"};
  for (int i = 0; i < 4; ++i) row(th[i], s.wxyz[i]);
  const char* hn[] = {"m1", "l1", "m2", "l2"};
  for (int i = 0; i < 4; ++i) row(hn[i], s.holonomies[i]);
  row("volume", s.volume);
  row("cs_mod_pi2", s.cs);
  return os.str();
}

}  // namespace

extern "C" {

const char* qvol_version(void) { return "1.0.0"; }

const char* qvol_status_name(int status) {
  switch (status) {
    case QVOL_OK: return "ok";
    case QVOL_E_DOMAIN: return "domain";
    case QVOL_E_BRANCH: return "branch";
    case QVOL_E_TOLERANCE: return "tolerance";
    case QVOL_E_CONTINUATION: return "continuation";
    case QVOL_E_DEGENERATE: return "degenerate";
    case QVOL_E_PRECISION: return "precision";
    case QVOL_E_CONSISTENCY: return "consistency";
    case QVOL_E_INSUFFICIENT_DATA: return "insufficient_data";
    case QVOL_E_INTERNAL: return "internal";
    case QVOL_E_INVALID_ARGUMENT: return "invalid_argument";
    case QVOL_E_NON_FINITE: return "non_finite";
    case QVOL_E_EXCEPTIONAL: return "exceptional";
    default: return "unknown";
  }
}

int qvol_manifold_create(long long p, long long q, long long twist, qvol_manifold** out, char* errmsg,
                         size_t errmsg_len) {
  return guarded(errmsg, errmsg_len, [&] {
    if (!out) fail(Status::invalid_argument, "out is NULL");
    *out = nullptr;
    SurgerySpec s{p, q, twist};
    check_spec(s);
    *out = new qvol_manifold{s};
  });
}

void qvol_manifold_destroy(qvol_manifold* m) { delete m; }

int qvol_manifold_is_hyperbolic(const qvol_manifold* m, char* reason, size_t reason_len) {
  if (!m) {
    put(reason, reason_len, "manifold is NULL");
    return 0;
  }
  auto c = classify(m->spec);
  put(reason, reason_len, c.reason);
  return c.hyperbolic ? 1 : 0;
}

int qvol_geometry_solve(const qvol_manifold* m, double residual_tol, qvol_geometry** out, char* errmsg,
                        size_t errmsg_len) {
  return guarded(errmsg, errmsg_len, [&] {
    if (!m || !out) fail(Status::invalid_argument, "NULL argument");
    *out = nullptr;
    auto c = classify(m->spec);
    if (!c.hyperbolic) fail(Status::exceptional, "not hyperbolic: " + c.reason);
    SolveOptions opt;
    if (residual_tol > 0) opt.residual_tol = residual_tol;
    auto g = std::make_unique<qvol_geometry>();
    g->sol = solve_structure(m->spec, opt);
    g->json_text = geometry_json(g->sol).dump();
    g->csv_text = geometry_csv(g->sol);
    *out = g.release();
  });
}

void qvol_geometry_destroy(qvol_geometry* g) { delete g; }
double qvol_geometry_volume(const qvol_geometry* g) { return g ? g->sol.volume : 0.0; }
double qvol_geometry_cs(const qvol_geometry* g) { return g ? g->sol.cs : 0.0; }
double qvol_geometry_residual(const qvol_geometry* g) { return g ? g->sol.residual : 0.0; }
int qvol_geometry_is_geometric(const qvol_geometry* g) { return g && g->sol.geometric ? 1 : 0; }

int qvol_geometry_shape(const qvol_geometry* g, int i, double* re, double* im) {
  if (!g || i < 0 || i > 4 || !re || !im) return QVOL_E_INVALID_ARGUMENT;
  *re = g->sol.shapes[i].real();
  *im = g->sol.shapes[i].imag();
  return QVOL_OK;
}

const char* qvol_geometry_json(const qvol_geometry* g) { return g ? g->json_text.c_str() : ""; }
const char* qvol_geometry_csv(const qvol_geometry* g) { return g ? g->csv_text.c_str() : ""; }

int qvol_rt(const qvol_manifold* m, int r, const qvol_rt_options* opt, qvol_rt_value* out, char* errmsg,
            size_t errmsg_len) {
  return guarded(errmsg, errmsg_len, [&] {
    if (!m || !out) fail(Status::invalid_argument, "NULL argument");
    auto v = rt_invariant(m->spec, r, convert(opt));
    out->r = v.r;
    out->re = v.value.real();
    out->im = v.value.imag();
    out->log_abs = v.log_abs;
    out->growth_rate = 4 * pi / r * v.log_abs;
    out->seconds = v.seconds;
    out->terms_summed = v.terms_summed;
    out->condition = v.condition;
  });
}

int qvol_tv(const qvol_manifold* m, int r, const qvol_rt_options* opt, double* out, char* errmsg, size_t errmsg_len) {
  return guarded(errmsg, errmsg_len, [&] {
    if (!m || !out) fail(Status::invalid_argument, "NULL argument");
    *out = tv_invariant(m->spec, r, convert(opt));
  });
}

int qvol_colored_jones(long long twist, int color, int r, double* re, double* im, char* errmsg, size_t errmsg_len) {
  return guarded(errmsg, errmsg_len, [&] {
    if (!re || !im) fail(Status::invalid_argument, "NULL argument");
    auto T = build_quantum_tables(r);
    cplx v = colored_jones(twist, color, T);
    *re = v.real();
    *im = v.imag();
  });
}

int qvol_verify(const qvol_manifold* m, int r_min, int r_max, const qvol_rt_options* opt, qvol_report** out,
                char* errmsg, size_t errmsg_len) {
  return guarded(errmsg, errmsg_len, [&] {
    if (!m || !out) fail(Status::invalid_argument, "NULL argument");
    *out = nullptr;
    VerifyOptions vo;
    vo.rt = convert(opt);
    auto rep = verify_conjecture(m->spec, r_min, r_max, vo);
    *out = new qvol_report{to_json(rep).dump(2), rows_csv(rep.rows), rep.pass};
  });
}

int qvol_identities(uint64_t seed, int samples, qvol_report** out, char* errmsg, size_t errmsg_len) {
  return guarded(errmsg, errmsg_len, [&] {
    if (!out) fail(Status::invalid_argument, "NULL argument");
    *out = nullptr;
    auto rep = run_identity_suite(seed, samples);
    *out = new qvol_report{to_json(rep).dump(2), "", rep.pass()};
  });
}

int qvol_appendix(qvol_report** out, char* errmsg, size_t errmsg_len) {
  return guarded(errmsg, errmsg_len, [&] {
    if (!out) fail(Status::invalid_argument, "NULL argument");
    *out = nullptr;
    auto j = to_json(reproduce_appendix());
    *out = new qvol_report{j.dump(2), "", j["pass"].get<bool>()};
  });
}

void qvol_report_destroy(qvol_report* rep) { delete rep; }
int qvol_report_passed(const qvol_report* rep) { return rep && rep->passed ? 1 : 0; }
const char* qvol_report_json(const qvol_report* rep) { return rep ? rep->json_text.c_str() : ""; }
const char* qvol_report_csv(const qvol_report* rep) { return rep ? rep->csv_text.c_str() : ""; }

}  // extern "C"
