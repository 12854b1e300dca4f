// Exercises the shared library through the public header only.
#include <qvol/qvol.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

static int failures = 0;

#define EXPECT(cond)                                                 \
  do {                                                               \
    if (!(cond)) {                                                   \
      std::fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                    \
    }                                                                \
  } while (0)

int main() {
  char err[256] = {0};
  EXPECT(std::strlen(qvol_version()) > 0);
  EXPECT(std::string(qvol_status_name(QVOL_E_EXCEPTIONAL)) == "exceptional");

  qvol_manifold* bad = nullptr;
  EXPECT(qvol_manifold_create(4, 2, 1, &bad, err, sizeof err) == QVOL_E_DOMAIN);
  EXPECT(bad == nullptr);
  EXPECT(std::strlen(err) > 0);
  EXPECT(qvol_manifold_create(5, 2, 1, nullptr, err, sizeof err) == QVOL_E_INVALID_ARGUMENT);

  qvol_manifold* ex = nullptr;
  EXPECT(qvol_manifold_create(19, 1, 0, &ex, err, sizeof err) == QVOL_OK);
  char reason[128] = {0};
  EXPECT(qvol_manifold_is_hyperbolic(ex, reason, sizeof reason) == 0);
  EXPECT(std::strlen(reason) > 0);
  qvol_report* none = nullptr;
  EXPECT(qvol_verify(ex, 11, 31, nullptr, &none, err, sizeof err) == QVOL_E_EXCEPTIONAL);
  qvol_manifold_destroy(ex);

  qvol_manifold* m = nullptr;
  EXPECT(qvol_manifold_create(19, 1, 10, &m, err, sizeof err) == QVOL_OK);
  EXPECT(qvol_manifold_is_hyperbolic(m, reason, sizeof reason) == 1);

  qvol_geometry* g = nullptr;
  EXPECT(qvol_geometry_solve(m, 0, &g, err, sizeof err) == QVOL_OK);
  EXPECT(std::fabs(qvol_geometry_volume(g) - 3.593094826186) < 1e-9);
  EXPECT(qvol_geometry_residual(g) < 1e-12);
  EXPECT(qvol_geometry_is_geometric(g) == 1);
  double re = 0, im = 0;
  for (int i = 0; i < 5; ++i) {
    EXPECT(qvol_geometry_shape(g, i, &re, &im) == QVOL_OK);
    EXPECT(im > 0);
  }
  EXPECT(qvol_geometry_shape(g, 5, &re, &im) == QVOL_E_INVALID_ARGUMENT);
  EXPECT(std::string(qvol_geometry_json(g)).find("\"volume\"") != std::string::npos);
  EXPECT(std::string(qvol_geometry_csv(g)).rfind("name,re,im", 0) == 0);
  qvol_geometry_destroy(g);

  qvol_rt_options opt;
  std::memset(&opt, 0, sizeof opt);
  qvol_rt_value v;
  EXPECT(qvol_rt(m, 51, &opt, &v, err, sizeof err) == QVOL_OK);
  EXPECT(v.r == 51);
  EXPECT(std::isfinite(v.log_abs));
  EXPECT(std::fabs(v.growth_rate - 4 * M_PI / 51 * v.log_abs) < 1e-12);
  EXPECT(v.terms_summed > 0);
  EXPECT(qvol_rt(m, 50, &opt, &v, err, sizeof err) == QVOL_E_DOMAIN);

  qvol_rt_options det = opt;
  det.deterministic = 1;
  det.threads = 1;
  qvol_rt_value a, b;
  qvol_rt(m, 61, &det, &a, err, sizeof err);
  det.threads = 2;
  qvol_rt(m, 61, &det, &b, err, sizeof err);
  EXPECT(a.re == b.re && a.im == b.im);

  qvol_rt_options ext = opt;
  ext.precision = QVOL_PRECISION_EXTENDED;
  qvol_rt_value e;
  EXPECT(qvol_rt(m, 61, &ext, &e, err, sizeof err) == QVOL_OK);
  EXPECT(std::hypot(e.re - a.re, e.im - a.im) < 1e-8 * std::hypot(e.re, e.im));

  double tv = 0;
  EXPECT(qvol_tv(m, 51, &opt, &tv, err, sizeof err) == QVOL_OK);
  qvol_rt(m, 51, &opt, &v, err, sizeof err);
  EXPECT(std::fabs(tv - 2 * (v.re * v.re + v.im * v.im)) < 1e-12 * tv);

  double jr = 0, ji = 0;
  EXPECT(qvol_colored_jones(4, 1, 13, &jr, &ji, err, sizeof err) == QVOL_OK);
  EXPECT(std::fabs(jr - 1) < 1e-12 && std::fabs(ji) < 1e-12);
  EXPECT(qvol_colored_jones(4, 7, 13, &jr, &ji, err, sizeof err) != QVOL_OK);

  qvol_report* rep = nullptr;
  EXPECT(qvol_verify(m, 31, 61, &opt, &rep, err, sizeof err) == QVOL_OK);
  if (rep) {
    EXPECT(std::string(qvol_report_csv(rep)).rfind("r,re,im,log_abs,growth_rate,seconds", 0) == 0);
    EXPECT(std::string(qvol_report_json(rep)).find("\"verdict\"") != std::string::npos);
    qvol_report_destroy(rep);
  }

  qvol_report* ids = nullptr;
  EXPECT(qvol_identities(42, 20, &ids, err, sizeof err) == QVOL_OK);
  EXPECT(qvol_report_passed(ids) == 1);
  EXPECT(std::string(qvol_report_csv(ids)).empty());
  qvol_report_destroy(ids);

  qvol_report* app = nullptr;
  EXPECT(qvol_appendix(&app, err, sizeof err) == QVOL_OK);
  EXPECT(qvol_report_passed(app) == 1);
  qvol_report_destroy(app);

  qvol_manifold_destroy(m);
  qvol_report_destroy(nullptr);
  qvol_geometry_destroy(nullptr);

  std::printf("capi_test: %d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
