// qvol command-line driver over the C API
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "qvol/qvol.h"

namespace {

enum Exit { pass = 0, check_failed = 1, usage = 2, numeric = 3 };

char errbuf[1024];

int report_error(int status) {
  std::cerr << "qvol: " << qvol_status_name(status) << ": " << errbuf << "\n";
  switch (status) {
    case QVOL_E_INVALID_ARGUMENT:
    case QVOL_E_DOMAIN:
    case QVOL_E_EXCEPTIONAL: return usage;
    default: return numeric;
  }
}

struct SpecArgs {
  long long p = 0, q = 1, twist = 0;
  void add(CLI::App* app) {
    app->add_option("--p", p, "numerator of the filling slope")->required();
    app->add_option("--q", q, "denominator of the filling slope")->required();
    app->add_option("--twist", twist, "twist number p'")->required();
  }
};

struct RTArgs {
  std::string precision = "double";
  int threads = 0;
  bool deterministic = false;
  void add(CLI::App* app) {
    app->add_option("--precision", precision, "double or extended")
        ->check(CLI::IsMember({"double", "extended"}));
    app->add_option("--threads", threads, "worker threads (default QVOL_THREADS, then all cores)")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--deterministic", deterministic, "fixed-tree reduction");
  }
  qvol_rt_options options() const {
    qvol_rt_options o{};
    o.precision = precision == "extended" ? QVOL_PRECISION_EXTENDED : QVOL_PRECISION_DOUBLE;
    o.threads = threads;
    o.deterministic = deterministic ? 1 : 0;
    return o;
  }
};

int make_manifold(const SpecArgs& s, qvol_manifold** m) {
  int st = qvol_manifold_create(s.p, s.q, s.twist, m, errbuf, sizeof errbuf);
  return st == QVOL_OK ? pass : report_error(st);
}

int print_report(qvol_report* rep, const std::string& out) {
  if (out.empty()) {
    std::cout << qvol_report_json(rep) << "\n";
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "qvol: cannot write " << out << "\n";
      qvol_report_destroy(rep);
      return usage;
    }
    f << qvol_report_json(rep) << "\n";
  }
  int code = qvol_report_passed(rep) ? pass : check_failed;
  qvol_report_destroy(rep);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reshetikhin-Turaev invariants and hyperbolic geometry of twist-knot fillings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qvol_version()));

  SpecArgs gspec;
  bool gjson = false, gcsv = false;
  double gtol = 0;
  auto* geometry = app.add_subcommand("geometry", "solve the hyperbolic structure of K_twist(p,q)");
  gspec.add(geometry);
  auto* jflag = geometry->add_flag("--json", gjson, "JSON output (default)");
  geometry->add_flag("--csv", gcsv, "CSV output")->excludes(jflag);
  geometry->add_option("--tol", gtol, "Newton residual tolerance")->check(CLI::PositiveNumber);

  SpecArgs rspec;
  RTArgs rargs;
  int rr = 0;
  bool rcsv = false;
  auto* rt = app.add_subcommand("rt", "evaluate RT_r");
  rspec.add(rt);
  rt->add_option("--r", rr, "odd level r >= 3")->required();
  rargs.add(rt);
  rt->add_flag("--csv", rcsv, "CSV row instead of JSON");

  long long jtwist = 0;
  int jcolor = 1, jr = 0;
  auto* jones = app.add_subcommand("jones", "colored Jones polynomial of the twist knot at t = e^{4 pi i/r}");
  jones->add_option("--twist", jtwist, "twist number p'")->required();
  jones->add_option("--color", jcolor, "color N, 1 <= N <= (r-1)/2")->required();
  jones->add_option("--r", jr, "odd level r")->required();

  SpecArgs vspec;
  RTArgs vargs;
  int rmin = 51, rmax = 301;
  std::string vout, vcsv;
  auto* verify = app.add_subcommand("verify", "growth-rate check of |RT_r| against the hyperbolic volume");
  vspec.add(verify);
  verify->add_option("--r-min", rmin, "smallest odd r")->required();
  verify->add_option("--r-max", rmax, "largest odd r")->required();
  verify->add_option("--out", vout, "write the JSON report here");
  verify->add_option("--csv", vcsv, "write the RT rows as CSV here");
  vargs.add(verify);

  std::uint64_t seed = 42;
  int samples = 200;
  auto* identities = app.add_subcommand("identities", "seeded identity suite");
  identities->add_option("--seed", seed, "RNG seed")->required();
  identities->add_option("--samples", samples, "samples per identity")->required()->check(CLI::PositiveNumber);

  auto* appendix = app.add_subcommand("appendix", "face maxima and the f(y0) identities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  if (*geometry) {
    qvol_manifold* m = nullptr;
    if (int c = make_manifold(gspec, &m)) return c;
    qvol_geometry* g = nullptr;
    int st = qvol_geometry_solve(m, gtol, &g, errbuf, sizeof errbuf);
    qvol_manifold_destroy(m);
    if (st != QVOL_OK) return report_error(st);
    if (gcsv)
      std::cout << qvol_geometry_csv(g);
    else
      std::cout << nlohmann::json::parse(qvol_geometry_json(g)).dump(2) << "\n";
    int code = qvol_geometry_is_geometric(g) ? pass : check_failed;
    qvol_geometry_destroy(g);
    return code;
  }

  if (*rt) {
    qvol_manifold* m = nullptr;
    if (int c = make_manifold(rspec, &m)) return c;
    qvol_rt_options o = rargs.options();
    qvol_rt_value v{};
    int st = qvol_rt(m, rr, &o, &v, errbuf, sizeof errbuf);
    qvol_manifold_destroy(m);
    if (st != QVOL_OK) return report_error(st);
    if (rcsv) {
      std::printf("r,re,im,log_abs,growth_rate,seconds\n%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", v.r, v.re, v.im, v.log_abs,
                  v.growth_rate, v.seconds);
    } else {
      nlohmann::json j = {{"spec", {{"p", rspec.p}, {"q", rspec.q}, {"twist", rspec.twist}}},
                          {"r", v.r},
                          {"re", v.re},
                          {"im", v.im},
                          {"log_abs", v.log_abs},
                          {"growth_rate", v.growth_rate},
                          {"seconds", v.seconds},
                          {"terms_summed", v.terms_summed},
                          {"condition", v.condition},
                          {"precision", rargs.precision}};
      std::cout << j.dump(2) << "\n";
    }
    return pass;
  }

  if (*jones) {
    double re = 0, im = 0;
    int st = qvol_colored_jones(jtwist, jcolor, jr, &re, &im, errbuf, sizeof errbuf);
    if (st != QVOL_OK) return report_error(st);
    nlohmann::json j = {{"twist", jtwist}, {"color", jcolor}, {"r", jr}, {"re", re}, {"im", im}};
    std::cout << j.dump(2) << "\n";
    return pass;
  }

  if (*verify) {
    qvol_manifold* m = nullptr;
    if (int c = make_manifold(vspec, &m)) return c;
    qvol_rt_options o = vargs.options();
    qvol_report* rep = nullptr;
    int st = qvol_verify(m, rmin, rmax, &o, &rep, errbuf, sizeof errbuf);
    qvol_manifold_destroy(m);
    if (st != QVOL_OK) return report_error(st);
    if (!vcsv.empty()) {
      std::ofstream f(vcsv);
      if (!f) {
        std::cerr << "qvol: cannot write " << vcsv << "\n";
        qvol_report_destroy(rep);
        return usage;
      }
      f << qvol_report_csv(rep);
    }
    return print_report(rep, vout);
  }

  if (*identities) {
    qvol_report* rep = nullptr;
    int st = qvol_identities(seed, samples, &rep, errbuf, sizeof errbuf);
    if (st != QVOL_OK) return report_error(st);
    return print_report(rep, "");
  }

  if (*appendix) {
    qvol_report* rep = nullptr;
    int st = qvol_appendix(&rep, errbuf, sizeof errbuf);
    if (st != QVOL_OK) return report_error(st);
    return print_report(rep, "");
  }
  return usage;
}
