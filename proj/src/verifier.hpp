#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypgeom.hpp"
#include "quantum_rt.hpp"

#include <json.hpp>

namespace qvol {

struct RTRow {
  int r = 0;
  cplx value;
  double log_abs = 0;
  double growth_rate = 0;  // (4 pi / r) log|RT_r|
  double seconds = 0;
  double normalized = 0;   // |RT_r| e^{-r Vol / 4 pi}
  bool extended = false;
};

struct GrowthFit {
  double vol_estimate = 0, correction_c1 = 0, rms_residual = 0;
};

struct DecayCheck {
  double early_max = 0;   // max r |delta_r| over the first third
  double late_max = 0;    // max r |delta_r| over the last third
  double exponent = 0;    // fitted alpha in |delta_r| ~ r^{-alpha}
  bool pass = false;
};

struct TCheck {
  double t_abs = 0;
  double limit = 0;       // a from a + b/r fitted on the last third of the normalized sequence
  double ratio = 0;       // limit / |t(M)|
  bool pass = false;
};

struct VerificationReport {
  SurgerySpec spec;
  double volume = 0, cs_mod_pi2 = 0, residual = 0;
  std::array<cplx, 5> shapes{};
  std::vector<RTRow> rows;
  GrowthFit fit;
  double vol_gap = 0;     // |Vol_est - Vol| / Vol
  bool pass = false;
  DecayCheck decay;
  TCheck t;
};

struct VerifyOptions {
  RTOptions rt;
  bool extended_retry = true;
  double vol_tolerance = 0.01;
  double t_tolerance = 0.05;
};

RTRow rt_row(const SurgerySpec& spec, int r, const RTOptions& opt, bool extended_retry, double volume);

GrowthFit fit_growth(const std::vector<RTRow>& rows);
DecayCheck decay_check(const std::vector<RTRow>& rows);
TCheck t_check(const std::vector<RTRow>& rows, double t_abs, double tol);

VerificationReport verify_conjecture(const SurgerySpec& spec, int r_min, int r_max, const VerifyOptions& opt = {});

nlohmann::json to_json(const VerificationReport& rep);
std::string rows_csv(const std::vector<RTRow>& rows);

struct IdentityEntry {
  std::string name;
  int samples = 0;
  double max_residual = 0;
  double threshold = 0;
  bool pass = true;
};

struct IdentityReport {
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<IdentityEntry> entries;
  bool pass() const;
};

IdentityReport run_identity_suite(std::uint64_t seed, int samples);
nlohmann::json to_json(const IdentityReport& rep);

struct AppendixRow {
  std::string name;
  double computed = 0;
  double reference = 0;
  double location = 0;        // argmax, NaN when not applicable
  double reference_location = 0;  // NaN when none is tabulated
  double tolerance = 0;
  bool pass = false;
};

std::vector<AppendixRow> reproduce_appendix();
nlohmann::json to_json(const std::vector<AppendixRow>& rows);

// v(x, y, z): the five dilogarithms, with -4y^2 when shifted is true
double appendix_im_v(double x, cplx y, double z, bool shifted);

}  // namespace qvol
