#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "shemass/config.hpp"
#include "shemass/ensemble.hpp"
#include "shemass/profiles.hpp"
#include "shemass/simulate.hpp"

namespace shemass {

enum class Campaign {
  martingale,
  cov_identity,
  theorem_sweep,
  corollary1,
  corollary2,
  pam_truncation,
};

const char* campaign_name(Campaign c);
Campaign campaign_from_name(const std::string& name);

// Fully resolved campaign inputs; a pure function of the config text, so a
// rerun reproduces outputs byte for byte.
struct ExperimentConfig {
  Campaign campaign = Campaign::martingale;
  GridSpec grid = GridSpec::make_default_dt(1.0, 0.25, 1.0, 0.25);
  ProfileDescriptor u0_desc;
  ProfileDescriptor v0_desc;
  bool has_v0 = false;
  NonlinearitySpec sigma1 = NonlinearitySpec::zero();
  NonlinearitySpec sigma2 = NonlinearitySpec::zero();
  std::uint64_t seed = 0;
  long n_paths = 2;
  std::vector<long> save_steps;
  std::vector<double> beta_grid;
  double delta_scale = 1.0;
  double epsilon_rel = 1e-6;
  std::vector<double> pam_n_list;
  std::string out_dir;
  Exec exec = Exec::openmp;
  KeyValueConfig raw;

  static ExperimentConfig build(Campaign campaign, const KeyValueConfig& kv);
  Profile build_u0() const;
  Profile build_v0() const;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tolerance = 0.0;
};

struct CampaignResult {
  Campaign campaign = Campaign::martingale;
  bool pass = false;
  std::vector<CheckResult> checks;
  std::string table_csv;     // campaign-specific table
  std::string ensemble_csv;  // raw Monte Carlo aggregates (may be empty)
  nlohmann::json manifest;   // config echo, verdicts, version tag
  EnsembleStats stats;       // exposed so later campaigns can reuse the run
};

CampaignResult run_martingale(const ExperimentConfig& cfg);
CampaignResult run_cov_identity(const ExperimentConfig& cfg);
CampaignResult run_theorem_sweep(const ExperimentConfig& cfg,
                                 const EnsembleStats* reuse = nullptr);
CampaignResult run_corollary1(const ExperimentConfig& cfg);
CampaignResult run_corollary2(const ExperimentConfig& cfg, const EnsembleStats* reuse = nullptr);
CampaignResult run_pam_truncation(const ExperimentConfig& cfg);

CampaignResult run_campaign(const ExperimentConfig& cfg);

// Writes <name>.csv, <name>_ensemble.csv (when present) and
// <name>_manifest.json atomically under out_dir.
void write_campaign_outputs(const CampaignResult& result, const std::string& out_dir);

// Two-sided / one-sided 95% normal quantiles used for every interval in the
// suite.
inline constexpr double kZ95TwoSided = 1.959963984540054;
inline constexpr double kZ95OneSided = 1.6448536269514722;

}  // namespace shemass
