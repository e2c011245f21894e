#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shemass/bounds.hpp"
#include "shemass/config.hpp"
#include "shemass/ensemble.hpp"
#include "shemass/errors.hpp"
#include "shemass/exec.hpp"
#include "shemass/experiments.hpp"
#include "shemass/kernels.hpp"
#include "shemass/profiles.hpp"
#include "shemass/report_io.hpp"
#include "shemass/version.hpp"

namespace {

using namespace shemass;

std::string resolve_out_dir(const std::string& flag_value, const std::string& config_value) {
  if (!flag_value.empty()) return flag_value;
  if (!config_value.empty()) return config_value;
  if (const char* env = std::getenv("SHEMASS_OUT_DIR"); env && *env) return env;
  return ".";
}

Profile load_profile(const std::string& path) {
  if (path.ends_with(".json")) return profile_from_json_file(path);
  return profile_from_csv_file(path);
}

KeyValueConfig load_config(const std::string& path, const std::vector<std::string>& overrides,
                           long seed_override, bool have_seed) {
  KeyValueConfig kv = KeyValueConfig::from_file(path);
  for (const auto& o : overrides) kv.apply_override(o);
  if (have_seed) kv.set("run", "seed", std::to_string(seed_override));
  return kv;
}

int run_kernel(const std::string& type, double beta, double theta, double x, double time) {
  const DiffusionParams params{theta};
  double value = 0.0;
  if (type == "resolvent")
    value = resolvent_kernel(beta, x, params);
  else if (type == "heat")
    value = heat_kernel(time, x, params);
  else
    throw std::domain_error("kernel --type must be resolvent or heat");
  std::cout << format_double(value) << "\n";
  return 0;
}

int run_energy(const std::string& u0_path, const std::string& v0_path, double beta, double theta,
               const std::string& route, const std::string& out) {
  const Profile u0 = load_profile(u0_path);
  const Profile v0 = load_profile(v0_path);
  const DiffusionParams params{theta};
  std::vector<EnergyRoute> routes;
  if (route == "real" || route == "real_space")
    routes = {EnergyRoute::real_space};
  else if (route == "fourier")
    routes = {EnergyRoute::fourier};
  else if (route == "both")
    routes = {EnergyRoute::real_space, EnergyRoute::fourier};
  else
    throw std::domain_error("energy --route must be real, fourier or both");

  nlohmann::json j;
  std::ostringstream lines;
  for (EnergyRoute r : routes) {
    const EnergyReport rep = mutual_energy(u0, v0, beta, params, r);
    lines << energy_route_name(r) << ' ' << format_double(rep.value) << ' '
          << format_double(rep.quadrature_error_estimate) << "\n";
    j[energy_route_name(r)] = {{"value", rep.value},
                               {"error_estimate", rep.quadrature_error_estimate}};
  }
  j["beta"] = beta;
  j["theta"] = theta;
  std::cout << lines.str();
  if (!out.empty()) atomic_write_file(out, j.dump(2) + "\n");
  return 0;
}

int run_simulate(const std::string& config_path, const std::vector<std::string>& overrides,
                 long seed_override, bool have_seed, const std::string& out_flag, int threads) {
  set_exec_threads(threads);
  const KeyValueConfig kv = load_config(config_path, overrides, seed_override, have_seed);
  const ExperimentConfig cfg = ExperimentConfig::build(Campaign::martingale, kv);
  const std::string out_dir = resolve_out_dir(out_flag, cfg.out_dir);

  const Profile u0 = cfg.build_u0();
  Profile v0 = u0;
  const bool has_v = cfg.has_v0;
  if (has_v) v0 = cfg.build_v0();

  const auto start = std::chrono::steady_clock::now();
  const EnsembleStats stats =
      run_ensemble(cfg.grid, u0, has_v ? &v0 : nullptr, cfg.sigma1, cfg.sigma2, cfg.seed,
                   cfg.n_paths, cfg.save_steps, cfg.exec);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ostringstream csv;
  ensemble_to_csv(stats, csv);
  namespace fs = std::filesystem;
  atomic_write_file((fs::path(out_dir) / "simulate_ensemble.csv").string(), csv.str());

  nlohmann::json manifest;
  manifest["version"] = kVersion;
  manifest["seed"] = cfg.seed;
  manifest["n_paths"] = cfg.n_paths;
  manifest["grid"] = {{"half_length", cfg.grid.half_length()}, {"dx", cfg.grid.dx()},
                      {"dt", cfg.grid.dt()},                   {"theta", cfg.grid.theta()},
                      {"t_end", cfg.grid.t_end()},             {"boundary", boundary_name(cfg.grid.boundary())}};
  nlohmann::json echo = nlohmann::json::object();
  for (const auto& [section, entries] : kv.sections()) {
    for (const auto& [key, value] : entries) echo[section + "." + key] = value;
  }
  manifest["config"] = echo;
  manifest["min_value_seen"] = stats.min_value_seen;
  manifest["wall_time_seconds"] = wall;
  atomic_write_file((fs::path(out_dir) / "simulate_manifest.json").string(),
                    manifest.dump(2) + "\n");
  std::cout << "wrote " << (fs::path(out_dir) / "simulate_ensemble.csv").string() << "\n";
  return 0;
}

int run_bound(const std::string& kind, double beta, double t, double lip1, double lip2,
              double lip, double theta, double energy, double separation, double mass_u,
              double mass_v, double delta_scale, double overlap, double linf, double mean_mass) {
  double value = 0.0;
  if (kind == "theorem")
    value = theorem_bound(beta, t, lip1, lip2, theta, energy).bound_value;
  else if (kind == "corollary1")
    value = corollary1_bound(t, separation, lip1, lip2, theta, mass_u, mass_v,
                             delta_scale > 0 ? delta_scale : theta);
  else if (kind == "corollary2")
    value = corollary2_energy_bound(beta, mass_u, mass_v, overlap);
  else if (kind == "pam")
    value = pam_variance_budget(beta, t, lip, theta, linf, mean_mass);
  else
    throw std::domain_error("bound --kind must be theorem, corollary1, corollary2 or pam");
  std::cout << format_double(value) << "\n";
  return 0;
}

int run_experiment(const std::string& name, const std::string& config_path,
                   const std::vector<std::string>& overrides, long seed_override, bool have_seed,
                   const std::string& out_flag, int threads) {
  set_exec_threads(threads);
  const Campaign campaign = campaign_from_name(name);
  const KeyValueConfig kv = load_config(config_path, overrides, seed_override, have_seed);
  const ExperimentConfig cfg = ExperimentConfig::build(campaign, kv);
  const std::string out_dir = resolve_out_dir(out_flag, cfg.out_dir);

  const auto start = std::chrono::steady_clock::now();
  const CampaignResult result = run_campaign(cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  write_campaign_outputs(result, out_dir);
  std::cerr << campaign_name(campaign) << ": " << (result.pass ? "PASS" : "FAIL") << " ("
            << result.checks.size() << " checks, " << wall << " s)\n";
  for (const auto& c : result.checks)
    if (!c.pass)
      std::cerr << "  failed: " << c.name << " value=" << format_double(c.value)
                << " tolerance=" << format_double(c.tolerance) << "\n";
  return result.pass ? 0 : 1;
}

void print_schema() {
  std::cout << "config file keys (key = value lines under [section] headers):\n";
  for (const auto& e : config_schema())
    std::cout << "  [" << e.section << "] " << e.key << " (" << e.type << "): " << e.help << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic heat equation total-mass decorrelation toolkit"};
  app.set_version_flag("--version", shemass::kVersion);
  app.require_subcommand(1);

  // kernel
  auto* kernel_cmd = app.add_subcommand("kernel", "evaluate the heat or resolvent kernel");
  std::string kernel_type = "resolvent";
  double k_beta = 1.0, k_theta = 1.0, k_x = 0.0, k_time = 1.0;
  kernel_cmd->add_option("--type", kernel_type, "resolvent | heat")->capture_default_str();
  kernel_cmd->add_option("--beta", k_beta, "resolvent parameter beta > 0")->capture_default_str();
  kernel_cmd->add_option("--theta", k_theta, "diffusion scale")->capture_default_str();
  kernel_cmd->add_option("--x", k_x, "position")->capture_default_str();
  kernel_cmd->add_option("--time", k_time, "time argument of the heat kernel")
      ->capture_default_str();

  // energy
  auto* energy_cmd = app.add_subcommand("energy", "mutual beta-energy of two profiles");
  std::string e_u0, e_v0, e_route = "both", e_out;
  double e_beta = 1.0, e_theta = 1.0;
  energy_cmd->add_option("--u0", e_u0, "profile file (.csv or .json)")->required();
  energy_cmd->add_option("--v0", e_v0, "profile file (.csv or .json)")->required();
  energy_cmd->add_option("--beta", e_beta, "beta > 0")->capture_default_str();
  energy_cmd->add_option("--theta", e_theta, "diffusion scale")->capture_default_str();
  energy_cmd->add_option("--route", e_route, "real | fourier | both")->capture_default_str();
  energy_cmd->add_option("--out", e_out, "write a JSON report here");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "run one Monte Carlo ensemble from a config");
  std::string s_config, s_out;
  std::vector<std::string> s_set;
  long s_seed = 0;
  int s_threads = 0;
  sim_cmd->add_option("--config", s_config, "config file")->required();
  sim_cmd->add_option("--set", s_set, "override: section.key=value (repeatable)");
  auto* s_seed_opt = sim_cmd->add_option("--seed", s_seed, "override run.seed");
  sim_cmd->add_option("--out", s_out, "output directory");
  sim_cmd->add_option("--threads", s_threads, "worker threads (0 = library default)");

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "analytic covariance bounds");
  std::string b_kind = "theorem";
  double b_beta = 1.0, b_t = 0.0, b_lip1 = 1.0, b_lip2 = 1.0, b_lip = 1.0, b_theta = 1.0;
  double b_energy = 0.0, b_sep = 1.0, b_mass_u = 1.0, b_mass_v = 1.0, b_delta_scale = 0.0;
  double b_overlap = 0.0, b_linf = 1.0, b_mean_mass = 1.0;
  bound_cmd->add_option("--kind", b_kind, "theorem | corollary1 | corollary2 | pam")
      ->capture_default_str();
  bound_cmd->add_option("--beta", b_beta, "beta")->capture_default_str();
  bound_cmd->add_option("--t", b_t, "time")->capture_default_str();
  bound_cmd->add_option("--lip1", b_lip1, "Lip(sigma1)")->capture_default_str();
  bound_cmd->add_option("--lip2", b_lip2, "Lip(sigma2)")->capture_default_str();
  bound_cmd->add_option("--lip", b_lip, "Lip(sigma) for the pam budget")->capture_default_str();
  bound_cmd->add_option("--theta", b_theta, "diffusion scale")->capture_default_str();
  bound_cmd->add_option("--energy", b_energy, "mutual energy E_beta(u0,v0)")
      ->capture_default_str();
  bound_cmd->add_option("--separation", b_sep, "support separation Delta")->capture_default_str();
  bound_cmd->add_option("--mass-u", b_mass_u, "L1 norm of u0")->capture_default_str();
  bound_cmd->add_option("--mass-v", b_mass_v, "L1 norm of v0")->capture_default_str();
  bound_cmd->add_option("--delta-scale", b_delta_scale, "corollary1 schedule scale (default theta)")
      ->capture_default_str();
  bound_cmd->add_option("--overlap", b_overlap, "spectral overlap measure")->capture_default_str();
  bound_cmd->add_option("--linf", b_linf, "Linf norm of u0")->capture_default_str();
  bound_cmd->add_option("--mean-mass", b_mean_mass, "expected total mass")->capture_default_str();

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "run a verification campaign");
  std::string x_name, x_config, x_out;
  std::vector<std::string> x_set;
  long x_seed = 0;
  int x_threads = 0;
  exp_cmd->add_option("--name", x_name,
                      "martingale | cov_identity | theorem_sweep | corollary1 | corollary2 | "
                      "pam_truncation")
      ->required();
  exp_cmd->add_option("--config", x_config, "config file")->required();
  exp_cmd->add_option("--set", x_set, "override: section.key=value (repeatable)");
  auto* x_seed_opt = exp_cmd->add_option("--seed", x_seed, "override run.seed");
  exp_cmd->add_option("--out", x_out, "output directory");
  exp_cmd->add_option("--threads", x_threads, "worker threads (0 = library default)");
  bool x_schema = false;
  exp_cmd->add_flag("--print-schema", x_schema, "list all config keys and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (kernel_cmd->parsed()) return run_kernel(kernel_type, k_beta, k_theta, k_x, k_time);
    if (energy_cmd->parsed()) return run_energy(e_u0, e_v0, e_beta, e_theta, e_route, e_out);
    if (sim_cmd->parsed())
      return run_simulate(s_config, s_set, s_seed, s_seed_opt->count() > 0, s_out, s_threads);
    if (bound_cmd->parsed())
      return run_bound(b_kind, b_beta, b_t, b_lip1, b_lip2, b_lip, b_theta, b_energy, b_sep,
                       b_mass_u, b_mass_v, b_delta_scale, b_overlap, b_linf, b_mean_mass);
    if (exp_cmd->parsed()) {
      if (x_schema) {
        print_schema();
        return 0;
      }
      return run_experiment(x_name, x_config, x_set, x_seed, x_seed_opt->count() > 0, x_out,
                            x_threads);
    }
  } catch (const shemass::BlowupError& e) {
    std::cerr << "numerical blowup: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
