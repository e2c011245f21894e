#include "shemass/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "shemass/report_io.hpp"

namespace shemass {

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  double var = 0.0;
};

// Means are computed about the first element as pivot, so a column of
// identical values centers to exactly zero (degenerate ensembles must report
// exact zeros, not rounding dust).
MeanSe mean_se(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  const double pivot = x.front();
  double s = 0.0;
  for (double v : x) s += v - pivot;
  const double mean = pivot + s / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  MeanSe r;
  r.mean = mean;
  r.var = ss / (n - 1.0);
  r.se = std::sqrt(r.var / n);
  return r;
}

// Delete-one jackknife standard error for the sample covariance (variance
// when x == y).  Leave-one-out values come from the sufficient statistics in
// O(1) each.
struct CovJack {
  double cov = 0.0;
  double se = std::numeric_limits<double>::quiet_NaN();
};

CovJack cov_jackknife(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  const double dn = static_cast<double>(n);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i] - x.front();
    my += y[i] - y.front();
  }
  mx = x.front() + mx / dn;
  my = y.front() + my / dn;
  double sx = 0.0, sy = 0.0, sxy = 0.0;
  std::vector<double> xc(n), yc(n);
  for (std::size_t i = 0; i < n; ++i) {
    xc[i] = x[i] - mx;
    yc[i] = y[i] - my;
    sx += xc[i];
    sy += yc[i];
    sxy += xc[i] * yc[i];
  }
  CovJack out;
  out.cov = sxy / (dn - 1.0);
  if (n < 3) return out;

  std::vector<double> loo(n);
  double loo_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sxy_i = sxy - xc[i] * yc[i];
    const double sx_i = sx - xc[i];
    const double sy_i = sy - yc[i];
    loo[i] = (sxy_i - sx_i * sy_i / (dn - 1.0)) / (dn - 2.0);
    loo_mean += loo[i];
  }
  loo_mean /= dn;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) ss += (loo[i] - loo_mean) * (loo[i] - loo_mean);
  out.se = std::sqrt((dn - 1.0) / dn * ss);
  return out;
}

}  // namespace

EnsembleStats aggregate_paths(const std::vector<PathResult>& paths) {
  if (paths.size() < 2)
    throw std::domain_error("ensemble needs at least 2 paths for a variance estimate");
  const std::size_t n = paths.size();
  const std::size_t nt = paths[0].times.size();
  const bool has_v = paths[0].has_v;
  for (const auto& p : paths) {
    if (p.times.size() != nt || p.has_v != has_v)
      throw std::domain_error("inconsistent path records in ensemble");
  }

  EnsembleStats st;
  st.n_paths = static_cast<long>(n);
  st.seed = paths[0].seed;
  st.has_v = has_v;
  st.min_value_seen = std::numeric_limits<double>::infinity();
  for (const auto& p : paths) st.min_value_seen = std::min(st.min_value_seen, p.min_value_seen);

  std::vector<double> xu(n), xv(n), rhs(n), neg(n);
  st.rows.resize(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      xu[i] = paths[i].mass_u[k];
      if (has_v) xv[i] = paths[i].mass_v[k];
      rhs[i] = paths[i].cov_rhs[k];
      neg[i] = paths[i].neg_fraction[k];
    }
    TimePointStats& row = st.rows[k];
    row.t = paths[0].times[k];
    const MeanSe mu = mean_se(xu);
    row.mean_mass_u = mu.mean;
    row.se_mass_u = mu.se;
    row.var_mass_u = mu.var;
    const CovJack vj = cov_jackknife(xu, xu);
    row.se_var_mass_u = vj.se;
    if (has_v) {
      const MeanSe mv = mean_se(xv);
      row.mean_mass_v = mv.mean;
      row.se_mass_v = mv.se;
      const CovJack cj = cov_jackknife(xu, xv);
      row.cov_uv = cj.cov;
      row.se_cov = cj.se;
    } else {
      row.mean_mass_v = std::numeric_limits<double>::quiet_NaN();
      row.se_mass_v = std::numeric_limits<double>::quiet_NaN();
      row.cov_uv = std::numeric_limits<double>::quiet_NaN();
      row.se_cov = std::numeric_limits<double>::quiet_NaN();
    }
    const MeanSe mr = mean_se(rhs);
    row.cov_rhs = mr.mean;
    row.se_cov_rhs = mr.se;
    const MeanSe mn = mean_se(neg);
    row.min_value_frac_negative = mn.mean;
  }
  return st;
}

namespace {

std::vector<PathResult> run_paths(const GridSpec& grid, const Profile& u0, const Profile* v0,
                                  const NonlinearitySpec& sigma1, const NonlinearitySpec& sigma2,
                                  std::uint64_t seed, long n_paths,
                                  const std::vector<long>& save_steps, bool parallel) {
  if (n_paths < 2) throw std::domain_error("n_paths must be >= 2");
  std::vector<PathResult> paths(static_cast<std::size_t>(n_paths));
  std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (long p = 0; p < n_paths; ++p) {
    try {
      paths[static_cast<std::size_t>(p)] =
          simulate_pair(grid, u0, v0, sigma1, sigma2, seed, p, save_steps);
    } catch (...) {
#pragma omp critical(shemass_run_paths_error)
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return paths;
}

}  // namespace

EnsembleStats run_ensemble(const GridSpec& grid, const Profile& u0, const Profile* v0,
                           const NonlinearitySpec& sigma1, const NonlinearitySpec& sigma2,
                           std::uint64_t seed, long n_paths, const std::vector<long>& save_steps,
                           Exec exec) {
  return aggregate_paths(
      run_paths(grid, u0, v0, sigma1, sigma2, seed, n_paths, save_steps, exec == Exec::openmp));
}

EnsembleStats run_ensemble_serial(const GridSpec& grid, const Profile& u0, const Profile* v0,
                                  const NonlinearitySpec& sigma1, const NonlinearitySpec& sigma2,
                                  std::uint64_t seed, long n_paths,
                                  const std::vector<long>& save_steps) {
  if (n_paths < 2) throw std::domain_error("n_paths must be >= 2");
  std::vector<PathResult> paths;
  paths.reserve(static_cast<std::size_t>(n_paths));
  for (long p = 0; p < n_paths; ++p)
    paths.push_back(simulate_pair(grid, u0, v0, sigma1, sigma2, seed, p, save_steps));
  return aggregate_paths(paths);
}

void ensemble_to_csv(const EnsembleStats& stats, std::ostream& os) {
  os << "t,mean_mass_u,se_mass_u,mean_mass_v,se_mass_v,cov_uv,se_cov,cov_rhs,se_cov_rhs,"
        "min_value_frac_negative\n";
  for (const auto& r : stats.rows) {
    os << format_double(r.t) << ',' << format_double(r.mean_mass_u) << ','
       << format_double(r.se_mass_u) << ',' << format_double(r.mean_mass_v) << ','
       << format_double(r.se_mass_v) << ',' << format_double(r.cov_uv) << ','
       << format_double(r.se_cov) << ',' << format_double(r.cov_rhs) << ','
       << format_double(r.se_cov_rhs) << ',' << format_double(r.min_value_frac_negative) << '\n';
  }
}

}  // namespace shemass
