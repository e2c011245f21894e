#include "shemass/profiles.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "shemass/report_io.hpp"

namespace shemass {

namespace {

constexpr double kEdgeSnapTol = 1e-9;  // relative to dx

void check_grid(const GridWindow& grid) {
  if (grid.n == 0) throw std::domain_error("profile grid is empty");
  if (!(grid.dx > 0.0) || !std::isfinite(grid.dx))
    throw std::domain_error("profile grid dx must be positive and finite");
  if (!std::isfinite(grid.origin)) throw std::domain_error("profile grid origin must be finite");
}

}  // namespace

Profile Profile::from_samples(double grid_origin, double dx, std::vector<double> samples) {
  check_grid(GridWindow{grid_origin, dx, samples.size()});
  double sum = 0.0;
  double mx = 0.0;
  for (double s : samples) {
    if (!(s >= 0.0))  // catches negatives and NaN
      throw std::domain_error("profile samples must be nonnegative");
    sum += s;
    mx = std::max(mx, s);
  }
  Profile p;
  p.origin_ = grid_origin;
  p.dx_ = dx;
  p.samples_ = std::move(samples);
  p.l1_ = dx * sum;
  p.linf_ = mx;
  return p;
}

bool Profile::same_grid(const Profile& other, double rel_tol) const {
  if (size() != other.size()) return false;
  const double tol = rel_tol * dx_;
  return std::abs(origin_ - other.origin_) <= tol && std::abs(dx_ - other.dx_) <= tol;
}

Profile Profile::coarsened() const {
  std::vector<double> out;
  out.reserve((samples_.size() + 1) / 2);
  for (std::size_t i = 0; i < samples_.size(); i += 2) out.push_back(samples_[i]);
  return from_samples(origin_, 2.0 * dx_, std::move(out));
}

Profile make_indicator(double lo, double hi, double amplitude, const GridWindow& grid) {
  check_grid(grid);
  if (!(hi > lo)) throw std::domain_error("indicator needs hi > lo");
  if (!(amplitude >= 0.0)) throw std::domain_error("indicator amplitude must be nonnegative");
  if (lo < grid.origin - kEdgeSnapTol * grid.dx ||
      hi > grid.x_at(grid.n - 1) + kEdgeSnapTol * grid.dx)
    throw std::domain_error("indicator interval outside the grid");
  std::vector<double> s(grid.n, 0.0);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x_at(i);
    const bool on_lo = std::abs(x - lo) <= kEdgeSnapTol * grid.dx;
    const bool on_hi = std::abs(x - hi) <= kEdgeSnapTol * grid.dx;
    if (on_lo || on_hi)
      s[i] = 0.5 * amplitude;  // edge on a node: mean of the one-sided limits
    else if (x > lo && x < hi)
      s[i] = amplitude;
  }
  return Profile::from_samples(grid.origin, grid.dx, std::move(s));
}

Profile make_gaussian_bump(double center, double width, double mass, const GridWindow& grid) {
  check_grid(grid);
  if (!(width > 0.0)) throw std::domain_error("gaussian bump width must be positive");
  if (!(mass >= 0.0)) throw std::domain_error("gaussian bump mass must be nonnegative");
  if (center < grid.origin || center > grid.x_at(grid.n - 1))
    throw std::domain_error("gaussian bump center outside the grid");
  const double norm = mass / (width * std::sqrt(2.0 * std::numbers::pi));
  std::vector<double> s(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double d = (grid.x_at(i) - center) / width;
    s[i] = norm * std::exp(-0.5 * d * d);
  }
  return Profile::from_samples(grid.origin, grid.dx, std::move(s));
}

Profile make_constant(double value, const GridWindow& grid) {
  check_grid(grid);
  if (!(value >= 0.0)) throw std::domain_error("constant profile value must be nonnegative");
  return Profile::from_samples(grid.origin, grid.dx, std::vector<double>(grid.n, value));
}

Profile make_custom(std::vector<double> samples, const GridWindow& grid) {
  check_grid(grid);
  if (samples.size() != grid.n)
    throw std::domain_error("custom sample count does not match the grid");
  return Profile::from_samples(grid.origin, grid.dx, std::move(samples));
}

Profile make_profile(const ProfileDescriptor& desc, const GridWindow& grid) {
  switch (desc.kind) {
    case ProfileKind::indicator:
      return make_indicator(desc.lo, desc.hi, desc.amplitude, grid);
    case ProfileKind::gaussian_bump:
      return make_gaussian_bump(desc.center, desc.width, desc.mass, grid);
    case ProfileKind::constant:
      return make_constant(desc.value, grid);
    case ProfileKind::custom:
      return make_custom(desc.samples, grid);
  }
  throw std::domain_error("unknown profile kind");
}

double support_separation(const Profile& u0, const Profile& v0) {
  std::vector<double> xu, xv;
  for (std::size_t i = 0; i < u0.size(); ++i)
    if (u0[i] > 0.0) xu.push_back(u0.x_at(i));
  for (std::size_t i = 0; i < v0.size(); ++i)
    if (v0[i] > 0.0) xv.push_back(v0.x_at(i));
  if (xu.empty() || xv.empty())
    throw std::domain_error("support_separation requires both profiles nonzero");
  // Two sorted position lists; classic two-pointer min gap.
  double best = std::numeric_limits<double>::infinity();
  std::size_t i = 0, j = 0;
  while (i < xu.size() && j < xv.size()) {
    best = std::min(best, std::abs(xu[i] - xv[j]));
    if (best == 0.0) return 0.0;
    if (xu[i] < xv[j])
      ++i;
    else
      ++j;
  }
  if (i < xu.size()) best = std::min(best, std::abs(xu[i] - xv.back()));
  if (j < xv.size()) best = std::min(best, std::abs(xu.back() - xv[j]));
  return best;
}

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex g_fftw_mutex;

std::vector<std::complex<double>> dft_forward(std::vector<std::complex<double>>& in) {
  const int n = static_cast<int>(in.size());
  std::vector<std::complex<double>> out(in.size());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD,
                            FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

Spectrum spectrum(const Profile& f, int pad_factor) {
  if (pad_factor < 1) throw std::domain_error("pad_factor must be >= 1");
  const std::size_t n = f.size();
  const std::size_t nfft = n * static_cast<std::size_t>(pad_factor);
  std::vector<std::complex<double>> in(nfft, 0.0);
  for (std::size_t i = 0; i < n; ++i) in[i] = f[i];
  auto out = dft_forward(in);

  Spectrum sp;
  sp.dz = 2.0 * std::numbers::pi / (static_cast<double>(nfft) * f.dx());
  sp.z.resize(nfft);
  sp.fhat.resize(nfft);
  // Recenter: k runs over -nfft/2 .. nfft/2-1 in ascending frequency.
  const long half = static_cast<long>(nfft / 2);
  for (long idx = 0; idx < static_cast<long>(nfft); ++idx) {
    const long k = idx - half;                    // signed frequency index
    const long src = (k + static_cast<long>(nfft)) % static_cast<long>(nfft);
    const double z = static_cast<double>(k) * sp.dz;
    // continuous-transform scaling: dx * DFT * exp(-i z x0)
    const double phase = -z * f.grid_origin();
    sp.z[idx] = z;
    sp.fhat[idx] = f.dx() * out[src] * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return sp;
}

double Spectrum::max_modulus() const {
  double m = 0.0;
  for (const auto& c : fhat) m = std::max(m, std::abs(c));
  return m;
}

SpectrumSupport spectrum_support(const Profile& f, double epsilon, int pad_factor) {
  if (!(epsilon > 0.0)) throw std::domain_error("spectrum support threshold must be positive");
  const Spectrum sp = spectrum(f, pad_factor);
  SpectrumSupport out;
  out.threshold_epsilon = epsilon;
  out.dz = sp.dz;
  out.z = sp.z;
  out.mask.resize(sp.fhat.size());
  for (std::size_t i = 0; i < sp.fhat.size(); ++i) out.mask[i] = std::abs(sp.fhat[i]) > epsilon;
  return out;
}

double SpectrumSupport::measure() const {
  std::size_t c = 0;
  for (char m : mask) c += (m != 0);
  return dz * static_cast<double>(c);
}

double fourier_overlap_measure(const Profile& u0, const Profile& v0, double epsilon,
                               int pad_factor) {
  if (!(epsilon > 0.0)) throw std::domain_error("overlap threshold must be positive");
  if (!u0.same_grid(v0)) throw std::domain_error("overlap measure requires a common grid");
  const SpectrumSupport su = spectrum_support(u0, epsilon, pad_factor);
  const SpectrumSupport sv = spectrum_support(v0, epsilon, pad_factor);
  std::size_t c = 0;
  for (std::size_t i = 0; i < su.mask.size(); ++i) c += (su.mask[i] && sv.mask[i]);
  return su.dz * static_cast<double>(c);
}

double default_overlap_epsilon(const Profile& u0, const Profile& v0) {
  const double mu = spectrum(u0, 1).max_modulus();
  const double mv = spectrum(v0, 1).max_modulus();
  return 1e-6 * std::max(mu, mv);
}

void profile_to_csv(const Profile& f, std::ostream& os) {
  os << "x,value\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    os << format_double(f.x_at(i)) << ',' << format_double(f[i]) << '\n';
}

void profile_to_csv_file(const Profile& f, const std::string& path) {
  std::ostringstream ss;
  profile_to_csv(f, ss);
  atomic_write_file(path, ss.str());
}

Profile profile_from_csv(std::istream& is) {
  std::vector<double> xs, vals;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("profile CSV: missing comma");
    char* end = nullptr;
    const std::string sx = line.substr(0, comma);
    const double x = std::strtod(sx.c_str(), &end);
    if (end == sx.c_str()) {
      if (xs.empty()) continue;  // header row
      throw std::runtime_error("profile CSV: bad x value: " + sx);
    }
    const std::string sv = line.substr(comma + 1);
    const double v = std::strtod(sv.c_str(), &end);
    if (end == sv.c_str()) throw std::runtime_error("profile CSV: bad value: " + sv);
    xs.push_back(x);
    vals.push_back(v);
  }
  if (xs.size() < 2) throw std::runtime_error("profile CSV: need at least two rows");
  const double dx = xs[1] - xs[0];
  if (!(dx > 0)) throw std::runtime_error("profile CSV: x must be strictly increasing");
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    if (std::abs((xs[i + 1] - xs[i]) - dx) > 1e-9 * dx)
      throw std::runtime_error("profile CSV: grid is not uniform");
  }
  return Profile::from_samples(xs[0], dx, std::move(vals));
}

Profile profile_from_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return profile_from_csv(is);
}

namespace {

const char* kind_name(ProfileKind k) {
  switch (k) {
    case ProfileKind::indicator: return "indicator";
    case ProfileKind::gaussian_bump: return "gaussian_bump";
    case ProfileKind::constant: return "constant";
    case ProfileKind::custom: return "custom";
  }
  return "?";
}

}  // namespace

std::string profile_descriptor_to_json(const ProfileDescriptor& desc, const GridWindow& grid) {
  nlohmann::json j;
  j["grid"] = {{"origin", grid.origin}, {"dx", grid.dx}, {"n", grid.n}};
  j["kind"] = kind_name(desc.kind);
  switch (desc.kind) {
    case ProfileKind::indicator:
      j["lo"] = desc.lo;
      j["hi"] = desc.hi;
      j["amplitude"] = desc.amplitude;
      break;
    case ProfileKind::gaussian_bump:
      j["center"] = desc.center;
      j["width"] = desc.width;
      j["mass"] = desc.mass;
      break;
    case ProfileKind::constant:
      j["value"] = desc.value;
      break;
    case ProfileKind::custom:
      j["samples"] = desc.samples;
      break;
  }
  return j.dump(2) + "\n";
}

Profile profile_from_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  is >> j;
  GridWindow grid;
  grid.origin = j.at("grid").at("origin").get<double>();
  grid.dx = j.at("grid").at("dx").get<double>();
  grid.n = j.at("grid").at("n").get<std::size_t>();
  const std::string kind = j.at("kind").get<std::string>();
  ProfileDescriptor d;
  if (kind == "indicator") {
    d.kind = ProfileKind::indicator;
    d.lo = j.at("lo").get<double>();
    d.hi = j.at("hi").get<double>();
    d.amplitude = j.value("amplitude", 1.0);
  } else if (kind == "gaussian_bump") {
    d.kind = ProfileKind::gaussian_bump;
    d.center = j.at("center").get<double>();
    d.width = j.at("width").get<double>();
    d.mass = j.value("mass", 1.0);
  } else if (kind == "constant") {
    d.kind = ProfileKind::constant;
    d.value = j.at("value").get<double>();
  } else if (kind == "custom") {
    d.kind = ProfileKind::custom;
    d.samples = j.at("samples").get<std::vector<double>>();
  } else {
    throw std::runtime_error("unknown profile kind: " + kind);
  }
  return make_profile(d, grid);
}

}  // namespace shemass
