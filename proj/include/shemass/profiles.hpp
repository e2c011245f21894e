#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace shemass {

// Uniform sampling grid: x_i = origin + i*dx, i = 0..n-1.
struct GridWindow {
  double origin = 0.0;
  double dx = 1.0;
  std::size_t n = 0;

  double x_at(std::size_t i) const { return origin + static_cast<double>(i) * dx; }
  double extent() const { return static_cast<double>(n - 1) * dx; }
};

// A sampled nonnegative initial datum.  Immutable after construction; the
// stored norms always equal their recomputation from the samples.
class Profile {
 public:
  static Profile from_samples(double grid_origin, double dx, std::vector<double> samples);

  double grid_origin() const { return origin_; }
  double dx() const { return dx_; }
  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }
  double x_at(std::size_t i) const { return origin_ + static_cast<double>(i) * dx_; }

  double l1_norm() const { return l1_; }    // dx * sum(samples)
  double linf_norm() const { return linf_; }  // max sample

  GridWindow window() const { return GridWindow{origin_, dx_, samples_.size()}; }
  bool same_grid(const Profile& other, double rel_tol = 1e-9) const;

  // Every other sample (mesh 2*dx); used for mesh-pair error estimates.
  Profile coarsened() const;

 private:
  Profile() = default;
  double origin_ = 0.0;
  double dx_ = 1.0;
  std::vector<double> samples_;
  double l1_ = 0.0;
  double linf_ = 0.0;
};

enum class ProfileKind { indicator, gaussian_bump, constant, custom };

// Declarative description of an initial datum; this is what config files and
// the JSON interchange format carry.
struct ProfileDescriptor {
  ProfileKind kind = ProfileKind::constant;
  // indicator
  double lo = 0.0;
  double hi = 0.0;
  double amplitude = 1.0;
  // gaussian_bump
  double center = 0.0;
  double width = 1.0;
  double mass = 1.0;
  // constant
  double value = 0.0;
  // custom
  std::vector<double> samples;
};

Profile make_profile(const ProfileDescriptor& desc, const GridWindow& grid);

// Indicator of [lo,hi] scaled by amplitude.  Edges that land exactly on grid
// points get the half value, so the grid sum reproduces the exact mass.
Profile make_indicator(double lo, double hi, double amplitude, const GridWindow& grid);
Profile make_gaussian_bump(double center, double width, double mass, const GridWindow& grid);
Profile make_constant(double value, const GridWindow& grid);
Profile make_custom(std::vector<double> samples, const GridWindow& grid);

// inf{|x-y| : u0(x) > 0, v0(y) > 0} over the strictly positive samples.
// Both profiles must be nonzero.
double support_separation(const Profile& u0, const Profile& v0);

// Continuous-transform approximation: fhat(z_k) = dx * DFT_k * exp(-i z_k x0),
// frequencies z_k = 2*pi*k/(n_fft*dx) recentered to ascending order.
struct Spectrum {
  double dz = 0.0;
  std::vector<double> z;
  std::vector<std::complex<double>> fhat;

  double max_modulus() const;
};

Spectrum spectrum(const Profile& f, int pad_factor = 1);

// Thresholded discrete surrogate for the support of the Fourier transform.
struct SpectrumSupport {
  double threshold_epsilon = 0.0;
  double dz = 0.0;
  std::vector<double> z;
  std::vector<char> mask;  // |fhat(z_k)| > epsilon

  double measure() const;  // dz * count(mask)
};

SpectrumSupport spectrum_support(const Profile& f, double epsilon, int pad_factor = 1);

// dz * #{k : |u0hat(z_k)| > eps and |v0hat(z_k)| > eps}; common grid required.
// pad_factor refines the frequency mesh over the same band (2x frequency
// resolution for pad_factor = 2), which is how the measure's convergence is
// cross-checked.
double fourier_overlap_measure(const Profile& u0, const Profile& v0, double epsilon,
                               int pad_factor = 1);

// Default threshold: 1e-6 times the larger spectral peak of the pair.
double default_overlap_epsilon(const Profile& u0, const Profile& v0);

// CSV (columns: x,value) and JSON descriptor interchange.
void profile_to_csv(const Profile& f, std::ostream& os);
void profile_to_csv_file(const Profile& f, const std::string& path);
Profile profile_from_csv(std::istream& is);
Profile profile_from_csv_file(const std::string& path);
std::string profile_descriptor_to_json(const ProfileDescriptor& desc, const GridWindow& grid);
Profile profile_from_json_file(const std::string& path);

}  // namespace shemass
