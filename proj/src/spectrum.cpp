#include "wecfarm/spectrum.hpp"

#include <cmath>

#include "wecfarm/constants.hpp"
#include "wecfarm/errors.hpp"

namespace wecfarm {

void SpectrumParams::validate() const {
  if (!(hs > 0.0)) throw InvalidArgument("SpectrumParams: hs must be > 0");
  if (!(tp > 0.0)) throw InvalidArgument("SpectrumParams: tp must be > 0");
  if (!(gamma >= 1.0)) throw InvalidArgument("SpectrumParams: gamma must be >= 1");
}

double SpectrumParams::omega_p() const { return 2.0 * kPi / tp; }

FrequencyGrid FrequencyGrid::linspace(double w0, double w1, int n) {
  if (n < 2 || !(w0 > 0.0) || !(w1 > w0))
    throw InvalidArgument("FrequencyGrid::linspace: need w1 > w0 > 0 and n >= 2");
  FrequencyGrid g;
  g.omegas.resize(n);
  for (int i = 0; i < n; ++i)
    g.omegas[i] = w0 + (w1 - w0) * static_cast<double>(i) / (n - 1);
  return g;
}

FrequencyGrid FrequencyGrid::standard() { return linspace(0.1, 3.0, 120); }

void FrequencyGrid::validate() const {
  if (omegas.size() < 2)
    throw InvalidArgument("FrequencyGrid: need at least 2 points");
  if (!(omegas.front() > 0.0))
    throw InvalidArgument("FrequencyGrid: omega_min must be > 0");
  for (std::size_t i = 1; i < omegas.size(); ++i)
    if (!(omegas[i] > omegas[i - 1]))
      throw InvalidArgument("FrequencyGrid: omegas must be strictly increasing");
}

RegularWave::RegularWave(double height_m, double period_s)
    : height(height_m), period(period_s) {
  if (!(height > 0.0)) throw InvalidArgument("RegularWave: height must be > 0");
  if (!(period > 0.0)) throw InvalidArgument("RegularWave: period must be > 0");
}

double RegularWave::omega() const { return 2.0 * kPi / period; }

double jonswap_density(double omega, const SpectrumParams& params) {
  params.validate();
  if (!(omega > 0.0)) throw InvalidArgument("jonswap_density: omega must be > 0");

  const double wp = params.omega_p();
  const double sigma = (omega <= wp) ? 0.07 : 0.09;
  const double dw = omega - wp;
  const double r = std::exp(-dw * dw / (2.0 * sigma * sigma * wp * wp));
  const double shape = std::exp(-1.25 * std::pow(wp / omega, 4));
  const double norm = 1.0 - 0.287 * std::log(params.gamma);
  const double s = (5.0 / 16.0) * norm * params.hs * params.hs *
                   std::pow(wp, 4) * std::pow(omega, -5) * shape *
                   std::pow(params.gamma, r);
  return s;
}

double spectral_moment(const SpectrumParams& params, const FrequencyGrid& grid, int n) {
  if (n < 0 || n > 2) throw InvalidArgument("spectral_moment: order must be 0, 1 or 2");
  grid.validate();
  const auto& w = grid.omegas;
  double acc = 0.0;
  double prev = std::pow(w[0], n) * jonswap_density(w[0], params);
  for (std::size_t i = 1; i < w.size(); ++i) {
    const double cur = std::pow(w[i], n) * jonswap_density(w[i], params);
    acc += 0.5 * (prev + cur) * (w[i] - w[i - 1]);
    prev = cur;
  }
  return acc;
}

}  // namespace wecfarm
