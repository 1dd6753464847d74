// Copyright 2026 The tim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tim/error.hpp"
#include "tim/signal.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace tim::signal
{

namespace
{

// Daubechies decomposition low-pass filters (PyWavelets values).
const std::array<std::vector<double>, 10> kDaubechiesDecLo = {{
  {0.7071067811865476, 0.7071067811865476},
  {-0.12940952255126037, 0.2241438680420134, 0.8365163037378079, 0.48296291314453416},
  {0.03522629188570953, -0.08544127388202666, -0.13501102001025458, 0.45987750211849154,
   0.8068915093110925, 0.33267055295008263},
  {-0.010597401785069032, 0.0328830116668852, 0.030841381835560764, -0.18703481171909309,
   -0.027983769416859854, 0.6308807679298589, 0.7148465705529157, 0.2303778133088965},
  {0.0033357252854737712, -0.012580751999081999, -0.006241490212798274, 0.07757149384004572,
   -0.032244869584638375, -0.24229488706638203, 0.13842814590132074, 0.7243085284377729,
   0.6038292697971896, 0.16010239797419293},
  {-0.0010773010853084796, 0.004777257510945511, 0.0005538422011614961, -0.03158203931748603,
   0.027522865530305727, 0.09750160558732304, -0.12976686756726194, -0.22626469396543983,
   0.31525035170919763, 0.7511339080210954, 0.49462389039845306, 0.11154074335010947},
  {0.00035371379997452024, -0.0018016407040474908, 0.0004295779729213665, 0.01255099855609984,
   -0.01657454163066688, -0.03802993693501441, 0.08061260915108308, 0.07130921926683026,
   -0.22403618499387498, -0.14390600392856498, 0.4697822874051931, 0.7291320908462351,
   0.3965393194819173, 0.07785205408500918},
  {-0.00011747678412476953, 0.0006754494064505693, -0.00039174037337694705,
   -0.004870352993451574, 0.008746094047405777, 0.013981027917398282, -0.044088253930794755,
   -0.017369301001807547, 0.12874742662047847, 0.0004724845739132828, -0.2840155429615469,
   -0.015829105256349306, 0.5853546836542067, 0.6756307362972898, 0.31287159091429995,
   0.05441584224310401},
  {3.93473203162716e-05, -0.0002519631889427101, 0.00023038576352319597,
   0.0018476468830562265, -0.00428150368246343, -0.004723204757751397, 0.022361662123679096,
   0.00025094711483145197, -0.06763282906132997, 0.03072568147933338, 0.14854074933810638,
   -0.09684078322297646, -0.2932737832791749, 0.13319738582500756, 0.6572880780513005,
   0.6048231236901112, 0.24383467461259034, 0.038077947363878345},
  {-1.3264202894521244e-05, 9.358867032006959e-05, -0.00011646685512928545,
   -0.0006858566949597116, 0.001992405295185056, 0.001395351747052901, -0.010733175483330575,
   0.0036065535669561697, 0.033212674059341, -0.029457536821875813, -0.07139414716639708,
   0.09305736460357235, 0.12736934033579325, -0.19594627437737705, -0.24984642432731538,
   0.2811723436605775, 0.6884590394536035, 0.5272011889317256, 0.1881768000776915,
   0.026670057900555554},
}};

Wavelet make_daubechies(int order)
{
  Wavelet w;
  w.name = "db" + std::to_string(order);
  w.dec_lo = kDaubechiesDecLo[static_cast<std::size_t>(order - 1)];
  const std::size_t f = w.dec_lo.size();
  w.rec_lo.assign(w.dec_lo.rbegin(), w.dec_lo.rend());
  w.dec_hi.resize(f);
  for (std::size_t k = 0; k < f; ++k) {
    w.dec_hi[k] = (k % 2 == 0 ? -1.0 : 1.0) * w.rec_lo[k];
  }
  w.rec_hi.assign(w.dec_hi.rbegin(), w.dec_hi.rend());
  return w;
}

// Half-point symmetric extension: ... x1 x0 | x0 x1 ... x_{n-1} | x_{n-1} x_{n-2} ...
std::size_t reflect(std::ptrdiff_t k, std::size_t n)
{
  const auto period = static_cast<std::ptrdiff_t>(2 * n);
  std::ptrdiff_t m = k % period;
  if (m < 0) {
    m += period;
  }
  const auto um = static_cast<std::size_t>(m);
  return um < n ? um : 2 * n - 1 - um;
}

using Matrix = Eigen::MatrixXd;

// Linear denoising operator for one (wavelet, length, levels, boundary).
Matrix build_operator(const Wavelet & w, std::size_t n, int levels, Boundary boundary)
{
  const auto N = static_cast<Eigen::Index>(n);
  std::vector<double> unit(n, 0.0);
  const std::size_t k_len = wavedec(unit, w, levels).front().size();
  const auto K = static_cast<Eigen::Index>(k_len);

  // analysis: signal -> coarsest approximation
  Matrix analysis(K, N);
  for (std::size_t i = 0; i < n; ++i) {
    unit.assign(n, 0.0);
    unit[i] = 1.0;
    const auto approx = wavedec(unit, w, levels).front();
    for (std::size_t r = 0; r < k_len; ++r) {
      analysis(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = approx[r];
    }
  }

  // synthesis: approximation with zero details -> signal
  auto coeffs = wavedec(std::vector<double>(n, 0.0), w, levels);
  Matrix synthesis(N, K);
  for (std::size_t c = 0; c < k_len; ++c) {
    std::fill(coeffs.front().begin(), coeffs.front().end(), 0.0);
    coeffs.front()[c] = 1.0;
    const auto y = waverec(coeffs, w, n);
    for (std::size_t r = 0; r < n; ++r) {
      synthesis(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = y[r];
    }
  }

  if (boundary == Boundary::Symmetric) {
    return synthesis * analysis;
  }

  // Choose the approximation fed to synthesis so that re-analysis reproduces the
  // measured one, restricted to well-conditioned modes of G = analysis * synthesis.
  constexpr double kModeFloor = 0.1;
  const Matrix gram = analysis * synthesis;
  const Eigen::EigenSolver<Matrix> eig(gram);
  const Eigen::MatrixXcd vecs = eig.eigenvectors();
  const Eigen::VectorXcd vals = eig.eigenvalues();
  Eigen::VectorXcd inv_vals(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    inv_vals(i) = std::abs(vals(i)) > kModeFloor ? 1.0 / vals(i) : std::complex<double>(0.0, 0.0);
  }
  const Eigen::MatrixXcd pinv = vecs * inv_vals.asDiagonal() * vecs.inverse();
  return synthesis * pinv.real() * analysis;
}

const Matrix & cached_operator(const Wavelet & w, std::size_t n, int levels, Boundary boundary)
{
  using Key = std::tuple<std::string, std::size_t, int, Boundary>;
  static std::mutex mutex;
  static std::map<Key, std::unique_ptr<Matrix>> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto & slot = cache[Key{w.name, n, levels, boundary}];
  if (!slot) {
    slot = std::make_unique<Matrix>(build_operator(w, n, levels, boundary));
  }
  return *slot;
}

}  // namespace

const Wavelet & wavelet(std::string_view name)
{
  static const std::array<Wavelet, 10> bank = [] {
    std::array<Wavelet, 10> b;
    for (int k = 1; k <= 10; ++k) {
      b[static_cast<std::size_t>(k - 1)] = make_daubechies(k);
    }
    return b;
  }();
  if (name == "haar") {
    return bank[0];
  }
  for (const auto & w : bank) {
    if (w.name == name) {
      return w;
    }
  }
  throw ConfigError("denoise.wavelet", "unsupported wavelet '" + std::string(name) +
                                         "' (expected haar or db1..db10)");
}

int dwt_max_level(std::size_t n, std::size_t filter_length)
{
  if (filter_length < 2 || n < filter_length - 1) {
    return 0;
  }
  int level = 0;
  std::size_t ratio = n / (filter_length - 1);
  while (ratio > 1) {
    ratio /= 2;
    ++level;
  }
  return level;
}

DwtLevel dwt(std::span<const double> x, const Wavelet & w)
{
  const std::size_t n = x.size();
  const std::size_t f = w.length();
  const std::size_t m = (n + f - 1) / 2;
  DwtLevel out;
  out.approx.assign(m, 0.0);
  out.detail.assign(m, 0.0);
  for (std::size_t o = 0; o < m; ++o) {
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t j = 0; j < f; ++j) {
      const auto k = static_cast<std::ptrdiff_t>(2 * o + 1) - static_cast<std::ptrdiff_t>(j);
      const double xv = x[reflect(k, n)];
      lo += w.dec_lo[j] * xv;
      hi += w.dec_hi[j] * xv;
    }
    out.approx[o] = lo;
    out.detail[o] = hi;
  }
  return out;
}

std::vector<double> idwt(std::span<const double> approx, std::span<const double> detail,
                         const Wavelet & w)
{
  const std::size_t k_len = approx.size();
  const std::size_t f = w.length();
  if (detail.size() != k_len) {
    throw LengthMismatch("idwt needs equally long approximation and detail bands");
  }
  if (2 * k_len + 2 < f) {
    return {};
  }
  const std::size_t n = 2 * k_len + 2 - f;
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < k_len; ++k) {
      const auto idx = static_cast<std::ptrdiff_t>(i + f) - 2 - static_cast<std::ptrdiff_t>(2 * k);
      if (idx < 0) {
        break;
      }
      if (idx < static_cast<std::ptrdiff_t>(f)) {
        const auto u = static_cast<std::size_t>(idx);
        acc += approx[k] * w.rec_lo[u] + detail[k] * w.rec_hi[u];
      }
    }
    out[i] = acc;
  }
  return out;
}

std::vector<std::vector<double>> wavedec(std::span<const double> x, const Wavelet & w, int levels)
{
  if (levels < 1) {
    throw ConfigInfeasible("decomposition depth must be >= 1");
  }
  std::vector<std::vector<double>> details;
  std::vector<double> approx(x.begin(), x.end());
  for (int l = 0; l < levels; ++l) {
    if (approx.empty()) {
      throw ConfigInfeasible("signal exhausted before reaching the requested depth");
    }
    DwtLevel level = dwt(approx, w);
    details.push_back(std::move(level.detail));
    approx = std::move(level.approx);
  }
  std::vector<std::vector<double>> out;
  out.reserve(details.size() + 1);
  out.push_back(std::move(approx));
  for (auto it = details.rbegin(); it != details.rend(); ++it) {
    out.push_back(std::move(*it));
  }
  return out;
}

std::vector<double> waverec(const std::vector<std::vector<double>> & coeffs, const Wavelet & w,
                            std::size_t length)
{
  if (coeffs.empty()) {
    return {};
  }
  std::vector<double> approx = coeffs.front();
  for (std::size_t b = 1; b < coeffs.size(); ++b) {
    const auto & detail = coeffs[b];
    if (approx.size() == detail.size() + 1) {
      approx.pop_back();
    }
    if (approx.size() != detail.size()) {
      throw LengthMismatch("coefficient bands do not form a valid decomposition");
    }
    approx = idwt(approx, detail, w);
  }
  if (length > 0 && approx.size() > length) {
    approx.resize(length);
  }
  return approx;
}

std::string_view to_string(Boundary boundary)
{
  return boundary == Boundary::Symmetric ? "symmetric" : "consistent";
}

std::vector<double> dwt_denoise(std::span<const double> x, const DenoiseConfig & config)
{
  const Wavelet & w = wavelet(config.wavelet);
  const std::size_t n = x.size();
  if (n < w.length()) {
    throw TooShort("denoising with " + w.name + " needs at least " + std::to_string(w.length()) +
                   " samples, got " + std::to_string(n));
  }
  const int max_level = dwt_max_level(n, w.length());
  if (config.levels < 1 || config.levels > max_level) {
    throw ConfigInfeasible("denoise.levels=" + std::to_string(config.levels) + " outside 1.." +
                           std::to_string(max_level) + " for " + std::to_string(n) +
                           " samples with " + w.name);
  }
  const Matrix & op = cached_operator(w, n, config.levels, config.boundary);
  const Eigen::Map<const Eigen::VectorXd> in(x.data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXd y = op * in;
  return {y.data(), y.data() + y.size()};
}

}  // namespace tim::signal
