#include "desknum/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>

namespace desknum::spectral {

namespace {

using Twiddles = std::vector<Complex>;

// W_n^k = exp(-2 pi i k / n) for k < n/2, shared by all transforms of size n.
std::shared_ptr<const Twiddles> twiddles(std::size_t n) {
  static std::shared_mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const Twiddles>> table;
  {
    std::shared_lock lock(mutex);
    if (auto it = table.find(n); it != table.end()) return it->second;
  }
  auto w = std::make_shared<Twiddles>(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    (*w)[k] = {std::cos(angle), std::sin(angle)};
  }
  std::unique_lock lock(mutex);
  return table.emplace(n, std::move(w)).first->second;
}

void require_pow2(std::size_t n, const char* what) {
  require(is_power_of_two(n), ErrorCode::NotPowerOfTwo, what);
}

void transform(ComplexVec& a, bool inverse) {
  const std::size_t n = a.size();
  require_pow2(n, "fft: length must be a power of two");
  if (n == 1) return;
  const unsigned bits = static_cast<unsigned>(std::countr_zero(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (unsigned b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    if (i < r) std::swap(a[i], a[r]);
  }
  const auto w = twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        Complex tw = (*w)[k * stride];
        if (inverse) tw = std::conj(tw);
        const Complex u = a[start + k];
        const Complex v = a[start + k + half] * tw;
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
  if (inverse)
    for (Complex& c : a) c /= static_cast<double>(n);
}

ComplexVec to_complex(std::span<const double> x) { return ComplexVec(x.begin(), x.end()); }

Vector real_part(const ComplexVec& x) {
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].real();
  return out;
}

Image2D real_image(const Field2D& f) {
  Image2D out{f.rows, f.cols, Vector(f.data.size())};
  for (std::size_t i = 0; i < f.data.size(); ++i) out.data[i] = f.data[i].real();
  return out;
}

void check_image(const Image2D& img) {
  require(img.rows > 0 && img.cols > 0 && img.data.size() == img.rows * img.cols, ErrorCode::ShapeMismatch,
          "image: data length must equal rows*cols");
}

Field2D transform2(Field2D f, bool inverse) {
  require(is_power_of_two(f.rows) && is_power_of_two(f.cols), ErrorCode::NotPowerOfTwo,
          "fft2: dimensions must be powers of two");
  ComplexVec line(f.cols);
  for (std::size_t r = 0; r < f.rows; ++r) {
    std::copy_n(f.data.begin() + r * f.cols, f.cols, line.begin());
    transform(line, inverse);
    std::copy(line.begin(), line.end(), f.data.begin() + r * f.cols);
  }
  line.resize(f.rows);
  for (std::size_t c = 0; c < f.cols; ++c) {
    for (std::size_t r = 0; r < f.rows; ++r) line[r] = f.at(r, c);
    transform(line, inverse);
    for (std::size_t r = 0; r < f.rows; ++r) f.at(r, c) = line[r];
  }
  return f;
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

std::size_t next_power_of_two(std::size_t n) noexcept { return std::bit_ceil(std::max<std::size_t>(n, 1)); }

ComplexVec dft(std::span<const Complex> x) {
  const std::size_t n = x.size();
  require(n >= 1, ErrorCode::EmptyInput, "dft: empty input");
  ComplexVec out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex s = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      // Reduce k*t mod n first so the angle stays accurate for large n.
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * t) % n) / static_cast<double>(n);
      s += x[t] * Complex(std::cos(angle), std::sin(angle));
    }
    out[k] = s;
  }
  return out;
}

ComplexVec fft(std::span<const Complex> x) {
  ComplexVec a(x.begin(), x.end());
  transform(a, false);
  return a;
}

ComplexVec ifft(std::span<const Complex> x) {
  ComplexVec a(x.begin(), x.end());
  transform(a, true);
  return a;
}

ComplexVec fft_real(std::span<const double> x) {
  ComplexVec a = to_complex(x);
  transform(a, false);
  return a;
}

Vector fft_freqs(std::size_t n, double d) {
  require(n >= 1, ErrorCode::EmptyInput, "fft_freqs: n must be positive");
  require(d > 0.0, ErrorCode::InvalidArgument, "fft_freqs: spacing must be positive");
  Vector f(n);
  const std::size_t positive = (n + 1) / 2;
  const double scale = 1.0 / (static_cast<double>(n) * d);
  for (std::size_t k = 0; k < n; ++k) {
    const double idx = k < positive ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
    f[k] = idx * scale;
  }
  return f;
}

Spectrum spectrum(std::span<const double> signal, double spacing) {
  return {fft_real(signal), fft_freqs(signal.size(), spacing), spacing};
}

Vector convolve_direct(std::span<const double> f, std::span<const double> g) {
  require(!f.empty() && !g.empty(), ErrorCode::EmptyInput, "convolve: empty input");
  Vector out(f.size() + g.size() - 1, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
  return out;
}

Vector convolve_fft(std::span<const double> f, std::span<const double> g) {
  require(!f.empty() && !g.empty(), ErrorCode::EmptyInput, "convolve: empty input");
  const std::size_t len = f.size() + g.size() - 1;
  const std::size_t n = next_power_of_two(len);
  ComplexVec fa(n), ga(n);
  std::copy(f.begin(), f.end(), fa.begin());
  std::copy(g.begin(), g.end(), ga.begin());
  transform(fa, false);
  transform(ga, false);
  for (std::size_t k = 0; k < n; ++k) fa[k] *= ga[k];
  transform(fa, true);
  Vector out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = fa[i].real();
  return out;
}

Vector convolve_circular(std::span<const double> f, std::span<const double> g, std::size_t n) {
  require(!f.empty() && !g.empty(), ErrorCode::EmptyInput, "convolve: empty input");
  require(n >= std::max(f.size(), g.size()), ErrorCode::InvalidArgument, "convolve_circular: n too small");
  Vector out(n, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) out[(i + j) % n] += f[i] * g[j];
  return out;
}

Field2D fft2(const Image2D& img) {
  check_image(img);
  Field2D f{img.rows, img.cols, ComplexVec(img.data.begin(), img.data.end())};
  return transform2(std::move(f), false);
}

Field2D fft2(const Field2D& field) { return transform2(field, false); }

Field2D ifft2(const Field2D& field) { return transform2(field, true); }

Vector lowpass1d(std::span<const double> signal, double sample_rate, double cutoff) {
  require_pow2(signal.size(), "lowpass1d: length must be a power of two");
  require(sample_rate > 0.0, ErrorCode::InvalidArgument, "lowpass1d: sample rate must be positive");
  require(cutoff > 0.0 && cutoff < sample_rate / 2.0, ErrorCode::BadCutoff, "lowpass1d: need 0 < cutoff < fs/2");
  ComplexVec spec = fft_real(signal);
  const std::size_t n = spec.size();
  const Vector freqs = fft_freqs(n, 1.0 / sample_rate);
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(freqs[k]) > cutoff) {
      spec[k] = 0.0;
      spec[(n - k) % n] = 0.0;
    }
  }
  transform(spec, true);
  return real_part(spec);
}

Image2D lowpass2d(const Image2D& img, double cutoff) {
  check_image(img);
  require(cutoff > 0.0, ErrorCode::BadCutoff, "lowpass2d: cutoff must be positive");
  Field2D f = fft2(img);
  const Vector fr = fft_freqs(f.rows);
  const Vector fc = fft_freqs(f.cols);
  for (std::size_t r = 0; r < f.rows; ++r)
    for (std::size_t c = 0; c < f.cols; ++c)
      if (std::hypot(fr[r], fc[c]) > cutoff) f.at(r, c) = 0.0;
  return real_image(ifft2(f));
}

Image2D log_magnitude_spectrum(const Image2D& img) {
  const Field2D f = fft2(img);
  Image2D out{f.rows, f.cols, Vector(f.data.size())};
  const std::size_t sr = f.rows / 2;
  const std::size_t sc = f.cols / 2;
  for (std::size_t r = 0; r < f.rows; ++r)
    for (std::size_t c = 0; c < f.cols; ++c)
      out.at((r + sr) % f.rows, (c + sc) % f.cols) = std::log1p(std::abs(f.at(r, c)));
  return out;
}

Image2D spectral_pool2d(const Image2D& map, std::size_t keep) {
  check_image(map);
  require(is_power_of_two(map.rows) && is_power_of_two(map.cols), ErrorCode::NotPowerOfTwo,
          "spectral_pool2d: dimensions must be powers of two");
  require(keep >= 1 && keep <= std::min(map.rows, map.cols), ErrorCode::BadKeep,
          "spectral_pool2d: need 1 <= keep <= min(rows, cols)");
  Field2D f = fft2(map);
  for (std::size_t r = 0; r < f.rows; ++r)
    for (std::size_t c = 0; c < f.cols; ++c)
      if (r >= keep || c >= keep) f.at(r, c) = 0.0;
  return real_image(ifft2(f));
}

double peak_frequency(std::span<const double> signal, double sample_rate) {
  require_pow2(signal.size(), "peak_frequency: length must be a power of two");
  require(sample_rate > 0.0, ErrorCode::InvalidArgument, "peak_frequency: sample rate must be positive");
  const ComplexVec spec = fft_real(signal);
  const std::size_t n = spec.size();
  const Vector freqs = fft_freqs(n, 1.0 / sample_rate);
  std::size_t best = 0;
  double best_mag = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    if (freqs[k] <= 0.0) continue;
    const double mag = std::abs(spec[k]);
    if (mag > best_mag) {
      best_mag = mag;
      best = k;
    }
  }
  const double floor = 1e-9 * std::max(1.0, std::abs(spec[0]));
  if (best == 0 || best_mag <= floor) fail(ErrorCode::NoPeak, "peak_frequency: no non-DC component");
  return freqs[best];
}

}  // namespace desknum::spectral
