#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "desknum/ndcore.hpp"

namespace desknum::spectral {

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;

/// Real image, row-major.
struct Image2D {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vector data;

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Complex 2D field, row-major.
struct Field2D {
  std::size_t rows = 0;
  std::size_t cols = 0;
  ComplexVec data;

  Complex& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Complex& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct Spectrum {
  ComplexVec bins;
  Vector freqs;
  double spacing = 1.0;
};

bool is_power_of_two(std::size_t n) noexcept;
std::size_t next_power_of_two(std::size_t n) noexcept;

/// Direct O(n^2) transform.
ComplexVec dft(std::span<const Complex> x);

/// Iterative radix-2 transform; forward is unscaled, inverse scales by 1/n.
ComplexVec fft(std::span<const Complex> x);
ComplexVec ifft(std::span<const Complex> x);
ComplexVec fft_real(std::span<const double> x);

/// Sample frequencies in standard order: 0, 1, ..., ceil(n/2)-1, -floor(n/2), ..., -1 over (n d).
Vector fft_freqs(std::size_t n, double d = 1.0);
Spectrum spectrum(std::span<const double> signal, double spacing);

template <typename T>
std::vector<T> fftshift(std::span<const T> v) {
  std::vector<T> out(v.size());
  const std::size_t shift = v.size() / 2;
  for (std::size_t i = 0; i < v.size(); ++i) out[(i + shift) % v.size()] = v[i];
  return out;
}

Vector convolve_direct(std::span<const double> f, std::span<const double> g);
Vector convolve_fft(std::span<const double> f, std::span<const double> g);
Vector convolve_circular(std::span<const double> f, std::span<const double> g, std::size_t n);

Field2D fft2(const Image2D& img);
Field2D fft2(const Field2D& field);
Field2D ifft2(const Field2D& field);

/// Zeroes every bin with |freq| > cutoff (conjugate partners included) and returns the real part.
Vector lowpass1d(std::span<const double> signal, double sample_rate, double cutoff);

/// Radial low-pass on an image: keeps bins with sqrt(fr^2 + fc^2) <= cutoff, cycles per pixel.
Image2D lowpass2d(const Image2D& img, double cutoff);

/// log(1 + |F|) of the centred 2D spectrum.
Image2D log_magnitude_spectrum(const Image2D& img);

/// Keeps bins with row < keep and col < keep, zeroes the rest, returns the real part.
Image2D spectral_pool2d(const Image2D& map, std::size_t keep);

/// Frequency of the strongest non-DC bin on the nonnegative half; ties go to the lower frequency.
double peak_frequency(std::span<const double> signal, double sample_rate);

}  // namespace desknum::spectral
