#ifndef DICTMON_FFT_HPP
#define DICTMON_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace dictmon {

/// Forward real FFT of `input` zero-padded (or truncated) to length n.
/// Returns the n/2+1 non-redundant bins.
std::vector<std::complex<double>> rfft(const std::vector<double>& input, std::size_t n);

/// Inverse of rfft, scaled so that irfft(rfft(x, n), n) == x. Returns n
/// real samples.
std::vector<double> irfft(const std::vector<std::complex<double>>& spectrum, std::size_t n);

/// |rfft|^2 of the input zero-padded to n: the one-sided periodogram used
/// for spectral features (no scaling; ratios are what matter).
std::vector<double> power_spectrum(const std::vector<double>& input, std::size_t n);

} // namespace dictmon

#endif
