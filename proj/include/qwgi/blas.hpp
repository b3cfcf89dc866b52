#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qwgi {

// Deterministic reductions: partial sums over fixed-size blocks are
// combined in block order, so results do not depend on the thread count.
inline constexpr std::size_t kReduceBlock = 8192;

double det_dot(std::span<const double> a, std::span<const double> b);
double det_nrm2(std::span<const double> a);

std::complex<double> det_dotc(std::span<const std::complex<double>> a,
                              std::span<const std::complex<double>> b);
double det_nrm2(std::span<const std::complex<double>> a);

void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scal(double alpha, std::span<double> x);

} // namespace qwgi
