#include "qwgi/blas.hpp"

namespace qwgi {

namespace {

template <typename T, typename Acc>
Acc blocked_reduce(std::span<const T> a, std::span<const T> b, Acc (*kernel)(std::span<const T>, std::span<const T>))
{
    const std::size_t nblocks = (a.size() + kReduceBlock - 1) / kReduceBlock;
    std::vector<Acc> partial(nblocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t blk = 0; blk < static_cast<std::ptrdiff_t>(nblocks); ++blk) {
        const std::size_t lo = static_cast<std::size_t>(blk) * kReduceBlock;
        const std::size_t hi = std::min(lo + kReduceBlock, a.size());
        partial[blk] = kernel(a.subspan(lo, hi - lo), b.subspan(lo, hi - lo));
    }
    Acc total{};
    for (const Acc& p : partial)
        total += p;
    return total;
}

double dot_block(std::span<const double> a, std::span<const double> b)
{
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

std::complex<double> dotc_block(std::span<const std::complex<double>> a,
                                std::span<const std::complex<double>> b)
{
    std::complex<double> s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

} // namespace

double det_dot(std::span<const double> a, std::span<const double> b)
{
    return blocked_reduce<double, double>(a, b, dot_block);
}

double det_nrm2(std::span<const double> a)
{
    return std::sqrt(det_dot(a, a));
}

std::complex<double> det_dotc(std::span<const std::complex<double>> a,
                              std::span<const std::complex<double>> b)
{
    return blocked_reduce<std::complex<double>, std::complex<double>>(a, b, dotc_block);
}

double det_nrm2(std::span<const std::complex<double>> a)
{
    return std::sqrt(det_dotc(a, a).real());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y)
{
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(x.size()); ++i)
        y[i] += alpha * x[i];
}

void scal(double alpha, std::span<double> x)
{
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(x.size()); ++i)
        x[i] *= alpha;
}

} // namespace qwgi
