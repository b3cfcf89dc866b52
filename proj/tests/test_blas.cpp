#include "doctest.h"

#include <omp.h>

#include "qwgi/blas.hpp"
#include "qwgi/rng.hpp"

using namespace qwgi;

TEST_CASE("det_dot matches naive and is thread-count independent")
{
    Rng rng(1);
    const std::size_t len = 3 * kReduceBlock + 1234;
    std::vector<double> a(len), b(len);
    for (std::size_t i = 0; i < len; ++i) {
        a[i] = rng.uniform01() - 0.5;
        b[i] = rng.uniform01() - 0.5;
    }

    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double d1 = det_dot(a, b);
    const double n1 = det_nrm2(std::span<const double>(a));
    omp_set_num_threads(4);
    const double d4 = det_dot(a, b);
    const double n4 = det_nrm2(std::span<const double>(a));
    omp_set_num_threads(saved);

    CHECK(d1 == d4);
    CHECK(n1 == n4);

    long double naive = 0;
    for (std::size_t i = 0; i < len; ++i)
        naive += static_cast<long double>(a[i]) * b[i];
    CHECK(d1 == doctest::Approx(static_cast<double>(naive)).epsilon(1e-12));
}

TEST_CASE("complex det_dotc conjugates the left argument")
{
    using cplx = std::complex<double>;
    std::vector<cplx> a{{1, 2}, {0, -1}}, b{{3, 0}, {1, 1}};
    const cplx d = det_dotc(a, b);
    const cplx expect = std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
    CHECK(std::abs(d - expect) < 1e-15);
    CHECK(det_nrm2(std::span<const cplx>(a)) ==
          doctest::Approx(std::sqrt(std::norm(a[0]) + std::norm(a[1]))));
}

TEST_CASE("axpy and scal")
{
    std::vector<double> x{1, 2, 3}, y{4, 5, 6};
    axpy(2.0, x, y);
    CHECK(y == std::vector<double>{6, 9, 12});
    scal(0.5, y);
    CHECK(y == std::vector<double>{3, 4.5, 6});
}
