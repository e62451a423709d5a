#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <polyframe/sampling.hpp>

using namespace polyframe;

TEST_CASE("full box accepts every proposal") {
    SampleSet s = draw_uniform_samples(DomainSpec::full_box(3), 500, 42);
    CHECK(s.acceptance_rate() == 1.0);
    CHECK(s.size() == 500);
    CHECK(s.dimension() == 3);
}

TEST_CASE("acceptance rate matches the area ratio") {
    const Eigen::Index M = 100'000;
    SampleSet s = draw_uniform_samples(DomainSpec::l_shape(), M, 7);
    double p = 0.75;
    double sigma = std::sqrt(p * (1 - p) / static_cast<double>(s.proposals));
    CHECK(std::abs(s.acceptance_rate() - p) < 3 * sigma);
}

TEST_CASE("every sample is inside the domain") {
    for (const auto& dom : {DomainSpec::l_shape(), DomainSpec::annulus(0.125, 0.5),
                            DomainSpec::mandelbrot()}) {
        SampleSet s = draw_uniform_samples(dom, 2000, 13);
        std::vector<double> y(s.dimension());
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            for (int k = 0; k < s.dimension(); ++k) y[k] = s.points(i, k);
            CHECK(dom.contains(y));
        }
    }
}

TEST_CASE("seed determinism") {
    SampleSet a = draw_uniform_samples(DomainSpec::l_shape(), 1000, 99);
    SampleSet b = draw_uniform_samples(DomainSpec::l_shape(), 1000, 99);
    CHECK(a.points == b.points);
    SampleSet c = draw_chebyshev_samples(DomainSpec::l_shape(), 1000, 99);
    SampleSet d = draw_chebyshev_samples(DomainSpec::l_shape(), 1000, 99);
    CHECK(c.points == d.points);
    CHECK(a.points != c.points);
}

TEST_CASE("chebyshev draws follow the arcsin law") {
    const Eigen::Index M = 50'000;
    SampleSet s = draw_chebyshev_samples(DomainSpec::full_box(1), M, 5);
    CHECK(s.proposals == static_cast<std::size_t>(M));
    std::vector<double> x(s.points.data(), s.points.data() + M);
    std::sort(x.begin(), x.end());
    auto cdf = [](double y) { return 1.0 - std::acos(y) / std::numbers::pi; };
    double ks = 0.0;
    for (Eigen::Index i = 0; i < M; ++i) {
        double f = cdf(x[i]);
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / M));
        ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / M));
    }
    // 1% critical value of the Kolmogorov distribution
    CHECK(ks < 1.63 / std::sqrt(static_cast<double>(M)));
}

TEST_CASE("rejection cap fires on vanishing domains") {
    DomainSpec sliver = DomainSpec::annulus(0.49999, 0.5);
    CHECK_THROWS_AS(draw_uniform_samples(sliver, 10, 1), SamplingError);
}

TEST_CASE("volume estimation") {
    VolumeEstimate full = estimate_volume_fraction(DomainSpec::full_box(2), 100, 1);
    CHECK(full.fraction == 1.0);

    VolumeEstimate ls = estimate_volume_fraction(DomainSpec::l_shape(), 200'000, 2);
    CHECK(std::abs(ls.fraction - 0.75) < 3 * ls.standard_error + 1e-12);

    VolumeEstimate lc =
        estimate_volume_fraction(DomainSpec::linear_constraint(), 200'000, 3);
    CHECK(std::abs(lc.fraction - 7.0 / 8.0) < 3 * lc.standard_error + 1e-12);
}

TEST_CASE("csv serialization header") {
    SampleSet s = draw_uniform_samples(DomainSpec::l_shape(), 3, 11);
    std::ostringstream os;
    write_sample_set_csv(os, s);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "# domain=lshape d=2 measure=uniform seed=11 M=3");
    int rows = 0;
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);
}
