#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "spdelab/noise.hpp"
#include "spdelab/rng.hpp"

using namespace spdelab;

TEST_CASE("sampling is a pure function of (seed, path, grid)") {
    const SpaceTimeGrid grid{1.0, 16, 7};
    const auto a = sample_white_noise(grid, 42, 3);
    const auto b = sample_white_noise(grid, 42, 3);
    CHECK(a.increments == b.increments);
    const auto c = sample_white_noise(grid, 42, 4);
    CHECK(a.increments != c.increments);
    const auto d = sample_white_noise(grid, 43, 3);
    CHECK(a.increments != d.increments);
}

TEST_CASE("per-cell variance matches dt*dx") {
    const SpaceTimeGrid grid{1.0, 4, 3};
    const int n_paths = 10000;
    std::vector<double> sq(static_cast<std::size_t>(grid.nt) * grid.nx, 0.0);
    for (int path = 0; path < n_paths; ++path) {
        const auto W = sample_white_noise(grid, 11, static_cast<std::uint64_t>(path));
        for (std::size_t c = 0; c < sq.size(); ++c) sq[c] += W.increments[c] * W.increments[c];
    }
    const double cell = grid.dt() * grid.dx();
    for (double s : sq) {
        const double var = s / n_paths;
        CHECK(var == doctest::Approx(cell).epsilon(0.05));
    }
}

TEST_CASE("total-mass variance scales like T") {
    // sum of all increments ~ N(0, T nx/(nx+1)); nx chosen so the bias is
    // below the Monte Carlo resolution
    const SpaceTimeGrid grid{2.0, 8, 63};
    const int n_paths = 10000;
    double acc = 0.0;
    for (int path = 0; path < n_paths; ++path) {
        const auto W = sample_white_noise(grid, 5, static_cast<std::uint64_t>(path));
        double s = 0.0;
        for (double v : W.increments) s += v;
        acc += s * s;
    }
    const double var = acc / n_paths;
    const double se = var * std::sqrt(2.0 / n_paths);
    CHECK(std::abs(var - grid.T) <= 2.5 * se + grid.T / (grid.nx + 1));
}

TEST_CASE("girsanov shift: zero, constant, inverse") {
    const SpaceTimeGrid grid{1.0, 12, 5};
    const auto W = sample_white_noise(grid, 9, 0);
    const auto zero = make_drift(grid, [](double, double) { return 0.0; });
    CHECK(girsanov_shift(W, zero).increments == W.increments);

    const double c = 1.7;
    const auto hc = make_drift(grid, [&](double, double) { return c; });
    const auto Ws = girsanov_shift(W, hc);
    const double cell = grid.dt() * grid.dx();
    for (std::size_t k = 0; k < W.increments.size(); ++k)
        CHECK(Ws.increments[k] == W.increments[k] - c * cell);

    auto neg = hc;
    for (double& v : neg.values) v = -v;
    const auto back = girsanov_shift(Ws, neg);
    for (std::size_t k = 0; k < W.increments.size(); ++k)
        CHECK(back.increments[k] == doctest::Approx(W.increments[k]).epsilon(1e-12));

    const SpaceTimeGrid other{1.0, 12, 6};
    const auto h_other = make_drift(other, [](double, double) { return 1.0; });
    CHECK_THROWS_AS(girsanov_shift(W, h_other), std::invalid_argument);
}

TEST_CASE("shift consistency: cumulative sums differ by the drift integral") {
    const SpaceTimeGrid grid{1.0, 20, 9};
    const auto W = sample_white_noise(grid, 21, 2);
    const auto h = make_drift(grid, [](double t, double x) { return std::sin(3 * t) + x; });
    const auto Ws = girsanov_shift(W, h);
    const double cell = grid.dt() * grid.dx();
    double cw = 0.0, cs = 0.0, ch = 0.0;
    for (int n = 0; n < grid.nt; ++n) {
        for (int i = 0; i < grid.nx; ++i) {
            cw += W.at(n, i);
            cs += Ws.at(n, i);
            ch += h.at(n, i) * cell;
            CHECK(cs == doctest::Approx(cw - ch).epsilon(1e-12));
        }
    }
}

TEST_CASE("log density: zero drift, martingale mean, Gaussian mean") {
    const SpaceTimeGrid grid{1.0, 16, 7};
    const auto zero = make_drift(grid, [](double, double) { return 0.0; });
    const auto W0 = sample_white_noise(grid, 1, 0);
    CHECK(girsanov_log_density(W0, zero) == 0.0);

    const auto h = make_drift(grid, [](double, double) { return 1.0; });
    const double quad = [&] {
        double q = 0.0;
        for (double v : h.values) q += v * v;
        return q * grid.dt() * grid.dx();
    }();
    const int n_paths = 20000;
    double mean_m = 0.0, mean_log = 0.0, sq_m = 0.0;
    for (int path = 0; path < n_paths; ++path) {
        const auto W = sample_white_noise(grid, 77, static_cast<std::uint64_t>(path));
        const double ld = girsanov_log_density(W, h);
        CHECK(std::exp(ld) > 0.0);
        mean_m += std::exp(ld);
        mean_log += ld;
        sq_m += std::exp(2.0 * ld);
    }
    mean_m /= n_paths;
    mean_log /= n_paths;
    const double se_m = std::sqrt((sq_m / n_paths - mean_m * mean_m) / n_paths);
    CHECK(std::abs(mean_m - 1.0) <= 2.5 * se_m);
    // E log M_T = -quad/2; se of the mean is sqrt(quad/n)
    CHECK(std::abs(mean_log + 0.5 * quad) <= 2.5 * std::sqrt(quad / n_paths));
}

TEST_CASE("relative entropy: closed forms and scaling") {
    const SpaceTimeGrid grid{2.0, 32, 63};
    const auto zero = make_drift(grid, [](double, double) { return 0.0; });
    CHECK(relative_entropy(zero) == 0.0);

    const auto one = make_drift(grid, [](double, double) { return 1.0; });
    const double expected = 0.5 * grid.T * grid.nx / (grid.nx + 1);
    CHECK(relative_entropy(one) == doctest::Approx(expected).epsilon(1e-14));

    auto twice = one;
    for (double& v : twice.values) v *= 2.0;
    CHECK(relative_entropy(twice) == 4.0 * relative_entropy(one));

    // nonnegative, zero only for the zero drift
    const auto h = make_drift(grid, [](double t, double x) { return t - x; });
    CHECK(relative_entropy(h) > 0.0);

    std::vector<DriftField> ensemble{one, twice};
    CHECK(relative_entropy(std::span<const DriftField>(ensemble)) ==
          doctest::Approx(2.5 * expected).epsilon(1e-14));
    CHECK_THROWS_AS(relative_entropy(std::span<const DriftField>{}), std::invalid_argument);
}

TEST_CASE("binary round trip for noise and fields") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "spdelab_io_test";
    fs::create_directories(dir);
    const SpaceTimeGrid grid{1.5, 10, 6};
    const auto W = sample_white_noise(grid, 123, 45);
    const auto wpath = (dir / "w.bin").string();
    save_noise(W, wpath);
    const auto W2 = load_noise(wpath);
    CHECK(W2.grid == grid);
    CHECK(W2.seed == 123);
    CHECK(W2.path_index == 45);
    CHECK(W2.increments == W.increments);

    RandomField f(grid);
    for (std::size_t c = 0; c < f.values.size(); ++c) f.values[c] = 0.01 * static_cast<double>(c);
    const auto fpath = (dir / "f.bin").string();
    save_field_binary(f, fpath);
    const auto f2 = load_field_binary(fpath);
    CHECK(f2.grid == grid);
    CHECK(f2.values == f.values);

    // a noise file is not a field file (row count differs)
    CHECK_THROWS(load_field_binary(wpath));
    fs::remove_all(dir);
}

TEST_CASE("coarsening aggregates nested cells exactly") {
    const SpaceTimeGrid fine{1.0, 8, 9};  // (nx+1) = 10 = 2 * 5
    WhiteNoiseSample W;
    W.grid = fine;
    W.seed = 7;
    W.path_index = 0;
    W.increments.resize(static_cast<std::size_t>(fine.nt) * fine.nx);
    for (std::size_t c = 0; c < W.increments.size(); ++c)
        W.increments[c] = static_cast<double>(c % 13) - 6.0;

    const auto C = coarsen_noise(W, 2, 2);
    CHECK(C.grid.nt == 4);
    CHECK(C.grid.nx == 4);
    // coarse cell (n=0, i=0) = fine rows 0..1, fine cols 0..1
    const double expect = W.at(0, 0) + W.at(0, 1) + W.at(1, 0) + W.at(1, 1);
    CHECK(C.at(0, 0) == expect);
    // coarse node i sits at fine node 2i+1
    CHECK(C.grid.node(0) == doctest::Approx(fine.node(1)));

    CHECK_THROWS_AS(coarsen_noise(W, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(coarsen_noise(W, 2, 4), std::invalid_argument);
}

TEST_CASE("coarsened noise keeps the white-noise variance") {
    const SpaceTimeGrid fine{1.0, 16, 19};
    const int n_paths = 4000;
    double acc = 0.0;
    for (int path = 0; path < n_paths; ++path) {
        const auto C = coarsen_noise(sample_white_noise(fine, 3, static_cast<std::uint64_t>(path)),
                                     4, 2);
        acc += C.at(1, 3) * C.at(1, 3);
    }
    const double var = acc / n_paths;
    const SpaceTimeGrid coarse{1.0, 4, 9};
    CHECK(var == doctest::Approx(coarse.dt() * coarse.dx()).epsilon(0.08));
}
