#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "borncount/refinement.hpp"
#include "borncount/scenarios.hpp"
#include "borncount/state.hpp"

using namespace borncount;

TEST_SUITE("quantum state") {

TEST_CASE("inner product: normalization, disjoint supports, gaussian overlap") {
    const SampleGrid grid = make_uniform_grid(-8.0, 8.0, 8192);
    const Ket g0 = gaussian_ket(grid, 0.0, 1.0);
    CHECK(inner_product(grid, g0, g0).real() == doctest::Approx(1.0).epsilon(1e-10));

    Ket left{grid.id, std::vector<cplx>(grid.cell_count())};
    Ket right{grid.id, std::vector<cplx>(grid.cell_count())};
    for (std::uint32_t c = 0; c < grid.cell_count(); ++c)
        (grid.center1(c) < 0 ? left : right).amplitudes[c] = {1.0, 0.5};
    CHECK(inner_product(grid, left, right) == cplx{0.0, 0.0});

    // closed-form overlap of unit Gaussians of width 1 centered 2 apart: e^-1
    const Ket g2 = gaussian_ket(grid, 2.0, 1.0);
    CHECK(std::abs(inner_product(grid, g0, g2).real() - std::exp(-1.0)) <= 1e-4);

    const SampleGrid other = make_uniform_grid(-8.0, 8.0, 4096);
    CHECK_THROWS_AS(inner_product(grid, g0, gaussian_ket(other, 0.0, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("inner product is conjugate-symmetric on random states") {
    const SampleGrid grid = make_uniform_grid(-1.0, 1.0, 2048);
    const Ket a = random_ket(11, grid, 1);
    const Ket b = random_ket(12, grid, 1);
    const cplx ab = inner_product(grid, a, b);
    const cplx ba = inner_product(grid, b, a);
    CHECK(std::abs(ab - std::conj(ba)) <= 1e-14);
}

TEST_CASE("born probability: containment, uniform quarter, gaussian tail") {
    const SampleGrid grid = make_uniform_grid(-8.0, 8.0, 65536);
    const Ket g = gaussian_ket(grid, -4.0, 0.5);  // vanishes past x = 0
    const MacrostatePartition halves = halfline_partition(grid, 0.0);
    CHECK(born_probability(grid, g, halves, "left") ==
          doctest::Approx(1.0).epsilon(1e-10));

    const SampleGrid g4 = make_uniform_grid(0.0, 4.0, 4);
    const Ket uniform{g4.id, std::vector<cplx>(4, cplx{0.5, 0.0})};
    const MacrostatePartition p4 = make_partition(g4, {"A", "B", "B", "B"});
    CHECK(born_probability(g4, uniform, p4, "A") ==
          doctest::Approx(0.25).epsilon(1e-15));

    // standard-normal probability density: amplitude width sqrt(2)
    const Ket std_normal = gaussian_ket(grid, 0.0, std::numbers::sqrt2);
    const MacrostatePartition cut = halfline_partition(grid, 1.0);
    CHECK(std::abs(born_probability(grid, std_normal, cut, "right") -
                   0.15865525393145707) <= 1e-3);

    CHECK_THROWS_AS(born_probability(grid, g, halves, "middle"),
                    std::invalid_argument);
    Ket twice = g;
    for (cplx& z : twice.amplitudes) z *= 2.0;
    CHECK_THROWS_AS(born_probability(grid, twice, halves, "left"),
                    std::invalid_argument);
}

TEST_CASE("born probabilities are complete and pythagorean") {
    const SampleGrid grid = make_uniform_grid(-3.0, 3.0, 4096);
    const MacrostatePartition thirds = make_partition(grid, [&] {
        std::vector<std::string> labels(grid.cell_count());
        for (std::uint32_t c = 0; c < grid.cell_count(); ++c)
            labels[c] = grid.center1(c) < -1 ? "A" : grid.center1(c) < 1 ? "B" : "C";
        return labels;
    }());
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        const Ket psi = random_ket(seed, grid, 1);
        double total = 0.0, pyth = 0.0;
        for (const std::string& name : thirds.label_names) {
            total += born_probability(grid, psi, thirds, name);
            pyth += norm2(grid, project(psi, thirds, name));
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(pyth == doctest::Approx(norm2(grid, psi)).epsilon(1e-12));
    }
}

TEST_CASE("born equals the integral of the state density over the label cells") {
    // the three-densities relation, as the same floating-point sum
    const SampleGrid grid = make_uniform_grid(-2.0, 2.0, 2048);
    const Ket psi = random_ket(77, grid, 2);
    const MacrostatePartition halves = halfline_partition(grid, 0.3);
    const DensityField rho = mu_prime(grid, psi);
    for (const std::string& name : halves.label_names)
        CHECK(integrate(grid, rho, label_subset(grid, halves, name)) ==
              born_probability(grid, psi, halves, name));
}

TEST_CASE("project: idempotent, complete, orthogonal") {
    const SampleGrid grid = make_uniform_grid(-1.0, 1.0, 1024);
    const Ket psi = random_ket(9, grid, 0);
    const MacrostatePartition halves = halfline_partition(grid, 0.0);

    const Ket once = project(psi, halves, "left");
    const Ket twice = project(once, halves, "left");
    CHECK(once.amplitudes == twice.amplitudes);

    Ket sum{grid.id, std::vector<cplx>(grid.cell_count())};
    for (const std::string& name : halves.label_names) {
        const Ket part = project(psi, halves, name);
        for (std::size_t c = 0; c < sum.amplitudes.size(); ++c)
            sum.amplitudes[c] += part.amplitudes[c];
    }
    CHECK(sum.amplitudes == psi.amplitudes);

    const Ket left_only = project(psi, halves, "left");
    const Ket crossed = project(left_only, halves, "right");
    for (const cplx& z : crossed.amplitudes) CHECK(z == cplx{0.0, 0.0});

    CHECK_THROWS_AS(project(psi, halves, "up"), std::invalid_argument);
}

TEST_CASE("polar decomposition") {
    const SampleGrid grid = make_uniform_grid(0.0, 1.0, 4);
    const Ket real_pos{grid.id, {cplx{1.0, 0.0}, cplx{0.5, 0.0}, cplx{0.0, 0.0},
                                 cplx{2.0, 0.0}}};
    const PolarForm pf = polar_decompose(real_pos);
    for (double t : pf.theta) CHECK(t == 0.0);

    const Ket imag{grid.id, {cplx{0.0, 0.5}, cplx{}, cplx{}, cplx{}}};
    const PolarForm pi2 = polar_decompose(imag);
    CHECK(pi2.r[0] == 0.5);
    CHECK(pi2.theta[0] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(pi2.theta[1] == 0.0);  // canonical phase at zero amplitude

    const SampleGrid big = make_uniform_grid(-1.0, 1.0, 4096);
    const Ket psi = random_ket(31, big, 0);
    const PolarForm rp = polar_decompose(psi);
    for (std::size_t c = 0; c < psi.amplitudes.size(); ++c) {
        const cplx rebuilt = rp.r[c] * std::exp(cplx{0.0, rp.theta[c]});
        CHECK(std::abs(rebuilt - psi.amplitudes[c]) <= 1e-12);
        CHECK(rp.theta[c] > -std::numbers::pi);
        CHECK(rp.theta[c] <= std::numbers::pi);
    }
}

TEST_CASE("gauge absorption") {
    const SampleGrid grid = make_uniform_grid(-1.0, 1.0, 512);
    const Ket real_ket = gaussian_ket(grid, 0.0, 0.3);
    auto [same, id_gauge] = gauge_absorb(real_ket);
    CHECK(same.amplitudes == real_ket.amplitudes);
    for (double t : id_gauge.theta) CHECK(t == 0.0);

    Ket rotated = real_ket;
    const cplx phase = std::exp(cplx{0.0, std::numbers::pi / 3});
    for (cplx& z : rotated.amplitudes) z *= phase;
    auto [unrotated, gauge] = gauge_absorb(rotated);
    for (std::size_t c = 0; c < unrotated.amplitudes.size(); ++c) {
        if (std::abs(real_ket.amplitudes[c]) > 1e-300)
            CHECK(gauge.theta[c] ==
                  doctest::Approx(std::numbers::pi / 3).epsilon(1e-12));
        CHECK(std::abs(unrotated.amplitudes[c] - real_ket.amplitudes[c]) <= 1e-12);
        CHECK(unrotated.amplitudes[c].imag() == 0.0);
        CHECK(unrotated.amplitudes[c].real() >= 0.0);
    }

    const MacrostatePartition halves = halfline_partition(grid, 0.2);
    const Ket psi = random_ket(55, grid, 1);
    auto [absorbed, g2] = gauge_absorb(psi);
    for (const std::string& name : halves.label_names)
        CHECK(born_probability(grid, absorbed, halves, name) ==
              doctest::Approx(born_probability(grid, psi, halves, name))
                  .epsilon(1e-12));
    CHECK(argmax_label(grid, absorbed, halves) == argmax_label(grid, psi, halves));
    // per-cell moduli preserved
    for (std::size_t c = 0; c < psi.amplitudes.size(); ++c)
        CHECK(std::abs(absorbed.amplitudes[c]) == std::abs(psi.amplitudes[c]));
}

TEST_CASE("argmax label is invariant under any global phase") {
    const SampleGrid grid = make_uniform_grid(-1.0, 1.0, 1024);
    const MacrostatePartition halves = halfline_partition(grid, -0.1);
    const Ket psi = random_ket(101, grid, 1);
    const std::string best = argmax_label(grid, psi, halves);
    for (double angle : {0.4, 1.9, -2.8}) {
        Ket rotated = psi;
        const cplx phase = std::exp(cplx{0.0, angle});
        for (cplx& z : rotated.amplitudes) z *= phase;
        CHECK(argmax_label(grid, rotated, halves) == best);
    }
}

TEST_CASE("uniformized identity: both routes agree and equal the born value") {
    const SampleGrid grid = make_uniform_grid(-1.0, 1.0, 2048);
    const MacrostatePartition halves = halfline_partition(grid, 0.0);
    const Ket psi = random_ket(13, grid, 1);

    const MacrostatePartition whole =
        make_partition(grid, std::vector<std::string>(grid.cell_count(), "all"));
    auto [l1, r1] = uniformized_identity_check(grid, psi, whole, "all");
    CHECK(l1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r1 == doctest::Approx(1.0).epsilon(1e-10));

    const Ket left_state = normalized(grid, project(psi, halves, "left"));
    auto [l0, r0] = uniformized_identity_check(grid, left_state, halves, "right");
    CHECK(l0 == 0.0);
    CHECK(r0 == 0.0);

    auto [lhs, rhs] = uniformized_identity_check(grid, psi, halves, "left");
    CHECK(std::abs(lhs - rhs) <= 1e-12);
    CHECK(lhs == doctest::Approx(born_probability(grid, psi, halves, "left"))
                     .epsilon(1e-12));
}

}  // TEST_SUITE
