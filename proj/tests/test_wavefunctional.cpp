#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "borncount/refinement.hpp"
#include "borncount/scenarios.hpp"
#include "borncount/wavefunctional.hpp"

using namespace borncount;

TEST_SUITE("wavefunctional") {

TEST_CASE("config spaces enumerate V^S cells with product weights") {
    const FieldConfigSpace s23 = build_config_space(2, 3, 0.0, 1.0);
    CHECK(s23.grid.cell_count() == 9);
    CHECK(s23.grid.dim == 2);

    const FieldConfigSpace s12 = build_config_space(1, 2, -1.0, 1.0);
    REQUIRE(s12.grid.cell_count() == 2);
    CHECK(s12.grid.center1(0) == -0.5);
    CHECK(s12.grid.center1(1) == 0.5);
    CHECK(s12.grid.weights[0] == 1.0);
    CHECK(s12.grid.weights[1] == 1.0);

    const FieldConfigSpace s34 = build_config_space(3, 4, -2.0, 2.0);
    CHECK(s34.grid.cell_count() == 64);
    CHECK(s34.grid.total_measure == doctest::Approx(64.0).epsilon(1e-12));
    CHECK_NOTHROW(validate(s34.grid));

    CHECK_THROWS_AS(build_config_space(30, 4, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_config_space(0, 4, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_config_space(2, 1, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("configurations are in lexicographic site order") {
    const FieldConfigSpace space = build_config_space(2, 3, 0.0, 3.0);
    // last site varies fastest: (.5,.5),(.5,1.5),(.5,2.5),(1.5,.5),...
    CHECK(space.grid.center(0)[0] == 0.5);
    CHECK(space.grid.center(0)[1] == 0.5);
    CHECK(space.grid.center(1)[0] == 0.5);
    CHECK(space.grid.center(1)[1] == 1.5);
    CHECK(space.grid.center(3)[0] == 1.5);
    CHECK(space.grid.center(3)[1] == 0.5);
}

TEST_CASE("density/phase map: real states, global phases, probability total") {
    const FieldConfigSpace space = build_config_space(2, 8, -1.0, 1.0);
    Ket real_pos{space.grid.id, std::vector<cplx>(64)};
    for (std::size_t c = 0; c < 64; ++c)
        real_pos.amplitudes[c] = {0.1 + 0.01 * static_cast<double>(c), 0.0};
    real_pos = normalized(space.grid, real_pos);
    const DensityPhaseMap flat = emit_density_phase_map(space, real_pos);
    REQUIRE(flat.rows() == 64);
    for (double t : flat.theta) CHECK(t == 0.0);

    Ket rotated = real_pos;
    const cplx phase = std::exp(cplx{0.0, std::numbers::pi / 4});
    for (cplx& z : rotated.amplitudes) z *= phase;
    const DensityPhaseMap turned = emit_density_phase_map(space, rotated);
    for (std::size_t c = 0; c < 64; ++c) {
        CHECK(turned.theta[c] ==
              doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));
        CHECK(turned.r[c] == doctest::Approx(flat.r[c]).epsilon(1e-14));
    }

    const Ket Psi = random_ket(40, space.grid, 0);
    const DensityPhaseMap map = emit_density_phase_map(space, Psi);
    double total = 0.0;
    for (double p : map.prob_mass) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

    Ket big = Psi;
    for (cplx& z : big.amplitudes) z *= 1.5;
    CHECK_THROWS_AS(emit_density_phase_map(space, big), std::invalid_argument);
}

TEST_CASE("gauge absorption leaves r and prob_mass columns bitwise unchanged") {
    const FieldConfigSpace space = build_config_space(2, 16, -1.0, 1.0);
    const Ket Psi = random_ket(91, space.grid, 1);
    const DensityPhaseMap before = emit_density_phase_map(space, Psi);
    auto [absorbed, gauge] = gauge_absorb(Psi);
    const DensityPhaseMap after = emit_density_phase_map(space, absorbed);
    CHECK(after.r == before.r);
    CHECK(after.prob_mass == before.prob_mass);
    for (double t : after.theta) CHECK(t == 0.0);
}

TEST_CASE("refinement machinery applies unchanged to a field state") {
    const FieldConfigSpace space = build_config_space(2, 16, -1.0, 1.0);
    const Ket Psi = random_ket(8, space.grid, 0);
    const MacrostatePartition signs = site_sign_partition(space, 0);
    const int depth = std::min(max_safe_depth(space.grid, Psi), 6);
    const RefinementSequence seq =
        build_refinement(space.grid, Psi, signs, depth);
    const ConvergenceReport report = convergence_study(seq);
    CHECK(report.all_within_bound);
    for (const ConvergenceRow& row : report.rows)
        if (row.n == depth)
            CHECK(row.abs_error <= 2.0 * std::exp2(-depth) +
                                       std::exp2(depth) * seq.eps_grid);
}

TEST_CASE("site sign partition splits by the chosen site") {
    const FieldConfigSpace space = build_config_space(2, 4, -1.0, 1.0);
    const MacrostatePartition p0 = site_sign_partition(space, 0);
    const MacrostatePartition p1 = site_sign_partition(space, 1);
    for (std::uint32_t c = 0; c < space.grid.cell_count(); ++c) {
        const auto center = space.grid.center(c);
        CHECK(p0.label_names[p0.cell_labels[c]] == (center[0] < 0 ? "neg" : "pos"));
        CHECK(p1.label_names[p1.cell_labels[c]] == (center[1] < 0 ? "neg" : "pos"));
    }
    CHECK_THROWS_AS(site_sign_partition(space, 2), std::invalid_argument);
}

}  // TEST_SUITE
