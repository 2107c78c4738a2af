#include <catch_amalgamated.hpp>

#include <cmath>

#include "holistic/iterative.hpp"
#include "holistic/simulate.hpp"

using namespace holistic;

namespace {

ModelSeries diffusion_model() {
    ModelSeries m(1, 1);
    m.set(0, 0, grid_operator(GridOp::delta, 2).shifted_h(-2));
    return m;
}

// du_j/dt = -(eps/h)(u_j - u_{j-1})
ModelSeries fastad_model() {
    ModelSeries m(1, 2);
    m.set(0, 1, -grid_operator(GridOp::nabla, 1).shifted_h(-1));
    return m;
}

// du_j/dt = -(eps/2h)(u_{j-2} - 4u_{j-1} + 3u_j) + (1/h^2)(u_{j-2} - 2u_{j-1} + u_j)
ModelSeries back_model() {
    ModelSeries m(1, 2);
    m.set(0, 1, -(grid_operator(GridOp::nabla, 1) +
                  grid_operator(GridOp::nabla, 2) * Rational(1, 2))
                     .shifted_h(-1));
    m.set(0, 0, grid_operator(GridOp::nabla, 2).shifted_h(-2));
    return m;
}

GridState gaussian_state(int n, double h, double width) {
    GridState g;
    g.h = h;
    g.u.resize(n);
    for (int j = 0; j < n; ++j) {
        const double x = (j - n / 2) * h;
        g.u[j] = std::exp(-x * x / (2 * width * width));
    }
    return g;
}

}  // namespace

TEST_CASE("diffusion conserves mass and decays") {
    const GridState init = gaussian_state(64, 0.25, 1.0);
    double mass0 = 0;
    for (double v : init.u) mass0 += v;

    IntegrateOptions opt;
    opt.sample_count = 4;
    const Trajectory traj = integrate(diffusion_model(), 1.0, 0.0, init, 2.0, opt);
    REQUIRE(traj.samples.size() >= 5);
    double peak = 2.0;
    for (const auto& g : traj.samples) {
        double mass = 0, mx = 0;
        for (double v : g.u) {
            mass += v;
            mx = std::max(mx, std::abs(v));
        }
        CHECK(std::abs(mass - mass0) < 1e-12 * mass0);
        CHECK(mx < peak + 1e-12);
        peak = mx;
    }
}

TEST_CASE("the pure-upwind model reproduces the Poisson profile") {
    // point release under -(eps/h) nabla: u_j(t) = e^{-a} a^j / j!, a = eps t / h
    const double eps = 1.0, h = 1.0, T = 5.0;
    GridState init;
    init.h = h;
    init.u.assign(81, 0.0);
    init.u[20] = 1.0;

    IntegrateOptions opt;
    opt.dt = 0.005;
    const Trajectory traj = integrate(fastad_model(), 1.0, eps, init, T, opt);
    const GridState& fin = traj.samples.back();
    const double a = eps * T / h;
    for (int j = 0; j < 40; ++j) {
        const double poisson =
            std::exp(-a + j * std::log(a) - std::lgamma(j + 1.0));
        CHECK(std::abs(fin.u[20 + j] - poisson) < 1e-8);
    }
    // non-negativity of the transported profile
    for (double v : fin.u) CHECK(v >= -1e-9);
}

TEST_CASE("point-release moments of the pure-upwind model") {
    // mu_x = eps t, sigma_x^2 = eps h t, exactly, at every sample time
    const MomentReport r = point_release_moments(fastad_model(), 1.0, 1.0, 0.1, 1.0);
    REQUIRE(r.rows.size() == 10);
    CHECK_FALSE(r.wrap_contaminated);
    for (const auto& row : r.rows) {
        CHECK(std::abs(row.mass - 1.0) < 1e-12);
        CHECK(std::abs(row.mean_x - row.t) < 1e-6);
        CHECK(std::abs(row.var_x - 0.1 * row.t) < 1e-6);
    }
}

TEST_CASE("point-release moments of the width-5 backward model") {
    // mu_x = eps t and sigma_x^2 = 2t: exactly the PDE's moments, all time
    const double eps = 5.0, h = 1.0;
    const MomentReport r = point_release_moments(back_model(), 1.0, eps, h, 2.0);
    CHECK_FALSE(r.wrap_contaminated);
    for (const auto& row : r.rows) {
        CHECK(std::abs(row.mass - 1.0) < 1e-12);
        CHECK(std::abs(row.mean_x - eps * row.t) < 1e-6);
        CHECK(std::abs(row.var_x - 2.0 * row.t) < 1e-6);
    }
}

TEST_CASE("zero-advection point release spreads with variance 2t") {
    // moment generating function oracle: G = exp[t(z - 2 + 1/z)/h^2] gives
    // variance 2t/h^2 in index units
    const MomentReport r = point_release_moments(diffusion_model(), 1.0, 0.0, 0.2, 1.0);
    for (const auto& row : r.rows) {
        CHECK(std::abs(row.mean_x) < 1e-6);
        CHECK(std::abs(row.var_x - 2.0 * row.t) < 1e-6);
    }
}

TEST_CASE("fourth-order convergence of the integrator") {
    const GridState init = gaussian_state(32, 0.5, 1.0);
    auto final_state = [&](double dt) {
        IntegrateOptions opt;
        opt.dt = dt;
        return integrate(diffusion_model(), 1.0, 0.0, init, 1.0, opt).samples.back().u;
    };
    const auto ref = final_state(0.0125);
    const auto coarse = final_state(0.1);
    const auto fine = final_state(0.05);
    double e_coarse = 0, e_fine = 0;
    for (std::size_t j = 0; j < ref.size(); ++j) {
        e_coarse = std::max(e_coarse, std::abs(coarse[j] - ref[j]));
        e_fine = std::max(e_fine, std::abs(fine[j] - ref[j]));
    }
    const double ratio = e_coarse / e_fine;
    CHECK(ratio > 12.0);
    CHECK(ratio < 22.0);
}

TEST_CASE("integration guards") {
    const GridState init = gaussian_state(32, 0.05, 0.3);
    IntegrateOptions opt;
    opt.dt = 0.1;  // far above the diffusion limit
    opt.strict_dt = true;
    CHECK_THROWS_AS(integrate(diffusion_model(), 1.0, 0.0, init, 5.0, opt),
                    std::invalid_argument);
    opt.strict_dt = false;
    try {
        integrate(diffusion_model(), 1.0, 0.0, init, 5.0, opt);
        FAIL("an unstable step size has to blow up");
    } catch (const IntegrationError& e) {
        CHECK(e.step_index >= 1);
    }
}

TEST_CASE("stability of the width-5 backward model across eps h") {
    // unstable on the low side, stable from eps h = 1 on
    // (1e-12 absorbs roundoff at the neutral theta = 0 mode)
    CHECK(stability_max_growth(back_model(), 1.0, 0.5, 1.0, 512) > 0.0);
    CHECK(stability_max_growth(back_model(), 1.0, 1.0, 1.0, 512) <= 1e-12);
    CHECK(stability_max_growth(back_model(), 1.0, 1.2, 1.0, 512) <= 1e-12);
    CHECK_THROWS_AS(stability_max_growth(back_model(), 1.0, 1.0, 1.0, 32),
                    std::invalid_argument);
}

TEST_CASE("the enhanced-diffusion model is stable at small and large eps h") {
    const auto hm = construct_iterative(PdeSpec::advection_diffusion(), 2, 10);
    for (double z : {0.5, 2.0, 6.0})
        CHECK(stability_max_growth(hm.model, 1.0, z, 1.0, 512) <= 1e-12);
}

TEST_CASE("derived models hold constants in equilibrium") {
    const auto hm = construct_iterative(PdeSpec::advection_diffusion(), 3, 10);
    for (const auto& [key, s] : hm.model.series().terms())
        CHECK(s.tap_sum().is_zero());
}
