#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "holistic/model.hpp"

namespace holistic {

/// Discrete field on a periodic grid.
struct GridState {
    std::vector<double> u;
    double h = 1.0;
    double t = 0.0;
};

struct Trajectory {
    std::vector<GridState> samples;
};

struct MomentSample {
    double t = 0;
    double mass = 0;
    double mean_x = 0;   // h * mean grid index relative to the release point
    double var_x = 0;    // h^2 * index variance
    bool wrap_flagged = false;
};

struct MomentReport {
    std::vector<MomentSample> rows;
    bool wrap_contaminated = false;
};

/// Raised when a run blows up; carries the offending step.
struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& msg, long step)
        : std::runtime_error(msg), step_index(step) {}
    long step_index;
};

namespace detail {

inline void apply_taps(const std::map<int, double>& taps, const std::vector<double>& u,
                       std::vector<double>& du) {
    const long n = (long)u.size();
    std::fill(du.begin(), du.end(), 0.0);
    for (const auto& [r, c] : taps) {
        if (c == 0.0) continue;
        const long shift = ((r % n) + n) % n;
        for (long j = 0; j < n; ++j) {
            long i = j + shift;
            if (i >= n) i -= n;
            du[j] += c * u[i];
        }
    }
}

inline double max_abs_symbol(const std::map<int, double>& taps, int samples = 256) {
    double m = 0;
    for (int i = 0; i < samples; ++i) {
        const double theta = -M_PI + 2 * M_PI * i / samples;
        double re = 0, im = 0;
        for (const auto& [r, c] : taps) {
            re += c * std::cos(r * theta);
            im += c * std::sin(r * theta);
        }
        m = std::max(m, std::hypot(re, im));
    }
    return m;
}

}  // namespace detail

struct IntegrateOptions {
    double dt = 0.0;        // <= 0: automatic, 0.4 / max_theta |lambda(theta)|
    int sample_count = 0;   // number of interior sample times; 0: final state only
    bool strict_dt = false; // reject a dt above the estimated stability limit
};

/// Method-of-lines integration of du/dt = model(u) with classic fourth-order
/// Runge-Kutta at fixed step on the periodic grid. Deterministic; aborts with
/// the step index if the state stops being finite.
inline Trajectory integrate(const ModelSeries& model, double gamma, double eps,
                            const GridState& initial, double T, IntegrateOptions opt = {}) {
    if (initial.u.empty()) throw std::invalid_argument("integrate: empty grid");
    const std::map<int, double> taps = model.numeric_taps(gamma, eps, initial.h);
    if ((int)initial.u.size() < (int)taps.size())
        throw std::invalid_argument("integrate: grid shorter than the stencil width");

    const double lam = detail::max_abs_symbol(taps);
    double dt = opt.dt;
    if (dt <= 0) dt = lam > 0 ? 0.4 / lam : T;
    // RK4's stability interval along the negative real axis is about 2.78/|lambda|
    if (opt.strict_dt && lam > 0 && dt > 2.78 / lam) {
        std::ostringstream msg;
        msg << "integrate: dt = " << dt << " above the estimated stability limit "
            << 2.78 / lam;
        throw std::invalid_argument(msg.str());
    }

    const long nsteps = std::max(1L, (long)std::ceil(T / dt - 1e-12));
    dt = T / (double)nsteps;  // land exactly on T

    std::vector<long> sample_steps;
    for (int s = 1; s <= opt.sample_count; ++s)
        sample_steps.push_back((long)std::llround((double)nsteps * s / opt.sample_count));

    Trajectory traj;
    GridState state = initial;
    traj.samples.push_back(state);

    const std::size_t n = state.u.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    std::size_t next_sample = 0;
    for (long step = 1; step <= nsteps; ++step) {
        detail::apply_taps(taps, state.u, k1);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = state.u[j] + 0.5 * dt * k1[j];
        detail::apply_taps(taps, tmp, k2);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = state.u[j] + 0.5 * dt * k2[j];
        detail::apply_taps(taps, tmp, k3);
        for (std::size_t j = 0; j < n; ++j) tmp[j] = state.u[j] + dt * k3[j];
        detail::apply_taps(taps, tmp, k4);
        for (std::size_t j = 0; j < n; ++j)
            state.u[j] += dt / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        state.t = initial.t + step * dt;

        for (double v : state.u)
            if (!std::isfinite(v))
                throw IntegrationError("integrate: state not finite", step);

        while (next_sample < sample_steps.size() && sample_steps[next_sample] == step) {
            traj.samples.push_back(state);
            ++next_sample;
        }
    }
    if (traj.samples.back().t != state.t) traj.samples.push_back(state);
    return traj;
}

/// Point-release initial state on a periodic domain sized to hold the
/// expected drift plus twelve standard deviations of the expected spread
/// (the absolute first-moment rate bounds how fast any signed tail can
/// travel, which the variance alone does not for upwind stencils). The
/// release sits at the centre index, size/2.
inline GridState point_release_state(const ModelSeries& model, double gamma, double eps,
                                     double h, double T) {
    if (h <= 0) throw std::invalid_argument("point_release_state: h must be positive");
    double drift_rate = 0, var_rate = 0, spread_rate = 0;
    int support = 1;
    for (const auto& [r, c] : model.numeric_taps(gamma, eps, h)) {
        drift_rate -= r * c;
        var_rate += r * r * c;
        spread_rate += std::abs(r * c);
        support = std::max(support, std::abs(r));
    }
    const double half = std::ceil(std::abs(drift_rate) * T +
                                  12.0 * std::sqrt(std::max(var_rate * T, 1.0)) +
                                  2.0 * spread_rate * T + 2.0 * support + 8.0);
    GridState init;
    init.u.assign(2 * (std::size_t)half + 1, 0.0);
    init.u[(std::size_t)half] = 1.0;
    init.h = h;
    return init;
}

/// Point release experiment: the discrete mean and variance of the evolving
/// profile at the sampled times (in x units, relative to the release point).
/// Mass reaching the domain edge flags the report.
inline MomentReport point_release_moments(const ModelSeries& model, double gamma, double eps,
                                          double h, double T, double dt = 0.0,
                                          int sample_count = 10) {
    const GridState init = point_release_state(model, gamma, eps, h, T);
    const long n = (long)init.u.size();
    const long j0 = n / 2;

    IntegrateOptions opt;
    opt.dt = dt;
    opt.sample_count = sample_count;
    const Trajectory traj = integrate(model, gamma, eps, init, T, opt);

    MomentReport report;
    for (std::size_t s = 1; s < traj.samples.size(); ++s) {
        const GridState& g = traj.samples[s];
        double mass = 0, m1 = 0, m2 = 0, edge = 0;
        for (long j = 0; j < n; ++j) {
            const double v = g.u[(std::size_t)j];
            const double d = (double)(j - j0);
            mass += v;
            m1 += d * v;
            m2 += d * d * v;
            if (j < 3 || j >= n - 3) edge += std::abs(v);
        }
        MomentSample row;
        row.t = g.t;
        row.mass = mass;
        const double mean_j = m1 / mass;
        row.mean_x = h * mean_j;
        row.var_x = h * h * (m2 / mass - mean_j * mean_j);
        row.wrap_flagged = edge > 1e-12;
        report.wrap_contaminated = report.wrap_contaminated || row.wrap_flagged;
        report.rows.push_back(row);
    }
    return report;
}

/// Maximum over sampled theta in [-pi, pi] of Re lambda(theta) for the model's
/// combined stencil at the given parameters; <= 0 means linearly stable.
inline double stability_max_growth(const ModelSeries& model, double gamma, double eps, double h,
                                   int theta_samples = 256) {
    if (theta_samples < 64)
        throw std::invalid_argument("stability_max_growth: need at least 64 theta samples");
    const std::map<int, double> taps = model.numeric_taps(gamma, eps, h);
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < theta_samples; ++i) {
        const double theta = -M_PI + 2 * M_PI * i / theta_samples;
        double re = 0;
        for (const auto& [r, c] : taps) re += c * std::cos(r * theta);
        m = std::max(m, re);
    }
    return m;
}

}  // namespace holistic
