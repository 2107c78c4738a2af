// Acceptance suite: runs the contract checks one by one and prints a single
// PASS/FAIL line each. Invoke with --criterion N for one of them (the ctest
// registration does), or with no arguments for the whole list. The exit code
// is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "holistic/holistic.hpp"

using namespace holistic;
namespace fs = std::filesystem;

namespace {

struct Checker {
    bool ok = true;
    std::string first_failure;
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: basis polynomials -----------------------------------------

bool criterion_basis_polynomials(Checker& c) {
    const auto t0 = std::chrono::steady_clock::now();
    XiPoly prev_p, prev_q(Rational(1));
    for (int k = 1; k <= 6; ++k) {
        const auto [p, q] = basis_polynomials(k);
        c.expect(apply_xi_operator(p, XiOp::delta2) == prev_p, "delta^2 p_k = p_{k-1}");
        c.expect(apply_xi_operator(q, XiOp::delta2) == prev_q, "delta^2 q_k = q_{k-1}");
        c.expect(apply_xi_operator(p, XiOp::mu_delta) == prev_q, "mu delta p_k = q_{k-1}");
        c.expect(p.eval(Rational(k)) == Rational(1), "p_k(+k) = +1");
        c.expect(p.eval(Rational(-k)) == Rational(-1), "p_k(-k) = -1");
        c.expect(q.eval(Rational(k)) == Rational(1, 2), "q_k(+k) = 1/2");
        c.expect(q.eval(Rational(-k)) == Rational(1, 2), "q_k(-k) = 1/2");
        for (int m = -k + 1; m <= k - 1; ++m) {
            c.expect(p.eval(Rational(m)).is_zero(), "p_k zero at interior integers");
            c.expect(q.eval(Rational(m)).is_zero(), "q_k zero at interior integers");
        }
        prev_p = p;
        prev_q = q;
    }
    c.expect(seconds_since(t0) < 1.0, "runtime under one second");
    return c.ok;
}

// ---- criteria 2/3: model reproduction ----------------------------------------

const std::vector<Rational> kNu1 = {Rational(1), Rational(1, 12), Rational(-1, 720),
                                    Rational(1, 30240), Rational(-1, 1209600)};
const std::vector<Rational> kNu2 = {Rational(1, 12), Rational(1, 30), Rational(-1, 5040),
                                    Rational(-1, 151200), Rational(1, 1900800)};
const std::vector<Rational> kKappa2 = {Rational(1, 6), Rational(1, 90), Rational(-1, 2520),
                                       Rational(1, 75600), Rational(-1, 2395008)};

bool criterion_nu1_series(Checker& c) {
    const auto hm = construct_iterative(PdeSpec::advection_diffusion(), 2, 10);
    const ExtractedCoefficients ex = extract_coefficients(hm.model, "l2-e10");
    c.expect(ex.nu1.coeffs == kNu1, "nu1 series exact");
    return c.ok;
}

bool criterion_l3_series(Checker& c) {
    const auto hm = construct_iterative(PdeSpec::advection_diffusion(), 3, 10);
    const ExtractedCoefficients ex = extract_coefficients(hm.model, "l3-e10");
    c.expect(ex.nu2.coeffs == kNu2, "nu2 series exact");
    c.expect(ex.kappa2.coeffs == kKappa2, "kappa2 series exact");
    // gamma^1 + gamma^2 delta^2 cancellation at (eps h)^{2,4,6,8}
    for (const auto& [e, s] : hm.model.at_gamma_one()) {
        const auto dec = decompose_centred(s);
        const auto it = dec.even.find(1);
        const HCoeff d2c = it == dec.even.end() ? HCoeff() : it->second;
        if (e == 0)
            c.expect(d2c == HCoeff(Rational(1), -2), "bare delta^2/h^2 at eps^0");
        else
            c.expect(d2c.is_zero(), "delta^2 corrections cancel at gamma = 1");
    }
    // the printed gamma^1 intermediate in the source shows eps^2 h^2/720 where
    // the construction gives eps^4 h^4/720; residuals decide, so note it:
    std::cout << "  note: gamma^1 delta^2 series from the construction is the nu1 series "
                 "(the eps^4 h^4 term carries 1/720); residual_check = 0 is decisive\n";
    return c.ok;
}

bool criterion_residuals(Checker& c) {
    const PdeSpec ad = PdeSpec::advection_diffusion();
    const auto l2 = construct_iterative(ad, 2, 10);
    c.expect(residual_check(l2.field, l2.model, ad).all_zero(),
             "first-order model residuals all zero");
    const auto l3 = construct_iterative(ad, 3, 10);
    c.expect(residual_check(l3.field, l3.model, ad).all_zero(),
             "second-order model residuals all zero");
    return c.ok;
}

// ---- criterion 5: Theorem-1 oracle -------------------------------------------

bool criterion_even_oracle(Checker& c) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(193);
    std::uniform_int_distribution<int> den(1, 5);
    auto coeff = [&](bool nonzero) {
        const int d = den(rng);
        std::uniform_int_distribution<int> num(-2 * d, 2 * d);
        int n = num(rng);
        while (nonzero && n == 0) n = num(rng);
        return Rational(n, d);
    };
    for (int trial = 0; trial < 20; ++trial) {
        const int ell = 2 + trial % 3;
        std::vector<HCoeff> a = {HCoeff(coeff(false)), HCoeff(coeff(true)),
                                 HCoeff(coeff(false))};
        while ((int)a.size() < ell) a.push_back(HCoeff());
        const OperatorSeries op(OperatorKind::even, a);

        const auto cf = even_model(op, ell);
        for (int k = 0; k < ell; ++k)
            c.expect(cf.model.at(k, 0) == op.a(k) * grid_operator(GridOp::delta, 2 * k),
                     "g^k = a_k delta^{2k}");
        c.expect(residual_check(cf.field, cf.model, PdeSpec::from_series(op)).all_zero(),
                 "even-model residuals zero");

        const int scan = 12;
        const DiffOpSeries diff = equivalent_pde(cf.model, scan) -
                                  pde_target(PdeSpec::from_series(op), scan);
        for (const auto& [key, val] : diff.terms)
            c.expect(key.first >= 2 * ell, "equivalent pde matches to O(d^{2 ell})");
    }
    c.expect(seconds_since(t0) < 10.0, "runtime under ten seconds");
    return c.ok;
}

// ---- criterion 6: consistency ------------------------------------------------

bool criterion_consistency(Checker& c) {
    const auto l2 = construct_iterative(PdeSpec::advection_diffusion(), 2, 10);
    std::map<std::pair<int, int>, HCoeff> cons;
    cons[{1, 1}] = HCoeff(Rational(-1));
    cons[{2, 0}] = HCoeff(Rational(1));
    cons[{2, 2}] = HCoeff(Rational(1, 12), 2);
    cons[{3, 1}] = HCoeff(Rational(-1, 6), 2);
    cons[{4, 0}] = HCoeff(Rational(1, 12), 2);
    c.expect(equivalent_pde(l2.model, 2).terms == cons,
             "first-order equivalent pde through h^2");

    const auto l3 = construct_iterative(PdeSpec::advection_diffusion(), 3, 10);
    std::map<std::pair<int, int>, HCoeff> conss;
    conss[{1, 1}] = HCoeff(Rational(-1));
    conss[{2, 0}] = HCoeff(Rational(1));
    conss[{3, 3}] = HCoeff(Rational(1, 90), 4);
    conss[{4, 2}] = HCoeff(Rational(-1, 30), 4);
    conss[{5, 1}] = HCoeff(Rational(1, 30), 4);
    conss[{6, 0}] = HCoeff(Rational(-1, 90), 4);
    c.expect(equivalent_pde(l3.model, 4).terms == conss,
             "second-order equivalent pde through h^4");
    return c.ok;
}

// ---- criterion 7: closed form ------------------------------------------------

bool criterion_closed_form(Checker& c) {
    // Bernoulli-number oracle for the Taylor series of (z/2) coth(z/2)
    std::vector<Rational> B(9);
    B[0] = Rational(1);
    for (int m = 1; m <= 8; ++m) {
        Rational s(0);
        for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * B[j];
        B[m] = -s / Rational(m + 1);
    }
    const auto hm = construct_iterative(PdeSpec::advection_diffusion(), 2, 10);
    const ExtractedCoefficients ex = extract_coefficients(hm.model);
    for (int n = 0; n <= 4; ++n)
        c.expect(ex.nu1.coeff(n) == B[2 * n] / Rational(factorial(2 * n)),
                 "nu1 = Taylor[(z/2) coth(z/2)] exactly through z^8");

    const double accelerated = shanks(ex.nu1.partial_sums(6.0), 2).value;
    c.expect(std::abs(accelerated - 3.0) / 3.0 < 0.05,
             "Shanks-accelerated nu1(6) within 5% of z/2");
    return c.ok;
}

// ---- criterion 8: moments ----------------------------------------------------

ModelSeries fastad_model() {
    ModelSeries m(1, 2);
    m.set(0, 1, -grid_operator(GridOp::nabla, 1).shifted_h(-1));
    return m;
}

ModelSeries back_model() {
    ModelSeries m(1, 2);
    m.set(0, 1, -(grid_operator(GridOp::nabla, 1) +
                  grid_operator(GridOp::nabla, 2) * Rational(1, 2))
                     .shifted_h(-1));
    m.set(0, 0, grid_operator(GridOp::nabla, 2).shifted_h(-2));
    return m;
}

bool criterion_moments(Checker& c) {
    auto t0 = std::chrono::steady_clock::now();
    const MomentReport fast = point_release_moments(fastad_model(), 1.0, 1.0, 0.1, 1.0);
    c.expect(fast.rows.size() == 10, "ten sample times");
    for (const auto& row : fast.rows) {
        c.expect(std::abs(row.mean_x - row.t) < 1e-6, "upwind model: mean = eps t");
        c.expect(std::abs(row.var_x - 0.1 * row.t) < 1e-6,
                 "upwind model: variance = eps h t");
    }
    c.expect(seconds_since(t0) < 30.0, "upwind run under 30 s");

    t0 = std::chrono::steady_clock::now();
    const MomentReport back = point_release_moments(back_model(), 1.0, 5.0, 1.0, 2.0);
    for (const auto& row : back.rows) {
        c.expect(std::abs(row.mean_x - 5.0 * row.t) < 1e-6, "width-5 model: mean = eps t");
        c.expect(std::abs(row.var_x - 2.0 * row.t) < 1e-6, "width-5 model: variance = 2t");
    }
    c.expect(seconds_since(t0) < 30.0, "width-5 run under 30 s");
    return c.ok;
}

// ---- criterion 9: stability --------------------------------------------------

bool criterion_stability(Checker& c) {
    auto growth = [&](double z) {
        return stability_max_growth(back_model(), 1.0, z, 1.0, 2048);
    };
    // the stated crossing window
    const double g06 = growth(0.6), g07 = growth(0.7);
    // bisect wherever the sign change actually sits, as a diagnostic
    double lo = 0.5, hi = 1.5;
    while (hi - lo > 0.02) {
        const double mid = 0.5 * (lo + hi);
        (growth(mid) > 1e-12 ? lo : hi) = mid;
    }
    std::printf("  max growth at eps h = 0.6: %+.6f, at 0.7: %+.6f; measured crossing in "
                "[%.3f, %.3f]\n",
                g06, g07, lo, hi);
    c.expect(g06 > 0.0, "unstable at eps h = 0.6");
    c.expect(g07 <= 1e-12, "stable at eps h = 0.7");

    const auto hm = construct_iterative(PdeSpec::advection_diffusion(), 2, 10);
    for (double z : {0.5, 2.0, 6.0})
        c.expect(stability_max_growth(hm.model, 1.0, z, 1.0, 2048) <= 1e-12,
                 "enhanced-diffusion model stable at z = 0.5, 2, 6");
    return c.ok;
}

// ---- criterion 10: determinism -----------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool criterion_determinism(Checker& c) {
    const fs::path dir = fs::temp_directory_path() / "holistic_acceptance_10";
    fs::create_directories(dir);
    auto run_pair = [&](const std::string& args, const std::string& flag,
                        const std::string& name) {
        const fs::path a = dir / (name + "_a"), b = dir / (name + "_b");
        const std::string base = std::string(HOLISTIC_FD_BIN) + " " + args + " " + flag + " ";
        const int ra = std::system((base + a.string() + " >/dev/null 2>&1").c_str());
        const int rb = std::system((base + b.string() + " >/dev/null 2>&1").c_str());
        c.expect(ra == 0 && rb == 0, name + " invocations succeed");
        const std::string ca = slurp(a), cb = slurp(b);
        c.expect(!ca.empty() && ca == cb, name + " outputs byte-identical");
    };
    run_pair("derive --pde \"ut = -eps*ux + uxx\" --gamma 2 --eps-order 10", "--out",
             "derive");
    run_pair("equivalent --pde \"ut = -eps*ux + uxx\" --gamma 3 --eps-order 10 --max-h 4",
             "--out", "equivalent");
    run_pair("simulate --pde \"ut = -eps*ux + uxx\" --gamma 2 --eps-order 4 --eps 1 "
             "--h 0.1 --T 1",
             "--moments", "simulate");
    fs::remove_all(dir);
    return c.ok;
}

struct Criterion {
    int number;
    const char* label;
    std::function<bool(Checker&)> fn;
};

const std::vector<Criterion> kCriteria = {
    {1, "basis polynomials p_k, q_k: recurrences, boundary values, zeros (k <= 6)",
     criterion_basis_polynomials},
    {2, "first-order model reproduces the nu1 series exactly", criterion_nu1_series},
    {3, "second-order model reproduces nu2, kappa2 and the gamma = 1 cancellation",
     criterion_l3_series},
    {4, "PDE, boundary and amplitude residuals vanish identically", criterion_residuals},
    {5, "random even operators: closed-form models, residuals, equivalent PDE",
     criterion_even_oracle},
    {6, "equivalent PDEs term for term through h^2 and h^4", criterion_consistency},
    {7, "nu1 equals the (z/2) coth(z/2) Taylor series; Shanks value at z = 6",
     criterion_closed_form},
    {8, "point-release moments exact to 1e-6 for the upwind models", criterion_moments},
    {9, "stability: width-5 model crossing window, enhanced diffusion stable",
     criterion_stability},
    {10, "repeated CLI invocations are byte-identical", criterion_determinism},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--criterion" && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }
    int failures = 0;
    for (const auto& crit : kCriteria) {
        if (only != 0 && crit.number != only) continue;
        Checker c;
        bool ok = false;
        std::string err;
        try {
            ok = crit.fn(c);
        } catch (const std::exception& e) {
            err = e.what();
        }
        if (ok) {
            std::printf("criterion %2d: PASS  %s\n", crit.number, crit.label);
        } else {
            ++failures;
            std::printf("criterion %2d: FAIL  %s  [%s]\n", crit.number, crit.label,
                        err.empty() ? c.first_failure.c_str() : err.c_str());
        }
    }
    return failures;
}
