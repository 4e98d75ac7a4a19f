// test_correlation.cpp — regression-theorem correlations and their transform

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flr4/correlation.hpp"
#include "flr4/error.hpp"
#include "flr4/steady_state.hpp"
#include "flr4/sweeps.hpp"
#include "oracles.hpp"

#include <numbers>

using namespace flr4;

namespace {

// B_k as explicit 4×4 matrices: the operator whose expectation is ψ_k.
Mat4 observable(int k)
{
    static constexpr int rows[6] = {1, 2, 3, 1, 1, 2};
    static constexpr int cols[6] = {2, 3, 4, 3, 4, 4};
    if (k < 6) return oracle::flip(cols[k], rows[k]); // ⟨|c⟩⟨r|⟩ = ρ_rc
    if (k < 9) return oracle::flip(k - 4, k - 4);
    return oracle::flip(rows[k - 9], cols[k - 9]);
}

} // namespace

TEST_CASE("full-mode initial values equal Tr(rho B_k A) computed with matrices")
{
    for (auto omega : {std::array<double, 3>{7.0, 4.0, 1.0}, std::array<double, 3>{3.0, 9.0, 2.0}}) {
        SystemParams p = SystemParams::figure_rates(omega);
        p.delta = {0.7, -1.1, 2.3};
        const StateVector s = steady_state(build_liouvillian(p));
        const Mat4 rho = s.density_matrix();
        for (int i = 1; i <= 3; ++i) {
            const Vec15 u = correlation_initial(s, i, CorrelationMode::Full);
            const Mat4 lowering = oracle::flip(i, i + 1);
            for (int k = 0; k < kStateDim; ++k) {
                const cd expected = (rho * observable(k) * lowering).trace();
                CHECK(std::abs(u(k) - expected) <= 1e-15);
            }
            // A_{i+1,i} A_{i,i+1} = A_{i+1,i+1}
            CHECK(u(i - 1) == s.psi()(i + 5));
            const Vec15 t = correlation_initial(s, i, CorrelationMode::Truncated);
            CHECK(t(i - 1) == s.psi()(i + 5));
            CHECK(t.cwiseAbs().sum() == std::abs(s.psi()(i + 5)));
        }
    }
}

TEST_CASE("full mode starts at the upper-level population")
{
    const SystemParams p = SystemParams::figure_rates({7.0, 4.0, 1.0});
    const StateVector s = steady_state(build_liouvillian(p));
    const std::vector<double> tau{0.0, 0.01, 0.02};
    for (int i = 1; i <= 3; ++i) {
        const auto c = correlation(p, i, tau, CorrelationMode::Full);
        CHECK(std::abs(c.g[0].imag()) <= 1e-10);
        CHECK(c.g[0].real() == doctest::Approx(s.population(i + 1)).epsilon(1e-14));
        CHECK(c.g[0].real() >= 0.0);
        CHECK(c.g[0].real() <= 1.0);
    }
}

TEST_CASE("truncated and full coincide in the two-level limit")
{
    const SystemParams p = SystemParams::figure_rates({7.0, 0.0, 0.0});
    const auto tau = linspace(0.0, 5.0, 501);
    const auto a = correlation(p, 1, tau, CorrelationMode::Truncated);
    const auto b = correlation(p, 1, tau, CorrelationMode::Full);
    for (std::size_t k = 0; k < tau.size(); ++k) CHECK(std::abs(a.g[k] - b.g[k]) <= 1e-14);
}

TEST_CASE("correlation relaxes to the coherent value")
{
    const SystemParams p = SystemParams::figure_rates({7.0, 4.0, 1.0});
    const StateVector s = steady_state(build_liouvillian(p));
    const auto tau = linspace(0.0, 50.0, 5001);
    const auto c = correlation(p, 3, tau, CorrelationMode::Truncated);
    CHECK(c.asymptote.real() == doctest::Approx(std::norm(s.psi()(2))).epsilon(1e-14));
    CHECK(std::abs(c.g.back() - c.asymptote) <= 1e-6);
}

TEST_CASE("flat correlation transforms to zero")
{
    CorrelationSeries c;
    c.tau = linspace(0.0, 50.0, 5001);
    c.asymptote = cd{0.3, 0.1};
    c.g.assign(c.tau.size(), c.asymptote);
    const auto s = transform_spectrum(c, {-20.0, 0.0, 3.0});
    for (double v : s.s) CHECK(v == 0.0);
}

TEST_CASE("transform of a damped exponential matches its Laplace transform")
{
    // g(τ) − g∞ = e^{−(a + ib)τ} ⇒ S(ν) = Re 1/(a + i(b + ν)) up to quadrature error
    const double a = 1.5, b = 4.0;
    CorrelationSeries c;
    const std::vector<double> nu = linspace(-30.0, 30.0, 61);
    c.tau = default_tau_grid(nu, 30.0);
    for (double t : c.tau) c.g.push_back(std::exp(cd{-a, -b} * t));
    const auto s = transform_spectrum(c, nu);
    for (std::size_t k = 0; k < nu.size(); ++k) {
        const double exact = (1.0 / cd{a, b + nu[k]}).real();
        CHECK(std::abs(s.s[k] - exact) <= 1e-4);
    }
}

TEST_CASE("quadrature step and horizon are enforced")
{
    const std::vector<double> nu{-100.0, 100.0};
    CHECK(max_quadrature_step(nu) == doctest::Approx(std::numbers::pi / 1000.0));
    CHECK(max_quadrature_step({0.5}) == 1e-2);
    const auto tau = default_tau_grid(nu);
    CHECK(tau.front() == 0.0);
    CHECK(tau.back() == 50.0);
    CHECK(tau[1] <= max_quadrature_step(nu));

    const SystemParams p = SystemParams::figure_rates({7.0, 4.0, 1.0});
    const auto short_series = correlation(p, 1, linspace(0.0, 2.0, 201), CorrelationMode::Truncated);
    try {
        transform_spectrum(short_series, {1.0});
        FAIL("expected HorizonTooShort");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::HorizonTooShort);
    }

    const auto coarse = correlation(p, 1, linspace(0.0, 50.0, 1001), CorrelationMode::Truncated);
    try {
        transform_spectrum(coarse, {100.0});
        FAIL("expected InvalidGrid");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidGrid);
    }
    CHECK_THROWS_AS(correlation(p, 4, tau, CorrelationMode::Full), Error);
    CHECK_THROWS_AS(correlation(p, 1, {0.1, 0.2}, CorrelationMode::Full), Error);
}

TEST_CASE("time-domain spectrum agrees with the resolvent form at (7,4,1)")
{
    const SystemParams p = SystemParams::figure_rates({7.0, 4.0, 1.0});
    const auto nu = linspace(-25.0, 25.0, 201);
    const auto td = spectrum_timedomain(p, nu);
    const auto rs = spectrum_consistent(p, nu);
    CHECK(td.method == SpectrumMethod::TimeDomain);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < nu.size(); ++k) CHECK(std::abs(td.s[i][k] - rs.s[i][k]) <= 1e-3);
    }
    CHECK(td.coherent_weight == rs.coherent_weight);
}

TEST_CASE("full-mode two-level spectrum has Mollow sidebands at 2 Omega")
{
    const SystemParams p = SystemParams::figure_rates({20.0, 0.0, 0.0});
    const auto nu = linspace(-60.0, 60.0, 1201);
    const auto tau = default_tau_grid(nu);
    const auto s = transform_spectrum(correlation(p, 1, tau, CorrelationMode::Full), nu).s;
    std::vector<std::size_t> maxima;
    for (std::size_t k = 1; k + 1 < nu.size(); ++k) {
        if (s[k] > s[k - 1] && s[k] > s[k + 1] && s[k] > 1e-3) maxima.push_back(k);
    }
    REQUIRE(maxima.size() == 3);
    CHECK(std::abs(nu[maxima[0]] + 40.0) <= 2.0);
    CHECK(std::abs(nu[maxima[1]]) <= 0.1);
    CHECK(std::abs(nu[maxima[2]] - 40.0) <= 2.0);
}
