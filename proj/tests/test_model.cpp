// test_model.cpp — parameter validation and generator structure

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flr4/error.hpp"
#include "flr4/model.hpp"
#include "oracles.hpp"

#include <random>
#include <set>

using namespace flr4;

namespace {

ErrorCode code_of(const SystemParams& p)
{
    try {
        validate_params(p);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected validation to fail");
    return ErrorCode::IoError;
}

double involution_error(const Liouvillian& l)
{
    const Mat15 j = conjugation_involution();
    const double m_err = (j * l.m.conjugate() * j - l.m).cwiseAbs().maxCoeff();
    const double c_err = (j * l.c.conjugate() - l.c).cwiseAbs().maxCoeff();
    return std::max(m_err, c_err);
}

} // namespace

TEST_CASE("figure rates validate")
{
    const auto v = validate_params(SystemParams::figure_rates({7.0, 4.0, 1.0}));
    CHECK(v.params().gamma_level == std::array<double, 3>{6.0, 1.0, 1.0});
    CHECK(v.params().gamma_branch == std::array<double, 3>{1.0, 1.0, 0.0});
    REQUIRE(v.checks().size() == 2);
    for (const auto& c : v.checks()) {
        CHECK(c.satisfied);
        CHECK(c.residual == 0.0);
    }
}

TEST_CASE("population leak is rejected unless the system is declared open")
{
    SystemParams p;
    p.gamma_level[1] = 1.0;
    p.gamma_branch[0] = 0.5;
    CHECK(code_of(p) == ErrorCode::TraceLeak);

    p.allow_open_system = true;
    const auto v = validate_params(p);
    CHECK_FALSE(v.checks()[0].satisfied);
    CHECK_FALSE(v.checks()[0].enforced);
    CHECK(v.checks()[0].residual == doctest::Approx(0.5));

    SystemParams q;
    q.gamma_level[2] = 2.0; // Γ4 ≠ γ34 + γ24
    CHECK(code_of(q) == ErrorCode::TraceLeak);

    SystemParams tiny;
    tiny.gamma_level[2] = 1.0 + 1e-13; // inside the closure tolerance
    CHECK_NOTHROW(validate_params(tiny));
}

TEST_CASE("all-zero parameters are a valid (empty) system")
{
    SystemParams p;
    p.gamma_level = {0.0, 0.0, 0.0};
    p.gamma_branch = {0.0, 0.0, 0.0};
    p.mu = {0.0, 0.0, 0.0};
    CHECK_NOTHROW(validate_params(p));
}

TEST_CASE("negative and non-finite inputs")
{
    SystemParams p;
    p.omega[1] = -1.0;
    CHECK(code_of(p) == ErrorCode::NegativeRate);

    SystemParams q;
    q.gamma_branch[2] = -0.1;
    q.gamma_level[2] = 0.9;
    CHECK(code_of(q) == ErrorCode::NegativeRate);

    SystemParams r;
    r.mu[0] = -1.0;
    CHECK(code_of(r) == ErrorCode::NegativeRate);

    SystemParams s;
    s.delta[2] = std::numeric_limits<double>::quiet_NaN();
    CHECK(code_of(s) == ErrorCode::InvalidParameter);

    SystemParams d;
    d.delta = {-5.0, -1.0, -3.0}; // detunings may take either sign
    CHECK_NOTHROW(validate_params(d));
}

TEST_CASE("undriven generator: no source term and bare decay on the diagonal")
{
    const auto l = build_liouvillian(SystemParams::figure_rates({0.0, 0.0, 0.0}));
    CHECK(l.c.cwiseAbs().maxCoeff() == 0.0);
    CHECK(l.m(0, 0) == cd{-3.0, 0.0});   // −Γ2/2
    CHECK(l.m(1, 1) == cd{-3.5, 0.0});   // −(Γ2+Γ3)/2
    CHECK(l.m(6, 6) == cd{-6.0, 0.0});   // −Γ2
    CHECK(l.m(7, 7) == cd{-1.0, 0.0});   // −Γ3
    CHECK(l.m(8, 8) == cd{-1.0, 0.0});   // −Γ4
    // Only incoherent feeding remains off the diagonal.
    Mat15 off = l.m;
    off.diagonal().setZero();
    CHECK(off(6, 7) == cd{1.0, 0.0}); // γ23
    CHECK(off(7, 8) == cd{1.0, 0.0}); // γ34
    off(6, 7) = 0.0;
    off(7, 8) = 0.0;
    CHECK(off.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("source term sits at components 1 and 10 with magnitude Omega1")
{
    const auto l = build_liouvillian(SystemParams::figure_rates({7.0, 4.0, 1.0}));
    int nonzero = 0;
    for (int k = 0; k < kStateDim; ++k) nonzero += l.c(k) != cd{0.0, 0.0};
    CHECK(nonzero == 2);
    CHECK(std::abs(l.c(0)) == doctest::Approx(7.0));
    CHECK(l.c(9) == std::conj(l.c(0)));
    CHECK(l.c(0) == cd{0.0, 7.0});
}

TEST_CASE("conjugation symmetry at the figure-2(a) point")
{
    const auto l = build_liouvillian(SystemParams::figure_rates({7.0, 4.0, 1.0}));
    CHECK(involution_error(l) <= 1e-14);
}

TEST_CASE("generator matches the master equation built from H and jump operators")
{
    std::mt19937_64 rng(20261017);
    for (int trial = 0; trial < 50; ++trial) {
        const SystemParams p = oracle::random_params(rng);
        const auto l = build_liouvillian(p);
        const Mat4 rho = oracle::random_hermitian_trace_one(rng);
        const Vec15 psi = oracle::to_psi(rho);
        const Vec15 expected = oracle::to_psi(oracle::lindblad_rate(p, rho));
        const Vec15 actual = l.m * psi + l.c;
        const double scale = 1.0 + psi.cwiseAbs().maxCoeff() * 100.0;
        CHECK((actual - expected).cwiseAbs().maxCoeff() <= 1e-12 * scale);
    }
}

TEST_CASE("structural properties hold for random closed systems")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const SystemParams p = oracle::random_params(rng);
        const auto l = build_liouvillian(p);
        CHECK(involution_error(l) <= 1e-14);
        const Vec15 psi = oracle::to_psi(oracle::random_hermitian_trace_one(rng));
        CHECK(std::abs(population_rate_sum(l, p, psi)) <= 1e-12 * (1.0 + 100.0 * psi.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("open systems break the population identity by the leak rate")
{
    SystemParams p = SystemParams::figure_rates({3.0, 2.0, 1.0});
    p.gamma_level[1] = 2.0; // Γ3 = 2 but only γ23 = 1 returns to level 2
    p.allow_open_system = true;
    const auto l = build_liouvillian(p);
    Vec15 psi = Vec15::Zero();
    psi(7) = 0.25; // ρ33
    CHECK(population_rate_sum(l, p, psi).real() == doctest::Approx(-0.25));
}

TEST_CASE("two-level limit decouples the upper ladder")
{
    const auto l = build_liouvillian(SystemParams::figure_rates({7.0, 0.0, 0.0}));
    // Components reachable from the driven block {1, 7, 10} through M.
    std::set<int> reached{0, 6, 9};
    bool grew = true;
    while (grew) {
        grew = false;
        for (int r = 0; r < kStateDim; ++r) {
            for (int c : std::set<int>(reached)) {
                if (l.m(r, c) != cd{0.0, 0.0} && reached.insert(r).second) grew = true;
            }
        }
    }
    CHECK(reached == std::set<int>{0, 6, 9});
}

TEST_CASE("state vector accessors")
{
    std::mt19937_64 rng(3);
    const Mat4 rho = oracle::random_hermitian_trace_one(rng);
    const StateVector s(oracle::to_psi(rho));
    CHECK((s.density_matrix() - rho).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(s.rho11() == doctest::Approx(rho(0, 0).real()));
    CHECK(s.at(7) == rho(1, 1));
    CHECK(s.pairing_error() == 0.0);
    CHECK_THROWS_AS(s.at(0), std::out_of_range);
    CHECK_THROWS_AS(s.at(16), std::out_of_range);
    CHECK_THROWS_AS(s.rho(5, 1), std::out_of_range);

    CHECK(component_label(1) == "rho12");
    CHECK(component_label(6) == "rho24");
    CHECK(component_label(8) == "rho33");
    CHECK(component_label(14) == "conj(rho14)");
}
