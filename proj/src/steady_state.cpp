// steady_state.cpp — direct solve, RK4 trajectory, eigenvalues

#include "flr4/steady_state.hpp"

#include "flr4/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace flr4 {

namespace {

// Reciprocal condition estimate below which M is treated as singular.
constexpr double kSingularRcond = 1e-13;

bool populations_physical(const StateVector& s)
{
    for (int level = 1; level <= 4; ++level) {
        const double pop = s.population(level);
        if (pop < -1e-10 || pop > 1.0 + 1e-10) return false;
    }
    return true;
}

} // namespace

StateVector steady_state(const Liouvillian& l)
{
    const Eigen::PartialPivLU<Mat15> lu(l.m);
    // The condition estimate alone can miss exactly vanishing pivots.
    const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
    const double pivot_ratio = pivots.minCoeff() / pivots.maxCoeff();
    const double rcond = std::min(lu.rcond(), pivot_ratio);
    if (!(rcond > kSingularRcond)) {
        std::ostringstream msg;
        msg << "generator is singular (rcond = " << rcond << "); the steady state is not unique";
        throw Error(ErrorCode::SingularLiouvillian, msg.str());
    }
    const Vec15 psi = -lu.solve(l.c);
    return StateVector(0.5 * (psi + involute(psi)));
}

double steady_residual(const Liouvillian& l, const StateVector& psi)
{
    return (l.m * psi.psi() + l.c).cwiseAbs().maxCoeff();
}

AffineStep rk4_affine_step(const Mat15& m, const Vec15& c, double h)
{
    // k1..k4 of RK4 for a constant affine field collapse to
    //   P = I + hM + (hM)²/2 + (hM)³/6 + (hM)⁴/24
    //   q = h(I + hM/2 + (hM)²/6 + (hM)³/24)C
    const Mat15 a = h * m;
    const Mat15 a2 = a * a;
    const Mat15 a3 = a2 * a;
    const Mat15 a4 = a3 * a;
    const Mat15 id = Mat15::Identity();
    AffineStep step;
    step.propagator = id + a + a2 / 2.0 + a3 / 6.0 + a4 / 24.0;
    step.offset = h * ((id + a / 2.0 + a2 / 6.0 + a3 / 24.0) * c);
    return step;
}

Trajectory integrate(const Liouvillian& l, const StateVector& psi0, double t_end,
                     IntegrateOptions options)
{
    if (!(options.dt > 0.0) || !std::isfinite(options.dt)) {
        throw Error(ErrorCode::InvalidGrid, "integrate: dt must be positive");
    }
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
        throw Error(ErrorCode::InvalidGrid, "integrate: t_end must be non-negative");
    }
    if (options.sample_stride < 1) {
        throw Error(ErrorCode::InvalidGrid, "integrate: sample stride must be at least 1");
    }

    const auto steps = static_cast<long long>(std::ceil(t_end / options.dt - 1e-9));
    Trajectory traj;
    traj.times.push_back(0.0);
    traj.states.push_back(psi0);
    if (steps <= 0) return traj;

    const double h = t_end / static_cast<double>(steps);
    const AffineStep step = rk4_affine_step(l.m, l.c, h);

    Vec15 psi = psi0.psi();
    for (long long n = 1; n <= steps; ++n) {
        psi = step.propagator * psi + step.offset;
        if (n % options.sample_stride == 0 || n == steps) {
            if (!psi.allFinite() || psi.cwiseAbs().maxCoeff() > kDivergenceBound) {
                std::ostringstream msg;
                msg << "integration diverged at t = " << static_cast<double>(n) * h
                    << " with dt = " << h;
                throw Error(ErrorCode::StepSizeTooLarge, msg.str());
            }
            traj.times.push_back(n == steps ? t_end : static_cast<double>(n) * h);
            traj.states.emplace_back(psi);
        }
    }
    return traj;
}

std::vector<cd> stability_eigs(const Liouvillian& l)
{
    const Eigen::ComplexEigenSolver<Mat15> solver(l.m, false);
    std::vector<cd> eigs(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(eigs.begin(), eigs.end(), [](cd a, cd b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return eigs;
}

CSignResolution resolve_c_sign()
{
    Liouvillian derived = build_liouvillian(SystemParams::figure_rates({7.0, 4.0, 1.0}));
    Liouvillian flipped = derived;
    flipped.c = -flipped.c;

    CSignResolution res;
    res.derived_sign_physical = populations_physical(steady_state(derived));
    res.flipped_sign_physical = populations_physical(steady_state(flipped));
    // The derived constant is +iΩ1; the flipped one is only adopted if it is
    // the one that yields physical populations.
    res.sign = (res.derived_sign_physical || !res.flipped_sign_physical) ? +1 : -1;
    res.label = res.sign > 0 ? "C1=+i*Omega1" : "C1=-i*Omega1";
    return res;
}

} // namespace flr4
