// model.cpp — parameter validation and generator assembly

#include "flr4/model.hpp"

#include "flr4/error.hpp"

#include <cmath>
#include <sstream>

namespace flr4 {

namespace {

constexpr cd I{0.0, 1.0};

// 0-based storage index for the conjugate partner of component k (0-based).
constexpr int partner(int k) noexcept
{
    if (k < kCoherenceCount) return k + 9;
    if (k >= 9) return k - 9;
    return k;
}

void require_finite(const std::array<double, 3>& values, std::string_view name)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            std::ostringstream msg;
            msg << name << "[" << i << "] is not finite";
            throw Error(ErrorCode::InvalidParameter, msg.str());
        }
    }
}

void require_nonnegative(const std::array<double, 3>& values, std::string_view name)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0.0) {
            std::ostringstream msg;
            msg << name << "[" << i << "] = " << values[i] << " is negative";
            throw Error(ErrorCode::NegativeRate, msg.str());
        }
    }
}

} // namespace

SystemParams SystemParams::figure_rates(std::array<double, 3> omega)
{
    SystemParams p;
    p.omega = omega;
    return p;
}

ValidatedParams validate_params(const SystemParams& p)
{
    require_finite(p.omega, "omega");
    require_finite(p.delta, "delta");
    require_finite(p.gamma_level, "gamma_level");
    require_finite(p.gamma_branch, "gamma_branch");
    require_finite(p.mu, "mu");
    require_nonnegative(p.omega, "omega");
    require_nonnegative(p.gamma_level, "gamma_level");
    require_nonnegative(p.gamma_branch, "gamma_branch");
    require_nonnegative(p.mu, "mu");

    const auto [g2, g3, g4] = p.gamma_level;
    const auto [g23, g34, g24] = p.gamma_branch;
    (void)g2;

    std::vector<ConstraintCheck> checks;
    auto add = [&](std::string name, double lhs, double rhs) {
        ConstraintCheck c;
        c.name = std::move(name);
        c.lhs = lhs;
        c.rhs = rhs;
        c.residual = std::abs(lhs - rhs);
        c.enforced = !p.allow_open_system;
        c.satisfied = c.residual <= kClosureTolerance;
        checks.push_back(std::move(c));
    };
    add("Gamma3 == gamma23", g3, g23);
    add("Gamma4 == gamma34 + gamma24", g4, g34 + g24);

    if (!p.allow_open_system) {
        for (const auto& c : checks) {
            if (!c.satisfied) {
                std::ostringstream msg;
                msg.precision(17);
                msg << c.name << " violated: " << c.lhs << " vs " << c.rhs
                    << " (population is not conserved)";
                throw Error(ErrorCode::TraceLeak, msg.str());
            }
        }
    }
    return ValidatedParams(p, std::move(checks));
}

cd StateVector::at(int k) const
{
    if (k < 1 || k > kStateDim) throw std::out_of_range("StateVector::at: index outside 1..15");
    return psi_(k - 1);
}

double StateVector::rho11() const
{
    return 1.0 - psi_(6).real() - psi_(7).real() - psi_(8).real();
}

double StateVector::population(int level) const
{
    if (level == 1) return rho11();
    if (level < 1 || level > 4) throw std::out_of_range("StateVector::population: level outside 1..4");
    return psi_(level + 4).real();
}

cd StateVector::rho(int r, int c) const
{
    if (r < 1 || r > 4 || c < 1 || c > 4) throw std::out_of_range("StateVector::rho: level outside 1..4");
    if (r == c) return population(r);
    for (int k = 0; k < kCoherenceCount; ++k) {
        const auto slot = kCoherenceSlots[static_cast<std::size_t>(k)];
        if (slot.row == r && slot.col == c) return psi_(k);
        if (slot.row == c && slot.col == r) return psi_(k + 9);
    }
    throw std::logic_error("StateVector::rho: unmapped element");
}

Mat4 StateVector::density_matrix() const
{
    Mat4 rho;
    for (int r = 1; r <= 4; ++r) {
        for (int c = 1; c <= 4; ++c) rho(r - 1, c - 1) = this->rho(r, c);
    }
    return rho;
}

double StateVector::pairing_error() const
{
    double err = 0.0;
    for (int k = 0; k < kCoherenceCount; ++k) {
        err = std::max(err, std::abs(psi_(k + 9) - std::conj(psi_(k))));
    }
    return err;
}

double StateVector::population_imag_error() const
{
    return std::max({std::abs(psi_(6).imag()), std::abs(psi_(7).imag()), std::abs(psi_(8).imag())});
}

double StateVector::coherence_bound_excess() const
{
    double excess = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < kCoherenceCount; ++k) {
        const auto slot = kCoherenceSlots[static_cast<std::size_t>(k)];
        const double bound = population(slot.row) * population(slot.col);
        excess = std::max(excess, std::norm(psi_(k)) - bound);
    }
    return excess;
}

std::string component_label(int k)
{
    if (k < 1 || k > kStateDim) throw std::out_of_range("component_label: index outside 1..15");
    if (k >= 7 && k <= 9) return "rho" + std::to_string(k - 5) + std::to_string(k - 5);
    const bool conjugate = k > 9;
    const auto slot = kCoherenceSlots[static_cast<std::size_t>(conjugate ? k - 10 : k - 1)];
    const std::string base = "rho" + std::to_string(slot.row) + std::to_string(slot.col);
    return conjugate ? "conj(" + base + ")" : base;
}

Liouvillian build_liouvillian(const SystemParams& p)
{
    return build_liouvillian(validate_params(p));
}

Liouvillian build_liouvillian(const ValidatedParams& vp)
{
    const SystemParams& p = vp.params();
    const auto [o1, o2, o3] = p.omega;
    const auto [d1, d2, d3] = p.delta;
    const auto [g2, g3, g4] = p.gamma_level;
    const auto [g23, g34, g24] = p.gamma_branch;

    Liouvillian l;
    // 1-based setter for rows 1..9
    auto set = [&l](int row, int col, cd v) { l.m(row - 1, col - 1) += v; };

    // ρ12, with ρ11 → 1 − ψ7 − ψ8 − ψ9 in −iΩ1(ρ22 − ρ11)
    set(1, 1, I * d1 - g2 / 2.0);
    set(1, 7, -2.0 * I * o1);
    set(1, 8, -I * o1);
    set(1, 9, -I * o1);
    set(1, 4, I * o2);
    // ρ23
    set(2, 2, I * d2 - (g2 + g3) / 2.0);
    set(2, 4, -I * o1);
    set(2, 7, I * o2);
    set(2, 8, -I * o2);
    set(2, 6, I * o3);
    // ρ34
    set(3, 3, I * d3 - (g3 + g4) / 2.0);
    set(3, 6, -I * o2);
    set(3, 8, I * o3);
    set(3, 9, -I * o3);
    // ρ13
    set(4, 4, I * (d1 + d2) - g3 / 2.0);
    set(4, 2, -I * o1);
    set(4, 1, I * o2);
    set(4, 5, I * o3);
    // ρ14
    set(5, 5, I * (d1 + d2 + d3) - g4 / 2.0);
    set(5, 6, -I * o1);
    set(5, 4, I * o3);
    // ρ24
    set(6, 6, I * (d2 + d3) - (g2 + g4) / 2.0);
    set(6, 5, -I * o1);
    set(6, 3, -I * o2);
    set(6, 2, I * o3);
    // ρ22
    set(7, 7, -g2);
    set(7, 10, I * o1);
    set(7, 1, -I * o1);
    set(7, 2, I * o2);
    set(7, 11, -I * o2);
    set(7, 8, g23);
    set(7, 9, g24);
    // ρ33
    set(8, 8, -g3);
    set(8, 3, I * o3);
    set(8, 12, -I * o3);
    set(8, 2, -I * o2);
    set(8, 11, I * o2);
    set(8, 9, g34);
    // ρ44; the drive on 3–4 is Ω3
    set(9, 9, -g4);
    set(9, 3, -I * o3);
    set(9, 12, I * o3);

    // Rows 10..15 are the conjugates of rows 1..6 with columns permuted by J.
    for (int k = 0; k < kCoherenceCount; ++k) {
        for (int j = 0; j < kStateDim; ++j) {
            l.m(k + 9, partner(j)) = std::conj(l.m(k, j));
        }
    }

    // Constant left in row 1 by the trace elimination: −iΩ1·(−1).
    l.c(0) = I * o1;
    l.c(9) = std::conj(l.c(0));
    return l;
}

Mat15 conjugation_involution()
{
    Mat15 j = Mat15::Zero();
    for (int k = 0; k < kStateDim; ++k) j(k, partner(k)) = 1.0;
    return j;
}

Vec15 involute(const Vec15& v)
{
    Vec15 out;
    for (int k = 0; k < kStateDim; ++k) out(k) = std::conj(v(partner(k)));
    return out;
}

cd population_rate_sum(const Liouvillian& l, const SystemParams& p, const Vec15& psi)
{
    const Vec15 rate = l.m * psi + l.c;
    const cd d11 = p.gamma_level[0] * psi(6) - I * p.omega[0] * (psi(9) - psi(0));
    return rate(6) + rate(7) + rate(8) + d11;
}

} // namespace flr4
