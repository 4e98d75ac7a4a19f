// model.hpp — four-level ladder parameters, 15-component state, and the affine
// generator dψ/dt = Mψ + C in the rotating frame.
//
// State layout (1-based, as reported externally):
//   ψ1=ρ12  ψ2=ρ23  ψ3=ρ34  ψ4=ρ13  ψ5=ρ14  ψ6=ρ24
//   ψ7=ρ22  ψ8=ρ33  ψ9=ρ44  ψ(9+k)=conj(ψk), k=1..6
// ρ11 is eliminated through the trace, ρ11 = 1 − ψ7 − ψ8 − ψ9.
// All rates and frequencies are in units of the reference decay rate γ = 1.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace flr4 {

using cd = std::complex<double>;

inline constexpr int kStateDim = 15;
inline constexpr int kCoherenceCount = 6;

using Vec15 = Eigen::Matrix<cd, kStateDim, 1>;
using Mat15 = Eigen::Matrix<cd, kStateDim, kStateDim>;
using Mat4 = Eigen::Matrix<cd, 4, 4>;

struct SystemParams {
    std::array<double, 3> omega{0.0, 0.0, 0.0};        // Ω1, Ω2, Ω3
    std::array<double, 3> delta{0.0, 0.0, 0.0};        // Δ1, Δ2, Δ3
    std::array<double, 3> gamma_level{6.0, 1.0, 1.0};  // Γ2, Γ3, Γ4
    std::array<double, 3> gamma_branch{1.0, 1.0, 0.0}; // γ23, γ34, γ24
    std::array<double, 3> mu{1.0, 1.0, 1.0};           // μ12, μ23, μ34
    bool allow_open_system = false;

    // Decay rates used for every figure: Γ2=6, Γ3=Γ4=1, γ23=γ34=1, γ24=0,
    // all detunings zero, equal dipoles.
    static SystemParams figure_rates(std::array<double, 3> omega);

    friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

struct ConstraintCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    bool enforced = true;
    bool satisfied = true;
};

// Proof that a SystemParams passed validation, plus the checks that were run.
class ValidatedParams {
public:
    const SystemParams& params() const noexcept { return params_; }
    const std::vector<ConstraintCheck>& checks() const noexcept { return checks_; }

private:
    friend ValidatedParams validate_params(const SystemParams&);
    ValidatedParams(SystemParams p, std::vector<ConstraintCheck> checks)
        : params_(p), checks_(std::move(checks)) {}

    SystemParams params_;
    std::vector<ConstraintCheck> checks_;
};

inline constexpr double kClosureTolerance = 1e-12;

// Throws Error{NegativeRate} for any negative rate, Rabi frequency or dipole,
// Error{InvalidParameter} for non-finite input, and Error{TraceLeak} when
// Γ3 ≠ γ23 or Γ4 ≠ γ34 + γ24 and allow_open_system is not set.
ValidatedParams validate_params(const SystemParams& p);

class StateVector {
public:
    StateVector() : psi_(Vec15::Zero()) {}
    explicit StateVector(const Vec15& psi) : psi_(psi) {}

    const Vec15& psi() const noexcept { return psi_; }
    Vec15& psi() noexcept { return psi_; }

    // 1-based component access, k = 1..15.
    cd at(int k) const;

    double rho11() const;
    // Population of level 1..4.
    double population(int level) const;
    // Density-matrix element ρ_rc, levels 1..4.
    cd rho(int r, int c) const;
    Mat4 density_matrix() const;

    // max_k |ψ(9+k) − conj(ψk)|
    double pairing_error() const;
    // max over ψ7..ψ9 of |Im|
    double population_imag_error() const;
    // max over stored coherences of |ρij|² − ρii·ρjj (positive means violated)
    double coherence_bound_excess() const;

private:
    Vec15 psi_;
};

// Level pair (r, c) stored at 1-based component k = 1..6 as ρ_rc.
struct CoherenceSlot {
    int row;
    int col;
};
inline constexpr std::array<CoherenceSlot, kCoherenceCount> kCoherenceSlots{{
    {1, 2}, {2, 3}, {3, 4}, {1, 3}, {1, 4}, {2, 4},
}};

// "rho12", "rho22", "conj(rho12)", ... for component k = 1..15.
std::string component_label(int k);

struct Liouvillian {
    Mat15 m = Mat15::Zero();
    Vec15 c = Vec15::Zero();
};

Liouvillian build_liouvillian(const ValidatedParams& p);
Liouvillian build_liouvillian(const SystemParams& p);

// J: swaps components k ↔ k+9 (k = 1..6) and fixes 7, 8, 9.
Mat15 conjugation_involution();
// J·conj(v)
Vec15 involute(const Vec15& v);

// Sum of dρ22/dt + dρ33/dt + dρ44/dt from the generator plus the implied
// dρ11/dt = Γ2ψ7 − iΩ1(ψ10 − ψ1). Zero for a closed system.
cd population_rate_sum(const Liouvillian& l, const SystemParams& p, const Vec15& psi);

} // namespace flr4
