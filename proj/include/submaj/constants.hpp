#pragma once

namespace submaj {

// Global positive-definiteness tolerance. Eigenvalues below this count as
// numerically zero; family members must stay strictly above it.
inline constexpr double kTolPsd = 1e-9;

// Hermitian symmetry tolerance used at matrix construction.
inline constexpr double kTolHermitian = 1e-10;

// Commutator tolerance separating the commuting fast path from the general
// path. Borderline families fail loudly instead of being silently pinched.
inline constexpr double kTolCommute = 1e-8;

// Feasibility slack tolerance: t* >= -kTolFeas counts as Feasible,
// t* < -10*kTolFeas as Infeasible, anything between as Marginal.
inline constexpr double kTolFeas = 1e-7;

}  // namespace submaj
