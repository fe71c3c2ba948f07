#pragma once

namespace forge {

// Constructions are algebraically exact; tolerances only absorb rounding.
inline constexpr double kNormTol = 1e-12;      // state normalization
inline constexpr double kOrthoTol = 1e-10;     // basis orthonormality
inline constexpr double kIdentityTol = 1e-9;   // proportionality to identity
inline constexpr double kTraceTol = 1e-10;     // trace of a reduction
inline constexpr double kProjectorTol = 1e-10; // projector idempotence/hermiticity

}  // namespace forge
