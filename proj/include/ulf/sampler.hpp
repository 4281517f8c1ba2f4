#pragma once

#include <cstdint>

#include "ulf/field.hpp"
#include "ulf/linalg.hpp"
#include "ulf/rng.hpp"
#include "ulf/scale_law.hpp"

namespace ulf {

/// Draw from gamma, the Haar probability measure on the ring of integers.
/// (Alias of gamma_draw; kept next to the other samplers.)
FieldElement sample_gamma(RngStream& rng, const FieldConfig& config);

/// n independent gamma coordinates.
UVector sample_gamma_vector(RngStream& rng, const FieldConfig& config,
                            std::size_t n);

/// Uniform draw from the unit sphere {||x|| = 1}: rejection from gamma_n on
/// the event that some coordinate has a nonzero leading digit. The
/// acceptance probability is exactly 1 - q^-n. When `attempts` is supplied
/// the number of rejection rounds is accumulated into it.
UVector sample_sigma(RngStream& rng, const FieldConfig& config, std::size_t n,
                     std::uint64_t* attempts = nullptr);

/// Haar draw from the isometry group: n^2 i.i.d. gamma entries conditioned
/// on invertibility of the residue matrix. Acceptance probability is exactly
/// prod_{i<=n} (1 - q^-i).
UMatrix sample_gl_haar(RngStream& rng, const FieldConfig& config,
                       std::size_t n, std::uint64_t* attempts = nullptr);

/// Gaussian draw on the compact module rho^m D (or the zero module): a gamma
/// draw scaled by rho^m. The standard Gaussian is m = 0, with law gamma.
FieldElement sample_k_gaussian(RngStream& rng, const FieldConfig& config,
                               ScaleValue module);

/// Length-n prefix of a rotatable sequence: one scale tau from pi, then
/// independent standard Gaussian coordinates, returned as (tau * eta_i)_i.
UVector sample_rotatable(RngStream& rng, const FieldConfig& config,
                         const ScaleLaw& pi, std::size_t n);

/// The scale read off a finite prefix: m with ||x|| = q^-m, or zero for the
/// zero vector. Monotone along nested prefixes of one sequence.
ScaleValue estimate_tau(const UVector& prefix);

}  // namespace ulf
