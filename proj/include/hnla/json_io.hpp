#pragma once

#include <nlohmann/json.hpp>

#include "hnla/ensemble.hpp"
#include "hnla/fock.hpp"

// JSON wire formats. Complex numbers are [re, im] pairs; states carry their
// cutoff in an explicit n_max field.
//
//   FockVector     {"n_max": N, "amps": [[re, im], ...]}
//   DensityMatrix  {"n_max": N, "elems": [[[re, im], ...], ...]}
//   NoSignalReport {"s", "g", "s_prime", "grid", "n_max", "d_xp",
//                   "d_x_thermal", "d_p_thermal", "identity_residual_max",
//                   "runtime_ms"}
//   GridSpec       {"kind", "points", "angular_points", "sigmas"}

namespace hnla::fock {

void to_json(nlohmann::json &j, const FockVector &v);
void from_json(const nlohmann::json &j, FockVector &v);

void to_json(nlohmann::json &j, const DensityMatrix &m);
void from_json(const nlohmann::json &j, DensityMatrix &m);

} // namespace hnla::fock

namespace hnla::ensemble {

void to_json(nlohmann::json &j, const GridSpec &g);
void from_json(const nlohmann::json &j, GridSpec &g);

void to_json(nlohmann::json &j, const NoSignalReport &r);
void from_json(const nlohmann::json &j, NoSignalReport &r);

} // namespace hnla::ensemble
