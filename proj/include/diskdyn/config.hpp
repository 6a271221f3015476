#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diskdyn/flow.hpp"
#include "diskdyn/geometry.hpp"
#include "diskdyn/hamiltonian.hpp"
#include "diskdyn/oneform.hpp"

namespace diskdyn {

/// Parsed experiment configuration.  Schema-validated: unknown keys are
/// rejected everywhere.
struct ExperimentConfig {
    HamiltonianSpec hamiltonian;
    bool hamiltonian_given = false;
    PrimitiveOneForm primitive;
    FlowConfig flow;
    QuadratureSpec quadrature;
    bool quadrature_seed_given = false;
    int n = 1;
    std::optional<Point2> x;
    std::optional<Point2> y;
    std::optional<Point2> e;
    std::optional<int> k;
    double min_separation = 1e-6;
    std::uint64_t seed = 0;

    // verify-all profile
    double profile_scale = 1.0;
    std::vector<std::string> criteria;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

HamiltonianSpec hamiltonian_from_json(const nlohmann::json& j);
nlohmann::json hamiltonian_to_json(const HamiltonianSpec& spec);
PrimitiveOneForm primitive_from_json(const nlohmann::json& j);

} // namespace diskdyn
