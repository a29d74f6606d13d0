#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "qring/types.hpp"

namespace qring {

struct KSweepSpec {
    double k_min = 0.0;
    double k_max = 0.0;
    int points = 0;
};

struct FluxSweepSpec {
    double flux_min = 0.0;
    double flux_max = 0.0;
    int points = 0;
    double k = 0.0;
};

enum class OutputFormat { csv, json };

struct RunConfig {
    RingSystem ring;
    std::optional<KSweepSpec> k_sweep;
    std::optional<FluxSweepSpec> flux_sweep;
    std::optional<double> k_single;
    std::string output_path;  // empty = stdout
    OutputFormat format = OutputFormat::csv;
    bool verify = false;
    std::uint64_t seed = 20240809;

    explicit RunConfig(RingSystem r) : ring(std::move(r)) {}

    const KSweepSpec& require_k_sweep() const;
    const FluxSweepSpec& require_flux_sweep() const;
};

/// Command-line values that override file values.
struct CliOverrides {
    std::optional<double> k_min, k_max, flux_min, flux_max, k, d;
    std::optional<int> points;
    bool symmetric = false;
    std::optional<std::string> output;
    std::optional<std::string> format;
    std::optional<std::uint64_t> seed;
};

/// Scalar with optional "*pi" suffix, e.g. "0.25*pi".
double parse_scalar(const std::string& text);

/// INI-style config: sections [node_I], [node_II], [ring], [sweep]; node keys
/// theta1..theta3, alpha, beta, gamma, delta, a, b, L0, xi. Flags override
/// file values; `symmetric` copies node_I junction parameters to node_II.
RunConfig parse_config(const std::string& path, const CliOverrides& overrides);

/// Same, reading from a stream (`name` used in error messages).
RunConfig parse_config_stream(std::istream& in, const std::string& name,
                              const CliOverrides& overrides);

}  // namespace qring
