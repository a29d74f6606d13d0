#pragma once

#include <iosfwd>
#include <vector>

#include "qring/config.hpp"
#include "qring/types.hpp"

namespace qring {

/// One sweep row; `resp` empty when the configuration is singular/extremal
/// at that point (emitted with status "singular" and empty amplitude fields).
struct KSweepRow {
    double k = 0.0;
    double kd_over_pi = 0.0;
    std::optional<RingResponse> resp;
};

struct FluxSweepRow {
    double theta_B = 0.0;
    std::optional<RingResponse> resp;
};

struct LocalizedRow {
    double k = 0.0;
    int n_estimate = 0;
    int rank = 4;
    std::optional<LocalizedState> state;  // symmetric rings only
};

std::vector<KSweepRow> compute_k_sweep(const RunConfig& cfg);
std::vector<FluxSweepRow> compute_flux_sweep(const RunConfig& cfg);
std::vector<LocalizedRow> compute_localized(const RunConfig& cfg);

void write_k_sweep_csv(const std::vector<KSweepRow>& rows, std::ostream& os);
void write_k_sweep_json(const std::vector<KSweepRow>& rows, std::ostream& os);
void write_flux_sweep_csv(const std::vector<FluxSweepRow>& rows, std::ostream& os);
void write_flux_sweep_json(const std::vector<FluxSweepRow>& rows, std::ostream& os);
void write_localized_csv(const std::vector<LocalizedRow>& rows, std::ostream& os);
void write_localized_json(const std::vector<LocalizedRow>& rows, std::ostream& os);

/// 513 samples per arm: columns x, re_phi2, im_phi2, re_phi3, im_phi3.
void write_wavefunction_csv(const LocalizedState& st, std::ostream& os);

/// Labeled node/ring S-matrix entries at cfg.k_single.
void write_smatrix(const RunConfig& cfg, std::ostream& os);

struct VerifyOptions {
    std::uint64_t seed = 20240809;
    bool inject_error = false;
    std::optional<RingSystem> ring;  // extra fixture to audit
};

/// Oracle-vs-closed-form comparison report; returns a nonzero exit status on
/// any failure.
int run_verify(const VerifyOptions& opts, std::ostream& report);

/// Double -> shortest exact decimal used across all writers (17 significant
/// digits round-trips IEEE doubles).
std::string format_g17(double v);

}  // namespace qring
