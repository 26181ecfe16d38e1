// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qpw/generate.hpp"
#include "qpw/precond.hpp"

namespace qpw {

enum class Multiplication { Classical, Quantum, Both };

struct SweepConfig {
    int schema = 1;
    std::vector<MatrixSource> sources;
    std::vector<PreconditionerSpec> preconditioners;
    Multiplication multiplication = Multiplication::Classical;
    std::vector<double> trim_f = {0.0};

    double spectrum_tol = 1e-10;
    index_t spectrum_direct_limit = 1024;  // larger matrices use the iterative path
    double verify_tol = 1e-9;
    bool emulate_verify = false;
    int verify_max_qubits = 16;
    double preamp_delta = 0.5;
    double preamp_eps = 0.01;

    std::string csv_path;
    std::string json_path;
    int parallelism = 1;

    void validate() const;
};

SweepConfig sweep_config_from_json(const nlohmann::json& j);
SweepConfig load_sweep_config(const std::string& path);

/// One result row. Fields that do not apply to a combination stay empty; a
/// failed combination carries the failure text in `error` instead.
struct SweepRow {
    std::string source;
    index_t n = 0;
    std::string precon;
    std::optional<int> infill;
    std::string method;  // SPAI solve method, empty otherwise
    std::optional<double> s;
    std::optional<double> r_p;
    std::optional<double> sigma_min;
    std::optional<double> kappa;
    std::optional<double> kappa_s;
    std::optional<index_t> diag_p;
    std::optional<index_t> diag_pa;
    std::optional<index_t> diag_pa_nonzero;
    std::optional<index_t> rotations;
    std::optional<index_t> unique_angles;
    std::optional<double> f;
    std::optional<double> l2_err;
    std::optional<double> fom_plain;
    std::optional<double> fom_preamp;

    // Not part of the CSV columns; carried in the JSON mirror.
    std::string error;
    std::optional<double> kappa_s_emulated;
    std::optional<double> verify_max_abs_err;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    // sizing inputs for downstream phase-factor generation
    double eps = 0.01;
    double delta = 0.5;

    bool has_errors() const;
};

/// Run every (source x preconditioner x mode x f) combination of the config:
/// build or ingest the matrix, diagonally scale, build the preconditioner,
/// form the classical product and/or the quantum product encoding, take
/// spectral metrics, and optionally filter + collapse at each f. Failures
/// become error rows; the sweep continues. Rows are emitted in config order
/// regardless of the parallelism degree.
SweepReport run_sweep(const SweepConfig& config);

std::string report_csv(const SweepReport& report);
nlohmann::json report_json(const SweepReport& report);
SweepReport report_from_json(const nlohmann::json& j);

/// Write the CSV (fixed column order, 17 significant digits) and JSON mirror.
void emit_report(const SweepReport& report, const std::string& csv_path,
                 const std::string& json_path);

}  // namespace qpw
