// SPDX-License-Identifier: Apache-2.0
#include "qpw/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <Eigen/SVD>

#include "qpw/clai.hpp"
#include "qpw/emulate.hpp"
#include "qpw/encode.hpp"
#include "qpw/preamp.hpp"
#include "qpw/spectrum.hpp"
#include "qpw/tpai.hpp"
#include "qpw/trim.hpp"

namespace qpw {

void SweepConfig::validate() const {
    if (sources.empty()) throw std::invalid_argument("sweep config: at least one source required");
    if (preconditioners.empty())
        throw std::invalid_argument("sweep config: at least one preconditioner required");
    for (const auto& p : preconditioners) p.validate();
    for (double f : trim_f)
        if (f < 0.0) throw std::invalid_argument("sweep config: trim f values must be >= 0");
    if (parallelism < 1) throw std::invalid_argument("sweep config: parallelism must be >= 1");
}

namespace {

SourceKind source_kind_from_name(const std::string& name) {
    if (name == "pressure2d" || name == "generated-2d-pressure") return SourceKind::Pressure2D;
    if (name == "laplacian3d" || name == "generated-3d-laplacian") return SourceKind::Laplacian3D;
    if (name == "file" || name == "matrix-market-file") return SourceKind::MatrixMarketFile;
    throw std::invalid_argument("unknown source kind: " + name);
}

}  // namespace

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
    SweepConfig c;
    c.schema = j.value("schema", 1);
    if (c.schema != 1) throw std::invalid_argument("sweep config: unsupported schema version");
    for (const auto& s : j.at("sources")) {
        MatrixSource src;
        src.kind = source_kind_from_name(s.at("kind").get<std::string>());
        if (s.contains("dims")) src.dims = s.at("dims").get<std::vector<index_t>>();
        if (s.contains("path")) src.path = s.at("path").get<std::string>();
        c.sources.push_back(std::move(src));
    }
    for (const auto& p : j.at("preconditioners")) {
        PreconditionerSpec spec;
        spec.kind = precon_kind_from_name(p.at("kind").get<std::string>());
        if (p.contains("method")) {
            const std::string m = p.at("method").get<std::string>();
            if (m == "column") spec.method = SpaiMethod::Column;
            else if (m == "iterative") spec.method = SpaiMethod::Iterative;
            else throw std::invalid_argument("unknown SPAI method: " + m);
        }
        spec.infill = p.value("infill", 0);
        spec.iterations = p.value("iterations", 5);
        c.preconditioners.push_back(spec);
    }
    const std::string mult = j.value("multiplication", "classical");
    if (mult == "classical") c.multiplication = Multiplication::Classical;
    else if (mult == "quantum") c.multiplication = Multiplication::Quantum;
    else if (mult == "both") c.multiplication = Multiplication::Both;
    else throw std::invalid_argument("unknown multiplication mode: " + mult);
    if (j.contains("trim_f")) c.trim_f = j.at("trim_f").get<std::vector<double>>();
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        c.spectrum_tol = t.value("spectrum", c.spectrum_tol);
        c.verify_tol = t.value("verify", c.verify_tol);
    }
    c.spectrum_direct_limit = j.value("spectrum_direct_limit", c.spectrum_direct_limit);
    c.emulate_verify = j.value("emulate_verify", c.emulate_verify);
    c.verify_max_qubits = j.value("verify_max_qubits", c.verify_max_qubits);
    if (j.contains("preamp")) {
        const auto& p = j.at("preamp");
        c.preamp_delta = p.value("delta", c.preamp_delta);
        c.preamp_eps = p.value("eps", c.preamp_eps);
    }
    if (j.contains("output")) {
        const auto& o = j.at("output");
        c.csv_path = o.value("csv", std::string{});
        c.json_path = o.value("json", std::string{});
    }
    c.parallelism = j.value("parallelism", 1);
    c.validate();
    return c;
}

SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    nlohmann::json j;
    in >> j;
    return sweep_config_from_json(j);
}

bool SweepReport::has_errors() const {
    return std::any_of(rows.begin(), rows.end(),
                       [](const SweepRow& r) { return !r.error.empty(); });
}

namespace {

enum class RowMode { Classical, Quantum };

struct Combination {
    std::size_t source_idx = 0;
    std::size_t precon_idx = 0;
    RowMode mode = RowMode::Classical;
    double f = 0.0;
};

/// Per-source artefacts shared by every combination of that source.
struct SourceContext {
    BandedMatrix scaled;      // D^{-1} A
    double r_a = 1.0;         // max-norm factor of the scaled matrix
    MeshDims mesh;
    Spectrum spectrum;        // of D^{-1} A
    bool encodable = false;   // power-of-two dimension
    BlockEncoding enc_a;      // encode_banded(D^{-1}A / r_a, r_a), when encodable
};

Spectrum spectrum_of(const BandedMatrix& m, const SweepConfig& config) {
    const SpectrumMethod method = m.size() <= config.spectrum_direct_limit
                                      ? SpectrumMethod::Direct
                                      : SpectrumMethod::Iterative;
    return spectral_metrics(m, config.spectrum_tol, method);
}

SourceContext make_source_context(const MatrixSource& source, const SweepConfig& config) {
    SourceContext ctx;
    BandedMatrix a = generate_test_matrix(source);
    ctx.scaled = diagonal_scale(a).scaled;
    ctx.mesh = source.kind == SourceKind::MatrixMarketFile ? infer_mesh_dims(ctx.scaled)
                                                           : source.mesh();
    ctx.spectrum = spectrum_of(ctx.scaled, config);
    ctx.encodable = is_power_of_two(ctx.scaled.size());
    if (ctx.encodable) {
        const MaxNormScaleResult ms = max_norm_scale(ctx.scaled);
        ctx.r_a = ms.r;
        ctx.enc_a = encode_banded(ms.scaled, ms.r);
    }
    return ctx;
}

void emulation_cross_check(const BlockEncoding& enc, const Eigen::MatrixXd& target,
                           const SweepConfig& config, SweepRow& row) {
    if (!config.emulate_verify || enc.circuit.qubits > config.verify_max_qubits) return;
    const Eigen::MatrixXcd block = extract_block(enc, config.parallelism);
    const Eigen::MatrixXd scaled = (enc.subnorm * block).real();
    double err = (enc.subnorm * block - target.cast<std::complex<double>>()).cwiseAbs().maxCoeff();
    row.verify_max_abs_err = err;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled);
    const double sigma_min_emu = svd.singularValues()(svd.singularValues().size() - 1);
    row.kappa_s_emulated = enc.subnorm / sigma_min_emu;
    if (err > config.verify_tol)
        throw std::runtime_error("emulation cross-check failed: max_abs_err = " +
                                 std::to_string(err));
}

void fill_classical_row(const SourceContext& ctx, const PreconditionerSpec& spec,
                        const SweepConfig& config, double f, SweepRow& row) {
    row.f = f;
    if (spec.kind == PreconKind::CLAI) {
        // Dense classical baseline only; no banded product or encoding.
        const CirculantSpectrum spectrum = clai_spectrum(ctx.scaled);
        const Spectrum s = spectral_metrics_dense(clai_apply(spectrum, ctx.scaled),
                                                  config.spectrum_tol);
        row.sigma_min = s.sigma_min;
        row.kappa = s.kappa;
        row.r_p = 1.0 / spectrum.min_abs();
        row.f.reset();
        return;
    }

    const BandedMatrix p = build_preconditioner(ctx.scaled, spec, ctx.mesh, config.parallelism);
    const BandedMatrix pa_full = banded_multiply(p, ctx.scaled);
    const DropZeroResult pa = drop_zero_diagonals(pa_full, default_drop_tolerance(pa_full));

    row.r_p = p.max_abs();
    row.diag_p = p.diagonal_count();
    row.diag_pa = pa_full.diagonal_count();
    row.diag_pa_nonzero = pa.matrix.diagonal_count();

    const Spectrum s =
        spec.kind == PreconKind::DS ? ctx.spectrum : spectrum_of(pa.matrix, config);
    row.sigma_min = s.sigma_min;
    row.kappa = s.kappa;

    if (!ctx.encodable)
        throw std::runtime_error("matrix dimension is not a power of two; encoding skipped");

    const MaxNormScaleResult ms = max_norm_scale(pa.matrix);
    const BlockEncoding enc_pa = encode_banded(ms.scaled, ms.r);
    row.s = enc_pa.subnorm;
    row.kappa_s = kappa_sub(enc_pa.subnorm, s.sigma_min);

    if (f > 0.0) {
        const BandedMatrix filtered = filter_matrix(ms.scaled, f);
        const BlockEncoding enc_f = encode_banded(filtered, ms.r);
        const CircuitIR collapsed = collapse_rotations(enc_f.circuit);
        const Eigen::VectorXd b = deterministic_rhs(ctx.scaled.size());
        const TrimStats stats = trimming_metrics(ms.scaled, filtered, b, enc_pa.circuit, collapsed);
        row.rotations = stats.rotations_after;
        row.unique_angles = stats.unique_angles_after;
        row.l2_err = stats.l2_solution_error;
    } else {
        const GateCounts counts = count_gates(enc_pa.circuit);
        row.rotations = counts.rotations;
        row.unique_angles = counts.unique_angles;
        row.l2_err = 0.0;
        emulation_cross_check(enc_pa, pa.matrix.dense(), config, row);
    }
}

void fill_quantum_row(const SourceContext& ctx, const PreconditionerSpec& spec,
                      const SweepConfig& config, SweepRow& row) {
    row.f = 0.0;
    if (!ctx.encodable)
        throw std::runtime_error("matrix dimension is not a power of two; encoding skipped");

    if (spec.kind == PreconKind::DS) {
        // Baseline: the unpreconditioned encoding of D^{-1}A.
        row.s = ctx.enc_a.subnorm;
        row.r_p = 1.0;
        row.diag_p = 1;
        row.diag_pa = ctx.scaled.diagonal_count();
        row.diag_pa_nonzero = ctx.scaled.diagonal_count();
        row.sigma_min = ctx.spectrum.sigma_min;
        row.kappa = ctx.spectrum.kappa;
        row.kappa_s = kappa_sub(ctx.enc_a.subnorm, ctx.spectrum.sigma_min);
        const GateCounts counts = count_gates(ctx.enc_a.circuit);
        row.rotations = counts.rotations;
        row.unique_angles = counts.unique_angles;
        emulation_cross_check(ctx.enc_a, ctx.scaled.dense(), config, row);
        return;
    }

    if (spec.kind == PreconKind::CLAI) {
        const CirculantSpectrum spectrum = clai_spectrum(ctx.scaled);
        const BlockEncoding enc = encode_clai_product(spectrum, ctx.enc_a);
        const Eigen::MatrixXd pa = clai_apply(spectrum, ctx.scaled);
        const Spectrum s = spectral_metrics_dense(pa, config.spectrum_tol);
        row.s = enc.subnorm;
        row.r_p = 1.0 / spectrum.min_abs();
        row.sigma_min = s.sigma_min;
        row.kappa = s.kappa;
        row.kappa_s = kappa_sub(enc.subnorm, s.sigma_min);
        const GateCounts counts = count_gates(enc.circuit);
        row.rotations = counts.rotations;
        row.unique_angles = counts.unique_angles;
        emulation_cross_check(enc, pa, config, row);
        return;
    }

    const BandedMatrix p = build_preconditioner(ctx.scaled, spec, ctx.mesh, config.parallelism);
    const MaxNormScaleResult pscaled = max_norm_scale(p);
    BlockEncoding enc_p;
    if (spec.kind == PreconKind::TPAI) {
        std::map<index_t, double> diags;
        for (const auto& [k, values] : pscaled.scaled.diagonals()) diags[k] = values.front();
        enc_p = encode_toeplitz(diags, p.size());
        enc_p.subnorm *= pscaled.r;
        enc_p.extra_scale = pscaled.r;
    } else {
        enc_p = encode_banded(pscaled.scaled, pscaled.r);
    }

    const BlockEncoding product = multiply_encodings(enc_p, ctx.enc_a);
    const BandedMatrix pa_full = banded_multiply(p, ctx.scaled);
    const DropZeroResult pa = drop_zero_diagonals(pa_full, default_drop_tolerance(pa_full));
    const Spectrum s = spectrum_of(pa.matrix, config);

    row.s = product.subnorm;
    row.r_p = pscaled.r;
    row.diag_p = p.diagonal_count();
    row.diag_pa = pa_full.diagonal_count();
    row.diag_pa_nonzero = pa.matrix.diagonal_count();
    row.sigma_min = s.sigma_min;
    row.kappa = s.kappa;
    row.kappa_s = kappa_sub(product.subnorm, s.sigma_min);
    const GateCounts counts = count_gates(product.circuit);
    row.rotations = counts.rotations;
    row.unique_angles = counts.unique_angles;

    // Preamplification figures of merit with the largest in-range
    // amplification for each factor; gamma is floored at 1 (no amplification)
    // and must stay below the subnormalisation.
    const double gates_a = static_cast<double>(ctx.enc_a.circuit.gates.size());
    const double gates_p = static_cast<double>(enc_p.circuit.gates.size());
    const Spectrum sp = spectrum_of(p, config);
    const double g1_raw = max_amplification(ctx.enc_a, ctx.spectrum.sigma_max, config.preamp_delta);
    const double g2_raw = max_amplification(enc_p, sp.sigma_max, config.preamp_delta);
    const double gamma1 = std::clamp(g1_raw, 1.0, ctx.enc_a.subnorm * (1.0 - 1e-9));
    const double gamma2 = std::clamp(g2_raw, 1.0, enc_p.subnorm * (1.0 - 1e-9));
    if (gamma1 < ctx.enc_a.subnorm && gamma2 < enc_p.subnorm) {
        const PreampFigures fig =
            preamp_figure_of_merit(ctx.enc_a.subnorm, enc_p.subnorm, gamma1, gamma2,
                                   config.preamp_delta, config.preamp_eps, gates_a, gates_p);
        row.fom_plain = fig.fom_plain;
        row.fom_preamp = fig.fom_preamp;
    }

    emulation_cross_check(product, pa_full.dense(), config, row);
}

}  // namespace

SweepReport run_sweep(const SweepConfig& config) {
    config.validate();

    // A source context is built once per source; a failure there poisons all
    // of that source's combinations with the same error text.
    std::vector<std::size_t> combo_source;
    std::vector<Combination> combos;
    for (std::size_t si = 0; si < config.sources.size(); ++si) {
        for (std::size_t pi = 0; pi < config.preconditioners.size(); ++pi) {
            const PreconditionerSpec& spec = config.preconditioners[pi];
            const bool classical = config.multiplication != Multiplication::Quantum;
            const bool quantum = config.multiplication != Multiplication::Classical;
            if (classical) {
                if (spec.kind == PreconKind::CLAI) {
                    combos.push_back({si, pi, RowMode::Classical, 0.0});
                } else {
                    for (double f : config.trim_f) combos.push_back({si, pi, RowMode::Classical, f});
                }
            }
            if (quantum && !(spec.kind == PreconKind::DS && classical))
                combos.push_back({si, pi, RowMode::Quantum, 0.0});
        }
    }

    std::vector<SourceContext> contexts(config.sources.size());
    std::vector<std::string> context_errors(config.sources.size());
    for (std::size_t si = 0; si < config.sources.size(); ++si) {
        try {
            contexts[si] = make_source_context(config.sources[si], config);
        } catch (const std::exception& e) {
            context_errors[si] = e.what();
        }
    }

    SweepReport report;
    report.eps = config.preamp_eps;
    report.delta = config.preamp_delta;
    report.rows.resize(combos.size());

    const auto run_one = [&](std::size_t i) {
        const Combination& combo = combos[i];
        const MatrixSource& source = config.sources[combo.source_idx];
        const PreconditionerSpec& spec = config.preconditioners[combo.precon_idx];
        SweepRow& row = report.rows[i];
        row.source = source.label();
        row.precon = precon_kind_name(spec.kind);
        if (spec.kind == PreconKind::SPAI || spec.kind == PreconKind::TPAI) row.infill = spec.infill;
        if (spec.kind == PreconKind::SPAI)
            row.method = spec.method == SpaiMethod::Column ? "column" : "iterative";
        if (!context_errors[combo.source_idx].empty()) {
            row.error = context_errors[combo.source_idx];
            return;
        }
        const SourceContext& ctx = contexts[combo.source_idx];
        row.n = ctx.scaled.size();
        try {
            if (combo.mode == RowMode::Classical)
                fill_classical_row(ctx, spec, config, combo.f, row);
            else
                fill_quantum_row(ctx, spec, config, row);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    if (config.parallelism <= 1) {
        for (std::size_t i = 0; i < combos.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        const int nthreads = static_cast<int>(
            std::min<std::size_t>(static_cast<std::size_t>(config.parallelism), combos.size()));
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t]() {
                for (std::size_t i = t; i < combos.size(); i += nthreads) run_one(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    return report;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string cell(const std::optional<double>& v) { return v ? fmt(*v) : std::string{}; }
std::string cell(const std::optional<index_t>& v) { return v ? std::to_string(*v) : std::string{}; }
std::string cell(const std::optional<int>& v) { return v ? std::to_string(*v) : std::string{}; }

}  // namespace

std::string report_csv(const SweepReport& report) {
    std::string out =
        "source,N,precon,infill,method,s,r_p,sigma_min,kappa,kappa_s,diag_P,diag_PA,"
        "diag_PA_nonzero,rotations,unique_angles,f,l2_err,fom_plain,fom_preamp\n";
    for (const SweepRow& r : report.rows) {
        out += r.source + "," + std::to_string(r.n) + "," + r.precon + "," + cell(r.infill) + "," +
               r.method + "," + cell(r.s) + "," + cell(r.r_p) + "," + cell(r.sigma_min) + "," +
               cell(r.kappa) + "," + cell(r.kappa_s) + "," + cell(r.diag_p) + "," +
               cell(r.diag_pa) + "," + cell(r.diag_pa_nonzero) + "," + cell(r.rotations) + "," +
               cell(r.unique_angles) + "," + cell(r.f) + "," + cell(r.l2_err) + "," +
               cell(r.fom_plain) + "," + cell(r.fom_preamp) + "\n";
    }
    return out;
}

namespace {

void set_optional(nlohmann::json& j, const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
}
void set_optional(nlohmann::json& j, const char* key, const std::optional<index_t>& v) {
    if (v) j[key] = *v;
}
void set_optional(nlohmann::json& j, const char* key, const std::optional<int>& v) {
    if (v) j[key] = *v;
}

}  // namespace

nlohmann::json report_json(const SweepReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& r : report.rows) {
        nlohmann::json j{{"source", r.source}, {"N", r.n}, {"precon", r.precon}};
        if (!r.method.empty()) j["method"] = r.method;
        set_optional(j, "infill", r.infill);
        set_optional(j, "s", r.s);
        set_optional(j, "r_p", r.r_p);
        set_optional(j, "sigma_min", r.sigma_min);
        set_optional(j, "kappa", r.kappa);
        set_optional(j, "kappa_s", r.kappa_s);
        set_optional(j, "diag_P", r.diag_p);
        set_optional(j, "diag_PA", r.diag_pa);
        set_optional(j, "diag_PA_nonzero", r.diag_pa_nonzero);
        set_optional(j, "rotations", r.rotations);
        set_optional(j, "unique_angles", r.unique_angles);
        set_optional(j, "f", r.f);
        set_optional(j, "l2_err", r.l2_err);
        set_optional(j, "fom_plain", r.fom_plain);
        set_optional(j, "fom_preamp", r.fom_preamp);
        set_optional(j, "kappa_s_emulated", r.kappa_s_emulated);
        set_optional(j, "verify_max_abs_err", r.verify_max_abs_err);
        if (!r.error.empty()) j["error"] = r.error;
        rows.push_back(std::move(j));
    }
    return {{"schema", 1}, {"eps", report.eps}, {"delta", report.delta}, {"rows", rows}};
}

namespace {

template <typename T>
std::optional<T> get_optional(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    return j.at(key).get<T>();
}

}  // namespace

SweepReport report_from_json(const nlohmann::json& j) {
    SweepReport report;
    report.eps = j.value("eps", report.eps);
    report.delta = j.value("delta", report.delta);
    for (const auto& rec : j.at("rows")) {
        SweepRow r;
        r.source = rec.at("source").get<std::string>();
        r.n = rec.at("N").get<index_t>();
        r.precon = rec.at("precon").get<std::string>();
        r.method = rec.value("method", std::string{});
        r.infill = get_optional<int>(rec, "infill");
        r.s = get_optional<double>(rec, "s");
        r.r_p = get_optional<double>(rec, "r_p");
        r.sigma_min = get_optional<double>(rec, "sigma_min");
        r.kappa = get_optional<double>(rec, "kappa");
        r.kappa_s = get_optional<double>(rec, "kappa_s");
        r.diag_p = get_optional<index_t>(rec, "diag_P");
        r.diag_pa = get_optional<index_t>(rec, "diag_PA");
        r.diag_pa_nonzero = get_optional<index_t>(rec, "diag_PA_nonzero");
        r.rotations = get_optional<index_t>(rec, "rotations");
        r.unique_angles = get_optional<index_t>(rec, "unique_angles");
        r.f = get_optional<double>(rec, "f");
        r.l2_err = get_optional<double>(rec, "l2_err");
        r.fom_plain = get_optional<double>(rec, "fom_plain");
        r.fom_preamp = get_optional<double>(rec, "fom_preamp");
        r.kappa_s_emulated = get_optional<double>(rec, "kappa_s_emulated");
        r.verify_max_abs_err = get_optional<double>(rec, "verify_max_abs_err");
        r.error = rec.value("error", std::string{});
        report.rows.push_back(std::move(r));
    }
    return report;
}

void emit_report(const SweepReport& report, const std::string& csv_path,
                 const std::string& json_path) {
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot open " + csv_path + " for writing");
        out << report_csv(report);
    }
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("cannot open " + json_path + " for writing");
        out << report_json(report).dump(2) << "\n";
    }
}

}  // namespace qpw
