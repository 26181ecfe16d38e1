// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: generate test matrices, build preconditioners,
// construct and verify block encodings, filter/trim, and run report sweeps.

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "qpw/clai.hpp"
#include "qpw/emulate.hpp"
#include "qpw/encode.hpp"
#include "qpw/generate.hpp"
#include "qpw/mat_io.hpp"
#include "qpw/precond.hpp"
#include "qpw/spectrum.hpp"
#include "qpw/sweep.hpp"
#include "qpw/tpai.hpp"
#include "qpw/trim.hpp"

namespace {

using namespace qpw;

MatrixSource parse_source(const std::string& kind, const std::vector<index_t>& dims,
                          const std::string& path) {
    MatrixSource src;
    if (kind == "pressure2d") src.kind = SourceKind::Pressure2D;
    else if (kind == "laplacian3d") src.kind = SourceKind::Laplacian3D;
    else if (kind == "file") src.kind = SourceKind::MatrixMarketFile;
    else throw CLI::ValidationError("--kind", "unknown kind " + kind);
    src.dims = dims;
    src.path = path;
    return src;
}

struct EncodePipeline {
    BlockEncoding enc;
    BandedMatrix target;  // matrix the encoding represents (pre max-norm)
};

/// Standard pipeline: optional diagonal scaling, max-norm scaling folded into
/// the subnormalisation, then the banded or Toeplitz construction.
EncodePipeline build_encoding(const BandedMatrix& a, const std::string& family, bool raw) {
    EncodePipeline out;
    out.target = raw ? a : diagonal_scale(a).scaled;
    const MaxNormScaleResult ms = max_norm_scale(out.target);
    if (family == "banded") {
        out.enc = encode_banded(ms.scaled, ms.r);
    } else if (family == "toeplitz") {
        std::map<index_t, double> diags;
        for (const auto& [k, values] : ms.scaled.diagonals()) {
            for (double v : values)
                if (v != values.front())
                    throw std::runtime_error("toeplitz encoding requires constant diagonals");
            diags[k] = values.front();
        }
        out.enc = encode_toeplitz(diags, a.size());
        out.enc.subnorm *= ms.r;
        out.enc.extra_scale = ms.r;
    } else {
        throw CLI::ValidationError("--family", "unknown family " + family);
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"banded-matrix preconditioning and block-encoding workbench"};
    app.require_subcommand(1);

    // --- gen ---
    std::string gen_kind = "pressure2d", gen_path, gen_out;
    std::vector<index_t> gen_dims;
    bool gen_pad = false;
    auto* gen = app.add_subcommand("gen", "generate or ingest a test matrix");
    gen->add_option("--kind", gen_kind, "pressure2d | laplacian3d | file");
    gen->add_option("--dims", gen_dims, "mesh extents (e.g. --dims 8 8)");
    gen->add_option("--path", gen_path, "input file for --kind file");
    gen->add_option("--out", gen_out, "output path (.mtx or .json)")->required();
    gen->add_flag("--pad-pow2", gen_pad, "pad with identity rows to the next power of two");

    // --- precon ---
    std::string pre_in, pre_kind = "spai", pre_method = "column", pre_out, pre_product;
    int pre_infill = 0, pre_iterations = 5, pre_threads = 1;
    bool pre_drop = false;
    auto* pre = app.add_subcommand("precon", "build a preconditioner for a matrix");
    pre->add_option("--in", pre_in, "input matrix")->required();
    pre->add_option("--precon", pre_kind, "ds | spai | tpai | clai");
    pre->add_option("--method", pre_method, "spai method: column | iterative");
    pre->add_option("--infill", pre_infill, "infill level");
    pre->add_option("--iterations", pre_iterations, "iterative spai steps");
    pre->add_option("--out", pre_out, "output path for P (spectrum JSON for clai)");
    pre->add_option("--product", pre_product, "output path for the classical product PA");
    pre->add_flag("--drop-zeros", pre_drop, "drop numerically zero diagonals of PA");
    pre->add_option("--threads", pre_threads, "parallel row solves");

    // --- encode ---
    std::string enc_in, enc_family = "banded", enc_out, enc_summary;
    bool enc_raw = false;
    auto* enc = app.add_subcommand("encode", "build a block-encoding circuit");
    enc->add_option("--in", enc_in, "input matrix")->required();
    enc->add_option("--family", enc_family, "banded | toeplitz");
    enc->add_option("--out", enc_out, "circuit JSON output");
    enc->add_option("--summary", enc_summary, "gate-count summary JSON output");
    enc->add_flag("--raw", enc_raw, "skip diagonal scaling");

    // --- verify ---
    std::string ver_in, ver_family = "banded", ver_block;
    double ver_tol = 1e-9;
    bool ver_raw = false;
    int ver_threads = 1;
    auto* ver = app.add_subcommand("verify", "emulate an encoding and check the block");
    ver->add_option("--in", ver_in, "input matrix")->required();
    ver->add_option("--family", ver_family, "banded | toeplitz");
    ver->add_option("--tol", ver_tol, "entrywise tolerance");
    ver->add_option("--block-out", ver_block, "dump the extracted block (matrix market array)");
    ver->add_flag("--raw", ver_raw, "skip diagonal scaling");
    ver->add_option("--threads", ver_threads, "parallel column extraction");

    // --- trim ---
    std::string trim_in, trim_out, trim_bins;
    double trim_f = 0.0;
    bool trim_raw = false;
    auto* trim = app.add_subcommand("trim", "filter a matrix and report circuit savings");
    trim->add_option("--in", trim_in, "input matrix")->required();
    trim->add_option("--f", trim_f, "bin-size factor")->required();
    trim->add_option("--out", trim_out, "filtered matrix output");
    trim->add_option("--bins", trim_bins, "per-diagonal bin dump (JSON)");
    trim->add_flag("--raw", trim_raw, "skip diagonal scaling");

    // --- sweep ---
    std::string sweep_config, sweep_csv, sweep_json;
    auto* sweep = app.add_subcommand("sweep", "run a configured sweep");
    sweep->add_option("--config", sweep_config, "sweep config JSON")->required();
    sweep->add_option("--csv", sweep_csv, "override CSV output path");
    sweep->add_option("--json", sweep_json, "override JSON output path");

    // --- report ---
    std::string rep_in, rep_csv;
    auto* rep = app.add_subcommand("report", "re-emit the CSV from a sweep JSON");
    rep->add_option("--in", rep_in, "sweep report JSON")->required();
    rep->add_option("--csv", rep_csv, "CSV output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            BandedMatrix m = generate_test_matrix(parse_source(gen_kind, gen_dims, gen_path));
            if (!is_power_of_two(m.size()))
                std::cerr << "warning: dimension " << m.size()
                          << " is not a power of two; encoding operations will reject it\n";
            if (gen_pad) m = pad_to_power_of_two(m);
            write_matrix_any(m, gen_out);
            std::cout << "wrote " << gen_out << " (n = " << m.size()
                      << ", diagonals = " << m.diagonal_count() << ")\n";
        } else if (pre->parsed()) {
            const BandedMatrix a = read_matrix_any(pre_in);
            const BandedMatrix scaled = diagonal_scale(a).scaled;
            PreconditionerSpec spec;
            spec.kind = precon_kind_from_name(pre_kind);
            spec.method = pre_method == "iterative" ? SpaiMethod::Iterative : SpaiMethod::Column;
            spec.infill = pre_infill;
            spec.iterations = pre_iterations;
            if (spec.kind == PreconKind::CLAI) {
                const CirculantSpectrum spectrum = clai_spectrum(scaled);
                nlohmann::json lam = nlohmann::json::array();
                for (const auto& l : spectrum.lambda)
                    lam.push_back({{"re", l.real()}, {"im", l.imag()}});
                if (!pre_out.empty()) write_text(pre_out, nlohmann::json{{"lambda", lam}}.dump(2));
                std::cout << "clai spectrum: min |lambda| = " << spectrum.min_abs()
                          << ", max |lambda| = " << spectrum.max_abs() << "\n";
            } else {
                const MeshDims mesh = infer_mesh_dims(scaled);
                const BandedMatrix p = build_preconditioner(scaled, spec, mesh, pre_threads);
                if (!pre_out.empty()) write_matrix_any(p, pre_out);
                std::cout << "P: diagonals = " << p.diagonal_count() << ", max|entry| = "
                          << p.max_abs() << "\n";
                if (!pre_product.empty()) {
                    BandedMatrix pa = banded_multiply(p, scaled);
                    const index_t before = pa.diagonal_count();
                    if (pre_drop) pa = drop_zero_diagonals(pa, default_drop_tolerance(pa)).matrix;
                    write_matrix_any(pa, pre_product);
                    std::cout << "PA: diagonals = " << before << ", nonzero = "
                              << pa.diagonal_count() << "\n";
                }
            }
        } else if (enc->parsed()) {
            const BandedMatrix a = read_matrix_any(enc_in);
            const EncodePipeline pipe = build_encoding(a, enc_family, enc_raw);
            const GateCounts counts = count_gates(pipe.enc.circuit);
            std::cout << "subnorm = " << pipe.enc.subnorm << ", qubits = "
                      << pipe.enc.circuit.qubits << ", rotations = " << counts.rotations
                      << ", unique angles = " << counts.unique_angles << "\n";
            if (!enc_out.empty()) write_text(enc_out, circuit_to_json(pipe.enc.circuit).dump(2));
            if (!enc_summary.empty()) write_text(enc_summary, gate_counts_to_json(counts).dump(2));
        } else if (ver->parsed()) {
            const BandedMatrix a = read_matrix_any(ver_in);
            const EncodePipeline pipe = build_encoding(a, ver_family, ver_raw);
            const VerificationReport report =
                verify_encoding(pipe.enc, pipe.target, ver_tol, ver_threads);
            std::cout << verification_to_json(report).dump(2) << "\n";
            if (!ver_block.empty()) {
                const Eigen::MatrixXcd block = extract_block(pipe.enc, ver_threads);
                std::ofstream out(ver_block);
                write_matrix_market_array(block.real(), out);
            }
            return report.passed ? 0 : 1;
        } else if (trim->parsed()) {
            const BandedMatrix a = read_matrix_any(trim_in);
            const BandedMatrix base = trim_raw ? a : diagonal_scale(a).scaled;
            const MaxNormScaleResult ms = max_norm_scale(base);
            const BandedMatrix filtered = filter_matrix(ms.scaled, trim_f);
            const BlockEncoding enc_before = encode_banded(ms.scaled, ms.r);
            const BlockEncoding enc_after = encode_banded(filtered, ms.r);
            const CircuitIR collapsed = collapse_rotations(enc_after.circuit);
            const Eigen::VectorXd b = deterministic_rhs(base.size());
            const TrimStats stats =
                trimming_metrics(ms.scaled, filtered, b, enc_before.circuit, collapsed);
            std::cout << "rotations " << stats.rotations_before << " -> " << stats.rotations_after
                      << ", unique angles " << stats.unique_angles_before << " -> "
                      << stats.unique_angles_after << ", l2 error " << stats.l2_solution_error
                      << "\n";
            if (!trim_out.empty()) write_matrix_any(filtered, trim_out);
            if (!trim_bins.empty()) {
                nlohmann::json bins;
                for (const auto& [k, values] : ms.scaled.diagonals())
                    bins[std::to_string(k)] = bins_to_json(bin_values(values, trim_f));
                write_text(trim_bins, bins.dump(2));
            }
        } else if (sweep->parsed()) {
            SweepConfig config = load_sweep_config(sweep_config);
            if (!sweep_csv.empty()) config.csv_path = sweep_csv;
            if (!sweep_json.empty()) config.json_path = sweep_json;
            const SweepReport report = run_sweep(config);
            emit_report(report, config.csv_path, config.json_path);
            if (config.csv_path.empty() && config.json_path.empty())
                std::cout << report_csv(report);
            for (const SweepRow& r : report.rows)
                if (!r.error.empty())
                    std::cerr << "error row: " << r.source << " " << r.precon << ": " << r.error
                              << "\n";
            return report.has_errors() ? 1 : 0;
        } else if (rep->parsed()) {
            std::ifstream in(rep_in);
            if (!in) throw std::runtime_error("cannot open " + rep_in);
            nlohmann::json j;
            in >> j;
            write_text(rep_csv, report_csv(report_from_json(j)));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
