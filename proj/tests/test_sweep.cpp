// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "qpw/spectrum.hpp"
#include "qpw/sweep.hpp"

using namespace qpw;

namespace {

SweepConfig small_config() {
    SweepConfig config;
    MatrixSource src;
    src.kind = SourceKind::Pressure2D;
    src.dims = {4, 4};
    config.sources.push_back(src);
    PreconditionerSpec ds;
    ds.kind = PreconKind::DS;
    PreconditionerSpec spai;
    spai.kind = PreconKind::SPAI;
    spai.infill = 1;
    config.preconditioners = {ds, spai};
    config.multiplication = Multiplication::Both;
    config.trim_f = {0.0, 0.05};
    return config;
}

}  // namespace

TEST_CASE("config JSON parsing") {
    const nlohmann::json j = {
        {"schema", 1},
        {"sources", {{{"kind", "pressure2d"}, {"dims", {8, 8}}}}},
        {"preconditioners",
         {{{"kind", "ds"}}, {{"kind", "spai"}, {"method", "column"}, {"infill", 2}}}},
        {"multiplication", "both"},
        {"trim_f", {0.0, 0.01}},
        {"tolerances", {{"spectrum", 1e-11}, {"verify", 1e-8}}},
        {"parallelism", 2},
    };
    const SweepConfig c = sweep_config_from_json(j);
    CHECK(c.sources.size() == 1);
    CHECK(c.preconditioners.size() == 2);
    CHECK(c.preconditioners[1].infill == 2);
    CHECK(c.multiplication == Multiplication::Both);
    CHECK(c.spectrum_tol == 1e-11);
    CHECK(c.verify_tol == 1e-8);
    CHECK(c.parallelism == 2);

    nlohmann::json bad = j;
    bad["multiplication"] = "sideways";
    CHECK_THROWS_AS(sweep_config_from_json(bad), std::invalid_argument);
    nlohmann::json empty = j;
    empty["preconditioners"] = nlohmann::json::array();
    CHECK_THROWS_AS(sweep_config_from_json(empty), std::invalid_argument);
}

TEST_CASE("ds-only sweep reproduces the unpreconditioned baseline") {
    SweepConfig config;
    MatrixSource src;
    src.kind = SourceKind::Pressure2D;
    src.dims = {4, 4};
    config.sources.push_back(src);
    PreconditionerSpec ds;
    ds.kind = PreconKind::DS;
    config.preconditioners = {ds};
    config.multiplication = Multiplication::Classical;

    const SweepReport report = run_sweep(config);
    REQUIRE(report.rows.size() == 1);
    const SweepRow& row = report.rows[0];
    REQUIRE(row.error.empty());
    CHECK(row.n == 16);
    CHECK(*row.s == 3.0);
    CHECK(*row.diag_p == 1);
    CHECK(*row.diag_pa == 5);
    CHECK(*row.kappa_s == doctest::Approx(3.0 / *row.sigma_min));
    CHECK(*row.l2_err == 0.0);
}

TEST_CASE("sweep rows are deterministic across runs and parallelism") {
    SweepConfig config = small_config();
    const std::string csv1 = report_csv(run_sweep(config));
    const std::string csv2 = report_csv(run_sweep(config));
    CHECK(csv1 == csv2);
    config.parallelism = 3;
    const std::string csv3 = report_csv(run_sweep(config));
    CHECK(csv1 == csv3);
}

TEST_CASE("sweep emits one row per combination, in config order") {
    const SweepConfig config = small_config();
    const SweepReport report = run_sweep(config);
    // DS: classical f rows only (2); SPAI: classical (2) + quantum (1)
    REQUIRE(report.rows.size() == 5);
    CHECK(report.rows[0].precon == "ds");
    CHECK(*report.rows[0].f == 0.0);
    CHECK(*report.rows[1].f == 0.05);
    CHECK(report.rows[2].precon == "spai");
    CHECK(report.rows[2].method == "column");
    // quantum row is the one carrying figures of merit
    CHECK(report.rows[4].fom_plain.has_value());
    CHECK(report.rows[4].fom_preamp.has_value());
    CHECK_FALSE(report.rows[2].fom_plain.has_value());
    for (const SweepRow& row : report.rows) CHECK(row.error.empty());
}

TEST_CASE("quantum product subnormalisation multiplies the factors") {
    SweepConfig config = small_config();
    config.multiplication = Multiplication::Quantum;
    config.trim_f = {0.0};
    const SweepReport report = run_sweep(config);
    REQUIRE(report.rows.size() == 2);
    const SweepRow& ds = report.rows[0];
    const SweepRow& spai = report.rows[1];
    CHECK(*ds.s == 3.0);
    // alpha * beta = (sum of P diagonal maxima * r_p) * 3; always >= baseline
    CHECK(*spai.s > *ds.s);
    CHECK(*spai.kappa_s >= *ds.kappa_s);
}

TEST_CASE("emulation cross-check agrees with the closed-form kappa_s") {
    SweepConfig config = small_config();
    config.multiplication = Multiplication::Classical;
    config.trim_f = {0.0};
    config.emulate_verify = true;
    config.verify_max_qubits = 16;
    const SweepReport report = run_sweep(config);
    for (const SweepRow& row : report.rows) {
        REQUIRE(row.error.empty());
        REQUIRE(row.kappa_s_emulated.has_value());
        CHECK(std::fabs(*row.kappa_s_emulated - *row.kappa_s) <= 1e-6 * *row.kappa_s);
        CHECK(*row.verify_max_abs_err <= config.verify_tol);
    }
}

TEST_CASE("failures become error rows and the sweep continues") {
    SweepConfig config = small_config();
    MatrixSource odd;
    odd.kind = SourceKind::Pressure2D;
    odd.dims = {3, 3};  // n = 9: encoding must reject it
    config.sources.push_back(odd);
    config.multiplication = Multiplication::Classical;
    config.trim_f = {0.0};

    const SweepReport report = run_sweep(config);
    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[0].error.empty());
    CHECK(report.rows[1].error.empty());
    CHECK(!report.rows[2].error.empty());
    CHECK(!report.rows[3].error.empty());
    CHECK(report.has_errors());
    // classical spectra were still measured for the odd-sized source
    CHECK(report.rows[2].sigma_min.has_value());
}

TEST_CASE("csv shape and the json mirror") {
    SweepReport empty;
    const std::string header = report_csv(empty);
    CHECK(header ==
          "source,N,precon,infill,method,s,r_p,sigma_min,kappa,kappa_s,diag_P,diag_PA,"
          "diag_PA_nonzero,rotations,unique_angles,f,l2_err,fom_plain,fom_preamp\n");

    SweepRow row;
    row.source = "pressure2d-4-4";
    row.n = 16;
    row.precon = "ds";
    row.s = 3.0;
    SweepReport one;
    one.rows.push_back(row);
    const std::string csv = report_csv(one);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);

    const SweepReport back = report_from_json(report_json(one));
    REQUIRE(back.rows.size() == 1);
    CHECK(back.rows[0].source == row.source);
    CHECK(*back.rows[0].s == 3.0);
    CHECK_FALSE(back.rows[0].kappa.has_value());
    CHECK(report_csv(back) == csv);
}

TEST_CASE("csv floats carry 17 significant digits") {
    SweepRow row;
    row.source = "x";
    row.n = 2;
    row.precon = "ds";
    row.s = 1.0 / 3.0;
    SweepReport one;
    one.rows.push_back(row);
    CHECK(report_csv(one).find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("3D laplacian source runs through both modes") {
    SweepConfig config;
    MatrixSource src;
    src.kind = SourceKind::Laplacian3D;
    src.dims = {4, 4, 4};
    config.sources.push_back(src);
    PreconditionerSpec ds;
    ds.kind = PreconKind::DS;
    PreconditionerSpec spai;
    spai.kind = PreconKind::SPAI;
    spai.infill = 1;
    config.preconditioners = {ds, spai};
    config.multiplication = Multiplication::Both;
    config.trim_f = {0.0};

    const SweepReport report = run_sweep(config);
    REQUIRE(report.rows.size() == 3);
    for (const SweepRow& row : report.rows) {
        INFO(row.precon, " ", row.error);
        CHECK(row.error.empty());
        CHECK(row.n == 64);
    }
    // preconditioning helps classically on the 3D case as well
    CHECK(*report.rows[1].kappa < *report.rows[0].kappa);
    CHECK(*report.rows[1].kappa_s < *report.rows[0].kappa_s);
    // and the quantum product still cannot beat the baseline
    CHECK(*report.rows[2].kappa_s >= *report.rows[0].kappa_s);
}
