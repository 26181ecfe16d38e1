// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs every gate criterion end to end and prints one
// PASS/FAIL line per criterion. Exit code 0 only if all required criteria
// pass. Criterion 10 needs an external 1024x1024 pressure-correction matrix
// (set QPW_QCCFD_MTX to its Matrix Market path) and is reported as SKIP when
// absent.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <vector>

#include "qpw/clai.hpp"
#include "qpw/emulate.hpp"
#include "qpw/encode.hpp"
#include "qpw/generate.hpp"
#include "qpw/mat_io.hpp"
#include "qpw/preamp.hpp"
#include "qpw/solve.hpp"
#include "qpw/spai.hpp"
#include "qpw/spectrum.hpp"
#include "qpw/tpai.hpp"
#include "qpw/trim.hpp"

using namespace qpw;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& fn) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                seconds, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

BandedMatrix scaled_pressure(index_t nx, index_t ny) {
    return diagonal_scale(generate_pressure_2d(nx, ny)).scaled;
}

BlockEncoding encode_scaled(const BandedMatrix& m) {
    const MaxNormScaleResult ms = max_norm_scale(m);
    return encode_banded(ms.scaled, ms.r);
}

double block_error(const BlockEncoding& enc, const Eigen::MatrixXd& target, int threads = 4) {
    const Eigen::MatrixXcd block = extract_block(enc, threads);
    return (enc.subnorm * block - target.cast<std::complex<double>>()).cwiseAbs().maxCoeff();
}

struct ClassicalProduct {
    BandedMatrix p;
    BandedMatrix pa_full;
    BandedMatrix pa;  // zero diagonals dropped
};

ClassicalProduct classical_product(const BandedMatrix& a, const MeshDims& mesh, int infill) {
    ClassicalProduct out;
    out.p = spai_column(a, mesh, infill, SpaiSide::Left, 4);
    out.pa_full = banded_multiply(out.p, a);
    out.pa = drop_zero_diagonals(out.pa_full, default_drop_tolerance(out.pa_full)).matrix;
    return out;
}

bool c1_subnormalisation_signature(std::string& detail) {
    for (index_t m : {4, 8, 16, 32}) {
        const BlockEncoding enc = encode_scaled(scaled_pressure(m, m));
        if (enc.subnorm != 3.0) {
            detail = "mesh " + std::to_string(m) + ": subnorm " + std::to_string(enc.subnorm);
            return false;
        }
    }
    detail = "subnorm exactly 3.0 on meshes 4^2..32^2";
    return true;
}

bool c2_table_formulas(std::string& detail) {
    for (index_t m : {16, 32}) {
        const BandedMatrix a = scaled_pressure(m, m);
        const MeshDims mesh{{m, m}};
        for (int i = 0; i <= 3; ++i) {
            const ClassicalProduct cp = classical_product(a, mesh, i);
            if (cp.p.diagonal_count() != spai_pattern_diagonals_2d(i) ||
                cp.pa_full.diagonal_count() != spai_product_diagonals_2d(i) ||
                cp.pa.diagonal_count() != spai_product_nonzero_diagonals_2d(i)) {
                detail = "mesh " + std::to_string(m) + " infill " + std::to_string(i) + ": got " +
                         std::to_string(cp.p.diagonal_count()) + "/" +
                         std::to_string(cp.pa_full.diagonal_count()) + "/" +
                         std::to_string(cp.pa.diagonal_count());
                return false;
            }
        }
    }
    detail = "diag(P), diag(PA), nonzero diag(PA) exact for i in 0..3 on meshes 16^2, 32^2";
    return true;
}

bool c3_encoding_oracles(std::string& detail) {
    const double tol = 1e-9;
    double worst = 0.0;
    const auto track = [&worst](double err) {
        worst = std::max(worst, err);
        return err;
    };

    // Toeplitz family at n = 8, 16, 64
    for (index_t n : {8, 16, 64}) {
        const index_t stride = n == 8 ? 2 : (n == 16 ? 4 : 8);
        const std::map<index_t, double> t = {
            {0, 1.0}, {1, -0.3}, {-1, -0.2}, {stride, -0.25}, {-stride, -0.15}};
        Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
        for (index_t r = 0; r < n; ++r)
            for (index_t c = 0; c < n; ++c) {
                const auto it = t.find(r - c);
                if (it != t.end()) dense(r, c) = it->second;
            }
        if (track(block_error(encode_toeplitz(t, n), dense)) > tol) {
            detail = "toeplitz n=" + std::to_string(n);
            return false;
        }
    }

    // banded, circulant-product and quantum-product families on generated
    // matrices of dimension 8, 16, 64
    const std::vector<std::pair<index_t, index_t>> meshes = {{4, 2}, {4, 4}, {8, 8}};
    for (const auto& [nx, ny] : meshes) {
        const BandedMatrix a = scaled_pressure(nx, ny);
        const BlockEncoding enc_a = encode_scaled(a);
        if (track(block_error(enc_a, a.dense())) > tol) {
            detail = "banded n=" + std::to_string(a.size());
            return false;
        }

        const CirculantSpectrum spectrum = clai_spectrum(a);
        const BlockEncoding enc_c = encode_clai_product(spectrum, enc_a);
        if (track(block_error(enc_c, clai_apply(spectrum, a))) > tol) {
            detail = "circulant-product n=" + std::to_string(a.size());
            return false;
        }

        const int infill = a.size() >= 64 ? 1 : 0;
        const BandedMatrix p = spai_column(a, MeshDims{{nx, ny}}, infill);
        const MaxNormScaleResult ps = max_norm_scale(p);
        const BlockEncoding prod =
            multiply_encodings(encode_banded(ps.scaled, ps.r), enc_a);
        if (track(block_error(prod, p.dense() * a.dense())) > tol) {
            detail = "quantum-product n=" + std::to_string(a.size());
            return false;
        }
    }
    std::ostringstream os;
    os << "worst entrywise error " << worst << " across 12 encodings";
    detail = os.str();
    return true;
}

bool c4_quantum_multiplication_negative(std::string& detail) {
    for (index_t m : {16, 32}) {
        const BandedMatrix a = scaled_pressure(m, m);
        const MeshDims mesh{{m, m}};
        const BlockEncoding enc_a = encode_scaled(a);
        const double kappa_s_base = kappa_sub(enc_a.subnorm, spectral_metrics(a).sigma_min);

        const auto check = [&](double subnorm, double sigma_min, const std::string& label) {
            const double ks = kappa_sub(subnorm, sigma_min);
            if (ks < kappa_s_base) {
                detail = label + " on mesh " + std::to_string(m) + ": kappa_s " +
                         std::to_string(ks) + " < baseline " + std::to_string(kappa_s_base);
                return false;
            }
            return true;
        };

        for (int i = 0; i <= 3; ++i) {
            const BandedMatrix p = spai_column(a, mesh, i, SpaiSide::Left, 4);
            const MaxNormScaleResult ps = max_norm_scale(p);
            const BlockEncoding enc_p = encode_banded(ps.scaled, ps.r);
            const BandedMatrix pa = banded_multiply(p, a);
            const double sigma_min = spectral_metrics(pa).sigma_min;
            if (!check(enc_p.subnorm * enc_a.subnorm, sigma_min, "spai(" + std::to_string(i) + ")"))
                return false;
        }
        for (int i = 0; i <= 3; ++i) {
            const BandedMatrix p = tpai(a, i);
            const MaxNormScaleResult ps = max_norm_scale(p);
            std::map<index_t, double> diags;
            for (const auto& [k, values] : ps.scaled.diagonals()) diags[k] = values.front();
            BlockEncoding enc_p = encode_toeplitz(diags, p.size());
            enc_p.subnorm *= ps.r;
            const BandedMatrix pa = banded_multiply(p, a);
            const double sigma_min = spectral_metrics(pa).sigma_min;
            if (!check(enc_p.subnorm * enc_a.subnorm, sigma_min, "tpai(" + std::to_string(i) + ")"))
                return false;
        }
        const CirculantSpectrum spectrum = clai_spectrum(a);
        const double sigma_min = spectral_metrics_dense(clai_apply(spectrum, a)).sigma_min;
        if (!check(enc_a.subnorm / spectrum.min_abs(), sigma_min, "clai")) return false;
    }
    detail = "kappa_s of every quantum product >= unpreconditioned kappa_s on meshes 16^2, 32^2";
    return true;
}

bool c5_classical_multiplication_positive(std::string& detail) {
    // subnorm window across meshes and infill levels
    double s_lo = 1e300, s_hi = 0.0;
    for (index_t m : {4, 8, 16, 32}) {
        const BandedMatrix a = scaled_pressure(m, m);
        const MeshDims mesh{{m, m}};
        for (int i = 0; i <= 3; ++i) {
            const ClassicalProduct cp = classical_product(a, mesh, i);
            const BlockEncoding enc = encode_scaled(cp.pa);
            s_lo = std::min(s_lo, enc.subnorm);
            s_hi = std::max(s_hi, enc.subnorm);
            if (enc.subnorm < 1.0 || enc.subnorm > 8.0) {
                detail = "subnorm(PA) " + std::to_string(enc.subnorm) + " outside [1, 8] at mesh " +
                         std::to_string(m) + " infill " + std::to_string(i);
                return false;
            }
        }
    }

    const BandedMatrix a = scaled_pressure(32, 32);
    const double kappa_s_base =
        kappa_sub(encode_scaled(a).subnorm, spectral_metrics(a).sigma_min);
    const ClassicalProduct cp = classical_product(a, MeshDims{{32, 32}}, 3);
    const BlockEncoding enc = encode_scaled(cp.pa);
    const double kappa_s_pa = kappa_sub(enc.subnorm, spectral_metrics(cp.pa).sigma_min);
    if (kappa_s_pa * 5.0 > kappa_s_base) {
        detail = "kappa_s reduction factor " + std::to_string(kappa_s_base / kappa_s_pa) + " < 5";
        return false;
    }
    std::ostringstream os;
    os << "subnorm(PA) in [" << s_lo << ", " << s_hi << "], kappa_s reduction "
       << kappa_s_base / kappa_s_pa << "x at mesh 32^2 infill 3";
    detail = os.str();
    return true;
}

bool c6_tpai_closed_forms(std::string& detail) {
    std::mt19937 rng(0xacce5);
    std::uniform_real_distribution<double> dist(-0.45, 0.45);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double a = dist(rng), c = dist(rng), b = 1.0;
        const std::map<index_t, double> a_hat = {{1, a}, {0, b}, {-1, c}};

        const auto tri = tpai_coefficients(a_hat, {-1, 0, 1});
        const double bi = b / (b * b - 2.0 * a * c);
        worst = std::max(worst, std::fabs(tri.at(0) - bi));
        worst = std::max(worst, std::fabs(tri.at(1) - (-a * bi / b)));
        worst = std::max(worst, std::fabs(tri.at(-1) - (-c * bi / b)));

        const auto penta = tpai_coefficients(a_hat, {-2, -1, 0, 1, 2});
        const double d = std::pow(b, 5) - 4.0 * a * std::pow(b, 3) * c + 3.0 * a * a * b * c * c;
        worst = std::max(worst, std::fabs(penta.at(2) - (a * a * b * b - a * a * a * c) / d));
        worst = std::max(worst, std::fabs(penta.at(1) - (-a * b * b * b + a * a * b * c) / d));
        worst = std::max(worst,
                         std::fabs(penta.at(0) -
                                   (std::pow(b, 4) - 2.0 * a * b * b * c + a * a * c * c) / d));
        worst = std::max(worst, std::fabs(penta.at(-1) - (-b * b * b * c + a * b * c * c) / d));
        worst = std::max(worst, std::fabs(penta.at(-2) - (b * b * c * c - a * c * c * c) / d));
    }
    std::ostringstream os;
    os << "worst coefficient error " << worst << " over 100 triples";
    detail = os.str();
    return worst <= 1e-12;
}

bool c7_clai_identities(std::string& detail) {
    double worst_spec = 0.0, worst_inv = 0.0, worst_circ = 0.0;

    // FFT path vs direct double sum on generated and random banded matrices
    std::mt19937 rng(0xc1a1);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<BandedMatrix> cases;
    cases.push_back(scaled_pressure(4, 4));
    cases.push_back(scaled_pressure(16, 16));
    {
        BandedMatrix r(100);
        for (index_t k : {index_t{0}, index_t{1}, index_t{-3}, index_t{9}}) {
            std::vector<double> values(100 - std::llabs(k));
            for (double& v : values) v = dist(rng);
            r.set_diagonal(k, std::move(values));
        }
        std::vector<double> d = r.diagonal(0);
        for (double& v : d) v += 3.0;
        r.set_diagonal(0, d);
        cases.push_back(std::move(r));
    }
    for (const BandedMatrix& a : cases) {
        const index_t n = a.size();
        const CirculantSpectrum s = clai_spectrum(a);
        const Eigen::MatrixXd ad = a.dense();
        for (index_t k = 0; k < n; ++k) {
            std::complex<double> direct = 0.0;
            for (index_t p = 0; p < n; ++p)
                for (index_t q = 0; q < n; ++q)
                    direct += ad(p, q) * std::polar(1.0, -2.0 * M_PI * double(p - q) * double(k) /
                                                             double(n));
            direct /= double(n);
            worst_spec = std::max(worst_spec, std::abs(s.lambda[k] - direct));
        }
        // C^{-1} C = I under the implementation's own transform convention
        const Eigen::MatrixXcd c = circulant_dense(s);
        const Eigen::MatrixXd cinv_c =
            clai_apply(s, BandedMatrix::from_dense(c.real(), 1e-300));
        worst_inv = std::max(
            worst_inv,
            (cinv_c - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
    }

    // circulant-input short circuit
    {
        const index_t n = 64;
        std::vector<double> col(n, 0.0);
        col[0] = 1.0;
        col[1] = -0.3;
        col[n - 1] = -0.2;
        col[8] = -0.25;
        col[n - 8] = -0.15;
        Eigen::MatrixXd c(n, n);
        for (index_t q = 0; q < n; ++q)
            for (index_t p = 0; p < n; ++p) c(p, q) = col[((p - q) % n + n) % n];
        const BandedMatrix a = BandedMatrix::from_dense(c);
        worst_circ = (clai_apply(clai_spectrum(a), a) - Eigen::MatrixXd::Identity(n, n))
                         .cwiseAbs()
                         .maxCoeff();
    }

    std::ostringstream os;
    os << "spectrum err " << worst_spec << ", inverse err " << worst_inv << ", short-circuit err "
       << worst_circ;
    detail = os.str();
    return worst_spec <= 1e-10 && worst_inv <= 1e-10 && worst_circ <= 1e-10;
}

bool c8_trimming(std::string& detail) {
    const std::vector<double> f_values = {0.005, 0.01, 0.02, 0.04, 0.08, 0.16};

    // exactness of the collapse on an emulatable case (mesh 16^2, infill 1)
    {
        const BandedMatrix a = scaled_pressure(16, 16);
        const ClassicalProduct cp = classical_product(a, MeshDims{{16, 16}}, 1);
        const BandedMatrix scaled = max_norm_scale(cp.pa).scaled;
        const BandedMatrix filtered = filter_matrix(scaled, 0.05);
        const BlockEncoding enc = encode_banded(filtered);
        BlockEncoding collapsed = enc;
        collapsed.circuit = collapse_rotations(enc.circuit);
        const Eigen::MatrixXcd b1 = extract_block(enc, 4);
        const Eigen::MatrixXcd b2 = extract_block(collapsed, 4);
        const double err = (b1 - b2).cwiseAbs().maxCoeff();
        if (err > 1e-12) {
            detail = "collapsed block deviates by " + std::to_string(err);
            return false;
        }
    }

    // monotone trends in f and across mesh sizes (SPAI(3) products)
    std::vector<double> ratios;
    for (index_t m : {16, 32, 64}) {
        const BandedMatrix a = scaled_pressure(m, m);
        const ClassicalProduct cp = classical_product(a, MeshDims{{m, m}}, 3);
        const BandedMatrix scaled = max_norm_scale(cp.pa).scaled;
        const BlockEncoding enc0 = encode_banded(scaled);
        const index_t rot0 = count_gates(enc0.circuit).rotations;
        const index_t ang0 = count_gates(enc0.circuit).unique_angles;
        const Eigen::VectorXd b = deterministic_rhs(scaled.size());

        index_t prev_rot = rot0, prev_ang = ang0;
        double prev_l2 = 0.0;
        for (double f : f_values) {
            const BandedMatrix filtered = filter_matrix(scaled, f);
            const CircuitIR after = collapse_rotations(encode_banded(filtered).circuit);
            const TrimStats stats = trimming_metrics(scaled, filtered, b, enc0.circuit, after);
            if (stats.rotations_after > prev_rot || stats.unique_angles_after > prev_ang) {
                detail = "counts increased at mesh " + std::to_string(m) + " f=" +
                         std::to_string(f);
                return false;
            }
            // the solution-error trend is judged below the orthogonal-state
            // distance ceiling (~sqrt(2)), which the heavily filtered large
            // cases hit; counts are checked over the whole sweep
            if (m <= 32 && f <= 0.08 && stats.l2_solution_error + 1e-12 < prev_l2) {
                detail = "l2 error decreased at mesh " + std::to_string(m) + " f=" +
                         std::to_string(f);
                return false;
            }
            prev_rot = stats.rotations_after;
            prev_ang = stats.unique_angles_after;
            prev_l2 = stats.l2_solution_error;
            if (f == 0.04) ratios.push_back(double(stats.rotations_after) / double(rot0));
        }
    }
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        if (ratios[i] > ratios[i - 1] + 1e-12) {
            detail = "rotation ratio not monotone across meshes: " + std::to_string(ratios[0]) +
                     ", " + std::to_string(ratios[1]) + ", " + std::to_string(ratios[2]);
            return false;
        }
    }
    std::ostringstream os;
    os << "rotation ratios at f=0.04: " << ratios[0] << " (16^2) -> " << ratios[1] << " (32^2) -> "
       << ratios[2] << " (64^2)";
    detail = os.str();
    return true;
}

bool c9_preamplification(std::string& detail) {
    std::mt19937 rng(0x9e9e);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double alpha = 2.0 + 200.0 * dist(rng);
        const double beta = 2.0 + 200.0 * dist(rng);
        const double g1 = 1.0 + (alpha - 1.0) * 0.9 * dist(rng);
        const double g2 = 1.0 + (beta - 1.0) * 0.9 * dist(rng);
        const double delta = 0.1 + 0.8 * dist(rng);
        const double eps = 0.001 + 0.1 * dist(rng);
        const double ga = 10.0 + 1000.0 * dist(rng);
        const double gp = 10.0 + 1000.0 * dist(rng);
        const PreampFigures fig = preamp_figure_of_merit(alpha, beta, g1, g2, delta, eps, ga, gp);

        const double amp = 3.0 / delta;
        const double plain = alpha * beta * (ga + gp);
        const double pre = alpha * beta *
                           ((1.0 / g2) * amp * std::log(g1 / eps) * ga +
                            (1.0 / g1) * amp * std::log(g2 / eps) * gp);
        const bool adv = g1 > amp * std::log(g2 / eps) && g2 > amp * std::log(g1 / eps);
        if (std::fabs(fig.fom_plain - plain) > 1e-9 * plain ||
            std::fabs(fig.fom_preamp - pre) > 1e-9 * pre || fig.advantageous != adv) {
            detail = "mismatch at trial " + std::to_string(trial);
            return false;
        }
    }
    // the achievable gamma ~ 1.25 regime offers no advantage
    const PreampFigures weak = preamp_figure_of_merit(3.0, 8.0, 1.25, 2.0, 0.5, 0.01, 100, 400);
    if (weak.advantageous) {
        detail = "gamma ~ 1.25 flagged advantageous";
        return false;
    }
    detail = "20 parameter sets match; gamma ~ 1.25 not advantageous";
    return true;
}

bool c10_external_matrix(std::string& detail) {
    const char* path = std::getenv("QPW_QCCFD_MTX");
    if (!path) {
        detail = "set QPW_QCCFD_MTX to the 1024x1024 pressure-correction matrix to run";
        return true;  // optional, reported as SKIP by the caller
    }
    const BandedMatrix raw = read_matrix_market(path);
    const BandedMatrix a = diagonal_scale(raw).scaled;
    const MeshDims mesh = infer_mesh_dims(a);
    const ClassicalProduct cp = classical_product(a, mesh, 3);
    const MaxNormScaleResult ms = max_norm_scale(cp.pa);
    const BandedMatrix filtered = filter_matrix(ms.scaled, 0.015);
    const BlockEncoding enc = encode_banded(filtered, ms.r);
    const double sigma_min = spectral_metrics(cp.pa).sigma_min;
    const double ks = kappa_sub(enc.subnorm, sigma_min);
    std::ostringstream os;
    os << "subnorm(PA) = " << enc.subnorm << ", kappa_s = " << ks;
    detail = os.str();
    return std::fabs(enc.subnorm - 4.81) <= 0.01 && ks <= 2500.0;
}

}  // namespace

int main() {
    criterion(1, "subnormalisation signature s = 3", c1_subnormalisation_signature);
    criterion(2, "infill diagonal-count formulas", c2_table_formulas);
    criterion(3, "encoding correctness oracles at 1e-9", c3_encoding_oracles);
    criterion(4, "quantum multiplication never lowers kappa_s", c4_quantum_multiplication_negative);
    criterion(5, "classical multiplication lowers kappa_s with bounded subnorm",
              c5_classical_multiplication_positive);
    criterion(6, "tpai closed forms at 1e-12", c6_tpai_closed_forms);
    criterion(7, "clai spectrum and inverse identities at 1e-10", c7_clai_identities);
    criterion(8, "trimming exactness and monotone trends", c8_trimming);
    criterion(9, "preamplification arithmetic", c9_preamplification);
    if (std::getenv("QPW_QCCFD_MTX")) {
        criterion(10, "external 1024x1024 matrix reproduction (optional)", c10_external_matrix);
    } else {
        std::string detail;
        c10_external_matrix(detail);
        std::printf("SKIP criterion 10: external 1024x1024 matrix reproduction (optional) -- %s\n",
                    detail.c_str());
    }
    if (failures == 0) {
        std::printf("all required criteria passed\n");
    } else {
        std::printf("%d criteria FAILED\n", failures);
    }
    return failures == 0 ? 0 : 1;
}
