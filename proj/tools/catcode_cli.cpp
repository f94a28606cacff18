#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catcode/channels.hpp"
#include "catcode/codes.hpp"
#include "catcode/gates.hpp"
#include "catcode/io.hpp"
#include "catcode/recovery.hpp"
#include "catcode/transversal.hpp"

namespace {

using nlohmann::json;
using namespace catcode;

cx parse_complex(const std::string& text) {
    try {
        std::size_t used = 0;
        const double re = std::stod(text, &used);
        if (used == text.size()) return cx(re, 0.0);
        if (text[used] != ',')
            throw argument_error("ArgumentError", "complex values are RE or RE,IM: '" + text + "'");
        std::size_t used2 = 0;
        const std::string rest = text.substr(used + 1);
        const double im = std::stod(rest, &used2);
        if (used2 != rest.size())
            throw argument_error("ArgumentError", "complex values are RE or RE,IM: '" + text + "'");
        return cx(re, im);
    } catch (const std::invalid_argument&) {
        throw argument_error("ArgumentError", "cannot parse '" + text + "' as a number");
    } catch (const std::out_of_range&) {
        throw argument_error("ArgumentError", "number out of range: '" + text + "'");
    }
}

std::pair<std::size_t, std::size_t> parse_photon_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw argument_error("ArgumentError", "photon numbers are given as M,N");
    try {
        const int m = std::stoi(text.substr(0, comma));
        const int n = std::stoi(text.substr(comma + 1));
        if (m < 0 || n < 0) throw argument_error("ArgumentError", "photon numbers are nonnegative");
        return {static_cast<std::size_t>(m), static_cast<std::size_t>(n)};
    } catch (const std::invalid_argument&) {
        throw argument_error("ArgumentError", "cannot parse photon pair '" + text + "'");
    } catch (const std::out_of_range&) {
        throw argument_error("ArgumentError", "photon pair out of range: '" + text + "'");
    }
}

json complex_json(cx v) { return json::array({v.real(), v.imag()}); }

json code_params(const bosonic_code& c) {
    json p;
    p["group"] = c.group.name;
    p["alpha"] = complex_json(c.coherent_params ? c.coherent_params->first : cx(0.0));
    p["beta"] = complex_json(c.coherent_params ? c.coherent_params->second : cx(0.0));
    p["cutoff"] = c.space.cutoff;
    return p;
}

int run_build(const std::string& group, const std::string& alpha_s, const std::string& beta_s,
              int cutoff_arg, const std::string& out_path) {
    const cx alpha = parse_complex(alpha_s);
    const cx beta = parse_complex(beta_s);
    const finite_unitary_group grp = builtin_group(group);
    const std::size_t cutoff =
        cutoff_arg > 0 ? static_cast<std::size_t>(cutoff_arg) : default_cutoff(group, alpha, beta);
    const bosonic_code code = encode_coherent(grp, alpha, beta, cutoff);
    save_code(code, out_path);

    json out = code_params(code);
    out["normalization"] = code.normalization;
    out["projector_norm"] = code.projector_norm;
    out["codewords"] = code.codewords.size();
    out["out"] = out_path;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_check_design(const std::string& group) {
    const finite_unitary_group grp = builtin_group(group);
    const design_check dc = is_unitary_1_design(grp);
    json out;
    out["group"] = group;
    out["order"] = grp.order();
    out["residual"] = dc.residual;
    out["frame_potential"] = dc.frame_potential;
    out["is_design"] = dc.is_design;
    std::cout << out.dump(2) << "\n";
    return dc.is_design ? 0 : 3;
}

int run_kl(const std::string& code_path, double gamma, int pmax, int theta_scan) {
    const bosonic_code code = load_code(code_path);
    if (theta_scan > 0) {
        if (!code.coherent_params)
            throw argument_error("ArgumentError", "stored code carries no seed parameters");
        const double alpha = std::abs(code.coherent_params->first);
        std::vector<double> thetas(static_cast<std::size_t>(theta_scan));
        for (int i = 0; i < theta_scan; ++i)
            thetas[static_cast<std::size_t>(i)] =
                theta_scan == 1 ? 0.0
                                : 0.5 * M_PI * static_cast<double>(i) /
                                      static_cast<double>(theta_scan - 1);
        const theta_scan_result scan =
            kl_theta_scan(code.group.name, alpha, thetas, gamma, pmax);
        std::cout << "theta,score\n";
        for (std::size_t i = 0; i < scan.thetas.size(); ++i)
            std::cout << format_double(scan.thetas[i]) << "," << format_sci(scan.scores[i]) << "\n";
        json out;
        out["group"] = code.group.name;
        out["alpha"] = alpha;
        out["gamma"] = gamma;
        out["pmax"] = pmax;
        out["points"] = theta_scan;
        out["argmax_index"] = scan.argmax;
        out["argmin_index"] = scan.argmin;
        out["argmax_theta"] = scan.thetas[scan.argmax];
        out["argmin_theta"] = scan.thetas[scan.argmin];
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    const kraus_set k = kraus(gamma, pmax, code.space);
    const kl_report rep = kl_matrix(code, k);
    const std::size_t d = rep.codewords;
    const std::size_t nop = rep.labels.size();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            std::printf("# codeword pair %zu,%zu\n", i, j);
            std::printf("p1,q1,p2,q2,entry_re,entry_im\n");
            for (std::size_t p = 0; p < nop; ++p)
                for (std::size_t q = 0; q < nop; ++q) {
                    const cx v = rep.gram(p * d + i, q * d + j);
                    std::printf("%d,%d,%d,%d,%s,%s\n", rep.labels[p].first, rep.labels[p].second,
                                rep.labels[q].first, rep.labels[q].second,
                                format_sci(v.real()).c_str(), format_sci(v.imag()).c_str());
                }
        }
    json out = code_params(code);
    out["gamma"] = gamma;
    out["pmax"] = pmax;
    out["tail_bound"] = k.tail_bound;
    out["score"] = rep.score;
    out["score_offdiag"] = rep.score_offdiag;
    out["score_diag"] = rep.score_diag;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_fidelity(const std::string& code_path, double gamma, const std::string& method, double tol,
                 int pmax) {
    const bosonic_code code = load_code(code_path);
    const kraus_set k = kraus(gamma, pmax, code.space);
    const effective_channel_t eff = effective_channel(code, k);

    json out = code_params(code);
    out["gamma"] = gamma;
    out["pmax"] = pmax;
    out["method"] = method;
    out["support_dim"] = eff.support_dim;

    if (method == "transpose" || method == "both") {
        const double f = fidelity_transpose(eff);
        out["fidelity_transpose"] = f;
        out["infidelity_transpose"] = 1.0 - f;
    }
    if (method == "sdp" || method == "both") {
        out["tol"] = tol;
        const recovery_result res = fidelity_optimal(eff, tol);
        if (!res.certified) {
            std::cerr << error_json("NoConvergence",
                                    "optimal recovery certificate gap " + format_sci(res.gap) +
                                        " after " + std::to_string(res.iterations) + " iterations")
                      << "\n";
            std::cout << out.dump(2) << "\n";
            return 3;
        }
        out["fidelity_opt"] = res.fidelity;
        out["infidelity_opt"] = 1.0 - res.fidelity;
        out["gap"] = res.gap;
        out["iterations"] = res.iterations;
        out["component_sizes"] = res.component_sizes;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_sweep(const std::string& group, double a0, double a1, int steps, double theta, double gamma,
              int pmax, double tol, int jobs, const std::string& out_path) {
    if (steps < 1) throw argument_error("ArgumentError", "alpha-steps must be at least 1");
    std::vector<sweep_point> points;
    for (int i = 0; i < steps; ++i) {
        sweep_point p;
        p.group = group;
        p.alpha = steps == 1
                      ? a0
                      : a0 + (a1 - a0) * static_cast<double>(i) / static_cast<double>(steps - 1);
        p.theta = theta;
        p.gamma = gamma;
        p.max_weight = pmax;
        p.tol = tol;
        points.push_back(p);
    }
    const std::size_t workers =
        jobs > 0 ? static_cast<std::size_t>(jobs)
                 : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::vector<sweep_row> rows = run_sweep(points, workers);

    const std::string csv = sweep_csv(rows);
    std::ofstream of(out_path);
    if (!of) throw argument_error("ArgumentError", "cannot open '" + out_path + "' for writing");
    of << csv;
    of.close();

    json out;
    out["group"] = group;
    out["alpha_start"] = a0;
    out["alpha_stop"] = a1;
    out["alpha_steps"] = steps;
    out["theta"] = theta;
    out["gamma"] = gamma;
    out["pmax"] = pmax;
    out["tol"] = tol;
    out["jobs"] = workers;
    out["rows"] = rows.size();
    out["out"] = out_path;
    bool all_cert = true;
    for (const sweep_row& r : rows) all_cert = all_cert && r.certified;
    out["certified"] = all_cert;
    std::cout << out.dump(2) << "\n";
    return all_cert ? 0 : 3;
}

int run_gates(const std::string& code_path, const std::string& gate, int crot_root) {
    if (gate.empty() && crot_root <= 0)
        throw argument_error("ArgumentError", "nothing to check: pass --gate and/or --crot");
    const bosonic_code code = load_code(code_path);
    json checks = json::array();
    if (!gate.empty()) {
        const gate_report rep = check_single_gate(code, gate);
        checks.push_back(
            {{"gate", rep.gate}, {"deviation", rep.deviation}, {"leakage", rep.leakage},
             {"pass", rep.pass}});
    }
    if (crot_root > 0) {
        const gate_report rep = check_controlled_phase(code, static_cast<std::size_t>(crot_root));
        checks.push_back(
            {{"gate", rep.gate}, {"deviation", rep.deviation}, {"leakage", rep.leakage},
             {"pass", rep.pass}});
    }
    json out = code_params(code);
    out["checks"] = std::move(checks);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_transversal(const std::string& group, int copies) {
    if (copies < 1) throw argument_error("ArgumentError", "copy count must be positive");
    const finite_unitary_group grp = builtin_group(group);
    const multicopy_projector pm = transversal_projector(grp, static_cast<std::size_t>(copies));
    json out;
    out["group"] = group;
    out["copies"] = copies;
    out["norm"] = pm.norm_frobenius;
    out["idempotence_residual"] = pm.idempotence_residual;
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_haar(const std::string& photons, long samples, unsigned long long seed) {
    const auto [m, n] = parse_photon_pair(photons);
    if (samples < 0) throw argument_error("ArgumentError", "sample count must be positive");
    const haar_average h =
        haar_projector_estimate(m, n, static_cast<std::size_t>(samples), seed);
    json out;
    out["m"] = h.photons_a;
    out["n"] = h.photons_b;
    out["samples"] = h.samples;
    out["seed"] = h.seed;
    json mean = json::array();
    for (cx v : h.mean) mean.push_back(complex_json(v));
    out["mean"] = std::move(mean);
    out["norm"] = h.norm;
    out["standard_error"] = h.standard_error;
    out["deviation"] = h.deviation;
    out["within_3_stderr"] = h.deviation <= 3.0 * h.standard_error;
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"group-covariant two-mode cat codes: construction, gate checks and loss recovery"};
    app.require_subcommand(1);

    std::string group, alpha_s, beta_s, out_path, code_path, method = "both", gate;
    int cutoff_arg = 0, pmax = 8, theta_scan = 0, crot_root = 0, steps = 1, jobs = 0, copies = 1;
    double gamma = 0.0, tol = 1e-8, a0 = 1.0, a1 = 1.0, theta = 0.0;
    long samples = 10000;
    unsigned long long seed = 1;
    std::string photons = "1,0";

    CLI::App* build = app.add_subcommand("build", "construct a code and store it as JSON");
    build->add_option("--group", group, "group name")->required();
    build->add_option("--alpha", alpha_s, "first mode amplitude, RE or RE,IM")->required();
    build->add_option("--beta", beta_s, "second mode amplitude, RE or RE,IM")->required();
    build->add_option("--cutoff", cutoff_arg, "per-mode photon cap (default: automatic)");
    build->add_option("--out", out_path, "output JSON path")->required();

    CLI::App* design = app.add_subcommand("check-design", "test the 1-design property");
    design->add_option("--group", group, "group name")->required();

    CLI::App* kl = app.add_subcommand("kl", "error correction diagnostics under pure loss");
    kl->add_option("--code", code_path, "stored code JSON")->required();
    kl->add_option("--gamma", gamma, "loss rate")->required();
    kl->add_option("--pmax", pmax, "loss weight cap");
    kl->add_option("--theta-scan", theta_scan, "scan this many relative phases instead");

    CLI::App* fid = app.add_subcommand("fidelity", "recovery fidelity under pure loss");
    fid->add_option("--code", code_path, "stored code JSON")->required();
    fid->add_option("--gamma", gamma, "loss rate")->required();
    fid->add_option("--method", method, "sdp, transpose or both")
        ->check(CLI::IsMember({"sdp", "transpose", "both"}));
    fid->add_option("--tol", tol, "certificate gap tolerance");
    fid->add_option("--pmax", pmax, "loss weight cap");

    CLI::App* sweep = app.add_subcommand("sweep", "fidelity sweep over coherent amplitudes");
    sweep->add_option("--group", group, "group name")->required();
    sweep->add_option("--alpha-start", a0, "first amplitude")->required();
    sweep->add_option("--alpha-stop", a1, "last amplitude")->required();
    sweep->add_option("--alpha-steps", steps, "grid size")->required();
    sweep->add_option("--theta", theta, "relative phase of beta");
    sweep->add_option("--gamma", gamma, "loss rate")->required();
    sweep->add_option("--pmax", pmax, "loss weight cap");
    sweep->add_option("--tol", tol, "certificate gap tolerance");
    sweep->add_option("--jobs", jobs, "worker threads (default: hardware)");
    sweep->add_option("--out", out_path, "output CSV path")->required();

    CLI::App* gates = app.add_subcommand("gates", "logical action of group lifts");
    gates->add_option("--code", code_path, "stored code JSON")->required();
    gates->add_option("--gate", gate, "single-qubit element: X, Z, H or S");
    gates->add_option("--crot", crot_root, "controlled rotation with this phase root");

    CLI::App* trans = app.add_subcommand("transversal", "group average over qubit copies");
    trans->add_option("--group", group, "group name")->required();
    trans->add_option("--copies", copies, "number of qubit copies")->required();

    CLI::App* haar = app.add_subcommand("haar-test", "Monte Carlo check of the continuous average");
    haar->add_option("--photons", photons, "occupation M,N")->required();
    haar->add_option("--samples", samples, "sample count")->required();
    haar->add_option("--seed", seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << catcode::error_json("ArgumentError", e.what()) << "\n";
        return 2;
    }

    try {
        if (build->parsed()) return run_build(group, alpha_s, beta_s, cutoff_arg, out_path);
        if (design->parsed()) return run_check_design(group);
        if (kl->parsed()) return run_kl(code_path, gamma, pmax, theta_scan);
        if (fid->parsed()) return run_fidelity(code_path, gamma, method, tol, pmax);
        if (sweep->parsed())
            return run_sweep(group, a0, a1, steps, theta, gamma, pmax, tol, jobs, out_path);
        if (gates->parsed()) return run_gates(code_path, gate, crot_root);
        if (trans->parsed()) return run_transversal(group, copies);
        if (haar->parsed()) return run_haar(photons, samples, seed);
    } catch (const catcode::error& e) {
        std::cerr << catcode::error_json(e.id(), e.what()) << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << catcode::error_json("InternalError", e.what()) << "\n";
        return 3;
    }
    return 0;
}
