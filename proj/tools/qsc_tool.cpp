// Command-line toolkit around the qsc library: capacity tables, layered-rate
// tables, EXIT curves, degree-distribution design, PEG construction and BER
// simulation. Exit codes: 0 ok, 1 usage, 2 validation, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qsc/channel.hpp"
#include "qsc/construct.hpp"
#include "qsc/design.hpp"
#include "qsc/exit.hpp"
#include "qsc/layered.hpp"
#include "qsc/sim.hpp"
#include "qsc/verify.hpp"

using nlohmann::json;

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

std::map<int, double> parse_dist(const json& j) {
    std::map<int, double> dist;
    for (auto it = j.begin(); it != j.end(); ++it) dist[std::stoi(it.key())] = it.value().get<double>();
    return dist;
}

json dist_to_json(const std::map<int, double>& dist) {
    json j = json::object();
    for (auto [d, f] : dist) j[std::to_string(d)] = f;
    return j;
}

int cmd_capacity(const std::vector<int>& ms, const std::vector<double>& epss, const std::string& out_path) {
    std::ostringstream out;
    out << "m,epsilon,c_qsc,eps_bsc,c_bsc,m_c_bsc,relative_loss,above_zero_capacity\n";
    out.precision(10);
    for (int m : ms)
        for (double eps : epss) {
            const qsc::ChannelParams p(m, eps);
            const double cq = qsc::capacity_qsc(p);
            const double eb = qsc::marginal_bsc_eps(p);
            const double cb = qsc::capacity_bsc(eb);
            const auto loss = qsc::relative_capacity_loss(p);
            out << m << ',' << eps << ',' << cq << ',' << eb << ',' << cb << ',' << m * cb << ',';
            if (loss)
                out << *loss;
            else
                out << "undefined";
            out << ',' << (cq > 0.0 ? 1 : 0) << '\n';
        }
    write_output(out_path, out.str());
    return 0;
}

int cmd_layered(const std::vector<int>& ms, const std::vector<double>& epss, const std::string& out_path) {
    std::ostringstream out;
    out << "m,epsilon,mu,rate,c_qsc\n";
    out.precision(10);
    for (int m : ms)
        for (double eps : epss) {
            const double cq = qsc::capacity_qsc(qsc::ChannelParams(m, eps));
            for (int mu = 0; mu <= m - 1; ++mu)
                out << m << ',' << eps << ',' << mu << ',' << qsc::thick_layer_rate(m, mu, eps) << ','
                    << cq << '\n';
            out << m << ',' << eps << ',' << m << ',' << qsc::layered_rate_sum(m, eps) << ',' << cq
                << '\n';
        }
    write_output(out_path, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-ary symmetric channel coding toolkit"};
    app.require_subcommand(1);

    std::string out_path, config_path;
    std::uint64_t seed = 1;
    int workers = 1;

    std::vector<int> ms{4};
    std::vector<double> epss{0.25};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "output path (default: stdout)");
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--workers", workers, "worker threads");
        sub->add_option("--config", config_path, "JSON config file");
    };

    auto* cap = app.add_subcommand("capacity", "q-SC capacity and marginal-BSC comparison table");
    cap->add_option("--m", ms, "bits per symbol (repeatable)");
    cap->add_option("--eps", epss, "symbol error probabilities (repeatable)");
    add_common(cap);

    auto* lay = app.add_subcommand("layered", "layered-scheme rate table (per-mu thick-layer rates)");
    lay->add_option("--m", ms, "bits per symbol (repeatable)");
    lay->add_option("--eps", epss, "symbol error probabilities (repeatable)");
    add_common(lay);

    auto* exi = app.add_subcommand("exit", "front-end EXIT curves");
    std::vector<std::string> models{"bec"};
    std::size_t exit_samples = 100000;
    int grid_points = 101;
    exi->add_option("--m", ms, "bits per symbol (repeatable)");
    exi->add_option("--eps", epss, "symbol error probabilities (repeatable)");
    exi->add_option("--model", models, "prior models: bec and/or gauss")->delimiter(',');
    exi->add_option("--samples", exit_samples, "Monte-Carlo samples per point (gauss)");
    exi->add_option("--grid", grid_points, "number of I_a grid points");
    add_common(exi);

    auto* des = app.add_subcommand("design", "optimize the check degree distribution (LP)");
    int d_v = 3, d_c_max = 50;
    double margin = 5e-3;
    std::size_t fe_samples = 100000;
    bool with_threshold = false;
    des->add_option("--m", ms, "bits per symbol (repeatable)");
    des->add_option("--eps", epss, "design error probabilities (repeatable)");
    des->add_option("--dv", d_v, "variable degree");
    des->add_option("--dcmax", d_c_max, "maximum check degree");
    des->add_option("--margin", margin, "tunnel margin");
    des->add_option("--samples", fe_samples, "front-end curve Monte-Carlo samples");
    des->add_flag("--threshold", with_threshold, "also bisect the decoding threshold");
    add_common(des);

    auto* con = app.add_subcommand("construct", "PEG code construction");
    int n_bits = 0, symbol_width = 1;
    std::string rho_json, report_path;
    con->add_option("--n", n_bits, "code length in bits")->required();
    con->add_option("--m", symbol_width, "bits per symbol");
    con->add_option("--dv", d_v, "variable degree");
    con->add_option("--rho", rho_json, "check degree distribution as JSON, e.g. '{\"6\":1.0}'")
        ->required();
    con->add_option("--report", report_path, "construction report JSON path");
    add_common(con);

    auto* simc = app.add_subcommand("simulate", "Monte-Carlo BER simulation");
    std::string alist_path, channel_name = "qsc";
    std::vector<double> eps_cond;
    int max_iter = 100, refresh_period = 1;
    long min_errors = 100, max_codewords = 10000;
    bool baseline = false, all_zero = false;
    simc->add_option("--alist", alist_path, "code file (alist format)");
    simc->add_option("--m", symbol_width, "bits per symbol");
    simc->add_option("--eps", epss, "sweep points (repeatable)");
    simc->add_option("--channel", channel_name, "qsc or qsc-star");
    simc->add_option("--eps-cond", eps_cond, "q-SC* conditional bit error probabilities");
    simc->add_option("--max-iter", max_iter, "decoder iteration cap");
    simc->add_option("--refresh-period", refresh_period, "front-end refresh period");
    simc->add_option("--min-errors", min_errors, "bit errors to collect per point");
    simc->add_option("--max-codewords", max_codewords, "codeword cap per point");
    simc->add_flag("--baseline", baseline, "freeze the front-end at the initial LLRs");
    simc->add_flag("--all-zero", all_zero, "send the all-zero codeword");
    add_common(simc);

    auto* ver = app.add_subcommand("verify", "run the cross-module consistency checks");
    add_common(ver);

    CLI11_PARSE(app, argc, argv);

    try {
        json cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
            in >> cfg;
            if (cfg.contains("version") && cfg["version"].get<int>() != 1)
                throw std::invalid_argument("unsupported config version");
        }

        if (cap->parsed()) return cmd_capacity(ms, epss, out_path);
        if (lay->parsed()) return cmd_layered(ms, epss, out_path);

        if (exi->parsed()) {
            std::vector<qsc::exit_chart::ExitCurve> curves;
            for (int m : ms)
                for (double eps : epss)
                    for (const auto& model : models) {
                        if (model == "bec")
                            curves.push_back(qsc::exit_chart::make_bec_curve(m, eps, grid_points));
                        else if (model == "gauss")
                            curves.push_back(qsc::exit_chart::make_gaussian_curve(
                                m, eps, grid_points, exit_samples, seed));
                        else
                            throw std::invalid_argument("unknown prior model: " + model);
                    }
            write_output(out_path, qsc::exit_chart::to_csv(curves));
            return 0;
        }

        if (des->parsed()) {
            json out = json::array();
            for (int m : ms)
                for (double eps : epss) {
                    qsc::design::DesignProblem prob;
                    prob.m = m;
                    prob.epsilon = eps;
                    prob.d_v = d_v;
                    prob.d_c_max = d_c_max;
                    prob.margin = margin;
                    prob.fe_samples = fe_samples;
                    prob.seed = seed;
                    const auto res = qsc::design::optimize_rho(prob);
                    json rec;
                    rec["m"] = m;
                    rec["epsilon"] = eps;
                    rec["lambda"] = dist_to_json(res.dist.lambda);
                    rec["rho"] = dist_to_json(res.dist.rho);
                    rec["rate"] = res.rate;
                    rec["normalized_capacity"] =
                        qsc::capacity_qsc(qsc::ChannelParams(m, eps)) / m;
                    if (with_threshold) {
                        qsc::design::ThresholdOptions topts;
                        topts.seed = seed;
                        rec["threshold"] = qsc::design::predict_threshold(res.dist, m, topts);
                    }
                    out.push_back(rec);
                }
            write_output(out_path, out.dump(2) + "\n");
            return 0;
        }

        if (con->parsed()) {
            qsc::construct::ConstructionSpec spec;
            spec.n_bits = n_bits;
            spec.symbol_width = symbol_width;
            spec.d_v = d_v;
            spec.seed = seed;
            spec.rho = parse_dist(json::parse(rho_json));
            const auto code = qsc::construct::peg_construct(spec);
            write_output(out_path, qsc::save_alist(code));
            if (!report_path.empty()) {
                const auto rep = qsc::construct::construction_report(code);
                json j;
                j["n_bits"] = code.n_bits;
                j["n_checks"] = code.n_checks;
                j["symbol_width"] = code.symbol_width;
                j["check_degree_histogram"] = json::object();
                for (auto [d, c] : rep.check_degree_histogram)
                    j["check_degree_histogram"][std::to_string(d)] = c;
                j["bit_degree_histogram"] = json::object();
                for (auto [d, c] : rep.bit_degree_histogram)
                    j["bit_degree_histogram"][std::to_string(d)] = c;
                j["girth"] = rep.girth ? json(*rep.girth) : json("cycle-free");
                j["symbol_violations"] = rep.symbol_violations;
                std::ofstream rout(report_path);
                rout << j.dump(2) << '\n';
            }
            return 0;
        }

        if (simc->parsed()) {
            if (alist_path.empty()) throw std::invalid_argument("simulate: --alist is required");
            std::ifstream in(alist_path);
            if (!in) throw std::invalid_argument("cannot open alist file: " + alist_path);
            std::stringstream buf;
            buf << in.rdbuf();
            const auto code = qsc::load_alist(buf.str(), symbol_width);
            qsc::sim::SimConfig sc;
            sc.channel = channel_name == "qsc-star" ? qsc::sim::ChannelKind::QscStar
                                                    : qsc::sim::ChannelKind::Qsc;
            if (channel_name != "qsc" && channel_name != "qsc-star")
                throw std::invalid_argument("unknown channel: " + channel_name);
            sc.m = symbol_width;
            sc.epsilon_sweep = epss;
            sc.eps_cond = eps_cond;
            sc.max_iter = max_iter;
            sc.refresh_period = refresh_period;
            sc.frontend_refresh = !baseline;
            sc.min_bit_errors = min_errors;
            sc.max_codewords = max_codewords;
            sc.all_zero = all_zero;
            sc.seed = seed;
            sc.workers = workers;
            const auto records = qsc::sim::run_ber(sc, code, [](const qsc::sim::BerRecord& r) {
                std::cerr << "eps=" << r.epsilon << " ber=" << r.ber << " fer=" << r.fer
                          << " codewords=" << r.codewords << "\n";
            });
            write_output(out_path, qsc::sim::to_csv(records));
            return 0;
        }

        if (ver->parsed()) {
            bool all_ok = true;
            std::ostringstream out;
            for (const auto& r : qsc::verify_all()) {
                out << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.detail << ")\n";
                all_ok &= r.passed;
            }
            write_output(out_path, out.str());
            return all_ok ? 0 : 2;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
