// qtau: concurrence lower bounds, distillability verdicts and monogamy
// reports for small quantum states, from generated families or state files.

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

#include "CLI11.hpp"

#include "qtau/bound.hpp"
#include "qtau/criteria.hpp"
#include "qtau/monogamy.hpp"
#include "qtau/oracle.hpp"
#include "qtau/stateio.hpp"

using namespace qtau;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

using Params = std::map<std::string, std::string>;

Params parse_params(const std::vector<std::string>& kvs) {
    Params out;
    for (const std::string& chunk : kvs) {
        std::stringstream ss(chunk);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw InvalidInputError("bad --params entry '" + item + "' (want k=v)");
            out[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    return out;
}

double param_double(const Params& p, const std::string& key, std::optional<double> fallback = {}) {
    const auto it = p.find(key);
    if (it == p.end()) {
        if (fallback)
            return *fallback;
        throw InvalidInputError("missing family parameter '" + key + "'");
    }
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw InvalidInputError("bad value for parameter '" + key + "': " + it->second);
    }
}

ParsedState make_family(const std::string& family, const Params& p) {
    if (family == "horodecki")
        return make_horodecki_sigma(param_double(p, "alpha"));
    if (family == "isotropic")
        return make_isotropic(static_cast<std::size_t>(param_double(p, "d", 3.0)),
                              param_double(p, "F"));
    if (family == "werner3")
        return make_werner3(param_double(p, "lam"));
    if (family == "aharonov")
        return make_aharonov();
    if (family == "w5") {
        const char* keys[5] = {"a", "b", "c", "d", "e"};
        std::array<Complex, 5> coeffs;
        bool any = false;
        for (int t = 0; t < 5; ++t) {
            const auto it = p.find(keys[t]);
            if (it != p.end()) {
                coeffs[t] = parse_complex(it->second);
                any = true;
            } else {
                coeffs[t] = Complex{0, 0};
            }
        }
        if (!any)
            coeffs.fill(Complex{1.0 / std::sqrt(5.0), 0.0});
        return make_generalized_w(coeffs, true);
    }
    throw InvalidInputError("unknown family '" + family +
                            "' (known: horodecki isotropic werner3 aharonov w5)");
}

struct InputOpts {
    std::string in_file;
    std::string family;
    std::vector<std::string> params;
};

void add_input_options(CLI::App* cmd, InputOpts& opts) {
    cmd->add_option("--in", opts.in_file, "state file (see README for the format)");
    cmd->add_option("--family", opts.family,
                    "generate the input state: horodecki|isotropic|werner3|aharonov|w5");
    cmd->add_option("--params", opts.params, "family parameters, e.g. alpha=4.5 or d=3,F=0.9");
}

ParsedState load_state(const InputOpts& opts) {
    if (!opts.in_file.empty() && !opts.family.empty())
        throw InvalidInputError("give either --in or --family, not both");
    if (!opts.in_file.empty())
        return parse_state_file(opts.in_file);
    if (!opts.family.empty())
        return make_family(opts.family, parse_params(opts.params));
    throw InvalidInputError("no input state: use --in FILE or --family NAME");
}

DensityMatrix as_density(ParsedState state) {
    if (auto* rho = std::get_if<DensityMatrix>(&state))
        return std::move(*rho);
    return std::get<PureState>(state).projector();
}

PureState as_pure(ParsedState state) {
    if (auto* psi = std::get_if<PureState>(&state))
        return std::move(*psi);
    throw InvalidInputError("this command needs a pure state input");
}

void emit(const std::string& key, double value) {
    std::cout << key << "=" << fmt(value) << "\n";
}

void emit(const std::string& key, bool value) {
    std::cout << key << "=" << (value ? 1 : 0) << "\n";
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepSpec {
    std::string family;
    std::string param;
    double from = 0.0;
    double to = 0.0;
    std::size_t steps = 0;
    std::vector<std::string> metrics;
    std::string out_file;
    std::vector<std::string> fixed_params;
};

std::string sweep_csv(const SweepSpec& spec) {
    static const std::map<std::string, std::string> param_of_family = {
        {"horodecki", "alpha"}, {"isotropic", "F"}, {"werner3", "lam"}};
    const auto fam = param_of_family.find(spec.family);
    if (fam == param_of_family.end())
        throw InvalidInputError("unknown sweep family '" + spec.family +
                                "' (known: horodecki isotropic werner3)");
    if (spec.param != fam->second)
        throw InvalidInputError("family '" + spec.family + "' sweeps parameter '" +
                                fam->second + "', not '" + spec.param + "'");
    if (spec.steps < 2)
        throw InvalidInputError("sweep needs steps >= 2");
    for (const std::string& m : spec.metrics)
        if (m != "tau" && m != "ccnr_sq" && m != "ppt_min_eig")
            throw InvalidInputError("unknown metric '" + m +
                                    "' (known: tau ccnr_sq ppt_min_eig)");

    const Params fixed = parse_params(spec.fixed_params);

    std::vector<std::string> rows(spec.steps);
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::string error_text;
    std::mutex error_mutex;

    auto eval_row = [&](std::size_t t) {
        const double x = spec.from + (spec.to - spec.from) * static_cast<double>(t) /
                                         static_cast<double>(spec.steps - 1);
        Params p = fixed;
        p[spec.param] = fmt(x);
        const DensityMatrix rho = as_density(make_family(spec.family, p));
        std::string row = fmt(x);
        for (const std::string& m : spec.metrics) {
            row += ',';
            if (m == "tau")
                row += fmt(tau(rho).tau);
            else if (m == "ccnr_sq") {
                const double c = ccnr_lower_bound(rho);
                row += fmt(c * c);
            } else {
                row += fmt(is_ppt(rho).second);
            }
        }
        return row;
    };

    auto worker = [&] {
        for (;;) {
            const std::size_t t = cursor.fetch_add(1);
            if (t >= spec.steps || failed.load())
                break;
            try {
                rows[t] = eval_row(t);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed.store(true);
                error_text = e.what();
            }
        }
    };
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), spec.steps);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (std::thread& th : pool)
        th.join();
    if (failed.load())
        throw InvalidInputError("sweep evaluation failed: " + error_text);

    std::string csv = spec.param;
    for (const std::string& m : spec.metrics)
        csv += ',' + m;
    csv += '\n';
    for (const std::string& row : rows) {
        csv += row;
        csv += '\n';
    }
    return csv;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
    CLI::App app{"tau concurrence bounds, distillability and monogamy toolkit"};
    app.require_subcommand(1);

    // --- tau
    InputOpts tau_in;
    bool per_subspace = false;
    CLI::App* cmd_tau = app.add_subcommand("tau", "lower bound on squared concurrence");
    add_input_options(cmd_tau, tau_in);
    cmd_tau->add_flag("--per-subspace", per_subspace, "list every 2x2 subspace term");
    cmd_tau->callback([&] {
        const DensityMatrix rho = as_density(load_state(tau_in));
        const TauReport rep = tau(rho);
        if (per_subspace) {
            for (const SubspaceTerm& t : rep.per_subspace)
                std::cout << "subspace (" << t.quad.i << "," << t.quad.j << ";" << t.quad.k
                          << "," << t.quad.l << ") C=" << fmt(t.concurrence)
                          << " lambdas=" << fmt(t.lambdas[0]) << " " << fmt(t.lambdas[1])
                          << " " << fmt(t.lambdas[2]) << " " << fmt(t.lambdas[3]) << "\n";
        }
        emit("tau", rep.tau);
    });

    // --- concurrence-pure
    InputOpts conc_in;
    std::size_t cut = 1;
    CLI::App* cmd_conc =
        app.add_subcommand("concurrence-pure", "squared concurrence of a pure state");
    add_input_options(cmd_conc, conc_in);
    cmd_conc->add_option("--cut", cut, "subsystems in the A group (default 1)");
    cmd_conc->callback([&] {
        const PureState psi = as_pure(load_state(conc_in));
        const double c2 = pure_concurrence_sq(psi, cut);
        emit("concurrence_sq", c2);
        emit("concurrence", std::sqrt(std::max(0.0, c2)));
    });

    // --- ppt
    InputOpts ppt_in;
    CLI::App* cmd_ppt = app.add_subcommand("ppt", "positive partial transpose test");
    add_input_options(cmd_ppt, ppt_in);
    cmd_ppt->callback([&] {
        const auto [flag, min_eig] = is_ppt(as_density(load_state(ppt_in)));
        emit("ppt", flag);
        emit("ppt_min_eig", min_eig);
    });

    // --- ccnr
    InputOpts ccnr_in;
    CLI::App* cmd_ccnr =
        app.add_subcommand("ccnr", "realignment/CCNR concurrence lower bound");
    add_input_options(cmd_ccnr, ccnr_in);
    cmd_ccnr->callback([&] {
        const double c = ccnr_lower_bound(as_density(load_state(ccnr_in)));
        emit("ccnr", c);
        emit("ccnr_sq", c * c);
    });

    // --- verdict
    InputOpts verdict_in;
    std::size_t copies = 1;
    CLI::App* cmd_verdict =
        app.add_subcommand("verdict", "separability/distillability verdict");
    add_input_options(cmd_verdict, verdict_in);
    cmd_verdict->add_option("--copies", copies, "tensor-power budget N (default 1)");
    cmd_verdict->callback([&] {
        const Verdict v = verdict(as_density(load_state(verdict_in)), copies);
        std::cout << v.notes << "\n";
        emit("tau", v.tau_value);
        emit("tau_positive", v.tau_positive);
        emit("ppt", v.ppt);
        emit("ppt_min_eig", v.ppt_min_eigenvalue);
        emit("ccnr", v.ccnr_bound);
        emit("distillable", v.distillable);
    });

    // --- monogamy
    InputOpts mono_in;
    std::vector<std::size_t> mono_dims;
    CLI::App* cmd_mono =
        app.add_subcommand("monogamy", "tripartite monogamy report for a pure state");
    add_input_options(cmd_mono, mono_in);
    cmd_mono->add_option("--dims", mono_dims, "three group dimensions d1 d2 d3")
        ->expected(3)
        ->required();
    cmd_mono->callback([&] {
        const PureState psi = as_pure(load_state(mono_in));
        const MonogamyReport r =
            monogamy_tripartite(psi, mono_dims[0], mono_dims[1], mono_dims[2]);
        emit("tau_ab", r.tau_ab);
        emit("tau_ac", r.tau_ac);
        emit("tau_a_bc", r.tau_a_bc);
        emit("residual", r.residual);
        emit("closed_form", r.closed_form);
        emit("satisfied", r.satisfied);
    });

    // --- residual-closed
    InputOpts res_in;
    std::vector<std::size_t> res_dims;
    CLI::App* cmd_res = app.add_subcommand(
        "residual-closed", "closed-form residual entanglement of a pure tripartite state");
    add_input_options(cmd_res, res_in);
    cmd_res->add_option("--dims", res_dims, "three group dimensions d1 d2 d3")
        ->expected(3)
        ->required();
    cmd_res->callback([&] {
        const PureState psi = as_pure(load_state(res_in));
        emit("residual_closed",
             residual_closed_form(psi, res_dims[0], res_dims[1], res_dims[2]));
    });

    // --- multi-monogamy
    InputOpts multi_in;
    std::string partition_spec;
    CLI::App* cmd_multi = app.add_subcommand(
        "multi-monogamy", "partitioned monogamy inequality for a pure state");
    add_input_options(cmd_multi, multi_in);
    cmd_multi
        ->add_option("--partition", partition_spec,
                     "groups of subsystem indices, A first, e.g. 0|1,2|3,4")
        ->required();
    cmd_multi->callback([&] {
        const PureState psi = as_pure(load_state(multi_in));
        std::vector<std::vector<std::size_t>> partition;
        std::stringstream groups(partition_spec);
        std::string group;
        while (std::getline(groups, group, '|')) {
            std::vector<std::size_t> members;
            std::stringstream items(group);
            std::string item;
            while (std::getline(items, item, ',')) {
                try {
                    members.push_back(std::stoul(item));
                } catch (const std::exception&) {
                    throw InvalidInputError("bad subsystem index '" + item +
                                            "' in --partition");
                }
            }
            partition.push_back(std::move(members));
        }
        const MultiMonogamyReport r = monogamy_multipartite(psi, partition);
        double sum = 0.0;
        for (std::size_t t = 0; t < r.per_pair.size(); ++t) {
            emit("tau_pair_" + std::to_string(t), r.per_pair[t]);
            sum += r.per_pair[t];
        }
        emit("sum_pairs", sum);
        emit("tau_total", r.tau_total);
        emit("satisfied", r.satisfied);
    });

    // --- oracle
    InputOpts oracle_in;
    OracleConfig oracle_cfg;
    CLI::App* cmd_oracle =
        app.add_subcommand("oracle", "convex-roof upper estimate of the concurrence");
    add_input_options(cmd_oracle, oracle_in);
    cmd_oracle->add_option("--samples", oracle_cfg.samples, "sampled decompositions");
    cmd_oracle->add_option("--refine-steps", oracle_cfg.refine_steps, "greedy moves per restart");
    cmd_oracle->add_option("--restarts", oracle_cfg.refine_restarts, "refinement restarts");
    cmd_oracle->add_option("--seed", oracle_cfg.seed, "RNG seed");
    cmd_oracle->add_option("--sizes", oracle_cfg.decomposition_sizes,
                           "decomposition sizes (default rank..rank+2)");
    cmd_oracle->callback([&] {
        const double est = convex_roof_upper(as_density(load_state(oracle_in)), oracle_cfg);
        emit("roof_upper", est);
        emit("roof_upper_sq", est * est);
    });

    // --- sweep
    SweepSpec sweep_spec;
    std::string metrics_list = "tau";
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "family parameter sweep to CSV");
    cmd_sweep->add_option("--family", sweep_spec.family)->required();
    cmd_sweep->add_option("--param", sweep_spec.param)->required();
    cmd_sweep->add_option("--from", sweep_spec.from)->required();
    cmd_sweep->add_option("--to", sweep_spec.to)->required();
    cmd_sweep->add_option("--steps", sweep_spec.steps)->required();
    cmd_sweep->add_option("--metrics", metrics_list, "comma list: tau,ccnr_sq,ppt_min_eig");
    cmd_sweep->add_option("--out", sweep_spec.out_file, "CSV file (stdout if omitted)");
    cmd_sweep->add_option("--params", sweep_spec.fixed_params,
                          "fixed family parameters, e.g. d=4");
    cmd_sweep->callback([&] {
        std::stringstream items(metrics_list);
        std::string item;
        while (std::getline(items, item, ','))
            sweep_spec.metrics.push_back(item);
        const std::string csv = sweep_csv(sweep_spec);
        if (sweep_spec.out_file.empty()) {
            std::cout << csv;
        } else {
            std::ofstream out(sweep_spec.out_file, std::ios::binary);
            if (!out)
                throw InvalidInputError("cannot write '" + sweep_spec.out_file + "'");
            out << csv;
        }
    });

    // --- gen
    std::string gen_family, gen_out;
    std::vector<std::string> gen_params;
    CLI::App* cmd_gen = app.add_subcommand("gen", "generate a family state file");
    cmd_gen->add_option("--family", gen_family)->required();
    cmd_gen->add_option("--params", gen_params, "family parameters, e.g. alpha=4.5");
    cmd_gen->add_option("--out", gen_out)->required();
    cmd_gen->callback([&] {
        const ParsedState state = make_family(gen_family, parse_params(gen_params));
        if (const auto* rho = std::get_if<DensityMatrix>(&state))
            write_state_file(gen_out, *rho);
        else
            write_state_file(gen_out, std::get<PureState>(state));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // every usage problem maps to exit code 1
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const NumericalFailureError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
