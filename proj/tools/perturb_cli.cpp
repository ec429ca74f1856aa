#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "perturb/perturb.hpp"

using json = nlohmann::json;
using namespace perturb;

namespace {

struct FamilyArgs {
    std::string family;
    std::string input;
    int n = 0;
    std::optional<int> d;
    std::optional<double> eta;
    int overlap = 0;
};

void add_family_options(CLI::App* cmd, FamilyArgs& a, const std::vector<std::string>& families) {
    cmd->add_option("--family", a.family, "Host family")->check(CLI::IsMember(families));
    cmd->add_option("--n", a.n, "Number of vertices");
    cmd->add_option("--d", a.d, "Size of the small side (bipartite)");
    cmd->add_option("--eta", a.eta, "Deficiency n/2 - d (bipartite)");
    cmd->add_option("--overlap", a.overlap, "Shared vertices (two-cliques)");
}

int bipartite_d(const FamilyArgs& a) {
    if (a.d && a.eta) throw std::invalid_argument("give --d or --eta, not both");
    if (a.d) return *a.d;
    if (!a.eta) throw std::invalid_argument("bipartite family needs --d or --eta");
    const double d = a.n / 2.0 - *a.eta;
    if (d != std::floor(d)) throw std::invalid_argument("n/2 - eta must be an integer");
    return static_cast<int>(d);
}

HostSpec host_from(const FamilyArgs& a) {
    if (!a.input.empty()) {
        std::ifstream in(a.input);
        if (!in) throw std::runtime_error("cannot open " + a.input);
        return HostSpec::custom(read_edge_list(in));
    }
    if (a.family == "bipartite") return HostSpec::bipartite(a.n, bipartite_d(a));
    if (a.family == "two-cliques") return HostSpec::two_cliques(a.n, a.overlap);
    throw std::invalid_argument("give --input or a host --family");
}

json edges_json(const std::vector<Edge>& edges) {
    json out = json::array();
    for (const Edge& e : edges) out.push_back({e.u, e.v});
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

json check_property(const std::string& property, const Graph& g) {
    json out{{"property", property}, {"n", g.order()}, {"edges", g.edge_count()}};
    if (property == "ham") {
        const auto cycle = hamiltonian_exact(g);
        out["verdict"] = cycle.has_value();
        out["certificate"] = cycle ? json(cycle->vertices) : json(nullptr);
    } else if (property == "pm") {
        const auto m = max_matching(g);
        out["verdict"] = 2 * m.size() == static_cast<std::size_t>(g.order());
        out["certificate"] = edges_json(m.pairs());
    } else if (property == "2conn") {
        out["verdict"] = is_2_connected(g);
    } else if (property == "pancyclic") {
        const auto lengths = cycle_length_set(g);
        json present = json::array();
        for (int len = 3; len <= g.order(); ++len)
            if (lengths >> len & 1U) present.push_back(len);
        out["verdict"] = pancyclic_exact(g);
        out["cycle_lengths"] = present;
    } else if (property == "longest-cycle") {
        const auto cycle = longest_cycle_exact(g);
        out["verdict"] = cycle.length();
        out["certificate"] = cycle.vertices;
    } else if (property == "max-matching") {
        const auto m = max_matching(g);
        out["verdict"] = m.size();
        out["certificate"] = edges_json(m.pairs());
    } else if (property == "max-linear-forest") {
        const auto forest = max_linear_forest(g);
        out["verdict"] = forest.size();
        out["certificate"] = edges_json(forest);
    }
    return out;
}

json probe_json(const ProbeResult& p) {
    const auto ci = p.wilson();
    return {{"m", p.m}, {"p", p.p}, {"trials", p.trials}, {"successes", p.successes}, {"aborted", p.aborted},
            {"freq", p.freq()}, {"wilson_lo", ci.lo}, {"wilson_hi", ci.hi}};
}

json y_json(const YStatistics& s) {
    json quantiles = json::object();
    for (const auto& [q, v] : s.quantiles) quantiles[detail::format_double(q)] = v;
    json fits = json::array();
    for (const auto& f : s.round_fits)
        fits.push_back({{"round", f.round}, {"runs", f.runs}, {"mean_samples", f.mean_samples},
                        {"mean_expected", f.mean_expected}});
    return {{"runs", s.runs},
            {"successes", s.successes},
            {"mean_Y", s.mean},
            {"var_Y", s.variance},
            {"se_mean", s.se_mean},
            {"se_var", s.se_variance},
            {"quantiles", quantiles},
            {"max_rounds", s.max_rounds},
            {"mean_rounds", s.mean_rounds},
            {"bound_violations", s.bound_violations},
            {"mean_bound", s.mean_bound},
            {"var_bound", s.variance_bound},
            {"mean_exceeds", s.mean_exceeds},
            {"var_exceeds", s.variance_exceeds},
            {"round_fits", fits}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randomly perturbed dense graphs: generators, exact checks, sprinkling and thresholds"};
    app.require_subcommand(1);

    // generate
    FamilyArgs gen;
    double gen_p = 0.0;
    std::uint64_t gen_m = 0;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "Write a host or random graph as an edge list");
    add_family_options(generate, gen, {"bipartite", "two-cliques", "gnp", "gnm"});
    generate->get_option("--family")->required();
    generate->get_option("--n")->required();
    generate->add_option("--p", gen_p, "Edge probability (gnp)");
    generate->add_option("--m", gen_m, "Edge count (gnm)");
    generate->add_option("--seed", gen_seed, "Random seed");
    generate->add_option("--output", gen_out, "Output file (default stdout)");

    // check
    std::string check_prop;
    std::string check_in;
    auto* check = app.add_subcommand("check", "Run an exact oracle on an edge list and print JSON");
    check->add_option("--property", check_prop, "Property to decide")
        ->required()
        ->check(CLI::IsMember({"ham", "pm", "2conn", "pancyclic", "longest-cycle", "max-matching", "max-linear-forest"}));
    check->add_option("--input", check_in, "Edge-list file")->required();

    // sprinkle
    FamilyArgs spr;
    std::string spr_kind = "ham";
    std::string spr_mode = "certified";
    int spr_trials = 1;
    std::uint64_t spr_seed = 1;
    std::optional<std::uint64_t> spr_m0;
    std::uint64_t spr_lambda = 0;
    int spr_threads = 1;
    std::string spr_trace;
    auto* sprinkle = app.add_subcommand("sprinkle", "Run the sprinkling process and summarise Y");
    add_family_options(sprinkle, spr, {"bipartite", "two-cliques"});
    sprinkle->add_option("--input", spr.input, "Host edge-list file");
    sprinkle->add_option("--kind", spr_kind, "Structure to complete")->check(CLI::IsMember({"ham", "pm"}));
    sprinkle->add_option("--mode", spr_mode, "Driver mode")->check(CLI::IsMember({"certified", "heuristic"}));
    sprinkle->add_option("--trials", spr_trials, "Independent runs")->check(CLI::PositiveNumber);
    sprinkle->add_option("--seed", spr_seed, "Master seed");
    sprinkle->add_option("--m0", spr_m0, "Initial sprinkle size");
    sprinkle->add_option("--lambda", spr_lambda, "Slack added to the sample bound");
    sprinkle->add_option("--threads", spr_threads, "Worker threads")->check(CLI::PositiveNumber);
    sprinkle->add_option("--trace-out", spr_trace, "Per-round trace CSV");

    // threshold
    FamilyArgs thr;
    std::string thr_prop = "ham";
    int thr_trials = 200;
    std::uint64_t thr_seed = 1;
    std::optional<std::uint64_t> thr_lo;
    std::optional<std::uint64_t> thr_hi;
    std::vector<std::uint64_t> thr_probes;
    int thr_threads = 1;
    std::string thr_out;
    auto* threshold = app.add_subcommand("threshold", "Locate the 50% point in m by bisection");
    add_family_options(threshold, thr, {"bipartite", "two-cliques"});
    threshold->add_option("--input", thr.input, "Host edge-list file");
    threshold->add_option("--property", thr_prop, "Monotone property")
        ->check(CLI::IsMember({"ham", "pm", "2conn", "linear-forest"}));
    threshold->add_option("--trials", thr_trials, "Trials per probe")->check(CLI::PositiveNumber);
    threshold->add_option("--seed", thr_seed, "Master seed");
    threshold->add_option("--lo", thr_lo, "Lower end of the bracket in m");
    threshold->add_option("--hi", thr_hi, "Upper end of the bracket in m");
    threshold->add_option("--probe", thr_probes, "Only estimate these m values, no bisection");
    threshold->add_option("--threads", thr_threads, "Worker threads")->check(CLI::PositiveNumber);
    threshold->add_option("--out", thr_out, "Results CSV");

    // conjecture
    double alpha = 0.3;
    double tol = 1e-10;
    bool as_json = false;
    auto* conjecture = app.add_subcommand("conjecture", "Solve for the perfect-matching constant C(alpha)");
    conjecture->add_option("--alpha", alpha, "alpha in (0, 1/2)")->required();
    conjecture->add_option("--tol", tol, "Residual tolerance");
    conjecture->add_flag("--json", as_json, "Print JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            RandomSource rng(gen_seed);
            Graph g;
            if (gen.family == "gnp")
                g = gnp(gen.n, gen_p, rng);
            else if (gen.family == "gnm")
                g = gnm(gen.n, gen_m, rng);
            else
                g = host_from(gen).build();
            if (gen_out.empty()) {
                write_edge_list(std::cout, g);
            } else {
                auto out = open_out(gen_out);
                write_edge_list(out, g);
            }
        } else if (check->parsed()) {
            std::ifstream in(check_in);
            if (!in) throw std::runtime_error("cannot open " + check_in);
            std::cout << check_property(check_prop, read_edge_list(in)).dump(2) << '\n';
        } else if (sprinkle->parsed()) {
            const Graph h = host_from(spr).build();
            SprinkleConfig cfg;
            cfg.m0 = spr_m0;
            cfg.lambda = spr_lambda;
            cfg.mode = spr_mode == "certified" ? SprinkleMode::certified : SprinkleMode::heuristic;
            const auto kind = spr_kind == "ham" ? SprinkleTrace::Kind::cycle : SprinkleTrace::Kind::matching;
            const auto stats = y_statistics(h, cfg, kind, spr_trials, spr_seed, spr_threads);
            if (!spr_trace.empty()) {
                auto out = open_out(spr_trace);
                write_trace_csv(out, stats.traces);
            }
            json summary = y_json(stats);
            summary["n"] = h.order();
            summary["eta"] = twice_eta(h) / 2.0;
            summary["kind"] = spr_kind;
            summary["mode"] = spr_mode;
            std::cout << summary.dump(2) << '\n';
        } else if (threshold->parsed()) {
            const HostSpec host = host_from(thr);
            const Property property = parse_property(thr_prop);
            std::vector<ProbeResult> probes;
            json summary{{"family", to_string(host.family)}, {"n", host.n}, {"d", host.d()}, {"eta", host.eta()},
                         {"property", thr_prop}, {"trials", thr_trials}};
            if (!thr_probes.empty()) {
                for (std::uint64_t m : thr_probes)
                    probes.push_back(estimate_probability(host, PerturbationSpec::uniform(m), property, thr_trials,
                                                          thr_seed, {thr_threads, false}));
            } else {
                ThresholdOptions opts;
                opts.lo = thr_lo;
                opts.hi = thr_hi;
                opts.threads = thr_threads;
                auto est = locate_threshold(host, property, thr_trials, thr_seed, opts);
                summary["m_star"] = est.m_star;
                summary["p_star"] = est.p_star;
                summary["predicted"] = est.predicted_m;
                summary["predicted_p"] = est.predicted_p;
                summary["ratio"] = est.predicted_m > 0.0 ? json(est.ratio()) : json(nullptr);
                summary["bracket"] = {est.bracket_lo, est.bracket_hi};
                summary["aborted"] = est.aborted;
                summary["unreliable"] = est.unreliable;
                probes = std::move(est.probes);
            }
            json rows = json::array();
            for (const auto& p : probes) rows.push_back(probe_json(p));
            summary["probes"] = rows;
            if (!thr_out.empty()) {
                auto out = open_out(thr_out);
                write_results_header(out);
                for (const auto& p : probes) write_result_row(out, to_result_row(p));
            }
            std::cout << summary.dump(2) << '\n';
        } else if (conjecture->parsed()) {
            const auto q = conjecture_pm_constant(alpha, tol);
            if (as_json) {
                std::cout << json{{"alpha", q.alpha},
                                  {"C", q.C},
                                  {"gamma_lower", q.gamma_lo},
                                  {"gamma_upper", q.gamma_hi},
                                  {"residual_fixed_point", q.residual_fixed_point},
                                  {"residual_outer", q.residual_outer}}
                                 .dump(2)
                          << '\n';
            } else {
                std::cout << "alpha " << q.alpha << "  C " << q.C << "  gamma_* " << q.gamma_lo << "  gamma^* "
                          << q.gamma_hi << '\n';
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
