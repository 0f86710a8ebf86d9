#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bgt/bench.hpp"
#include "bgt/generators.hpp"
#include "bgt/io.hpp"
#include "bgt/m2_oracle.hpp"
#include "bgt/rf_oracle.hpp"
#include "bgt/rm_oracle.hpp"
#include "bgt/sim.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr std::int64_t kTraceDefaultLimit = 100000;

struct Source {
    std::string instance_path;
    std::string gen;
    std::size_t n = 10;
    std::uint64_t seed = 1;
};

struct Common {
    Source src;
    std::string strategy;
    std::string x;
    std::int64_t horizon = 0;
    std::string format = "json";
    std::string out;
    bool trace = false;
    bool no_trace = false;
};

void add_source(CLI::App* app, Source& s) {
    auto* inst = app->add_option("--instance", s.instance_path, "Instance JSON file");
    auto* gen = app->add_option("--gen", s.gen, "Generator: dyadic-random, uniform-normalized, two-bamboo(eps), regular(k), figure4");
    inst->excludes(gen);
    app->add_option("--n", s.n, "Number of bamboos for generators")->check(CLI::PositiveNumber);
    app->add_option("--seed", s.seed, "Generator seed");
}

void add_output(CLI::App* app, Common& c, bool csv_allowed) {
    if (csv_allowed) {
        app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    } else {
        app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    }
    app->add_option("--out", c.out, "Output path (default: stdout)");
}

bgt::Instance load(const Source& s) {
    if (!s.instance_path.empty()) return bgt::read_instance_file(s.instance_path);
    if (s.gen.empty()) throw std::invalid_argument("give --instance PATH or --gen SPEC");
    return bgt::generate(bgt::parse_generator(s.gen), s.n, s.seed);
}

std::optional<bgt::Rational> parse_x(const std::string& x) {
    if (x.empty()) return std::nullopt;
    return bgt::parse_rational_arg(x);
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text;
    } else {
        bgt::write_text_file(out, text);
    }
}

bool want_trace(const Common& c, std::int64_t horizon) {
    if (c.no_trace) return false;
    return c.trace || c.format == "csv" || horizon <= kTraceDefaultLimit;
}

std::string describe_bound(const char* label, const bgt::BoundCheck& b) {
    std::ostringstream os;
    os << label << " " << b.bound.str();
    if (!b.applicable) {
        os << " (not claimed: rates do not sum to 1)";
    } else if (b.holds) {
        os << " holds";
    } else {
        os << " VIOLATED on day " << b.first_violation_day << " by b" << b.violating_bamboo << " at height "
           << b.violating_height.str();
    }
    return os.str();
}

int run_simulate(const Common& c, bool with_bounds) {
    bgt::Instance instance = load(c.src);
    bgt::Strategy s = bgt::parse_strategy(c.strategy, parse_x(c.x));
    std::int64_t horizon = c.horizon > 0 ? c.horizon : bgt::default_horizon(s, instance);
    bool trace = want_trace(c, horizon);
    bgt::SimulationReport r;
    if (with_bounds) {
        r = bgt::verify(instance, s, horizon, trace);
    } else {
        r = bgt::simulate(s, instance, bgt::SimulateOptions{horizon, trace, std::nullopt});
    }
    emit(c.out, c.format == "csv" ? bgt::report_csv(r) : bgt::report_to_json(r, instance).dump(2) + "\n");

    std::cerr << s.id() << (s.uses_threshold() ? "(" + s.x.str() + ")" : "") << " n=" << instance.size()
              << " horizon=" << horizon << " observed makespan " << r.observed_makespan.str() << " (~"
              << r.observed_makespan.to_double() << ")\n";
    if (!with_bounds) return kPass;
    bool ok = true;
    if (r.bound) {
        std::cerr << describe_bound("bound", *r.bound) << "\n";
        ok = ok && r.bound->holds;
    } else {
        std::cerr << "no bound applies to this strategy\n";
    }
    if (r.transformed_bound) {
        std::cerr << "transformed makespan " << r.transformed_makespan->str() << "; "
                  << describe_bound("bound", *r.transformed_bound) << "\n";
        ok = ok && r.transformed_bound->holds;
    }
    if (r.sum_is_one && r.observed_makespan < bgt::Rational(1))
        std::cerr << "note: observed makespan is still below the universal lower bound 1 at this horizon\n";
    return ok ? kPass : kViolation;
}

int run_equiv(const Common& c) {
    bgt::Instance instance = load(c.src);
    bgt::Rational x = c.x.empty() ? bgt::Rational(1) : bgt::parse_rational_arg(c.x);
    if (x.sign() <= 0) throw std::invalid_argument("threshold x must be positive");
    std::int64_t horizon =
        c.horizon > 0 ? c.horizon : std::max<std::int64_t>(10000, 20 * static_cast<std::int64_t>(instance.size()));
    bgt::EquivalenceReport r = bgt::equivalence_check(instance, horizon, x);
    emit(c.out, bgt::equivalence_to_json(r).dump(2) + "\n");
    std::cerr << "reduce-fastest(" << x.str() << ") oracle vs naive: "
              << (r.rf_equal ? "equal" : "diverge on day " + std::to_string(r.rf_divergence_day)) << "\n"
              << "reduce-max oracle trims a tallest bamboo: "
              << (r.rm_equal ? "every day" : "not on day " + std::to_string(r.rm_divergence_day)) << "\n";
    return r.ok() ? kPass : kViolation;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad size '" + item + "'");
        }
        if (pos != item.size()) throw std::invalid_argument("bad size '" + item + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

int run_bench(const std::string& structure, const std::string& sizes, std::uint64_t seed, const std::string& out) {
    std::vector<std::string> which = structure.empty() || structure == "all" ? bgt::bench_structures()
                                                                            : std::vector<std::string>{structure};
    if (!sizes.empty() && which.size() != 1) throw std::invalid_argument("--sizes needs a single --structure");
    std::vector<bgt::BenchRow> rows;
    for (const auto& s : which) {
        std::vector<std::size_t> sz = sizes.empty() ? bgt::bench_default_sizes(s) : parse_sizes(sizes);
        auto part = bgt::bench(s, sz, seed);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    emit(out, bgt::bench_csv(rows));
    bool ok = true;
    for (const auto& r : rows) ok = ok && r.pass;
    return ok ? kPass : kViolation;
}

int run_inspect(const Common& c) {
    bgt::Instance instance = load(c.src);
    bgt::Strategy s = bgt::parse_strategy(c.strategy.empty() ? "makespan2" : c.strategy, parse_x(c.x));
    nlohmann::json j{{"strategy", s.id()}, {"instance", bgt::instance_to_json(instance)}};
    std::string text;
    switch (s.kind) {
        case bgt::StrategyKind::MakespanTwo: {
            bgt::MakespanTwoOracle o(instance);
            nlohmann::json tr = nlohmann::json::array();
            for (const auto& e : o.transformed_rates()) tr.push_back(e.value().str());
            j["transformed_rates"] = tr;
            j["tree"] = bgt::tree_to_json(o.tree());
            text = bgt::tree_outline(o.tree());
            text = "height " + std::to_string(o.tree().height()) + ", phases " + std::to_string(o.tree().phases()) +
                   ", nodes " + std::to_string(o.tree().node_count()) + "\n" + text;
            break;
        }
        case bgt::StrategyKind::ReduceFastest: {
            bgt::RFOracle o(instance, s.x);
            nlohmann::json pts = nlohmann::json::array();
            for (const auto& p : o.current().points()) pts.push_back({p.x, p.y});
            j["x"] = s.x.str();
            j["coordinate_cap"] = o.coordinate_cap();
            j["initial_points"] = pts;
            text = "x " + s.x.str() + ", coordinate cap " + std::to_string(o.coordinate_cap()) + "\n";
            for (const auto& p : o.current().points())
                text += "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")\n";
            break;
        }
        case bgt::StrategyKind::ReduceMax: {
            bgt::RMOracle o(instance);
            j["line_scale"] = o.line_scale().str();
            text = "line scale " + o.line_scale().str() + "\n";
            break;
        }
        default:
            text = "naive strategies keep no structure\n";
    }
    emit(c.out, c.format == "text" ? text : j.dump(2) + "\n");
    if (s.kind == bgt::StrategyKind::MakespanTwo && !j["tree"]["valid"].get<bool>()) return kViolation;
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bamboo garden trimming: oracles, simulation and verification"};
    app.require_subcommand(1);

    Source gen_src;
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "Write an instance file");
    add_source(gen, gen_src);
    gen->add_option("--out", gen_out, "Output path (default: stdout)");

    Common sim_c, ver_c, eq_c, ins_c;
    auto setup = [](CLI::App* sub, Common& c, bool strategy_required) {
        add_source(sub, c.src);
        auto* st = sub->add_option("--strategy", c.strategy,
                                   "reduce-max | reduce-fastest | makespan2 | naive-reduce-max | naive-reduce-fastest");
        if (strategy_required) st->required();
        sub->add_option("--x", c.x, "Reduce-Fastest threshold as p/q (default 1809/1250)");
        sub->add_option("--horizon", c.horizon, "Days to simulate")->check(CLI::PositiveNumber);
    };
    auto* sim = app.add_subcommand("simulate", "Simulate a strategy and report the observed makespan");
    setup(sim, sim_c, true);
    add_output(sim, sim_c, true);
    sim->add_flag("--trace", sim_c.trace, "Include the per-day trace");
    sim->add_flag("--no-trace", sim_c.no_trace, "Omit the per-day trace");

    auto* ver = app.add_subcommand("verify", "Simulate and check the strategy's makespan bound");
    setup(ver, ver_c, true);
    add_output(ver, ver_c, true);
    ver->add_flag("--trace", ver_c.trace, "Include the per-day trace");
    ver->add_flag("--no-trace", ver_c.no_trace, "Omit the per-day trace");

    auto* eq = app.add_subcommand("equiv", "Compare the oracles against the naive strategies");
    add_source(eq, eq_c.src);
    eq->add_option("--x", eq_c.x, "Reduce-Fastest threshold as p/q (default 1)");
    eq->add_option("--horizon", eq_c.horizon, "Days to compare")->check(CLI::PositiveNumber);
    eq->add_option("--out", eq_c.out, "Output path (default: stdout)");

    std::string bench_structure, bench_sizes, bench_out;
    std::uint64_t bench_seed = 1;
    auto* bench = app.add_subcommand("bench", "Work-per-operation scaling table (CSV)");
    bench->add_option("--structure", bench_structure, "pst | envelope | rf | rm | m2 | m2-build | all");
    bench->add_option("--sizes", bench_sizes, "Comma-separated increasing sizes");
    bench->add_option("--seed", bench_seed, "Seed");
    bench->add_option("--out", bench_out, "Output path (default: stdout)");

    auto* ins = app.add_subcommand("inspect", "Dump an oracle's built structure");
    setup(ins, ins_c, false);
    add_output(ins, ins_c, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        if (*gen) {
            bgt::Instance inst = load(gen_src);
            emit(gen_out, bgt::instance_to_json(inst).dump(2) + "\n");
            return kPass;
        }
        if (*sim) return run_simulate(sim_c, false);
        if (*ver) return run_simulate(ver_c, true);
        if (*eq) return run_equiv(eq_c);
        if (*bench) return run_bench(bench_structure, bench_sizes, bench_seed, bench_out);
        if (*ins) return run_inspect(ins_c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
