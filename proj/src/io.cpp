#include "bgt/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bgt {

using nlohmann::json;

namespace {

Rational rational_of(const json& v, const std::string& what) {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    throw std::invalid_argument(what + ": expected a \"p/q\" string");
}

json opt_rational(const std::optional<Rational>& r) { return r ? json(r->str()) : json(nullptr); }

json bound_json(const BoundCheck& b) {
    json j{{"bound", b.bound.str()},
           {"applicable", b.applicable},
           {"holds", b.holds},
           {"first_violation_day", nullptr},
           {"violating_bamboo", nullptr},
           {"violating_height", nullptr}};
    if (b.first_violation_day >= 0) {
        j["first_violation_day"] = b.first_violation_day;
        j["violating_bamboo"] = b.violating_bamboo;
        j["violating_height"] = b.violating_height.str();
    }
    return j;
}

}  // namespace

Instance instance_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("rates") || !doc["rates"].is_array())
        throw std::invalid_argument("instance: document needs a \"rates\" array");
    std::vector<Rational> rates;
    for (std::size_t k = 0; k < doc["rates"].size(); ++k)
        rates.push_back(rational_of(doc["rates"][k], "instance: rates[" + std::to_string(k) + "]"));
    if (doc.contains("original_index")) {
        const json& idx = doc["original_index"];
        if (!idx.is_array() || idx.size() != rates.size())
            throw std::invalid_argument("instance: original_index must list one position per rate");
        std::vector<Rational> input(rates.size());
        std::vector<bool> seen(rates.size(), false);
        for (std::size_t k = 0; k < rates.size(); ++k) {
            if (!idx[k].is_number_integer()) throw std::invalid_argument("instance: original_index entries must be integers");
            auto p = idx[k].get<std::int64_t>();
            if (p < 1 || p > static_cast<std::int64_t>(rates.size()) || seen[static_cast<std::size_t>(p - 1)])
                throw std::invalid_argument("instance: original_index is not a permutation of 1..n");
            seen[static_cast<std::size_t>(p - 1)] = true;
            input[static_cast<std::size_t>(p - 1)] = rates[k];
        }
        rates = std::move(input);
    }
    return Instance::canonicalize(rates);
}

json instance_to_json(const Instance& instance) {
    json rates = json::array();
    for (const Rational& r : instance.rates()) rates.push_back(r.str());
    return json{{"n", instance.size()},
                {"rates", rates},
                {"original_index", instance.original_indices()},
                {"sum", instance.total_rate().str()},
                {"sum_is_one", instance.sums_to_one()}};
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("instance file '" + path + "': " + e.what());
    }
    return instance_from_json(doc);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

json report_to_json(const SimulationReport& r, const Instance& instance) {
    json per = json::array();
    for (std::size_t i = 0; i < r.per_bamboo.size(); ++i) {
        const BambooStats& b = r.per_bamboo[i];
        per.push_back(json{{"index", i + 1},
                           {"original_index", instance.original_index(i + 1)},
                           {"rate", instance.rate(i + 1).str()},
                           {"max_height", b.max_height.str()},
                           {"max_cut_gap", b.max_cut_gap},
                           {"cuts", b.cuts}});
    }
    json j{{"strategy", r.strategy},
           {"x", opt_rational(r.x)},
           {"n", r.n},
           {"horizon", r.horizon},
           {"sum_is_one", r.sum_is_one},
           {"observed_makespan", r.observed_makespan.str()},
           {"observed_makespan_approx", r.observed_makespan.to_double()},
           {"makespan_day", r.makespan_day},
           {"makespan_bamboo", r.makespan_bamboo},
           {"idle_days", r.idle_days},
           {"scheduler_work", r.scheduler_work},
           {"bound", r.bound ? bound_json(*r.bound) : json(nullptr)},
           {"per_bamboo", per}};
    if (r.transformed_makespan) {
        j["transformed_makespan"] = r.transformed_makespan->str();
        j["transformed_bound"] = r.transformed_bound ? bound_json(*r.transformed_bound) : json(nullptr);
    }
    if (!r.trace.empty()) {
        json t = json::array();
        for (const TraceRow& row : r.trace)
            t.push_back(json{{"day", row.day},
                             {"trim", row.decision.is_trim() ? json(row.decision.index) : json(nullptr)},
                             {"height_before_cut", row.height_before_cut.str()},
                             {"running_makespan", row.running_makespan.str()}});
        j["trace"] = std::move(t);
    }
    return j;
}

std::string report_csv(const SimulationReport& r) {
    std::ostringstream os;
    os << "day,trimmed_index,height_before_cut,running_makespan\n";
    for (const TraceRow& row : r.trace) {
        os << row.day << ',';
        if (row.decision.is_trim()) os << row.decision.index << ',' << row.height_before_cut.str();
        else os << ',';
        os << ',' << row.running_makespan.str() << '\n';
    }
    return os.str();
}

json equivalence_to_json(const EquivalenceReport& r) {
    json rf{{"equal", r.rf_equal}, {"first_divergence_day", nullptr}};
    if (!r.rf_equal) {
        rf["first_divergence_day"] = r.rf_divergence_day;
        rf["oracle"] = to_string(r.rf_oracle_decision);
        rf["naive"] = to_string(r.rf_naive_decision);
    }
    json rm{{"equal", r.rm_equal}, {"first_divergence_day", nullptr}};
    if (!r.rm_equal) {
        rm["first_divergence_day"] = r.rm_divergence_day;
        rm["trimmed_height"] = r.rm_trimmed_height.str();
        rm["max_height"] = r.rm_max_height.str();
    }
    return json{{"horizon", r.horizon}, {"x", r.x.str()}, {"ok", r.ok()}, {"reduce_fastest", rf}, {"reduce_max", rm}};
}

json tree_to_json(const OracleTree& t) {
    json nodes = json::array();
    for (std::size_t v = 0; v < t.node_count(); ++v) {
        const auto& node = t.node(v);
        json j{{"id", v}, {"rate", Rational::pow2(-node.exponent).str()}};
        if (node.leaf) {
            j["leaf"] = node.leaf;
        } else {
            j["children"] = node.children;
        }
        nodes.push_back(std::move(j));
    }
    std::string problem = t.check();
    return json{{"root", t.root()},
                {"leaves", t.leaf_count()},
                {"nodes_total", t.node_count()},
                {"height", t.height()},
                {"phases", t.phases()},
                {"valid", problem.empty()},
                {"problem", problem.empty() ? json(nullptr) : json(problem)},
                {"nodes", nodes}};
}

std::string tree_outline(const OracleTree& t) {
    std::ostringstream os;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{t.root(), 0}};
    while (!stack.empty()) {
        auto [v, depth] = stack.back();
        stack.pop_back();
        const auto& node = t.node(v);
        os << std::string(2 * depth, ' ') << Rational::pow2(-node.exponent).str();
        if (node.leaf) {
            os << "  b" << node.leaf << '\n';
        } else {
            os << "  [" << node.children.size() << "]\n";
            for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.emplace_back(*it, depth + 1);
        }
    }
    return os.str();
}

}  // namespace bgt
