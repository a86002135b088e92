#include "sumset/json_io.hpp"

#include <sstream>

namespace sumset::io {

json set_to_json(const SetWindow& s) {
    json arr = json::array();
    for (auto e : s.elements()) arr.push_back(e);
    return arr;
}

json config_to_json(const SearchConfig& config) {
    json j;
    j["min_size"] = config.min_size;
    j["budget"] = config.budget;
    j["size_cap"] = config.size_cap ? json(*config.size_cap) : json(nullptr);
    j["node_limit"] = config.node_limit ? json(*config.node_limit) : json(nullptr);
    return j;
}

json witness_to_json(const BudgetedWitness& w) {
    json j;
    j["y"] = set_to_json(w.decomposition.y);
    j["z"] = set_to_json(w.decomposition.z);
    j["a_prime"] = set_to_json(w.a_prime);
    j["flips"] = w.flips;
    return j;
}

json decide_to_json(const SetWindow& a, const SearchConfig& config, const DecideResult& result) {
    json j;
    j["command"] = "decide";
    j["n"] = a.length();
    j["set"] = set_to_json(a);
    j["config"] = config_to_json(config);
    j["verdict"] = to_string(result.verdict);
    j["witness"] = result.witness ? witness_to_json(*result.witness) : json(nullptr);
    j["nodes"] = result.nodes;
    return j;
}

json census_to_json(const CensusResult& census, const SearchConfig& config) {
    json j;
    j["command"] = "census";
    j["n"] = census.n;
    j["config"] = config_to_json(config);
    j["total"] = census.total;
    j["decomposable"] = census.decomposable;
    j["inconclusive"] = census.inconclusive;
    j["fraction"] = census.fraction;
    return j;
}

json estimate_to_json(const mc::Estimate& estimate, std::optional<double> p_bound_value) {
    json j;
    j["command"] = "sample";
    j["mode"] = estimate.mode;
    j["n"] = estimate.n;
    if (estimate.k) j["k"] = *estimate.k;
    j["trials"] = estimate.trials;
    j["seed"] = estimate.seed;
    j["hits"] = estimate.hits;
    j["inconclusive"] = estimate.inconclusive;
    j["p_hat"] = estimate.p_hat;
    j["ci_low"] = estimate.ci_low;
    j["ci_high"] = estimate.ci_high;
    j["ci99_high"] = estimate.ci99_high;
    if (p_bound_value) j["p_bound"] = *p_bound_value;
    return j;
}

json bounds_to_json(std::int64_t n, std::int64_t k) {
    json j;
    j["command"] = "bounds";
    j["n"] = n;
    j["k"] = k;
    j["w"] = bounds::w(n, k).get_str();
    const mpq_class exact = bounds::p_bound_exact(n, k);
    j["p_bound_num"] = exact.get_num().get_str();
    j["p_bound_den"] = exact.get_den().get_str();
    j["p_bound"] = bounds::p_bound(n, k);
    if (k >= 2) {
        const bounds::Interval a = bounds::alpha_k(k);
        j["alpha_k"] = bounds::alpha_k_decimal(k);
        j["alpha_k_lo"] = a.lo;
        j["alpha_k_hi"] = a.hi;
    } else {
        j["alpha_k"] = nullptr;
    }
    return j;
}

namespace {

json move_to_json(const game::MoveRecord& m) {
    json j;
    j["m"] = m.m;
    j["f"] = set_to_json(m.f);
    j["k"] = m.k;
    j["t"] = m.t;
    j["window_end"] = m.window_end;
    j["prefix"] = set_to_json(m.prefix);
    return j;
}

}  // namespace

json transcript_to_json(const game::GameTranscript& t) {
    json j;
    j["command"] = "game";
    json params;
    params["alpha"] = t.params.alpha;
    params["beta"] = t.params.beta;
    params["rounds"] = t.params.rounds;
    params["adversary"] = game::to_string(t.params.adversary);
    params["seed"] = t.params.seed;
    params["f0"] = set_to_json(t.params.f0);
    params["k0"] = t.params.k0;
    j["params"] = params;
    json moves = json::array();
    for (const auto& m : t.moves) moves.push_back(move_to_json(m));
    j["moves"] = moves;
    j["limit_prefix"] = set_to_json(t.limit_prefix);
    return j;
}

json verify_to_json(const game::VerifyReport& report) {
    json j;
    j["alpha"] = report.alpha;
    json rounds = json::array();
    for (const auto& r : report.rounds) {
        json e;
        e["m"] = r.m;
        e["n"] = r.n;
        e["budget"] = r.budget;
        e["verdict"] = to_string(r.verdict);
        e["nodes"] = r.nodes;
        e["witness"] = r.witness ? witness_to_json(*r.witness) : json(nullptr);
        rounds.push_back(e);
    }
    j["rounds"] = rounds;
    j["note"] = "finite-scale evidence only; verdicts at small windows may differ "
                "from the asymptotic statement";
    return j;
}

std::string estimate_csv_header() {
    return "n,k,trials,hits,p_hat,ci_low,ci_high,p_bound,seed";
}

std::string estimate_csv_row(const mc::Estimate& e, std::optional<double> p_bound_value) {
    std::ostringstream out;
    out << e.n << ',';
    if (e.k) out << *e.k;
    out << ',' << e.trials << ',' << e.hits << ',';
    out << json(e.p_hat).dump() << ',' << json(e.ci_low).dump() << ',' << json(e.ci_high).dump()
        << ',';
    if (p_bound_value) out << json(*p_bound_value).dump();
    out << ',' << e.seed;
    return out.str();
}

}  // namespace sumset::io
