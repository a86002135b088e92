#pragma once

#include <json.hpp>

#include "sumset/bounds.hpp"
#include "sumset/core.hpp"
#include "sumset/decompose.hpp"
#include "sumset/game.hpp"
#include "sumset/montecarlo.hpp"

// Serializers shared by the CLI, the tests and the acceptance suite, so the
// byte-identical-output determinism contract has a single source of truth.
// All emitters use ordered_json and compact dumps.
namespace sumset::io {

using json = nlohmann::ordered_json;

json set_to_json(const SetWindow& s);
json config_to_json(const SearchConfig& config);
json witness_to_json(const BudgetedWitness& w);

json decide_to_json(const SetWindow& a, const SearchConfig& config, const DecideResult& result);
json census_to_json(const CensusResult& census, const SearchConfig& config);
json estimate_to_json(const mc::Estimate& estimate, std::optional<double> p_bound_value);
json bounds_to_json(std::int64_t n, std::int64_t k);
json transcript_to_json(const game::GameTranscript& transcript);
json verify_to_json(const game::VerifyReport& report);

/// CSV row for an estimate: n,k,trials,hits,p_hat,ci_low,ci_high,p_bound,seed
/// (k and p_bound stay empty in decide mode).
std::string estimate_csv_header();
std::string estimate_csv_row(const mc::Estimate& estimate, std::optional<double> p_bound_value);

}  // namespace sumset::io
