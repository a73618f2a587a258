#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "stealthsim/experiment.hpp"

namespace stealthsim {

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// `victim_asn,fraction,compromised,denominator,stealthy`
void write_results_csv(std::ostream& out, std::span<const HijackResult> results);

/// `fraction,cumulative_share`
void write_cdf_csv(std::ostream& out, std::span<const CdfPoint> points);

/// Results that count towards the mean and CDF (non-empty denominator).
std::vector<HijackResult> counted_results(const ExperimentOutcome& outcome);

nlohmann::json aggregate_json(const ExperimentOutcome& outcome, std::uint64_t seed,
                              std::string_view topology_digest);

}  // namespace stealthsim
