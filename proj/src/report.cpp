#include "stealthsim/report.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <memory>
#include <ostream>

namespace stealthsim {

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    throw std::runtime_error("SHA-256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

namespace {

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_results_csv(std::ostream& out, std::span<const HijackResult> results) {
  out << "victim_asn,fraction,compromised,denominator,stealthy\n";
  for (const auto& r : results)
    out << r.victim.value() << ',' << fixed6(r.fraction) << ',' << r.compromised << ','
        << r.denominator << ',' << (r.stealthy ? "true" : "false") << '\n';
}

void write_cdf_csv(std::ostream& out, std::span<const CdfPoint> points) {
  out << "fraction,cumulative_share\n";
  for (const auto& p : points) out << fixed6(p.fraction) << ',' << fixed6(p.cumulative_share) << '\n';
}

std::vector<HijackResult> counted_results(const ExperimentOutcome& outcome) {
  std::vector<HijackResult> out;
  for (const auto& r : outcome.results)
    if (r.denominator > 0) out.push_back(r);
  return out;
}

nlohmann::json aggregate_json(const ExperimentOutcome& outcome, std::uint64_t seed,
                              std::string_view topology_digest) {
  nlohmann::json targets = nlohmann::json::array();
  for (AsId t : outcome.targets) targets.push_back(t.value());
  return {
      {"mean", outcome.mean},
      {"stddev", outcome.stddev},
      {"n", outcome.n},
      {"stealthy_all", outcome.stealthy_all},
      {"seed", seed},
      {"topology_digest", std::string(topology_digest)},
      {"sampler", std::string(kSamplerName)},
      {"targets", targets},
      {"dropped_pairs", outcome.dropped_pairs},
  };
}

}  // namespace stealthsim
