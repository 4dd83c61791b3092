#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace hdlab {

/// The unit of every cost claim: bits exchanged, oracle queries by kind, and
/// randomness consumed from the shared tape.
struct CostReport {
  uint64_t bits_sent = 0;
  std::map<std::string, uint64_t> oracle_queries;
  uint64_t random_bits_drawn = 0;

  uint64_t total_queries() const {
    uint64_t t = 0;
    for (const auto& [k, v] : oracle_queries) t += v;
    return t;
  }

  CostReport& operator+=(const CostReport& o) {
    bits_sent += o.bits_sent;
    random_bits_drawn += o.random_bits_drawn;
    for (const auto& [k, v] : o.oracle_queries) oracle_queries[k] += v;
    return *this;
  }

  bool operator==(const CostReport& o) const {
    return bits_sent == o.bits_sent && random_bits_drawn == o.random_bits_drawn &&
           oracle_queries == o.oracle_queries;
  }

  std::string to_string() const {
    std::string s = "bits=" + std::to_string(bits_sent);
    for (const auto& [k, v] : oracle_queries) s += " " + k + "=" + std::to_string(v);
    s += " rand=" + std::to_string(random_bits_drawn);
    return s;
  }
};

}  // namespace hdlab
